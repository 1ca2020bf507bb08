use std::fmt;

use rayon::prelude::*;

use crate::field::FieldSpec;
use crate::hermitian::{HermMatrix, RankSet};

/// The first failure of the constant rank-distance condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `rank(U[first] − U[second]) = rank ≠ k`.
    Pair {
        first: usize,
        second: usize,
        rank: usize,
    },
    /// A nonzero member `U[index]` of rank `rank ≠ k`.
    Member { index: usize, rank: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Pair {
                first,
                second,
                rank,
            } => {
                write!(
                    f,
                    "members {first} and {second} differ by a rank-{rank} matrix"
                )
            }
            Violation::Member { index, rank } => write!(f, "member {index} has rank {rank}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verification {
    pub k: usize,
    pub violation: Option<Violation>,
}

impl Verification {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks pairwise differences first, then nonzero members. The reported
/// violation is the lexicographically first failing pair (or member).
pub fn check_constant_rank_distance(
    f: &FieldSpec,
    members: &[HermMatrix],
    k: usize,
) -> Verification {
    let pair = (0..members.len()).into_par_iter().find_map_first(|i| {
        members[i + 1..].iter().enumerate().find_map(|(off, b)| {
            let rank = members[i].rank_distance(b, f);
            (rank != k).then_some(Violation::Pair {
                first: i,
                second: i + 1 + off,
                rank,
            })
        })
    });
    let violation = pair.or_else(|| {
        members.iter().enumerate().find_map(|(index, m)| {
            let rank = m.rank(f);
            (rank != 0 && rank != k).then_some(Violation::Member { index, rank })
        })
    });
    Verification { k, violation }
}

pub fn is_constant_rank_distance(set: &RankSet, k: usize) -> Verification {
    check_constant_rank_distance(set.field(), set.members(), k)
}

/// Closed under addition.
pub fn is_additively_closed(set: &RankSet) -> bool {
    let f = set.field();
    let members: std::collections::HashSet<&HermMatrix> = set.members().iter().collect();
    set.members().par_iter().all(|a| {
        set.members()
            .iter()
            .all(|b| a.add(b, f).is_ok_and(|s| members.contains(&s)))
    })
}

/// Closed under `λA + μB` for all members `A, B` and `λ, μ ∈ F_q`.
pub fn is_subfield_linear(set: &RankSet) -> bool {
    let f = set.field();
    let members: std::collections::HashSet<&HermMatrix> = set.members().iter().collect();
    let scalars = f.subfield_elements();
    set.members().par_iter().all(|a| {
        scalars.iter().all(|&l| {
            let la = a.scale(l, f).expect("subfield scalar");
            set.members().iter().all(|b| {
                scalars.iter().all(|&m| {
                    let mb = b.scale(m, f).expect("subfield scalar");
                    la.add(&mb, f).is_ok_and(|s| members.contains(&s))
                })
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn singleton_and_unit_entry() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        let zero = RankSet::new(f.clone(), 2, 2, vec![HermMatrix::zero(2)]).unwrap();
        assert!(is_constant_rank_distance(&zero, 2).holds());
        assert!(is_constant_rank_distance(&zero, 1).holds());
        let e11 = HermMatrix::from_indices(&f, &[&[1, 0], &[0, 0]]).unwrap();
        let set = RankSet::new(f, 2, 2, vec![HermMatrix::zero(2), e11]).unwrap();
        let v = is_constant_rank_distance(&set, 2);
        assert_eq!(
            v.violation,
            Some(Violation::Pair {
                first: 0,
                second: 1,
                rank: 1
            })
        );
    }

    #[test]
    fn member_violation_reported_after_pairs() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        let e11 = HermMatrix::from_indices(&f, &[&[1, 0], &[0, 0]]).unwrap();
        let set = RankSet::new(f, 2, 2, vec![e11]).unwrap();
        assert_eq!(
            is_constant_rank_distance(&set, 2).violation,
            Some(Violation::Member { index: 0, rank: 1 })
        );
    }

    #[test]
    fn closure_checks() {
        let f = Arc::new(FieldSpec::new(3, 1).unwrap());
        let i2 = HermMatrix::from_indices(&f, &[&[1, 0], &[0, 1]]).unwrap();
        let line: Vec<HermMatrix> = f
            .subfield_elements()
            .iter()
            .map(|&c| i2.scale(c, &f).unwrap())
            .collect();
        let set = RankSet::new(f.clone(), 2, 2, line.clone()).unwrap();
        assert!(is_additively_closed(&set));
        assert!(is_subfield_linear(&set));
        let partial = RankSet::new(f, 2, 2, line[..2].to_vec()).unwrap();
        assert!(!is_additively_closed(&partial));
    }
}
