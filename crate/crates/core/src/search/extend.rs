use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hermitian::{HermMatrix, HermitianSpace, RankSet};

use super::verify::is_constant_rank_distance;

fn admissible(set: &RankSet, b: &HermMatrix) -> bool {
    let f = set.field();
    let k = set.k();
    (b.is_zero() || b.rank(f) == k) && set.members().iter().all(|a| a.rank_distance(b, f) == k)
}

/// Every `B ∉ U` such that `U ∪ {B}` is still a constant rank-distance `k`
/// set, in enumeration order. Empty exactly when `U` is maximal.
pub fn extension_candidates(set: &RankSet, budget: u64) -> Result<Vec<HermMatrix>> {
    let space = HermitianSpace::new(set.field(), set.n());
    let count = space.check_budget(budget)?;
    let members: HashSet<&HermMatrix> = set.members().iter().collect();
    Ok((0..count)
        .into_par_iter()
        .filter_map(|i| {
            let b = space.get(i);
            (!members.contains(&b) && admissible(set, &b)).then_some(b)
        })
        .collect())
}

pub fn is_maximal(set: &RankSet, budget: u64) -> Result<bool> {
    let space = HermitianSpace::new(set.field(), set.n());
    let count = space.check_budget(budget)?;
    let members: HashSet<&HermMatrix> = set.members().iter().collect();
    Ok(!(0..count).into_par_iter().any(|i| {
        let b = space.get(i);
        !members.contains(&b) && admissible(set, &b)
    }))
}

/// Candidate order for [`greedy_complete`].
#[derive(Clone, Copy, Debug)]
pub enum CompletionOrder<'a> {
    /// The canonical enumeration of H_n(F_{q²}).
    Enumeration,
    /// The given matrices first, then the rest of the enumeration.
    Preferred(&'a [HermMatrix]),
}

/// Adjoins the first admissible matrix in `order` until none is left. The
/// result contains `set` and is maximal.
pub fn greedy_complete(set: &RankSet, order: CompletionOrder<'_>, budget: u64) -> Result<RankSet> {
    let v = is_constant_rank_distance(set, set.k());
    if let Some(bad) = v.violation {
        return Err(Error::Usage(format!(
            "input is not a constant rank-distance set: {bad}"
        )));
    }
    let f = set.field();
    let space = HermitianSpace::new(f, set.n());
    let count = space.check_budget(budget)?;
    let preferred: &[HermMatrix] = match order {
        CompletionOrder::Enumeration => &[],
        CompletionOrder::Preferred(m) => m,
    };
    if let Some(bad) = preferred.iter().find(|m| m.n() != set.n()) {
        return Err(Error::DimensionMismatch(format!(
            "preferred matrix is {}x{}, expected {}x{}",
            bad.n(),
            bad.n(),
            set.n(),
            set.n()
        )));
    }
    let mut current = set.clone();
    let mut seen: HashSet<HermMatrix> = set.members().iter().cloned().collect();
    let stream = preferred
        .iter()
        .cloned()
        .chain((0..count).map(|i| space.get(i)));
    for b in stream {
        if seen.contains(&b) {
            continue;
        }
        if admissible(&current, &b) {
            seen.insert(b.clone());
            let mut members = current.members().to_vec();
            members.push(b);
            current = RankSet::new(f.clone(), set.n(), set.k(), members)?;
        }
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::hermitian::DEFAULT_ENUMERATION_BUDGET as B;
    use std::sync::Arc;

    fn origin(f: &Arc<FieldSpec>, n: usize, k: usize) -> RankSet {
        RankSet::new(f.clone(), n, k, vec![HermMatrix::zero(n)]).unwrap()
    }

    #[test]
    fn candidates_of_origin_are_rank_k() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        assert_eq!(
            extension_candidates(&origin(&f, 2, 2), B).unwrap().len(),
            10
        );
        assert_eq!(extension_candidates(&origin(&f, 2, 1), B).unwrap().len(), 5);
    }

    #[test]
    fn greedy_is_maximal_and_deterministic() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        let a = greedy_complete(&origin(&f, 2, 2), CompletionOrder::Enumeration, B).unwrap();
        let b = greedy_complete(&origin(&f, 2, 2), CompletionOrder::Enumeration, B).unwrap();
        assert_eq!(a, b);
        assert!(is_maximal(&a, B).unwrap());
        assert!(is_constant_rank_distance(&a, 2).holds());
        assert!(a.len() <= 6);
        let again = greedy_complete(&a, CompletionOrder::Enumeration, B).unwrap();
        assert_eq!(again, a);
    }

    #[test]
    fn deleting_a_member_breaks_maximality() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        let full = greedy_complete(&origin(&f, 2, 2), CompletionOrder::Enumeration, B).unwrap();
        let mut members = full.members().to_vec();
        let removed = members.pop().unwrap();
        let smaller = RankSet::new(f, 2, 2, members).unwrap();
        assert!(!is_maximal(&smaller, B).unwrap());
        assert!(extension_candidates(&smaller, B)
            .unwrap()
            .contains(&removed));
    }

    #[test]
    fn budget_is_enforced() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        assert!(matches!(
            extension_candidates(&origin(&f, 3, 2), 100),
            Err(Error::BudgetExceeded {
                required: 512,
                budget: 100
            })
        ));
    }

    #[test]
    fn rejects_invalid_input() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        let e11 = HermMatrix::from_indices(&f, &[&[1, 0], &[0, 0]]).unwrap();
        let bad = RankSet::new(f, 2, 2, vec![HermMatrix::zero(2), e11]).unwrap();
        assert!(greedy_complete(&bad, CompletionOrder::Enumeration, B).is_err());
    }
}
