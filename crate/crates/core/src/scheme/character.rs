//! Additive characters of (H_n(F_{q²}), +) as exact sums of p-th roots of unity.
//!
//! A sum `Σ ε^{cᵢ}` over a primitive p-th root ε is kept as the vector of
//! exponent counts. It is a rational integer exactly when all nonzero
//! exponents occur equally often, since `1 + ε + … + ε^{p−1} = 0` is the only
//! relation among the powers of ε.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FElem, FieldSpec};
use crate::hermitian::{HermMatrix, HermitianSpace};

use super::eigen::EigenTable;

/// Brute force or closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Brute,
    Formula,
}

/// `Σ ε^c` recorded as `counts[c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSum {
    counts: Vec<u64>,
}

impl CharacterSum {
    pub fn new(p: u32) -> Self {
        CharacterSum {
            counts: vec![0; p as usize],
        }
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        CharacterSum { counts }
    }

    #[inline]
    pub fn push(&mut self, exponent: u32) {
        self.counts[exponent as usize] += 1;
    }

    pub fn add_many(&mut self, exponent: u32, times: u64) {
        self.counts[exponent as usize] += times;
    }

    pub fn merge(mut self, other: &CharacterSum) -> Self {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Number of summands.
    pub fn terms(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// The integer value, or a consistency error when the sum is not rational.
    pub fn reduce(&self) -> Result<BigInt> {
        let nonzero = &self.counts[1..];
        match nonzero.first() {
            None => Ok(BigInt::from(self.counts[0])),
            Some(&c1) => {
                if nonzero.iter().any(|&c| c != c1) {
                    return Err(Error::Consistency(format!(
                        "character sum with exponent counts {:?} is not a rational integer",
                        self.counts
                    )));
                }
                Ok(BigInt::from(self.counts[0]) - BigInt::from(c1))
            }
        }
    }
}

fn pow(q: u64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(q), e)
}

fn sign(k: usize) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Closed form for `#{w ∈ F_{q²}^n : conj(w)ᵀ h w = a}` when `rank(h) = k`.
pub fn count_nh_formula(q: u64, n: usize, k: usize, a_is_zero: bool) -> BigInt {
    let scale = pow(q, 2 * n - k - 1);
    if a_is_zero {
        scale * (pow(q, k) + sign(k) * BigInt::from(q - 1))
    } else {
        scale * (pow(q, k) - sign(k))
    }
}

/// `(−1)^k q^{2n−k}`.
pub fn chi_formula(q: u64, n: usize, k: usize) -> BigInt {
    sign(k) * pow(q, 2 * n - k)
}

fn vector_count(f: &FieldSpec, n: usize, budget: u64) -> Result<u64> {
    match (f.order() as u64).checked_pow(n as u32) {
        Some(c) if c <= budget => Ok(c),
        c => Err(Error::BudgetExceeded {
            required: c.map_or(u128::MAX, u128::from),
            budget,
        }),
    }
}

fn vector_at(f: &FieldSpec, n: usize, mut idx: u64) -> Vec<FElem> {
    let order = f.order() as u64;
    (0..n)
        .map(|_| {
            let x = FElem::raw((idx % order) as u32);
            idx /= order;
            x
        })
        .collect()
}

/// Histogram of `h(w)` over all `w ∈ F_{q²}^n`, indexed by wire index.
pub fn nh_counts_brute(f: &FieldSpec, h: &HermMatrix, budget: u64) -> Result<Vec<u64>> {
    let n = h.n();
    let total = vector_count(f, n, budget)?;
    let order = f.order() as usize;
    let counts = (0..total)
        .into_par_iter()
        .fold(
            || vec![0u64; order],
            |mut acc, idx| {
                let w = vector_at(f, n, idx);
                acc[h.form_value(&w, f).index() as usize] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; order],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    if let Some(bad) = f
        .elements()
        .find(|&a| counts[a.index() as usize] > 0 && !f.is_in_subfield(a))
    {
        return Err(Error::Consistency(format!(
            "hermitian form took the value {bad} outside F_q"
        )));
    }
    Ok(counts)
}

/// `N_h(a)` for `a ∈ F_q`.
pub fn count_nh(
    f: &FieldSpec,
    h: &HermMatrix,
    a: FElem,
    mode: Mode,
    budget: u64,
) -> Result<BigInt> {
    if !f.is_in_subfield(a) {
        return Err(Error::NotInSubfield(a.index()));
    }
    match mode {
        Mode::Brute => Ok(BigInt::from(
            nh_counts_brute(f, h, budget)?[a.index() as usize],
        )),
        Mode::Formula => Ok(count_nh_formula(
            f.q() as u64,
            h.n(),
            h.rank(f),
            a.is_zero(),
        )),
    }
}

/// `χ(h) = Σ_w ε^{tr(h(w))}`.
pub fn chi(f: &FieldSpec, h: &HermMatrix, mode: Mode, budget: u64) -> Result<BigInt> {
    match mode {
        Mode::Formula => Ok(chi_formula(f.q() as u64, h.n(), h.rank(f))),
        Mode::Brute => {
            let counts = nh_counts_brute(f, h, budget)?;
            let mut sum = CharacterSum::new(f.p());
            for &a in f.subfield_elements() {
                sum.add_many(f.abs_trace(a)?, counts[a.index() as usize]);
            }
            sum.reduce()
        }
    }
}

/// Character sums `Σ_{rank X = i} ε^{tr(Tr(conj(X)ᵀ Y))}` for one fixed `Y`,
/// one per rank class `i`.
fn class_sums(
    f: &FieldSpec,
    matrices: &[(HermMatrix, usize)],
    y: &HermMatrix,
    n: usize,
) -> Result<Vec<CharacterSum>> {
    let mut sums = vec![CharacterSum::new(f.p()); n + 1];
    for (x, rank) in matrices {
        sums[*rank].push(f.abs_trace(x.trace_pairing(y, f))?);
    }
    Ok(sums)
}

fn ranked_space(f: &FieldSpec, n: usize, budget: u64) -> Result<Vec<(HermMatrix, usize)>> {
    let space = HermitianSpace::new(f, n);
    let count = space.check_budget(budget)?;
    Ok((0..count)
        .into_par_iter()
        .map(|i| {
            let h = space.get(i);
            let r = h.rank(f);
            (h, r)
        })
        .collect())
}

/// `P_i(j)` by brute force, evaluated at several matrices `Y` of rank `j`;
/// disagreement between them is a consistency error.
pub fn char_value_p(f: &FieldSpec, n: usize, i: usize, j: usize, budget: u64) -> Result<BigInt> {
    if i > n || j > n {
        return Err(Error::Usage(format!("indices ({i}, {j}) exceed n = {n}")));
    }
    const SAMPLES: usize = 4;
    let matrices = ranked_space(f, n, budget)?;
    let ys: Vec<_> = matrices
        .iter()
        .filter(|(_, r)| *r == j)
        .take(SAMPLES)
        .collect();
    let mut value: Option<BigInt> = None;
    for (y, _) in ys {
        let v = class_sums(f, &matrices, y, n)?[i].reduce()?;
        match &value {
            Some(prev) if *prev != v => {
                return Err(Error::Consistency(format!(
                    "P_{i}({j}) depends on the chosen matrix: {prev} vs {v}"
                )))
            }
            _ => value = Some(v),
        }
    }
    value.ok_or_else(|| Error::Consistency(format!("no matrix of rank {j}")))
}

/// The full table `P_i(j)` by brute force over every pair `(X, Y)`; every
/// `Y` of a given rank must give the same row of values.
pub fn brute_eigen_table(f: &FieldSpec, n: usize, budget: u64) -> Result<EigenTable> {
    let matrices = ranked_space(f, n, budget)?;
    let per_y: Vec<(usize, Vec<BigInt>)> = matrices
        .par_iter()
        .map(|(y, rank_y)| {
            let sums = class_sums(f, &matrices, y, n)?;
            let values = sums
                .iter()
                .map(CharacterSum::reduce)
                .collect::<Result<Vec<_>>>()?;
            Ok((*rank_y, values))
        })
        .collect::<Result<_>>()?;

    let mut columns: Vec<Option<Vec<BigInt>>> = vec![None; n + 1];
    for (j, values) in per_y {
        match &columns[j] {
            None => columns[j] = Some(values),
            Some(prev) if *prev != values => {
                return Err(Error::Consistency(format!(
                    "character values at rank {j} depend on the matrix"
                )))
            }
            _ => {}
        }
    }
    let mut rows = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for (j, col) in columns.into_iter().enumerate() {
        let col = col.ok_or_else(|| Error::Consistency(format!("no matrix of rank {j}")))?;
        for (i, v) in col.into_iter().enumerate() {
            rows[i][j] = v;
        }
    }
    Ok(EigenTable::from_rows(f.q() as u64, n, rows))
}

/// For an additive subgroup `U` of size `p^d` with `A_k` members of rank `k`,
/// the multiplicity `Σ_k (−1)^k A_k p^{(2n−k)e−d}` of the trivial character
/// in `χ|_U`. Returned as a rational; it must be a non-negative integer.
pub fn subgroup_character_multiplicity(
    f: &FieldSpec,
    n: usize,
    members: &[HermMatrix],
) -> Result<num_rational::BigRational> {
    let p = f.p() as u64;
    let mut size = members.len() as u64;
    let mut d = 0usize;
    while size > 1 && size.is_multiple_of(p) {
        size /= p;
        d += 1;
    }
    if size != 1 {
        return Err(Error::Usage(format!(
            "a subgroup must have p-power order, got {}",
            members.len()
        )));
    }
    let mut rank_counts = vec![0u64; n + 1];
    for m in members {
        rank_counts[m.rank(f)] += 1;
    }
    let e = f.e() as usize;
    let denom = num_traits::pow(BigInt::from(p), d);
    let total: BigInt = rank_counts
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            sign(k) * BigInt::from(a) * num_traits::pow(BigInt::from(p), (2 * n - k) * e)
        })
        .sum();
    Ok(num_rational::BigRational::new(total, denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::DEFAULT_ENUMERATION_BUDGET as B;

    #[test]
    fn reduction_rules() {
        assert_eq!(
            CharacterSum::from_counts(vec![5, 3]).reduce().unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            CharacterSum::from_counts(vec![1, 4, 4]).reduce().unwrap(),
            BigInt::from(-3)
        );
        assert!(CharacterSum::from_counts(vec![1, 4, 3]).reduce().is_err());
    }

    #[test]
    fn nh_examples_q2_n2() {
        let f = FieldSpec::new(2, 1).unwrap();
        let z = HermMatrix::zero(2);
        assert_eq!(
            count_nh(&f, &z, FElem::ZERO, Mode::Brute, B).unwrap(),
            BigInt::from(16)
        );
        assert_eq!(
            count_nh(&f, &z, FElem::ONE, Mode::Brute, B).unwrap(),
            BigInt::from(0)
        );
        let h = HermMatrix::from_indices(&f, &[&[1, 1], &[1, 0]]).unwrap();
        assert_eq!(
            count_nh(&f, &h, FElem::ZERO, Mode::Brute, B).unwrap(),
            BigInt::from(10)
        );
        assert_eq!(
            count_nh(&f, &h, FElem::ONE, Mode::Brute, B).unwrap(),
            BigInt::from(6)
        );
        assert_eq!(
            count_nh(&f, &h, FElem::ZERO, Mode::Formula, B).unwrap(),
            BigInt::from(10)
        );
        assert_eq!(
            count_nh(&f, &h, FElem::ONE, Mode::Formula, B).unwrap(),
            BigInt::from(6)
        );
        assert!(count_nh(&f, &h, FElem::raw(2), Mode::Formula, B).is_err());
    }

    #[test]
    fn chi_examples_q2_n2() {
        let f = FieldSpec::new(2, 1).unwrap();
        let z = HermMatrix::zero(2);
        let e11 = HermMatrix::from_indices(&f, &[&[1, 0], &[0, 0]]).unwrap();
        let full = HermMatrix::from_indices(&f, &[&[1, 1], &[1, 0]]).unwrap();
        assert_eq!(chi(&f, &z, Mode::Brute, B).unwrap(), BigInt::from(16));
        assert_eq!(chi(&f, &e11, Mode::Brute, B).unwrap(), BigInt::from(-8));
        assert_eq!(chi(&f, &full, Mode::Brute, B).unwrap(), BigInt::from(4));
    }

    #[test]
    fn nh_partitions_w() {
        let f = FieldSpec::new(3, 1).unwrap();
        let space = HermitianSpace::new(&f, 2);
        for h in space.iter(B).unwrap().step_by(7) {
            let counts = nh_counts_brute(&f, &h, B).unwrap();
            assert_eq!(counts.iter().sum::<u64>(), 81);
        }
    }

    #[test]
    fn char_values_q2_n2() {
        let f = FieldSpec::new(2, 1).unwrap();
        assert_eq!(char_value_p(&f, 2, 0, 2, B).unwrap(), BigInt::from(1));
        assert_eq!(char_value_p(&f, 2, 1, 1, B).unwrap(), BigInt::from(-3));
        assert_eq!(char_value_p(&f, 2, 2, 2, B).unwrap(), BigInt::from(-2));
    }

    #[test]
    fn brute_budget_is_enforced() {
        let f = FieldSpec::new(2, 1).unwrap();
        assert!(matches!(
            brute_eigen_table(&f, 3, 100),
            Err(Error::BudgetExceeded { required: 512, .. })
        ));
        let h = HermMatrix::zero(3);
        assert!(matches!(
            nh_counts_brute(&f, &h, 10),
            Err(Error::BudgetExceeded { required: 64, .. })
        ));
    }
}
