//! Maximal partial spread sets `U_δ` of H_2(F_{q²}) of size `q² + δ − 1`.
//!
//! ```text
//! U_δ = { [[a, a], [a, 0]], [[0, a], [a, μa]] : a ∈ Δ }
//!     ∪ { [[0, α], [conj(α), 0]] : α ∈ F_{q²} \ Δ }
//! ```
//!
//! with `0 ∈ Δ ⊆ F_q`, `|Δ| = δ`, and `μ ∈ F_q` such that
//! `x² + y² + (μ−2)xy` is anisotropic over F_q.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FElem, FieldSpec};
use crate::hermitian::{HermMatrix, RankSet};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UdeltaParams {
    delta_set: Vec<FElem>,
    mu: FElem,
}

/// `t² + (μ−2)t + 1` has no root in F_q. Characteristic 2 reads `μ − 2` as `μ`.
pub fn mu_is_admissible(f: &FieldSpec, mu: FElem) -> bool {
    let lin = f.sub(mu, f.from_prime(2));
    f.subfield_elements().iter().all(|&t| {
        let v = f.add(f.add(f.mul(t, t), f.mul(lin, t)), FElem::ONE);
        !v.is_zero()
    })
}

/// The admissible `μ ∈ F_q` of smallest wire index.
pub fn select_mu(f: &FieldSpec) -> FElem {
    f.subfield_elements()
        .iter()
        .copied()
        .find(|&mu| mu_is_admissible(f, mu))
        .expect("an irreducible quadratic t² + bt + 1 exists over every F_q")
}

impl UdeltaParams {
    pub fn new(f: &FieldSpec, delta_set: Vec<FElem>, mu: FElem) -> Result<Self> {
        let q = f.q() as usize;
        if delta_set.is_empty() || delta_set.len() > q {
            return Err(Error::Usage(format!(
                "|Δ| = {} must lie in 1..={q}",
                delta_set.len()
            )));
        }
        if !delta_set.contains(&FElem::ZERO) {
            return Err(Error::Usage("Δ must contain 0".into()));
        }
        if let Some(&bad) = delta_set.iter().find(|&&a| !f.is_in_subfield(a)) {
            return Err(Error::NotInSubfield(bad.index()));
        }
        let mut sorted = delta_set.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != delta_set.len() {
            return Err(Error::Usage("Δ has repeated elements".into()));
        }
        if !f.is_in_subfield(mu) {
            return Err(Error::NotInSubfield(mu.index()));
        }
        if !mu_is_admissible(f, mu) {
            return Err(Error::Usage(format!(
                "μ = {mu}: x² + y² + (μ−2)xy has a nontrivial zero over F_q"
            )));
        }
        Ok(UdeltaParams { delta_set, mu })
    }

    /// Default parameters: Δ is the δ smallest elements of F_q by wire index
    /// (which include 0) and μ is [`select_mu`].
    pub fn with_delta(f: &FieldSpec, delta: usize) -> Result<Self> {
        if delta == 0 || delta > f.q() as usize {
            return Err(Error::Usage(format!(
                "δ = {delta} must lie in 1..={}",
                f.q()
            )));
        }
        let delta_set = f.subfield_elements()[..delta].to_vec();
        Self::new(f, delta_set, select_mu(f))
    }

    pub fn delta(&self) -> usize {
        self.delta_set.len()
    }

    pub fn delta_set(&self) -> &[FElem] {
        &self.delta_set
    }

    pub fn mu(&self) -> FElem {
        self.mu
    }
}

/// Builds `U_δ` as a rank-distance 2 set in H_2(F_{q²}).
pub fn construct_udelta(field: Arc<FieldSpec>, params: &UdeltaParams) -> Result<RankSet> {
    let f = &*field;
    let herm = |rows: [FElem; 4]| HermMatrix::new(Matrix::from_vec(2, 2, rows.to_vec())?, f);
    let z = FElem::ZERO;
    let mut members = Vec::with_capacity(f.order() as usize + params.delta());
    for &a in params.delta_set() {
        members.push(herm([a, a, a, z])?);
        members.push(herm([z, a, a, f.mul(params.mu(), a)])?);
    }
    for alpha in f.elements().filter(|x| !params.delta_set().contains(x)) {
        members.push(herm([z, alpha, f.conj(alpha), z])?);
    }
    RankSet::from_iter_dedup(field, 2, 2, members)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: exhaustive search for a nontrivial zero of x² + y² + (μ−2)xy.
    fn anisotropic_by_pairs(f: &FieldSpec, mu: FElem) -> bool {
        let lin = f.sub(mu, f.from_prime(2));
        let sub = f.subfield_elements();
        sub.iter().all(|&x| {
            sub.iter().all(|&y| {
                if x.is_zero() && y.is_zero() {
                    return true;
                }
                let v = f.add(f.add(f.mul(x, x), f.mul(y, y)), f.mul(lin, f.mul(x, y)));
                !v.is_zero()
            })
        })
    }

    #[test]
    fn mu_selection() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        assert_eq!(select_mu(&f2), FElem::ONE);
        // μ = 0, 1 give (t−1)², (t+1)²; μ = 2 gives t² + 1
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(select_mu(&f3), f3.from_prime(2));
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = FieldSpec::from_q(q).unwrap();
            for &mu in f.subfield_elements() {
                assert_eq!(
                    mu_is_admissible(&f, mu),
                    anisotropic_by_pairs(&f, mu),
                    "q={q}"
                );
            }
            assert!(mu_is_admissible(&f, select_mu(&f)));
        }
    }

    #[test]
    fn udelta_q2_delta2() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        let params = UdeltaParams::with_delta(&f, 2).unwrap();
        assert_eq!(params.delta_set(), &[FElem::ZERO, FElem::ONE]);
        let u = construct_udelta(f.clone(), &params).unwrap();
        let expected: Vec<HermMatrix> = [
            [[0, 0], [0, 0]],
            [[1, 1], [1, 0]],
            [[0, 1], [1, 1]],
            [[0, 2], [3, 0]],
            [[0, 3], [2, 0]],
        ]
        .iter()
        .map(|r| HermMatrix::from_indices(&f, &[&r[0], &r[1]]).unwrap())
        .collect();
        let mut expected_sorted = expected.clone();
        expected_sorted.sort();
        assert_eq!(u.sorted_members(), expected_sorted);
    }

    #[test]
    fn sizes() {
        for q in [2u64, 3, 4, 5] {
            let f = Arc::new(FieldSpec::from_q(q).unwrap());
            for delta in 1..=q as usize {
                let u = construct_udelta(f.clone(), &UdeltaParams::with_delta(&f, delta).unwrap())
                    .unwrap();
                assert_eq!(u.len(), (q * q) as usize + delta - 1);
            }
        }
    }

    #[test]
    fn invalid_params() {
        let f = FieldSpec::new(3, 1).unwrap();
        let two = f.from_prime(2);
        assert!(UdeltaParams::new(&f, vec![FElem::ONE], two).is_err());
        assert!(UdeltaParams::new(&f, vec![FElem::ZERO], FElem::ONE).is_err());
        assert!(UdeltaParams::new(&f, vec![FElem::ZERO, f.element(4).unwrap()], two).is_err());
        assert!(UdeltaParams::new(&f, vec![FElem::ZERO, FElem::ZERO], two).is_err());
        assert!(UdeltaParams::with_delta(&f, 4).is_err());
        assert!(UdeltaParams::with_delta(&f, 0).is_err());
        assert!(UdeltaParams::new(&f, vec![FElem::ZERO, two], two).is_ok());
    }
}
