//! Lifting partial (r−1)-spreads of PG(n−1, q²) to constant rank-distance
//! 2r sets through `S ↦ X_S·conj(X_S)ᵀ`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ext::{ExtElem, Extension};
use crate::field::{FElem, FieldSpec};
use crate::geometry::PGSubspace;
use crate::hermitian::{translate_to_origin, HermMatrix, RankSet};
use crate::matrix::Matrix;

/// (r−1)-spaces of PG(n−1, q²) with pairwise trivial intersection.
#[derive(Clone, Debug)]
pub struct ProjectivePartialSpread {
    field: Arc<FieldSpec>,
    n: usize,
    r: usize,
    members: Vec<PGSubspace>,
}

impl ProjectivePartialSpread {
    /// Checks shapes and that `[X_S | X_T]` has rank 2r for every pair.
    pub fn new(
        field: Arc<FieldSpec>,
        n: usize,
        r: usize,
        members: Vec<PGSubspace>,
    ) -> Result<Self> {
        if r == 0 || r > n {
            return Err(Error::Usage(format!("need 1 <= r <= n, got n={n} r={r}")));
        }
        for (i, s) in members.iter().enumerate() {
            if s.ambient_dim() != n || s.dim() != r {
                return Err(Error::DimensionMismatch(format!(
                    "member {i} is {}x{}, expected {n}x{r}",
                    s.ambient_dim(),
                    s.dim()
                )));
            }
        }
        let spread = ProjectivePartialSpread {
            field,
            n,
            r,
            members,
        };
        spread.check_pairs()?;
        Ok(spread)
    }

    fn check_pairs(&self) -> Result<()> {
        if 2 * self.r > self.n && self.members.len() > 1 {
            return Err(Error::Usage(format!(
                "two {}-spaces always meet in dimension {}",
                self.r, self.n
            )));
        }
        for (i, s) in self.members.iter().enumerate() {
            for (j, t) in self.members.iter().enumerate().skip(i + 1) {
                let rank = s.basis().hcat(t.basis())?.rank(&self.field);
                if rank != 2 * self.r {
                    return Err(Error::SpreadIntersection {
                        first: i,
                        second: j,
                        rank,
                        expected: 2 * self.r,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn members(&self) -> &[PGSubspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Vectors of length `len` over `alphabet` whose first nonzero coordinate is
/// `one`, grouped by leading position and then in mixed-radix order.
fn normalized_vectors<T: Clone + PartialEq>(
    alphabet: &[T],
    zero: &T,
    one: &T,
    len: usize,
) -> Vec<Vec<T>> {
    let b = alphabet.len();
    let mut out = Vec::new();
    for lead in 0..len {
        let free = len - lead - 1;
        for mut idx in 0..b.pow(free as u32) {
            let mut v = vec![zero.clone(); len];
            v[lead] = one.clone();
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = alphabet[idx % b].clone();
                idx /= b;
            }
            out.push(v);
        }
    }
    out
}

/// One normalized representative of each point of PG(n−1, q²), as n×1
/// bases. There are `(q^{2n} − 1)/(q² − 1)` of them.
pub fn pg_point_spread(field: Arc<FieldSpec>, n: usize) -> Result<ProjectivePartialSpread> {
    if n == 0 {
        return Err(Error::Usage("n must be positive".into()));
    }
    let f = &*field;
    let alphabet: Vec<FElem> = f.elements().collect();
    let members = normalized_vectors(&alphabet, &FElem::ZERO, &FElem::ONE, n)
        .into_iter()
        .map(|v| PGSubspace::new(Matrix::from_vec(n, 1, v)?, f))
        .collect::<Result<Vec<_>>>()?;
    ProjectivePartialSpread::new(field, n, 1, members)
}

/// The Desarguesian (r−1)-spread of PG(n−1, q²): field reduction of the
/// points of PG(n/r − 1, q^{2r}). A point `v` maps to the span of
/// `v, v·y, …, v·y^{r−1}` written over F_{q²}.
pub fn desarguesian_spread(
    field: Arc<FieldSpec>,
    n: usize,
    r: usize,
) -> Result<ProjectivePartialSpread> {
    if r == 0 || n == 0 || !n.is_multiple_of(r) {
        return Err(Error::Usage(format!("r = {r} must divide n = {n}")));
    }
    let f = &*field;
    let ext = Extension::over_full(f, r);
    let m = n / r;
    let alphabet: Vec<ExtElem> = ext.elements().collect();
    let powers: Vec<ExtElem> = (0..r).map(|t| ext.gen_power(t)).collect();
    let members = normalized_vectors(&alphabet, &ext.zero(), &ext.gen_power(0), m)
        .into_iter()
        .map(|v| {
            let mut basis = Matrix::zeros(n, r);
            for (t, yt) in powers.iter().enumerate() {
                for (c, coord) in v.iter().enumerate() {
                    for (s, &x) in ext.mul(coord, yt).iter().enumerate() {
                        basis.set(c * r + s, t, x);
                    }
                }
            }
            PGSubspace::new(basis, f)
        })
        .collect::<Result<Vec<_>>>()?;
    ProjectivePartialSpread::new(field, n, r, members)
}

/// `A_S = X_S·conj(X_S)ᵀ` for each member, in order. Each has rank r.
pub fn spread_gram_matrices(d: &ProjectivePartialSpread) -> Result<Vec<HermMatrix>> {
    let f = d.field();
    d.members()
        .iter()
        .map(|s| {
            let x = s.basis();
            HermMatrix::new(x.mul(&x.conj_transpose(f), f)?, f)
        })
        .collect()
}

/// The lifted set with declared distance 2r. With `translate`, every Gram
/// matrix is subtracted from the first, so the result contains 0 and is a
/// constant rank-distance set in the strict sense; without it the members
/// themselves have rank r.
pub fn lift_partial_spread(d: &ProjectivePartialSpread, translate: bool) -> Result<RankSet> {
    if 2 * d.r() > d.n() {
        return Err(Error::Usage(format!(
            "lift needs 2r <= n, got n={} r={}",
            d.n(),
            d.r()
        )));
    }
    d.check_pairs()?;
    let grams = spread_gram_matrices(d)?;
    let first = grams.first().cloned();
    let set = RankSet::new(d.field().clone(), d.n(), 2 * d.r(), grams)?;
    match first {
        Some(a) if translate => translate_to_origin(&set, &a),
        _ => Ok(set),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_counts() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        assert_eq!(pg_point_spread(f.clone(), 2).unwrap().len(), 5);
        assert_eq!(pg_point_spread(f.clone(), 3).unwrap().len(), 21);
        let f3 = Arc::new(FieldSpec::new(3, 1).unwrap());
        assert_eq!(pg_point_spread(f3, 2).unwrap().len(), 10);
    }

    #[test]
    fn desarguesian_counts() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        // (q^{2n} − 1)/(q^{2r} − 1)
        assert_eq!(desarguesian_spread(f.clone(), 4, 2).unwrap().len(), 17);
        assert_eq!(desarguesian_spread(f.clone(), 2, 1).unwrap().len(), 5);
        assert_eq!(desarguesian_spread(f.clone(), 2, 2).unwrap().len(), 1);
        assert!(desarguesian_spread(f, 3, 2).is_err());
    }

    #[test]
    fn unit_vector_gram() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        let d = pg_point_spread(f.clone(), 2).unwrap();
        let grams = spread_gram_matrices(&d).unwrap();
        assert_eq!(
            grams[0],
            HermMatrix::from_indices(&f, &[&[1, 0], &[0, 0]]).unwrap()
        );
        assert!(grams.iter().all(|g| g.rank(&f) == 1));
    }

    #[test]
    fn lift_rejects_overlapping_members() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        let e1 = Matrix::from_indices(&f, &[&[1], &[0]]).unwrap();
        let s = PGSubspace::new(e1.clone(), &f).unwrap();
        let err = ProjectivePartialSpread::new(f.clone(), 2, 1, vec![s.clone(), s]).unwrap_err();
        assert_eq!(
            err,
            Error::SpreadIntersection {
                first: 0,
                second: 1,
                rank: 1,
                expected: 2
            }
        );
    }

    #[test]
    fn lift_sizes_and_translation() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        let d = pg_point_spread(f.clone(), 3).unwrap();
        let raw = lift_partial_spread(&d, false).unwrap();
        assert_eq!(raw.len(), 21);
        let u = lift_partial_spread(&d, true).unwrap();
        assert_eq!(u.len(), 21);
        assert!(u.contains(&HermMatrix::zero(3)));
        assert_eq!(u.k(), 2);
        let big = desarguesian_spread(f, 4, 2).unwrap();
        assert_eq!(lift_partial_spread(&big, true).unwrap().len(), 17);
    }
}
