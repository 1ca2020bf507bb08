//! Hermitian matrices over F_{q²}, their enumeration, and rank-distance sets.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FElem, FieldSpec};
use crate::matrix::{rank_of, Matrix};

/// Default ceiling on the number of matrices or vectors a brute-force pass
/// may visit.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 24;

/// An n×n matrix with `A = conj(A)ᵀ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HermMatrix(Matrix);

impl HermMatrix {
    /// Validates hermitian symmetry.
    pub fn new(m: Matrix, f: &FieldSpec) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::DimensionMismatch(format!(
                "hermitian matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        for i in 0..m.rows() {
            for j in i..m.cols() {
                if m.get(i, j) != f.conj(m.get(j, i)) {
                    return Err(Error::NotHermitian);
                }
            }
        }
        Ok(HermMatrix(m))
    }

    pub fn from_indices(f: &FieldSpec, rows: &[&[u32]]) -> Result<Self> {
        Self::new(Matrix::from_indices(f, rows)?, f)
    }

    pub fn zero(n: usize) -> Self {
        HermMatrix(Matrix::zeros(n, n))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.0.rows()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FElem {
        self.0.get(i, j)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn rank(&self, f: &FieldSpec) -> usize {
        self.0.rank(f)
    }

    pub fn add(&self, other: &HermMatrix, f: &FieldSpec) -> Result<HermMatrix> {
        Ok(HermMatrix(self.0.add(&other.0, f)?))
    }

    pub fn sub(&self, other: &HermMatrix, f: &FieldSpec) -> Result<HermMatrix> {
        Ok(HermMatrix(self.0.sub(&other.0, f)?))
    }

    pub fn neg(&self, f: &FieldSpec) -> HermMatrix {
        HermMatrix(self.0.map(|x| f.neg(x)))
    }

    /// Multiplies by a scalar of F_q; the hermitian matrices form an F_q-space
    /// but not an F_{q²}-space.
    pub fn scale(&self, c: FElem, f: &FieldSpec) -> Result<HermMatrix> {
        if !f.is_in_subfield(c) {
            return Err(Error::NotInSubfield(c.index()));
        }
        Ok(HermMatrix(self.0.map(|x| f.mul(c, x))))
    }

    /// `rank(self - other)` without allocating an intermediate matrix.
    pub fn rank_distance(&self, other: &HermMatrix, f: &FieldSpec) -> usize {
        let n = self.n();
        let mut buf: Vec<FElem> = self
            .0
            .as_slice()
            .iter()
            .zip(other.0.as_slice())
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        rank_of(n, n, &mut buf, f)
    }

    /// Matrix trace of `conj(self)ᵀ · other`, which lies in F_q for hermitian
    /// operands.
    pub fn trace_pairing(&self, other: &HermMatrix, f: &FieldSpec) -> FElem {
        self.0
            .as_slice()
            .iter()
            .zip(other.0.as_slice())
            .fold(FElem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(f.conj(x), y)))
    }

    /// The value `conj(w)ᵀ · self · w`.
    pub fn form_value(&self, w: &[FElem], f: &FieldSpec) -> FElem {
        let n = self.n();
        let mut acc = FElem::ZERO;
        for i in 0..n {
            let cw = f.conj(w[i]);
            if cw.is_zero() {
                continue;
            }
            let mut row = FElem::ZERO;
            for (j, &wj) in w.iter().enumerate() {
                row = f.add(row, f.mul(self.get(i, j), wj));
            }
            acc = f.add(acc, f.mul(cw, row));
        }
        acc
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[FElem] {
        self.0.as_slice()
    }
}

/// The space H_n(F_{q²}) with a fixed enumeration order.
///
/// A matrix is a mixed-radix number: the n diagonal entries (digits in F_q,
/// ordered by wire index) are the least significant and vary fastest, then
/// the strictly upper entries in row-major order as base-q² digits. The
/// lower triangle is determined by conjugation.
#[derive(Clone, Debug)]
pub struct HermitianSpace<'a> {
    field: &'a FieldSpec,
    n: usize,
    subfield_rank: Vec<u32>,
}

impl<'a> HermitianSpace<'a> {
    pub fn new(field: &'a FieldSpec, n: usize) -> Self {
        let mut subfield_rank = vec![u32::MAX; field.order() as usize];
        for (r, s) in field.subfield_elements().iter().enumerate() {
            subfield_rank[s.index() as usize] = r as u32;
        }
        HermitianSpace {
            field,
            n,
            subfield_rank,
        }
    }

    pub fn field(&self) -> &'a FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `q^{n²}`, or `None` if it does not fit in a `u128`.
    pub fn size(&self) -> Option<u128> {
        (self.field.q() as u128).checked_pow((self.n * self.n) as u32)
    }

    /// Refuses enumeration beyond `budget` matrices.
    pub fn check_budget(&self, budget: u64) -> Result<u64> {
        match self.size() {
            Some(s) if s <= budget as u128 => Ok(s as u64),
            s => Err(Error::BudgetExceeded {
                required: s.unwrap_or(u128::MAX),
                budget,
            }),
        }
    }

    /// The matrix at position `index` of the enumeration.
    pub fn get(&self, mut index: u64) -> HermMatrix {
        let f = self.field;
        let n = self.n;
        let q = f.q() as u64;
        let order = f.order() as u64;
        let mut m = Matrix::zeros(n, n);
        let sub = f.subfield_elements();
        for i in 0..n {
            m.set(i, i, sub[(index % q) as usize]);
            index /= q;
        }
        for i in 0..n {
            for j in i + 1..n {
                let x = FElem::raw((index % order) as u32);
                index /= order;
                m.set(i, j, x);
                m.set(j, i, f.conj(x));
            }
        }
        HermMatrix(m)
    }

    /// Position of `h` in the enumeration.
    pub fn index_of(&self, h: &HermMatrix) -> u64 {
        let q = self.field.q() as u64;
        let order = self.field.order() as u64;
        let n = self.n;
        let mut idx = 0u64;
        for i in (0..n).rev() {
            for j in (i + 1..n).rev() {
                idx = idx * order + h.get(i, j).index() as u64;
            }
        }
        for i in (0..n).rev() {
            idx = idx * q + self.subfield_rank[h.get(i, i).index() as usize] as u64;
        }
        idx
    }

    /// Every hermitian matrix exactly once, in enumeration order.
    pub fn iter(&self, budget: u64) -> Result<impl Iterator<Item = HermMatrix> + '_> {
        let count = self.check_budget(budget)?;
        Ok((0..count).map(move |i| self.get(i)))
    }

    /// Number of matrices of each rank, by enumeration.
    pub fn rank_histogram(&self, budget: u64) -> Result<Vec<u64>> {
        use rayon::prelude::*;
        let count = self.check_budget(budget)?;
        let n = self.n;
        Ok((0..count)
            .into_par_iter()
            .fold(
                || vec![0u64; n + 1],
                |mut acc, i| {
                    acc[self.get(i).rank(self.field)] += 1;
                    acc
                },
            )
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            ))
    }
}

/// A finite set of hermitian matrices with a declared rank distance `k`.
///
/// The declared distance is not enforced on construction; use
/// [`crate::search::is_constant_rank_distance`] to check it. Members keep
/// their insertion order and are pairwise distinct.
#[derive(Clone, Debug)]
pub struct RankSet {
    field: Arc<FieldSpec>,
    n: usize,
    k: usize,
    members: Vec<HermMatrix>,
}

impl PartialEq for RankSet {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.n == other.n
            && self.k == other.k
            && self.members == other.members
    }
}

impl RankSet {
    pub fn new(
        field: Arc<FieldSpec>,
        n: usize,
        k: usize,
        members: Vec<HermMatrix>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Usage("matrix size n must be positive".into()));
        }
        if k == 0 || k > n {
            return Err(Error::Usage(format!(
                "rank distance k={k} must lie in 1..={n}"
            )));
        }
        let mut seen = HashSet::with_capacity(members.len());
        for (i, m) in members.iter().enumerate() {
            if m.n() != n {
                return Err(Error::DimensionMismatch(format!(
                    "member {i} is {}x{}, expected {n}x{n}",
                    m.n(),
                    m.n()
                )));
            }
            if !seen.insert(m) {
                return Err(Error::Usage(format!("member {i} is a duplicate")));
            }
        }
        Ok(RankSet {
            field,
            n,
            k,
            members,
        })
    }

    /// Like [`RankSet::new`] but drops repeated members instead of failing.
    pub fn from_iter_dedup(
        field: Arc<FieldSpec>,
        n: usize,
        k: usize,
        members: impl IntoIterator<Item = HermMatrix>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        let members = members
            .into_iter()
            .filter(|m| seen.insert(m.clone()))
            .collect();
        Self::new(field, n, k, members)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn members(&self) -> &[HermMatrix] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, h: &HermMatrix) -> bool {
        self.members.contains(h)
    }

    pub fn with_k(mut self, k: usize) -> Result<Self> {
        if k == 0 || k > self.n {
            return Err(Error::Usage(format!(
                "rank distance k={k} must lie in 1..={}",
                self.n
            )));
        }
        self.k = k;
        Ok(self)
    }

    /// Members sorted, for order-insensitive comparison.
    pub fn sorted_members(&self) -> Vec<HermMatrix> {
        let mut v = self.members.clone();
        v.sort();
        v
    }

    /// Errors with [`Error::FieldMismatch`] unless `other` is this set's field.
    pub fn same_field(&self, other: &FieldSpec) -> Result<()> {
        if *self.field == *other {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

/// `{A - B : B ∈ U}`; the result contains 0 and has the same size.
pub fn translate_to_origin(set: &RankSet, a: &HermMatrix) -> Result<RankSet> {
    if !set.contains(a) {
        return Err(Error::Usage(
            "translation point is not a member of the set".into(),
        ));
    }
    let f = set.field();
    let members = set
        .members()
        .iter()
        .map(|b| a.sub(b, f))
        .collect::<Result<Vec<_>>>()?;
    RankSet::new(f.clone(), set.n(), set.k(), members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::is_constant_rank_distance;

    #[test]
    fn enumeration_counts() {
        let f4 = FieldSpec::new(2, 1).unwrap();
        let space = HermitianSpace::new(&f4, 2);
        assert_eq!(space.size(), Some(16));
        let all: Vec<_> = space.iter(1 << 20).unwrap().collect();
        assert_eq!(all.len(), 16);
        let distinct: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), 16);
        for (i, h) in all.iter().enumerate() {
            assert_eq!(space.index_of(h), i as u64);
        }
        assert_eq!(space.rank_histogram(1 << 20).unwrap(), vec![1, 5, 10]);

        let f9 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(
            HermitianSpace::new(&f9, 2).iter(1 << 20).unwrap().count(),
            81
        );
    }

    #[test]
    fn diagonal_varies_fastest() {
        let f4 = FieldSpec::new(2, 1).unwrap();
        let space = HermitianSpace::new(&f4, 2);
        let h1 = space.get(1);
        assert_eq!(h1.get(0, 0), FElem::ONE);
        assert_eq!(h1.get(1, 1), FElem::ZERO);
        let h4 = space.get(4);
        assert_eq!(h4.get(0, 1), FElem::ONE);
        assert!(h4.get(0, 0).is_zero());
    }

    #[test]
    fn budget_refusal_reports_count() {
        let f4 = FieldSpec::new(2, 1).unwrap();
        let space = HermitianSpace::new(&f4, 3);
        let refused = matches!(
            space.iter(100),
            Err(Error::BudgetExceeded {
                required: 512,
                budget: 100
            })
        );
        assert!(refused);
    }

    #[test]
    fn non_hermitian_rejected() {
        let f4 = FieldSpec::new(2, 1).unwrap();
        assert_eq!(
            HermMatrix::from_indices(&f4, &[&[0, 2], &[2, 0]]),
            Err(Error::NotHermitian)
        );
        assert!(HermMatrix::from_indices(&f4, &[&[0, 2], &[3, 0]]).is_ok());
        assert_eq!(
            HermMatrix::from_indices(&f4, &[&[2, 0], &[0, 0]]),
            Err(Error::NotHermitian)
        );
    }

    #[test]
    fn translation() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        let a = HermMatrix::from_indices(&f, &[&[1, 1], &[1, 0]]).unwrap();
        let b = HermMatrix::from_indices(&f, &[&[0, 2], &[3, 0]]).unwrap();
        let set = RankSet::new(f.clone(), 2, 2, vec![a.clone(), b.clone()]).unwrap();
        let t = translate_to_origin(&set, &a).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.contains(&HermMatrix::zero(2)));
        assert!(t.contains(&a.sub(&b, &f).unwrap()));
        assert!(is_constant_rank_distance(&t, 2).holds());

        let single = RankSet::new(f.clone(), 2, 2, vec![a.clone()]).unwrap();
        assert_eq!(
            translate_to_origin(&single, &a).unwrap().members(),
            &[HermMatrix::zero(2)]
        );
        assert!(translate_to_origin(&single, &b).is_err());
    }

    #[test]
    fn rank_set_validation() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        let z = HermMatrix::zero(2);
        assert!(RankSet::new(f.clone(), 2, 0, vec![]).is_err());
        assert!(RankSet::new(f.clone(), 2, 3, vec![]).is_err());
        assert!(RankSet::new(f.clone(), 2, 2, vec![z.clone(), z.clone()]).is_err());
        assert!(RankSet::new(f.clone(), 3, 2, vec![z]).is_err());
        assert!(RankSet::new(f, 2, 2, vec![]).unwrap().is_empty());
    }
}
