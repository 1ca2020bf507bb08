//! Inner distributions and the Delsarte inequalities `aQ ≥ 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::hermitian::{HermMatrix, RankSet};

use super::eigen::EigenTable;

/// `a_i = #{(x, y) ∈ U×U : rank(x − y) = i} / |U|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerDistribution {
    a: Vec<BigRational>,
}

impl InnerDistribution {
    /// Accepts an arbitrary candidate vector, e.g. to test feasibility of a
    /// hypothetical set. `a_0` must be 1 and no entry may be negative.
    pub fn from_values(a: Vec<BigRational>) -> Result<Self> {
        if a.first().is_none_or(|a0| !a0.is_one()) {
            return Err(Error::Usage(
                "inner distribution must start with a_0 = 1".into(),
            ));
        }
        if a.iter().any(|x| x.is_negative()) {
            return Err(Error::Usage(
                "inner distribution entries must be non-negative".into(),
            ));
        }
        Ok(InnerDistribution { a })
    }

    pub fn from_integers(a: &[i64]) -> Result<Self> {
        Self::from_values(
            a.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn values(&self) -> &[BigRational] {
        &self.a
    }

    /// `Σ a_i`, the size of the set when the distribution is realized.
    pub fn total(&self) -> BigRational {
        self.a.iter().sum()
    }
}

/// Inner distribution of a non-empty set of n×n hermitian matrices.
pub fn inner_distribution(
    f: &FieldSpec,
    n: usize,
    members: &[HermMatrix],
) -> Result<InnerDistribution> {
    if members.is_empty() {
        return Err(Error::Usage("inner distribution of an empty set".into()));
    }
    let mut pairs = vec![0u64; n + 1];
    pairs[0] = members.len() as u64;
    for (i, x) in members.iter().enumerate() {
        for y in &members[i + 1..] {
            pairs[x.rank_distance(y, f)] += 2;
        }
    }
    let size = BigInt::from(members.len());
    Ok(InnerDistribution {
        a: pairs
            .into_iter()
            .map(|c| BigRational::new(BigInt::from(c), size.clone()))
            .collect(),
    })
}

impl RankSet {
    pub fn inner_distribution(&self) -> Result<InnerDistribution> {
        inner_distribution(self.field(), self.n(), self.members())
    }
}

/// The vector `aQ` and whether every entry is non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelsarteReport {
    pub values: Vec<BigRational>,
    pub feasible: bool,
}

/// `(aQ)_i = Σ_j a_j P_i(j)`.
pub fn delsarte_check(a: &InnerDistribution, table: &EigenTable) -> Result<DelsarteReport> {
    let n = table.n();
    if a.values().len() != n + 1 {
        return Err(Error::DimensionMismatch(format!(
            "distribution of length {} against a table for n = {n}",
            a.values().len()
        )));
    }
    let values: Vec<BigRational> = (0..=n)
        .map(|i| {
            a.values()
                .iter()
                .enumerate()
                .fold(BigRational::zero(), |acc, (j, aj)| {
                    acc + aj * BigRational::from_integer(table.get(i, j).clone())
                })
        })
        .collect();
    let feasible = values.iter().all(|v| !v.is_negative());
    Ok(DelsarteReport { values, feasible })
}
