//! Upper bounds on the size of constant rank-distance sets in H_n(F_{q²}).
//!
//! Entries are tagged by scope. Only [`BoundScope::General`] entries constrain
//! arbitrary sets and enter the certified ceiling; bounds for linear sets are
//! exceeded by non-linear constructions, and literature values are quoted
//! without an in-crate derivation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::field::prime_power;

use super::eigen::{eigen_table, EigenTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundScope {
    /// Valid for every constant rank-distance set with these parameters.
    General,
    /// Valid only for sets closed under addition.
    LinearOnly,
    /// Quoted from the literature, not derived here.
    Literature,
}

impl BoundScope {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundScope::General => "general",
            BoundScope::LinearOnly => "linear-only",
            BoundScope::Literature => "literature",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundEntry {
    pub name: String,
    pub value: BigRational,
    pub scope: BoundScope,
    pub condition: String,
    pub source: &'static str,
}

impl BoundEntry {
    /// Largest set size the bound permits, `⌊value⌋`.
    pub fn ceiling(&self) -> BigInt {
        self.value.floor().to_integer()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    /// Minimum ceiling over the general entries.
    pub fn certified_ceiling(&self) -> Option<BigInt> {
        self.entries
            .iter()
            .filter(|e| e.scope == BoundScope::General)
            .map(BoundEntry::ceiling)
            .min()
    }

    pub fn find(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

fn int(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

fn qpow(q: u64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(q), e)
}

fn alt(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `q^{2n−1} + q^n − q^{n−1} − a_1·q^{n−1}` for odd `n ≥ 3`: the ceiling
/// for a set whose pairwise rank distances are at most 2, given its inner
/// distribution entry `a_1`.
pub fn rank_at_most_two_bound(q: u64, n: usize, a1: &BigRational) -> Result<BigRational> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Usage(format!(
            "rank-at-most-two bound needs odd n >= 3, got {n}"
        )));
    }
    let base = qpow(q, 2 * n - 1) + qpow(q, n) - qpow(q, n - 1);
    Ok(int(base) - a1 * int(qpow(q, n - 1)))
}

/// Every applicable upper bound for a constant rank-distance `k` set.
pub fn bound_catalog(q: u64, n: usize, k: usize) -> Result<BoundReport> {
    if prime_power(q).is_none() {
        return Err(Error::InvalidField(format!("{q} is not a prime power")));
    }
    if n == 0 || k == 0 || k > n {
        return Err(Error::Usage(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    let table = eigen_table(q, n)?;
    let mut entries = Vec::new();

    let linear = if k % 2 == 1 {
        qpow(q, k)
    } else {
        qpow(q, 2 * n - k)
    };
    entries.push(BoundEntry {
        name: "linear-character".into(),
        value: int(linear),
        scope: BoundScope::LinearOnly,
        condition: "set closed under addition".into(),
        source: "trivial-character multiplicity of χ restricted to an additive subgroup",
    });

    if k % 2 == 1 {
        entries.push(BoundEntry {
            name: "odd-rank".into(),
            value: int(qpow(q, k)),
            scope: BoundScope::General,
            condition: "k odd".into(),
            source: "Delsarte inequality at P_1 with the closed form for P_1(k)",
        });
    }

    push_ratio_bounds(&table, k, &mut entries);

    if k % 4 == 2 {
        let prod: BigInt = (1..=k)
            .map(|i| qpow(q, n - i + 1) + alt(n - i + 1))
            .product();
        entries.push(BoundEntry {
            name: "rank-2-mod-4".into(),
            value: int(prod + 1),
            scope: BoundScope::General,
            condition: "k ≡ 2 (mod 4)".into(),
            source: "Delsarte inequality at P_k(n) with the product formula",
        });
    }

    if k == 2 || (k == n && n.is_multiple_of(2)) {
        let value = qpow(q, 2 * n - 1) + alt(n - 1) * (qpow(q, n) - qpow(q, n - 1));
        entries.push(BoundEntry {
            name: "thas-form".into(),
            value: int(value),
            scope: BoundScope::General,
            condition: if k == 2 {
                "k = 2".into()
            } else {
                "k = n, n even".into()
            },
            source:
                "closed form of 1 − P_2(0)/P_2(n); equals Thas' partial spread bound for even n",
        });
    }

    if n >= 3 && n % 2 == 1 && k <= 2 {
        entries.push(BoundEntry {
            name: "rank-at-most-two".into(),
            value: rank_at_most_two_bound(q, n, &BigRational::from_integer(0.into()))?,
            scope: BoundScope::General,
            condition: "odd n >= 3, all pairwise rank distances <= 2; subtract a_1·q^(n−1) when a_1 is known".into(),
            source: "Delsarte inequality at column n restricted to a_0, a_1, a_2",
        });
    }

    if n == 2 && k == 2 {
        entries.push(BoundEntry {
            name: "n2-partial-spread-literature".into(),
            value: BigRational::new(qpow(q, 3) + q, 2.into()),
            scope: BoundScope::Literature,
            condition: "n = 2 partial spread sets".into(),
            source: "improved bound (q^3 + q)/2 for partial spread sets of H_2(F_{q²}), quoted",
        });
    }

    for e in &entries {
        if e.value < BigRational::one() {
            return Err(Error::Consistency(format!("bound {} is below 1", e.name)));
        }
    }
    Ok(BoundReport { q, n, k, entries })
}

fn push_ratio_bounds(table: &EigenTable, k: usize, entries: &mut Vec<BoundEntry>) {
    for i in table.negative_in_column(k) {
        let value =
            BigRational::one() - BigRational::new(table.get(i, 0).clone(), table.get(i, k).clone());
        entries.push(BoundEntry {
            name: format!("delsarte-ratio[i={i}]"),
            value,
            scope: BoundScope::General,
            condition: format!("P_{i}({k}) < 0"),
            source: "Delsarte inequality (aQ)_i >= 0 with a = (1, 0, …, |U|−1, …, 0)",
        });
    }
    for i in 0..=table.n() {
        if table.get(k, i).is_negative() {
            let value = BigRational::one()
                - BigRational::new(table.get(k, 0).clone(), table.get(k, i).clone());
            entries.push(BoundEntry {
                name: format!("delsarte-ratio-dual[i={i}]"),
                value,
                scope: BoundScope::General,
                condition: format!("P_{k}({i}) < 0"),
                source:
                    "ratio identity P_i(k)/P_i(0) = P_k(i)/P_k(0) applied to the Delsarte bound",
            });
        }
    }
}
