//! Eigenvalues `P_i(j)` of the hermitian forms scheme.
//!
//! Row 0 is all ones, row 1 has the closed form `((−q)^{2n−j} − 1)/(q+1)`,
//! and the remaining rows follow from the three-term recurrence
//!
//! ```text
//! P_1(j)·P_k(j) = c_{k+1}·P_{k+1}(j) + a_k·P_k(j) + b_{k−1}·P_{k−1}(j)
//! b_i = (q^{2n} − q^{2i})/(q+1)
//! c_i = (−q)^{i−1}·((−q)^i − 1)/((−q) − 1)
//! a_i = b_0 − b_i − c_i
//! ```
//!
//! All arithmetic is on `BigInt`; any inexact division is reported as a
//! consistency error.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::prime_power;

/// The (n+1)×(n+1) table with `rows[i][j] = P_i(j)`. The scheme is formally
/// self-dual, so the same table is the dual eigenmatrix `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenTable {
    q: u64,
    n: usize,
    rows: Vec<Vec<BigInt>>,
}

fn pow(base: &BigInt, e: usize) -> BigInt {
    num_traits::pow(base.clone(), e)
}

fn exact_div(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    if den.is_zero() {
        return Err(Error::Consistency(format!("division by zero in {what}")));
    }
    let (quot, rem) = num.div_rem(den);
    if !rem.is_zero() {
        return Err(Error::Consistency(format!(
            "inexact division {num}/{den} in {what}"
        )));
    }
    Ok(quot)
}

fn check_q(q: u64) -> Result<()> {
    prime_power(q)
        .map(|_| ())
        .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))
}

/// Gaussian binomial coefficient `[n, k]_b`.
pub fn gaussian_binomial(n: usize, k: usize, b: &BigInt) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= pow(b, n - i) - 1;
        den *= pow(b, i + 1) - 1;
    }
    num / den
}

/// Number of hermitian n×n matrices of rank `j` over F_{q²}:
/// `[n, j]_{q²} · q^{j(j−1)/2} · Π_{i=1}^{j} (q^i + (−1)^i)`.
pub fn valency(j: usize, q: u64, n: usize) -> BigInt {
    if j > n {
        return BigInt::zero();
    }
    let qb = BigInt::from(q);
    let mut v = gaussian_binomial(n, j, &(&qb * &qb)) * pow(&qb, j * j.saturating_sub(1) / 2);
    for i in 1..=j {
        let s = if i % 2 == 0 { 1 } else { -1 };
        v *= pow(&qb, i) + s;
    }
    v
}

/// `P_1(j) = ((−q)^{2n−j} − 1)/(q+1)`.
pub fn p1_closed_form(q: u64, n: usize, j: usize) -> Result<BigInt> {
    let mq = -BigInt::from(q);
    exact_div(
        &(pow(&mq, 2 * n - j) - 1),
        &BigInt::from(q + 1),
        "P_1 closed form",
    )
}

/// `P_k(n) = Π_{i=1}^{k} ((−q)^{i−1} − (−q)^n)/((−q)^i − 1)`, which must be an
/// integer.
pub fn pk_at_n_product(q: u64, n: usize, k: usize) -> Result<BigInt> {
    let mq = -BigInt::from(q);
    let mut value = BigRational::one();
    for i in 1..=k {
        value *= BigRational::new(pow(&mq, i - 1) - pow(&mq, n), pow(&mq, i) - 1);
    }
    if !value.is_integer() {
        return Err(Error::Consistency(format!(
            "P_{k}({n}) product is not an integer"
        )));
    }
    Ok(value.to_integer())
}

/// Recurrence coefficients `(b, c, a)` indexed `0..=n`; `c_0 = 0`.
pub fn recurrence_coefficients(
    q: u64,
    n: usize,
) -> Result<(Vec<BigInt>, Vec<BigInt>, Vec<BigInt>)> {
    let qb = BigInt::from(q);
    let mq = -qb.clone();
    let q2n = pow(&qb, 2 * n);
    let b = (0..=n)
        .map(|i| exact_div(&(&q2n - pow(&qb, 2 * i)), &BigInt::from(q + 1), "b_i"))
        .collect::<Result<Vec<_>>>()?;
    let mut c = vec![BigInt::zero()];
    for i in 1..=n {
        let ratio = exact_div(&(pow(&mq, i) - 1), &(&mq - 1), "c_i")?;
        c.push(pow(&mq, i - 1) * ratio);
    }
    let a = (0..=n).map(|i| &b[0] - &b[i] - &c[i]).collect();
    Ok((b, c, a))
}

/// Builds the table from the closed form for row 1 and the recurrence.
pub fn eigen_table(q: u64, n: usize) -> Result<EigenTable> {
    check_q(q)?;
    if n == 0 {
        return Err(Error::Usage("n must be positive".into()));
    }
    let (b, c, a) = recurrence_coefficients(q, n)?;
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    rows.push(vec![BigInt::one(); n + 1]);
    rows.push(
        (0..=n)
            .map(|j| p1_closed_form(q, n, j))
            .collect::<Result<_>>()?,
    );
    for k in 1..n {
        let next = (0..=n)
            .map(|j| {
                let num =
                    &rows[1][j] * &rows[k][j] - &a[k] * &rows[k][j] - &b[k - 1] * &rows[k - 1][j];
                exact_div(&num, &c[k + 1], "three-term recurrence")
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(next);
    }
    Ok(EigenTable { q, n, rows })
}

impl EigenTable {
    pub fn from_rows(q: u64, n: usize, rows: Vec<Vec<BigInt>>) -> Self {
        EigenTable { q, n, rows }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `P_i(j)`.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Entry `(j, i)` of the dual eigenmatrix; equals `P_i(j)` as well.
    pub fn dual(&self, j: usize, i: usize) -> &BigInt {
        &self.rows[i][j]
    }

    /// Checks every structural identity the table must satisfy.
    pub fn verify_invariants(&self) -> Result<()> {
        let (q, n) = (self.q, self.n);
        let fail = |msg: String| Err(Error::Consistency(msg));
        if self.rows.len() != n + 1 || self.rows.iter().any(|r| r.len() != n + 1) {
            return fail("table has the wrong shape".into());
        }
        for j in 0..=n {
            if !self.rows[0][j].is_one() {
                return fail(format!("P_0({j}) != 1"));
            }
            if self.rows[1][j] != p1_closed_form(q, n, j)? {
                return fail(format!("P_1({j}) disagrees with the closed form"));
            }
        }
        for i in 0..=n {
            if self.rows[i][0] != valency(i, q, n) {
                return fail(format!("P_{i}(0) disagrees with the valency"));
            }
            if self.rows[i][n] != pk_at_n_product(q, n, i)? {
                return fail(format!("P_{i}({n}) disagrees with the product formula"));
            }
        }
        let total = pow(&BigInt::from(q), n * n);
        for j in 0..=n {
            let s: BigInt = self.rows.iter().map(|r| &r[j]).sum();
            let expected = if j == 0 {
                total.clone()
            } else {
                BigInt::zero()
            };
            if s != expected {
                return fail(format!("column {j} sums to {s}, expected {expected}"));
            }
        }
        for i in 0..=n {
            for k in 0..=n {
                if &self.rows[i][k] * &self.rows[k][0] != &self.rows[k][i] * &self.rows[i][0] {
                    return fail(format!("ratio identity fails at ({i}, {k})"));
                }
            }
        }
        Ok(())
    }

    /// Indices `i` with `P_i(k) < 0`.
    pub fn negative_in_column(&self, k: usize) -> Vec<usize> {
        (0..=self.n)
            .filter(|&i| self.rows[i][k].is_negative())
            .collect()
    }
}
