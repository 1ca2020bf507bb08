//! Exact arithmetic in the tower F_p ⊂ F_q ⊂ F_{q²}.
//!
//! Elements of F_{q²} are polynomials over F_p of degree < 2e reduced modulo a
//! fixed monic irreducible `modulus_q2`. An element is identified with its
//! wire index `Σ cᵢ·pⁱ`, which is also the row/column of the precomputed
//! operation tables. The subfield F_q is the fixed field of `x ↦ x^q`; it is
//! realized through a root of `modulus_q` inside F_{q²}.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported order of F_{q²}; the operation tables are dense.
pub const MAX_ORDER: u32 = 1024;

/// An element of F_{q²}, stored as its wire index.
///
/// The index is only meaningful relative to the [`FieldSpec`] that produced
/// it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FElem(u32);

impl FElem {
    pub const ZERO: FElem = FElem(0);
    pub const ONE: FElem = FElem(1);

    /// Wire index `Σ cᵢ·pⁱ`.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Caller guarantees `i` is below the field order.
    #[inline]
    pub(crate) fn raw(i: u32) -> FElem {
        FElem(i)
    }
}

impl fmt::Display for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Description of F_p ⊂ F_q ⊂ F_{q²} together with dense operation tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    order: u32,
    modulus_q: Vec<u32>,
    modulus_q2: Vec<u32>,
    // F_q element (index in its own polynomial basis) -> F_{q²} element
    embedding: Vec<FElem>,
    subfield: Vec<FElem>,
    in_subfield: Vec<bool>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    conj: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus_q2 == other.modulus_q2
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("modulus_q", &self.modulus_q)
            .field("modulus_q2", &self.modulus_q2)
            .finish()
    }
}

impl FieldSpec {
    /// Builds F_{q²} for `q = p^e` with the default moduli: the smallest monic
    /// irreducible polynomials of degree `e` and `2e` over F_p.
    pub fn new(p: u32, e: u32) -> Result<Self> {
        check_params(p, e)?;
        let modulus_q2 = fp_poly::smallest_irreducible(p, 2 * e as usize);
        Self::with_modulus(p, e, modulus_q2)
    }

    /// Builds the field for a prime power `q`.
    pub fn from_q(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Self::new(p as u32, e)
    }

    /// Builds F_{q²} from an explicit modulus (coefficients, constant term
    /// first, monic of degree `2e`).
    pub fn with_modulus(p: u32, e: u32, modulus_q2: Vec<u32>) -> Result<Self> {
        check_params(p, e)?;
        let deg = 2 * e as usize;
        if modulus_q2.len() != deg + 1 {
            return Err(Error::InvalidField(format!(
                "modulus must have {} coefficients, got {}",
                deg + 1,
                modulus_q2.len()
            )));
        }
        if modulus_q2[deg] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if modulus_q2.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!(
                "modulus coefficients must lie in [0, {p})"
            )));
        }
        if !fp_poly::is_irreducible(&modulus_q2, p) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus_q2:?} is reducible over F_{p}"
            )));
        }

        let q = p.pow(e);
        let order = q * q;
        let ord = order as usize;
        let coeffs: Vec<Vec<u32>> = (0..order).map(|i| digits(i, p, deg)).collect();

        let mut add = vec![0u32; ord * ord];
        let mut mul = vec![0u32; ord * ord];
        for a in 0..ord {
            for b in a..ord {
                let s = encode(
                    &coeffs[a]
                        .iter()
                        .zip(&coeffs[b])
                        .map(|(x, y)| (x + y) % p)
                        .collect::<Vec<_>>(),
                    p,
                );
                let m = encode(&fp_poly::mul_mod(&coeffs[a], &coeffs[b], &modulus_q2, p), p);
                add[a * ord + b] = s;
                add[b * ord + a] = s;
                mul[a * ord + b] = m;
                mul[b * ord + a] = m;
            }
        }
        let neg: Vec<u32> = (0..ord)
            .map(|a| {
                encode(
                    &coeffs[a].iter().map(|&c| (p - c) % p).collect::<Vec<_>>(),
                    p,
                )
            })
            .collect();
        let mut inv = vec![0u32; ord];
        for a in 1..ord {
            inv[a] = (1..order)
                .find(|&b| mul[a * ord + b as usize] == 1)
                .ok_or_else(|| Error::Consistency(format!("no inverse for {a}")))?;
        }

        let mut field = FieldSpec {
            p,
            e,
            q,
            order,
            modulus_q: fp_poly::smallest_irreducible(p, e as usize),
            modulus_q2,
            embedding: Vec::new(),
            subfield: Vec::new(),
            in_subfield: Vec::new(),
            add,
            mul,
            neg,
            inv,
            conj: Vec::new(),
        };
        field.conj = (0..order)
            .map(|a| field.pow(FElem(a), q as u64).0)
            .collect();
        field.embedding = field.build_embedding()?;
        let mut subfield = field.embedding.clone();
        subfield.sort();
        field.in_subfield = vec![false; ord];
        for s in &subfield {
            field.in_subfield[s.0 as usize] = true;
        }
        field.subfield = subfield;

        // the embedded image must be exactly the fixed field of Frobenius
        for a in 0..order {
            let fixed = field.conj[a as usize] == a;
            if fixed != field.in_subfield[a as usize] {
                return Err(Error::Consistency(format!(
                    "embedding of F_{q} disagrees with the Frobenius fixed field at {a}"
                )));
            }
        }
        Ok(field)
    }

    fn build_embedding(&self) -> Result<Vec<FElem>> {
        if self.e == 1 {
            return Ok((0..self.p).map(FElem).collect());
        }
        // smallest-index root of modulus_q inside F_{q²}
        let theta = (0..self.order)
            .map(FElem)
            .find(|&x| {
                let mut acc = FElem::ZERO;
                for &c in self.modulus_q.iter().rev() {
                    acc = self.add(self.mul(acc, x), FElem(c));
                }
                acc.is_zero()
            })
            .ok_or_else(|| Error::Consistency("modulus_q has no root in F_{q²}".into()))?;
        let e = self.e as usize;
        Ok((0..self.q)
            .map(|i| {
                let mut acc = FElem::ZERO;
                for &c in digits(i, self.p, e).iter().rev() {
                    acc = self.add(self.mul(acc, theta), FElem(c));
                }
                acc
            })
            .collect())
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of elements of F_{q²}.
    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients of the degree-`e` modulus defining F_q, constant term first.
    pub fn modulus_q(&self) -> &[u32] {
        &self.modulus_q
    }

    /// Coefficients of the degree-`2e` modulus defining F_{q²}, constant term first.
    pub fn modulus_q2(&self) -> &[u32] {
        &self.modulus_q2
    }

    /// Validates a wire index.
    pub fn element(&self, index: u64) -> Result<FElem> {
        if index < self.order as u64 {
            Ok(FElem(index as u32))
        } else {
            Err(Error::ElementOutOfRange {
                index,
                order: self.order as u64,
            })
        }
    }

    /// The element of the prime field with value `c mod p`.
    pub fn from_prime(&self, c: u64) -> FElem {
        FElem((c % self.p as u64) as u32)
    }

    /// Builds an element from its coefficient vector (constant term first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FElem> {
        if coeffs.len() > 2 * self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Usage(format!(
                "invalid coefficient vector {coeffs:?} for F_{}",
                self.order
            )));
        }
        Ok(FElem(encode(coeffs, self.p)))
    }

    /// Coefficient vector of length `2e`, constant term first.
    pub fn coeffs(&self, a: FElem) -> Vec<u32> {
        digits(a.0, self.p, 2 * self.e as usize)
    }

    /// All elements of F_{q²} in wire order.
    pub fn elements(&self) -> impl Iterator<Item = FElem> + Clone {
        (0..self.order).map(FElem)
    }

    /// Elements of the embedded F_q sorted by wire index.
    pub fn subfield_elements(&self) -> &[FElem] {
        &self.subfield
    }

    /// Image of the F_q element with index `i` in the basis of `modulus_q`.
    pub fn embed(&self, i: u32) -> Result<FElem> {
        self.embedding
            .get(i as usize)
            .copied()
            .ok_or(Error::ElementOutOfRange {
                index: i as u64,
                order: self.q as u64,
            })
    }

    #[inline]
    pub fn is_in_subfield(&self, a: FElem) -> bool {
        self.in_subfield[a.0 as usize]
    }

    #[inline]
    pub fn add(&self, a: FElem, b: FElem) -> FElem {
        FElem(self.add[a.0 as usize * self.order as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: FElem) -> FElem {
        FElem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FElem, b: FElem) -> FElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FElem, b: FElem) -> FElem {
        FElem(self.mul[a.0 as usize * self.order as usize + b.0 as usize])
    }

    pub fn inv(&self, a: FElem) -> Result<FElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero("field inverse"));
        }
        Ok(FElem(self.inv[a.0 as usize]))
    }

    pub fn div(&self, a: FElem, b: FElem) -> Result<FElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FElem, mut exp: u64) -> FElem {
        let mut base = a;
        let mut acc = FElem::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// The Frobenius conjugate `a^q`.
    #[inline]
    pub fn conj(&self, a: FElem) -> FElem {
        FElem(self.conj[a.0 as usize])
    }

    /// `a + a^q`, an element of F_q.
    pub fn rel_trace(&self, a: FElem) -> FElem {
        self.add(a, self.conj(a))
    }

    /// `a^{q+1}`, an element of F_q.
    pub fn rel_norm(&self, a: FElem) -> FElem {
        self.mul(a, self.conj(a))
    }

    /// Absolute trace F_q → F_p of an element of the embedded F_q.
    pub fn abs_trace(&self, a: FElem) -> Result<u32> {
        if !self.is_in_subfield(a) {
            return Err(Error::NotInSubfield(a.0));
        }
        let mut acc = FElem::ZERO;
        let mut x = a;
        for _ in 0..self.e {
            acc = self.add(acc, x);
            x = self.pow(x, self.p as u64);
        }
        // prime-field elements are the constant polynomials
        if acc.0 >= self.p {
            return Err(Error::Consistency(format!("trace of {a} left F_p")));
        }
        Ok(acc.0)
    }

    /// Nonzero `a` of smallest wire index with `conj(a) = -a`; the scalar of
    /// the hermitian form `[[0, aI], [-aI, 0]]`.
    pub fn form_scalar(&self) -> FElem {
        self.elements()
            .skip(1)
            .find(|&a| self.conj(a) == self.neg(a))
            .expect("the kernel of the relative trace is nontrivial")
    }
}

fn check_params(p: u32, e: u32) -> Result<()> {
    if p < 2 || !is_prime(p as u64) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if e == 0 {
        return Err(Error::InvalidField("exponent must be positive".into()));
    }
    let order = (p as u64).checked_pow(2 * e);
    match order {
        Some(o) if o <= MAX_ORDER as u64 => Ok(()),
        _ => Err(Error::InvalidField(format!(
            "F_{{{p}^{}}} exceeds the supported order {MAX_ORDER}",
            2 * e
        ))),
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^e`; `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn digits(mut i: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = i % p;
        i /= p;
    }
    out
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Dense polynomials over F_p, coefficients constant term first.
pub(crate) mod fp_poly {
    pub fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
        let deg = modulus.len() - 1;
        let mut prod = vec![0u32; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let mut r = rem(&prod, modulus, p);
        r.resize(deg, 0);
        r
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let dm = m.len() - 1;
        let mut r = a.to_vec();
        while r.len() > dm {
            let lead = r.pop().unwrap();
            if lead != 0 {
                let shift = r.len() - dm;
                for (i, &c) in m[..dm].iter().enumerate() {
                    r[shift + i] = (r[shift + i] + (p - c) * lead) % p;
                }
            }
        }
        r
    }

    /// Brute-force irreducibility: no monic factor of degree `1..=deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        if deg == 0 {
            return false;
        }
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut x = idx;
                for _ in 0..d {
                    g.push((x % p as u64) as u32);
                    x /= p as u64;
                }
                g.push(1);
                if rem(f, &g, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest monic irreducible of degree `deg`, ordering candidates by the
    /// integer `Σ cᵢ pⁱ` of their non-leading coefficients.
    pub fn smallest_irreducible(p: u32, deg: usize) -> Vec<u32> {
        let count = (p as u64).pow(deg as u32);
        (0..count)
            .map(|idx| {
                let mut f = Vec::with_capacity(deg + 1);
                let mut x = idx;
                for _ in 0..deg {
                    f.push((x % p as u64) as u32);
                    x /= p as u64;
                }
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FieldSpec {
        FieldSpec::new(2, 1).unwrap()
    }

    #[test]
    fn default_moduli() {
        assert_eq!(f4().modulus_q2(), &[1, 1, 1]);
        assert_eq!(FieldSpec::new(3, 1).unwrap().modulus_q2(), &[1, 0, 1]);
        let f16 = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f16.modulus_q(), &[1, 1, 1]);
        assert_eq!(f16.modulus_q2(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn f4_products() {
        let f = f4();
        let w = FElem(2);
        let w2 = f.mul(w, w);
        assert_eq!(w2, FElem(3)); // ω² = ω + 1
        assert_eq!(f.mul(w, w2), FElem::ONE);
        assert_eq!(f.conj(w), w2);
        assert_eq!(f.rel_trace(w), FElem::ONE);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = f4();
        assert_eq!(
            f.div(FElem::ONE, FElem::ZERO),
            Err(Error::DivisionByZero("field inverse"))
        );
    }

    #[test]
    fn conj_fixes_exactly_the_subfield_of_f9() {
        let f = FieldSpec::new(3, 1).unwrap();
        let fixed: Vec<_> = f.elements().filter(|&a| f.conj(a) == a).collect();
        assert_eq!(fixed, vec![FElem(0), FElem(1), FElem(2)]);
        assert_eq!(f.subfield_elements(), &fixed[..]);
    }

    #[test]
    fn norm_is_q_plus_one_to_one() {
        for q in [2u64, 3, 4] {
            let f = FieldSpec::from_q(q).unwrap();
            let mut hits = vec![0usize; f.order() as usize];
            for a in f.elements().skip(1) {
                hits[f.rel_norm(a).index() as usize] += 1;
            }
            for a in f.elements() {
                let expected = if a.is_zero() || !f.is_in_subfield(a) {
                    0
                } else {
                    q as usize + 1
                };
                assert_eq!(hits[a.index() as usize], expected, "q={q} a={a}");
            }
        }
    }

    #[test]
    fn abs_trace_balanced() {
        for q in [2u64, 3, 4, 8, 9] {
            let f = FieldSpec::from_q(q).unwrap();
            let mut hits = vec![0u32; f.p() as usize];
            for &a in f.subfield_elements() {
                hits[f.abs_trace(a).unwrap() as usize] += 1;
            }
            assert!(hits.iter().all(|&h| h as u64 == q / f.p() as u64), "q={q}");
        }
        let f16 = FieldSpec::new(2, 2).unwrap();
        let zeros = f16
            .subfield_elements()
            .iter()
            .filter(|&&a| f16.abs_trace(a).unwrap() == 0)
            .count();
        assert_eq!(zeros, 2);
        let outside = f16.elements().find(|&a| !f16.is_in_subfield(a)).unwrap();
        assert!(matches!(
            f16.abs_trace(outside),
            Err(Error::NotInSubfield(_))
        ));
    }

    #[test]
    fn abs_trace_is_identity_for_prime_q() {
        let f = FieldSpec::new(5, 1).unwrap();
        for c in 0..5 {
            assert_eq!(f.abs_trace(FElem(c)).unwrap(), c);
        }
    }

    #[test]
    fn frobenius_has_order_two() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = FieldSpec::from_q(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.conj(f.conj(a)), a);
                assert_eq!(f.pow(a, q * q), a);
            }
        }
    }

    #[test]
    fn form_scalar_is_skew() {
        for q in [2u64, 3, 4, 5, 9] {
            let f = FieldSpec::from_q(q).unwrap();
            let a = f.form_scalar();
            assert!(!a.is_zero());
            assert_eq!(f.conj(a), f.neg(a));
        }
        // even q: the first nonzero element, which lies in F_q
        assert_eq!(f4().form_scalar(), FElem::ONE);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FieldSpec::new(4, 1).is_err());
        assert!(FieldSpec::new(2, 0).is_err());
        assert!(FieldSpec::from_q(6).is_err());
        assert!(FieldSpec::new(2, 6).is_err());
        assert!(FieldSpec::with_modulus(2, 1, vec![1, 0, 1]).is_err());
        assert!(FieldSpec::with_modulus(2, 1, vec![1, 1, 0]).is_err());
        assert!(FieldSpec::with_modulus(3, 1, vec![2, 0, 1]).is_err());
        assert!(FieldSpec::with_modulus(3, 1, vec![2, 1, 1]).is_ok());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
