//! Polynomial extensions `L = K[y]/(g)` of a subfield `K` of F_{q²}.
//!
//! Used to realize F_{q^n} over F_q (trace-Gram spread sets) and F_{q^{2r}}
//! over F_{q²} (field reduction for Desarguesian spreads). Elements are
//! coefficient vectors over `K`, constant term first.

use crate::field::{FElem, FieldSpec};

pub type ExtElem = Vec<FElem>;

#[derive(Clone, Debug)]
pub struct Extension<'a> {
    field: &'a FieldSpec,
    base: Vec<FElem>,
    degree: usize,
    modulus: Vec<FElem>,
}

impl<'a> Extension<'a> {
    /// Extension of degree `degree` over the subfield whose elements are
    /// `base` (sorted by wire index), using the smallest monic irreducible
    /// modulus in mixed-radix order of its coefficients.
    pub fn new(field: &'a FieldSpec, base: Vec<FElem>, degree: usize) -> Self {
        assert!(degree >= 1);
        let mut ext = Extension {
            field,
            base,
            degree,
            modulus: Vec::new(),
        };
        let modulus = ext
            .monic_polys(degree)
            .find(|g| ext.is_irreducible(g))
            .expect("irreducible polynomials exist in every degree");
        ext.modulus = modulus;
        ext
    }

    /// Extension of F_q of degree `degree`.
    pub fn over_subfield(field: &'a FieldSpec, degree: usize) -> Self {
        Self::new(field, field.subfield_elements().to_vec(), degree)
    }

    /// Extension of F_{q²} of degree `degree`.
    pub fn over_full(field: &'a FieldSpec, degree: usize) -> Self {
        Self::new(field, field.elements().collect(), degree)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[FElem] {
        &self.modulus
    }

    pub fn base_size(&self) -> u64 {
        self.base.len() as u64
    }

    /// Number of elements of `L`.
    pub fn size(&self) -> u64 {
        self.base_size().pow(self.degree as u32)
    }

    /// The element with mixed-radix index `idx` over the sorted base.
    pub fn element_at(&self, mut idx: u64) -> ExtElem {
        let b = self.base_size();
        (0..self.degree)
            .map(|_| {
                let x = self.base[(idx % b) as usize];
                idx /= b;
                x
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        (0..self.size()).map(move |i| self.element_at(i))
    }

    pub fn zero(&self) -> ExtElem {
        vec![FElem::ZERO; self.degree]
    }

    pub fn is_zero(&self, a: &[FElem]) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    /// `y^t` reduced.
    pub fn gen_power(&self, t: usize) -> ExtElem {
        let mut m = vec![FElem::ZERO; t + 1];
        m[t] = FElem::ONE;
        self.rem(&m)
    }

    pub fn add(&self, a: &[FElem], b: &[FElem]) -> ExtElem {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.field.add(x, y))
            .collect()
    }

    pub fn mul(&self, a: &[FElem], b: &[FElem]) -> ExtElem {
        let f = self.field;
        let mut prod = vec![FElem::ZERO; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        self.rem(&prod)
    }

    pub fn pow(&self, a: &[FElem], mut exp: u64) -> ExtElem {
        let mut acc = self.gen_power(0);
        let mut base = a.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Relative trace `L → K`, `Σ_{t<d} a^{|K|^t}`.
    pub fn trace(&self, a: &[FElem]) -> FElem {
        let mut acc = self.zero();
        let mut x = a.to_vec();
        for _ in 0..self.degree {
            acc = self.add(&acc, &x);
            x = self.pow(&x, self.base_size());
        }
        debug_assert!(acc[1..].iter().all(|c| c.is_zero()));
        acc[0]
    }

    fn rem(&self, a: &[FElem]) -> ExtElem {
        let mut r = poly_rem(self.field, a, &self.modulus);
        r.resize(self.degree, FElem::ZERO);
        r
    }

    fn monic_polys(&self, deg: usize) -> impl Iterator<Item = Vec<FElem>> + '_ {
        let b = self.base_size();
        (0..b.pow(deg as u32)).map(move |mut idx| {
            let mut g: Vec<FElem> = (0..deg)
                .map(|_| {
                    let x = self.base[(idx % b) as usize];
                    idx /= b;
                    x
                })
                .collect();
            g.push(FElem::ONE);
            g
        })
    }

    fn is_irreducible(&self, g: &[FElem]) -> bool {
        let d = g.len() - 1;
        (1..=d / 2).all(|deg| {
            self.monic_polys(deg)
                .all(|h| poly_rem(self.field, g, &h).iter().any(|c| !c.is_zero()))
        })
    }
}

/// Remainder of `a` modulo the monic `m`.
fn poly_rem(f: &FieldSpec, a: &[FElem], m: &[FElem]) -> Vec<FElem> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if !lead.is_zero() {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, lead));
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_over_f2() {
        let f = FieldSpec::new(2, 1).unwrap();
        let ext = Extension::over_subfield(&f, 2);
        assert_eq!(ext.modulus(), &[FElem::ONE, FElem::ONE, FElem::ONE]);
        let w = ext.gen_power(1);
        assert_eq!(ext.trace(&ext.gen_power(0)), FElem::ZERO);
        assert_eq!(ext.trace(&w), FElem::ONE);
        assert_eq!(ext.pow(&w, 3), ext.gen_power(0));
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_right_order() {
        let f = FieldSpec::new(3, 1).unwrap();
        for (ext, order) in [
            (Extension::over_subfield(&f, 3), 27u64),
            (Extension::over_full(&f, 2), 81),
        ] {
            assert_eq!(ext.size(), order);
            let one = ext.gen_power(0);
            for a in ext.elements().filter(|a| !ext.is_zero(a)) {
                assert_eq!(ext.pow(&a, order - 1), one);
            }
        }
    }

    #[test]
    fn trace_lands_in_base_and_is_balanced() {
        let f = FieldSpec::new(2, 1).unwrap();
        let ext = Extension::over_subfield(&f, 3);
        let zeros = ext.elements().filter(|a| ext.trace(a).is_zero()).count();
        assert_eq!(zeros, 4);
    }
}
