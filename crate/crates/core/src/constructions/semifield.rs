//! Symmetric spread sets from the trace form of F_{q^n}/F_q and their
//! extension to H_n(F_{q²}).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ext::Extension;
use crate::field::FieldSpec;
use crate::hermitian::{HermMatrix, RankSet};
use crate::matrix::Matrix;

/// `{M_m : m ∈ F_{q^n}}` with `(M_m)_{ij} = Tr(m·y^i·y^j)`, `y` a root of the
/// default degree-n modulus over F_q. Members follow the mixed-radix order
/// of `m`, so `M_0` comes first. Symmetric, F_q-linear, size `q^n`, and every
/// nonzero member is invertible.
pub fn trace_gram_spread_set(field: Arc<FieldSpec>, n: usize) -> Result<RankSet> {
    if n == 0 {
        return Err(Error::Usage("n must be positive".into()));
    }
    let f = &*field;
    let ext = Extension::over_subfield(f, n);
    let basis: Vec<_> = (0..n).map(|i| ext.gen_power(i)).collect();
    let mut products = Vec::with_capacity(n * n);
    for bi in &basis {
        for bj in &basis {
            products.push(ext.mul(bi, bj));
        }
    }
    let members = ext
        .elements()
        .map(|m| {
            let data = products
                .iter()
                .map(|b| ext.trace(&ext.mul(&m, b)))
                .collect();
            HermMatrix::new(Matrix::from_vec(n, n, data)?, f)
        })
        .collect::<Result<Vec<_>>>()?;
    RankSet::new(field, n, n, members)
}

/// Re-reads a set of symmetric matrices over F_q as hermitian matrices over
/// F_{q²}. Ranks are unchanged, so the declared `k` carries over.
pub fn extend_to_hermitian(set: &RankSet) -> Result<RankSet> {
    let f = set.field();
    for (idx, m) in set.members().iter().enumerate() {
        if let Some(&bad) = m.entries().iter().find(|&&x| !f.is_in_subfield(x)) {
            return Err(Error::Usage(format!(
                "member {idx} has entry {bad} outside F_q"
            )));
        }
        let n = m.n();
        for i in 0..n {
            for j in i + 1..n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::Usage(format!("member {idx} is not symmetric")));
                }
            }
        }
    }
    RankSet::new(f.clone(), set.n(), set.k(), set.members().to_vec())
}
