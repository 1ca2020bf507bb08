//! Line-oriented set-file format.
//!
//! ```text
//! HRDS 1
//! p=2 e=1 n=2 k=2
//! mod=1,1,1
//! 0 0 0 0
//! 1 1 1 0
//! ```
//!
//! Each body line is one matrix: n² element indices, row-major. The modulus
//! of F_{q²} (constant term first) travels in the header.

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::hermitian::{HermMatrix, RankSet};
use crate::matrix::Matrix;

pub const MAGIC: &str = "HRDS 1";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn header_value(line_no: usize, token: &str, key: &str) -> Result<u64> {
    let value = token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| parse_err(line_no, format!("expected `{key}=<int>`, got `{token}`")))?;
    value
        .parse()
        .map_err(|_| parse_err(line_no, format!("`{key}` is not a non-negative integer")))
}

/// Parses set-file text. Errors name the file line and, for body lines, the
/// 1-based matrix ordinal.
pub fn parse_set(text: &str) -> Result<RankSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let (l1, magic) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    if magic.trim() != MAGIC {
        return Err(parse_err(l1, format!("expected `{MAGIC}`")));
    }
    let (l2, params) = lines
        .next()
        .ok_or_else(|| parse_err(2, "missing parameter line"))?;
    let tokens: Vec<&str> = params.split_whitespace().collect();
    if tokens.len() != 4 {
        return Err(parse_err(l2, "expected `p=<int> e=<int> n=<int> k=<int>`"));
    }
    let p = header_value(l2, tokens[0], "p")?;
    let e = header_value(l2, tokens[1], "e")?;
    let n = header_value(l2, tokens[2], "n")? as usize;
    let k = header_value(l2, tokens[3], "k")? as usize;
    let (l3, modline) = lines
        .next()
        .ok_or_else(|| parse_err(3, "missing modulus line"))?;
    let coeffs = modline
        .trim()
        .strip_prefix("mod=")
        .ok_or_else(|| parse_err(l3, "expected `mod=<c0>,<c1>,...`"))?
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<u32>()
                .map_err(|_| parse_err(l3, format!("bad coefficient `{c}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let (p32, e32) = match (u32::try_from(p), u32::try_from(e)) {
        (Ok(p), Ok(e)) => (p, e),
        _ => return Err(parse_err(l2, "p or e out of range")),
    };
    let field = FieldSpec::with_modulus(p32, e32, coeffs).map_err(|err| match err {
        Error::InvalidField(msg) => parse_err(l3, msg),
        other => parse_err(l2, other.to_string()),
    })?;
    if n == 0 {
        return Err(parse_err(l2, "n must be positive"));
    }
    let order = field.order() as u64;
    let mut members = Vec::new();
    for (line_no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let ordinal = members.len() + 1;
        let at = |msg: String| parse_err(line_no, format!("matrix {ordinal}: {msg}"));
        let values = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| at(format!("`{t}` is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != n * n {
            return Err(at(format!(
                "expected {} entries, got {}",
                n * n,
                values.len()
            )));
        }
        let data = values
            .iter()
            .map(|&v| {
                field
                    .element(v)
                    .map_err(|_| at(format!("entry {v} is not below the field order {order}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_vec(n, n, data)?;
        let h = HermMatrix::new(m, &field).map_err(|_| at("matrix is not hermitian".into()))?;
        if members.contains(&h) {
            return Err(at("duplicate matrix".into()));
        }
        members.push(h);
    }
    RankSet::new(Arc::new(field), n, k, members).map_err(|err| parse_err(2, err.to_string()))
}

pub fn parse_set_file(path: impl AsRef<Path>) -> Result<RankSet> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_set(&text)
}

/// Set-file text for `set`; `parse_set(&serialize_set(u)) == u`.
pub fn serialize_set(set: &RankSet) -> String {
    let f = set.field();
    let mut out = format!(
        "{MAGIC}\np={} e={} n={} k={}\nmod={}\n",
        f.p(),
        f.e(),
        set.n(),
        set.k(),
        f.modulus_q2()
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    for m in set.members() {
        let row: Vec<String> = m.entries().iter().map(|x| x.index().to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_set_file(set: &RankSet, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, serialize_set(set))
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
