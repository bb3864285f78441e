//! The density-maximization SDP over a family's r-vertex types: SDPA
//! emission, a reader for the same format, and the dual upper bound.
//!
//! Block layout of the emitted sparse SDPA file (`m = t` variables `p_α`):
//!
//! ```text
//! block 1: l×l    Σ_α p_α A^{H_α} ⪰ 0
//! block 2: diag, size t+2
//!          entries 1..t   p_α ≥ 0
//!          entry  t+1     Σ p_α - 1 ≥ 0
//!          entry  t+2     1 - Σ p_α ≥ 0
//! objective: minimize Σ_α c_α p_α with c_α = -d(H;H_α)
//! ```
//!
//! Coefficients are exact rationals rendered with 12 significant digits, so
//! the file is a lossy view of the exact data.

use std::fmt::Write as _;

use crate::density::induced_density;
use crate::error::{Error, Result};
use crate::flags::FlagMatrix;
use crate::graph::Graph;
use crate::linalg::SymMatrix;
use crate::rational::{to_f64, Rational};

pub const PSD_TOL: f64 = 1e-9;

fn check_instance(target: &Graph, types: &[Graph], matrices: &[FlagMatrix]) -> Result<usize> {
    if types.len() != matrices.len() {
        return Err(Error::Dimension {
            expected: types.len(),
            got: matrices.len(),
        });
    }
    let r = types
        .first()
        .map(|g| g.n())
        .ok_or_else(|| Error::Invalid("no types".into()))?;
    if let Some(h) = types.iter().find(|h| h.n() != r) {
        return Err(Error::Dimension {
            expected: r,
            got: h.n(),
        });
    }
    if target.n() > r {
        return Err(Error::Invalid(format!(
            "|H|={} exceeds type size {r}",
            target.n()
        )));
    }
    let l = matrices[0].dim();
    if let Some(m) = matrices.iter().find(|m| m.dim() != l) {
        return Err(Error::Dimension {
            expected: l,
            got: m.dim(),
        });
    }
    Ok(l)
}

/// `d(H;H_α)` for every type.
pub fn objective_coefficients(target: &Graph, types: &[Graph]) -> Result<Vec<Rational>> {
    types
        .iter()
        .map(|h| induced_density(target, h).map(|d| d.0))
        .collect()
}

fn num(v: f64) -> String {
    format!("{v:.11e}")
}

pub fn emit_sdp(target: &Graph, types: &[Graph], matrices: &[FlagMatrix]) -> Result<String> {
    let l = check_instance(target, types, matrices)?;
    let t = types.len();
    let d = objective_coefficients(target, types)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "\"maximize sum_a d(H;H_a) p_a; t={t} types on {} vertices, l={l} flags",
        types[0].n()
    );
    let _ = writeln!(out, "{t}");
    let _ = writeln!(out, "2");
    let _ = writeln!(out, "{l} -{}", t + 2);
    let c: Vec<String> = d.iter().map(|v| num(-to_f64(v))).collect();
    let _ = writeln!(out, "{}", c.join(" "));
    let _ = writeln!(out, "0 2 {} {} {}", t + 1, t + 1, num(1.0));
    let _ = writeln!(out, "0 2 {} {} {}", t + 2, t + 2, num(-1.0));
    for (a, m) in matrices.iter().enumerate() {
        for i in 0..l {
            for j in i..l {
                let v = to_f64(m.get(i, j));
                if v != 0.0 {
                    let _ = writeln!(out, "{} 1 {} {} {}", a + 1, i + 1, j + 1, num(v));
                }
            }
        }
        let _ = writeln!(out, "{} 2 {} {} {}", a + 1, a + 1, a + 1, num(1.0));
        let _ = writeln!(out, "{} 2 {} {} {}", a + 1, t + 1, t + 1, num(1.0));
        let _ = writeln!(out, "{} 2 {} {} {}", a + 1, t + 2, t + 2, num(-1.0));
    }
    Ok(out)
}

/// A sparse SDPA problem as read back from text.
#[derive(Clone, Debug, PartialEq)]
pub struct SdpaProblem {
    pub m: usize,
    pub block_sizes: Vec<i64>,
    pub c: Vec<f64>,
    /// `(matrix, block, i, j, value)`, 1-based as in the file.
    pub entries: Vec<(usize, usize, usize, usize, f64)>,
}

impl SdpaProblem {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('"') && !l.starts_with('*'));
        let mut next = |what: &str| {
            lines.next().ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("missing {what}"),
            })
        };
        let err = |line: usize, msg: &str| Error::Parse {
            line,
            msg: msg.into(),
        };
        let tokens = |l: &str| -> Vec<String> {
            l.split(|c: char| c.is_whitespace() || ",{}()".contains(c))
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect()
        };
        let (ln, l) = next("m")?;
        let m: usize = tokens(l)
            .first()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err(ln, "bad m"))?;
        let (ln, l) = next("block count")?;
        let nb: usize = tokens(l)
            .first()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err(ln, "bad block count"))?;
        let (ln, l) = next("block structure")?;
        let block_sizes: Vec<i64> = tokens(l)
            .iter()
            .take(nb)
            .map(|s| s.parse().map_err(|_| err(ln, "bad block size")))
            .collect::<Result<_>>()?;
        if block_sizes.len() != nb {
            return Err(err(ln, "short block structure"));
        }
        let (ln, l) = next("objective")?;
        let c: Vec<f64> = tokens(l)
            .iter()
            .take(m)
            .map(|s| s.parse().map_err(|_| err(ln, "bad objective entry")))
            .collect::<Result<_>>()?;
        if c.len() != m {
            return Err(err(ln, "short objective"));
        }
        let mut entries = Vec::new();
        for (ln, l) in lines {
            let tk = tokens(l);
            if tk.len() != 5 {
                return Err(err(ln, "expected 5 fields"));
            }
            let ix = |i: usize| tk[i].parse::<usize>().map_err(|_| err(ln, "bad index"));
            let v: f64 = tk[4].parse().map_err(|_| err(ln, "bad value"))?;
            entries.push((ix(0)?, ix(1)?, ix(2)?, ix(3)?, v));
        }
        Ok(SdpaProblem {
            m,
            block_sizes,
            c,
            entries,
        })
    }

    /// Entry `(i,j)` (1-based, either order) of matrix `mat` in block `block`.
    pub fn entry(&self, mat: usize, block: usize, i: usize, j: usize) -> f64 {
        let (i, j) = (i.min(j), i.max(j));
        self.entries
            .iter()
            .filter(|e| e.0 == mat && e.1 == block && e.2.min(e.3) == i && e.2.max(e.3) == j)
            .map(|e| e.4)
            .sum()
    }
}

/// `Σ_α d(H;H_α) p_α`.
pub fn primal_value(target: &Graph, types: &[Graph], p: &[f64]) -> Result<f64> {
    let d = objective_coefficients(target, types)?;
    Ok(d.iter().zip(p).map(|(d, p)| to_f64(d) * p).sum())
}

/// `max_α [d(H;H_α) + Tr(Q·A^{H_α})]`; an upper bound on the primal optimum
/// for any PSD `Q`.
pub fn dual_bound(
    target: &Graph,
    types: &[Graph],
    matrices: &[FlagMatrix],
    q: &SymMatrix,
) -> Result<f64> {
    let l = check_instance(target, types, matrices)?;
    if q.dim() != l {
        return Err(Error::Dimension {
            expected: l,
            got: q.dim(),
        });
    }
    let min_ev = q.min_eigenvalue();
    if min_ev < -PSD_TOL {
        return Err(Error::NotPsd(min_ev));
    }
    let d = objective_coefficients(target, types)?;
    Ok(d.iter()
        .zip(matrices)
        .map(|(d, a)| to_f64(d) + q.trace_product(&a.to_sym()))
        .fold(f64::NEG_INFINITY, f64::max))
}
