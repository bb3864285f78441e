//! Flagged graphs, pair densities and flag matrices.
//!
//! A pair sample is an ordered `k`-tuple `U` plus two `(s-k)`-sets `S1`, `S2`
//! outside `U`. For `A^G` the two sets are disjoint; for `B^G` they are drawn
//! independently. Every probability here is an exact count over all samples.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::canon::{canonical_flagged, for_each_permutation, CanonicalForm};
use crate::density::for_each_subset;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::Graph;
use crate::linalg::{is_psd_exact, SymMatrix};
use crate::rational::{fmt_decimal, fmt_exact, ratio, to_f64, Rational};

pub const MAX_FLAG_SIZE: usize = 5;

/// An `s`-vertex graph with an ordered tuple of `k` distinct flagged vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FlaggedGraph {
    base: Graph,
    flag: Vec<usize>,
}

impl FlaggedGraph {
    pub fn new(base: Graph, flag: Vec<usize>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        if flag.len() > base.n() || flag.iter().any(|&u| u >= base.n() || !seen.insert(u)) {
            return Err(Error::Invalid(format!(
                "flag {flag:?} invalid for {} vertices",
                base.n()
            )));
        }
        Ok(FlaggedGraph { base, flag })
    }

    /// ē: two vertices, no edge, first vertex flagged.
    pub fn non_edge() -> Self {
        FlaggedGraph {
            base: Graph::empty(2),
            flag: vec![0],
        }
    }

    /// e: an edge with one flagged endpoint.
    pub fn edge() -> Self {
        FlaggedGraph {
            base: Graph::complete(2),
            flag: vec![0],
        }
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn flag(&self) -> &[usize] {
        &self.flag
    }

    pub fn s(&self) -> usize {
        self.base.n()
    }

    pub fn k(&self) -> usize {
        self.flag.len()
    }

    pub fn canonical(&self) -> CanonicalForm {
        canonical_flagged(&self.base, &self.flag).expect("flag sizes are bounded at construction")
    }
}

impl fmt::Debug for FlaggedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Flagged({:?}, flag={:?})", self.base, self.flag)
    }
}

pub fn flag_isomorphic(a: &FlaggedGraph, b: &FlaggedGraph) -> bool {
    a.s() == b.s() && a.k() == b.k() && a.canonical() == b.canonical()
}

/// One representative per isomorphism class of `(s,k)`-flagged graphs whose
/// base graph lies in `family`, sorted by canonical form. Representatives
/// carry the flag on vertices `0..k`.
pub fn enumerate_flags(s: usize, k: usize, family: Family) -> Result<Vec<FlaggedGraph>> {
    if s > MAX_FLAG_SIZE {
        return Err(Error::TooLarge {
            got: s,
            max: MAX_FLAG_SIZE,
        });
    }
    if k > s {
        return Err(Error::Invalid(format!(
            "flag size {k} exceeds graph size {s}"
        )));
    }
    let mut forms = BTreeSet::new();
    for mask in 0..1u64 << (s * s.saturating_sub(1) / 2) {
        let g = Graph::from_mask(s, mask);
        if !family.contains(&g) {
            continue;
        }
        for_each_subset(s, k, |sub| {
            let mut tuple = sub.to_vec();
            for_each_permutation(&mut tuple, &mut |flag| {
                forms.insert(canonical_flagged(&g, flag).expect("s bounded"));
            });
        });
    }
    Ok(forms
        .into_iter()
        .map(|f| FlaggedGraph {
            base: f.graph(),
            flag: (0..k).collect(),
        })
        .collect())
}

/// Exact symmetric matrix of pair densities over a flag list.
#[derive(Clone, PartialEq, Eq)]
pub struct FlagMatrix {
    flags: Vec<FlaggedGraph>,
    entries: Vec<Rational>,
}

impl FlagMatrix {
    pub fn from_entries(flags: Vec<FlaggedGraph>, entries: Vec<Rational>) -> Result<Self> {
        let l = flags.len();
        if entries.len() != l * l {
            return Err(Error::Dimension {
                expected: l * l,
                got: entries.len(),
            });
        }
        Ok(FlagMatrix { flags, entries })
    }

    pub fn dim(&self) -> usize {
        self.flags.len()
    }

    pub fn flags(&self) -> &[FlaggedGraph] {
        &self.flags
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim() + j]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        let l = self.dim();
        (0..l).all(|i| (i + 1..l).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_psd(&self) -> bool {
        is_psd_exact(&self.entries, self.dim())
    }

    pub fn to_sym(&self) -> SymMatrix {
        SymMatrix::from_fn(self.dim(), |i, j| to_f64(self.get(i, j)))
    }

    /// `Σ w_i M_i` in exact arithmetic; all matrices must share a dimension.
    pub fn weighted_sum(weights: &[Rational], mats: &[&FlagMatrix]) -> Result<Vec<Rational>> {
        let l = mats.first().map_or(0, |m| m.dim());
        let mut out = vec![Rational::zero(); l * l];
        for (w, m) in weights.iter().zip(mats) {
            if m.dim() != l {
                return Err(Error::Dimension {
                    expected: l,
                    got: m.dim(),
                });
            }
            for (o, e) in out.iter_mut().zip(&m.entries) {
                *o += w * e;
            }
        }
        Ok(out)
    }

    pub fn to_exact_string(&self) -> String {
        self.render(fmt_exact)
    }

    pub fn to_decimal_string(&self) -> String {
        self.render(fmt_decimal)
    }

    fn render(&self, f: fn(&Rational) -> String) -> String {
        self.entries
            .chunks(self.dim().max(1))
            .map(|row| row.iter().map(f).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Debug for FlagMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FlagMatrix[{}]",
            self.to_exact_string().replace('\n', "; ")
        )
    }
}

/// Per ordered `U`: every `(s-k)`-set outside `U` as a bit mask with the
/// indices of the listed flags it realizes.
struct SampleTable {
    per_u: Vec<Vec<(u64, Vec<usize>)>>,
}

fn check_flags(flags: &[FlaggedGraph], g: &Graph) -> Result<(usize, usize)> {
    let first = flags
        .first()
        .ok_or_else(|| Error::Invalid("empty flag list".into()))?;
    let (s, k) = (first.s(), first.k());
    for f in flags {
        if (f.s(), f.k()) != (s, k) {
            return Err(Error::FlagShape(s, k, f.s(), f.k()));
        }
    }
    if g.n() < 2 * s - k {
        return Err(Error::TooFewVertices {
            n: g.n(),
            need: 2 * s - k,
        });
    }
    if g.n() > 64 {
        return Err(Error::TooLarge {
            got: g.n(),
            max: 64,
        });
    }
    Ok((s, k))
}

impl SampleTable {
    fn build(flags: &[FlaggedGraph], g: &Graph, s: usize, k: usize) -> Self {
        let mut index: HashMap<CanonicalForm, Vec<usize>> = HashMap::new();
        for (i, f) in flags.iter().enumerate() {
            index.entry(f.canonical()).or_default().push(i);
        }
        let n = g.n();
        let mut per_u = Vec::new();
        for_each_subset(n, k, |uset| {
            let mut tuple = uset.to_vec();
            for_each_permutation(&mut tuple, &mut |u| {
                let outside: Vec<usize> = (0..n).filter(|v| !uset.contains(v)).collect();
                let mut rows = Vec::new();
                for_each_subset(outside.len(), s - k, |pick| {
                    let mut vs = u.to_vec();
                    let mut mask = 0u64;
                    for &p in pick {
                        vs.push(outside[p]);
                        mask |= 1 << outside[p];
                    }
                    let flag: Vec<usize> = (0..k).collect();
                    let cf = canonical_flagged(&g.induced(&vs), &flag).expect("s bounded");
                    rows.push((mask, index.get(&cf).cloned().unwrap_or_default()));
                });
                per_u.push(rows);
            });
        });
        SampleTable { per_u }
    }
}

fn count_matrix(flags: &[FlaggedGraph], g: &Graph, disjoint: bool) -> Result<FlagMatrix> {
    let (s, k) = check_flags(flags, g)?;
    let l = flags.len();
    let table = SampleTable::build(flags, g, s, k);
    let mut counts = vec![0u128; l * l];
    let mut total = 0u128;
    for rows in &table.per_u {
        for (m1, c1) in rows {
            for (m2, c2) in rows {
                if disjoint && m1 & m2 != 0 {
                    continue;
                }
                total += 1;
                for &i in c1 {
                    for &j in c2 {
                        counts[i * l + j] += 1;
                    }
                }
            }
        }
    }
    let entries = counts.into_iter().map(|c| ratio(c, total)).collect();
    FlagMatrix::from_entries(flags.to_vec(), entries)
}

/// `p(F1,F2;G)`.
pub fn pair_density(f1: &FlaggedGraph, f2: &FlaggedGraph, g: &Graph) -> Result<Rational> {
    let m = flag_matrix(&[f1.clone(), f2.clone()], g)?;
    Ok(m.get(0, 1).clone())
}

/// `A^G(F_1..F_l)`: outer sets disjoint.
pub fn flag_matrix(flags: &[FlaggedGraph], g: &Graph) -> Result<FlagMatrix> {
    count_matrix(flags, g, true)
}

/// `B^G(F_1..F_l)`: outer sets drawn independently, possibly overlapping.
pub fn flag_matrix_independent(flags: &[FlaggedGraph], g: &Graph) -> Result<FlagMatrix> {
    count_matrix(flags, g, false)
}

/// `B^G = scale · Q Qᵀ` with `Q[i][U] = Pr_S[F_i ≅ (G|S∪U, U)]` over ordered `U`
/// and `scale = (n-k)!/n!`.
#[derive(Clone, Debug)]
pub struct GramFactor {
    pub q: Vec<Vec<Rational>>,
    pub scale: Rational,
}

impl GramFactor {
    pub fn product(&self) -> Vec<Rational> {
        let l = self.q.len();
        let mut out = vec![Rational::zero(); l * l];
        for i in 0..l {
            for j in 0..l {
                let dot = self.q[i]
                    .iter()
                    .zip(&self.q[j])
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b);
                out[i * l + j] = &self.scale * dot;
            }
        }
        out
    }
}

pub fn gram_factor(flags: &[FlaggedGraph], g: &Graph) -> Result<GramFactor> {
    let (s, k) = check_flags(flags, g)?;
    let l = flags.len();
    let table = SampleTable::build(flags, g, s, k);
    let mut q = vec![Vec::with_capacity(table.per_u.len()); l];
    for rows in &table.per_u {
        let mut c = vec![0u128; l];
        for (_, idx) in rows {
            for &i in idx {
                c[i] += 1;
            }
        }
        for i in 0..l {
            q[i].push(ratio(c[i], rows.len() as u128));
        }
    }
    Ok(GramFactor {
        q,
        scale: ratio(1, table.per_u.len() as u128),
    })
}

/// `Σ_α p_α · A^{H_α}` as a real symmetric matrix.
pub fn profile_combination(p: &[f64], matrices: &[FlagMatrix]) -> Result<SymMatrix> {
    if p.len() != matrices.len() {
        return Err(Error::Dimension {
            expected: matrices.len(),
            got: p.len(),
        });
    }
    if let Some(w) = p.iter().find(|w| **w < 0.0 || !w.is_finite()) {
        return Err(Error::Invalid(format!("negative weight {w}")));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::Invalid(format!("weights sum to {sum}, not 1")));
    }
    let l = matrices.first().map_or(0, |m| m.dim());
    let mut out = SymMatrix::zeros(l);
    for (w, m) in p.iter().zip(matrices) {
        if m.dim() != l {
            return Err(Error::Dimension {
                expected: l,
                got: m.dim(),
            });
        }
        out.add_scaled(&m.to_sym(), *w);
    }
    Ok(out)
}
