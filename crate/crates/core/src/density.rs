//! Induced densities d(H;G) and the 3-vertex profile (p0,p1,p2,p3).

use std::fmt;

use rayon::prelude::*;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{binomial, fmt_decimal, fmt_exact, ratio, Rational};

/// Exact probability in [0,1].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Density(pub Rational);

impl Density {
    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_exact(&self.0))
    }
}

/// Calls `f` with every increasing `k`-subset of `0..n`.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Number of `|H|`-subsets of `V(G)` inducing a copy of `H`.
pub fn induced_count(h: &Graph, g: &Graph) -> Result<u128> {
    let k = h.n();
    if k > g.n() {
        return Err(Error::Invalid(format!("|H|={k} exceeds |G|={}", g.n())));
    }
    let target = canonical_form(h)?;
    let m = h.edge_count();
    let mut count = 0u128;
    let mut err = None;
    for_each_subset(g.n(), k, |vs| {
        let sub = g.induced(vs);
        if sub.edge_count() != m || err.is_some() {
            return;
        }
        match canonical_form(&sub) {
            Ok(c) if c == target => count += 1,
            Ok(_) => {}
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(count),
    }
}

/// d(H;G): probability that a uniform `|H|`-subset of `V(G)` induces `H`.
pub fn induced_density(h: &Graph, g: &Graph) -> Result<Density> {
    let count = induced_count(h, g)?;
    Ok(Density(ratio(count, binomial(g.n() as u64, h.n() as u64))))
}

/// Exact triple-type distribution: `p[i]` is the fraction of vertex triples
/// spanning exactly `i` edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile3 {
    pub counts: [u128; 4],
    pub total: u128,
}

impl Profile3 {
    pub fn from_counts(counts: [u128; 4]) -> Self {
        Profile3 {
            counts,
            total: counts.iter().sum(),
        }
    }

    pub fn p(&self, i: usize) -> Rational {
        ratio(self.counts[i], self.total)
    }

    pub fn exact(&self) -> [Rational; 4] {
        [self.p(0), self.p(1), self.p(2), self.p(3)]
    }

    pub fn to_f64(&self) -> [f64; 4] {
        let t = self.total as f64;
        self.counts.map(|c| c as f64 / t)
    }

    pub fn reversed(&self) -> Self {
        let c = self.counts;
        Profile3::from_counts([c[3], c[2], c[1], c[0]])
    }

    pub fn to_exact_string(&self) -> String {
        self.exact()
            .iter()
            .map(fmt_exact)
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_decimal_string(&self) -> String {
        self.exact()
            .iter()
            .map(fmt_decimal)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn profile3(g: &Graph) -> Result<Profile3> {
    if g.n() < 3 {
        return Err(Error::TooFewVertices { n: g.n(), need: 3 });
    }
    Ok(Profile3::from_counts(triple_counts_fast(g)))
}

/// Brute force over all C(n,3) triples.
pub fn triple_counts_exhaustive(g: &Graph) -> [u128; 4] {
    let mut counts = [0u128; 4];
    for_each_subset(g.n(), 3, |t| {
        let e = g.has_edge(t[0], t[1]) as usize
            + g.has_edge(t[0], t[2]) as usize
            + g.has_edge(t[1], t[2]) as usize;
        counts[e] += 1;
    });
    counts
}

/// Triple counts from triangles `t`, cherries `W = Σ C(deg,2)` and edges `m`:
/// `e3 = t`, `e2 = W - 3t`, `e1 = m(n-2) - 2·e2 - 3·e3`, `e0 = C(n,3) - e1 - e2 - e3`.
pub fn triple_counts_fast(g: &Graph) -> [u128; 4] {
    let n = g.n();
    let (tri3, cherries, deg_sum) = (0..n)
        .into_par_iter()
        .map(|u| {
            let ru = g.row(u);
            let d = g.degree(u) as u128;
            // every triangle is counted once per edge
            let mut common = 0u128;
            for v in u + 1..n {
                if g.has_edge(u, v) {
                    common += ru
                        .iter()
                        .zip(g.row(v))
                        .map(|(a, b)| (a & b).count_ones() as u128)
                        .sum::<u128>();
                }
            }
            (common, d * d.saturating_sub(1) / 2, d)
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let t = tri3 / 3;
    let m = deg_sum / 2;
    let e3 = t;
    let e2 = cherries - 3 * t;
    let e1 = m * (n as u128 - 2) - 2 * e2 - 3 * e3;
    let e0 = binomial(n as u64, 3) - e1 - e2 - e3;
    [e0, e1, e2, e3]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::rational::{one, zero};

    #[test]
    fn named_densities() {
        assert_eq!(
            induced_density(&named::k3(), &Graph::complete(4))
                .unwrap()
                .0,
            one()
        );
        assert_eq!(
            induced_density(&named::p3(), &named::c5()).unwrap().0,
            ratio(1, 2)
        );
        assert_eq!(
            induced_density(&named::k3_bar(), &Graph::empty(5))
                .unwrap()
                .0,
            one()
        );
        assert_eq!(
            induced_density(&named::k3(), &named::c5()).unwrap().0,
            zero()
        );
        assert!(induced_density(&Graph::empty(4), &named::k3()).is_err());
    }

    #[test]
    fn named_profiles() {
        let p = |g: &Graph| profile3(g).unwrap().exact();
        assert_eq!(p(&named::k3()), [zero(), zero(), zero(), one()]);
        assert_eq!(p(&Graph::empty(4)), [one(), zero(), zero(), zero()]);
        assert_eq!(p(&named::c5()), [zero(), ratio(1, 2), ratio(1, 2), zero()]);
        assert!(matches!(
            profile3(&Graph::empty(2)),
            Err(Error::TooFewVertices { n: 2, need: 3 })
        ));
    }

    #[test]
    fn fast_counter_matches_brute_force_on_all_small_graphs() {
        for n in 3..=6usize {
            for mask in 0..1u64 << (n * (n - 1) / 2) {
                let g = Graph::from_mask(n, mask);
                assert_eq!(
                    triple_counts_fast(&g),
                    triple_counts_exhaustive(&g),
                    "n={n} mask={mask:#x}"
                );
            }
        }
    }

    #[test]
    fn profile_matches_induced_densities() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (4, 5), (1, 4)]);
        let prof = profile3(&g).unwrap();
        for (i, h) in named::triples().iter().enumerate() {
            assert_eq!(prof.p(i), induced_density(h, &g).unwrap().0);
        }
    }

    #[test]
    fn subsets_enumerated_once() {
        let mut seen = Vec::new();
        for_each_subset(5, 3, |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 10);
        assert_eq!(seen[0], vec![0, 1, 2]);
        assert_eq!(seen[9], vec![2, 3, 4]);
        let mut c = 0;
        for_each_subset(4, 0, |_| c += 1);
        assert_eq!(c, 1);
        for_each_subset(2, 3, |_| panic!("no subsets"));
    }
}
