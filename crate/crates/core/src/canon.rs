//! Canonical labeling of small (optionally flagged) graphs.
//!
//! The canonical code is the minimum edge mask (pairs in lexicographic order)
//! over all labelings that respect a degree-based vertex ordering; flagged
//! vertices keep their flag positions. Exhaustive over each refinement cell,
//! which is fine for the n ≤ 10 graphs this crate canonicalizes.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_CANON_VERTICES: usize = 10;

/// Isomorphism invariant of a graph with `k` ordered flagged vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: u8,
    pub k: u8,
    pub code: u64,
}

impl CanonicalForm {
    /// Representative graph; with a flag this is flagged at `0..k`.
    pub fn graph(&self) -> Graph {
        Graph::from_mask(self.n as usize, self.code)
    }

    pub fn to_hex(&self) -> String {
        format!("{:x}", self.code)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Canon(n={}, k={}, {:#x})", self.n, self.k, self.code)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_flagged(g, &[])
}

/// Canonical form of `(g, flag)`: isomorphisms must map `flag[i]` to `flag'[i]`.
pub fn canonical_flagged(g: &Graph, flag: &[usize]) -> Result<CanonicalForm> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(Error::TooLarge {
            got: n,
            max: MAX_CANON_VERTICES,
        });
    }
    let mut is_flag = [false; MAX_CANON_VERTICES];
    for &u in flag {
        if u >= n || is_flag[u] {
            return Err(Error::Invalid(format!("bad flag {flag:?} for n={n}")));
        }
        is_flag[u] = true;
    }

    // Free vertices sorted into cells by an invariant key.
    let degs: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    let key = |u: usize| {
        let flag_pattern: u32 = flag
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &f)| acc | (g.has_edge(u, f) as u32) << i);
        let mut nbr_degs: Vec<usize> = (0..n)
            .filter(|&v| g.has_edge(u, v))
            .map(|v| degs[v])
            .collect();
        nbr_degs.sort_unstable();
        (degs[u], flag_pattern, nbr_degs)
    };
    let mut free: Vec<(_, usize)> = (0..n)
        .filter(|&u| !is_flag[u])
        .map(|u| (key(u), u))
        .collect();
    free.sort();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, (k, u)) in free.iter().enumerate() {
        if i > 0 && free[i - 1].0 == *k {
            cells.last_mut().unwrap().push(*u);
        } else {
            cells.push(vec![*u]);
        }
    }

    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut pos = [0usize; MAX_CANON_VERTICES];
    for (i, &u) in flag.iter().enumerate() {
        pos[u] = i;
    }
    let mut best = u64::MAX;
    assign_cells(&cells, 0, flag.len(), &mut pos, &mut |pos| {
        let code = edges.iter().fold(0u64, |m, &(u, v)| {
            let (a, b) = if pos[u] < pos[v] {
                (pos[u], pos[v])
            } else {
                (pos[v], pos[u])
            };
            m | 1 << Graph::pair_index(n, a, b)
        });
        best = best.min(code);
    });
    if edges.is_empty() {
        best = 0;
    }
    Ok(CanonicalForm {
        n: n as u8,
        k: flag.len() as u8,
        code: best,
    })
}

fn assign_cells(
    cells: &[Vec<usize>],
    ci: usize,
    start: usize,
    pos: &mut [usize],
    visit: &mut impl FnMut(&[usize]),
) {
    if ci == cells.len() {
        visit(pos);
        return;
    }
    let mut cell = cells[ci].clone();
    let len = cell.len();
    for_each_permutation(&mut cell, &mut |perm| {
        for (i, &u) in perm.iter().enumerate() {
            pos[u] = start + i;
        }
        assign_cells(cells, ci + 1, start + len, pos, visit);
    });
}

/// Heap's algorithm; calls `f` once per permutation of `items` (in place).
pub fn for_each_permutation<T>(items: &mut [T], f: &mut impl FnMut(&[T])) {
    let n = items.len();
    let mut c = vec![0usize; n];
    f(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    Ok(a.n() == b.n()
        && a.edge_count() == b.edge_count()
        && canonical_form(a)? == canonical_form(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use std::collections::BTreeSet;

    #[test]
    fn relabeled_p3_matches() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let b = Graph::from_edges(3, &[(1, 0), (0, 2)]);
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert_ne!(
            canonical_form(&a).unwrap(),
            canonical_form(&named::p3_bar()).unwrap()
        );
    }

    #[test]
    fn three_vertex_types() {
        let forms: BTreeSet<_> = (0..8u64)
            .map(|m| canonical_form(&Graph::from_mask(3, m)).unwrap())
            .collect();
        assert_eq!(forms.len(), 4);
    }

    #[test]
    fn flag_position_matters() {
        let p3 = named::p3();
        let center = canonical_flagged(&p3, &[1]).unwrap();
        let leaf = canonical_flagged(&p3, &[0]).unwrap();
        let other_leaf = canonical_flagged(&p3, &[2]).unwrap();
        assert_ne!(center, leaf);
        assert_eq!(leaf, other_leaf);
        // order of a 2-flag matters when the flagged vertices are not symmetric
        let a = canonical_flagged(&p3, &[0, 1]).unwrap();
        let b = canonical_flagged(&p3, &[1, 0]).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn rejects_large_and_bad_flags() {
        assert!(canonical_form(&Graph::empty(11)).is_err());
        assert!(canonical_flagged(&named::p3(), &[0, 0]).is_err());
        assert!(canonical_flagged(&named::p3(), &[3]).is_err());
    }

    #[test]
    fn permutation_count() {
        let mut v = [0, 1, 2, 3, 4];
        let mut seen = BTreeSet::new();
        for_each_permutation(&mut v, &mut |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 120);
    }
}
