//! Exhaustive ground truth over all graphs on n ≤ 7 vertices.
//!
//! Labeled graphs are edge masks over the C(n,2) pairs. Each isomorphism
//! class is found once by orbit marking: the first unvisited mask is mapped
//! through all n! relabelings, and the orbit size is its multiplicity.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_traits::Zero;

use crate::canon::{canonical_form, for_each_permutation, CanonicalForm};
use crate::density::{induced_density, profile3, Profile3};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::flags::{flag_matrix, flag_matrix_independent, gram_factor, FlagMatrix, FlaggedGraph};
use crate::graph::Graph;
use crate::linalg::psd_distance;
use crate::rational::{binomial, fmt_exact, parse_rational, ratio, to_f64, Rational};
use crate::regions::{classify_k3, PointK3};

pub const MAX_CENSUS_N: usize = 7;

/// Unlabeled graph counts on 0..=7 vertices.
pub const KNOWN_CLASS_COUNTS: [usize; 8] = [1, 1, 2, 4, 11, 34, 156, 1044];

#[derive(Clone, Debug, PartialEq)]
pub struct CensusClass {
    pub form: CanonicalForm,
    pub graph: Graph,
    /// `None` below 3 vertices.
    pub profile: Option<Profile3>,
    /// Number of labeled graphs in the class.
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Census {
    pub n: usize,
    pub family: Family,
    pub classes: Vec<CensusClass>,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_CENSUS_N {
        return Err(Error::TooLarge {
            got: n,
            max: MAX_CENSUS_N,
        });
    }
    Ok(())
}

/// All isomorphism classes on `n` vertices whose graphs lie in `family`,
/// sorted by canonical form.
pub fn enumerate_census(n: usize, family: Family) -> Result<Census> {
    check_n(n)?;
    let pairs = n * (n - 1) / 2;
    let mut pair_of = Vec::with_capacity(pairs);
    for u in 0..n {
        for v in u + 1..n {
            pair_of.push((u, v));
        }
    }
    // for each relabeling, where each pair bit moves to
    let mut bit_maps: Vec<Vec<u8>> = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    for_each_permutation(&mut perm, &mut |p| {
        bit_maps.push(
            pair_of
                .iter()
                .map(|&(u, v)| Graph::pair_index(n, p[u].min(p[v]), p[u].max(p[v])) as u8)
                .collect(),
        );
    });

    let total = 1usize << pairs;
    let mut visited = vec![0u64; total.div_ceil(64)];
    let mut classes = Vec::new();
    for mask in 0..total as u64 {
        if visited[mask as usize / 64] >> (mask % 64) & 1 == 1 {
            continue;
        }
        let mut orbit = 0u64;
        for map in &bit_maps {
            let mut image = 0u64;
            let mut rest = mask;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                image |= 1 << map[b];
                rest &= rest - 1;
            }
            let (w, b) = (image as usize / 64, image % 64);
            if visited[w] >> b & 1 == 0 {
                visited[w] |= 1 << b;
                orbit += 1;
            }
        }
        let g = Graph::from_mask(n, mask);
        if !family.contains(&g) {
            continue;
        }
        let form = canonical_form(&g)?;
        let graph = form.graph();
        let profile = if n >= 3 {
            Some(profile3(&graph)?)
        } else {
            None
        };
        classes.push(CensusClass {
            form,
            graph,
            profile,
            multiplicity: orbit,
        });
    }
    classes.sort_by_key(|c| c.form);
    Ok(Census { n, family, classes })
}

impl Census {
    pub fn labeled_total(&self) -> u64 {
        self.classes.iter().map(|c| c.multiplicity).sum()
    }

    pub const CACHE_HEADER: &'static str = "canonical_hex,p0,p1,p2,p3,multiplicity";

    pub fn to_cache_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", Self::CACHE_HEADER);
        for c in &self.classes {
            let prof = match &c.profile {
                Some(p) => p
                    .exact()
                    .iter()
                    .map(fmt_exact)
                    .collect::<Vec<_>>()
                    .join(","),
                None => ",,,".into(),
            };
            let _ = writeln!(s, "{},{},{}", c.form.to_hex(), prof, c.multiplicity);
        }
        s
    }

    /// Reads a cache file; profiles are checked against the class graphs.
    pub fn from_cache_csv(n: usize, family: Family, text: &str) -> Result<Self> {
        check_n(n)?;
        let mut classes = Vec::new();
        for (i, line) in text.lines().enumerate().skip(1) {
            let err = |msg: &str| Error::Parse {
                line: i + 1,
                msg: msg.into(),
            };
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 6 {
                return Err(err("expected 6 fields"));
            }
            let code = u64::from_str_radix(f[0], 16).map_err(|_| err("bad canonical code"))?;
            let graph = Graph::from_mask(n, code);
            let form = canonical_form(&graph)?;
            if form.code != code {
                return Err(err("code is not canonical"));
            }
            let profile = if n >= 3 {
                let total = binomial(n as u64, 3);
                let mut counts = [0u128; 4];
                for (k, cnt) in counts.iter_mut().enumerate() {
                    let p = parse_rational(f[1 + k]).ok_or_else(|| err("bad profile entry"))?;
                    let scaled = p * ratio(total, 1);
                    if !scaled.is_integer() {
                        return Err(err("profile entry is not a triple fraction"));
                    }
                    *cnt = scaled
                        .to_integer()
                        .try_into()
                        .map_err(|_| err("profile entry out of range"))?;
                }
                let prof = Profile3::from_counts(counts);
                if prof != profile3(&graph)? {
                    return Err(err("profile does not match graph"));
                }
                Some(prof)
            } else {
                None
            };
            let multiplicity = f[5].trim().parse().map_err(|_| err("bad multiplicity"))?;
            classes.push(CensusClass {
                form,
                graph,
                profile,
                multiplicity,
            });
        }
        Ok(Census { n, family, classes })
    }
}

pub fn cache_path(dir: &Path, n: usize, family: Family) -> PathBuf {
    dir.join(format!("census_n{n}_{}.csv", family.name()))
}

/// Loads the census from `dir` when a cache file exists, else enumerates and
/// writes one. Without a directory this is [`enumerate_census`].
pub fn load_or_enumerate(n: usize, family: Family, dir: Option<&Path>) -> Result<Census> {
    let Some(dir) = dir else {
        return enumerate_census(n, family);
    };
    let path = cache_path(dir, n, family);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(c) = Census::from_cache_csv(n, family, &text) {
            return Ok(c);
        }
    }
    let census = enumerate_census(n, family)?;
    fs::create_dir_all(dir)?;
    fs::write(&path, census.to_cache_csv())?;
    Ok(census)
}

/// The (2,1) flag list (ē, e).
pub fn default_flags() -> Vec<FlaggedGraph> {
    vec![FlaggedGraph::non_edge(), FlaggedGraph::edge()]
}

fn flag_shape(flags: &[FlaggedGraph]) -> Result<(usize, usize)> {
    let f = flags
        .first()
        .ok_or_else(|| Error::Invalid("empty flag list".into()))?;
    Ok((f.s(), f.k()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TotalProbabilityReport {
    pub n: usize,
    pub r: usize,
    pub checked: usize,
    /// Canonical forms of graphs where the identity fails.
    pub violations: Vec<CanonicalForm>,
}

/// Checks `A^G = Σ_α d(H_α;G)·A^{H_α}` exactly for every census graph, with
/// `H_α` the family's types on `r = 2s-k` vertices.
pub fn verify_total_probability(
    n: usize,
    flags: &[FlaggedGraph],
    family: Family,
) -> Result<TotalProbabilityReport> {
    let (s, k) = flag_shape(flags)?;
    let r = 2 * s - k;
    if n < r {
        return Err(Error::TooFewVertices { n, need: r });
    }
    let types = enumerate_census(r, family)?;
    let type_mats: Vec<FlagMatrix> = types
        .classes
        .iter()
        .map(|t| flag_matrix(flags, &t.graph))
        .collect::<Result<_>>()?;
    let census = enumerate_census(n, family)?;
    let mut violations = Vec::new();
    for class in &census.classes {
        let lhs = flag_matrix(flags, &class.graph)?;
        let weights: Vec<Rational> = types
            .classes
            .iter()
            .map(|t| induced_density(&t.graph, &class.graph).map(|d| d.0))
            .collect::<Result<_>>()?;
        let rhs = FlagMatrix::weighted_sum(&weights, &type_mats.iter().collect::<Vec<_>>())?;
        if lhs.entries() != rhs.as_slice() {
            violations.push(class.form);
        }
    }
    Ok(TotalProbabilityReport {
        n,
        r,
        checked: census.classes.len(),
        violations,
    })
}

/// Exact minimum of `p0 + p3` over all graphs on `n` vertices.
pub fn min_goodman(n: usize) -> Result<Rational> {
    if n < 3 {
        return Err(Error::TooFewVertices { n, need: 3 });
    }
    let census = enumerate_census(n, Family::All)?;
    Ok(census
        .classes
        .iter()
        .map(|c| {
            let p = c.profile.as_ref().expect("n >= 3");
            p.p(0) + p.p(3)
        })
        .min()
        .unwrap_or_else(Rational::zero))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PsdDefectReport {
    pub n: usize,
    pub classes: usize,
    /// `max_G psd_distance(A^G)`
    pub max_defect: f64,
    pub worst: Option<CanonicalForm>,
    /// `max_G psd_distance(B^G)`
    pub max_defect_independent: f64,
    /// Graphs where `B^G` is not exactly `((n-k)!/n!)·QQᵀ` or not exactly PSD.
    pub factorization_failures: usize,
}

impl PsdDefectReport {
    /// `n · max_defect`
    pub fn constant(&self) -> f64 {
        self.n as f64 * self.max_defect
    }
}

pub fn psd_defect_scan(
    n: usize,
    family: Family,
    flags: &[FlaggedGraph],
) -> Result<PsdDefectReport> {
    let census = enumerate_census(n, family)?;
    let mut report = PsdDefectReport {
        n,
        classes: census.classes.len(),
        max_defect: 0.0,
        worst: None,
        max_defect_independent: 0.0,
        factorization_failures: 0,
    };
    for class in &census.classes {
        let a = flag_matrix(flags, &class.graph)?;
        let d = psd_distance(&a.to_sym());
        if report.worst.is_none() || d > report.max_defect {
            report.max_defect = d;
            report.worst = Some(class.form);
        }
        let b = flag_matrix_independent(flags, &class.graph)?;
        report.max_defect_independent =
            report.max_defect_independent.max(psd_distance(&b.to_sym()));
        let gram = gram_factor(flags, &class.graph)?;
        if b.entries() != gram.product().as_slice() || !b.is_psd() {
            report.factorization_failures += 1;
        }
    }
    Ok(report)
}

pub const SCATTER_HEADER: &str = "p0,p1,p2,p3";

/// One CSV row of decimal profile coordinates per isomorphism class.
pub fn scatter_census(n: usize, family: Family) -> Result<String> {
    if n < 3 {
        return Err(Error::TooFewVertices { n, need: 3 });
    }
    let census = enumerate_census(n, family)?;
    Ok(scatter_csv(&census))
}

pub fn scatter_csv(census: &Census) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{SCATTER_HEADER}");
    for c in &census.classes {
        if let Some(p) = &c.profile {
            let v = p.to_f64();
            let _ = writeln!(s, "{:.15},{:.15},{:.15},{:.15}", v[0], v[1], v[2], v[3]);
        }
    }
    s
}

/// Census profiles that fail `(p0,p3) ∈ Δ` after inflating tolerances by `1/n`.
pub fn k3_containment_failures(census: &Census) -> Vec<CanonicalForm> {
    let tol = 1.0 / census.n as f64;
    census
        .classes
        .iter()
        .filter(|c| {
            let p = c.profile.as_ref().map(|p| p.exact());
            match p {
                Some(p) => !classify_k3(
                    &PointK3 {
                        p0: to_f64(&p[0]),
                        p3: to_f64(&p[3]),
                    },
                    tol,
                )
                .is_inside(),
                None => false,
            }
        })
        .map(|c| c.form)
        .collect()
}
