//! The two-block edge-independent model `G(x,a,b,c)`: vertex set `A ∪ B` with
//! `|A| = round(x·n)`, pairs inside `A` present with probability `a`, inside
//! `B` with `b`, across with `c`.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::density::profile3;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::regions::PointK3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub x: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl ModelParams {
    pub fn new(x: f64, a: f64, b: f64, c: f64) -> Result<Self> {
        let p = ModelParams { x, a, b, c };
        if [x, a, b, c].iter().all(|v| (0.0..=1.0).contains(v)) {
            Ok(p)
        } else {
            Err(Error::Invalid(format!(
                "model parameters must lie in [0,1]: {p:?}"
            )))
        }
    }

    /// `G(n,p)`: all three probabilities equal.
    pub fn uniform(p: f64) -> Self {
        ModelParams {
            x: 0.5,
            a: p,
            b: p,
            c: p,
        }
    }

    /// Bipartite model `G(α,0,0,q)`.
    pub fn bipartite(alpha: f64, q: f64) -> Self {
        ModelParams {
            x: alpha,
            a: 0.0,
            b: 0.0,
            c: q,
        }
    }

    pub fn block_size(&self, n: usize) -> usize {
        ((self.x * n as f64).round() as usize).min(n)
    }

    pub fn is_deterministic(&self) -> bool {
        [self.a, self.b, self.c]
            .iter()
            .all(|&p| p == 0.0 || p == 1.0)
    }
}

/// Samples `G(x,a,b,c)` on `n` vertices; vertices `0..round(x·n)` form block A.
/// Row `u` draws its pairs `(u,v)`, `v > u`, from ChaCha stream `u` of `seed`,
/// so output does not depend on thread count.
pub fn sample_gxabc(n: usize, params: &ModelParams, seed: u64) -> Graph {
    let na = params.block_size(n);
    let rows: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(u as u64);
            (u + 1..n)
                .filter(|&v| {
                    let p = match (u < na, v < na) {
                        (true, true) => params.a,
                        (false, false) => params.b,
                        _ => params.c,
                    };
                    rng.gen::<f64>() < p
                })
                .collect()
        })
        .collect();
    let mut g = Graph::empty(n);
    for (u, row) in rows.into_iter().enumerate() {
        for v in row {
            g.add_edge(u, v);
        }
    }
    g
}

/// `x³u³ + y³v³ + 3x²y·u·w² + 3xy²·v·w²` with `y = 1-x`, and its partials
/// `(∂x, ∂u, ∂v, ∂w)`. With `(u,v,w) = (a,b,c)` this is E p3; with
/// complements it is E p0.
pub(crate) fn block_poly(x: f64, u: f64, v: f64, w: f64) -> (f64, [f64; 4]) {
    let y = 1.0 - x;
    let val = x.powi(3) * u.powi(3)
        + y.powi(3) * v.powi(3)
        + 3.0 * x * x * y * u * w * w
        + 3.0 * x * y * y * v * w * w;
    let dx = 3.0 * x * x * u.powi(3) - 3.0 * y * y * v.powi(3)
        + 3.0 * u * w * w * (2.0 * x * y - x * x)
        + 3.0 * v * w * w * (y * y - 2.0 * x * y);
    let du = 3.0 * x.powi(3) * u * u + 3.0 * x * x * y * w * w;
    let dv = 3.0 * y.powi(3) * v * v + 3.0 * x * y * y * w * w;
    let dw = 6.0 * x * x * y * u * w + 6.0 * x * y * y * v * w;
    (val, [dx, du, dv, dw])
}

/// Limit values `(E p0, E p3)` of `G(x,a,b,c)`.
pub fn expected_profile_k3(p: &ModelParams) -> (f64, f64) {
    let (p0, _) = block_poly(p.x, 1.0 - p.a, 1.0 - p.b, 1.0 - p.c);
    let (p3, _) = block_poly(p.x, p.a, p.b, p.c);
    (p0, p3)
}

/// Limit values `(E p0, E p1)` of the bipartite model `G(α,0,0,q)`.
pub fn expected_profile_tf(alpha: f64, q: f64) -> (f64, f64) {
    let s = alpha * (1.0 - alpha);
    (1.0 - 3.0 * s * q * (2.0 - q), 6.0 * s * q * (1.0 - q))
}

/// The two restricted families used for inversion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homotopy {
    /// `(x, a, 1-a, 1-a)`
    H,
    /// `(x, a, a, 1-a)`
    H1,
}

impl Homotopy {
    pub fn params(self, x: f64, a: f64) -> ModelParams {
        match self {
            Homotopy::H => ModelParams {
                x,
                a,
                b: 1.0 - a,
                c: 1.0 - a,
            },
            Homotopy::H1 => ModelParams {
                x,
                a,
                b: a,
                c: 1.0 - a,
            },
        }
    }

    pub fn eval(self, x: f64, a: f64) -> PointK3 {
        let (p0, p3) = expected_profile_k3(&self.params(x, a));
        PointK3 { p0, p3 }
    }

    /// Value and Jacobian `[[∂p0/∂x, ∂p0/∂a], [∂p3/∂x, ∂p3/∂a]]`.
    pub fn eval_with_jacobian(self, x: f64, a: f64) -> (PointK3, [[f64; 2]; 2]) {
        // d(u,v,w)/da for the p3 polynomial; the p0 polynomial uses complements
        let dir: [f64; 3] = match self {
            Homotopy::H => [1.0, -1.0, -1.0],
            Homotopy::H1 => [1.0, 1.0, -1.0],
        };
        let p = self.params(x, a);
        let (p0, g0) = block_poly(x, 1.0 - p.a, 1.0 - p.b, 1.0 - p.c);
        let (p3, g3) = block_poly(x, p.a, p.b, p.c);
        let da = |g: &[f64; 4], sign: f64| sign * (g[1] * dir[0] + g[2] * dir[1] + g[3] * dir[2]);
        (
            PointK3 { p0, p3 },
            [[g0[0], da(&g0, -1.0)], [g3[0], da(&g3, 1.0)]],
        )
    }
}

pub fn homotopy_h(x: f64, a: f64) -> PointK3 {
    Homotopy::H.eval(x, a)
}

pub fn homotopy_h1(x: f64, a: f64) -> PointK3 {
    Homotopy::H1.eval(x, a)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialRow {
    pub trial: usize,
    pub seed: u64,
    pub p0_emp: f64,
    pub p3_emp: f64,
    pub p0_exp: f64,
    pub p3_exp: f64,
    pub dev_max: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub n: usize,
    pub params: ModelParams,
    pub rows: Vec<TrialRow>,
}

impl SampleReport {
    /// Reference deviation scale `1/√n`.
    pub fn threshold(&self) -> f64 {
        1.0 / (self.n as f64).sqrt()
    }

    pub fn max_deviation(&self) -> f64 {
        self.rows.iter().map(|r| r.dev_max).fold(0.0, f64::max)
    }

    pub fn mean_deviation(&self) -> f64 {
        self.rows.iter().map(|r| r.dev_max).sum::<f64>() / self.rows.len() as f64
    }

    pub fn fraction_within(&self, bound: f64) -> f64 {
        self.rows.iter().filter(|r| r.dev_max <= bound).count() as f64 / self.rows.len() as f64
    }

    pub const CSV_HEADER: &'static str = "trial,seed,p0_emp,p3_emp,p0_exp,p3_exp,dev_max";

    /// One row per trial plus a trailing `#` summary line.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", Self::CSV_HEADER);
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{:.15},{:.15},{:.15},{:.15},{:.15}",
                r.trial, r.seed, r.p0_emp, r.p3_emp, r.p0_exp, r.p3_exp, r.dev_max
            );
        }
        let _ = writeln!(
            s,
            "# n={} trials={} threshold={:.15} fraction_within={:.6} max_dev={:.15}",
            self.n,
            self.rows.len(),
            self.threshold(),
            self.fraction_within(self.threshold()),
            self.max_deviation()
        );
        s
    }
}

/// Per-trial seeds drawn from a ChaCha generator keyed by `seed`.
pub fn trial_seeds(seed: u64, trials: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| rng.gen()).collect()
}

/// Samples `trials` graphs and compares their exact `(p0,p3)` to the limit values.
pub fn concentration_test(
    params: &ModelParams,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<SampleReport> {
    if n < 100 {
        return Err(Error::Invalid(format!("n={n} below 100")));
    }
    if trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    let (p0_exp, p3_exp) = expected_profile_k3(params);
    let rows = trial_seeds(seed, trials)
        .into_par_iter()
        .enumerate()
        .map(|(trial, s)| {
            let g = sample_gxabc(n, params, s);
            let prof = profile3(&g).expect("n >= 100").to_f64();
            let dev_max = (prof[0] - p0_exp).abs().max((prof[3] - p3_exp).abs());
            TrialRow {
                trial,
                seed: s,
                p0_emp: prof[0],
                p3_emp: prof[3],
                p0_exp,
                p3_exp,
                dev_max,
            }
        })
        .collect();
    Ok(SampleReport {
        n,
        params: *params,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: (f64, f64), b: (f64, f64), tol: f64) -> bool {
        (a.0 - b.0).abs() < tol && (a.1 - b.1).abs() < tol
    }

    #[test]
    fn deterministic_samples() {
        let k = sample_gxabc(12, &ModelParams::new(1.0, 1.0, 0.3, 0.3).unwrap(), 7);
        assert_eq!(k, Graph::complete(12));
        let g = sample_gxabc(10, &ModelParams::new(0.5, 1.0, 0.0, 0.0).unwrap(), 1);
        assert_eq!(g.edge_count(), 10);
        assert!((0..5).all(|u| g.degree(u) == 4));
        assert!((5..10).all(|u| g.degree(u) == 0));
        let p = ModelParams::uniform(0.3);
        assert_eq!(sample_gxabc(50, &p, 9), sample_gxabc(50, &p, 9));
        assert_ne!(sample_gxabc(50, &p, 9), sample_gxabc(50, &p, 10));
    }

    #[test]
    fn expected_profile_examples() {
        let p = 0.3;
        let k = expected_profile_k3(&ModelParams::new(1.0, p, 0.9, 0.1).unwrap());
        assert!(close(k, ((1.0 - p).powi(3), p.powi(3)), 1e-15));
        let k = expected_profile_k3(&ModelParams::new(0.5, 1.0, 0.0, 0.0).unwrap());
        assert!(close(k, (0.5, 0.125), 1e-15));
        for x in [0.0, 0.2, 0.5, 0.77, 1.0] {
            let k = expected_profile_k3(&ModelParams::new(x, p, p, p).unwrap());
            assert!(close(k, ((1.0 - p).powi(3), p.powi(3)), 1e-14));
        }
    }

    #[test]
    fn bipartite_examples() {
        assert_eq!(expected_profile_tf(0.3, 0.0), (1.0, 0.0));
        assert_eq!(expected_profile_tf(0.5, 1.0), (0.25, 0.0));
        assert_eq!(expected_profile_tf(0.5, 0.5), (7.0 / 16.0, 3.0 / 8.0));
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let h = 1e-6;
        for hom in [Homotopy::H, Homotopy::H1] {
            for &(x, a) in &[(0.3, 0.2), (0.7, 0.6), (0.5, 0.9)] {
                let (_, j) = hom.eval_with_jacobian(x, a);
                let fx = |x: f64, a: f64| hom.eval(x, a);
                let dx0 = (fx(x + h, a).p0 - fx(x - h, a).p0) / (2.0 * h);
                let da0 = (fx(x, a + h).p0 - fx(x, a - h).p0) / (2.0 * h);
                let dx3 = (fx(x + h, a).p3 - fx(x - h, a).p3) / (2.0 * h);
                let da3 = (fx(x, a + h).p3 - fx(x, a - h).p3) / (2.0 * h);
                for (got, want) in [
                    (j[0][0], dx0),
                    (j[0][1], da0),
                    (j[1][0], dx3),
                    (j[1][1], da3),
                ] {
                    assert!(
                        (got - want).abs() < 1e-8,
                        "{hom:?} ({x},{a}): {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn report_csv_shape() {
        let r = concentration_test(&ModelParams::uniform(0.5), 100, 3, 1).unwrap();
        let csv = r.to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], SampleReport::CSV_HEADER);
        assert!(lines[4].starts_with("# n=100 trials=3"));
        assert!(concentration_test(&ModelParams::uniform(0.5), 99, 3, 1).is_err());
        assert!(concentration_test(&ModelParams::uniform(0.5), 100, 0, 1).is_err());
    }
}
