//! Membership oracles and inverse constructions for the two limit regions:
//! the `(p0,p3)` region of all graphs and the `(p0,p1,p2)` region of
//! triangle-free graphs.
//!
//! Oracles test the limit sets. Boundary points are members up to
//! [`BOUNDARY_TOL`]; callers checking finite graphs add their own `O(1/n)` slack.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::flags::{flag_matrix, FlagMatrix, FlaggedGraph};
use crate::graph::named;
use crate::linalg::{is_psd_2x2, SymMatrix};
use crate::randmodels::{expected_profile_tf, Homotopy, ModelParams};

pub const BOUNDARY_TOL: f64 = 1e-12;
pub const GOODMAN_BOUND: f64 = 0.25;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointK3 {
    pub p0: f64,
    pub p3: f64,
}

impl PointK3 {
    pub fn new(p0: f64, p3: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&p0) && (0.0..=1.0).contains(&p3) {
            Ok(PointK3 { p0, p3 })
        } else {
            Err(Error::Invalid(format!("({p0}, {p3}) outside [0,1]²")))
        }
    }

    pub fn dist(&self, other: &PointK3) -> f64 {
        ((self.p0 - other.p0).powi(2) + (self.p3 - other.p3).powi(2)).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointTF {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
}

impl PointTF {
    pub fn new(p0: f64, p1: f64, p2: f64) -> Result<Self> {
        if ![p0, p1, p2].iter().all(|v| (0.0..=1.0).contains(v)) {
            return Err(Error::Invalid(format!("({p0}, {p1}, {p2}) outside [0,1]³")));
        }
        if (p0 + p1 + p2 - 1.0).abs() > 1e-12 {
            return Err(Error::Invalid(format!("p0+p1+p2 = {} ≠ 1", p0 + p1 + p2)));
        }
        Ok(PointTF { p0, p1, p2 })
    }

    /// `p2 = 1 - p0 - p1`.
    pub fn from_p0_p1(p0: f64, p1: f64) -> Result<Self> {
        Self::new(p0, p1, (1.0 - p0 - p1).max(0.0))
    }
}

/// Constraint named in a membership verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    Goodman,
    /// `(1-p0^{1/3})³ + 3p0^{1/3}(1-p0^{1/3})²`, the complement-of-clique curve.
    EnvelopeBranch1,
    /// `(1-β)³`, the clique curve.
    EnvelopeBranch2,
    TfDet,
    TfDiag,
}

impl Constraint {
    pub fn name(&self) -> &'static str {
        match self {
            Constraint::Goodman => "goodman",
            Constraint::EnvelopeBranch1 => "envelope-branch-1",
            Constraint::EnvelopeBranch2 => "envelope-branch-2",
            Constraint::TfDet => "tf-det",
            Constraint::TfDiag => "tf-diag",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// Inside; lists the constraints met with equality (within tolerance).
    Inside {
        boundary: Vec<Constraint>,
    },
    Outside {
        violated: Constraint,
    },
}

impl Verdict {
    pub fn is_inside(&self) -> bool {
        matches!(self, Verdict::Inside { .. })
    }
}

pub fn goodman_holds(pt: &PointK3) -> bool {
    pt.p0 + pt.p3 >= GOODMAN_BOUND - BOUNDARY_TOL
}

fn check_unit(p0: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p0) {
        Ok(())
    } else {
        Err(Error::Invalid(format!("p0 = {p0} outside [0,1]")))
    }
}

/// Root in [0,1] of `3β² - 2β³ = p0` by 80 bisection steps.
pub fn beta_root(p0: f64) -> Result<f64> {
    check_unit(p0)?;
    if p0 == 0.0 || p0 == 1.0 {
        return Ok(p0);
    }
    let f = |b: f64| 3.0 * b * b - 2.0 * b * b * b;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < p0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The two candidate maxima of `p3` given `p0`: (complement-of-clique, clique).
pub fn envelope_branches(p0: f64) -> Result<(f64, f64)> {
    check_unit(p0)?;
    let r = p0.cbrt();
    let first = (1.0 - r).powi(3) + 3.0 * r * (1.0 - r).powi(2);
    let beta = beta_root(p0)?;
    Ok((first, (1.0 - beta).powi(3)))
}

/// Largest limit `p3` compatible with `p0`.
pub fn upper_envelope(p0: f64) -> Result<f64> {
    let (a, b) = envelope_branches(p0)?;
    Ok(a.max(b))
}

pub fn in_delta_k3(pt: &PointK3) -> bool {
    classify_k3(pt, BOUNDARY_TOL).is_inside()
}

/// Membership with an explicit tolerance, naming the binding constraint.
pub fn classify_k3(pt: &PointK3, tol: f64) -> Verdict {
    if !(0.0..=1.0).contains(&pt.p0) || !(0.0..=1.0).contains(&pt.p3) {
        return Verdict::Outside {
            violated: Constraint::Goodman,
        };
    }
    let (b1, b2) = envelope_branches(pt.p0).expect("p0 checked");
    let env_branch = if b1 >= b2 {
        Constraint::EnvelopeBranch1
    } else {
        Constraint::EnvelopeBranch2
    };
    let slack_goodman = pt.p0 + pt.p3 - GOODMAN_BOUND;
    let slack_env = b1.max(b2) - pt.p3;
    if slack_goodman < -tol {
        return Verdict::Outside {
            violated: Constraint::Goodman,
        };
    }
    if slack_env < -tol {
        return Verdict::Outside {
            violated: env_branch,
        };
    }
    let mut boundary = Vec::new();
    if slack_goodman.abs() <= tol {
        boundary.push(Constraint::Goodman);
    }
    if slack_env.abs() <= tol {
        boundary.push(env_branch);
    }
    Verdict::Inside { boundary }
}

/// Smallest slack over the constraints bounding the region:
/// `p0 ≥ 0`, `p3 ≥ 0`, Goodman, and the envelope. Positive means interior.
pub fn k3_margin(pt: &PointK3) -> f64 {
    match upper_envelope(pt.p0) {
        Ok(env) => pt
            .p0
            .min(pt.p3)
            .min(pt.p0 + pt.p3 - GOODMAN_BOUND)
            .min(env - pt.p3),
        Err(_) => f64::NEG_INFINITY,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curve {
    /// cliques on a vertex fraction x: `((1-x)³+3(1-x)²x, x³)`
    C1,
    /// complements of cliques: `(x³, (1-x)³+3(1-x)²x)`
    C2,
    /// `(t³, (1-t)³)`
    CPrime,
}

impl Curve {
    pub fn at(self, t: f64) -> PointK3 {
        let s = 1.0 - t;
        let side = s.powi(3) + 3.0 * s * s * t;
        match self {
            Curve::C1 => PointK3 {
                p0: side,
                p3: t.powi(3),
            },
            Curve::C2 => PointK3 {
                p0: t.powi(3),
                p3: side,
            },
            Curve::CPrime => PointK3 {
                p0: t.powi(3),
                p3: s.powi(3),
            },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Curve::C1 => "C1",
            Curve::C2 => "C2",
            Curve::CPrime => "Cprime",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveSample {
    pub t: f64,
    pub point: PointK3,
}

/// `count` samples on a uniform parameter grid over [0,1], endpoints included.
pub fn curve_points(curve: Curve, count: usize) -> Result<Vec<CurveSample>> {
    if count < 2 {
        return Err(Error::Invalid(format!(
            "need at least 2 samples, got {count}"
        )));
    }
    Ok((0..count)
        .map(|i| {
            let t = i as f64 / (count - 1) as f64;
            CurveSample {
                t,
                point: curve.at(t),
            }
        })
        .collect())
}

/// `(3p0+p1)(1-p0-p1) - (1-p0)²`; nonnegative on the triangle-free region.
pub fn tf_slack(p0: f64, p1: f64) -> f64 {
    (3.0 * p0 + p1) * (1.0 - p0 - p1) - (1.0 - p0).powi(2)
}

/// `A^{K̄3}`, `A^{P̄3}`, `A^{P3}` over the flags (ē, e).
pub fn tf_type_matrices() -> &'static [FlagMatrix; 3] {
    static MATS: OnceLock<[FlagMatrix; 3]> = OnceLock::new();
    MATS.get_or_init(|| {
        let flags = [FlaggedGraph::non_edge(), FlaggedGraph::edge()];
        [named::k3_bar(), named::p3_bar(), named::p3()]
            .map(|h| flag_matrix(&flags, &h).expect("3-vertex types"))
    })
}

/// `p0·A^{K̄3} + p1·A^{P̄3} + p2·A^{P3}`.
pub fn tf_matrix(pt: &PointTF) -> SymMatrix {
    tf_matrix_parts(pt.p0, pt.p1, pt.p2)
}

fn tf_matrix_parts(p0: f64, p1: f64, p2: f64) -> SymMatrix {
    let mut m = SymMatrix::zeros(2);
    for (w, a) in [p0, p1, p2].iter().zip(tf_type_matrices()) {
        m.add_scaled(&a.to_sym(), *w);
    }
    m
}

pub fn tf_membership(pt: &PointTF) -> bool {
    is_psd_2x2(&tf_matrix(pt), BOUNDARY_TOL)
}

pub fn classify_tf(pt: &PointTF) -> Verdict {
    classify_tf_parts(pt.p0, pt.p1, pt.p2)
}

fn classify_tf_parts(p0: f64, p1: f64, p2: f64) -> Verdict {
    let m = tf_matrix_parts(p0, p1, p2);
    let (a, b, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 1));
    let det = a * d - b * b;
    if det < -BOUNDARY_TOL {
        return Verdict::Outside {
            violated: Constraint::TfDet,
        };
    }
    if a < -BOUNDARY_TOL || d < -BOUNDARY_TOL {
        return Verdict::Outside {
            violated: Constraint::TfDiag,
        };
    }
    let mut boundary = Vec::new();
    if det.abs() <= BOUNDARY_TOL {
        boundary.push(Constraint::TfDet);
    }
    if d.abs() <= BOUNDARY_TOL {
        boundary.push(Constraint::TfDiag);
    }
    Verdict::Inside { boundary }
}

/// `(α, q)` with `expected_profile_tf(α, q) = (p0, p1)`, taking `α ≤ 1/2`.
pub fn tf_inverse(p0: f64, p1: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&p0) || !(0.0..=1.0).contains(&p1) {
        return Err(Error::Invalid(format!("({p0}, {p1}) outside [0,1]²")));
    }
    if let Verdict::Outside { violated } = classify_tf_parts(p0, p1, 1.0 - p0 - p1) {
        return Err(Error::Infeasible(format!(
            "({p0}, {p1}) violates {violated}"
        )));
    }
    let rest = 1.0 - p0 - p1;
    if rest <= BOUNDARY_TOL {
        // only the empty profile survives here; α is immaterial when q = 0
        if p0 >= 1.0 - BOUNDARY_TOL {
            return Ok((0.5, 0.0));
        }
        return Err(Error::Infeasible(format!(
            "({p0}, {p1}) has p0+p1 = 1 with p0 < 1"
        )));
    }
    let q = ((2.0 - 2.0 * p0 - 2.0 * p1) / (2.0 - 2.0 * p0 - p1)).clamp(0.0, 1.0);
    let r = (tf_slack(p0, p1) / (3.0 * rest)).clamp(0.0, 1.0);
    let alpha = 0.5 * (1.0 - r.sqrt());
    Ok((alpha, q))
}

/// Result of inverting the expected-profile map on one of the two families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Inversion {
    pub family: Homotopy,
    pub x: f64,
    pub a: f64,
    pub params: ModelParams,
    pub residual: f64,
}

pub const NEWTON_GRID: usize = 21;
pub const NEWTON_MAX_ITER: usize = 100;
/// Residual at which a start counts as converged.
pub const NEWTON_ACCEPT: f64 = 1e-9;
/// Precondition slack for [`region_inverse_k3`].
pub const INVERSE_MARGIN: f64 = 1e-6;

fn newton(family: Homotopy, target: &PointK3, start: (f64, f64)) -> (f64, f64, f64) {
    let resid = |x: f64, a: f64| {
        let p = family.eval(x, a);
        (p.p0 - target.p0, p.p3 - target.p3)
    };
    let norm = |r: (f64, f64)| r.0.hypot(r.1);
    let (mut x, mut a) = start;
    let mut r = resid(x, a);
    for _ in 0..NEWTON_MAX_ITER {
        if norm(r) < 1e-14 {
            break;
        }
        let (_, j) = family.eval_with_jacobian(x, a);
        // Levenberg-regularized normal equations keep singular Jacobians usable
        let mu =
            1e-14 * (1.0 + j[0][0].powi(2) + j[0][1].powi(2) + j[1][0].powi(2) + j[1][1].powi(2));
        let (m00, m01, m11) = (
            j[0][0] * j[0][0] + j[1][0] * j[1][0] + mu,
            j[0][0] * j[0][1] + j[1][0] * j[1][1],
            j[0][1] * j[0][1] + j[1][1] * j[1][1] + mu,
        );
        let (g0, g1) = (j[0][0] * r.0 + j[1][0] * r.1, j[0][1] * r.0 + j[1][1] * r.1);
        let det = m00 * m11 - m01 * m01;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let dx = -(m11 * g0 - m01 * g1) / det;
        let da = -(m00 * g1 - m01 * g0) / det;
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let (nx, na) = (
                (x + step * dx).clamp(0.0, 1.0),
                (a + step * da).clamp(0.0, 1.0),
            );
            let nr = resid(nx, na);
            if norm(nr) < norm(r) {
                x = nx;
                a = na;
                r = nr;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (x, a, norm(r))
}

/// Finds `(x,a)` in family H, then H1, whose limit profile hits `pt`, by
/// damped Newton from a 21×21 grid of starts. The first converged start in
/// grid order wins.
pub fn region_inverse_k3(pt: &PointK3) -> Result<Inversion> {
    if let Verdict::Outside { violated } = classify_k3(pt, INVERSE_MARGIN) {
        return Err(Error::Infeasible(format!(
            "({}, {}) violates {violated}",
            pt.p0, pt.p3
        )));
    }
    let mut best = f64::INFINITY;
    for family in [Homotopy::H, Homotopy::H1] {
        for i in 0..NEWTON_GRID {
            for j in 0..NEWTON_GRID {
                let start = (
                    i as f64 / (NEWTON_GRID - 1) as f64,
                    j as f64 / (NEWTON_GRID - 1) as f64,
                );
                let (x, a, res) = newton(family, pt, start);
                if res < NEWTON_ACCEPT {
                    return Ok(Inversion {
                        family,
                        x,
                        a,
                        params: family.params(x, a),
                        residual: res,
                    });
                }
                best = best.min(res);
            }
        }
    }
    Err(Error::NoConvergence(best))
}

/// Forward check of a tf inversion: `|E(p0,p1) - (p0,p1)|∞`.
pub fn tf_roundtrip_error(p0: f64, p1: f64) -> Result<f64> {
    let (alpha, q) = tf_inverse(p0, p1)?;
    let (e0, e1) = expected_profile_tf(alpha, q);
    Ok((e0 - p0).abs().max((e1 - p1).abs()))
}
