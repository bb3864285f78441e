//! Small dense symmetric matrices: cyclic Jacobi eigenvalues, distance to the
//! PSD cone, and an exact PSD test for rational matrices.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Off-diagonal Frobenius norm at which Jacobi sweeps stop.
pub const JACOBI_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Rejects ragged or non-symmetric input (exact comparison).
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if data[i * dim + j] != data[j * dim + i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(SymMatrix { dim, data })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets both `(i,j)` and `(j,i)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn add_scaled(&mut self, other: &SymMatrix, w: f64) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += w * b;
        }
    }

    pub fn trace_product(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    /// Eigenvalues in ascending order (cyclic Jacobi).
    pub fn eigenvalues(&self) -> Vec<f64> {
        let n = self.dim;
        let mut a = self.data.clone();
        for _ in 0..MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[i * n + j] * a[i * n + j])
                .sum::<f64>()
                .sqrt();
            if off < JACOBI_TOL {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[p * n + q];
                    if apq == 0.0 {
                        continue;
                    }
                    let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[k * n + p];
                        let akq = a[k * n + q];
                        a[k * n + p] = c * akp - s * akq;
                        a[k * n + q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[p * n + k];
                        let aqk = a[q * n + k];
                        a[p * n + k] = c * apk - s * aqk;
                        a[q * n + k] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut ev: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
        ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(0.0)
    }
}

/// Frobenius distance to the PSD cone, `sqrt(Σ min(λ_i,0)²)`.
///
/// Eigenvalues within `JACOBI_TOL·max(1,‖M‖)` below zero are below the
/// solver's resolution and count as zero.
pub fn psd_distance(m: &SymMatrix) -> f64 {
    let floor = JACOBI_TOL * m.frobenius().max(1.0);
    m.eigenvalues()
        .into_iter()
        .filter(|&l| l < -floor)
        .map(|l| l * l)
        .sum::<f64>()
        .sqrt()
}

/// Closed-form 2×2 test: both diagonals and the determinant ≥ `-tol`.
pub fn is_psd_2x2(m: &SymMatrix, tol: f64) -> bool {
    assert_eq!(m.dim(), 2);
    let (a, b, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 1));
    a >= -tol && d >= -tol && a * d - b * b >= -tol
}

/// Exact PSD decision for a symmetric rational matrix (row-major) via
/// symmetric elimination with diagonal pivoting.
pub fn is_psd_exact(entries: &[Rational], dim: usize) -> bool {
    assert_eq!(entries.len(), dim * dim);
    let mut a: Vec<Rational> = entries.to_vec();
    let mut active: Vec<usize> = (0..dim).collect();
    while !active.is_empty() {
        let pivot = active
            .iter()
            .copied()
            .max_by(|&i, &j| a[i * dim + i].cmp(&a[j * dim + j]))
            .unwrap();
        let p = a[pivot * dim + pivot].clone();
        if p.is_negative() {
            return false;
        }
        if p.is_zero() {
            // all remaining diagonals are zero, so the remainder must vanish
            return active
                .iter()
                .all(|&i| active.iter().all(|&j| a[i * dim + j].is_zero()));
        }
        active.retain(|&i| i != pivot);
        for &i in &active {
            let f = a[i * dim + pivot].clone() / &p;
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let delta = &f * &a[pivot * dim + j];
                a[i * dim + j] -= delta;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn distances() {
        assert_eq!(psd_distance(&SymMatrix::identity(3)), 0.0);
        assert!((psd_distance(&SymMatrix::diag(&[1.0, -2.0])) - 2.0).abs() < 1e-15);
        let m = SymMatrix::from_rows(&[vec![0.0, 1.0 / 3.0], vec![1.0 / 3.0, 1.0 / 3.0]]).unwrap();
        let expected = (1.0 - 5f64.sqrt()).abs() / 6.0;
        assert!((psd_distance(&m) - expected).abs() < 1e-14);
        assert!((expected - 0.2060).abs() < 1e-4);
    }

    #[test]
    fn rejects_non_symmetric() {
        assert!(matches!(
            SymMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]),
            Err(Error::NotSymmetric(0, 1))
        ));
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0]]).is_err());
    }

    #[test]
    fn jacobi_on_known_spectrum() {
        // tridiagonal (2,-1) of size 5: eigenvalues 2 - 2cos(kπ/6)
        let m = SymMatrix::from_fn(5, |i, j| match j - i {
            0 => 2.0,
            1 => -1.0,
            _ => 0.0,
        });
        let ev = m.eigenvalues();
        for (k, l) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / 6.0).cos();
            assert!((l - exact).abs() < 1e-12, "{l} vs {exact}");
        }
    }

    #[test]
    fn exact_psd() {
        let r = |v: &[(i64, i64)]| {
            v.iter()
                .map(|&(a, b)| ratio(a as u128, b as u128))
                .collect::<Vec<_>>()
        };
        assert!(is_psd_exact(&r(&[(1, 1), (0, 1), (0, 1), (0, 1)]), 2));
        assert!(is_psd_exact(&r(&[(1, 1), (1, 1), (1, 1), (1, 1)]), 2));
        assert!(!is_psd_exact(
            &[int(0), ratio(1, 3), ratio(1, 3), ratio(1, 3)],
            2
        ));
        assert!(!is_psd_exact(&[int(1), int(0), int(0), int(-1)], 2));
        assert!(is_psd_exact(&[int(0), int(0), int(0), int(0)], 2));
        assert!(!is_psd_exact(&[int(0), int(1), int(1), int(0)], 2));
    }

    #[test]
    fn closed_form_2x2() {
        let m = SymMatrix::from_rows(&[vec![0.0, 1.0 / 3.0], vec![1.0 / 3.0, 1.0 / 3.0]]).unwrap();
        assert!(!is_psd_2x2(&m, 1e-12));
        assert!(is_psd_2x2(&SymMatrix::diag(&[1.0, 0.0]), 1e-12));
    }
}
