//! Symmetric tridiagonal eigen-solvers.
//!
//! Two routes are provided. [`SymTridiagonal::eigenvalue`] bisects on Sturm
//! sequence counts and is used when only a few of the smallest eigenvalues of a
//! large matrix are wanted. [`eigen_first_components`] runs implicit QL over the
//! whole matrix and tracks only the first component of each eigenvector, which
//! is all the Golub–Welsch construction needs.

use crate::error::{Error, Result};

const QL_MAX_SWEEPS: usize = 60;
const BISECTION_MAX_STEPS: usize = 256;
const INVERSE_ITERATION_STEPS: usize = 4;

/// Symmetric tridiagonal matrix stored as its diagonal and off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    /// `off.len()` must be `diag.len() − 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::Domain {
                func: "SymTridiagonal::new",
                value: off.len() as f64,
                expected: "off.len() == diag.len() - 1",
            });
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `lambda` (negative LDLᵀ pivots).
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let guard = f64::EPSILON * self.norm_bound();
        let mut count = 0;
        let mut q = self.diag[0] - lambda;
        for i in 0..self.dim() {
            if i > 0 {
                let e = self.off[i - 1];
                q = self.diag[i] - lambda - e * e / q;
            }
            if q == 0.0 {
                q = -guard;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn norm_bound(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE)
    }

    /// The `k`-th smallest eigenvalue (0-based) by Sturm bisection.
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        if k >= self.dim() {
            return Err(Error::Domain {
                func: "SymTridiagonal::eigenvalue",
                value: k as f64,
                expected: "k < dim",
            });
        }
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * self.norm_bound();
        lo -= pad;
        hi += pad;
        for _ in 0..BISECTION_MAX_STEPS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Unit eigenvector for an (already converged) eigenvalue, by inverse iteration.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.dim();
        let tiny = f64::EPSILON * self.norm_bound();
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 1e-3 * ((i * 7) % 13) as f64).collect();
        for _ in 0..INVERSE_ITERATION_STEPS {
            v = self.solve_shifted(lambda, &v, tiny);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
        }
        v
    }

    /// Solves `(T − λI) x = b` with partial pivoting; zero pivots are nudged to `tiny`.
    fn solve_shifted(&self, lambda: f64, b: &[f64], tiny: f64) -> Vec<f64> {
        let n = self.dim();
        let mut b = b.to_vec();
        if n == 1 {
            let p = self.diag[0] - lambda;
            b[0] /= if p == 0.0 { tiny } else { p };
            return b;
        }
        let mut d: Vec<f64> = self.diag.iter().map(|x| x - lambda).collect();
        let mut du = self.off.clone();
        let mut dl = self.off.clone();
        // second superdiagonal created by row interchanges
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                d[i + 1] -= fact * du[i];
                b[i + 1] -= fact * b[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                let tmp = d[i + 1];
                d[i + 1] = du[i] - fact * tmp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                du[i] = tmp;
                let tb = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tb - fact * b[i + 1];
            }
            dl[i] = 0.0;
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        b[n - 1] /= d[n - 1];
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
        }
        b
    }
}

/// All eigenvalues of a symmetric tridiagonal matrix together with the first
/// component of each unit eigenvector, sorted by eigenvalue.
///
/// Implicit QL with Wilkinson shifts; only the first row of the accumulated
/// rotation matrix is kept.
pub fn eigen_first_components(t: &SymTridiagonal) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = t.dim();
    let mut d = t.diag.clone();
    let mut e = t.off.clone();
    e.push(0.0);
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > QL_MAX_SWEEPS {
                return Err(Error::NonConvergence {
                    method: "implicit QL",
                    detail: format!("eigenvalue {l} after {QL_MAX_SWEEPS} sweeps"),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    Ok((
        order.iter().map(|&i| d[i]).collect(),
        order.iter().map(|&i| z[i]).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Second-difference matrix tridiag(−1, 2, −1) with eigenvalues
    /// `2 − 2cos(kπ/(n+1))` and eigenvectors `sin(ikπ/(n+1))`.
    fn laplacian(n: usize) -> SymTridiagonal {
        SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap()
    }

    fn exact(n: usize, k: usize) -> f64 {
        let theta = (k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64;
        2.0 - 2.0 * theta.cos()
    }

    #[test]
    fn bisection_on_laplacian() {
        let t = laplacian(200);
        for k in [0, 1, 5, 199] {
            assert_relative_eq!(
                t.eigenvalue(k).unwrap(),
                exact(200, k),
                max_relative = 1e-12
            );
        }
        assert!(t.eigenvalue(200).is_err());
    }

    #[test]
    fn ql_on_laplacian() {
        let n = 50;
        let (vals, first) = eigen_first_components(&laplacian(n)).unwrap();
        let norm = (2.0 / (n + 1) as f64).sqrt();
        for k in 0..n {
            assert_relative_eq!(vals[k], exact(n, k), epsilon = 1e-13);
            let theta = (k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64;
            assert_relative_eq!(first[k].abs(), norm * theta.sin(), epsilon = 1e-13);
        }
    }

    #[test]
    fn sturm_count_brackets() {
        let t = laplacian(10);
        assert_eq!(t.sturm_count(-1.0), 0);
        assert_eq!(t.sturm_count(5.0), 10);
        assert_eq!(t.sturm_count(0.5 * (exact(10, 2) + exact(10, 3))), 3);
    }

    #[test]
    fn inverse_iteration_recovers_sine_modes() {
        let n = 64;
        let t = laplacian(n);
        for k in 0..4 {
            let v = t.eigenvector(t.eigenvalue(k).unwrap());
            let theta = (k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64;
            let norm = (2.0 / (n + 1) as f64).sqrt();
            let sign = v[0].signum();
            for (i, x) in v.iter().enumerate() {
                assert_relative_eq!(
                    sign * x,
                    norm * ((i + 1) as f64 * theta).sin(),
                    epsilon = 1e-10
                );
            }
        }
    }

    #[test]
    fn one_by_one() {
        let t = SymTridiagonal::new(vec![3.5], vec![]).unwrap();
        assert!((t.eigenvalue(0).unwrap() - 3.5).abs() < 1e-14);
        let (v, z) = eigen_first_components(&t).unwrap();
        assert_eq!((v[0], z[0]), (3.5, 1.0));
        assert!(SymTridiagonal::new(vec![1.0, 2.0], vec![]).is_err());
    }
}
