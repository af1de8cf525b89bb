//! Weighted and adaptive numerical integration.
//!
//! [`gauss_jacobi_rule`] builds Gauss–Jacobi rules by Golub–Welsch: the nodes
//! are the eigenvalues of the symmetric Jacobi matrix of the orthonormal
//! recurrence and the weights are `μ₀ v₀²`, with `v₀` the first component of
//! each unit eigenvector.
//!
//! [`integrate_adaptive`] is a global adaptive 21-point Gauss–Kronrod scheme.
//! The integrand is first composed with the cubic map `t = u²(3 − 2u)`, which
//! clusters samples at both endpoints and turns integrable power and log
//! endpoint singularities into bounded or mildly singular ones.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::specfun::log_gamma;
use crate::tridiag::{eigen_first_components, SymTridiagonal};

/// Default node count for Gauss–Jacobi rules.
pub const DEFAULT_RULE_POINTS: usize = 64;

const MAX_SUBINTERVALS: usize = 20_000;

/// A quadrature rule for `∫_lo^hi (hi − t)^α (t − lo)^β f(t) dt ≈ Σ wᵢ f(tᵢ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    interval: (f64, f64),
    weight_exponents: (f64, f64),
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    /// `(α, β)` of the implicit weight `(hi − t)^α (t − lo)^β`.
    pub fn weight_exponents(&self) -> (f64, f64) {
        self.weight_exponents
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the rule to `f`; the weight function is implicit.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .sum()
    }

    /// Fallible variant of [`QuadratureRule::integrate`].
    pub fn try_integrate<F: Fn(f64) -> Result<f64>>(&self, f: F) -> Result<f64> {
        let mut sum = 0.0;
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(t)?;
        }
        Ok(sum)
    }
}

/// `N`-point Gauss–Jacobi rule on `[−1, 1]` for the weight `(1 − t)^α (1 + t)^β`.
pub fn gauss_jacobi_rule(alpha: f64, beta: f64, points: usize) -> Result<QuadratureRule> {
    for (value, expected) in [(alpha, "alpha > -1"), (beta, "beta > -1")] {
        if !(value > -1.0) || !value.is_finite() {
            return Err(Error::Domain {
                func: "gauss_jacobi_rule",
                value,
                expected,
            });
        }
    }
    if points == 0 {
        return Err(Error::Domain {
            func: "gauss_jacobi_rule",
            value: 0.0,
            expected: "at least one node",
        });
    }

    let ab = alpha + beta;
    let diag: Vec<f64> = (0..points)
        .map(|k| {
            if k == 0 {
                (beta - alpha) / (ab + 2.0)
            } else {
                let s = 2.0 * k as f64 + ab;
                (beta * beta - alpha * alpha) / (s * (s + 2.0))
            }
        })
        .collect();
    let off: Vec<f64> = (1..points)
        .map(|k| {
            let kf = k as f64;
            let s = 2.0 * kf + ab;
            if k == 1 {
                // the general expression is 0/0 when α + β = −1
                (4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))).sqrt()
            } else {
                (4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab)
                    / (s * s * (s + 1.0) * (s - 1.0)))
                    .sqrt()
            }
        })
        .collect();

    let total_mass =
        ((ab + 1.0) * std::f64::consts::LN_2 + log_gamma(alpha + 1.0)? + log_gamma(beta + 1.0)?
            - log_gamma(ab + 2.0)?)
        .exp();

    let (nodes, first) = eigen_first_components(&SymTridiagonal::new(diag, off)?)?;
    let weights = first.iter().map(|v| total_mass * v * v).collect();
    Ok(QuadratureRule {
        nodes,
        weights,
        interval: (-1.0, 1.0),
        weight_exponents: (alpha, beta),
    })
}

/// Integral value with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// 21-point Kronrod estimate on `[lo, hi]` with the QUADPACK error heuristic.
fn kronrod21<G: Fn(f64) -> f64>(g: &G, lo: f64, hi: f64) -> Result<Segment> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    let fc = g(center);
    let mut res_k = WGK[10] * fc;
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = g(center - dx);
        let f2 = g(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    if !res_k.is_finite() || !res_abs.is_finite() {
        return Err(Error::NonConvergence {
            method: "adaptive Gauss-Kronrod",
            detail: format!("non-finite integrand on [{lo}, {hi}]"),
        });
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Segment {
        lo,
        hi,
        value,
        error,
    })
}

/// `∫_lo^hi f(t) dt` to within `max(tol·|I|, tol)`.
///
/// `f` may have integrable power or logarithmic singularities at either
/// endpoint; it is never evaluated at the endpoints themselves. Failure to
/// reach the tolerance is reported as [`Error::NonConvergence`].
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<Estimate> {
    if !(tol > 0.0) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain {
            func: "integrate_adaptive",
            value: tol,
            expected: "finite limits and tol > 0",
        });
    }
    if lo == hi {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    }
    let width = hi - lo;
    // t = lo + width·u²(3 − 2u); near the upper end use hi − width·(1−u)²(1+2u)
    let g = |u: f64| {
        let v = 1.0 - u;
        let t = if u <= 0.5 {
            lo + width * u * u * (3.0 - 2.0 * u)
        } else {
            hi - width * v * v * (1.0 + 2.0 * u)
        };
        f(t) * width * 6.0 * u * v
    };

    let first = kronrod21(&g, 0.0, 1.0)?;
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::from([first]);

    while error > tol * value.abs().max(1.0) {
        if heap.len() >= MAX_SUBINTERVALS {
            return Err(non_convergence(value, error, "subinterval limit reached"));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            return Err(non_convergence(
                value,
                error,
                "subinterval below resolution",
            ));
        }
        let left = kronrod21(&g, worst.lo, mid)?;
        let right = kronrod21(&g, mid, worst.hi)?;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if heap.len() % 64 == 0 {
            // resum to stop drift from the incremental updates
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
    let value: f64 = heap.iter().map(|s| s.value).sum();
    let error: f64 = heap.iter().map(|s| s.error).sum();
    Ok(Estimate { value, error })
}

fn non_convergence(value: f64, error: f64, why: &str) -> Error {
    Error::NonConvergence {
        method: "adaptive Gauss-Kronrod",
        detail: format!("{why}; estimate {value:e} with error {error:e}"),
    }
}

/// `∫_0^∞ f(x) dx` for integrands that decay at least exponentially.
///
/// The half-line is mapped onto `y ∈ (0, 1)` by `x = artanh(√y)`. The upper half
/// `y ∈ (½, 1)` is integrated in the complementary variable `w = 1 − y` so that
/// the decaying tail is resolved without cancellation in `1 − y`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<Estimate> {
    let near = integrate_adaptive(
        |y| {
            let r = y.sqrt();
            f(r.atanh()) / (2.0 * r * (1.0 - y))
        },
        0.0,
        0.5,
        0.5 * tol,
    )?;
    let far = integrate_adaptive(
        |w| {
            let r = (1.0 - w).sqrt();
            let x = ((1.0 + r) / w.sqrt()).ln();
            f(x) / (2.0 * r * w)
        },
        0.0,
        0.5,
        0.5 * tol,
    )?;
    Ok(Estimate {
        value: near.value + far.value,
        error: near.error + far.error,
    })
}
