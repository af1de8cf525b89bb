//! Position and momentum moments, Fisher information and the uncertainty
//! products built from them.
//!
//! Naming follows the tabulated convention `I_ρ = 4⟨x²⟩` and `I_γ = 4⟨p²⟩`.
//! In the more common convention the position-space Fisher information is
//! `4⟨p²⟩`, which is the identity `I_F = I_γ` checked here.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{normalization_sq, wavefunction_x_derivatives, SystemParams, CAL_V0_MAX};
use crate::quadrature::{
    gauss_jacobi_rule, integrate_adaptive, integrate_semi_infinite, DEFAULT_RULE_POINTS,
};
use crate::specfun::{digamma, harmonic, jacobi_eval, pochhammer, JacobiParams, EULER_GAMMA};

/// Relative tolerance for the adaptive moment integrals.
pub const MOMENT_TOL: f64 = 1e-12;

/// Depth at which the specialized closed forms for `n = 2, 3` were tabulated.
pub const TABULATED_CAL_V0: f64 = 1.0 / 32.0;

const TABULATED_CAL_V0_SLACK: f64 = 1e-12;

/// Every quantity tabulated for one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureReport {
    pub n: u32,
    pub a: f64,
    pub x_mean: f64,
    pub x2_mean: f64,
    pub dx: f64,
    /// Zero for every real bound state.
    pub p_mean: f64,
    pub p2_mean: f64,
    pub dp: f64,
    pub heisenberg: f64,
    pub fisher_x: f64,
    pub i_rho: f64,
    pub i_gamma: f64,
    pub variance: f64,
    pub cramer_rao_v: f64,
    pub cramer_rao_prod: f64,
}

fn at_boundary(params: &SystemParams) -> bool {
    params.s == 0.0 || params.cal_v0 >= CAL_V0_MAX
}

/// `I_F = 4∫₀^∞ (ψ′)² dx` by Gauss–Jacobi quadrature in `ϱ`.
///
/// With `y = (1 − ϱ)/2` the integrand is polynomial against the weight
/// `(1−ϱ)^{μ−3/2}(1+ϱ)`, so `n + 2` nodes already integrate it exactly.
/// At `μ = 1/2` the integral diverges logarithmically at the origin and
/// `+∞` is returned.
pub fn fisher_quadrature(params: &SystemParams, n: u32) -> Result<f64> {
    fisher_quadrature_points(params, n, DEFAULT_RULE_POINTS.max(n as usize + 2))
}

/// [`fisher_quadrature`] with an explicit node count.
pub fn fisher_quadrature_points(params: &SystemParams, n: u32, points: usize) -> Result<f64> {
    if at_boundary(params) {
        return Ok(f64::INFINITY);
    }
    let mu = params.mu;
    let rule = gauss_jacobi_rule(mu - 1.5, 1.0, points)?;
    let pn = params.jacobi(n);
    let lowered = if n > 0 {
        Some(JacobiParams::new(mu + 0.5, 2.0, n - 1)?)
    } else {
        None
    };
    let slope = 3.0 + 2.0 * f64::from(n) + 2.0 * mu;
    let sum = rule.try_integrate(|rho| {
        let low = match &lowered {
            Some(p) => jacobi_eval(p, rho)?,
            None => 0.0,
        };
        let bracket = slope * (rho * rho - 1.0) * low
            + 2.0 * (2.0 * (rho - 1.0) + mu * (rho + 1.0)) * jacobi_eval(&pn, rho)?;
        Ok(bracket * bracket)
    })?;
    // ((1−ϱ)/2)^{μ−3/2}((1+ϱ)/2) = 2^{1/2−μ}(1−ϱ)^{μ−3/2}(1+ϱ)
    let weight_scale = 2f64.powf(0.5 - mu);
    Ok(normalization_sq(params, n) * params.a / 16.0 * weight_scale * sum)
}

fn unavailable(msg: String) -> Error {
    Error::ClosedFormUnavailable(msg)
}

/// Conversion from the tabulated Fisher coefficients to unit-normalized states.
///
/// The tabulated `n ≥ 1` coefficients are smaller than the quadrature value of
/// `4∫(ψ′)²` by exactly `n!/(μ+1/2)ₙ`; this restores that factor.
pub fn tabulated_fisher_factor(mu: f64, n: u32) -> Result<f64> {
    let fact: f64 = (1..=n).map(f64::from).product();
    Ok(pochhammer(mu + 0.5, n)? / fact)
}

/// Closed-form Fisher information for `n ≤ 3`.
///
/// `n = 0, 1` hold for every `μ ≠ 1/2`; the `n = 2, 3` coefficients are only
/// known at `𝒱₀ = 1/32`.
pub fn fisher_closed_form(params: &SystemParams, n: u32) -> Result<f64> {
    if n > 3 {
        return Err(unavailable(format!("no closed form for n = {n} (n <= 3)")));
    }
    if at_boundary(params) {
        return Err(unavailable("mu = 1/2".into()));
    }
    let mu = params.mu;
    let a = params.a;
    let norm_sq = normalization_sq(params, n);
    let coefficient = match n {
        0 => {
            32.0 * a * (2.0 * mu * mu + 4.0 * mu - 1.0)
                / ((2.0 * mu - 1.0) * (2.0 * mu + 1.0) * (2.0 * mu + 3.0) * (2.0 * mu + 5.0))
        }
        1 => {
            let numer = -33.0 + 68.0 * mu + 52.0 * mu * mu + 8.0 * mu * mu * mu;
            let denom = (2.0 * mu - 1.0)
                * (2.0 * mu + 3.0)
                * (2.0 * mu + 5.0)
                * (2.0 * mu + 7.0)
                * (2.0 * mu + 9.0);
            128.0 * a * numer / (pochhammer(mu + 0.5, 1)? * denom)
        }
        _ => {
            if (params.cal_v0 - TABULATED_CAL_V0).abs() > TABULATED_CAL_V0_SLACK {
                return Err(unavailable(format!(
                    "n = {n} is only tabulated at calV0 = 1/32 (got {})",
                    params.cal_v0
                )));
            }
            tabulated_coefficient(a, n)
        }
    };
    Ok(coefficient * norm_sq * tabulated_fisher_factor(mu, n)?)
}

/// Coefficients of `Ñₙ²` specialized to `𝒱₀ = 1/32`, where `μ = (4 + √14)/8`.
pub fn tabulated_coefficient(a: f64, n: u32) -> f64 {
    let r14 = 14f64.sqrt();
    let c = (4.0 + r14) / 8.0;
    match n {
        0 => 128.0 * a * (15869.0 - 228.0 * r14) / 1_190_035.0,
        1 => 1024.0 * a * (366_010_057.0 - 7_493_496.0 * r14) / (95_313_473_255.0 * (c + 0.5)),
        2 => {
            -2304.0 * a * (29_629_036.0 * r14 - 2_060_523_213.0)
                / (398_279_448_385.0 * (c + 0.5) * (c + 1.5))
        }
        3 => {
            -49152.0 * a * (8_867_016.0 * r14 - 809_394_467.0)
                / (831_817_071_085.0 * (c + 0.5) * (c + 1.5) * (c + 2.5))
        }
        _ => f64::NAN,
    }
}

/// `∫₀¹ f(y, 1−y) dy`, split at `y = ½` so that `1 − y` stays accurate near 1.
fn unit_interval<F: Fn(f64, f64) -> f64>(f: F, tol: f64) -> Result<f64> {
    let lower = integrate_adaptive(|y| f(y, 1.0 - y), 0.0, 0.5, 0.5 * tol)?;
    let upper = integrate_adaptive(|w| f(1.0 - w, w), 0.0, 0.5, 0.5 * tol)?;
    Ok(lower.value + upper.value)
}

/// `⟨xᵏ⟩ₙ` by adaptive quadrature in `y = tanh²(ax)`:
/// `Ñₙ²/(2a^{k+1}) ∫₀¹ artanh(√y)ᵏ y^{μ−1/2}(1−y) P_n(1−2y)² dy`.
pub fn x_moment(params: &SystemParams, n: u32, power: u32) -> Result<f64> {
    x_moment_tol(params, n, power, MOMENT_TOL)
}

/// [`x_moment`] with an explicit relative tolerance.
pub fn x_moment_tol(params: &SystemParams, n: u32, power: u32, tol: f64) -> Result<f64> {
    let mu = params.mu;
    let pn = params.jacobi(n);
    let k = power as i32;
    let integral = unit_interval(
        |y, w| {
            // artanh(√y) = ln((1 + √y)/√w)
            let x = ((1.0 + y.sqrt()) / w.sqrt()).ln();
            let p = jacobi_eval(&pn, w - y).unwrap_or(f64::NAN);
            x.powi(k) * y.powf(mu - 0.5) * w * p * p
        },
        tol,
    )?;
    Ok(normalization_sq(params, n) / (2.0 * params.a.powi(k + 1)) * integral)
}

/// Closed forms of `⟨x⟩ₙ` for `n ≤ 2`, valid for every `μ`.
pub fn x_mean_closed_form(params: &SystemParams, n: u32) -> Result<f64> {
    let mu = params.mu;
    let a = params.a;
    let ln2 = std::f64::consts::LN_2;
    let ln16 = 4.0 * ln2;
    let p3 = (mu + 1.0) * (mu + 2.0) * (mu + 3.0);
    match n {
        0 => {
            let h = harmonic(mu)?;
            Ok(
                (mu + 0.5) * (mu + 1.5) * (2.0 * (mu + 1.0) * h + mu * (ln16 - 2.0) - 1.0 + ln16)
                    / (a * (mu + 1.0) * (2.0 * mu + 1.0) * (2.0 * mu + 3.0)),
            )
        }
        1 => {
            let h = harmonic(mu)?;
            let poly = 12.0 * mu.powi(3) + 52.0 * mu * mu + 43.0 * mu - 18.0;
            Ok((8.0 * p3 * h - poly + 16.0 * p3 * ln2) / (16.0 * a * p3))
        }
        2 => {
            let q = p3 * (mu + 4.0) * (mu + 5.0);
            let poly = -176.0 * mu.powi(5)
                - 2208.0 * mu.powi(4)
                - 9488.0 * mu.powi(3)
                - 15192.0 * mu * mu
                - 3467.0 * mu
                + 6735.0;
            let numer =
                poly + 96.0 * EULER_GAMMA * q + 192.0 * q * ln2 + 96.0 * q * digamma(mu + 1.0)?;
            Ok(numer / (192.0 * a * q))
        }
        _ => Err(unavailable(format!(
            "no closed form for <x> at n = {n} (n <= 2)"
        ))),
    }
}

/// `⟨p²⟩ₙ = ∫₀^∞ (ψ′)² dx = I_F/4`.
pub fn p2_mean(params: &SystemParams, n: u32) -> Result<f64> {
    Ok(fisher_quadrature(params, n)? / 4.0)
}

/// `⟨p²⟩ₙ = −∫₀^∞ ψψ″ dx`, an independent route through the analytic second
/// derivative and adaptive quadrature on the half-line.
pub fn p2_mean_second_derivative(params: &SystemParams, n: u32, tol: f64) -> Result<f64> {
    let est = integrate_semi_infinite(
        |x| match wavefunction_x_derivatives(params, n, x) {
            Ok((psi, _, d2)) => -psi * d2,
            Err(_) => f64::NAN,
        },
        tol,
    )?;
    Ok(est.value)
}

/// Every tabulated quantity for state `n`.
pub fn report(params: &SystemParams, n: u32) -> Result<MeasureReport> {
    report_tol(params, n, MOMENT_TOL)
}

/// [`report`] with an explicit relative tolerance for the moment integrals.
pub fn report_tol(params: &SystemParams, n: u32, tol: f64) -> Result<MeasureReport> {
    let x_mean = x_moment_tol(params, n, 1, tol)?;
    let x2_mean = x_moment_tol(params, n, 2, tol)?;
    let variance = x2_mean - x_mean * x_mean;
    let fisher_x = fisher_quadrature(params, n)?;
    let p2 = fisher_x / 4.0;
    let dx = variance.sqrt();
    let dp = p2.sqrt();
    let i_rho = 4.0 * x2_mean;
    let i_gamma = 4.0 * p2;
    Ok(MeasureReport {
        n,
        a: params.a,
        x_mean,
        x2_mean,
        dx,
        p_mean: 0.0,
        p2_mean: p2,
        dp,
        heisenberg: dx * dp,
        fisher_x,
        i_rho,
        i_gamma,
        variance,
        cramer_rao_v: fisher_x * variance,
        cramer_rao_prod: i_rho * i_gamma,
    })
}
