//! Special functions for the closed-form wavefunctions and measures.
//!
//! Everything here is real-valued double precision. Jacobi polynomials are
//! evaluated with the ascending three-term recurrence; log-gamma and digamma
//! use Stirling-type asymptotic series after an upward shift of the argument.

use crate::error::{Error, Result};

/// Euler–Mascheroni constant γ_E.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_405_617_639;

/// Arguments below this are shifted upward before the asymptotic series is used.
const ASYMPTOTIC_THRESHOLD: f64 = 15.0;

/// Largest degree for which [`pochhammer`] multiplies the factors directly.
const POCHHAMMER_DIRECT_MAX: u32 = 32;

/// Slack allowed past ±1 before [`jacobi_eval`] reports a domain error.
const JACOBI_DOMAIN_SLACK: f64 = 1e-12;

/// Parameters `(α, β)` and degree `n` of a Jacobi polynomial `P_n^{(α,β)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    alpha: f64,
    beta: f64,
    n: u32,
}

impl JacobiParams {
    /// Both exponents must exceed −1 so the weight `(1−x)^α (1+x)^β` is integrable.
    pub fn new(alpha: f64, beta: f64, n: u32) -> Result<Self> {
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(Error::Domain {
                func: "JacobiParams",
                value: alpha,
                expected: "alpha > -1",
            });
        }
        if !(beta > -1.0) || !beta.is_finite() {
            return Err(Error::Domain {
                func: "JacobiParams",
                value: beta,
                expected: "beta > -1",
            });
        }
        Ok(Self { alpha, beta, n })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Same exponents, different degree.
    pub fn with_degree(&self, n: u32) -> Self {
        Self { n, ..*self }
    }
}

fn check_jacobi_arg(x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() > 1.0 + JACOBI_DOMAIN_SLACK {
        return Err(Error::Domain {
            func: "jacobi_eval",
            value: x,
            expected: "|x| <= 1",
        });
    }
    Ok(x.clamp(-1.0, 1.0))
}

/// Recurrence core without the domain check. Valid for any real `x`.
pub(crate) fn jacobi_recurrence(alpha: f64, beta: f64, n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let ab = alpha + beta;
    let mut p_prev = 1.0;
    let mut p = 0.5 * (alpha - beta) + 0.5 * (ab + 2.0) * x;
    for k in 2..=n {
        let k = f64::from(k);
        let s = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (s - 2.0);
        let a2 = (s - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (s - 2.0) * (s - 1.0) * s;
        let a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s;
        let p_next = ((a2 + a3 * x) * p - a4 * p_prev) / a1;
        p_prev = p;
        p = p_next;
    }
    p
}

/// Evaluates `P_n^{(α,β)}(x)` on `[−1, 1]`.
///
/// Arguments up to `1e−12` outside the interval are clamped onto it.
pub fn jacobi_eval(p: &JacobiParams, x: f64) -> Result<f64> {
    let x = check_jacobi_arg(x)?;
    Ok(jacobi_recurrence(p.alpha, p.beta, p.n, x))
}

/// Derivative of order `order` of `P_n^{(α,β)}` at `x`, through the
/// degree-lowering identity
/// `dᵏ/dxᵏ P_n^{(α,β)} = Π_{j=1..k} (n+α+β+j)/2 · P_{n−k}^{(α+k,β+k)}`.
pub fn jacobi_derivative_order(p: &JacobiParams, order: u32, x: f64) -> Result<f64> {
    let x = check_jacobi_arg(x)?;
    if order > p.n {
        return Ok(0.0);
    }
    let n = f64::from(p.n);
    let ab = p.alpha + p.beta;
    let scale: f64 = (1..=order).map(|j| 0.5 * (n + ab + f64::from(j))).product();
    let k = f64::from(order);
    Ok(scale * jacobi_recurrence(p.alpha + k, p.beta + k, p.n - order, x))
}

/// First derivative `d/dx P_n^{(α,β)}(x) = (n+α+β+1)/2 · P_{n−1}^{(α+1,β+1)}(x)`.
pub fn jacobi_derivative(p: &JacobiParams, x: f64) -> Result<f64> {
    jacobi_derivative_order(p, 1, x)
}

/// Terminating Gauss series `₂F₁(−n, b; c; x)`, a polynomial of degree `n` in `x`.
///
/// The first parameter is passed as the non-negative integer `n`.
pub fn hyp2f1_terminating(n: u32, b: f64, c: f64, x: f64) -> Result<f64> {
    if c <= 0.0 && c.fract() == 0.0 && -c < f64::from(n) {
        return Err(Error::Pole {
            func: "hyp2f1_terminating",
            value: c,
        });
    }
    let neg_n = -f64::from(n);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let k = f64::from(k);
        term *= (neg_n + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
        sum += term;
    }
    Ok(sum)
}

fn positive_arg(func: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else if x <= 0.0 && x.fract() == 0.0 {
        Err(Error::Pole { func, value: x })
    } else {
        Err(Error::Domain {
            func,
            value: x,
            expected: "x > 0",
        })
    }
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    positive_arg("log_gamma", x)?;
    let mut z = x;
    let mut shift = 1.0;
    while z < ASYMPTOTIC_THRESHOLD {
        shift *= z;
        z += 1.0;
    }
    // Stirling series with Bernoulli coefficients B_{2k} / (2k(2k−1)).
    const COEFFS: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for c in COEFFS.iter().rev() {
        series = series * inv2 + c;
    }
    series *= inv;
    Ok((z - 0.5) * z.ln() - z + LN_SQRT_2PI + series - shift.ln())
}

/// `Γ(x)` for `x > 0`.
pub fn gamma(x: f64) -> Result<f64> {
    Ok(log_gamma(x)?.exp())
}

/// Digamma `ψ(x) = Γ′(x)/Γ(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    positive_arg("digamma", x)?;
    let mut z = x;
    let mut acc = 0.0;
    while z < ASYMPTOTIC_THRESHOLD {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // B_{2k} / (2k) for k = 1..7
    const COEFFS: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32_760.0,
        1.0 / 12.0,
    ];
    let inv2 = 1.0 / (z * z);
    let mut series = 0.0;
    for c in COEFFS.iter().rev() {
        series = series * inv2 + c;
    }
    series *= inv2;
    Ok(acc + z.ln() - 0.5 / z - series)
}

/// Harmonic number for real argument, `H(x) = ψ(x+1) + γ_E`, defined for `x > −1`.
pub fn harmonic(x: f64) -> Result<f64> {
    if !(x > -1.0) {
        return Err(Error::Domain {
            func: "harmonic",
            value: x,
            expected: "x > -1",
        });
    }
    Ok(digamma(x + 1.0)? + EULER_GAMMA)
}

/// Rising factorial `(x)_n = Γ(x+n)/Γ(x)`.
pub fn pochhammer(x: f64, n: u32) -> Result<f64> {
    if n <= POCHHAMMER_DIRECT_MAX || x <= 0.0 {
        return Ok((0..n).map(|k| x + f64::from(k)).product());
    }
    Ok((log_gamma(x + f64::from(n))? - log_gamma(x)?).exp())
}
