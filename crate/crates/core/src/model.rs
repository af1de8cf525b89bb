//! The physical system: parameters, spectrum and normalized bound states.
//!
//! With `δ = 2m₀/a²` and `𝒱₀ = δV₀` the bound states exist for `𝒱₀ ≤ 1/4` and
//! read, with `y = tanh²(ax)` and `ϱ = 1 − 2y`,
//!
//! ```text
//! ψₙ(x) = Ñₙ tanh^μ(ax) sech²(ax) P_n^{(μ−1/2, ν−1/2)}(ϱ),   μ = 1/2 + s,  ν = 3/2,
//! εₙ = 4(n+1)(n+1+s),  s = √(1/4 − 𝒱₀),  Eₙ = εₙ/δ,
//! Ñₙ² = 2a(μ + 3/2 + 2n)(μ + 1/2 + n)/(n + 1).
//! ```
//!
//! States are normalized on the half-line `x > 0`; `x = 0` is a singular point
//! of the potential. Units have `ħ = 1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{
    gamma, hyp2f1_terminating, jacobi_derivative_order, jacobi_eval, pochhammer, JacobiParams,
};

/// Largest admissible dimensionless depth `𝒱₀`.
pub const CAL_V0_MAX: f64 = 0.25;

/// Physical inputs and the dimensionless parameters derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemParams {
    /// Inverse width of the mass profile.
    pub a: f64,
    /// Potential depth `V₀`.
    pub v0: f64,
    /// Mass scale `m₀`.
    pub m0: f64,
    /// `δ = 2m₀/a²`.
    pub delta: f64,
    /// `𝒱₀ = δV₀`.
    pub cal_v0: f64,
    /// Exponent of `tanh(ax)` near the origin, `1/2 + s`.
    pub mu: f64,
    /// Exponent fixed by the `z → π/2` behaviour, always `3/2`.
    pub nu: f64,
    /// `√(1/4 − 𝒱₀)`.
    pub s: f64,
    /// Exponent of the `cosh^τ(ax)` prefactor, always `−1/2`.
    pub tau: f64,
}

/// One bound state `n` of a given system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantumState {
    pub n: u32,
    /// Dimensionless energy `εₙ = δEₙ`.
    pub eps: f64,
    /// Physical energy `Eₙ`.
    pub energy: f64,
    /// Squared normalization constant `Ñₙ²`.
    pub norm_sq: f64,
}

fn domain(func: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        func,
        value,
        expected,
    }
}

/// Derives `δ, 𝒱₀, μ, ν, s` from `(a, V₀, m₀)`.
///
/// Rejects `𝒱₀ > 1/4`, for which no bound state exists.
pub fn derive_params(a: f64, v0: f64, m0: f64) -> Result<SystemParams> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain("derive_params", a, "a > 0"));
    }
    if !(m0 > 0.0) || !m0.is_finite() {
        return Err(domain("derive_params", m0, "m0 > 0"));
    }
    if !(v0 >= 0.0) || !v0.is_finite() {
        return Err(domain("derive_params", v0, "V0 >= 0"));
    }
    let delta = 2.0 * m0 / (a * a);
    build(a, v0, m0, delta, delta * v0)
}

impl SystemParams {
    /// Parameters from the dimensionless depth `𝒱₀`, with `V₀ = 𝒱₀a²/(2m₀)`.
    pub fn from_dimensionless(cal_v0: f64, a: f64, m0: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(domain("SystemParams::from_dimensionless", a, "a > 0"));
        }
        if !(m0 > 0.0) || !m0.is_finite() {
            return Err(domain("SystemParams::from_dimensionless", m0, "m0 > 0"));
        }
        if !(cal_v0 >= 0.0) || !cal_v0.is_finite() {
            return Err(domain(
                "SystemParams::from_dimensionless",
                cal_v0,
                "calV0 >= 0",
            ));
        }
        let delta = 2.0 * m0 / (a * a);
        build(a, cal_v0 / delta, m0, delta, cal_v0)
    }

    /// Same depth `𝒱₀` and mass scale, different width parameter `a`.
    pub fn with_a(&self, a: f64) -> Result<Self> {
        Self::from_dimensionless(self.cal_v0, a, self.m0)
    }

    /// Jacobi parameters `(μ − 1/2, ν − 1/2)` of the degree-`n` state.
    pub fn jacobi(&self, n: u32) -> JacobiParams {
        JacobiParams::new(self.mu - 0.5, self.nu - 0.5, n)
            .expect("mu > 1/2 - 1 and nu = 3/2 always give valid Jacobi exponents")
    }
}

fn build(a: f64, v0: f64, m0: f64, delta: f64, cal_v0: f64) -> Result<SystemParams> {
    if cal_v0 > CAL_V0_MAX {
        return Err(Error::NotBound { cal_v0 });
    }
    let s = (0.25 - cal_v0).sqrt();
    Ok(SystemParams {
        a,
        v0,
        m0,
        delta,
        cal_v0,
        mu: 0.5 + s,
        nu: 1.5,
        s,
        tau: -0.5,
    })
}

/// Level `n`: `εₙ = 4(n+1)(n+1+s)`, `Eₙ = εₙ/δ` and `Ñₙ²`.
pub fn energy(params: &SystemParams, n: u32) -> QuantumState {
    let k = f64::from(n) + 1.0;
    let eps = 4.0 * k * (k + params.s);
    QuantumState {
        n,
        eps,
        energy: eps / params.delta,
        norm_sq: normalization_sq(params, n),
    }
}

/// Parameters `(a_h, b_h, c_h)` of the Gauss series solving the transformed
/// equation at dimensionless energy `eps`.
///
/// At `eps = εₙ` the first parameter is `−n` and the series terminates.
pub fn hyp_params(params: &SystemParams, eps: f64) -> Result<(f64, f64, f64)> {
    let radicand = eps + 0.25 - params.cal_v0;
    if !(radicand >= 0.0) {
        return Err(domain("hyp_params", radicand, "eps + 1/4 - calV0 >= 0"));
    }
    let root = radicand.sqrt();
    let centre = 0.5 * (params.mu + params.nu);
    Ok((centre - 0.5 * root, centre + 0.5 * root, params.mu + 0.5))
}

/// `Ñₙ² = 2a(μ + 3/2 + 2n)(μ + 1/2 + n)/(n + 1)`.
pub fn normalization_sq(params: &SystemParams, n: u32) -> f64 {
    let n = f64::from(n);
    2.0 * params.a * (params.mu + 1.5 + 2.0 * n) * (params.mu + 0.5 + n) / (n + 1.0)
}

/// The Γ-ratio form of `Ñₙ²` before the Pochhammer identity is applied:
/// `2a(μ+3/2+2n) Γ(μ+3/2+n) Γ(μ+1/2+n) / ((n+1) Γ(μ+1/2)² [(μ+1/2)ₙ]²)`.
pub fn normalization_sq_gamma(params: &SystemParams, n: u32) -> Result<f64> {
    let mu = params.mu;
    let nf = f64::from(n);
    let poch = pochhammer(mu + 0.5, n)?;
    let g0 = gamma(mu + 0.5)?;
    Ok(
        2.0 * params.a * (mu + 1.5 + 2.0 * nf) * gamma(mu + 1.5 + nf)? * gamma(mu + 0.5 + nf)?
            / ((nf + 1.0) * g0 * g0 * poch * poch),
    )
}

/// `ψₙ(x)` through the terminating ₂F₁ form,
/// `Ñₙ (μ+1/2)ₙ/n! · tanh^μ(ax) sech²(ax) ₂F₁(−n, μ+ν+n; μ+1/2; tanh²(ax))`.
///
/// The factor `(μ+1/2)ₙ/n!` makes this identical to [`wavefunction_rho`].
pub fn wavefunction_x(params: &SystemParams, n: u32, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("wavefunction_x", x, "x > 0"));
    }
    let ax = params.a * x;
    let t = ax.tanh();
    let sech2 = cosh_inv_sq(ax);
    let mu = params.mu;
    let nf = f64::from(n);
    let series = hyp2f1_terminating(n, mu + params.nu + nf, mu + 0.5, t * t)?;
    let scale = pochhammer(mu + 0.5, n)? / factorial(n);
    Ok(normalization_sq(params, n).sqrt() * scale * t.powf(mu) * sech2 * series)
}

/// `ψₙ` as a function of `ϱ = 1 − 2tanh²(ax) ∈ (−1, 1)`:
/// `Ñₙ ((1−ϱ)/2)^{μ/2} ((1+ϱ)/2) P_n^{(μ−1/2, ν−1/2)}(ϱ)`.
pub fn wavefunction_rho(params: &SystemParams, n: u32, rho: f64) -> Result<f64> {
    if !(rho > -1.0 && rho < 1.0) {
        return Err(domain("wavefunction_rho", rho, "-1 < rho < 1"));
    }
    let y = 0.5 * (1.0 - rho);
    let w = 0.5 * (1.0 + rho);
    let p = jacobi_eval(&params.jacobi(n), rho)?;
    Ok(normalization_sq(params, n).sqrt() * y.powf(0.5 * params.mu) * w * p)
}

/// `(ψ, dψ/dx, d²ψ/dx²)` at `x > 0`, from the Jacobi form and the chain rule
/// through `t = tanh(ax)`.
pub fn wavefunction_x_derivatives(
    params: &SystemParams,
    n: u32,
    x: f64,
) -> Result<(f64, f64, f64)> {
    if !(x > 0.0) {
        return Err(domain("wavefunction_x_derivatives", x, "x > 0"));
    }
    let a = params.a;
    let mu = params.mu;
    let ax = a * x;
    let t = ax.tanh();
    let c2 = cosh_inv_sq(ax);
    let jp = params.jacobi(n);
    let rho = 1.0 - 2.0 * t * t;
    let p0 = jacobi_eval(&jp, rho)?;
    let p1 = jacobi_derivative_order(&jp, 1, rho)?;
    let p2 = jacobi_derivative_order(&jp, 2, rho)?;

    // g(t) = A·B·C with A = t^μ, B = 1 − t², C = P(1 − 2t²)
    let tm = t.powf(mu);
    let (a0, a1, a2) = (tm, mu * tm / t, mu * (mu - 1.0) * tm / (t * t));
    let (b0, b1, b2) = (c2, -2.0 * t, -2.0);
    let (c0, c1, c2p) = (p0, -4.0 * t * p1, 16.0 * t * t * p2 - 4.0 * p1);
    let g0 = a0 * b0 * c0;
    let g1 = a1 * b0 * c0 + a0 * b1 * c0 + a0 * b0 * c1;
    let g2 = a2 * b0 * c0
        + a0 * b2 * c0
        + a0 * b0 * c2p
        + 2.0 * (a1 * b1 * c0 + a1 * b0 * c1 + a0 * b1 * c1);

    let norm = normalization_sq(params, n).sqrt();
    // dt/dx = a·sech², d²t/dx² = −2a²·t·sech²
    Ok((
        norm * g0,
        norm * a * c2 * g1,
        norm * a * a * c2 * (c2 * g2 - 2.0 * t * g1),
    ))
}

/// Residual of the position-dependent-mass equation
/// `d/dx[(1/m(x)) dψ/dx] + 2(E − V(x))ψ` with `m(x) = m₀sech²(ax)` and
/// `V(x) = −V₀csch²(ax)`, evaluated at level `n`.
///
/// Returns `(residual, scale)` where `scale` bounds the magnitude of the
/// individual terms, so `residual/scale` is a relative defect.
pub fn pdm_residual(params: &SystemParams, n: u32, x: f64) -> Result<(f64, f64)> {
    let (psi, d1, d2) = wavefunction_x_derivatives(params, n, x)?;
    let a = params.a;
    let ax = a * x;
    let (sh, ch) = (ax.sinh(), ax.cosh());
    let state = energy(params, n);
    let potential = -params.v0 / (sh * sh);
    let kinetic_1 = 2.0 * a * sh * ch * d1 / params.m0;
    let kinetic_2 = ch * ch * d2 / params.m0;
    let source = 2.0 * (state.energy - potential) * psi;
    let scale = kinetic_1.abs() + kinetic_2.abs() + source.abs();
    Ok((kinetic_1 + kinetic_2 + source, scale))
}

/// `sech²(u)`, zero once `cosh` overflows.
pub(crate) fn cosh_inv_sq(u: f64) -> f64 {
    let c = u.cosh();
    1.0 / (c * c)
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn table_params(a: f64) -> SystemParams {
        SystemParams::from_dimensionless(1.0 / 32.0, a, 1.0).unwrap()
    }

    #[test]
    fn derive_reference_params() {
        let p = derive_params(1.0, 1.0 / 64.0, 1.0).unwrap();
        assert_eq!(p.delta, 2.0);
        assert_eq!(p.cal_v0, 1.0 / 32.0);
        assert_relative_eq!(p.mu, 0.967707, epsilon = 5e-7);
        assert_eq!((p.nu, p.tau), (1.5, -0.5));

        let p = derive_params(1.0, 0.0, 1.0).unwrap();
        assert_eq!((p.cal_v0, p.mu, p.s), (0.0, 1.0, 0.5));

        let p = derive_params(2.0, 1.0 / 16.0, 1.0).unwrap();
        assert_eq!(p.delta, 0.5);
        assert_eq!(p.cal_v0, 1.0 / 32.0);
        assert_relative_eq!(p.mu, 0.967707, epsilon = 5e-7);
    }

    #[test]
    fn derive_rejects_unbound_and_bad_inputs() {
        let err = derive_params(1.0, 0.2, 1.0).unwrap_err();
        assert!(matches!(err, Error::NotBound { .. }));
        assert!(err.to_string().contains("bound-state condition"));
        assert!(derive_params(0.0, 0.0, 1.0).is_err());
        assert!(derive_params(1.0, -0.1, 1.0).is_err());
        assert!(derive_params(1.0, 0.0, 0.0).is_err());
        // the boundary itself is admitted
        let p = SystemParams::from_dimensionless(0.25, 1.0, 1.0).unwrap();
        assert_eq!((p.s, p.mu), (0.0, 0.5));
    }

    #[test]
    fn energy_levels() {
        assert_relative_eq!(energy(&table_params(1.0), 0).eps, 5.870829, epsilon = 1e-6);
        let free = SystemParams::from_dimensionless(0.0, 1.0, 1.0).unwrap();
        assert_eq!(energy(&free, 0).eps, 6.0);
        let edge = SystemParams::from_dimensionless(0.25, 1.0, 1.0).unwrap();
        assert_eq!(energy(&edge, 1).eps, 16.0);
        let p = table_params(2.0);
        let st = energy(&p, 3);
        assert_relative_eq!(st.energy * p.delta, st.eps, max_relative = 1e-15);
    }

    #[test]
    fn quantum_condition() {
        let p = table_params(1.0);
        let (ah, _, _) = hyp_params(&p, energy(&p, 0).eps).unwrap();
        assert!(ah.abs() < 1e-10);
        let (ah, bh, ch) = hyp_params(&p, energy(&p, 2).eps).unwrap();
        assert!((ah + 2.0).abs() < 1e-10);
        assert_relative_eq!(bh, p.mu + p.nu + 2.0, max_relative = 1e-14);
        assert_eq!(ch, p.mu + 0.5);
        assert!(hyp_params(&p, -10.0).is_err());
    }

    #[test]
    fn normalization_values() {
        let p = table_params(1.0);
        assert_relative_eq!(
            normalization_sq(&p, 0),
            2.0 * 2.467707 * 1.467707,
            max_relative = 1e-6
        );
        assert_relative_eq!(
            normalization_sq(&p, 1),
            4.467707173 * 2.467707173,
            max_relative = 1e-9
        );
        assert_eq!(
            normalization_sq(&table_params(2.0), 1),
            2.0 * normalization_sq(&p, 1)
        );
        for n in 0..12 {
            assert_relative_eq!(
                normalization_sq_gamma(&p, n).unwrap(),
                normalization_sq(&p, n),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn wavefunction_domains() {
        let p = table_params(1.0);
        assert!(wavefunction_x(&p, 0, 0.0).is_err());
        assert!(wavefunction_x(&p, 0, -1.0).is_err());
        assert!(wavefunction_rho(&p, 0, 1.0).is_err());
        assert!(wavefunction_rho(&p, 0, -1.0).is_err());
        assert_eq!(wavefunction_x(&p, 0, 1e3).unwrap(), 0.0);
    }

    #[test]
    fn ground_state_rho_form() {
        let p = table_params(1.0);
        let rho: f64 = 0.3;
        let expected = normalization_sq(&p, 0).sqrt()
            * (0.5 * (1.0 - rho)).powf(0.5 * p.mu)
            * (0.5 * (1.0 + rho));
        assert_relative_eq!(
            wavefunction_rho(&p, 0, rho).unwrap(),
            expected,
            max_relative = 1e-15
        );
        assert!(wavefunction_rho(&p, 3, 1.0 - 1e-15).unwrap().abs() < 1e-6);
    }

    #[test]
    fn rho_and_x_forms_agree() {
        let p = table_params(1.0);
        let x = 0.5f64.sqrt().atanh();
        assert_relative_eq!(
            wavefunction_rho(&p, 2, 0.0).unwrap(),
            wavefunction_x(&p, 2, x).unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn small_x_power_law() {
        let p = table_params(1.0);
        let r = wavefunction_x(&p, 0, 2e-6).unwrap() / wavefunction_x(&p, 0, 1e-6).unwrap();
        assert_relative_eq!(r, 2f64.powf(p.mu), max_relative = 1e-9);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let p = table_params(1.7);
        for n in 0..4 {
            for &x in &[0.05, 0.4, 1.1, 2.5] {
                let (psi, d1, d2) = wavefunction_x_derivatives(&p, n, x).unwrap();
                let f = |u: f64| wavefunction_x(&p, n, u).unwrap();
                let h = 1e-4;
                let fd1 = (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h))
                    / (12.0 * h);
                let fd2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
                assert_relative_eq!(psi, f(x), max_relative = 1e-12);
                assert!((d1 - fd1).abs() < 1e-8 * (1.0 + d1.abs()), "n={n} x={x}");
                assert!((d2 - fd2).abs() < 1e-5 * (1.0 + d2.abs()), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn solves_the_position_dependent_mass_equation() {
        for cal_v0 in [0.0, 1.0 / 32.0, 0.2] {
            for a in [0.5, 1.0, 3.0] {
                let p = SystemParams::from_dimensionless(cal_v0, a, 1.3).unwrap();
                for n in 0..5 {
                    for &ax in &[0.1, 0.7, 1.9, 4.0] {
                        let (res, scale) = pdm_residual(&p, n, ax / a).unwrap();
                        assert!(
                            res.abs() <= 1e-11 * scale,
                            "calV0={cal_v0} a={a} n={n}: {res} vs {scale}"
                        );
                    }
                }
            }
        }
    }
}
