//! Small-relaxation-time approximations: truncated expansions of the
//! spectral ingredients in beta = max(lambda/t, lambda_r/t) and the
//! resulting first-order corrections to the Newtonian velocity and stress.
//!
//! The exp(r2 t) mode is dropped throughout; it decays faster than any
//! power of beta. The closed corrections carry the relaxation time alone,
//! matching the lambda_r = 0 (Maxwell) reduction exactly; their integral
//! representations are kept for cross-checking the closed forms.

use crate::error::{Error, Result};
use crate::fields::{self, FieldPoint};
use crate::model::{self, FluidParams, FlowConfig};
use crate::quad::{integrate_oscillatory, OscKind, QuadratureSpec};
use std::f64::consts::PI;

/// beta above this value puts the point outside the asymptotic regime.
pub const VALIDITY_THRESHOLD: f64 = 0.1;

/// Dimensionless smallness of the two material times at a given time.
#[derive(Debug, Clone, Copy)]
pub struct SmallnessReport {
    /// lambda / t
    pub eps_lambda: f64,
    /// alpha / (nu t) = lambda_r / t
    pub eps_retard: f64,
    /// max of the two
    pub beta: f64,
    /// beta < 0.1
    pub valid: bool,
}

impl SmallnessReport {
    pub fn new(t: f64, params: &FluidParams) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::NonPositiveTime(t));
        }
        let eps_lambda = params.lambda() / t;
        let eps_retard = params.lambda_r() / t;
        let beta = eps_lambda.max(eps_retard);
        Ok(SmallnessReport {
            eps_lambda,
            eps_retard,
            beta,
            valid: beta < VALIDITY_THRESHOLD,
        })
    }
}

/// Truncated small-beta values of the spectral ingredients at one
/// wavenumber, each accurate to O(beta^2) relative to the exact values.
#[derive(Debug, Clone, Copy)]
pub struct ExpansionTerms {
    /// sqrt((1 + alpha xi^2)^2 - 4 nu lambda xi^2)
    pub radical: f64,
    /// its reciprocal
    pub radical_recip: f64,
    /// exp(r1 t)
    pub exp_r1_t: f64,
    /// r3 / (r2 - r1)
    pub r3_over_diff: f64,
    /// r3 exp(r1 t) / (r2 - r1)
    pub r3_exp_over_diff: f64,
    /// lambda r2 r3 exp(r1 t) / (r2 - r1)
    pub weighted_exp_over_diff: f64,
}

/// The truncated expansions at (xi, t).
pub fn expansion_terms(xi: f64, t: f64, params: &FluidParams) -> ExpansionTerms {
    let nu = params.nu();
    let lambda = params.lambda();
    let alpha = params.alpha();
    let xi2 = xi * xi;
    let xi4 = xi2 * xi2;
    let x = nu * t * xi2;
    let e = (-x).exp();
    let c = alpha - nu * lambda;
    ExpansionTerms {
        radical: 1.0 + (alpha - 2.0 * nu * lambda) * xi2 + 2.0 * nu * lambda * c * xi4,
        radical_recip: 1.0 - (alpha - 2.0 * nu * lambda) * xi2,
        exp_r1_t: e * (1.0 + c * nu * t * xi4),
        r3_over_diff: -1.0 + c * xi2,
        r3_exp_over_diff: -e * (1.0 + alpha * xi2 * (x - 1.0) + nu * lambda * xi2 * (1.0 - x)),
        weighted_exp_over_diff: e * (1.0 + c * nu * t * xi4),
    }
}

/// Exact counterparts of [`expansion_terms`], from the root formulas.
/// Only meaningful where the discriminant is positive.
pub fn exact_terms(xi: f64, t: f64, params: &FluidParams) -> Result<ExpansionTerms> {
    let roots = model::spectral_roots(xi, params)?;
    if roots.disc < 0.0 {
        return Err(Error::InvalidParams(format!(
            "exact expansion terms need a positive discriminant, got {} at xi = {xi}",
            roots.disc
        )));
    }
    let diff = roots.r2 - roots.r1;
    let e1 = (roots.r1 * t).exp();
    Ok(ExpansionTerms {
        radical: roots.disc.sqrt(),
        radical_recip: 1.0 / roots.disc.sqrt(),
        exp_r1_t: e1.re,
        r3_over_diff: (roots.r3 / diff).re,
        r3_exp_over_diff: (roots.r3 * e1 / diff).re,
        weighted_exp_over_diff: (roots.r2 * roots.r3 * e1 / diff).re * params.lambda(),
    })
}

fn require_valid(t: f64, params: &FluidParams) -> Result<SmallnessReport> {
    let report = SmallnessReport::new(t, params)?;
    if !report.valid {
        return Err(Error::OutsideAsymptoticRegime {
            beta: report.beta,
            threshold: VALIDITY_THRESHOLD,
        });
    }
    Ok(report)
}

/// First-order approximation of the velocity:
/// u = u_N - (A y / 2) sqrt(t/(nu pi)) exp(-y^2/(4 nu t)) lambda/t.
pub fn velocity_approx(p: FieldPoint, params: &FluidParams, flow: &FlowConfig) -> Result<f64> {
    let t = p.t();
    require_valid(t, params)?;
    let nu = params.nu();
    let y = p.y();
    let u_n = fields::velocity_newtonian_closed(p, flow, nu);
    let corr = flow.accel() * y / 2.0 * (t / (nu * PI)).sqrt() * (-y * y / (4.0 * nu * t)).exp();
    Ok(u_n - corr * params.lambda() / t)
}

/// First-order approximation of the shear stress:
/// tau = tau_N + (mu A / 2) sqrt(t/(nu pi)) (1 + y^2/(2 nu t))
///       exp(-y^2/(4 nu t)) lambda/t.
pub fn shear_approx(p: FieldPoint, params: &FluidParams, flow: &FlowConfig) -> Result<f64> {
    let t = p.t();
    require_valid(t, params)?;
    let nu = params.nu();
    let y = p.y();
    let tau_n = fields::shear_newtonian_closed(p, flow, params);
    let corr = params.mu() * flow.accel() / 2.0
        * (t / (nu * PI)).sqrt()
        * (1.0 + y * y / (2.0 * nu * t))
        * (-y * y / (4.0 * nu * t)).exp();
    Ok(tau_n + corr * params.lambda() / t)
}

/// The velocity correction in its integral form,
/// u = u_N - (2 nu A t / pi) lambda * integral of xi e^{-nu t xi^2} sin(y xi).
pub fn velocity_approx_integral(
    p: FieldPoint,
    params: &FluidParams,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let t = p.t();
    require_valid(t, params)?;
    let nu = params.nu();
    let r = integrate_oscillatory(
        |xi| xi * (-nu * t * xi * xi).exp(),
        p.y(),
        OscKind::Sin,
        0,
        spec,
    )
    .map_err(|e| e.in_context("velocity_approx_integral"))?;
    let u_n = fields::velocity_newtonian_closed(p, flow, nu);
    Ok(u_n - 2.0 * nu * flow.accel() * t / PI * params.lambda() * r.value)
}

/// The stress correction in its integral form,
/// tau = tau_N + (2 mu A / pi) lambda * integral of
/// (1 - nu t xi^2) e^{-nu t xi^2} cos(y xi).
pub fn shear_approx_integral(
    p: FieldPoint,
    params: &FluidParams,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let t = p.t();
    require_valid(t, params)?;
    let nu = params.nu();
    let r = integrate_oscillatory(
        |xi| {
            let x = nu * t * xi * xi;
            (1.0 - x) * (-x).exp()
        },
        p.y(),
        OscKind::Cos,
        0,
        spec,
    )
    .map_err(|e| e.in_context("shear_approx_integral"))?;
    let tau_n = fields::shear_newtonian_closed(p, flow, params);
    Ok(tau_n + 2.0 * params.mu() * flow.accel() / PI * params.lambda() * r.value)
}

/// Errors of the closed first-order forms against the exact fields for a
/// sequence of relaxation times; used by the order-of-accuracy checks.
pub fn approximation_errors(
    p: FieldPoint,
    lambdas: &[f64],
    lambda_r: f64,
    nu: f64,
    rho: f64,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<Vec<(f64, f64, f64)>> {
    let mut out = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let params = FluidParams::new(nu, rho, lambda, lambda_r)?;
        let u_exact = fields::velocity(p, &params, flow, spec)?;
        let tau_exact = fields::shear_stress(p, &params, flow, spec)?;
        let u_approx = velocity_approx(p, &params, flow)?;
        let tau_approx = shear_approx(p, &params, flow)?;
        out.push((
            lambda,
            (u_approx - u_exact).abs(),
            (tau_approx - tau_exact).abs(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_flow() -> FlowConfig {
        FlowConfig::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn smallness_report_beta() {
        let p = FluidParams::new(1.0, 1.0, 0.5, 0.2).unwrap();
        let r = SmallnessReport::new(10.0, &p).unwrap();
        assert_eq!(r.eps_lambda, 0.05);
        assert_eq!(r.eps_retard, 0.02);
        assert_eq!(r.beta, 0.05);
        assert!(r.valid);
        let r2 = SmallnessReport::new(1.0, &p).unwrap();
        assert!(!r2.valid);
    }

    #[test]
    fn expansion_collapses_at_xi_zero() {
        let p = FluidParams::new(1.0, 1.0, 0.01, 0.005).unwrap();
        let e = expansion_terms(0.0, 10.0, &p);
        assert_eq!(e.radical, 1.0);
        assert_eq!(e.radical_recip, 1.0);
        assert_eq!(e.exp_r1_t, 1.0);
        assert_eq!(e.r3_over_diff, -1.0);
        let exact = exact_terms(0.0, 10.0, &p).unwrap();
        assert_eq!(exact.radical, 1.0);
        assert_eq!(exact.exp_r1_t, 1.0);
    }

    #[test]
    fn expansion_matches_exact_to_second_order() {
        // halving both material times must shrink every term's error by
        // about four
        let t = 10.0;
        let xi = 1.0;
        let errs: Vec<f64> = [(0.02, 0.01), (0.01, 0.005)]
            .iter()
            .map(|&(l, lr)| {
                let p = FluidParams::new(1.0, 1.0, l, lr).unwrap();
                let approx = expansion_terms(xi, t, &p);
                let exact = exact_terms(xi, t, &p).unwrap();
                let mut m = (approx.radical - exact.radical).abs();
                m = m.max((approx.radical_recip - exact.radical_recip).abs());
                m = m.max((approx.exp_r1_t - exact.exp_r1_t).abs());
                m = m.max((approx.r3_over_diff - exact.r3_over_diff).abs());
                m = m.max((approx.r3_exp_over_diff - exact.r3_exp_over_diff).abs());
                m = m.max((approx.weighted_exp_over_diff - exact.weighted_exp_over_diff).abs());
                m
            })
            .collect();
        let ratio = errs[0] / errs[1];
        assert!(
            (2.5..8.0).contains(&ratio),
            "second-order shrink factor {ratio}, errors {errs:?}"
        );
    }

    #[test]
    fn radical_expansion_concrete_point() {
        let p = FluidParams::new(1.0, 1.0, 0.01, 0.005).unwrap();
        let e = expansion_terms(1.0, 10.0, &p);
        let exact = exact_terms(1.0, 10.0, &p).unwrap();
        // beta = 0.01/10... lambda/t = 1e-3; difference must be O(beta^2)
        assert!((e.radical - exact.radical).abs() < 1e-4);
    }

    #[test]
    fn correction_vanishes_at_wall_and_without_elasticity() {
        let flow = unit_flow();
        let p = FluidParams::new(1.0, 1.0, 0.02, 0.01).unwrap();
        let at_wall = FieldPoint::new(0.0, 10.0).unwrap();
        let u = velocity_approx(at_wall, &p, &flow).unwrap();
        assert_relative_eq!(u, 10.0, max_relative = 1e-14);

        let newt = FluidParams::newtonian(1.0, 1.0).unwrap();
        let point = FieldPoint::new(1.0, 10.0).unwrap();
        let u = velocity_approx(point, &newt, &flow).unwrap();
        assert_eq!(u, fields::velocity_newtonian_closed(point, &flow, 1.0));
        let s = shear_approx(point, &newt, &flow).unwrap();
        assert_eq!(s, fields::shear_newtonian_closed(point, &flow, &newt));
    }

    #[test]
    fn shear_approx_wall_value() {
        // tau(0, 1) ~ -2/sqrt(pi) + (1/2) sqrt(1/pi) lambda for small lambda
        let flow = unit_flow();
        let p = FluidParams::new(1.0, 1.0, 0.02, 0.0).unwrap();
        let s = shear_approx(FieldPoint::new(0.0, 1.0).unwrap(), &p, &flow).unwrap();
        let want = -2.0 / PI.sqrt() + 0.5 * (1.0 / PI).sqrt() * 0.02;
        assert_relative_eq!(s, want, max_relative = 1e-12);
    }

    #[test]
    fn regime_guard() {
        let flow = unit_flow();
        let p = FluidParams::new(1.0, 1.0, 0.5, 0.0).unwrap();
        let r = velocity_approx(FieldPoint::new(1.0, 1.0).unwrap(), &p, &flow);
        assert!(matches!(r, Err(Error::OutsideAsymptoticRegime { .. })));
    }

    #[test]
    fn integral_and_closed_corrections_agree() {
        let spec = QuadratureSpec::default();
        let flow = unit_flow();
        let p = FluidParams::new(1.0, 1.0, 0.02, 0.0).unwrap();
        for &(y, t) in &[(0.0, 1.0), (1.0, 1.0), (0.0, 5.0), (1.0, 5.0)] {
            let pt = FieldPoint::new(y, t).unwrap();
            let vi = velocity_approx_integral(pt, &p, &flow, &spec).unwrap();
            let vc = velocity_approx(pt, &p, &flow).unwrap();
            assert_relative_eq!(vi, vc, max_relative = 1e-8, epsilon = 1e-10);
            let si = shear_approx_integral(pt, &p, &flow, &spec).unwrap();
            let sc = shear_approx(pt, &p, &flow).unwrap();
            assert_relative_eq!(si, sc, max_relative = 1e-8, epsilon = 1e-10);
        }
    }
}
