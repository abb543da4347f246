//! Velocity and shear-stress fields for the four constitutive models.
//!
//! The Oldroyd-B / Maxwell path evaluates the exact Fourier integrals over
//! the spectral mode brackets; the second-grade path uses the analytic
//! lambda -> 0 limit of the brackets (a single diffusive mode per
//! wavenumber); the Newtonian path defaults to closed forms in iterated
//! integrals of erfc, with the integral representation retained for
//! cross-checks.

use crate::error::{Error, Result};
use crate::model::{self, FluidParams, FlowConfig, LAMBDA_FLOOR};
use crate::quad::{integrate_oscillatory, OscKind, QuadratureResult, QuadratureSpec};
use crate::special;
use std::f64::consts::PI;

/// A wall distance / time pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPoint {
    y: f64,
    t: f64,
}

impl FieldPoint {
    pub fn new(y: f64, t: f64) -> Result<Self> {
        if !(y >= 0.0) || !y.is_finite() {
            return Err(Error::InvalidParams(format!(
                "wall distance must be non-negative, got {y}"
            )));
        }
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::InvalidParams(format!(
                "time must be non-negative, got {t}"
            )));
        }
        Ok(FieldPoint { y, t })
    }

    pub fn y(&self) -> f64 {
        self.y
    }
    pub fn t(&self) -> f64 {
        self.t
    }
}

/// Velocity, stress and their quadrature error estimates at one point.
#[derive(Debug, Clone, Copy)]
pub struct FieldValue {
    pub u: f64,
    pub tau: f64,
    pub quad_err_u: f64,
    pub quad_err_tau: f64,
}

impl FieldValue {
    /// Combined quadrature error estimate.
    pub fn quad_err(&self) -> f64 {
        self.quad_err_u + self.quad_err_tau
    }
}

/// Relative residuals of the governing and constitutive equations,
/// evaluated by finite differences on the computed fields.
#[derive(Debug, Clone, Copy)]
pub struct PdeResidual {
    pub momentum: f64,
    pub constitutive: f64,
}

/// Which formula family evaluates a given parameter set.
///
/// Distinct from [`model::classify`]: lambda = lambda_r > 0 classifies as
/// Newtonian (the solutions collapse) but still evaluates through the
/// spectral path, which is what makes that collapse a meaningful check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum EvalPath {
    Spectral,
    SecondGrade,
    Newtonian,
}

pub(crate) fn eval_path(params: &FluidParams) -> EvalPath {
    if params.lambda() >= LAMBDA_FLOOR {
        EvalPath::Spectral
    } else if params.lambda_r() >= LAMBDA_FLOOR {
        EvalPath::SecondGrade
    } else {
        EvalPath::Newtonian
    }
}

/// Wavelength hint for the internal oscillation of the spectral brackets.
///
/// For lambda > lambda_r the discriminant goes negative over a wavenumber
/// window and the modes oscillate like cos(c t xi) with the shear-wave
/// speed c = sqrt(nu/lambda); splitting panels at that scale keeps the
/// accelerated sums alternating.
pub(crate) fn oscillation_hint(params: &FluidParams, t: f64) -> Option<f64> {
    if params.lambda() >= LAMBDA_FLOOR && params.lambda() > params.lambda_r() && t > 0.0 {
        let c = (params.nu() / params.lambda()).sqrt();
        Some(2.0 * PI / (c * t))
    } else {
        None
    }
}

/// Fill in the internal oscillation hint unless the caller supplied one.
pub(crate) fn effective_spec(
    spec: &QuadratureSpec,
    params: &FluidParams,
    t: f64,
) -> QuadratureSpec {
    let mut s = spec.clone();
    if s.oscillation_period.is_none() {
        s.oscillation_period = oscillation_hint(params, t);
    }
    s
}

// ---------------------------------------------------------------------------
// Mode brackets dispatched over the evaluation paths
// ---------------------------------------------------------------------------

/// B_u(xi, t)/xi^2 for the path chosen by `eval_path`.
pub(crate) fn bracket_u_over_xi2(xi: f64, t: f64, params: &FluidParams) -> Result<f64> {
    match eval_path(params) {
        EvalPath::Spectral => model::bracket_velocity_over_xi2(xi, t, params),
        EvalPath::SecondGrade => Ok(second_grade_bu_over_xi2(xi, t, params)),
        EvalPath::Newtonian => Ok(newtonian_b_over_xi2(xi, t, params.nu())),
    }
}

/// B_tau(xi, t)/xi^2 for the path chosen by `eval_path`.
pub(crate) fn bracket_tau_over_xi2(xi: f64, t: f64, params: &FluidParams) -> Result<f64> {
    match eval_path(params) {
        EvalPath::Spectral => model::bracket_stress_over_xi2(xi, t, params),
        EvalPath::SecondGrade => Ok(second_grade_bt_over_xi2(xi, t, params)),
        EvalPath::Newtonian => Ok(newtonian_b_over_xi2(xi, t, params.nu())),
    }
}

/// (nu t xi^2 - B_u)/xi^4 for the path chosen by `eval_path`.
pub(crate) fn deficit_u_over_xi4(xi: f64, t: f64, params: &FluidParams) -> Result<f64> {
    match eval_path(params) {
        EvalPath::Spectral => model::velocity_deficit_over_xi4(xi, t, params),
        EvalPath::SecondGrade => Ok(second_grade_deficit_over_xi4(xi, t, params)),
        EvalPath::Newtonian => {
            let x = params.nu() * t * xi * xi;
            let nt = params.nu() * t;
            Ok(nt * nt * deficit_over_x2(x))
        }
    }
}

/// (x - 1 + e^{-x})/x^2, smooth through 0 (limit 1/2).
fn deficit_over_x2(x: f64) -> f64 {
    if x < 1e-3 {
        0.5 - x / 6.0 + x * x / 24.0 - x * x * x / 120.0
    } else {
        (x - 1.0 + (-x).exp()) / (x * x)
    }
}

/// (1 - e^{-x})/x, smooth through 0.
fn em1_over(x: f64) -> f64 {
    if x.abs() < 1e-5 {
        1.0 - x * (0.5 - x / 6.0)
    } else {
        -(-x).exp_m1() / x
    }
}

fn newtonian_b_over_xi2(xi: f64, t: f64, nu: f64) -> f64 {
    let x = nu * t * xi * xi;
    nu * t * em1_over(x)
}

fn second_grade_bu_over_xi2(xi: f64, t: f64, params: &FluidParams) -> f64 {
    let denom = 1.0 + params.alpha() * xi * xi;
    let x = params.nu() * t * xi * xi / denom;
    params.nu() * t / denom * em1_over(x)
}

fn second_grade_bt_over_xi2(xi: f64, t: f64, params: &FluidParams) -> f64 {
    let xi2 = xi * xi;
    let denom = 1.0 + params.alpha() * xi2;
    let x = params.nu() * t * xi2 / denom;
    let e = (-x).exp();
    params.nu() * t / denom * em1_over(x) + e * params.alpha() / denom
}

fn second_grade_deficit_over_xi4(xi: f64, t: f64, params: &FluidParams) -> f64 {
    let nu = params.nu();
    let alpha = params.alpha();
    let xi2 = xi * xi;
    let denom = 1.0 + alpha * xi2;
    let x = nu * t * xi2;
    let nt = nu * t;
    // nu t xi^2 - 1 + e^{r* t}, r* = -nu xi^2/(1 + alpha xi^2),
    // split against the pure-diffusion deficit
    let w1 = nt * nt * deficit_over_x2(x);
    let eta_over_xi4 = nu * alpha / denom; // (r* + nu xi^2)/xi^4
    let eta_t = eta_over_xi4 * xi2 * xi2 * t;
    let w3 = (-x).exp() * eta_over_xi4 * t * em1_ratio(eta_t);
    w1 + w3
}

/// expm1(z)/z, smooth through 0.
fn em1_ratio(z: f64) -> f64 {
    if z.abs() < 1e-5 {
        1.0 + z * (0.5 + z / 6.0)
    } else {
        z.exp_m1() / z
    }
}

// ---------------------------------------------------------------------------
// Field evaluations
// ---------------------------------------------------------------------------

fn velocity_integral(
    p: FieldPoint,
    params: &FluidParams,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    let t = p.t();
    let s = effective_spec(spec, params, t);
    integrate_oscillatory(
        |xi| bracket_u_over_xi2(xi, t, params).unwrap_or(f64::NAN),
        p.y(),
        OscKind::Sin,
        1,
        &s,
    )
    .map_err(|e| e.in_context("velocity"))
}

fn stress_integral(
    p: FieldPoint,
    params: &FluidParams,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    let t = p.t();
    let s = effective_spec(spec, params, t);
    integrate_oscillatory(
        |xi| bracket_tau_over_xi2(xi, t, params).unwrap_or(f64::NAN),
        p.y(),
        OscKind::Cos,
        0,
        &s,
    )
    .map_err(|e| e.in_context("shear_stress"))
}

/// u(y, t) for the model selected by the parameters.
///
/// Satisfies u(0, t) = A t, u(y, 0) = 0 and u -> 0 as y -> infinity.
pub fn velocity(
    p: FieldPoint,
    params: &FluidParams,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if p.t() == 0.0 || flow.accel() == 0.0 {
        return Ok(0.0);
    }
    match eval_path(params) {
        EvalPath::Newtonian => Ok(velocity_newtonian_closed(p, flow, params.nu())),
        _ => {
            let a = flow.accel();
            let r = velocity_integral(p, params, spec)?;
            Ok(a * p.t() - 2.0 * a / (params.nu() * PI) * r.value)
        }
    }
}

/// tau(y, t) for the model selected by the parameters; negative at the
/// wall for A > 0 (the fluid drags the plate back).
pub fn shear_stress(
    p: FieldPoint,
    params: &FluidParams,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if p.t() == 0.0 || flow.accel() == 0.0 {
        return Ok(0.0);
    }
    match eval_path(params) {
        EvalPath::Newtonian => Ok(shear_newtonian_closed(p, flow, params)),
        _ => {
            let r = stress_integral(p, params, spec)?;
            Ok(-2.0 * params.rho() * flow.accel() / PI * r.value)
        }
    }
}

/// du/dy(y, t), from differentiating the velocity integral under the
/// integral sign (the sin kernel becomes a cos kernel).
pub fn velocity_gradient(
    p: FieldPoint,
    params: &FluidParams,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if p.t() == 0.0 || flow.accel() == 0.0 {
        return Ok(0.0);
    }
    match eval_path(params) {
        EvalPath::Newtonian => {
            let t = p.t();
            let nu = params.nu();
            let eta = p.y() / (2.0 * (nu * t).sqrt());
            Ok(-2.0 * flow.accel() * t / (nu * t).sqrt() * special::ierfc1(eta))
        }
        _ => {
            let t = p.t();
            let s = effective_spec(spec, params, t);
            let r = integrate_oscillatory(
                |xi| bracket_u_over_xi2(xi, t, params).unwrap_or(f64::NAN),
                p.y(),
                OscKind::Cos,
                0,
                &s,
            )
            .map_err(|e| e.in_context("velocity_gradient"))?;
            Ok(-2.0 * flow.accel() / (params.nu() * PI) * r.value)
        }
    }
}

/// Velocity, stress and quadrature error estimates at one point.
pub fn field_value(
    p: FieldPoint,
    params: &FluidParams,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<FieldValue> {
    if p.t() == 0.0 || flow.accel() == 0.0 {
        return Ok(FieldValue {
            u: 0.0,
            tau: 0.0,
            quad_err_u: 0.0,
            quad_err_tau: 0.0,
        });
    }
    match eval_path(params) {
        EvalPath::Newtonian => Ok(FieldValue {
            u: velocity_newtonian_closed(p, flow, params.nu()),
            tau: shear_newtonian_closed(p, flow, params),
            quad_err_u: 0.0,
            quad_err_tau: 0.0,
        }),
        _ => {
            let a = flow.accel();
            let ru = velocity_integral(p, params, spec)?;
            let rt = stress_integral(p, params, spec)?;
            Ok(FieldValue {
                u: a * p.t() - 2.0 * a / (params.nu() * PI) * ru.value,
                tau: -2.0 * params.rho() * a / PI * rt.value,
                quad_err_u: 2.0 * a / (params.nu() * PI) * ru.err_estimate,
                quad_err_tau: 2.0 * params.rho() * a / PI * rt.err_estimate,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Newtonian closed and integral forms
// ---------------------------------------------------------------------------

/// u_N(y, t) = 4 A t i^2Erfc(y / (2 sqrt(nu t))).
pub fn velocity_newtonian_closed(p: FieldPoint, flow: &FlowConfig, nu: f64) -> f64 {
    let t = p.t();
    if t == 0.0 {
        return 0.0;
    }
    let eta = p.y() / (2.0 * (nu * t).sqrt());
    4.0 * flow.accel() * t * special::ierfc2(eta)
}

/// tau_N(y, t) = -2 rho A sqrt(nu t) iErfc(y / (2 sqrt(nu t))).
pub fn shear_newtonian_closed(p: FieldPoint, flow: &FlowConfig, params: &FluidParams) -> f64 {
    let t = p.t();
    if t == 0.0 {
        return 0.0;
    }
    let nu = params.nu();
    let eta = p.y() / (2.0 * (nu * t).sqrt());
    -2.0 * params.rho() * flow.accel() * (nu * t).sqrt() * special::ierfc1(eta)
}

/// Newtonian velocity through the Fourier integral (kept as an independent
/// route for verification against the closed form).
pub fn velocity_newtonian_integral(
    p: FieldPoint,
    flow: &FlowConfig,
    nu: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let t = p.t();
    if t == 0.0 {
        return Ok(0.0);
    }
    let r = integrate_oscillatory(
        |xi| newtonian_b_over_xi2(xi, t, nu),
        p.y(),
        OscKind::Sin,
        1,
        spec,
    )
    .map_err(|e| e.in_context("velocity_newtonian_integral"))?;
    Ok(flow.accel() * t - 2.0 * flow.accel() / (nu * PI) * r.value)
}

/// Newtonian stress through the Fourier integral.
pub fn shear_newtonian_integral(
    p: FieldPoint,
    flow: &FlowConfig,
    params: &FluidParams,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let t = p.t();
    if t == 0.0 {
        return Ok(0.0);
    }
    let r = integrate_oscillatory(
        |xi| newtonian_b_over_xi2(xi, t, params.nu()),
        p.y(),
        OscKind::Cos,
        0,
        spec,
    )
    .map_err(|e| e.in_context("shear_newtonian_integral"))?;
    Ok(-2.0 * params.rho() * flow.accel() / PI * r.value)
}

// ---------------------------------------------------------------------------
// PDE residual
// ---------------------------------------------------------------------------

/// Five-point central first derivative.
fn d1(v: &[f64; 5], h: f64) -> f64 {
    (-v[4] + 8.0 * v[3] - 8.0 * v[1] + v[0]) / (12.0 * h)
}

/// Five-point central second derivative.
fn d2(v: &[f64; 5], h: f64) -> f64 {
    (-v[4] + 16.0 * v[3] - 30.0 * v[2] + 16.0 * v[1] - v[0]) / (12.0 * h * h)
}

/// Residuals of the momentum equation
/// lambda u_tt + u_t = nu (1 + lambda_r d_t) u_yy
/// and of the constitutive equation
/// (1 + lambda d_t) tau = mu (1 + lambda_r d_t) u_y,
/// evaluated by five-point central differences on the computed fields and
/// normalized by the largest participating term.
pub fn pde_residual(
    p: FieldPoint,
    params: &FluidParams,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<PdeResidual> {
    let y = p.y();
    let t = p.t();
    let nu = params.nu();
    let hy = 1e-3 * (nu * t).sqrt();
    let ht = 1e-3 * t;
    if y - 2.0 * hy < 0.0 || t - 2.0 * ht <= 0.0 {
        return Err(Error::StencilOutOfDomain { y, t, hy, ht });
    }

    // tighter tolerances: the stencil divides by h^2
    let tight = QuadratureSpec {
        rel_tol: spec.rel_tol.min(1e-12),
        abs_tol: spec.abs_tol.min(1e-14),
        ..spec.clone()
    };

    let mut u = [[0.0f64; 5]; 5]; // [y index][t index]
    for (i, row) in u.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let yp = y + (i as f64 - 2.0) * hy;
            let tp = t + (j as f64 - 2.0) * ht;
            *cell = velocity(FieldPoint::new(yp, tp)?, params, flow, &tight)?;
        }
    }
    let mut tau_line = [0.0f64; 5];
    for (j, cell) in tau_line.iter_mut().enumerate() {
        let tp = t + (j as f64 - 2.0) * ht;
        *cell = shear_stress(FieldPoint::new(y, tp)?, params, flow, &tight)?;
    }

    let t_line = u[2];
    let y_line = [u[0][2], u[1][2], u[2][2], u[3][2], u[4][2]];
    let dt_u = d1(&t_line, ht);
    let d2t_u = d2(&t_line, ht);
    let d2y_u = d2(&y_line, hy);
    let dy_u = d1(&y_line, hy);

    let mut d2y_at = [0.0f64; 5];
    let mut dy_at = [0.0f64; 5];
    for j in 0..5 {
        let col = [u[0][j], u[1][j], u[2][j], u[3][j], u[4][j]];
        d2y_at[j] = d2(&col, hy);
        dy_at[j] = d1(&col, hy);
    }
    let dt_d2y = d1(&d2y_at, ht);
    let dt_dy = d1(&dy_at, ht);
    let dt_tau = d1(&tau_line, ht);
    let tau0 = tau_line[2];

    let lambda = params.lambda();
    let lambda_r = params.lambda_r();
    let mu = params.mu();

    let m_terms = [
        lambda * d2t_u,
        dt_u,
        -nu * d2y_u,
        -nu * lambda_r * dt_d2y,
    ];
    let r_mom: f64 = m_terms.iter().sum();
    let s_mom = m_terms
        .iter()
        .fold(1e-30f64, |acc, v| acc.max(v.abs()));

    let c_terms = [tau0, lambda * dt_tau, -mu * dy_u, -mu * lambda_r * dt_dy];
    let r_con: f64 = c_terms.iter().sum();
    let s_con = c_terms
        .iter()
        .fold(1e-30f64, |acc, v| acc.max(v.abs()));

    Ok(PdeResidual {
        momentum: r_mom.abs() / s_mom,
        constitutive: r_con.abs() / s_con,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn flow(a: f64) -> FlowConfig {
        FlowConfig::new(a, 1.0).unwrap()
    }

    fn pt(y: f64, t: f64) -> FieldPoint {
        FieldPoint::new(y, t).unwrap()
    }

    #[test]
    fn boundary_condition_all_models() {
        let spec = QuadratureSpec::default();
        let f = flow(2.0);
        for &(l, lr) in &[(0.0, 0.0), (0.5, 0.0), (0.0, 0.5), (0.5, 0.2)] {
            let p = FluidParams::new(1.0, 1.0, l, lr).unwrap();
            let u = velocity(pt(0.0, 3.0), &p, &f, &spec).unwrap();
            assert_relative_eq!(u, 6.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn newtonian_closed_recovers_plate_velocity() {
        let f = flow(1.3);
        let u = velocity_newtonian_closed(pt(0.0, 2.0), &f, 0.7);
        assert_eq!(u, 1.3 * 2.0);
    }

    #[test]
    fn newtonian_integral_matches_closed_form() {
        let spec = QuadratureSpec::default();
        let f = flow(1.0);
        for &(y, t) in &[(0.5, 1.0), (2.0, 1.0), (1.0, 0.3), (0.0, 1.0)] {
            let quad = velocity_newtonian_integral(pt(y, t), &f, 1.0, &spec).unwrap();
            let closed = velocity_newtonian_closed(pt(y, t), &f, 1.0);
            assert_relative_eq!(quad, closed, max_relative = 1e-8, epsilon = 1e-10);
        }
        let params = FluidParams::newtonian(1.0, 1.0).unwrap();
        for &(y, t) in &[(0.0, 1.0), (1.0, 1.0), (2.5, 0.5)] {
            let quad = shear_newtonian_integral(pt(y, t), &f, &params, &spec).unwrap();
            let closed = shear_newtonian_closed(pt(y, t), &f, &params);
            assert_relative_eq!(quad, closed, max_relative = 1e-8, epsilon = 1e-10);
        }
    }

    #[test]
    fn wall_stress_newtonian_value() {
        // tau_N(0, 1) with rho = A = nu = 1 is -2/sqrt(pi)
        let f = flow(1.0);
        let params = FluidParams::newtonian(1.0, 1.0).unwrap();
        let tau = shear_newtonian_closed(pt(0.0, 1.0), &f, &params);
        assert_relative_eq!(tau, -2.0 / PI.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn stress_vanishes_at_t0() {
        let spec = QuadratureSpec::default();
        let f = flow(1.0);
        for &(l, lr) in &[(0.0, 0.0), (0.5, 0.0), (0.0, 0.5), (0.5, 0.2)] {
            let p = FluidParams::new(1.0, 1.0, l, lr).unwrap();
            assert_eq!(shear_stress(pt(1.0, 0.0), &p, &f, &spec).unwrap(), 0.0);
            assert_eq!(velocity(pt(1.0, 0.0), &p, &f, &spec).unwrap(), 0.0);
        }
    }

    #[test]
    fn joseph_equality_pointwise() {
        // lambda = lambda_r evaluates through the spectral machinery but
        // must land on the Newtonian closed forms
        let spec = QuadratureSpec::default();
        let f = flow(1.0);
        let ob = FluidParams::new(1.0, 1.0, 0.7, 0.7).unwrap();
        assert_eq!(eval_path(&ob), EvalPath::Spectral);
        for &(y, t) in &[(0.3, 0.5), (1.0, 1.0), (2.0, 2.0)] {
            let u = velocity(pt(y, t), &ob, &f, &spec).unwrap();
            let un = velocity_newtonian_closed(pt(y, t), &f, 1.0);
            assert_relative_eq!(u, un, max_relative = 1e-7, epsilon = 1e-9);
            let s = shear_stress(pt(y, t), &ob, &f, &spec).unwrap();
            let sn = shear_newtonian_closed(pt(y, t), &f, &ob);
            assert_relative_eq!(s, sn, max_relative = 1e-7, epsilon = 1e-9);
        }
    }

    #[test]
    fn zero_acceleration_rest_state() {
        let spec = QuadratureSpec::default();
        let f = flow(0.0);
        let p = FluidParams::new(1.0, 1.0, 0.5, 0.2).unwrap();
        assert_eq!(velocity(pt(1.0, 2.0), &p, &f, &spec).unwrap(), 0.0);
        assert_eq!(shear_stress(pt(1.0, 2.0), &p, &f, &spec).unwrap(), 0.0);
    }

    #[test]
    fn far_field_decay() {
        let spec = QuadratureSpec::default();
        let f = flow(1.0);
        let p = FluidParams::new(1.0, 1.0, 0.5, 0.2).unwrap();
        let t = 1.0;
        let y = 12.0 * (p.nu() * t).sqrt() * (1.0 + p.lambda() / t);
        let u = velocity(pt(y, t), &p, &f, &spec).unwrap();
        assert!(u.abs() < 1e-6 * f.accel() * t, "|u| = {}", u.abs());
    }

    #[test]
    fn gradient_matches_finite_difference() {
        let spec = QuadratureSpec::default();
        let f = flow(1.0);
        let p = FluidParams::new(1.0, 1.0, 0.5, 0.2).unwrap();
        let (y, t) = (0.8, 1.0);
        let h = 1e-4;
        let fd = (velocity(pt(y + h, t), &p, &f, &spec).unwrap()
            - velocity(pt(y - h, t), &p, &f, &spec).unwrap())
            / (2.0 * h);
        let g = velocity_gradient(pt(y, t), &p, &f, &spec).unwrap();
        assert_relative_eq!(g, fd, max_relative = 1e-5, epsilon = 1e-8);
    }

    #[test]
    fn pde_residual_newtonian_closed_form() {
        let spec = QuadratureSpec::default();
        let f = flow(1.0);
        let p = FluidParams::newtonian(1.0, 1.0).unwrap();
        let r = pde_residual(pt(1.0, 1.0), &p, &f, &spec).unwrap();
        assert!(r.momentum < 1e-5, "momentum residual {}", r.momentum);
        assert!(r.constitutive < 1e-5, "constitutive residual {}", r.constitutive);
    }

    #[test]
    fn pde_residual_zero_fields() {
        let spec = QuadratureSpec::default();
        let f = flow(0.0);
        let p = FluidParams::new(1.0, 1.0, 0.5, 0.2).unwrap();
        let r = pde_residual(pt(1.0, 1.0), &p, &f, &spec).unwrap();
        assert_eq!(r.momentum, 0.0);
        assert_eq!(r.constitutive, 0.0);
    }

    #[test]
    fn pde_residual_stencil_domain_check() {
        let spec = QuadratureSpec::default();
        let f = flow(1.0);
        let p = FluidParams::newtonian(1.0, 1.0).unwrap();
        assert!(matches!(
            pde_residual(pt(1e-6, 1.0), &p, &f, &spec),
            Err(Error::StencilOutOfDomain { .. })
        ));
    }
}
