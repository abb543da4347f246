//! Energetic balance of the flow over one slab of the plate: wall power,
//! dissipation, kinetic energy and the boundary-layer thickness, with the
//! balance dE_kin/dt + L + Phi = 0 checked by finite differences.
//!
//! The dissipation double integral is reduced to a single wavenumber
//! integral through the orthogonality of the cosine kernels (the y
//! integral of cos(y xi) cos(y xi') concentrates on xi = xi'), and the
//! boundary-layer integral is reduced the same way; both reductions are
//! cross-checked against the literal definitions.

use crate::error::{Error, Result};
use crate::fields::{self, FieldPoint};
use crate::model::{FluidParams, FlowConfig};
use crate::quad::{integrate_finite, integrate_semi_infinite, QuadratureSpec};
use std::f64::consts::PI;

/// Floor for the balance-residual denominator, keeping A = 0 well defined.
const RESIDUAL_DENOM_FLOOR: f64 = 1e-30;

/// Energetic quantities at one time.
#[derive(Debug, Clone, Copy)]
pub struct EnergeticsReport {
    pub t: f64,
    /// power of the shear stress at the wall (<= 0 for A > 0)
    pub wall_power: f64,
    /// dissipation (>= 0)
    pub dissipation: f64,
    /// boundary-layer thickness
    pub delta: f64,
    /// finite-difference rate of the kinetic energy
    pub dekin_dt: f64,
    /// |dE_kin/dt + L + Phi| / max(|L|, floor)
    pub balance_residual: f64,
}

/// Both forms of the kinetic-energy rate.
#[derive(Debug, Clone, Copy)]
pub struct EnergyRate {
    /// -L - Phi, the rate implied by the balance
    pub balance: f64,
    /// central finite difference of the kinetic energy
    pub finite_difference: f64,
}

fn require_positive_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveTime(t))
    }
}

/// Wall power L(t) = l u(0,t) tau(0,t) = l A t tau_w(t).
pub fn wall_power(
    t: f64,
    params: &FluidParams,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<f64> {
    require_positive_time(t)?;
    let tau_w = fields::shear_stress(FieldPoint::new(0.0, t)?, params, flow, spec)?;
    Ok(flow.slab_length() * flow.accel() * t * tau_w)
}

/// Wall power through the direct wavenumber integral
/// -2 rho l A^2 t / pi * integral of B_tau / xi^2.
pub fn wall_power_spectral(
    t: f64,
    params: &FluidParams,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<f64> {
    require_positive_time(t)?;
    let s = fields::effective_spec(spec, params, t);
    let r = integrate_semi_infinite(
        |xi| fields::bracket_tau_over_xi2(xi, t, params).unwrap_or(f64::NAN),
        &s,
    )
    .map_err(|e| e.in_context("wall_power_spectral"))?;
    let a = flow.accel();
    Ok(-2.0 * params.rho() * flow.slab_length() * a * a * t / PI * r.value)
}

/// Dissipation Phi(t) = l integral of tau du/dy over y, reduced to the
/// single integral 2 rho l A^2/(nu pi) * integral of B_tau B_u / xi^4.
pub fn dissipation(
    t: f64,
    params: &FluidParams,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<f64> {
    require_positive_time(t)?;
    let mut s = fields::effective_spec(spec, params, t);
    // the bracket product doubles the internal oscillation frequency
    if let Some(p) = s.oscillation_period {
        s.oscillation_period = Some(0.5 * p);
    }
    let r = integrate_semi_infinite(
        |xi| {
            let bt = fields::bracket_tau_over_xi2(xi, t, params).unwrap_or(f64::NAN);
            let bu = fields::bracket_u_over_xi2(xi, t, params).unwrap_or(f64::NAN);
            bt * bu
        },
        &s,
    )
    .map_err(|e| e.in_context("dissipation"))?;
    let a = flow.accel();
    Ok(2.0 * params.rho() * flow.slab_length() * a * a / (params.nu() * PI) * r.value)
}

/// Dissipation through the literal double integral, for cross-checking the
/// reduction; the per-point fields run on coarser tolerances.
pub fn dissipation_double_integral(
    t: f64,
    params: &FluidParams,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<f64> {
    require_positive_time(t)?;
    let point_spec = QuadratureSpec {
        rel_tol: spec.rel_tol.max(1e-8),
        abs_tol: spec.abs_tol.max(1e-11),
        ..spec.clone()
    };
    let y_max = upper_cut(t, params, flow, &point_spec)?;
    let integrand = |y: f64| {
        let p = FieldPoint::new(y, t).expect("non-negative point");
        let tau = fields::shear_stress(p, params, flow, &point_spec).unwrap_or(f64::NAN);
        let grad = fields::velocity_gradient(p, params, flow, &point_spec).unwrap_or(f64::NAN);
        tau * grad
    };
    let outer = QuadratureSpec {
        rel_tol: 1e-7,
        abs_tol: 1e-10,
        ..spec.clone()
    };
    let r = integrate_finite(integrand, 0.0, y_max, &outer)
        .map_err(|e| e.in_context("dissipation_double_integral"))?;
    Ok(flow.slab_length() * r.value)
}

/// Boundary-layer thickness delta(t) = (1/(A t)) integral of u over y,
/// evaluated by exchanging the order of integration:
/// delta = 2/(pi nu t) * integral of (nu t xi^2 - B_u)/xi^4.
///
/// This route never touches the acceleration, so delta is independent of A
/// at the bit level.
pub fn boundary_layer_thickness(
    t: f64,
    params: &FluidParams,
    _flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<f64> {
    require_positive_time(t)?;
    let s = fields::effective_spec(spec, params, t);
    let r = integrate_semi_infinite(
        |xi| fields::deficit_u_over_xi4(xi, t, params).unwrap_or(f64::NAN),
        &s,
    )
    .map_err(|e| e.in_context("boundary_layer_thickness"))?;
    Ok(2.0 / (PI * params.nu() * t) * r.value)
}

/// Boundary-layer thickness from the definition, integrating u/(A t) over
/// y up to an adaptive cut.
pub fn boundary_layer_thickness_definitional(
    t: f64,
    params: &FluidParams,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<f64> {
    require_positive_time(t)?;
    if flow.accel() == 0.0 {
        return Err(Error::InvalidParams(
            "definitional boundary-layer thickness needs A > 0 (u(0,t) = 0 otherwise)".into(),
        ));
    }
    let at = flow.accel() * t;
    let y_max = upper_cut(t, params, flow, spec)?;
    let integrand = |y: f64| {
        let p = FieldPoint::new(y, t).expect("non-negative point");
        fields::velocity(p, params, flow, spec).unwrap_or(f64::NAN) / at
    };
    let r = integrate_finite(integrand, 0.0, y_max, spec)
        .map_err(|e| e.in_context("boundary_layer_thickness_definitional"))?;
    Ok(r.value)
}

/// Upper y-cut beyond which the velocity is negligible: starts at
/// 15 sqrt(nu t) (1 + lambda/t + lambda_r/t) and doubles until the local
/// velocity scale drops below the requested absolute tolerance.
fn upper_cut(
    t: f64,
    params: &FluidParams,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let mut y_max = 15.0
        * (params.nu() * t).sqrt()
        * (1.0 + params.lambda() / t + params.lambda_r() / t);
    let scale = (flow.accel() * t).max(1.0);
    for _ in 0..6 {
        let u = fields::velocity(FieldPoint::new(y_max, t)?, params, flow, spec)?;
        if u.abs() * y_max <= (spec.abs_tol * 0.1).max(1e-13 * scale) {
            break;
        }
        y_max *= 2.0;
    }
    Ok(y_max)
}

/// Kinetic energy E_kin(t) = (rho l / 2) integral of u^2 over y.
pub fn kinetic_energy(
    t: f64,
    params: &FluidParams,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<f64> {
    require_positive_time(t)?;
    if flow.accel() == 0.0 {
        return Ok(0.0);
    }
    let y_max = upper_cut(t, params, flow, spec)?;
    let integrand = |y: f64| {
        let p = FieldPoint::new(y, t).expect("non-negative point");
        let u = fields::velocity(p, params, flow, spec).unwrap_or(f64::NAN);
        u * u
    };
    let r = integrate_finite(integrand, 0.0, y_max, spec)
        .map_err(|e| e.in_context("kinetic_energy"))?;
    Ok(0.5 * params.rho() * flow.slab_length() * r.value)
}

/// Rate of the kinetic energy, in both the balance form -L - Phi and the
/// finite-difference verification form.
pub fn kinetic_energy_rate(
    t: f64,
    params: &FluidParams,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<EnergyRate> {
    require_positive_time(t)?;
    let l = wall_power(t, params, flow, spec)?;
    let phi = dissipation(t, params, flow, spec)?;
    let h = 1e-3 * t;
    let e_plus = kinetic_energy(t + h, params, flow, spec)?;
    let e_minus = kinetic_energy(t - h, params, flow, spec)?;
    Ok(EnergyRate {
        balance: -l - phi,
        finite_difference: (e_plus - e_minus) / (2.0 * h),
    })
}

/// All energetic quantities at one time, with the balance residual
/// computed from the finite-difference energy rate.
pub fn full_report(
    t: f64,
    params: &FluidParams,
    flow: &FlowConfig,
    spec: &QuadratureSpec,
) -> Result<EnergeticsReport> {
    require_positive_time(t)?;
    let l = wall_power(t, params, flow, spec)?;
    let phi = dissipation(t, params, flow, spec)?;
    let delta = boundary_layer_thickness(t, params, flow, spec)?;
    let h = 1e-3 * t;
    let e_plus = kinetic_energy(t + h, params, flow, spec)?;
    let e_minus = kinetic_energy(t - h, params, flow, spec)?;
    let dekin_dt = (e_plus - e_minus) / (2.0 * h);
    let balance_residual = (dekin_dt + l + phi).abs() / l.abs().max(RESIDUAL_DENOM_FLOOR);
    Ok(EnergeticsReport {
        t,
        wall_power: l,
        dissipation: phi,
        delta,
        dekin_dt,
        balance_residual,
    })
}

/// Newtonian closed forms: L_N, Phi_N, delta_N.
pub fn newtonian_closed_forms(t: f64, params: &FluidParams, flow: &FlowConfig) -> (f64, f64, f64) {
    let nu = params.nu();
    let a = flow.accel();
    let common = params.rho() * flow.slab_length() * a * a * t * (nu * t / PI).sqrt();
    let l_n = -2.0 * common;
    let phi_n = 8.0 * (2.0f64.sqrt() - 1.0) / 3.0 * common;
    let delta_n = 4.0 / 3.0 * (nu * t / PI).sqrt();
    (l_n, phi_n, delta_n)
}
