//! Fluid parameters, model taxonomy and the spectral ingredients of the
//! exact solutions: the per-wavenumber rates r1..r4 and the velocity and
//! stress mode brackets built from them.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Relaxation times below this floor (in library time units) make the
/// spectral root formulas useless; callers are routed to the dedicated
/// second-grade / Newtonian evaluation paths.
pub const LAMBDA_FLOOR: f64 = 1e-9;

/// |disc| below this fraction of (1 + alpha xi^2)^2 switches the brackets
/// to their double-root limit form.
const DEGENERACY_EPS: f64 = 1e-10;

/// Relative tolerance for the lambda = lambda_r equality test in `classify`.
const CLASSIFY_REL_TOL: f64 = 1e-12;

/// Real part of an exponent below which exp underflows to an exact zero.
const EXP_CLAMP: f64 = -700.0;

/// Material constants of the fluid.
///
/// `mu = rho * nu` and `alpha = nu * lambda_r` are derived on construction
/// and kept consistent by the private fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidParams {
    nu: f64,
    rho: f64,
    mu: f64,
    lambda: f64,
    lambda_r: f64,
    alpha: f64,
}

impl FluidParams {
    pub fn new(nu: f64, rho: f64, lambda: f64, lambda_r: f64) -> Result<Self> {
        if !(nu > 0.0) || !nu.is_finite() {
            return Err(Error::InvalidParams(format!(
                "kinematic viscosity must be positive, got {nu}"
            )));
        }
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::InvalidParams(format!(
                "density must be positive, got {rho}"
            )));
        }
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidParams(format!(
                "relaxation time must be non-negative, got {lambda}"
            )));
        }
        if !(lambda_r >= 0.0) || !lambda_r.is_finite() {
            return Err(Error::InvalidParams(format!(
                "retardation time must be non-negative, got {lambda_r}"
            )));
        }
        Ok(FluidParams {
            nu,
            rho,
            mu: rho * nu,
            lambda,
            lambda_r,
            alpha: nu * lambda_r,
        })
    }

    /// Newtonian fluid of the same viscosity and density.
    pub fn newtonian(nu: f64, rho: f64) -> Result<Self> {
        Self::new(nu, rho, 0.0, 0.0)
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }
    pub fn rho(&self) -> f64 {
        self.rho
    }
    /// Dynamic viscosity, mu = rho * nu.
    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    pub fn lambda_r(&self) -> f64 {
        self.lambda_r
    }
    /// alpha = nu * lambda_r.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Constitutive families reachable from the Oldroyd-B parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluidModel {
    OldroydB,
    Maxwell,
    SecondGrade,
    Newtonian,
}

impl FluidModel {
    pub fn name(&self) -> &'static str {
        match self {
            FluidModel::OldroydB => "oldroyd-b",
            FluidModel::Maxwell => "maxwell",
            FluidModel::SecondGrade => "second-grade",
            FluidModel::Newtonian => "newtonian",
        }
    }
}

/// Classify the model from (lambda, lambda_r).
///
/// lambda = lambda_r collapses the solutions to the Newtonian ones, so the
/// equality (tested to 1e-12 relative) classifies as Newtonian even when
/// both times are positive.
pub fn classify(params: &FluidParams) -> FluidModel {
    let l = params.lambda;
    let r = params.lambda_r;
    if (l - r).abs() <= CLASSIFY_REL_TOL * l.max(r) {
        FluidModel::Newtonian
    } else if r == 0.0 {
        FluidModel::Maxwell
    } else if l == 0.0 {
        FluidModel::SecondGrade
    } else {
        FluidModel::OldroydB
    }
}

/// Plate acceleration and the x-extent of the energetic control volume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowConfig {
    accel: f64,
    slab_length: f64,
}

impl FlowConfig {
    pub fn new(accel: f64, slab_length: f64) -> Result<Self> {
        if !(accel >= 0.0) || !accel.is_finite() {
            return Err(Error::InvalidParams(format!(
                "plate acceleration must be non-negative, got {accel}"
            )));
        }
        if !(slab_length > 0.0) || !slab_length.is_finite() {
            return Err(Error::InvalidParams(format!(
                "slab length must be positive, got {slab_length}"
            )));
        }
        Ok(FlowConfig {
            accel,
            slab_length,
        })
    }

    pub fn accel(&self) -> f64 {
        self.accel
    }
    pub fn slab_length(&self) -> f64 {
        self.slab_length
    }
}

/// The four per-wavenumber rates and the discriminant they share.
#[derive(Debug, Clone, Copy)]
pub struct SpectralRoots {
    pub xi: f64,
    /// (1 + alpha xi^2)^2 - 4 nu lambda xi^2
    pub disc: f64,
    pub r1: Complex64,
    pub r2: Complex64,
    pub r3: Complex64,
    pub r4: Complex64,
    /// set when |disc| is below the double-root threshold
    pub degenerate: bool,
}

/// Rates of the two viscoelastic modes at wavenumber xi.
///
/// r1 and r2 solve lambda r^2 + (1 + alpha xi^2) r + nu xi^2 = 0; r3 and r4
/// are the same radicals shifted, r3 = r1 + 1/lambda and r4 = r2 + 1/lambda.
/// The square root takes the principal branch, so Re r1, Re r2 <= 0 for all
/// xi and the two roots are conjugate when disc < 0.
pub fn spectral_roots(xi: f64, params: &FluidParams) -> Result<SpectralRoots> {
    if xi < 0.0 || !xi.is_finite() {
        return Err(Error::InvalidParams(format!(
            "wavenumber must be non-negative and finite, got {xi}"
        )));
    }
    let lambda = params.lambda;
    if lambda < LAMBDA_FLOOR {
        return Err(Error::DegenerateLambda {
            lambda,
            floor: LAMBDA_FLOOR,
        });
    }
    let xi2 = xi * xi;
    let a = 1.0 + params.alpha * xi2;
    let disc = a * a - 4.0 * params.nu * lambda * xi2;
    // for real roots, take the large-magnitude one from the formula and
    // recover the small one from the product lambda r1 r2 = nu xi^2; the
    // direct difference -a + sqrt(disc) cancels badly at large xi
    let (r1, r2) = if disc >= 0.0 {
        let sq = disc.sqrt();
        let r2 = -(a + sq) * 0.5 / lambda;
        let r1 = params.nu * xi2 / (lambda * r2);
        (Complex64::new(r1, 0.0), Complex64::new(r2, 0.0))
    } else {
        let sq = (-disc).sqrt() * 0.5 / lambda;
        let re = -a * 0.5 / lambda;
        (Complex64::new(re, sq), Complex64::new(re, -sq))
    };
    let shift = 1.0 / lambda; // r3 - r1 = r4 - r2 = 1/lambda exactly
    Ok(SpectralRoots {
        xi,
        disc,
        r1,
        r2,
        r3: r1 + shift,
        r4: r2 + shift,
        degenerate: disc.abs() < DEGENERACY_EPS * a * a,
    })
}

fn cexp_clamped(z: Complex64) -> Complex64 {
    if z.re < EXP_CLAMP {
        Complex64::new(0.0, 0.0)
    } else {
        z.exp()
    }
}

fn exp_clamped(x: f64) -> f64 {
    if x < EXP_CLAMP {
        0.0
    } else {
        x.exp()
    }
}

/// Discard the imaginary part of a complex evaluation that is analytically
/// real (conjugate-mode symmetry), checking it is numerically negligible.
fn demote_real(z: Complex64) -> Result<f64> {
    if z.im.abs() < 1e-10 * z.re.abs() + 1e-14 {
        Ok(z.re)
    } else {
        Err(Error::NonRealResult { re: z.re, im: z.im })
    }
}

/// x - 1 + exp(-x) for x >= 0 without cancellation.
fn expm1_deficit(x: f64) -> f64 {
    if x < 1e-3 {
        // series x^2/2 - x^3/6 + x^4/24 - x^5/120
        x * x * (0.5 - x / 6.0 + x * x / 24.0 - x * x * x / 120.0)
    } else {
        x + (-x).exp_m1()
    }
}

/// expm1(z)/z, smooth through z = 0.
fn expm1_over(z: f64) -> f64 {
    if z.abs() < 1e-5 {
        1.0 + z * (0.5 + z / 6.0)
    } else {
        z.exp_m1() / z
    }
}

/// Which evaluation regime a (xi, t) point falls into.
enum Regime {
    /// xi = 0: both brackets vanish identically.
    Origin,
    /// small nu xi^2 (t + 2 lambda + 2 lambda_r) with disc well away from
    /// zero: rationalized real forms free of cancellation.
    Stable,
    /// |disc| below the double-root threshold: analytic limit forms.
    Degenerate,
    /// everything else: direct complex formulas.
    Direct,
}

fn regime(xi: f64, t: f64, params: &FluidParams, disc: f64, a: f64) -> Regime {
    if xi == 0.0 {
        return Regime::Origin;
    }
    let xi2 = xi * xi;
    let small = params.nu * xi2 * (t + 2.0 * params.lambda + 2.0 * params.lambda_r) < 0.5;
    if small && disc > 0.1 * a * a {
        return Regime::Stable;
    }
    if disc.abs() < DEGENERACY_EPS * a * a {
        return Regime::Degenerate;
    }
    Regime::Direct
}

/// All stable-regime ingredients shared by the bracket evaluations.
///
/// Uses the exact identities lambda r1 r2 = nu xi^2 (Vieta) and
/// r3 = r1 + 1/lambda, which give
///   G - 1 = H = eta / (r2 - r1),       eta = r1 + nu xi^2,
/// with eta rationalized so no cancellation occurs at small xi.
struct StableParts {
    t: f64,
    x: f64,        // nu t xi^2
    e_mx: f64,     // exp(-x)
    diff_e: f64,   // exp(-x) - exp(r2 t)
    eta_over_xi4: f64,
    r2_minus_r1: f64,
    g4_num_over_xi2: f64, // r4 / xi^2
    xi2: f64,
    nu_t: f64,
}

fn stable_parts(xi: f64, t: f64, params: &FluidParams, disc: f64, a: f64) -> StableParts {
    let nu = params.nu;
    let lambda = params.lambda;
    let alpha = params.alpha;
    let xi2 = xi * xi;
    let sq = disc.sqrt();
    let eta_over_xi4 = 2.0 * nu * (alpha - nu * lambda) / (sq + 1.0 + (alpha - 2.0 * nu * lambda) * xi2);
    let r2 = (-a - sq) * 0.5 / lambda;
    let x = nu * t * xi2;
    let e_mx = (-x).exp();
    let e_r2t = exp_clamped(r2 * t);
    StableParts {
        t,
        x,
        e_mx,
        diff_e: e_mx - e_r2t,
        eta_over_xi4,
        r2_minus_r1: -sq / lambda,
        g4_num_over_xi2: 2.0 * (nu * lambda - alpha) / (lambda * (1.0 - alpha * xi2 + sq)),
        xi2,
        nu_t: nu * t,
    }
}

impl StableParts {
    /// velocity bracket over xi^2
    fn bu_over_xi2(&self) -> f64 {
        let w = self.deficit_over_xi4() * self.xi2;
        self.nu_t - w
    }

    /// (nu t xi^2 - B_u) / xi^4, the velocity deficit driving the
    /// boundary-layer integrand
    fn deficit_over_xi4(&self) -> f64 {
        let nt = self.nu_t;
        let w1 = if self.x < 1e-3 {
            nt * nt * (0.5 - self.x / 6.0 + self.x * self.x / 24.0)
        } else {
            expm1_deficit(self.x) / (self.xi2 * self.xi2)
        };
        let g_m1_over_xi4 = self.eta_over_xi4 / self.r2_minus_r1;
        let w2 = g_m1_over_xi4 * self.diff_e;
        let g = 1.0 + g_m1_over_xi4 * self.xi2 * self.xi2;
        let phi_over_xi4 = self.eta_over_xi4 * self.phi_ratio();
        let w3 = g * self.e_mx * phi_over_xi4;
        w1 + w2 + w3
    }

    /// expm1(eta t)/eta = t * expm1(eta t)/(eta t), smooth through eta = 0
    fn phi_ratio(&self) -> f64 {
        let eta = self.eta_over_xi4 * self.xi2 * self.xi2;
        expm1_over(eta * self.t) * self.t
    }

    /// stress bracket over xi^2
    fn bt_over_xi2(&self) -> f64 {
        let b1 = self.nu_t * expm1_over_neg(self.x);
        let g4_over_xi2 = self.g4_num_over_xi2 / self.r2_minus_r1;
        let b2 = g4_over_xi2 * self.diff_e;
        let g3 = g4_over_xi2 * self.xi2 - 1.0;
        let phi_over_xi2 = self.eta_over_xi4 * self.xi2 * self.phi_ratio();
        let b3 = g3 * self.e_mx * phi_over_xi2;
        b1 + b2 + b3
    }
}

/// (1 - exp(-x))/x, smooth through 0.
fn expm1_over_neg(x: f64) -> f64 {
    if x.abs() < 1e-5 {
        1.0 - x * (0.5 - x / 6.0)
    } else {
        -(-x).exp_m1() / x
    }
}

/// Velocity mode bracket of the exact solution:
/// 1 - lambda [r2 r3 e^{r1 t} - r1 r4 e^{r2 t}] / (r2 - r1).
///
/// Real-valued for every regime (conjugate modes combine to a real number);
/// 0 at t = 0 and at xi = 0, tending to 1 as t grows at fixed xi > 0.
pub fn mode_bracket_velocity(xi: f64, t: f64, params: &FluidParams) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::InvalidParams(format!("time must be non-negative, got {t}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let xi2 = xi * xi;
    let a = 1.0 + params.alpha * xi2;
    let lambda = params.lambda;
    if lambda < LAMBDA_FLOOR {
        return Err(Error::DegenerateLambda {
            lambda,
            floor: LAMBDA_FLOOR,
        });
    }
    let disc = a * a - 4.0 * params.nu * lambda * xi2;
    match regime(xi, t, params, disc, a) {
        Regime::Origin => Ok(0.0),
        Regime::Stable => Ok(stable_parts(xi, t, params, disc, a).bu_over_xi2() * xi2),
        Regime::Degenerate => {
            let r = -a * 0.5 / lambda;
            Ok(1.0 - exp_clamped(r * t) * (1.0 - lambda * r * r * t - r * t))
        }
        Regime::Direct => {
            let roots = spectral_roots(xi, params)?;
            let e1 = cexp_clamped(roots.r1 * t);
            let e2 = cexp_clamped(roots.r2 * t);
            let num = roots.r2 * roots.r3 * e1 - roots.r1 * roots.r4 * e2;
            demote_real(Complex64::new(1.0, 0.0) - num * lambda / (roots.r2 - roots.r1))
        }
    }
}

/// Stress mode bracket of the exact solution:
/// 1 - [r4 e^{r2 t} - r3 e^{r1 t}] / (r2 - r1).
pub fn mode_bracket_stress(xi: f64, t: f64, params: &FluidParams) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::InvalidParams(format!("time must be non-negative, got {t}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let xi2 = xi * xi;
    let a = 1.0 + params.alpha * xi2;
    let lambda = params.lambda;
    if lambda < LAMBDA_FLOOR {
        return Err(Error::DegenerateLambda {
            lambda,
            floor: LAMBDA_FLOOR,
        });
    }
    let disc = a * a - 4.0 * params.nu * lambda * xi2;
    match regime(xi, t, params, disc, a) {
        Regime::Origin => Ok(0.0),
        Regime::Stable => Ok(stable_parts(xi, t, params, disc, a).bt_over_xi2() * xi2),
        Regime::Degenerate => {
            let r = -a * 0.5 / lambda;
            Ok(1.0 - exp_clamped(r * t) * (1.0 + r * t + t / lambda))
        }
        Regime::Direct => {
            let roots = spectral_roots(xi, params)?;
            let e1 = cexp_clamped(roots.r1 * t);
            let e2 = cexp_clamped(roots.r2 * t);
            let num = roots.r4 * e2 - roots.r3 * e1;
            demote_real(Complex64::new(1.0, 0.0) - num / (roots.r2 - roots.r1))
        }
    }
}

/// B_u(xi, t) / xi^2, stable down to xi -> 0 (limit nu t).
pub(crate) fn bracket_velocity_over_xi2(xi: f64, t: f64, params: &FluidParams) -> Result<f64> {
    if t == 0.0 {
        return Ok(0.0);
    }
    let xi2 = xi * xi;
    let a = 1.0 + params.alpha * xi2;
    let disc = a * a - 4.0 * params.nu * params.lambda * xi2;
    match regime(xi, t, params, disc, a) {
        Regime::Origin => Ok(params.nu * t),
        Regime::Stable => Ok(stable_parts(xi, t, params, disc, a).bu_over_xi2()),
        _ => Ok(mode_bracket_velocity(xi, t, params)? / xi2),
    }
}

/// B_tau(xi, t) / xi^2, stable down to xi -> 0.
pub(crate) fn bracket_stress_over_xi2(xi: f64, t: f64, params: &FluidParams) -> Result<f64> {
    if t == 0.0 {
        return Ok(0.0);
    }
    let xi2 = xi * xi;
    let a = 1.0 + params.alpha * xi2;
    let disc = a * a - 4.0 * params.nu * params.lambda * xi2;
    match regime(xi, t, params, disc, a) {
        Regime::Origin => {
            // limit (nu t + alpha - nu lambda) - (alpha - nu lambda) e^{-t/lambda}
            let c = params.alpha - params.nu * params.lambda;
            Ok(params.nu * t + c - c * exp_clamped(-t / params.lambda))
        }
        Regime::Stable => Ok(stable_parts(xi, t, params, disc, a).bt_over_xi2()),
        _ => Ok(mode_bracket_stress(xi, t, params)? / xi2),
    }
}

/// (nu t xi^2 - B_u(xi, t)) / xi^4, the exchanged boundary-layer integrand
/// numerator, stable down to xi -> 0.
pub(crate) fn velocity_deficit_over_xi4(xi: f64, t: f64, params: &FluidParams) -> Result<f64> {
    let xi2 = xi * xi;
    let a = 1.0 + params.alpha * xi2;
    let disc = a * a - 4.0 * params.nu * params.lambda * xi2;
    match regime(xi, t, params, disc, a) {
        Regime::Stable => Ok(stable_parts(xi, t, params, disc, a).deficit_over_xi4()),
        Regime::Origin => Err(Error::InvalidParams(
            "velocity deficit is evaluated for xi > 0 only".into(),
        )),
        _ => {
            let b = mode_bracket_velocity(xi, t, params)?;
            Ok((params.nu * t * xi2 - b) / (xi2 * xi2))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(nu: f64, lambda: f64, lambda_r: f64) -> FluidParams {
        FluidParams::new(nu, 1.0, lambda, lambda_r).unwrap()
    }

    #[test]
    fn classify_taxonomy() {
        assert_eq!(classify(&params(1.0, 0.0, 0.0)), FluidModel::Newtonian);
        assert_eq!(classify(&params(1.0, 0.5, 0.5)), FluidModel::Newtonian);
        assert_eq!(classify(&params(1.0, 0.5, 0.2)), FluidModel::OldroydB);
        assert_eq!(classify(&params(1.0, 0.5, 0.0)), FluidModel::Maxwell);
        assert_eq!(classify(&params(1.0, 0.0, 0.5)), FluidModel::SecondGrade);
        // relative, not absolute, equality test
        assert_eq!(classify(&params(1.0, 1e-13, 0.0)), FluidModel::Maxwell);
    }

    #[test]
    fn params_derived_quantities_exact() {
        let p = FluidParams::new(0.7, 1.3, 0.5, 0.2).unwrap();
        assert_eq!(p.mu(), 1.3 * 0.7);
        assert_eq!(p.alpha(), 0.7 * 0.2);
    }

    #[test]
    fn params_validation() {
        assert!(FluidParams::new(-1.0, 1.0, 0.0, 0.0).is_err());
        assert!(FluidParams::new(1.0, 0.0, 0.0, 0.0).is_err());
        assert!(FluidParams::new(1.0, 1.0, -0.1, 0.0).is_err());
        assert!(FluidParams::new(1.0, 1.0, 0.0, -0.1).is_err());
        assert!(FlowConfig::new(-1.0, 1.0).is_err());
        assert!(FlowConfig::new(1.0, 0.0).is_err());
    }

    #[test]
    fn roots_at_xi_zero() {
        let p = params(1.0, 1.0, 0.0);
        let r = spectral_roots(0.0, &p).unwrap();
        assert_eq!(r.r1, Complex64::new(0.0, 0.0));
        assert_eq!(r.r2, Complex64::new(-1.0, 0.0));
        assert_eq!(r.r3, Complex64::new(1.0, 0.0));
        assert_eq!(r.r4, Complex64::new(0.0, 0.0));
        assert_eq!(r.disc, 1.0);
    }

    #[test]
    fn roots_at_double_root_wavenumber() {
        // xi = 1/(2 sqrt(nu lambda)) makes disc = 0
        let p = params(1.0, 1.0, 0.0);
        let r = spectral_roots(0.5, &p).unwrap();
        assert!(r.disc.abs() < 1e-15);
        assert!(r.degenerate);
    }

    #[test]
    fn roots_conjugate_for_negative_disc() {
        let p = params(1.0, 1.0, 0.0);
        let r = spectral_roots(1.0, &p).unwrap();
        assert_relative_eq!(r.disc, -3.0, max_relative = 1e-15);
        assert_relative_eq!(r.r1.re, -0.5, max_relative = 1e-15);
        assert_relative_eq!(r.r1.im, 3.0f64.sqrt() / 2.0, max_relative = 1e-15);
        assert_eq!(r.r1.re, r.r2.re);
        assert_eq!(r.r1.im, -r.r2.im);
    }

    #[test]
    fn vieta_relations() {
        for &(nu, lambda, lambda_r) in &[(1.0, 0.5, 0.2), (0.3, 1.7, 0.9), (2.0, 0.05, 1.5)] {
            let p = params(nu, lambda, lambda_r);
            for &xi in &[0.1, 0.7, 1.3, 5.0, 20.0] {
                let r = spectral_roots(xi, &p).unwrap();
                let sum = r.r1 + r.r2;
                let prod = r.r1 * r.r2;
                let want_sum = -(1.0 + p.alpha() * xi * xi) / lambda;
                let want_prod = nu * xi * xi / lambda;
                assert_relative_eq!(sum.re, want_sum, max_relative = 1e-12);
                assert!(sum.im.abs() < 1e-12 * want_sum.abs());
                assert_relative_eq!(prod.re, want_prod, max_relative = 1e-12);
                assert!(prod.im.abs() < 1e-12 * want_prod.abs().max(1.0));
                // shared radical: r3 - r4 = r1 - r2
                let d34 = r.r3 - r.r4;
                let d12 = r.r1 - r.r2;
                assert_relative_eq!(d34.re, d12.re, max_relative = 1e-13, epsilon = 1e-13);
                assert_relative_eq!(d34.im, d12.im, max_relative = 1e-13, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn lambda_floor_refused() {
        let p = params(1.0, 1e-12, 0.3);
        assert!(matches!(
            spectral_roots(1.0, &p),
            Err(Error::DegenerateLambda { .. })
        ));
    }

    #[test]
    fn bracket_values_from_direct_substitution() {
        let p = params(1.0, 1.0, 0.0);
        // xi = 0: both brackets vanish for all t
        assert_eq!(mode_bracket_velocity(0.0, 1.0, &p).unwrap(), 0.0);
        assert_eq!(mode_bracket_stress(0.0, 1.0, &p).unwrap(), 0.0);
        // t = 0: fluid at rest
        for &xi in &[0.2, 1.0, 4.0] {
            assert_eq!(mode_bracket_velocity(xi, 0.0, &p).unwrap(), 0.0);
            assert_eq!(mode_bracket_stress(xi, 0.0, &p).unwrap(), 0.0);
        }
        // t -> infinity: decaying exponentials leave the steady bracket
        assert_relative_eq!(
            mode_bracket_velocity(1.0, 80.0, &p).unwrap(),
            1.0,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            mode_bracket_stress(1.0, 80.0, &p).unwrap(),
            1.0,
            max_relative = 1e-10
        );
    }

    #[test]
    fn brackets_match_newtonian_kernel_when_times_equal() {
        // Joseph collapse at the bracket level
        let p = params(1.0, 0.7, 0.7);
        for &xi in &[0.05, 0.3, 1.0, 1.1952286093343936, 3.0, 10.0] {
            let want = -(-(xi * xi) * 0.5f64).exp_m1(); // 1 - e^{-nu t xi^2}, t = 0.5
            let bu = mode_bracket_velocity(xi, 0.5, &p).unwrap();
            let bt = mode_bracket_stress(xi, 0.5, &p).unwrap();
            assert_relative_eq!(bu, want, max_relative = 1e-9, epsilon = 1e-12);
            assert_relative_eq!(bt, want, max_relative = 1e-9, epsilon = 1e-12);
        }
    }

    #[test]
    fn degeneracy_continuity() {
        // brackets on either side of disc = 0 agree closely
        let nu = 1.0;
        let lambda = 1.0;
        let p = params(nu, lambda, 0.0);
        for &t in &[0.5, 2.0] {
            let xi_minus = ((1.0 - 1e-8) / (4.0 * nu * lambda)).sqrt();
            let xi_plus = ((1.0 + 1e-8) / (4.0 * nu * lambda)).sqrt();
            let bu_m = mode_bracket_velocity(xi_minus, t, &p).unwrap();
            let bu_p = mode_bracket_velocity(xi_plus, t, &p).unwrap();
            assert!((bu_m - bu_p).abs() < 1e-6, "velocity bracket jump {}", (bu_m - bu_p).abs());
            let bt_m = mode_bracket_stress(xi_minus, t, &p).unwrap();
            let bt_p = mode_bracket_stress(xi_plus, t, &p).unwrap();
            assert!((bt_m - bt_p).abs() < 1e-6, "stress bracket jump {}", (bt_m - bt_p).abs());
        }
    }

    #[test]
    fn degenerate_limit_matches_neighbouring_direct_values() {
        let nu = 1.0;
        let lambda = 1.0;
        let p = params(nu, lambda, 0.0);
        let t = 1.3;
        // inside the double-root window vs just outside it
        let xi_in = ((1.0 - 1e-12) / (4.0 * nu * lambda)).sqrt();
        let xi_out = ((1.0 - 1e-9) / (4.0 * nu * lambda)).sqrt();
        let bu_in = mode_bracket_velocity(xi_in, t, &p).unwrap();
        let bu_out = mode_bracket_velocity(xi_out, t, &p).unwrap();
        assert!((bu_in - bu_out).abs() < 1e-8);
        let bt_in = mode_bracket_stress(xi_in, t, &p).unwrap();
        let bt_out = mode_bracket_stress(xi_out, t, &p).unwrap();
        assert!((bt_in - bt_out).abs() < 1e-8);
    }

    #[test]
    fn stable_branch_agrees_with_direct_in_overlap() {
        // points just inside and outside the stable gate must agree
        for &(lambda, lambda_r) in &[(0.5, 0.2), (0.4, 0.0), (0.2, 0.5)] {
            let p = params(1.0, lambda, lambda_r);
            let t = 1.0;
            let gate = 0.5 / (t + 2.0 * lambda + 2.0 * lambda_r);
            let xi_in = (gate * 0.98).sqrt();
            // direct evaluation of the same point via the complex formulas
            let roots = spectral_roots(xi_in, &p).unwrap();
            let e1 = (roots.r1 * t).exp();
            let e2 = (roots.r2 * t).exp();
            let direct_u =
                (Complex64::new(1.0, 0.0) - (roots.r2 * roots.r3 * e1 - roots.r1 * roots.r4 * e2) * lambda / (roots.r2 - roots.r1)).re;
            let direct_t =
                (Complex64::new(1.0, 0.0) - (roots.r4 * e2 - roots.r3 * e1) / (roots.r2 - roots.r1)).re;
            let stable_u = mode_bracket_velocity(xi_in, t, &p).unwrap();
            let stable_t = mode_bracket_stress(xi_in, t, &p).unwrap();
            assert_relative_eq!(stable_u, direct_u, max_relative = 1e-9, epsilon = 1e-13);
            assert_relative_eq!(stable_t, direct_t, max_relative = 1e-9, epsilon = 1e-13);
        }
    }

    #[test]
    fn bracket_over_xi2_limits() {
        let p = params(1.0, 0.5, 0.2);
        let t = 1.0;
        // xi -> 0 limit of B_u/xi^2 is nu t
        let v = bracket_velocity_over_xi2(1e-6, t, &p).unwrap();
        assert_relative_eq!(v, 1.0, max_relative = 1e-6);
        assert_eq!(bracket_velocity_over_xi2(0.0, t, &p).unwrap(), 1.0);
        // stress limit: nu t + (alpha - nu lambda)(1 - e^{-t/lambda})
        let c = p.alpha() - p.nu() * p.lambda();
        let want = p.nu() * t + c * (1.0 - (-t / p.lambda()).exp());
        let s = bracket_stress_over_xi2(1e-6, t, &p).unwrap();
        assert_relative_eq!(s, want, max_relative = 1e-6);
    }

    #[test]
    fn velocity_deficit_consistency() {
        // deficit must match nu t xi^2 - B_u wherever the direct bracket is healthy
        let p = params(1.0, 0.5, 0.2);
        let t = 1.0;
        for &xi in &[0.3, 0.45, 0.6, 1.0, 2.0] {
            let d = velocity_deficit_over_xi4(xi, t, &p).unwrap();
            let b = mode_bracket_velocity(xi, t, &p).unwrap();
            let direct = (p.nu() * t * xi * xi - b) / (xi * xi * xi * xi);
            assert_relative_eq!(d, direct, max_relative = 1e-7, epsilon = 1e-10);
        }
    }
}
