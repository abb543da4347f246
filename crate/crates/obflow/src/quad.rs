//! Adaptive quadrature for semi-infinite integrals with oscillatory factors.
//!
//! The building block is a 15-point Gauss-Kronrod rule on finite panels with
//! heap-driven refinement. Semi-infinite ranges are either mapped onto (0, 1)
//! through xi = u/(1-u) or, when an oscillation wavelength is known, split
//! into half-period panels whose alternating partial sums are accelerated by
//! iterated averaging (Euler transformation).

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Fixed depth of the Euler transformation applied to alternating
/// half-period sums.
const EULER_DEPTH: usize = 12;

/// Minimum number of half-period panels before convergence may be declared.
const MIN_OSC_PANELS: usize = 6;

/// Tail handling for semi-infinite integrals without an oscillation hint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailCut {
    /// Map (0, inf) onto (0, 1) via xi = u/(1-u).
    Map,
    /// Integrate only [0, cut]; the caller asserts the tail is negligible.
    TruncateAt(f64),
}

/// Oscillatory kernel kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OscKind {
    Sin,
    Cos,
}

/// Tolerances and policies for one integration.
#[derive(Debug, Clone)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Cap on the total number of Gauss-Kronrod panel evaluations.
    pub max_panels: usize,
    /// Wavelength hint (2*pi/frequency) for zero-aligned splitting of
    /// integrands that oscillate independently of the sin/cos kernel.
    pub oscillation_period: Option<f64>,
    pub tail_cut: TailCut,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_panels: 1_000_000,
            oscillation_period: None,
            tail_cut: TailCut::Map,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tols(rel_tol: f64, abs_tol: f64) -> Self {
        QuadratureSpec {
            rel_tol,
            abs_tol,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::InvalidParams(format!(
                "quadrature tolerances must be positive (rel={}, abs={})",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.max_panels == 0 {
            return Err(Error::InvalidParams(
                "max_panels must be at least 1".into(),
            ));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Outcome of one integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: f64,
    pub err_estimate: f64,
    pub panels_used: usize,
    pub converged: bool,
}

// ---------------------------------------------------------------------------
// 15-point Gauss-Kronrod rule
// ---------------------------------------------------------------------------

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Kronrod estimate, error estimate and integral of |f| on [a, b].
fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteIntegrand(x))
        }
    };

    let f_center = eval(center)?;
    let mut res_kronrod = f_center * WGK[7];
    let mut res_gauss = 0.0;
    let mut res_abs = res_kronrod.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = f_center;

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = eval(center - x)?;
        let f2 = eval(center + x)?;
        fv[j] = f1;
        fv[14 - j] = f2;
        res_kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (f1 + f2);
        }
    }
    res_gauss += WG[3] * f_center;

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let value = res_kronrod * half;
    let err = rescale_error((res_kronrod - res_gauss) * half, res_abs * half.abs(), res_asc * half.abs());
    Ok((value, err))
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut e = err.abs();
    if res_asc != 0.0 && e != 0.0 {
        let scale = (200.0 * e / res_asc).powf(1.5);
        e = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        e = e.max(50.0 * f64::EPSILON * res_abs);
    }
    e
}

// ---------------------------------------------------------------------------
// Adaptive refinement on a finite interval
// ---------------------------------------------------------------------------

struct Panel {
    err: f64,
    seq: u64,
    a: f64,
    b: f64,
    val: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.seq == other.seq
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap on error; deterministic tie-break on insertion order
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

struct AdaptiveOutcome {
    value: f64,
    err: f64,
    converged: bool,
}

/// Adaptive Gauss-Kronrod on [a, b]. `budget` counts qk15 applications
/// across the whole integration and is decremented here.
fn adaptive_finite<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    budget: &mut usize,
    panels_used: &mut usize,
) -> Result<AdaptiveOutcome> {
    let spend = |budget: &mut usize, panels_used: &mut usize| -> bool {
        if *budget == 0 {
            false
        } else {
            *budget -= 1;
            *panels_used += 1;
            true
        }
    };

    if !spend(budget, panels_used) {
        return Ok(AdaptiveOutcome {
            value: 0.0,
            err: f64::INFINITY,
            converged: false,
        });
    }
    let (v0, e0) = qk15(f, a, b)?;
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    heap.push(Panel {
        err: e0,
        seq,
        a,
        b,
        val: v0,
    });
    let mut total_val = v0;
    let mut total_err = e0;
    let width_floor = (b - a).abs() * 1e-14 + f64::MIN_POSITIVE;
    let mut frozen_val = 0.0;
    let mut frozen_err = 0.0;

    loop {
        let target = abs_tol.max(rel_tol * total_val.abs());
        if total_err <= target {
            return Ok(AdaptiveOutcome {
                value: total_val,
                err: total_err,
                converged: true,
            });
        }
        let Some(worst) = heap.pop() else {
            return Ok(AdaptiveOutcome {
                value: total_val,
                err: total_err,
                converged: total_err <= target,
            });
        };
        if (worst.b - worst.a).abs() <= width_floor || *budget < 2 {
            // cannot refine further; freeze this panel's contribution
            frozen_val += worst.val;
            frozen_err += worst.err;
            if heap.is_empty() || *budget < 2 {
                let val = frozen_val + heap.iter().map(|p| p.val).sum::<f64>();
                let err = frozen_err + heap.iter().map(|p| p.err).sum::<f64>();
                return Ok(AdaptiveOutcome {
                    value: val,
                    err,
                    converged: err <= abs_tol.max(rel_tol * val.abs()),
                });
            }
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        spend(budget, panels_used);
        spend(budget, panels_used);
        let (v1, e1) = qk15(f, worst.a, mid)?;
        let (v2, e2) = qk15(f, mid, worst.b)?;
        total_val += v1 + v2 - worst.val;
        total_err += e1 + e2 - worst.err;
        seq += 1;
        heap.push(Panel {
            err: e1,
            seq,
            a: worst.a,
            b: mid,
            val: v1,
        });
        seq += 1;
        heap.push(Panel {
            err: e2,
            seq,
            a: mid,
            b: worst.b,
            val: v2,
        });
        // recompute exact totals periodically to control accumulation drift
        if seq % 512 == 0 {
            total_val = frozen_val + heap.iter().map(|p| p.val).sum::<f64>();
            total_err = frozen_err + heap.iter().map(|p| p.err).sum::<f64>();
        }
    }
}

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

/// Adaptive integration over a finite interval [a, b].
pub(crate) fn integrate_finite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    spec.validate()?;
    if !(b > a) {
        return Err(Error::InvalidParams(format!(
            "empty integration interval [{a}, {b}]"
        )));
    }
    let mut budget = spec.max_panels;
    let mut panels_used = 0usize;
    let out = adaptive_finite(
        &f,
        a,
        b,
        spec.abs_tol,
        spec.rel_tol,
        &mut budget,
        &mut panels_used,
    )?;
    Ok(QuadratureResult {
        value: out.value,
        err_estimate: out.err,
        panels_used,
        converged: out.converged,
    })
}

/// Integrate f over (0, inf).
///
/// The integrand must be finite on (0, inf); it is never evaluated at 0.
/// With an `oscillation_period` hint the range is split into half-period
/// panels and the alternating tail is accelerated; otherwise the range is
/// mapped onto (0, 1) or truncated according to `tail_cut`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    spec.validate()?;
    let mut budget = spec.max_panels;
    let mut panels_used = 0usize;

    if let Some(period) = spec.oscillation_period {
        if period.is_finite() && period > 0.0 {
            return split_and_accelerate(&f, period * 0.5, 0.0, spec, &mut budget, &mut panels_used);
        }
    }

    match spec.tail_cut {
        TailCut::Map => {
            let g = |u: f64| {
                let w = 1.0 - u;
                let xi = u / w;
                f(xi) / (w * w)
            };
            let out = adaptive_finite(
                &g,
                0.0,
                1.0,
                spec.abs_tol,
                spec.rel_tol,
                &mut budget,
                &mut panels_used,
            )?;
            Ok(QuadratureResult {
                value: out.value,
                err_estimate: out.err,
                panels_used,
                converged: out.converged,
            })
        }
        TailCut::TruncateAt(cut) => {
            if !(cut > 0.0) || !cut.is_finite() {
                return Err(Error::InvalidParams(format!(
                    "truncation point must be positive and finite, got {cut}"
                )));
            }
            let out = adaptive_finite(
                &f,
                0.0,
                cut,
                spec.abs_tol,
                spec.rel_tol,
                &mut budget,
                &mut panels_used,
            )?;
            Ok(QuadratureResult {
                value: out.value,
                err_estimate: out.err,
                panels_used,
                converged: out.converged,
            })
        }
    }
}

/// Integrate f_smooth(xi) * kern(y xi) / xi^decay_power over (0, inf),
/// kern being sin or cos.
///
/// `f_smooth` must be bounded; the combined integrand must be integrable at
/// 0 (for the sin kernel one power of xi is cancelled analytically). For
/// y = 0 the sin kernel gives 0 and the cos kernel falls back to
/// [`integrate_semi_infinite`]. The splitting frequency is the larger of y
/// and the `oscillation_period` hint carried by `spec`.
pub fn integrate_oscillatory<F: Fn(f64) -> f64>(
    f_smooth: F,
    y: f64,
    kind: OscKind,
    decay_power: i32,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    spec.validate()?;
    if y < 0.0 {
        return Err(Error::InvalidParams(format!(
            "oscillation coordinate must be non-negative, got {y}"
        )));
    }
    if !(0..=4).contains(&decay_power) {
        return Err(Error::InvalidParams(format!(
            "decay power must be in 0..=4, got {decay_power}"
        )));
    }

    let combined = move |xi: f64| f_smooth(xi) * kernel_over_power(xi, y, kind, decay_power);

    let hint_freq = spec
        .oscillation_period
        .filter(|p| p.is_finite() && *p > 0.0)
        .map(|p| 2.0 * std::f64::consts::PI / p)
        .unwrap_or(0.0);
    let freq = y.max(hint_freq);

    if freq == 0.0 {
        if kind == OscKind::Sin {
            // sin(0) kills the kernel identically
            return Ok(QuadratureResult {
                value: 0.0,
                err_estimate: 0.0,
                panels_used: 0,
                converged: true,
            });
        }
        let inner = QuadratureSpec {
            oscillation_period: None,
            ..spec.clone()
        };
        return integrate_semi_infinite(combined, &inner);
    }

    let mut budget = spec.max_panels;
    let mut panels_used = 0usize;
    let half_period = std::f64::consts::PI / freq;
    // align the first boundary with the first kernel zero when the kernel
    // itself dominates the oscillation
    let first = if kind == OscKind::Cos && y >= hint_freq && y > 0.0 {
        0.5 * half_period
    } else {
        half_period
    };
    split_and_accelerate(&combined, half_period, first, spec, &mut budget, &mut panels_used)
}

/// sin(y xi)/xi^p or cos(y xi)/xi^p, with the removable 0/0 of the sin
/// kernel cancelled analytically (one power of xi).
fn kernel_over_power(xi: f64, y: f64, kind: OscKind, p: i32) -> f64 {
    let z = y * xi;
    match kind {
        OscKind::Cos => z.cos() / xi.powi(p),
        OscKind::Sin => {
            if p >= 1 {
                // sin(y xi)/xi = y * sinc(y xi)
                y * sinc(z) / xi.powi(p - 1)
            } else {
                z.sin()
            }
        }
    }
}

fn sinc(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        1.0 - z * z / 6.0
    } else {
        z.sin() / z
    }
}

/// Integrate over (0, inf) by splitting into panels of the given width
/// (the first panel may be shorter, aligning boundaries with kernel zeros)
/// and accelerating the partial sums.
fn split_and_accelerate<F: Fn(f64) -> f64>(
    f: &F,
    panel_width: f64,
    first_boundary: f64,
    spec: &QuadratureSpec,
    budget: &mut usize,
    panels_used: &mut usize,
) -> Result<QuadratureResult> {
    let first = if first_boundary > 0.0 {
        first_boundary
    } else {
        panel_width
    };
    let max_terms = (spec.max_panels / 8).clamp(64, 4000);

    let mut terms: Vec<f64> = Vec::new();
    let mut partial: Vec<f64> = Vec::new();
    let mut gk_err = 0.0f64;
    let mut prev_estimate = f64::NAN;
    let mut best = QuadratureResult {
        value: 0.0,
        err_estimate: f64::INFINITY,
        panels_used: 0,
        converged: false,
    };

    let mut lo = 0.0f64;
    for k in 0..max_terms {
        let hi = if k == 0 { first } else { lo + panel_width };
        // rough scale for the per-panel tolerance
        let scale = partial.last().map(|s: &f64| s.abs()).unwrap_or(0.0);
        let panel_abs = (spec.abs_tol * 0.02).max(spec.rel_tol * scale * 0.02);
        let out = adaptive_finite(f, lo, hi, panel_abs, spec.rel_tol * 0.1, budget, panels_used)?;
        gk_err += out.err;
        terms.push(out.value);
        partial.push(partial.last().copied().unwrap_or(0.0) + out.value);
        lo = hi;

        if terms.len() >= MIN_OSC_PANELS {
            let (estimate, tail_err) = extrapolate(&terms, &partial, lo, panel_width);
            let increment = if prev_estimate.is_finite() {
                (estimate - prev_estimate).abs()
            } else {
                f64::INFINITY
            };
            prev_estimate = estimate;
            let err = gk_err + tail_err + increment;
            best = QuadratureResult {
                value: estimate,
                err_estimate: err,
                panels_used: *panels_used,
                converged: false,
            };
            if err <= spec.target(estimate) {
                best.converged = true;
                return Ok(best);
            }
        }
        if *budget == 0 {
            break;
        }
    }
    best.panels_used = *panels_used;
    Ok(best)
}

/// Estimate the full sum from the computed panel terms: iterated averaging
/// of the partial sums for alternating tails, plus an algebraic-decay
/// correction when the recent terms share a sign.
///
/// Returns (estimate, tail error estimate).
fn extrapolate(terms: &[f64], partial: &[f64], cut: f64, width: f64) -> (f64, f64) {
    let n = terms.len();
    let last = terms[n - 1];

    // same-sign monotone tail: fit a_k ~ C k^-q over the last few terms
    let m = 5.min(n);
    let tail = &terms[n - m..];
    let same_sign = tail.iter().all(|t| *t > 0.0) || tail.iter().all(|t| *t < 0.0);
    let decreasing = tail.windows(2).all(|w| w[1].abs() <= w[0].abs());

    if same_sign && decreasing && n >= 4 {
        let k1 = (n - 1) as f64;
        let k0 = (n - 2) as f64;
        let ratio = (terms[n - 2] / last).abs();
        let q = if ratio > 1.0 {
            (ratio.ln() / (k1 / k0).ln()).clamp(1.05, 12.0)
        } else {
            1.05
        };
        // remainder of sum C k^-q beyond k1, expressed through the last term
        let remainder = last * k1 / (q - 1.0);
        // the k^-q model is crude; charge half the correction as error
        let est = partial[n - 1] + remainder;
        let _ = (cut, width);
        return (est, 0.5 * remainder.abs() + f64::EPSILON * est.abs());
    }

    // alternating (or irregular) tail: Euler transformation by iterated
    // averaging of the partial sums
    let depth = EULER_DEPTH.min(n - 1);
    let mut row: Vec<f64> = partial[n - 1 - depth..].to_vec();
    while row.len() > 1 {
        for i in 0..row.len() - 1 {
            row[i] = 0.5 * (row[i] + row[i + 1]);
        }
        row.pop();
    }
    let est = row[0];
    // damped first-neglected-term bound
    let tail_err = last.abs() * 0.5f64.powi(depth.min(30) as i32) + f64::EPSILON * est.abs();
    (est, tail_err)
}
