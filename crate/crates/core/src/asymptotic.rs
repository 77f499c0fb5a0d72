//! Threshold potentials κ(t), non-oscillation of β̈ + (κ − 1)β = 0, the Hille–Nehari
//! enclosure, the critical curve, and the finite-index barrier u = √G·β(t(x)).

use std::f64::consts::E;

use serde::Serialize;

use crate::error::{invalid, numerical, Result};
use crate::grid::{RadialFunction, RadialGrid};
use crate::model::{GreenKernel, ModelManifold};
use crate::ode::{Dopri5, Step};
use crate::operator::RadialOperator;
use crate::quadrature::integrate;

/// Default start of the barrier window, safely above the log log singularity at e.
pub const DEFAULT_T: f64 = E * E;
/// Relative residual tolerance for barrier certificates.
pub const BARRIER_RESIDUAL_TOL: f64 = 1e-6;

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// κ(t) = 1 + (1/4t²)(1 + 1/log²t).
#[derive(Debug, Clone, Copy, Default)]
pub struct KappaPotential;

impl KappaPotential {
    pub fn value(t: f64) -> f64 {
        1.0 + Self::excess(t)
    }

    /// κ(t) − 1, without forming κ.
    pub fn excess(t: f64) -> f64 {
        let (hi, lo) = Self::excess_split(t);
        hi + lo
    }

    /// κ(t) − 1 as an unevaluated sum hi + lo.
    pub fn excess_split(t: f64) -> (f64, f64) {
        two_sum(Self::euler_part(t), critical_curve(t))
    }

    pub fn euler_part(t: f64) -> f64 {
        0.25 / (t * t)
    }
}

/// χ_{w²}(t) = 1/(4 t² log² t).
pub fn critical_curve(t: f64) -> f64 {
    let l = t.ln();
    0.25 / (t * t) / (l * l)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BetaKind {
    /// β̈ + (κ(t) − 1)β = 0.
    KappaThreshold,
    /// β̈ + (λ − 1)β = 0, λ ≤ 1.
    ConstantLambda { lambda: f64 },
    /// ẅ + w/(4t²) = 0 with w(T) = √T log T.
    EulerReference,
    /// β̈ + [(1 + ε)/(4t²) + 1/(4t² log² t)]β = 0, on the oscillatory side.
    SuperEuler { epsilon: f64 },
}

impl BetaKind {
    /// The coefficient q(t) in β̈ + q(t)β = 0.
    pub fn potential(&self, t: f64) -> f64 {
        match *self {
            BetaKind::KappaThreshold => KappaPotential::excess(t),
            BetaKind::ConstantLambda { lambda } => lambda - 1.0,
            BetaKind::EulerReference => 0.25 / (t * t),
            BetaKind::SuperEuler { epsilon } => (1.0 + epsilon) * 0.25 / (t * t) + critical_curve(t),
        }
    }

    /// Growth envelope the ratio samples are taken against.
    pub fn envelope(&self, t: f64) -> f64 {
        match *self {
            BetaKind::KappaThreshold | BetaKind::SuperEuler { .. } => {
                let l = t.ln();
                (t * l).sqrt() * l.ln()
            }
            BetaKind::EulerReference => t.sqrt() * t.ln(),
            BetaKind::ConstantLambda { lambda } => {
                let k = (1.0 - lambda).sqrt();
                if k == 0.0 {
                    t
                } else {
                    (k * t).exp()
                }
            }
        }
    }

    /// Closed-form solution with β(t0) = b0, β̇(t0) = d0, where one exists.
    pub fn closed_form(&self, t0: f64, b0: f64, d0: f64, t: f64) -> Option<(f64, f64)> {
        match *self {
            BetaKind::EulerReference => {
                // basis √t and √t log t
                let (s0, l0) = (t0.sqrt(), t0.ln());
                let (y1, dy1) = (s0, 0.5 / s0);
                let (y2, dy2) = (s0 * l0, (0.5 * l0 + 1.0) / s0);
                let det = y1 * dy2 - y2 * dy1;
                let c1 = (b0 * dy2 - y2 * d0) / det;
                let c2 = (y1 * d0 - b0 * dy1) / det;
                let (s, l) = (t.sqrt(), t.ln());
                Some((c1 * s + c2 * s * l, c1 * 0.5 / s + c2 * (0.5 * l + 1.0) / s))
            }
            BetaKind::ConstantLambda { lambda } => {
                let k = (1.0 - lambda).sqrt();
                let x = t - t0;
                if k == 0.0 {
                    Some((b0 + d0 * x, d0))
                } else {
                    let (ch, sh) = ((k * x).cosh(), (k * x).sinh());
                    Some((b0 * ch + d0 / k * sh, b0 * k * sh + d0 * ch))
                }
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OscillationReport {
    pub kind: BetaKind,
    pub t_start: f64,
    pub t_end: f64,
    pub beta0: f64,
    pub dbeta0: f64,
    pub zero_count: usize,
    /// The first zeros found (at most 64).
    pub zeros: Vec<f64>,
    /// (t, β/envelope) on the last decade of the window.
    pub asymptotic_ratio_samples: Vec<(f64, f64)>,
    /// (max − min)/mean of the ratio samples.
    pub ratio_drift: f64,
    /// Least-squares constant C in β ≈ C·envelope on the last decade.
    pub ratio_constant: f64,
    /// min over the window of β − β̇.
    pub constraint_be_bed: f64,
    /// max relative deviation from the closed form, when one exists.
    pub reference_max_rel_err: Option<f64>,
    /// max |W − W(T)|/|W(T)| for the Wronskian with a second solution.
    pub wronskian_drift: f64,
    pub steps: usize,
    /// (t, β, β̇) on a log-spaced grid.
    pub trace: Vec<(f64, f64, f64)>,
}

fn log_spaced(a: f64, b: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![b];
    }
    let (la, lb) = (a.ln(), b.ln());
    (0..count).map(|j| (la + (lb - la) * j as f64 / (count - 1) as f64).exp().clamp(a, b)).collect()
}

/// Integrates β̈ + q(t)β = 0 from (T, β0, β̇0) to `t_end`, counting zeros of β.
pub fn integrate_beta(kind: BetaKind, t_start: f64, t_end: f64, beta0: f64, dbeta0: f64) -> Result<OscillationReport> {
    if !(t_start >= E) {
        return Err(invalid(format!("window must start at T ≥ e, got {t_start}")));
    }
    if !(t_end > t_start) || !t_end.is_finite() {
        return Err(invalid(format!("need T_end > T, got [{t_start}, {t_end}]")));
    }
    if let BetaKind::ConstantLambda { lambda } = kind {
        if !(lambda <= 1.0) {
            return Err(invalid(format!("constant λ must satisfy λ ≤ 1, got {lambda}")));
        }
    }
    if let BetaKind::SuperEuler { epsilon } = kind {
        if !(epsilon > 0.0) {
            return Err(invalid(format!("control ε must be positive, got {epsilon}")));
        }
    }
    let ode = Dopri5::with_tol(1e-12, 1e-14);
    let rhs = |t: f64, y: &[f64; 4]| {
        let q = kind.potential(t);
        [y[1], -q * y[0], y[3], -q * y[2]]
    };
    let decade_start = (t_end / 10.0).max(t_start);
    let ratio_times = log_spaced(decade_start, t_end, 100);
    let trace_times = log_spaced(t_start, t_end, 512);
    let (mut ri, mut ti) = (0, 0);
    let mut ratio_samples = Vec::with_capacity(ratio_times.len());
    let mut trace = Vec::with_capacity(trace_times.len());
    let mut zeros = Vec::new();
    let mut zero_count = 0;
    let mut be_bed = beta0 - dbeta0;
    let mut ref_err: Option<f64> = None;
    let w0 = beta0;
    let mut w_drift: f64 = 0.0;
    let mut steps = 0;
    let mut err_at = |t: f64, y: &[f64; 4]| {
        if let Some((b, _)) = kind.closed_form(t_start, beta0, dbeta0, t) {
            let e = (y[0] - b).abs() / b.abs().max(f64::MIN_POSITIVE);
            ref_err = Some(ref_err.map_or(e, |x: f64| x.max(e)));
        }
    };
    let y0 = [beta0, dbeta0, 0.0, 1.0];
    err_at(t_start, &y0);
    ode.integrate(rhs, t_start, y0, t_end, |s: &Step<4>| {
        steps += 1;
        let z = s.zeros(0, 8, 1e-12);
        zero_count += z.len();
        for t in z {
            if zeros.len() < 64 {
                zeros.push(t);
            }
        }
        for j in 1..=4 {
            let t = s.t0 + (s.t1 - s.t0) * j as f64 / 4.0;
            let y = if j == 4 { s.y1 } else { s.eval(t) };
            be_bed = be_bed.min(y[0] - y[1]);
            err_at(t, &y);
        }
        let y = s.y1;
        let w = y[0] * y[3] - y[2] * y[1];
        w_drift = w_drift.max((w - w0).abs() / w0.abs());
        while ri < ratio_times.len() && ratio_times[ri] <= s.t1 {
            let t = ratio_times[ri];
            let y = if t == s.t1 { s.y1 } else { s.eval(t) };
            ratio_samples.push((t, y[0] / kind.envelope(t)));
            ri += 1;
        }
        while ti < trace_times.len() && trace_times[ti] <= s.t1 {
            let t = trace_times[ti];
            let y = if t <= s.t0 { s.y0 } else if t == s.t1 { s.y1 } else { s.eval(t) };
            trace.push((t, y[0], y[1]));
            ti += 1;
        }
        Ok(true)
    })?;
    if ratio_samples.is_empty() {
        return Err(numerical("no ratio samples collected"));
    }
    let rs: Vec<f64> = ratio_samples.iter().map(|p| p.1).collect();
    let mean = rs.iter().sum::<f64>() / rs.len() as f64;
    let (lo, hi) = rs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    let ratio_drift = (hi - lo) / mean.abs();
    let (num, den) = ratio_samples.iter().fold((0.0, 0.0), |(n, d), &(t, r)| {
        let e = kind.envelope(t);
        (n + r * e * e, d + e * e)
    });
    Ok(OscillationReport {
        kind,
        t_start,
        t_end,
        beta0,
        dbeta0,
        zero_count,
        zeros,
        asymptotic_ratio_samples: ratio_samples,
        ratio_drift,
        ratio_constant: num / den,
        constraint_be_bed: be_bed,
        reference_max_rel_err: ref_err,
        wronskian_drift: w_drift,
        steps,
        trace,
    })
}

/// Potential of the ρ-form equation (ρ^{n−1}z′)′ + k(ρ)·((n−2)²/4ρ²)ρ^{n−1}z = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RhoPotential {
    /// k = κ(t(ρ)).
    Kappa,
    /// k ≡ 0; the solution is z ≡ 1.
    Zero,
}

#[derive(Debug, Clone, Serialize)]
pub struct RhoReport {
    pub n: usize,
    pub t_start: f64,
    pub t_end: f64,
    pub rho_start: f64,
    pub rho_end: f64,
    /// max over samples of ρ z′/|z|.
    pub z_prime_max: f64,
    pub z_prime_nonpositive: bool,
    pub z_min: f64,
    pub z_max: f64,
    /// max relative difference between β from the t-form and e^t z from the ρ-form.
    pub agreement_max_rel: f64,
    pub samples: usize,
}

/// t(ρ) = log(√(n−2) ρ^{(n−2)/2}).
pub fn t_of_rho(n: usize, rho: f64) -> f64 {
    let q = (n as f64 - 2.0) / 2.0;
    0.5 * (n as f64 - 2.0).ln() + q * rho.ln()
}

pub fn rho_of_t(n: usize, t: f64) -> f64 {
    let q = (n as f64 - 2.0) / 2.0;
    ((t - 0.5 * (n as f64 - 2.0).ln()) / q).exp()
}

/// Integrates the ρ-form with z(R) = 1, z′(R) = 0, checks z′ ≤ 0, and compares with
/// the t-form started from β(T) = β̇(T) = e^T.
pub fn rho_substitution_check(n: usize, t_start: f64, t_end: f64, potential: RhoPotential) -> Result<RhoReport> {
    if n < 3 {
        return Err(invalid(format!("the substitution needs n ≥ 3, got {n}")));
    }
    if !(t_start >= E && t_end > t_start) {
        return Err(invalid(format!("need e ≤ T < T_end, got [{t_start}, {t_end}]")));
    }
    let nf = n as f64;
    let q = (nf - 2.0) / 2.0;
    let (r0, r1) = (rho_of_t(n, t_start), rho_of_t(n, t_end));
    if !r1.is_finite() {
        return Err(invalid(format!("ρ(T_end) overflows for T_end = {t_end}")));
    }
    let k = |rho: f64| match potential {
        RhoPotential::Kappa => KappaPotential::value(t_of_rho(n, rho)),
        RhoPotential::Zero => 0.0,
    };
    // state (z, p = ρ^{n−1} z′)
    let rhs = |rho: f64, y: &[f64; 2]| {
        let w = rho.powf(nf - 1.0);
        [y[1] / w, -k(rho) * q * q / (rho * rho) * w * y[0]]
    };
    let times = log_spaced(t_start, t_end, 200);
    let rhos: Vec<f64> = times.iter().map(|&t| rho_of_t(n, t).clamp(r0, r1)).collect();
    let mut samples: Vec<(f64, f64, f64)> = Vec::new();
    let mut j = 0;
    let mut zp_max = f64::NEG_INFINITY;
    let (mut z_min, mut z_max) = (1.0f64, 1.0f64);
    let mut consider = |rho: f64, y: &[f64; 2], zp_max: &mut f64| {
        let zp = y[1] / rho.powf(nf - 1.0);
        *zp_max = zp_max.max(rho * zp / y[0].abs());
        z_min = z_min.min(y[0]);
        z_max = z_max.max(y[0]);
    };
    let ode = Dopri5 { rtol: 1e-12, atol: 1e-30, ..Default::default() };
    ode.integrate(rhs, r0, [1.0, 0.0], r1, |s: &Step<2>| {
        for jj in 1..=4 {
            let rho = s.t0 + (s.t1 - s.t0) * jj as f64 / 4.0;
            let y = if jj == 4 { s.y1 } else { s.eval(rho) };
            consider(rho, &y, &mut zp_max);
        }
        while j < rhos.len() && rhos[j] <= s.t1 {
            let y = if rhos[j] <= s.t0 { s.y0 } else if rhos[j] == s.t1 { s.y1 } else { s.eval(rhos[j]) };
            samples.push((times[j], y[0], y[1]));
            j += 1;
        }
        Ok(true)
    })?;
    let kind = match potential {
        RhoPotential::Kappa => BetaKind::KappaThreshold,
        RhoPotential::Zero => BetaKind::ConstantLambda { lambda: 0.0 },
    };
    let e0 = t_start.exp();
    let mut agreement: f64 = 0.0;
    let ode = Dopri5::with_tol(1e-12, 1e-14);
    let mut j = 0;
    ode.integrate(
        |t: f64, y: &[f64; 2]| [y[1], -kind.potential(t) * y[0]],
        t_start,
        [e0, e0],
        t_end,
        |s: &Step<2>| {
            while j < samples.len() && samples[j].0 <= s.t1 {
                let (t, z, _) = samples[j];
                let y = if t <= s.t0 { s.y0 } else if t == s.t1 { s.y1 } else { s.eval(t) };
                let from_rho = t.exp() * z;
                agreement = agreement.max((y[0] - from_rho).abs() / y[0].abs());
                j += 1;
            }
            Ok(true)
        },
    )?;
    Ok(RhoReport {
        n,
        t_start,
        t_end,
        rho_start: r0,
        rho_end: r1,
        z_prime_max: zp_max,
        z_prime_nonpositive: zp_max <= 1e-10,
        z_min,
        z_max,
        agreement_max_rel: agreement,
        samples: samples.len(),
    })
}

/// t·∫_t^∞ h for h = (1/4s²)(1 + 1/log²s), as 1/4 + (1/4)∫_0^∞ e^{−y}/(log t + y)² dy.
pub fn hille_nehari_value(t: f64) -> f64 {
    let l = t.ln();
    0.25 + 0.25 * integrate(|y| (-y).exp() / ((l + y) * (l + y)), 0.0, 60.0, 240)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct HnSample {
    pub t: f64,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub strict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HilleNehariReport {
    pub samples: Vec<HnSample>,
    pub all_strict: bool,
    /// t·∫_t^∞ 1/(4s²) = 1/4: the boundary case without the log correction.
    pub pure_euler_value: f64,
}

pub fn hille_nehari_probe(t_start: f64, t_end: f64, count: usize) -> Result<HilleNehariReport> {
    if !(t_start > E && t_end >= t_start && count > 0) {
        return Err(invalid(format!("need e < T ≤ T_end and samples > 0, got [{t_start}, {t_end}], {count}")));
    }
    let samples: Vec<HnSample> = log_spaced(t_start, t_end, count)
        .into_iter()
        .map(|t| {
            let value = hille_nehari_value(t);
            let upper = 0.25 + 0.25 / t.ln();
            HnSample { t, value, lower: 0.25, upper, strict: 0.25 < value && value < upper }
        })
        .collect();
    let all_strict = samples.iter().all(|s| s.strict);
    Ok(HilleNehariReport { samples, all_strict, pure_euler_value: 0.25 })
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalCurveReport {
    pub points: usize,
    pub max_rel_diff: f64,
    pub holds: bool,
}

/// κ(t) − 1 − 1/(4t²) against χ_{w²}(t) at log-spaced points of (e, e¹⁰).
pub fn critical_curve_identity(points: usize) -> CriticalCurveReport {
    let mut worst: f64 = 0.0;
    for j in 0..points {
        let t = (1.0 + 9.0 * (j as f64 + 0.5) / points as f64).exp();
        let (hi, lo) = KappaPotential::excess_split(t);
        let lhs = (hi - KappaPotential::euler_part(t)) + lo;
        let l = t.ln();
        let rhs = 0.25 / (t * t * l * l);
        worst = worst.max((lhs - rhs).abs() / rhs);
    }
    CriticalCurveReport { points, max_rel_diff: worst, holds: worst <= 1e-14 }
}

/// φ at parameter t = −log√G with C = 1: e^{−t}√(t log t)·log log t.
pub fn phi_of_t(t: f64) -> f64 {
    let l = t.ln();
    (-t).exp() * (t * l).sqrt() * l.ln()
}

/// φ = √G·√(−log√G·log(−log√G))·log log(−log√G) on the nodes where −log√G > e.
pub fn phi_envelope(g: &RadialFunction) -> Result<RadialFunction> {
    let grid = g.grid();
    let t: Vec<f64> = g.values().iter().map(|&v| -0.5 * v.ln()).collect();
    let start = t.iter().position(|&s| s > E).ok_or_else(|| invalid("−log√G never exceeds e on this window"))?;
    if t[start..].iter().any(|&s| !(s > E)) || grid.n() - start < 1 {
        return Err(invalid("−log√G must exceed e on a terminal window of at least two nodes"));
    }
    let sub = RadialGrid::new(grid.r(start), grid.r_max(), grid.n() - start)?;
    let values = g.values()[start..]
        .iter()
        .zip(&t[start..])
        .map(|(&gv, &s)| {
            let l = s.ln();
            gv.sqrt() * (s * l).sqrt() * l.ln()
        })
        .collect();
    RadialFunction::new(sub, values)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum BarrierMode {
    KappaThreshold,
    ConstantLambda { lambda: f64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct BarrierEnvelope {
    pub mode: BarrierMode,
    pub t_start: f64,
    pub r: Vec<f64>,
    pub t: Vec<f64>,
    pub g: Vec<f64>,
    pub u: Vec<f64>,
    pub beta: Vec<f64>,
    pub dbeta: Vec<f64>,
    pub a: Vec<f64>,
    pub grad_log: Vec<f64>,
    /// φ per the growth envelope with C = 1 (threshold mode, where t > e).
    pub phi: Option<Vec<f64>>,
    /// Relative residual (Δu + a u)/(flux scale + |a u|); NaN at the two end nodes.
    pub residual: Vec<f64>,
    pub residual_max: f64,
    pub certified_nodes: usize,
    pub certified: bool,
    /// (max − min)/mean of u/φ over the window (threshold mode).
    pub ratio_u_phi_drift: Option<f64>,
    /// (max − min)/mean of u/G^{(1−√(1−λ))/2} (constant mode, λ < 1).
    pub power_ratio_drift: Option<f64>,
    pub be_bed_min: f64,
}

impl BarrierEnvelope {
    pub fn grid(&self) -> Result<RadialGrid> {
        RadialGrid::new(self.r[0], *self.r.last().unwrap(), self.r.len() - 1)
    }
}

fn drift(v: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = v.collect();
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    let (lo, hi) = v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    (hi - lo) / mean.abs()
}

/// β on increasing times for the threshold equation with β(T) = β̇(T) = 1.
fn kappa_beta_at(t_start: f64, ts: &[f64]) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(ts.len());
    let t_end = *ts.last().unwrap();
    if t_end <= t_start {
        return Ok(ts.iter().map(|_| (1.0, 1.0)).collect());
    }
    let mut j = 0;
    while j < ts.len() && ts[j] <= t_start {
        out.push((1.0, 1.0));
        j += 1;
    }
    let kind = BetaKind::KappaThreshold;
    Dopri5::with_tol(1e-12, 1e-14).integrate(
        |t: f64, y: &[f64; 2]| [y[1], -kind.potential(t) * y[0]],
        t_start,
        [1.0, 1.0],
        t_end,
        |s: &Step<2>| {
            while j < ts.len() && ts[j] <= s.t1 {
                let y = if ts[j] == s.t1 { s.y1 } else { s.eval(ts[j]) };
                out.push((y[0], y[1]));
                j += 1;
            }
            Ok(true)
        },
    )?;
    while out.len() < ts.len() {
        out.push(*out.last().unwrap());
    }
    Ok(out)
}

/// Assembles u = √G·β(t) on {t ≥ T} and certifies Δu + a u ≤ 0 discretely.
pub fn finite_index_barrier(model: &ModelManifold, green: &GreenKernel, mode: BarrierMode, t_start: f64) -> Result<BarrierEnvelope> {
    if !green.nonparabolic {
        return Err(invalid("the model is parabolic: no Green kernel with G → 0"));
    }
    if let BarrierMode::ConstantLambda { lambda } = mode {
        if !(lambda <= 1.0) {
            return Err(invalid(format!("constant λ must satisfy λ ≤ 1, got {lambda}")));
        }
    }
    if mode == BarrierMode::KappaThreshold && !(t_start > 1.0) {
        return Err(invalid(format!("threshold mode needs T > 1, got {t_start}")));
    }
    let grid = green.grid.as_ref().ok_or_else(|| invalid("Green kernel has no grid"))?;
    let start = green.t.iter().position(|&t| t >= t_start).unwrap_or(green.t.len());
    if grid.n() < start + 2 {
        return Err(invalid(format!(
            "t(r) reaches only {:.4} on [0, R_max]; T = {t_start} needs a larger R_max",
            green.t.last().copied().unwrap_or(f64::NAN)
        )));
    }
    let sub = RadialGrid::new(grid.r(start), grid.r_max(), grid.n() - start)?;
    let r = sub.nodes();
    let g = green.values[start..].to_vec();
    let t = green.t[start..].to_vec();
    let grad_log = green.grad_log[start..].to_vec();
    let (beta, dbeta): (Vec<f64>, Vec<f64>) = match mode {
        BarrierMode::KappaThreshold => kappa_beta_at(t_start, &t)?.into_iter().unzip(),
        BarrierMode::ConstantLambda { lambda } => {
            let k = (1.0 - lambda).sqrt();
            if k == 0.0 {
                t.iter().map(|&s| (s, 1.0)).unzip()
            } else {
                t.iter().map(|&s| ((k * s).exp(), k * (k * s).exp())).unzip()
            }
        }
    };
    let u: Vec<f64> = (0..g.len()).map(|i| g[i].sqrt() * beta[i]).collect();
    let a: Vec<f64> = (0..g.len())
        .map(|i| {
            let mult = match mode {
                BarrierMode::KappaThreshold => KappaPotential::value(t[i]),
                BarrierMode::ConstantLambda { lambda } => lambda,
            };
            mult * grad_log[i] * grad_log[i] / 4.0
        })
        .collect();
    let op = RadialOperator::new(model, &sub);
    let mut residual = vec![f64::NAN; u.len()];
    let mut residual_max = f64::NEG_INFINITY;
    let mut certified_nodes = 0;
    for i in op.interior() {
        let au = a[i] * u[i];
        let res = (op.laplacian_at(&u, i) + au) / (op.flux_scale(&u, i) + au.abs());
        residual[i] = res;
        residual_max = residual_max.max(res);
        certified_nodes += 1;
    }
    let phi = match mode {
        BarrierMode::KappaThreshold => Some(t.iter().map(|&s| if s > E { phi_of_t(s) } else { f64::NAN }).collect::<Vec<_>>()),
        _ => None,
    };
    let ratio_u_phi_drift = phi.as_ref().and_then(|p| {
        let rs: Vec<f64> = (0..u.len()).filter(|&i| p[i].is_finite()).map(|i| u[i] / p[i]).collect();
        (rs.len() > 1).then(|| drift(rs.into_iter()))
    });
    let power_ratio_drift = match mode {
        BarrierMode::ConstantLambda { lambda } if lambda < 1.0 => {
            let e = (1.0 - (1.0 - lambda).sqrt()) / 2.0;
            Some(drift((0..u.len()).map(|i| u[i] / g[i].powf(e))))
        }
        _ => None,
    };
    let be_bed_min = beta.iter().zip(&dbeta).map(|(b, d)| b - d).fold(f64::INFINITY, f64::min);
    Ok(BarrierEnvelope {
        mode,
        t_start,
        r,
        t,
        g,
        u,
        beta,
        dbeta,
        a,
        grad_log,
        phi,
        residual,
        residual_max,
        certified_nodes,
        certified: certified_nodes > 0 && residual_max <= BARRIER_RESIDUAL_TOL,
        ratio_u_phi_drift,
        power_ratio_drift,
        be_bed_min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn critical_curve_points() {
        let e = E;
        assert!((critical_curve(e) - 1.0 / (4.0 * e * e)).abs() < 1e-18);
        assert!((critical_curve(e * e) / (1.0 / (16.0 * e.powi(4))) - 1.0).abs() < 1e-15);
        let rep = critical_curve_identity(1000);
        assert!(rep.holds, "{}", rep.max_rel_diff);
    }

    #[test]
    fn euler_reference_closed_form() {
        let w0 = E.sqrt();
        let rep = integrate_beta(BetaKind::EulerReference, E, E.powi(6), w0, 1.5 / w0).unwrap();
        assert!(rep.reference_max_rel_err.unwrap() < 1e-6);
        assert_eq!(rep.zero_count, 0);
        let (b, _) = BetaKind::EulerReference.closed_form(E, w0, 1.5 / w0, E.powi(3)).unwrap();
        assert!((b - E.powf(1.5) * 3.0).abs() < 1e-12);
    }

    #[test]
    fn kappa_is_nonoscillatory_with_control() {
        let rep = integrate_beta(BetaKind::KappaThreshold, DEFAULT_T, 1e6, 1.0, 1.0).unwrap();
        assert_eq!(rep.zero_count, 0);
        assert!(rep.constraint_be_bed >= -1e-10);
        assert!(rep.wronskian_drift < 1e-8, "{}", rep.wronskian_drift);
        let ctl = integrate_beta(BetaKind::SuperEuler { epsilon: 0.5 }, DEFAULT_T, 1e6, 1.0, 1.0).unwrap();
        assert!(ctl.zero_count >= 1);
    }

    #[test]
    fn kappa_matches_riemann_weber_basis() {
        // solutions are √(t log t)·(A log log t + B)
        let t0 = DEFAULT_T;
        let rep = integrate_beta(BetaKind::KappaThreshold, t0, 1e8, 1.0, 1.0).unwrap();
        let basis = |t: f64| {
            let l = t.ln();
            let s = (t * l).sqrt();
            let ds = (l + 1.0) / (2.0 * s);
            let ll = l.ln();
            ((s * ll, ds * ll + s / (t * l)), (s, ds))
        };
        let ((y2, d2), (y1, d1)) = basis(t0);
        let det = y2 * d1 - y1 * d2;
        let a = (1.0 * d1 - y1 * 1.0) / det;
        let b = (y2 * 1.0 - 1.0 * d2) / det;
        for &(t, beta, _) in rep.trace.iter().step_by(37) {
            let ((y2, _), (y1, _)) = basis(t);
            let exact = a * y2 + b * y1;
            assert!((beta / exact - 1.0).abs() < 1e-8, "t={t}");
        }
        assert!(rep.ratio_drift < 0.05, "{}", rep.ratio_drift);
    }

    #[test]
    fn constant_lambda_one() {
        let rep = integrate_beta(BetaKind::ConstantLambda { lambda: 1.0 }, DEFAULT_T, 1e3, DEFAULT_T, 1.0).unwrap();
        assert!(rep.reference_max_rel_err.unwrap() < 1e-12);
        assert!((rep.constraint_be_bed - (DEFAULT_T - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn rho_form() {
        let zero = rho_substitution_check(3, DEFAULT_T, 12.0, RhoPotential::Zero).unwrap();
        assert!((zero.z_min - 1.0).abs() < 1e-14 && (zero.z_max - 1.0).abs() < 1e-14);
        let k = rho_substitution_check(3, DEFAULT_T, 20.0, RhoPotential::Kappa).unwrap();
        assert!(k.z_prime_nonpositive, "{}", k.z_prime_max);
        assert!(k.agreement_max_rel < 1e-8, "{}", k.agreement_max_rel);
        let k5 = rho_substitution_check(5, DEFAULT_T, 20.0, RhoPotential::Kappa).unwrap();
        assert!(k5.z_prime_nonpositive && k5.agreement_max_rel < 1e-8);
    }

    #[test]
    fn hille_nehari() {
        let v = hille_nehari_value(E * E);
        assert!(0.25 < v && v < 0.375);
        let rep = hille_nehari_probe(E * E, 1e12, 100).unwrap();
        assert!(rep.all_strict);
        assert!(hille_nehari_value(1e300) - 0.25 < 1e-5);
    }

    #[test]
    fn phi_t_form() {
        let grid = RadialGrid::new(1.0, 2.0, 10).unwrap();
        let g = RadialFunction::from_fn(&grid, |r| (-2.0 * 5.0 * r).exp());
        let phi = phi_envelope(&g).unwrap();
        for (r, p) in phi.pairs() {
            assert!((p / phi_of_t(5.0 * r) - 1.0).abs() < 1e-13);
        }
        let small = RadialFunction::from_fn(&grid, |_| 0.5);
        assert!(phi_envelope(&small).is_err());
    }

    #[test]
    fn barrier_euclidean_constant_modes() {
        let model = ModelManifold::euclidean(3, 400.0).unwrap();
        let gk = model.green_kernel(20_000).unwrap();
        let b1 = finite_index_barrier(&model, &gk, BarrierMode::ConstantLambda { lambda: 1.0 }, 2.0).unwrap();
        assert!(b1.certified, "{}", b1.residual_max);
        for i in 0..b1.r.len() {
            let r = b1.r[i];
            let closed = 0.5 * r.ln() / r.sqrt();
            assert!((b1.u[i] / closed - 1.0).abs() < 1e-8);
        }
        let b0 = finite_index_barrier(&model, &gk, BarrierMode::ConstantLambda { lambda: 0.0 }, 2.0).unwrap();
        assert!(b0.u.iter().all(|&u| (u - 1.0).abs() < 1e-8));
        assert!(b0.power_ratio_drift.unwrap() < 1e-12);
        assert!(finite_index_barrier(&model, &gk, BarrierMode::KappaThreshold, 50.0).is_err());
    }
}
