//! Adaptive Dormand–Prince 5(4) integrator with the standard continuous extension.
//!
//! Accepted steps are handed to a callback that can evaluate the dense output anywhere
//! inside the step; event location (zero counting, sign checks) is done there.

use crate::error::{numerical, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

#[derive(Debug, Clone, Copy)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Dopri5 { rtol: 1e-12, atol: 1e-14, h_max: f64::INFINITY, max_steps: 2_000_000 }
    }
}

/// One accepted step with its interpolant.
#[derive(Debug, Clone)]
pub struct Step<const N: usize> {
    pub t0: f64,
    pub t1: f64,
    pub y0: [f64; N],
    pub y1: [f64; N],
    rcont: [[f64; N]; 5],
}

impl<const N: usize> Step<N> {
    /// Dense output at `t ∈ [t0, t1]`.
    pub fn eval(&self, t: f64) -> [f64; N] {
        let h = self.t1 - self.t0;
        let s = (t - self.t0) / h;
        let s1 = 1.0 - s;
        let r = &self.rcont;
        let mut y = [0.0; N];
        for i in 0..N {
            y[i] = r[0][i] + s * (r[1][i] + s1 * (r[2][i] + s * (r[3][i] + s1 * r[4][i])));
        }
        y
    }

    /// Zeros of component `k` inside the step: sign changes on a sub-sampling of the
    /// dense output, each refined by bisection to `tol` relative in t.
    pub fn zeros(&self, k: usize, sub: usize, tol: f64) -> Vec<f64> {
        let mut out = Vec::new();
        let h = self.t1 - self.t0;
        let mut ta = self.t0;
        let mut va = self.y0[k];
        for j in 1..=sub {
            let tb = if j == sub { self.t1 } else { self.t0 + h * j as f64 / sub as f64 };
            let vb = if j == sub { self.y1[k] } else { self.eval(tb)[k] };
            if va != 0.0 && (vb == 0.0 || va.signum() != vb.signum()) {
                let (mut lo, mut hi) = (ta, tb);
                while hi - lo > tol * hi.abs().max(1.0) {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    let vm = self.eval(mid)[k];
                    if vm == 0.0 || vm.signum() != va.signum() {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                out.push(0.5 * (lo + hi));
            }
            ta = tb;
            va = vb;
        }
        out
    }
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..N {
            out[i] += h * c * k[i];
        }
    }
    out
}

impl Dopri5 {
    pub fn with_tol(rtol: f64, atol: f64) -> Self {
        Dopri5 { rtol, atol, ..Default::default() }
    }

    /// Integrates `y' = f(t, y)` from `t0` to `t1 > t0`. `on_step` sees every accepted
    /// step and returns `Ok(false)` to stop early. Returns the final time and state.
    pub fn integrate<const N: usize>(
        &self,
        mut f: impl FnMut(f64, &[f64; N]) -> [f64; N],
        t0: f64,
        y0: [f64; N],
        t1: f64,
        mut on_step: impl FnMut(&Step<N>) -> Result<bool>,
    ) -> Result<(f64, [f64; N])> {
        if !(t1 > t0) {
            return Err(numerical(format!("integration interval [{t0}, {t1}] is empty")));
        }
        let mut t = t0;
        let mut y = y0;
        let mut k1 = f(t, &y);
        let mut h = (1e-6 * t.abs().max(1.0)).min(0.01 * (t1 - t0)).min(self.h_max);
        let mut steps = 0;
        while t < t1 {
            steps += 1;
            if steps > self.max_steps {
                return Err(numerical(format!("step budget exhausted at t = {t}")));
            }
            let last = t + h >= t1;
            if last {
                h = t1 - t;
            }
            let k2 = f(t + C2 * h, &axpy(&y, h, &[(A21, &k1)]));
            let k3 = f(t + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
            let k4 = f(t + C4 * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = f(t + C5 * h, &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
            let k6 = f(t + h, &axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]));
            let y1 = axpy(&y, h, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
            let k7 = f(t + h, &y1);
            let mut err = 0.0;
            for i in 0..N {
                let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let sc = self.atol + self.rtol * y[i].abs().max(y1[i].abs());
                err += (e / sc) * (e / sc);
            }
            let err = (err / N as f64).sqrt();
            if !err.is_finite() {
                h *= 0.1;
                if h < 1e-14 * t.abs().max(1.0) {
                    return Err(numerical(format!("step size underflow at t = {t}")));
                }
                continue;
            }
            let fac = (0.9 * err.powf(-0.2)).clamp(0.2, 10.0);
            if err <= 1.0 {
                let mut rcont = [[0.0; N]; 5];
                for i in 0..N {
                    let dy = y1[i] - y[i];
                    let bspl = h * k1[i] - dy;
                    rcont[0][i] = y[i];
                    rcont[1][i] = dy;
                    rcont[2][i] = bspl;
                    rcont[3][i] = dy - h * k7[i] - bspl;
                    rcont[4][i] = h
                        * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i]);
                }
                let t_new = if last { t1 } else { t + h };
                let step = Step { t0: t, t1: t_new, y0: y, y1, rcont };
                t = t_new;
                y = y1;
                k1 = k7;
                if !on_step(&step)? {
                    return Ok((t, y));
                }
                h = (h * fac).min(self.h_max);
            } else {
                h *= fac.min(1.0);
                if h < 1e-14 * t.abs().max(1.0) {
                    return Err(numerical(format!("step size underflow at t = {t}")));
                }
            }
        }
        Ok((t, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        let ode = Dopri5::default();
        let mut dense_err: f64 = 0.0;
        let mut zeros = Vec::new();
        let (_, y) = ode
            .integrate(
                |_, y: &[f64; 2]| [y[1], -y[0]],
                0.0,
                [0.0, 1.0],
                10.0,
                |s| {
                    let tm = 0.5 * (s.t0 + s.t1);
                    dense_err = dense_err.max((s.eval(tm)[0] - tm.sin()).abs());
                    zeros.extend(s.zeros(0, 4, 1e-13));
                    Ok(true)
                },
            )
            .unwrap();
        assert!((y[0] - 10f64.sin()).abs() < 1e-10);
        assert!(dense_err < 1e-9, "{dense_err}");
        let pis: Vec<f64> = (1..=3).map(|k| k as f64 * std::f64::consts::PI).collect();
        assert_eq!(zeros.len(), 3);
        for (z, p) in zeros.iter().zip(&pis) {
            assert!((z - p).abs() < 1e-9);
        }
    }

    #[test]
    fn early_stop() {
        let (t, _) = Dopri5::default()
            .integrate(|_, y: &[f64; 1]| [y[0]], 0.0, [1.0], 5.0, |s| Ok(s.t1 < 1.0))
            .unwrap();
        assert!((1.0..5.0).contains(&t));
    }
}
