//! Scalar root finding on monotone functions.

use crate::error::{numerical, Result};

/// Bisection for a sign change of `f` on `[lo, hi]`, `iters` halvings.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> Result<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(numerical(format!("no sign change on [{lo}, {hi}]")));
    }
    let s = flo.signum();
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Smallest `x > 0` with `pred(x)` for a predicate that is false below a threshold
/// and true above it. Brackets geometrically from `start`, then bisects `iters` times
/// and returns the upper end of the final bracket (where `pred` holds).
pub fn smallest_satisfying(pred: impl Fn(f64) -> bool, start: f64, iters: usize) -> Result<f64> {
    let mut hi = start.max(f64::MIN_POSITIVE);
    let mut k = 0;
    while !pred(hi) {
        hi *= 2.0;
        k += 1;
        if k > 2000 || !hi.is_finite() {
            return Err(numerical("inequality never satisfied while bracketing"));
        }
    }
    let mut lo = hi / 2.0;
    k = 0;
    while pred(lo) {
        hi = lo;
        lo /= 2.0;
        k += 1;
        if k > 2000 || lo == 0.0 {
            return Ok(hi);
        }
    }
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Bracketing bisection on an increasing function followed by Newton polishing.
pub fn increasing_root(f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64, tol: f64) -> Result<f64> {
    let mut lo = 1.0;
    let mut hi = 1.0;
    let mut k = 0;
    while f(lo) > 0.0 {
        lo /= 2.0;
        k += 1;
        if k > 2000 {
            return Err(numerical("no lower bracket"));
        }
    }
    k = 0;
    while f(hi) < 0.0 {
        hi *= 2.0;
        k += 1;
        if k > 2000 {
            return Err(numerical("no upper bracket"));
        }
    }
    let mut x = bisect(&f, lo, hi, 60)?;
    for _ in 0..50 {
        let d = df(x);
        if !(d > 0.0) {
            break;
        }
        let step = f(x) / d;
        let next = x - step;
        if !(next > lo && next < hi) {
            break;
        }
        x = next;
        if step.abs() <= tol * x.abs().max(1.0) {
            break;
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt2() {
        let x = bisect(|x| x * x - 2.0, 0.0, 2.0, 100).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-15);
        assert!(bisect(|x| x * x + 1.0, 0.0, 2.0, 10).is_err());
    }

    #[test]
    fn smallest_satisfying_threshold() {
        let x = smallest_satisfying(|x| x >= 3.7, 1.0, 60).unwrap();
        assert!(x >= 3.7 && x - 3.7 < 1e-12);
        let tiny = smallest_satisfying(|_| true, 1.0, 60).unwrap();
        assert!(tiny < 1e-300);
    }

    #[test]
    fn newton_polish() {
        let x = increasing_root(|t| t.powi(3) - t - 1.0 + 0.0 * t, |t| 3.0 * t * t - 1.0, 1e-15);
        // t^3 - t - 1 is increasing only for t > 1/sqrt 3, but the root lies there
        assert!((x.unwrap() - 1.324_717_957_244_746).abs() < 1e-14);
    }
}
