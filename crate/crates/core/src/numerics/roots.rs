use crate::error::{Error, Result};

pub const BISECT_MAX_ITER: usize = 2000;

/// Solves `f(x) = target` for a monotone `f` on `[lo, hi]` by bisection.
///
/// Stops once `|f(x) - target| <= tol` or the bracket has shrunk to a few
/// ulps, in which case the endpoint with the smaller residual is returned.
/// A probe whose value leaves the range spanned by the current endpoint
/// values is reported as [`Error::NonMonotone`].
pub fn bisect_monotone<F>(mut f: F, target: f64, bracket: (f64, f64), tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = bracket;
    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!("invalid bracket [{lo}, {hi}]")));
    }
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    if f_lo.is_nan() || f_hi.is_nan() || target.is_nan() {
        return Err(Error::Bracket { target, f_lo, f_hi });
    }
    if (f_lo - target).abs() <= tol {
        return Ok(lo);
    }
    if (f_hi - target).abs() <= tol {
        return Ok(hi);
    }
    let increasing = f_hi >= f_lo;
    let (min_f, max_f) = if increasing { (f_lo, f_hi) } else { (f_hi, f_lo) };
    if target < min_f || target > max_f {
        return Err(Error::Bracket { target, f_lo, f_hi });
    }

    for _ in 0..BISECT_MAX_ITER {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        let (cur_min, cur_max) = if increasing { (f_lo, f_hi) } else { (f_hi, f_lo) };
        if f_mid.is_nan() || f_mid < cur_min - tol || f_mid > cur_max + tol {
            return Err(Error::NonMonotone { x: mid });
        }
        if (f_mid - target).abs() <= tol {
            return Ok(mid);
        }
        if (f_mid < target) == increasing {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    if (f_lo - target).abs() <= (f_hi - target).abs() {
        Ok(lo)
    } else {
        Ok(hi)
    }
}
