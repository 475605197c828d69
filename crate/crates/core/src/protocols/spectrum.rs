use crate::error::{Error, Result};
use crate::measures::ProbabilityVector;
use crate::scalar::Real;

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// Finds `x` in `[lo, hi]` with `f(x) = target` for a decreasing `f`.
fn bisect(f: impl Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Shortest spectrum with Shannon entropy `target` bits.
///
/// `0` gives `(1)`; up to one bit the spectrum is `(p, 1-p)` with
/// `p ≥ 1/2`; above that it has `d = ⌈2^target⌉` entries
/// `(a, (1-a)/(d-1), …)`, collapsing to the uniform vector when `2^target`
/// is an integer.
pub fn entropy_to_spectrum<T: Real>(target: T) -> Result<ProbabilityVector<T>> {
    let t = target.as_f64();
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidParameter(format!("target entropy {t} must be a nonnegative number")));
    }
    if t < 1e-15 {
        return Ok(ProbabilityVector::point());
    }
    let size = 2f64.powf(t);
    let rounded = size.round();
    if (size - rounded).abs() < 1e-12 * rounded && rounded >= 2.0 {
        return Ok(ProbabilityVector::uniform(rounded as usize));
    }
    let entries = if t <= 1.0 {
        let p = bisect(|p| plogp(p) + plogp(1.0 - p), t, 0.5, 1.0);
        vec![p, 1.0 - p]
    } else {
        let d = size.ceil() as usize;
        let rest = (d - 1) as f64;
        let a = bisect(|a| plogp(a) + rest * plogp((1.0 - a) / rest), t, 1.0 / d as f64, 1.0);
        let mut v = vec![(1.0 - a) / rest; d];
        v[0] = a;
        v
    };
    ProbabilityVector::from_weights(entries.into_iter().map(T::lit).collect())
}
