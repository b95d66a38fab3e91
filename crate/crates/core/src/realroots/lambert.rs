use std::f64::consts::E;

use crate::error::{Error, Result};

/// Principal branch of the Lambert W function on `[0, inf)`: the `w >= 0`
/// with `w * e^w = x`.
///
/// Halley iteration, seeded by `ln x - ln ln x + ln ln x / ln x` above `e`,
/// by the series `x - x^2` near zero, and by Winitzki's approximation in
/// between.
pub fn lambert_w(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 || !x.is_finite() {
        return Err(Error::domain(format!("lambert_w needs a finite x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let mut w = if x >= E {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    } else if x <= 0.5 {
        x * (1.0 - x)
    } else {
        let l = x.ln_1p();
        l * (1.0 - l.ln_1p() / (2.0 + l))
    };
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Ok(w)
}
