//! The root sequence of stars.
//!
//! With `x = -R`, `D(K_{1,k}, x) = (-1)^(k+1) g_k(R)` where
//! `g_k(R) = R (R - 1)^k - R^k`. On `(1, inf)` the function `g_k` has a
//! single root `r_k` (`(R/(R-1))^k` decreases while `R` increases), with
//! `g_k < 0` to its left and `g_k > 0` to its right, so sign bisection alone
//! certifies it.

use num_traits::{One, Signed};

use super::{lambert_w, Certification, RootEnclosure};
use crate::error::{Error, Result};
use crate::poly::{sign_of, IntPoly};
use crate::rational::{
    bits_for_tolerance, dyadic_ceil, dyadic_floor, int, to_f64, to_fixed, Rational,
    RationalInterval, Round,
};

/// `g_k(R) = R (R - 1)^k - R^k` as an integer polynomial.
pub fn star_polynomial(k: usize) -> IntPoly {
    let shifted = IntPoly::from_i64s(&[-1, 1]).pow(k);
    &(&IntPoly::monomial(1) * &shifted) - &IntPoly::monomial(k)
}

/// Sign of `g_k(q)`, evaluated as `a (a - b)^k - a^k b` for `q = a/b`.
pub fn star_sign(k: usize, q: &Rational) -> i8 {
    let (a, b) = (q.numer(), q.denom());
    let left = a * num_traits::pow(a - b, k);
    let right = num_traits::pow(a.clone(), k) * b;
    sign_of(&(left - right))
}

/// Leading terms of the asymptotic expansion
/// `r_k ~ k / W(k) + W(k) / (2 (1 + W(k)))`.
pub fn star_root_estimate(k: usize) -> f64 {
    let kf = k as f64;
    let w = lambert_w(kf).expect("k >= 0");
    kf / w + w / (2.0 * (1.0 + w))
}

/// Certified enclosure of `r_k`, the unique root of `g_k` in `(1, inf)`,
/// of width at most `tol`. Endpoint signs refer to `g_k`.
pub fn star_root(k: usize, tol: &Rational) -> Result<RootEnclosure> {
    if k == 0 {
        return Err(Error::domain("star parameter must be at least 1"));
    }
    if !tol.is_positive() {
        return Err(Error::domain("tolerance must be positive"));
    }
    let bits = bits_for_tolerance(tol) + 2;
    let est = Rational::from_float(star_root_estimate(k)).expect("finite estimate");

    let one = Rational::one();
    let mut lo = dyadic_floor(&(&est - int(1)), bits);
    if lo <= one || star_sign(k, &lo) >= 0 {
        lo = one;
    }
    let mut hi = dyadic_ceil(&(&est + int(1)), bits).max(int(2));
    loop {
        match star_sign(k, &hi) {
            1 => break,
            0 => return Ok(RootEnclosure::exact(hi)),
            _ => {
                lo = hi.clone();
                hi *= int(2);
            }
        }
    }
    while &(&hi - &lo) > tol {
        let mid = (&lo + &hi) / int(2);
        match star_sign(k, &mid) {
            0 => return Ok(RootEnclosure::exact(mid)),
            1 => hi = mid,
            _ => lo = mid,
        }
    }
    // g_k is monic, so a rational r_k would be an integer (r_1 = 2)
    let r = Rational::from_integer(lo.ceil().to_integer());
    if r <= hi && star_sign(k, &r) == 0 {
        return Ok(RootEnclosure::exact(r));
    }
    Ok(RootEnclosure {
        interval: RationalInterval::new(lo, hi)?,
        sign_lo: -1,
        sign_hi: 1,
        certification: Certification::SimpleCertified,
    })
}

/// Enclosure of the domination root `-r_k` of `K_{1,k}`, endpoint signs
/// referring to `D(K_{1,k}, x)`.
pub fn star_domination_root(k: usize, tol: &Rational) -> Result<RootEnclosure> {
    let flip = if k.is_multiple_of(2) { -1 } else { 1 };
    Ok(star_root(k, tol)?.negated(flip))
}

#[derive(Clone, Debug, PartialEq)]
pub struct StarGapRecord {
    pub k: usize,
    pub root: RootEnclosure,
    /// Distance between the midpoints of the enclosures of `r_{k+1}` and `r_k`.
    pub gap: Rational,
    /// `r_k`'s enclosure lies strictly left of `r_{k+1}`'s.
    pub increasing: bool,
    pub estimate: f64,
    pub abs_err: f64,
}

/// Certified `r_1, ..., r_{k_max}` with successive gaps and the error of the
/// two-term asymptotic estimate.
pub fn star_gap_report(k_max: usize, tol: &Rational) -> Result<Vec<StarGapRecord>> {
    if k_max < 2 {
        return Err(Error::domain("star gap report needs k_max >= 2"));
    }
    let roots: Vec<RootEnclosure> = (1..=k_max + 1)
        .map(|k| star_root(k, tol))
        .collect::<Result<_>>()?;
    Ok(roots
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let k = i + 1;
            let mid = w[0].interval.midpoint();
            let estimate = star_root_estimate(k);
            StarGapRecord {
                k,
                root: w[0].clone(),
                gap: w[1].interval.midpoint() - &mid,
                increasing: w[0].hi() < w[1].lo(),
                estimate,
                abs_err: (to_f64(&mid) - estimate).abs(),
            }
        })
        .collect())
}

/// CSV with header `k,r_k_lo,r_k_hi,gap,estimate,abs_err`; exact values are
/// printed with 12 fractional digits, rounded outward for the enclosure.
pub fn star_gap_csv(records: &[StarGapRecord]) -> String {
    let mut out = String::from("k,r_k_lo,r_k_hi,gap,estimate,abs_err\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{:.12},{:.12}\n",
            r.k,
            to_fixed(r.root.lo(), 12, Round::Down),
            to_fixed(r.root.hi(), 12, Round::Up),
            to_fixed(&r.gap, 12, Round::Nearest),
            r.estimate,
            r.abs_err
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dompoly::{dom_poly_closed_form, eval_rational};
    use crate::graph::Family;
    use crate::rational::{pow10_inv, ratio};
    use num_bigint::BigInt;

    fn eval_homogeneous_check(k: usize, q: &Rational) -> BigInt {
        star_polynomial(k).eval_homogeneous(q.numer(), q.denom())
    }

    #[test]
    fn polynomial_shape() {
        // g_1 = R^2 - 2R
        assert_eq!(star_polynomial(1), IntPoly::from_i64s(&[0, -2, 1]));
        // g_2 = R(R-1)^2 - R^2 = R^3 - 3R^2 + R
        assert_eq!(star_polynomial(2), IntPoly::from_i64s(&[0, 1, -3, 1]));
    }

    #[test]
    fn fast_sign_matches_polynomial() {
        for k in 1..12 {
            for q in [ratio(3, 2), ratio(7, 3), int(5), ratio(-1, 2), ratio(41, 8)] {
                let full = sign_of(&eval_homogeneous_check(k, &q));
                assert_eq!(star_sign(k, &q), full, "k={k} q={q}");
            }
        }
    }

    #[test]
    fn first_roots() {
        let tol = pow10_inv(9);
        assert_eq!(star_root(1, &tol).unwrap(), RootEnclosure::exact(int(2)));
        let r2 = star_root(2, &tol).unwrap();
        assert!((r2.midpoint_f64() - 2.618033989).abs() < 1e-9);
        let r8 = star_root(8, &tol).unwrap();
        assert!((r8.midpoint_f64() - 5.309330065).abs() < 1e-9);
        assert!(r8.interval.width() <= tol);
        assert!(star_root(0, &tol).is_err());
    }

    #[test]
    fn negated_root_is_a_star_domination_root() {
        let tol = pow10_inv(9);
        for k in 1..10 {
            let enc = star_domination_root(k, &tol).unwrap();
            let d = dom_poly_closed_form(Family::Star(k)).unwrap();
            if enc.is_exact() {
                assert_eq!(eval_rational(&d, enc.lo()), int(0));
            } else {
                assert_eq!(d.poly().sign_at(enc.lo()), enc.sign_lo);
                assert_eq!(d.poly().sign_at(enc.hi()), enc.sign_hi);
                assert_eq!(enc.sign_lo, -enc.sign_hi);
            }
        }
    }

    #[test]
    fn estimate_is_close_for_small_k() {
        let r2 = star_root(2, &pow10_inv(9)).unwrap().midpoint_f64();
        assert!((star_root_estimate(2) - r2).abs() < 0.5);
    }

    #[test]
    fn gap_report_and_csv() {
        let recs = star_gap_report(3, &pow10_inv(9)).unwrap();
        assert_eq!(recs.len(), 3);
        assert!((to_f64(&recs[0].gap) - 0.618034).abs() < 1e-6);
        assert!(recs.iter().all(|r| r.increasing));
        let csv = star_gap_csv(&recs);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("k,r_k_lo,r_k_hi,gap,estimate,abs_err"));
        assert!(lines.next().unwrap().starts_with("1,2.000000000000,2.000000000000,0.618033"));
        assert!(star_gap_report(1, &pow10_inv(9)).is_err());
    }
}
