//! Dense univariate polynomials over arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Integer polynomial, coefficients in ascending degree order.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    /// `(1 + x)^n`, expanded with the row recurrence for binomials.
    pub fn one_plus_x_pow(n: usize) -> Self {
        IntPoly {
            coeffs: binomial_row(n),
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Multiplicity of the root at zero.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `x^k`; the low `k` coefficients must be zero.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        IntPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content, keeping the sign of every coefficient.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Primitive part normalised to a positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let p = self.primitive_part();
        if p.leading().is_some_and(|l| l.is_negative()) {
            -p
        } else {
            p
        }
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Remainder of `|lc(d)|^(deg self - deg d + 1) * self` by `d`.
    ///
    /// The multiplier is positive, so the result has the sign of the true
    /// remainder, which is what Sturm sequences need.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo division by zero");
        let Some(sd) = self.degree() else {
            return IntPoly::zero();
        };
        if sd < dd {
            return self.clone();
        }
        let lc = d.leading().unwrap();
        let lc_abs = lc.abs();
        let lc_pos = lc.is_positive();
        let mut r = self.coeffs.clone();
        let mut pending = sd - dd + 1;
        while r.len() > dd {
            let rd = r.len() - 1;
            let lead = r.pop().unwrap();
            for c in r.iter_mut() {
                *c *= &lc_abs;
            }
            pending -= 1;
            let shift = rd - dd;
            for (i, dc) in d.coeffs[..dd].iter().enumerate() {
                let t = &lead * dc;
                if lc_pos {
                    r[shift + i] -= t;
                } else {
                    r[shift + i] += t;
                }
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        if pending > 0 {
            let m = num_traits::pow(lc_abs, pending);
            for c in r.iter_mut() {
                *c *= &m;
            }
        }
        IntPoly::new(r)
    }

    /// Exact division; returns `None` if `d` does not divide `self` over Z.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        let Some(sd) = self.degree() else {
            return Some(IntPoly::zero());
        };
        if sd < dd {
            return None;
        }
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let (quo, rem) = r[k + dd].div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            if !quo.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &quo * dc;
                }
            }
            q[k] = quo;
        }
        if r.iter().all(Zero::is_zero) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    /// Gcd over Z via the primitive remainder sequence, normalised positive.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        let content = self.content().gcd(&other.content());
        a.normalized().scale(&content)
    }

    /// `p / gcd(p, p')`: same distinct roots, all simple.
    pub fn square_free_part(&self) -> IntPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.normalized();
        }
        let g = self.gcd(&self.derivative()).normalized();
        self.normalized()
            .div_exact(&g)
            .expect("gcd divides its argument")
            .normalized()
    }

    /// `p(x^m)`: coefficient `k` moves to `k*m`.
    pub fn spread(&self, m: usize) -> IntPoly {
        assert!(m >= 1);
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.degree().unwrap() * m + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * m] = c.clone();
        }
        IntPoly { coeffs }
    }

    /// `p(x + c)` for a small integer `c`, by repeated synthetic division.
    /// Quadratic in the degree but uses only additions and small multiples.
    pub fn taylor_shift(&self, c: i64) -> IntPoly {
        let mut a = self.coeffs.clone();
        let n = a.len();
        if n <= 1 || c == 0 {
            return self.clone();
        }
        let cb = BigInt::from(c);
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                let t = match c {
                    1 => a[j + 1].clone(),
                    -1 => -&a[j + 1],
                    _ => &a[j + 1] * &cb,
                };
                a[j] += t;
            }
        }
        IntPoly::new(a)
    }

    /// Exact value at a rational point.
    pub fn eval(&self, q: &Rational) -> Rational {
        let (num, den) = (q.numer(), q.denom());
        let value = self.eval_homogeneous(num, den);
        let d = self.degree().unwrap_or(0);
        Rational::new(value, num_traits::pow(den.clone(), d))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign (-1, 0, +1) of the value at a rational point.
    pub fn sign_at(&self, q: &Rational) -> i8 {
        sign_of(&self.eval_homogeneous(q.numer(), q.denom()))
    }

    /// `sum c_i a^i b^(d-i)` with `b > 0`, i.e. `b^d * p(a/b)`.
    ///
    /// Power-of-two denominators use shifts instead of multiplications, which
    /// keeps evaluation at dyadic points linear per step.
    pub fn eval_homogeneous(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let Some(d) = self.degree() else {
            return BigInt::zero();
        };
        if b.is_one() {
            return self.eval_int(a);
        }
        let mut acc = self.coeffs[d].clone();
        if let Some(e) = power_of_two_exponent(b) {
            for i in (0..d).rev() {
                acc *= a;
                let c = &self.coeffs[i];
                if !c.is_zero() {
                    acc += c << (e * (d - i) as u64);
                }
            }
        } else {
            let mut bpow = b.clone();
            for i in (0..d).rev() {
                acc *= a;
                let c = &self.coeffs[i];
                if !c.is_zero() {
                    acc += c * &bpow;
                }
                if i > 0 {
                    bpow *= b;
                }
            }
        }
        acc
    }

    /// Floating value; only used by seeding and reporting code.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Cauchy bound: every real root lies in `[-B, B]`.
    pub fn root_bound(&self) -> BigInt {
        let Some(lc) = self.leading() else {
            return BigInt::one();
        };
        let lc = lc.abs();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        BigInt::one() + max.div_ceil(&lc)
    }
}

fn power_of_two_exponent(b: &BigInt) -> Option<u64> {
    if b.sign() != Sign::Plus {
        return None;
    }
    let tz = b.trailing_zeros()?;
    if b.bits() == tz + 1 {
        Some(tz)
    } else {
        None
    }
}

pub(crate) fn sign_of(v: &BigInt) -> i8 {
    match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(c.clone());
    }
    row
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new(
            (0..n)
                .map(|i| self.coeff(i) + rhs.coeffs.get(i).unwrap_or(&BigInt::zero()))
                .collect(),
        )
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    /// Descending-degree form, e.g. `x^3 + 3x^2 + x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn display_and_degree() {
        assert_eq!(p(&[0, 2, 1]).to_string(), "x^2 + 2x");
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(p(&[0, 0, 0]).to_string(), "0");
        assert_eq!(p(&[0, 0, 0]).degree(), None);
        assert_eq!(p(&[0, 0, 3, 1]).valuation(), 2);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_row(4), [1, 4, 6, 4, 1].map(BigInt::from).to_vec());
        assert_eq!(binomial(64, 32).to_string(), "1832624140942590534");
        assert_eq!(IntPoly::one_plus_x_pow(3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn gcd_and_square_free() {
        let a = p(&[-1, 1]); // x - 1
        let b = p(&[2, 1]); // x + 2
        let sq = &(&a * &a) * &b;
        assert_eq!(sq.square_free_part(), &a * &b);
        assert_eq!(sq.gcd(&sq.derivative()), a);
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[-1, 1])), IntPoly::one());
    }

    #[test]
    fn pseudo_rem_sign_is_true_remainder_sign() {
        // x^2 + 1 divided by -2x: true remainder is +1
        let r = p(&[1, 0, 1]).pseudo_rem(&p(&[0, -2]));
        assert!(r.leading().unwrap().is_positive());
        assert_eq!(r.degree(), Some(0));
    }

    #[test]
    fn taylor_shift_matches_direct_substitution() {
        let q = p(&[3, -1, 0, 2, 5]);
        let shifted = q.taylor_shift(1);
        for x in -3..=3 {
            assert_eq!(shifted.eval_int(&BigInt::from(x)), q.eval_int(&BigInt::from(x + 1)));
        }
        assert_eq!(q.taylor_shift(1).taylor_shift(-1), q);
        assert_eq!(q.taylor_shift(-3).eval_int(&BigInt::from(5)), q.eval_int(&BigInt::from(2)));
    }

    #[test]
    fn eval_at_rationals() {
        let q = p(&[0, 2, 1]);
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        assert_eq!(q.eval(&r(-2, 1)), r(0, 1));
        assert_eq!(q.eval(&r(-1, 1)), r(-1, 1));
        assert_eq!(q.eval(&r(1, 3)), r(7, 9));
        assert_eq!(q.eval(&r(-3, 4)), r(-15, 16));
        assert_eq!(q.sign_at(&r(-3, 4)), -1);
        assert_eq!(q.sign_at(&r(-5, 2)), 1);
    }

    #[test]
    fn root_bound_contains_roots() {
        // roots 0, -2 for x^2 + 2x
        assert!(p(&[0, 2, 1]).root_bound() >= BigInt::from(2));
    }

    proptest! {
        #[test]
        fn div_exact_inverts_mul(a in proptest::collection::vec(-20i64..20, 1..6),
                                 b in proptest::collection::vec(-20i64..20, 1..6)) {
            let (a, b) = (p(&a), p(&b));
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b), Some(a));
        }

        #[test]
        fn homogeneous_eval_agrees_with_rational(c in proptest::collection::vec(-50i64..50, 1..8),
                                                 num in -40i64..40, e in 0u32..6, odd in 1i64..9) {
            let q = p(&c);
            for den in [1i64 << e, odd] {
                let x = Rational::new(num.into(), den.into());
                let direct = q.coeffs().iter().rev().fold(Rational::zero(), |acc, k| acc * &x + Rational::from(k.clone()));
                prop_assert_eq!(q.eval(&x), direct);
            }
        }
    }
}
