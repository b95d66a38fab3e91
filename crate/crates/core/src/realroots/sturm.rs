use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::rational::{Rational, RationalInterval};

/// Sturm sequence of the square-free part of a polynomial.
///
/// Element 0 is the square-free part `s`, element 1 its derivative, and each
/// later element is the negated pseudo-remainder of its two predecessors with
/// the content divided out (positive rescaling, so signs are preserved).
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::domain("Sturm chain of the zero polynomial"));
        }
        let s = p.square_free_part();
        let mut chain = vec![s.clone()];
        let d = s.derivative().primitive_part();
        if !d.is_zero() {
            chain.push(d);
            loop {
                let n = chain.len();
                let r = chain[n - 2].pseudo_rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(-r.primitive_part());
            }
        }
        Ok(SturmChain { chain })
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.chain
    }

    pub fn square_free(&self) -> &IntPoly {
        &self.chain[0]
    }

    /// Sign variations of the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &Rational) -> usize {
        count_variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    /// Variations at minus or plus infinity, from leading coefficients.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        count_variations(self.chain.iter().map(|p| {
            let lead = crate::poly::sign_of(p.leading().unwrap());
            let deg = p.degree().unwrap();
            if positive || deg % 2 == 0 {
                lead
            } else {
                -lead
            }
        }))
    }

    /// Total number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Distinct roots in the open interval `(a, b)`, valid even when `a` or
    /// `b` is itself a root: the variation count is right-continuous at
    /// roots of the square-free part.
    pub(crate) fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        debug_assert!(a < b);
        let va = self.variations(a);
        let vb = self.variations(b);
        let at_b = (self.square_free().sign_at(b) == 0) as usize;
        va - vb - at_b
    }
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Number of distinct real roots in `(lo, hi]`.
///
/// Neither endpoint may be a root of the square-free part; that case is
/// reported as [`Error::EndpointIsRoot`] so the caller can move the endpoint.
pub fn count_roots_in(chain: &SturmChain, interval: &RationalInterval) -> Result<usize> {
    let s = chain.square_free();
    for x in [interval.lo(), interval.hi()] {
        if s.sign_at(x) == 0 {
            return Err(Error::EndpointIsRoot(x.to_string()));
        }
    }
    if interval.is_point() {
        return Ok(0);
    }
    Ok(chain.variations(interval.lo()) - chain.variations(interval.hi()))
}
