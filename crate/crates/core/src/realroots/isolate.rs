use num_traits::{Signed, Zero};

use super::{Certification, RootEnclosure, SturmChain};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::rational::{int, Rational, RationalInterval};

/// Isolates every distinct real root of `p` in the closed interval
/// `interval`, each in its own enclosure of width at most `tol`.
///
/// A root at zero is split off as `x^v` before the Sturm chain is built.
/// Rational roots met exactly (at an endpoint or a bisection midpoint) are
/// returned as point enclosures. Output is sorted ascending.
pub fn isolate_real_roots(
    p: &IntPoly,
    interval: &RationalInterval,
    tol: &Rational,
) -> Result<Vec<RootEnclosure>> {
    if !tol.is_positive() {
        return Err(Error::domain("tolerance must be positive"));
    }
    if p.is_zero() {
        return Err(Error::domain("cannot isolate roots of the zero polynomial"));
    }
    let v = p.valuation();
    let q = p.shift_down(v);
    let chain = SturmChain::new(&q)?;
    let iso = Isolator {
        p,
        chain: &chain,
        tol,
    };

    let (lo, hi) = (interval.lo().clone(), interval.hi().clone());
    let mut out = Vec::new();
    let zero = Rational::zero();
    if v > 0 && interval.contains(&zero) {
        out.push(RootEnclosure::exact(zero.clone()));
    }
    let s = chain.square_free();
    if s.sign_at(&lo) == 0 {
        out.push(RootEnclosure::exact(lo.clone()));
    }
    if lo < hi && s.sign_at(&hi) == 0 {
        out.push(RootEnclosure::exact(hi.clone()));
    }

    if lo < hi {
        // zero is a split point so no enclosure straddles the root at 0
        let mut cuts = vec![lo.clone()];
        if lo < zero && zero < hi {
            cuts.push(zero.clone());
        }
        cuts.push(hi.clone());
        for w in cuts.windows(2) {
            let c = chain.count_open(&w[0], &w[1]);
            iso.bisect(w[0].clone(), w[1].clone(), c, &mut out);
        }
    }
    out.sort_by(|a, b| a.lo().cmp(b.lo()));
    Ok(out)
}

struct Isolator<'a> {
    p: &'a IntPoly,
    chain: &'a SturmChain,
    tol: &'a Rational,
}

impl Isolator<'_> {
    /// `count` distinct roots lie in the open interval `(a, b)`.
    fn bisect(&self, a: Rational, b: Rational, count: usize, out: &mut Vec<RootEnclosure>) {
        match count {
            0 => {}
            1 => out.push(self.refine_single(a, b)),
            _ => {
                let mid = (&a + &b) / int(2);
                let left = self.chain.count_open(&a, &mid);
                let at_mid = self.chain.square_free().sign_at(&mid) == 0;
                let right = count - left - at_mid as usize;
                self.bisect(a, mid.clone(), left, out);
                if at_mid {
                    out.push(RootEnclosure::exact(mid.clone()));
                }
                self.bisect(mid, b, right, out);
            }
        }
    }

    /// Exactly one root lies in `(a, b)`; endpoints may be roots of other
    /// factors only through earlier exact splits.
    fn refine_single(&self, mut a: Rational, mut b: Rational) -> RootEnclosure {
        let s = self.chain.square_free();
        // move root endpoints inward until they are not roots themselves
        if s.sign_at(&a) == 0 {
            let mut step = (&b - &a) / int(2);
            loop {
                let cand = &a + &step;
                if s.sign_at(&cand) == 0 {
                    return RootEnclosure::exact(cand);
                }
                if self.chain.count_open(&cand, &b) == 1 {
                    a = cand;
                    break;
                }
                step /= int(2);
            }
        }
        if s.sign_at(&b) == 0 {
            let mut step = (&b - &a) / int(2);
            loop {
                let cand = &b - &step;
                if s.sign_at(&cand) == 0 {
                    return RootEnclosure::exact(cand);
                }
                if self.chain.count_open(&a, &cand) == 1 {
                    b = cand;
                    break;
                }
                step /= int(2);
            }
        }
        let sa = s.sign_at(&a);
        debug_assert_eq!(sa, -s.sign_at(&b));
        while &(&b - &a) > self.tol {
            let mid = (&a + &b) / int(2);
            match s.sign_at(&mid) {
                0 => return RootEnclosure::exact(mid),
                sm if sm == sa => a = mid,
                _ => b = mid,
            }
        }
        if let Some(r) = rational_root_in(s, &a, &b) {
            return RootEnclosure::exact(r);
        }
        certify(self.p, s, a, b)
    }
}

/// A rational root of `s` in `[a, b]`, if there is one. Any rational root
/// `u/v` in lowest terms has `v | lc(s)`, so only the grid `Z / lc(s)` needs
/// checking; narrow intervals contain few grid points.
pub(crate) fn rational_root_in(s: &IntPoly, a: &Rational, b: &Rational) -> Option<Rational> {
    const MAX_CANDIDATES: u32 = 8;
    let lc = s.leading()?.abs();
    let lc_q = Rational::from_integer(lc.clone());
    let first = (a * &lc_q).ceil().to_integer();
    let last = (b * &lc_q).floor().to_integer();
    let mut c = first;
    let mut tried = 0;
    while c <= last && tried < MAX_CANDIDATES {
        let q = Rational::new(c.clone(), lc.clone());
        if s.sign_at(&q) == 0 {
            return Some(q);
        }
        c += 1;
        tried += 1;
    }
    None
}

fn certify(p: &IntPoly, s: &IntPoly, a: Rational, b: Rational) -> RootEnclosure {
    let (pa, pb) = (p.sign_at(&a), p.sign_at(&b));
    let (sign_lo, sign_hi, certification) = if pa * pb < 0 {
        (pa, pb, Certification::SimpleCertified)
    } else {
        (s.sign_at(&a), s.sign_at(&b), Certification::SturmCounted)
    };
    RootEnclosure {
        interval: RationalInterval::new(a, b).expect("ordered"),
        sign_lo,
        sign_hi,
        certification,
    }
}

/// Narrows `enc` so that it no longer contains `x`, provided `x` is not the
/// enclosed root. Enclosures not containing `x` in their interior are
/// returned unchanged.
pub fn refine_excluding(p: &IntPoly, enc: &RootEnclosure, x: &Rational) -> Result<RootEnclosure> {
    if enc.is_exact() || !(enc.lo() < x && x < enc.hi()) {
        return Ok(enc.clone());
    }
    let v = p.valuation();
    let s = p.shift_down(v).square_free_part();
    if s.sign_at(x) == 0 {
        return Err(Error::domain(format!("{x} is the enclosed root")));
    }
    let sx = s.sign_at(x);
    let (a, b) = if s.sign_at(enc.lo()) != sx {
        (enc.lo().clone(), x.clone())
    } else {
        (x.clone(), enc.hi().clone())
    };
    Ok(certify(p, &s, a, b))
}
