//! Domination polynomials `D(G, x) = sum_k d_k x^k`, where `d_k` counts the
//! dominating sets of size `k`.
//!
//! Two general algorithms are provided and kept independent of each other:
//! a direct scan of all vertex subsets, and inclusion–exclusion over the set
//! of vertices left undominated. Closed forms for the named bipartite
//! families and composition with complete-graph substitution sit on top.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Family, Graph};
use crate::poly::{binomial, IntPoly};
use crate::rational::Rational;

/// Largest order accepted by [`dom_poly_bruteforce`].
pub const BRUTE_FORCE_MAX_ORDER: usize = 24;

/// Largest order accepted by [`dom_poly_inclusion_exclusion`].
pub const INCLUSION_EXCLUSION_MAX_ORDER: usize = 32;

/// Orders for which the `u64` fast path [`dom_poly_counts`] is exact.
pub const SMALL_COUNTS_MAX_ORDER: usize = 40;

/// A domination polynomial; `coeffs()[k]` is the number of dominating sets
/// of size `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DomPolynomial(IntPoly);

impl DomPolynomial {
    pub fn from_poly(p: IntPoly) -> Self {
        DomPolynomial(p)
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        DomPolynomial(IntPoly::new(coeffs))
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        DomPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The unit polynomial (identity for [`multiply`]).
    pub fn one() -> Self {
        DomPolynomial(IntPoly::one())
    }

    pub fn poly(&self) -> &IntPoly {
        &self.0
    }

    pub fn into_poly(self) -> IntPoly {
        self.0
    }

    pub fn coeffs(&self) -> &[BigInt] {
        self.0.coeffs()
    }

    /// Order of the underlying graph (the degree).
    pub fn order(&self) -> usize {
        self.0.degree().unwrap_or(0)
    }

    /// Domination number: index of the lowest nonzero coefficient.
    pub fn domination_number(&self) -> usize {
        self.0.valuation()
    }

    /// Checks the structural facts every domination polynomial of a graph of
    /// order `n >= 1` satisfies: monic of degree `n`, zero constant term,
    /// `0 < d_k <= C(n, k)` exactly for `k >= gamma`.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.order();
        let c = self.coeffs();
        if n == 0 {
            return Err(Error::Invariant("domination polynomial of order 0".into()));
        }
        if !c[n].is_one() {
            return Err(Error::Invariant(format!("leading coefficient {} is not 1", c[n])));
        }
        if !c[0].is_zero() {
            return Err(Error::Invariant("nonzero constant term".into()));
        }
        let gamma = self.domination_number();
        for (k, ck) in c.iter().enumerate() {
            if ck.is_negative() || *ck > binomial(n, k) {
                return Err(Error::Invariant(format!("d_{k} = {ck} out of [0, C({n},{k})]")));
            }
            if k >= gamma && ck.is_zero() {
                return Err(Error::Invariant(format!("d_{k} = 0 above gamma = {gamma}")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("serialisable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PolyJson =
            serde_json::from_str(text).map_err(|e| Error::parse(e.column(), e.to_string()))?;
        DomPolynomial::try_from(raw)
    }
}

impl fmt::Display for DomPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// JSON shape: `{"n": 4, "coeffs": ["0", "0", "6", "4", "1"]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub n: usize,
    pub coeffs: Vec<String>,
}

impl From<&DomPolynomial> for PolyJson {
    fn from(p: &DomPolynomial) -> Self {
        PolyJson {
            n: p.order(),
            coeffs: p.coeffs().iter().map(ToString::to_string).collect(),
        }
    }
}

impl TryFrom<PolyJson> for DomPolynomial {
    type Error = Error;

    fn try_from(raw: PolyJson) -> Result<Self> {
        if raw.coeffs.len() != raw.n + 1 {
            return Err(Error::parse(
                0,
                format!("expected {} coefficients, found {}", raw.n + 1, raw.coeffs.len()),
            ));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.parse::<BigInt>()
                    .map_err(|_| Error::parse(i, format!("coefficient {i} is not an integer: {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let p = DomPolynomial::from_coeffs(coeffs);
        if p.order() != raw.n {
            return Err(Error::parse(0, "leading coefficient is zero"));
        }
        Ok(p)
    }
}

fn check_cap(g: &Graph, limit: usize, what: &'static str) -> Result<()> {
    if g.order() > limit {
        return Err(Error::Capacity {
            what,
            requested: g.order(),
            limit,
        });
    }
    Ok(())
}

/// Counts dominating sets by testing every subset against every closed
/// neighbourhood.
pub fn dom_poly_bruteforce(g: &Graph) -> Result<DomPolynomial> {
    check_cap(g, BRUTE_FORCE_MAX_ORDER, "brute-force order")?;
    let n = g.order();
    let nbhd: Vec<u64> = (0..n).map(|v| g.closed_neighborhood(v)).collect();
    let mut counts = vec![0u64; n + 1];
    for s in 0u64..1 << n {
        if nbhd.iter().all(|&nv| nv & s != 0) {
            counts[s.count_ones() as usize] += 1;
        }
    }
    Ok(DomPolynomial::from_u64s(&counts))
}

/// `h[j] = sum over A with |V \ N[A]| = j of (-1)^|A|`.
///
/// Subsets are visited in Gray-code order so `N[A]` is maintained with
/// per-vertex coverage counters, one vertex toggled per step.
pub fn undominated_histogram(g: &Graph) -> Result<Vec<i64>> {
    check_cap(g, INCLUSION_EXCLUSION_MAX_ORDER, "inclusion-exclusion order")?;
    let n = g.order();
    let nbhd: Vec<u64> = (0..n).map(|v| g.closed_neighborhood(v)).collect();
    let mut cover = [0u8; 64];
    let mut covered = 0usize;
    let mut hist = vec![0i64; n + 1];
    hist[n] = 1;
    let mut gray = 0u64;
    for i in 1u64..1 << n {
        let v = i.trailing_zeros() as usize;
        gray ^= 1 << v;
        let mut rest = nbhd[v];
        if gray >> v & 1 == 1 {
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                cover[u] += 1;
                covered += (cover[u] == 1) as usize;
            }
        } else {
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                cover[u] -= 1;
                covered -= (cover[u] == 0) as usize;
            }
        }
        let sign = if gray.count_ones() & 1 == 1 { -1 } else { 1 };
        hist[n - covered] += sign;
    }
    Ok(hist)
}

/// `D(G, x) = sum_{A ⊆ V} (-1)^|A| (1 + x)^(n - |N[A]|)`.
pub fn dom_poly_inclusion_exclusion(g: &Graph) -> Result<DomPolynomial> {
    let hist = undominated_histogram(g)?;
    let n = g.order();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (j, &h) in hist.iter().enumerate() {
        if h == 0 {
            continue;
        }
        let h = BigInt::from(h);
        let mut c = BigInt::one();
        for (k, slot) in coeffs.iter_mut().enumerate().take(j + 1) {
            *slot += &h * &c;
            c = c * BigInt::from(j - k) / BigInt::from(k + 1);
        }
    }
    Ok(DomPolynomial::from_coeffs(coeffs))
}

/// Same result as [`dom_poly_inclusion_exclusion`] as plain `u64`
/// coefficients, for sweeps over many small graphs.
pub fn dom_poly_counts(g: &Graph) -> Result<Vec<u64>> {
    check_cap(g, SMALL_COUNTS_MAX_ORDER.min(INCLUSION_EXCLUSION_MAX_ORDER), "small-count order")?;
    let hist = undominated_histogram(g)?;
    let n = g.order();
    let mut acc = vec![0i128; n + 1];
    for (j, &h) in hist.iter().enumerate() {
        if h == 0 {
            continue;
        }
        let mut c: i128 = 1;
        for (k, slot) in acc.iter_mut().enumerate().take(j + 1) {
            *slot += h as i128 * c;
            c = c * (j - k) as i128 / (k + 1) as i128;
        }
    }
    acc.into_iter()
        .map(|c| u64::try_from(c).map_err(|_| Error::Invariant(format!("count {c} out of range"))))
        .collect()
}

/// Expands the closed form for a named family.
pub fn dom_poly_closed_form(family: Family) -> Result<DomPolynomial> {
    family.validate()?;
    let opx = IntPoly::one_plus_x_pow;
    let x = IntPoly::monomial;
    let one = IntPoly::one();
    let p = match family {
        Family::Complete(n) => &opx(n) - &one,
        Family::Empty(n) => x(n),
        Family::CompleteBipartite(k, l) => {
            // ((1+x)^k - 1)((1+x)^l - 1) + x^k + x^l
            let prod = &(&opx(k) - &one) * &(&opx(l) - &one);
            &(&prod + &x(k)) + &x(l)
        }
        Family::K2Ell(l) => {
            // (1+x)^l (x^2 + 2x) + x^l - 2x
            let head = &opx(l) * &IntPoly::from_i64s(&[0, 2, 1]);
            &(&head + &x(l)) - &IntPoly::from_i64s(&[0, 2])
        }
        Family::Kkk(k) => {
            // (1+x)^(2k) - 2(1+x)^k + 2x^k + 1
            let two = BigInt::from(2);
            let s = &opx(2 * k) - &opx(k).scale(&two);
            &(&s + &x(k).scale(&two)) + &one
        }
        Family::Star(k) => {
            // x(x+1)^k + x^k
            &(&x(1) * &opx(k)) + &x(k)
        }
    };
    Ok(DomPolynomial(p))
}

/// `P((1 + x)^m - 1)`, the domination polynomial of `G[K_m]` when `P = D(G)`.
///
/// Computed as `C(t^m)` at `t = 1 + x`, where `C(u) = P(u - 1)`: two Taylor
/// shifts by one around a coefficient spread, all in exact integers.
pub fn compose_with_complete(p: &DomPolynomial, m: usize) -> Result<DomPolynomial> {
    if m == 0 {
        return Err(Error::domain("substitution order must be at least 1"));
    }
    if m == 1 {
        return Ok(p.clone());
    }
    let c = p.poly().taylor_shift(-1);
    Ok(DomPolynomial(c.spread(m).taylor_shift(1)))
}

pub fn eval_rational(p: &DomPolynomial, q: &Rational) -> Rational {
    p.poly().eval(q)
}

/// `D(G ⊔ H) = D(G) D(H)`.
pub fn multiply(p: &DomPolynomial, q: &DomPolynomial) -> DomPolynomial {
    DomPolynomial(p.poly() * q.poly())
}
