//! Explicit witnesses that real domination roots are dense in `(-inf, 0]`.
//!
//! For odd `m` the map `y(x) = (1 + x)^m - 1` is an increasing bijection of
//! the real line, and `D(G[K_m], x) = D(G, y(x))`. So the roots of the
//! composed polynomial in a window `(a, b)` correspond one to one with the
//! roots of `D(G)` in `(y(a), y(b))`. The search counts and refines on the
//! family polynomial through this map and never expands the composed
//! polynomial, whose degree reaches the tens of thousands for targets far
//! left of `-2`.
//!
//! Families by regime: `K_{2,l}` with `l` odd in `(-2, -1)`, `K_{k,k}` with
//! `k` odd in `(-1, 0)`, and stars left of `-2`. The exact roots `0` and `-2`
//! of `K_2` short-circuit windows containing them.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dompoly::{
    compose_with_complete, dom_poly_bruteforce, dom_poly_closed_form, DomPolynomial,
};
use crate::error::{Error, Result};
use crate::graph::Family;
use crate::poly::IntPoly;
use crate::rational::{int, pow10_inv, ratio_str, Rational, RationalInterval};
use crate::realroots::{star_sign, Certification, RootEnclosure, SturmChain};

/// Width of emitted enclosures.
pub const WITNESS_TOLERANCE_DIGITS: u32 = 9;

/// Composed degree up to which verification also expands the composed
/// polynomial and compares it with the evaluation through the map.
pub const EXPAND_MAX_DEGREE: usize = 2000;

/// Witness graphs up to this order are cross-checked by brute force.
pub const BRUTE_FORCE_CHECK_MAX_ORDER: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Largest substitution order tried; only odd orders are used.
    pub max_m: usize,
    pub max_param: usize,
    /// Largest degree of the composed polynomial `D(G[K_m])`.
    pub max_degree: usize,
}

impl Default for SearchBudget {
    /// Large enough for `|z| <= 10` at `eps = 0.01`, where the star witness
    /// for `z = -10` is `K_{1,4792}[K_3]`.
    fn default() -> Self {
        SearchBudget {
            max_m: 41,
            max_param: 5001,
            max_degree: 16000,
        }
    }
}

impl SearchBudget {
    pub fn validate(&self) -> Result<()> {
        if self.max_m == 0 || self.max_param == 0 || self.max_degree == 0 {
            return Err(Error::domain("search budget bounds must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "name", content = "param")]
pub enum WitnessFamily {
    #[serde(rename = "exact_K2")]
    ExactK2,
    #[serde(rename = "K_2_ell")]
    K2Ell(usize),
    #[serde(rename = "K_k_k")]
    Kkk(usize),
    #[serde(rename = "star")]
    Star(usize),
}

impl WitnessFamily {
    pub fn family(&self) -> Family {
        match *self {
            WitnessFamily::ExactK2 => Family::Complete(2),
            WitnessFamily::K2Ell(l) => Family::K2Ell(l),
            WitnessFamily::Kkk(k) => Family::Kkk(k),
            WitnessFamily::Star(k) => Family::Star(k),
        }
    }

    fn degree(&self) -> usize {
        self.family().order()
    }
}

impl fmt::Display for WitnessFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessFamily::ExactK2 => write!(f, "K_2"),
            WitnessFamily::K2Ell(l) => write!(f, "K_{{2,{l}}}"),
            WitnessFamily::Kkk(k) => write!(f, "K_{{{k},{k}}}"),
            WitnessFamily::Star(k) => write!(f, "K_{{1,{k}}}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "case-1.1")]
    LeftOfMinusOne,
    #[serde(rename = "case-1.2")]
    RightOfMinusOne,
    #[serde(rename = "case-2")]
    LeftOfMinusTwo,
    #[serde(rename = "exact")]
    Exact,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::LeftOfMinusOne => "case-1.1",
            CaseTag::RightOfMinusOne => "case-1.2",
            CaseTag::LeftOfMinusTwo => "case-2",
            CaseTag::Exact => "exact",
        }
    }
}

/// A root of `D(family[K_m])` certified inside `(target_z - epsilon,
/// target_z + epsilon)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    #[serde(with = "ratio_str")]
    pub target_z: Rational,
    #[serde(with = "ratio_str")]
    pub epsilon: Rational,
    pub family: WitnessFamily,
    pub m: usize,
    pub composed_degree: usize,
    pub enclosure: RootEnclosure,
    pub case_tag: CaseTag,
}

impl WitnessCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.column(), e.to_string()))
    }

    /// Vertex count of the witness graph `family[K_m]`.
    pub fn graph_order(&self) -> usize {
        self.family.family().order() * self.m
    }
}

/// `y(x) = (1 + x)^m - 1`.
fn power_map(x: &Rational, m: usize) -> Rational {
    num_traits::pow(x + Rational::one(), m) - Rational::one()
}

/// `((z - eps + 1)^m - 1, (z + eps + 1)^m - 1)`, the image of the target
/// window under the power map.
pub fn target_interval(z: &Rational, eps: &Rational, m: usize) -> Result<RationalInterval> {
    if !eps.is_positive() {
        return Err(Error::domain("epsilon must be positive"));
    }
    if m == 0 || m.is_multiple_of(2) {
        return Err(Error::domain(format!("substitution order must be odd, got {m}")));
    }
    RationalInterval::new(power_map(&(z - eps), m), power_map(&(z + eps), m))
}

/// Window `(lo, hi)` clipped into a single regime.
struct Regime {
    case: CaseTag,
    lo: Rational,
    hi: Rational,
}

fn regime(lo: &Rational, hi: &Rational) -> Regime {
    let (m1, m2) = (int(-1), int(-2));
    let (case, cap) = if *lo >= m1 {
        (CaseTag::RightOfMinusOne, Rational::zero())
    } else if *lo >= m2 {
        (CaseTag::LeftOfMinusOne, m1)
    } else {
        (CaseTag::LeftOfMinusTwo, m2)
    };
    Regime {
        case,
        lo: lo.clone(),
        hi: hi.clone().min(cap),
    }
}

/// Searches `(m, parameter)` cells in order of `m + parameter` (ties by
/// smaller `m`) for a domination root inside `(z - eps, z + eps)`.
pub fn construct_witness(
    z: &Rational,
    eps: &Rational,
    budget: &SearchBudget,
) -> Result<WitnessCertificate> {
    if z.is_positive() {
        return Err(Error::domain(format!("target must satisfy z <= 0, got {z}")));
    }
    if !eps.is_positive() {
        return Err(Error::domain("epsilon must be positive"));
    }
    budget.validate()?;
    let (lo, hi) = (z - eps, z + eps);
    let cert = |family, m, enclosure, case_tag| WitnessCertificate {
        target_z: z.clone(),
        epsilon: eps.clone(),
        family,
        m,
        composed_degree: m * WitnessFamily::degree(&family),
        enclosure,
        case_tag,
    };
    for r in [Rational::zero(), int(-2)] {
        if lo < r && r < hi {
            return Ok(cert(WitnessFamily::ExactK2, 1, RootEnclosure::exact(r), CaseTag::Exact));
        }
    }

    let reg = regime(&lo, &hi);
    let tol = pow10_inv(WITNESS_TOLERANCE_DIGITS);
    let (family, m, enclosure) = match reg.case {
        CaseTag::LeftOfMinusTwo => {
            let (k, m) = star_search(&reg, budget)?;
            let enc = refine_star(k, m, &reg.lo, &reg.hi, &lo, &hi, &tol);
            (WitnessFamily::Star(k), m, enc)
        }
        case => bipartite_search(case, &reg, &lo, &hi, &tol, budget)?,
    };
    Ok(cert(family, m, enclosure, reg.case))
}

fn exhausted(budget: &SearchBudget, what: &str) -> Error {
    Error::BudgetExhausted(format!(
        "no {what} witness with odd m <= {}, parameter <= {}, composed degree <= {}; \
         searched every diagonal m + parameter <= {}",
        budget.max_m,
        budget.max_param,
        budget.max_degree,
        budget.max_m + budget.max_param
    ))
}

/// Star roots `-r_k` are the only roots of `D(K_{1,k})` below `-1`, and
/// `r_k` does not decrease in `k`: `g_k(R) < 0` means `(R/(R-1))^k > R`,
/// which persists for larger `k`. For each `m` the hits therefore start at
/// the least `k` with `r_k` above the left end of the window, found by
/// binary search, and the earliest diagonal is the minimum over `m`.
fn star_search(reg: &Regime, budget: &SearchBudget) -> Result<(usize, usize)> {
    let best = (1..=budget.max_m)
        .step_by(2)
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter_map(|m| {
            // R-scale window (a, b) with R = -y
            let a = -power_map(&reg.hi, m);
            let b = -power_map(&reg.lo, m);
            let k_cap = budget.max_param.min((budget.max_degree / m).checked_sub(1)?);
            if k_cap == 0 || star_sign(k_cap, &a) >= 0 {
                return None;
            }
            let (mut lo, mut hi) = (0usize, k_cap);
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                if star_sign(mid, &a) < 0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            (star_sign(hi, &b) > 0).then_some((m + hi, m, hi))
        })
        .min();
    best.map(|(_, m, k)| (k, m))
        .ok_or_else(|| exhausted(budget, "star"))
}

/// Sign of `D(K_{1,k}, y)` for `y < -1`.
fn star_dom_sign(k: usize, y: &Rational) -> i8 {
    let s = star_sign(k, &-y);
    if k.is_multiple_of(2) {
        -s
    } else {
        s
    }
}

/// Bisects in `x` until the enclosure is narrower than `tol` and clear of
/// the target window's own ends.
fn refine_star(
    k: usize,
    m: usize,
    a: &Rational,
    b: &Rational,
    win_lo: &Rational,
    win_hi: &Rational,
    tol: &Rational,
) -> RootEnclosure {
    // g_k(-y(x)) is positive left of the root and negative right of it
    let g = |x: &Rational| star_sign(k, &-power_map(x, m));
    let (mut a, mut b) = (a.clone(), b.clone());
    while &(&b - &a) > tol || &a == win_lo || &b == win_hi {
        let mid = (&a + &b) / int(2);
        match g(&mid) {
            0 => return RootEnclosure::exact(mid),
            1 => a = mid,
            _ => b = mid,
        }
    }
    let (sign_lo, sign_hi) = (
        star_dom_sign(k, &power_map(&a, m)),
        star_dom_sign(k, &power_map(&b, m)),
    );
    RootEnclosure {
        interval: RationalInterval::new(a, b).expect("ordered"),
        sign_lo,
        sign_hi,
        certification: Certification::SimpleCertified,
    }
}

struct Cell {
    poly: IntPoly,
    chain: SturmChain,
}

fn bipartite_family(case: CaseTag, p: usize) -> WitnessFamily {
    match case {
        CaseTag::LeftOfMinusOne => WitnessFamily::K2Ell(p),
        _ => WitnessFamily::Kkk(p),
    }
}

fn bipartite_search(
    case: CaseTag,
    reg: &Regime,
    win_lo: &Rational,
    win_hi: &Rational,
    tol: &Rational,
    budget: &SearchBudget,
) -> Result<(WitnessFamily, usize, RootEnclosure)> {
    let mut cells: HashMap<usize, Cell> = HashMap::new();
    // m and the parameter are both odd, so only even diagonals hold cells
    for s in (2..=budget.max_m + budget.max_param).step_by(2) {
        let diagonal: Vec<(usize, usize)> = (1..=budget.max_m.min(s - 1))
            .step_by(2)
            .map(|m| (m, s - m))
            .filter(|&(m, p)| {
                p <= budget.max_param && m * bipartite_family(case, p).degree() <= budget.max_degree
            })
            .collect();
        let missing: Vec<usize> = diagonal
            .iter()
            .map(|&(_, p)| p)
            .filter(|p| !cells.contains_key(p))
            .collect();
        let built = missing
            .into_par_iter()
            .map(|p| {
                let poly = dom_poly_closed_form(bipartite_family(case, p).family())?.into_poly();
                let chain = SturmChain::new(&poly)?;
                Ok((p, Cell { poly, chain }))
            })
            .collect::<Result<Vec<_>>>()?;
        cells.extend(built);

        let hit = diagonal.par_iter().find_first(|&&(m, p)| {
            let ya = power_map(&reg.lo, m);
            let yb = power_map(&reg.hi, m);
            cells[&p].chain.count_open(&ya, &yb) > 0
        });
        if let Some(&(m, p)) = hit {
            let enc = leftmost_root(&cells[&p], m, &reg.lo, &reg.hi, win_lo, win_hi, tol);
            return Ok((bipartite_family(case, p), m, enc));
        }
    }
    Err(exhausted(budget, case.as_str()))
}

/// Leftmost root of `D(G, y(x))` in `(a, b)`, which holds at least one.
fn leftmost_root(
    cell: &Cell,
    m: usize,
    a: &Rational,
    b: &Rational,
    win_lo: &Rational,
    win_hi: &Rational,
    tol: &Rational,
) -> RootEnclosure {
    let chain = &cell.chain;
    let s = chain.square_free();
    let (mut a, mut b) = (a.clone(), b.clone());
    let (mut ya, mut yb) = (power_map(&a, m), power_map(&b, m));
    loop {
        let narrow = &(&b - &a) <= tol && &a != win_lo && &b != win_hi;
        if narrow && chain.count_open(&ya, &yb) == 1 {
            break;
        }
        let mid = (&a + &b) / int(2);
        let ym = power_map(&mid, m);
        if chain.count_open(&ya, &ym) > 0 {
            b = mid;
            yb = ym;
        } else if s.sign_at(&ym) == 0 {
            return RootEnclosure::exact(mid);
        } else {
            a = mid;
            ya = ym;
        }
    }
    let (pa, pb) = (cell.poly.sign_at(&ya), cell.poly.sign_at(&yb));
    let (sign_lo, sign_hi, certification) = if pa * pb < 0 {
        (pa, pb, Certification::SimpleCertified)
    } else {
        (s.sign_at(&ya), s.sign_at(&yb), Certification::SturmCounted)
    };
    RootEnclosure {
        interval: RationalInterval::new(a, b).expect("ordered"),
        sign_lo,
        sign_hi,
        certification,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum CheckOutcome {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub outcome: CheckOutcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    /// No check failed; skipped checks do not count against the report.
    pub fn all_passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !matches!(c.outcome, CheckOutcome::Fail(_)))
    }

    pub fn outcome(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name).map(|c| &c.outcome)
    }

    fn push(&mut self, name: &'static str, outcome: CheckOutcome) {
        self.checks.push(CheckResult { name, outcome });
    }

    fn check(&mut self, name: &'static str, ok: bool, why: impl FnOnce() -> String) {
        let outcome = if ok {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail(why())
        };
        self.push(name, outcome);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.outcome {
                CheckOutcome::Pass => writeln!(f, "{:<12} pass", c.name)?,
                CheckOutcome::Fail(why) => writeln!(f, "{:<12} FAIL {why}", c.name)?,
                CheckOutcome::Skipped(why) => writeln!(f, "{:<12} skipped ({why})", c.name)?,
            }
        }
        Ok(())
    }
}

/// Re-derives everything a certificate claims from its family descriptor.
/// Failures are report entries; this never errors.
pub fn verify_certificate(cert: &WitnessCertificate) -> VerificationReport {
    let mut report = VerificationReport::default();
    let m = cert.m;
    let parity_ok = m % 2 == 1
        && match cert.family {
            WitnessFamily::K2Ell(p) | WitnessFamily::Kkk(p) => p % 2 == 1,
            _ => true,
        };
    report.check("parity", parity_ok, || {
        format!("m = {m} and family {} need odd values", cert.family)
    });

    let enc = &cert.enclosure;
    let (lo, hi) = (enc.lo(), enc.hi());
    let regime_ok = match (cert.case_tag, cert.family) {
        (CaseTag::Exact, WitnessFamily::ExactK2) => {
            enc.is_exact() && (lo.is_zero() || *lo == int(-2))
        }
        (CaseTag::LeftOfMinusOne, WitnessFamily::K2Ell(_)) => *lo > int(-2) && *hi < int(-1),
        (CaseTag::RightOfMinusOne, WitnessFamily::Kkk(_)) => *lo > int(-1) && *hi < int(0),
        (CaseTag::LeftOfMinusTwo, WitnessFamily::Star(_)) => *hi < int(-2),
        _ => false,
    };
    report.check("regime", regime_ok, || {
        format!("{} with family {} at {}", cert.case_tag.as_str(), cert.family, enc.interval)
    });

    let (z, eps) = (&cert.target_z, &cert.epsilon);
    report.check(
        "containment",
        eps.is_positive() && enc.interval.inside_open(&(z - eps), &(z + eps)),
        || format!("{} not inside ({}, {})", enc.interval, z - eps, z + eps),
    );

    let base = match cert.family.family().validate() {
        Ok(()) if m > 0 => dom_poly_closed_form(cert.family.family()).expect("validated"),
        _ => {
            report.push("polynomial", CheckOutcome::Fail("invalid family or m".into()));
            return report;
        }
    };
    let degree = m * base.poly().degree().unwrap_or(0);
    report.check("degree", degree == cert.composed_degree, || {
        format!("composed degree is {degree}, certificate says {}", cert.composed_degree)
    });

    let composed = (cert.composed_degree <= EXPAND_MAX_DEGREE)
        .then(|| compose_with_complete(&base, m).expect("m > 0"));
    check_composition(&mut report, &base, composed.as_ref(), m, [lo, hi]);
    check_bruteforce(&mut report, cert, composed.as_ref());
    check_signs(&mut report, &base, m, enc);
    report
}

/// The expanded composed polynomial agrees with `D(G, y(x))` at both ends.
fn check_composition(
    report: &mut VerificationReport,
    base: &DomPolynomial,
    composed: Option<&DomPolynomial>,
    m: usize,
    points: [&Rational; 2],
) {
    let Some(p) = composed else {
        report.push(
            "composition",
            CheckOutcome::Skipped(format!("composed degree above {EXPAND_MAX_DEGREE}")),
        );
        return;
    };
    let bad = points
        .into_iter()
        .find(|x| p.poly().eval(x) != base.poly().eval(&power_map(x, m)));
    report.check("composition", bad.is_none(), || {
        format!("expanded and mapped values differ at {}", bad.unwrap())
    });
}

fn check_bruteforce(
    report: &mut VerificationReport,
    cert: &WitnessCertificate,
    composed: Option<&DomPolynomial>,
) {
    let order = cert.graph_order();
    let (Some(p), true) = (composed, order <= BRUTE_FORCE_CHECK_MAX_ORDER) else {
        report.push(
            "bruteforce",
            CheckOutcome::Skipped(format!("graph has {order} vertices")),
        );
        return;
    };
    let brute = cert
        .family
        .family()
        .build()
        .and_then(|g| g.substitute_complete(cert.m))
        .and_then(|g| dom_poly_bruteforce(&g));
    report.check("bruteforce", brute.as_ref() == Ok(p), || {
        "subset enumeration disagrees with the composed polynomial".into()
    });
}

fn check_signs(report: &mut VerificationReport, base: &DomPolynomial, m: usize, enc: &RootEnclosure) {
    let (ya, yb) = (power_map(enc.lo(), m), power_map(enc.hi(), m));
    let p = base.poly();
    let (sa, sb) = (p.sign_at(&ya), p.sign_at(&yb));
    let (ok, what) = match enc.certification {
        Certification::Exact => (enc.interval.is_point() && sa == 0, "exact root"),
        Certification::SimpleCertified => (
            sa == enc.sign_lo && sb == enc.sign_hi && sa * sb < 0,
            "sign change",
        ),
        Certification::SturmCounted => {
            let chain = SturmChain::new(p).expect("nonzero");
            let s = chain.square_free();
            let (qa, qb) = (s.sign_at(&ya), s.sign_at(&yb));
            let ok = ya < yb
                && qa == enc.sign_lo
                && qb == enc.sign_hi
                && qa * qb < 0
                && chain.count_open(&ya, &yb) == 1;
            (ok, "square-free sign change")
        }
    };
    report.check("signs", ok, || {
        format!("{what} not confirmed: endpoint signs {sa}, {sb}")
    });
}
