//! Sweeps over many small graphs: real-root clouds, smallest roots per
//! order, and consistency checks of the floating fast path.
//!
//! Roots are located in `f64` and certified in exact arithmetic: every
//! bracket found in floating point is re-checked by exact sign evaluation at
//! its (dyadic) endpoints. Anything the floating pass cannot decide is handed
//! to exact Sturm isolation.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::PathBuf;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dompoly::{dom_poly_closed_form, dom_poly_counts};
use crate::error::{Error, Result};
use crate::graph::{Family, Graph};
use crate::poly::IntPoly;
use crate::rational::{int, pow10_inv, to_f64, to_fixed, Rational, RationalInterval, Round};
use crate::realroots::isolate::rational_root_in;
use crate::realroots::{
    isolate_real_roots, refine_excluding, star_domination_root, Certification, RootEnclosure,
};

/// Default cap for exhaustive labeled enumeration: `2^21` graphs at order 7.
pub const ALL_LABELED_MAX_ORDER: usize = 7;

/// Edge codes must fit a `u64`.
const EDGE_CODE_MAX_ORDER: usize = 11;

/// Floating signs within this many machine epsilons of the evaluation's
/// magnitude bound are treated as unknown.
const FLOAT_MARGIN: f64 = 1e3 * f64::EPSILON;

const BATCH: usize = 1 << 15;
const CHUNK: usize = 1 << 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Every graph on vertices `0..n`, in edge-code order.
    AllLabeled,
    /// Labeled graphs, keeping the first of each colour-refinement
    /// signature. A heuristic: non-isomorphic graphs can share a signature.
    Dedup,
    /// graph6 lines from a file; graphs of other orders are skipped unless
    /// `n == 0`.
    CorpusFile(PathBuf),
}

pub type GraphStream = Box<dyn Iterator<Item = Result<Graph>> + Send>;

/// Streams graphs of order `n`. `cap` bounds the labeled modes.
pub fn enumerate_graphs(n: usize, mode: &EnumerationMode, cap: usize) -> Result<GraphStream> {
    match mode {
        EnumerationMode::AllLabeled => labeled(n, cap),
        EnumerationMode::Dedup => {
            let mut seen = HashSet::new();
            Ok(Box::new(labeled(n, cap)?.filter(move |g| match g {
                Ok(g) => seen.insert(g.refinement_signature()),
                Err(_) => true,
            })))
        }
        EnumerationMode::CorpusFile(path) => {
            let file = File::open(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let lines = BufReader::new(file).lines().enumerate();
            Ok(Box::new(lines.filter_map(move |(i, line)| {
                let line = match line {
                    Ok(l) => l,
                    Err(e) => return Some(Err(Error::Io(e.to_string()))),
                };
                let text = line.trim();
                if text.is_empty() {
                    return None;
                }
                match Graph::from_graph6(text) {
                    Ok(g) if n == 0 || g.order() == n => Some(Ok(g)),
                    Ok(_) => None,
                    Err(Error::Parse { offset, message }) => Some(Err(Error::Parse {
                        offset,
                        message: format!("line {}: {message}", i + 1),
                    })),
                    Err(e) => Some(Err(e)),
                }
            })))
        }
    }
}

fn labeled(n: usize, cap: usize) -> Result<GraphStream> {
    if n == 0 {
        return Err(Error::domain("graph order must be at least 1"));
    }
    let limit = cap.min(EDGE_CODE_MAX_ORDER);
    if n > limit {
        return Err(Error::Capacity {
            what: "labeled enumeration order",
            requested: n,
            limit,
        });
    }
    let pairs = n * (n - 1) / 2;
    Ok(Box::new((0..1u64 << pairs).map(move |c| Graph::from_edge_code(n, c))))
}

/// Real roots of a domination polynomial, found in floating point and
/// certified exactly. Returns `None` when the floating pass is inconclusive.
pub fn fast_roots(p: &IntPoly, tol: &Rational) -> Result<Option<Vec<RootEnclosure>>> {
    let v = p.valuation();
    let q = p.shift_down(v);
    let c: Vec<f64> = q.coeffs().iter().map(|c| to_f64(&Rational::from_integer(c.clone()))).collect();
    let bound = to_f64(&Rational::from_integer(q.root_bound()));
    let width = to_f64(tol) * 0.5;
    let Some(brackets) = float_roots(&c, -bound, 0.0, width) else {
        return Ok(None);
    };
    let mut out = Vec::with_capacity(brackets.len() + 1);
    for (a, b) in brackets {
        let (a, b) = (
            Rational::from_float(a).expect("finite"),
            Rational::from_float(b).expect("finite"),
        );
        if let Some(r) = rational_root_in(&q, &a, &b) {
            out.push(RootEnclosure::exact(r));
            continue;
        }
        let (sa, sb) = (p.sign_at(&a), p.sign_at(&b));
        if sa * sb >= 0 || &(&b - &a) > tol {
            return Ok(None);
        }
        let enc = RootEnclosure {
            interval: RationalInterval::new(a, b)?,
            sign_lo: sa,
            sign_hi: sb,
            certification: Certification::SimpleCertified,
        };
        out.push(refine_excluding(p, &enc, &int(-1)).map_err(|e| Error::Invariant(e.to_string()))?);
    }
    if v > 0 {
        out.push(RootEnclosure::exact(Rational::zero()));
    }
    Ok(Some(out))
}

/// Exact Sturm isolation over `[-B, 0]` with `B` a root bound, narrowed so
/// no enclosure contains `-1`.
pub fn exact_roots(p: &IntPoly, tol: &Rational) -> Result<Vec<RootEnclosure>> {
    let bound = Rational::from_integer(p.root_bound());
    let window = RationalInterval::new(-bound, Rational::zero())?;
    isolate_real_roots(p, &window, tol)?
        .iter()
        .map(|e| refine_excluding(p, e, &int(-1)).map_err(|e| Error::Invariant(e.to_string())))
        .collect()
}

/// Sign of the polynomial with coefficients `c` at `x`, if it clears the
/// rounding margin.
fn float_sign(c: &[f64], x: f64) -> Option<i8> {
    let (mut v, mut mag) = (0.0f64, 0.0f64);
    for &ci in c.iter().rev() {
        v = v * x + ci;
        mag = mag * x.abs() + ci.abs();
    }
    if v.abs() <= FLOAT_MARGIN * mag {
        None
    } else if v > 0.0 {
        Some(1)
    } else {
        Some(-1)
    }
}

/// Brackets of width at most `width` around each real root in `(lo, hi)`,
/// using the roots of the derivative to split `[lo, hi]` into monotone
/// pieces. `width == 0` bisects to machine precision.
fn float_roots(c: &[f64], lo: f64, hi: f64, width: f64) -> Option<Vec<(f64, f64)>> {
    let d = c.len().saturating_sub(1);
    if d == 0 {
        return Some(Vec::new());
    }
    let mut cuts = vec![lo];
    if d > 1 {
        let dc: Vec<f64> = c.iter().enumerate().skip(1).map(|(i, &ci)| i as f64 * ci).collect();
        cuts.extend(float_roots(&dc, lo, hi, 0.0)?.into_iter().map(|(a, b)| 0.5 * (a + b)));
    }
    cuts.push(hi);
    let mut out = Vec::new();
    let mut prev = float_sign(c, lo)?;
    for w in cuts.windows(2) {
        let next = float_sign(c, w[1])?;
        if prev != next {
            out.push(bisect_float(c, w[0], w[1], prev, width)?);
        }
        prev = next;
    }
    Some(out)
}

fn bisect_float(c: &[f64], mut a: f64, mut b: f64, sa: i8, width: f64) -> Option<(f64, f64)> {
    loop {
        let mid = 0.5 * (a + b);
        if b - a <= width || mid <= a || mid >= b {
            return Some((a, b));
        }
        match float_sign(c, mid) {
            Some(s) if s == sa => a = mid,
            Some(_) => b = mid,
            // at machine precision the critical point is as good as found
            None if width == 0.0 => return Some((mid, mid)),
            // the root is within rounding distance of mid; bracket it there
            None => {
                let (l, r) = (mid - 0.25 * width, mid + 0.25 * width);
                let ok = float_sign(c, l) == Some(sa) && float_sign(c, r) == Some(-sa);
                return ok.then_some((l, r));
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub tol: Rational,
    /// Skip the floating pass entirely.
    pub exact_only: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            tol: pow10_inv(9),
            exact_only: false,
        }
    }
}

/// Roots of one domination polynomial, shared by every graph that has it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRoots {
    pub poly: IntPoly,
    /// Ascending.
    pub roots: Vec<RootEnclosure>,
    /// The floating pass was inconclusive and exact isolation was used.
    pub escalated: bool,
}

pub fn poly_roots(p: IntPoly, opts: &SweepOptions) -> Result<PolyRoots> {
    let fast = if opts.exact_only {
        None
    } else {
        fast_roots(&p, &opts.tol)?
    };
    let escalated = fast.is_none();
    let roots = match fast {
        Some(r) => r,
        None => exact_roots(&p, &opts.tol)?,
    };
    Ok(PolyRoots {
        poly: p,
        roots,
        escalated,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepStats {
    pub graphs: usize,
    pub roots: usize,
    /// Polynomial root computations, summed over chunks.
    pub distinct_polys: usize,
    pub escalations: usize,
}

/// Computes the roots of every graph in `graphs`, in parallel chunks with a
/// per-chunk polynomial cache, and hands them to `visit` in input order.
pub fn sweep<I, F>(graphs: I, opts: &SweepOptions, mut visit: F) -> Result<SweepStats>
where
    I: Iterator<Item = Result<Graph>>,
    F: FnMut(&Graph, &PolyRoots) -> Result<()>,
{
    let mut stats = SweepStats::default();
    let mut graphs = graphs.peekable();
    while graphs.peek().is_some() {
        let batch: Vec<Graph> = graphs.by_ref().take(BATCH).collect::<Result<_>>()?;
        let chunks = batch
            .par_chunks(CHUNK)
            .map(|chunk| sweep_chunk(chunk, opts))
            .collect::<Result<Vec<_>>>()?;
        for (chunk, (roots, computed, escalated)) in batch.chunks(CHUNK).zip(chunks) {
            stats.distinct_polys += computed;
            stats.escalations += escalated;
            for (g, r) in chunk.iter().zip(roots) {
                stats.graphs += 1;
                stats.roots += r.roots.len();
                visit(g, &r)?;
            }
        }
    }
    Ok(stats)
}

type ChunkResult = (Vec<Arc<PolyRoots>>, usize, usize);

fn sweep_chunk(chunk: &[Graph], opts: &SweepOptions) -> Result<ChunkResult> {
    let mut cache: HashMap<Vec<u64>, Arc<PolyRoots>> = HashMap::new();
    let mut escalated = 0;
    let roots = chunk
        .iter()
        .map(|g| {
            let counts = dom_poly_counts(g)?;
            if let Some(r) = cache.get(&counts) {
                return Ok(r.clone());
            }
            let r = Arc::new(poly_roots(IntPoly::new(counts.iter().map(|&c| c.into()).collect()), opts)?);
            escalated += r.escalated as usize;
            cache.insert(counts, r.clone());
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((roots, cache.len(), escalated))
}

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    if workers == 0 {
        return Err(Error::domain("worker count must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Invariant(e.to_string()))?;
    Ok(pool.install(f))
}

/// Sizes the global pool used by sweeps. Only the first call in a process
/// takes effect; later calls report an error.
pub fn set_global_workers(workers: usize) -> Result<()> {
    if workers == 0 {
        return Err(Error::domain("worker count must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| Error::Invariant(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCloudRecord {
    pub graph6: String,
    pub n: usize,
    pub root: RootEnclosure,
}

pub const ROOT_CLOUD_HEADER: &str = "graph6,n,root_lo,root_hi";

impl RootCloudRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.graph6,
            self.n,
            to_fixed(self.root.lo(), 12, Round::Down),
            to_fixed(self.root.hi(), 12, Round::Up)
        )
    }
}

/// Root-cloud records for a graph stream: graph order, then roots ascending.
pub fn root_cloud<I>(graphs: I, opts: &SweepOptions) -> Result<Vec<RootCloudRecord>>
where
    I: Iterator<Item = Result<Graph>>,
{
    let mut out = Vec::new();
    sweep(graphs, opts, |g, r| {
        let graph6 = g.to_graph6();
        out.extend(r.roots.iter().map(|root| RootCloudRecord {
            graph6: graph6.clone(),
            n: g.order(),
            root: root.clone(),
        }));
        Ok(())
    })?;
    Ok(out)
}

/// Invariants and the extremal root over a scan of one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSummary {
    pub n: usize,
    pub stats: SweepStats,
    /// Largest upper end over all enclosures.
    pub max_root_hi: Rational,
    pub enclosures_containing_minus_one: usize,
    /// Enclosure of the smallest root seen, its first graph in scan order,
    /// and that graph's domination polynomial.
    pub smallest: RootEnclosure,
    pub smallest_graph6: String,
    pub smallest_poly: IntPoly,
}

/// Scans every labeled graph of order `n <= cap`.
pub fn scan_order(n: usize, cap: usize, opts: &SweepOptions) -> Result<OrderSummary> {
    let graphs = enumerate_graphs(n, &EnumerationMode::AllLabeled, cap)?;
    let mut max_hi: Option<Rational> = None;
    let mut minus_one = 0;
    let mut best: Option<(RootEnclosure, Graph, IntPoly)> = None;
    let stats = sweep(graphs, opts, |g, r| {
        for e in &r.roots {
            if max_hi.as_ref().is_none_or(|m| e.hi() > m) {
                max_hi = Some(e.hi().clone());
            }
            minus_one += e.interval.contains(&int(-1)) as usize;
        }
        let Some(first) = r.roots.first() else {
            return Ok(());
        };
        let smaller = match &best {
            None => true,
            Some((b, _, bp)) => strictly_below(&r.poly, first, bp, b, &opts.tol)?,
        };
        if smaller {
            best = Some((first.clone(), g.clone(), r.poly.clone()));
        }
        Ok(())
    })?;
    let (smallest, g, poly) = best.ok_or_else(|| Error::Invariant(format!("no roots at order {n}")))?;
    Ok(OrderSummary {
        n,
        stats,
        max_root_hi: max_hi.expect("roots exist"),
        enclosures_containing_minus_one: minus_one,
        smallest,
        smallest_graph6: g.to_graph6(),
        smallest_poly: poly,
    })
}

/// Whether the root of `p` in `e` is strictly below the root of `q` in `f`.
/// Overlapping enclosures of different polynomials are refined until they
/// separate; roots that stay together count as equal.
fn strictly_below(
    p: &IntPoly,
    e: &RootEnclosure,
    q: &IntPoly,
    f: &RootEnclosure,
    tol: &Rational,
) -> Result<bool> {
    if p == q || e.lo() == f.lo() && e.hi() == f.hi() {
        return Ok(false);
    }
    let (mut e, mut f) = (e.clone(), f.clone());
    let mut tol = tol.clone();
    for _ in 0..8 {
        if e.hi() < f.lo() {
            return Ok(true);
        }
        if f.hi() <= e.lo() {
            return Ok(false);
        }
        tol /= int(1 << 16);
        e = narrow(p, &e, &tol)?;
        f = narrow(q, &f, &tol)?;
    }
    Ok(false)
}

fn narrow(p: &IntPoly, e: &RootEnclosure, tol: &Rational) -> Result<RootEnclosure> {
    if e.is_exact() {
        return Ok(e.clone());
    }
    isolate_real_roots(p, &e.interval, tol)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Invariant(format!("root lost while narrowing {}", e.interval)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalRecord {
    pub n: usize,
    pub root: RootEnclosure,
    pub graph6: String,
    /// Every labeled graph of order `n` was scanned.
    pub exhaustive: bool,
    /// The attaining graph has the domination polynomial of `K_{1,n-1}`.
    pub star_polynomial: bool,
    pub note: Option<String>,
    pub summary: Option<OrderSummary>,
}

pub const TABLE_HEADER: &str = "n,root_lo,root_hi,graph6,exhaustive";

impl ExtremalRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n,
            to_fixed(self.root.lo(), 12, Round::Down),
            to_fixed(self.root.hi(), 12, Round::Up),
            self.graph6,
            self.exhaustive
        )
    }
}

fn star_family(n: usize) -> Family {
    if n == 1 {
        Family::Complete(1)
    } else {
        Family::Star(n - 1)
    }
}

/// Smallest real domination root per order `1..=n_max`. Orders up to `cap`
/// are scanned exhaustively; above it only the star is evaluated and the
/// record is flagged non-exhaustive. The star root comes from
/// [`star_domination_root`] whenever a star attains the minimum.
pub fn smallest_root_table(n_max: usize, cap: usize, opts: &SweepOptions) -> Result<Vec<ExtremalRecord>> {
    (1..=n_max)
        .map(|n| {
            let family = star_family(n);
            let star_poly = dom_poly_closed_form(family)?.into_poly();
            let star_root = if n == 1 {
                RootEnclosure::exact(Rational::zero())
            } else {
                star_domination_root(n - 1, &opts.tol)?
            };
            let note = (n == 2).then(|| {
                "the reference table lists 2 here; D(K_2, x) = x^2 + 2x has roots 0 and -2".to_string()
            });
            if n > cap {
                return Ok(ExtremalRecord {
                    n,
                    root: star_root,
                    graph6: family.build()?.to_graph6(),
                    exhaustive: false,
                    star_polynomial: true,
                    note,
                    summary: None,
                });
            }
            let summary = scan_order(n, cap, opts)?;
            let star_polynomial = summary.smallest_poly == star_poly;
            Ok(ExtremalRecord {
                n,
                root: if star_polynomial {
                    star_root
                } else {
                    summary.smallest.clone()
                },
                graph6: summary.smallest_graph6.clone(),
                exhaustive: true,
                star_polynomial,
                note,
                summary: Some(summary),
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthRecord {
    pub n: usize,
    /// `r_{n-1}`, the magnitude of the smallest root of `K_{1,n-1}`.
    pub magnitude: f64,
    pub n_over_ln_n: f64,
    pub ratio: f64,
}

/// Compares star-root magnitudes with `n / ln n` for `3 <= n <= n_max`.
pub fn growth_check(n_max: usize, tol: &Rational) -> Result<Vec<GrowthRecord>> {
    if n_max < 3 {
        return Err(Error::domain("growth check needs n_max >= 3"));
    }
    (3..=n_max)
        .map(|n| {
            let magnitude = -star_domination_root(n - 1, tol)?.midpoint_f64();
            let nf = n as f64;
            let n_over_ln_n = nf / nf.ln();
            Ok(GrowthRecord {
                n,
                magnitude,
                n_over_ln_n,
                ratio: magnitude / n_over_ln_n,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub samples: usize,
    pub escalated: usize,
    /// graph6 of graphs where the two paths disagree.
    pub mismatches: Vec<String>,
}

/// Compares the floating fast path with exact isolation on `samples`
/// random graphs of order `1..=max_order`: same number of roots, and each
/// pair of enclosures overlapping.
pub fn audit_fast_path(samples: usize, max_order: usize, seed: u64, tol: &Rational) -> Result<AuditReport> {
    if !(1..=EDGE_CODE_MAX_ORDER).contains(&max_order) {
        return Err(Error::domain(format!("audit order must be in 1..={EDGE_CODE_MAX_ORDER}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs: Vec<Graph> = (0..samples)
        .map(|_| {
            let n = rng.gen_range(1..=max_order);
            let pairs = n * (n - 1) / 2;
            let code = if pairs == 0 { 0 } else { rng.gen::<u64>() >> (64 - pairs) };
            Graph::from_edge_code(n, code)
        })
        .collect::<Result<_>>()?;
    let results = graphs
        .par_iter()
        .map(|g| {
            let p = IntPoly::new(dom_poly_counts(g)?.into_iter().map(Into::into).collect());
            let fast = fast_roots(&p, tol)?;
            let exact = exact_roots(&p, tol)?;
            let agree = fast.as_ref().is_none_or(|f| {
                f.len() == exact.len()
                    && f.iter().zip(&exact).all(|(a, b)| !a.interval.is_disjoint(&b.interval))
            });
            Ok((fast.is_none(), agree))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = AuditReport {
        samples,
        ..Default::default()
    };
    for (g, (escalated, agree)) in graphs.iter().zip(results) {
        report.escalated += escalated as usize;
        if !agree {
            report.mismatches.push(g.to_graph6());
        }
    }
    Ok(report)
}

/// True when no enclosure lies strictly right of zero.
pub fn all_nonpositive(roots: &[RootEnclosure]) -> bool {
    roots.iter().all(|e| !e.lo().is_positive())
}
