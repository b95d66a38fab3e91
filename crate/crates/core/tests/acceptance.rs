//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use domroots::atlas::{smallest_root_table, with_workers, SweepOptions, ALL_LABELED_MAX_ORDER};
use domroots::density::{construct_witness, target_interval, verify_certificate, CheckOutcome, SearchBudget};
use domroots::dompoly::{
    compose_with_complete, dom_poly_bruteforce, dom_poly_closed_form, dom_poly_inclusion_exclusion,
};
use domroots::rational::{int, parse_rational, pow10_inv, to_f64};
use domroots::realroots::{star_domination_root, star_root, star_root_estimate};
use domroots::{Family, Graph, RationalInterval};

/// Published smallest roots for n = 3..9, i.e. stars K_{1,2}..K_{1,8}.
const TABLE_ONE: [f64; 7] = [
    -2.618033989,
    -3.147899036,
    -3.629658127,
    -4.079595623,
    -4.506323246,
    -4.915076186,
    -5.309330065,
];
const TABLE_TOLERANCE: f64 = 5e-9;
const TABLE_TIME: Duration = Duration::from_secs(5);
const ORACLE_TIME: Duration = Duration::from_secs(120);
const LEMMA_SAMPLES: usize = 500;
const LEMMA_TIME: Duration = Duration::from_secs(120);
const CLOSED_FORM_MAX_ORDER: usize = 12;
const SWEEP_WORKERS: usize = 8;
const SWEEP_TIME: Duration = Duration::from_secs(30 * 60);
const WITNESS_TIME: Duration = Duration::from_secs(10 * 60);
const GRID_Z: [&str; 8] = ["-0.25", "-0.75", "-1.25", "-1.5", "-1.9", "-2.5", "-5", "-10"];
const GRID_EPS: [&str; 2] = ["0.1", "0.01"];
const STAR_K_MAX: usize = 300;
const GAP_BOUND: f64 = 4.0;

type Outcome = Result<String, String>;

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let detail = f()?;
    let elapsed = t.elapsed();
    if elapsed > limit {
        return Err(format!("{detail}; took {elapsed:.1?}, limit {limit:?}"));
    }
    Ok(format!("{detail}; {elapsed:.2?}"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn table_reproduction() -> Outcome {
    timed(TABLE_TIME, || {
        let tol = pow10_inv(9);
        let mut worst = 0f64;
        for (i, want) in TABLE_ONE.iter().enumerate() {
            let k = i + 2;
            let enc = star_domination_root(k, &tol).map_err(err)?;
            let (lo, hi) = (to_f64(enc.lo()), to_f64(enc.hi()));
            // distance from the reference value to the certified enclosure
            let dist = if *want < lo { lo - want } else if *want > hi { want - hi } else { 0.0 };
            worst = worst.max(dist);
            ensure(dist <= TABLE_TOLERANCE, || format!("k={k}: [{lo}, {hi}] vs {want}"))?;
        }
        let table = smallest_root_table(2, 2, &SweepOptions::default()).map_err(err)?;
        let n2 = &table[1];
        ensure(n2.root.lo() == &int(-2) && n2.root.is_exact(), || "n=2 row is not -2".into())?;
        ensure(n2.note.is_some(), || "n=2 row carries no typo note".into())?;
        Ok(format!("k=2..8 within {worst:.1e} of the reference values; n=2 reported as -2 with note"))
    })
}

fn oracle_equivalence() -> Outcome {
    timed(ORACLE_TIME, || {
        let mut n = 0;
        for code in 0..1u64 << 15 {
            let g = Graph::from_edge_code(6, code).map_err(err)?;
            let a = dom_poly_inclusion_exclusion(&g).map_err(err)?;
            let b = dom_poly_bruteforce(&g).map_err(err)?;
            ensure(a == b, || format!("edge code {code}: {a:?} vs {b:?}"))?;
            n += 1;
        }
        Ok(format!("{n} labeled graphs of order 6 agree"))
    })
}

fn composition_check() -> Outcome {
    timed(LEMMA_TIME, || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for i in 0..LEMMA_SAMPLES {
            let n = rng.gen_range(1..=5);
            let pairs = n * (n - 1) / 2;
            let code = rng.gen_range(0..1u64 << pairs);
            let m = if i % 2 == 0 { 2 } else { 3 };
            let g = Graph::from_edge_code(n, code).map_err(err)?;
            let composed = compose_with_complete(&dom_poly_bruteforce(&g).map_err(err)?, m).map_err(err)?;
            let direct = dom_poly_bruteforce(&g.substitute_complete(m).map_err(err)?).map_err(err)?;
            ensure(composed == direct, || format!("{} with m={m}", g.to_graph6()))?;
        }
        Ok(format!("{LEMMA_SAMPLES} random graphs, m in {{2, 3}}"))
    })
}

fn closed_forms() -> Outcome {
    let mut families = Vec::new();
    for k in 1..CLOSED_FORM_MAX_ORDER {
        for l in 1..=CLOSED_FORM_MAX_ORDER - k {
            families.push(Family::CompleteBipartite(k, l));
        }
        families.push(Family::Star(k));
        families.push(Family::K2Ell(k));
    }
    families.extend((1..=CLOSED_FORM_MAX_ORDER / 2).map(Family::Kkk));
    families.retain(|f| f.order() <= CLOSED_FORM_MAX_ORDER);
    for f in &families {
        let closed = dom_poly_closed_form(*f).map_err(err)?;
        let brute = dom_poly_bruteforce(&f.build().map_err(err)?).map_err(err)?;
        ensure(closed == brute, || format!("{f} disagrees"))?;
    }
    Ok(format!("{} parameterizations up to order {CLOSED_FORM_MAX_ORDER}", families.len()))
}

fn sweep_criteria() -> (Outcome, Outcome) {
    let t = Instant::now();
    let table = with_workers(SWEEP_WORKERS, || {
        smallest_root_table(9, ALL_LABELED_MAX_ORDER, &SweepOptions::default())
    });
    let elapsed = t.elapsed();
    let table = match table.map_err(err).and_then(|t| t.map_err(err)) {
        Ok(t) => t,
        Err(e) => return (Err(e.clone()), Err(e)),
    };

    let signs = (|| {
        let mut graphs = 0;
        let mut escalations = 0;
        for rec in &table {
            let Some(s) = &rec.summary else { continue };
            graphs += s.stats.graphs;
            escalations += s.stats.escalations;
            ensure(!s.max_root_hi.is_positive(), || {
                format!("n={}: an enclosure reaches {}", s.n, s.max_root_hi)
            })?;
            ensure(s.enclosures_containing_minus_one == 0, || {
                format!("n={}: {} enclosures contain -1", s.n, s.enclosures_containing_minus_one)
            })?;
        }
        ensure(elapsed <= SWEEP_TIME, || format!("took {elapsed:.1?}"))?;
        Ok(format!(
            "{graphs} labeled graphs of order <= 7, {escalations} exact escalations; {elapsed:.2?} on {SWEEP_WORKERS} workers"
        ))
    })();

    let extremal = (|| {
        for rec in &table {
            if (3..=ALL_LABELED_MAX_ORDER).contains(&rec.n) {
                ensure(rec.exhaustive && rec.star_polynomial, || {
                    format!("n={}: minimum at {} is not a star polynomial", rec.n, rec.graph6)
                })?;
            }
            if rec.n >= 8 {
                ensure(!rec.exhaustive, || format!("n={} flagged exhaustive", rec.n))?;
            }
        }
        Ok("orders 3..7 attained by D(K_{1,n-1}); orders 8, 9 flagged non-exhaustive".to_string())
    })();
    (signs, extremal)
}

fn density_grid() -> Outcome {
    timed(WITNESS_TIME, || {
        let budget = SearchBudget::default();
        let mut largest = 0;
        for z in GRID_Z {
            for eps in GRID_EPS {
                let (zq, eq) = (parse_rational(z).map_err(err)?, parse_rational(eps).map_err(err)?);
                let cert = construct_witness(&zq, &eq, &budget).map_err(|e| format!("z={z} eps={eps}: {e}"))?;
                let report = verify_certificate(&cert);
                ensure(report.all_passed(), || format!("z={z} eps={eps}:\n{report}"))?;
                ensure(cert.enclosure.interval.inside_open(&(&zq - &eq), &(&zq + &eq)), || {
                    format!("z={z} eps={eps}: enclosure outside the window")
                })?;
                largest = largest.max(cert.composed_degree);
            }
        }
        Ok(format!("16 targets certified and verified, largest composed degree {largest}"))
    })
}

fn star_structure() -> Outcome {
    let tol = pow10_inv(9);
    let roots = (1..=STAR_K_MAX + 1)
        .map(|k| star_root(k, &tol))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    for (k, w) in roots.windows(2).enumerate() {
        ensure(w[0].hi() < w[1].lo(), || format!("r_{} and r_{} not separated", k + 1, k + 2))?;
    }
    let gaps: Vec<f64> = roots
        .windows(2)
        .map(|w| to_f64(&(w[1].interval.midpoint() - w[0].interval.midpoint())))
        .collect();
    // last k whose gap is not below the bound, or none
    let threshold = gaps.iter().rposition(|&g| g >= GAP_BOUND).map_or(1, |i| i + 2);
    ensure(threshold <= STAR_K_MAX, || "gap bound never holds".into())?;
    let rel = |k: usize| -> Result<f64, String> {
        let r = star_root(k, &tol).map_err(err)?.midpoint_f64();
        Ok((r - star_root_estimate(k)).abs() / r)
    };
    let (e100, e1000) = (rel(100)?, rel(1000)?);
    ensure(e1000 < e100, || format!("relative error {e1000:.3e} at k=1000 vs {e100:.3e} at k=100"))?;
    Ok(format!(
        "r_1..r_{} increasing; gaps < {GAP_BOUND} from k={threshold}; relative error {e100:.2e} -> {e1000:.2e}",
        STAR_K_MAX + 1
    ))
}

fn negative_controls() -> Outcome {
    let budget = SearchBudget::default();
    let (z, eps) = (parse_rational("-1.5").map_err(err)?, parse_rational("0.05").map_err(err)?);
    let cert = construct_witness(&z, &eps, &budget).map_err(err)?;
    let mut moved = cert.clone();
    moved.enclosure.interval = RationalInterval::new(cert.enclosure.lo() + int(1), cert.enclosure.hi() + int(1))
        .map_err(err)?;
    let report = verify_certificate(&moved);
    ensure(matches!(report.outcome("containment"), Some(CheckOutcome::Fail(_))), || {
        "shifted enclosure passed containment".into()
    })?;
    let mut even = cert;
    even.m = 2;
    ensure(!verify_certificate(&even).all_passed(), || "even m passed verification".into())?;
    ensure(target_interval(&z, &eps, 4).is_err(), || "even m target interval accepted".into())?;
    ensure(construct_witness(&int(1), &eps, &budget).is_err(), || "z > 0 accepted".into())?;
    Ok("tampered interval, even m, and z > 0 all rejected".into())
}

fn main() -> ExitCode {
    let mut results: Vec<(u32, &str, Outcome)> = vec![
        (1, "smallest-root reference values", table_reproduction()),
        (2, "inclusion-exclusion equals brute force", oracle_equivalence()),
        (3, "composition with complete graphs", composition_check()),
        (4, "closed forms", closed_forms()),
    ];
    let (signs, extremal) = sweep_criteria();
    results.push((5, "sign facts over all graphs of order <= 7", signs));
    results.push((6, "stars attain the smallest roots", extremal));
    results.push((7, "density witnesses", density_grid()));
    results.push((8, "star-root structure", star_structure()));
    results.push((9, "negative controls", negative_controls()));

    let mut failed = 0;
    for (id, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {id} PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id} FAIL {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
