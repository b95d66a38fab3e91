use std::io::Write;

use domroots::atlas::{
    self, enumerate_graphs, growth_check, smallest_root_table, sweep, EnumerationMode,
    SweepOptions, ROOT_CLOUD_HEADER, TABLE_HEADER,
};
use domroots::density::{construct_witness, verify_certificate, SearchBudget};
use domroots::dompoly::{
    compose_with_complete, dom_poly_bruteforce, dom_poly_closed_form, dom_poly_inclusion_exclusion,
};
use domroots::rational::{to_fixed, to_ratio_string, Rational, Round};
use domroots::realroots::{isolate_real_roots, star_gap_csv, star_gap_report};
use domroots::{DomPolynomial, Error, Family, Graph, RationalInterval, Result, RootEnclosure};
use serde_json::json;

use crate::{BudgetArgs, Cli, Command, Format, GraphInput, Method, Mode, Report};

/// Graphs up to this order get both algorithms under `--method auto`.
const AUTO_CROSS_CHECK_MAX_ORDER: usize = 12;

type Out<'a> = &'a mut dyn Write;

pub fn run(cli: &Cli, out: Out) -> Result<()> {
    if let Some(w) = cli.workers {
        atlas::set_global_workers(w as usize)?;
    }
    let fmt = |default| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Poly { input, method } => {
            let p = dom_poly(&resolve(input)?, *method)?;
            write_poly(&p, fmt(Format::Plain), out)
        }
        Command::Compose { input, m } => {
            let base = dom_poly(&resolve(input)?, Method::Auto)?;
            write_poly(&compose_with_complete(&base, *m)?, fmt(Format::Plain), out)
        }
        Command::Roots { input, window } => roots(input, window.as_deref(), &cli.tol, fmt(Format::Plain), out),
        Command::Witness { z, eps, budget } => witness(z, eps, budget, fmt(Format::Json), out),
        Command::StarRoots { k_max } => star_roots(*k_max, &cli.tol, fmt(Format::Csv), out),
        Command::Atlas {
            n,
            mode,
            corpus,
            report,
            cap,
            exact,
            samples,
            seed,
        } => {
            let opts = SweepOptions {
                tol: cli.tol.clone(),
                exact_only: *exact,
            };
            let mode = match mode {
                Mode::All => EnumerationMode::AllLabeled,
                Mode::Dedup => EnumerationMode::Dedup,
                Mode::Corpus => EnumerationMode::CorpusFile(corpus.clone().expect("required by clap")),
            };
            let fmt = fmt(Format::Csv);
            match report {
                Report::Cloud => cloud(*n, &mode, *cap, &opts, fmt, out),
                Report::Table => table(*n, *cap, &opts, fmt, out),
                Report::Growth => growth(*n, &cli.tol, fmt, out),
                Report::Audit => audit(*n, *samples, *seed, &cli.tol, fmt, out),
            }
        }
    }
}

enum Input {
    Graph(Graph),
    Family(Family),
}

impl Input {
    fn graph(&self) -> Result<Graph> {
        match self {
            Input::Graph(g) => Ok(g.clone()),
            Input::Family(f) => f.build(),
        }
    }
}

fn resolve(input: &GraphInput) -> Result<Input> {
    match (&input.graph6, &input.family) {
        (Some(g6), _) => Ok(Input::Graph(Graph::from_graph6(g6)?)),
        (None, Some(f)) => Ok(Input::Family(f.parse()?)),
        (None, None) => Err(Error::Domain("one of --graph6 or --family is required".into())),
    }
}

fn dom_poly(input: &Input, method: Method) -> Result<DomPolynomial> {
    match (method, input) {
        (Method::Brute, _) => dom_poly_bruteforce(&input.graph()?),
        (Method::Inex, _) => dom_poly_inclusion_exclusion(&input.graph()?),
        (Method::Auto, Input::Family(f)) => {
            let closed = dom_poly_closed_form(*f)?;
            if f.order() <= AUTO_CROSS_CHECK_MAX_ORDER {
                cross_check("closed form", &closed, "brute force", &dom_poly_bruteforce(&f.build()?)?)?;
            }
            Ok(closed)
        }
        (Method::Auto, Input::Graph(g)) => {
            let inex = dom_poly_inclusion_exclusion(g)?;
            if g.order() <= AUTO_CROSS_CHECK_MAX_ORDER {
                cross_check("inclusion-exclusion", &inex, "brute force", &dom_poly_bruteforce(g)?)?;
            }
            Ok(inex)
        }
    }
}

fn cross_check(a_name: &str, a: &DomPolynomial, b_name: &str, b: &DomPolynomial) -> Result<()> {
    if a == b {
        return Ok(());
    }
    Err(Error::Invariant(format!(
        "algorithms disagree, please report: {a_name} gives {}, {b_name} gives {}",
        a.to_json(),
        b.to_json()
    )))
}

fn write_poly(p: &DomPolynomial, fmt: Format, out: Out) -> Result<()> {
    match fmt {
        Format::Plain => writeln!(out, "{p}")?,
        Format::Json => writeln!(out, "{}", p.to_json())?,
        Format::Csv => {
            writeln!(out, "k,d_k")?;
            for (k, c) in p.coeffs().iter().enumerate() {
                writeln!(out, "{k},{c}")?;
            }
        }
    }
    Ok(())
}

fn roots(input: &GraphInput, window: Option<&str>, tol: &Rational, fmt: Format, out: Out) -> Result<()> {
    let p = dom_poly(&resolve(input)?, Method::Auto)?;
    let window = match window {
        Some(w) => w.parse::<RationalInterval>()?,
        None => {
            let b = Rational::from_integer(p.poly().root_bound());
            RationalInterval::new(-b, Rational::from_integer(0.into()))?
        }
    };
    let mut roots = isolate_real_roots(p.poly(), &window, tol)?;
    roots.reverse();
    match fmt {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&roots).expect("serializable"))?,
        Format::Csv => {
            writeln!(out, "root_lo,root_hi,certification")?;
            for r in &roots {
                writeln!(
                    out,
                    "{},{},{}",
                    to_fixed(r.lo(), 12, Round::Down),
                    to_fixed(r.hi(), 12, Round::Up),
                    r.certification.as_str()
                )?;
            }
        }
        Format::Plain => {
            for r in &roots {
                writeln!(out, "{}", plain_root(r))?;
            }
        }
    }
    Ok(())
}

fn plain_root(r: &RootEnclosure) -> String {
    if r.is_exact() {
        return format!("{} exact", r.lo());
    }
    format!(
        "{} in [{}, {}] {}",
        to_fixed(&r.interval.midpoint(), 9, Round::Nearest),
        to_fixed(r.lo(), 12, Round::Down),
        to_fixed(r.hi(), 12, Round::Up),
        r.certification.as_str()
    )
}

fn witness(z: &Rational, eps: &Rational, args: &BudgetArgs, fmt: Format, out: Out) -> Result<()> {
    let defaults = SearchBudget::default();
    let budget = SearchBudget {
        max_m: args.max_m.unwrap_or(defaults.max_m),
        max_param: args.max_param.unwrap_or(defaults.max_param),
        max_degree: args.max_degree.unwrap_or(defaults.max_degree),
    };
    let cert = construct_witness(z, eps, &budget)?;
    let report = verify_certificate(&cert);
    match fmt {
        Format::Json | Format::Csv => {
            let doc = json!({ "certificate": cert, "verification": report });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
        }
        Format::Plain => {
            writeln!(out, "target     ({}, {})", to_ratio_string(&(z - eps)), to_ratio_string(&(z + eps)))?;
            writeln!(out, "graph      {}[K_{}]", cert.family, cert.m)?;
            writeln!(out, "case       {}", cert.case_tag.as_str())?;
            writeln!(out, "degree     {}", cert.composed_degree)?;
            writeln!(out, "root       {}", plain_root(&cert.enclosure))?;
            write!(out, "{report}")?;
        }
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Error::Invariant("emitted certificate failed verification".into()))
    }
}

fn star_roots(k_max: usize, tol: &Rational, fmt: Format, out: Out) -> Result<()> {
    let records = star_gap_report(k_max, tol)?;
    match fmt {
        Format::Csv => write!(out, "{}", star_gap_csv(&records))?,
        Format::Json => {
            let rows: Vec<_> = records
                .iter()
                .map(|r| {
                    json!({
                        "k": r.k,
                        "root": r.root,
                        "gap": to_ratio_string(&r.gap),
                        "increasing": r.increasing,
                        "estimate": r.estimate,
                        "abs_err": r.abs_err,
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("serializable"))?;
        }
        Format::Plain => {
            for r in &records {
                writeln!(
                    out,
                    "r_{:<4} {}  gap {}",
                    r.k,
                    plain_root(&r.root),
                    to_fixed(&r.gap, 9, Round::Nearest)
                )?;
            }
        }
    }
    Ok(())
}

fn cloud(n: usize, mode: &EnumerationMode, cap: usize, opts: &SweepOptions, fmt: Format, out: Out) -> Result<()> {
    let graphs = enumerate_graphs(n, mode, cap)?;
    if fmt != Format::Json {
        writeln!(out, "{ROOT_CLOUD_HEADER}")?;
    }
    let stats = sweep(graphs, opts, |g, r| {
        let g6 = g.to_graph6();
        for root in &r.roots {
            if fmt == Format::Json {
                let row = json!({ "graph6": g6, "n": g.order(), "root": root });
                writeln!(out, "{row}")?;
            } else {
                let rec = atlas::RootCloudRecord {
                    graph6: g6.clone(),
                    n: g.order(),
                    root: root.clone(),
                };
                writeln!(out, "{}", rec.csv_row())?;
            }
        }
        Ok(())
    })?;
    eprintln!(
        "{} graphs, {} roots, {} exact escalations",
        stats.graphs, stats.roots, stats.escalations
    );
    Ok(())
}

fn table(n_max: usize, cap: usize, opts: &SweepOptions, fmt: Format, out: Out) -> Result<()> {
    let table = smallest_root_table(n_max, cap, opts)?;
    match fmt {
        Format::Json => {
            let rows: Vec<_> = table
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "root": r.root,
                        "graph6": r.graph6,
                        "exhaustive": r.exhaustive,
                        "star_polynomial": r.star_polynomial,
                        "note": r.note,
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("serializable"))?;
        }
        Format::Csv | Format::Plain => {
            writeln!(out, "{TABLE_HEADER}")?;
            for r in &table {
                writeln!(out, "{}", r.csv_row())?;
            }
            for r in &table {
                if let Some(note) = &r.note {
                    if fmt == Format::Plain {
                        writeln!(out, "note n={}: {note}", r.n)?;
                    } else {
                        eprintln!("note n={}: {note}", r.n);
                    }
                }
            }
        }
    }
    Ok(())
}

fn growth(n_max: usize, tol: &Rational, fmt: Format, out: Out) -> Result<()> {
    let rows = growth_check(n_max, tol)?;
    if fmt == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("serializable"))?;
        return Ok(());
    }
    writeln!(out, "n,magnitude,n_over_ln_n,ratio")?;
    for r in &rows {
        writeln!(out, "{},{:.9},{:.9},{:.6}", r.n, r.magnitude, r.n_over_ln_n, r.ratio)?;
    }
    Ok(())
}

fn audit(max_order: usize, samples: usize, seed: u64, tol: &Rational, fmt: Format, out: Out) -> Result<()> {
    let report = atlas::audit_fast_path(samples, max_order, seed, tol)?;
    if fmt == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?;
    } else {
        writeln!(
            out,
            "{} graphs, {} escalated, {} mismatches",
            report.samples,
            report.escalated,
            report.mismatches.len()
        )?;
        for g in &report.mismatches {
            writeln!(out, "mismatch {g}")?;
        }
    }
    if report.mismatches.is_empty() {
        Ok(())
    } else {
        Err(Error::Invariant("floating and exact root counts differ".into()))
    }
}
