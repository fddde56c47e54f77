//! `matchkit` — counts, series, bijections, intervals and diagrams for
//! the matching pattern poset.
//!
//! Exit codes: 0 success, 1 check failure (formula disagrees with the
//! brute-force oracle), 2 usage or parse error, 3 safety bound exceeded.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigUint;
use serde_json::json;

use matchkit::bijection::{enumerate_ternary_trees, phi, psi, TernaryTree};
use matchkit::count::{CountTable, Source};
use matchkit::enumerate::{self, cache::CountCache};
use matchkit::formulas::{self, UnlabeledFormula};
use matchkit::interval;
use matchkit::series::catalan_series;
use matchkit::{Matching, PowerSeries, UnlabeledMatching};

#[derive(Parser)]
#[command(name = "matchkit", version, about = "Exact combinatorics of matching patterns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Count avoiders or minimal containers up to an order.
    Count(CountArgs),
    /// Print a named generating function as exact coefficients.
    Series(SeriesArgs),
    /// Apply the ternary-tree bijection in either direction.
    Bijection(BijectionArgs),
    /// Interval cardinalities in the pattern poset.
    Interval(IntervalArgs),
    /// Emit an SVG chord diagram.
    Render(RenderArgs),
}

#[derive(Args)]
struct CountArgs {
    /// Pattern or comma-separated pattern list to avoid.
    #[arg(long)]
    avoid: Option<String>,
    /// Unlabeled pattern, bracket form, e.g. "[112323]".
    #[arg(long)]
    avoid_unlabeled: Option<String>,
    /// Count matchings minimally containing this pattern.
    #[arg(long)]
    mu: Option<String>,
    /// Largest order to count.
    #[arg(short, long)]
    n: usize,
    /// Also evaluate the closed formula and diff against brute force.
    #[arg(long)]
    check: bool,
    /// Safety bound on brute-force order.
    #[arg(long, default_value_t = 10)]
    bound: usize,
}

#[derive(Args)]
struct SeriesArgs {
    /// One of: catalan, eq3-mu1212, a002054, thm36, cor37-a, cor37-b,
    /// interval-F.
    #[arg(long)]
    name: String,
    #[arg(long)]
    order: usize,
}

#[derive(Args)]
struct BijectionArgs {
    /// Tree to matching.
    #[arg(long)]
    phi: bool,
    /// Matching to tree.
    #[arg(long)]
    psi: bool,
    /// Round-trip every tree of the given order.
    #[arg(long)]
    roundtrip: bool,
    /// Tree in nested-parenthesis form, e.g. "((. . .) . .)".
    #[arg(long)]
    tree: Option<String>,
    #[arg(long)]
    matching: Option<String>,
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Args)]
struct IntervalArgs {
    /// Profile of [11, tau] for an explicit tau.
    #[arg(long)]
    tau: Option<String>,
    /// "k,r,s": stacked juxtaposition of two nesting stacks.
    #[arg(long)]
    ks: Option<String>,
    /// "k,h,a,b,c": the three-stack configuration.
    #[arg(long)]
    khabc: Option<String>,
    /// n-th member of the recursive tau family.
    #[arg(long)]
    family: Option<usize>,
    /// Diff the closed formula against the brute-force interval oracle.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    matching: Option<String>,
    /// Unlabeled pattern; draws its canonical representative, unlabeled.
    #[arg(long)]
    unlabeled: Option<String>,
    #[arg(long, value_enum, default_value_t = Style::Linear)]
    style: Style,
    /// Output path; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Style {
    Linear,
    Circular,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn bound_error(n: usize, bound: usize) -> ExitCode {
    eprintln!("error: order {n} exceeds the safety bound {bound}; raise --bound to proceed");
    ExitCode::from(3)
}

/// A pattern list: the whole string is tried as one matching first, then
/// split on commas.
fn parse_patterns(s: &str) -> Result<Vec<Matching>, matchkit::Error> {
    if let Ok(m) = s.parse::<Matching>() {
        return Ok(vec![m]);
    }
    s.split(',').map(|t| t.trim().parse()).collect()
}

fn print_table(t: &CountTable, format: Format) {
    match format {
        Format::Json => println!("{}", t.to_json()),
        Format::Csv => print!("{}", t.to_csv()),
    }
}

/// Prints both tables and diffs them; exit 1 on the first divergence.
fn check_tables(oracle: &CountTable, formula: &CountTable, format: Format) -> ExitCode {
    match format {
        Format::Json => println!(
            "{}",
            json!({
                "query": oracle.label,
                "diverges_at": oracle.first_divergence(formula),
                "tables": [oracle.to_json(), formula.to_json()],
            })
        ),
        Format::Csv => {
            println!("# source: {}", oracle.source.name());
            print!("{}", oracle.to_csv());
            println!("# source: {}", formula.source.name());
            print!("{}", formula.to_csv());
        }
    }
    match oracle.first_divergence(formula) {
        Some(n) => {
            eprintln!(
                "check failed at n = {n}: oracle {} vs formula {}",
                oracle.get(n).unwrap(),
                formula.get(n).unwrap()
            );
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}

fn mu1212_closed_table(n_max: usize) -> CountTable {
    let counts = (0..=n_max).map(formulas::mu1212_closed).collect();
    CountTable::new("mu(1212)", counts, Source::Formula("binom(2n-1,n-2)".into()))
}

/// Closed formula matching a count query, when one is known.
fn formula_for(args: &CountArgs, label: &str) -> Option<CountTable> {
    if let Some(u) = &args.avoid_unlabeled {
        let which = match u.trim() {
            "[112323]" => UnlabeledFormula::Pattern112323,
            "[123132]" => UnlabeledFormula::Pattern123132,
            _ => return None,
        };
        let mut t = formulas::unlabeled_closed_table(which, args.n);
        t.label = label.to_string();
        return Some(t);
    }
    if let Some(p) = &args.mu {
        if p.trim() == "1212" {
            return Some(mu1212_closed_table(args.n));
        }
    }
    if let Some(p) = &args.avoid {
        match p.trim() {
            "1212" | "1221" => {
                let counts = (0..=args.n).map(|n| matchkit::numbers::catalan(n as u64)).collect();
                return Some(CountTable::new(
                    label,
                    counts,
                    Source::Formula("catalan".into()),
                ));
            }
            "123123" => {
                let mut t = formulas::m123123_table(args.n);
                t.label = label.to_string();
                return Some(t);
            }
            _ => return None,
        }
    }
    None
}

fn cmd_count(args: &CountArgs, format: Format) -> ExitCode {
    let selectors =
        [&args.avoid, &args.avoid_unlabeled, &args.mu].iter().filter(|s| s.is_some()).count();
    if selectors != 1 {
        return usage_error("exactly one of --avoid, --avoid-unlabeled, --mu is required");
    }
    if args.n > args.bound {
        return bound_error(args.n, args.bound);
    }

    let compute = || -> Result<CountTable, matchkit::Error> {
        if let Some(p) = &args.avoid {
            Ok(enumerate::count_avoiders(args.n, &parse_patterns(p)?))
        } else if let Some(u) = &args.avoid_unlabeled {
            Ok(enumerate::count_avoiders_unlabeled(args.n, &u.parse::<UnlabeledMatching>()?))
        } else {
            let sigma: Matching = args.mu.as_ref().unwrap().parse()?;
            Ok(enumerate::count_mu(args.n, &sigma))
        }
    };

    // advisory cache: reuse brute-force numbers when the env points at one
    let cache_path = std::env::var_os("MATCHKIT_CACHE").map(PathBuf::from);
    let mut cache = cache_path.as_deref().map(CountCache::open);

    let oracle = if args.check {
        match compute() {
            Ok(t) => t,
            Err(e) => return usage_error(&e.to_string()),
        }
    } else {
        // a cache hit must carry at least n+1 entries to be usable
        let probe_label = match compute_label(args) {
            Ok(l) => l,
            Err(e) => return usage_error(&e.to_string()),
        };
        let hit = cache
            .as_ref()
            .and_then(|c| c.get(&probe_label))
            .filter(|counts| counts.len() > args.n);
        match hit {
            Some(mut counts) => {
                counts.truncate(args.n + 1);
                CountTable::new(probe_label, counts, Source::BruteForce)
            }
            None => match compute() {
                Ok(t) => t,
                Err(e) => return usage_error(&e.to_string()),
            },
        }
    };

    if let Some(c) = cache.as_mut() {
        c.put(&oracle.label, &oracle.counts);
        if let Err(e) = c.save() {
            eprintln!("warning: could not save cache: {e}");
        }
    }

    if args.check {
        let Some(formula) = formula_for(args, &oracle.label) else {
            return usage_error("no closed formula is known for this query");
        };
        check_tables(&oracle, &formula, format)
    } else {
        print_table(&oracle, format);
        ExitCode::SUCCESS
    }
}

/// The table label a query will produce, without running the enumeration.
fn compute_label(args: &CountArgs) -> Result<String, matchkit::Error> {
    if let Some(p) = &args.avoid {
        let patterns = parse_patterns(p)?;
        let t = enumerate::count_avoiders(0, &patterns);
        Ok(t.label)
    } else if let Some(u) = &args.avoid_unlabeled {
        Ok(format!("avoid({})", u.parse::<UnlabeledMatching>()?))
    } else {
        let sigma: Matching = args.mu.as_ref().unwrap().parse()?;
        Ok(format!("mu({})", sigma.compact().unwrap_or_else(|| sigma.to_string())))
    }
}

fn cmd_series(args: &SeriesArgs, format: Format) -> ExitCode {
    let n = args.order;
    let series: Result<PowerSeries, matchkit::Error> = match args.name.as_str() {
        "catalan" => Ok(catalan_series(n)),
        "eq3-mu1212" => Ok(formulas::mu1212_gf(n)),
        "a002054" => Ok(formulas::a002054_series(n)),
        "thm36" => formulas::gf_lifting(&catalan_series(n), n),
        "cor37-a" => formulas::gf_corollary37(n).map(|(a, _)| a),
        "cor37-b" => formulas::gf_corollary37(n).map(|(_, b)| b),
        "interval-F" => {
            let t = interval::f_generating_function_table(n);
            let coeffs = (0..=n)
                .map(|i| {
                    let total = t.row_total(i);
                    matchkit::numbers::rational_from_i64(total.to_string().parse().unwrap())
                })
                .collect();
            Ok(PowerSeries::from_coeffs(coeffs))
        }
        other => return usage_error(&format!("unknown series name: {other}")),
    };
    let series = match series {
        Ok(s) => s,
        Err(e) => return usage_error(&e.to_string()),
    };
    match format {
        Format::Json => println!(
            "{}",
            json!({"name": args.name, "order": n, "coeffs": series.to_json()})
        ),
        Format::Csv => {
            println!("n,coeff");
            for (i, c) in series.coeffs().iter().enumerate() {
                println!("{i},{c}");
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_bijection(args: &BijectionArgs) -> ExitCode {
    match (args.phi, args.psi, args.roundtrip) {
        (true, false, false) => {
            let Some(text) = &args.tree else {
                return usage_error("--phi needs --tree");
            };
            let tree: TernaryTree = match text.parse() {
                Ok(t) => t,
                Err(e) => return usage_error(&e.to_string()),
            };
            let image = phi(&tree);
            println!("{}", image.compact().unwrap_or_else(|| image.to_string()));
            ExitCode::SUCCESS
        }
        (false, true, false) => {
            let Some(text) = &args.matching else {
                return usage_error("--psi needs --matching");
            };
            let m: Matching = match text.parse() {
                Ok(m) => m,
                Err(e) => return usage_error(&e.to_string()),
            };
            match psi(&m) {
                Ok(tree) => {
                    println!("{tree}");
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(&e.to_string()),
            }
        }
        (false, false, true) => {
            let Some(order) = args.order else {
                return usage_error("--roundtrip needs --order");
            };
            let trees = enumerate_ternary_trees(order);
            for t in &trees {
                let image = phi(t);
                match psi(&image) {
                    Ok(back) if back == *t => {}
                    _ => {
                        eprintln!("round trip failed for tree {t}");
                        return ExitCode::from(1);
                    }
                }
            }
            println!("OK {} cases", trees.len());
            ExitCode::SUCCESS
        }
        _ => usage_error("exactly one of --phi, --psi, --roundtrip is required"),
    }
}

fn parse_csv_params(s: &str, want: usize) -> Result<Vec<usize>, String> {
    let parts: Result<Vec<usize>, _> = s.split(',').map(|t| t.trim().parse::<usize>()).collect();
    match parts {
        Ok(v) if v.len() == want => Ok(v),
        Ok(v) => Err(format!("expected {want} comma-separated integers, got {}", v.len())),
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_interval(args: &IntervalArgs, format: Format) -> ExitCode {
    let selectors = [
        args.tau.is_some(),
        args.ks.is_some(),
        args.khabc.is_some(),
        args.family.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if selectors != 1 {
        return usage_error("exactly one of --tau, --ks, --khabc, --family is required");
    }

    if let Some(text) = &args.tau {
        let tau: Matching = match text.parse() {
            Ok(m) => m,
            Err(e) => return usage_error(&e.to_string()),
        };
        let profile = match interval::interval_profile(&tau) {
            Ok(p) => p,
            Err(e) => return usage_error(&e.to_string()),
        };
        match format {
            Format::Json => println!("{}", profile.to_json()),
            Format::Csv => {
                println!("edges,count");
                for (k, c) in profile.by_edges.iter().enumerate() {
                    println!("{},{c}", k + 1);
                }
                println!("total,{}", profile.total);
            }
        }
        return ExitCode::SUCCESS;
    }

    if let Some(text) = &args.ks {
        let p = match parse_csv_params(text, 3) {
            Ok(p) => p,
            Err(e) => return usage_error(&e),
        };
        let (k, r, s) = (p[0], p[1], p[2]);
        let formula = match interval::formula_ks(k, r, s) {
            Ok(v) => v,
            Err(e) => return usage_error(&e.to_string()),
        };
        if args.check {
            let tau = interval::build_ks(k, r, s).expect("validated");
            let oracle = interval::interval_profile(&tau).expect("nonempty").total;
            println!("{}", json!({
                "params": {"k": k, "r": r, "s": s},
                "formula": formula.to_string(),
                "oracle": oracle.to_string(),
            }));
            if formula != oracle {
                eprintln!("check failed: formula {formula} vs oracle {oracle}");
                return ExitCode::from(1);
            }
        } else {
            println!("{}", json!({"params": {"k": k, "r": r, "s": s}, "total": formula.to_string()}));
        }
        return ExitCode::SUCCESS;
    }

    if let Some(text) = &args.khabc {
        let p = match parse_csv_params(text, 5) {
            Ok(p) => p,
            Err(e) => return usage_error(&e),
        };
        let (k, h, a, b, c) = (p[0], p[1], p[2], p[3], p[4]);
        let f = match interval::formula_khabc(k, h, a, b, c) {
            Ok(v) => v,
            Err(e) => return usage_error(&e.to_string()),
        };
        let body = json!({
            "params": {"k": k, "h": h, "a": a, "b": b, "c": c},
            "chi": [f.chi1.to_string(), f.chi2.to_string(), f.chi3.to_string()],
            "total": f.total.to_string(),
        });
        if args.check {
            let tau = interval::build_khabc(k, h, a, b, c).expect("validated");
            let profile = interval::interval_small_edge_profile(&tau).expect("nonempty");
            let oracle: Vec<String> = (1..=3)
                .map(|i| profile.get(i).cloned().unwrap_or_default().to_string())
                .collect();
            println!("{}", json!({
                "params": body["params"],
                "formula": [f.chi1.to_string(), f.chi2.to_string(), f.chi3.to_string()],
                "oracle": oracle,
            }));
            let agree = oracle
                == [f.chi1.to_string(), f.chi2.to_string(), f.chi3.to_string()];
            if !agree {
                eprintln!("check failed: formula chi vs oracle profile differ");
                return ExitCode::from(1);
            }
        } else {
            println!("{body}");
        }
        return ExitCode::SUCCESS;
    }

    let n = args.family.unwrap();
    let total = interval::f_total(n);
    if args.check {
        let tau = interval::tau_family(n);
        let oracle = if n == 0 {
            BigUint::from(0u32)
        } else {
            interval::interval_profile(&tau).expect("nonempty").total
        };
        println!("{}", json!({
            "n": n,
            "formula": total.to_string(),
            "oracle": oracle.to_string(),
        }));
        if total != oracle {
            eprintln!("check failed: formula {total} vs oracle {oracle}");
            return ExitCode::from(1);
        }
    } else {
        println!("{}", json!({"n": n, "total": total.to_string()}));
    }
    ExitCode::SUCCESS
}

fn cmd_render(args: &RenderArgs) -> ExitCode {
    let (m, labeled) = if let Some(text) = &args.matching {
        match text.parse::<Matching>() {
            Ok(m) => (m, true),
            Err(e) => return usage_error(&e.to_string()),
        }
    } else if let Some(text) = &args.unlabeled {
        match text.parse::<UnlabeledMatching>() {
            Ok(u) => (u.representative().clone(), false),
            Err(e) => return usage_error(&e.to_string()),
        }
    } else {
        return usage_error("one of --matching, --unlabeled is required");
    };
    let svg = match args.style {
        Style::Linear => render::linear_svg(&m, labeled),
        Style::Circular => render::circular_svg(&m, labeled),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, svg) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{svg}"),
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            return usage_error(&format!("cannot configure thread pool: {e}"));
        }
    }
    match &cli.command {
        Command::Count(args) => cmd_count(args, cli.format),
        Command::Series(args) => cmd_series(args, cli.format),
        Command::Bijection(args) => cmd_bijection(args),
        Command::Interval(args) => cmd_interval(args, cli.format),
        Command::Render(args) => cmd_render(args),
    }
}
