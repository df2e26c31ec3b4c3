//! `kron`: Kronecker coefficients and related analyses from the command line.

mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use kron_core::bounds::{compare_bounds, identity_b};
use kron_core::engine::{build_sigma_poset, feasible_sigma_set, EngineOptions, Strategy};
use kron_core::stability::{is_stable_face_member, stable_mu_nu};
use kron_core::substitution::check_matrix_properties;
use kron_core::vanishing::{check_vanishing, ressayre_check};
use kron_core::vpf::vpf_polynomial_degree;
use kron_core::{build_matrix, parse_partition, KronEngine, PartitionTriple, Permutation};
use serde_json::{json, Map, Value};

#[derive(Parser, Debug)]
#[command(name = "kron", version, about = "Kronecker coefficients via vector partition functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output_format: Format,

    /// Worker threads for the engine (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Directory for persistent partition function memos.
    #[arg(long, global = true, env = "KRON_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Print one JSON line per alternant term on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Debug, Clone)]
struct Shape {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug, Clone)]
struct TripleArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long)]
    lambda: String,
    #[arg(long)]
    mu: String,
    #[arg(long)]
    nu: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The Kronecker coefficient g(lambda, mu, nu).
    Compute(TripleArgs),
    /// The atomic coefficient p_A(b(lambda, mu, nu; Id)).
    Atomic(TripleArgs),
    /// Upper bounds on g, with the smallest marked.
    Bounds(TripleArgs),
    /// Linear vanishing conditions, optionally with the (e, f) family.
    Vanish {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, requires = "ressayre_f")]
        ressayre_e: Option<usize>,
        #[arg(long, requires = "ressayre_e")]
        ressayre_f: Option<usize>,
    },
    /// The (mu, nu) completing lambda to a triple with coefficient 1.
    StableTriple {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        lambda: String,
    },
    /// Permutations whose term can be nonzero for some triple.
    FeasibleSet {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        size_equality: bool,
    },
    /// Dominance order on alternant terms.
    Poset {
        #[command(flatten)]
        shape: Shape,
        /// Restrict to these permutations (comma-free one-line notation, space or ';' separated).
        #[arg(long, value_delimiter = ';', num_args = 1..)]
        restrict: Option<Vec<String>>,
        /// Restrict to the feasible set.
        #[arg(long, conflicts_with = "restrict")]
        feasible: bool,
    },
    /// g(base + k * direction) for k = 0..=k-max.
    StabilitySeq {
        #[command(flatten)]
        base: TripleArgs,
        #[arg(long)]
        d_lambda: String,
        #[arg(long)]
        d_mu: String,
        #[arg(long)]
        d_nu: String,
        #[arg(long, default_value_t = 6)]
        k_max: u32,
    },
    /// Writes the matrix A^{m,n} in cache format.
    Matrix {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        path: PathBuf,
    },
    /// Recomputes the reference examples and prints a pass/fail table.
    ReproducePaper {
        /// Skip the checks that take more than a second or so.
        #[arg(long)]
        quick: bool,
    },
}

/// A failed run: exit code and message.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<kron_core::Error> for Failure {
    fn from(e: kron_core::Error) -> Self {
        Failure {
            code: if e.is_resource_guard() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn flag<T>(name: &str, r: kron_core::Result<T>) -> Outcome<T> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("--{name}: {}", f.message);
        f
    })
}

fn triple(a: &TripleArgs) -> Outcome<PartitionTriple> {
    let (m, n) = (a.shape.m, a.shape.n);
    let lambda = flag("lambda", parse_partition(&a.lambda, m * n))?;
    let mu = flag("mu", parse_partition(&a.mu, m))?;
    let nu = flag("nu", parse_partition(&a.nu, n))?;
    Ok(PartitionTriple::new(m, n, &lambda, &mu, &nu)?)
}

fn engine(shape: &Shape, cli: &Cli, collect_terms: bool) -> Outcome<KronEngine> {
    // Only the memo strategy has state worth persisting.
    let strategy = if cli.cache_dir.is_some() {
        Strategy::Memo
    } else {
        Strategy::Auto
    };
    let options = EngineOptions {
        collect_terms,
        strategy,
        ..EngineOptions::default()
    };
    let e = KronEngine::with_options(shape.m, shape.n, options)?;
    if let Some(dir) = &cli.cache_dir {
        if dir.exists() {
            e.load_memos(dir)?;
        }
    }
    Ok(e)
}

fn save(e: &KronEngine, cli: &Cli) -> Outcome<()> {
    if let Some(dir) = &cli.cache_dir {
        e.save_memos(dir)?;
    }
    Ok(())
}

fn header(t: &PartitionTriple) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("m".into(), json!(t.m));
    o.insert("n".into(), json!(t.n));
    o.insert("lambda".into(), json!(t.lambda.to_string()));
    o.insert("mu".into(), json!(t.mu.to_string()));
    o.insert("nu".into(), json!(t.nu.to_string()));
    o
}

fn shape_header(s: &Shape) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("m".into(), json!(s.m));
    o.insert("n".into(), json!(s.n));
    o
}

/// Flat key/value rendering; nested values are shown as compact JSON.
fn table(o: &Map<String, Value>) -> String {
    let width = o.keys().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in o {
        let text = match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out.push_str(&format!("{k:<width$}  {text}\n"));
    }
    out
}

fn emit(cli: &Cli, o: Map<String, Value>, text: Option<String>) {
    match cli.output_format {
        Format::Json => println!("{}", Value::Object(o)),
        Format::Table => print!("{}", text.unwrap_or_else(|| table(&o))),
    }
}

fn run(cli: &Cli) -> Outcome<()> {
    let start = Instant::now();
    let wall = |o: &mut Map<String, Value>| {
        o.insert("wall_ms".into(), json!(start.elapsed().as_millis() as u64));
    };
    match &cli.command {
        Command::Compute(a) => {
            let t = triple(a)?;
            let e = engine(&a.shape, cli, cli.verbose)?;
            let r = e.kronecker(&t)?;
            save(&e, cli)?;
            if let Some(terms) = &r.terms {
                for term in terms.iter().filter(|t| !t.skipped) {
                    eprintln!("{}", serde_json::to_string(term).expect("term serializes"));
                }
            }
            let mut o = header(&t);
            o.insert("g".into(), json!(r.g.to_string()));
            o.insert("atomic".into(), json!(r.atomic.to_string()));
            o.insert("nonzero_terms".into(), json!(r.nonzero_terms));
            o.insert("terms_evaluated".into(), json!(r.terms_evaluated));
            o.insert("terms_skipped".into(), json!(r.terms_skipped));
            wall(&mut o);
            emit(cli, o, None);
        }
        Command::Atomic(a) => {
            let t = triple(a)?;
            let e = engine(&a.shape, cli, false)?;
            let g = e.atomic(&t)?;
            save(&e, cli)?;
            let mut o = header(&t);
            o.insert("atomic".into(), json!(g.to_string()));
            o.insert("terms_evaluated".into(), json!(1));
            o.insert("terms_skipped".into(), json!(0));
            wall(&mut o);
            emit(cli, o, None);
        }
        Command::Bounds(a) => {
            let t = triple(a)?;
            let report = compare_bounds(&t)?;
            let mut o = header(&t);
            o.insert("bounds".into(), serde_json::to_value(&report.entries).expect("serializes"));
            o.insert("best".into(), json!(report.best));
            wall(&mut o);
            emit(cli, o, Some(report.to_table()));
        }
        Command::Vanish {
            triple: a,
            ressayre_e,
            ressayre_f,
        } => {
            let t = triple(a)?;
            let report = check_vanishing(&t);
            let mut o = header(&t);
            o.insert("report".into(), serde_json::to_value(&report).expect("serializes"));
            if let (Some(e), Some(f)) = (ressayre_e, ressayre_f) {
                let r = ressayre_check(&t.lambda, &t.mu, &t.nu, *e, *f);
                o.insert("ressayre".into(), serde_json::to_value(&r).expect("serializes"));
            }
            wall(&mut o);
            let text = {
                let mut s = String::new();
                for q in &report.inequalities {
                    let mark = if q.holds { ">=" } else { "<" };
                    s.push_str(&format!("{:<4} {} {mark} {}\n", q.label, q.left, q.right));
                }
                s.push_str(&format!("conclusion: {:?}\n", report.conclusion));
                s
            };
            emit(cli, o, Some(text));
        }
        Command::StableTriple { shape, lambda } => {
            let lambda = flag("lambda", parse_partition(lambda, shape.m * shape.n))?;
            let (mu, nu) = stable_mu_nu(&lambda, shape.m, shape.n)?;
            let t = PartitionTriple::new(shape.m, shape.n, &lambda, &mu, &nu)?;
            let b = identity_b(&t);
            let mut report = Map::new();
            report.insert("identity_b".into(), json!(b));
            report.insert("on_face".into(), json!(is_stable_face_member(&t)));
            if shape.m * shape.n <= EngineOptions::default().max_mn {
                let e = engine(shape, cli, false)?;
                let r = e.kronecker(&t)?;
                save(&e, cli)?;
                report.insert("g".into(), json!(r.g.to_string()));
                report.insert("atomic".into(), json!(r.atomic.to_string()));
            }
            let mut o = header(&t);
            o.insert("report".into(), Value::Object(report));
            wall(&mut o);
            emit(cli, o, None);
        }
        Command::FeasibleSet {
            shape,
            size_equality,
        } => {
            let set = feasible_sigma_set(shape.m, shape.n, *size_equality)?;
            let mut o = shape_header(shape);
            o.insert("size_equality".into(), json!(size_equality));
            o.insert("count".into(), json!(set.len()));
            o.insert("permutations".into(), json!(names(&set)));
            wall(&mut o);
            emit(cli, o, None);
        }
        Command::Poset {
            shape,
            restrict,
            feasible,
        } => {
            let subset = match (restrict, feasible) {
                (Some(list), _) => Some(
                    list.iter()
                        .flat_map(|s| s.split_whitespace())
                        .map(|p| flag("restrict", Permutation::parse(p)))
                        .collect::<Outcome<Vec<_>>>()?,
                ),
                (None, true) => Some(feasible_sigma_set(shape.m, shape.n, true)?),
                (None, false) => None,
            };
            let poset = build_sigma_poset(shape.m, shape.n, subset.as_deref())?;
            let label = |i: usize| poset.elements[i][0].to_string();
            let covers: Vec<[String; 2]> = poset.covers.iter().map(|&(u, l)| [label(u), label(l)]).collect();
            let elements: Vec<Vec<String>> = poset.elements.iter().map(|c| names(c)).collect();
            let maximal: Vec<String> = poset.maximal().into_iter().map(label).collect();
            let mut o = shape_header(shape);
            o.insert("elements".into(), json!(elements));
            o.insert("covers".into(), json!(covers));
            o.insert("maximal".into(), json!(maximal));
            wall(&mut o);
            emit(cli, o, None);
        }
        Command::StabilitySeq {
            base,
            d_lambda,
            d_mu,
            d_nu,
            k_max,
        } => {
            let t = triple(base)?;
            let (m, n) = (base.shape.m, base.shape.n);
            let dir = PartitionTriple::new(
                m,
                n,
                &flag("d-lambda", parse_partition(d_lambda, m * n))?,
                &flag("d-mu", parse_partition(d_mu, m))?,
                &flag("d-nu", parse_partition(d_nu, n))?,
            )?;
            let e = engine(&base.shape, cli, false)?;
            let seq = e.stability_sequence(&t, &dir, *k_max)?;
            save(&e, cli)?;
            let mut o = header(&t);
            o.insert("direction".into(), json!(dir.to_string()));
            o.insert("g".into(), json!(seq.iter().map(|g| g.to_string()).collect::<Vec<_>>()));
            wall(&mut o);
            emit(cli, o, None);
        }
        Command::Matrix { shape, path } => {
            let a = build_matrix(shape.m, shape.n)?;
            a.write_file(path)?;
            let props = check_matrix_properties(&a);
            let mut o = shape_header(shape);
            o.insert("rows".into(), json!(a.rows()));
            o.insert("cols".into(), json!(a.cols()));
            o.insert("degree".into(), json!(vpf_polynomial_degree(&a)));
            o.insert("hash".into(), json!(a.hash()));
            o.insert("path".into(), json!(path.display().to_string()));
            o.insert("properties".into(), serde_json::to_value(&props).expect("serializes"));
            wall(&mut o);
            emit(cli, o, None);
        }
        Command::ReproducePaper { quick } => {
            let rows = reproduce::run_all(*quick);
            match cli.output_format {
                Format::Json => println!("{}", json!(rows)),
                Format::Table => print!("{}", reproduce::render(&rows)),
            }
        }
    }
    Ok(())
}

fn names(perms: &[Permutation]) -> Vec<String> {
    perms.iter().map(Permutation::to_string).collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
