use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use hermrank::constructions::{
    construct_udelta, desarguesian_spread, extend_to_hermitian, lift_partial_spread,
    pg_point_spread, select_mu, trace_gram_spread_set, UdeltaParams,
};
use hermrank::scheme::{bound_catalog, delsarte_check, eigen_table};
use hermrank::search::{
    extension_candidates, is_constant_rank_distance, maximal_set_spectrum, SearchBudget,
};
use hermrank::setfile::{parse_set_file, serialize_set, write_set_file};
use hermrank::{Error, FieldSpec, RankSet, DEFAULT_ENUMERATION_BUDGET};

mod report;

use report::Report;

const EXIT_VIOLATED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hermrank",
    version,
    about = "Constant rank-distance sets of hermitian matrices over F_{q^2}"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Cap the number of worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the eigenvalue table P_i(j) of the hermitian forms scheme.
    Eigen {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
    },
    /// Print every applicable upper bound for a constant rank-distance k set.
    Bound {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Build one of the explicit constructions as a set file.
    #[command(subcommand)]
    Construct(Construct),
    /// Check the constant rank-distance property and optionally maximality.
    Verify {
        #[arg(long)]
        file: PathBuf,
        /// Rank distance to check; defaults to the value in the file header.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        maximal: bool,
        /// Largest number of matrices the maximality scan may enumerate.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
    },
    /// Inner distribution of a set and its Delsarte inequalities.
    Distribution {
        #[arg(long)]
        file: PathBuf,
    },
    /// Exhaustive searches.
    #[command(subcommand)]
    Search(Search),
}

#[derive(Args)]
struct OutArg {
    /// Write the set file here and print a summary instead of the set.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Construct {
    /// U_δ in H_2(F_{q²}), size q² + δ − 1.
    Udelta {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        delta: usize,
        /// Comma-separated wire indices of Δ ⊆ F_q (must contain 0).
        #[arg(long, value_delimiter = ',')]
        delta_set: Option<Vec<u64>>,
        /// Wire index of μ ∈ F_q.
        #[arg(long)]
        mu: Option<u64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Trace-form symmetric spread set of F_{q^n}/F_q read in H_n(F_{q²}).
    TraceGram {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Lift of all points of PG(n−1, q²), rank distance 2.
    LiftPoints {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        /// Keep the raw Gram matrices instead of translating to contain 0.
        #[arg(long)]
        no_translate: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Lift of the Desarguesian (r−1)-spread of PG(n−1, q²), rank distance 2r.
    LiftDesarguesian {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        no_translate: bool,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum Search {
    /// Sizes of all maximal constant rank-distance k sets in H_n(F_{q²}).
    Spectrum {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Largest rank-k neighbourhood of 0 to search.
        #[arg(long, default_value_t = 4096)]
        budget: u64,
        /// Stop after this many seconds and report a partial spectrum.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Only search cliques through one fixed rank-k matrix.
        #[arg(long)]
        anchored: bool,
        /// Write one set file per size into this directory.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
}

fn field(q: u64) -> Result<Arc<FieldSpec>, Error> {
    FieldSpec::from_q(q).map(Arc::new)
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Consistency(_) => EXIT_VIOLATED,
        _ => EXIT_USAGE,
    }
}

fn big(x: &BigInt) -> Value {
    // keep exact integers readable by JSON consumers without precision loss
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn command_line() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    args.join(" ")
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Eigen { q, n } => eigen(cli, *q, *n),
        Command::Bound { q, n, k } => bound(cli, *q, *n, *k),
        Command::Construct(c) => construct(cli, c),
        Command::Verify {
            file,
            k,
            maximal,
            budget,
        } => verify(cli, file, *k, *maximal, *budget),
        Command::Distribution { file } => distribution(cli, file),
        Command::Search(Search::Spectrum {
            q,
            n,
            k,
            budget,
            time_limit,
            anchored,
            witness_dir,
        }) => spectrum(
            cli,
            *q,
            *n,
            *k,
            *budget,
            *time_limit,
            *anchored,
            witness_dir.as_ref(),
        ),
    }
}

fn eigen(cli: &Cli, q: u64, n: usize) -> Result<u8, Error> {
    let table = eigen_table(q, n)?;
    table.verify_invariants()?;
    let rows: Vec<Value> = table
        .rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(big).collect()))
        .collect();
    let mut rep = Report::new(command_line());
    rep.param("q", q)
        .param("n", n)
        .result("P", rows)
        .result("invariants", "row 0, row 1 closed form, valencies, P_k(n) product, column sums, ratio identity: all hold")
        .cite("closed form P_1(j) = ((−q)^(2n−j) − 1)/(q+1)")
        .cite("three-term recurrence for P_(k+1) with coefficients b_i, c_i, a_i")
        .cite("formal self-duality Q = P of the hermitian forms scheme");
    rep.print(cli.json);
    Ok(0)
}

fn bound(cli: &Cli, q: u64, n: usize, k: usize) -> Result<u8, Error> {
    let report = bound_catalog(q, n, k)?;
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "value": e.value.to_string(),
                "ceiling": big(&e.ceiling()),
                "scope": e.scope.as_str(),
                "condition": e.condition,
            })
        })
        .collect();
    let mut rep = Report::new(command_line());
    rep.param("q", q)
        .param("n", n)
        .param("k", k)
        .result("bounds", entries);
    match report.certified_ceiling() {
        Some(c) => rep.result("certified_ceiling", big(&c)),
        None => rep.result("certified_ceiling", Value::Null),
    };
    if let Some(e) = report.find("rank-at-most-two") {
        rep.result(
            "rank_at_most_two_with_a1",
            format!("{} − a_1·q^(n−1)", e.value),
        );
    }
    for e in &report.entries {
        rep.cite(format!("{}: {}", e.name, e.source));
    }
    rep.print(cli.json);
    Ok(0)
}

fn emit_set(
    cli: &Cli,
    set: &RankSet,
    out: &OutArg,
    what: &str,
    extra: &[(&str, Value)],
) -> Result<u8, Error> {
    let Some(path) = &out.out else {
        print!("{}", serialize_set(set));
        return Ok(0);
    };
    write_set_file(set, path)?;
    let check = is_constant_rank_distance(set, set.k());
    let f = set.field();
    let mut rep = Report::new(command_line());
    rep.param("q", f.q())
        .param("n", set.n())
        .param("k", set.k());
    for (key, v) in extra {
        rep.param(key, v.clone());
    }
    rep.result("file", path.display().to_string())
        .result("size", set.len())
        .result("constant_rank_distance", check.holds())
        .cite(what);
    rep.print(cli.json);
    Ok(if check.holds() { 0 } else { EXIT_VIOLATED })
}

fn construct(cli: &Cli, c: &Construct) -> Result<u8, Error> {
    match c {
        Construct::Udelta {
            q,
            delta,
            delta_set,
            mu,
            out,
        } => {
            let f = field(*q)?;
            let mu = match mu {
                Some(i) => f.element(*i)?,
                None => select_mu(&f),
            };
            let params = match delta_set {
                Some(ids) => {
                    let set = ids
                        .iter()
                        .map(|&i| f.element(i))
                        .collect::<Result<Vec<_>, _>>()?;
                    if set.len() != *delta {
                        return Err(Error::Usage(format!(
                            "--delta-set has {} elements, --delta is {delta}",
                            set.len()
                        )));
                    }
                    UdeltaParams::new(&f, set, mu)?
                }
                None => {
                    let defaults = UdeltaParams::with_delta(&f, *delta)?;
                    UdeltaParams::new(&f, defaults.delta_set().to_vec(), mu)?
                }
            };
            let u = construct_udelta(f, &params)?;
            let extra = [
                ("delta", json!(params.delta())),
                (
                    "delta_set",
                    json!(params
                        .delta_set()
                        .iter()
                        .map(|x| x.index())
                        .collect::<Vec<_>>()),
                ),
                ("mu", json!(params.mu().index())),
            ];
            emit_set(
                cli,
                &u,
                out,
                "maximal partial spread sets U_δ of size q² + δ − 1 in H_2(F_{q²})",
                &extra,
            )
        }
        Construct::TraceGram { q, n, out } => {
            let u = extend_to_hermitian(&trace_gram_spread_set(field(*q)?, *n)?)?;
            emit_set(cli, &u, out, "Gram matrices of the trace form of F_{q^n}/F_q, a linear symmetric spread set; its hermitian extension is maximal", &[])
        }
        Construct::LiftPoints {
            q,
            n,
            no_translate,
            out,
        } => {
            let d = pg_point_spread(field(*q)?, *n)?;
            let u = lift_partial_spread(&d, !no_translate)?;
            emit_set(
                cli,
                &u,
                out,
                "lift S ↦ X_S·conj(X_S)ᵀ of the points of PG(n−1, q²)",
                &[("r", json!(1))],
            )
        }
        Construct::LiftDesarguesian {
            q,
            n,
            r,
            no_translate,
            out,
        } => {
            let d = desarguesian_spread(field(*q)?, *n, *r)?;
            let u = lift_partial_spread(&d, !no_translate)?;
            emit_set(
                cli,
                &u,
                out,
                "lift S ↦ X_S·conj(X_S)ᵀ of the Desarguesian (r−1)-spread of PG(n−1, q²)",
                &[("r", json!(r))],
            )
        }
    }
}

fn verify(
    cli: &Cli,
    file: &PathBuf,
    k: Option<usize>,
    maximal: bool,
    budget: u64,
) -> Result<u8, Error> {
    let set = parse_set_file(file)?;
    let k = k.unwrap_or(set.k());
    if k == 0 || k > set.n() {
        return Err(Error::Usage(format!("--k {k} must lie in 1..={}", set.n())));
    }
    let set = set.with_k(k)?;
    let check = is_constant_rank_distance(&set, k);
    let mut rep = Report::new(command_line());
    rep.param("file", file.display().to_string())
        .param("q", set.field().q())
        .param("n", set.n())
        .param("k", k)
        .result("size", set.len())
        .result("constant_rank_distance", check.holds())
        .cite("constant rank-distance k: every difference of distinct members and every nonzero member has rank k");
    let mut code = 0;
    if let Some(v) = check.violation {
        rep.result("violation", v.to_string());
        eprintln!("violation: {v}");
        code = EXIT_VIOLATED;
    }
    if maximal {
        if check.holds() {
            let candidates = extension_candidates(&set, budget)?;
            rep.result("maximal", candidates.is_empty())
                .result("extension_candidates", candidates.len())
                .cite(
                    "maximality: no hermitian matrix outside the set extends it (exhaustive scan)",
                );
            if !candidates.is_empty() {
                eprintln!("not maximal: {} matrices extend the set", candidates.len());
                code = EXIT_VIOLATED;
            }
        } else {
            rep.result("maximal", Value::Null);
        }
    }
    rep.print(cli.json);
    Ok(code)
}

fn distribution(cli: &Cli, file: &PathBuf) -> Result<u8, Error> {
    let set = parse_set_file(file)?;
    let a = set.inner_distribution()?;
    let table = eigen_table(set.field().q() as u64, set.n())?;
    let d = delsarte_check(&a, &table)?;
    let bounds = bound_catalog(set.field().q() as u64, set.n(), set.k())?;
    let ceiling = bounds.certified_ceiling();
    let mut rep = Report::new(command_line());
    rep.param("file", file.display().to_string())
        .param("q", set.field().q())
        .param("n", set.n())
        .param("k", set.k())
        .result("size", set.len())
        .result(
            "a",
            a.values().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        )
        .result(
            "aQ",
            d.values.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        )
        .result("delsarte_feasible", d.feasible)
        .result(
            "certified_ceiling",
            ceiling.as_ref().map(big).unwrap_or(Value::Null),
        )
        .cite("inner distribution a_i = #{(x, y) ∈ U×U : rank(x − y) = i}/|U|")
        .cite("Delsarte inequalities (aQ)_i ≥ 0 with Q = P");
    rep.print(cli.json);
    if !d.feasible {
        eprintln!("Delsarte inequalities violated");
        return Ok(EXIT_VIOLATED);
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn spectrum(
    cli: &Cli,
    q: u64,
    n: usize,
    k: usize,
    max_vertices: u64,
    time_limit: Option<f64>,
    anchored: bool,
    witness_dir: Option<&PathBuf>,
) -> Result<u8, Error> {
    let time_limit = match time_limit {
        Some(t) if !(t.is_finite() && t >= 0.0) => {
            return Err(Error::Usage(format!(
                "--time-limit {t} must be a non-negative number"
            )))
        }
        Some(t) => Some(Duration::from_secs_f64(t)),
        None => None,
    };
    let budget = SearchBudget {
        max_vertices,
        time_limit,
        anchored,
        ..Default::default()
    };
    let res = maximal_set_spectrum(field(q)?, n, k, budget)?;
    let mut rep = Report::new(command_line());
    rep.param("q", q)
        .param("n", n)
        .param("k", k)
        .param("anchored", anchored)
        .result("complete", res.complete)
        .result("sizes", res.sizes.clone())
        .result("vertices", res.vertices)
        .result("maximal_cliques", res.maximal_cliques)
        .cite("every maximal set contains 0 and is {0} ∪ C for a maximal clique C of the rank-k graph on the rank-k matrices")
        .cite("maximal clique enumeration with pivoting");
    if anchored {
        rep.cite("congruences fix 0 and act transitively on rank-k matrices, so cliques through one vertex suffice");
    }
    if let Some(dir) = witness_dir {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        let mut files = Vec::new();
        for (size, w) in &res.witnesses {
            let path = dir.join(format!("q{q}_n{n}_k{k}_size{size}.hrds"));
            write_set_file(w, &path)?;
            files.push(path.display().to_string());
        }
        rep.result("witness_files", files);
    }
    rep.print(cli.json);
    if !res.complete {
        eprintln!("time limit reached: the spectrum above is partial");
        return Ok(EXIT_BUDGET);
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
