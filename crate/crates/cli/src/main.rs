//! `sdres`: sparse difference resultants from the command line.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sdresultant::ansatz::SearchMode;
use sdresultant::diffpoly::GenericSystem;
use sdresultant::engine::{
    block_effective_orders, certificate_from_polynomial, search_resultant, verify_certificate, SearchOptions,
};
use sdresultant::io::json::order_value;
use sdresultant::io::{certificate_to_json, emit_certificate, format_poly, parse_document, parse_poly, CertificateFormat, SystemDocument};
use sdresultant::jacobi::{bounds_with_subset, jacobi_number, order_matrix, BoundReport};
use sdresultant::order::Order;
use sdresultant::reduction::dense::{dense_resultant, DenseReport};
use sdresultant::reduction::polytope::{mixed_volume, Polytope};
use sdresultant::reduction::{mixed_volume_degrees, resultant_via_reduction, ReductionTrace};
use sdresultant::support::{generic_support_matrix, rank_generic, super_essential_subset, RankMode};
use sdresultant::Error;

#[derive(Parser)]
#[command(name = "sdres", version, about = "Sparse difference resultants of Laurent difference polynomial systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized step (rank tests, verification points).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; `SDRES_THREADS` is read when absent.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Exact symbolic ranks instead of random specializations.
    #[arg(long, global = true)]
    exact: bool,
}

#[derive(Args)]
struct Input {
    /// System document; stdin when absent or `-`.
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Ansatz,
    Reduction,
}

#[derive(Subcommand)]
enum Command {
    /// Laurent transformal essentiality of the system.
    Essential(Input),
    /// The unique super-essential subset.
    SuperEssential(Input),
    /// Order matrix and Jacobi numbers `J_i`.
    Jacobi(Input),
    /// Every order bound and the final search bounds.
    Bounds(Input),
    /// Compute the sparse difference resultant.
    Resultant {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        engine: Option<Engine>,
        /// Try layer-degree vectors one at a time.
        #[arg(long)]
        multihomog: bool,
        /// Verification trials.
        #[arg(long)]
        trials: Option<usize>,
        /// Print the reduction stages to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Check a resultant against a system.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Certificate in text or JSON form.
        #[arg(long)]
        certificate: PathBuf,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Resultant of the generic dense system with the given orders and degrees.
    DenseResultant {
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Mixed volumes of explicit point sets, or the per-polynomial mixed-volume degrees of
    /// a system prolonged by `--prolong`.
    MixedVolume {
        #[command(flatten)]
        input: Input,
        /// A point set such as `0,0;1,0;0,1`; repeat once per polytope.
        #[arg(long = "polytope")]
        polytopes: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        prolong: Vec<i64>,
    },
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    msg: String,
    /// Printed to stdout before the message, for errors that carry a report.
    stdout: Option<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } => 2,
            Error::NotEssential => 3,
            Error::BoundsExceeded(_) | Error::SizeGuard(_) | Error::TooLarge(_) => 4,
            Error::InternalConsistency(_) => 5,
            _ => 1,
        };
        Failure { code, msg: e.to_string(), stdout: None }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 1, msg: msg.into(), stdout: None }
}

struct Ctx {
    json: bool,
    seed: u64,
    rank_mode: RankMode,
}

impl Ctx {
    fn emit(&self, text: String, value: Value) -> String {
        if self.json {
            let mut s = serde_json::to_string_pretty(&value).unwrap();
            s.push('\n');
            s
        } else {
            text
        }
    }
}

fn read_input(input: &Input) -> Result<String, Failure> {
    match input.file.as_ref().filter(|p| p.as_os_str() != "-") {
        Some(p) => std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn load(input: &Input) -> Result<SystemDocument, Failure> {
    Ok(parse_document(&read_input(input)?)?)
}

fn doc_option<T: std::str::FromStr>(doc: &SystemDocument, key: &str) -> Result<Option<T>, Failure> {
    doc.options
        .get(key)
        .map(|v| v.parse().map_err(|_| usage(format!("option {key}: cannot parse {v:?}"))))
        .transpose()
}

fn orders_text(v: &[Order]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn orders_json(v: &[Order]) -> Value {
    Value::Array(v.iter().map(|&o| order_value(o)).collect())
}

fn set_text(v: &[usize]) -> String {
    format!("{{{}}}", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn essential(ctx: &Ctx, sys: &GenericSystem) -> String {
    let all: Vec<usize> = (0..sys.len()).collect();
    let rank = rank_generic(&generic_support_matrix(sys, &all), ctx.rank_mode);
    let ok = rank == sys.n();
    ctx.emit(
        format!("{}\nrank {rank} of {}\n", if ok { "essential" } else { "not essential" }, sys.n()),
        json!({"essential": ok, "rank": rank, "n": sys.n()}),
    )
}

fn bounds_output(ctx: &Ctx, b: &BoundReport) -> String {
    let text = format!(
        "T = {}\nJ = {}\nlowest orders = {}\ngamma = {}\nJ - gamma = {}\nJac((A_T)_i) = {}\nlowest shifts = {}\ns = {}\nm = {}\neffective J~ = {}\neffective bound J_ = {}\nfinal = {}\n",
        set_text(&b.super_essential),
        orders_text(&b.jacobi),
        orders_text(&b.lowest_orders),
        b.gamma,
        orders_text(&b.modified),
        orders_text(&b.super_essential_jacobi),
        orders_text(&b.lowest_shifts),
        b.lowest_shift_sum,
        b.lowest_shift_max,
        orders_text(&b.effective),
        orders_text(&b.effective_order_bound),
        orders_text(&b.final_bound),
    );
    ctx.emit(
        text,
        json!({
            "super_essential": b.super_essential,
            "jacobi": orders_json(&b.jacobi),
            "lowest_orders": orders_json(&b.lowest_orders),
            "gamma": b.gamma,
            "modified": orders_json(&b.modified),
            "super_essential_jacobi": orders_json(&b.super_essential_jacobi),
            "lowest_shifts": orders_json(&b.lowest_shifts),
            "lowest_shift_sum": b.lowest_shift_sum,
            "lowest_shift_max": b.lowest_shift_max,
            "effective": orders_json(&b.effective),
            "effective_order_bound": orders_json(&b.effective_order_bound),
            "final_bound": orders_json(&b.final_bound),
            "clamped": b.clamped,
        }),
    )
}

fn trace_text(t: &ReductionTrace) -> String {
    let pcs: Vec<String> = t.essential.iter().map(|(i, k)| format!("s^{k}P{i}")).collect();
    let mut s = format!(
        "super-essential T = {}\nprolongation K = {}\nprolonged polynomials: {}\nessential subset: {{{}}}\nkept: {}\nset to 1: {}\ninvariant factors: {}\n",
        set_text(&t.super_essential),
        orders_text(&t.prolongation),
        t.prolonged.len(),
        pcs.join(", "),
        t.kept.join(" "),
        t.set_to_one.join(" "),
        t.invariant_factors.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
    );
    for sub in &t.substitutions {
        s.push_str(&format!("  {sub}\n"));
    }
    if let Some(mv) = &t.mixed_volumes {
        s.push_str(&format!("mixed volumes: {mv:?}\n"));
    }
    s.push_str(&format!("degrees per polynomial: {:?}\n", t.poly_degrees));
    s
}

fn report_json(r: &DenseReport) -> Value {
    json!({
        "n": r.n,
        "orders": r.orders,
        "degrees": r.degrees,
        "block_orders": r.block_orders,
        "degree_cap": r.degree_cap.to_string(),
        "layer_degrees": r.layer_degrees,
        "block_degrees": r.block_degrees,
        "total_degree": r.total_degree,
        "ansatz_size": r.ansatz_size.to_string(),
    })
}

fn report_text(r: &DenseReport) -> String {
    let mut s = format!("block orders = {:?}\ndegree cap = {}\n", r.block_orders, r.degree_cap);
    if let Some(l) = &r.layer_degrees {
        s.push_str(&format!("layer degrees = {l:?}\n"));
    }
    if let (Some(b), Some(t)) = (&r.block_degrees, r.total_degree) {
        s.push_str(&format!("block degrees = {b:?}\ntotal degree = {t}\n"));
    }
    s
}

fn parse_points(spec: &str) -> Result<Vec<Vec<i64>>, Failure> {
    spec.split(';')
        .map(|p| {
            p.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| usage(format!("bad coordinate {x:?} in {spec:?}"))))
                .collect()
        })
        .collect()
}

fn run(cli: Cli) -> Result<String, Failure> {
    let seed = cli.seed.unwrap_or(0);
    let rank_mode = if cli.exact { RankMode::Exact } else { RankMode::Probabilistic { trials: 3, seed } };
    let ctx = Ctx { json: cli.json, seed, rank_mode };
    match cli.command {
        Command::Essential(input) => Ok(essential(&ctx, &load(&input)?.system)),
        Command::SuperEssential(input) => {
            let sys = load(&input)?.system;
            let t = super_essential_subset(&sys, ctx.rank_mode)?;
            Ok(ctx.emit(format!("T = {}\n", set_text(&t)), json!({"super_essential": t})))
        }
        Command::Jacobi(input) => {
            let sys = load(&input)?.system;
            let a = order_matrix(&sys);
            let j: Vec<Order> = (0..sys.len()).map(|i| jacobi_number(&a.without_row(i))).collect();
            let rows: Vec<String> = a.rows.iter().map(|r| orders_text(r)).collect();
            let text = format!("order matrix:\n  {}\nJ = {}\n", rows.join("\n  "), orders_text(&j));
            let value = json!({
                "order_matrix": a.rows.iter().map(|r| orders_json(r)).collect::<Vec<_>>(),
                "jacobi": orders_json(&j),
            });
            Ok(ctx.emit(text, value))
        }
        Command::Bounds(input) => {
            let sys = load(&input)?.system;
            let t = super_essential_subset(&sys, ctx.rank_mode)?;
            Ok(bounds_output(&ctx, &bounds_with_subset(&sys, t)))
        }
        Command::Resultant { input, engine, multihomog, trials, trace } => {
            let doc = load(&input)?;
            let engine = match (engine, doc.options.get("engine").map(String::as_str)) {
                (Some(e), _) => e,
                (None, None | Some("ansatz")) => Engine::Ansatz,
                (None, Some("reduction")) => Engine::Reduction,
                (None, Some(other)) => return Err(usage(format!("unknown engine {other:?}"))),
            };
            let multihomog = multihomog || doc_option::<bool>(&doc, "multihomog")?.unwrap_or(false);
            let seed = cli.seed.or(doc_option(&doc, "seed")?).unwrap_or(0);
            let options = SearchOptions {
                rank_mode: if cli.exact { RankMode::Exact } else { RankMode::Probabilistic { trials: 3, seed } },
                ansatz: if multihomog { SearchMode::Multihomogeneous } else { SearchMode::Plain },
                verify_trials: trials.or(doc_option(&doc, "trials")?).unwrap_or(5),
                seed,
                ..SearchOptions::default()
            };
            let sys = &doc.system;
            let cert = match engine {
                Engine::Ansatz => search_resultant(sys, &options)?,
                Engine::Reduction => {
                    let (cert, t) = resultant_via_reduction(sys, &options)?;
                    if trace {
                        eprint!("{}", trace_text(&t));
                    }
                    cert
                }
            };
            let format = if ctx.json { CertificateFormat::Json } else { CertificateFormat::Text };
            Ok(emit_certificate(&cert, sys, format))
        }
        Command::Verify { input, certificate, trials } => {
            let doc = load(&input)?;
            let sys = &doc.system;
            let raw = std::fs::read_to_string(&certificate).map_err(|e| usage(format!("{}: {e}", certificate.display())))?;
            let text = if raw.trim_start().starts_with('{') {
                let v: Value = serde_json::from_str(&raw).map_err(|e| Failure::from(Error::Parse { line: e.line(), col: e.column(), msg: e.to_string() }))?;
                v.get("text").and_then(Value::as_str).ok_or_else(|| usage("JSON certificate without a text field"))?.to_string()
            } else {
                raw
            };
            let cert = certificate_from_polynomial(sys, parse_poly(&text, sys.vars())?)?;
            let trials = trials.or(doc_option(&doc, "trials")?).unwrap_or(5);
            let report = verify_certificate(&cert, sys, trials, ctx.seed)?;
            let vanished = report.vanishing.iter().filter(|&&v| v).count();
            let effective = block_effective_orders(sys, &cert.resultant);
            let out = ctx.emit(
                format!(
                    "{}\nvanishing {vanished}/{trials}\norders {}\neffective orders {}\nhomogeneous blocks {}/{}\n",
                    if report.passed() { "passed" } else { "FAILED" },
                    orders_text(&cert.orders),
                    orders_text(&effective),
                    report.layers.iter().filter(|l| l.is_some()).count(),
                    report.layers.len(),
                ),
                json!({
                    "passed": report.passed(),
                    "vanishing": report.vanishing,
                    "orders": orders_json(&cert.orders),
                    "effective_orders": orders_json(&effective),
                    "degree": cert.degree,
                }),
            );
            if report.passed() {
                Ok(out)
            } else {
                Err(Failure { code: 1, msg: "verification failed".into(), stdout: Some(out) })
            }
        }
        Command::DenseResultant { orders, degrees, trials } => {
            if orders.len() < 2 {
                return Err(usage("need at least two orders"));
            }
            let options = SearchOptions { verify_trials: trials.unwrap_or(5), seed: ctx.seed, ..SearchOptions::default() };
            match dense_resultant(orders.len() - 1, &orders, &degrees, &options) {
                Ok((sys, cert, report)) => {
                    let text = format!("{}\n{}", format_poly(&cert.resultant, sys.vars()), report_text(&report));
                    Ok(ctx.emit(text, json!({"report": report_json(&report), "certificate": certificate_to_json(&cert, &sys)})))
                }
                Err(Error::SizeGuard(report)) => {
                    let out = ctx.emit(report_text(&report), json!({"report": report_json(&report), "resultant": null}));
                    Err(Failure {
                        code: 4,
                        msg: if report.ansatz_size == u128::MAX {
                            "size guard: the ansatz has more than 2^128 unknowns".to_string()
                        } else {
                            format!("size guard: an ansatz of {} unknowns is out of reach", report.ansatz_size)
                        },
                        stdout: Some(out),
                    })
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::MixedVolume { input, polytopes, prolong } => {
            if !polytopes.is_empty() {
                let ps = polytopes
                    .iter()
                    .map(|s| Ok(Polytope::from_lattice(&parse_points(s)?)?))
                    .collect::<Result<Vec<_>, Failure>>()?;
                let mv = mixed_volume(&ps)?;
                return Ok(ctx.emit(format!("{mv}\n"), json!({"mixed_volume": mv.to_string()})));
            }
            let sys = load(&input)?.system;
            let k: Vec<Order> = if prolong.is_empty() { vec![Order::Fin(0); sys.len()] } else { prolong.iter().map(|&x| if x < 0 { Order::NegInf } else { Order::Fin(x) }).collect() };
            let prol = sdresultant::engine::prolong(&sys, &k)?;
            let degrees = mixed_volume_degrees(&prol.system)?.ok_or_else(|| {
                usage(format!(
                    "{} polynomials in {} variables: need N+1 polynomials in N ≤ 4 variables",
                    prol.system.polys.len(),
                    prol.system.dim()
                ))
            })?;
            let labels: Vec<String> = prol.entries.iter().map(|(i, s)| format!("s^{s}P{i}")).collect();
            let text: String = labels.iter().zip(&degrees).map(|(l, d)| format!("{l}: {d}\n")).collect();
            Ok(ctx.emit(text, json!({"polynomials": labels, "degrees": degrees})))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| std::env::var("SDRES_THREADS").ok().and_then(|v| v.parse().ok()));
    if let Some(n) = threads {
        // Fails only when a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(out) = f.stdout {
                print!("{out}");
            }
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
