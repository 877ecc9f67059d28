//! Command-line driver: root systems, Euler characteristics, characters,
//! cluster variables, rigid-module search, and the verification suites.
//!
//! Exit codes: 0 success / all checks pass, 1 verification failure, 2 input
//! error, 3 internal consistency failure (interpolation or cross-check
//! mismatches, inexact exchange division, exhausted module search).

mod cache;
mod config;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand};
use config::{parse_rank_vector, Config};
use lfchar::cartan::format_root;
use lfchar::character::{
    verify_filtrations, verify_prop41, verify_symmetrizer_independence, verify_thm1b,
    verify_thm1c, verify_thm1d, Report,
};
use lfchar::grassmann::derive_seed;
use lfchar::module::DEFAULT_MAX_TRIES;
use lfchar::{
    cluster_character, euler_char_gr, exchange_graph, f_polynomial, find_rigid, CartanDatum,
    CharError, ClusterError, CountError, CountStore, IntegerLift, LaurentPoly, ModuleError,
    ModuleSpec,
};
use serde::Serialize;
use std::path::PathBuf;
use std::time::Instant;

const SCHEMA: &str = "lfchar/1";

#[derive(Parser)]
#[command(
    name = "lfchar",
    about = "Exact cluster characters via locally free quiver representations and finite-field point counting"
)]
struct Cli {
    /// Builtin Cartan type (A1, A2, A3, B2, B3, C3, G2).
    #[arg(long = "type", global = true)]
    type_name: Option<String>,
    /// JSON config file with explicit Cartan data.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Comma-separated prime list override.
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// RNG seed for all randomized searches.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Count-cache directory.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the positive roots and the exchange matrix.
    Roots,
    /// Euler characteristic of Gr(r, M(beta)) with the fitted counting polynomial.
    Euler {
        #[arg(long)]
        beta: String,
        #[arg(long)]
        r: String,
    },
    /// F-polynomial of a module spec.
    Fpoly {
        #[arg(long)]
        beta: Option<String>,
        /// Semicolon-separated multiset of roots, e.g. "1,2;0,1".
        #[arg(long)]
        roots: Option<String>,
        /// Builtin integer lift: b2-nonrigid, g2-m1, g2-m2.
        #[arg(long)]
        lift: Option<String>,
    },
    /// Cluster character X_M of a module spec.
    Xvar {
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        roots: Option<String>,
        #[arg(long)]
        lift: Option<String>,
    },
    /// All cluster variables of the exchange graph.
    ClusterVars,
    /// Search for the rigid module with the given rank vector.
    FindModule {
        #[arg(long)]
        beta: String,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Run a verification suite: 1b, 1c, 1d, sym, prop41, filt.
    Verify {
        which: String,
        #[arg(long, default_value_t = 2)]
        k: i64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        cap: usize,
        #[arg(long, default_value_t = 5)]
        q: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {:#}", err);
            classify_error(&err)
        }
    };
    eprintln!("elapsed: {} ms", start.elapsed().as_millis());
    std::process::exit(code);
}

fn classify_error(err: &anyhow::Error) -> i32 {
    if let Some(e) = err.downcast_ref::<CountError>() {
        return match e {
            CountError::InterpolationMismatch(_) | CountError::Internal(_) => 3,
            CountError::Module(m) => classify_module(m),
            _ => 2,
        };
    }
    if let Some(e) = err.downcast_ref::<CharError>() {
        return match e {
            CharError::CrossCheckMismatch(_) | CharError::SingularBasis => 3,
            CharError::Count(c) => match c {
                CountError::InterpolationMismatch(_) | CountError::Internal(_) => 3,
                CountError::Module(m) => classify_module(m),
                _ => 2,
            },
            CharError::Cluster(c) => classify_cluster(c),
            CharError::Module(m) => classify_module(m),
        };
    }
    if let Some(e) = err.downcast_ref::<ClusterError>() {
        return classify_cluster(e);
    }
    if let Some(e) = err.downcast_ref::<ModuleError>() {
        return classify_module(e);
    }
    2
}

fn classify_module(e: &ModuleError) -> i32 {
    match e {
        ModuleError::SearchExhausted(..) => 3,
        _ => 2,
    }
}

fn classify_cluster(e: &ClusterError) -> i32 {
    match e {
        ClusterError::InexactDivision
        | ClusterError::ReconstructionMismatch(_)
        | ClusterError::NotHomogeneous
        | ClusterError::BudgetExceeded(_) => 3,
        ClusterError::NotFound(_) => 2,
    }
}

struct RunContext {
    datum: CartanDatum,
    primes: Option<Vec<u64>>,
    seed: u64,
    json: bool,
    store: Option<cache::FileStore>,
}

impl RunContext {
    fn store_ref(&self) -> Option<&dyn CountStore> {
        self.store.as_ref().map(|s| s as &dyn CountStore)
    }
}

fn run(cli: &Cli) -> Result<i32> {
    let mut cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(t) = &cli.type_name {
        if cfg.type_name.is_some() || cfg.cartan.is_some() {
            bail!("--type conflicts with the config file contents");
        }
        cfg.type_name = Some(t.clone());
    }
    if cfg.type_name.is_none() && cfg.cartan.is_none() {
        bail!("select a datum with --type NAME or --config FILE");
    }
    let datum = cfg.datum()?;
    let seed = cli.seed.or(cfg.rng_seed).unwrap_or(1);
    let primes = cli.primes.clone().or(cfg.primes.clone());
    let cache_dir = cli.cache.clone().or(cfg.cache_dir.clone());
    let store = match cache_dir {
        Some(dir) => Some(cache::FileStore::open(&dir, seed)?),
        None => None,
    };
    let ctx = RunContext {
        datum,
        primes,
        seed,
        json: cli.json,
        store,
    };

    let code = dispatch(cli, &ctx)?;
    if let Some(s) = &ctx.store {
        if s.poisoned() {
            eprintln!(
                "error: cache at {} failed its recomputation spot-check",
                s.path().display()
            );
            return Ok(3);
        }
    }
    Ok(code)
}

fn parse_root(ctx: &RunContext, s: &str) -> Result<Vec<i64>> {
    let beta = parse_rank_vector(s, ctx.datum.n())?;
    if !ctx.datum.is_positive_root(&beta) {
        bail!("{} is not a positive root of this datum", format_root(&beta));
    }
    Ok(beta)
}

fn parse_spec(
    ctx: &RunContext,
    beta: &Option<String>,
    roots: &Option<String>,
    lift: &Option<String>,
) -> Result<ModuleSpec> {
    match (beta, roots, lift) {
        (Some(b), None, None) => Ok(ModuleSpec::roots(vec![parse_root(ctx, b)?])),
        (None, Some(rs), None) => {
            let parts: Vec<Vec<i64>> = rs
                .split(';')
                .map(|p| parse_root(ctx, p.trim()))
                .collect::<Result<_>>()?;
            if parts.is_empty() {
                bail!("--roots needs at least one root");
            }
            Ok(ModuleSpec::roots(parts))
        }
        (None, None, Some(name)) => {
            let lift: IntegerLift = match name.as_str() {
                "b2-nonrigid" => lfchar::presets::b2_nonrigid_rank11(),
                "g2-m1" => lfchar::presets::g2_nonrigid_m1(),
                "g2-m2" => lfchar::presets::g2_nonrigid_m2(),
                other => bail!("unknown builtin lift '{}'", other),
            };
            Ok(ModuleSpec::Lift(lift))
        }
        _ => bail!("give exactly one of --beta, --roots, --lift"),
    }
}

fn u_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("u{}", i)).collect()
}

fn t_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("t{}", i)).collect()
}

fn render(poly: &LaurentPoly, names: &[String]) -> String {
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    poly.render(&refs)
}

fn render_factored(poly: &LaurentPoly, names: &[String]) -> String {
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    poly.render_factored(&refs)
}

fn emit<T: Serialize>(ctx: &RunContext, value: &T, text: String) -> Result<()> {
    if ctx.json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        println!("{}", text);
    }
    Ok(())
}

#[derive(Serialize)]
struct RootsOut {
    schema: &'static str,
    datum: String,
    roots: Vec<Vec<i64>>,
    exchange_matrix: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct EulerOut {
    schema: &'static str,
    beta: Vec<i64>,
    r: Vec<i64>,
    chi: String,
    counting_polynomial: String,
    samples: Vec<(u64, String)>,
}

#[derive(Serialize)]
struct FpolyOut {
    schema: &'static str,
    spec: String,
    rank: Vec<i64>,
    f: String,
}

#[derive(Serialize)]
struct TermOut {
    e: Vec<i32>,
    c: String,
}

fn terms_of(poly: &LaurentPoly) -> Vec<TermOut> {
    poly.terms()
        .map(|(e, c)| TermOut {
            e: e.clone(),
            c: c.to_string(),
        })
        .collect()
}

#[derive(Serialize)]
struct XvarOut {
    schema: &'static str,
    spec: String,
    g: Vec<i64>,
    f: String,
    x: String,
    x_terms: Vec<TermOut>,
}

#[derive(Serialize)]
struct VarOut {
    x: String,
    x_terms: Vec<TermOut>,
    denominator: Vec<i64>,
    g: Vec<i64>,
    f: String,
    initial: Option<usize>,
}

#[derive(Serialize)]
struct ClusterVarsOut {
    schema: &'static str,
    count: usize,
    variables: Vec<VarOut>,
    clusters: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct ArrowOut {
    target: usize,
    source: usize,
    rows: Vec<Vec<u64>>,
}

#[derive(Serialize)]
struct FindModuleOut {
    schema: &'static str,
    beta: Vec<i64>,
    q: u64,
    rank: Vec<i64>,
    end_dim: usize,
    arrows: Vec<ArrowOut>,
}

#[derive(Serialize)]
struct VerifyOut {
    schema: &'static str,
    report: Report,
    passed: bool,
}

fn dispatch(cli: &Cli, ctx: &RunContext) -> Result<i32> {
    match &cli.command {
        Command::Roots => {
            let roots = ctx.datum.positive_roots();
            let b = ctx.datum.exchange_matrix();
            let mut text = format!("{} positive roots:\n", roots.len());
            for r in &roots {
                text.push_str(&format!("  {:?}  ({})\n", r, format_root(r)));
            }
            text.push_str("exchange matrix B:\n");
            for row in &b {
                text.push_str(&format!("  {:?}\n", row));
            }
            emit(
                ctx,
                &RootsOut {
                    schema: SCHEMA,
                    datum: ctx.datum.fingerprint(),
                    roots: roots.clone(),
                    exchange_matrix: b,
                },
                text.trim_end().to_string(),
            )?;
            Ok(0)
        }
        Command::Euler { beta, r } => {
            let beta = parse_root(ctx, beta)?;
            let r = parse_rank_vector(r, ctx.datum.n())?;
            let spec = ModuleSpec::roots(vec![beta.clone()]);
            let (chi, poly) = euler_char_gr(
                &ctx.datum,
                &spec,
                &r,
                ctx.primes.as_deref(),
                ctx.seed,
                ctx.store_ref(),
            )?;
            let out = EulerOut {
                schema: SCHEMA,
                beta: beta.clone(),
                r: r.clone(),
                chi: chi.to_string(),
                counting_polynomial: poly.render(),
                samples: poly
                    .samples
                    .iter()
                    .map(|(q, c)| (*q, c.to_string()))
                    .collect(),
            };
            let text = format!(
                "chi(Gr({:?}, M({}))) = {}\ncounting polynomial: {}\nsamples: {}",
                r,
                format_root(&beta),
                chi,
                poly.render(),
                out.samples
                    .iter()
                    .map(|(q, c)| format!("q={}:{}", q, c))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            emit(ctx, &out, text)?;
            Ok(0)
        }
        Command::Fpoly { beta, roots, lift } => {
            let spec = parse_spec(ctx, beta, roots, lift)?;
            let f = f_polynomial(
                &ctx.datum,
                &spec,
                ctx.primes.as_deref(),
                ctx.seed,
                ctx.store_ref(),
            )?;
            let names = t_names(ctx.datum.n());
            let out = FpolyOut {
                schema: SCHEMA,
                spec: spec.canonical_string(),
                rank: f.rank.clone(),
                f: render(&f.poly, &names),
            };
            let text = format!("F_M = {}", out.f);
            emit(ctx, &out, text)?;
            Ok(0)
        }
        Command::Xvar { beta, roots, lift } => {
            let spec = parse_spec(ctx, beta, roots, lift)?;
            let ch = cluster_character(
                &ctx.datum,
                &spec,
                ctx.primes.as_deref(),
                ctx.seed,
                ctx.store_ref(),
            )?;
            let un = u_names(ctx.datum.n());
            let tn = t_names(ctx.datum.n());
            let out = XvarOut {
                schema: SCHEMA,
                spec: spec.canonical_string(),
                g: ch.g.clone(),
                f: render(&ch.f.poly, &tn),
                x: render_factored(&ch.x, &un),
                x_terms: terms_of(&ch.x),
            };
            let text = format!("X_M = {}\ng = {:?}\nF = {}", out.x, out.g, out.f);
            emit(ctx, &out, text)?;
            Ok(0)
        }
        Command::ClusterVars => {
            let graph = exchange_graph(&ctx.datum)?;
            let un = u_names(ctx.datum.n());
            let tn = t_names(ctx.datum.n());
            let variables: Vec<VarOut> = graph
                .records
                .iter()
                .map(|rec| VarOut {
                    x: render_factored(&rec.laurent, &un),
                    x_terms: terms_of(&rec.laurent),
                    denominator: rec.denominator.clone(),
                    g: rec.g_vector.clone(),
                    f: render(&rec.f_poly, &tn),
                    initial: rec.initial_index,
                })
                .collect();
            let clusters: Vec<Vec<usize>> = graph
                .clusters
                .iter()
                .map(|c| c.iter().copied().collect())
                .collect();
            let mut text = format!("{} cluster variables\n", variables.len());
            for v in &variables {
                text.push_str(&format!(
                    "  {}  d = {:?}, g = {:?}\n",
                    v.x, v.denominator, v.g
                ));
            }
            text.push_str(&format!("{} clusters: {:?}", clusters.len(), clusters));
            emit(
                ctx,
                &ClusterVarsOut {
                    schema: SCHEMA,
                    count: variables.len(),
                    variables,
                    clusters,
                },
                text,
            )?;
            Ok(0)
        }
        Command::FindModule { beta, q } => {
            let beta = parse_root(ctx, beta)?;
            let attempts: Vec<u64> = match q {
                Some(q) => vec![*q],
                None => vec![5, 7, 11],
            };
            let mut found = None;
            let mut last_err = None;
            for &qq in &attempts {
                match find_rigid(
                    &ctx.datum,
                    &beta,
                    qq,
                    derive_seed(ctx.seed, &[qq]),
                    DEFAULT_MAX_TRIES,
                ) {
                    Ok(m) => {
                        found = Some(m);
                        break;
                    }
                    Err(e @ ModuleError::SearchExhausted(..)) => last_err = Some(e),
                    Err(e) => return Err(e.into()),
                }
            }
            let m = match found {
                Some(m) => m,
                None => return Err(anyhow!(last_err.unwrap())),
            };
            let end_dim = lfchar::hom_dim(&ctx.datum, &m, &m)?;
            let arrows: Vec<ArrowOut> = m
                .arrows
                .iter()
                .map(|(&(i, j), mat)| ArrowOut {
                    target: i + 1,
                    source: j + 1,
                    rows: (0..mat.rows)
                        .map(|r| mat.row(r).to_vec())
                        .collect(),
                })
                .collect();
            let text = format!(
                "M({}) over F_{}: rank {:?}, End dimension {}\narrows: {}",
                format_root(&beta),
                m.q,
                m.rank,
                end_dim,
                arrows
                    .iter()
                    .map(|a| format!("{}<-{} {:?}", a.target, a.source, a.rows))
                    .collect::<Vec<_>>()
                    .join("; ")
            );
            emit(
                ctx,
                &FindModuleOut {
                    schema: SCHEMA,
                    beta: beta.clone(),
                    q: m.q,
                    rank: m.rank.clone(),
                    end_dim,
                    arrows,
                },
                text,
            )?;
            Ok(0)
        }
        Command::Verify {
            which,
            k,
            trials,
            cap,
            q,
        } => {
            let report = match which.as_str() {
                "1c" => verify_thm1c(&ctx.datum, ctx.seed, ctx.store_ref())?,
                "1b" => verify_thm1b(&ctx.datum, *trials, ctx.seed, ctx.store_ref())?,
                "1d" => verify_thm1d(&ctx.datum, *cap, ctx.seed, ctx.store_ref())?,
                "sym" => {
                    verify_symmetrizer_independence(&ctx.datum, *k, ctx.seed, ctx.store_ref())?
                }
                "prop41" => verify_prop41(&ctx.datum, ctx.seed)?,
                "filt" => verify_filtrations(&ctx.datum, *q, ctx.seed)?,
                other => bail!(
                    "unknown suite '{}'; expected one of 1b, 1c, 1d, sym, prop41, filt",
                    other
                ),
            };
            let passed = report.passed();
            let mut text = String::new();
            for item in &report.items {
                text.push_str(&format!(
                    "{} {}: {}\n",
                    if item.pass { "PASS" } else { "FAIL" },
                    item.label,
                    item.detail
                ));
            }
            text.push_str(&report.summary());
            emit(
                ctx,
                &VerifyOut {
                    schema: SCHEMA,
                    report: report.clone(),
                    passed,
                },
                text,
            )?;
            Ok(if passed { 0 } else { 1 })
        }
    }
}
