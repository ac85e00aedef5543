//! `knotcert`: invariants of closed braids and the verification suites.
//!
//! Exit status: 0 on success, 1 if any claim fails, 2 on usage or input errors.

mod cache;
mod graph_json;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use knotcert::braid::{family, parse_braid, Family};
use knotcert::homfly::{coefficient_polys, Budget, Engine, HomflyError};
use knotcert::positivity::sharpness;
use knotcert::traintrack::kn_map;
use knotcert::BraidWord;
use serde_json::{json, Value};

use cache::Cache;
use graph_json::GraphMapJson;
use report::Report;
use suites::{Claim, Level, Settings};

#[derive(Parser, Debug)]
#[command(name = "knotcert", version, about = "Exact invariants and certificates for closed braids")]
struct Cli {
    /// Emit JSON (sorted keys) instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 8)]
    max_strands: usize,
    #[arg(long, global = true, default_value_t = 80)]
    max_letters: usize,
    /// Knot nodes the p0 recursion may expand per claim.
    #[arg(long, global = true, default_value_t = 5_000_000)]
    p0_nodes: usize,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pf_tolerance: f64,
    /// Iterations of the efficiency check; defaults to twice the real edge count.
    #[arg(long, global = true)]
    backtrack_bound: Option<usize>,
    /// Handle reductions allowed per Dehornoy classification.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    handle_budget: u64,
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// HOMFLY cache file (JSON lines).
    #[arg(long, global = true)]
    cache_file: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Invariants of the closure of a braid word.
    Invariants {
        /// Signed generator indices, e.g. "1 -2 1".
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
        #[arg(long)]
        strands: Option<usize>,
    },
    /// Words of the built-in braid families.
    Family {
        #[arg(value_enum)]
        kind: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "word")]
        emit: Emit,
    },
    /// Run verification suites.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Inspect or clear the HOMFLY cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
    /// Print the built-in graph map for K_n as interchange JSON.
    GraphMap {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    X,
    Beta,
    BetaConjugated,
    Kn,
    KnPlus,
    Cable,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::X => Family::X,
            FamilyArg::Beta => Family::Beta,
            FamilyArg::BetaConjugated => Family::BetaConjugated,
            FamilyArg::Kn => Family::Kn,
            FamilyArg::KnPlus => Family::KnPlus,
            FamilyArg::Cable => Family::Cable,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Word,
    Invariants,
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// Top term of p0(K_n).
    Topterm {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// p0(K_n) against its crossing-change expansion.
    Decomposition {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Sharp controls, then non-sharp cables and K_n+.
    Sharpness {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Negative coefficients in the tilde HOMFLY polynomial of K_n.
    Ito {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
    },
    /// Alexander span of K_n against the genus formula.
    Genus {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
    },
    /// L-space criterion for both Montesinos families.
    Lspace {
        #[arg(long, default_value_t = 500)]
        k_max: i64,
    },
    /// Determinants and surgery slopes.
    Slopes {
        #[arg(long, default_value_t = 500)]
        k_max: i64,
    },
    /// Graph-map certificates for K_n, or for a map read from a JSON file.
    Traintrack {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Dehornoy floor certificates.
    Dehornoy {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
    },
    /// Every suite.
    All {
        #[arg(long, value_enum, default_value = "desk")]
        level: Level,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    Path,
    Clear,
    Stats,
}

fn range(n: Option<usize>, lo: usize, hi: usize, least: usize, what: &str) -> Result<Vec<usize>> {
    let (lo, hi) = n.map_or((lo, hi), |n| (n, n));
    if lo < least || lo > hi {
        bail!("{what}: need {least} <= n_min <= n_max, got {lo}..{hi}");
    }
    Ok((lo..=hi).collect())
}

fn positive_k(k: i64) -> Result<i64> {
    if k < 1 {
        bail!("--k-max must be at least 1");
    }
    Ok(k)
}

fn claims_for(suite: Suite) -> Result<Vec<Claim>> {
    Ok(match suite {
        Suite::Topterm { n, n_min, n_max } => suites::topterm(range(n, n_min, n_max, 2, "topterm")?),
        Suite::Decomposition { n, n_min, n_max } => {
            suites::decomposition(range(n, n_min, n_max, 2, "decomposition")?)
        }
        Suite::Sharpness { n_max } => suites::sharpness_suite(n_max),
        Suite::Ito { n, n_min, n_max } => suites::ito(range(n, n_min, n_max, 2, "ito")?),
        Suite::Genus { n, n_min, n_max } => suites::genus(range(n, n_min, n_max, 2, "genus")?),
        Suite::Lspace { k_max } => suites::lspace(positive_k(k_max)?),
        Suite::Slopes { k_max } => suites::slopes(positive_k(k_max)?),
        Suite::Traintrack { map: Some(path), .. } => {
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let j: GraphMapJson = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            vec![suites::traintrack_user(j.into_map()?)]
        }
        Suite::Traintrack { n, n_min, n_max, map: None } => {
            suites::traintrack(range(n, n_min, n_max, 3, "traintrack")?)
        }
        Suite::Dehornoy { n, n_min, n_max } => suites::dehornoy(range(n, n_min, n_max, 1, "dehornoy")?),
        Suite::All { level } => suites::all(level),
    })
}

fn poly_or_error<T: std::fmt::Display>(r: &Result<T, HomflyError>) -> Value {
    match r {
        Ok(p) => json!(p.to_string()),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn invariants(engine: &mut Engine, b: &BraidWord) -> Value {
    let stats = b.closure_stats();
    let homfly = engine.homfly(b);
    let p0 = engine.p0(b);
    let coeffs = homfly.as_ref().ok().and_then(|p| coefficient_polys(p, stats.components).ok());
    let mut out = json!({
        "components": stats.components,
        "crossings": stats.crossings,
        "homfly": poly_or_error(&homfly),
        "letters": b.letters(),
        "linking_total": b.total_linking(),
        "p0": poly_or_error(&p0),
        "permutation": stats.permutation,
        "strands": stats.strands,
        "writhe": stats.writhe,
    });
    if let Some(c) = coeffs {
        out["coefficients"] = json!(c.coeffs.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    }
    if stats.components == 1 {
        out["alexander"] = poly_or_error(&engine.alexander(b));
        out["determinant"] = poly_or_error(&engine.determinant(b));
    }
    if b.is_positive() {
        out["sharpness"] = match sharpness(engine, b) {
            Ok(r) => json!({ "bound": r.bound, "p0_degree": r.p0_degree, "sharp": r.sharp }),
            Err(e) => json!({ "error": e.to_string() }),
        };
    }
    out
}

fn print_value(v: &Value, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string(v).expect("serializable"));
        return;
    }
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::String(s) => println!("{k}: {s}"),
                    other => println!("{k}: {other}"),
                }
            }
        }
        other => println!("{other}"),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let settings = Settings {
        budget: Budget {
            max_strands: cli.max_strands,
            max_letters: cli.max_letters,
            p0_nodes: cli.p0_nodes,
        },
        pf_tolerance: cli.pf_tolerance,
        backtrack_bound: cli.backtrack_bound,
        handle_budget: cli.handle_budget,
    };
    if !(settings.pf_tolerance > 0.0) {
        bail!("--pf-tolerance must be positive");
    }
    let cache_path = cli.cache_file.clone().unwrap_or_else(cache::default_path);
    let mut cache = if cli.no_cache { Cache::disabled() } else { Cache::load(&cache_path)? };
    let seeded_engine = |cache: &Cache| {
        let mut e = Engine::new(settings.budget);
        cache.seed(&mut e);
        e
    };
    match cli.cmd {
        Cmd::Invariants { braid, strands } => {
            let b = parse_braid(&braid, strands)?;
            let mut e = seeded_engine(&cache);
            let v = invariants(&mut e, &b);
            cache.append(cache.fresh(&e))?;
            print_value(&v, cli.json);
        }
        Cmd::Family { kind, n, emit } => {
            let b = family(kind.into(), n)?;
            match emit {
                Emit::Word if cli.json => print_value(
                    &json!({ "family": Family::from(kind).name(), "letters": b.letters(), "n": n, "strands": b.strands() }),
                    true,
                ),
                Emit::Word => println!("{b}"),
                Emit::Invariants => {
                    let mut e = seeded_engine(&cache);
                    let v = invariants(&mut e, &b);
                    cache.append(cache.fresh(&e))?;
                    print_value(&v, cli.json);
                }
            }
        }
        Cmd::Verify { suite } => {
            let claims = claims_for(suite)?;
            let (entries, fresh) = suites::run_claims(claims, &settings, &cache, cli.threads);
            cache.append(fresh)?;
            let mut config = settings.to_json();
            config["threads"] = json!(cli.threads);
            let report = Report::new(config, entries);
            if cli.json {
                println!("{}", serde_json::to_string(&report.to_json())?);
            } else {
                print!("{}", report.to_text());
            }
            if report.failed() {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Cache { action } => match action {
            CacheAction::Path => println!("{}", cache_path.display()),
            CacheAction::Clear => {
                let removed = cache::clear(&cache_path)?;
                print_value(&json!({ "path": cache_path.display().to_string(), "removed": removed }), cli.json);
            }
            CacheAction::Stats => print_value(&cache.stats(), cli.json),
        },
        Cmd::GraphMap { n } => {
            if n < 3 {
                bail!("graph-map needs n >= 3");
            }
            let m = kn_map(n)?;
            println!("{}", serde_json::to_string(&GraphMapJson::from_map(m.map()))?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
