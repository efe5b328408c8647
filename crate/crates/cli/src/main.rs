use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use steenrod_core::fp_linalg::PrimeField;
use steenrod_core::simplicial::json::{MapDocument, SpaceDocument};
use steenrod_core::simplicial::{FiniteSimplicialSet, PRODUCT_LIMIT_ENV};
use steenrod_core::steenrod_classical::classical_sigma;
use steenrod_core::steenrod_diagonal::{naturality_check, OperationName, SteenrodContext};
use steenrod_core::Error;

mod verify;

#[derive(Parser)]
#[command(name = "steenrod", version, about = "Steenrod operations on finite simplicial sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SpaceArgs {
    /// Space document (raw simplicial set, facet list, or builtin constructor)
    #[arg(long)]
    space: PathBuf,
    #[arg(long, default_value_t = 2)]
    prime: u32,
    /// Keep only simplices of dimension at most D
    #[arg(long)]
    cap: Option<usize>,
    /// Largest number of product simplices allowed in one degree
    #[arg(long, env = PRODUCT_LIMIT_ENV, default_value_t = steenrod_core::simplicial::DEFAULT_PRODUCT_LIMIT)]
    limit: usize,
    /// Print a JSON report instead of a table
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Diagonal,
    Classical,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Lemmas,
    Uniqueness,
    Naturality,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of H^n for n ≤ n-max
    Cohomology {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
    /// Σ^k on cohomology classes
    Steenrod {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum, default_value_t = Method::Diagonal)]
        method: Method,
        /// Class selector d:i (basis element i of H^d); all classes up to n-max if omitted
        #[arg(long)]
        class: Option<String>,
        /// Only this operation degree
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 1)]
        n_max: usize,
    },
    /// Run a property suite against the space
    Verify {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Highest class degree (lemmas) or total degree (uniqueness) to check
        #[arg(long)]
        degree: Option<usize>,
        /// Target space, for the naturality suite
        #[arg(long)]
        target: Option<PathBuf>,
        /// Map document, for the naturality suite
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Check f^*Σ^k = Σ^k f^* for a linear combination of maps X -> Y
    Naturality {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

pub(crate) fn load_space(path: &Path, cap: Option<usize>) -> Result<FiniteSimplicialSet> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc = SpaceDocument::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    let x = doc.build().with_context(|| format!("validating {}", path.display()))?;
    Ok(match cap {
        Some(d) => x.skeleton(d),
        None => x,
    })
}

/// Rejects degrees above an explicit `--cap`.
fn require_degree(args: &SpaceArgs, needed: usize) -> Result<()> {
    match args.cap {
        Some(built) if needed > built => Err(Error::Truncated { built, needed }.into()),
        _ => Ok(()),
    }
}

pub(crate) fn context(args: &SpaceArgs) -> Result<SteenrodContext> {
    let field = PrimeField::new(args.prime)?;
    let x = load_space(&args.space, args.cap)?;
    Ok(SteenrodContext::new(Arc::new(x), field, args.limit))
}

#[derive(Serialize)]
pub(crate) struct SpaceSummary {
    simplices: Vec<usize>,
    betti: Vec<usize>,
}

pub(crate) fn summary(ctx: &SteenrodContext, n_max: usize) -> Result<SpaceSummary> {
    let x = ctx.space();
    Ok(SpaceSummary {
        simplices: (0..=x.cap()).map(|d| x.count(d)).collect(),
        betti: ctx.betti(n_max)?,
    })
}

#[derive(Serialize)]
struct OperationEntry {
    class: String,
    k: usize,
    operation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagonal: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classical: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
}

#[derive(Serialize)]
struct RunReport {
    prime: u32,
    space: SpaceSummary,
    method: Option<Method>,
    operations: Vec<OperationEntry>,
    verdict: bool,
    elapsed_ms: u128,
}

fn parse_class(s: &str) -> Result<(usize, usize)> {
    let (d, i) = s.split_once(':').context("class selector must look like d:i")?;
    Ok((d.trim().parse().context("class degree")?, i.trim().parse().context("class index")?))
}

fn run_cohomology(args: &SpaceArgs, n_max: usize) -> Result<bool> {
    let start = Instant::now();
    require_degree(args, n_max)?;
    let ctx = context(args)?;
    let report = RunReport {
        prime: args.prime,
        space: summary(&ctx, n_max)?,
        method: None,
        operations: Vec::new(),
        verdict: true,
        elapsed_ms: start.elapsed().as_millis(),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("simplices per dimension: {:?}", report.space.simplices);
        for (n, b) in report.space.betti.iter().enumerate() {
            println!("dim H^{n}(X; F_{}) = {b}", args.prime);
        }
    }
    Ok(true)
}

fn run_steenrod(
    args: &SpaceArgs,
    method: Method,
    class: Option<&str>,
    k_only: Option<usize>,
    n_max: usize,
) -> Result<bool> {
    let start = Instant::now();
    let ctx = context(args)?;
    let p = ctx.p();
    let mut targets = Vec::new();
    match class {
        Some(sel) => {
            let (n, i) = parse_class(sel)?;
            require_degree(args, n + k_only.unwrap_or(0))?;
            let dim = ctx.cohomology(n)?.dim();
            if i >= dim {
                bail!("H^{n} has dimension {dim}; class index {i} is out of range");
            }
            targets.push((n, i, dim));
        }
        None => {
            require_degree(args, n_max)?;
            for n in 0..=n_max {
                let dim = ctx.cohomology(n)?.dim();
                targets.extend((0..dim).map(|i| (n, i, dim)));
            }
        }
    }
    let ctx = ctx.with_cache();
    let mut operations = Vec::new();
    let mut verdict = true;
    for (n, i, dim) in targets {
        let mut u = vec![0u8; dim];
        u[i] = 1;
        let ks: Vec<usize> = match k_only {
            Some(k) => vec![k],
            None => (0..=(p - 1) * n).collect(),
        };
        for k in ks {
            let diagonal = match method {
                Method::Classical => None,
                _ => Some(ctx.sigma(n, &u, k)?),
            };
            let classical = match method {
                Method::Diagonal => None,
                _ => Some(classical_sigma(&ctx, n, &u, k)?),
            };
            let agree = match (&diagonal, &classical) {
                (Some(a), Some(b)) => Some(a == b),
                _ => None,
            };
            verdict &= agree.unwrap_or(true);
            operations.push(OperationEntry {
                class: format!("{n}:{i}"),
                k,
                operation: OperationName::new(p as u32, k).to_string(),
                diagonal,
                classical,
                agree,
            });
        }
    }
    let report = RunReport {
        prime: args.prime,
        space: summary(&ctx, ctx.space().cap())?,
        method: Some(method),
        operations,
        verdict,
        elapsed_ms: start.elapsed().as_millis(),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("{:<8} {:>3}  {:<10} {:<16} {:<16} agree", "class", "k", "operation", "diagonal", "classical");
        for o in &report.operations {
            let show = |v: &Option<Vec<u8>>| v.as_ref().map_or("-".to_string(), |c| format!("{c:?}"));
            let agree = o.agree.map_or("-".to_string(), |a| if a { "yes".into() } else { "NO".into() });
            println!(
                "{:<8} {:>3}  {:<10} {:<16} {:<16} {agree}",
                o.class,
                o.k,
                o.operation,
                show(&o.diagonal),
                show(&o.classical)
            );
        }
        println!("verdict: {}", if report.verdict { "ok" } else { "DISAGREEMENT" });
    }
    Ok(report.verdict)
}

fn run_naturality(args: &SpaceArgs, target: &Path, map: &Path, n: usize, k: usize) -> Result<bool> {
    let x = context(args)?;
    let y_set = load_space(target, args.cap)?;
    let y = SteenrodContext::new(Arc::new(y_set), x.field(), args.limit);
    let text = std::fs::read_to_string(map).with_context(|| format!("reading {}", map.display()))?;
    let terms = MapDocument::parse(&text)?.build(x.space(), y.space())?;
    let report = naturality_check(&x, &y, &terms, n, k)?;
    if args.json {
        let classes: Vec<_> = report
            .classes
            .iter()
            .map(|(i, a, b)| serde_json::json!({"class": format!("{n}:{i}"), "pullback_of_sigma": a, "sigma_of_pullback": b}))
            .collect();
        let value = serde_json::json!({
            "prime": args.prime,
            "n": n,
            "k": k,
            "diagram_commutes": report.diagram_commutes,
            "equivariant": report.equivariant,
            "classes": classes,
            "verdict": report.passed(),
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!("diagram commutes: {}", report.diagram_commutes);
        println!("power map equivariant: {}", report.equivariant);
        for (i, a, b) in &report.classes {
            println!("u = {n}:{i}: f*Σ^{k}u = {a:?}, Σ^{k}f*u = {b:?}");
        }
        println!("verdict: {}", if report.passed() { "ok" } else { "FAILED" });
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Cohomology { space, n_max } => run_cohomology(space, *n_max),
        Command::Steenrod {
            space,
            method,
            class,
            k,
            n_max,
        } => run_steenrod(space, *method, class.as_deref(), *k, *n_max),
        Command::Verify {
            space,
            suite,
            degree,
            target,
            map,
            n,
            k,
        } => match suite {
            Suite::Lemmas => verify::lemmas(space, degree.unwrap_or(1)),
            Suite::Uniqueness => verify::uniqueness(space, *degree),
            Suite::Naturality => match (target, map) {
                (Some(t), Some(m)) => run_naturality(space, t, m, *n, *k),
                _ => Err(anyhow::anyhow!("the naturality suite needs --target and --map")),
            },
        },
        Command::Naturality {
            space,
            target,
            map,
            n,
            k,
        } => run_naturality(space, target, map, *n, *k),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
