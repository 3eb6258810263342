use clap::{Args, Parser, Subcommand};
use crsym::arith::parse_rat;
use crsym::cli::{self, Command, ModelSpec, Options, Source};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact graded symmetry algebras of polynomial model hypersurfaces
/// Im w = P(z, conj z).
#[derive(Parser)]
#[command(name = "crsym", version, about)]
struct CliArgs {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the model invariants (homogeneity, pluriharmonic terms, reality)
    Validate(ModelArgs),
    /// Levi form and exact pseudoconvexity verdict
    Levi(ModelArgs),
    /// Full graded symmetry algebra with structure verdicts
    Symmetries(ModelArgs),
    /// Structure verdicts only (runs the full solve underneath)
    Verdicts(ModelArgs),
    /// List the built-in model zoo
    ZooList {
        /// Machine-readable JSON output
        #[arg(long)]
        json: bool,
    },
    /// Run every zoo model and compare against expectations and goldens
    ZooRunAll {
        /// Machine-readable JSON output
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        opts: OptionArgs,
        /// Regenerate golden report files into this directory
        #[arg(long, value_name = "DIR")]
        write_golden: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// Defining polynomial, e.g. "abs2(z1) + abs2(z2^2)"
    #[arg(long, conflicts_with_all = ["sos", "zoo", "model_json"])]
    expr: Option<String>,
    /// Weights as comma-separated rationals, e.g. "1/2,1/4"
    #[arg(long, value_delimiter = ',')]
    mu: Option<Vec<String>>,
    /// Sum-of-squares factors, e.g. --sos "z1,z2^2"
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["zoo", "model_json"])]
    sos: Option<Vec<String>>,
    /// Name of a built-in zoo model
    #[arg(long, conflicts_with = "model_json")]
    zoo: Option<String>,
    /// Path to a model JSON file
    #[arg(value_name = "MODEL_JSON")]
    model_json: Option<PathBuf>,
    /// Machine-readable JSON output
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    opts: OptionArgs,
}

#[derive(Args)]
struct OptionArgs {
    /// Number of seeded rational sample points for the Levi test
    #[arg(long, default_value_t = 100)]
    sample_budget: usize,
    /// Seed for the deterministic sampler
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Weighted-degree cap for the holomorphic-degeneracy search
    #[arg(long, default_value = "1")]
    degree_cap: String,
    /// Also solve an extended degree list and report kernels outside the menu
    #[arg(long)]
    debug_extended_menu: bool,
}

fn options_from(args: &OptionArgs) -> Result<Options, String> {
    let cap = parse_rat(&args.degree_cap).map_err(|e| format!("--degree-cap: {e}"))?;
    Ok(Options {
        sample_budget: args.sample_budget,
        seed: args.seed,
        degree_cap: cap,
        debug_extended_menu: args.debug_extended_menu,
    })
}

fn spec_from(args: &ModelArgs) -> Result<ModelSpec, String> {
    let options = options_from(&args.opts)?;
    let source = if let Some(name) = &args.zoo {
        Source::Zoo { name: name.clone() }
    } else if let Some(q) = &args.sos {
        let mu = args.mu.clone().ok_or("--sos requires --mu")?;
        Source::Sos { q: q.clone(), mu }
    } else if let Some(expr) = &args.expr {
        let mu = args.mu.clone().ok_or("--expr requires --mu")?;
        Source::Expr {
            expr: expr.clone(),
            mu,
        }
    } else if let Some(path) = &args.model_json {
        Source::JsonFile { path: path.clone() }
    } else {
        return Err(
            "no model given: use --expr/--sos with --mu, --zoo, or a model JSON file".to_string(),
        );
    };
    Ok(ModelSpec { source, options })
}

fn dispatch_model_cmd(cmd: Command, args: &ModelArgs) -> i32 {
    match spec_from(args) {
        Ok(spec) => {
            let started = std::time::Instant::now();
            let (out, code) = cli::run(cmd, &spec, args.json);
            print!("{out}");
            if !args.json {
                eprintln!("elapsed: {:?}", started.elapsed());
            }
            code
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn main() -> ExitCode {
    let args = CliArgs::parse();
    let code = match &args.cmd {
        Cmd::Validate(m) => dispatch_model_cmd(Command::Validate, m),
        Cmd::Levi(m) => dispatch_model_cmd(Command::Levi, m),
        Cmd::Symmetries(m) => dispatch_model_cmd(Command::Symmetries, m),
        Cmd::Verdicts(m) => dispatch_model_cmd(Command::Verdicts, m),
        Cmd::ZooList { json } => {
            let (out, code) = cli::zoo_list(*json);
            print!("{out}");
            code
        }
        Cmd::ZooRunAll {
            json,
            opts,
            write_golden,
        } => match options_from(opts) {
            Ok(options) => {
                let (out, code) = cli::zoo_run_all(&options, *json, write_golden.as_deref());
                print!("{out}");
                code
            }
            Err(msg) => {
                eprintln!("error: {msg}");
                2
            }
        },
    };
    ExitCode::from(code as u8)
}
