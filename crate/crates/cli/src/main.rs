//! `qkhook`: hook products, structure constants and verification sweeps.
//!
//! Exit codes: 0 success, 1 input error, 2 conformance failure.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qkhook_core::closed_forms::reduced_arguments;
use qkhook_core::tableaux::for_each_lr_tableau;
use qkhook_core::verify::{self, Suite, SweepParams};
use qkhook_core::{
    c_direct, c_double_sum, c_positive, c_reduced, c_single_sum, lr_coefficient, multiply_by_hook,
    star_shape, GrassContext, HookParams, Integer, Partition, ProductDocument, QkError,
    QuantumShape,
};

/// Writes to stdout, exiting quietly if the reader has gone away.
fn write_stdout(args: std::fmt::Arguments<'_>) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().lock().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed writing to stdout: {e}");
    }
}

macro_rules! out {
    ($($arg:tt)*) => { write_stdout(format_args!($($arg)*)) };
}

macro_rules! outln {
    ($($arg:tt)*) => { write_stdout(format_args!("{}\n", format_args!($($arg)*))) };
}

#[derive(Parser)]
#[command(
    name = "qkhook",
    version,
    about = "Products by hook classes in quantum K-theory of Grassmannians"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum Format {
    #[default]
    Table,
    Json,
}

#[derive(clap::Args)]
struct ShapeArgs {
    /// Grassmannian as `m,n`
    #[arg(long)]
    context: GrassContext,
    /// Row ends of the shape; missing trailing rows are 0
    #[arg(long, allow_hyphen_values = true)]
    shape: String,
}

#[derive(Subcommand)]
enum Command {
    /// Expand O^λ · O^(a\b) in the q-graded Schubert basis
    Product {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Hook as `a,b`
        #[arg(long)]
        hook: HookParams,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Coefficient of q·O^λ in O^λ · O^(a\b), checked across formulas
    Coeff {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        hook: HookParams,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Evaluate c(t,a,b) by the double sum, single sum and positive forms
    CFormula {
        #[arg(long)]
        t: i64,
        #[arg(long)]
        hook: HookParams,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Number of quantum corners of a shape
    Corners {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// K-theoretic Littlewood-Richardson coefficient by tableau counting
    Lr {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        nu: Partition,
        /// Also print each counted tableau
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run a verification sweep (or `all`)
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        max_t: Option<i64>,
        /// Number of random cases for the translation suite
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

enum Failure {
    Input(String),
    Conformance(String),
}

impl From<QkError> for Failure {
    fn from(e: QkError) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Conformance(msg)) => {
            eprintln!("conformance failure: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_shape(args: &ShapeArgs) -> Result<QuantumShape, QkError> {
    let mut parts = qkhook_core::poset::parse_int_list(&args.shape)?;
    let m = args.context.m();
    if parts.len() > m {
        return Err(QkError::LengthMismatch {
            expected: m,
            got: parts.len(),
        });
    }
    parts.resize(m, 0);
    QuantumShape::new(args.context, parts)
}

fn check_fits(ctx: GrassContext, h: HookParams) -> Result<(), QkError> {
    if h.a < 0 || h.b < 0 {
        return Err(QkError::NegativeHook { a: h.a, b: h.b });
    }
    if !h.fits(ctx) {
        return Err(QkError::HookDoesNotFit {
            a: h.a,
            b: h.b,
            m: ctx.m(),
            k: ctx.k(),
        });
    }
    Ok(())
}

fn print_json(v: &serde_json::Value) {
    outln!(
        "{}",
        serde_json::to_string_pretty(v).expect("plain data serializes")
    );
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Product {
            shape,
            hook,
            format,
        } => {
            let l = parse_shape(&shape)?;
            check_fits(l.context(), hook)?;
            let doc = ProductDocument::compute(&l, hook)?;
            match format {
                Format::Table => out!("{}", doc.to_table()),
                Format::Json => out!("{}", doc.to_json()),
            }
            Ok(())
        }
        Command::Coeff {
            shape,
            hook,
            format,
        } => coeff(&shape, hook, format),
        Command::CFormula { t, hook, format } => c_formula(t, hook, format),
        Command::Corners { shape, format } => {
            let l = parse_shape(&shape)?;
            let t = l.quantum_corners();
            match format {
                Format::Table => outln!("{t}"),
                Format::Json => print_json(
                    &json!({"context": l.context(), "shape": l.parts(), "quantum_corners": t}),
                ),
            }
            Ok(())
        }
        Command::Lr {
            lambda,
            mu,
            nu,
            list,
            format,
        } => lr(&lambda, &mu, &nu, list, format),
        Command::Verify {
            suite,
            max_n,
            max_t,
            samples,
            seed,
            format,
        } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>()?]
            };
            let params = SweepParams {
                max_n,
                max_t,
                samples,
                seed,
            };
            let mut failed = Vec::new();
            for s in suites {
                let report = verify::run(s, params)?;
                match format {
                    Format::Table => out!("{}", report.to_table()),
                    Format::Json => out!("{}", report.to_json()),
                }
                eprintln!("{}: wall time {:.3}s", s, report.wall_time.as_secs_f64());
                if !report.passed() {
                    failed.push(format!("{s} ({} failing cases)", report.summary.failed));
                }
            }
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Conformance(failed.join(", ")))
            }
        }
    }
}

fn coeff(shape: &ShapeArgs, hook: HookParams, format: Format) -> Outcome {
    let l = parse_shape(shape)?;
    let reduced = c_reduced(&l, hook.a, hook.b)?;
    let mut paths: Vec<(&str, Integer)> = vec![
        ("c_reduced", reduced.clone()),
        ("c_direct", c_direct(&l, hook.a, hook.b)),
    ];
    if hook.fits(l.context()) {
        paths.push((
            "pieri",
            multiply_by_hook(&l, hook)?.coefficient(&l.shift(1))?,
        ));
    }
    let agree = paths.iter().all(|(_, v)| *v == reduced);
    match format {
        Format::Table => {
            outln!("{reduced}");
        }
        Format::Json => {
            let (t, alpha, beta) = reduced_arguments(&l, hook.a, hook.b);
            let values: serde_json::Map<String, serde_json::Value> = paths
                .iter()
                .map(|(k, v)| (k.to_string(), number(v)))
                .collect();
            print_json(&json!({
                "context": l.context(),
                "shape": l.parts(),
                "hook": hook,
                "reduced": {"t": t, "a": alpha, "b": beta},
                "values": values,
                "coefficient": number(&reduced),
            }));
        }
    }
    if agree {
        Ok(())
    } else {
        let listed: Vec<String> = paths.iter().map(|(k, v)| format!("{k}={v}")).collect();
        Err(Failure::Conformance(format!(
            "paths disagree: {}",
            listed.join(" ")
        )))
    }
}

fn c_formula(t: i64, hook: HookParams, format: Format) -> Outcome {
    let (a, b) = (hook.a, hook.b);
    let paths = [
        ("double_sum", c_double_sum(t, a, b)?),
        ("single_sum", c_single_sum(t, a, b)?),
        ("positive", c_positive(t, a, b)?),
    ];
    match format {
        Format::Table => {
            for (k, v) in &paths {
                outln!("{k:<10}  {v}");
            }
        }
        Format::Json => {
            let values: serde_json::Map<String, serde_json::Value> = paths
                .iter()
                .map(|(k, v)| (k.to_string(), number(v)))
                .collect();
            print_json(&json!({"t": t, "a": a, "b": b, "values": values}));
        }
    }
    if paths.iter().all(|(_, v)| *v == paths[0].1) {
        Ok(())
    } else {
        Err(Failure::Conformance(format!(
            "c({t},{a},{b}) forms disagree"
        )))
    }
}

fn lr(lambda: &Partition, mu: &Partition, nu: &Partition, list: bool, format: Format) -> Outcome {
    let c = lr_coefficient(lambda, mu, nu);
    let mut tableaux = Vec::new();
    if list {
        for_each_lr_tableau(&star_shape(lambda, mu), nu, |t| {
            tableaux.push(t.to_string())
        });
    }
    match format {
        Format::Table => {
            outln!("{c}");
            for t in &tableaux {
                outln!("{t}");
            }
        }
        Format::Json => {
            let mut doc = json!({"lambda": lambda, "mu": mu, "nu": nu, "coefficient": number(&c)});
            if list {
                doc["tableaux"] = json!(tableaux);
            }
            print_json(&doc);
        }
    }
    Ok(())
}

fn number(x: &Integer) -> serde_json::Value {
    serde_json::Value::Number(x.to_string().parse().expect("integers are JSON numbers"))
}
