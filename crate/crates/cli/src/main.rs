//! The `gwitt` binary: exact Grothendieck-Witt arithmetic, the power
//! structure a_n, symmetric powers of multiquadratic spectra, trace
//! forms, and verification suites.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 parse or
//! usage error, 3 unsupported field or resource guard exceeded.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gwitt_cli::report::Report;
use gwitt_cli::{error_report, CliError, EXIT_GUARD};

#[derive(Parser)]
#[command(
    name = "gwitt",
    version,
    about = "Exact arithmetic for Grothendieck-Witt rings, power structures and symmetric powers"
)]
struct Cli {
    /// Base field: Q, R, C or Fp for an odd prime p (default Q)
    #[arg(long, global = true)]
    field: Option<String>,

    /// Emit the report as JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a form, canonicalize it and print its invariants
    Normalize {
        /// e.g. "<2> + 3<5> - H"
        form: String,
    },
    /// Decide equality of two forms in the Grothendieck-Witt ring
    Eq { lhs: String, rhs: String },
    /// Apply the power-structure function a_n to a form
    An {
        #[arg(short, default_value_t = 4)]
        n: usize,
        form: String,
    },
    /// Expand the geometric series (1-t)^{-r} through degree N
    Geom {
        #[arg(short = 'N', default_value_t = 8)]
        trunc: usize,
        form: String,
    },
    /// Symmetric power of a multiquadratic algebra class
    Sympow {
        #[arg(short, default_value_t = 4)]
        n: usize,
        /// e.g. "k(sqrt 2, sqrt 3)" or "k(sqrt 2) - k"
        algebra: String,
    },
    /// Trace form of an algebra expression
    Trace {
        /// e.g. "k(sqrt 2, sqrt 3) + poly(x^3 - 2)"
        algebra: String,
    },
    /// Run a verification suite
    Verify {
        #[command(subcommand)]
        suite: VerifyCommand,
    },
    /// Print the table of marks of a named small group
    Tableofmarks {
        /// One of C1 C2 C3 C4 V4 C5 C6 S3 C8 D4 Q8 A4
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Power-structure axioms; without --field, the full battery over
    /// Z and GW of Q, F3, F5, F7, R, C
    Axioms {
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(short = 'N', default_value_t = 6)]
        trunc: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Well-definedness of a_n through the defining relations over Q
    Welldef {
        #[arg(long, default_value_t = 300)]
        pairs: usize,
        #[arg(short, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        height: i64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Trace compatibility: the full sweep, or one algebra expression
    Compat {
        #[arg(short, default_value_t = 6)]
        n: usize,
        algebra: Option<String>,
    },
    /// Equivariant decomposition and twisting identities
    Twist {
        #[arg(short, default_value_t = 6)]
        n: usize,
    },
    /// Biquadratic symmetric-power series against the closed forms
    Burnside {
        #[arg(short = 'N', default_value_t = 12)]
        trunc: usize,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let field = cli.field.as_deref();
    match &cli.command {
        Command::Normalize { form } => gwitt_cli::cmd_normalize(field, form),
        Command::Eq { lhs, rhs } => gwitt_cli::cmd_eq(field, lhs, rhs),
        Command::An { n, form } => gwitt_cli::cmd_an(field, *n, form),
        Command::Geom { trunc, form } => gwitt_cli::cmd_geom(field, *trunc, form),
        Command::Sympow { n, algebra } => gwitt_cli::cmd_sympow(field, *n, algebra),
        Command::Trace { algebra } => gwitt_cli::cmd_trace(field, algebra),
        Command::Tableofmarks { group } => gwitt_cli::cmd_tableofmarks(group),
        Command::Verify { suite } => match suite {
            VerifyCommand::Axioms {
                samples,
                trunc,
                seed,
            } => gwitt_cli::cmd_verify_axioms(field, *samples, *trunc, *seed),
            VerifyCommand::Welldef {
                pairs,
                n,
                height,
                seed,
            } => gwitt_cli::cmd_verify_welldef(*pairs, *n, *height, *seed),
            VerifyCommand::Compat { n, algebra } => {
                gwitt_cli::cmd_verify_compat(field, *n, algebra.as_deref())
            }
            VerifyCommand::Twist { n } => gwitt_cli::cmd_verify_twist(*n),
            VerifyCommand::Burnside { trunc } => gwitt_cli::cmd_verify_burnside(*trunc),
        },
    }
}

fn command_name(cli: &Cli) -> &'static str {
    match &cli.command {
        Command::Normalize { .. } => "normalize",
        Command::Eq { .. } => "eq",
        Command::An { .. } => "an",
        Command::Geom { .. } => "geom",
        Command::Sympow { .. } => "sympow",
        Command::Trace { .. } => "trace",
        Command::Verify { .. } => "verify",
        Command::Tableofmarks { .. } => "tableofmarks",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    // internal desk-scale guards may panic deep inside semantic
    // equality; surface those as guard failures instead of crashes
    let previous_hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| run(&cli)));
    panic::set_hook(previous_hook);

    let report = match outcome {
        Ok(Ok(report)) => report,
        Ok(Err(err)) => error_report(command_name(&cli), cli.field.as_deref(), &[], &err),
        Err(_) => error_report(
            command_name(&cli),
            cli.field.as_deref(),
            &[],
            &CliError {
                message: "internal guard exceeded".into(),
                exit: EXIT_GUARD,
            },
        ),
    };

    if cli.json {
        println!("{}", report.render_json());
    } else {
        print!("{}", report.render_text());
    }
    ExitCode::from(u8::try_from(report.exit).unwrap_or(1))
}
