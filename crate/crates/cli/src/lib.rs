//! The `lucid` command line: verify, discover, generate and evaluate
//! Lucas-sequence identities.
//!
//! Exit codes: 0 verified or solved, 1 refuted or no identity found,
//! 2 usage error, 3 internal error.

mod bench;
mod commands;
mod output;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

pub use bench::{bench, BenchRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

pub type CliResult = Result<i32, CliError>;

#[derive(Parser, Debug)]
#[command(name = "lucid", version, about = "Discover and verify identities among Lucas sequences")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the counterexample search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Identity in the DSL, e.g. "U[2k] = U[k]*V[k]".
    #[arg(long, allow_hyphen_values = true)]
    pub expr: Option<String>,
    /// A `.lid` file holding one identity.
    #[arg(long)]
    pub file: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide an identity for all integer indices.
    #[command(group(ArgGroup::new("source").required(true).args(["name", "expr", "file"])))]
    Verify {
        /// Catalog entry, e.g. GF.8.
        #[arg(long)]
        name: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        expr: Option<String>,
        #[arg(long)]
        file: Option<std::path::PathBuf>,
        /// Numeric parameters `P,Q`.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        /// Counterexample search trials after a refutation.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Solve for the unknown coefficients of an ansatz and verify the result.
    Discover {
        #[command(flatten)]
        source: Source,
        /// Samples: `-1,0,1` for the primary index, or `k=0,m=1;k=1,m=1`.
        #[arg(long, allow_hyphen_values = true)]
        samples: Option<String>,
        /// Extra rows beyond the number of unknowns.
        #[arg(long, default_value_t = 0)]
        extra: usize,
        /// Scale nullspace directions so that NAME takes VALUE.
        #[arg(long, value_name = "NAME=VALUE", allow_hyphen_values = true)]
        normalize: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// U[mk] or V[mk] as a form in U[k], U[k+1].
    Powrep {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = KindArg::U)]
        kind: KindArg,
    },
    /// Interpolation identity over a set of nodes.
    Interp {
        #[arg(long)]
        n: u32,
        /// Comma-separated distinct integers.
        #[arg(long, allow_hyphen_values = true)]
        nodes: String,
        /// An integer or an index variable name.
        #[arg(long, allow_hyphen_values = true, default_value = "x")]
        x: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Lagrange)]
        variant: VariantArg,
        /// Numeric parameters `P,Q`.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        /// Shift `s` of the Horadam variant.
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        s: i64,
        /// Horadam parameters `a0,a1,p0,p1`, each a rational function of P, Q.
        #[arg(long, allow_hyphen_values = true, default_value = "1,0,P,-Q")]
        horadam: String,
    },
    /// Exact value of U[k] or V[k].
    Eval {
        #[arg(long, value_enum, default_value_t = KindArg::U)]
        kind: KindArg,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long = "P", allow_hyphen_values = true, default_value = "1")]
        p: String,
        #[arg(long = "Q", allow_hyphen_values = true, default_value = "-1")]
        q: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Doubling)]
        method: MethodArg,
    },
    /// Built-in identities.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Time the doubling, iterative and matrix evaluators on U[k].
    Bench {
        #[arg(long = "P", allow_hyphen_values = true, default_value = "1")]
        p: String,
        #[arg(long = "Q", allow_hyphen_values = true, default_value = "-1")]
        q: String,
        #[arg(long, default_value_t = 100_000)]
        k: u64,
        /// Comma-separated subset of doubling, iterative, matrix.
        #[arg(long, default_value = "doubling,iterative,matrix")]
        methods: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    /// Names and summaries.
    List,
    /// One entry.
    Show { name: String },
    /// Verify every entry, in catalog order.
    Verify,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    #[value(name = "U", alias = "u")]
    U,
    #[value(name = "V", alias = "v")]
    V,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    Lagrange,
    Qscaled,
    Horadam,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Doubling,
    Iterative,
    Matrix,
}

/// Parse `argv` (including the program name) and run the subcommand.
/// Results go to `out`, diagnostics to `err`.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let shown = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{shown}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{shown}");
                EXIT_OK
            };
        }
    };
    log::debug!("{cli:?}");
    let result = catch_unwind(AssertUnwindSafe(|| commands::dispatch(&cli, out)));
    match result {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            let _ = writeln!(err, "lucid: {e}");
            e.code()
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            let _ = writeln!(err, "lucid: internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}
