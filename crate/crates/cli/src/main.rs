use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use weakprod::catalog::custom::{export_tables, load_custom};
use weakprod::catalog::Registry;
use weakprod::preservation::split_product;
use weakprod::suite::{paper_criteria, run_suite, Suite, DEFAULT_MAX_SIZE};
use weakprod::{Elem, Error, FinSet, Report};

/// `println!` that ignores a closed stdout.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

const OK: u8 = 0;
const VIOLATION: u8 = 1;
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "weakprod",
    version,
    about = "Check weak product preservation of finite set functors and monads"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Laws,
    Connected,
    Products,
    Pullbacks,
    Theorem1,
    Theorem2,
    Quotient,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Laws => vec![Suite::Laws],
            SuiteArg::Connected => vec![Suite::Connected],
            SuiteArg::Products => vec![Suite::Products],
            SuiteArg::Pullbacks => vec![Suite::Pullbacks],
            SuiteArg::Theorem1 => vec![Suite::Theorem1],
            SuiteArg::Theorem2 => vec![Suite::Theorem2],
            SuiteArg::Quotient => vec![Suite::Quotient],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List catalog entries.
    Catalog,
    /// Run a check suite on a catalog entry.
    Check {
        name: String,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Custom table documents to register first.
        #[arg(long = "with")]
        with: Vec<PathBuf>,
    },
    /// Split (p, q) into t ∈ F(A1×A2) for a connected monad.
    Split {
        name: String,
        #[arg(long)]
        a1: String,
        #[arg(long)]
        a2: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Run the regression criteria.
    VerifyPaper {
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
        /// Replace nonempty-powerset by a functor that breaks composition.
        #[arg(long)]
        inject_mutant: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Validate a custom table document.
    Load { path: PathBuf },
    /// Print a catalog entry as a custom table document.
    Export {
        name: String,
        #[arg(long, default_value_t = 2)]
        max_size: usize,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotConnected(_) | Error::Rejected(_) | Error::Inconsistent(_) => VIOLATION,
        _ => USAGE,
    }
}

fn fail(e: Error) -> u8 {
    eprintln!("error: {e}");
    exit_code(&e)
}

fn read_doc(path: &Path) -> Result<String, u8> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        USAGE
    })
}

fn registry_with(paths: &[PathBuf]) -> Result<Registry, u8> {
    let mut reg = Registry::builtin();
    for path in paths {
        let (entry, instance) = load_custom(&read_doc(path)?).map_err(fail)?;
        reg.register(entry, instance).map_err(fail)?;
    }
    Ok(reg)
}

fn cmd_catalog() -> u8 {
    for (entry, _) in Registry::builtin().iter() {
        out!("{entry}");
    }
    OK
}

fn cmd_check(name: &str, suite: SuiteArg, max_size: usize, format: Format, with: &[PathBuf]) -> u8 {
    let reg = match registry_with(with) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let Some((entry, instance)) = reg.get(name) else {
        eprintln!(
            "error: unknown catalog entry {name:?}; known: {}",
            reg.names().join(", ")
        );
        return USAGE;
    };
    let mut report = Report::new(name).under_bound(entry.finiteness.bound());
    for s in suite.suites() {
        report.merge(run_suite(entry, instance, s, max_size));
    }
    match format {
        Format::Text => out!("{report}"),
        Format::Json => out!("{}", report.to_json()),
    }
    if report.all_confirmed() {
        OK
    } else {
        VIOLATION
    }
}

fn cmd_split(name: &str, a1: &str, a2: &str, p: &str, q: &str) -> u8 {
    let reg = Registry::builtin();
    let Some((_, instance)) = reg.get(name) else {
        eprintln!("error: unknown catalog entry {name:?}");
        return USAGE;
    };
    let Some(monad) = instance.monad() else {
        eprintln!("error: {name} is not a monad");
        return USAGE;
    };
    let parsed = (|| -> weakprod::Result<_> {
        Ok((
            a1.parse::<FinSet>()?,
            a2.parse::<FinSet>()?,
            p.parse::<Elem>()?,
            q.parse::<Elem>()?,
        ))
    })();
    let (a1, a2, p, q) = match parsed {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let r = match split_product(monad, &a1, &a2, &p, &q) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    out!("A1 = {a1}, A2 = {a2}, p = {p}, q = {q}");
    for (a, ta) in r.tau.iter() {
        out!("τ({a}) = {ta}");
    }
    out!("F(τ)(p) = {}", r.f_tau_p);
    out!("t = {}", r.t);
    out!("verified: F(π₁)(t) = {p}, F(π₂)(t) = {q}");
    OK
}

fn cmd_verify_paper(max_size: usize, inject_mutant: bool, format: Format) -> u8 {
    let outcomes = paper_criteria(max_size, inject_mutant);
    match format {
        Format::Text => {
            for o in &outcomes {
                out!("{o}");
            }
            let passed = outcomes.iter().filter(|o| o.passed()).count();
            out!("{passed}/{} criteria passed", outcomes.len());
        }
        Format::Json => out!(
            "{}",
            serde_json::to_string_pretty(&outcomes).expect("outcomes serialize")
        ),
    }
    if outcomes.iter().all(|o| o.passed()) {
        OK
    } else {
        VIOLATION
    }
}

fn cmd_load(path: &Path) -> u8 {
    let text = match read_doc(path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    match load_custom(&text) {
        Ok((entry, _)) => {
            out!("registered {entry}");
            OK
        }
        Err(e) => fail(e),
    }
}

fn cmd_export(name: &str, max_size: usize) -> u8 {
    let reg = Registry::builtin();
    let Some((_, instance)) = reg.get(name) else {
        eprintln!("error: unknown catalog entry {name:?}");
        return USAGE;
    };
    match export_tables(name, instance, max_size) {
        Ok(doc) => {
            out!("{}", doc.to_json());
            OK
        }
        Err(e) => fail(e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Catalog => cmd_catalog(),
        Command::Check {
            name,
            suite,
            max_size,
            format,
            with,
        } => cmd_check(&name, suite, max_size, format, &with),
        Command::Split { name, a1, a2, p, q } => cmd_split(&name, &a1, &a2, &p, &q),
        Command::VerifyPaper {
            max_size,
            inject_mutant,
            format,
        } => cmd_verify_paper(max_size, inject_mutant, format),
        Command::Load { path } => cmd_load(&path),
        Command::Export { name, max_size } => cmd_export(&name, max_size),
    };
    ExitCode::from(code)
}
