use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use deligne_core::algebra::BaseField;
use deligne_core::family::FamilyBase;
use deligne_workbench::parse::{parse_expr, parse_field};
use deligne_workbench::run::{self, ChainMapInput};
use deligne_workbench::{fixtures, Report, WbError, WbResult};

/// Exact computations around the Deligne pairing on P1.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on bad input or an undefined operation.
#[derive(Parser)]
#[command(name = "deligne", version)]
struct Cli {
    /// Print a JSON report
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock time in the report
    #[arg(long, global = true)]
    timing: bool,
    /// Field for inputs without an `over ...` tag, e.g. GF(9) or QQ
    #[arg(long, global = true, value_name = "FIELD")]
    over: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Product of all local tame symbols of two functions of t
    Weil { f: String, g: String },
    /// The scalar pairing <f, g> = g(div f) and its symmetry
    Pair { f: String, g: String },
    /// Both routes from two relative divisors on P1 x B to a line bundle on B
    ThetaCompare {
        d: String,
        e: String,
        #[arg(long, value_enum, default_value = "p1")]
        base: Base,
    },
    /// Correspondences on P1 x P1
    Corr {
        #[command(subcommand)]
        op: CorrOp,
    },
    /// The Heisenberg extension of A x B by A (x) B, e.g. `heisenberg Z2 Z2xZ2`
    Heisenberg { a: String, b: String },
    /// Two-term complexes of abelian groups
    Picard {
        #[command(subcommand)]
        op: PicardOp,
    },
    /// List the named fixtures or print one
    Fixtures { name: Option<String> },
    /// Classify an expression and print its canonical form
    Parse { text: String },
}

#[derive(Subcommand)]
enum CorrOp {
    /// Pull a divisor back along a correspondence
    Act {
        alpha: String,
        m: String,
        /// Also compute the action through the family pairing
        #[arg(long)]
        via_deligne: bool,
    },
    /// Compose two correspondences, g o h
    Compose {
        g: String,
        h: String,
        /// Check functoriality on this divisor
        #[arg(long, value_name = "DIVISOR")]
        on: Option<String>,
    },
}

#[derive(Subcommand)]
enum PicardOp {
    /// pi0 of the cokernel complex against the cokernel of pi0
    Coker {
        /// Seed for a random chain map; defaults to DELIGNE_SEED, then 0
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 3)]
        rank: usize,
        #[arg(long, default_value_t = 4)]
        bound: i64,
        /// JSON object with rows of d_a, d_b, f1, f0, or @path to read it from
        #[arg(long)]
        matrices: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Base {
    P1,
    A1,
}

fn default_seed() -> WbResult<u64> {
    match std::env::var("DELIGNE_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| WbError::Usage(format!("DELIGNE_SEED must be an integer, got `{s}`"))),
        Err(_) => Ok(0),
    }
}

fn read_matrices(arg: &str) -> WbResult<ChainMapInput> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| WbError::Usage(format!("{path}: {e}")))?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| WbError::Usage(format!("matrices: {e}")))
}

fn fixtures_report(name: Option<&str>) -> WbResult<Report> {
    let mut r = Report::new("fixtures");
    match name {
        None => {
            for f in fixtures::all() {
                r.put(f.name, f.summary);
            }
        }
        Some(n) => {
            let f = fixtures::get(n).ok_or_else(|| WbError::Usage(format!("no fixture named `{n}`")))?;
            r.put("name", f.name);
            r.put("summary", f.summary);
            r.put("value", f.value);
        }
    }
    Ok(r)
}

fn parse_report(text: &str) -> WbResult<Report> {
    let e = parse_expr(text)?;
    let mut r = Report::new("parse");
    r.put("kind", e.kind());
    r.put("canonical", e.render());
    Ok(r)
}

fn dispatch(cli: &Cli) -> WbResult<Report> {
    let over: Option<BaseField> = cli.over.as_deref().map(parse_field).transpose()?;
    let over = over.as_ref();
    match &cli.cmd {
        Cmd::Weil { f, g } => run::weil(f, g, over),
        Cmd::Pair { f, g } => run::pair(f, g, over),
        Cmd::ThetaCompare { d, e, base } => {
            let base = match base {
                Base::P1 => FamilyBase::P1,
                Base::A1 => FamilyBase::A1,
            };
            run::theta_compare(d, e, base, over)
        }
        Cmd::Corr { op: CorrOp::Act { alpha, m, via_deligne } } => run::corr_act(alpha, m, *via_deligne, over),
        Cmd::Corr { op: CorrOp::Compose { g, h, on } } => run::corr_compose(g, h, on.as_deref(), over),
        Cmd::Heisenberg { a, b } => run::heisenberg(a, b),
        Cmd::Picard { op: PicardOp::Coker { seed, rank, bound, matrices } } => {
            let input = matrices.as_deref().map(read_matrices).transpose()?;
            let seed = match seed {
                Some(s) => *s,
                None => default_seed()?,
            };
            run::picard_coker(input.as_ref(), seed, *rank, *bound)
        }
        Cmd::Fixtures { name } => fixtures_report(name.as_deref()),
        Cmd::Parse { text } => parse_report(text),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match dispatch(&cli) {
        Ok(mut r) => {
            if cli.timing {
                r.duration_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            println!("{}", if cli.json { r.to_json() } else { r.to_text() });
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(e) => {
            if cli.json {
                println!("{}", e.to_json());
            } else {
                eprintln!("error ({}): {e}", e.kind());
            }
            ExitCode::from(2)
        }
    }
}
