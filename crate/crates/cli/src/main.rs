use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use horncone::dvr::Budget;
use horncone::error::Error;

mod commands;

/// Exit status for a successful run or a feasible instance.
pub const EXIT_OK: u8 = 0;
/// The queried answer is negative: infeasible, nonexistent or redundant.
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
/// A search budget ran out or the witness solver left blocks unresolved.
pub const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "horncone", version, about = "Decide and realize C ≤ A(1) + ... + A(m) for prescribed Hermitian spectra")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalArgs {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Numerical tolerance for witnesses and sampling.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tolerance: f64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "HORNCONE_JOBS")]
    jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Use every Littlewood-Richardson triple, not only coefficient 1.
    #[arg(long, global = true)]
    all_coefficients: bool,
    /// Evaluate inequalities in floating point instead of exact rationals.
    #[arg(long, global = true)]
    float: bool,
    /// Largest module order the module oracles may enumerate.
    #[arg(long, global = true, default_value_t = Budget::default().max_order)]
    max_order: u64,
    /// Largest number of subgroups held during one module search.
    #[arg(long, global = true, default_value_t = Budget::default().max_subgroups)]
    max_subgroups: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    S,
    R,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Cone,
    ExactSequence,
    PIndependence,
    GreenKlein,
    SubTriple,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Littlewood-Richardson coefficient c^ν_{λμ}.
    Lrcoef {
        lambda: String,
        mu: String,
        nu: String,
    },
    /// Product of Schubert classes in H*(Gr(r, n)).
    Product {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        /// Partitions such as "2,1" (use "-" for the empty partition).
        #[arg(required = true)]
        partitions: Vec<String>,
    },
    /// Members of S_r^n(m) or R_r^n(m), one JSON object per line.
    Lists {
        #[arg(long, value_enum, default_value_t = Kind::S)]
        kind: Kind,
        /// Subset size; every size from 1 to n when omitted.
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: usize,
    },
    /// Index triples (I(1), ..., I(m), K), one JSON object per line.
    Triples {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: usize,
        /// Triples for ΣA(s) ≤ C instead of C ≤ ΣA(s).
        #[arg(long)]
        reverse: bool,
    },
    /// Decide C ≤ ΣA(s); without --gamma, decide ΣA(s) ≤ 0.
    Check {
        /// Spectra such as "1,1;1,0".
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
    },
    /// Decide C = ΣA(s).
    CheckEq {
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
    },
    /// Decide ΣA(s) ≤ C.
    CheckRev {
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
    },
    /// With --gamma: a partition γ̃ ⊃ γ with equality. Without: raise one
    /// integer spectrum until ΣA(s) ≤ 0 becomes an equality.
    Lift {
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// 1-based factor to raise.
        #[arg(long, default_value_t = 1)]
        factor: usize,
    },
    /// Partitions α̃(s) ⊂ α(s) with V(γ) ⊂ ⊗V(α̃(s)).
    Shrink {
        #[arg(long)]
        alphas: String,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        n: usize,
    },
    /// Construct witness matrices.
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long)]
        reverse: bool,
        /// Real symmetric instead of complex Hermitian matrices.
        #[arg(long)]
        real: bool,
        /// Plain-text matrices instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Existence of 0 → A → B → C → 0 with types α, β, γ, by every route.
    Modules {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// LP redundancy of every inequality for C ≤ ΣA(s).
    Minimal {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// Sample random instances and check no inequality fails.
    VerifyNecessity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Exhaustive small-instance equivalence suites.
    Sweep {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        max_weight: u32,
        /// Plain-text table instead of JSON.
        #[arg(long)]
        table: bool,
    },
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerance: f64,
    pub coefficient_one_only: bool,
    pub exact: bool,
    pub budget: Budget,
}

/// What a subcommand produced: the report text and its exit status.
pub struct Report {
    pub body: String,
    pub code: u8,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Infeasible(_) => EXIT_NEGATIVE,
        Error::Budget(_) => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let g = cli.global;
    if let Some(jobs) = g.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("{}", serde_json::json!({ "error": e.to_string() }));
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let cfg = RunConfig {
        seed: g.seed,
        tolerance: g.tolerance,
        coefficient_one_only: !g.all_coefficients,
        exact: !g.float,
        budget: Budget {
            max_order: g.max_order,
            max_subgroups: g.max_subgroups,
        },
    };
    let report = match commands::run(&cli.command, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": e.to_string() }));
            return ExitCode::from(exit_code_for(&e));
        }
    };
    let mut body = report.body;
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &g.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("{}", serde_json::json!({ "error": format!("{}: {e}", path.display()) }));
                return ExitCode::from(EXIT_USAGE);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(report.code)
}
