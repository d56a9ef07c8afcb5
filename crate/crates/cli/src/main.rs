use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use mudeg::commands::{self, CacheOptions, Caps, Output};
use mudeg::verify::Fault;
use mudeg::{exit, CliError};

#[derive(Parser)]
#[command(
    name = "mudeg",
    version,
    about = "Exact minimal faithful permutation degrees of finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Print the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest group order the tool will enumerate.
    #[arg(long, global = true, default_value_t = 2000)]
    max_order: usize,
    /// Largest number of subgroups a lattice may have.
    #[arg(long, global = true, default_value_t = 200_000)]
    max_subgroups: usize,
    /// Largest number of cosets Todd-Coxeter may define.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_cosets: usize,
    /// Print wall-clock timing and cache status to stderr.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args, Clone)]
struct CacheArgs {
    /// Always rebuild the subgroup lattice.
    #[arg(long)]
    no_cache: bool,
    /// Cache directory (default: $MUDEG_CACHE_DIR, then the user cache dir).
    #[arg(long, value_name = "PATH")]
    cache_dir: Option<PathBuf>,
}

impl CacheArgs {
    fn options(&self) -> CacheOptions {
        CacheOptions {
            disabled: self.no_cache,
            dir: self.cache_dir.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimal faithful permutation degree of a group expression.
    Mu {
        expr: String,
        /// Also print the subgroups whose coset actions realize the degree.
        #[arg(long)]
        certificate: bool,
        #[command(flatten)]
        cache: CacheArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Order and degree of a group expression.
    Order {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Subgroup counts by order, normal subgroups and cores.
    Lattice {
        expr: String,
        /// Only list normal subgroups.
        #[arg(long)]
        normal_only: bool,
        #[command(flatten)]
        cache: CacheArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Run the G(4,4,3) reproduction checks.
    VerifyPaper {
        /// Fault injection: replace one of x, y, a, b by its product with γ1.
        #[arg(long, hide = true, value_name = "GEN")]
        corrupt: Option<char>,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep C_m wr S_n for failures of additivity of mu.
    Hunt {
        #[command(flatten)]
        common: Common,
    },
    /// Todd-Coxeter coset enumeration on a presentation file.
    Enumerate {
        file: PathBuf,
        /// Subgroup generator word; repeat for more generators.
        #[arg(long = "subgroup", value_name = "WORD")]
        subgroup: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Mu { common, .. }
            | Command::Order { common, .. }
            | Command::Lattice { common, .. }
            | Command::VerifyPaper { common, .. }
            | Command::Hunt { common }
            | Command::Enumerate { common, .. } => common,
        }
    }
}

fn run(command: &Command) -> Result<Output, CliError> {
    let c = command.common();
    let caps = Caps {
        max_order: c.max_order,
        max_subgroups: c.max_subgroups,
        max_cosets: c.max_cosets,
    };
    match command {
        Command::Mu {
            expr,
            certificate,
            cache,
            ..
        } => commands::mu(expr, &caps, &cache.options(), *certificate),
        Command::Order { expr, .. } => commands::order(expr),
        Command::Lattice {
            expr,
            normal_only,
            cache,
            ..
        } => commands::lattice(expr, &caps, &cache.options(), *normal_only),
        Command::VerifyPaper { corrupt, .. } => {
            Ok(commands::verify_paper(&caps, corrupt.map(Fault::Corrupt)))
        }
        Command::Hunt { .. } => commands::hunt(&caps),
        Command::Enumerate { file, subgroup, .. } => commands::enumerate(file, subgroup, &caps),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::PARSE
            } else {
                exit::SUCCESS
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let start = Instant::now();
    let common = cli.command.common().clone();
    match run(&cli.command) {
        Ok(mut out) => {
            let wall_ms = start.elapsed().as_secs_f64() * 1000.0;
            out.report.finish_timing(wall_ms);
            if let Some(status) = &out.cache {
                out.report
                    .runtime
                    .insert("cache".into(), serde_json::json!(status.describe()));
            }
            let mut stdout = std::io::stdout().lock();
            // A closed pipe (e.g. `| head`) is not an error for us.
            let _ = if common.json {
                writeln!(stdout, "{}", out.report.to_json())
            } else {
                write!(stdout, "{}", out.text)
            };
            if common.timing {
                eprintln!("wall time: {wall_ms:.1} ms");
                if let Some(status) = &out.cache {
                    eprintln!("lattice cache: {}", status.describe());
                }
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(exit::CHECK_FAILED as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
