//! `projdyn` command-line front end.

mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exact computations with endomorphisms of projective space.
#[derive(Debug, Parser)]
#[command(name = "projdyn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: Global,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Coefficient field: `QQ` or `Fp:<prime>`. Defaults to the field of a
    /// JSON map, or `QQ`.
    #[arg(long, global = true)]
    pub field: Option<String>,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads, 0 for one per core. Falls back to PROJDYN_THREADS.
    #[arg(long, global = true, env = "PROJDYN_THREADS")]
    pub threads: Option<usize>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Resultant strategy: `ratio` or `modular` (default: chosen per input).
    #[arg(long, global = true, default_value = "auto")]
    pub strategy: String,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// The s-th iterate of a map.
    Iterate {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 2)]
        s: u32,
    },
    /// Forward orbit of a point until it repeats.
    Orbit {
        #[arg(long)]
        map: String,
        /// Coordinates separated by `:` or `,`, e.g. `0:1:2`.
        #[arg(long)]
        point: String,
        /// Maximum number of steps.
        #[arg(long, default_value_t = 64)]
        bound: usize,
    },
    /// Jacobian determinant of a map, up to scalar.
    Jacobian {
        #[arg(long)]
        map: String,
    },
    /// Macaulay resultant of the listed forms (n + 1 forms in n + 1 variables).
    Resultant {
        #[arg(long)]
        map: String,
    },
    /// Image of the hypersurface `--form` under the map, pushed forward `--s` times.
    Pushforward {
        #[arg(long)]
        map: String,
        #[arg(long)]
        form: String,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
    /// Improperness certificate for an index tuple.
    ImproperCert {
        #[arg(long)]
        map: String,
        #[arg(long)]
        form: String,
        #[arg(long)]
        indices: String,
    },
    /// Least index tuple with a vanishing certificate, up to a bound.
    ImproperSearch {
        #[arg(long)]
        map: String,
        #[arg(long)]
        form: String,
        #[arg(long)]
        bound: u32,
    },
    /// Whether the map has a critical point of period dividing s.
    YsTest {
        #[arg(long)]
        map: String,
        #[arg(long)]
        s: u32,
    },
    /// The n-th symmetric power of a map of the projective line.
    Sympow {
        #[arg(long)]
        map: String,
        #[arg(long)]
        n: usize,
    },
    /// Coefficients of the period polynomial, lowest degree first.
    PeriodPoly {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        s: u32,
    },
    /// A parameter c in the field for which 0 has exact period s under z^-d + c.
    FindPcf {
        #[arg(long)]
        d: u32,
        /// The period, a prime.
        #[arg(long)]
        s: u32,
    },
    /// Dimensions of spaces of forms and maps, and the generic certificate degree.
    Dims {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        /// Degree of the hypersurface for the certificate degree.
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[arg(long)]
        indices: Option<String>,
    },
}

/// Exit statuses.
pub mod status {
    pub const SUCCESS: u8 = 0;
    pub const NEGATIVE: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const DEGENERATE: u8 = 3;
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { status::USAGE } else { status::SUCCESS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(status::USAGE);
        }
    }
    let (code, out) = commands::run(&cli.command, &cli.global);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(code)
}
