use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cubic_census::cli_store::{self, cache, Cache, Config};
use cubic_census::Result;

/// Census of orders in complex cubic fields ordered by regulator.
#[derive(Parser)]
#[command(name = "cubic-census", version)]
struct Cli {
    /// Cache directory.
    #[arg(long, global = true, env = cache::ENV_VAR)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate complex cubic fields with |d_K| ≤ N into the cache.
    Fields {
        #[arg(long)]
        dmax: u64,
    },
    /// Print a dossier for the field defined by x³ + a1x² + a2x + a3.
    Analyze {
        /// a1,a2,a3
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value = "2,3")]
        primes: String,
    },
    /// Count orders with r(O) ≤ x on a grid and print the report CSV.
    Count {
        #[arg(long, default_value = "2,3")]
        primes: String,
        #[arg(long)]
        grid: String,
        /// Candidate ceiling of the module class computation.
        #[arg(long)]
        ceiling: Option<u64>,
    },
    /// Evaluate the partial zeta product and its log-derivative residual.
    Zeta {
        #[arg(long, default_value = "2,3")]
        primes: String,
        /// Comma-separated values such as 1.5 or 1.5+2i.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Regulator cutoff R; needs a census reaching e^{3R}.
        #[arg(long)]
        cutoff: f64,
    },
}

fn run(cli: Cli) -> Result<String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers)
        .build_global()
        .map_err(|e| cubic_census::Error::InvalidInput(format!("worker pool: {e}")))?;
    let dir = cache::cache_dir(cli.cache_dir.as_deref());
    let mut cache = Cache::open(&dir)?;
    match cli.cmd {
        Cmd::Fields { dmax } => cli_store::cmd_fields(&mut cache, dmax),
        Cmd::Analyze { poly, primes } => {
            let poly = cli_store::parse_poly(&poly)?;
            let primes = cli_store::parse_primes(&primes)?;
            cli_store::cmd_analyze(&mut cache, &poly, &primes)
        }
        Cmd::Count { primes, grid, ceiling } => {
            let mut config = Config::new(cli_store::parse_primes(&primes)?, cli_store::parse_list(&grid)?)?;
            config.workers = cli.workers;
            if let Some(c) = ceiling {
                config.ceiling = c;
            }
            cli_store::cmd_count(&mut cache, &config)
        }
        Cmd::Zeta { primes, s, cutoff } => {
            let primes = cli_store::parse_primes(&primes)?;
            let s = s
                .split(',')
                .map(cli_store::parse_complex)
                .collect::<Result<Vec<_>>>()?;
            cli_store::cmd_zeta(&cache, &primes, &s, cutoff)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
