use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use kmul::{Natural, Radix, Registry, DEFAULT_THRESHOLD};
use kmul_cli::alloc::CountingAllocator;
use kmul_cli::bench::{self, BenchConfig, DEFAULT_REPS_BUDGET};
use kmul_cli::verify::{self, VerifyConfig};

#[global_allocator]
static ALLOC: CountingAllocator = CountingAllocator;

/// Multiply long integers with schoolbook, standard Karatsuba or in-place
/// Karatsuba, cross-check them, and time them.
#[derive(Parser)]
#[command(name = "kmul", version)]
struct Cli {
    /// Limb width in bits; the radix is 2^bits
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..=16))]
    radix_bits: u32,

    /// Karatsuba threshold in limbs
    #[arg(long, global = true, default_value_t = DEFAULT_THRESHOLD, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    threshold: usize,

    #[arg(long, global = true, default_value_t = 0x6b6d_756c)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the product of two hexadecimal numerals
    Mul {
        a: String,
        b: String,
        #[arg(long, default_value = "kr")]
        algo: String,
        /// Read and print decimal instead of hex
        #[arg(long)]
        decimal: bool,
    },
    /// Compare SB, KS and KR on random and adversarial operands
    Verify {
        #[arg(long, default_value_t = 2000)]
        trials: u64,
        #[arg(long, default_value_t = 600)]
        max_len: usize,
        /// Comma-separated radices (default: 10, 2^8 and 2^radix-bits)
        #[arg(long, value_delimiter = ',')]
        radices: Vec<u32>,
    },
    /// Time square multiplications and write CSV
    Bench(BenchArgs),
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 128)]
    min: usize,
    #[arg(long, default_value_t = 8192)]
    max: usize,
    /// Arithmetic length step
    #[arg(long, conflicts_with = "geometric")]
    step: Option<usize>,
    /// Geometric length factor (default 2)
    #[arg(long)]
    geometric: Option<f64>,
    #[arg(long, value_delimiter = ',', default_value = "sb,ks,kr")]
    algos: Vec<String>,
    /// CSV destination; standard output if omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Timed repetitions per length are max(4, budget / n^2)
    #[arg(long, default_value_t = DEFAULT_REPS_BUDGET)]
    reps_budget: u64,
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let radix = Radix::from_bits(cli.radix_bits).expect("range checked by clap");
    match cli.command {
        Command::Mul { a, b, algo, decimal } => match cmd_mul(radix, cli.threshold, &a, &b, &algo, decimal) {
            Ok(text) => {
                println!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("kmul: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        },
        Command::Verify { trials, max_len, radices } => {
            let radices = if radices.is_empty() {
                let mut r = vec![10, 256, radix.get()];
                r.dedup();
                r
            } else {
                radices
            };
            let radices = match radices.into_iter().map(Radix::new).collect::<kmul::Result<Vec<_>>>() {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("kmul: {e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            if trials == 0 {
                eprintln!("kmul: warning: --trials 0, nothing was checked");
            }
            let cfg = VerifyConfig { trials, max_len, radices, threshold: cli.threshold, seed: cli.seed };
            let report = verify::run(&cfg);
            println!("{report}");
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH)
            }
        }
        Command::Bench(args) => {
            let cfg = match bench_config(radix, cli.threshold, cli.seed, &args) {
                Ok(cfg) => cfg,
                Err(e) => {
                    eprintln!("kmul: {e:#}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            match cmd_bench(&cfg, args.out.as_ref()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("kmul: {e:#}");
                    ExitCode::FAILURE
                }
            }
        }
    }
}

fn cmd_mul(radix: Radix, threshold: usize, a: &str, b: &str, algo: &str, decimal: bool) -> kmul::Result<String> {
    let parse = |s: &str| if decimal { Natural::from_decimal(radix, s) } else { Natural::from_hex(radix, s) };
    let (a, b) = (parse(a)?, parse(b)?);
    let product = Registry::with_builtins(threshold)?.get(algo)?.product(&a, &b)?;
    if decimal {
        Ok(product.to_decimal())
    } else {
        product.to_hex()
    }
}

fn bench_config(radix: Radix, threshold: usize, seed: u64, args: &BenchArgs) -> Result<BenchConfig> {
    let lengths = match args.step {
        Some(step) => bench::arithmetic_lengths(args.min, args.max, step)?,
        None => bench::geometric_lengths(args.min, args.max, args.geometric.unwrap_or(2.0))?,
    };
    let registry = Registry::with_builtins(threshold)?;
    for a in &args.algos {
        registry.get(a)?;
    }
    Ok(BenchConfig { lengths, algos: args.algos.clone(), radix, threshold, seed, reps_budget: args.reps_budget })
}

fn cmd_bench(cfg: &BenchConfig, out: Option<&PathBuf>) -> Result<()> {
    if !kmul_cli::alloc::counting_installed() {
        eprintln!("kmul: warning: allocation counter inactive, heap_allocs will read 0");
    }
    let records = bench::run(cfg)?;
    match out {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            bench::write_csv(&records, BufWriter::new(f)).with_context(|| format!("writing {}", path.display()))?;
        }
        None => bench::write_csv(&records, io::stdout().lock())?,
    }
    for (algo, slope) in bench::slopes(&records) {
        eprintln!("{algo}: log-log slope {slope:.3}");
    }
    let at_max = |label: &str| records.iter().filter(|r| r.algo == label).max_by_key(|r| r.n).map(|r| (r.n, r.avg_ns));
    if let (Some((n, kr)), Some((_, ks))) = (at_max("KR"), at_max("KS")) {
        if ks > 0 {
            eprintln!("KR/KS at n={n}: {:.3}", kr as f64 / ks as f64);
        }
    }
    io::stderr().flush()?;
    Ok(())
}
