//! `fibgate`: verify the exact identities, evaluate braid words, search for
//! leakage-free gates, and compile the iterative entangler.
//!
//! Exit codes are a stable contract: 0 success, 1 verification or
//! convergence failure (and runtime errors), 2 usage or parse errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use fibgate::braid::BraidWord;
use fibgate::field::SQRT_PHI_INV;
use fibgate::gate::{classify_exact, classify_float, diagonal_entangling_gap, Tolerances};
use fibgate::iterate::{
    check_density_witnesses, compile_entangler, default_entangler_words, CompiledWord, IterError,
};
use fibgate::matrix::FloatMatrix;
use fibgate::rep::{B3Rep, B6Rep, FibData, BASIS6};
use fibgate::search::{run_search, SearchConfig, SearchPolicy};
use fibgate::verify::{identity_suite, sigma23_cubed_fixed_states, suite_passes};

#[derive(Parser)]
#[command(name = "fibgate", version, about = "Fibonacci-anyon braiding gate toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact identity suite; exit 0 iff every identity holds.
    Verify,
    /// Evaluate a braid word and classify the resulting gate.
    Eval(EvalArgs),
    /// Exhaustive search for leakage-free gates up to a word length.
    Search(SearchArgs),
    /// Compile the iterative entangler and report the limiting gate.
    Approximate(ApproximateArgs),
    /// Print the constants and tolerances the toolkit is built on.
    Info,
}

#[derive(Args)]
struct EvalArgs {
    /// Braid word, e.g. "3 2 1 1 2 3" (negative letters are inverses).
    word: String,
    /// Strand count of the representation.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(3..=6))]
    strands: u8,
    /// Arithmetic backend.
    #[arg(long, default_value = "exact", value_parser = ["exact", "float"])]
    backend: String,
}

#[derive(Args)]
struct SearchArgs {
    /// Maximum word length to visit.
    #[arg(long, value_name = "L")]
    max_len: usize,
    /// Skip the float screen; run exact arithmetic on every word.
    #[arg(long)]
    exact_only: bool,
    /// Number of parallel work groups (also the checkpoint granularity).
    #[arg(long, default_value_t = 16)]
    shards: usize,
    /// Enumerate only canonical representatives under commuting moves.
    #[arg(long)]
    normalize_commuting: bool,
    /// Output path for the JSONL record stream.
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Args)]
struct ApproximateArgs {
    /// Stop once the V-block off-diagonal drops below this.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Iteration budget before giving up.
    #[arg(long, default_value_t = 40)]
    max_iter: usize,
    /// Write the final braid word (space-separated letters) here.
    #[arg(long, value_name = "FILE")]
    emit_word: Option<PathBuf>,
    /// Write the convergence trace as JSON lines here.
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse(); // clap exits with 2 on usage errors
    let outcome = match cli.command {
        Command::Verify => cmd_verify(),
        Command::Eval(args) => cmd_eval(&args),
        Command::Search(args) => cmd_search(&args),
        Command::Approximate(args) => cmd_approximate(&args),
        Command::Info => cmd_info(),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn cmd_verify() -> anyhow::Result<ExitCode> {
    let data = FibData::standard();
    let checks = identity_suite(&data);
    for c in &checks {
        println!("{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
    }
    let fixed = sigma23_cubed_fixed_states(&data);
    let labels: Vec<&str> = fixed.iter().map(|&i| BASIS6[i]).collect();
    println!(
        "(sigma2 sigma3)^3 fixes basis states {{{}}} up to phase",
        labels.join(", ")
    );
    Ok(if suite_passes(&checks) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// 17 significant digits, the format every numeric output uses.
fn fmt_c(z: Complex64) -> String {
    format!("{:.16e} {:+.16e}i", z.re, z.im)
}

fn print_float_matrix(m: &FloatMatrix) {
    for i in 0..m.dim() {
        let row: Vec<String> = (0..m.dim()).map(|j| fmt_c(m[(i, j)])).collect();
        println!("  [{}]", row.join(",  "));
    }
}

fn cmd_eval(args: &EvalArgs) -> anyhow::Result<ExitCode> {
    let strands = args.strands as usize;
    if strands != 3 && strands != 6 {
        eprintln!("error: --strands must be 3 or 6");
        return Ok(ExitCode::from(2));
    }
    let word = match BraidWord::parse(strands, &args.word) {
        Ok(w) => w,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    println!("word: {word}  (strands {strands}, backend {})", args.backend);
    match (strands, args.backend.as_str()) {
        (6, "exact") => {
            let m = B6Rep::standard().evaluate_exact(&word)?;
            println!("{m}");
            let report = classify_exact(&m);
            println!("{}", serde_json::to_string(&report)?);
        }
        (6, "float") => {
            let m = B6Rep::standard().evaluate_float(&word)?;
            print_float_matrix(&m);
            let report = classify_float(&m, &Tolerances::default());
            println!("{}", serde_json::to_string(&report)?);
        }
        (3, "exact") => {
            let m = B3Rep::standard().evaluate_exact(&word)?;
            println!("{m}");
        }
        (3, "float") => {
            let m = B3Rep::standard().evaluate_float(&word)?;
            print_float_matrix(&m);
        }
        _ => unreachable!("backend values are constrained by clap"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_search(args: &SearchArgs) -> anyhow::Result<ExitCode> {
    let cfg = SearchConfig {
        max_length: args.max_len,
        policy: if args.exact_only {
            SearchPolicy::ExactOnly
        } else {
            SearchPolicy::FloatFilterThenExact
        },
        shards: args.shards,
        normalize_commuting: args.normalize_commuting,
        out: Some(args.out.clone()),
    };
    let started = std::time::Instant::now();
    let (records, summary) = run_search(&cfg).context("running search")?;
    eprintln!(
        "search: visited {} words in {:.3}s ({} shard groups)",
        summary.visited.last().copied().unwrap_or(0),
        started.elapsed().as_secs_f64(),
        cfg.shards
    );
    println!("records: {} (written to {})", records.len(), args.out.display());
    println!("{}", serde_json::to_string(&summary)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_approximate(args: &ApproximateArgs) -> anyhow::Result<ExitCode> {
    let (d_word, u0_word) = default_entangler_words();
    let result = compile_entangler(&d_word, &u0_word, args.tol, args.max_iter);
    let out = match result {
        Ok(out) => out,
        Err(IterError::NonConvergence { steps, final_b, trace }) => {
            if let Some(path) = &args.trace {
                write_trace(path, &trace)?;
            }
            eprintln!(
                "error: no convergence after {steps} steps (b = {final_b:.16e}); \
                 trace has {} states",
                trace.len()
            );
            return Ok(ExitCode::from(1));
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = &args.trace {
        write_trace(path, &out.trace)?;
    }
    let last = out.trace.last().expect("nonempty trace");
    println!(
        "converged: k = {}, b = {:.16e}, word length = {}",
        last.k, last.b, last.word_length
    );
    let phases: [Complex64; 4] = std::array::from_fn(|i| out.gate[(i + 1, i + 1)]);
    println!("computational diagonal:");
    for (i, p) in phases.iter().enumerate() {
        println!("  lambda_{i} = {}", fmt_c(*p));
    }
    println!(
        "diagonal entangling gap |l3*l0 - l1*l2| = {:.16e}",
        diagonal_entangling_gap(&phases)
    );
    println!("{}", serde_json::to_string(&out.report)?);
    if let Some(path) = &args.emit_word {
        match out.word.materialize() {
            Ok(w) => {
                std::fs::write(path, format!("{w}\n")).context("writing word")?;
                println!("word written to {}", path.display());
            }
            Err(IterError::WordTooLarge { letters, cap }) => {
                eprintln!(
                    "error: final word has ~{letters} letters (cap {cap}); \
                     rerun with a looser --tol to emit a literal word"
                );
                return Ok(ExitCode::from(1));
            }
            Err(e) => return Err(e.into()),
        }
    } else if let CompiledWord::Program { steps, length_bound, .. } = &out.word {
        println!("word kept as program: {steps} steps, <= {length_bound} letters");
    }
    Ok(ExitCode::SUCCESS)
}

fn write_trace(path: &PathBuf, trace: &[fibgate::iterate::IterationState]) -> anyhow::Result<()> {
    let mut body = String::new();
    for s in trace {
        writeln!(
            body,
            "{{\"k\":{},\"b\":{:.16e},\"a_re\":{:.16e},\"a_im\":{:.16e},\"word_len\":{}}}",
            s.k, s.b, s.a.re, s.a.im, s.word_length
        )?;
    }
    std::fs::write(path, body).context("writing trace")?;
    Ok(())
}

fn cmd_info() -> anyhow::Result<ExitCode> {
    let data = FibData::standard();
    println!("fibgate {}", env!("CARGO_PKG_VERSION"));
    println!("six-strand basis: {}", BASIS6.join(", "));
    println!("phi^-1        = {:.16e}", fibgate::field::PHI_INV);
    println!("sqrt(phi^-1)  = {:.16e}", SQRT_PHI_INV);
    println!("R1   (tau tau -> 1)   = {}", fmt_c(data.r_one.to_complex()));
    println!("Rtau (tau tau -> tau) = {}", fmt_c(data.r_tau.to_complex()));
    println!("F (exact coefficients over the zeta basis):");
    println!("{}", data.f);
    let tol = Tolerances::default();
    println!("tolerances: leakage {:.1e}, entangling {:.1e}", tol.leakage, tol.entangling);
    let density = check_density_witnesses();
    println!(
        "density witnesses: re(eig) = {:.16e}, {:.16e}; commutator distance = {:.16e}",
        density.real_parts[0], density.real_parts[1], density.commutator_distance
    );
    Ok(ExitCode::SUCCESS)
}
