//! `strictchain`: exact computations on the up/down chains over strict partitions.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use strictchain::chains::{self, Walker};
use strictchain::diagrams::enumerate_strict;
use strictchain::gamma::GammaPoly;
use strictchain::limit::{embedded_moment_f64, exact_moment, stationary_moment_mc_with, McConfig};
use strictchain::measures::{multiplicative_measure, Alpha};
use strictchain::rational::{fmt_rational, int};
use strictchain::suites::{run_suite, Suite};
use strictchain::{Error, Exec, StrictPartition};

#[derive(Parser)]
#[command(name = "strictchain", version, about = "Up/down Markov chains on strict partitions")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads; defaults to one per core.
    #[arg(long, env = "STRICTCHAIN_THREADS", global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Level {
    #[arg(long)]
    n: usize,
    /// Positive rational such as `2` or `1/2`, or `inf` for the Plancherel chain.
    #[arg(long, default_value = "2")]
    alpha: Alpha,
}

#[derive(Subcommand)]
enum Command {
    /// Strict partitions of n in canonical order.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// The multiplicative measure on level n.
    Measure {
        #[command(flatten)]
        level: Level,
        /// Use the Plancherel measure, ignoring --alpha.
        #[arg(long)]
        plancherel: bool,
    },
    /// The exact transition matrix T_n.
    Matrix {
        #[command(flatten)]
        level: Level,
    },
    /// Eigenvalues of T_n, largest first, repeated by multiplicity.
    Spectrum {
        #[command(flatten)]
        level: Level,
    },
    /// Run a verification battery.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        max_weight: usize,
        #[arg(long, default_value = "2")]
        alpha: Alpha,
    },
    /// Walk the chain and stream the states.
    Simulate {
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also emit q2, q4, ..., q_2K of the embedded point.
        #[arg(long)]
        moments: Option<usize>,
        /// Start state such as `3,1`; drawn from the stationary measure when omitted.
        #[arg(long, value_parser = parse_partition)]
        start: Option<StrictPartition>,
    },
    /// Stationary means of q2, q4, ..., q_2K at level n.
    Moments {
        #[command(flatten)]
        level: Level,
        /// Exact rational values instead of a Monte Carlo estimate.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, default_value_t = 1_000_000)]
        steps: usize,
        #[arg(long, default_value_t = 1_000)]
        burn_in: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_partition(s: &str) -> Result<StrictPartition, String> {
    let parts = s
        .trim_matches(|c| c == '[' || c == ']' || c == '(' || c == ')')
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<usize>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    StrictPartition::try_from(parts).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Runtime(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Output {
    format: Format,
    out: io::BufWriter<io::StdoutLock<'static>>,
}

impl Output {
    fn json(&mut self, v: &Value) -> Outcome {
        writeln!(self.out, "{v}")?;
        Ok(())
    }

    fn csv(&mut self, header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Outcome {
        let mut w = csv::Writer::from_writer(&mut self.out);
        w.write_record(header)?;
        for row in rows {
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn run(cli: Cli, out: &mut Output) -> Outcome {
    let exec = Exec::default();
    match cli.command {
        Command::Enumerate { n } => {
            let all = enumerate_strict(n);
            match out.format {
                Format::Json => out.json(&serde_json::to_value(&all).expect("partitions serialize")),
                Format::Csv => out.csv(&strings(&["partition"]), all.iter().map(|p| vec![p.to_string()])),
            }
        }
        Command::Measure { level, plancherel } => {
            let alpha = if plancherel { Alpha::Infinite } else { level.alpha };
            let m = multiplicative_measure(level.n, &alpha)?;
            match out.format {
                Format::Json => out.json(&serde_json::to_value(&m).expect("measure serializes")),
                Format::Csv => out.csv(
                    &strings(&["partition", "weight"]),
                    m.iter().map(|(l, w)| vec![l.to_string(), fmt_rational(w)]),
                ),
            }
        }
        Command::Matrix { level } => {
            let t = chains::transition_matrix_with(level.n, &level.alpha, exec)?;
            match out.format {
                Format::Json => out.json(&serde_json::to_value(&t).expect("matrix serializes")),
                Format::Csv => {
                    let mut header = vec![String::new()];
                    header.extend(t.level.states.iter().map(|s| s.to_string()));
                    let rows = t.level.states.iter().enumerate().map(|(i, s)| {
                        std::iter::once(s.to_string()).chain(t.entries.row(i).iter().map(fmt_rational)).collect()
                    });
                    out.csv(&header, rows.collect::<Vec<_>>())
                }
            }
        }
        Command::Spectrum { level } => {
            let s = chains::spectrum(level.n, &level.alpha)?;
            let values = s.multiset_strings();
            match out.format {
                Format::Json => out.json(&json!({ "eigenvalues": values })),
                Format::Csv => out.csv(&strings(&["eigenvalue"]), values.into_iter().map(|v| vec![v])),
            }
        }
        Command::Verify { suite, max_weight, alpha } => {
            let report = run_suite(suite, max_weight, &alpha, exec)?;
            match out.format {
                Format::Json => {
                    let failures: Vec<_> = report.failures().collect();
                    out.json(&json!({
                        "suite": suite.name(),
                        "parameters": report.parameters,
                        "passed": report.passed(),
                        "checks": report.checks.len(),
                        "failures": failures,
                    }))?
                }
                Format::Csv => out.csv(
                    &strings(&["input", "expected", "got", "pass"]),
                    report
                        .checks
                        .iter()
                        .map(|c| vec![c.input.clone(), c.expected.clone(), c.got.clone(), c.pass.to_string()]),
                )?,
            }
            out.out.flush()?;
            eprintln!("{}", report.summary());
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Simulate { level, steps, seed, moments, start } => {
            let mut walker = Walker::new(level.n, &level.alpha, seed, 0, start)?;
            let depth = moments.unwrap_or(0);
            let n2 = (level.n * level.n) as f64;
            let states = std::iter::once(walker.state().clone()).chain(walker.by_ref().take(steps));
            if out.format == Format::Csv {
                let mut header = strings(&["step", "scaled_time", "state"]);
                header.extend((1..=depth).map(|k| format!("q{}", 2 * k)));
                let rows = states.enumerate().map(|(step, s)| {
                    let mut row = vec![step.to_string(), (step as f64 / n2).to_string(), s.to_string()];
                    row.extend((1..=depth).map(|k| embedded_moment_f64(&s, k).to_string()));
                    row
                });
                return out.csv(&header, rows);
            }
            for (step, s) in states.enumerate() {
                let mut line = Map::new();
                line.insert("step".into(), json!(step));
                line.insert("state".into(), serde_json::to_value(&s).expect("partition serializes"));
                if depth > 0 {
                    line.insert("scaled_time".into(), json!(step as f64 / n2));
                    let q: Map<String, Value> =
                        (1..=depth).map(|k| (format!("q{}", 2 * k), json!(embedded_moment_f64(&s, k)))).collect();
                    line.insert("moments".into(), Value::Object(q));
                }
                out.json(&Value::Object(line))?;
            }
            Ok(())
        }
        Command::Moments { level, exact, depth, steps, burn_in, seed } => {
            if depth == 0 {
                return Err(Failure::Usage("--depth must be at least 1".into()));
            }
            if exact {
                let mut values = Vec::new();
                for k in 1..=depth {
                    let e = exact_moment(level.n, &level.alpha, &GammaPoly::p(2 * k + 1))?
                        / int(level.n as i64).pow(2 * k as i32 + 1);
                    values.push((format!("q{}", 2 * k), fmt_rational(&e)));
                }
                return match out.format {
                    Format::Json => out.json(&json!({
                        "n": level.n,
                        "alpha": level.alpha,
                        "moments": values.iter().map(|(k, v)| (k.clone(), json!(v))).collect::<Map<String, Value>>(),
                    })),
                    Format::Csv => out.csv(&strings(&["moment", "value"]), values.into_iter().map(|(k, v)| vec![k, v])),
                };
            }
            let config = McConfig { exec, ..McConfig::new(steps, burn_in) };
            let estimates = (1..=depth)
                .map(|k| stationary_moment_mc_with(level.n, &level.alpha, k, seed, &config))
                .collect::<Result<Vec<_>, _>>()?;
            match out.format {
                Format::Json => {
                    for e in &estimates {
                        out.json(&serde_json::to_value(e).expect("estimate serializes"))?;
                    }
                    Ok(())
                }
                Format::Csv => out.csv(
                    &strings(&["k", "mean", "stderr", "n", "alpha", "steps"]),
                    estimates.iter().map(|e| {
                        vec![
                            e.k.to_string(),
                            e.mean.to_string(),
                            e.stderr.to_string(),
                            e.n.to_string(),
                            e.alpha.to_string(),
                            e.steps.to_string(),
                        ]
                    }),
                ),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().expect("thread pool starts once");
    }
    let mut out = Output { format: cli.format, out: io::BufWriter::new(io::stdout().lock()) };
    let result = run(cli, &mut out);
    let flushed = out.out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(1),
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
