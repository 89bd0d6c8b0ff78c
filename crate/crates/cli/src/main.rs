use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use syzlab::harness::{self, Command, Outcome, Report, Route, RunConfig};

#[derive(Parser)]
#[command(name = "syzlab", version, about = "Extra syzygies of canonical curves and scrolls over prime fields")]
struct Cli {
    /// Write every Koszul differential as a MatrixMarket file into DIR.
    #[arg(long, global = true, value_name = "DIR")]
    dump_matrices: Option<PathBuf>,
    /// Write the JSON report to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the divisor class computations for k = 3..=KMAX.
    VerifyClass {
        #[arg(long)]
        kmax: i64,
    },
    /// Linear strand of the balanced scroll.
    Scroll {
        #[arg(long)]
        k: usize,
    },
    /// Genus 2k-1 nodal curve on P1 x P1 with a degree-k pencil.
    Gonal {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 31991)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "both", value_parser = parse_route)]
        route: Route,
    },
    /// Genus 2k-1 nodal plane curve of degree k+3.
    Maxcliff {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 31991)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "both", value_parser = parse_route)]
        route: Route,
    },
    /// Complete-intersection canonical curve of genus 4 or 5.
    Ci {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 31991)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run a JSON list of jobs.
    Suite {
        #[arg(long)]
        config: PathBuf,
    },
    /// Determinant valuation against corank on random diagonalisable matrices over GF(p)[[t]].
    DvrDemo {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

fn parse_route(s: &str) -> Result<Route, String> {
    s.parse().map_err(|e: syzlab::Error| e.to_string())
}

fn exit(o: Outcome) -> ExitCode {
    ExitCode::from(o.code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit(Outcome::Usage) } else { ExitCode::SUCCESS };
        }
    };
    if let Err(e) = harness::init_threads(None) {
        eprintln!("{e}");
        return exit(Outcome::Usage);
    }
    if let Some(dir) = &cli.dump_matrices {
        if let Err(e) = std::fs::create_dir_all(dir) {
            eprintln!("cannot create {}: {e}", dir.display());
            return exit(Outcome::Usage);
        }
    }

    let command = match cli.command {
        Cmd::Suite { config } => return suite(&config, cli.json),
        Cmd::VerifyClass { kmax } => Command::VerifyClass { kmax },
        Cmd::Scroll { k } => Command::Scroll { k },
        Cmd::Gonal { k, prime, seed, route } => Command::Gonal { k, prime, seed, route },
        Cmd::Maxcliff { k, prime, seed, route } => Command::Maxcliff { k, prime, seed, route },
        Cmd::Ci { genus, prime, seed } => Command::Ci { genus, prime, seed },
        Cmd::DvrDemo { size, seed, count } => Command::DvrDemo { size, seed, count },
    };
    let mut config = RunConfig::new(command);
    config.output = cli.json;
    config.dump_matrices = cli.dump_matrices;
    let (report, outcome) = harness::run(&config);
    print_summary(&report);
    exit(outcome)
}

fn print_summary(report: &Report) {
    match report {
        Report::Error(e) => eprintln!("error: {}", e.error),
        _ => print!("{}", report.summary()),
    }
}

fn suite(path: &std::path::Path, json: Option<PathBuf>) -> ExitCode {
    let (report, outcome, err) = harness::run_suite_file(path);
    if let Some(e) = err {
        eprintln!("{e}");
        return exit(outcome);
    }
    let report = report.expect("suite report");
    for entry in &report.entries {
        println!("[{}] {} exit {}", entry.config.command.name(), suite_label(&entry.config), entry.exit_code);
        for c in entry.report.checks().iter().filter(|c| !c.pass) {
            println!("    FAIL {} {}", c.name, c.detail);
        }
        if let Report::Error(e) = &entry.report {
            println!("    error: {}", e.error);
        }
    }
    println!("{} entries, exit {}", report.entries.len(), outcome.code());
    if let Some(p) = json {
        if let Err(e) = harness::write_json(&p, &report) {
            eprintln!("{e}");
            return exit(Outcome::Usage);
        }
    }
    exit(outcome)
}

fn suite_label(c: &RunConfig) -> String {
    match &c.command {
        Command::VerifyClass { kmax } => format!("kmax={kmax}"),
        Command::Scroll { k } => format!("k={k}"),
        Command::Gonal { k, prime, seed, route } | Command::Maxcliff { k, prime, seed, route } => {
            format!("k={k} prime={prime} seed={seed} route={route}")
        }
        Command::Ci { genus, prime, seed } => format!("genus={genus} prime={prime} seed={seed}"),
        Command::DvrDemo { size, seed, count } => format!("size={size} seed={seed} count={count}"),
    }
}
