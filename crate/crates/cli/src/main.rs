mod args;
mod commands;
mod emit;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command, Format};
use emit::{num, nums, Report};

const EXIT_INPUT: u8 = 2;
const EXIT_TOLERANCE: u8 = 3;
const EXIT_CONVERGENCE: u8 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] heunlim::Error),
    #[error("{0}")]
    Input(String),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
    #[error("cannot write csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) if e.is_input_error() => "invalid_input",
            CliError::Core(heunlim::Error::NonConvergence { .. }) => "non_convergence",
            CliError::Core(_) => "tolerance",
            CliError::Input(_) => "invalid_input",
            CliError::Io(_) | CliError::Csv(_) => "io",
        }
    }

    fn code(&self) -> u8 {
        match self.kind() {
            "non_convergence" => EXIT_CONVERGENCE,
            "tolerance" => EXIT_TOLERANCE,
            _ => EXIT_INPUT,
        }
    }
}

fn effective_seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var("HEUNLIM_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("HEUNLIM_SEED is not an unsigned integer: {s:?}"))),
        Err(_) => Ok(flag),
    }
}

fn config_json(cli: &Cli, seed: u64) -> Value {
    let mut c = json!({ "command": cli.command.name(), "seed": seed });
    let params = match &cli.command {
        Command::Solve(l) | Command::Kernel(l) | Command::Spectrum(l) => {
            let (j1, j2) = l.cutoffs();
            json!({ "n": l.family.n, "alpha": num(l.family.alpha), "beta": num(l.family.beta), "j1": j1, "j2": j2 })
        }
        Command::HeunAction(h) | Command::AlgebraCheck(h) => json!({
            "n": h.family.n,
            "alpha": num(h.family.alpha),
            "beta": num(h.family.beta),
            "tau": nums(&h.tau()),
            "k": h.k,
            "gamma": num(h.gamma),
            "epsilon": num(h.epsilon),
        }),
        Command::Verify(v) => json!({ "suite": format!("{:?}", v.suite).to_lowercase() }),
    };
    c["params"] = params;
    c["tolerances"] = cli.tol.to_json();
    c
}

fn dispatch(cli: &Cli, seed: u64) -> Result<Report, CliError> {
    let tol = &cli.tol;
    match &cli.command {
        Command::Solve(l) => commands::solve(l, tol),
        Command::Kernel(l) => commands::kernel(l, tol),
        Command::Spectrum(l) => commands::spectrum(l, tol),
        Command::HeunAction(h) => commands::heun_action(h, tol),
        Command::AlgebraCheck(h) => commands::algebra_check(h, tol),
        Command::Verify(v) => verify::run(v.suite, seed, tol),
    }
}

fn sink(path: Option<&std::path::Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn fail(path: Option<&std::path::Path>, kind: &str, message: &str, code: u8) -> ExitCode {
    let rec = emit::error_record(kind, message, code as i32);
    eprintln!("heunlim: {message}");
    let written = sink(path).map_err(|e| e.to_string()).and_then(|mut out| {
        emit::write_json(&mut out, &rec).and_then(|_| out.flush()).map_err(|e| e.to_string())
    });
    if let Err(e) = written {
        eprintln!("heunlim: {e}");
    }
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let msg = e.kind().to_string();
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or(&msg).trim_start_matches("error: ");
            return fail(None, "usage", first, EXIT_INPUT);
        }
    };
    let path = cli.output.as_deref();
    let seed = match effective_seed(cli.seed) {
        Ok(s) => s,
        Err(e) => return fail(path, e.kind(), &e.to_string(), e.code()),
    };

    let start = Instant::now();
    let report = match dispatch(&cli, seed) {
        Ok(r) => r,
        Err(e) => return fail(path, e.kind(), &e.to_string(), e.code()),
    };
    let timings = cli.timings.then(|| json!({ "total_secs": num(start.elapsed().as_secs_f64()) }));

    let written = sink(path).and_then(|mut out| {
        match cli.format {
            Format::Json => emit::write_json(&mut out, &emit::json_document(config_json(&cli, seed), &report, timings))?,
            Format::Csv => emit::write_csv(&mut out, &report)?,
        }
        out.flush()?;
        Ok(())
    });
    if let Err(e) = written {
        eprintln!("heunlim: {e}");
        return ExitCode::from(EXIT_INPUT);
    }
    if report.pass() {
        ExitCode::SUCCESS
    } else {
        for c in report.checks.iter().filter(|c| !c.pass()) {
            eprintln!("heunlim: {} = {:e} exceeds {:e}", c.name, c.value, c.tol);
        }
        ExitCode::from(EXIT_TOLERANCE)
    }
}
