mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;
use serde_json::Value;

use args::{Cli, Command};
use commands::Ctx;
use output::{envelope, to_pretty, Meta, Report, UsageError, TOOL};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

fn flags(mode: args::ModeArg, args: &impl Serialize) -> Value {
    let mut v = serde_json::to_value(args).unwrap_or(Value::Null);
    if let Value::Object(m) = &mut v {
        m.insert("mode".into(), serde_json::to_value(mode).unwrap_or(Value::Null));
    }
    v
}

fn run(cli: &Cli) -> anyhow::Result<(Meta, Report)> {
    macro_rules! dispatch {
        ($name:literal, $args:expr, $seed:expr, $f:path) => {{
            let meta = Meta {
                tool: TOOL,
                version: fusion_core::VERSION,
                command: $name,
                flags: flags(cli.mode, $args),
                seed: $seed,
            };
            let ctx = Ctx { mode: cli.mode, meta };
            let report = $f($args, &ctx)?;
            Ok((ctx.meta, report))
        }};
    }
    match &cli.command {
        Command::Orbit(a) => dispatch!("orbit", a, None, commands::orbit),
        Command::CheckTff(a) => dispatch!("check-tff", a, None, commands::check_tff_cmd),
        Command::Search(a) => dispatch!("search", a, None, commands::search),
        Command::SolveSingle(a) => dispatch!("solve-single", a, None, commands::solve_single),
        Command::Scale(a) => dispatch!("scale", a, None, commands::scale),
        Command::Lift(a) => dispatch!("lift", a, Some(a.seed), commands::lift_cmd),
        Command::VerifyDesign(a) => dispatch!("verify-design", a, None, commands::verify_design),
        Command::Bounds(a) => dispatch!("bounds", a, None, commands::bounds),
        Command::CheckEctff2(a) => dispatch!("check-ectff2", a, None, commands::check_ectff2_cmd),
        Command::SicLift(a) => dispatch!("sic-lift", a, None, commands::sic_lift),
        Command::Embed(a) => dispatch!("embed", a, None, commands::embed),
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return EXIT_USAGE;
    }
    match err.downcast_ref::<fusion_core::Error>() {
        Some(fusion_core::Error::FrameCheckFailed { .. }) => EXIT_FAIL,
        Some(e) if commands::is_usage_error(e) => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    }
    match run(&cli) {
        Ok((meta, report)) => {
            if cli.json {
                match to_pretty(&envelope(&meta, report.passed, &report.result)) {
                    Ok(s) => print!("{s}"),
                    Err(e) => {
                        eprintln!("error: {e:#}");
                        return ExitCode::from(EXIT_INTERNAL);
                    }
                }
            } else {
                for line in &report.summary {
                    println!("{line}");
                }
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
