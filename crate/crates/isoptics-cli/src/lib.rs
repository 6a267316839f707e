//! Command line front end over the kernel crate: argument grammar, scenario
//! configs, and the subcommand bodies, kept in a library so integration
//! tests can drive the exact code path the binary runs.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod scenarios;

use clap::Parser;

use error::CliError;

/// Full process body; returns the exit code. Stdout carries the command
/// result, stderr the error text.
pub fn run() -> i32 {
    let parsed = match cli::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    init_threads(parsed.threads);
    match dispatch(parsed.command) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// --threads wins, then THURSTON_ISOPTICS_THREADS, then the rayon default.
/// Results never depend on the worker count, only the wall time does.
fn init_threads(flag: Option<usize>) {
    let n = flag.or_else(|| {
        std::env::var("THURSTON_ISOPTICS_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = n {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

fn surface_resolved(args: &cli::SurfaceArgs) -> Result<config::Resolved, CliError> {
    let file = match (&args.config, &args.scenario) {
        (Some(path), _) => Some(config::ScenarioConfig::load(path)?),
        (None, Some(name)) => Some(scenarios::load_scenario(name)?),
        (None, None) => None,
    };
    let over = config::Overrides {
        geometry: args.geometry,
        a1: args.a1,
        a2: args.a2,
        alpha_degrees: args.alpha,
        selector: args.selector,
        resolution: args.grid,
        bounds: args.bounds,
        out: args.out.clone(),
        format: args.format,
    };
    config::resolve(file, &over)
}

fn dispatch(command: cli::Command) -> Result<String, CliError> {
    match command {
        cli::Command::Distance { geometry, p1, p2 } => commands::cmd_distance(geometry, p1, p2),
        cli::Command::Angle {
            geometry,
            p,
            a2,
            alpha,
        } => commands::cmd_angle(geometry, p, a2, alpha),
        cli::Command::Isoptic { surface, no_refine } => {
            let r = surface_resolved(&surface)?;
            commands::cmd_isoptic(&r, !no_refine, surface.dump_config.as_deref())
        }
        cli::Command::Thaloid {
            geometry,
            a,
            out,
            grid,
            bounds,
            format,
        } => {
            let mut text = commands::cmd_thaloid(geometry, a)?;
            if let Some(path) = out {
                let r = config::Resolved {
                    geometry,
                    a1: isoptics_core::ModelPoint::ORIGIN,
                    a2: isoptics_core::ModelPoint::new(a, 0.0, 0.0),
                    alpha_degrees: 90.0,
                    selector: isoptics_core::SurfaceSelector::Alpha,
                    resolution: grid.unwrap_or([64, 64, 64]),
                    bounds,
                    out: Some(path),
                    format: format.unwrap_or(isoptics_core::ExportFormat::Obj),
                };
                text.push_str(&commands::cmd_isoptic(&r, true, None)?);
            }
            Ok(text)
        }
        cli::Command::Sample(surface) => {
            let r = surface_resolved(&surface)?;
            commands::cmd_sample(&r, surface.dump_config.as_deref())
        }
    }
}
