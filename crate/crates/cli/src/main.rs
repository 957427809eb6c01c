use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use euclid_forge::commands::{cmd_render, cmd_run, cmd_verify, RenderArgs, RunArgs, VerifyArgs};
use euclid_forge::render::ViewBox;
use euclid_forge::suites::Suite;
use euclid_kernel::field::Model;

#[derive(Parser)]
#[command(name = "euclid-forge", version, about = "Run, verify and draw exact ruler-and-compass geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a .euclid script and check its assertions.
    Run {
        script: PathBuf,
        /// rational, tower or infinitesimal
        #[arg(long, default_value = "tower", value_parser = parse_model)]
        model: Model,
        /// Also draw the result to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write a JSON run report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check axioms and theorems on seeded random instances.
    Verify {
        /// Suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Model name or `all`.
        #[arg(long, default_value = "all")]
        model: String,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, env = "EUCLID_FORGE_SEED", default_value_t = 0)]
        seed: u64,
        /// Write a JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Draw a script's objects as SVG.
    Render {
        script: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long, default_value = "tower", value_parser = parse_model)]
        model: Model,
        /// `auto` or x0,y0,x1,y1 in plane coordinates.
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        viewbox: ViewBox,
    },
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut out, mut err) = (std::io::stdout(), std::io::stderr());
    let code = match cli.command {
        Command::Run { script, model, svg, json } => {
            cmd_run(&RunArgs { script, model, svg, json }, &mut out, &mut err)
        }
        Command::Verify { suite, model, cases, seed, json } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                match suite.parse::<Suite>() {
                    Ok(s) => vec![s],
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
            };
            let models = if model == "all" {
                Model::ALL.to_vec()
            } else {
                match model.parse::<Model>() {
                    Ok(m) => vec![m],
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
            };
            cmd_verify(&VerifyArgs { suites, models, cases, seed, json }, &mut out, &mut err)
        }
        Command::Render { script, svg, model, viewbox } => {
            cmd_render(&RenderArgs { script, model, svg, viewbox }, &mut out, &mut err)
        }
    };
    ExitCode::from(code as u8)
}
