//! Command-line front end. Exit codes: 0 success, 1 validation or
//! precondition failure, 2 parse or I/O error, 3 numeric non-convergence.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use falkit::cusp::{cusp_tiling, normalized_translations, word_string, WhiteLengths};
use falkit::diagram::{resolve_components, validate, FalDiagram};
use falkit::embedding::{genus_of_embedding, is_cellular};
use falkit::format::parse;
use falkit::packing::{nerve_from_diagram, solve_packing_with, PackingError, PackingOptions};
use falkit::report::{build_report, format_float, PackingOutcome, ReportOptions};
use falkit::svg::{render_packing, render_tiling};

const OK: u8 = 0;
const INVALID: u8 = 1;
const PARSE: u8 = 2;
const NO_CONVERGENCE: u8 = 3;

#[derive(Parser)]
#[command(name = "falkit", version, about = "Fully augmented links on surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a diagram file against the defining conditions.
    Validate { file: PathBuf },
    /// Print the full key=value report.
    Report {
        file: PathBuf,
        /// Minimum number of crossings added per twist region (>= 7).
        #[arg(long)]
        dehn: Option<u64>,
        /// Rows of the slope-length table.
        #[arg(long, default_value_t = 10)]
        slopes: u64,
        /// Human-readable summary instead of the key tree.
        #[arg(long)]
        human: bool,
    },
    /// Describe the cusp tiling of one link component.
    Cusp {
        file: PathBuf,
        #[arg(long)]
        component: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Solve the circle packing of a planar diagram's white regions.
    Pack {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = falkit::packing::DEFAULT_MAX_SWEEPS)]
        max_sweeps: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn load(path: &Path) -> Result<FalDiagram, u8> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        PARSE
    })?;
    parse(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        PARSE
    })
}

fn require_valid(d: &FalDiagram) -> Result<(), u8> {
    let report = validate(d);
    if report.is_valid() {
        Ok(())
    } else {
        for v in &report.violations {
            eprintln!("invalid: [{}] {}", v.code.as_str(), v.message);
        }
        Err(INVALID)
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), u8> {
    std::fs::write(path, contents).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        PARSE
    })
}

fn run(cli: Cli) -> Result<(), u8> {
    match cli.command {
        Command::Validate { file } => {
            let d = load(&file)?;
            let report = validate(&d);
            if !report.is_valid() {
                println!("valid=false");
                for v in &report.violations {
                    println!("violation={} {}", v.code.as_str(), v.message);
                }
                return Err(INVALID);
            }
            println!("valid=true");
            println!("crossing_circles={}", d.circles.len());
            if let Some(fd) = &d.embedding {
                if let Ok(g) = genus_of_embedding(fd) {
                    println!("embedding_genus={g}");
                }
                if let Ok(c) = is_cellular(&d) {
                    println!("cellular={c}");
                }
            }
            Ok(())
        }
        Command::Report {
            file,
            dehn,
            slopes,
            human,
        } => {
            let d = load(&file)?;
            let options = ReportOptions {
                dehn_m: dehn,
                slopes,
                ..ReportOptions::default()
            };
            let full = build_report(&d, &options);
            if human {
                print!("{}", full.report.render_human());
            } else {
                print!("{}", full.report.render_machine());
            }
            if !full.report.is_valid() {
                return Err(INVALID);
            }
            if let Some(PackingOutcome::Failed(PackingError::NonConvergence { .. })) = full.packing {
                eprintln!("error: circle packing did not converge");
                return Err(NO_CONVERGENCE);
            }
            if let Some(e) = full.report.get("volume.error") {
                eprintln!("error: {e}");
                return Err(INVALID);
            }
            Ok(())
        }
        Command::Cusp {
            file,
            component,
            svg,
        } => {
            let d = load(&file)?;
            require_valid(&d)?;
            let resolved = resolve_components(&d).map_err(|_| INVALID)?;
            let tiling = cusp_tiling(&resolved, &component).map_err(|e| {
                eprintln!("error: {e}");
                INVALID
            })?;
            let (m, l) = normalized_translations(&tiling, &WhiteLengths::uniform(&tiling, 1.0)).map_err(|e| {
                eprintln!("error: {e}");
                INVALID
            })?;
            println!("component={}", tiling.component);
            println!("rectangles={}", tiling.rectangle_count());
            println!("meridian={}", word_string(&tiling.meridian_word));
            println!("longitude={}", word_string(&tiling.longitude_word));
            println!("total_shear={}", tiling.total_shear());
            println!("meridian_vector={} {}", format_float(m.x), format_float(m.y));
            println!("longitude_vector={} {}", format_float(l.x), format_float(l.y));
            println!("area_at_unit_width={}", format_float(m.cross(l).abs()));
            if let Some(path) = svg {
                write_file(&path, &render_tiling(&tiling))?;
            }
            Ok(())
        }
        Command::Pack {
            file,
            tol,
            max_sweeps,
            svg,
        } => {
            let d = load(&file)?;
            require_valid(&d)?;
            let nerve = nerve_from_diagram(&d).map_err(|e| {
                eprintln!("error: {e}");
                INVALID
            })?;
            let options = PackingOptions {
                tolerance: tol,
                max_sweeps,
                ..PackingOptions::default()
            };
            let packing = solve_packing_with(&nerve, &options).map_err(|e| {
                eprintln!("error: {e}");
                match e {
                    PackingError::NonConvergence { .. } => NO_CONVERGENCE,
                    _ => INVALID,
                }
            })?;
            println!("vertices={}", packing.radii.len());
            println!("edges={}", packing.edges.len());
            println!("sweeps={}", packing.sweeps);
            println!("max_angle_residual={}", format_float(packing.max_angle_residual));
            println!("max_tangency_residual={}", format_float(packing.max_tangency_residual));
            for (name, r) in &packing.radii {
                let c = packing.centers[name];
                println!(
                    "circle.{name}={} {} {}",
                    format_float(c.x),
                    format_float(c.y),
                    format_float(*r)
                );
            }
            if let Some(path) = svg {
                write_file(&path, &render_packing(&packing))?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { PARSE } else { OK });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::from(OK),
        Err(code) => ExitCode::from(code),
    }
}
