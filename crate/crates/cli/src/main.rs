use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use polyround::audit::{audit_mesh, AuditConfig};
use polyround::flux::{facet_flux, reconstruct};
use polyround::generators::{generate, Family, FamilyName, GeneratorSpec};
use polyround::io::{self, AnalysisOutput, FluxInput, FluxOutput, MeshInput, PolytopeInput};
use polyround::polytope::remove_redundant;
use polyround::roundness::{analyze_polytope, extract_witness, Certificate};
use polyround::{Error, HPolytope};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_VALIDATION: u8 = 2;
const EXIT_WITNESS_FAILED: u8 = 3;
const EXIT_IRREGULAR: u8 = 4;

/// Degeneracy ratio and normal-matrix spectrum of convex polytopes.
#[derive(Parser, Debug)]
#[command(name = "polyround", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inradius, diameter, degeneracy ratio, sigma_min and bound witness.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Also report the spectrum of the rows as given.
        #[arg(long)]
        keep_redundant: bool,
    },
    /// Evaluate the witness chain of the singular value bound.
    Witness {
        #[arg(long)]
        input: PathBuf,
    },
    /// Recover a constant field from facet fluxes.
    Reconstruct {
        #[arg(long)]
        input: PathBuf,
    },
    /// Write a generated polytope as JSON.
    Generate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of facets for tangent-ball (default 2 * dim).
        #[arg(long)]
        m: Option<usize>,
        /// Thickness of the slab family.
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Normal noise of the perturbed-simplex family.
        #[arg(long, default_value_t = 0.1)]
        noise: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Inscribed-ball regularity audit of a mesh.
    Audit {
        #[arg(long)]
        mesh: PathBuf,
        #[arg(long)]
        sigma_bar: f64,
        #[arg(long, default_value_t = 1.0)]
        diameter_cap: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Exit with status 4 when any cell is irregular.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Failure of a command, carrying its exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>() {
            Some(Error::NumericalStall(_))
            | Some(Error::NoConvergence(_))
            | Some(Error::SpectralMismatch { .. })
            | Some(Error::DegenerateDirection)
            | Some(Error::GenerationFailed(_)) => 1,
            Some(_) => EXIT_VALIDATION,
            None if error.is::<serde_json::Error>() || error.is::<std::io::Error>() => EXIT_VALIDATION,
            None => 1,
        };
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

type CmdResult = Result<u8, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(value)
}

fn read_polytope(path: &Path) -> Result<HPolytope, Failure> {
    let input: PolytopeInput = read_json(path)?;
    Ok(input.to_polytope()?)
}

fn analyze_cmd(input: &Path, keep_redundant: bool) -> CmdResult {
    let p = read_polytope(input)?;
    let report = analyze_polytope(&p, keep_redundant)?;
    let witness = if report.full_dimensional { Some(extract_witness(&remove_redundant(&p)?)?) } else { None };
    println!("{}", io::to_json(&AnalysisOutput { report, witness }));
    Ok(0)
}

fn witness_cmd(input: &Path) -> CmdResult {
    let p = remove_redundant(&read_polytope(input)?)?;
    let w = extract_witness(&p)?;
    println!("{}", io::to_json(&w));
    for c in &w.checks {
        eprintln!(
            "{} {}: {:.16e} {} {:.16e} (tol {:e})",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.lhs,
            c.relation,
            c.rhs,
            c.tolerance
        );
    }
    Ok(if w.all_pass() { 0 } else { EXIT_WITNESS_FAILED })
}

fn reconstruct_cmd(input: &Path) -> CmdResult {
    let input: FluxInput = read_json(input)?;
    let p = remove_redundant(&input.polytope.to_polytope()?)?;
    let certificate = Certificate::from_report(&analyze_polytope(&p, false)?);
    let data = facet_flux(&p, &input.field.to_field()?)?;
    let result = reconstruct(&p, &data)?;
    println!("{}", io::to_json(&FluxOutput::new(&data, &result, certificate)));
    Ok(0)
}

fn generate_cmd(
    family: &str,
    dim: usize,
    seed: u64,
    m: Option<usize>,
    epsilon: f64,
    noise: f64,
    out: &Path,
) -> CmdResult {
    let family = match family.parse::<FamilyName>()? {
        FamilyName::Cube => Family::Cube,
        FamilyName::Simplex => Family::RegularSimplex,
        FamilyName::Slab => Family::Slab { epsilon },
        FamilyName::TangentBall => Family::TangentBall { m: m.unwrap_or(2 * dim) },
        FamilyName::RotatedCube => Family::RotatedCube,
        FamilyName::PerturbedSimplex => Family::PerturbedSimplex { noise },
    };
    let p = generate(&GeneratorSpec::new(family, dim, seed))?;
    let json = io::to_json(&PolytopeInput::from(&p));
    fs::write(out, json + "\n").with_context(|| format!("writing {}", out.display()))?;
    Ok(0)
}

fn audit_cmd(mesh: &Path, sigma_bar: f64, diameter_cap: f64, format: Format, strict: bool) -> CmdResult {
    let input: MeshInput = read_json(mesh)?;
    input.validate()?;
    let config = AuditConfig::new(sigma_bar, diameter_cap)?;
    let report = audit_mesh(&input.cells, &config);
    match format {
        Format::Json => println!("{}", io::to_json(&report)),
        Format::Csv => print!("{}", io::audit_csv(&report)),
    }
    for c in report.cells.iter().filter(|c| c.error.is_some()) {
        eprintln!("warning: cell {}: {}", c.cell_id, c.error.as_deref().unwrap_or_default());
    }
    Ok(if strict && report.summary.num_irregular > 0 { EXIT_IRREGULAR } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { input, keep_redundant } => analyze_cmd(input, *keep_redundant),
        Command::Witness { input } => witness_cmd(input),
        Command::Reconstruct { input } => reconstruct_cmd(input),
        Command::Generate { family, dim, seed, m, epsilon, noise, out } => {
            generate_cmd(family, *dim, *seed, *m, *epsilon, *noise, out)
        }
        Command::Audit { mesh, sigma_bar, diameter_cap, format, strict } => {
            audit_cmd(mesh, *sigma_bar, *diameter_cap, *format, *strict)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
