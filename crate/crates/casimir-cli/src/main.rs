//! `casimir` — Casimir pressure sweeps, crossover location, light-on/off
//! modulation and permittivity utilities on three-layer systems.
//!
//! All tabular output is CSV with `#` header comments recording the tool
//! version and every input knob, so a file can be reproduced from its own
//! header. Identical invocations produce byte-identical files; floats in data
//! rows carry 12 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use casimir::analysis::{find_crossover, modulation_depth, sweep, Scenario};
use casimir::lifshitz::{LayerSystem, QuadratureSettings};
use casimir::materials::{kk_transform, read_xy_csv, MaterialDb, OpticalDataTable};
use casimir::presets::{find_preset, illuminate, preset_system, Light, PRESETS};

const VERSION: &str = env!("CARGO_PKG_VERSION");
const SIGN_NOTE: &str = "negative pressure = attraction, positive = repulsion";

#[derive(Parser)]
#[command(name = "casimir", version, about = "Casimir pressure between parallel plates in a liquid")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pressure versus separation on a log-spaced grid
    Sweep(SweepArgs),
    /// Locate the separation where the pressure changes sign
    Crossover(CrossoverArgs),
    /// Dark/lit pressures and their difference at one separation
    Modulate(ModulateArgs),
    /// Evaluate a material's permittivity at one imaginary frequency
    MaterialEval(MaterialEvalArgs),
    /// Build an eps(i xi) table from tabulated optical absorption data
    KkBuild(KkBuildArgs),
}

#[derive(Args)]
struct SystemArgs {
    /// Scenario preset (au-ethanol-si, si-ethanol-si, al2o3-ethanol-si)
    #[arg(long, conflicts_with_all = ["plate1", "medium", "plate2"])]
    preset: Option<String>,
    /// Material name for plate 1 (with --medium and --plate2 instead of --preset)
    #[arg(long, requires_all = ["medium", "plate2"])]
    plate1: Option<String>,
    /// Material name for the gap medium
    #[arg(long)]
    medium: Option<String>,
    /// Material name for plate 2 (the plate illumination acts on)
    #[arg(long)]
    plate2: Option<String>,
    /// Illumination state of plate 2
    #[arg(long, default_value = "off", value_parser = parse_light)]
    light: Light,
    /// Photo-carrier density per species under illumination, m^-3
    #[arg(long, default_value = "2.1e25")]
    carrier_density: f64,
    /// Temperature, K
    #[arg(long, default_value = "300")]
    temperature: f64,
    /// Directory of *.mat files overriding the built-in materials
    #[arg(long, env = "CASIMIR_MATERIALS_DIR")]
    materials_dir: Option<PathBuf>,
}

#[derive(Args)]
struct SettingsArgs {
    /// Relative tolerance on the pressure
    #[arg(long, default_value = "1e-6")]
    rel_tol: f64,
    /// Matsubara term cap; reaching it is a convergence failure
    #[arg(long, default_value_t = 5000)]
    max_matsubara: u32,
    /// Width of the y-integration window above its lower limit
    #[arg(long, default_value_t = 60.0)]
    y_upper_margin: f64,
    /// Adaptive Simpson subdivision depth limit
    #[arg(long, default_value_t = 30)]
    max_subdivisions: u32,
}

impl SettingsArgs {
    fn build(&self) -> Result<QuadratureSettings, String> {
        QuadratureSettings::new(
            self.rel_tol,
            self.max_matsubara,
            self.y_upper_margin,
            self.max_subdivisions,
        )
        .map_err(|e| e.to_string())
    }

    fn header(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "# settings: rel_tol={} max_matsubara={} y_upper_margin={} max_subdivisions={}",
            knob(self.rel_tol),
            self.max_matsubara,
            knob(self.y_upper_margin),
            self.max_subdivisions
        );
    }
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    settings: SettingsArgs,
    /// Smallest separation, m
    #[arg(long, default_value = "50e-9")]
    a_min: f64,
    /// Largest separation, m
    #[arg(long, default_value = "500e-9")]
    a_max: f64,
    /// Number of log-spaced separations
    #[arg(long, default_value_t = 100)]
    points: usize,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CrossoverArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    settings: SettingsArgs,
    /// Smallest separation, m
    #[arg(long, default_value = "50e-9")]
    a_min: f64,
    /// Largest separation, m
    #[arg(long, default_value = "500e-9")]
    a_max: f64,
    /// Bracket width the bisection narrows to, m
    #[arg(long, default_value = "1e-10")]
    tol: f64,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ModulateArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    settings: SettingsArgs,
    /// Plate separation, m
    #[arg(long)]
    separation: f64,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MaterialEvalArgs {
    /// Material name
    #[arg(long)]
    name: String,
    /// Imaginary angular frequency, rad/s
    #[arg(long)]
    xi: f64,
    /// Directory of *.mat files overriding the built-in materials
    #[arg(long, env = "CASIMIR_MATERIALS_DIR")]
    materials_dir: Option<PathBuf>,
}

#[derive(Args)]
struct KkBuildArgs {
    /// Two-column CSV `omega_rad_s,im_eps` of optical absorption data
    #[arg(long)]
    input: PathBuf,
    /// Output CSV path for the `xi_rad_s,eps` table
    #[arg(long)]
    output: PathBuf,
    /// Number of log-spaced xi points (plus the xi = 0 row)
    #[arg(long, default_value_t = 400)]
    points: usize,
    /// Smallest tabulated xi, rad/s (defaults to the first input frequency)
    #[arg(long)]
    xi_min: Option<f64>,
    /// Largest tabulated xi, rad/s (defaults to the last input frequency)
    #[arg(long)]
    xi_max: Option<f64>,
}

fn parse_light(s: &str) -> Result<Light, String> {
    match s {
        "on" => Ok(Light::On),
        "off" => Ok(Light::Off),
        other => Err(format!("expected `on` or `off`, got `{other}`")),
    }
}

/// Fixed 12-significant-digit float formatting for data rows.
fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Shortest round-trip formatting for header knobs, scientific outside
/// [1e-3, 1e5) so defaults like 2.1e25 stay readable.
fn knob(x: f64) -> String {
    if x != 0.0 && !(1e-3..1e5).contains(&x.abs()) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn load_db(dir: &Option<PathBuf>) -> Result<MaterialDb, String> {
    let mut db = MaterialDb::builtin();
    if let Some(dir) = dir {
        db.overlay_dir(dir)
            .map_err(|e| format!("loading materials from {}: {e}", dir.display()))?;
    }
    Ok(db)
}

struct ResolvedSystem {
    system: LayerSystem,
    db: MaterialDb,
    plate1: String,
    medium: String,
    plate2: String,
    light: Light,
}

impl SystemArgs {
    fn resolve(&self) -> Result<ResolvedSystem, String> {
        let db = load_db(&self.materials_dir)?;
        let (plate1, medium, plate2) = match (&self.preset, &self.plate1) {
            (Some(name), _) => {
                let preset = find_preset(name).ok_or_else(|| {
                    let names: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
                    format!("unknown preset `{name}`; available: {}", names.join(", "))
                })?;
                (
                    preset.plate1.to_string(),
                    preset.medium.to_string(),
                    preset.plate2.to_string(),
                )
            }
            (None, Some(p1)) => (
                p1.clone(),
                self.medium.clone().expect("clap enforces --medium"),
                self.plate2.clone().expect("clap enforces --plate2"),
            ),
            (None, None) => {
                return Err("select a system: --preset NAME or --plate1/--medium/--plate2".into())
            }
        };
        if !(self.temperature.is_finite() && self.temperature > 0.0) {
            return Err(format!("temperature must be > 0 K, got {}", self.temperature));
        }
        let system = match &self.preset {
            Some(name) => preset_system(
                &db,
                find_preset(name).unwrap(),
                self.light,
                self.temperature,
                self.carrier_density,
            )
            .map_err(|e| e.to_string())?,
            None => {
                let p1 = db.resolve(&plate1).map_err(|e| e.to_string())?;
                let med = db.resolve(&medium).map_err(|e| e.to_string())?;
                let p2_dark = db.resolve(&plate2).map_err(|e| e.to_string())?;
                let p2 = match self.light {
                    Light::Off => p2_dark,
                    Light::On => illuminate(p2_dark, self.carrier_density)
                        .map_err(|e| e.to_string())?,
                };
                LayerSystem::new(p1, med, p2, self.temperature).map_err(|e| e.to_string())?
            }
        };
        Ok(ResolvedSystem {
            system,
            db,
            plate1,
            medium,
            plate2,
            light: self.light,
        })
    }

    fn header(&self, resolved: &ResolvedSystem, out: &mut String) {
        if let Some(preset) = &self.preset {
            let _ = writeln!(out, "# preset: {preset}");
        }
        let light = match resolved.light {
            Light::On => "on",
            Light::Off => "off",
        };
        let _ = writeln!(
            out,
            "# system: plate1={} medium={} plate2={} light={}",
            resolved.plate1, resolved.medium, resolved.plate2, light
        );
        let _ = writeln!(out, "# temperature_k: {}", knob(self.temperature));
        let _ = writeln!(out, "# carrier_density_m3: {}", knob(self.carrier_density));
        if let Some(dir) = &self.materials_dir {
            let _ = writeln!(out, "# materials_dir: {}", dir.display());
        }
    }
}

fn common_header(command: &str, out: &mut String) {
    let _ = writeln!(out, "# casimir v{VERSION}");
    let _ = writeln!(out, "# command: {command}");
    let _ = writeln!(out, "# sign convention: {SIGN_NOTE}");
}

fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| format!("writing {}: {e}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run_sweep(args: &SweepArgs) -> Result<ExitCode, String> {
    let resolved = args.system.resolve()?;
    let settings = args.settings.build()?;
    let result = sweep(&resolved.system, args.a_min, args.a_max, args.points, &settings)
        .map_err(|e| e.to_string())?;

    let mut out = String::new();
    common_header("sweep", &mut out);
    args.system.header(&resolved, &mut out);
    args.settings.header(&mut out);
    let _ = writeln!(
        out,
        "# range: a_min_m={} a_max_m={} points={}",
        knob(args.a_min),
        knob(args.a_max),
        args.points
    );
    let _ = writeln!(out, "a_m,pressure_pa,est_error_pa");
    let mut failures = Vec::new();
    for point in &result.points {
        match point {
            Ok(p) => {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    sig12(p.separation),
                    sig12(p.pressure),
                    sig12(p.est_error)
                );
            }
            Err(f) => {
                let _ = writeln!(out, "{},NaN,NaN", sig12(f.separation));
                failures.push(f);
            }
        }
    }
    write_output(&args.output, &out)?;
    if failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "warning: {} of {} points failed to converge; first failure: {}",
            failures.len(),
            args.points,
            failures[0]
        );
        Ok(ExitCode::from(2))
    }
}

fn run_crossover(args: &CrossoverArgs) -> Result<ExitCode, String> {
    let resolved = args.system.resolve()?;
    let settings = args.settings.build()?;
    let result = find_crossover(&resolved.system, args.a_min, args.a_max, args.tol, &settings)
        .map_err(|e| e.to_string())?;

    let mut out = String::new();
    common_header("crossover", &mut out);
    args.system.header(&resolved, &mut out);
    args.settings.header(&mut out);
    let _ = writeln!(
        out,
        "# range: a_min_m={} a_max_m={} tol_m={}",
        knob(args.a_min),
        knob(args.a_max),
        knob(args.tol)
    );
    let _ = writeln!(
        out,
        "separation_m,bracket_lo_m,bracket_hi_m,sign_below,sign_above,sign_changes"
    );
    match result {
        Some(r) => {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                sig12(r.separation),
                sig12(r.bracket.0),
                sig12(r.bracket.1),
                r.sign_below,
                r.sign_above,
                r.sign_changes
            );
            eprintln!("crossover at {} m", sig12(r.separation));
        }
        None => {
            let _ = writeln!(out, "# no sign change on the requested range");
            eprintln!("no crossover on [{}, {}] m", knob(args.a_min), knob(args.a_max));
        }
    }
    write_output(&args.output, &out)?;
    Ok(ExitCode::SUCCESS)
}

fn run_modulate(args: &ModulateArgs) -> Result<ExitCode, String> {
    let resolved = args.system.resolve()?;
    let settings = args.settings.build()?;
    // Build the dark/lit pair around the resolved dark plate 2.
    let dark_plate2 = resolved.db.resolve(&resolved.plate2).map_err(|e| e.to_string())?;
    let dark_system = resolved.system.with_plate2(dark_plate2.clone());
    let lit_plate2 =
        illuminate(dark_plate2, args.system.carrier_density).map_err(|e| e.to_string())?;
    let scenario = Scenario::new(
        "modulate",
        dark_system,
        lit_plate2,
        args.separation * 0.5,
        args.separation * 2.0,
        2,
    )
    .map_err(|e| e.to_string())?;
    let m = modulation_depth(&scenario, args.separation, &settings).map_err(|e| e.to_string())?;

    let mut out = String::new();
    common_header("modulate", &mut out);
    args.system.header(&resolved, &mut out);
    args.settings.header(&mut out);
    let _ = writeln!(out, "# separation_m: {}", knob(args.separation));
    let _ = writeln!(
        out,
        "a_m,p_dark_pa,p_dark_err_pa,p_lit_pa,p_lit_err_pa,delta_pa"
    );
    let _ = writeln!(
        out,
        "{},{},{},{},{},{}",
        sig12(args.separation),
        sig12(m.p_dark.pressure),
        sig12(m.p_dark.est_error),
        sig12(m.p_lit.pressure),
        sig12(m.p_lit.est_error),
        sig12(m.delta)
    );
    write_output(&args.output, &out)?;
    Ok(ExitCode::SUCCESS)
}

fn run_material_eval(args: &MaterialEvalArgs) -> Result<ExitCode, String> {
    let db = load_db(&args.materials_dir)?;
    let model = db.resolve(&args.name).map_err(|e| e.to_string())?;
    let eps = model.eval(args.xi).map_err(|e| e.to_string())?;
    println!("{}", sig12(eps));
    Ok(ExitCode::SUCCESS)
}

fn run_kk_build(args: &KkBuildArgs) -> Result<ExitCode, String> {
    let rows = read_xy_csv(&args.input).map_err(|e| e.to_string())?;
    let omega: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let im_eps: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let table = OpticalDataTable::new(omega, im_eps).map_err(|e| e.to_string())?;

    if args.points < 2 {
        return Err(format!("need at least 2 xi points, got {}", args.points));
    }
    let xi_min = args.xi_min.unwrap_or(table.omega()[0]);
    let xi_max = args.xi_max.unwrap_or(*table.omega().last().unwrap());
    if !(xi_min > 0.0 && xi_min < xi_max) {
        return Err(format!("need 0 < xi_min < xi_max, got [{xi_min}, {xi_max}]"));
    }

    let mut out = String::new();
    common_header("kk-build", &mut out);
    let _ = writeln!(out, "# input: {}", args.input.display());
    let _ = writeln!(
        out,
        "# grid: xi_min_rad_s={} xi_max_rad_s={} points={}",
        knob(xi_min),
        knob(xi_max),
        args.points
    );
    let _ = writeln!(out, "xi_rad_s,eps");
    let (lo, hi) = (xi_min.ln(), xi_max.ln());
    for i in 0..=args.points {
        let xi = if i == 0 {
            0.0
        } else {
            (lo + (hi - lo) * (i - 1) as f64 / (args.points - 1) as f64).exp()
        };
        let eps = kk_transform(&table, xi).map_err(|e| e.to_string())?;
        let _ = writeln!(out, "{},{}", sig12(xi), sig12(eps));
    }
    write_output(&Some(args.output.clone()), &out)?;
    eprintln!(
        "wrote {} xi points (plus the xi = 0 row) to {}",
        args.points,
        args.output.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Sweep(args) => run_sweep(args),
        Command::Crossover(args) => run_crossover(args),
        Command::Modulate(args) => run_modulate(args),
        Command::MaterialEval(args) => run_material_eval(args),
        Command::KkBuild(args) => run_kk_build(args),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
