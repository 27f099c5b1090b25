//! Command-line front end: single-energy evaluation, table emission and
//! validation against the bundled golden data, figure data series, and
//! closed-form vs oracle comparison reports.
//!
//! Exit-code contract: 0 success, 1 validation mismatch, 2 usage/input error.
//! Every file-producing subcommand writes a RunManifest next to its outputs;
//! identical invocations on identical inputs are byte-identical.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::molecules::{self, MoleculeRecord};
use crate::oracle::{self, Method, SolverConfig};
use crate::potential::{PotentialKind, PotentialSpec};
use crate::spectrum::{self, SpectrumVariant};

#[derive(Debug, Parser)]
#[command(name = "ecsm", version, about = "Bound-state spectra of screened diatomic potentials")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print one closed-form energy level.
    Energy(EnergyArgs),
    /// Emit the energy table for a molecule registry.
    Tables(TablesArgs),
    /// Validate recomputed energies against an expected CSV.
    Validate(ValidateArgs),
    /// Emit figure data series.
    Figures(FiguresArgs),
    /// Compare closed-form spectra against the numerical solver.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
struct EnergyArgs {
    /// Reduced mass (amu, raw number).
    #[arg(long)]
    mu: f64,
    /// Dissociation energy (raw number).
    #[arg(long)]
    de: f64,
    /// Screening parameter (raw number, nonzero).
    #[arg(long)]
    delta: f64,
    /// Vibrational quantum number.
    #[arg(long)]
    n: u32,
    /// Formula reading: table, literal, nu, csp or morse.
    #[arg(long, default_value = "table")]
    variant: String,
    /// Print full precision instead of 6 decimals.
    #[arg(long)]
    full_precision: bool,
}

#[derive(Debug, Args)]
struct TablesArgs {
    /// Registry CSV path, or "builtin" for the bundled 23-molecule table.
    #[arg(long, default_value = "builtin")]
    input: String,
    #[arg(long, default_value_t = 10)]
    n_max: u32,
    #[arg(long, default_value = "table")]
    variant: String,
    #[arg(long, default_value = "energies.csv")]
    out: PathBuf,
    #[arg(long)]
    full_precision: bool,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Expected CSV with header `molecule,n,energy`.
    #[arg(long)]
    expected: PathBuf,
    #[arg(long, default_value_t = 1e-3)]
    tol_rel: f64,
    #[arg(long, default_value_t = 2e-6)]
    tol_abs: f64,
    #[arg(long, default_value = "report.json")]
    report: PathBuf,
    /// Registry CSV path, or "builtin".
    #[arg(long, default_value = "builtin")]
    input: String,
}

#[derive(Debug, Args)]
struct FiguresArgs {
    /// Figure index, 1 through 7.
    #[arg(long)]
    fig: u32,
    #[arg(long, default_value_t = 0.5041)]
    mu: f64,
    #[arg(long, default_value_t = 4.746768)]
    de: f64,
    #[arg(long, default_value = "0.005,0.01,0.015", value_delimiter = ',')]
    deltas: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    n_max: u32,
    /// Output directory for the figure CSV.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    full_precision: bool,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long)]
    molecule: String,
    /// Comma-separated formula readings to compare.
    #[arg(long, default_value = "table", value_delimiter = ',')]
    variant: Vec<String>,
    /// Solver: fd or numerov.
    #[arg(long, default_value = "fd")]
    method: String,
    #[arg(long)]
    r_min: Option<f64>,
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long)]
    n_grid: Option<usize>,
    #[arg(long, default_value_t = 11)]
    max_levels: usize,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Registry CSV path, or "builtin".
    #[arg(long, default_value = "builtin")]
    input: String,
}

/// Failures carrying the process exit code: 1 for validation mismatches,
/// 2 for usage and input errors.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Mismatch(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Mismatch(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Mismatch(m) => m,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Energy(args) => cmd_energy(args),
        Command::Tables(args) => cmd_tables(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Figures(args) => cmd_figures(args),
        Command::Compare(args) => cmd_compare(args),
    }
}

// ---------------------------------------------------------------------------
// Manifest plumbing
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    tool: &'static str,
    version: &'static str,
    subcommand: String,
    parameters: BTreeMap<String, String>,
    inputs: Vec<InputDigest>,
    outputs: Vec<String>,
}

impl RunManifest {
    fn new(subcommand: &str) -> Self {
        RunManifest {
            tool: "ecsm",
            version: env!("CARGO_PKG_VERSION"),
            subcommand: subcommand.to_string(),
            parameters: BTreeMap::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    fn input_bytes(&mut self, path: &str, bytes: &[u8]) {
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        self.inputs.push(InputDigest { path: path.to_string(), sha256: format!("{:x}", hasher.finalize()) });
    }

    fn output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn write_manifest(out: &Path, manifest: &RunManifest) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    write_file(&manifest_path(out), &(json + "\n"))
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

fn parse_variant(s: &str) -> Result<SpectrumVariant, CliError> {
    s.parse().map_err(|e| usage(format!("{e}")))
}

fn format_energy(e: f64, full_precision: bool) -> String {
    if full_precision {
        format!("{e:.16e}")
    } else {
        format!("{e:.6}")
    }
}

/// Load a registry from a path, or the bundled table for "builtin".
/// The raw CSV bytes are recorded in the manifest either way.
fn load_registry_arg(input: &str, manifest: &mut RunManifest) -> Result<Vec<MoleculeRecord>, CliError> {
    if input == "builtin" {
        let records = molecules::builtin_table1();
        manifest.input_bytes("builtin", molecules::serialize_registry(&records).as_bytes());
        return Ok(records);
    }
    let text = fs::read_to_string(input).map_err(|e| usage(format!("cannot read {input}: {e}")))?;
    manifest.input_bytes(input, text.as_bytes());
    molecules::load_registry(&text).map_err(|e| usage(format!("{input}: {e}")))
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_energy(args: EnergyArgs) -> Result<(), CliError> {
    if args.delta == 0.0 {
        return Err(usage("screening parameter delta must be nonzero"));
    }
    let variant = parse_variant(&args.variant)?;
    let level = spectrum::energy(args.mu, args.de, args.delta, args.n, variant)
        .map_err(|e| usage(format!("{e}")))?;
    println!("{}", format_energy(level.energy, args.full_precision));
    Ok(())
}

fn cmd_tables(args: TablesArgs) -> Result<(), CliError> {
    let variant = parse_variant(&args.variant)?;
    let mut manifest = RunManifest::new("tables");
    manifest
        .param("input", &args.input)
        .param("n_max", args.n_max)
        .param("variant", variant)
        .param("full_precision", args.full_precision);
    let records = load_registry_arg(&args.input, &mut manifest)?;

    let mut csv = String::from("molecule,n,variant,energy\n");
    for rec in &records {
        let levels = spectrum::spectrum_range(rec.mu, rec.de, rec.delta, args.n_max, variant)
            .map_err(|e| usage(format!("{}: {e}", rec.name)))?;
        for level in levels {
            let _ = writeln!(
                csv,
                "{},{},{},{}",
                rec.name,
                level.n,
                variant,
                format_energy(level.energy, args.full_precision)
            );
        }
    }
    write_file(&args.out, &csv)?;
    manifest.output(&args.out);
    write_manifest(&args.out, &manifest)
}

#[derive(Debug, Serialize)]
struct EntryReport {
    molecule: String,
    n: u32,
    expected: f64,
    computed: f64,
    abs_dev: f64,
    tolerance: f64,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct ValidationReport {
    tol_rel: f64,
    tol_abs: f64,
    total: usize,
    table_failures: usize,
    literal_failures: usize,
    /// Max |computed − expected| of the table-consistent reading.
    table_max_abs_dev: f64,
    /// Max |computed − expected| of the literal reading, for contrast.
    literal_max_abs_dev: f64,
    passed: bool,
    entries: Vec<EntryReport>,
}

fn cmd_validate(args: ValidateArgs) -> Result<(), CliError> {
    if !(args.tol_rel >= 0.0 && args.tol_abs >= 0.0) {
        return Err(usage("tolerances must be non-negative"));
    }
    let mut manifest = RunManifest::new("validate");
    manifest
        .param("expected", args.expected.display())
        .param("input", &args.input)
        .param("tol_rel", args.tol_rel)
        .param("tol_abs", args.tol_abs);
    let records = load_registry_arg(&args.input, &mut manifest)?;

    let text = fs::read_to_string(&args.expected)
        .map_err(|e| usage(format!("cannot read {}: {e}", args.expected.display())))?;
    manifest.input_bytes(&args.expected.display().to_string(), text.as_bytes());

    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim_end_matches('\r').is_empty());
    match lines.next() {
        Some((_, h)) if h.trim_end_matches('\r') == "molecule,n,energy" => {}
        other => {
            return Err(usage(format!(
                "expected header 'molecule,n,energy', got '{}'",
                other.map(|(_, h)| h).unwrap_or("")
            )))
        }
    }

    let mut entries = Vec::new();
    let mut table_max = 0.0f64;
    let mut literal_max = 0.0f64;
    let mut table_failures = 0usize;
    let mut literal_failures = 0usize;
    for (idx, line) in lines {
        let line = line.trim_end_matches('\r');
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(usage(format!("row {idx}: expected 3 fields, got {}", fields.len())));
        }
        let rec = molecules::lookup(&records, fields[0].trim()).map_err(|e| usage(format!("row {idx}: {e}")))?;
        let n: u32 = fields[1].trim().parse().map_err(|_| usage(format!("row {idx}: bad n '{}'", fields[1])))?;
        let expected: f64 =
            fields[2].trim().parse().map_err(|_| usage(format!("row {idx}: bad energy '{}'", fields[2])))?;

        let tolerance = (args.tol_rel * expected.abs()).max(args.tol_abs);
        let computed = spectrum::energy(rec.mu, rec.de, rec.delta, n, SpectrumVariant::TableForm)
            .map_err(|e| usage(format!("row {idx}: {e}")))?
            .energy;
        let abs_dev = (computed - expected).abs();
        let pass = abs_dev <= tolerance;
        table_max = table_max.max(abs_dev);
        table_failures += usize::from(!pass);

        let literal = spectrum::energy(rec.mu, rec.de, rec.delta, n, SpectrumVariant::LiteralEq31)
            .map_err(|e| usage(format!("row {idx}: {e}")))?
            .energy;
        let literal_dev = (literal - expected).abs();
        literal_max = literal_max.max(literal_dev);
        literal_failures += usize::from(literal_dev > tolerance);

        entries.push(EntryReport { molecule: rec.name.clone(), n, expected, computed, abs_dev, tolerance, pass });
    }

    let report = ValidationReport {
        tol_rel: args.tol_rel,
        tol_abs: args.tol_abs,
        total: entries.len(),
        table_failures,
        literal_failures,
        table_max_abs_dev: table_max,
        literal_max_abs_dev: literal_max,
        passed: table_failures == 0,
        entries,
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    write_file(&args.report, &json)?;
    manifest.output(&args.report);
    write_manifest(&args.report, &manifest)?;

    if report.passed {
        println!("validated {} entries, max deviation {:.3e}", report.total, report.table_max_abs_dev);
        Ok(())
    } else {
        let names: Vec<String> = report
            .entries
            .iter()
            .filter(|e| !e.pass)
            .take(5)
            .map(|e| format!("{} n={}", e.molecule, e.n))
            .collect();
        Err(CliError::Mismatch(format!(
            "{} of {} entries out of tolerance (first: {})",
            report.table_failures,
            report.total,
            names.join(", ")
        )))
    }
}

const FIGURE_VARIANTS: [SpectrumVariant; 3] =
    [SpectrumVariant::TableForm, SpectrumVariant::CspEq32, SpectrumVariant::MorseEq33];

fn cmd_figures(args: FiguresArgs) -> Result<(), CliError> {
    if !(1..=7).contains(&args.fig) {
        return Err(usage(format!("unknown figure index {} (expected 1..7)", args.fig)));
    }
    if args.deltas.is_empty() || args.deltas.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
        return Err(usage("deltas must be finite positive numbers"));
    }
    let mut manifest = RunManifest::new("figures");
    manifest
        .param("fig", args.fig)
        .param("mu", args.mu)
        .param("de", args.de)
        .param("deltas", args.deltas.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
        .param("n_max", args.n_max)
        .param("full_precision", args.full_precision);

    let mut csv = String::new();
    if args.fig <= 6 {
        csv.push_str("variant,delta,n,E\n");
        let (variants, deltas): (Vec<SpectrumVariant>, Vec<f64>) = if args.fig <= 3 {
            // one variant across all deltas
            (vec![FIGURE_VARIANTS[(args.fig - 1) as usize]], args.deltas.clone())
        } else {
            // all variants at one delta
            let i = (args.fig - 4) as usize;
            let delta = *args
                .deltas
                .get(i)
                .ok_or_else(|| usage(format!("figure {} needs at least {} deltas", args.fig, i + 1)))?;
            (FIGURE_VARIANTS.to_vec(), vec![delta])
        };
        for variant in &variants {
            for &delta in &deltas {
                let levels = spectrum::spectrum_range(args.mu, args.de, delta, args.n_max, *variant)
                    .map_err(|e| usage(format!("{e}")))?;
                for level in levels {
                    let _ = writeln!(
                        csv,
                        "{},{},{},{}",
                        variant,
                        delta,
                        level.n,
                        format_energy(level.energy, args.full_precision)
                    );
                }
            }
        }
    } else {
        csv.push_str("potential,delta,r,V\n");
        for &delta in &args.deltas {
            let curves: [(&str, PotentialSpec); 3] = [
                ("ecspm", PotentialSpec::ecsm(args.de, delta).map_err(|e| usage(format!("{e}")))?),
                (
                    "ecsp",
                    PotentialSpec::with_coupling(0.0, delta, args.de * delta, PotentialKind::CoshOfRadius)
                        .map_err(|e| usage(format!("{e}")))?,
                ),
                ("mp", PotentialSpec::morse(args.de, delta).map_err(|e| usage(format!("{e}")))?),
            ];
            let r_max = 50.0 / delta;
            let r_min = r_max * 1e-4;
            for (label, spec) in &curves {
                let samples = spec.sample_curve(r_min, r_max, 500).map_err(|e| usage(format!("{e}")))?;
                for (r, v) in samples {
                    let _ = writeln!(
                        csv,
                        "{},{},{},{}",
                        label,
                        delta,
                        format_energy(r, args.full_precision),
                        format_energy(v, args.full_precision)
                    );
                }
            }
        }
    }

    fs::create_dir_all(&args.out).map_err(|e| usage(format!("cannot create {}: {e}", args.out.display())))?;
    let out = args.out.join(format!("fig{}.csv", args.fig));
    write_file(&out, &csv)?;
    manifest.output(&out);
    write_manifest(&out, &manifest)
}

fn cmd_compare(args: CompareArgs) -> Result<(), CliError> {
    let mut manifest = RunManifest::new("compare");
    let records = load_registry_arg(&args.input, &mut manifest)?;
    let rec = molecules::lookup(&records, &args.molecule).map_err(|e| usage(format!("{e}")))?;

    let method = match args.method.as_str() {
        "fd" => Method::FiniteDifference,
        "numerov" => Method::NumerovShooting,
        other => return Err(usage(format!("unknown method '{other}' (expected fd or numerov)"))),
    };
    let mut config = match method {
        Method::FiniteDifference => SolverConfig::fd_default(rec.delta),
        Method::NumerovShooting => SolverConfig::numerov_default(rec.delta),
    };
    if let Some(v) = args.r_min {
        config.r_min = v;
    }
    if let Some(v) = args.r_max {
        config.r_max = v;
    }
    if let Some(v) = args.n_grid {
        config.n_grid = v;
    }
    config.max_levels = args.max_levels;

    manifest
        .param("molecule", &args.molecule)
        .param("variant", args.variant.join(","))
        .param("method", method.as_str())
        .param("r_min", config.r_min)
        .param("r_max", config.r_max)
        .param("n_grid", config.n_grid)
        .param("max_levels", config.max_levels);

    let mut reports = Vec::new();
    for name in &args.variant {
        let variant = parse_variant(name)?;
        let report = oracle::compare_closed_form(rec, variant, &config).map_err(|e| usage(format!("{e}")))?;
        reports.push(report);
    }

    let json = serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n";
    match &args.out {
        Some(path) => {
            write_file(path, &json)?;
            manifest.output(path);
            write_manifest(path, &manifest)
        }
        None => {
            print!("{json}");
            Ok(())
        }
    }
}
