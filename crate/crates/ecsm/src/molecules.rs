//! Molecular-constants data model: record validation, the bundled 23-molecule
//! registry, and CSV ingestion/serialization.
//!
//! The registry CSV schema is `name,mu_amu,De,delta` with a dot decimal
//! separator. Output always uses `\n` line endings; input accepts `\r\n` too.

use std::collections::HashSet;

use thiserror::Error;

/// ħ²/m_u expressed in eV·Å², i.e. (ħc)²/(m_u c²) from CODATA
/// ħc = 1973.269804 eV·Å and m_u c² = 931.49410242e6 eV.
pub const HBAR2_OVER_AMU_EV_A2: f64 = 4.180_159_283_093_916_5e-3;

/// One registry row: a diatomic molecule and its constants.
///
/// `mu` is the reduced mass in amu, `de` the dissociation energy and `delta`
/// the screening parameter, both taken as the raw tabulated numbers (see
/// [`UnitConvention`]).
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeRecord {
    pub name: String,
    pub mu: f64,
    pub de: f64,
    pub delta: f64,
}

impl MoleculeRecord {
    pub fn new(name: impl Into<String>, mu: f64, de: f64, delta: f64) -> Result<Self, RegistryError> {
        let rec = MoleculeRecord { name: name.into(), mu, de, delta };
        rec.validate(None)?;
        Ok(rec)
    }

    fn validate(&self, row: Option<usize>) -> Result<(), RegistryError> {
        if self.name.is_empty() {
            return Err(RegistryError::Validation { row, field: "name", detail: "must be non-empty".into() });
        }
        for (field, value) in [("mu", self.mu), ("de", self.de), ("delta", self.delta)] {
            if !value.is_finite() || value <= 0.0 {
                return Err(RegistryError::Validation {
                    row,
                    field,
                    detail: format!("must be a finite positive number, got {value}"),
                });
            }
        }
        Ok(())
    }
}

/// Unit policy for evaluating the closed-form and oracle machinery.
///
/// `RawPaper` sets ħ = 1 and feeds μ, Dₑ, δ in as raw tabulated numbers; this
/// is the only convention under which the bundled energy tables reproduce.
/// `Physical` carries an explicit ħ²/amu constant (energy·length²) for
/// oracle experiments; energies are then in whatever energy unit that
/// constant was formed with.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum UnitConvention {
    #[default]
    RawPaper,
    Physical { hbar2_over_amu: f64 },
}

impl UnitConvention {
    pub fn physical(hbar2_over_amu: f64) -> Result<Self, RegistryError> {
        if !hbar2_over_amu.is_finite() || hbar2_over_amu <= 0.0 {
            return Err(RegistryError::Validation {
                row: None,
                field: "hbar2_over_amu",
                detail: format!("must be a finite positive number, got {hbar2_over_amu}"),
            });
        }
        Ok(UnitConvention::Physical { hbar2_over_amu })
    }

    /// The ħ² factor entering kinetic terms, per amu of reduced mass.
    pub fn hbar2(&self) -> f64 {
        match self {
            UnitConvention::RawPaper => 1.0,
            UnitConvention::Physical { hbar2_over_amu } => *hbar2_over_amu,
        }
    }
}

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("row {row}: malformed record: {detail}")]
    Parse { row: usize, detail: String },
    #[error("{}field '{field}' {detail}", row.map(|r| format!("row {r}: ")).unwrap_or_default())]
    Validation { row: Option<usize>, field: &'static str, detail: String },
    #[error("duplicate molecule name '{0}'")]
    DuplicateName(String),
    #[error("molecule '{0}' not found in registry")]
    NotFound(String),
}

const REGISTRY_HEADER: &str = "name,mu_amu,De,delta";

const TABLE1_CSV: &str = include_str!("../data/table1.csv");

/// Parse a registry from CSV text. Rows are returned in file order; every
/// record is validated and names must be unique.
pub fn load_registry(csv: &str) -> Result<Vec<MoleculeRecord>, RegistryError> {
    let mut lines = csv.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end_matches('\r') == REGISTRY_HEADER => {}
        Some((_, header)) => {
            return Err(RegistryError::Parse {
                row: 0,
                detail: format!("expected header '{REGISTRY_HEADER}', got '{header}'"),
            })
        }
        None => return Err(RegistryError::Parse { row: 0, detail: "empty input".into() }),
    }

    let mut records = Vec::new();
    let mut seen = HashSet::new();
    for (idx, line) in lines {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(RegistryError::Parse {
                row: idx,
                detail: format!("expected 4 comma-separated fields, got {}", fields.len()),
            });
        }
        let parse_num = |s: &str, what: &str| {
            s.trim().parse::<f64>().map_err(|_| RegistryError::Parse {
                row: idx,
                detail: format!("cannot parse {what} from '{s}'"),
            })
        };
        let rec = MoleculeRecord {
            name: fields[0].trim().to_string(),
            mu: parse_num(fields[1], "mu_amu")?,
            de: parse_num(fields[2], "De")?,
            delta: parse_num(fields[3], "delta")?,
        };
        rec.validate(Some(idx))?;
        if !seen.insert(rec.name.clone()) {
            return Err(RegistryError::DuplicateName(rec.name));
        }
        records.push(rec);
    }
    Ok(records)
}

/// Serialize a registry to CSV text. `load_registry` of the output is the
/// identity on all fields; numbers print with the shortest representation
/// that round-trips exactly.
pub fn serialize_registry(records: &[MoleculeRecord]) -> String {
    let mut out = String::from(REGISTRY_HEADER);
    out.push('\n');
    for rec in records {
        out.push_str(&format!("{},{},{},{}\n", rec.name, rec.mu, rec.de, rec.delta));
    }
    out
}

/// The bundled 23-molecule table, all tabulated digits preserved.
pub fn builtin_table1() -> Vec<MoleculeRecord> {
    load_registry(TABLE1_CSV).expect("bundled molecule table is valid")
}

/// Case-sensitive exact-match lookup.
pub fn lookup<'a>(records: &'a [MoleculeRecord], name: &str) -> Result<&'a MoleculeRecord, RegistryError> {
    records
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| RegistryError::NotFound(name.to_string()))
}
