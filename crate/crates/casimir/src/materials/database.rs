//! File-backed material database.
//!
//! Materials are UTF-8 INI-style files with a single `[material]` section:
//!
//! ```text
//! [material]
//! name = ethanol
//! kind = oscillator
//! c_ir = 23.84
//! c_uv = 0.852
//! omega_ir_rad_s = 6.600e14
//! omega_uv_rad_s = 1.140e16
//! ```
//!
//! Kinds and their keys:
//! * `oscillator` — `c_ir`, `c_uv`, `omega_ir_rad_s`, `omega_uv_rad_s`
//! * `carriers` — `base` (material name), `n_density_m3`, `m_eff_e`,
//!   `m_eff_h`, `gamma_e_rad_s`, `gamma_h_rad_s`
//! * `tabulated` — `table_csv`, a path (relative to the `.mat` file) to a
//!   two-column CSV `xi_rad_s,eps`; a leading row with `xi_rad_s = 0` gives ε(0)
//! * `constant` — `eps`
//! * `ideal_metal` — no keys
//!
//! All frequencies are rad/s, densities m⁻³. Lines starting with `#` or `;`
//! are comments.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use super::{
    CarrierAugmentedModel, CarrierParameters, MaterialError, OscillatorModel, Permittivity,
    TabulatedPermittivity,
};
use crate::constants::PhysicalConstants;

/// A named, file-persistable material definition.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialRecord {
    pub name: String,
    pub kind: MaterialKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MaterialKind {
    Oscillator {
        c_ir: f64,
        c_uv: f64,
        omega_ir_rad_s: f64,
        omega_uv_rad_s: f64,
    },
    Carriers {
        base: String,
        n_density_m3: f64,
        m_eff_e: f64,
        m_eff_h: f64,
        gamma_e_rad_s: f64,
        gamma_h_rad_s: f64,
    },
    Tabulated {
        /// Path of the companion CSV as written in the `.mat` file.
        table_csv: PathBuf,
        /// Parsed `(xi, eps)` rows, including a leading ξ = 0 row when present.
        rows: Vec<(f64, f64)>,
    },
    Constant {
        eps: f64,
    },
    IdealMetal,
}

impl MaterialKind {
    fn kind_name(&self) -> &'static str {
        match self {
            MaterialKind::Oscillator { .. } => "oscillator",
            MaterialKind::Carriers { .. } => "carriers",
            MaterialKind::Tabulated { .. } => "tabulated",
            MaterialKind::Constant { .. } => "constant",
            MaterialKind::IdealMetal => "ideal_metal",
        }
    }
}

struct Entry {
    value: String,
    line: usize,
}

struct Section {
    path: String,
    keys: BTreeMap<String, Entry>,
}

impl Section {
    fn take(&mut self, key: &str) -> Result<Entry, MaterialError> {
        self.keys.remove(key).ok_or_else(|| MaterialError::Parse {
            path: self.path.clone(),
            line: 0,
            message: format!("missing key `{key}`"),
        })
    }

    fn take_f64(&mut self, key: &str) -> Result<f64, MaterialError> {
        let entry = self.take(key)?;
        entry
            .value
            .parse::<f64>()
            .map_err(|_| MaterialError::Parse {
                path: self.path.clone(),
                line: entry.line,
                message: format!("key `{key}`: `{}` is not a number", entry.value),
            })
    }

    fn reject_leftovers(&self) -> Result<(), MaterialError> {
        if let Some((key, entry)) = self.keys.iter().next() {
            return Err(MaterialError::Parse {
                path: self.path.clone(),
                line: entry.line,
                message: format!("unexpected key `{key}` for this material kind"),
            });
        }
        Ok(())
    }
}

fn parse_section(text: &str, display_path: &str) -> Result<Section, MaterialError> {
    let mut keys: BTreeMap<String, Entry> = BTreeMap::new();
    let mut in_section = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
            continue;
        }
        if let Some(header) = line.strip_prefix('[') {
            let header = header.strip_suffix(']').ok_or_else(|| MaterialError::Parse {
                path: display_path.to_string(),
                line: line_no,
                message: "unterminated section header".into(),
            })?;
            if header.trim() != "material" {
                return Err(MaterialError::Parse {
                    path: display_path.to_string(),
                    line: line_no,
                    message: format!("unknown section `[{}]`", header.trim()),
                });
            }
            if in_section {
                return Err(MaterialError::Parse {
                    path: display_path.to_string(),
                    line: line_no,
                    message: "duplicate [material] section".into(),
                });
            }
            in_section = true;
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| MaterialError::Parse {
            path: display_path.to_string(),
            line: line_no,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        if !in_section {
            return Err(MaterialError::Parse {
                path: display_path.to_string(),
                line: line_no,
                message: "key outside the [material] section".into(),
            });
        }
        let key = key.trim().to_string();
        if keys.contains_key(&key) {
            return Err(MaterialError::Parse {
                path: display_path.to_string(),
                line: line_no,
                message: format!("duplicate key `{key}`"),
            });
        }
        keys.insert(
            key,
            Entry {
                value: value.trim().to_string(),
                line: line_no,
            },
        );
    }
    if !in_section {
        return Err(MaterialError::Parse {
            path: display_path.to_string(),
            line: 1,
            message: "missing [material] section".into(),
        });
    }
    Ok(Section {
        path: display_path.to_string(),
        keys,
    })
}

/// Parses a material definition from text. `csv_base` is the directory against
/// which a relative `table_csv` path is resolved; tabulated materials fail
/// without one.
pub(crate) fn parse_material_str(
    text: &str,
    display_path: &str,
    csv_base: Option<&Path>,
) -> Result<MaterialRecord, MaterialError> {
    let mut section = parse_section(text, display_path)?;
    let name = section.take("name")?.value;
    if name.is_empty() || name.contains(char::is_whitespace) {
        return Err(MaterialError::Parse {
            path: display_path.to_string(),
            line: 0,
            message: format!("invalid material name `{name}`"),
        });
    }
    let kind_entry = section.take("kind")?;
    let kind = match kind_entry.value.as_str() {
        "oscillator" => {
            let kind = MaterialKind::Oscillator {
                c_ir: section.take_f64("c_ir")?,
                c_uv: section.take_f64("c_uv")?,
                omega_ir_rad_s: section.take_f64("omega_ir_rad_s")?,
                omega_uv_rad_s: section.take_f64("omega_uv_rad_s")?,
            };
            if let MaterialKind::Oscillator {
                c_ir,
                c_uv,
                omega_ir_rad_s,
                omega_uv_rad_s,
            } = kind
            {
                // Validate invariants eagerly so bad files fail at load.
                OscillatorModel::new(c_ir, c_uv, omega_ir_rad_s, omega_uv_rad_s)
                    .map_err(|e| with_path_context(e, display_path))?;
            }
            kind
        }
        "carriers" => {
            let kind = MaterialKind::Carriers {
                base: section.take("base")?.value,
                n_density_m3: section.take_f64("n_density_m3")?,
                m_eff_e: section.take_f64("m_eff_e")?,
                m_eff_h: section.take_f64("m_eff_h")?,
                gamma_e_rad_s: section.take_f64("gamma_e_rad_s")?,
                gamma_h_rad_s: section.take_f64("gamma_h_rad_s")?,
            };
            if let MaterialKind::Carriers {
                n_density_m3,
                m_eff_e,
                m_eff_h,
                gamma_e_rad_s,
                gamma_h_rad_s,
                ..
            } = &kind
            {
                CarrierParameters::new(*n_density_m3, *m_eff_e, *m_eff_h)
                    .map_err(|e| with_path_context(e, display_path))?;
                for (key, v) in [("gamma_e_rad_s", gamma_e_rad_s), ("gamma_h_rad_s", gamma_h_rad_s)]
                {
                    if !(v.is_finite() && *v > 0.0) {
                        return Err(MaterialError::Invariant(format!(
                            "{display_path}: {key} must be > 0, got {v}"
                        )));
                    }
                }
            }
            kind
        }
        "tabulated" => {
            let table_csv = PathBuf::from(section.take("table_csv")?.value);
            let resolved = if table_csv.is_absolute() {
                table_csv.clone()
            } else {
                match csv_base {
                    Some(dir) => dir.join(&table_csv),
                    None => {
                        return Err(MaterialError::Parse {
                            path: display_path.to_string(),
                            line: 0,
                            message: "tabulated material needs a file location to resolve \
                                      its relative table_csv path"
                                .into(),
                        })
                    }
                }
            };
            let rows = read_xy_csv(&resolved)?;
            // Validate by constructing the model.
            TabulatedPermittivity::from_rows(&rows)
                .map_err(|e| with_path_context(e, &resolved.display().to_string()))?;
            MaterialKind::Tabulated { table_csv, rows }
        }
        "constant" => {
            let eps = section.take_f64("eps")?;
            Permittivity::constant(eps).map_err(|e| with_path_context(e, display_path))?;
            MaterialKind::Constant { eps }
        }
        "ideal_metal" => MaterialKind::IdealMetal,
        other => return Err(MaterialError::UnknownKind(other.to_string())),
    };
    section.reject_leftovers()?;
    Ok(MaterialRecord { name, kind })
}

fn with_path_context(err: MaterialError, path: &str) -> MaterialError {
    match err {
        MaterialError::Invariant(msg) => MaterialError::Invariant(format!("{path}: {msg}")),
        other => other,
    }
}

/// Loads a material definition (and its CSV table, if any) from disk.
pub fn load_material(path: impl AsRef<Path>) -> Result<MaterialRecord, MaterialError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| MaterialError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_material_str(&text, &path.display().to_string(), path.parent())
}

/// Writes a material definition to `path`; a tabulated record also writes its
/// companion CSV next to it. Floats are written with Rust's shortest
/// round-trip formatting, so save → load reproduces every parameter bit-exactly.
pub fn save_material(record: &MaterialRecord, path: impl AsRef<Path>) -> Result<(), MaterialError> {
    let path = path.as_ref();
    let mut out = String::new();
    out.push_str("[material]\n");
    out.push_str(&format!("name = {}\n", record.name));
    out.push_str(&format!("kind = {}\n", record.kind.kind_name()));
    match &record.kind {
        MaterialKind::Oscillator {
            c_ir,
            c_uv,
            omega_ir_rad_s,
            omega_uv_rad_s,
        } => {
            out.push_str(&format!("c_ir = {c_ir}\n"));
            out.push_str(&format!("c_uv = {c_uv}\n"));
            out.push_str(&format!("omega_ir_rad_s = {omega_ir_rad_s}\n"));
            out.push_str(&format!("omega_uv_rad_s = {omega_uv_rad_s}\n"));
        }
        MaterialKind::Carriers {
            base,
            n_density_m3,
            m_eff_e,
            m_eff_h,
            gamma_e_rad_s,
            gamma_h_rad_s,
        } => {
            out.push_str(&format!("base = {base}\n"));
            out.push_str(&format!("n_density_m3 = {n_density_m3}\n"));
            out.push_str(&format!("m_eff_e = {m_eff_e}\n"));
            out.push_str(&format!("m_eff_h = {m_eff_h}\n"));
            out.push_str(&format!("gamma_e_rad_s = {gamma_e_rad_s}\n"));
            out.push_str(&format!("gamma_h_rad_s = {gamma_h_rad_s}\n"));
        }
        MaterialKind::Tabulated { table_csv, rows } => {
            out.push_str(&format!("table_csv = {}\n", table_csv.display()));
            let csv_path = if table_csv.is_absolute() {
                table_csv.clone()
            } else {
                path.parent().unwrap_or(Path::new(".")).join(table_csv)
            };
            let mut csv = String::from("xi_rad_s,eps\n");
            for (xi, eps) in rows {
                csv.push_str(&format!("{xi},{eps}\n"));
            }
            fs::write(&csv_path, csv).map_err(|source| MaterialError::Io {
                path: csv_path.display().to_string(),
                source,
            })?;
        }
        MaterialKind::Constant { eps } => {
            out.push_str(&format!("eps = {eps}\n"));
        }
        MaterialKind::IdealMetal => {}
    }
    fs::write(path, out).map_err(|source| MaterialError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Reads a two-column CSV of floats. `#`/`;` comment lines are skipped and a
/// single non-numeric header row is tolerated.
pub fn read_xy_csv(path: impl AsRef<Path>) -> Result<Vec<(f64, f64)>, MaterialError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| MaterialError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_xy_csv(&text, &path.display().to_string())
}

pub(crate) fn parse_xy_csv(text: &str, display_path: &str) -> Result<Vec<(f64, f64)>, MaterialError> {
    let mut rows = Vec::new();
    let mut saw_data = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
            continue;
        }
        let mut parts = line.split(',');
        let parsed = (|| {
            let a = parts.next()?.trim().parse::<f64>().ok()?;
            let b = parts.next()?.trim().parse::<f64>().ok()?;
            if parts.next().is_some() {
                return None;
            }
            Some((a, b))
        })();
        match parsed {
            Some(row) => {
                rows.push(row);
                saw_data = true;
            }
            None if !saw_data && rows.is_empty() => continue, // header row
            None => {
                return Err(MaterialError::Parse {
                    path: display_path.to_string(),
                    line: idx + 1,
                    message: format!("expected two comma-separated numbers, got `{line}`"),
                })
            }
        }
    }
    if rows.is_empty() {
        return Err(MaterialError::EmptyTable);
    }
    Ok(rows)
}

/// In-memory collection of material records with base-reference resolution.
#[derive(Debug, Default, Clone)]
pub struct MaterialDb {
    records: BTreeMap<String, MaterialRecord>,
}

const BUILTIN_MATERIALS: &[(&str, &str)] = &[
    ("ethanol.mat", include_str!("../../materials/ethanol.mat")),
    ("al2o3.mat", include_str!("../../materials/al2o3.mat")),
    ("si.mat", include_str!("../../materials/si.mat")),
    ("si_lit.mat", include_str!("../../materials/si_lit.mat")),
    ("au.mat", include_str!("../../materials/au.mat")),
    ("vacuum.mat", include_str!("../../materials/vacuum.mat")),
    (
        "ideal_metal.mat",
        include_str!("../../materials/ideal_metal.mat"),
    ),
];

impl MaterialDb {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The database shipped with the crate: ethanol, α-Al₂O₃, approximate dark
    /// Si and Drude Au, illuminated Si, vacuum and the ideal metal.
    pub fn builtin() -> Self {
        let mut db = Self::empty();
        for (file, text) in BUILTIN_MATERIALS {
            let record = parse_material_str(text, &format!("builtin:{file}"), None)
                .unwrap_or_else(|e| panic!("builtin material {file} must parse: {e}"));
            db.insert(record);
        }
        db
    }

    /// Inserts a record, replacing any existing one with the same name.
    pub fn insert(&mut self, record: MaterialRecord) -> Option<MaterialRecord> {
        self.records.insert(record.name.clone(), record)
    }

    /// Loads every `*.mat` file from a directory over the current contents.
    /// Returns how many records were loaded.
    pub fn overlay_dir(&mut self, dir: impl AsRef<Path>) -> Result<usize, MaterialError> {
        let dir = dir.as_ref();
        let entries = fs::read_dir(dir).map_err(|source| MaterialError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        let mut paths: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "mat"))
            .collect();
        paths.sort();
        let mut count = 0;
        for path in paths {
            self.insert(load_material(&path)?);
            count += 1;
        }
        Ok(count)
    }

    pub fn get(&self, name: &str) -> Option<&MaterialRecord> {
        self.records.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.records.keys().map(String::as_str)
    }

    /// Builds the evaluable permittivity for `name`, resolving `base`
    /// references recursively.
    pub fn resolve(&self, name: &str) -> Result<Permittivity, MaterialError> {
        self.resolve_inner(name, &mut Vec::new())
    }

    fn resolve_inner(
        &self,
        name: &str,
        stack: &mut Vec<String>,
    ) -> Result<Permittivity, MaterialError> {
        if stack.iter().any(|n| n == name) {
            return Err(MaterialError::CircularBase(name.to_string()));
        }
        let record = self
            .records
            .get(name)
            .ok_or_else(|| MaterialError::UnknownMaterial(name.to_string()))?;
        match &record.kind {
            MaterialKind::Oscillator {
                c_ir,
                c_uv,
                omega_ir_rad_s,
                omega_uv_rad_s,
            } => Ok(Permittivity::Oscillator(OscillatorModel::new(
                *c_ir,
                *c_uv,
                *omega_ir_rad_s,
                *omega_uv_rad_s,
            )?)),
            MaterialKind::Carriers {
                base,
                n_density_m3,
                m_eff_e,
                m_eff_h,
                gamma_e_rad_s,
                gamma_h_rad_s,
            } => {
                stack.push(name.to_string());
                let base_model = self.resolve_inner(base, stack)?;
                stack.pop();
                let params = CarrierParameters::new(*n_density_m3, *m_eff_e, *m_eff_h)?;
                Ok(Permittivity::Carriers(
                    CarrierAugmentedModel::from_carrier_parameters(
                        base_model,
                        &params,
                        *gamma_e_rad_s,
                        *gamma_h_rad_s,
                        &PhysicalConstants::codata(),
                    )?,
                ))
            }
            MaterialKind::Tabulated { rows, .. } => Ok(Permittivity::Tabulated(
                TabulatedPermittivity::from_rows(rows)?,
            )),
            MaterialKind::Constant { eps } => Permittivity::constant(*eps),
            MaterialKind::IdealMetal => Ok(Permittivity::IdealMetal),
        }
    }
}
