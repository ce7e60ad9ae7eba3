//! The on-disk formats: uncertainty files and utility files.
//!
//! Both are JSON objects written one entry per line so that they diff well
//! and stay writable by hand. Subsets are arrays of atom names; `[]` is the
//! empty set. Entries are always written in ascending bit order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::capacity::{
    self, Capacity, CapacityKind, MassFunction, PossibilityDistribution, Strictness,
};
use crate::decision::DecisionProblem;
use crate::frame::{Frame, Subset};
use crate::moebius;

/// Metadata key carrying the kind tag of `capacity` files.
pub const CAPACITY_KIND_KEY: &str = "capacity_kind";

/// Representation stored in an [`UncertaintyFile`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileKind {
    /// Non-negative basic belief masses; unlisted subsets are zero.
    Mass,
    /// Belief function, every non-empty subset listed.
    Bel,
    /// Plausibility function, every non-empty subset listed.
    Pl,
    /// Any credibility function, every non-empty subset listed.
    Capacity,
    /// Atom probabilities (singleton entries).
    Probability,
    /// Possibility distribution (singleton entries).
    Possibility,
    /// Möbius transform `v`, signs unrestricted.
    V,
    /// Möbius transform `w`, signs unrestricted.
    W,
}

impl FileKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FileKind::Mass => "mass",
            FileKind::Bel => "bel",
            FileKind::Pl => "pl",
            FileKind::Capacity => "capacity",
            FileKind::Probability => "probability",
            FileKind::Possibility => "possibility",
            FileKind::V => "v",
            FileKind::W => "w",
        }
    }

    fn is_table(self) -> bool {
        matches!(self, FileKind::Bel | FileKind::Pl | FileKind::Capacity)
    }

    fn is_sparse(self) -> bool {
        matches!(self, FileKind::Mass | FileKind::V | FileKind::W)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub subset: Vec<String>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UncertaintyFile {
    pub frame: Vec<String>,
    pub kind: FileKind,
    pub entries: Vec<Entry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
    /// Source line of each entry, when parsed from text.
    #[serde(skip)]
    lines: Vec<usize>,
}

impl UncertaintyFile {
    pub fn new(frame: &Frame, kind: FileKind, entries: Vec<Entry>) -> Self {
        UncertaintyFile {
            frame: frame.atoms().to_vec(),
            kind,
            entries,
            metadata: BTreeMap::new(),
            lines: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut file: UncertaintyFile = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("line {}: {e}", e.line())))?;
        file.lines = entry_lines(text);
        Ok(file)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"frame\": {},", json_list(&self.frame));
        let _ = writeln!(out, "  \"kind\": {},", json(&self.kind));
        out.push_str("  \"entries\": [");
        for (i, e) in self.entries.iter().enumerate() {
            out.push_str(if i == 0 { "\n" } else { ",\n" });
            let _ = write!(
                out,
                "    {{\"subset\": {}, \"value\": {}}}",
                json_list(&e.subset),
                json(&e.value)
            );
        }
        out.push_str(if self.entries.is_empty() {
            "]"
        } else {
            "\n  ]"
        });
        if !self.metadata.is_empty() {
            let _ = write!(out, ",\n  \"metadata\": {}", json(&self.metadata));
        }
        out.push_str("\n}\n");
        out
    }

    pub fn frame(&self) -> Result<Frame, CliError> {
        Frame::new(self.frame.iter().cloned()).map_err(|e| CliError::Input(format!("frame: {e}")))
    }

    fn locate(&self, index: usize) -> String {
        match self.lines.get(index) {
            Some(line) => format!("entry {} (line {line})", index + 1),
            None => format!("entry {}", index + 1),
        }
    }

    /// Entries as `(subset, value)` pairs, atom names resolved.
    fn resolved(&self, frame: &Frame) -> Result<Vec<(Subset, f64)>, CliError> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let subset = frame
                    .parse_subset(&e.subset)
                    .map_err(|err| CliError::Input(format!("{}: {err}", self.locate(i))))?;
                if !e.value.is_finite() {
                    return Err(CliError::Input(format!(
                        "{}: non-finite value",
                        self.locate(i)
                    )));
                }
                Ok((subset, e.value))
            })
            .collect()
    }

    /// Dense vector for sparse kinds; repeated subsets are an error.
    fn dense_sparse(&self, frame: &Frame) -> Result<Vec<f64>, CliError> {
        let mut values = vec![0.0; frame.size()];
        let mut seen = vec![false; frame.size()];
        for (i, (a, x)) in self.resolved(frame)?.into_iter().enumerate() {
            if std::mem::replace(&mut seen[a.index()], true) {
                return Err(CliError::Input(format!(
                    "{}: subset {} listed twice",
                    self.locate(i),
                    frame.display(a)
                )));
            }
            values[a.index()] = x;
        }
        Ok(values)
    }

    /// Dense table for bel/pl/capacity kinds: every non-empty subset exactly
    /// once, the empty set optional.
    fn dense_table(&self, frame: &Frame) -> Result<Vec<f64>, CliError> {
        let mut values = vec![0.0; frame.size()];
        let mut seen = vec![false; frame.size()];
        for (i, (a, x)) in self.resolved(frame)?.into_iter().enumerate() {
            if std::mem::replace(&mut seen[a.index()], true) {
                return Err(CliError::Input(format!(
                    "{}: subset {} listed twice",
                    self.locate(i),
                    frame.display(a)
                )));
            }
            values[a.index()] = x;
        }
        if let Some(missing) = (1..frame.size()).find(|&a| !seen[a]) {
            return Err(CliError::Input(format!(
                "missing entry for subset {}",
                frame.display(Subset::from_bits(missing as u32))
            )));
        }
        Ok(values)
    }

    /// One value per atom for probability/possibility kinds; unlisted
    /// atoms are zero.
    fn atom_values(&self, frame: &Frame) -> Result<Vec<f64>, CliError> {
        let mut values = vec![0.0; frame.len()];
        let mut seen = vec![false; frame.len()];
        for (i, (a, x)) in self.resolved(frame)?.into_iter().enumerate() {
            if a.len() != 1 {
                return Err(CliError::Input(format!(
                    "{}: {} entries must be singletons, got {}",
                    self.locate(i),
                    self.kind.as_str(),
                    frame.display(a)
                )));
            }
            let atom = a.atoms().next().expect("singleton");
            if std::mem::replace(&mut seen[atom], true) {
                return Err(CliError::Input(format!(
                    "{}: atom {} listed twice",
                    self.locate(i),
                    frame.atom(atom)
                )));
            }
            values[atom] = x;
        }
        Ok(values)
    }

    fn capacity_kind(&self) -> Result<CapacityKind, CliError> {
        match self.kind {
            FileKind::Bel => Ok(CapacityKind::Belief),
            FileKind::Pl => Ok(CapacityKind::Plausibility),
            _ => match self.metadata.get(CAPACITY_KIND_KEY) {
                Some(k) => k.parse().map_err(CliError::Input),
                None => Ok(CapacityKind::GenericMonotone),
            },
        }
    }
}

/// Line number (1-based) of every `"subset":` key after `"entries"`.
fn entry_lines(text: &str) -> Vec<usize> {
    let Some(start) = text.find("\"entries\"") else {
        return Vec::new();
    };
    let mut lines = Vec::new();
    let mut line = 1 + text[..start].matches('\n').count();
    let mut rest = &text[start..];
    while let Some(pos) = rest.find("\"subset\"") {
        line += rest[..pos].matches('\n').count();
        rest = &rest[pos + "\"subset\"".len()..];
        if rest.trim_start().starts_with(':') {
            lines.push(line);
        }
    }
    lines
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

/// A flat JSON array with `", "` between items.
fn json_list<T: Serialize>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(json).collect();
    format!("[{}]", parts.join(", "))
}

fn mass_input(file: &UncertaintyFile, frame: &Frame) -> Result<MassFunction, CliError> {
    let values = file.dense_sparse(frame)?;
    let m = MassFunction::new(frame.clone(), values).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(m)
}

/// What an uncertainty file holds once its entries are resolved.
#[derive(Debug, Clone)]
pub struct Model {
    pub capacity: Capacity,
    /// Basic belief masses when the file stored them directly.
    pub masses: Option<MassFunction>,
}

impl Model {
    /// Basic belief masses: stored ones, or the `v`/`w` transform picked
    /// by the capacity kind.
    pub fn basic_masses(&self) -> MassFunction {
        self.masses
            .clone()
            .unwrap_or_else(|| moebius::basic_masses(&self.capacity))
    }
}

/// Resolves a file into a capacity. With `strict`, structural violations
/// and negative `mass` entries are input errors; otherwise they are left
/// for [`capacity::validate`] to report.
pub fn load(file: &UncertaintyFile, strict: bool) -> Result<Model, CliError> {
    let frame = file.frame()?;
    let lib = |e: crate::Error| CliError::Input(e.to_string());
    let model = match file.kind {
        FileKind::Mass => {
            let m = mass_input(file, &frame)?;
            let capacity = if strict {
                capacity::from_mass(&m).map_err(lib)?
            } else {
                moebius::zeta_from_v(&m).with_kind(CapacityKind::Belief)
            };
            Model {
                capacity,
                masses: Some(m),
            }
        }
        FileKind::V | FileKind::W => {
            let m = mass_input(file, &frame)?;
            let mut capacity = if file.kind == FileKind::V {
                moebius::zeta_from_v(&m)
            } else {
                moebius::zeta_from_w(&m)
            };
            if file.metadata.contains_key(CAPACITY_KIND_KEY) {
                capacity = capacity.with_kind(file.capacity_kind()?);
            }
            Model {
                capacity,
                masses: Some(m),
            }
        }
        FileKind::Bel | FileKind::Pl | FileKind::Capacity => {
            let values = file.dense_table(&frame)?;
            let capacity = Capacity::new(frame, file.capacity_kind()?, values).map_err(lib)?;
            Model {
                capacity,
                masses: None,
            }
        }
        FileKind::Probability => {
            let p = file.atom_values(&frame)?;
            Model {
                capacity: capacity::from_probability(&frame, &p).map_err(lib)?,
                masses: None,
            }
        }
        FileKind::Possibility => {
            let pi = file.atom_values(&frame)?;
            let pi = PossibilityDistribution::new(frame, pi).map_err(lib)?;
            let model = capacity::from_possibility(&pi);
            Model {
                capacity: model.possibility,
                masses: Some(model.masses),
            }
        }
    };
    if strict {
        let report = capacity::validate(&model.capacity, Strictness::Structural);
        if !report.is_valid() {
            let lines = report.render(model.capacity.frame());
            return Err(CliError::Input(format!(
                "invalid credibility function:\n  {}",
                lines.join("\n  ")
            )));
        }
    }
    Ok(model)
}

/// Sparse entries: every subset with a non-zero value, ascending.
pub fn sparse_entries(frame: &Frame, values: &[f64]) -> Vec<Entry> {
    values
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0.0)
        .map(|(a, &x)| entry(frame, Subset::from_bits(a as u32), x))
        .collect()
}

/// Table entries: every non-empty subset, ascending.
pub fn table_entries(frame: &Frame, values: &[f64]) -> Vec<Entry> {
    values
        .iter()
        .enumerate()
        .skip(1)
        .map(|(a, &x)| entry(frame, Subset::from_bits(a as u32), x))
        .collect()
}

fn entry(frame: &Frame, a: Subset, value: f64) -> Entry {
    Entry {
        subset: frame.names(a).into_iter().map(String::from).collect(),
        value,
    }
}

pub fn mass_file(m: &MassFunction, kind: FileKind) -> UncertaintyFile {
    debug_assert!(kind.is_sparse());
    UncertaintyFile::new(m.frame(), kind, sparse_entries(m.frame(), m.masses()))
}

/// `v` or `w` masses of a capacity, tagged with the capacity's kind so that
/// reading the file back restores it.
pub fn signed_mass_file(cr: &Capacity, kind: FileKind) -> UncertaintyFile {
    let m = match kind {
        FileKind::W => moebius::moebius_w(cr),
        _ => moebius::moebius_v(cr),
    };
    let mut file = mass_file(&m, kind);
    file.metadata
        .insert(CAPACITY_KIND_KEY.into(), cr.kind().as_str().into());
    file
}

pub fn capacity_file(cr: &Capacity, kind: FileKind) -> UncertaintyFile {
    debug_assert!(kind.is_table());
    let mut file = UncertaintyFile::new(cr.frame(), kind, table_entries(cr.frame(), cr.values()));
    if kind == FileKind::Capacity {
        file.metadata
            .insert(CAPACITY_KIND_KEY.into(), cr.kind().as_str().into());
    }
    file
}

pub fn probability_file(frame: &Frame, p: &[f64]) -> UncertaintyFile {
    let entries = p
        .iter()
        .enumerate()
        .map(|(i, &x)| entry(frame, Subset::singleton(i), x))
        .collect();
    UncertaintyFile::new(frame, FileKind::Probability, entries)
}

/// Utility matrix on disk: one row of utilities (in frame order) per act.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UtilityFile {
    pub frame: Vec<String>,
    pub acts: Vec<ActRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActRow {
    pub name: String,
    pub utilities: Vec<f64>,
}

impl UtilityFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("line {}: {e}", e.line())))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"frame\": {},", json_list(&self.frame));
        out.push_str("  \"acts\": [");
        for (i, act) in self.acts.iter().enumerate() {
            out.push_str(if i == 0 { "\n" } else { ",\n" });
            let _ = write!(
                out,
                "    {{\"name\": {}, \"utilities\": {}}}",
                json(&act.name),
                json_list(&act.utilities)
            );
        }
        out.push_str(if self.acts.is_empty() {
            "]\n}\n"
        } else {
            "\n  ]\n}\n"
        });
        out
    }

    pub fn problem(&self) -> Result<DecisionProblem, CliError> {
        let frame = Frame::new(self.frame.iter().cloned())
            .map_err(|e| CliError::Input(format!("utility frame: {e}")))?;
        DecisionProblem::new(
            frame,
            self.acts.iter().map(|a| a.name.clone()).collect(),
            self.acts.iter().map(|a| a.utilities.clone()).collect(),
        )
        .map_err(|e| CliError::Input(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
  "frame": ["a", "b", "c"],
  "kind": "mass",
  "entries": [
    {"subset": ["a"], "value": 0.4},
    {"subset": ["a", "b"], "value": 0.3},
    {"subset": ["a", "b", "c"], "value": 0.3}
  ]
}
"#;

    #[test]
    fn writes_what_it_reads() {
        let file = UncertaintyFile::parse(SAMPLE).unwrap();
        assert_eq!(file.to_text(), SAMPLE);
        assert_eq!(file.lines, vec![5, 6, 7]);
    }

    #[test]
    fn metadata_roundtrip() {
        let mut file = UncertaintyFile::parse(SAMPLE).unwrap();
        file.metadata.insert("source".into(), "expert \"A\"".into());
        let again = UncertaintyFile::parse(&file.to_text()).unwrap();
        assert_eq!(again.metadata, file.metadata);
        assert_eq!(again.entries, file.entries);
    }

    #[test]
    fn unknown_atom_is_located() {
        let text = SAMPLE.replace("[\"a\", \"b\"]", "[\"a\", \"d\"]");
        let file = UncertaintyFile::parse(&text).unwrap();
        let err = load(&file, true).unwrap_err().to_string();
        assert!(err.contains("entry 2 (line 6)"), "{err}");
        assert!(err.contains("unknown atom `d`"), "{err}");
    }

    #[test]
    fn syntax_error_has_line() {
        let text = SAMPLE.replace(
            "0.3},\n    {\"subset\": [\"a\", \"b\", \"c\"]",
            "0.3}\n    {\"subset\": [\"a\", \"b\", \"c\"]",
        );
        let err = UncertaintyFile::parse(&text).unwrap_err().to_string();
        assert!(err.starts_with("line 7"), "{err}");
    }

    #[test]
    fn table_needs_every_subset() {
        let text = r#"{"frame": ["a", "b"], "kind": "bel", "entries": [
            {"subset": ["a"], "value": 0.2},
            {"subset": ["a", "b"], "value": 1}
        ]}"#;
        let err = load(&UncertaintyFile::parse(text).unwrap(), true)
            .unwrap_err()
            .to_string();
        assert!(err.contains("missing entry for subset {b}"), "{err}");
    }

    #[test]
    fn duplicates_rejected() {
        let text = SAMPLE.replace("{\"subset\": [\"a\", \"b\", \"c\"]", "{\"subset\": [\"a\"]");
        let err = load(&UncertaintyFile::parse(&text).unwrap(), true)
            .unwrap_err()
            .to_string();
        assert!(err.contains("listed twice"), "{err}");
    }

    #[test]
    fn singletons_only_for_probability() {
        let text = r#"{"frame": ["a", "b"], "kind": "probability", "entries": [
            {"subset": ["a", "b"], "value": 1}
        ]}"#;
        assert!(load(&UncertaintyFile::parse(text).unwrap(), true).is_err());
    }

    #[test]
    fn negative_mass_strict_and_lenient() {
        let text = r#"{"frame": ["a", "b"], "kind": "mass", "entries": [
            {"subset": ["a"], "value": 0.6},
            {"subset": ["b"], "value": 0.6},
            {"subset": ["a", "b"], "value": -0.2}
        ]}"#;
        let file = UncertaintyFile::parse(text).unwrap();
        assert!(load(&file, true).is_err());
        let model = load(&file, false).unwrap();
        assert_eq!(model.capacity.kind(), CapacityKind::Belief);
        let report = capacity::validate(&model.capacity, Strictness::Kind);
        assert!(report.has(capacity::Property::NonnegativeV));
    }

    #[test]
    fn utility_file_roundtrip() {
        let u = UtilityFile {
            frame: vec!["a".into(), "b".into()],
            acts: vec![
                ActRow {
                    name: "x".into(),
                    utilities: vec![1.0, -2.5],
                },
                ActRow {
                    name: "y".into(),
                    utilities: vec![0.0, 3.0],
                },
            ],
        };
        assert_eq!(UtilityFile::parse(&u.to_text()).unwrap(), u);
        assert_eq!(u.problem().unwrap().acts(), ["x", "y"]);
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = SAMPLE.replace("\"kind\"", "\"kynd\"");
        assert!(UncertaintyFile::parse(&text).is_err());
    }
}
