//! JSON presentation files.
//!
//! An algebra file looks like
//!
//! ```json
//! {
//!   "kind": "lie",
//!   "basis": [{"name": "e", "degree": 0}, {"name": "f", "degree": 0}],
//!   "bracket": [["e", "f", {"f": "1"}], ["f", "e", {"f": "-1"}]]
//! }
//! ```
//!
//! Table entries are `[i, j, {k: coefficient}]` where `i`, `j` are basis
//! names or indices, `k` is a name or a decimal index, and coefficients are
//! exact rationals such as `"-1/2"`. Tables are stored in full: a bracket
//! entry does not imply its mirror. `unit` names the unit if there is one.
//! Module files carry `basis`, `left`, `right` and `bracket_action`, with
//! `left`/`bracket_action` indexed `[algebra, module]` and `right` indexed
//! `[module, algebra]`.

use std::collections::BTreeMap;
use std::path::Path;

use hoalg::algebras::{AlgebraPresentation, Kind, ModulePresentation, Table};
use hoalg::graded::GradedBasis;
use hoalg::{Scalar, Q};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub name: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Key {
    Index(usize),
    Name(String),
}

pub type Entry = (Key, Key, BTreeMap<String, String>);

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub kind: String,
    pub basis: Vec<BasisEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Key>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub product: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bracket: Vec<Entry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    #[serde(default = "module_kind")]
    pub kind: String,
    pub basis: Vec<BasisEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub left: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub right: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bracket_action: Vec<Entry>,
}

fn module_kind() -> String {
    "module".into()
}

pub fn parse_kind(s: &str) -> Option<Kind> {
    [Kind::Associative, Kind::Commutative, Kind::Lie, Kind::Gerstenhaber]
        .into_iter()
        .find(|k| k.name() == s)
}

/// Accepts `p/q` and integers, with an ASCII or Unicode minus sign.
pub fn parse_rational(s: &str) -> Result<Q, String> {
    let t = s.trim().replace('−', "-");
    t.parse().map_err(|e| format!("bad coefficient {s:?}: {e}"))
}

fn graded_basis(entries: &[BasisEntry]) -> Result<GradedBasis, String> {
    GradedBasis::new(entries.iter().map(|b| (b.name.clone(), b.degree)).collect()).map_err(|e| e.to_string())
}

fn resolve(key: &Key, basis: &GradedBasis, what: &str) -> Result<usize, String> {
    match key {
        Key::Index(i) if *i < basis.len() => Ok(*i),
        Key::Index(i) => Err(format!("{what} index {i} out of range")),
        Key::Name(n) => basis.index_of(n).ok_or_else(|| format!("unknown {what} {n:?}")),
    }
}

fn resolve_output(k: &str, basis: &GradedBasis, what: &str) -> Result<usize, String> {
    match basis.index_of(k) {
        Some(i) => Ok(i),
        None => match k.parse::<usize>() {
            Ok(i) if i < basis.len() => Ok(i),
            _ => Err(format!("unknown {what} {k:?}")),
        },
    }
}

fn table(entries: &[Entry], left: &GradedBasis, right: &GradedBasis, out: &GradedBasis, name: &str) -> Result<Table<Q>, String> {
    let mut t = Table::new();
    for (n, (i, j, values)) in entries.iter().enumerate() {
        let ctx = |m: String| format!("{name} entry {n}: {m}");
        let i = resolve(i, left, "basis element").map_err(ctx)?;
        let j = resolve(j, right, "basis element").map_err(ctx)?;
        for (k, c) in values {
            let k = resolve_output(k, out, "output").map_err(ctx)?;
            t.add(i, j, k, parse_rational(c).map_err(ctx)?);
        }
    }
    Ok(t)
}

impl AlgebraFile {
    pub fn to_presentation(&self) -> Result<AlgebraPresentation<Q>, String> {
        let kind = parse_kind(&self.kind).ok_or_else(|| format!("unknown kind {:?}", self.kind))?;
        let basis = graded_basis(&self.basis)?;
        let unit = self.unit.as_ref().map(|u| resolve(u, &basis, "unit")).transpose()?;
        Ok(AlgebraPresentation {
            kind,
            product: table(&self.product, &basis, &basis, &basis, "product")?,
            bracket: table(&self.bracket, &basis, &basis, &basis, "bracket")?,
            basis,
            unit,
        })
    }

    pub fn from_presentation(a: &AlgebraPresentation<Q>) -> Self {
        AlgebraFile {
            kind: a.kind.name().into(),
            basis: entries_of(&a.basis),
            unit: a.unit.map(|u| Key::Name(a.basis.name(u).into())),
            product: entries(&a.product, &a.basis, &a.basis, &a.basis),
            bracket: entries(&a.bracket, &a.basis, &a.basis, &a.basis),
        }
    }
}

impl ModuleFile {
    pub fn to_presentation(&self, a: &AlgebraPresentation<Q>) -> Result<ModulePresentation<Q>, String> {
        if self.kind != "module" {
            return Err(format!("expected kind \"module\", got {:?}", self.kind));
        }
        let basis = graded_basis(&self.basis)?;
        Ok(ModulePresentation {
            left: table(&self.left, &a.basis, &basis, &basis, "left")?,
            right: table(&self.right, &basis, &a.basis, &basis, "right")?,
            bracket_action: table(&self.bracket_action, &a.basis, &basis, &basis, "bracket_action")?,
            basis,
        })
    }

    pub fn from_presentation(a: &AlgebraPresentation<Q>, m: &ModulePresentation<Q>) -> Self {
        ModuleFile {
            kind: module_kind(),
            basis: entries_of(&m.basis),
            left: entries(&m.left, &a.basis, &m.basis, &m.basis),
            right: entries(&m.right, &m.basis, &a.basis, &m.basis),
            bracket_action: entries(&m.bracket_action, &a.basis, &m.basis, &m.basis),
        }
    }
}

fn entries_of(b: &GradedBasis) -> Vec<BasisEntry> {
    b.elements()
        .iter()
        .map(|(name, degree)| BasisEntry { name: name.clone(), degree: *degree })
        .collect()
}

fn entries(t: &Table<Q>, left: &GradedBasis, right: &GradedBasis, out: &GradedBasis) -> Vec<Entry> {
    let mut grouped: BTreeMap<(usize, usize), BTreeMap<String, String>> = BTreeMap::new();
    for (i, j, k, x) in t.iter() {
        if *x != Q::from_count(0) {
            grouped.entry((i, j)).or_default().insert(out.name(k).into(), x.to_string());
        }
    }
    grouped
        .into_iter()
        .map(|((i, j), v)| (Key::Name(left.name(i).into()), Key::Name(right.name(j).into()), v))
        .collect()
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse { path: path.into(), msg: e.to_string() })
}

/// Reads an algebra file. Malformed tables are parse errors; axioms are
/// not checked here.
pub fn load_algebra(path: &Path) -> Result<AlgebraPresentation<Q>, CliError> {
    let file: AlgebraFile = parse_json(path, &read(path)?)?;
    file.to_presentation().map_err(|msg| CliError::Parse { path: path.into(), msg })
}

pub fn load_module(path: &Path, a: &AlgebraPresentation<Q>) -> Result<ModulePresentation<Q>, CliError> {
    let file: ModuleFile = parse_json(path, &read(path)?)?;
    file.to_presentation(a).map_err(|msg| CliError::Parse { path: path.into(), msg })
}

/// Presentation files with one basis entry or table entry per line.
pub fn to_file_text<T: Serialize>(value: &T) -> String {
    let serde_json::Value::Object(fields) = serde_json::to_value(value).expect("presentation types serialise") else {
        unreachable!("presentation files are objects")
    };
    let compact = |v: &serde_json::Value| serde_json::to_string(v).expect("json values serialise");
    let lines: Vec<String> = fields
        .iter()
        .map(|(k, v)| match v {
            serde_json::Value::Array(items) if !items.is_empty() => {
                let items: Vec<String> = items.iter().map(|x| format!("    {}", compact(x))).collect();
                format!("  {}: [\n{}\n  ]", compact(&k.clone().into()), items.join(",\n"))
            }
            _ => format!("  {}: {}", compact(&k.clone().into()), compact(v)),
        })
        .collect();
    format!("{{\n{}\n}}\n", lines.join(",\n"))
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialise");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use hoalg::algebras::examples::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("−1/2").unwrap(), Q::new((-1).into(), 2.into()));
        assert_eq!(parse_rational("3").unwrap(), Q::from_integer(3.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn round_trip() {
        for a in [sl2::<Q>(), upper_triangular(), lambda_aff1(), exterior(2)] {
            let text = to_file_text(&AlgebraFile::from_presentation(&a));
            let back: AlgebraFile = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_presentation().unwrap(), a);
            let m = ModulePresentation::regular(&a);
            let text = to_file_text(&ModuleFile::from_presentation(&a, &m));
            let back: ModuleFile = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_presentation(&a).unwrap(), m);
        }
    }

    #[test]
    fn indices_and_names_mix() {
        let text = r#"{"kind": "lie", "basis": [{"name": "e", "degree": 0}, {"name": "f", "degree": 0}],
            "bracket": [[0, "f", {"1": "1"}], ["f", 0, {"f": "-1"}]]}"#;
        let f: AlgebraFile = serde_json::from_str(text).unwrap();
        assert_eq!(f.to_presentation().unwrap(), aff1());
    }

    #[test]
    fn bad_references() {
        let text = r#"{"kind": "lie", "basis": [{"name": "e", "degree": 0}], "bracket": [["e", "g", {"e": "1"}]]}"#;
        let f: AlgebraFile = serde_json::from_str(text).unwrap();
        assert!(f.to_presentation().unwrap_err().contains("unknown basis element \"g\""));
        let text = r#"{"kind": "magma", "basis": []}"#;
        let f: AlgebraFile = serde_json::from_str(text).unwrap();
        assert!(f.to_presentation().is_err());
    }
}
