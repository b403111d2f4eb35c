//! JSON structure files.
//!
//! ```json
//! {
//!   "schema_version": "1",
//!   "kind": "hyperring",
//!   "name": "signs",
//!   "labels": ["0", "1", "-1"],
//!   "body": { "size": 3, "partial": false, "add": [[[0], [1], [2]], ..], "mul": [[0, 0, 0], ..] }
//! }
//! ```
//!
//! Element `0` is the zero and `1` the one. Hypersums are sorted index
//! arrays; `k0` and `units` are sorted index arrays. Output is canonical:
//! fixed top-level order, sorted body keys, short arrays on one line.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::ddhyper::PartialDemifield;
use crate::error::{Error, Result};
use crate::fuzzy::{FiniteFuzzyRing, FuzzyRing};
use crate::hyper::FiniteHyperring;
use crate::matroid::GPFunction;
use crate::ordgrp::{OGElem, OGSubset, ZariskiSystem};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Hyperring,
    Fuzzyring,
    Gp,
    Zariski,
    PartialDemifield,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Hyperring => "hyperring",
            Kind::Fuzzyring => "fuzzyring",
            Kind::Gp => "gp",
            Kind::Zariski => "zariski",
            Kind::PartialDemifield => "partial-demifield",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub schema_version: String,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    pub body: Value,
}

/// Coefficients of a GP function or Zariski system.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Hyperring(FiniteHyperring),
    Fuzzyring(FiniteFuzzyRing),
    /// The symbolic `K_Z`; values are written `"-inf"`, `"3"` or `"[-inf,3]"`.
    KZ,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Structure {
    Hyperring(FiniteHyperring),
    Fuzzyring(FiniteFuzzyRing),
    Gp { phi: GPFunction, coefficient: Coefficient },
    ZariskiFinite { system: ZariskiSystem<usize>, coefficient: FiniteFuzzyRing },
    ZariskiKZ(ZariskiSystem<OGSubset<i64>>),
    PartialDemifield(PartialDemifield),
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn field<T: serde::de::DeserializeOwned>(body: &Value, key: &str) -> Result<T> {
    let v = body.get(key).ok_or_else(|| parse_err(format!("body is missing `{key}`")))?;
    serde_json::from_value(v.clone()).map_err(|e| parse_err(format!("bad `{key}`: {e}")))
}

fn field_or<T: serde::de::DeserializeOwned>(body: &Value, key: &str, default: T) -> Result<T> {
    if body.get(key).is_some() {
        field(body, key)
    } else {
        Ok(default)
    }
}

fn check_rows<T>(rows: &[Vec<T>], n: usize, table: &'static str) -> Result<()> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::TableShape {
            table,
            expected: n * n,
            found: rows.iter().map(Vec::len).sum(),
        });
    }
    Ok(())
}

fn hyper_body(h: &FiniteHyperring) -> Value {
    json!({
        "size": h.size(),
        "partial": h.is_partial(),
        "add": h.add_nested(),
        "mul": h.mul_nested(),
    })
}

fn parse_hyper(body: &Value, labels: &[String]) -> Result<FiniteHyperring> {
    let n: usize = field(body, "size")?;
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    let add: Vec<Vec<Vec<usize>>> = field(body, "add")?;
    let mul: Vec<Vec<usize>> = field(body, "mul")?;
    check_rows(&add, n, "add")?;
    check_rows(&mul, n, "mul")?;
    let h = FiniteHyperring::new(&add, &mul, field_or(body, "partial", false)?)?;
    with_labels_h(h, labels)
}

fn with_labels_h(h: FiniteHyperring, labels: &[String]) -> Result<FiniteHyperring> {
    if labels.is_empty() {
        return Ok(h);
    }
    if labels.len() != h.size() {
        return Err(parse_err("labels do not match the carrier size"));
    }
    Ok(h.with_labels(labels.to_vec()))
}

fn fuzzy_body(k: &FiniteFuzzyRing) -> Value {
    json!({
        "size": k.size(),
        "add": k.add_nested(),
        "mul": k.mul_nested(),
        "k0": k.null_set(),
        "epsilon": k.epsilon(),
        "units": k.units(),
    })
}

fn parse_fuzzy(body: &Value, labels: &[String]) -> Result<FiniteFuzzyRing> {
    let n: usize = field(body, "size")?;
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    let add: Vec<Vec<usize>> = field(body, "add")?;
    let mul: Vec<Vec<usize>> = field(body, "mul")?;
    check_rows(&add, n, "add")?;
    check_rows(&mul, n, "mul")?;
    let k0: Vec<usize> = field(body, "k0")?;
    let eps: Option<usize> = field_or(body, "epsilon", None)?;
    let k = FiniteFuzzyRing::new(&add, &mul, &k0, eps)?;
    if body.get("units").is_some() {
        let units: Vec<usize> = field(body, "units")?;
        if units != k.units() {
            return Err(parse_err("`units` does not match the unit group of the tables"));
        }
    }
    if labels.is_empty() {
        return Ok(k);
    }
    if labels.len() != n {
        return Err(parse_err("labels do not match the carrier size"));
    }
    Ok(k.with_labels(labels.to_vec()))
}

fn coefficient_value(c: &Coefficient) -> Value {
    match c {
        Coefficient::Hyperring(h) => {
            serde_json::to_value(StructureFile::new(Kind::Hyperring, None, h.labels().to_vec(), hyper_body(h)))
                .expect("serializable")
        }
        Coefficient::Fuzzyring(k) => {
            serde_json::to_value(StructureFile::new(Kind::Fuzzyring, None, k.labels().to_vec(), fuzzy_body(k)))
                .expect("serializable")
        }
        Coefficient::KZ => json!("kz"),
    }
}

fn parse_coefficient(v: &Value) -> Result<Coefficient> {
    if v.as_str() == Some("kz") {
        return Ok(Coefficient::KZ);
    }
    let f: StructureFile = serde_json::from_value(v.clone()).map_err(|e| parse_err(format!("bad coefficient: {e}")))?;
    match f.into_structure()? {
        Structure::Hyperring(h) => Ok(Coefficient::Hyperring(h)),
        Structure::Fuzzyring(k) => Ok(Coefficient::Fuzzyring(k)),
        _ => Err(parse_err("coefficient must be a hyperring, a fuzzyring or \"kz\"")),
    }
}

pub fn format_kz(a: OGSubset<i64>) -> String {
    let e = |x: OGElem<i64>| match x {
        OGElem::Bottom => "-inf".to_string(),
        OGElem::Elem(v) => v.to_string(),
    };
    match a {
        OGSubset::Singleton(x) => e(x),
        OGSubset::DownInterval(x) => format!("[-inf,{}]", e(x)),
    }
}

pub fn parse_kz(s: &str) -> Result<OGSubset<i64>> {
    let elem = |t: &str| -> Result<OGElem<i64>> {
        let t = t.trim();
        if t == "-inf" {
            Ok(OGElem::Bottom)
        } else {
            t.parse().map(OGElem::Elem).map_err(|_| parse_err(format!("bad K_Z value `{s}`")))
        }
    };
    let s2 = s.trim();
    if let Some(rest) = s2.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let (lo, hi) = rest.split_once(',').ok_or_else(|| parse_err(format!("bad K_Z value `{s}`")))?;
        if lo.trim() != "-inf" {
            return Err(parse_err(format!("K_Z intervals start at -inf: `{s}`")));
        }
        Ok(OGSubset::down(elem(hi)?))
    } else {
        Ok(OGSubset::Singleton(elem(s2)?))
    }
}

impl StructureFile {
    pub fn new(kind: Kind, name: Option<String>, labels: Vec<String>, body: Value) -> Self {
        Self { schema_version: SCHEMA_VERSION.into(), kind, name, labels, body }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: StructureFile = serde_json::from_str(text).map_err(|e| parse_err(format!("invalid structure file: {e}")))?;
        if f.schema_version != SCHEMA_VERSION {
            return Err(parse_err(format!("unsupported schema_version `{}`", f.schema_version)));
        }
        Ok(f)
    }

    pub fn from_hyperring(h: &FiniteHyperring, name: Option<&str>) -> Self {
        Self::new(Kind::Hyperring, name.map(Into::into), h.labels().to_vec(), hyper_body(h))
    }

    pub fn from_fuzzyring(k: &FiniteFuzzyRing, name: Option<&str>) -> Self {
        Self::new(Kind::Fuzzyring, name.map(Into::into), k.labels().to_vec(), fuzzy_body(k))
    }

    pub fn from_gp(phi: &GPFunction, c: &Coefficient, name: Option<&str>) -> Self {
        let body = json!({
            "coefficient": coefficient_value(c),
            "ground_size": phi.ground_size,
            "rank": phi.rank,
            "values": phi.values,
        });
        Self::new(Kind::Gp, name.map(Into::into), Vec::new(), body)
    }

    pub fn from_zariski_kz(s: &ZariskiSystem<OGSubset<i64>>, name: Option<&str>) -> Self {
        let gens: Vec<Vec<String>> = s.generators.iter().map(|f| f.iter().map(|&a| format_kz(a)).collect()).collect();
        let body = json!({ "coefficient": "kz", "points": s.points, "generators": gens });
        Self::new(Kind::Zariski, name.map(Into::into), Vec::new(), body)
    }

    pub fn from_zariski_finite(s: &ZariskiSystem<usize>, k: &FiniteFuzzyRing, name: Option<&str>) -> Self {
        let body = json!({
            "coefficient": coefficient_value(&Coefficient::Fuzzyring(k.clone())),
            "points": s.points,
            "generators": s.generators,
        });
        Self::new(Kind::Zariski, name.map(Into::into), Vec::new(), body)
    }

    pub fn from_partial_demifield(p: &PartialDemifield, name: Option<&str>) -> Self {
        let n = p.size;
        let rows = |t: &[usize]| -> Vec<Vec<usize>> { t.chunks(n).map(<[usize]>::to_vec).collect() };
        let body = json!({
            "hyperfield": coefficient_value(&Coefficient::Hyperring(p.hyperfield.clone())),
            "size": n,
            "add": rows(&p.add),
            "mul": rows(&p.mul),
            "embedding": p.embedding,
        });
        Self::new(Kind::PartialDemifield, name.map(Into::into), p.labels.clone(), body)
    }

    pub fn into_structure(self) -> Result<Structure> {
        let b = &self.body;
        Ok(match self.kind {
            Kind::Hyperring => Structure::Hyperring(parse_hyper(b, &self.labels)?),
            Kind::Fuzzyring => Structure::Fuzzyring(parse_fuzzy(b, &self.labels)?),
            Kind::Gp => {
                let coefficient = parse_coefficient(b.get("coefficient").ok_or_else(|| parse_err("gp needs a coefficient"))?)?;
                let phi = GPFunction { ground_size: field(b, "ground_size")?, rank: field(b, "rank")?, values: field(b, "values")? };
                Structure::Gp { phi, coefficient }
            }
            Kind::Zariski => {
                let points: Vec<String> = field(b, "points")?;
                match parse_coefficient(b.get("coefficient").ok_or_else(|| parse_err("zariski needs a coefficient"))?)? {
                    Coefficient::KZ => {
                        let raw: Vec<Vec<String>> = field(b, "generators")?;
                        let gens = raw
                            .iter()
                            .map(|f| f.iter().map(|s| parse_kz(s)).collect::<Result<Vec<_>>>())
                            .collect::<Result<Vec<_>>>()?;
                        Structure::ZariskiKZ(ZariskiSystem::new(points, gens)?)
                    }
                    Coefficient::Fuzzyring(k) => {
                        let gens: Vec<Vec<usize>> = field(b, "generators")?;
                        if gens.iter().flatten().any(|&v| v >= k.size()) {
                            return Err(parse_err("generator value out of range"));
                        }
                        Structure::ZariskiFinite { system: ZariskiSystem::new(points, gens)?, coefficient: k }
                    }
                    Coefficient::Hyperring(_) => return Err(parse_err("zariski coefficients are fuzzy rings")),
                }
            }
            Kind::PartialDemifield => {
                let h = match parse_coefficient(b.get("hyperfield").ok_or_else(|| parse_err("missing `hyperfield`"))?)? {
                    Coefficient::Hyperring(h) => h,
                    _ => return Err(parse_err("`hyperfield` must be a hyperring file")),
                };
                let n: usize = field(b, "size")?;
                let add: Vec<Vec<usize>> = field(b, "add")?;
                let mul: Vec<Vec<usize>> = field(b, "mul")?;
                check_rows(&add, n, "add")?;
                check_rows(&mul, n, "mul")?;
                let p = PartialDemifield::new(h, n, add.concat(), mul.concat(), field(b, "embedding")?)?;
                let p = if self.labels.is_empty() {
                    p
                } else if self.labels.len() == n {
                    p.with_labels(self.labels.clone())
                } else {
                    return Err(parse_err("labels do not match the carrier size"));
                };
                Structure::PartialDemifield(p)
            }
        })
    }

    /// Canonical text, newline-terminated.
    pub fn to_canonical(&self) -> String {
        let mut out = String::from("{\n");
        let mut fields = vec![
            ("schema_version", json!(self.schema_version)),
            ("kind", json!(self.kind.as_str())),
        ];
        if let Some(n) = &self.name {
            fields.push(("name", json!(n)));
        }
        if !self.labels.is_empty() {
            fields.push(("labels", json!(self.labels)));
        }
        fields.push(("body", self.body.clone()));
        let last = fields.len() - 1;
        for (i, (k, v)) in fields.iter().enumerate() {
            let _ = write!(out, "  {}: ", json!(k));
            write_value(v, 1, &mut out);
            out.push_str(if i == last { "\n" } else { ",\n" });
        }
        out.push_str("}\n");
        out
    }
}

const TOP_LEVEL: [&str; 5] = ["schema_version", "kind", "name", "labels", "body"];

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && (!x.is_array() || is_flat(x))),
        Value::Object(_) => false,
        _ => true,
    }
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth + 1);
    let close = "  ".repeat(depth);
    match v {
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            let last = m.len() - 1;
            let mut entries: Vec<_> = m.iter().collect();
            if m.contains_key("schema_version") {
                // embedded structure files keep the top-level field order
                entries.sort_by_key(|(k, _)| TOP_LEVEL.iter().position(|t| t == k).unwrap_or(TOP_LEVEL.len()));
            }
            for (i, (k, x)) in entries.into_iter().enumerate() {
                let _ = write!(out, "{pad}{}: ", json!(k));
                write_value(x, depth + 1, out);
                out.push_str(if i == last { "\n" } else { ",\n" });
            }
            let _ = write!(out, "{close}}}");
        }
        Value::Array(a) if !a.is_empty() && !(is_flat(v) && compact(v).len() <= 96) => {
            out.push_str("[\n");
            let last = a.len() - 1;
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write_value(x, depth + 1, out);
                out.push_str(if i == last { "\n" } else { ",\n" });
            }
            let _ = write!(out, "{close}]");
        }
        _ => out.push_str(&compact(v)),
    }
}

pub fn read_structure(path: &std::path::Path) -> Result<(StructureFile, Structure)> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_err(format!("cannot read {}: {e}", path.display())))?;
    let f = StructureFile::parse(&text)?;
    let s = f.clone().into_structure()?;
    Ok((f, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::signfuzzy;
    use crate::hyper::signs;

    #[test]
    fn hyperring_round_trip() {
        let f = StructureFile::from_hyperring(&signs(), Some("signs"));
        let text = f.to_canonical();
        let back = StructureFile::parse(&text).unwrap();
        assert_eq!(back.to_canonical(), text);
        match back.into_structure().unwrap() {
            Structure::Hyperring(h) => assert_eq!(h, signs()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fuzzy_round_trip() {
        let text = StructureFile::from_fuzzyring(&signfuzzy(), Some("signfuzzy")).to_canonical();
        match StructureFile::parse(&text).unwrap().into_structure().unwrap() {
            Structure::Fuzzyring(k) => assert_eq!(k, signfuzzy()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn kz_values() {
        for s in ["-inf", "3", "[-inf,-2]"] {
            assert_eq!(format_kz(parse_kz(s).unwrap()), s);
        }
        assert_eq!(parse_kz("[-inf,-inf]").unwrap(), OGSubset::Singleton(OGElem::Bottom));
        assert!(parse_kz("[0,3]").is_err());
    }

    #[test]
    fn rejects_malformed() {
        assert!(StructureFile::parse("{}").is_err());
        let bad = r#"{"schema_version":"1","kind":"hyperring","body":{"size":0,"add":[],"mul":[]}}"#;
        assert_eq!(StructureFile::parse(bad).unwrap().into_structure(), Err(Error::EmptyCarrier));
        let v2 = r#"{"schema_version":"2","kind":"hyperring","body":{}}"#;
        assert!(StructureFile::parse(v2).is_err());
    }
}
