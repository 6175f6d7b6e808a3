//! Transcribed tables, kept in the paper's notation and embedded at build time.
//!
//! `--data DIR` swaps in `e6.toml`, `e7.toml`, `e8.toml` and `table9.toml`
//! from another directory; the schema version must match.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Splits {
    Split,
    Nonsplit,
    Conditional,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Calibration {
    pub w: String,
    pub n: String,
    pub a: Vec<Vec<i64>>,
    pub conjugate: String,
    pub m: u64,
    pub b: Vec<Vec<i64>>,
    pub power: String,
    pub power_erratum: Option<String>,
    pub power_note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lemma {
    pub isogeny: String,
    pub generators: BTreeMap<String, String>,
    pub relations: String,
    pub printed_generators: Option<BTreeMap<String, String>>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Identity {
    pub lhs: String,
    pub rhs: String,
    pub isogeny: String,
    #[serde(default)]
    pub for_each_simple: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusRow {
    pub index: usize,
    pub rep: String,
    pub order: u64,
    pub centralizer_order: Option<u64>,
    pub structure: String,
    pub factors: String,
    pub factors_erratum: Option<String>,
    pub factors_note: Option<String>,
    pub splits: Splits,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftRow {
    pub index: usize,
    pub rep: String,
    pub order: u64,
    pub lift: String,
    pub ww0_lift: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonsplitRow {
    pub index: usize,
    pub w: String,
    pub w_prime: String,
    pub preimage: String,
    pub lift: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplementRow {
    pub index: usize,
    #[serde(default)]
    pub relations: Vec<String>,
    pub generators: Vec<String>,
    pub same_as: Option<usize>,
    pub erratum: Option<Vec<String>>,
    pub erratum_note: Option<String>,
    #[serde(default)]
    pub odd: bool,
    pub x: Option<String>,
    pub x_note: Option<String>,
}

impl ComplementRow {
    pub fn relation_text(&self) -> String {
        join_cells(&self.relations)
    }

    pub fn generator_text(&self) -> String {
        join_cells(&self.generators)
    }
}

/// Table cells that wrap across lines are rejoined with commas.
pub fn join_cells(lines: &[String]) -> String {
    lines
        .iter()
        .map(|l| l.trim().trim_end_matches(',').to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Param {
    pub name: String,
    pub power: String,
    pub value: String,
    pub when: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProseGenerator {
    pub name: String,
    pub torus: Option<Vec<String>>,
    pub word: String,
    pub when: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Prose {
    pub index: usize,
    pub n: String,
    /// The twisting element when it is not `n` itself; may use `n`.
    pub x: Option<String>,
    pub x_note: Option<String>,
    pub rep: Option<String>,
    pub params: Vec<Param>,
    pub relations: String,
    pub note: Option<String>,
    pub generators: Vec<ProseGenerator>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Special {
    pub index: usize,
    pub n: String,
    pub generators: BTreeMap<String, String>,
    pub relations: String,
    pub centralizes: Vec<String>,
    pub lift: String,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Remark {
    pub index: usize,
    pub chosen: String,
    pub other: String,
    pub relation: String,
    pub other_factors: Option<String>,
    pub chosen_factors: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem {
    pub nonsplit: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KindData {
    pub schema: u32,
    pub kind: String,
    pub w0: String,
    pub n0: String,
    pub n0_bare: Option<String>,
    pub extraspecial: Option<String>,
    pub calibration: Option<Calibration>,
    pub lemma: Lemma,
    #[serde(default, rename = "identity")]
    pub identities: Vec<Identity>,
    #[serde(rename = "torus")]
    pub tori: Vec<TorusRow>,
    #[serde(default, rename = "lift")]
    pub lifts: Vec<LiftRow>,
    pub nonsplit: Vec<NonsplitRow>,
    #[serde(rename = "complement")]
    pub complements: Vec<ComplementRow>,
    #[serde(default)]
    pub prose: Vec<Prose>,
    #[serde(default)]
    pub special: Vec<Special>,
    #[serde(default, rename = "remark")]
    pub remarks: Vec<Remark>,
    pub theorem: Theorem,
}

impl KindData {
    pub fn torus(&self, index: usize) -> Option<&TorusRow> {
        self.tori.iter().find(|t| t.index == index)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct E6Data {
    pub schema: u32,
    pub kind: String,
    pub nonsplit: Vec<String>,
    pub conditional: String,
    pub conditional_rule: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Table9Row {
    pub index: usize,
    pub rep: String,
    pub e6: Option<Splits>,
    pub e7: Option<Splits>,
    pub e8: Option<Splits>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Table9 {
    pub schema: u32,
    pub letters: BTreeMap<String, Vec<i8>>,
    #[serde(rename = "row")]
    pub rows: Vec<Table9Row>,
}

#[derive(Clone, Debug)]
pub struct Dataset {
    pub e6: E6Data,
    pub e7: KindData,
    pub e8: KindData,
    pub table9: Table9,
}

const EMBEDDED: [(&str, &str); 4] = [
    ("e6.toml", include_str!("../data/e6.toml")),
    ("e7.toml", include_str!("../data/e7.toml")),
    ("e8.toml", include_str!("../data/e8.toml")),
    ("table9.toml", include_str!("../data/table9.toml")),
];

impl Dataset {
    pub fn embedded() -> Self {
        Self::from_sources(|name| {
            Ok(EMBEDDED.iter().find(|(n, _)| *n == name).unwrap().1.to_string())
        })
        .expect("embedded data is valid")
    }

    pub fn from_dir(dir: &Path) -> Result<Self> {
        Self::from_sources(|name| {
            let p = dir.join(name);
            std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))
        })
    }

    /// Raw text of the embedded files, for checksums.
    pub fn embedded_sources() -> &'static [(&'static str, &'static str)] {
        &EMBEDDED
    }

    fn from_sources(mut read: impl FnMut(&str) -> Result<String>) -> Result<Self> {
        let e6: E6Data = parse(&read("e6.toml")?, "e6.toml")?;
        let e7: KindData = parse(&read("e7.toml")?, "e7.toml")?;
        let e8: KindData = parse(&read("e8.toml")?, "e8.toml")?;
        let table9: Table9 = parse(&read("table9.toml")?, "table9.toml")?;
        for (name, v) in [
            ("e6.toml", e6.schema),
            ("e7.toml", e7.schema),
            ("e8.toml", e8.schema),
            ("table9.toml", table9.schema),
        ] {
            if v != SCHEMA {
                bail!("{name}: schema {v}, expected {SCHEMA}");
            }
        }
        if e7.kind != "E7" || e8.kind != "E8" || e6.kind != "E6" {
            bail!("data files are assigned to the wrong Cartan types");
        }
        Ok(Dataset { e6, e7, e8, table9 })
    }

    pub fn kind(&self, k: crate::rootsys::CartanType) -> Option<&KindData> {
        match k {
            crate::rootsys::CartanType::E7 => Some(&self.e7),
            crate::rootsys::CartanType::E8 => Some(&self.e8),
            crate::rootsys::CartanType::E6 => None,
        }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, name: &str) -> Result<T> {
    toml::from_str(text).with_context(|| format!("parsing {name}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_are_complete() {
        let d = Dataset::embedded();
        let idx = |v: Vec<usize>| v;
        assert_eq!(idx(d.e7.tori.iter().map(|t| t.index).collect()), (1..=30).collect::<Vec<_>>());
        assert_eq!(idx(d.e8.tori.iter().map(|t| t.index).collect()), (1..=67).collect::<Vec<_>>());
        assert_eq!(d.e7.lifts.len(), 30);
        assert_eq!(d.e7.nonsplit.len(), 10);
        assert_eq!(d.e8.nonsplit.len(), 25);
        assert_eq!(d.table9.rows.len(), 67);
    }

    #[test]
    fn wrapped_cells_rejoin() {
        let cells = vec!["a=n, b=n_0,".to_string(), "c=h_2n_7".to_string()];
        assert_eq!(join_cells(&cells), "a=n, b=n_0, c=h_2n_7");
    }
}
