//! The versioned JSON report and its plain-text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::analysis::{Analysis, Certificate};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::loewy::Layer;
use crate::perm::GroupSpec;

pub const SCHEMA: &str = "modrep-report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

const LABELING_NOTE: &str = "simples are ordered by dimension, then discovery, with the trivial \
module discovered first; each PIM is spun from the lowest-index idempotent of its simple";

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    pub group: GroupSpec,
    pub field: FieldSpec,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleEntry {
    pub label: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerEntry {
    pub simple: String,
    pub mult: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PimEntry {
    pub label: String,
    pub simple: String,
    pub dim: usize,
    /// copies of this PIM in the regular module
    pub multiplicity: usize,
    pub head: Option<String>,
    pub socle: Option<String>,
    pub loewy_layers: Vec<Vec<LayerEntry>>,
    pub socle_layers: Vec<Vec<LayerEntry>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockEntry {
    pub parts: Vec<Vec<String>>,
    pub principal: usize,
    pub dims: Vec<usize>,
    /// per block: "verified" or "unverified" (centre too large to search)
    pub primitivity: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub schema: String,
    pub tool_version: String,
    pub input: InputEcho,
    pub group_order: usize,
    pub p_regular_classes: usize,
    pub labeling: String,
    pub simples: Vec<SimpleEntry>,
    pub radical: RadicalEntry,
    pub pims: Vec<PimEntry>,
    pub cartan: Vec<Vec<usize>>,
    pub blocks: BlockEntry,
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RadicalEntry {
    pub dim: usize,
    pub nilpotency: usize,
}

/// `S1=T1,S2=T3` style relabelling of simples.
#[derive(Clone, Debug, Default)]
pub struct LabelMap(BTreeMap<String, String>);

impl LabelMap {
    pub fn parse(s: &str) -> Result<LabelMap> {
        let mut map = BTreeMap::new();
        for pair in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (from, to) = pair
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("label map entry {pair:?} lacks '='")))?;
            map.insert(from.trim().to_string(), to.trim().to_string());
        }
        Ok(LabelMap(map))
    }

    pub fn apply(&self, label: &str) -> String {
        self.0
            .get(label)
            .cloned()
            .unwrap_or_else(|| label.to_string())
    }
}

fn layer_entries(layer: &Layer, labels: &[String]) -> Vec<LayerEntry> {
    layer
        .multiplicities
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(i, &m)| LayerEntry {
            simple: labels[i].clone(),
            mult: m,
        })
        .collect()
}

pub fn build_report(
    a: &Analysis,
    builtin: Option<&str>,
    labels: &LabelMap,
    timings: bool,
) -> StructureReport {
    let names: Vec<String> = a.simples.labels().iter().map(|l| labels.apply(l)).collect();
    let mults = a.pim_multiplicities();
    let pims = a
        .pims
        .iter()
        .map(|p| PimEntry {
            label: format!("P{}", p.simple + 1),
            simple: names[p.simple].clone(),
            dim: p.dim,
            multiplicity: mults[p.simple],
            head: p.head.map(|h| names[h].clone()),
            socle: p.socle.map(|h| names[h].clone()),
            loewy_layers: p
                .loewy
                .radical_layers
                .iter()
                .map(|l| layer_entries(l, &names))
                .collect(),
            socle_layers: p
                .loewy
                .socle_layers
                .iter()
                .map(|l| layer_entries(l, &names))
                .collect(),
        })
        .collect();
    StructureReport {
        schema: SCHEMA.into(),
        tool_version: TOOL_VERSION.into(),
        input: InputEcho {
            builtin: builtin.map(str::to_string),
            group: a.algebra.group().spec(),
            field: a.algebra.field().spec(),
            seed: a.seed,
        },
        group_order: a.algebra.dim(),
        p_regular_classes: a.simples.p_regular_classes,
        labeling: LABELING_NOTE.into(),
        simples: a
            .simples
            .dims()
            .into_iter()
            .zip(&names)
            .map(|(dim, label)| SimpleEntry {
                label: label.clone(),
                dim,
            })
            .collect(),
        radical: RadicalEntry {
            dim: a.radical.dim(),
            nilpotency: a.radical.nilpotency,
        },
        pims,
        cartan: a.cartan.clone(),
        blocks: BlockEntry {
            parts: a
                .blocks
                .parts
                .iter()
                .map(|p| p.iter().map(|&i| names[i].clone()).collect())
                .collect(),
            principal: a.blocks.principal,
            dims: a.block_dims.clone(),
            primitivity: a
                .blocks
                .primitive
                .iter()
                .map(|p| {
                    if p.is_some() {
                        "verified"
                    } else {
                        "unverified"
                    }
                    .to_string()
                })
                .collect(),
        },
        certificates: a.certificates.clone(),
        timings: timings.then(|| a.timings.iter().cloned().collect()),
    }
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        self.certificates.iter().all(Certificate::passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let f = &self.input.field;
        let field = if f.degree == 1 {
            format!("GF({})", f.characteristic)
        } else {
            format!("GF({}^{})", f.characteristic, f.degree)
        };
        let group = match &self.input.builtin {
            Some(name) => name.clone(),
            None => format!("<{}>", self.input.group.generators.join(", ")),
        };
        let _ = writeln!(out, "{} {}", self.schema, self.tool_version);
        let _ = writeln!(
            out,
            "group {group} of order {} over {field}, seed {}",
            self.group_order, self.input.seed
        );
        let _ = writeln!(out, "p-regular classes: {}", self.p_regular_classes);
        let simples: Vec<String> = self
            .simples
            .iter()
            .map(|s| format!("{} (dim {})", s.label, s.dim))
            .collect();
        let _ = writeln!(out, "simples: {}", simples.join(", "));
        let _ = writeln!(
            out,
            "radical: dim {}, nilpotency {}",
            self.radical.dim, self.radical.nilpotency
        );
        let _ = writeln!(out, "pims:");
        for p in &self.pims {
            let layers: Vec<String> = p
                .loewy_layers
                .iter()
                .map(|layer| {
                    let parts: Vec<String> = layer
                        .iter()
                        .flat_map(|e| std::iter::repeat(e.simple.clone()).take(e.mult))
                        .collect();
                    parts.join("+")
                })
                .collect();
            let _ = writeln!(
                out,
                "  {} = P({})  dim {}  x{}  {}",
                p.label,
                p.simple,
                p.dim,
                p.multiplicity,
                layers.join(" | ")
            );
        }
        let _ = writeln!(out, "cartan:");
        for row in &self.cartan {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>3}")).collect();
            let _ = writeln!(out, "  {}", cells.join(""));
        }
        let _ = writeln!(out, "blocks:");
        for (i, part) in self.blocks.parts.iter().enumerate() {
            let tag = if i == self.blocks.principal {
                "  principal"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "  B{} {{{}}}  dim {}  primitivity {}{tag}",
                i + 1,
                part.join(", "),
                self.blocks.dims[i],
                self.blocks.primitivity[i]
            );
        }
        let failed = self.certificates.iter().filter(|c| !c.passed()).count();
        let _ = writeln!(
            out,
            "certificates: {} pass, {failed} fail",
            self.certificates.len() - failed
        );
        for c in &self.certificates {
            let status = if c.passed() { "pass" } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(out, "  {status}  {}", c.name);
            } else {
                let _ = writeln!(out, "  {status}  {}  ({})", c.name, c.detail);
            }
        }
        if let Some(t) = &self.timings {
            let _ = writeln!(out, "timings (ms):");
            for (k, v) in t {
                let _ = writeln!(out, "  {k}: {v:.2}");
            }
        }
        out
    }
}
