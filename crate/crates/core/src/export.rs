//! Serialisation and rendering of trees and mappings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mapping::{MajoranaMapping, Mode};
use crate::pauli::{Pauli, PauliString};
use crate::tree::{QubitTree, TreeDescription};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeJson {
    pub qubit: usize,
    pub even: String,
    pub odd: String,
}

/// Serialised mapping. `tree` is optional and keeps the generating tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingJson {
    pub n: usize,
    pub modes: Vec<ModeJson>,
    pub discarded: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<TreeDescription>,
}

impl From<&MajoranaMapping> for MappingJson {
    fn from(m: &MajoranaMapping) -> Self {
        MappingJson {
            n: m.n_qubits(),
            modes: m
                .modes()
                .iter()
                .map(|mode| ModeJson {
                    qubit: mode.qubit,
                    even: mode.even.to_string(),
                    odd: mode.odd.to_string(),
                })
                .collect(),
            discarded: m.discarded().map(|d| d.to_string()),
            tree: m.source_tree().map(QubitTree::to_description),
        }
    }
}

impl MappingJson {
    pub fn into_mapping(self) -> Result<MajoranaMapping> {
        let n = self.n;
        let modes = self
            .modes
            .iter()
            .map(|m| {
                Ok(Mode {
                    qubit: m.qubit,
                    even: PauliString::parse(n, &m.even)?,
                    odd: PauliString::parse(n, &m.odd)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let discarded = self.discarded.as_deref().map(|d| PauliString::parse(n, d)).transpose()?;
        let mapping = MajoranaMapping::from_modes(n, modes, discarded)?;
        match self.tree {
            Some(desc) => mapping.with_tree(QubitTree::from_description(&desc)?),
            None => Ok(mapping),
        }
    }
}

pub fn mapping_to_json(m: &MajoranaMapping) -> String {
    serde_json::to_string_pretty(&MappingJson::from(m)).expect("mapping serialises")
}

pub fn mapping_from_json(text: &str) -> Result<MajoranaMapping> {
    let raw: MappingJson = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    raw.into_mapping()
}

pub fn tree_to_json(t: &QubitTree) -> String {
    serde_json::to_string_pretty(&t.to_description()).expect("tree serialises")
}

pub fn tree_from_json(text: &str) -> Result<QubitTree> {
    let desc: TreeDescription = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    QubitTree::from_description(&desc)
}

/// Graphviz rendering with link labels; legs are omitted.
pub fn tree_to_dot(t: &QubitTree) -> String {
    let mut out = String::from("digraph tree {\n");
    let _ = writeln!(out, "  {} [shape=doublecircle];", t.root());
    for l in t.links() {
        let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", l.parent, l.child, l.label);
    }
    out.push_str("}\n");
    out
}

pub fn mapping_to_dot(m: &MajoranaMapping) -> Result<String> {
    m.source_tree().map(tree_to_dot).ok_or(Error::NoSourceTree)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TableStyle {
    /// Use ½, ∓ and ± instead of 1/2, +- and +-.
    pub utf8: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub mode: usize,
    pub qubit: usize,
    pub operator: String,
}

fn factors(s: &PauliString, qubits: &[usize]) -> String {
    let mut out = String::new();
    for &q in qubits {
        let p = s.get(q);
        if p != Pauli::I {
            let _ = write!(out, "{}_{}", p.symbol(), q);
        }
    }
    out
}

fn signed(s: &PauliString, body: String) -> String {
    let prefix = match s.phase_exp() {
        0 => "",
        1 => "i",
        2 => "-",
        _ => "-i",
    };
    format!("{prefix}{body}")
}

/// `a_j` and `a_j^†` of one mode as a single expression.
///
/// The factors shared by both strings are pulled out in front. When the rest
/// is just `X_u` and `Y_u` it is written as the ladder operator `P^±_u`.
pub fn mode_operator(mode: &Mode, style: TableStyle) -> String {
    let (e, o) = (&mode.even, &mode.odd);
    let n = e.n_qubits();
    let (common, rest): (Vec<usize>, Vec<usize>) = (0..n).partition(|&q| e.get(q) == o.get(q));
    let g = factors(e, &common);
    let (half, mp, pm) = if style.utf8 { ("½", "∓", "±") } else { ("1/2", "+-", "+-") };
    let u = mode.qubit;
    let ladder = e.phase_exp() == 0
        && o.phase_exp() == 0
        && rest == [u]
        && e.get(u) == Pauli::X
        && o.get(u) == Pauli::Y;
    if ladder {
        let p = format!("P^{pm}_{u}");
        return if g.is_empty() { p } else { format!("{g} {p}") };
    }
    let sx = signed(e, factors(e, &rest));
    let sy = signed(o, factors(o, &rest));
    let inner = format!("({sx} {mp} i{sy})");
    if g.is_empty() {
        format!("{half}{inner}")
    } else {
        format!("{half} {g}{inner}")
    }
}

pub fn operator_table(m: &MajoranaMapping, style: TableStyle) -> Vec<TableRow> {
    m.modes()
        .iter()
        .enumerate()
        .map(|(j, mode)| TableRow {
            mode: j,
            qubit: mode.qubit,
            operator: mode_operator(mode, style),
        })
        .collect()
}

pub fn render_table(m: &MajoranaMapping, style: TableStyle) -> String {
    let rows = operator_table(m, style);
    let mut out = String::from("mode  qubit  operator\n");
    for r in rows {
        let _ = writeln!(out, "{:<5} {:<6} {}", r.mode, r.qubit, r.operator);
    }
    out
}

/// One line per mode: `mode,qubit,even,odd,z_set_size,operator`.
pub fn render_csv(m: &MajoranaMapping, style: TableStyle) -> String {
    let mut out = String::from("mode,qubit,even,odd,z_set_size,operator\n");
    for (j, r) in operator_table(m, style).into_iter().enumerate() {
        let mode = &m.modes()[j];
        let z = m.z_set(j).map(|s| s.len()).unwrap_or(0);
        let _ = writeln!(
            out,
            "{},{},{},{},{},\"{}\"",
            j, r.qubit, mode.even, mode.odd, z, r.operator
        );
    }
    out
}
