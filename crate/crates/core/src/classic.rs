//! Paradigmatic tree mappings and fixed fixtures.

use serde::{Deserialize, Serialize};

use crate::bonsai::{label_tree, Labelling};
use crate::error::{Error, Result};
use crate::mapping::{MajoranaMapping, Mode};
use crate::pauli::PauliString;
use crate::tree::{Label, Link, QubitTree, RootedTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MappingKind {
    JordanWigner,
    Parity,
    BravyiKitaev,
    Jkmn,
}

impl MappingKind {
    pub const ALL: [MappingKind; 4] = [
        MappingKind::JordanWigner,
        MappingKind::Parity,
        MappingKind::BravyiKitaev,
        MappingKind::Jkmn,
    ];
}

fn chain(n: usize, label: Label) -> Result<QubitTree> {
    let links = (1..n).map(|c| Link { parent: c - 1, child: c, label }).collect();
    QubitTree::from_links(n, 0, links)
}

/// Parent of every index in the Fenwick tree on `0..n`, root `n - 1`.
pub fn fenwick_parents(n: usize) -> Vec<Option<usize>> {
    fn build(l: usize, r: usize, parent: &mut [Option<usize>]) {
        if l == r {
            return;
        }
        let m = (l + r) / 2;
        parent[m] = Some(r);
        build(l, m, parent);
        build(m + 1, r, parent);
    }
    let mut parent = vec![None; n];
    if n > 0 {
        build(0, n - 1, &mut parent);
    }
    parent
}

/// Fenwick tree in first-child / next-sibling form: the first child hangs
/// off the X link, each further sibling off the previous sibling's Z link.
fn bravyi_kitaev(n: usize) -> Result<QubitTree> {
    let parent = fenwick_parents(n);
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (c, p) in parent.iter().enumerate() {
        if let Some(p) = p {
            kids[*p].push(c);
        }
    }
    let mut links = Vec::with_capacity(n - 1);
    for (p, ch) in kids.iter().enumerate() {
        if let Some(&first) = ch.first() {
            links.push(Link { parent: p, child: first, label: Label::X });
        }
        for w in ch.windows(2) {
            links.push(Link { parent: w[0], child: w[1], label: Label::Z });
        }
    }
    QubitTree::from_links(n, n - 1, links)
}

fn jkmn(n: usize) -> Result<QubitTree> {
    let links = (1..n)
        .map(|c| Link {
            parent: (c - 1) / 3,
            child: c,
            label: Label::ALL[(c - 1) % 3],
        })
        .collect();
    QubitTree::from_links(n, 0, links)
}

/// Tree of a paradigmatic mapping on `n` qubits.
pub fn classic_tree(kind: MappingKind, n: usize) -> Result<QubitTree> {
    if n == 0 {
        return Err(Error::InvalidParameter("classic trees need n >= 1".into()));
    }
    match kind {
        MappingKind::JordanWigner => chain(n, Label::Z),
        MappingKind::Parity => chain(n, Label::X),
        MappingKind::BravyiKitaev => bravyi_kitaev(n),
        MappingKind::Jkmn => jkmn(n),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixtureKind {
    Fig1Tree,
    HeavyHex37,
    Exotic3Nto,
    Exotic1NtoNonTree,
}

impl FixtureKind {
    pub const ALL: [FixtureKind; 4] = [
        FixtureKind::Fig1Tree,
        FixtureKind::HeavyHex37,
        FixtureKind::Exotic3Nto,
        FixtureKind::Exotic1NtoNonTree,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    Tree(QubitTree),
    Mapping(MajoranaMapping),
}

/// An 11-qubit tree with `S_0 = X0 Z1` and `S_1 = Y0 Z2 Z8 Z10`.
pub fn fig1_tree() -> QubitTree {
    use Label::*;
    let links = [
        (0, 1, X),
        (0, 2, Y),
        (0, 3, Z),
        (1, 4, X),
        (1, 5, Y),
        (2, 6, X),
        (2, 7, Y),
        (2, 8, Z),
        (8, 9, X),
        (8, 10, Z),
    ]
    .into_iter()
    .map(|(parent, child, label)| Link { parent, child, label })
    .collect();
    QubitTree::from_links(11, 0, links).expect("fixture is valid")
}

/// Unlabelled 37-qubit heavy-hexagon tree with three congruent root branches.
pub fn heavy_hex37_shape() -> RootedTree {
    // X, Y and Z branches as (parent, children) rows.
    const ROWS: [(usize, &[usize]); 25] = [
        (0, &[1, 2, 3]),
        (1, &[4]),
        (4, &[7, 8]),
        (7, &[13]),
        (8, &[14]),
        (13, &[19, 20]),
        (14, &[21, 22]),
        (22, &[31]),
        (31, &[34]),
        (2, &[5]),
        (5, &[9, 10]),
        (9, &[15]),
        (10, &[16]),
        (15, &[23, 24]),
        (16, &[25, 26]),
        (26, &[32]),
        (32, &[35]),
        (3, &[6]),
        (6, &[11, 12]),
        (11, &[17]),
        (12, &[18]),
        (17, &[27, 28]),
        (18, &[29, 30]),
        (30, &[33]),
        (33, &[36]),
    ];
    let mut parent = vec![None; 37];
    for (p, children) in ROWS {
        for &c in children {
            parent[c] = Some(p);
        }
    }
    RootedTree::from_parents(0, parent).expect("fixture is valid")
}

pub fn heavy_hex37_tree(labelling: Labelling) -> QubitTree {
    label_tree(&heavy_hex37_shape(), labelling)
}

fn raw_mapping(n: usize, pairs: &[(&str, &str)]) -> MajoranaMapping {
    let modes = pairs
        .iter()
        .enumerate()
        .map(|(j, (e, o))| Mode {
            qubit: j,
            even: PauliString::parse(n, e).expect("fixture string"),
            odd: PauliString::parse(n, o).expect("fixture string"),
        })
        .collect();
    MajoranaMapping::from_modes(n, modes, None).expect("fixture is consistent")
}

/// A valid 4-qubit Majorana mapping that is 3-NTO.
pub fn exotic_3nto() -> MajoranaMapping {
    raw_mapping(
        4,
        &[
            ("X1 X2 X3", "Y1 Y2 Y3"),
            ("X0 Z1 Y2 Y3", "Y0 Z1 X2 X3"),
            ("Y0 Y1 X3", "X0 X1 Y3"),
            ("X0 X1 X2 Z3", "Y0 Y1 Y2 Z3"),
        ],
    )
}

/// A 1-NTO mapping on 3 qubits that no ternary tree generates: each qubit
/// carries its mode's X/Y together with a Z on the next qubit of a 3-cycle.
pub fn exotic_1nto_non_tree() -> MajoranaMapping {
    raw_mapping(
        3,
        &[("X0 Z1", "Y0 Z1"), ("Z0 X2", "Z0 Y2"), ("X1 Z2", "Y1 Z2")],
    )
}

/// The commonly quoted form of [`exotic_1nto_non_tree`] with the last pair
/// written `Z1 X2`, `Z1 Y2`. It is not a valid Majorana mapping: those two
/// strings commute with `X0 Z1`.
pub fn exotic_1nto_as_printed() -> MajoranaMapping {
    raw_mapping(
        3,
        &[("X0 Z1", "Y0 Z1"), ("Z0 X2", "Z0 Y2"), ("Z1 X2", "Z1 Y2")],
    )
}

/// The heavy-hexagon fixture carries the homogeneous labelling.
pub fn fixture(kind: FixtureKind) -> Fixture {
    match kind {
        FixtureKind::Fig1Tree => Fixture::Tree(fig1_tree()),
        FixtureKind::HeavyHex37 => Fixture::Tree(heavy_hex37_tree(Labelling::Homogeneous)),
        FixtureKind::Exotic3Nto => Fixture::Mapping(exotic_3nto()),
        FixtureKind::Exotic1NtoNonTree => Fixture::Mapping(exotic_1nto_non_tree()),
    }
}
