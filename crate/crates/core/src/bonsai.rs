//! Hardware-tailored tree growth and labelling.
//!
//! A ternary tree is grown breadth-first over the device graph so that tree
//! edges are physical couplings where possible, then labelled so that the
//! deepest root path carries only Z labels.

use std::collections::VecDeque;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mapping::{pair_modes, MajoranaMapping, PairingOptions};
use crate::topology::HardwareGraph;
use crate::tree::{Label, QubitTree, RootedTree};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootPolicy {
    #[default]
    Center,
    DiameterEnd,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Labelling {
    /// Off-path edges take X, then Y, then Z.
    #[default]
    Homogeneous,
    /// Off-path edges take Z on the tallest child first, then X, then Y.
    Heterogeneous,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthConfig {
    /// Explicit root; overrides `root_policy`.
    pub root: Option<usize>,
    pub root_policy: RootPolicy,
    /// Without a seed every choice falls to the lowest qubit index.
    pub seed: Option<u64>,
    pub labelling: Labelling,
}

/// A grown tree and the tree edges missing from the device graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrownTree {
    pub tree: RootedTree,
    pub virtual_edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BonsaiMapping {
    pub mapping: MajoranaMapping,
    pub virtual_edges: Vec<(usize, usize)>,
}

pub fn choose_root(g: &HardwareGraph, cfg: &GrowthConfig) -> Result<usize> {
    if let Some(r) = cfg.root {
        if r >= g.n_qubits() {
            return Err(Error::QubitOutOfRange { index: r, n: g.n_qubits() });
        }
        return Ok(r);
    }
    Ok(match cfg.root_policy {
        RootPolicy::Center => g.center()[0],
        RootPolicy::DiameterEnd => g.diameter_path()[0],
    })
}

/// Layered greedy growth: each tree node adopts up to three unassigned
/// neighbours; leftovers attach to the nearest node with a free slot.
pub fn grow_tree(g: &HardwareGraph, cfg: &GrowthConfig) -> Result<GrownTree> {
    let n = g.n_qubits();
    let root = choose_root(g, cfg)?;
    let mut rng = cfg.seed.map(ChaCha8Rng::seed_from_u64);
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut in_tree = vec![false; n];
    let mut n_children = vec![0usize; n];
    in_tree[root] = true;

    let mut layer = vec![root];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for &u in &layer {
            let free: Vec<usize> = g.neighbours(u).iter().copied().filter(|&v| !in_tree[v]).collect();
            let mut picked: Vec<usize> = match rng.as_mut() {
                Some(r) if free.len() > 3 => free.choose_multiple(r, 3).copied().collect(),
                _ => free.into_iter().take(3).collect(),
            };
            picked.sort_unstable();
            for v in picked {
                in_tree[v] = true;
                parent[v] = Some(u);
                n_children[u] += 1;
                next.push(v);
            }
        }
        layer = next;
    }

    let mut virtual_edges = Vec::new();
    let dist = g.distances();
    for v in 0..n {
        if in_tree[v] {
            continue;
        }
        let open: Vec<usize> = (0..n).filter(|&u| in_tree[u] && n_children[u] < 3).collect();
        let best = open.iter().map(|&u| dist[v][u]).min().expect("a leaf always has free slots");
        let nearest: Vec<usize> = open.into_iter().filter(|&u| dist[v][u] == best).collect();
        let u = match rng.as_mut() {
            Some(r) => *nearest.choose(r).expect("nonempty"),
            None => nearest[0],
        };
        if !g.has_edge(u, v) {
            virtual_edges.push((u, v));
        }
        in_tree[v] = true;
        parent[v] = Some(u);
        n_children[u] += 1;
    }
    Ok(GrownTree {
        tree: RootedTree::from_parents(root, parent)?,
        virtual_edges,
    })
}

fn tallest(children: &[usize], heights: &[usize]) -> Option<usize> {
    // ties go to the larger index
    children.iter().copied().max_by_key(|&c| (heights[c], c))
}

/// The root-to-leaf path that descends into the tallest subtree at every step.
pub fn longest_path(t: &RootedTree) -> Vec<usize> {
    let heights = t.subtree_heights();
    let mut path = vec![t.root()];
    let mut u = t.root();
    while let Some(c) = tallest(t.children(u), &heights) {
        path.push(c);
        u = c;
    }
    path
}

/// Labels `t`: the longest root path gets Z everywhere, the other edges
/// follow `strategy`, and legs take whatever labels remain.
pub fn label_tree(t: &RootedTree, strategy: Labelling) -> QubitTree {
    let heights = t.subtree_heights();
    let mut labels: Vec<Option<Label>> = vec![None; t.n_qubits()];
    let path = longest_path(t);
    for &c in &path[1..] {
        labels[c] = Some(Label::Z);
    }
    let mut queue = VecDeque::from([t.root()]);
    while let Some(u) = queue.pop_front() {
        queue.extend(t.children(u).iter().copied());
        let mut rest: Vec<usize> = t.children(u).iter().copied().filter(|&c| labels[c].is_none()).collect();
        let mut free: Vec<Label> = Label::ALL
            .into_iter()
            .filter(|l| !t.children(u).iter().any(|&c| labels[c] == Some(*l)))
            .collect();
        if strategy == Labelling::Heterogeneous && free.contains(&Label::Z) {
            if let Some(c) = tallest(&rest, &heights) {
                labels[c] = Some(Label::Z);
                rest.retain(|&x| x != c);
                free.retain(|&l| l != Label::Z);
            }
        }
        for (c, l) in rest.into_iter().zip(free) {
            labels[c] = Some(l);
        }
    }
    t.with_labels(&labels).expect("labels are distinct per node")
}

/// Grows, labels and pairs a mapping on `g`.
pub fn bonsai(g: &HardwareGraph, cfg: &GrowthConfig) -> Result<BonsaiMapping> {
    let grown = grow_tree(g, cfg)?;
    let tree = label_tree(&grown.tree, cfg.labelling);
    Ok(BonsaiMapping {
        mapping: pair_modes(&tree, None, PairingOptions::default())?,
        virtual_edges: grown.virtual_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{complete, linear, star};

    #[test]
    fn star_mapping_rooted_at_hub() {
        let g = star(4).unwrap();
        let b = bonsai(&g, &GrowthConfig::default()).unwrap();
        let t = b.mapping.source_tree().unwrap();
        assert_eq!(t.root(), 0);
        assert_eq!(t.child(0, Label::X), Some(1));
        assert_eq!(t.child(0, Label::Y), Some(2));
        assert_eq!(t.child(0, Label::Z), Some(3));
        assert!(b.virtual_edges.is_empty());
    }

    #[test]
    fn chain_from_an_end_is_jordan_wigner() {
        let g = linear(5).unwrap();
        let cfg = GrowthConfig { root_policy: RootPolicy::DiameterEnd, ..Default::default() };
        let b = bonsai(&g, &cfg).unwrap();
        let t = b.mapping.source_tree().unwrap();
        assert_eq!(t.z_path(), vec![0, 1, 2, 3, 4]);
        assert_eq!(b.mapping.even(3).unwrap().to_string(), "Z0 Z1 Z2 X3");
    }

    #[test]
    fn complete_graph_gives_breadth_filled_tree() {
        for n in 1..60 {
            let g = complete(n).unwrap();
            let grown = grow_tree(&g, &GrowthConfig::default()).unwrap();
            let t = grown.tree;
            assert!(grown.virtual_edges.is_empty());
            for u in 1..n {
                assert_eq!(t.parent(u), Some((u - 1) / 3));
            }
        }
    }

    #[test]
    fn stragglers_become_virtual_edges() {
        // a hub with five spokes cannot keep them all as children
        let g = star(6).unwrap();
        let grown = grow_tree(&g, &GrowthConfig::default()).unwrap();
        assert_eq!(grown.tree.children(0), &[1, 2, 3]);
        assert_eq!(grown.virtual_edges, vec![(1, 4), (1, 5)]);
    }

    #[test]
    fn explicit_root_checked() {
        let g = linear(3).unwrap();
        let cfg = GrowthConfig { root: Some(9), ..Default::default() };
        assert!(grow_tree(&g, &cfg).is_err());
    }

    #[test]
    fn heterogeneous_puts_z_on_tallest() {
        let t = RootedTree::from_parents(0, vec![None, Some(0), Some(0), Some(1), Some(2), Some(4)]).unwrap();
        let homo = label_tree(&t, Labelling::Homogeneous);
        assert_eq!(homo.z_path(), vec![0, 2, 4, 5]);
        assert_eq!(homo.child(0, Label::X), Some(1));
        assert_eq!(homo.child(1, Label::X), Some(3));
        let het = label_tree(&t, Labelling::Heterogeneous);
        assert_eq!(het.child(1, Label::Z), Some(3));
        assert_eq!(het.child(0, Label::X), Some(1));
    }
}
