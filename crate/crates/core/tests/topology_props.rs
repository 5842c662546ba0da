mod common;

use bonsai_core::bonsai::{bonsai, GrowthConfig, Labelling};
use bonsai_core::classic::{heavy_hex37_shape, heavy_hex37_tree};
use bonsai_core::topology::{excitation_cost, grid, heavy_hexagon, linear, HardwareGraph};
use bonsai_core::{pair_modes, MajoranaMapping, Pauli, PairingOptions};
use common::random_connected_graph;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn connected(g: &HardwareGraph, nodes: &[usize]) -> bool {
    let mut seen = vec![nodes[0]];
    let mut stack = vec![nodes[0]];
    while let Some(u) = stack.pop() {
        for &v in g.neighbours(u) {
            if nodes.contains(&v) && !seen.contains(&v) {
                seen.push(v);
                stack.push(v);
            }
        }
    }
    seen.len() == nodes.len()
}

/// Size of the smallest connected vertex set containing `terms`.
fn brute_force_steiner_size(g: &HardwareGraph, terms: &[usize]) -> usize {
    let n = g.n_qubits();
    (0u32..(1 << n))
        .filter_map(|mask| {
            let nodes: Vec<usize> = (0..n).filter(|&q| mask & (1 << q) != 0).collect();
            let covers = terms.iter().all(|t| nodes.contains(t));
            (covers && connected(g, &nodes)).then_some(nodes.len())
        })
        .min()
        .unwrap()
}

fn graph_and_terminals() -> impl Strategy<Value = (HardwareGraph, Vec<usize>)> {
    (2usize..=10, 0usize..8, any::<u64>()).prop_map(|(n, extra, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected_graph(n, extra, &mut rng);
        let k = rng.random_range(1..=n.min(6));
        let mut terms: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(terms.as_mut_slice(), &mut rng);
        terms.truncate(k);
        (g, terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn exact_steiner_is_minimal((g, terms) in graph_and_terminals()) {
        let nodes = g.steiner_tree(&terms).unwrap();
        prop_assert!(terms.iter().all(|t| nodes.contains(t)));
        prop_assert!(connected(&g, &nodes));
        prop_assert_eq!(nodes.len(), brute_force_steiner_size(&g, &terms));
    }

    #[test]
    fn adding_edges_never_increases_cost((g, terms) in graph_and_terminals(), a in 0usize..10, b in 0usize..10) {
        let n = g.n_qubits();
        let (a, b) = (a % n, b % n);
        prop_assume!(a != b && !g.has_edge(a, b));
        let denser = g.with_edge(a, b).unwrap();
        prop_assert!(denser.steiner_cost(&terms).unwrap().overhead <= g.steiner_cost(&terms).unwrap().overhead);
    }
}

#[test]
fn approximate_steiner_connects_large_supports() {
    let g = grid(6, 6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..30 {
        let k = rng.random_range(11..=20);
        let terms: Vec<usize> = (0..k).map(|_| rng.random_range(0..36)).collect();
        let nodes = g.steiner_tree(&terms).unwrap();
        assert!(terms.iter().all(|t| nodes.contains(t)));
        assert!(connected(&g, &nodes));
    }
    // a full row needs no helpers
    let row: Vec<usize> = (0..6).chain(6..12).collect();
    assert_eq!(g.steiner_cost(&row).unwrap().overhead, 0);
}

#[test]
fn linear_overheads() {
    let g = linear(6).unwrap();
    assert_eq!(g.steiner_cost(&[0, 2]).unwrap().overhead, 1);
    assert_eq!(g.steiner_cost(&[0, 5]).unwrap().overhead, 4);
    assert_eq!(g.steiner_cost(&[3]).unwrap().overhead, 0);
    assert!(g.steiner_cost(&[]).is_err());
    assert!(g.steiner_cost(&[6]).is_err());
}

fn single_excitation_overhead(m: &MajoranaMapping, g: &HardwareGraph) -> usize {
    let n = m.n_modes();
    let mut total = 0;
    for i in 0..n {
        for j in i + 1..n {
            total += excitation_cost(m, g, &[i, j]).unwrap().total_overhead;
        }
    }
    total
}

#[test]
fn physical_tree_means_free_single_excitations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for i in 0..60 {
        let n = rng.random_range(2..=14);
        let g = random_connected_graph(n, rng.random_range(0..10), &mut rng);
        let b = bonsai(&g, &GrowthConfig { seed: Some(i), ..Default::default() }).unwrap();
        if !b.virtual_edges.is_empty() {
            continue;
        }
        checked += 1;
        for s in b.mapping.majoranas() {
            assert_eq!(g.steiner_cost(&s.support()).unwrap().overhead, 0);
        }
        assert_eq!(single_excitation_overhead(&b.mapping, &g), 0);
    }
    assert!(checked > 20);
}

fn fixture_mapping() -> MajoranaMapping {
    pair_modes(&heavy_hex37_tree(Labelling::Homogeneous), None, PairingOptions::default()).unwrap()
}

/// The same device restricted to the couplings the fixture tree uses.
fn tree_couplings() -> HardwareGraph {
    HardwareGraph::new(37, &heavy_hex37_shape().edges()).unwrap()
}

/// The fixture with the printed `Z_0Z_6X_6` prefix on modes 27 and 36.
fn printed_prefix_mapping() -> MajoranaMapping {
    let m = fixture_mapping();
    let mut modes = m.modes().to_vec();
    for j in [27, 36] {
        let mode = &mut modes[j];
        for s in [&mut mode.even, &mut mode.odd] {
            s.set(3, Pauli::I).unwrap();
            // Z_6 X_6 = i Y_6; the phase cancels in the support
            s.set(6, Pauli::Y).unwrap();
        }
    }
    MajoranaMapping::from_modes(37, modes, None).unwrap()
}

#[test]
fn double_excitation_overheads_under_each_reading() {
    let modes = [27, 34, 35, 36];
    let full = heavy_hexagon(1).unwrap();
    let sparse = tree_couplings();
    let fixture = fixture_mapping();
    let printed = printed_prefix_mapping();
    // qubit 3 bridges qubit 0 to qubit 6 unless coupling 27-32 short-cuts it
    assert_eq!(excitation_cost(&fixture, &full, &modes).unwrap().max_overhead, 0);
    assert_eq!(excitation_cost(&fixture, &sparse, &modes).unwrap().max_overhead, 1);
    // the printed prefixes cancel qubit 6 as well
    assert_eq!(excitation_cost(&printed, &full, &modes).unwrap().max_overhead, 1);
    assert_eq!(excitation_cost(&printed, &sparse, &modes).unwrap().max_overhead, 2);
}

#[test]
fn heavy_hex_contains_fixture_tree() {
    let g = heavy_hexagon(1).unwrap();
    assert_eq!((g.n_qubits(), g.n_edges()), (37, 39));
    for (u, v) in heavy_hex37_shape().edges() {
        assert!(g.has_edge(u, v), "{u}-{v}");
    }
    assert_eq!(g.center(), vec![0]);
    assert_eq!(single_excitation_overhead(&fixture_mapping(), &g), 0);
}
