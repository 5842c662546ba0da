use bonsai_core::gf2::{find_dependency, gf2_independent, rank};
use bonsai_core::verify::DenseOracle;
use bonsai_core::{Pauli, PauliString};
use ndarray::Array2;
use num_complex::Complex64;
use proptest::prelude::*;

fn pauli() -> impl Strategy<Value = Pauli> {
    prop_oneof![Just(Pauli::I), Just(Pauli::X), Just(Pauli::Y), Just(Pauli::Z)]
}

fn string(n: usize) -> impl Strategy<Value = PauliString> {
    (prop::collection::vec(pauli(), n), 0u8..4).prop_map(move |(ps, k)| {
        PauliString::from_factors(n, ps.into_iter().enumerate())
            .unwrap()
            .with_phase(k)
    })
}

fn sized_pair() -> impl Strategy<Value = (PauliString, PauliString)> {
    (1usize..150).prop_flat_map(|n| (string(n), string(n)))
}

fn close(a: &Array2<Complex64>, b: &Array2<Complex64>) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() < 1e-12)
}

proptest! {
    #[test]
    fn anticommute_is_exactly_not_commute((a, b) in sized_pair()) {
        prop_assert_ne!(a.anticommutes(&b).unwrap(), a.commutes(&b).unwrap());
    }

    #[test]
    fn swapped_product_differs_by_sign_iff_anticommuting((a, b) in sized_pair()) {
        let ab = a.multiply(&b).unwrap();
        let ba = b.multiply(&a).unwrap();
        prop_assert_eq!(ab.unsigned(), ba.unsigned());
        let shift = (ab.phase_exp() + 4 - ba.phase_exp()) % 4;
        prop_assert_eq!(shift == 2, a.anticommutes(&b).unwrap());
        prop_assert!(shift == 0 || shift == 2);
    }

    #[test]
    fn multiplication_is_associative(
        (a, b, c) in (1usize..100).prop_flat_map(|n| (string(n), string(n), string(n)))
    ) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn squares_are_phase_times_identity(a in (1usize..80).prop_flat_map(string)) {
        let sq = a.multiply(&a).unwrap();
        prop_assert!(sq.is_identity());
        // Hermitian strings square to +1
        prop_assert_eq!(sq.phase_exp(), (2 * a.phase_exp()) % 4);
    }

    #[test]
    fn weight_counts_non_identity_sites(a in (1usize..200).prop_flat_map(string)) {
        let n = (0..a.n_qubits()).filter(|&q| a.get(q) != Pauli::I).count();
        prop_assert_eq!(a.weight(), n);
        prop_assert_eq!(a.support().len(), n);
    }

    #[test]
    fn text_round_trip(a in (1usize..200).prop_flat_map(string)) {
        let back = PauliString::parse(a.n_qubits(), &a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn dense_product_matches((a, b) in (1usize..=3).prop_flat_map(|n| (string(n), string(n)))) {
        let ma = DenseOracle::matrix(&a).unwrap();
        let mb = DenseOracle::matrix(&b).unwrap();
        let mab = DenseOracle::matrix(&a.multiply(&b).unwrap()).unwrap();
        prop_assert!(close(&ma.dot(&mb), &mab));
    }

    #[test]
    fn independence_matches_subset_search(
        strings in (1usize..6).prop_flat_map(|n| prop::collection::vec(string(n), 1..=12))
    ) {
        let brute = brute_force_independent(&strings);
        prop_assert_eq!(gf2_independent(&strings).unwrap(), brute);
        let sym: Vec<_> = strings.iter().map(|s| s.symplectic()).collect();
        match find_dependency(&sym) {
            Some(w) => {
                prop_assert!(!brute);
                let mut p = PauliString::identity(strings[0].n_qubits());
                for i in w {
                    p = p.multiply(&strings[i]).unwrap();
                }
                prop_assert!(p.is_identity());
            }
            None => prop_assert!(brute),
        }
    }
}

fn brute_force_independent(strings: &[PauliString]) -> bool {
    let n = strings[0].n_qubits();
    (1u32..(1 << strings.len())).all(|mask| {
        let mut p = PauliString::identity(n);
        for (i, s) in strings.iter().enumerate() {
            if mask & (1 << i) != 0 {
                p = p.multiply(s).unwrap();
            }
        }
        !p.is_identity()
    })
}

#[test]
fn exhaustive_commutation_on_two_qubits() {
    let all = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let mut strings = Vec::new();
    for &p in &all {
        for &q in &all {
            strings.push(PauliString::from_factors(2, [(0, p), (1, q)]).unwrap());
        }
    }
    for a in &strings {
        let ma = DenseOracle::matrix(a).unwrap();
        for b in &strings {
            let mb = DenseOracle::matrix(b).unwrap();
            let anti = ma.dot(&mb) + mb.dot(&ma);
            let dense_anti = anti.iter().all(|z| z.norm() < 1e-12);
            assert_eq!(dense_anti, a.anticommutes(b).unwrap(), "{a} vs {b}");
        }
    }
}

#[test]
fn qubit_zero_is_least_significant() {
    // X0 on two qubits flips the lowest bit: |00> -> |01>
    let m = DenseOracle::matrix(&PauliString::single(2, 0, Pauli::X).unwrap()).unwrap();
    assert_eq!(m[[1, 0]], Complex64::new(1.0, 0.0));
}

#[test]
fn rank_of_identity_rows() {
    let rows: Vec<Vec<u64>> = (0..5).map(|i| vec![1u64 << i]).collect();
    assert_eq!(rank(&rows), 5);
    assert_eq!(rank(&[vec![3], vec![1], vec![2]]), 2);
}
