use bonsai_core::classic::{classic_tree, fenwick_parents, MappingKind};
use bonsai_core::verify::check_mapping;
use bonsai_core::{pair_modes, MajoranaMapping, Pauli, PairingOptions, PauliString};

fn mapping(kind: MappingKind, n: usize) -> MajoranaMapping {
    pair_modes(&classic_tree(kind, n).unwrap(), None, PairingOptions::default()).unwrap()
}

type Matrix = Vec<Vec<u8>>;

/// The recursive Bravyi-Kitaev transformation matrix for a power of two.
fn beta(n: usize) -> Matrix {
    if n == 1 {
        return vec![vec![1]];
    }
    let h = n / 2;
    let b = beta(h);
    let mut out = vec![vec![0u8; n]; n];
    for i in 0..h {
        for j in 0..h {
            out[i][j] = b[i][j];
            out[h + i][h + j] = b[i][j];
        }
    }
    out[n - 1][..h].fill(1);
    out
}

fn inverse(m: &Matrix) -> Matrix {
    let n = m.len();
    let mut a: Vec<Vec<u8>> = m.to_vec();
    let mut inv: Matrix = (0..n).map(|i| (0..n).map(|j| (i == j) as u8).collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| a[r][col] == 1).expect("invertible");
        a.swap(col, p);
        inv.swap(col, p);
        for r in 0..n {
            if r != col && a[r][col] == 1 {
                for c in 0..n {
                    a[r][c] ^= a[col][c];
                    inv[r][c] ^= inv[col][c];
                }
            }
        }
    }
    inv
}

fn string(n: usize, parts: &[(&[usize], Pauli)]) -> PauliString {
    let mut s = PauliString::identity(n);
    for (qs, p) in parts {
        for &q in *qs {
            s.set(q, *p).unwrap();
        }
    }
    s
}

#[test]
fn bravyi_kitaev_matches_update_parity_remainder_sets() {
    for n in [2, 4, 8] {
        let b = beta(n);
        let binv = inverse(&b);
        let m = mapping(MappingKind::BravyiKitaev, n);
        for j in 0..n {
            let update: Vec<usize> = (j + 1..n).filter(|&i| b[i][j] == 1).collect();
            // parity of modes below j, read off the qubits
            let parity: Vec<usize> = (0..n)
                .filter(|&i| (0..j).fold(0, |acc, k| acc ^ binv[k][i]) == 1)
                .collect();
            let flip: Vec<usize> = (0..n).filter(|&i| i != j && binv[j][i] == 1).collect();
            let remainder: Vec<usize> = parity.iter().copied().filter(|i| !flip.contains(i)).collect();
            let c = string(n, &[(&parity, Pauli::Z), (&update, Pauli::X), (&[j], Pauli::X)]);
            let d = string(n, &[(&remainder, Pauli::Z), (&update, Pauli::X), (&[j], Pauli::Y)]);
            assert_eq!(m.mode(j).unwrap().qubit, j);
            assert_eq!(m.even(j).unwrap(), &c, "n={n} j={j}");
            assert_eq!(m.odd(j).unwrap(), &d, "n={n} j={j}");
        }
        // occupation vector maps to beta . n
        for mask in 0u32..(1 << n) {
            let occ: Vec<usize> = (0..n).filter(|&j| mask & (1 << j) != 0).collect();
            let expect: Vec<bool> = (0..n)
                .map(|i| occ.iter().fold(0, |acc, &j| acc ^ b[i][j]) == 1)
                .collect();
            assert_eq!(m.fock_to_bits(&occ).unwrap(), expect);
        }
    }
}

#[test]
fn fenwick_parents_cover_prefix_ranges() {
    // qubit i of BK stores the occupation of a contiguous block ending at i
    for n in 1..=40 {
        let parents = fenwick_parents(n);
        assert_eq!(parents[n - 1], None);
        for (i, p) in parents.iter().enumerate() {
            if let Some(p) = *p {
                assert!(p > i);
            }
        }
        let m = mapping(MappingKind::BravyiKitaev, n);
        for q in 0..n {
            let occ = [q];
            let bits = m.fock_to_bits(&occ).unwrap();
            assert!(bits[q]);
            assert!(bits.iter().enumerate().all(|(i, &b)| !b || i >= q));
        }
    }
}

#[test]
fn every_classic_mapping_is_valid() {
    for kind in MappingKind::ALL {
        for n in 1..=64 {
            let r = check_mapping(&mapping(kind, n));
            assert!(r.all_ok(), "{kind:?} n={n}: {r:?}");
        }
    }
}

#[test]
fn parity_chain_closed_form() {
    // qubit i holds the parity of modes i..n
    let n = 6;
    let m = mapping(MappingKind::Parity, n);
    for j in 0..n {
        let below: Vec<usize> = (0..j).collect();
        let next: Vec<usize> = (j + 1..n).take(1).collect();
        let e = string(n, &[(&below, Pauli::X), (&[j], Pauli::X), (&next, Pauli::Z)]);
        let o = string(n, &[(&below, Pauli::X), (&[j], Pauli::Y)]);
        assert_eq!(m.even(j).unwrap(), &e, "j={j}");
        assert_eq!(m.odd(j).unwrap(), &o, "j={j}");
    }
    for mask in 0u32..(1 << n) {
        let occ: Vec<usize> = (0..n).filter(|&j| mask & (1 << j) != 0).collect();
        let expect: Vec<bool> = (0..n).map(|i| occ.iter().filter(|&&j| j >= i).count() % 2 == 1).collect();
        assert_eq!(m.fock_to_bits(&occ).unwrap(), expect);
    }
}

#[test]
fn jordan_wigner_is_local_everywhere() {
    for n in 1..=20 {
        assert!(mapping(MappingKind::JordanWigner, n).delocalisations().iter().all(|&d| d == 0));
    }
}

#[test]
fn zero_modes_rejected() {
    for kind in MappingKind::ALL {
        assert!(classic_tree(kind, 0).is_err());
    }
}
