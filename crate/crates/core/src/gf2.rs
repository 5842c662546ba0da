//! Linear algebra over GF(2) on symplectic vectors.
//!
//! A product of Pauli strings is proportional to the identity exactly when
//! the XOR of their symplectic vectors vanishes, so algebraic independence
//! of a set of strings is linear independence of these vectors.

use crate::error::{Error, Result};
use crate::pauli::{PauliString, SymplecticVector};

/// Rank of a set of bit rows, each a little-endian word slice of equal length.
pub fn rank(rows: &[Vec<u64>]) -> usize {
    let mut rows: Vec<Vec<u64>> = rows.to_vec();
    let width = rows.first().map_or(0, |r| r.len() * 64);
    let mut rank = 0;
    for col in 0..width {
        let (w, b) = (col / 64, col % 64);
        let Some(pivot) = (rank..rows.len()).find(|&r| (rows[r][w] >> b) & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && (row[w] >> b) & 1 == 1 {
                for (a, p) in row.iter_mut().zip(&pivot_row) {
                    *a ^= p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Returns the indices of a nonempty subset XOR-ing to zero, if one exists.
pub fn find_dependency(vectors: &[SymplecticVector]) -> Option<Vec<usize>> {
    let k = vectors.len();
    // Each working row carries its vector and the set of inputs combined into it.
    let mut rows: Vec<(SymplecticVector, Vec<u64>)> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut tag = vec![0u64; k.div_ceil(64).max(1)];
            tag[i / 64] |= 1 << (i % 64);
            (v.clone(), tag)
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, bit)
    for i in 0..rows.len() {
        for &(pr, bit) in &pivots {
            if rows[i].0.bit(bit) {
                let (pv, pt) = rows[pr].clone();
                rows[i].0.xor_assign(&pv);
                for (a, b) in rows[i].1.iter_mut().zip(&pt) {
                    *a ^= b;
                }
            }
        }
        if rows[i].0.is_zero() {
            let tag = &rows[i].1;
            return Some((0..k).filter(|&j| (tag[j / 64] >> (j % 64)) & 1 == 1).collect());
        }
        let lead = (0..2 * rows[i].0.n_qubits())
            .find(|&b| rows[i].0.bit(b))
            .expect("nonzero vector has a set bit");
        pivots.push((i, lead));
    }
    None
}

/// True iff no nonempty subset of `strings` multiplies to a multiple of the identity.
pub fn gf2_independent(strings: &[PauliString]) -> Result<bool> {
    if let Some(first) = strings.first() {
        let n = first.n_qubits();
        if let Some(bad) = strings.iter().find(|s| s.n_qubits() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.n_qubits(),
            });
        }
        let rows: Vec<Vec<u64>> = strings.iter().map(|s| s.symplectic().words().to_vec()).collect();
        Ok(rank(&rows) == strings.len())
    } else {
        Ok(true)
    }
}
