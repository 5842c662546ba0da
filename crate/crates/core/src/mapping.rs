//! Majorana mappings: pairs of Pauli strings per fermionic mode.
//!
//! Mode `j` is represented by an even string `e_j` and an odd string `o_j`
//! with `a_j = (e_j + i o_j) / 2` and `a_j^† = (e_j - i o_j) / 2`.

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::tree::{Label, QubitTree};

/// The two Majorana images of one mode and the qubit it lives on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mode {
    pub qubit: usize,
    pub even: PauliString,
    pub odd: PauliString,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairingOptions {
    /// Put the string with an even number of Y factors in the even slot.
    pub real: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajoranaMapping {
    n_qubits: usize,
    modes: Vec<Mode>,
    discarded: Option<PauliString>,
    tree: Option<QubitTree>,
}

fn check_bijection(map: &[usize], n: usize) -> Result<()> {
    if map.len() != n {
        return Err(Error::NotABijection(format!("expected {n} entries, got {}", map.len())));
    }
    let mut hit = vec![false; n];
    for &v in map {
        if v >= n {
            return Err(Error::NotABijection(format!("{v} is out of range")));
        }
        if hit[v] {
            return Err(Error::NotABijection(format!("{v} appears twice")));
        }
        hit[v] = true;
    }
    Ok(())
}

/// Pairs the legs of `tree` into modes.
///
/// `qubit_to_mode[u]` is the mode hosted by qubit `u`; `None` means identity.
pub fn pair_modes(
    tree: &QubitTree,
    qubit_to_mode: Option<&[usize]>,
    opts: PairingOptions,
) -> Result<MajoranaMapping> {
    let n = tree.n_qubits();
    let identity: Vec<usize> = (0..n).collect();
    let f = qubit_to_mode.unwrap_or(&identity);
    check_bijection(f, n)?;
    let mut slots: Vec<Option<Mode>> = vec![None; n];
    for u in 0..n {
        let mut even = tree.leg_string(tree.descend(u, Label::X))?;
        let mut odd = tree.leg_string(tree.descend(u, Label::Y))?;
        if opts.real && even.y_count() % 2 == 1 {
            std::mem::swap(&mut even, &mut odd);
        }
        slots[f[u]] = Some(Mode { qubit: u, even, odd });
    }
    let discarded = tree.leg_string(tree.all_z_leg())?;
    Ok(MajoranaMapping {
        n_qubits: n,
        modes: slots.into_iter().map(|m| m.expect("bijection fills all modes")).collect(),
        discarded: Some(discarded),
        tree: Some(tree.clone()),
    })
}

impl MajoranaMapping {
    /// Builds a mapping from explicit strings, without a generating tree.
    pub fn from_modes(n_qubits: usize, modes: Vec<Mode>, discarded: Option<PauliString>) -> Result<Self> {
        for m in &modes {
            for s in [&m.even, &m.odd] {
                if s.n_qubits() != n_qubits {
                    return Err(Error::DimensionMismatch {
                        expected: n_qubits,
                        found: s.n_qubits(),
                    });
                }
            }
        }
        if let Some(d) = &discarded {
            if d.n_qubits() != n_qubits {
                return Err(Error::DimensionMismatch {
                    expected: n_qubits,
                    found: d.n_qubits(),
                });
            }
        }
        if modes.len() != n_qubits {
            return Err(Error::DimensionMismatch {
                expected: n_qubits,
                found: modes.len(),
            });
        }
        let qubits: Vec<usize> = modes.iter().map(|m| m.qubit).collect();
        check_bijection(&qubits, n_qubits)?;
        Ok(MajoranaMapping {
            n_qubits,
            modes,
            discarded,
            tree: None,
        })
    }

    /// Attaches a generating tree; its size must match.
    pub fn with_tree(mut self, tree: QubitTree) -> Result<Self> {
        if tree.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: tree.n_qubits(),
            });
        }
        self.tree = Some(tree);
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    fn mode_checked(&self, j: usize) -> Result<&Mode> {
        self.modes.get(j).ok_or(Error::ModeOutOfRange {
            index: j,
            n: self.modes.len(),
        })
    }

    pub fn mode(&self, j: usize) -> Result<&Mode> {
        self.mode_checked(j)
    }

    pub fn even(&self, j: usize) -> Result<&PauliString> {
        Ok(&self.mode_checked(j)?.even)
    }

    pub fn odd(&self, j: usize) -> Result<&PauliString> {
        Ok(&self.mode_checked(j)?.odd)
    }

    /// The `2N` Majorana strings in order e_0, o_0, e_1, o_1, ...
    pub fn majoranas(&self) -> Vec<PauliString> {
        self.modes
            .iter()
            .flat_map(|m| [m.even.clone(), m.odd.clone()])
            .collect()
    }

    pub fn mode_to_qubit(&self) -> Vec<usize> {
        self.modes.iter().map(|m| m.qubit).collect()
    }

    pub fn qubit_to_mode(&self) -> Vec<usize> {
        let mut out = vec![0; self.n_qubits];
        for (j, m) in self.modes.iter().enumerate() {
            out[m.qubit] = j;
        }
        out
    }

    pub fn discarded(&self) -> Option<&PauliString> {
        self.discarded.as_ref()
    }

    pub fn source_tree(&self) -> Option<&QubitTree> {
        self.tree.as_ref()
    }

    /// Support of `i e_j o_j`, the qubits whose Z-parity stores the occupation.
    pub fn z_set(&self, j: usize) -> Result<Vec<usize>> {
        let m = self.mode_checked(j)?;
        Ok(m.even.multiply(&m.odd)?.support())
    }

    /// The Hermitian string `i e_j o_j`, equal to `2 n_j - 1`.
    pub fn parity_string(&self, j: usize) -> Result<PauliString> {
        let m = self.mode_checked(j)?;
        let p = m.even.multiply(&m.odd)?;
        let k = p.phase_exp() + 1;
        Ok(p.with_phase(k))
    }

    /// `|z_set(j)| - 1`.
    pub fn delocalisation(&self, j: usize) -> Result<usize> {
        Ok(self.z_set(j)?.len().saturating_sub(1))
    }

    pub fn delocalisations(&self) -> Vec<usize> {
        (0..self.n_modes())
            .map(|j| self.delocalisation(j).expect("mode in range"))
            .collect()
    }

    /// Computational basis state of the Fock state with the given occupied modes.
    ///
    /// Needs the source tree and the standard pairing. Bit `u` of the result is
    /// the state of qubit `u`.
    pub fn fock_to_bits(&self, occupied: &[usize]) -> Result<Vec<bool>> {
        let tree = self.tree.as_ref().ok_or(Error::NoSourceTree)?;
        let n = self.n_modes();
        let mut seen = vec![false; n];
        for &j in occupied {
            if j >= n {
                return Err(Error::ModeOutOfRange { index: j, n });
            }
            if seen[j] {
                return Err(Error::RepeatedMode(j));
            }
            seen[j] = true;
        }
        let mut qubits: Vec<usize> = occupied.iter().map(|&j| self.modes[j].qubit).collect();
        qubits.sort_by_key(|&u| (tree.depth_of(u), u));
        for &u in &qubits {
            let mode = &self.modes[self.qubit_to_mode()[u]];
            if mode.even.get(u) != Pauli::X || mode.odd.get(u) != Pauli::Y {
                return Err(Error::InvalidParameter(format!(
                    "mode on qubit {u} does not use the standard pairing"
                )));
            }
        }
        let mut bits = vec![false; self.n_qubits];
        for u in qubits {
            bits[u] ^= true;
            for (v, label) in tree.ancestors(u) {
                if label != Label::Z {
                    bits[v] ^= true;
                }
            }
        }
        Ok(bits)
    }
}

/// Renders a bit vector with qubit 0 first.
pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
