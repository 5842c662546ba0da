//! Validity checks for Majorana mappings and a dense-matrix oracle.

use ndarray::linalg::kron;
use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::find_dependency;
use crate::mapping::MajoranaMapping;
use crate::pauli::{Pauli, PauliString};

/// Outcome of the four mapping criteria, with a witness for each failure.
///
/// Majorana strings are indexed `2j` (even) and `2j + 1` (odd).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub a_ok: bool,
    pub b_ok: bool,
    pub c_ok: bool,
    pub d_ok: bool,
    /// Index of a string that is non-Hermitian, the identity or of the wrong size.
    pub a_witness: Option<usize>,
    /// A commuting pair.
    pub b_witness: Option<(usize, usize)>,
    /// A subset whose product is proportional to the identity.
    pub c_witness: Option<Vec<usize>>,
    /// A mode whose annihilator does not kill `|0...0>`.
    pub d_witness: Option<usize>,
}

impl CriteriaReport {
    pub fn all_ok(&self) -> bool {
        self.a_ok && self.b_ok && self.c_ok && self.d_ok
    }
}

/// Whether `(e + i o)|0...0>` vanishes, evaluated symbolically.
///
/// A string with phase `i^k` sends `|0...0>` to `i^(k + #Y) |x>`.
pub fn annihilates_vacuum(even: &PauliString, odd: &PauliString) -> bool {
    if even.x_words() != odd.x_words() {
        return false;
    }
    let pe = (even.phase_exp() as usize + even.y_count()) % 4;
    let po = (1 + odd.phase_exp() as usize + odd.y_count()) % 4;
    (pe + 4 - po) % 4 == 2
}

pub fn check_mapping(m: &MajoranaMapping) -> CriteriaReport {
    let strings = m.majoranas();
    let n = m.n_qubits();
    let a_witness = if strings.len() != 2 * n {
        Some(strings.len())
    } else {
        strings
            .iter()
            .position(|s| s.n_qubits() != n || s.phase_exp() % 2 == 1 || s.is_identity())
    };
    let mut b_witness = None;
    'outer: for i in 0..strings.len() {
        for j in i + 1..strings.len() {
            if !strings[i].anticommutes(&strings[j]).unwrap_or(false) {
                b_witness = Some((i, j));
                break 'outer;
            }
        }
    }
    let vectors: Vec<_> = strings.iter().map(|s| s.symplectic()).collect();
    let c_witness = find_dependency(&vectors);
    let d_witness = m
        .modes()
        .iter()
        .position(|mode| !annihilates_vacuum(&mode.even, &mode.odd));
    CriteriaReport {
        a_ok: a_witness.is_none(),
        b_ok: b_witness.is_none(),
        c_ok: c_witness.is_none(),
        d_ok: d_witness.is_none(),
        a_witness,
        b_witness,
        c_witness,
        d_witness,
    }
}

/// Largest number of non-trivially overlapping sites over all string pairs.
pub fn classify_nto(m: &MajoranaMapping) -> usize {
    let strings = m.majoranas();
    let mut k = 0;
    for i in 0..strings.len() {
        for j in i + 1..strings.len() {
            k = k.max(strings[i].nto_sites(&strings[j]).map_or(0, |s| s.len()));
        }
    }
    k
}

/// Dense matrices for Pauli strings; qubit 0 is the least significant bit of
/// the basis index.
pub struct DenseOracle;

impl DenseOracle {
    pub const MAX_STRING_QUBITS: usize = 12;
    pub const MAX_CAR_MODES: usize = 4;

    fn single(p: Pauli) -> Array2<Complex64> {
        let (o, l, i) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
        let data = match p {
            Pauli::I => [l, o, o, l],
            Pauli::X => [o, l, l, o],
            Pauli::Y => [o, -i, i, o],
            Pauli::Z => [l, o, o, -l],
        };
        Array2::from_shape_vec((2, 2), data.to_vec()).expect("2x2")
    }

    pub fn matrix(s: &PauliString) -> Result<Array2<Complex64>> {
        let n = s.n_qubits();
        if n > Self::MAX_STRING_QUBITS {
            return Err(Error::TooLarge { n, limit: Self::MAX_STRING_QUBITS });
        }
        let mut m = Array2::from_elem((1, 1), Complex64::new(1.0, 0.0));
        for q in (0..n).rev() {
            m = kron(&m, &Self::single(s.get(q)));
        }
        Ok(m * Complex64::i().powu(s.phase_exp() as u32))
    }

    pub fn identity(n: usize) -> Array2<Complex64> {
        Array2::eye(1 << n)
    }
}

fn max_abs(m: &Array2<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest deviations found by [`oracle_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub anticommutation_residual: f64,
    pub car_residual: f64,
    pub vacuum_residual: f64,
    /// Deviation of each Fock image from a unit-modulus basis vector.
    pub fock_residual: f64,
    /// Whether every Fock image sits on the basis state given by
    /// `fock_to_bits`; `None` without a source tree.
    pub fock_matches: Option<bool>,
}

impl OracleReport {
    pub fn max_residual(&self) -> f64 {
        self.anticommutation_residual
            .max(self.car_residual)
            .max(self.vacuum_residual)
            .max(self.fock_residual)
    }
}

/// Brute-force check of the Majorana and fermionic algebra for `n <= 4` modes.
pub fn oracle_check(m: &MajoranaMapping) -> Result<OracleReport> {
    let n = m.n_modes();
    if n > DenseOracle::MAX_CAR_MODES || m.n_qubits() > DenseOracle::MAX_CAR_MODES {
        return Err(Error::TooLarge { n: n.max(m.n_qubits()), limit: DenseOracle::MAX_CAR_MODES });
    }
    let nq = m.n_qubits();
    let id = DenseOracle::identity(nq);
    let r: Vec<Array2<Complex64>> = m
        .majoranas()
        .iter()
        .map(DenseOracle::matrix)
        .collect::<Result<_>>()?;

    let mut anti = 0.0f64;
    for k in 0..r.len() {
        for l in 0..r.len() {
            let mut ac = r[k].dot(&r[l]) + r[l].dot(&r[k]);
            if k == l {
                ac = ac - &id * Complex64::new(2.0, 0.0);
            }
            anti = anti.max(max_abs(&ac));
        }
    }

    let half = Complex64::new(0.5, 0.0);
    let i = Complex64::i();
    let ann: Vec<Array2<Complex64>> = (0..n)
        .map(|j| (&r[2 * j] + &(&r[2 * j + 1] * i)) * half)
        .collect();
    let cre: Vec<Array2<Complex64>> = ann.iter().map(|a| a.t().mapv(|z| z.conj())).collect();
    let mut car = 0.0f64;
    for j in 0..n {
        for k in 0..n {
            let mut ac = ann[j].dot(&cre[k]) + cre[k].dot(&ann[j]);
            if j == k {
                ac -= &id;
            }
            car = car.max(max_abs(&ac));
            car = car.max(max_abs(&(ann[j].dot(&ann[k]) + ann[k].dot(&ann[j]))));
        }
    }

    let dim = 1usize << nq;
    let mut vacuum = Array1::from_elem(dim, Complex64::new(0.0, 0.0));
    vacuum[0] = Complex64::new(1.0, 0.0);
    let vac = ann
        .iter()
        .map(|a| a.dot(&vacuum).iter().map(|z| z.norm()).fold(0.0, f64::max))
        .fold(0.0, f64::max);

    let mut fock = 0.0f64;
    let mut matches = m.source_tree().map(|_| true);
    for subset in 0..(1usize << n) {
        let modes: Vec<usize> = (0..n).filter(|j| subset >> j & 1 == 1).collect();
        let mut psi = vacuum.clone();
        for &j in &modes {
            psi = cre[j].dot(&psi);
        }
        let (arg, peak) = psi
            .iter()
            .enumerate()
            .map(|(idx, z)| (idx, z.norm()))
            .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        let others = psi
            .iter()
            .enumerate()
            .filter(|&(idx, _)| idx != arg)
            .map(|(_, z)| z.norm())
            .fold(0.0, f64::max);
        fock = fock.max((peak - 1.0).abs()).max(others);
        if let Some(ok) = matches.as_mut() {
            let bits = m.fock_to_bits(&modes)?;
            let index: usize = bits.iter().enumerate().map(|(u, &b)| (b as usize) << u).sum();
            *ok &= index == arg;
        }
    }

    Ok(OracleReport {
        anticommutation_residual: anti,
        car_residual: car,
        vacuum_residual: vac,
        fock_residual: fock,
        fock_matches: matches,
    })
}
