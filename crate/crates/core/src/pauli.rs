//! Exact algebra of N-qubit Pauli strings.
//!
//! A [`PauliString`] is stored as an X mask, a Z mask and a phase exponent
//! `k` so that the operator is `i^k` times the tensor product of the
//! single-qubit factors. The factor on qubit `u` is `I` when both bits are
//! clear, `X` for the X bit only, `Z` for the Z bit only and `Y` for both.
//! Note that `Y` here is the Hermitian Pauli matrix, not the product `XZ`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Single-qubit Pauli factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// An N-qubit Pauli operator with an exact `i^k` coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        PauliString {
            n,
            x: vec![0; w],
            z: vec![0; w],
            phase: 0,
        }
    }

    pub fn single(n: usize, qubit: usize, pauli: Pauli) -> Result<Self> {
        let mut s = Self::identity(n);
        s.set(qubit, pauli)?;
        Ok(s)
    }

    /// Product of single-qubit factors taken in the given order.
    pub fn from_factors<I>(n: usize, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Pauli)>,
    {
        let mut acc = Self::identity(n);
        for (q, p) in factors {
            let f = Self::single(n, q, p)?;
            acc = acc.multiply(&f)?;
        }
        Ok(acc)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, k: u8) -> Self {
        self.phase = k % 4;
        self
    }

    /// Drops the coefficient, keeping only the tensor product.
    pub fn unsigned(&self) -> Self {
        self.clone().with_phase(0)
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::QubitOutOfRange { index: q, n: self.n });
        }
        Ok(())
    }

    pub fn get(&self, q: usize) -> Pauli {
        debug_assert!(q < self.n);
        let (w, b) = (q / WORD, q % WORD);
        Pauli::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    /// Overwrites the factor on `q`, leaving the coefficient unchanged.
    pub fn set(&mut self, q: usize, p: Pauli) -> Result<()> {
        self.check_qubit(q)?;
        let (w, b) = (q / WORD, q % WORD);
        let (xb, zb) = p.bits();
        let mask = 1u64 << b;
        self.x[w] = (self.x[w] & !mask) | if xb { mask } else { 0 };
        self.z[w] = (self.z[w] & !mask) | if zb { mask } else { 0 };
        Ok(())
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn support(&self) -> Vec<usize> {
        collect_bits(self.x.iter().zip(&self.z).map(|(x, z)| x | z))
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Number of `Y` factors.
    pub fn y_count(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x & z).count_ones() as usize)
            .sum()
    }

    /// Non-identity factors in ascending qubit order.
    pub fn factors(&self) -> Vec<(usize, Pauli)> {
        self.support().into_iter().map(|q| (q, self.get(q))).collect()
    }

    pub fn symplectic(&self) -> SymplecticVector {
        let mut v = SymplecticVector::zero(self.n);
        for q in self.support() {
            let (xb, zb) = self.get(q).bits();
            if xb {
                v.flip(q);
            }
            if zb {
                v.flip(self.n + q);
            }
        }
        v
    }

    fn same_size(&self, other: &PauliString) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Exact product `self · other`.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        self.same_size(other)?;
        // Per-qubit products XY = iZ, YZ = iX, ZX = iY contribute +1 to the
        // exponent; the reversed orders contribute -1.
        let mut plus = 0u32;
        let mut minus = 0u32;
        for w in 0..self.x.len() {
            let (ax, az, bx, bz) = (self.x[w], self.z[w], other.x[w], other.z[w]);
            let a_x = ax & !az;
            let a_y = ax & az;
            let a_z = !ax & az;
            let b_x = bx & !bz;
            let b_y = bx & bz;
            let b_z = !bx & bz;
            plus += ((a_x & b_y) | (a_y & b_z) | (a_z & b_x)).count_ones();
            minus += ((a_y & b_x) | (a_z & b_y) | (a_x & b_z)).count_ones();
        }
        let phase = (self.phase as u32 + other.phase as u32 + plus + 3 * minus) % 4;
        Ok(PauliString {
            n: self.n,
            x: self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect(),
            z: self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect(),
            phase: phase as u8,
        })
    }

    /// True iff `{self, other} = 0`.
    pub fn anticommutes(&self, other: &PauliString) -> Result<bool> {
        self.same_size(other)?;
        let parity: u32 = (0..self.x.len())
            .map(|w| ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones())
            .sum();
        Ok(parity % 2 == 1)
    }

    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.anticommutes(other).map(|a| !a)
    }

    /// Qubits where both factors are non-identity and different.
    pub fn nto_sites(&self, other: &PauliString) -> Result<Vec<usize>> {
        self.same_size(other)?;
        Ok(collect_bits((0..self.x.len()).map(|w| {
            let both = (self.x[w] | self.z[w]) & (other.x[w] | other.z[w]);
            let differ = (self.x[w] ^ other.x[w]) | (self.z[w] ^ other.z[w]);
            both & differ
        })))
    }

    /// Parses the canonical text form, e.g. `"X0 Z1"`, `"-i Y3"` or `"I"`.
    pub fn parse(n: usize, text: &str) -> Result<PauliString> {
        let err = |reason: &str| Error::PauliParse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut rest = text.trim();
        let mut phase = 0u8;
        for (prefix, k) in [("+i", 1u8), ("-i", 3), ("-", 2), ("+", 0)] {
            if let Some(r) = rest.strip_prefix(prefix) {
                phase = k;
                rest = r.trim_start();
                break;
            }
        }
        let mut s = PauliString::identity(n);
        if rest == "I" {
            return Ok(s.with_phase(phase));
        }
        if rest.is_empty() {
            return Err(err("no factors"));
        }
        let mut seen = vec![false; n];
        for tok in rest.split_whitespace() {
            let mut chars = tok.chars();
            let p = chars
                .next()
                .and_then(Pauli::from_symbol)
                .ok_or_else(|| err("factor must start with X, Y or Z"))?;
            if p == Pauli::I {
                return Err(err("identity factors are not listed"));
            }
            let q: usize = chars
                .as_str()
                .parse()
                .map_err(|_| err("bad qubit index"))?;
            if q >= n {
                return Err(err("qubit index out of range"));
            }
            if seen[q] {
                return Err(err("repeated qubit"));
            }
            seen[q] = true;
            s.set(q, p)?;
        }
        Ok(s.with_phase(phase))
    }
}

fn collect_bits<I: Iterator<Item = u64>>(words: I) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, mut word) in words.enumerate() {
        while word != 0 {
            let b = word.trailing_zeros() as usize;
            out.push(w * WORD + b);
            word &= word - 1;
        }
    }
    out
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phase {
            1 => write!(f, "+i ")?,
            2 => write!(f, "- ")?,
            3 => write!(f, "-i ")?,
            _ => {}
        }
        if self.is_identity() {
            return write!(f, "I");
        }
        let mut first = true;
        for (q, p) in self.factors() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}{}", p.symbol(), q)?;
            first = false;
        }
        Ok(())
    }
}

/// Phase-free image of a Pauli string: X bits followed by Z bits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticVector {
    n: usize,
    bits: Vec<u64>,
}

impl SymplecticVector {
    pub fn zero(n_qubits: usize) -> Self {
        SymplecticVector {
            n: n_qubits,
            bits: vec![0; words_for(2 * n_qubits)],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn flip(&mut self, bit: usize) {
        self.bits[bit / WORD] ^= 1 << (bit % WORD);
    }

    pub fn bit(&self, bit: usize) -> bool {
        (self.bits[bit / WORD] >> (bit % WORD)) & 1 == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn xor_assign(&mut self, other: &SymplecticVector) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }
}
