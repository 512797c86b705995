//! Signed Pauli operators in binary symplectic form.
//!
//! An operator is `i^phase · ∏_q X_q^{x_q} Z_q^{z_q}` with the X factor
//! written to the left of the Z factor on every qubit. With that convention
//! `Y = i·XZ`, so a `Y` in the text format contributes one unit of phase.

use crate::bits::BitVec;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    pub fn new(x: BitVec, z: BitVec, phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::SizeMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(PauliOperator {
            x,
            z,
            phase: phase % 4,
        })
    }

    /// Product of X on the listed qubits.
    pub fn x_on(n: usize, qubits: impl IntoIterator<Item = usize>) -> Self {
        PauliOperator {
            x: BitVec::from_indices(n, qubits),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    /// Product of Z on the listed qubits.
    pub fn z_on(n: usize, qubits: impl IntoIterator<Item = usize>) -> Self {
        PauliOperator {
            x: BitVec::zeros(n),
            z: BitVec::from_indices(n, qubits),
            phase: 0,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    pub fn negated(mut self) -> Self {
        self.phase = (self.phase + 2) % 4;
        self
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase as usize + self.x.and_count(&self.z)).is_multiple_of(2)
    }

    /// Sign `±1` of a Hermitian operator written as a word over {I,X,Y,Z}.
    /// Returns `None` for non-Hermitian operators.
    pub fn sign(&self) -> Option<i8> {
        if !self.is_hermitian() {
            return None;
        }
        let ys = self.x.and_count(&self.z);
        let p = (self.phase as usize + 4 - ys % 4) % 4;
        Some(if p == 0 { 1 } else { -1 })
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn support(&self) -> BitVec {
        self.x.or(&self.z)
    }

    pub fn weight(&self) -> usize {
        self.support().count_ones()
    }

    pub fn is_x_type(&self) -> bool {
        self.z.is_zero()
    }

    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    /// Symplectic vector `(x | z)` of length `2n`.
    pub fn symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    /// Operator with the given symplectic vector and phase.
    pub fn from_symplectic(v: &BitVec, phase: u8) -> Self {
        assert!(v.len().is_multiple_of(2));
        let n = v.len() / 2;
        PauliOperator {
            x: v.slice(0, n),
            z: v.slice(n, n),
            phase: phase % 4,
        }
    }

    /// Single-qubit factor `(x_q, z_q)`.
    pub fn qubit(&self, q: usize) -> (bool, bool) {
        (self.x.get(q), self.z.get(q))
    }

    pub fn set_qubit(&mut self, q: usize, x: bool, z: bool) {
        self.x.set(q, x);
        self.z.set(q, z);
    }

    /// Keeps only the factors on `mask`, dropping the phase.
    pub fn restricted(&self, mask: &BitVec) -> Self {
        PauliOperator {
            x: self.x.and(mask),
            z: self.z.and(mask),
            phase: 0,
        }
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }
}

/// True iff the symplectic inner product of `p` and `q` vanishes.
pub fn commute(p: &PauliOperator, q: &PauliOperator) -> Result<bool> {
    p.check_size(q)?;
    Ok(commutes(p, q))
}

/// Unchecked form of [`commute`]; panics in debug builds on size mismatch.
#[inline]
pub fn commutes(p: &PauliOperator, q: &PauliOperator) -> bool {
    (p.x.and_count(&q.z) + p.z.and_count(&q.x)).is_multiple_of(2)
}

/// Operator product `p·q`.
pub fn multiply(p: &PauliOperator, q: &PauliOperator) -> Result<PauliOperator> {
    p.check_size(q)?;
    Ok(mul(p, q))
}

/// Unchecked form of [`multiply`].
pub fn mul(p: &PauliOperator, q: &PauliOperator) -> PauliOperator {
    // Moving Z^{z_p} past X^{x_q} on each qubit costs a factor -1.
    let swaps = p.z.and_count(&q.x);
    PauliOperator {
        x: p.x.xor(&q.x),
        z: p.z.xor(&q.z),
        phase: ((p.phase as usize + q.phase as usize + 2 * swaps) % 4) as u8,
    }
}

impl fmt::Display for PauliOperator {
    /// Hermitian operators print as `[+|-]word`; others carry an explicit
    /// `i`-power prefix such as `(i^1)` so that nothing is silently lost.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word: String = (0..self.n())
            .map(|q| match self.qubit(q) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            })
            .collect();
        match self.sign() {
            Some(1) => write!(f, "+{word}"),
            Some(_) => write!(f, "-{word}"),
            None => {
                let ys = self.x.and_count(&self.z);
                let p = (self.phase as usize + 4 - ys % 4) % 4;
                write!(f, "(i^{p}){word}")
            }
        }
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (extra, body) = if let Some(rest) = s.strip_prefix("(i^") {
            let (k, body) = rest
                .split_once(')')
                .ok_or_else(|| err("unterminated phase prefix"))?;
            let k: u8 = k.parse().map_err(|_| err("phase prefix must be (i^k)"))?;
            (k % 4, body)
        } else {
            match s.as_bytes().first() {
                Some(b'+') => (0, &s[1..]),
                Some(b'-') => (2, &s[1..]),
                _ => (0, s),
            }
        };
        let n = body.chars().count();
        let mut p = PauliOperator::identity(n);
        let mut ys = 0u8;
        for (q, c) in body.chars().enumerate() {
            match c {
                'I' => {}
                'X' => p.x.set(q, true),
                'Z' => p.z.set(q, true),
                'Y' => {
                    p.set_qubit(q, true, true);
                    ys = (ys + 1) % 4;
                }
                _ => return Err(err(&format!("unexpected character {c:?}"))),
            }
        }
        p.phase = (ys + extra) % 4;
        Ok(p)
    }
}
