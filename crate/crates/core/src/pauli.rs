//! Pauli-string algebra and Jordan-Wigner ladder operators.
//!
//! A [`PauliString`] is a complex coefficient times one letter of
//! {X, Y, Z} per qubit (identity letters are never stored); a [`PauliSum`]
//! keeps its strings merged by letter pattern and sorted, so equal sums are
//! termwise equal and a sum is Hermitian exactly when every coefficient is
//! real (the letter patterns themselves are Hermitian matrices).
//!
//! Bit/occupation convention: computational |0⟩ is unoccupied, |1⟩ occupied.
//! The occupation-raising single-qubit operator is |1⟩⟨0| = (X − iY)/2 and
//! all Jordan-Wigner signs follow from the ladder postconditions, not from
//! a σ± symbol choice.

use crate::encoding::RegisterLayout;
use crate::error::{Error, Result};
use crate::lattice::{ModeKey, ModeOrdering, Species};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt::Write as _;

type C = Complex64;

/// Dense-matrix oracle cap (2^12 × 2^12 is the largest dense form built).
pub const ORACLE_QUBIT_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn letter(&self) -> char {
        match self {
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Single-qubit product a·b → (phase, letter); `None` letter means identity.
fn mul_letters(a: Pauli, b: Pauli) -> (C, Option<Pauli>) {
    use Pauli::*;
    let one = C::new(1.0, 0.0);
    let i = C::new(0.0, 1.0);
    match (a, b) {
        (X, X) | (Y, Y) | (Z, Z) => (one, None),
        (X, Y) => (i, Some(Z)),
        (Y, X) => (-i, Some(Z)),
        (Y, Z) => (i, Some(X)),
        (Z, Y) => (-i, Some(X)),
        (Z, X) => (i, Some(Y)),
        (X, Z) => (-i, Some(Y)),
    }
}

/// One Pauli string: coefficient × ⊗ letters.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    pub coeff: C,
    pub letters: BTreeMap<u32, Pauli>,
}

impl PauliString {
    pub fn identity(coeff: C) -> Self {
        PauliString { coeff, letters: BTreeMap::new() }
    }

    pub fn single(coeff: C, qubit: u32, p: Pauli) -> Self {
        let mut letters = BTreeMap::new();
        letters.insert(qubit, p);
        PauliString { coeff, letters }
    }

    pub fn weight(&self) -> usize {
        self.letters.len()
    }

    /// Canonical letter-pattern key used for merging and ordering.
    pub fn pattern(&self) -> Vec<(u32, Pauli)> {
        self.letters.iter().map(|(&q, &p)| (q, p)).collect()
    }

    /// Pattern packed into one word per letter: (qubit << 2) | code.
    pub fn packed_pattern(&self) -> Vec<u32> {
        self.letters
            .iter()
            .map(|(&q, &p)| {
                (q << 2)
                    | match p {
                        Pauli::X => 1,
                        Pauli::Y => 2,
                        Pauli::Z => 3,
                    }
            })
            .collect()
    }

    pub fn from_packed(key: &[u32], coeff: C) -> PauliString {
        let letters = key
            .iter()
            .map(|&w| {
                let p = match w & 3 {
                    1 => Pauli::X,
                    2 => Pauli::Y,
                    _ => Pauli::Z,
                };
                (w >> 2, p)
            })
            .collect();
        PauliString { coeff, letters }
    }

    /// Exact product with phase tracking; X·Y = iZ per qubit.
    pub fn mul(&self, other: &PauliString) -> PauliString {
        let mut coeff = self.coeff * other.coeff;
        let mut letters = self.letters.clone();
        for (&q, &pb) in &other.letters {
            match letters.remove(&q) {
                None => {
                    letters.insert(q, pb);
                }
                Some(pa) => {
                    let (phase, combined) = mul_letters(pa, pb);
                    coeff *= phase;
                    if let Some(p) = combined {
                        letters.insert(q, p);
                    }
                }
            }
        }
        PauliString { coeff, letters }
    }

    pub fn adjoint(&self) -> PauliString {
        PauliString { coeff: self.coeff.conj(), letters: self.letters.clone() }
    }

    /// Action masks on a compacted register: (bit-flip mask X∪Y, sign mask
    /// Z∪Y, number of Y letters). P|b⟩ = i^{nY}(−1)^{popcount(b & zy)}|b⊕xy⟩.
    pub fn masks(&self, remap: impl Fn(u32) -> usize) -> (u64, u64, u32) {
        let mut xy = 0u64;
        let mut zy = 0u64;
        let mut ny = 0u32;
        for (&q, &p) in &self.letters {
            let bit = 1u64 << remap(q);
            match p {
                Pauli::X => xy |= bit,
                Pauli::Y => {
                    xy |= bit;
                    zy |= bit;
                    ny += 1;
                }
                Pauli::Z => zy |= bit,
            }
        }
        (xy, zy, ny)
    }
}

/// Normalized sum of Pauli strings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PauliSum {
    terms: Vec<PauliString>,
}

impl PauliSum {
    pub fn zero() -> Self {
        PauliSum { terms: Vec::new() }
    }

    pub fn identity(coeff: C) -> Self {
        PauliSum::from_strings(vec![PauliString::identity(coeff)])
    }

    /// Build a normalized sum: merge equal patterns, drop exact zeros, sort.
    pub fn from_strings(strings: Vec<PauliString>) -> Self {
        let mut acc: BTreeMap<Vec<(u32, Pauli)>, C> = BTreeMap::new();
        for s in strings {
            *acc.entry(s.pattern()).or_insert(C::new(0.0, 0.0)) += s.coeff;
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .map(|(pat, coeff)| PauliString { coeff, letters: pat.into_iter().collect() })
            .collect();
        PauliSum { terms }
    }

    pub fn terms(&self) -> &[PauliString] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PauliSum) -> PauliSum {
        let mut v = self.terms.clone();
        v.extend(other.terms.iter().cloned());
        PauliSum::from_strings(v)
    }

    pub fn sub(&self, other: &PauliSum) -> PauliSum {
        self.add(&other.scale(C::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: C) -> PauliSum {
        if c.re == 0.0 && c.im == 0.0 {
            return PauliSum::zero();
        }
        PauliSum {
            terms: self
                .terms
                .iter()
                .map(|s| PauliString { coeff: s.coeff * c, letters: s.letters.clone() })
                .collect(),
        }
    }

    pub fn mul(&self, other: &PauliSum) -> PauliSum {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                out.push(a.mul(b));
            }
        }
        PauliSum::from_strings(out)
    }

    pub fn adjoint(&self) -> PauliSum {
        // patterns are Hermitian, so the adjoint just conjugates coefficients
        PauliSum { terms: self.terms.iter().map(|s| s.adjoint()).collect() }
    }

    /// S + S† (the "+H.c." of a written formula), exactly real termwise.
    pub fn plus_adjoint(&self) -> PauliSum {
        self.add(&self.adjoint())
    }

    /// (S + S†)/2, the Hermitian part; exact no-op on Hermitian input.
    pub fn symmetrized(&self) -> PauliSum {
        self.plus_adjoint().scale(C::new(0.5, 0.0))
    }

    pub fn commutator(&self, other: &PauliSum) -> PauliSum {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.iter().all(|s| s.coeff.im.abs() <= tol)
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.terms.iter().map(|s| s.coeff.norm()).fold(0.0, f64::max)
    }

    /// Union of qubits carrying letters.
    pub fn support(&self) -> std::collections::BTreeSet<u32> {
        self.terms.iter().flat_map(|s| s.letters.keys().copied()).collect()
    }

    /// Drop terms with |coeff| ≤ eps.
    pub fn pruned(&self, eps: f64) -> PauliSum {
        PauliSum { terms: self.terms.iter().filter(|s| s.coeff.norm() > eps).cloned().collect() }
    }

    /// Relabel qubits through the given map (must cover the support); the
    /// result is re-canonicalized.
    pub fn remapped(&self, map: &BTreeMap<u32, u32>) -> PauliSum {
        PauliSum::from_strings(
            self.terms
                .iter()
                .map(|s| PauliString {
                    coeff: s.coeff,
                    letters: s.letters.iter().map(|(&q, &p)| (map[&q], p)).collect(),
                })
                .collect(),
        )
    }

    /// Relabel the support onto a compact register 0..k; returns the
    /// remapped sum, the qubit count k and the old→new map. Matrix norms
    /// are invariant under the relabeling.
    pub fn compacted(&self) -> (PauliSum, usize, BTreeMap<u32, u32>) {
        let support: Vec<u32> = self.support().into_iter().collect();
        let map: BTreeMap<u32, u32> =
            support.iter().enumerate().map(|(new, &old)| (old, new as u32)).collect();
        let sum = PauliSum {
            terms: self
                .terms
                .iter()
                .map(|s| PauliString {
                    coeff: s.coeff,
                    letters: s.letters.iter().map(|(&q, &p)| (map[&q], p)).collect(),
                })
                .collect(),
        };
        (sum, support.len(), map)
    }

    /// Text dump, one term per line: `(re,im) X3 Z5` with 17 significant digits.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for s in &self.terms {
            let _ = write!(out, "({:.16e},{:.16e})", s.coeff.re, s.coeff.im);
            for (q, p) in &s.letters {
                let _ = write!(out, " {}{}", p.letter(), q);
            }
            out.push('\n');
        }
        out
    }
}

/// Dense 2^Q × 2^Q matrix of a sum; qubit 0 is the least significant bit.
pub fn to_dense_matrix(sum: &PauliSum, total_qubits: usize) -> Result<DMatrix<C>> {
    to_dense_matrix_with_limit(sum, total_qubits, ORACLE_QUBIT_LIMIT)
}

pub fn to_dense_matrix_with_limit(
    sum: &PauliSum,
    total_qubits: usize,
    limit: usize,
) -> Result<DMatrix<C>> {
    if total_qubits > limit {
        return Err(Error::Capacity(format!(
            "dense oracle limited to {limit} qubits, requested {total_qubits}"
        )));
    }
    let dim = 1usize << total_qubits;
    let mut m = DMatrix::<C>::zeros(dim, dim);
    for s in sum.terms() {
        let (xy, zy, ny) = s.masks(|q| q as usize);
        if (xy | zy) >> total_qubits != 0 {
            return Err(Error::Capacity(format!(
                "string touches qubit outside register of {total_qubits}"
            )));
        }
        let iphase = match ny % 4 {
            0 => C::new(1.0, 0.0),
            1 => C::new(0.0, 1.0),
            2 => C::new(-1.0, 0.0),
            _ => C::new(0.0, -1.0),
        };
        for b in 0..dim {
            let sign = if ((b as u64 & zy).count_ones()) % 2 == 0 { 1.0 } else { -1.0 };
            m[(b ^ xy as usize, b)] += s.coeff * iphase * C::new(sign, 0.0);
        }
    }
    Ok(m)
}

/// Max |entry| of the dense form, streamed column by column (no 2^Q × 2^Q
/// allocation); used to compare closed-form and composed Hamiltonian paths.
pub fn max_abs_dense(sum: &PauliSum, total_qubits: usize) -> Result<f64> {
    if total_qubits > 24 {
        return Err(Error::Capacity(format!(
            "streaming dense evaluation limited to 24 qubits, requested {total_qubits}"
        )));
    }
    let dim = 1usize << total_qubits;
    let masks: Vec<(u64, u64, C)> = sum
        .terms()
        .iter()
        .map(|s| {
            let (xy, zy, ny) = s.masks(|q| q as usize);
            let iphase = match ny % 4 {
                0 => C::new(1.0, 0.0),
                1 => C::new(0.0, 1.0),
                2 => C::new(-1.0, 0.0),
                _ => C::new(0.0, -1.0),
            };
            (xy, zy, s.coeff * iphase)
        })
        .collect();
    let mut col = vec![C::new(0.0, 0.0); dim];
    let mut best = 0.0f64;
    for b in 0..dim {
        let mut touched: Vec<usize> = Vec::with_capacity(masks.len());
        for &(xy, zy, c) in &masks {
            let sign = if ((b as u64 & zy).count_ones()) % 2 == 0 { 1.0 } else { -1.0 };
            let row = b ^ xy as usize;
            col[row] += c * C::new(sign, 0.0);
            touched.push(row);
        }
        for row in touched {
            let v = col[row].norm();
            if v > best {
                best = v;
            }
            col[row] = C::new(0.0, 0.0);
        }
    }
    Ok(best)
}

fn fermion_qubit(mode: &ModeKey, ordering: &ModeOrdering) -> Result<u32> {
    if !mode.species.is_fermionic() {
        return Err(Error::InvalidParameter(format!(
            "{} mode is not fermionic",
            mode.species.label()
        )));
    }
    let kappa = ordering
        .kappa(mode)
        .ok_or_else(|| Error::InvalidParameter(format!("mode {mode:?} not in ordering")))?;
    if kappa >= ordering.fermionic_count() {
        return Err(Error::InvalidParameter("fermionic mode ordered after bosons".into()));
    }
    Ok(kappa as u32)
}

/// Occupation-raising |1⟩⟨0| on one qubit: (X − iY)/2.
fn raise_op(q: u32) -> PauliSum {
    PauliSum::from_strings(vec![
        PauliString::single(C::new(0.5, 0.0), q, Pauli::X),
        PauliString::single(C::new(0.0, -0.5), q, Pauli::Y),
    ])
}

/// Occupation-lowering |0⟩⟨1| on one qubit: (X + iY)/2.
fn lower_op(q: u32) -> PauliSum {
    PauliSum::from_strings(vec![
        PauliString::single(C::new(0.5, 0.0), q, Pauli::X),
        PauliString::single(C::new(0.0, 0.5), q, Pauli::Y),
    ])
}

fn z_string(upto: u32) -> PauliString {
    let mut letters = BTreeMap::new();
    for q in 0..upto {
        letters.insert(q, Pauli::Z);
    }
    PauliString { coeff: C::new(1.0, 0.0), letters }
}

/// Jordan-Wigner creation/annihilation pair for a fermionic mode.
///
/// Creation flips occupation 0→1 with sign (−1)^(number of occupied modes
/// of smaller 𝒦); the Z-string covers exactly the fermionic qubits below.
/// Annihilation is the exact adjoint.
pub fn jw_fermion_ops(mode: &ModeKey, ordering: &ModeOrdering) -> Result<(PauliSum, PauliSum)> {
    let q = fermion_qubit(mode, ordering)?;
    let string = PauliSum::from_strings(vec![z_string(q)]);
    let creation = string.mul(&raise_op(q));
    let annihilation = string.mul(&lower_op(q));
    Ok((creation, annihilation))
}

/// The four ghost-sector field operators for one adjoint color and site.
///
/// The ghost algebra {d, e†} = {e, d†} = −δ with every same-field pair
/// vanishing cannot hold with true Hilbert adjoints on a positive-metric
/// space, so the formal daggers of the field expansions are represented
/// cross-slot: both formal creations are MINUS the standard JW creation
/// (d† on the ghost slot, e† on the antighost slot), while each field's
/// annihilator acts on the conjugate slot (d on the antighost slot, e on
/// the ghost slot). All Eq.-style relations then hold as dense matrices.
#[derive(Debug, Clone)]
pub struct GhostOps {
    pub d: PauliSum,
    pub d_dag: PauliSum,
    pub e: PauliSum,
    pub e_dag: PauliSum,
}

pub fn jw_ghost_field_ops(
    adjoint: u8,
    site: [i32; 3],
    ordering: &ModeOrdering,
) -> Result<GhostOps> {
    let ghost = ModeKey { species: Species::Ghost { adjoint }, site };
    let antighost = ModeKey { species: Species::AntiGhost { adjoint }, site };
    let (create_g, annih_g) = jw_fermion_ops(&ghost, ordering)?;
    let (create_ag, annih_ag) = jw_fermion_ops(&antighost, ordering)?;
    let minus = C::new(-1.0, 0.0);
    Ok(GhostOps {
        d: annih_ag,
        d_dag: create_g.scale(minus),
        e: annih_g,
        e_dag: create_ag.scale(minus),
    })
}

/// Truncated boson ladder pair on a unary block.
///
/// On the valid unary subspace creation|h⟩ = √(h+1)|h+1⟩ for h < 𝒩 and
/// creation|𝒩⟩ = 0; annihilation is the adjoint with annihilation|0⟩ = 0.
pub fn jw_boson_ops(mode: &ModeKey, layout: &RegisterLayout) -> Result<(PauliSum, PauliSum)> {
    let block = layout
        .boson_block(mode)
        .ok_or_else(|| Error::InvalidParameter(format!("{} mode has no unary block", mode.species.label())))?;
    let start = block.start as u32;
    let levels = layout.boson_levels as u32;
    let mut creation = PauliSum::zero();
    let mut annihilation = PauliSum::zero();
    for h in 0..levels - 1 {
        let w = C::new(((h + 1) as f64).sqrt(), 0.0);
        // creation moves the marker h → h+1
        creation = creation.add(&lower_op(start + h).mul(&raise_op(start + h + 1)).scale(w));
        annihilation =
            annihilation.add(&raise_op(start + h).mul(&lower_op(start + h + 1)).scale(w));
    }
    Ok((creation, annihilation))
}
