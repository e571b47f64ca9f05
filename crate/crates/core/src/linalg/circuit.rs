//! Composable circuits built from structured gate operations.
//!
//! A [`UnitaryCircuit`] is an ordered list of [`GateOp`]s on a fixed register,
//! applied front to back. Gates carry small dense matrices on a target subset
//! (the general case), or one of three structured kinds that stay cheap at
//! register sizes where a full dense matrix would not fit: a reflection about
//! the all-zeros subspace of a qubit subset, a register-to-register XOR
//! permutation, and the two-block dilation of a diagonal contraction.
//!
//! Query counts and depth estimates are metadata: they are set by the
//! constructors of the named operators and add under composition.

use super::state::{StateVector, UnnormalizedVector};
use super::{bit_position, check_register, spectral_norm, CMatrix, C64};
use crate::{Error, Result};

/// A control condition: the gate acts only where `qubit` carries `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    pub value: bool,
}

#[derive(Debug, Clone)]
pub enum GateKind {
    /// Dense matrix on the listed targets; `targets[0]` is the gate's most
    /// significant qubit.
    Dense {
        matrix: CMatrix,
        targets: Vec<usize>,
    },
    /// `I - 2|0..0><0..0|` on the listed qubits, identity elsewhere.
    ReflectAboutZeros { qubits: Vec<usize> },
    /// XORs the value of the `src` register into the `dst` register.
    XorRegister { src: Vec<usize>, dst: Vec<usize> },
    /// Dilation of a diagonal contraction: qubit 0 is the dilation ancilla and
    /// `pairs[j] = (b_j, r_j)` with `r_j = sqrt(1 - |b_j|^2)` gives the block
    /// `[[b_j, r_j], [r_j, -conj(b_j)]]` coupling `|0,j>` and `|1,j>`.
    DiagonalDilation { pairs: Vec<(C64, f64)> },
}

#[derive(Debug, Clone)]
pub struct GateOp {
    pub kind: GateKind,
    pub controls: Vec<Control>,
}

impl GateOp {
    fn touched_qubits(&self) -> Vec<usize> {
        match &self.kind {
            GateKind::Dense { targets, .. } => targets.clone(),
            GateKind::ReflectAboutZeros { qubits } => qubits.clone(),
            GateKind::XorRegister { src, dst } => {
                let mut v = src.clone();
                v.extend_from_slice(dst);
                v
            }
            GateKind::DiagonalDilation { .. } => vec![0],
        }
    }

    fn adjoint(&self) -> GateOp {
        let kind = match &self.kind {
            GateKind::Dense { matrix, targets } => GateKind::Dense {
                matrix: matrix.adjoint(),
                targets: targets.clone(),
            },
            // self-inverse kinds
            GateKind::ReflectAboutZeros { qubits } => GateKind::ReflectAboutZeros {
                qubits: qubits.clone(),
            },
            GateKind::XorRegister { src, dst } => GateKind::XorRegister {
                src: src.clone(),
                dst: dst.clone(),
            },
            GateKind::DiagonalDilation { pairs } => GateKind::DiagonalDilation {
                pairs: pairs.iter().map(|(b, r)| (b.conj(), *r)).collect(),
            },
        };
        GateOp {
            kind,
            controls: self.controls.clone(),
        }
    }

    fn shifted(&self, offset: usize) -> GateOp {
        let shift = |v: &[usize]| v.iter().map(|q| q + offset).collect::<Vec<_>>();
        let kind = match &self.kind {
            GateKind::Dense { matrix, targets } => GateKind::Dense {
                matrix: matrix.clone(),
                targets: shift(targets),
            },
            GateKind::ReflectAboutZeros { qubits } => GateKind::ReflectAboutZeros {
                qubits: shift(qubits),
            },
            GateKind::XorRegister { src, dst } => GateKind::XorRegister {
                src: shift(src),
                dst: shift(dst),
            },
            GateKind::DiagonalDilation { pairs } => {
                if offset == 0 {
                    GateKind::DiagonalDilation {
                        pairs: pairs.clone(),
                    }
                } else {
                    // the dilation is anchored to qubit 0 of its own register;
                    // displacing it densifies it first
                    let m = dilation_pairs_to_dense(pairs);
                    let k = pairs.len().trailing_zeros() as usize + 1;
                    GateKind::Dense {
                        matrix: m,
                        targets: (offset..offset + k).collect(),
                    }
                }
            }
        };
        GateOp {
            kind,
            controls: self
                .controls
                .iter()
                .map(|c| Control {
                    qubit: c.qubit + offset,
                    value: c.value,
                })
                .collect(),
        }
    }
}

/// Dense matrix of a diagonal dilation, `[[b_j, r_j], [r_j, -conj(b_j)]]`
/// per rest-index.
pub(crate) fn dilation_pairs_to_dense(pairs: &[(C64, f64)]) -> CMatrix {
    let half = pairs.len();
    let dim = 2 * half;
    let mut m = CMatrix::zeros(dim, dim);
    for (j, (b, r)) in pairs.iter().enumerate() {
        m[(j, j)] = *b;
        m[(j, half + j)] = C64::new(*r, 0.0);
        m[(half + j, j)] = C64::new(*r, 0.0);
        m[(half + j, half + j)] = -b.conj();
    }
    m
}

/// A composable gate sequence on a fixed register with query/depth metadata.
///
/// `controlled_u_queries` counts uses of the state-preparation oracle embedded
/// in the circuit; `depth_estimate` is an analytic single/two-qubit depth.
/// Both add under [`UnitaryCircuit::then`] and [`UnitaryCircuit::kron`].
#[derive(Debug, Clone)]
pub struct UnitaryCircuit {
    n_qubits: usize,
    ops: Vec<GateOp>,
    controlled_u_queries: u64,
    depth_estimate: u64,
}

impl UnitaryCircuit {
    pub fn identity(n_qubits: usize) -> Result<Self> {
        check_register(n_qubits)?;
        Ok(UnitaryCircuit {
            n_qubits,
            ops: Vec::new(),
            controlled_u_queries: 0,
            depth_estimate: 0,
        })
    }

    /// Circuit consisting of a single dense gate on the given targets.
    pub fn dense_gate(n_qubits: usize, matrix: CMatrix, targets: Vec<usize>) -> Result<Self> {
        check_register(n_qubits)?;
        validate_targets(n_qubits, &targets)?;
        let dim = 1usize << targets.len();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::LengthMismatch {
                left: matrix.nrows(),
                right: dim,
            });
        }
        let mut c = UnitaryCircuit::identity(n_qubits)?;
        c.ops.push(GateOp {
            kind: GateKind::Dense { matrix, targets },
            controls: Vec::new(),
        });
        c.depth_estimate = 1;
        Ok(c)
    }

    /// Whole-register circuit from a full dense matrix.
    pub fn from_matrix(n_qubits: usize, matrix: CMatrix) -> Result<Self> {
        let targets: Vec<usize> = (0..n_qubits).collect();
        Self::dense_gate(n_qubits, matrix, targets)
    }

    pub(crate) fn push(&mut self, op: GateOp) {
        self.ops.push(op);
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn controlled_u_queries(&self) -> u64 {
        self.controlled_u_queries
    }

    pub fn depth_estimate(&self) -> u64 {
        self.depth_estimate
    }

    pub fn with_queries(mut self, queries: u64) -> Self {
        self.controlled_u_queries = queries;
        self
    }

    pub fn with_depth(mut self, depth: u64) -> Self {
        self.depth_estimate = depth;
        self
    }

    /// Sequential composition: `self` first, then `other` (matrix `other * self`).
    pub fn then(mut self, other: &UnitaryCircuit) -> Result<Self> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        self.ops.extend(other.ops.iter().cloned());
        self.controlled_u_queries += other.controlled_u_queries;
        self.depth_estimate += other.depth_estimate;
        Ok(self)
    }

    /// Adjoint circuit: reversed op order, each op adjointed. Metadata is kept
    /// (the inverse costs the same queries and depth).
    pub fn adjoint(&self) -> Self {
        UnitaryCircuit {
            n_qubits: self.n_qubits,
            ops: self.ops.iter().rev().map(GateOp::adjoint).collect(),
            controlled_u_queries: self.controlled_u_queries,
            depth_estimate: self.depth_estimate,
        }
    }

    /// Tensor product: `self` becomes the most significant factor.
    pub fn kron(&self, other: &UnitaryCircuit) -> Result<Self> {
        let n = self.n_qubits + other.n_qubits;
        check_register(n)?;
        let mut ops = Vec::with_capacity(self.ops.len() + other.ops.len());
        ops.extend(self.ops.iter().cloned());
        ops.extend(other.ops.iter().map(|op| op.shifted(self.n_qubits)));
        Ok(UnitaryCircuit {
            n_qubits: n,
            ops,
            controlled_u_queries: self.controlled_u_queries + other.controlled_u_queries,
            depth_estimate: self.depth_estimate + other.depth_estimate,
        })
    }

    /// Embeds this circuit into a larger register at the given qubit offset,
    /// acting as identity elsewhere.
    pub fn embed(&self, total_qubits: usize, offset: usize) -> Result<Self> {
        check_register(total_qubits)?;
        if offset + self.n_qubits > total_qubits {
            return Err(Error::param(
                "offset",
                format!(
                    "{}-qubit circuit at offset {offset} does not fit in {total_qubits} qubits",
                    self.n_qubits
                ),
            ));
        }
        Ok(UnitaryCircuit {
            n_qubits: total_qubits,
            ops: self.ops.iter().map(|op| op.shifted(offset)).collect(),
            controlled_u_queries: self.controlled_u_queries,
            depth_estimate: self.depth_estimate,
        })
    }

    /// Adds a control condition to every op. The control qubit must lie
    /// outside every op's touched set.
    pub fn add_control(mut self, qubit: usize, value: bool) -> Result<Self> {
        if qubit >= self.n_qubits {
            return Err(Error::InvalidQubit {
                qubit,
                n_qubits: self.n_qubits,
            });
        }
        for op in &mut self.ops {
            if op.touched_qubits().contains(&qubit) {
                return Err(Error::param(
                    "control",
                    format!("qubit {qubit} is acted on by the circuit"),
                ));
            }
            op.controls.push(Control { qubit, value });
        }
        Ok(self)
    }

    /// Applies the circuit in place to a raw amplitude vector.
    pub fn apply_in_place(&self, amps: &mut [C64]) -> Result<()> {
        if amps.len() != self.dim() {
            return Err(Error::LengthMismatch {
                left: amps.len(),
                right: self.dim(),
            });
        }
        for op in &self.ops {
            apply_op(self.n_qubits, op, amps);
        }
        Ok(())
    }

    pub fn apply(&self, s: &StateVector) -> Result<StateVector> {
        if s.n_qubits() != self.n_qubits {
            return Err(Error::QubitMismatch {
                left: s.n_qubits(),
                right: self.n_qubits,
            });
        }
        let mut amps = s.amplitudes().to_vec();
        self.apply_in_place(&mut amps)?;
        Ok(StateVector::from_raw_unchecked(self.n_qubits, amps))
    }

    pub fn apply_unnormalized(&self, s: &UnnormalizedVector) -> Result<UnnormalizedVector> {
        if s.n_qubits() != self.n_qubits {
            return Err(Error::QubitMismatch {
                left: s.n_qubits(),
                right: self.n_qubits,
            });
        }
        let mut amps = s.amplitudes().to_vec();
        self.apply_in_place(&mut amps)?;
        UnnormalizedVector::new(self.n_qubits, amps)
    }

    /// The circuit's action on `|0...0>`.
    pub fn column_zero(&self) -> Result<Vec<C64>> {
        let mut amps = vec![C64::new(0.0, 0.0); self.dim()];
        amps[0] = C64::new(1.0, 0.0);
        self.apply_in_place(&mut amps)?;
        Ok(amps)
    }

    /// Materializes the dense matrix by applying the circuit to every basis
    /// vector. Quadratic in the dimension; intended for verification at small
    /// register sizes.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        let dim = self.dim();
        let mut m = CMatrix::zeros(dim, dim);
        let mut col = vec![C64::new(0.0, 0.0); dim];
        for j in 0..dim {
            col.iter_mut().for_each(|a| *a = C64::new(0.0, 0.0));
            col[j] = C64::new(1.0, 0.0);
            self.apply_in_place(&mut col)?;
            for i in 0..dim {
                m[(i, j)] = col[i];
            }
        }
        Ok(m)
    }

    /// `||M^dag M - I||_2`, computed from the materialized matrix.
    pub fn unitarity_deviation(&self) -> Result<f64> {
        let m = self.to_matrix()?;
        let gram = m.adjoint() * &m;
        let eye = CMatrix::identity(gram.nrows(), gram.ncols());
        Ok(spectral_norm(&(gram - eye)))
    }
}

fn validate_targets(n_qubits: usize, targets: &[usize]) -> Result<()> {
    if targets.is_empty() {
        return Err(Error::param(
            "targets",
            "gate must touch at least one qubit",
        ));
    }
    let mut seen = vec![false; n_qubits];
    for &t in targets {
        if t >= n_qubits {
            return Err(Error::InvalidQubit { qubit: t, n_qubits });
        }
        if seen[t] {
            return Err(Error::param("targets", format!("qubit {t} listed twice")));
        }
        seen[t] = true;
    }
    Ok(())
}

fn controls_mask(n_qubits: usize, controls: &[Control]) -> (usize, usize) {
    let mut mask = 0usize;
    let mut value = 0usize;
    for c in controls {
        let bit = 1usize << bit_position(n_qubits, c.qubit);
        mask |= bit;
        if c.value {
            value |= bit;
        }
    }
    (mask, value)
}

fn apply_op(n_qubits: usize, op: &GateOp, amps: &mut [C64]) {
    let (cmask, cval) = controls_mask(n_qubits, &op.controls);
    match &op.kind {
        GateKind::Dense { matrix, targets } => {
            apply_dense(n_qubits, matrix, targets, cmask, cval, amps)
        }
        GateKind::ReflectAboutZeros { qubits } => {
            let zmask: usize = qubits
                .iter()
                .map(|&q| 1usize << bit_position(n_qubits, q))
                .sum();
            for (idx, a) in amps.iter_mut().enumerate() {
                if idx & cmask == cval && idx & zmask == 0 {
                    *a = -*a;
                }
            }
        }
        GateKind::XorRegister { src, dst } => apply_xor(n_qubits, src, dst, cmask, cval, amps),
        GateKind::DiagonalDilation { pairs } => {
            let half = amps.len() / 2;
            debug_assert_eq!(pairs.len(), half);
            for (j, (b, r)) in pairs.iter().enumerate() {
                // Controls may reference rest qubits only; their bits agree
                // between the two coupled indices.
                if j & cmask != cval {
                    continue;
                }
                let a0 = amps[j];
                let a1 = amps[half + j];
                amps[j] = b * a0 + r * a1;
                amps[half + j] = r * a0 - b.conj() * a1;
            }
        }
    }
}

fn apply_dense(
    n_qubits: usize,
    matrix: &CMatrix,
    targets: &[usize],
    cmask: usize,
    cval: usize,
    amps: &mut [C64],
) {
    let k = targets.len();
    let gate_dim = 1usize << k;
    let tmask: usize = targets
        .iter()
        .map(|&q| 1usize << bit_position(n_qubits, q))
        .sum();

    // Offsets of the gathered amplitudes for each gate basis index, honoring
    // the MSB-first ordering of `targets`.
    let mut offsets = vec![0usize; gate_dim];
    for (g, slot) in offsets.iter_mut().enumerate() {
        let mut idx = 0usize;
        for (t, &q) in targets.iter().enumerate() {
            if (g >> (k - 1 - t)) & 1 == 1 {
                idx |= 1usize << bit_position(n_qubits, q);
            }
        }
        *slot = idx;
    }

    let mut scratch_in = vec![C64::new(0.0, 0.0); gate_dim];
    let mut scratch_out = vec![C64::new(0.0, 0.0); gate_dim];
    for base in 0..amps.len() {
        if base & tmask != 0 || base & cmask != cval {
            continue;
        }
        for (g, &off) in offsets.iter().enumerate() {
            scratch_in[g] = amps[base | off];
        }
        for (row, out) in scratch_out.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (col, &x) in scratch_in.iter().enumerate() {
                acc += matrix[(row, col)] * x;
            }
            *out = acc;
        }
        for (g, &off) in offsets.iter().enumerate() {
            amps[base | off] = scratch_out[g];
        }
    }
}

fn apply_xor(
    n_qubits: usize,
    src: &[usize],
    dst: &[usize],
    cmask: usize,
    cval: usize,
    amps: &mut [C64],
) {
    debug_assert_eq!(src.len(), dst.len());
    let width = src.len();
    for idx in 0..amps.len() {
        if idx & cmask != cval {
            continue;
        }
        // Read the source register value and XOR it into the destination.
        let mut other = idx;
        for t in 0..width {
            let sbit = (idx >> bit_position(n_qubits, src[t])) & 1;
            if sbit == 1 {
                other ^= 1usize << bit_position(n_qubits, dst[t]);
            }
        }
        // XOR is an involution: swap each 2-cycle once.
        if other > idx {
            amps.swap(idx, other);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::EXACT_TOL;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn hadamard() -> CMatrix {
        let s = 1.0 / 2f64.sqrt();
        CMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)])
    }

    fn pauli_x() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
    }

    #[test]
    fn identity_apply_returns_input() {
        let circ = UnitaryCircuit::identity(2).unwrap();
        let s = StateVector::basis(2, 3).unwrap();
        assert_eq!(circ.apply(&s).unwrap(), s);
    }

    #[test]
    fn hadamard_on_zero() {
        let circ = UnitaryCircuit::dense_gate(1, hadamard(), vec![0]).unwrap();
        let out = circ.apply(&StateVector::zero(1).unwrap()).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!((out.amplitudes()[0] - c(s, 0.0)).norm() < 1e-15);
        assert!((out.amplitudes()[1] - c(s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn kron_of_identities() {
        let i1 = UnitaryCircuit::identity(1).unwrap();
        let i2 = i1.kron(&i1).unwrap();
        let m = i2.to_matrix().unwrap();
        assert_eq!(m, CMatrix::identity(4, 4));
    }

    #[test]
    fn kron_x_with_identity_permutes_basis() {
        // kron(X, I) on |00> gives |10>
        let x = UnitaryCircuit::dense_gate(1, pauli_x(), vec![0]).unwrap();
        let i1 = UnitaryCircuit::identity(1).unwrap();
        let circ = x.kron(&i1).unwrap();
        let out = circ.apply(&StateVector::zero(2).unwrap()).unwrap();
        assert_eq!(out, StateVector::basis(2, 2).unwrap());
    }

    #[test]
    fn kron_h_h_gives_uniform() {
        let h = UnitaryCircuit::dense_gate(1, hadamard(), vec![0]).unwrap();
        let hh = h.kron(&h).unwrap();
        let out = hh.apply(&StateVector::zero(2).unwrap()).unwrap();
        for a in out.amplitudes() {
            assert!((a - c(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn kron_respects_register_limit() {
        let big = UnitaryCircuit::identity(8).unwrap();
        let res = big.kron(&UnitaryCircuit::identity(8).unwrap());
        assert!(matches!(res, Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn metadata_adds_under_composition() {
        let a = UnitaryCircuit::identity(2)
            .unwrap()
            .with_queries(3)
            .with_depth(5);
        let b = UnitaryCircuit::identity(2)
            .unwrap()
            .with_queries(4)
            .with_depth(7);
        let ab = a.clone().then(&b).unwrap();
        assert_eq!(ab.controlled_u_queries(), 7);
        assert_eq!(ab.depth_estimate(), 12);
        let k = a.kron(&b).unwrap();
        assert_eq!(k.controlled_u_queries(), 7);
        assert_eq!(k.depth_estimate(), 12);
    }

    #[test]
    fn adjoint_reverses_dense_sequence() {
        // H then X; adjoint must be X then H
        let h = UnitaryCircuit::dense_gate(1, hadamard(), vec![0]).unwrap();
        let x = UnitaryCircuit::dense_gate(1, pauli_x(), vec![0]).unwrap();
        let hx = h.clone().then(&x).unwrap();
        let m = hx.to_matrix().unwrap();
        let madj = hx.adjoint().to_matrix().unwrap();
        let prod = m * madj;
        assert!(spectral_norm(&(prod - CMatrix::identity(2, 2))) < EXACT_TOL);
    }

    #[test]
    fn controlled_gate_acts_on_matching_branch_only() {
        // X on qubit 1 controlled on qubit 0 = 1: maps |10> -> |11>, fixes |00>
        let x = UnitaryCircuit::dense_gate(1, pauli_x(), vec![0]).unwrap();
        let cx = x.embed(2, 1).unwrap().add_control(0, true).unwrap();
        let out = cx.apply(&StateVector::basis(2, 2).unwrap()).unwrap();
        assert_eq!(out, StateVector::basis(2, 3).unwrap());
        let fixed = cx.apply(&StateVector::basis(2, 0).unwrap()).unwrap();
        assert_eq!(fixed, StateVector::basis(2, 0).unwrap());
    }

    #[test]
    fn reflect_about_zeros_flips_only_zero_block() {
        let mut circ = UnitaryCircuit::identity(2).unwrap();
        circ.push(GateOp {
            kind: GateKind::ReflectAboutZeros { qubits: vec![0] },
            controls: vec![],
        });
        let s = 0.5f64.sqrt();
        let input =
            StateVector::new(2, vec![c(s, 0.0), c(0.0, 0.0), c(s, 0.0), c(0.0, 0.0)]).unwrap();
        let out = circ.apply(&input).unwrap();
        assert!((out.amplitudes()[0] - c(-s, 0.0)).norm() < 1e-15);
        assert!((out.amplitudes()[2] - c(s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn xor_register_copies_under_control() {
        // src = qubit 2, dst = qubit 0, control qubit 1 = 1 (a 3-qubit toy copy)
        let mut circ = UnitaryCircuit::identity(3).unwrap();
        circ.push(GateOp {
            kind: GateKind::XorRegister {
                src: vec![2],
                dst: vec![0],
            },
            controls: vec![Control {
                qubit: 1,
                value: true,
            }],
        });
        // |0,1,1> -> |1,1,1>
        let out = circ.apply(&StateVector::basis(3, 0b011).unwrap()).unwrap();
        assert_eq!(out, StateVector::basis(3, 0b111).unwrap());
        // control off: |0,0,1> fixed
        let fixed = circ.apply(&StateVector::basis(3, 0b001).unwrap()).unwrap();
        assert_eq!(fixed, StateVector::basis(3, 0b001).unwrap());
        // involution
        let twice = circ.apply(&out).unwrap();
        assert_eq!(twice, StateVector::basis(3, 0b011).unwrap());
    }

    #[test]
    fn diagonal_dilation_is_unitary() {
        let pairs = vec![
            (c(0.3, 0.0), (1.0f64 - 0.09).sqrt()),
            (c(-0.7, 0.2), (1.0f64 - 0.53).sqrt()),
        ];
        let mut circ = UnitaryCircuit::identity(2).unwrap();
        circ.push(GateOp {
            kind: GateKind::DiagonalDilation { pairs },
            controls: vec![],
        });
        assert!(circ.unitarity_deviation().unwrap() < EXACT_TOL);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn prop_metadata_additive_over_compositions(
                meta in proptest::collection::vec((0u64..1000, 0u64..1000), 1..8)
            ) {
                let mut total_q = 0u64;
                let mut total_d = 0u64;
                let mut circuit = UnitaryCircuit::identity(2).unwrap();
                for (q, d) in meta {
                    let part = UnitaryCircuit::identity(2).unwrap().with_queries(q).with_depth(d);
                    circuit = circuit.then(&part).unwrap();
                    total_q += q;
                    total_d += d;
                }
                prop_assert_eq!(circuit.controlled_u_queries(), total_q);
                prop_assert_eq!(circuit.depth_estimate(), total_d);
                // kron with itself doubles both counters
                let squared = circuit.kron(&circuit).unwrap();
                prop_assert_eq!(squared.controlled_u_queries(), 2 * total_q);
                prop_assert_eq!(squared.depth_estimate(), 2 * total_d);
            }
        }
    }

    #[test]
    fn apply_unitary_adjoint_roundtrip() {
        let h = UnitaryCircuit::dense_gate(1, hadamard(), vec![0]).unwrap();
        let circ = h.embed(3, 1).unwrap();
        let both = circ.clone().then(&circ.adjoint()).unwrap();
        let s = StateVector::basis(3, 5).unwrap();
        let out = both.apply(&s).unwrap();
        let dist = crate::linalg::l2_distance(out.amplitudes(), s.amplitudes()).unwrap();
        assert!(dist < 1e-12);
    }
}
