//! Dense Fock-space Majorana algebra and the fermionic partial transpose.
//!
//! This module is an independent brute-force oracle: operators are dense
//! 2^N x 2^N matrices in the occupation basis |n_1 ... n_N> (mode 1 is the
//! most significant bit), with Majorana generators built by the
//! Jordan-Wigner construction. The fermionic partial transpose multiplies
//! each Majorana monomial `a_{p1}..a_{pk1} b_{q1}..b_{qk2}` (a's on
//! subsystem A) by `i^{k1}`; we implement it literally, by expanding the
//! operator over the 4^N ordered Majorana monomials using the orthogonality
//! `Tr(M_i^dag M_j) = 2^N delta_{ij}` and reassembling.
//!
//! Internally monomials are signed Pauli strings, so expansion coefficients
//! and reassembly cost O(2^N) per monomial instead of dense matrix products.

use crate::error::{Error, Result};
use crate::linalg::{C64, CMatrix, trace_norm};

/// Dense mode cap; 4096^2 matrices are the worst case by design.
pub const MAX_MODES: usize = 6;

#[derive(Debug, Clone)]
pub struct FockOperator {
    pub n_modes: usize,
    pub matrix: CMatrix,
}

impl FockOperator {
    pub fn new(n_modes: usize, matrix: CMatrix) -> Result<Self> {
        check_modes(n_modes)?;
        let dim = 1usize << n_modes;
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::InvalidInput(format!(
                "operator on {n_modes} modes must be {dim}x{dim}"
            )));
        }
        Ok(FockOperator { n_modes, matrix })
    }

    pub fn identity(n_modes: usize) -> Result<Self> {
        check_modes(n_modes)?;
        Ok(FockOperator { n_modes, matrix: CMatrix::identity(1 << n_modes) })
    }

    pub fn mul(&self, other: &FockOperator) -> FockOperator {
        FockOperator { n_modes: self.n_modes, matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn adjoint(&self) -> FockOperator {
        FockOperator { n_modes: self.n_modes, matrix: self.matrix.adjoint() }
    }
}

fn check_modes(n_modes: usize) -> Result<()> {
    if n_modes == 0 || n_modes > MAX_MODES {
        return Err(Error::InvalidInput(format!(
            "mode count must be in 1..={MAX_MODES}, got {n_modes}"
        )));
    }
    Ok(())
}

/// One-site Pauli letters.
const ID: u8 = 0;
const PX: u8 = 1;
const PY: u8 = 2;
const PZ: u8 = 3;

/// A Pauli string with a global phase: the matrix has one nonzero per row.
#[derive(Debug, Clone)]
struct Pauli {
    phase: C64,
    ops: Vec<u8>,
}

impl Pauli {
    fn identity(n: usize) -> Pauli {
        Pauli { phase: C64::new(1.0, 0.0), ops: vec![ID; n] }
    }

    fn mul(&self, rhs: &Pauli) -> Pauli {
        let mut phase = self.phase * rhs.phase;
        let ops = self
            .ops
            .iter()
            .zip(&rhs.ops)
            .map(|(&a, &b)| {
                let (p, o) = mul_letter(a, b);
                phase *= p;
                o
            })
            .collect();
        Pauli { phase, ops }
    }

    /// Column index and entry value for basis column `col` (P|col> = v |row>).
    fn column_action(&self, col: usize) -> (usize, C64) {
        let n = self.ops.len();
        let mut row = col;
        let mut v = self.phase;
        for (site, &op) in self.ops.iter().enumerate() {
            let bit = 1usize << (n - 1 - site);
            let occupied = col & bit != 0;
            match op {
                ID => {}
                PX => row ^= bit,
                PY => {
                    row ^= bit;
                    v *= if occupied { C64::new(0.0, -1.0) } else { C64::new(0.0, 1.0) };
                }
                PZ => {
                    if occupied {
                        v = -v;
                    }
                }
                _ => unreachable!(),
            }
        }
        (row, v)
    }

    /// `Tr(P^dag op) `.
    fn overlap(&self, op: &CMatrix) -> C64 {
        let dim = op.rows();
        let mut t = C64::new(0.0, 0.0);
        for col in 0..dim {
            let (row, v) = self.column_action(col);
            t += v.conj() * op[(row, col)];
        }
        t
    }

    /// `out += z * P`.
    fn accumulate(&self, z: C64, out: &mut CMatrix) {
        for col in 0..out.cols() {
            let (row, v) = self.column_action(col);
            out[(row, col)] += z * v;
        }
    }

    fn to_matrix(&self, dim: usize) -> CMatrix {
        let mut m = CMatrix::zeros(dim, dim);
        self.accumulate(C64::new(1.0, 0.0), &mut m);
        m
    }
}

fn mul_letter(a: u8, b: u8) -> (C64, u8) {
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match (a, b) {
        (ID, x) | (x, ID) => (one, x),
        (x, y) if x == y => (one, ID),
        (PX, PY) => (i, PZ),
        (PY, PX) => (-i, PZ),
        (PY, PZ) => (i, PX),
        (PZ, PY) => (-i, PX),
        (PZ, PX) => (i, PY),
        (PX, PZ) => (-i, PY),
        _ => unreachable!(),
    }
}

/// Jordan-Wigner Pauli string for Majorana generator `index` in 1..=2N.
fn majorana_pauli(n_modes: usize, index: usize) -> Result<Pauli> {
    check_modes(n_modes)?;
    if index == 0 || index > 2 * n_modes {
        return Err(Error::InvalidInput(format!(
            "Majorana index must be in 1..={}, got {index}",
            2 * n_modes
        )));
    }
    let mode = (index + 1) / 2; // 1-based mode
    let mut ops = vec![ID; n_modes];
    for site in 0..mode - 1 {
        ops[site] = PZ;
    }
    let mut phase = C64::new(1.0, 0.0);
    if index % 2 == 1 {
        ops[mode - 1] = PX;
    } else {
        // i(f - f^dag) = -Y on the mode site in this basis.
        ops[mode - 1] = PY;
        phase = C64::new(-1.0, 0.0);
    }
    Ok(Pauli { phase, ops })
}

/// Dense Majorana generator `c_index` on `n_modes` modes.
pub fn majorana(n_modes: usize, index: usize) -> Result<FockOperator> {
    let p = majorana_pauli(n_modes, index)?;
    Ok(FockOperator { n_modes, matrix: p.to_matrix(1 << n_modes) })
}

/// Ordered Majorana monomial for a bitmask over indices 1..=2N
/// (bit j-1 set means `c_j` is present; factors multiply in ascending order).
fn monomial_pauli(n_modes: usize, mask: u32) -> Result<Pauli> {
    let mut p = Pauli::identity(n_modes);
    for j in 1..=2 * n_modes {
        if mask & (1 << (j - 1)) != 0 {
            p = p.mul(&majorana_pauli(n_modes, j)?);
        }
    }
    Ok(p)
}

/// Fermionic partial transpose on the modes in `modes_in_a` (1-based):
/// each monomial picks up `i^{k1}` with `k1` the number of its Majorana
/// factors living on subsystem A.
pub fn fermionic_pt_a(op: &FockOperator, modes_in_a: &[usize]) -> Result<FockOperator> {
    let n = op.n_modes;
    for &m in modes_in_a {
        if m == 0 || m > n {
            return Err(Error::InvalidInput(format!("mode {m} out of range 1..={n}")));
        }
    }
    let mut a_mask: u32 = 0;
    for &m in modes_in_a {
        a_mask |= 1 << (2 * m - 2); // c_{2m-1}
        a_mask |= 1 << (2 * m - 1); // c_{2m}
    }
    let dim = 1usize << n;
    let norm = 1.0 / dim as f64;
    let i_unit = C64::new(0.0, 1.0);
    let mut out = CMatrix::zeros(dim, dim);
    for mask in 0..(1u32 << (2 * n)) {
        let p = monomial_pauli(n, mask)?;
        let coeff = p.overlap(&op.matrix) * norm;
        if coeff.norm() < 1e-16 {
            continue;
        }
        let k1 = (mask & a_mask).count_ones();
        p.accumulate(coeff * i_unit.powu(k1), &mut out);
    }
    Ok(FockOperator { n_modes: n, matrix: out })
}

/// `ln || rho^{T_A} ||_1` for a Hermitian, unit-trace, parity-even operator.
pub fn fermionic_ln(rho: &FockOperator, modes_in_a: &[usize]) -> Result<f64> {
    if rho.matrix.hermitian_defect() > 1e-10 {
        return Err(Error::InvalidInput("density matrix must be Hermitian".into()));
    }
    if (rho.matrix.trace() - C64::new(1.0, 0.0)).norm() > 1e-10 {
        return Err(Error::InvalidInput(format!(
            "density matrix trace {} must be 1",
            rho.matrix.trace().re
        )));
    }
    let pt = fermionic_pt_a(rho, modes_in_a)?;
    Ok(trace_norm(&pt.matrix)?.ln())
}

/// Vortex exchange operator `tau = (1 - gamma_i gamma_j)/sqrt(2)`, the
/// unitary conjugating `gamma_i -> gamma_j`, `gamma_j -> -gamma_i`.
pub fn vortex_exchange(n_modes: usize, i: usize, j: usize) -> Result<FockOperator> {
    if i == j {
        return Err(Error::InvalidInput("exchange needs two distinct Majorana indices".into()));
    }
    let gi = majorana(n_modes, i)?;
    let gj = majorana(n_modes, j)?;
    let dim = 1usize << n_modes;
    let m = CMatrix::identity(dim)
        .sub(&gi.matrix.mul(&gj.matrix))
        .scale(C64::new(2.0f64.sqrt().recip(), 0.0));
    Ok(FockOperator { n_modes, matrix: m })
}
