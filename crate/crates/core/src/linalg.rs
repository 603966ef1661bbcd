//! Minimal dense complex-matrix kernel.
//!
//! Everything in this crate works with small matrices (channel coefficient
//! blocks, a 7x7 associator block, Fock operators up to 64x64), so the
//! algorithms here favor robustness over asymptotics: a cyclic Jacobi
//! eigensolver for Hermitian matrices and a one-sided Jacobi SVD. One-sided
//! Jacobi computes small singular values to high relative accuracy, which the
//! 1e-10 trace-norm agreement tests rely on.

use crate::error::{Error, Result};
use num_complex::Complex64;

pub type C64 = Complex64;

/// Dense complex matrix, row-major storage.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl std::fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let r = rows.len();
        let c = if r > 0 { rows[0].len() } else { 0 };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        CMatrix { rows: r, cols: c, data: rows.concat() }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let conv: Vec<Vec<C64>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&conv)
    }

    pub fn scalar(z: C64) -> Self {
        CMatrix { rows: 1, cols: 1, data: vec![z] }
    }

    pub fn diag(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn transpose(&self) -> CMatrix {
        let mut t = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn conj(&self) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let mut t = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].conj();
            }
        }
        t
    }

    pub fn scale(&self, z: C64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|w| w * z).collect(),
        }
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(l, j)];
                }
            }
        }
        out
    }

    /// max |A[i][j] - conj(A[j][i])|; 0 for exactly Hermitian matrices.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut d: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                d = d.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        d
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_defect() <= 1e-12 * 1.0f64.max(self.max_abs())
    }

    /// max |(A A^dag - I)[i][j]|.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.mul(&self.adjoint()).sub(&CMatrix::identity(self.rows)).max_abs()
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Kronecker product.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let z = a[(i, j)];
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = z * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Returns (eigenvalues ascending, unitary V with matching columns), so that
/// m = V diag(vals) V^dag up to roundoff.
pub fn hermitian_eig(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if !m.is_finite() {
        return Err(Error::InvalidInput("non-finite matrix entries".into()));
    }
    if m.hermitian_defect() > 1e-12 * 1.0f64.max(m.max_abs()) {
        return Err(Error::InvalidInput(format!(
            "matrix is not Hermitian (defect {:.3e})",
            m.hermitian_defect()
        )));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut v = CMatrix::identity(n);
    let scale = 1.0f64.max(m.max_abs());
    for _sweep in 0..100 {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phi = apq.arg();
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G restricted to (p,q) is diag(1, e^{-i phi}) * [[c, s], [-s, c]].
                let gpp = C64::new(c, 0.0);
                let gpq = C64::new(s, 0.0);
                let gqp = C64::from_polar(-s, -phi);
                let gqq = C64::from_polar(c, -phi);
                // A <- G^dag A G, applied as row then column updates.
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = gpp.conj() * apj + gqp.conj() * aqj;
                    a[(q, j)] = gpq.conj() * apj + gqq.conj() * aqj;
                }
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * gpp + aiq * gqp;
                    a[(i, q)] = aip * gpq + aiq * gqq;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * gpp + viq * gqp;
                    v[(i, q)] = vip * gpq + viq * gqq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let vals: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());
    let sorted_vals: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
    let mut sorted_v = CMatrix::zeros(n, n);
    for (newc, &oldc) in order.iter().enumerate() {
        for i in 0..n {
            sorted_v[(i, newc)] = v[(i, oldc)];
        }
    }
    Ok((sorted_vals, sorted_v))
}

/// Real spectrum of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    hermitian_eig(m).map(|(vals, _)| vals)
}

/// Singular values (descending) by one-sided Jacobi on columns.
pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    if !m.is_finite() {
        return Err(Error::InvalidInput("non-finite matrix entries".into()));
    }
    // Work on the taller orientation so columns outnumber-or-match rows is avoided.
    let mut w = if m.rows >= m.cols { m.clone() } else { m.adjoint() };
    let n = w.cols;
    let rows = w.rows;
    for _sweep in 0..100 {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let mut aii = 0.0;
                let mut ajj = 0.0;
                let mut g = C64::new(0.0, 0.0);
                for r in 0..rows {
                    let wi = w[(r, i)];
                    let wj = w[(r, j)];
                    aii += wi.norm_sqr();
                    ajj += wj.norm_sqr();
                    g += wi.conj() * wj;
                }
                let gr = g.norm();
                if gr <= 1e-30 || gr * gr <= 1e-30 * aii * ajj {
                    continue;
                }
                rotated = true;
                let phi = g.arg();
                let tau = (ajj - aii) / (2.0 * gr);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let ph = C64::from_polar(1.0, -phi);
                for r in 0..rows {
                    let wi = w[(r, i)];
                    let wj = w[(r, j)] * ph; // phase so that wi^dag wj is real
                    w[(r, i)] = wi.scale(c) - wj.scale(s);
                    w[(r, j)] = wi.scale(s) + wj.scale(c);
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..n)
        .map(|j| (0..rows).map(|r| w[(r, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(sv)
}

/// Sum of singular values (the one-norm / trace norm).
pub fn trace_norm(m: &CMatrix) -> Result<f64> {
    Ok(singular_values(m)?.iter().sum())
}

/// Number of singular values above tol * sigma_max (0 for the zero matrix).
pub fn numerical_rank(m: &CMatrix, tol: f64) -> Result<usize> {
    let sv = singular_values(m)?;
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > tol * smax).count())
}

pub const DEFAULT_RANK_TOL: f64 = 1e-9;
