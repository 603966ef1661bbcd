//! Two-anyon ("dimer") density matrices and their entropy measures.
//!
//! A dimer state of charges `a` and `b` is a density matrix diagonal in the
//! joint fusion channel `f`, with one Hermitian PSD coefficient matrix
//! `[p^f]` per channel of shape `N_ab^f x N_ab^f`, normalized so that
//! `sum_f Tr [p^f] = 1` (quantum trace normalization of the state).

use crate::category::Category;
use crate::error::{Error, Result};
use crate::linalg::{C64, CMatrix, hermitian_eigenvalues};
use std::collections::BTreeMap;

/// Eigenvalues below this count as exact zeros in entropy sums.
pub const ENTROPY_EIGENVALUE_CUTOFF: f64 = 1e-14;
/// Minimum eigenvalue allowed for a coefficient matrix.
pub const PSD_TOL: f64 = 1e-10;
/// Total trace may deviate this much before the state is rejected; smaller
/// deviations are repaired by rescaling.
pub const TRACE_REPAIR_TOL: f64 = 1e-6;

/// Which subsystem a one-sided operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

#[derive(Clone)]
pub struct DimerState<'c> {
    cat: &'c Category,
    a: usize,
    b: usize,
    // BTreeMap keeps channel iteration deterministic.
    p: BTreeMap<usize, CMatrix>,
}

impl<'c> DimerState<'c> {
    pub fn cat(&self) -> &'c Category {
        self.cat
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn channels(&self) -> impl Iterator<Item = (usize, &CMatrix)> {
        self.p.iter().map(|(&f, m)| (f, m))
    }

    pub fn block(&self, f: usize) -> Option<&CMatrix> {
        self.p.get(&f)
    }

    /// Channel weight p_f = Tr [p^f].
    pub fn weight(&self, f: usize) -> f64 {
        self.p.get(&f).map(|m| m.trace().re).unwrap_or(0.0)
    }

    /// True when every fusion channel of a x b is multiplicity free.
    pub fn multiplicity_free(&self) -> bool {
        self.cat
            .channels(self.a, self.b)
            .into_iter()
            .all(|f| self.cat.n(self.a, self.b, f) <= 1)
    }
}

pub fn new_dimer<'c>(
    cat: &'c Category,
    a: usize,
    b: usize,
    p: BTreeMap<usize, CMatrix>,
) -> Result<DimerState<'c>> {
    if a >= cat.num_labels() || b >= cat.num_labels() {
        return Err(Error::InvalidInput("dimer labels out of range".into()));
    }
    if p.is_empty() {
        return Err(Error::InvalidInput("dimer needs at least one fusion channel".into()));
    }
    let mut total = 0.0;
    for (&f, block) in &p {
        let mult = cat.n(a, b, f);
        if mult == 0 {
            return Err(Error::InvalidInput(format!(
                "channel {} is not admissible for {} x {}",
                cat.label(f).name,
                cat.label(a).name,
                cat.label(b).name
            )));
        }
        if block.rows() != mult || block.cols() != mult {
            return Err(Error::InvalidInput(format!(
                "channel {} block must be {mult}x{mult}, got {}x{}",
                cat.label(f).name,
                block.rows(),
                block.cols()
            )));
        }
        if block.hermitian_defect() > 1e-10 {
            return Err(Error::InvalidInput(format!(
                "channel {} block is not Hermitian",
                cat.label(f).name
            )));
        }
        let eigs = hermitian_eigenvalues(block)?;
        if eigs.iter().any(|&l| l < -PSD_TOL) {
            return Err(Error::InvalidInput(format!(
                "channel {} block is not positive semi-definite (min eigenvalue {:.3e})",
                cat.label(f).name,
                eigs.iter().cloned().fold(f64::INFINITY, f64::min)
            )));
        }
        total += block.trace().re;
    }
    if (total - 1.0).abs() > TRACE_REPAIR_TOL {
        return Err(Error::InvalidInput(format!(
            "dimer trace {total} deviates from 1 beyond {TRACE_REPAIR_TOL}"
        )));
    }
    let p = if (total - 1.0).abs() > 0.0 {
        let s = C64::new(1.0 / total, 0.0);
        p.into_iter().map(|(f, m)| (f, m.scale(s))).collect()
    } else {
        p
    };
    Ok(DimerState { cat, a, b, p })
}

/// Convenience constructor for multiplicity-free channel weights.
pub fn dimer_from_weights<'c>(
    cat: &'c Category,
    a: usize,
    b: usize,
    weights: &[(usize, f64)],
) -> Result<DimerState<'c>> {
    let mut p = BTreeMap::new();
    for &(f, w) in weights {
        if w < -PSD_TOL {
            return Err(Error::InvalidInput(format!("negative channel weight {w}")));
        }
        if w.abs() <= PSD_TOL && cat.n(a, b, f) != 0 {
            // Zero-weight channels may simply be omitted.
            continue;
        }
        p.insert(f, CMatrix::scalar(C64::new(w, 0.0)));
    }
    if p.is_empty() {
        // All weights were ~0; keep one explicit zero channel so validation
        // reports the trace problem rather than an empty map.
        if let Some(&(f, _)) = weights.first() {
            p.insert(f, CMatrix::scalar(C64::new(0.0, 0.0)));
        }
    }
    new_dimer(cat, a, b, p)
}

/// Anyonic entanglement entropy of the dimer:
/// `S = -sum_{f,i} lambda_i^f ln(lambda_i^f / d_f)` over the eigenvalues
/// `lambda_i^f` of each coefficient matrix.
pub fn aee(state: &DimerState) -> Result<f64> {
    let mut s = 0.0;
    for (f, block) in state.channels() {
        let df = state.cat().qdim(f);
        for l in hermitian_eigenvalues(block)? {
            if l > ENTROPY_EIGENVALUE_CUTOFF {
                s -= l * (l / df).ln();
            }
        }
    }
    Ok(s)
}

/// Entropy of the one-sided reduced state: the partial quantum trace of a
/// dimer is the normalized identity on the remaining charge line, so this is
/// `ln d_a` (side A) or `ln d_b` (side B).
pub fn reduced_entropy(state: &DimerState, side: Side) -> f64 {
    match side {
        Side::A => state.cat().qdim(state.a()).ln(),
        Side::B => state.cat().qdim(state.b()).ln(),
    }
}

/// `I(A:B) = S_A + S_B - S_AB`.
pub fn mutual_information(state: &DimerState) -> Result<f64> {
    Ok(reduced_entropy(state, Side::A) + reduced_entropy(state, Side::B) - aee(state)?)
}

/// Entropy of anyonic charge entanglement for multiplicity-free dimers:
/// `ln d_a + ln d_b - sum_f p_f ln d_f + sum_f p_f ln p_f`.
pub fn ace(state: &DimerState) -> Result<f64> {
    if !state.multiplicity_free() {
        return Err(Error::Unsupported(
            "charge-entanglement entropy is only defined here for multiplicity-free dimers".into(),
        ));
    }
    let cat = state.cat();
    let mut s = cat.qdim(state.a()).ln() + cat.qdim(state.b()).ln();
    for (f, block) in state.channels() {
        let pf = block.trace().re;
        if pf > ENTROPY_EIGENVALUE_CUTOFF {
            s += pf * pf.ln() - pf * cat.qdim(f).ln();
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{fibonacci, ising};
    use crate::builtin::fibonacci::{TAU, VAC};
    use crate::builtin::ising::{PSI, SIGMA};

    #[test]
    fn maximally_entangled_fibonacci_pair() {
        let cat = fibonacci().unwrap();
        let st = dimer_from_weights(&cat, TAU, TAU, &[(VAC, 1.0)]).unwrap();
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!(aee(&st).unwrap().abs() < 1e-12);
        assert!((mutual_information(&st).unwrap() - 2.0 * phi.ln()).abs() < 1e-12);
        assert!((ace(&st).unwrap() - 2.0 * phi.ln()).abs() < 1e-12);
    }

    #[test]
    fn fibonacci_tau_channel_entropy() {
        // lambda = 1 in the tau channel gives S = ln d_tau.
        let cat = fibonacci().unwrap();
        let st = dimer_from_weights(&cat, TAU, TAU, &[(TAU, 1.0)]).unwrap();
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((aee(&st).unwrap() - phi.ln()).abs() < 1e-12);
    }

    #[test]
    fn ising_sigma_psi_forced_channel() {
        let cat = ising(1).unwrap();
        assert_eq!(cat.channels(SIGMA, PSI), vec![SIGMA]);
        let st = dimer_from_weights(&cat, SIGMA, PSI, &[(SIGMA, 1.0)]).unwrap();
        // Rank one in a single channel with d = sqrt(2): S = ln sqrt(2).
        assert!((aee(&st).unwrap() - 0.5 * 2.0f64.ln()).abs() < 1e-12);
        // Inadmissible channel rejected.
        assert!(dimer_from_weights(&cat, SIGMA, PSI, &[(VAC, 1.0)]).is_err());
    }

    #[test]
    fn ising_even_mixture_entropy() {
        let cat = ising(1).unwrap();
        let st = dimer_from_weights(&cat, SIGMA, SIGMA, &[(VAC, 0.5), (PSI, 0.5)]).unwrap();
        // Two channels of dimension 1 with weight 1/2 each: S = ln 2,
        // and mutual information ln2 - ln2 + ... = 0 + ... check ACE = I.
        assert!((aee(&st).unwrap() - 2.0f64.ln()).abs() < 1e-12);
        let mi = mutual_information(&st).unwrap();
        let ce = ace(&st).unwrap();
        assert!((mi - ce).abs() < 1e-12);
        assert!(mi.abs() < 1e-12);
    }

    #[test]
    fn trace_repair_and_rejection() {
        let cat = fibonacci().unwrap();
        // 1e-8 off: repaired.
        let st = dimer_from_weights(&cat, TAU, TAU, &[(VAC, 0.5), (TAU, 0.5 + 1e-8)]).unwrap();
        let total: f64 = st.channels().map(|(_, m)| m.trace().re).sum();
        assert!((total - 1.0).abs() < 1e-15);
        // 1e-3 off: rejected.
        assert!(dimer_from_weights(&cat, TAU, TAU, &[(VAC, 0.5), (TAU, 0.501)]).is_err());
        // Negative weight rejected.
        assert!(dimer_from_weights(&cat, TAU, TAU, &[(VAC, 1.2), (TAU, -0.2)]).is_err());
    }

    #[test]
    fn su3_multiplicity_channel_accepted() {
        use crate::builtin::su3::{OCT, su3_3_subtheory};
        let cat = su3_3_subtheory().unwrap();
        let p8 = CMatrix::from_rows(&[
            vec![C64::new(0.4, 0.0), C64::new(0.1, 0.2)],
            vec![C64::new(0.1, -0.2), C64::new(0.6, 0.0)],
        ]);
        let mut p = BTreeMap::new();
        p.insert(OCT, p8);
        let st = new_dimer(&cat, OCT, OCT, p).unwrap();
        assert!(!st.multiplicity_free());
        assert!(ace(&st).is_err());
        // AEE well-defined with the 2x2 block.
        assert!(aee(&st).unwrap() > 0.0);
    }
}
