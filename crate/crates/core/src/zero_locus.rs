//! Where the negativity vanishes: the linear map behind the multiplicity-free
//! partial transpose, its imaginary-part rank, and simplex sweeps.
//!
//! For a multiplicity-free dimer the channel weights `p_f` map linearly to
//! the transposed channel scalars: `m = Delta p` with
//!
//!   Delta_{cf} = conj(theta_a) (d_c/d_b) conj(R^{f,abar}_b)
//!                conj([F^{abar,f,abar}_c]_{b,b}) R^{abar,b}_c,
//!
//! so `ALN = ln sum_c |m_c|` and `sum_c m_c = 1` for every probability
//! vector (the quantum-trace identity times `conj(theta_a)`). The dimension
//! of the zero set inside the probability simplex is
//! `r0 = n - 1 - rank(Im Delta)`.

use crate::category::Category;
use crate::dimer::dimer_from_weights;
use crate::error::{Error, Result};
use crate::linalg::{C64, CMatrix, DEFAULT_RANK_TOL, numerical_rank};
use crate::pt;
use rayon::prelude::*;

/// Grid points with ALN at or below this count as zeros by default.
pub const ZERO_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct DeltaMatrix {
    pub a: usize,
    pub b: usize,
    /// Channel order shared by rows (output c) and columns (input f).
    pub channels: Vec<usize>,
    pub delta: CMatrix,
    pub im_rank: usize,
    pub r0: usize,
}

impl DeltaMatrix {
    /// `m = Delta p` for a probability vector over `channels`.
    pub fn map(&self, p: &[f64]) -> Vec<C64> {
        let n = self.channels.len();
        assert_eq!(p.len(), n);
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.delta[(i, j)] * C64::new(p[j], 0.0))
                    .sum()
            })
            .collect()
    }

    /// `ln sum_c |m_c|`, clamped at zero from below like the full transpose.
    pub fn aln(&self, p: &[f64]) -> f64 {
        let total: f64 = self.map(p).iter().map(|m| m.norm()).sum();
        let e = total.ln();
        if e < 0.0 && e >= -pt::ALN_CLAMP { 0.0 } else { e }
    }
}

pub fn delta_matrix(cat: &Category, a: usize, b: usize) -> Result<DeltaMatrix> {
    let abar = cat.dual(a);
    let channels = cat.channels(a, b);
    let out_channels = cat.channels(abar, b);
    if channels.iter().any(|&f| cat.n(a, b, f) > 1)
        || out_channels.iter().any(|&c| cat.n(abar, b, c) > 1)
    {
        return Err(Error::Unsupported(
            "the linear zero-locus map needs a multiplicity-free dimer family".into(),
        ));
    }
    if channels.len() != out_channels.len() {
        // For multiplicity-free square maps these coincide; anything else is
        // outside this representation.
        return Err(Error::Unsupported(
            "input and output channel counts differ; no square linear map".into(),
        ));
    }
    let n = channels.len();
    let tconj = cat.twist(a).conj();
    let mut delta = CMatrix::zeros(n, n);
    for (i, &c) in out_channels.iter().enumerate() {
        let weight = C64::new(cat.qdim(c) / cat.qdim(b), 0.0);
        let r2 = cat.r_block(abar, b, c)?[(0, 0)];
        for (j, &f) in channels.iter().enumerate() {
            let r1 = cat.r_block(f, abar, b)?[(0, 0)];
            let fe = cat.f_entry(abar, f, abar, c, b, 0, 0, b, 0, 0)?;
            delta[(i, j)] = tconj * weight * r1.conj() * fe.conj() * r2;
        }
    }
    let im = CMatrix::from_rows(
        &(0..n)
            .map(|i| (0..n).map(|j| C64::new(delta[(i, j)].im, 0.0)).collect())
            .collect::<Vec<_>>(),
    );
    let im_rank = numerical_rank(&im, DEFAULT_RANK_TOL)?;
    let r0 = (n - 1).saturating_sub(im_rank);
    Ok(DeltaMatrix { a, b, channels: out_channels, delta, im_rank, r0 })
}

/// The unique separable distribution `p_f = d_f / (d_a d_b)`.
pub fn separable_point(cat: &Category, a: usize, b: usize) -> Vec<(usize, f64)> {
    let dab = cat.qdim(a) * cat.qdim(b);
    cat.channels(a, b)
        .into_iter()
        .map(|f| (f, cat.n(a, b, f) as f64 * cat.qdim(f) / dab))
        .collect()
}

#[derive(Debug, Clone)]
pub struct SweepGrid {
    /// Channel names, in the column order of each record.
    pub channel_names: Vec<String>,
    pub channels: Vec<usize>,
    /// (probability vector, aln) per grid point, in deterministic order.
    pub records: Vec<(Vec<f64>, f64)>,
}

/// Evaluate the ALN on a uniform barycentric grid over the channel simplex
/// (2 or 3 channels). Probabilities are exact multiples of 1/resolution.
pub fn sweep(cat: &Category, a: usize, b: usize, resolution: usize) -> Result<SweepGrid> {
    if resolution == 0 {
        return Err(Error::InvalidInput("sweep resolution must be positive".into()));
    }
    let channels = cat.channels(a, b);
    let n = channels.len();
    if !(2..=3).contains(&n) {
        return Err(Error::Unsupported(format!(
            "sweep supports 2 or 3 fusion channels, this pair has {n}"
        )));
    }
    let mut points: Vec<Vec<f64>> = Vec::new();
    let res = resolution;
    if n == 2 {
        for i in 0..=res {
            points.push(vec![i as f64 / res as f64, (res - i) as f64 / res as f64]);
        }
    } else {
        for i in 0..=res {
            for j in 0..=(res - i) {
                let k = res - i - j;
                points.push(vec![
                    i as f64 / res as f64,
                    j as f64 / res as f64,
                    k as f64 / res as f64,
                ]);
            }
        }
    }
    let records: Result<Vec<(Vec<f64>, f64)>> = points
        .into_par_iter()
        .map(|p| {
            let weights: Vec<(usize, f64)> =
                channels.iter().cloned().zip(p.iter().cloned()).collect();
            let st = dimer_from_weights(cat, a, b, &weights)?;
            let e = pt::aln(&st)?;
            Ok((p, e))
        })
        .collect();
    Ok(SweepGrid {
        channel_names: channels.iter().map(|&f| cat.label(f).name.clone()).collect(),
        channels,
        records: records?,
    })
}

/// Grid points whose ALN is at or below `tol`.
pub fn zero_set(grid: &SweepGrid, tol: f64) -> Vec<Vec<f64>> {
    grid.records
        .iter()
        .filter(|(_, e)| *e <= tol)
        .map(|(p, _)| p.clone())
        .collect()
}

/// Format a float with 12 significant digits, stable across runs.
pub fn fmt_sig12(x: f64) -> String {
    format!("{x:.12e}")
}

impl SweepGrid {
    /// CSV with one probability column per channel and a final `aln` column.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for name in &self.channel_names {
            out.push_str(&format!("p_{name},"));
        }
        out.push_str("aln\n");
        for (p, e) in &self.records {
            for x in p {
                out.push_str(&fmt_sig12(*x));
                out.push(',');
            }
            out.push_str(&fmt_sig12(*e));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::fibonacci::{self, TAU, VAC};
    use crate::builtin::ising::{self, SIGMA};

    #[test]
    fn ising_delta_rank_zero_line() {
        let cat = ising::ising(1).unwrap();
        let d = delta_matrix(&cat, SIGMA, SIGMA).unwrap();
        assert_eq!(d.channels.len(), 2);
        assert_eq!(d.r0, 0);
        // Column sums are exactly 1 (trace identity in this normalization).
        for j in 0..2 {
            let s = d.delta[(0, j)] + d.delta[(1, j)];
            assert!((s - C64::new(1.0, 0.0)).norm() < 1e-12, "column {j} sums to {s}");
        }
        // Zero only at the even mixture.
        assert!(d.aln(&[0.5, 0.5]).abs() < 1e-12);
        assert!(d.aln(&[0.6, 0.4]) > 1e-3);
    }

    #[test]
    fn fibonacci_delta_matches_transpose() {
        let cat = fibonacci::fibonacci().unwrap();
        let d = delta_matrix(&cat, TAU, TAU).unwrap();
        assert_eq!(d.r0, 0);
        for &(pi, pt_w) in &[(1.0, 0.0), (0.25, 0.75), (0.4, 0.6)] {
            let st =
                crate::dimer::dimer_from_weights(&cat, TAU, TAU, &[(VAC, pi), (TAU, pt_w)]).unwrap();
            let via_pt = pt::aln(&st).unwrap();
            let order: Vec<f64> = d
                .channels
                .iter()
                .map(|&c| if c == VAC { pi } else { pt_w })
                .collect();
            assert!((d.aln(&order) - via_pt).abs() < 1e-12);
        }
    }

    #[test]
    fn separable_point_sums_to_one() {
        let cat = fibonacci::fibonacci().unwrap();
        let p = separable_point(&cat, TAU, TAU);
        let total: f64 = p.iter().map(|&(_, w)| w).sum();
        assert!((total - 1.0).abs() < 1e-12);
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((p[0].1 - 1.0 / (phi * phi)).abs() < 1e-12);
    }

    #[test]
    fn ising_sweep_has_single_zero() {
        let cat = ising::ising(1).unwrap();
        let grid = sweep(&cat, SIGMA, SIGMA, 100).unwrap();
        assert_eq!(grid.records.len(), 101);
        let zeros = zero_set(&grid, ZERO_TOL);
        assert_eq!(zeros.len(), 1);
        assert!((zeros[0][0] - 0.5).abs() < 1e-15);
        let sep = separable_point(&cat, SIGMA, SIGMA);
        assert!((sep[0].1 - 0.5).abs() < 1e-12 && (sep[1].1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn spin_two_delta_matches_the_transpose() {
        // Level-5 spin-2 pairs have exactly two channels; the linear map
        // agrees with the full transpose across the edge of the simplex and
        // the vacuum endpoint is the maximally entangled value ln d_a.
        let cat = crate::builtin::su2_k(5).unwrap();
        let a = cat.label_by_name("2").unwrap();
        let d = delta_matrix(&cat, a, a).unwrap();
        assert_eq!(d.channels.len(), 2);
        assert_eq!(d.channels[0], 0);
        assert!((d.aln(&[1.0, 0.0]) - cat.qdim(a).ln()).abs() < 1e-10);
        for p0 in [0.0, 0.1, 0.35, 0.62, 0.9, 1.0] {
            let st = dimer_from_weights(
                &cat,
                a,
                a,
                &[(d.channels[0], p0), (d.channels[1], 1.0 - p0)],
            )
            .unwrap();
            assert!((d.aln(&[p0, 1.0 - p0]) - pt::aln(&st).unwrap()).abs() < 1e-10, "p0={p0}");
        }
    }

    #[test]
    fn fibonacci_zero_sits_at_the_separable_point() {
        let cat = fibonacci::fibonacci().unwrap();
        let sep = separable_point(&cat, TAU, TAU);
        let d = delta_matrix(&cat, TAU, TAU).unwrap();
        let p_sep: Vec<f64> = d
            .channels
            .iter()
            .map(|&c| sep.iter().find(|(f, _)| *f == c).unwrap().1)
            .collect();
        assert!(d.aln(&p_sep).abs() < 1e-12);
        // On a grid the minimum lands on the nearest lattice point.
        let grid = sweep(&cat, TAU, TAU, 100).unwrap();
        let (p_min, e_min) = grid
            .records
            .iter()
            .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap();
        assert!((p_min[0] - p_sep[0]).abs() <= 0.01, "argmin {} vs {}", p_min[0], p_sep[0]);
        assert!(*e_min < 1e-2);
    }

    #[test]
    fn csv_is_deterministic() {
        let cat = fibonacci::fibonacci().unwrap();
        let g1 = sweep(&cat, TAU, TAU, 10).unwrap().to_csv();
        let g2 = sweep(&cat, TAU, TAU, 10).unwrap().to_csv();
        assert_eq!(g1, g2);
        assert!(g1.starts_with("p_I,p_tau,aln\n"));
    }
}
