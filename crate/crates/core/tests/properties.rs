//! Randomized structural properties: norm/eigenvalue invariances of the
//! dense kernel, unitary invariance of the entropy measures, additivity of
//! the negativity under stacking, and the linear zero-locus map's contracts.

mod common;

use anyon_neg::builtin;
use anyon_neg::dimer::{ace, aee, mutual_information, new_dimer};
use anyon_neg::linalg::{hermitian_eigenvalues, kron, trace_norm, C64, CMatrix};
use anyon_neg::pt;
use anyon_neg::zero_locus::{delta_matrix, separable_point, sweep, zero_set};
use common::{random_dimer, random_matrix, random_psd, random_unitary, separable_dimer};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[test]
fn trace_norm_is_unitarily_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=6 {
        for _ in 0..10 {
            let m = random_matrix(n, &mut rng);
            let u = random_unitary(n, &mut rng);
            let v = random_unitary(n, &mut rng);
            let before = trace_norm(&m).unwrap();
            let after = trace_norm(&u.mul(&m).mul(&v)).unwrap();
            assert!((before - after).abs() <= 1e-9, "n={n}: {before} vs {after}");
        }
    }
}

#[test]
fn trace_norm_is_multiplicative_under_kron() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..10 {
        let a = random_matrix(2, &mut rng);
        let b = random_matrix(3, &mut rng);
        let lhs = trace_norm(&kron(&a, &b)).unwrap();
        let rhs = trace_norm(&a).unwrap() * trace_norm(&b).unwrap();
        assert!((lhs - rhs).abs() <= 1e-9, "{lhs} vs {rhs}");
    }
}

#[test]
fn eigenvalues_are_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 2..=5 {
        let x = random_matrix(n, &mut rng);
        let h = x.add(&x.adjoint());
        let u = random_unitary(n, &mut rng);
        let before = hermitian_eigenvalues(&h).unwrap();
        let after = hermitian_eigenvalues(&u.mul(&h).mul(&u.adjoint())).unwrap();
        for (x, y) in before.iter().zip(&after) {
            assert!((x - y).abs() <= 1e-9);
        }
    }
}

#[test]
fn trace_norm_triangle_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 2..=5 {
        for _ in 0..10 {
            let a = random_matrix(n, &mut rng);
            let b = random_matrix(n, &mut rng);
            let lhs = trace_norm(&a.add(&b)).unwrap();
            let rhs = trace_norm(&a).unwrap() + trace_norm(&b).unwrap();
            assert!(lhs <= rhs + 1e-12);
        }
    }
}

/// The three entropy measures depend on the per-channel blocks only through
/// their eigenvalues, so conjugating every block by a unitary changes none
/// of them.
#[test]
fn entropies_invariant_under_per_channel_unitaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let fib = builtin::fibonacci().unwrap();
    let su24 = builtin::su2_k(4).unwrap();
    let su3 = builtin::su3_3_subtheory().unwrap();
    let cases: Vec<(&anyon_neg::Category, usize, usize)> =
        vec![(&fib, 1, 1), (&su24, 2, 2), (&su3, 1, 1)];
    for (cat, a, b) in cases {
        for _ in 0..5 {
            let st = random_dimer(cat, a, b, &mut rng);
            let rotated: BTreeMap<usize, CMatrix> = st
                .channels()
                .map(|(f, blk)| {
                    let u = random_unitary(blk.rows(), &mut rng);
                    (f, u.mul(blk).mul(&u.adjoint()))
                })
                .collect();
            let rot = new_dimer(cat, a, b, rotated).unwrap();
            assert!((aee(&st).unwrap() - aee(&rot).unwrap()).abs() < 1e-10);
            assert!(
                (mutual_information(&st).unwrap() - mutual_information(&rot).unwrap()).abs()
                    < 1e-10
            );
            if st.multiplicity_free() {
                assert!((ace(&st).unwrap() - ace(&rot).unwrap()).abs() < 1e-10);
            }
        }
    }
}

/// Stacking two independent dimers multiplies the per-channel-pair blocks as
/// Kronecker products, so the negativities add.
#[test]
fn negativity_is_additive_under_stacking() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let fib = builtin::fibonacci().unwrap();
    let ising = builtin::ising(1).unwrap();
    let su3 = builtin::su3_3_subtheory().unwrap();
    let pairs: [(&anyon_neg::Category, usize, usize, &anyon_neg::Category, usize, usize); 3] = [
        (&fib, 1, 1, &ising, 1, 1),
        (&ising, 1, 1, &ising, 1, 1),
        (&su3, 1, 1, &fib, 1, 1),
    ];
    for (cat1, a1, b1, cat2, a2, b2) in pairs {
        let st1 = random_dimer(cat1, a1, b1, &mut rng);
        let st2 = random_dimer(cat2, a2, b2, &mut rng);
        let r1 = pt::partial_transpose_a(&st1).unwrap();
        let r2 = pt::partial_transpose_a(&st2).unwrap();
        let (db1, db2) = (cat1.qdim(b1), cat2.qdim(b2));
        let mut total = 0.0;
        for (c1, m1) in r1.channels() {
            for (c2, m2) in r2.channels() {
                total += cat1.qdim(c1) / db1 * cat2.qdim(c2) / db2
                    * trace_norm(&kron(m1, m2)).unwrap();
            }
        }
        let sum = r1.aln().unwrap() + r2.aln().unwrap();
        assert!((total.ln() - sum).abs() <= 1e-9, "{} vs {sum}", total.ln());
    }
}

/// The channel scalars `m = Delta p` sum to one at every probability vector
/// and reproduce the full transpose's negativity.
#[test]
fn delta_map_sums_to_one_and_matches_transpose() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let fib = builtin::fibonacci().unwrap();
    let ising = builtin::ising(1).unwrap();
    let su24 = builtin::su2_k(4).unwrap();
    let su26 = builtin::su2_k(6).unwrap();
    let cases: Vec<(&anyon_neg::Category, usize, usize)> =
        vec![(&fib, 1, 1), (&ising, 1, 1), (&su24, 2, 2), (&su26, 2, 2)];
    for (cat, a, b) in cases {
        let d = delta_matrix(cat, a, b).unwrap();
        let n = d.channels.len();
        for _ in 0..10 {
            let mut p: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..1.0)).collect();
            let s: f64 = p.iter().sum();
            p.iter_mut().for_each(|x| *x /= s);
            let m = d.map(&p);
            let msum: C64 = m.iter().sum();
            assert!((msum - C64::new(1.0, 0.0)).norm() < 1e-10);

            let weights: Vec<(usize, f64)> = cat
                .channels(a, b)
                .into_iter()
                .zip(p.iter().cloned())
                .collect();
            let st = anyon_neg::dimer::dimer_from_weights(cat, a, b, &weights).unwrap();
            assert!((d.aln(&p) - pt::aln(&st).unwrap()).abs() < 1e-10);
        }
    }
}

/// The grid minimum of a sweep sits at (the grid point nearest) the
/// separable distribution, and when that point is exactly on the grid it is
/// reported as a zero.
#[test]
fn sweep_minimum_tracks_the_separable_point() {
    // Ising sigma-sigma: separable point (1/2, 1/2) lies on the grid.
    let ising = builtin::ising(1).unwrap();
    let grid = sweep(&ising, 1, 1, 100).unwrap();
    let zeros = zero_set(&grid, 1e-8);
    let sep = separable_point(&ising, 1, 1);
    assert!(zeros.iter().any(|p| (p[0] - sep[0].1).abs() < 1e-12));

    // su(2)_6 spin-1: the separable point is irrational, so the zero is
    // detected as the grid argmin instead.
    let su26 = builtin::su2_k(6).unwrap();
    let grid = sweep(&su26, 2, 2, 40).unwrap();
    let sep = separable_point(&su26, 2, 2);
    let argmin = grid
        .records
        .iter()
        .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
        .unwrap();
    let dist: f64 = argmin
        .0
        .iter()
        .zip(sep.iter())
        .map(|(x, &(_, w))| (x - w).abs())
        .fold(0.0, f64::max);
    assert!(dist <= 1.0 / 40.0 + 1e-12, "argmin {:?} vs separable {:?}", argmin.0, sep);
    // The exact separable state itself has (numerically) zero negativity.
    assert!(pt::aln(&separable_dimer(&su26, 2, 2)).unwrap() <= 1e-9);
}

/// Increasing the level flattens the spin-1/2 curve around its zero: the
/// largest negativity over p0 in [0.2, 0.3] decreases monotonically in k.
#[test]
fn spin_half_curve_flattens_with_level() {
    let mut maxima = Vec::new();
    for k in [5usize, 10, 50, 100] {
        let cat = builtin::su2_k(k).unwrap();
        let mut m: f64 = 0.0;
        for i in 0..=10 {
            let p0 = 0.2 + 0.01 * i as f64;
            let st =
                anyon_neg::dimer::dimer_from_weights(&cat, 1, 1, &[(0, p0), (2, 1.0 - p0)])
                    .unwrap();
            m = m.max(pt::aln(&st).unwrap());
        }
        maxima.push(m);
    }
    for w in maxima.windows(2) {
        assert!(w[1] < w[0], "not flattening: {maxima:?}");
    }
}

/// PSD blocks with eigenvalues straddling the entropy cutoff neither panic
/// nor produce NaN.
#[test]
fn entropy_cutoff_is_robust() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let su3 = builtin::su3_3_subtheory().unwrap();
    let mut blocks = BTreeMap::new();
    // Rank-1 block on the doubled channel plus a tiny vacuum weight.
    let x = random_psd(1, &mut rng);
    let w = x[(0, 0)].re;
    let mut rank1 = CMatrix::zeros(2, 2);
    rank1[(0, 0)] = C64::new(1.0 - 1e-13 - w * 1e-12, 0.0);
    blocks.insert(1usize, rank1);
    blocks.insert(0usize, x.scale(C64::new(1e-12, 0.0)));
    let st = new_dimer(&su3, 1, 1, blocks);
    if let Ok(st) = st {
        let s = aee(&st).unwrap();
        assert!(s.is_finite() && s >= -1e-12);
    }
}
