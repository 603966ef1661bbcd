//! Shared helpers for the integration test suites: seeded random matrices,
//! unitaries, and random valid dimer states over arbitrary categories.
#![allow(dead_code)] // each test binary uses a different subset

use anyon_neg::category::Category;
use anyon_neg::dimer::{new_dimer, DimerState};
use anyon_neg::linalg::{hermitian_eig, C64, CMatrix};
use rand::Rng;
use std::collections::BTreeMap;

pub fn random_matrix<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    m
}

/// Random PSD matrix X^dag X with a strictly positive trace.
pub fn random_psd<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let x = random_matrix(n, rng);
    let mut g = x.adjoint().mul(&x);
    // Keep it comfortably away from the zero matrix.
    for i in 0..n {
        g[(i, i)] += C64::new(0.05, 0.0);
    }
    g
}

/// Random unitary: eigenvector matrix of a random Hermitian matrix.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let x = random_matrix(n, rng);
    let h = x.add(&x.adjoint());
    let (_, v) = hermitian_eig(&h).expect("random Hermitian matrix");
    v
}

/// Random valid dimer: one random PSD block per admissible channel, scaled
/// to unit total trace.
pub fn random_dimer<'c, R: Rng>(
    cat: &'c Category,
    a: usize,
    b: usize,
    rng: &mut R,
) -> DimerState<'c> {
    let mut blocks: BTreeMap<usize, CMatrix> = BTreeMap::new();
    let mut total = 0.0;
    for f in cat.channels(a, b) {
        let m = cat.n(a, b, f);
        let blk = random_psd(m, rng).scale(C64::new(rng.gen_range(0.1..1.0), 0.0));
        total += blk.trace().re;
        blocks.insert(f, blk);
    }
    let s = C64::new(1.0 / total, 0.0);
    let blocks = blocks.into_iter().map(|(f, m)| (f, m.scale(s))).collect();
    new_dimer(cat, a, b, blocks).expect("random dimer is valid by construction")
}

/// The separable state: `[p^f] = d_f/(d_a d_b) * I` on every channel.
pub fn separable_dimer<'c>(cat: &'c Category, a: usize, b: usize) -> DimerState<'c> {
    let dab = cat.qdim(a) * cat.qdim(b);
    let blocks: BTreeMap<usize, CMatrix> = cat
        .channels(a, b)
        .into_iter()
        .map(|f| {
            let m = cat.n(a, b, f);
            (f, CMatrix::identity(m).scale(C64::new(cat.qdim(f) / dab, 0.0)))
        })
        .collect();
    new_dimer(cat, a, b, blocks).expect("separable dimer is valid")
}

/// All ordered label pairs with at least one admissible fusion channel.
pub fn admissible_pairs(cat: &Category) -> Vec<(usize, usize)> {
    let n = cat.num_labels();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if !cat.channels(a, b).is_empty() {
                out.push((a, b));
            }
        }
    }
    out
}
