//! The {1, 8, 10, 10-bar} closed subtheory of su(3)_3.
//!
//! This is the smallest category in the crate with a genuine fusion
//! multiplicity: N_88^8 = 2, so the 8-8 coefficient matrices are 2x2 and the
//! central associator block [F^{888}_8] is 7x7. Quantum dimensions are
//! (1, 3, 1, 1); 10 and 10-bar are conjugate Abelian charges with trivial
//! twist, while theta_8 = -1.
//!
//! Composite F bases are ordered lexicographically by (channel id, vertex 1,
//! vertex 2); for [F^{888}_8] that means rows/cols
//! (1), (8;1,1), (8;1,2), (8;2,1), (8;2,2), (10), (10-bar).
//!
//! Reference tables only list the blocks with three 8 legs. The remaining
//! admissible blocks are all 1x1; their values below are the unique solution
//! of the pentagon and hexagon identities in the gauge of the listed blocks
//! (solved once by constraint propagation, then frozen; the full verifier
//! suite re-derives their consistency on every test run).

use crate::category::{Category, FKey, FusionTensor, Label, RKey};
use crate::error::Result;
use crate::linalg::{C64, CMatrix};
use std::collections::HashMap;

pub const VAC: usize = 0;
pub const OCT: usize = 1; // "8"
pub const DEC: usize = 2; // "10"
pub const DECB: usize = 3; // "10b"

/// Solved 1x1 F-blocks (all entries turn out to be +-1 in this gauge).
/// Keys not listed and not printed default to +1.
const SOLVED_F: &[(FKey, f64)] = &[
    ((OCT, OCT, DEC, DEC), -1.0),
    ((OCT, OCT, DECB, DECB), -1.0),
    ((OCT, DEC, DECB, OCT), -1.0),
    ((OCT, DECB, DEC, OCT), -1.0),
    ((DEC, OCT, OCT, DEC), -1.0),
    ((DEC, DEC, DECB, DEC), -1.0),
    ((DEC, DECB, OCT, OCT), -1.0),
    ((DEC, DECB, DECB, DECB), -1.0),
    ((DECB, OCT, OCT, DECB), -1.0),
    ((DECB, DEC, OCT, OCT), -1.0),
    ((DECB, DEC, DEC, DEC), -1.0),
    ((DECB, DECB, DEC, DECB), -1.0),
];

/// Solved scalar R-symbols beyond the printed ones (all +1, the default).
const SOLVED_R: &[(RKey, f64, f64)] = &[];

pub fn su3_3_subtheory() -> Result<Category> {
    su3_3_with_overrides(SOLVED_F.iter().map(|&(k, v)| (k, C64::new(v, 0.0))).collect(),
                         SOLVED_R.iter().map(|&(k, re, im)| (k, C64::new(re, im))).collect())
}

/// Builder taking explicit values for the scalar blocks; exposed for the
/// consistency-solving harness in the test suite.
#[doc(hidden)]
pub fn su3_3_with_overrides(f_over: Vec<(FKey, C64)>, r_over: Vec<(RKey, C64)>) -> Result<Category> {
    let mut fusion = FusionTensor::new(4);
    // Vacuum rules.
    for x in 0..4usize {
        fusion.set(VAC, x, x, 1);
        fusion.set(x, VAC, x, 1);
    }
    fusion.set(OCT, OCT, VAC, 1);
    fusion.set(OCT, OCT, OCT, 2);
    fusion.set(OCT, OCT, DEC, 1);
    fusion.set(OCT, OCT, DECB, 1);
    for x in [DEC, DECB] {
        fusion.set(OCT, x, OCT, 1);
        fusion.set(x, OCT, OCT, 1);
    }
    fusion.set(DEC, DEC, DECB, 1);
    fusion.set(DECB, DECB, DEC, 1);
    fusion.set(DEC, DECB, VAC, 1);
    fusion.set(DECB, DEC, VAC, 1);

    let one = C64::new(1.0, 0.0);
    let labels = vec![
        Label { name: "1".into(), dual: VAC, qdim: 1.0, twist: one, fs: one },
        Label { name: "8".into(), dual: OCT, qdim: 3.0, twist: C64::new(-1.0, 0.0), fs: one },
        Label { name: "10".into(), dual: DECB, qdim: 1.0, twist: one, fs: one },
        Label { name: "10b".into(), dual: DEC, qdim: 1.0, twist: one, fs: one },
    ];

    let tmp = Category::from_tables("tmp".into(), labels.clone(), fusion.clone(), HashMap::new(), HashMap::new())?;

    let mut f_blocks: HashMap<FKey, CMatrix> = HashMap::new();
    for key in tmp.admissible_f_keys() {
        f_blocks.insert(key, CMatrix::identity(tmp.f_rows(key.0, key.1, key.2, key.3)));
    }
    let h = 3.0f64.sqrt() / 2.0;
    // Rotation by 120 degrees in the doubled-vertex plane.
    let rot_p = CMatrix::from_real_rows(&[vec![-0.5, -h], vec![h, -0.5]]);
    // Rotation by -120 degrees.
    let rot_m = CMatrix::from_real_rows(&[vec![-0.5, h], vec![-h, -0.5]]);
    for key in [
        (OCT, OCT, OCT, DEC),
        (OCT, OCT, DEC, OCT),
        (OCT, DECB, OCT, OCT),
        (DEC, OCT, OCT, OCT),
    ] {
        f_blocks.insert(key, rot_p.clone());
    }
    for key in [
        (OCT, OCT, OCT, DECB),
        (OCT, OCT, DECB, OCT),
        (OCT, DEC, OCT, OCT),
        (DECB, OCT, OCT, OCT),
    ] {
        f_blocks.insert(key, rot_m.clone());
    }
    let r3 = 3.0f64.sqrt().recip();
    let r12 = 12.0f64.sqrt().recip();
    f_blocks.insert(
        (OCT, OCT, OCT, OCT),
        CMatrix::from_real_rows(&[
            vec![1.0 / 3.0, r3, 0.0, 0.0, r3, -1.0 / 3.0, -1.0 / 3.0],
            vec![r3, -0.5, 0.0, 0.0, 0.5, r12, r12],
            vec![0.0, 0.0, 0.5, 0.5, 0.0, 0.5, -0.5],
            vec![0.0, 0.0, 0.5, 0.5, 0.0, -0.5, 0.5],
            vec![r3, 0.5, 0.0, 0.0, -0.5, r12, r12],
            vec![-1.0 / 3.0, r12, -0.5, 0.5, r12, 1.0 / 3.0, 1.0 / 3.0],
            vec![-1.0 / 3.0, r12, 0.5, -0.5, r12, 1.0 / 3.0, 1.0 / 3.0],
        ]),
    );
    for (key, v) in f_over {
        f_blocks.insert(key, CMatrix::scalar(v));
    }

    let mut r_blocks: HashMap<RKey, CMatrix> = HashMap::new();
    for key in tmp.admissible_r_keys() {
        r_blocks.insert(key, CMatrix::identity(tmp.n(key.0, key.1, key.2)));
    }
    let m1 = CMatrix::scalar(C64::new(-1.0, 0.0));
    r_blocks.insert((OCT, OCT, VAC), m1.clone());
    r_blocks.insert((OCT, OCT, DEC), m1.clone());
    r_blocks.insert((OCT, OCT, DECB), m1);
    r_blocks.insert(
        (OCT, OCT, OCT),
        CMatrix::diag(&[C64::new(0.0, -1.0), C64::new(0.0, 1.0)]),
    );
    for (key, v) in r_over {
        r_blocks.insert(key, CMatrix::scalar(v));
    }

    Category::from_tables("su3_3".into(), labels, fusion, f_blocks, r_blocks)
}
