//! The Fibonacci category: labels {I, tau}, tau x tau = I + tau, d_tau = phi.

use crate::category::{Category, FKey, FusionTensor, Label, RKey};
use crate::error::Result;
use crate::linalg::{C64, CMatrix};
use std::collections::HashMap;
use std::f64::consts::PI;

pub const VAC: usize = 0;
pub const TAU: usize = 1;

pub fn fibonacci() -> Result<Category> {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;

    let mut fusion = FusionTensor::new(2);
    fusion.set(VAC, VAC, VAC, 1);
    fusion.set(VAC, TAU, TAU, 1);
    fusion.set(TAU, VAC, TAU, 1);
    fusion.set(TAU, TAU, VAC, 1);
    fusion.set(TAU, TAU, TAU, 1);

    let labels = vec![
        Label { name: "I".into(), dual: VAC, qdim: 1.0, twist: C64::new(1.0, 0.0), fs: C64::new(1.0, 0.0) },
        Label {
            name: "tau".into(),
            dual: TAU,
            qdim: phi,
            twist: C64::from_polar(1.0, 4.0 * PI / 5.0),
            fs: C64::new(1.0, 0.0),
        },
    ];

    let mut f_blocks: HashMap<FKey, CMatrix> = HashMap::new();
    let tmp = Category::from_tables("tmp".into(), labels.clone(), fusion.clone(), HashMap::new(), HashMap::new())?;
    for key in tmp.admissible_f_keys() {
        f_blocks.insert(key, CMatrix::identity(tmp.f_rows(key.0, key.1, key.2, key.3)));
    }
    // [F^{ttt}_t] in channel basis {I, tau}.
    let s = phi.sqrt().recip();
    f_blocks.insert(
        (TAU, TAU, TAU, TAU),
        CMatrix::from_real_rows(&[vec![1.0 / phi, s], vec![s, -1.0 / phi]]),
    );

    let mut r_blocks: HashMap<RKey, CMatrix> = HashMap::new();
    for key in tmp.admissible_r_keys() {
        r_blocks.insert(key, CMatrix::identity(tmp.n(key.0, key.1, key.2)));
    }
    r_blocks.insert((TAU, TAU, VAC), CMatrix::scalar(C64::from_polar(1.0, -4.0 * PI / 5.0)));
    r_blocks.insert((TAU, TAU, TAU), CMatrix::scalar(C64::from_polar(1.0, 3.0 * PI / 5.0)));

    Category::from_tables("fibonacci".into(), labels, fusion, f_blocks, r_blocks)
}
