//! The eight Ising anyon models, indexed by odd nu mod 16.
//!
//! Labels {I, sigma, psi} with d_sigma = sqrt(2), theta_sigma = exp(i pi nu/8)
//! and Frobenius-Schur indicator kappa_sigma = (-1)^((nu^2-1)/8). All F/R
//! blocks not listed below are identity (trivial gauge).

use crate::category::{Category, FKey, FusionTensor, Label, RKey};
use crate::error::{Error, Result};
use crate::linalg::{C64, CMatrix};
use std::collections::HashMap;
use std::f64::consts::PI;

pub const VAC: usize = 0;
pub const SIGMA: usize = 1;
pub const PSI: usize = 2;

pub fn ising(nu: i64) -> Result<Category> {
    if nu.rem_euclid(2) == 0 {
        return Err(Error::InvalidInput(format!("Ising index nu must be odd (got {nu})")));
    }
    let nu = nu.rem_euclid(16);
    let kappa = if ((nu * nu - 1) / 8) % 2 == 0 { 1.0 } else { -1.0 };
    let sqrt2 = 2.0f64.sqrt();

    let mut fusion = FusionTensor::new(3);
    fusion.set(VAC, VAC, VAC, 1);
    for x in [SIGMA, PSI] {
        fusion.set(VAC, x, x, 1);
        fusion.set(x, VAC, x, 1);
    }
    fusion.set(SIGMA, SIGMA, VAC, 1);
    fusion.set(SIGMA, SIGMA, PSI, 1);
    fusion.set(SIGMA, PSI, SIGMA, 1);
    fusion.set(PSI, SIGMA, SIGMA, 1);
    fusion.set(PSI, PSI, VAC, 1);

    let labels = vec![
        Label { name: "I".into(), dual: VAC, qdim: 1.0, twist: C64::new(1.0, 0.0), fs: C64::new(1.0, 0.0) },
        Label {
            name: "sigma".into(),
            dual: SIGMA,
            qdim: sqrt2,
            twist: C64::from_polar(1.0, PI * nu as f64 / 8.0),
            fs: C64::new(kappa, 0.0),
        },
        Label { name: "psi".into(), dual: PSI, qdim: 1.0, twist: C64::new(-1.0, 0.0), fs: C64::new(1.0, 0.0) },
    ];

    // Start from identity blocks on every admissible key, then set the
    // non-trivial ones.
    let mut f_blocks: HashMap<FKey, CMatrix> = HashMap::new();
    let tmp = Category::from_tables("tmp".into(), labels.clone(), fusion.clone(), HashMap::new(), HashMap::new())?;
    for key in tmp.admissible_f_keys() {
        let r = tmp.f_rows(key.0, key.1, key.2, key.3);
        f_blocks.insert(key, CMatrix::identity(r));
    }
    // [F^{sss}_s] in channel basis {I, psi}.
    f_blocks.insert(
        (SIGMA, SIGMA, SIGMA, SIGMA),
        CMatrix::from_real_rows(&[vec![kappa / sqrt2, kappa / sqrt2], vec![kappa / sqrt2, -kappa / sqrt2]]),
    );
    f_blocks.insert((PSI, SIGMA, PSI, SIGMA), CMatrix::scalar(C64::new(-1.0, 0.0)));
    f_blocks.insert((SIGMA, PSI, SIGMA, PSI), CMatrix::scalar(C64::new(-1.0, 0.0)));

    let mut r_blocks: HashMap<RKey, CMatrix> = HashMap::new();
    for key in tmp.admissible_r_keys() {
        r_blocks.insert(key, CMatrix::identity(tmp.n(key.0, key.1, key.2)));
    }
    let minus_i_nu = C64::new(0.0, -1.0).powi(nu as i32);
    r_blocks.insert((SIGMA, SIGMA, VAC), CMatrix::scalar(C64::from_polar(kappa, -PI * nu as f64 / 8.0)));
    r_blocks.insert((SIGMA, SIGMA, PSI), CMatrix::scalar(C64::from_polar(kappa, 3.0 * PI * nu as f64 / 8.0)));
    r_blocks.insert((PSI, SIGMA, SIGMA), CMatrix::scalar(minus_i_nu));
    r_blocks.insert((SIGMA, PSI, SIGMA), CMatrix::scalar(minus_i_nu));
    r_blocks.insert((PSI, PSI, VAC), CMatrix::scalar(C64::new(-1.0, 0.0)));

    Category::from_tables(format!("ising_nu{nu}"), labels, fusion, f_blocks, r_blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_even_nu() {
        assert!(ising(2).is_err());
    }

    #[test]
    fn nu1_r_symbol() {
        let cat = ising(1).unwrap();
        let r = cat.r_block(SIGMA, SIGMA, VAC).unwrap();
        let expect = C64::from_polar(1.0, -PI / 8.0);
        assert!((r[(0, 0)] - expect).norm() < 1e-14);
    }

    #[test]
    fn nu3_twist() {
        let cat = ising(3).unwrap();
        assert!((cat.twist(SIGMA) - C64::from_polar(1.0, 3.0 * PI / 8.0)).norm() < 1e-14);
    }

    #[test]
    fn sigma_squared_fusion() {
        for nu in [1, 3, 5, 7, 9, 11, 13, 15] {
            let cat = ising(nu).unwrap();
            assert_eq!(cat.channels(SIGMA, SIGMA), vec![VAC, PSI]);
            assert!((cat.qdim(SIGMA) - 2.0f64.sqrt()).abs() < 1e-14);
        }
    }
}
