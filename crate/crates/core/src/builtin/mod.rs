//! Built-in category constructors.

pub mod fibonacci;
pub mod ising;
pub mod su2;
pub mod su3;

pub use fibonacci::fibonacci;
pub use ising::ising;
pub use su2::su2_k;
pub use su3::su3_3_subtheory;

use crate::category::Category;
use crate::error::{Error, Result};

/// Resolve a category by command-line style name: `ising_nu<odd>`, `fibonacci`,
/// `su2_<k>`, or `su3_3`.
pub fn by_name(name: &str) -> Result<Category> {
    if let Some(nu) = name.strip_prefix("ising_nu") {
        let nu: i64 = nu
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad Ising index in {name:?}")))?;
        return ising(nu);
    }
    if name == "fibonacci" || name == "fib" {
        return fibonacci();
    }
    if let Some(k) = name.strip_prefix("su2_") {
        let k: usize = k
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad level in {name:?}")))?;
        return su2_k(k);
    }
    if name == "su3_3" {
        return su3_3_subtheory();
    }
    Err(Error::InvalidInput(format!(
        "unknown category {name:?} (expected ising_nu<odd>, fibonacci, su2_<k>, or su3_3)"
    )))
}
