//! Anyonic partial transpose and logarithmic negativity for two-anyon states.
//!
//! This crate models unitary braided fusion categories (labels, fusion rules,
//! F/R/A symbols, twists) and computes entanglement diagnostics for two-anyon
//! "dimer" density matrices:
//!
//! - the anyonic partial transpose, as per-fusion-channel matrices `[M^c]`,
//! - the anyonic logarithmic negativity (ALN) from the quantum trace norm,
//! - anyonic entanglement entropy, charge entanglement entropy, and mutual
//!   information,
//! - the linear map Delta whose imaginary-part rank controls the dimension of
//!   the ALN zero locus, with simplex sweeps for curve/surface data,
//! - an independent fermionic (Majorana / Fock-space) partial transpose used
//!   to cross-check the Ising results.
//!
//! Built-in categories: the eight Ising models, Fibonacci, su(2)_k, and the
//! multiplicity-bearing {1, 8, 10, 10-bar} subtheory of su(3)_3. Categories
//! can also be loaded from a JSON description.
//!
//! The `anyon-neg` binary exposes validation, ALN evaluation, parameter
//! sweeps, zero-locus scans, and the fermionic cross-check demo.

pub mod builtin;
pub mod category;
pub mod dimer;
pub mod error;
pub mod fermionic;
pub mod json;
pub mod linalg;
pub mod pt;
pub mod zero_locus;

pub use category::Category;
pub use dimer::{DimerState, Side};
pub use error::{Error, Result};
pub use linalg::CMatrix;
pub use pt::PTResult;
