//! Holomorphic three-exponential factorization of polynomial `SL_2`
//! matrices, its sampled verification and an explicit null-homotopy.

mod fmatrix;
mod homotopy;
mod threeexp;
mod verify;

pub use fmatrix::{element_to_poly, FuncMatrix};
pub use homotopy::{complex_shear_factorization, null_homotopy, HomotopyPath, Shear};
pub use threeexp::{double_ev_log, three_exp_sl2, ExpCase, ThreeExpCertificate};
pub use verify::{verify_exp_certificate, ExpTolerances, GridSpec, ThreeExpReport};
