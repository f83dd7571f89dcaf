//! Elementary and exponential factorization of matrices over commutative
//! rings, with a holomorphic three-exponential construction for `SL_2`
//! matrices with polynomial entries.

pub mod analytic;
pub mod elementary;
pub mod error;
pub mod expfactor;
pub mod fixtures;
pub mod matrix;
pub mod random;
pub mod riemann;
pub mod ring;

pub use error::{Error, Result};

/// Double-precision complex number.
pub type C64 = num_complex::Complex<f64>;
