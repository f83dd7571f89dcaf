//! Holomorphic functions on planar domains at desk scale: expression trees,
//! jets, polynomial roots and Hermite interpolation.

mod cmatrix;
mod expr;
mod hermite;
mod jet;
mod poly;
mod roots;

pub use cmatrix::{expm, CMatrix};
pub use expr::{evaluate, jet_at, jet_switch_radius, FuncExpr, Node, Removable, JET_EVAL_ORDER, VALUATION_THRESHOLD};
pub use hermite::hermite_interpolate;
pub use jet::{jet_exp, jet_log, Jet};
pub use poly::Polynomial;
pub use roots::{poly_roots, poly_roots_exact, poly_roots_with_radius, Root, RootSet, CLUSTER_RADIUS, MAX_ITERATIONS};

pub(crate) use expr::gaussian_to_c64;
