//! Exact computation in the Iwahori-Hecke algebra `H_n` of the symmetric group.
//!
//! Scalars live in `Z[v, v^{-1}]` with `v = q^{1/2}`. Elements are stored in
//! the standard basis `{T_w}`; the normalised basis `T~_w = v^{-l(w)} T_w` is
//! only a change of coordinates. On top of the product kernel the crate builds
//! Murphy elements and their symmetric functions, the minimal class basis
//! `{Gamma_lambda}` of the centre, and tools for the set of elements whose
//! square is central.

pub mod center;
pub mod coeff;
pub mod error;
pub mod exec;
pub mod hecke;
pub mod io;
pub mod linalg;
pub mod named;
pub mod perm;
pub mod report;
pub mod sqrt;
pub mod text;
pub mod verify;

pub use center::{express_in_gamma, gamma_basis, GammaBasis};
pub use coeff::{LaurentPoly, RationalFn};
pub use error::{Error, Result};
pub use exec::Exec;
pub use hecke::{AlgebraContext, Caps, HeckeElement};
pub use perm::{Partition, Permutation};
pub use text::{parse_element, parse_scalar};
pub use verify::{run_verify, VerificationReport, VerifyOptions};
