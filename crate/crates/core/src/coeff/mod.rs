//! The scalar ring `Z[q^{1/2}, q^{-1/2}]`, written in `v = q^{1/2}`, and its
//! fraction field.

mod laurent;
mod ratfn;

pub use laurent::LaurentPoly;
pub use ratfn::RationalFn;
