//! Exact computations in Hecke algebras of finite Coxeter groups.
//!
//! The crate is layered bottom-up:
//!
//! * [`laurent`]: the coefficient ring `Z[q, q^-1]`;
//! * [`coxeter`]: finite Coxeter systems, Bruhat order, parabolic quotients;
//! * [`hecke`]: the Hecke algebra in the standard basis with its
//!   involutions, bilinear form and restriction to parabolic subalgebras;
//! * [`klbasis`]: Kazhdan-Lusztig polynomials and basis elements;
//! * [`hybrid`]: hybrid bases `T_{w^J} C_{w_J}`, restriction coefficients
//!   and the factorization of the Kazhdan-Lusztig matrix;
//! * [`oracles`]: independent closed forms used for cross-validation;
//! * [`verify`]: named property checks aggregated into reports.
//!
//! Normalization: `T_s^2 = 1 + (q^-1 - q) T_s`, `C_s = T_s + q`, and
//! `h_{x,w}` in `qZ[q]` for `x < w`.

pub mod coxeter;
pub mod error;
pub mod hecke;
pub mod hybrid;
pub mod klbasis;
pub mod laurent;
pub mod matrix;
pub mod oracles;
pub mod verify;

pub use coxeter::{CoxeterSystem, CoxeterType, Element, GenSet, ParabolicData, Side};
pub use error::{Error, Result};


pub use hecke::{HeckeAlgebra, HeckeElement};
pub use klbasis::{KlCache, KlOracle};
pub use laurent::LaurentPoly;
pub use matrix::PolyMatrix;

