//! Exact computations with finite W-algebras of `gl_N`.
//!
//! The crate implements the asymptotic enveloping algebra `U_ℏ(gl_N)` in PBW normal
//! form ([`algebra`]), pyramids and Brundan–Kleshchev generators ([`pyramid`],
//! [`bk`]), Whittaker quotients ([`quotient`]), the subregular Whittaker vectors of
//! the vector representation ([`whittaker`]), the wonderbolic form ([`geometry`]) and
//! the monoidal matrix `J` with its semi-classical limit ([`tensor_j`]). [`report`] and
//! [`cli`] back the `walg` binary.

pub mod algebra;
pub mod bk;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod pyramid;
pub mod quotient;
pub mod report;
pub mod tensor_j;
pub mod whittaker;

pub use algebra::{Algebra, AlgebraElement, GenIdx, GeneratorOrder, HbarPoly, Monomial, Q};
pub use error::{Error, Result};
