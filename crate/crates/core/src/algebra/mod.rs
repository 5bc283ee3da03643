//! PBW arithmetic in the asymptotic enveloping algebra `U_ℏ(gl_N)`.

mod element;
mod generator;
mod hbar;
pub mod json;
mod monomial;

pub use element::{Algebra, AlgebraElement};
pub(crate) use element::add_into;
pub use generator::{subregular_b, subregular_m, GenIdx, GeneratorOrder};
pub use hbar::{q, HbarPoly, Q};
pub use monomial::Monomial;
