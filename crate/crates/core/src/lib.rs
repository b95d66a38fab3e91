//! Exact domination polynomials of graphs, certified real domination roots,
//! and explicit density witnesses: graphs whose domination polynomial has a
//! real root inside any requested window `(z - eps, z + eps)` with `z <= 0`.

pub mod atlas;
pub mod density;
pub mod dompoly;
pub mod error;
pub mod graph;
pub mod poly;
pub mod rational;
pub mod realroots;

pub use dompoly::DomPolynomial;
pub use error::{Error, Result};
pub use graph::{Family, Graph};
pub use poly::IntPoly;
pub use rational::{Rational, RationalInterval};
pub use realroots::{Certification, RootEnclosure, SturmChain};
