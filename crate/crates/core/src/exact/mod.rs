//! Exact scalar and polynomial algebra.

pub mod interval;
pub mod mpoly;
pub mod parse;
pub mod rational;
pub mod resultant;
pub mod roots;
pub mod upoly;
pub mod var;

pub use interval::Interval;
pub use mpoly::{point, IBox, MPoly, Monomial, Point};
pub use rational::Rational;
pub use resultant::{chain_resultant, discriminant, resultant};
pub use roots::{isolate_real_roots, refine_root, squarefree_part, sturm_count, RootBox1};
pub use var::Var;
