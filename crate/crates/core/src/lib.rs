//! Exact toolkit for Boolean Holant problems: signatures over the 24th
//! cyclotomic field, gadget calculus, holographic transformations, class
//! membership tests, a brute-force partition function oracle, constructive
//! witnesses and a dichotomy classifier.

pub mod classes;
pub mod classifier;
pub mod constructions;
pub mod cyclo;
pub mod factor;
pub mod grid;
pub mod literal;
pub mod roots;
pub mod scalar;
pub mod ser;
pub mod signature;
pub mod sigset;
pub mod transforms;

pub use scalar::{Field, Scalar};
pub use signature::Signature;
