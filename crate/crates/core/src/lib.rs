//! Real and complex numbers as Cauchy sequences of qubit-string states.

pub mod arith;
pub mod error;
mod index;
pub mod json;
pub mod notation;
pub mod oracle;
pub mod sequence;
pub mod state;
pub mod superposition;

pub use arith::{Accuracy, Part};
pub use error::{Error, ParseError, Result};
pub use notation::{format_compact, parse_compact};
pub use oracle::DyadicComplex;
pub use state::{canonicalize, eigenvalue, translate, DigitString, LatticeSite, RealComponent, Sign, StringState};
pub use superposition::{Amplitude, Mixture, Superposition};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/notation.md")]
    mod notation {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/superpositions.md")]
    mod superpositions {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/lifting.md")]
    mod lifting {}
    #[doc = include_str!("../../../book/src/completeness.md")]
    mod completeness {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
