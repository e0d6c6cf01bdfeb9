//! Arithmetic on single number states.

mod division;
mod magnitude;
pub mod operators;
mod ops;
mod relations;

pub use division::{div_a, ell_inverse, ell_inverse_state, Accuracy};
pub use ops::{abs_a, add_a, mul_a, negate, pred, shift, sub_a, succ};
pub use relations::{cmp_real, eq_a, leq_a_complex, leq_a_real, lt_a_real};

/// Selects the real part, the imaginary part, or both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    Real,
    Imaginary,
    Both,
}

impl Part {
    pub fn real(self) -> bool {
        matches!(self, Part::Real | Part::Both)
    }

    pub fn imaginary(self) -> bool {
        matches!(self, Part::Imaginary | Part::Both)
    }
}
