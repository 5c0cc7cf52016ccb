//! Finite fields, forms and the classical matrix groups.

mod classical;
mod field;
mod forms;
mod mat;

pub use classical::{
    construct_classical_group, order_formula, unitary_determinant_twist, ClassicalFamily, ClassicalGroupSpec,
};
pub use field::{Fe, FiniteField};
pub use forms::{verify_form_preserved, FormKind, SesquilinearForm};
pub use mat::Matrix;
