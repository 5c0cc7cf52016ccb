//! Invariant length functions on finite groups.
//!
//! The crate covers desk-scale group construction ([`group`], [`matrix`]),
//! length functions and their corrections ([`norms`]), conjugacy-class
//! computations ([`conjugacy`]) and finite-prefix checks of metric
//! ultraproduct hypotheses ([`ultra`]).

pub mod conjugacy;
pub mod error;
pub mod group;
pub mod matrix;
pub mod norms;
pub mod ultra;

pub use error::{Error, Result};
pub use group::{construct_group, construct_group_with_cap, Element, FiniteGroup, Subgroup};
