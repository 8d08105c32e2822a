//! Genera of quotients of the Hermitian function field `y^q + y = x^{q+1}`
//! over `F_{q^2}` by subgroups of its automorphism group, computed from
//! ramification data and the Hurwitz formula.

pub mod gf;
pub mod autgrp;
pub mod curve;
pub mod localval;
pub mod engine;
pub mod formulas;
pub mod verify;
pub mod error;

pub use error::{Error, Result};
