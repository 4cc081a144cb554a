//! Quadratic spaces, involutory isometries, Clifford algebras and central
//! simple algebras with involution over fields of characteristic 2.
//!
//! Everything here is exact. The supported fields are GF(2^k) for
//! `1 <= k <= 8` and the rational function fields GF(2^k)(t).

#![no_std]

extern crate alloc;

pub mod bitmat;
pub mod clifford;
pub mod csa;
pub mod engine;
pub mod error;
pub mod fields;
pub mod forms;
pub mod isometry;
pub mod linalg;
pub mod oracle;
pub mod search;

pub use error::{Error, Result};
pub use search::Budget;
