//! Graded Betti numbers of Artinian ideals generated by powers of the
//! variables and of their sum, with exact linear algebra oracles.

pub mod apolarity;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod formulas;
pub mod hilbert;
pub mod polyring;
pub mod resolver;
pub mod special;

pub use error::{Error, Result};
