#![allow(clippy::needless_range_loop)]

//! Exact lattice computations behind the quasi-pullback of the Borcherds
//! form to moduli of polarized K3 surfaces.

pub mod borcherds;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod qseries;
pub mod rootsys;
pub mod selftest;

pub use error::{Error, Result};
