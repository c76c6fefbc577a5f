//! Exact algebra for symmetrization, Hochschild cochains of polydifferential
//! operators and the HKR map, with finite verification routines.

pub mod cli;
pub mod dpoly;
pub mod error;
pub mod freelie;
pub mod glin;
pub mod hkr;
pub mod report;
pub mod symgrp;
pub mod theta;

pub use error::{AlgebraError, Result};
pub use glin::{Degree, LinComb, Q};
