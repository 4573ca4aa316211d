//! Modular data of the Hecke-algebra categories H^{N,K} at roots of unity
//! and the quantum invariants of plumbed 3-manifolds built from them.

#![allow(clippy::needless_range_loop)]

pub mod diagrams;
pub mod error;
pub mod hecke;
pub mod moddata;
pub mod refine;
pub mod scalars;
pub mod surgery;

pub use error::{Error, Result};
