//! Exact double Hurwitz numbers, wreath Hurwitz numbers over `K ≀ Σ_d`, and the
//! linear Hodge integrals over moduli of curves in `BZ_a` and `BG` that they
//! determine.
//!
//! All arithmetic is exact; values are [`ExactRational`]s.

pub mod characters;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod hodge;
pub mod hurwitz;
pub mod rational;
pub mod series;
pub mod wreath;

pub use combinatorics::{MonodromyVector, Partition};
pub use error::{Error, Result};
pub use rational::ExactRational;
