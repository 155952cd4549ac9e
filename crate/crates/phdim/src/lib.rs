//! Persistent-homology fractal dimension estimation for probability
//! measures.
//!
//! The pipeline: draw growing random samples from a measure
//! ([`geometry`]), compute Vietoris-Rips persistence barcodes or their
//! minimal-spanning-tree H0 shortcut ([`persistence`]), track how the total
//! interval length grows with the sample size and fit the growth exponent
//! ([`scaling`]), and study the limiting distribution of rescaled interval
//! lengths ([`distributions`]).
//!
//! A growth exponent `alpha` converts to a dimension estimate through
//! `alpha = (d - 1) / d`. All randomness flows through [`rng::SeededRng`],
//! so every experiment is reproducible from a `(seed, stream)` pair.

pub mod distributions;
pub mod error;
pub mod geometry;
pub mod persistence;
pub mod rng;
pub mod scaling;

pub use error::{Error, Result};
