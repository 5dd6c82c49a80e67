//! Interpretable multilingual stance classification toolkit.
//!
//! The pipeline goes corpus → annotation → feature extraction → model
//! training/evaluation, with explanation (permutation importance) and
//! distributional trend analyses on top. All numeric components are generic
//! over the scalar type via [`Scalar`]; `f64` is the default used by the CLI.

pub mod annotate;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod evaluate;
pub mod explain;
pub mod features;
pub mod lexicon;
pub mod matrix;
pub mod optimize;
pub mod synthetic;
pub mod scalar;
pub mod trends;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Default scalar used throughout the CLI and file formats.
pub type Real = f64;

/// Feature matrix over the default scalar.
pub type RealMatrix = matrix::Matrix<Real>;
