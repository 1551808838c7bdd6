//! Hyperparameter-landscape toolkit for small dense networks.
//!
//! The crate trains many small feed-forward binary classifiers over randomized
//! (hidden-units, dropout-rate) configurations, records the validation cost and
//! accuracy of every trial in an append-only JSON-lines ledger, fits surrogate
//! models to that ledger, and iteratively zooms the search space into the
//! low-cost region suggested by the surrogate.
//!
//! - [`nn`]: from-scratch dense network (Xavier init, inverted dropout, Adam,
//!   binary cross-entropy).
//! - [`data`]: CSV ingestion, IQR outlier filtering, standardization, stratified
//!   splits, and synthetic datasets for tests.
//! - [`sampler`]: log-uniform hyperparameter sampling and per-trial seed
//!   derivation.
//! - [`harness`]: trial execution against a pluggable evaluator, persisting a
//!   resumable ledger.
//! - [`surrogates`]: threshold-filtered linear regression, polynomial logistic
//!   regression, and neural surface/inverse models over the ledger.
//! - [`zoom`]: the iterative sample → fit → shrink search-region tuning loop.
//! - [`report`]: CSV and SVG artifact emission.
//!
//! Every randomized operation takes an explicit 64-bit seed and is bit-for-bit
//! reproducible given the same inputs.

pub mod data;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod nn;
pub mod report;
pub mod rng;
pub mod sampler;
pub mod surrogates;
pub mod zoom;

pub use error::{Error, Result};
