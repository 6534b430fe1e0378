//! Drug-target interaction prediction from similarity matrices and a known
//! interaction network.
//!
//! The crate is layered bottom-up:
//!
//! * [`linalg`]: dense matrices, symmetric eigendecomposition, PSD repair,
//!   regularized solves and kernel functions.
//! * [`datasets`]: the TSV matrix format of the benchmark interaction and
//!   similarity files, dataset statistics, labeled tables and the Weather
//!   fixture.
//! * [`classifiers`]: k-NN, naive Bayes, decision trees, logistic
//!   regression, kernel RLS, SVM and ensembles behind one fit/predict API.
//! * [`similarity`]: interaction-profile similarities, hybrid combinations
//!   and kernel preparation.
//! * [`predictors`]: the bipartite graph model, bipartite local models with
//!   and without neighbor-based profile inferring, and pair features.
//! * [`evaluation`]: leave-one-out sweeps over drug-target pairs, ROC/PR
//!   curves, AUC and AUPR.
//! * [`cli`]: the `dti` command line.

pub mod classifiers;
pub mod cli;
pub mod datasets;
pub mod error;
pub mod evaluation;
pub mod linalg;
#[cfg(test)]
mod oracles;
pub mod predictors;
pub mod similarity;

pub use error::{Error, ErrorClass, Result};
