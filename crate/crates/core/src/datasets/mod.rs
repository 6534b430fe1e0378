//! Benchmark interaction/similarity files, dataset statistics, labeled
//! tables for the classifier suite, and the Weather fixture.

mod dti;
mod matrix_file;
mod table;
mod weather;

pub use dti::{
    load_dti, save_dti, stats, DatasetFiles, DatasetStats, DtiDataset, InteractionMatrix,
    SimilarityMatrix, SILENT_ASYMMETRY,
};
pub use matrix_file::{read_labeled_matrix, read_labeled_matrix_with, write_labeled_matrix, LabeledMatrix};
pub use table::{check_row, read_labeled_csv, Feature, FeatureKind, LabeledTable, Value};
pub use weather::weather_fixture;
