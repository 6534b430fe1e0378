use crate::classifiers::Algorithm;
use crate::datasets::{Feature, FeatureKind, Value};
use crate::error::{Error, Result};

/// Maps mixed rows to real vectors: numeric features pass through,
/// categorical features become one-hot blocks over their levels.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureEncoder {
    widths: Vec<usize>,
    dim: usize,
}

impl FeatureEncoder {
    pub fn new(features: &[Feature]) -> Self {
        let widths: Vec<usize> = features
            .iter()
            .map(|f| match f.kind {
                FeatureKind::Numeric => 1,
                FeatureKind::Categorical => f.levels.len(),
            })
            .collect();
        let dim = widths.iter().sum();
        Self { widths, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn encode(&self, row: &[Value]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        let mut offset = 0;
        for (v, &w) in row.iter().zip(&self.widths) {
            match *v {
                Value::Num(x) => out[offset] = x,
                Value::Cat(level) if level < w => out[offset + level] = 1.0,
                Value::Cat(_) => {}
            }
            offset += w;
        }
        out
    }

    pub(crate) fn require_numeric(features: &[Feature], algo: Algorithm) -> Result<()> {
        if features.iter().any(|f| f.kind == FeatureKind::Numeric) {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "{algo} needs at least one numeric feature; the table is categorical only"
            )))
        }
    }
}
