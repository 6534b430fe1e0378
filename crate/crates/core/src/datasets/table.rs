use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureKind {
    Categorical,
    Numeric,
}

/// A feature value. Categorical values index into the feature's `levels`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Cat(usize),
    Num(f64),
}

impl Value {
    pub fn as_num(&self) -> Option<f64> {
        match *self {
            Value::Num(v) => Some(v),
            Value::Cat(_) => None,
        }
    }

    pub fn as_cat(&self) -> Option<usize> {
        match *self {
            Value::Cat(v) => Some(v),
            Value::Num(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Feature {
    pub name: String,
    pub kind: FeatureKind,
    /// Category names in order of first appearance; empty for numeric
    /// features.
    pub levels: Vec<String>,
}

/// Rows of mixed categorical/numeric features with a class label each.
/// Classes and categorical levels are indexed in order of first appearance.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledTable {
    pub features: Vec<Feature>,
    pub rows: Vec<Vec<Value>>,
    pub labels: Vec<usize>,
    pub classes: Vec<String>,
}

impl LabeledTable {
    /// Builds a table from string cells. Feature kinds are inferred (any
    /// non-numeric token makes a feature categorical) unless given.
    pub fn from_strings(
        feature_names: Vec<String>,
        kinds: Option<Vec<FeatureKind>>,
        cells: Vec<Vec<String>>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let p = feature_names.len();
        if cells.len() != labels.len() {
            return Err(Error::Input(format!(
                "{} rows but {} labels",
                cells.len(),
                labels.len()
            )));
        }
        if let Some(bad) = cells.iter().position(|r| r.len() != p) {
            return Err(Error::Input(format!(
                "row {bad} has {} values, expected {p}",
                cells[bad].len()
            )));
        }
        let kinds = match kinds {
            Some(k) if k.len() != p => {
                return Err(Error::Input(format!("{} kinds for {p} features", k.len())))
            }
            Some(k) => k,
            None => (0..p)
                .map(|f| {
                    if cells.iter().all(|r| r[f].trim().parse::<f64>().is_ok_and(f64::is_finite)) {
                        FeatureKind::Numeric
                    } else {
                        FeatureKind::Categorical
                    }
                })
                .collect(),
        };

        let mut features: Vec<Feature> = feature_names
            .into_iter()
            .zip(&kinds)
            .map(|(name, &kind)| Feature {
                name,
                kind,
                levels: Vec::new(),
            })
            .collect();
        let mut level_maps: Vec<HashMap<String, usize>> = vec![HashMap::new(); p];
        let mut rows = Vec::with_capacity(cells.len());
        for (r, row) in cells.into_iter().enumerate() {
            let mut values = Vec::with_capacity(p);
            for (f, cell) in row.into_iter().enumerate() {
                let cell = cell.trim().to_string();
                values.push(match features[f].kind {
                    FeatureKind::Numeric => {
                        let v: f64 = cell.parse().map_err(|_| {
                            Error::Input(format!(
                                "row {r}, feature {:?}: {cell:?} is not numeric",
                                features[f].name
                            ))
                        })?;
                        if !v.is_finite() {
                            return Err(Error::Input(format!(
                                "row {r}, feature {:?}: value is not finite",
                                features[f].name
                            )));
                        }
                        Value::Num(v)
                    }
                    FeatureKind::Categorical => {
                        let next = level_maps[f].len();
                        let idx = *level_maps[f].entry(cell.clone()).or_insert_with(|| {
                            features[f].levels.push(cell);
                            next
                        });
                        Value::Cat(idx)
                    }
                });
            }
            rows.push(values);
        }

        let mut classes = Vec::new();
        let mut class_map: HashMap<String, usize> = HashMap::new();
        let labels = labels
            .into_iter()
            .map(|l| {
                let next = class_map.len();
                *class_map.entry(l.clone()).or_insert_with(|| {
                    classes.push(l);
                    next
                })
            })
            .collect();
        Ok(Self {
            features,
            rows,
            labels,
            classes,
        })
    }

    /// All-numeric table with classes named by their index.
    pub fn numeric(rows: Vec<Vec<f64>>, labels: Vec<usize>) -> Result<Self> {
        let p = rows.first().map_or(0, Vec::len);
        if rows.len() != labels.len() {
            return Err(Error::Input("rows and labels differ in length".into()));
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Input("numeric values must be finite".into()));
        }
        if rows.iter().any(|r| r.len() != p) {
            return Err(Error::Input("ragged rows".into()));
        }
        let n_classes = labels.iter().max().map_or(0, |m| m + 1);
        Ok(Self {
            features: (0..p)
                .map(|f| Feature {
                    name: format!("x{f}"),
                    kind: FeatureKind::Numeric,
                    levels: Vec::new(),
                })
                .collect(),
            rows: rows
                .into_iter()
                .map(|r| r.into_iter().map(Value::Num).collect())
                .collect(),
            labels,
            classes: (0..n_classes).map(|c| c.to_string()).collect(),
        })
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_features(&self) -> usize {
        self.features.len()
    }

    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn feature_index(&self, name: &str) -> Option<usize> {
        self.features.iter().position(|f| f.name == name)
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_classes()];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// Occurrences of each level of a categorical feature.
    pub fn value_counts(&self, feature: usize) -> Vec<usize> {
        let mut counts = vec![0; self.features[feature].levels.len()];
        for row in &self.rows {
            if let Value::Cat(v) = row[feature] {
                counts[v] += 1;
            }
        }
        counts
    }

    /// Rows at `indices` (repeats allowed), keeping schema and class list.
    pub fn subset(&self, indices: &[usize]) -> Self {
        Self {
            features: self.features.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            classes: self.classes.clone(),
        }
    }

    /// Checks that a row matches this table's schema.
    pub fn check_row(&self, row: &[Value]) -> Result<()> {
        check_row(&self.features, row)
    }
}

/// Checks that a row has one value of the right kind per feature.
pub fn check_row(features: &[Feature], row: &[Value]) -> Result<()> {
    if row.len() != features.len() {
        return Err(Error::Input(format!(
            "row has {} values, schema has {} features",
            row.len(),
            features.len()
        )));
    }
    for (f, (v, feat)) in row.iter().zip(features).enumerate() {
        match (v, feat.kind) {
            (Value::Num(x), FeatureKind::Numeric) if x.is_finite() => {}
            (Value::Cat(_), FeatureKind::Categorical) => {}
            _ => {
                return Err(Error::Input(format!(
                    "value {v:?} does not match feature {f} ({:?}, {:?})",
                    feat.name, feat.kind
                )))
            }
        }
    }
    Ok(())
}

/// Reads a CSV with a header row. The label column defaults to the last one.
/// `kinds_path`, when given, lists `name,kind` lines (`kind` is
/// `categorical` or `numeric`) overriding the inferred feature kinds.
pub fn read_labeled_csv(
    path: &Path,
    label_column: Option<&str>,
    kinds_path: Option<&Path>,
) -> Result<LabeledTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| csv_error(path, e))?
        .iter()
        .map(str::to_string)
        .collect();
    if headers.len() < 2 {
        return Err(Error::Format {
            path: path.to_path_buf(),
            message: "need at least one feature column and a label column".into(),
        });
    }
    let label_idx = match label_column {
        Some(name) => headers.iter().position(|h| h == name).ok_or_else(|| Error::Format {
            path: path.to_path_buf(),
            message: format!("no column named {name:?}"),
        })?,
        None => headers.len() - 1,
    };

    let mut cells = Vec::new();
    let mut labels = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_error(path, e))?;
        if record.len() != headers.len() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: k + 2,
                column: record.len().min(headers.len()) + 1,
                message: format!("expected {} fields, got {}", headers.len(), record.len()),
            });
        }
        let mut row = Vec::with_capacity(headers.len() - 1);
        for (c, field) in record.iter().enumerate() {
            if c == label_idx {
                labels.push(field.to_string());
            } else {
                row.push(field.to_string());
            }
        }
        cells.push(row);
    }
    let names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|&(c, _)| c != label_idx)
        .map(|(_, h)| h.clone())
        .collect();

    let kinds = match kinds_path {
        None => None,
        Some(kp) => {
            let overrides = read_kind_overrides(kp)?;
            let inferred = LabeledTable::from_strings(names.clone(), None, cells.clone(), labels.clone())?;
            Some(
                inferred
                    .features
                    .iter()
                    .map(|f| overrides.get(&f.name).copied().unwrap_or(f.kind))
                    .collect(),
            )
        }
    };
    LabeledTable::from_strings(names, kinds, cells, labels)
}

fn read_kind_overrides(path: &Path) -> Result<HashMap<String, FeatureKind>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut out = HashMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.splitn(2, [',', '\t']);
        let name = parts.next().unwrap_or("").trim();
        let kind = match parts.next().map(|s| s.trim().to_ascii_lowercase()).as_deref() {
            Some("categorical") => FeatureKind::Categorical,
            Some("numeric") => FeatureKind::Numeric,
            other => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: n + 1,
                    column: 2,
                    message: format!("unknown feature kind {other:?}"),
                })
            }
        };
        out.insert(name.to_string(), kind);
    }
    Ok(out)
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    match e.position() {
        Some(pos) => Error::Parse {
            path: path.to_path_buf(),
            line: pos.line() as usize,
            column: 1,
            message: e.to_string(),
        },
        None => Error::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        },
    }
}
