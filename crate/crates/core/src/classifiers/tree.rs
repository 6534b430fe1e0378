//! Decision trees grown top-down by information gain (or Gini decrease).
//!
//! Categorical features split multiway, one branch per level. Numeric
//! features split in two at midpoints between sorted distinct values, the
//! left branch taking `x < threshold`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classifiers::{argmax, Pruning, SplitCriterion};
use crate::datasets::{Feature, FeatureKind, LabeledTable, Value};
use crate::error::{Error, Result};

/// Shannon entropy (bits) of a multiset of class ids.
pub fn entropy(labels: &[usize]) -> f64 {
    let n_classes = labels.iter().max().map_or(0, |m| m + 1);
    let mut counts = vec![0; n_classes];
    for &l in labels {
        counts[l] += 1;
    }
    entropy_of_counts(&counts)
}

pub fn entropy_of_counts(counts: &[usize]) -> f64 {
    let n: usize = counts.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum::<f64>()
        .max(0.0)
}

pub fn gini_of_counts(counts: &[usize]) -> f64 {
    let n: usize = counts.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    1.0 - counts.iter().map(|&c| (c as f64 / n).powi(2)).sum::<f64>()
}

fn impurity(criterion: SplitCriterion, counts: &[usize]) -> f64 {
    match criterion {
        SplitCriterion::Entropy => entropy_of_counts(counts),
        SplitCriterion::Gini => gini_of_counts(counts),
    }
}

/// Value-weighted entropy of the partition induced by a categorical
/// attribute.
pub fn split_entropy(data: &LabeledTable, attribute: usize) -> Result<f64> {
    let rows: Vec<usize> = (0..data.n_rows()).collect();
    let parts = categorical_partition(data, &rows, attribute)?;
    let n = data.n_rows() as f64;
    Ok(parts
        .iter()
        .map(|p| p.len() as f64 / n * entropy_of_counts(&class_counts(data, p)))
        .sum())
}

/// `E - E(a)` for a categorical attribute `a`.
pub fn information_gain(data: &LabeledTable, attribute: usize) -> Result<f64> {
    if data.n_rows() == 0 {
        return Err(Error::Input("information gain of an empty table".into()));
    }
    let parent = entropy_of_counts(&data.class_counts());
    Ok((parent - split_entropy(data, attribute)?).max(0.0))
}

fn class_counts(data: &LabeledTable, rows: &[usize]) -> Vec<usize> {
    let mut counts = vec![0; data.n_classes()];
    for &r in rows {
        counts[data.labels[r]] += 1;
    }
    counts
}

fn categorical_partition(data: &LabeledTable, rows: &[usize], attribute: usize) -> Result<Vec<Vec<usize>>> {
    let feature = data
        .features
        .get(attribute)
        .ok_or_else(|| Error::Input(format!("no attribute {attribute}")))?;
    if feature.kind != FeatureKind::Categorical {
        return Err(Error::Config(format!(
            "attribute {:?} is numeric; information gain needs a categorical attribute",
            feature.name
        )));
    }
    let mut parts = vec![Vec::new(); feature.levels.len()];
    for &r in rows {
        if let Value::Cat(v) = data.rows[r][attribute] {
            parts[v].push(r);
        }
    }
    Ok(parts)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Leaf {
        counts: Vec<usize>,
    },
    Categorical {
        feature: usize,
        counts: Vec<usize>,
        /// One entry per level; `None` for levels absent at this node.
        children: Vec<Option<Node>>,
    },
    Threshold {
        feature: usize,
        threshold: f64,
        counts: Vec<usize>,
        left: Box<Node>,
        right: Box<Node>,
    },
}

impl Node {
    pub fn counts(&self) -> &[usize] {
        match self {
            Node::Leaf { counts } | Node::Categorical { counts, .. } | Node::Threshold { counts, .. } => counts,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Node::Leaf { .. })
    }

    /// Follows `row` down to the deepest node that covers it.
    fn route(&self, row: &[Value]) -> &Node {
        match self {
            Node::Leaf { .. } => self,
            Node::Categorical { feature, children, .. } => match row[*feature] {
                Value::Cat(v) => match children.get(v) {
                    Some(Some(child)) => child.route(row),
                    _ => self,
                },
                Value::Num(_) => self,
            },
            Node::Threshold {
                feature,
                threshold,
                left,
                right,
                ..
            } => match row[*feature] {
                Value::Num(x) if x < *threshold => left.route(row),
                Value::Num(_) => right.route(row),
                Value::Cat(_) => self,
            },
        }
    }

    fn children(&self) -> Vec<&Node> {
        match self {
            Node::Leaf { .. } => Vec::new(),
            Node::Categorical { children, .. } => children.iter().flatten().collect(),
            Node::Threshold { left, right, .. } => vec![left, right],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree {
    pub root: Node,
    pub criterion: SplitCriterion,
}

#[derive(Debug, Clone)]
pub(crate) struct TreeOptions<'a> {
    pub criterion: SplitCriterion,
    pub pruning: Pruning,
    pub prune_fraction: f64,
    pub seed: u64,
    /// Restricts candidate split features (random forests).
    pub allowed: Option<&'a [usize]>,
}

struct Split {
    feature: usize,
    threshold: Option<f64>,
    gain: f64,
    parts: Vec<Vec<usize>>,
}

impl DecisionTree {
    pub(crate) fn fit(data: &LabeledTable, opts: &TreeOptions<'_>) -> Result<Self> {
        if data.n_rows() == 0 {
            return Err(Error::Input("cannot grow a tree on an empty table".into()));
        }
        let all: Vec<usize> = (0..data.n_rows()).collect();
        let (grow, prune) = match opts.pruning {
            Pruning::None => (all, Vec::new()),
            Pruning::ReducedError => {
                let mut idx = all;
                idx.shuffle(&mut ChaCha8Rng::seed_from_u64(opts.seed));
                let n_prune = ((data.n_rows() as f64) * opts.prune_fraction).round() as usize;
                let n_prune = n_prune.min(data.n_rows().saturating_sub(1));
                let prune = idx.split_off(idx.len() - n_prune);
                (idx, prune)
            }
        };
        let features: Vec<usize> = match opts.allowed {
            Some(a) => a.to_vec(),
            None => (0..data.n_features()).collect(),
        };
        let mut root = grow_node(data, &grow, &features, opts.criterion);
        if !prune.is_empty() {
            prune_node(&mut root, data, &prune);
        }
        Ok(Self {
            root,
            criterion: opts.criterion,
        })
    }

    /// Class frequencies of the node that `row` ends at.
    pub fn leaf_counts(&self, row: &[Value]) -> &[usize] {
        self.root.route(row).counts()
    }

    pub fn predict_scores(&self, row: &[Value]) -> Vec<f64> {
        let counts = self.leaf_counts(row);
        let total: usize = counts.iter().sum();
        counts.iter().map(|&c| c as f64 / total.max(1) as f64).collect()
    }

    pub fn root_feature(&self) -> Option<usize> {
        match &self.root {
            Node::Leaf { .. } => None,
            Node::Categorical { feature, .. } | Node::Threshold { feature, .. } => Some(*feature),
        }
    }

    pub fn depth(&self) -> usize {
        fn depth(n: &Node) -> usize {
            1 + n.children().into_iter().map(depth).max().unwrap_or(0)
        }
        depth(&self.root)
    }

    pub fn n_leaves(&self) -> usize {
        fn leaves(n: &Node) -> usize {
            if n.is_leaf() {
                1
            } else {
                n.children().into_iter().map(leaves).sum()
            }
        }
        leaves(&self.root)
    }

    /// Indented text rendering, one line per branch.
    pub fn render(&self, features: &[Feature], classes: &[String]) -> String {
        let mut out = String::new();
        render_node(&self.root, features, classes, 0, &mut out);
        out
    }
}

fn render_node(node: &Node, features: &[Feature], classes: &[String], depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let summary = |counts: &[usize]| {
        let label = &classes[argmax(&counts.iter().map(|&c| c as f64).collect::<Vec<_>>())];
        let parts: Vec<String> = counts
            .iter()
            .zip(classes)
            .filter(|(c, _)| **c > 0)
            .map(|(c, name)| format!("{name}={c}"))
            .collect();
        format!("{label} ({})", parts.join(", "))
    };
    match node {
        Node::Leaf { counts } => out.push_str(&format!("{pad}-> {}\n", summary(counts))),
        Node::Categorical { feature, children, .. } => {
            let f = &features[*feature];
            for (level, child) in f.levels.iter().zip(children) {
                if let Some(child) = child {
                    out.push_str(&format!("{pad}{} = {level}\n", f.name));
                    render_node(child, features, classes, depth + 1, out);
                }
            }
        }
        Node::Threshold {
            feature,
            threshold,
            left,
            right,
            ..
        } => {
            let name = &features[*feature].name;
            out.push_str(&format!("{pad}{name} < {threshold}\n"));
            render_node(left, features, classes, depth + 1, out);
            out.push_str(&format!("{pad}{name} >= {threshold}\n"));
            render_node(right, features, classes, depth + 1, out);
        }
    }
}

fn grow_node(data: &LabeledTable, rows: &[usize], features: &[usize], criterion: SplitCriterion) -> Node {
    let counts = class_counts(data, rows);
    if counts.iter().filter(|&&c| c > 0).count() <= 1 {
        return Node::Leaf { counts };
    }
    let Some(split) = best_split(data, rows, features, criterion, &counts) else {
        return Node::Leaf { counts };
    };
    match split.threshold {
        None => {
            let children = split
                .parts
                .iter()
                .map(|p| (!p.is_empty()).then(|| grow_node(data, p, features, criterion)))
                .collect();
            Node::Categorical {
                feature: split.feature,
                counts,
                children,
            }
        }
        Some(threshold) => Node::Threshold {
            feature: split.feature,
            threshold,
            counts,
            left: Box::new(grow_node(data, &split.parts[0], features, criterion)),
            right: Box::new(grow_node(data, &split.parts[1], features, criterion)),
        },
    }
}

/// Highest-gain split that actually partitions `rows`. Ties go to the lower
/// feature index, then the lower threshold.
fn best_split(
    data: &LabeledTable,
    rows: &[usize],
    features: &[usize],
    criterion: SplitCriterion,
    counts: &[usize],
) -> Option<Split> {
    let parent = impurity(criterion, counts);
    let n = rows.len() as f64;
    let weighted = |parts: &[Vec<usize>]| -> f64 {
        parts
            .iter()
            .filter(|p| !p.is_empty())
            .map(|p| p.len() as f64 / n * impurity(criterion, &class_counts(data, p)))
            .sum()
    };

    let mut sorted_features = features.to_vec();
    sorted_features.sort_unstable();
    let mut best: Option<Split> = None;
    let consider = |cand: Split, best: &mut Option<Split>| {
        if best.as_ref().is_none_or(|b| cand.gain > b.gain + 1e-12) {
            *best = Some(cand);
        }
    };
    for &f in &sorted_features {
        match data.features[f].kind {
            FeatureKind::Categorical => {
                let parts = categorical_partition(data, rows, f).expect("categorical feature");
                if parts.iter().filter(|p| !p.is_empty()).count() < 2 {
                    continue;
                }
                let gain = parent - weighted(&parts);
                consider(
                    Split {
                        feature: f,
                        threshold: None,
                        gain,
                        parts,
                    },
                    &mut best,
                );
            }
            FeatureKind::Numeric => {
                let mut vals: Vec<(f64, usize)> = rows
                    .iter()
                    .map(|&r| (data.rows[r][f].as_num().expect("numeric feature"), r))
                    .collect();
                vals.sort_by(|a, b| a.0.total_cmp(&b.0));
                let n_classes = data.n_classes();
                let mut left = vec![0usize; n_classes];
                let mut right = counts.to_vec();
                for k in 0..vals.len() - 1 {
                    let label = data.labels[vals[k].1];
                    left[label] += 1;
                    right[label] -= 1;
                    if vals[k].0 == vals[k + 1].0 {
                        continue;
                    }
                    let nl = (k + 1) as f64;
                    let child = nl / n * impurity(criterion, &left)
                        + (n - nl) / n * impurity(criterion, &right);
                    let gain = parent - child;
                    if best.as_ref().is_none_or(|b| gain > b.gain + 1e-12) {
                        let threshold = vals[k].0 + (vals[k + 1].0 - vals[k].0) / 2.0;
                        let (l, r): (Vec<_>, Vec<_>) = rows
                            .iter()
                            .partition(|&&r| data.rows[r][f].as_num().unwrap() < threshold);
                        best = Some(Split {
                            feature: f,
                            threshold: Some(threshold),
                            gain,
                            parts: vec![l, r],
                        });
                    }
                }
            }
        }
    }
    best
}

/// Reduced-error pruning: bottom-up, a subtree becomes a leaf when that does
/// not increase errors on the held-out rows reaching it.
fn prune_node(node: &mut Node, data: &LabeledTable, rows: &[usize]) -> usize {
    let majority = argmax(&node.counts().iter().map(|&c| c as f64).collect::<Vec<_>>());
    let leaf_errors = rows.iter().filter(|&&r| data.labels[r] != majority).count();
    let subtree_errors = match node {
        Node::Leaf { .. } => return leaf_errors,
        Node::Categorical { feature, children, .. } => {
            let mut errors = 0;
            let mut routed = vec![Vec::new(); children.len()];
            for &r in rows {
                match data.rows[r][*feature] {
                    Value::Cat(v) if v < children.len() && children[v].is_some() => routed[v].push(r),
                    _ => errors += usize::from(data.labels[r] != majority),
                }
            }
            for (child, part) in children.iter_mut().zip(&routed) {
                if let Some(child) = child {
                    errors += prune_node(child, data, part);
                }
            }
            errors
        }
        Node::Threshold {
            feature,
            threshold,
            left,
            right,
            ..
        } => {
            let (l, r): (Vec<usize>, Vec<usize>) = rows
                .iter()
                .partition(|&&r| data.rows[r][*feature].as_num().is_some_and(|x| x < *threshold));
            prune_node(left, data, &l) + prune_node(right, data, &r)
        }
    };
    if leaf_errors <= subtree_errors {
        *node = Node::Leaf {
            counts: node.counts().to_vec(),
        };
        leaf_errors
    } else {
        subtree_errors
    }
}
