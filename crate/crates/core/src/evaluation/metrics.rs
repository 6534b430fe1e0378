//! Confusion counts, ROC and precision-recall curves, AUC and AUPR.
//!
//! A score at or above the threshold is a predicted interaction. Curves are
//! swept over the distinct scores in descending order, so tied scores move
//! together; the ROC trapezoid through tie groups gives the rank statistic
//! with ties counted ½.

use std::fmt;
use std::str::FromStr;

use crate::datasets::InteractionMatrix;
use crate::error::{Error, Result};
use crate::predictors::{Method, ScoreMatrix};

/// How the area under the precision-recall curve is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AuprMode {
    /// `Σ (R_k − R_{k−1}) · P_k` over thresholds.
    #[default]
    AveragePrecision,
    /// Trapezoids through `(recall, precision)` starting at `(0, 1)`.
    Trapezoid,
}

impl AuprMode {
    pub fn name(self) -> &'static str {
        match self {
            AuprMode::AveragePrecision => "average-precision",
            AuprMode::Trapezoid => "trapezoid",
        }
    }
}

impl fmt::Display for AuprMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AuprMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "average-precision" | "ap" => Ok(AuprMode::AveragePrecision),
            "trapezoid" | "trapezoidal" => Ok(AuprMode::Trapezoid),
            _ => Err(Error::Config(format!(
                "unknown AUPR mode {s:?} (expected average-precision or trapezoid)"
            ))),
        }
    }
}

/// Counts and rates at one threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    pub fn_: usize,
    /// `TP / (TP + FN)`, also the recall; 0 without positives.
    pub tpr: f64,
    /// `FP / (FP + TN)`; 0 without negatives.
    pub fpr: f64,
    /// `TP / (TP + FP)`, 1 when nothing is predicted positive.
    pub precision: f64,
}

impl Confusion {
    fn from_counts(tp: usize, fp: usize, positives: usize, negatives: usize) -> Self {
        let ratio = |a: usize, b: usize, empty: f64| if b == 0 { empty } else { a as f64 / b as f64 };
        Self {
            tp,
            fp,
            tn: negatives - fp,
            fn_: positives - tp,
            tpr: ratio(tp, positives, 0.0),
            fpr: ratio(fp, negatives, 0.0),
            precision: ratio(tp, tp + fp, 1.0),
        }
    }
}

pub fn confusion_at(scores: &[f64], labels: &[bool], threshold: f64) -> Result<Confusion> {
    check_lengths(scores, labels)?;
    let positives = labels.iter().filter(|&&l| l).count();
    let (mut tp, mut fp) = (0, 0);
    for (&s, &l) in scores.iter().zip(labels) {
        if s >= threshold {
            if l {
                tp += 1;
            } else {
                fp += 1;
            }
        }
    }
    Ok(Confusion::from_counts(tp, fp, positives, labels.len() - positives))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    /// Scores at or above this are predicted positive; the first point of
    /// each curve uses `+∞`.
    pub threshold: f64,
    /// True-positive rate, equal to the recall.
    pub tpr: f64,
    pub fpr: f64,
    pub precision: f64,
}

impl CurvePoint {
    pub fn recall(&self) -> f64 {
        self.tpr
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub auc: f64,
    pub aupr: f64,
    pub aupr_mode: AuprMode,
    /// One point per distinct threshold, descending, after the `+∞` start.
    pub roc_points: Vec<CurvePoint>,
    pub pr_points: Vec<CurvePoint>,
    pub n_positives: usize,
    pub n_pairs: usize,
    pub method: Option<Method>,
    pub params: Vec<(String, String)>,
}

fn check_lengths(scores: &[f64], labels: &[bool]) -> Result<()> {
    if scores.len() != labels.len() {
        return Err(Error::Input(format!(
            "{} scores but {} labels",
            scores.len(),
            labels.len()
        )));
    }
    Ok(())
}

/// Points at `+∞` and at every distinct score, descending.
fn sweep(scores: &[f64], labels: &[bool]) -> Result<(Vec<CurvePoint>, usize)> {
    check_lengths(scores, labels)?;
    if let Some(pos) = scores.iter().position(|s| !s.is_finite()) {
        return Err(Error::Metric(format!("score {} at position {pos} is not finite", scores[pos])));
    }
    let positives = labels.iter().filter(|&&l| l).count();
    let negatives = labels.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(Error::Metric(format!(
            "ROC and PR curves need both classes; truth has {positives} positives and {negatives} negatives"
        )));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));

    let point = |threshold: f64, tp: usize, fp: usize| {
        let c = Confusion::from_counts(tp, fp, positives, negatives);
        CurvePoint {
            threshold,
            tpr: c.tpr,
            fpr: c.fpr,
            precision: c.precision,
        }
    };
    let mut points = vec![point(f64::INFINITY, 0, 0)];
    let (mut tp, mut fp) = (0, 0);
    let mut k = 0;
    while k < order.len() {
        let t = scores[order[k]];
        while k < order.len() && scores[order[k]] == t {
            if labels[order[k]] {
                tp += 1;
            } else {
                fp += 1;
            }
            k += 1;
        }
        points.push(point(t, tp, fp));
    }
    Ok((points, positives))
}

/// Trapezoidal area under the ROC curve.
pub fn auc(scores: &[f64], labels: &[bool]) -> Result<f64> {
    let (points, _) = sweep(scores, labels)?;
    Ok(roc_area(&points))
}

fn roc_area(points: &[CurvePoint]) -> f64 {
    points
        .windows(2)
        .map(|w| (w[1].fpr - w[0].fpr) * (w[1].tpr + w[0].tpr) / 2.0)
        .sum()
}

fn pr_area(points: &[CurvePoint], mode: AuprMode) -> f64 {
    points
        .windows(2)
        .map(|w| {
            let dr = w[1].tpr - w[0].tpr;
            match mode {
                AuprMode::AveragePrecision => dr * w[1].precision,
                AuprMode::Trapezoid => dr * (w[1].precision + w[0].precision) / 2.0,
            }
        })
        .sum()
}

/// Area under the precision-recall curve.
pub fn aupr(scores: &[f64], labels: &[bool], mode: AuprMode) -> Result<f64> {
    let (points, _) = sweep(scores, labels)?;
    Ok(pr_area(&points, mode))
}

/// Curves and areas for flat score and label vectors.
pub fn evaluate(scores: &[f64], labels: &[bool], mode: AuprMode) -> Result<EvalReport> {
    let (points, n_positives) = sweep(scores, labels)?;
    Ok(EvalReport {
        auc: roc_area(&points).clamp(0.0, 1.0),
        aupr: pr_area(&points, mode).clamp(0.0, 1.0),
        aupr_mode: mode,
        roc_points: points.clone(),
        pr_points: points,
        n_positives,
        n_pairs: scores.len(),
        method: None,
        params: Vec::new(),
    })
}

/// Compares predicted scores against the interaction matrix over every pair.
pub fn roc_pr(scores: &ScoreMatrix, truth: &InteractionMatrix, mode: AuprMode) -> Result<EvalReport> {
    if scores.n_drugs() != truth.n_drugs() || scores.n_targets() != truth.n_targets() {
        return Err(Error::Input(format!(
            "scores are {}x{}, truth is {}x{}",
            scores.n_drugs(),
            scores.n_targets(),
            truth.n_drugs(),
            truth.n_targets()
        )));
    }
    let labels: Vec<bool> = truth.as_matrix().as_slice().iter().map(|&v| v == 1.0).collect();
    let mut report = evaluate(scores.values.as_slice(), &labels, mode)?;
    report.method = Some(scores.method);
    report.params = scores.params.clone();
    Ok(report)
}
