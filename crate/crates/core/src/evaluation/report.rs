//! Tab-separated report files: one summary row per evaluated configuration
//! and one row per threshold for each curve.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::evaluation::{CurvePoint, EvalReport};

/// One line of a summary table.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow<'a> {
    pub dataset: &'a str,
    pub report: &'a EvalReport,
}

fn param<'a>(report: &'a EvalReport, key: &str) -> &'a str {
    report
        .params
        .iter()
        .find(|(k, _)| k == key)
        .map_or("-", |(_, v)| v.as_str())
}

fn push_comments(out: &mut String, comments: &[String]) {
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
}

/// AUC and AUPR in percent with two decimals, plus counts.
pub fn render_summary(rows: &[SummaryRow<'_>], comments: &[String]) -> String {
    let mut out = String::new();
    push_comments(&mut out, comments);
    out.push_str("dataset\tmethod\tsimilarity\tauc_pct\taupr_pct\tpositives\tpairs\n");
    for r in rows {
        let rep = r.report;
        out.push_str(&format!(
            "{}\t{}\t{}\t{:.2}\t{:.2}\t{}\t{}\n",
            r.dataset,
            rep.method.map_or_else(|| "-".to_string(), |m| m.to_string()),
            param(rep, "similarity"),
            100.0 * rep.auc,
            100.0 * rep.aupr,
            rep.n_positives,
            rep.n_pairs
        ));
    }
    out
}

fn render_points(points: &[CurvePoint], header: &str, row: impl Fn(&CurvePoint) -> (f64, f64), comments: &[String]) -> String {
    let mut out = String::new();
    push_comments(&mut out, comments);
    out.push_str(header);
    out.push('\n');
    for p in points {
        let (x, y) = row(p);
        out.push_str(&format!("{}\t{x}\t{y}\n", p.threshold));
    }
    out
}

/// `threshold  fpr  tpr`, thresholds descending.
pub fn render_roc(report: &EvalReport, comments: &[String]) -> String {
    render_points(&report.roc_points, "threshold\tfpr\ttpr", |p| (p.fpr, p.tpr), comments)
}

/// `threshold  recall  precision`, thresholds descending.
pub fn render_pr(report: &EvalReport, comments: &[String]) -> String {
    render_points(&report.pr_points, "threshold\trecall\tprecision", |p| (p.recall(), p.precision), comments)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
