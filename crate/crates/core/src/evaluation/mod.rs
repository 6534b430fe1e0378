//! Leave-one-out evaluation of interaction predictors, confusion-based
//! metrics, ROC and precision-recall curves, and report writers.

mod loocv;
mod metrics;
mod report;

pub use loocv::loocv;
pub use metrics::{aupr, auc, confusion_at, evaluate, roc_pr, AuprMode, Confusion, CurvePoint, EvalReport};
pub use report::{render_pr, render_roc, render_summary, write_text, SummaryRow};
