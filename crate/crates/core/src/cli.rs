//! Command-line runs: dataset statistics, prediction, leave-one-out
//! evaluation, method comparison and the classifier suite.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::classifiers::{fit, holdout_split, Algorithm, ClassifierConfig, FeatureSubset, Pruning, SplitCriterion};
use crate::datasets::{read_labeled_csv, stats, weather_fixture, DatasetFiles, DtiDataset, LabeledTable};
use crate::error::{Error, ErrorClass, Result};
use crate::evaluation::{loocv, render_pr, render_roc, render_summary, roc_pr, write_text, AuprMode, EvalReport, SummaryRow};
use crate::linalg::KernelSpec;
use crate::predictors::{BgmParams, BlmParams, Combine, Inferring, InferringMode, Method, PredictorConfig};
use crate::similarity::{SimilarityKind, SimilaritySource};

#[derive(Debug, Clone, Parser)]
#[command(name = "dti", version, about = "Drug-target interaction prediction and evaluation")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print the statistics table of one or more datasets.
    Stats(StatsArgs),
    /// Score every pair from the full interaction matrix.
    Predict(PredictArgs),
    /// Leave-one-out evaluation of one method.
    Cv(CvArgs),
    /// Run a classifier on a CSV table with a holdout split.
    Classify(ClassifyArgs),
    /// Leave-one-out evaluation of several methods and similarities.
    Compare(CompareArgs),
}

/// Where a dataset comes from: a benchmark prefix in a directory, or three
/// explicit files.
#[derive(Debug, Clone, Args)]
pub struct DataArgs {
    /// Directory holding `<prefix>_admat_dgc.txt`, `<prefix>_simmat_dc.txt`
    /// and `<prefix>_simmat_dg.txt`.
    #[arg(long)]
    pub data_dir: Option<PathBuf>,
    /// Benchmark prefix: nr, gpcr, ic or e.
    #[arg(long, default_value = "nr")]
    pub dataset: String,
    /// Interaction matrix file (overrides the benchmark layout).
    #[arg(long, requires_all = ["drug_sim", "target_sim"])]
    pub interactions: Option<PathBuf>,
    #[arg(long)]
    pub drug_sim: Option<PathBuf>,
    #[arg(long)]
    pub target_sim: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    /// Directory of benchmark files.
    #[arg(long)]
    pub data_dir: Option<PathBuf>,
    /// Benchmark prefixes, repeatable.
    #[arg(long = "dataset", default_values_t = ["nr".to_string()])]
    pub datasets: Vec<String>,
    #[arg(long, requires_all = ["drug_sim", "target_sim"])]
    pub interactions: Option<PathBuf>,
    #[arg(long)]
    pub drug_sim: Option<PathBuf>,
    #[arg(long)]
    pub target_sim: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PredictorArgs {
    #[arg(long, default_value = "blmn")]
    pub method: Method,
    #[arg(long, default_value = "chem-seq")]
    pub similarity: SimilarityKind,
    /// Weight on chemical/sequence similarity in the hybrid.
    #[arg(long, default_value_t = 0.5)]
    pub hybrid_weight: f64,
    /// Scale γ₀ of the interaction-profile kernel bandwidth.
    #[arg(long, default_value_t = 1.0)]
    pub gip_scale: f64,
    /// Compute network similarity once from the full matrix instead of per
    /// masked matrix.
    #[arg(long)]
    pub global_network_similarity: bool,
    /// BGM graph kernel bandwidth.
    #[arg(long, default_value_t = 1.0)]
    pub bandwidth: f64,
    /// BGM embedding dimension (all positive components when absent).
    #[arg(long)]
    pub embedding_dim: Option<usize>,
    #[arg(long, default_value_t = 1e-6)]
    pub bgm_ridge: f64,
    /// Local model of BLM/BLMN.
    #[arg(long, default_value = "rls")]
    pub local_classifier: Algorithm,
    /// RLS regularization δ.
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// SVM box constraint C.
    #[arg(long = "svm-c", default_value_t = 1.0)]
    pub svm_c: f64,
    #[arg(long, default_value = "max")]
    pub combine: Combine,
    #[arg(long, default_value = "linear")]
    pub inferring_mode: InferringMode,
    /// Bandwidth β of exponential neighbor weights.
    #[arg(long, default_value_t = 0.1)]
    pub beta: f64,
    /// Neighbors below this similarity are ignored when inferring.
    #[arg(long, default_value_t = 0.0)]
    pub neighbor_threshold: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl PredictorArgs {
    fn source(&self, kind: SimilarityKind) -> SimilaritySource {
        SimilaritySource {
            kind,
            hybrid_weight: self.hybrid_weight,
            gip_bandwidth_scale: self.gip_scale,
            recompute_per_mask: !self.global_network_similarity,
        }
    }

    pub fn config(&self, method: Method, kind: SimilarityKind) -> PredictorConfig {
        PredictorConfig {
            method,
            similarity: self.source(kind),
            bgm: BgmParams {
                bandwidth: self.bandwidth,
                embedding_dim: self.embedding_dim,
                ridge: self.bgm_ridge,
            },
            blm: BlmParams {
                local_classifier: ClassifierConfig {
                    delta: self.delta,
                    c: self.svm_c,
                    seed: self.seed,
                    ..ClassifierConfig::new(self.local_classifier)
                },
                combine: self.combine,
                neighbor_inferring: method == Method::Blmn,
                inferring: Inferring {
                    mode: self.inferring_mode,
                    beta: self.beta,
                    threshold: self.neighbor_threshold,
                },
            },
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct PredictArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub predictor: PredictorArgs,
    /// Output directory for `scores.tsv` and `scores_long.tsv`.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CvArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub predictor: PredictorArgs,
    /// Worker threads (0 for all cores).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, default_value = "average-precision")]
    pub aupr_mode: AuprMode,
    /// Output directory for the summary, curve and score files.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub predictor: PredictorArgs,
    /// Methods to compare.
    #[arg(long, value_delimiter = ',', default_values_t = [Method::Bgm, Method::Blm, Method::Blmn].map(|m| m.to_string()))]
    pub methods: Vec<String>,
    /// Similarity sources to compare.
    #[arg(long, value_delimiter = ',', default_values_t = ["chem-seq", "network", "hybrid"].map(String::from))]
    pub similarities: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, default_value = "average-precision")]
    pub aupr_mode: AuprMode,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    /// CSV with a header row; the label is the last column unless
    /// `--label-column` is given.
    #[arg(long, required_unless_present = "weather")]
    pub input: Option<PathBuf>,
    /// Use the built-in Weather table instead of a file.
    #[arg(long, conflicts_with = "input")]
    pub weather: bool,
    #[arg(long)]
    pub label_column: Option<String>,
    /// `name,kind` lines overriding inferred feature kinds.
    #[arg(long)]
    pub kinds: Option<PathBuf>,
    #[arg(long, default_value = "decision_tree")]
    pub algo: Algorithm,
    /// Fraction of rows held out for accuracy (0 skips the holdout).
    #[arg(long, default_value_t = 0.3)]
    pub holdout: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    #[arg(long)]
    pub distance_weighted: bool,
    /// entropy or gini.
    #[arg(long, default_value = "entropy")]
    pub criterion: String,
    /// Reduced-error pruning of decision trees.
    #[arg(long)]
    pub prune: bool,
    #[arg(long, default_value_t = 0.2)]
    pub prune_fraction: f64,
    /// Drop the Laplace correction of naive Bayes.
    #[arg(long)]
    pub no_laplace: bool,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[arg(long = "svm-c", default_value_t = 1.0)]
    pub svm_c: f64,
    /// linear, poly:<d>, gaussian:<β>, tanh:<h>,<c> or precomputed.
    #[arg(long, default_value = "gaussian:1")]
    pub kernel: KernelSpec,
    #[arg(long, default_value_t = 1e-6)]
    pub logistic_ridge: f64,
    #[arg(long, default_value_t = 10)]
    pub ensemble_size: usize,
    #[arg(long, default_value = "decision_tree")]
    pub base: Algorithm,
    /// Features per random-forest tree (default ⌈√p⌉).
    #[arg(long)]
    pub feature_subset: Option<usize>,
    /// Output directory for `classify.tsv`; nothing is written when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl ClassifyArgs {
    pub fn config(&self) -> Result<ClassifierConfig> {
        let split_criterion = match self.criterion.to_ascii_lowercase().as_str() {
            "entropy" => SplitCriterion::Entropy,
            "gini" => SplitCriterion::Gini,
            other => return Err(Error::Config(format!("unknown split criterion {other:?}"))),
        };
        let cfg = ClassifierConfig {
            algorithm: self.algo,
            k: self.k,
            distance_weighted: self.distance_weighted,
            split_criterion,
            pruning: if self.prune { Pruning::ReducedError } else { Pruning::None },
            prune_fraction: self.prune_fraction,
            laplace: !self.no_laplace,
            delta: self.delta,
            c: self.svm_c,
            kernel: self.kernel,
            logistic_ridge: self.logistic_ridge,
            ensemble_size: self.ensemble_size,
            base_algorithm: self.base,
            feature_subset_size: self.feature_subset.map_or(FeatureSubset::Auto, FeatureSubset::Fixed),
            seed: self.seed,
            ..ClassifierConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Display name of a benchmark prefix.
pub fn benchmark_name(prefix: &str) -> String {
    match prefix.to_ascii_lowercase().as_str() {
        "nr" => "Nuclear Receptor".into(),
        "gpcr" => "GPCR".into(),
        "ic" => "Ion Channel".into(),
        "e" => "Enzyme".into(),
        other => other.into(),
    }
}

fn load_named(data_dir: Option<&Path>, prefix: &str) -> Result<DtiDataset> {
    let dir = data_dir.ok_or_else(|| Error::Config("give --data-dir or explicit --interactions/--drug-sim/--target-sim".into()))?;
    let mut ds = DatasetFiles::benchmark(dir, prefix).load()?;
    ds.name = benchmark_name(prefix);
    Ok(ds)
}

fn load_explicit(interactions: &Path, drug_sim: Option<&Path>, target_sim: Option<&Path>) -> Result<DtiDataset> {
    let (Some(d), Some(t)) = (drug_sim, target_sim) else {
        return Err(Error::Config("--interactions needs --drug-sim and --target-sim".into()));
    };
    DatasetFiles {
        interactions: interactions.to_path_buf(),
        drug_similarity: d.to_path_buf(),
        target_similarity: t.to_path_buf(),
    }
    .load()
}

impl DataArgs {
    pub fn load(&self) -> Result<DtiDataset> {
        match &self.interactions {
            Some(a) => load_explicit(a, self.drug_sim.as_deref(), self.target_sim.as_deref()),
            None => load_named(self.data_dir.as_deref(), &self.dataset),
        }
    }
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn echo_lines(command: &str, ds: &DtiDataset, pairs: &[(String, String)], extra: &[(&str, String)]) -> Vec<String> {
    let mut lines = vec![format!("command\t{command}"), format!("dataset\t{}", ds.name)];
    lines.extend(pairs.iter().map(|(k, v)| format!("{k}\t{v}")));
    lines.extend(extra.iter().map(|(k, v)| format!("{k}\t{v}")));
    lines
}

/// `stats` table: one row per dataset.
pub fn render_stats(rows: &[DtiDataset]) -> String {
    let mut out = String::from("dataset\tdrugs\ttargets\tinteractions\tmean_drug_degree\tmean_target_degree\tpct_drugs_degree1\tpct_targets_degree1\n");
    for ds in rows {
        let s = stats(ds);
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{:.2}\t{:.2}\t{:.2}\t{:.2}\n",
            ds.name,
            s.n_drugs,
            s.n_targets,
            s.interactions,
            s.mean_drug_degree,
            s.mean_target_degree,
            s.pct_drug_degree_one,
            s.pct_target_degree_one
        ));
    }
    out
}

fn run_stats(args: &StatsArgs, out: &mut dyn Write) -> Result<()> {
    let datasets = match &args.interactions {
        Some(a) => vec![load_explicit(a, args.drug_sim.as_deref(), args.target_sim.as_deref())?],
        None => args
            .datasets
            .iter()
            .map(|p| load_named(args.data_dir.as_deref(), p))
            .collect::<Result<_>>()?,
    };
    write_out(out, &render_stats(&datasets))
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::io("<stdout>", e))
}

fn run_predict(args: &PredictArgs, out: &mut dyn Write) -> Result<()> {
    let ds = args.data.load()?;
    let cfg = args.predictor.config(args.predictor.method, args.predictor.similarity);
    let scores = cfg.predict(&ds)?;
    create_dir(&args.out)?;
    let header = echo_lines("predict", &ds, &[], &[("masking", "none".into())]);
    scores.write_matrix(&args.out.join("scores.tsv"), &ds, &header)?;
    scores.write_long(&args.out.join("scores_long.tsv"), &ds, &ds.interactions, &header)?;
    write_out(
        out,
        &format!(
            "{}: {} scores for {} pairs written to {}\n",
            ds.name,
            scores.method,
            ds.n_drugs() * ds.n_targets(),
            args.out.display()
        ),
    )
}

/// Leave-one-out scores and their report for one configuration.
pub fn cross_validate(ds: &DtiDataset, cfg: &PredictorConfig, workers: usize, mode: AuprMode) -> Result<(crate::predictors::ScoreMatrix, EvalReport)> {
    let scores = loocv(ds, cfg, workers)?;
    if scores.no_training_data_count() > 0 {
        log::info!(
            "{}: {} pairs had a local model without training data",
            scores.method,
            scores.no_training_data_count()
        );
    }
    let report = roc_pr(&scores, &ds.interactions, mode)?;
    Ok((scores, report))
}

fn run_cv(args: &CvArgs, out: &mut dyn Write) -> Result<()> {
    let ds = args.data.load()?;
    let cfg = args.predictor.config(args.predictor.method, args.predictor.similarity);
    let start = Instant::now();
    let (scores, report) = cross_validate(&ds, &cfg, args.workers, args.aupr_mode)?;
    let wall = start.elapsed().as_secs_f64();

    create_dir(&args.out)?;
    let mut header = echo_lines(
        "cv",
        &ds,
        &scores.params,
        &[
            ("method", scores.method.to_string()),
            ("seed", args.predictor.seed.to_string()),
            ("aupr_mode", args.aupr_mode.to_string()),
            ("sweep", "all pairs, one masked entry each".into()),
            ("workers", args.workers.to_string()),
            ("no_training_data_pairs", scores.no_training_data_count().to_string()),
        ],
    );
    let summary_body = render_summary(&[SummaryRow { dataset: &ds.name, report: &report }], &[]);
    header.push(format!("wall_time_s\t{wall:.3}"));
    let summary = render_summary(&[SummaryRow { dataset: &ds.name, report: &report }], &header);
    header.pop();
    write_text(&args.out.join("summary.tsv"), &summary)?;
    write_text(&args.out.join("roc.tsv"), &render_roc(&report, &header))?;
    write_text(&args.out.join("pr.tsv"), &render_pr(&report, &header))?;
    scores.write_long(&args.out.join("scores.tsv"), &ds, &ds.interactions, &header)?;
    write_out(out, &summary_body)
}

fn run_compare(args: &CompareArgs, out: &mut dyn Write) -> Result<()> {
    let ds = args.data.load()?;
    let methods: Vec<Method> = args.methods.iter().map(|m| m.parse()).collect::<Result<_>>()?;
    let kinds: Vec<SimilarityKind> = args.similarities.iter().map(|s| s.parse()).collect::<Result<_>>()?;
    let mut reports = Vec::new();
    let mut timings = Vec::new();
    for &kind in &kinds {
        for &method in &methods {
            let cfg = args.predictor.config(method, kind);
            let start = Instant::now();
            let (_, report) = cross_validate(&ds, &cfg, args.workers, args.aupr_mode)?;
            timings.push(format!("wall_time_s\t{method}\t{kind}\t{:.3}", start.elapsed().as_secs_f64()));
            reports.push(report);
        }
    }
    let rows: Vec<SummaryRow<'_>> = reports
        .iter()
        .map(|r| SummaryRow {
            dataset: &ds.name,
            report: r,
        })
        .collect();
    create_dir(&args.out)?;
    let mut header = echo_lines(
        "compare",
        &ds,
        &[],
        &[
            ("seed", args.predictor.seed.to_string()),
            ("aupr_mode", args.aupr_mode.to_string()),
            ("local_classifier", args.predictor.local_classifier.to_string()),
            ("workers", args.workers.to_string()),
        ],
    );
    header.extend(timings);
    write_text(&args.out.join("compare.tsv"), &render_summary(&rows, &header))?;
    write_out(out, &render_summary(&rows, &[]))
}

fn run_classify(args: &ClassifyArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = args.config()?;
    let (name, table): (String, LabeledTable) = if args.weather {
        ("weather".into(), weather_fixture())
    } else {
        let path = args.input.as_deref().ok_or_else(|| Error::Config("--input is required".into()))?;
        (
            path.display().to_string(),
            read_labeled_csv(path, args.label_column.as_deref(), args.kinds.as_deref())?,
        )
    };
    let mut lines = vec![
        format!("data\t{name}"),
        format!("algorithm\t{}", cfg.algorithm),
        format!("rows\t{}", table.n_rows()),
        format!("seed\t{}", cfg.seed),
    ];
    if args.holdout > 0.0 {
        let (train, test) = holdout_split(&table, args.holdout, cfg.seed)?;
        let model = fit(&cfg, &train)?;
        lines.push(format!("holdout_fraction\t{}", args.holdout));
        lines.push(format!("train_rows\t{}", train.n_rows()));
        lines.push(format!("test_rows\t{}", test.n_rows()));
        lines.push(format!("holdout_accuracy\t{:.4}", model.accuracy(&test)?));
    }
    let full = fit(&cfg, &table)?;
    lines.push(format!("training_accuracy\t{:.4}", full.accuracy(&table)?));
    let mut text = lines.join("\n");
    text.push('\n');
    if let Some(tree) = full.tree() {
        let root = tree
            .root_feature()
            .map_or("(leaf)", |f| table.features[f].name.as_str());
        text.push_str(&format!("root_attribute\t{root}\n"));
        text.push_str("# tree fit on all rows\n");
        for line in tree.render(&table.features, &table.classes).lines() {
            text.push_str(&format!("# {line}\n"));
        }
    }
    if let Some(dir) = &args.out {
        create_dir(dir)?;
        write_text(&dir.join("classify.tsv"), &text)?;
    }
    write_out(out, &text)
}

/// Runs one command, writing its console output to `out`.
pub fn run_with(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    match &config.command {
        Command::Stats(a) => run_stats(a, out),
        Command::Predict(a) => run_predict(a, out),
        Command::Cv(a) => run_cv(a, out),
        Command::Classify(a) => run_classify(a, out),
        Command::Compare(a) => run_compare(a, out),
    }
}

pub fn run(config: &RunConfig) -> Result<()> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run_with(config, &mut lock)
}

/// Exit status for a failed run: 2 configuration, 3 data, 4 numeric or
/// metric.
pub fn exit_code(err: &Error) -> i32 {
    match err.class() {
        ErrorClass::Config => 2,
        ErrorClass::Data => 3,
        ErrorClass::Numeric | ErrorClass::Metric => 4,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::{save_dti, InteractionMatrix, SimilarityMatrix};
    use crate::linalg::DenseMatrix;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("dti").chain(args.iter().copied())).unwrap()
    }

    fn run_text(args: &[&str]) -> Result<String> {
        let mut buf = Vec::new();
        run_with(&parse(args), &mut buf)?;
        Ok(String::from_utf8(buf).unwrap())
    }

    fn write_toy(dir: &Path) {
        let a = InteractionMatrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let sd = DenseMatrix::from_fn(4, 4, |p, q| 0.8f64.powi((p as i32 - q as i32).abs()));
        let st = DenseMatrix::from_fn(3, 3, |p, q| 0.7f64.powi((p as i32 - q as i32).abs()));
        let ds = DtiDataset::from_parts(a, SimilarityMatrix::new(sd).unwrap(), SimilarityMatrix::new(st).unwrap()).unwrap();
        save_dti(&ds, &DatasetFiles::benchmark(dir, "toy")).unwrap();
    }

    #[test]
    fn weather_tree_reports_outlook() {
        let text = run_text(&["classify", "--weather", "--algo", "decision_tree"]).unwrap();
        assert!(text.contains("root_attribute\tOutlook\n"), "{text}");
        assert!(text.contains("holdout_accuracy\t"));
    }

    #[test]
    fn stats_and_cv_on_files() {
        let dir = tempfile::tempdir().unwrap();
        write_toy(dir.path());
        let d = dir.path().to_str().unwrap();
        let text = run_text(&["stats", "--data-dir", d, "--dataset", "toy"]).unwrap();
        assert!(text.lines().nth(1).unwrap().starts_with("toy\t4\t3\t6\t1.50\t2.00\t50.00\t0.00"), "{text}");

        let out = dir.path().join("cv");
        let o = out.to_str().unwrap();
        let text = run_text(&["cv", "--data-dir", d, "--dataset", "toy", "--method", "blm", "--out", o]).unwrap();
        assert!(text.starts_with("dataset\tmethod\tsimilarity\tauc_pct"));
        for f in ["summary.tsv", "roc.tsv", "pr.tsv", "scores.tsv"] {
            let body = fs::read_to_string(out.join(f)).unwrap();
            let header: Vec<&str> = body.lines().take_while(|l| l.starts_with("# ")).collect();
            assert!(header.contains(&"# command\tcv"), "{f}");
            assert!(header.iter().any(|l| l.starts_with("# seed\t")), "{f}");
        }
    }

    #[test]
    fn errors_map_to_exit_codes() {
        let err = run_text(&["stats", "--data-dir", "/nonexistent", "--dataset", "nr"]).unwrap_err();
        assert_eq!(exit_code(&err), 3);
        let err = run_text(&["classify", "--weather", "--algo", "svm"]).unwrap_err();
        assert_eq!(exit_code(&err), 2);
        assert_eq!(exit_code(&Error::Metric("x".into())), 4);
        assert!(RunConfig::try_parse_from(["dti", "cv", "--method", "xyz"]).is_err());
        assert!(RunConfig::try_parse_from(["dti", "cv", "--bogus"]).is_err());
    }
}
