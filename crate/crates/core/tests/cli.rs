use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use dti_core::datasets::{save_dti, DatasetFiles, DtiDataset, InteractionMatrix, SimilarityMatrix};
use dti_core::linalg::DenseMatrix;

fn dti(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dti"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn write_toy(dir: &Path) {
    let a = InteractionMatrix::from_rows(&[
        vec![1, 0, 1, 0],
        vec![0, 1, 0, 0],
        vec![1, 1, 0, 1],
        vec![0, 0, 1, 0],
        vec![0, 0, 0, 1],
    ])
    .unwrap();
    let sd = DenseMatrix::from_fn(5, 5, |p, q| 0.7f64.powi((p as i32 - q as i32).abs()));
    let st = DenseMatrix::from_fn(4, 4, |p, q| 0.6f64.powi((p as i32 - q as i32).abs()));
    let ds = DtiDataset::from_parts(a, SimilarityMatrix::new(sd).unwrap(), SimilarityMatrix::new(st).unwrap()).unwrap();
    save_dti(&ds, &DatasetFiles::benchmark(dir, "toy")).unwrap();
}

#[test]
fn predict_writes_matrix_and_long_tables() {
    let tmp = tempfile::tempdir().unwrap();
    write_toy(tmp.path());
    let out = dti(&["predict", "--data-dir", ".", "--dataset", "toy", "--method", "bgm", "--out", "p"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let long = fs::read_to_string(tmp.path().join("p/scores_long.tsv")).unwrap();
    let body: Vec<&str> = long.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body[0], "drug\ttarget\tscore\tknown");
    assert_eq!(body.len(), 1 + 5 * 4);
    assert!(long.contains("# method\tbgm"));
    assert!(tmp.path().join("p/scores.tsv").exists());
}

#[test]
fn compare_covers_every_combination() {
    let tmp = tempfile::tempdir().unwrap();
    write_toy(tmp.path());
    let out = dti(
        &[
            "compare", "--data-dir", ".", "--dataset", "toy", "--methods", "blm,blmn", "--similarities", "chem-seq,hybrid",
            "--out", "c",
        ],
        tmp.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 1 + 4, "{stdout}");
    let file = fs::read_to_string(tmp.path().join("c/compare.tsv")).unwrap();
    assert!(file.lines().any(|l| l.starts_with("# wall_time_s\tblmn\thybrid\t")));
}

#[test]
fn classify_weather_prints_root() {
    let tmp = tempfile::tempdir().unwrap();
    let out = dti(&["classify", "--weather", "--holdout", "0"], tmp.path());
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("root_attribute\tOutlook"));
    assert!(!stdout.contains("holdout_accuracy"));
}

#[test]
fn classify_reads_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let mut csv = String::from("x,y,label\n");
    for i in 0..20 {
        let v = i as f64 / 10.0;
        csv.push_str(&format!("{v},{},{}\n", 2.0 - v, if i < 10 { "a" } else { "b" }));
    }
    fs::write(tmp.path().join("d.csv"), csv).unwrap();
    for algo in ["knn", "naive_bayes", "decision_tree", "rls", "svm", "logistic_regression", "bagging", "boosting", "random_forest"] {
        let out = dti(&["classify", "--input", "d.csv", "--algo", algo, "--holdout", "0.25"], tmp.path());
        assert!(out.status.success(), "{algo}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8(out.stdout).unwrap().contains("holdout_accuracy\t"));
    }
}

#[test]
fn exit_codes_follow_error_classes() {
    let tmp = tempfile::tempdir().unwrap();
    write_toy(tmp.path());
    // Usage error.
    assert_eq!(dti(&["cv", "--no-such-flag"], tmp.path()).status.code(), Some(2));
    // Unknown method value.
    assert_eq!(dti(&["cv", "--method", "xyz"], tmp.path()).status.code(), Some(2));
    // Invalid parameter.
    let out = dti(&["cv", "--data-dir", ".", "--dataset", "toy", "--delta", "-1"], tmp.path());
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    // Missing files.
    let out = dti(&["stats", "--data-dir", ".", "--dataset", "nr"], tmp.path());
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(String::from_utf8(out.stderr).unwrap().lines().count(), 1);
    // Malformed interaction file.
    fs::write(tmp.path().join("toy_admat_dgc.txt"), "\tT0\nD0\tx\n").unwrap();
    assert_eq!(dti(&["stats", "--data-dir", ".", "--dataset", "toy"], tmp.path()).status.code(), Some(3));
}

#[test]
fn explicit_files_work_without_data_dir() {
    let tmp = tempfile::tempdir().unwrap();
    write_toy(tmp.path());
    let out = dti(
        &[
            "stats",
            "--interactions",
            "toy_admat_dgc.txt",
            "--drug-sim",
            "toy_simmat_dc.txt",
            "--target-sim",
            "toy_simmat_dg.txt",
        ],
        tmp.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.lines().nth(1).unwrap().contains("\t5\t4\t8\t"), "{stdout}");
}
