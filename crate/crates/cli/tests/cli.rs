use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};
use weylrec::report::{Status, VerificationReport};
use weylrec::weylchar::{CharacterRow, ReciprocityTable};

fn weylrec(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_weylrec"));
    cmd.args(args).env_remove("WEYLREC_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("WEYLREC_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = weylrec(args, None);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn code(args: &[&str]) -> Option<i32> {
    weylrec(args, None).status.code()
}

#[test]
fn macdonald_rendering() {
    assert_eq!(
        stdout(&["macdonald", "--rank", "2", "--partition", "2,0", "--basis", "m"]),
        "m[2,0] + (1+q)·m[1,1]"
    );
    assert_eq!(stdout(&["macdonald", "--rank", "2", "--partition", "1,0"]), "m[1,0]");
    assert_eq!(
        stdout(&["macdonald", "--rank", "2", "--partition", "2,0", "--basis", "s"]),
        "s[(2),0] + q·s[(0),1]"
    );
    assert_eq!(
        stdout(&["macdonald", "--rank", "2", "--partition", "2"]),
        "m[2,0] + (1+q)·m[1,1]"
    );
}

#[test]
fn characters_and_hilbert_series() {
    assert_eq!(
        stdout(&["hilbert", "projective", "--rank", "2", "--weight", "0", "--order", "3"]),
        "1 + 3q + 9q² + 22q³"
    );
    assert_eq!(stdout(&["hilbert", "local", "--rank", "2", "--weight", "2"]), "3 + q");
    assert_eq!(
        stdout(&["hilbert", "global", "--rank", "2", "--weight", "1", "--order", "3"]),
        "2 + 2q + 2q² + 2q³"
    );
    assert_eq!(
        stdout(&["character", "local-weyl", "--rank", "2", "--weight", "0"]),
        "(0,0): 1"
    );
    assert_eq!(
        stdout(&["character", "local-weyl", "--rank", "2", "--weight", "2"]),
        "(2,0): 1\n(0,1): 1"
    );
    assert_eq!(
        stdout(&["hilbert", "global", "--rank", "3", "--weight", "0", "--order", "4"]),
        "1"
    );
}

#[test]
fn json_outputs_round_trip() {
    let json = stdout(&[
        "character",
        "local-weyl",
        "--rank",
        "3",
        "--weight",
        "2,0",
        "--format",
        "json",
    ]);
    let rows: Vec<CharacterRow> = serde_json::from_str(&json).unwrap();
    assert_eq!(
        rows[0],
        CharacterRow {
            weight: vec![2, 0],
            grade: 0,
            mult: 1
        }
    );
    assert_eq!(serde_json::to_string_pretty(&rows).unwrap(), json);

    let json = stdout(&[
        "reciprocity-table",
        "--rank",
        "2",
        "--weight",
        "1",
        "--order",
        "3",
        "--format",
        "json",
    ]);
    let table: ReciprocityTable = serde_json::from_str(&json).unwrap();
    assert!(table.stable);
    assert_eq!(
        (table.rows[0].mu.as_slice(), table.rows[0].s, table.rows[0].mult),
        (&[1u32][..], 0, 1)
    );
    assert_eq!(serde_json::to_string_pretty(&table).unwrap(), json);

    let json = stdout(&["verify", "lim", "--rank", "2", "--max-m", "3", "--format", "json"]);
    let report: VerificationReport = serde_json::from_str(&json).unwrap();
    assert_eq!(report.status, Status::Pass);
    assert!(report.cells_checked > 0);
}

#[test]
fn reciprocity_table_rows() {
    let text = stdout(&["reciprocity-table", "--rank", "2", "--weight", "0", "--order", "3"]);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows, ["(0,0): 1", "(2,1): 1", "(4,2): 1", "(6,3): 1"]);
    assert!(text.starts_with("# lambda=(0) rank=2 max_grade=3 mu_bound=6 rerun_bound=8 stable=true"));
    let text = stdout(&[
        "reciprocity-table",
        "--rank",
        "2",
        "--weight",
        "0",
        "--order",
        "3",
        "--prefix",
        "1",
    ]);
    assert_eq!(text.lines().skip(1).collect::<Vec<_>>(), ["(0,0): 1"]);
    let text = stdout(&["reciprocity-table", "--rank", "3", "--weight", "1,1", "--order", "2"]);
    assert!(text.lines().any(|l| l == "(1,1,0): 1"), "{text}");
}

#[test]
fn verify_commands_pass() {
    for args in [
        &["verify", "reciprocity", "--rank", "2", "--weight", "0", "--order", "6"][..],
        &[
            "verify",
            "reciprocity",
            "--rank",
            "2",
            "--weight",
            "1",
            "--order",
            "4",
            "--grouping",
            "per-weight",
        ],
        &["verify", "norms", "--rank", "3", "--max-size", "5"],
        &["verify", "lim", "--rank", "2", "--max-m", "3"],
        &["verify", "orthonormality", "--rank", "2", "--degree", "4"],
        &["verify", "cauchy-kernels", "--rank", "3", "--degree", "4"],
        &["verify", "cauchy-t0", "--rank", "2", "--degree", "4", "--order", "4"],
        &["verify", "mult", "--rank", "2", "--degree", "3"],
        &["verify", "lhs", "--rank", "2", "--degree", "4", "--order", "4"],
        &["verify", "crucial", "--rank", "3", "--partition", "1", "--order", "3"],
    ] {
        let text = stdout(args);
        assert!(text.contains(": pass ("), "{args:?}: {text}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["macdonald", "--rank", "2", "--partition", "1,2"]), Some(2));
    assert_eq!(code(&["macdonald", "--rank", "2", "--partition", "1,1,1"]), Some(2));
    assert_eq!(code(&["hilbert", "local", "--rank", "3", "--weight", "1"]), Some(2));
    assert_eq!(code(&["hilbert", "local", "--rank", "1", "--weight", "0"]), Some(2));
    assert_eq!(code(&["verify", "nonsense"]), Some(2));
    assert_eq!(
        code(&["verify", "crucial", "--rank", "2", "--partition", "1,1"]),
        Some(2)
    );
    assert_eq!(
        code(&[
            "verify",
            "reciprocity",
            "--rank",
            "2",
            "--weight",
            "0",
            "--order",
            "4",
            "--mu-bound",
            "2"
        ]),
        Some(3)
    );
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let args = |jobs: &'static str| {
        vec![
            "verify",
            "reciprocity",
            "--rank",
            "3",
            "--weight",
            "1,0",
            "--order",
            "4",
            "--format",
            "json",
            "--jobs",
            jobs,
        ]
    };
    let one = weylrec(&args("1"), None);
    let four = weylrec(&args("4"), None);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, weylrec(&args("4"), None).stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = weylrec(
        &[
            "verify",
            "norms",
            "--rank",
            "2",
            "--max-size",
            "4",
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: VerificationReport = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.identity, "norms");
}

fn cache_files(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut v: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}

#[test]
fn cache_is_reused_and_checked() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "norms", "--rank", "2", "--max-size", "4"];
    let first = weylrec(&args, Some(dir.path()));
    assert_eq!(first.status.code(), Some(0));
    let files = cache_files(dir.path());
    assert_eq!(files.len(), 1);
    let name = files[0].file_name().unwrap().to_str().unwrap().to_string();
    assert_eq!(name.len(), 64 + ".json".len());

    let second = weylrec(&args, Some(dir.path()));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(cache_files(dir.path()), files);

    // Garbage is ignored and replaced.
    fs::write(&files[0], "not json").unwrap();
    assert_eq!(weylrec(&args, Some(dir.path())).stdout, first.stdout);
    let doc: Value = serde_json::from_str(&fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert_eq!(doc["version"], 1);

    // A consistently re-signed but wrong table is used, and the check fails.
    let mut doc = doc;
    let norms = doc["table"]["norms"].as_object_mut().unwrap();
    let key = norms.keys().next_back().unwrap().clone();
    norms[&key] =
        serde_json::to_value(<weylrec::exactalg::RationalFunction as weylrec::exactalg::Coefficient>::one()).unwrap();
    let payload = doc["table"].to_string();
    doc["sha256"] = Value::String(hex::encode(Sha256::digest(payload.as_bytes())));
    fs::write(&files[0], doc.to_string()).unwrap();
    assert_eq!(weylrec(&args, Some(dir.path())).status.code(), Some(1));

    // A digest mismatch triggers a rebuild.
    doc["sha256"] = Value::String("0".repeat(64));
    fs::write(&files[0], doc.to_string()).unwrap();
    assert_eq!(weylrec(&args, Some(dir.path())).status.code(), Some(0));
}

#[test]
fn cached_series_tables_give_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["reciprocity-table", "--rank", "3", "--weight", "0", "--order", "3"];
    let plain = weylrec(&args, None);
    let cold = weylrec(&args, Some(dir.path()));
    let warm = weylrec(&args, Some(dir.path()));
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cache_files(dir.path()).len(), 1);
}

#[test]
fn export_writes_tables() {
    let json = stdout(&["export", "--rank", "2", "--max-size", "2"]);
    let table: weylrec::macdonald::QWhittakerTable = serde_json::from_str(&json).unwrap();
    assert_eq!(table.max_size(), 2);
    assert_eq!(
        table
            .entry(&weylrec::partitions::Partition::new(vec![2, 0]).unwrap())
            .unwrap()
            .to_string(),
        "m[2,0] + (1+q)·m[1,1]"
    );
    let json = stdout(&[
        "export",
        "--rank",
        "2",
        "--max-size",
        "2",
        "--truncated",
        "--order",
        "1",
    ]);
    let table: weylrec::macdonald::QWhittakerSeriesTable = serde_json::from_str(&json).unwrap();
    assert_eq!(table.order(), 1);
}
