//! End-to-end checks of the binary: artifact alignment, rerun determinism,
//! and the exit-code contract.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn tourmap(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tourmap"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) {
    let out = tourmap(dir, args);
    assert!(
        out.status.success(),
        "tourmap {args:?} failed:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn code(dir: &Path, args: &[&str]) -> i32 {
    tourmap(dir, args).status.code().expect("exit code")
}

fn build_pipeline(dir: &Path) {
    ok(dir, &["dataset", "--recipe", "custom", "--n", "8", "--out", "m.jsonl"]);
    ok(
        dir,
        &[
            "generate", "--model", "uniform", "--n", "8", "--count", "10", "--seed", "7",
            "--out", "m.jsonl",
        ],
    );
    ok(
        dir,
        &["dist", "--manifest", "m.jsonl", "--metric", "katz", "--out", "katz.csv"],
    );
    ok(
        dir,
        &[
            "map", "--matrix", "katz.csv", "--manifest", "m.jsonl", "--seed", "3", "--out",
            "emb.csv",
        ],
    );
    ok(
        dir,
        &["analyze", "--manifest", "m.jsonl", "--seed", "3", "--out", "an.csv"],
    );
    ok(
        dir,
        &[
            "render", "--embedding", "emb.csv", "--color-by", "family", "--legend", "--out",
            "family.svg",
        ],
    );
    ok(
        dir,
        &[
            "render", "--embedding", "emb.csv", "--analysis", "an.csv", "--color-by",
            "pw_count", "--legend", "--out", "pw.svg",
        ],
    );
}

#[test]
fn pipeline_reruns_are_byte_identical_and_aligned() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    build_pipeline(a.path());
    build_pipeline(b.path());

    // Timing columns wobble, so the analysis CSV is exempt; everything
    // else must match to the byte.
    for f in [
        "m.jsonl",
        "katz.csv",
        "katz.csv.meta.json",
        "emb.csv",
        "emb.csv.stress.json",
        "family.svg",
        "pw.svg",
    ] {
        let x = fs::read(a.path().join(f)).unwrap();
        let y = fs::read(b.path().join(f)).unwrap();
        assert_eq!(x, y, "{f} differs between reruns");
    }

    // One id universe flows through every stage.
    let manifest_ids: Vec<String> = fs::read_to_string(a.path().join("m.jsonl"))
        .unwrap()
        .lines()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["id"]
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect();
    let emb_ids: Vec<String> = fs::read_to_string(a.path().join("emb.csv"))
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().to_string())
        .collect();
    let an_ids: Vec<String> = fs::read_to_string(a.path().join("an.csv"))
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().to_string())
        .collect();
    assert_eq!(manifest_ids, emb_ids);
    assert_eq!(manifest_ids, an_ids);
    assert_eq!(manifest_ids.len(), 2 + 5 + 5 + 10);
}

#[test]
fn analyze_rules_subset_limits_columns() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["dataset", "--recipe", "custom", "--n", "6", "--out", "m.jsonl"]);
    ok(
        d.path(),
        &[
            "analyze", "--manifest", "m.jsonl", "--rules", "top_cycle,copeland", "--out",
            "an.csv",
        ],
    );
    let text = fs::read_to_string(d.path().join("an.csv")).unwrap();
    assert_eq!(text.lines().next(), Some("id,copeland_count,top_cycle_count"));
    assert_eq!(code(d.path(), &["analyze", "--manifest", "m.jsonl", "--rules", "frobnicate", "--out", "x.csv"]), 2);
}

#[test]
fn exit_codes_distinguish_failure_classes() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["dataset", "--recipe", "custom", "--n", "7", "--out", "m.jsonl"]);
    assert_eq!(
        code(d.path(), &["dist", "--manifest", "m.jsonl", "--metric", "sorcery", "--out", "x.csv"]),
        2
    );
    assert_eq!(
        code(d.path(), &["dist", "--manifest", "gone.jsonl", "--metric", "katz", "--out", "x.csv"]),
        4
    );
    assert_eq!(
        code(
            d.path(),
            &[
                "dist", "--manifest", "m.jsonl", "--metric", "ged", "--ged-node-budget", "3",
                "--out", "x.csv",
            ],
        ),
        3
    );
    assert_eq!(
        code(d.path(), &["dataset", "--recipe", "size12", "--nba", "no_such_dir", "--out", "x.jsonl"]),
        4
    );
}

#[test]
fn generate_rejects_id_collisions_across_invocations() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["generate", "--model", "ordered", "--n", "5", "--out", "m.jsonl"]);
    assert_eq!(
        code(d.path(), &["generate", "--model", "ordered", "--n", "5", "--out", "m.jsonl"]),
        2
    );
    // The survivor is the single original entry.
    let lines = fs::read_to_string(d.path().join("m.jsonl")).unwrap();
    assert_eq!(lines.lines().count(), 1);
}

#[test]
fn ingest_builds_manifest_entries_from_records() {
    let d = tempfile::tempdir().unwrap();
    let csv = "pair_game_id,player_a,player_b,score_a,score_b,aux_a,aux_b\n\
               g1,pf,az,100,90,10,12\n\
               g2,pf,bk,80,95,11,10\n\
               g3,az,bk,99,98,9,9\n";
    fs::write(d.path().join("season.csv"), csv).unwrap();
    ok(
        d.path(),
        &["ingest", "--kind", "nba", "--input", "season.csv", "--out", "nba.jsonl"],
    );
    let line = fs::read_to_string(d.path().join("nba.jsonl")).unwrap();
    let entry: serde_json::Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
    assert_eq!(entry["id"], "nba_season");
    assert_eq!(entry["family"], "nba");
    assert_eq!(entry["params"]["source"], "season");

    fs::write(d.path().join("votes.txt"), "1>2>3\n2>3>1\n3>1>2\n").unwrap();
    ok(
        d.path(),
        &["ingest", "--kind", "election", "--input", "votes.txt", "--out", "el.jsonl"],
    );
    let line = fs::read_to_string(d.path().join("el.jsonl")).unwrap();
    let entry: serde_json::Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
    assert_eq!(entry["id"], "election_votes");
    assert_eq!(entry["params"]["tie_pairs"], "0");

    // Bridge ties are a hard failure, not a coin flip.
    let tied = "pair_game_id,player_a,player_b,score_a,score_b,aux_a,aux_b\n\
                r1,x,y,10,10,0,0\n";
    fs::write(d.path().join("tied.csv"), tied).unwrap();
    assert_eq!(
        code(d.path(), &["ingest", "--kind", "bridge", "--input", "tied.csv", "--out", "b.jsonl"]),
        2
    );
}

#[test]
fn restricted_ingest_draws_seeded_subsets() {
    let d = tempfile::tempdir().unwrap();
    let mut csv = String::from("pair_game_id,player_a,player_b,score_a,score_b,aux_a,aux_b\n");
    for i in 0..6u32 {
        for j in (i + 1)..6 {
            csv.push_str(&format!("g{i}{j},t{i},t{j},{},{},0,0\n", 100 + i, 90 + j));
        }
    }
    fs::write(d.path().join("t.csv"), &csv).unwrap();
    ok(
        d.path(),
        &[
            "ingest", "--kind", "nba", "--input", "t.csv", "--restrict", "4", "--copies", "3",
            "--seed", "11", "--out", "r.jsonl",
        ],
    );
    let text = fs::read_to_string(d.path().join("r.jsonl")).unwrap();
    let ids: Vec<String> = text
        .lines()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["id"]
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect();
    assert_eq!(ids, ["nba_t_0", "nba_t_1", "nba_t_2"]);
    for l in text.lines() {
        let entry: serde_json::Value = serde_json::from_str(l).unwrap();
        assert!(entry["tournament"].as_str().unwrap().starts_with("n=4\n"));
    }
}
