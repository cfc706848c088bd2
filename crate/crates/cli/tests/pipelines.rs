use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

fn run(args: &[&str], input: &str) -> (bool, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_partfan"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.success(), String::from_utf8(out.stdout).unwrap())
}

fn pipe(stages: &[&[&str]]) -> String {
    let mut doc = String::new();
    for s in stages {
        let (ok, out) = run(s, &doc);
        assert!(ok, "{s:?} failed: {out}");
        doc = out;
    }
    doc
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn torus_euler_characteristic() {
    let out = pipe(&[
        &["examples", "square"],
        &["partition", "closure", "--seed", "s1~s3,s2~s4"],
        &["cw", "euler", "-f", "text"],
    ]);
    assert_eq!(out.trim(), "0");
}

#[test]
fn brauer_fan_validates() {
    let v = json(&pipe(&[&["examples", "brauer3"], &["fan", "validate"]]));
    assert_eq!(v["result"]["valid"], true);
    assert_eq!(v["result"]["chambers"], 32);
}

#[test]
fn torus_picture_group_is_free_abelian_of_rank_two() {
    let out = pipe(&[
        &["examples", "square"],
        &["partition", "closure", "--seed", "s1~s3,s2~s4"],
        &["group", "picture"],
        &["group", "abelianize", "-f", "text"],
    ]);
    assert_eq!(out.trim(), "Z^2");
}

#[test]
fn quotient_by_seed_matches_closure_then_picture() {
    let direct = json(&pipe(&[
        &["examples", "square"],
        &["partition", "closure", "--seed", "s1~s3,s2~s4"],
        &["group", "picture"],
        &["group", "abelianize"],
    ]));
    let quotient = json(&pipe(&[
        &["examples", "square"],
        &["group", "quotient", "--seed", "s1~s3,s2~s4"],
        &["group", "abelianize"],
    ]));
    assert_eq!(direct["result"], quotient["result"]);
}

#[test]
fn errors_are_json_with_nonzero_exit() {
    let (ok, out) = run(&["fan", "validate"], "{}");
    assert!(!ok);
    assert!(json(&out)["error"].is_string());
    let (ok, out) = run(&["examples", "square"], "");
    assert!(ok);
    let (ok, err) = run(&["render"], &{
        let (_, a) = run(&["examples", "brauer3"], "");
        let mut v = json(&a);
        v["fan"] = json(&run(&["fan", "from-arrangement"], &out).1)["fan"].clone();
        v.as_object_mut().unwrap().remove("arrangement");
        v.to_string()
    });
    assert!(ok, "{err}");
    assert!(err.contains("<svg"));
}

#[test]
fn brauer_pipeline() {
    let v = json(&pipe(&[&["examples", "brauer3"], &["arrangement", "shards"]]));
    assert_eq!(v["result"]["count"], 15);
    let v = json(&pipe(&[&["examples", "brauer3"], &["arrangement", "flat-partition"], &["group", "certify-brauer"]]));
    assert_eq!(v["result"]["faithful"], true);
    assert_eq!(v["result"]["wall_algebra"]["passes"], true);
    let v = json(&pipe(&[&["examples", "brauer3"], &["arrangement", "flat-partition"], &["cw", "compare"]]));
    assert_eq!(v["result"]["match"], true);
}

#[test]
fn rank_two_certificate_and_exports() {
    let v = json(&pipe(&[&["examples", "hirzebruch-a1"], &["group", "certify-rank2"]]));
    assert_eq!(v["result"]["faithful"], true);
    let dot = pipe(&[
        &["examples", "square"],
        &["partition", "closure", "--seed", "s1~s3,s2~s4"],
        &["category", "export", "-f", "dot"],
    ]);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=").count() - dot.matches("->").count(), 4);
}

#[test]
fn brauer_from_arrangement_validates() {
    let v = json(&pipe(&[&["examples", "brauer3"], &["fan", "from-arrangement"], &["fan", "validate"]]));
    assert_eq!(v["result"]["valid"], true);
    assert_eq!(v["result"]["chambers"], 32);
}

#[test]
fn outputs_are_deterministic_and_round_trip() {
    let torus = pipe(&[&["examples", "square"], &["partition", "closure", "--seed", "s1~s3,s2~s4"]]);
    let stages: &[&[&str]] = &[
        &["partition", "check"],
        &["category", "build"],
        &["category", "check-cubical"],
        &["poset", "bisector", "--base", "[0,3]"],
        &["group", "picture"],
        &["cw", "build"],
        &["cw", "pi1"],
    ];
    for s in stages {
        let (ok, a) = run(s, &torus);
        assert!(ok, "{s:?}: {a}");
        let (_, b) = run(s, &torus);
        assert_eq!(a, b, "{s:?} is not deterministic");
        let (ok, again) = run(s, &a);
        assert!(ok, "{s:?} cannot read its own output: {again}");
        assert_eq!(json(&again), json(&a), "{s:?} does not round-trip");
    }
}
