use std::process::{Command, Output};

use serde_json::Value;
use starflock::flock::{self, Flock};
use starflock::Field;

fn starflock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starflock")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = starflock(&all);
    let v = serde_json::from_slice(&out.stdout).expect("valid JSON");
    (out.status.code().unwrap(), v)
}

#[test]
fn exit_codes() {
    assert_eq!(starflock(&["flock", "classify", "missing.json"]).status.code(), Some(2));
    assert_eq!(starflock(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(starflock(&["field", "info", "--p", "4", "--n", "1"]).status.code(), Some(2));
    assert_eq!(starflock(&["linpoly", "count", "--q", "16", "--e", "3"]).status.code(), Some(2));
    assert_eq!(starflock(&["field", "info", "--p", "3", "--n", "2"]).status.code(), Some(0));
}

#[test]
fn linear_flock_has_no_redei_set() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("linear.json");
    // a linear star flock has no Rédei set
    let k = Field::of_order(5).unwrap();
    let fl = Flock::star_form(&k, k.elements().collect()).unwrap();
    std::fs::write(&path, serde_json::to_string(&fl.to_file()).unwrap()).unwrap();
    let code = starflock(&["blocking", "from-flock", path.to_str().unwrap()]).status.code();
    assert_eq!(code, Some(2));
}

#[test]
fn linpoly_count_example() {
    let out = starflock(&["linpoly", "count", "--q", "16", "--e", "2"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("12\n"));
    let (code, v) = json(&["linpoly", "count", "--q", "27", "--e", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 432);
    assert_eq!(v["schema"], "starflock-report/1");
}

#[test]
fn lunelli_sce_reports_nine_points() {
    let (code, v) = json(&["verify", "lunelli-sce"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    let meet = v["result"]["checks"].as_array().unwrap().iter().find(|c| c["description"] == "|H1 ∩ H2|").unwrap();
    assert_eq!(meet["actual"], 9);
}

#[test]
fn classify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let k = Field::of_order(9).unwrap();
    let fl = Flock::star_form(&k, k.elements().map(|t| k.frobenius(t, 1)).collect()).unwrap();
    let path = dir.path().join("kk.json");
    std::fs::write(&path, serde_json::to_string(&fl.to_file()).unwrap()).unwrap();
    let (code, v) = json(&["flock", "classify", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let s = flock::critical_cone(&fl);
    let class = flock::classify_cone(&k, &s);
    assert_eq!(v["result"]["class"], serde_json::to_value(class).unwrap());
    assert_eq!(v["result"]["star"], serde_json::to_value(flock::star_analysis(&fl)).unwrap());
    assert_eq!(v["result"]["directions"], 4);

    let (_, cone) = json(&["flock", "cone", path.to_str().unwrap()]);
    assert_eq!(cone["result"]["carrier"], serde_json::to_value(&s).unwrap());

    let (_, eq) = json(&["flock", "equiv", path.to_str().unwrap(), path.to_str().unwrap()]);
    assert_eq!(eq["result"]["verdict"], "inconclusive");
    let (_, blk) = json(&["blocking", "from-flock", path.to_str().unwrap()]);
    assert_eq!(blk["result"]["report"]["size"], 13);
}

#[test]
fn exhaustive_equivalence_gives_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let k = Field::of_order(4).unwrap();
    let a = Flock::star_form(&k, k.elements().map(|t| k.mul(t, t)).collect()).unwrap();
    let b = Flock::star_form(&k, k.elements().map(|t| k.mul(k.primitive(), k.mul(t, t))).collect()).unwrap();
    let (pa, pb) = (dir.path().join("a.json"), dir.path().join("b.json"));
    std::fs::write(&pa, serde_json::to_string(&a.to_file()).unwrap()).unwrap();
    std::fs::write(&pb, serde_json::to_string(&b.to_file()).unwrap()).unwrap();
    let (code, v) = json(&["flock", "equiv", pa.to_str().unwrap(), pb.to_str().unwrap(), "--exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "equivalent");
    assert!(v["result"]["witness"].is_object());
}

#[test]
fn jobs_do_not_change_output() {
    for args in [&["survey", "star", "--q", "7"][..], &["verify", "nobi", "--q", "5"], &["verify", "properties"]] {
        let one = starflock(&[&["--format", "json", "--jobs", "1"][..], args].concat());
        let many = starflock(&[&["--format", "json", "--jobs", "8"][..], args].concat());
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(one.stdout, many.stdout, "{args:?}");
    }
}

#[test]
fn text_and_json_agree_on_failures() {
    let text = String::from_utf8(starflock(&["verify", "triad", "--q", "8"]).stdout).unwrap();
    let (_, v) = json(&["verify", "triad", "--q", "8"]);
    let json_fail = v["result"]["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).count();
    let text_fail = text.lines().filter(|l| l.starts_with("FAIL ")).count();
    assert_eq!(json_fail, text_fail);
    assert!(text.ends_with("PASS\n"));
}

#[test]
fn blocking_configurations() {
    let (code, v) = json(&["blocking", "triangle", "--q", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["report"]["size"], 12);
    let (code, v) = json(&["blocking", "triad", "--q", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["report"]["size"], 13);
    assert_eq!(starflock(&["blocking", "triad", "--q", "7"]).status.code(), Some(2));
}
