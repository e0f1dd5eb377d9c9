use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn posetop(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_posetop"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

const SIX_POINT_SPHERE: &str = r#"{
  "elements": ["a0", "a1", "b0", "b1", "c0", "c1"],
  "covers": [["a0","b0"],["a0","b1"],["a1","b0"],["a1","b1"],["b0","c0"],["b0","c1"],["b1","c0"],["b1","c1"]]
}"#;

const TWO_RELATOR: &str = "<a,b,c,d,e | b^2 c a^-1 b^-1 d b a, c^-1 d e b e>";

#[test]
fn milnor_pipes_into_pi1() {
    let milnor = posetop(&["milnor", "--group", "Z_2"], "");
    assert_eq!(milnor.status.code(), Some(0));
    let pi1 = posetop(&["pi1"], &text(&milnor.stdout));
    assert_eq!(pi1.status.code(), Some(0), "{}", text(&pi1.stderr));
    let report = json(&pi1);
    assert!(report["summary"].as_str().unwrap().contains("13 elements"));
    assert_eq!(report["abelianization"], "Z_2");
    assert_eq!(report["verdict"], "Z_2");
}

#[test]
fn homology_of_the_six_point_sphere() {
    let out = posetop(&["homology"], SIX_POINT_SPHERE);
    assert_eq!(out.status.code(), Some(0));
    let groups = json(&out)["groups"].clone();
    let group = |d: usize| groups[d]["group"].as_str().unwrap().to_string();
    assert_eq!((group(0), group(1), group(2)), ("0".into(), "0".into(), "Z".into()));
    let cellular = json(&posetop(&["homology", "--cellular"], SIX_POINT_SPHERE));
    assert_eq!(cellular["groups"], groups);
}

#[test]
fn facets_documents_are_read_as_complexes() {
    let tetrahedron = r#"{"facets": [["a","b","c"],["a","b","d"],["a","c","d"],["b","c","d"]]}"#;
    let out = json(&posetop(&["homology"], tetrahedron));
    assert_eq!(out["groups"][2]["group"], "Z");
    let via_face_poset = json(&posetop(&["homology", "--cellular"], tetrahedron));
    assert_eq!(via_face_poset["groups"][2]["group"], "Z");
}

#[test]
fn verify_reports_a_counterexample() {
    let map = r#"{
      "source": {"elements": ["a","b","c","d"], "covers": [["a","c"],["a","d"],["b","c"],["b","d"]]},
      "target": {"elements": ["p"], "covers": []},
      "images": ["p","p","p","p"]
    }"#;
    let out = posetop(&["verify"], map);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(text(&out.stderr).trim(), "NotACovering");
    let report = json(&out);
    assert_eq!(report["error"], "NotACovering");
    assert!(["a", "b", "c", "d"].contains(&report["counterexample"]["element"].as_str().unwrap()));
}

#[test]
fn covers_verify_and_have_deck_groups() {
    let coloring = r#"{
      "elements": ["a","b","c","d"], "covers": [["a","c"],["a","d"],["b","c"],["b","d"]],
      "group": "Z_3", "colors": [["a","c",1]]
    }"#;
    let check = json(&posetop(&["coloring-check"], coloring));
    assert_eq!((check["admissible"].as_str(), check["connected"].as_str()), (Some("Yes"), Some("Yes")));
    let cover = posetop(&["cover"], coloring);
    assert_eq!(json(&cover)["sheets"], 3);
    let verified = json(&posetop(&["verify"], &text(&cover.stdout)));
    assert_eq!((verified["covering"].clone(), verified["sheets"].clone()), (Value::Bool(true), Value::from(3)));
    assert_eq!(json(&posetop(&["deck"], coloring))["order"], 3);
}

#[test]
fn universal_cover_of_the_projective_plane() {
    let total = posetop(&["milnor", "--group", "Z_2", "--total"], "");
    let verified = json(&posetop(&["verify"], &text(&total.stdout)));
    assert_eq!(verified["sheets"], 2);
    let milnor = posetop(&["milnor", "--group", "Z_2"], "");
    let pi2 = json(&posetop(&["pi2"], &text(&milnor.stdout)));
    assert_eq!(pi2["pi2"]["display"], "Z");
}

#[test]
fn presentations_and_boards() {
    let out = json(&posetop(&["aspherical", "--presentation"], TWO_RELATOR));
    assert_eq!(out["verdict"], "Aspherical");
    assert_eq!(out["digraph"]["vertices"], serde_json::json!(["a", "c", "d", "e"]));
    let sums: Vec<Value> = out["certificates"].as_array().unwrap().iter().map(|c| c["exponent_sums"].clone()).collect();
    assert!(!sums.is_empty());
    let rp2 = json(&posetop(&["aspherical", "--presentation"], "<a | a^2>"));
    assert_eq!(rp2["verdict"], "Unknown");

    let torus = json(&posetop(&["board", "--kind", "torus", "--n", "4", "--m", "4", "classes"], ""));
    assert_eq!(torus["classes"], 4);
    let cylinder = json(&posetop(&["board", "--kind", "cylinder", "--n", "4", "--m", "1", "classes"], ""));
    assert_eq!(cylinder["classes"], 2);
}

#[test]
fn exit_codes() {
    let parse = posetop(&["pi1"], "{ not json");
    assert_eq!(parse.status.code(), Some(2));
    assert!(text(&parse.stderr).starts_with("ParseError: "));
    assert_eq!(posetop(&["pi1", "--bogus"], "").status.code(), Some(2));
    assert_eq!(posetop(&["frobnicate"], "").status.code(), Some(2));
    let small = posetop(&["board", "--kind", "torus", "--n", "3", "--m", "4", "classes"], "");
    assert_eq!(small.status.code(), Some(1));
    assert!(text(&small.stderr).starts_with("DimensionTooSmall"));
    assert_eq!(posetop(&["--help"], "").status.code(), Some(0));
}

#[test]
fn reports_are_deterministic() {
    let milnor = text(&posetop(&["milnor", "--group", "S_3"], "").stdout);
    for verb in [["pi1"], ["homology"]] {
        let a = posetop(&verb, &milnor).stdout;
        let b = posetop(&verb, &milnor).stdout;
        assert_eq!(a, b);
    }
}
