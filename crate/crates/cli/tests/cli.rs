use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

fn quadmaps(args: &[&str], stdin: &str) -> (i32, Value) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_quadmaps"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), value)
}

fn ok(verb: &str, payload: Value) -> Value {
    let (code, value) = quadmaps(&[verb], &payload.to_string());
    assert_eq!(code, 0, "{verb} failed: {value}");
    value
}

fn error(verb: &str, payload: &str) -> (i32, String) {
    let (code, value) = quadmaps(&[verb], payload);
    (code, value["error"]["kind"].as_str().unwrap().to_string())
}

#[test]
fn analyze_split_and_definite_six_forms() {
    let split = ok("qform:analyze", json!({ "form": "x1*x2+x3*x4+x5^2-x6^2" }));
    assert_eq!(split["witt_index"], 3);
    assert_eq!(split["signature"], json!([3, 3]));
    assert_eq!(split["kernel"], "0");

    let lorentz = ok("qform:analyze", json!({ "form": "x1^2+x2^2+x3^2+x4^2+x5^2-x6^2" }));
    assert_eq!(lorentz["witt_index"], 1);
    assert_eq!(lorentz["disc"], "-1");
    assert_eq!(lorentz["kernel"], "x1^2+x2^2+x3^2+x4^2");
    assert_eq!(lorentz["kernel_coords"].as_array().unwrap().len(), 4);
}

#[test]
fn matrix_forms_match_text_forms() {
    let text = ok("qform:analyze", json!({ "form": "x0^2-3*x1^2+x0*x1" }));
    let matrix = ok("qform:analyze", json!({ "form": [[1, "1/2"], ["1/2", -3]] }));
    assert_eq!(text["disc"], matrix["disc"]);
    assert_eq!(text["signature"], matrix["signature"]);
}

#[test]
fn witt_reports_transform_and_block_form() {
    let w = ok("qform:witt", json!({ "form": "x^2-y^2+z^2" }));
    assert_eq!(w["witt_index"], 1);
    assert_eq!(w["transform"].as_array().unwrap().len(), 3);
    assert_eq!(w["kernel_diagonal"].as_array().unwrap().len(), 1);
}

#[test]
fn isotropy_with_witness() {
    let yes = ok("qform:isotropic", json!({ "form": "x^2+y^2-2*z^2" }));
    assert_eq!(yes["isotropic"], true);
    let w: Vec<i64> = yes["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().parse().unwrap())
        .collect();
    assert_eq!(w[0] * w[0] + w[1] * w[1] - 2 * w[2] * w[2], 0);

    let no = ok("qform:isotropic", json!({ "form": "x^2+y^2+z^2" }));
    assert_eq!(no["isotropic"], false);
    assert_eq!(no["witness"], Value::Null);
}

#[test]
fn equivalence_up_to_congruence() {
    assert_eq!(ok("qform:equivalent", json!({ "a": "x^2+y^2", "b": "2*x^2+2*y^2" }))["equivalent"], true);
    assert_eq!(ok("qform:equivalent", json!({ "a": "x^2+y^2", "b": "3*x^2+3*y^2" }))["equivalent"], false);
}

#[test]
fn og_operations() {
    assert_eq!(ok("qform:og", json!({ "op": "dimension", "m": 2, "n": 6 }))["dimension"], 9);
    assert_eq!(ok("qform:og", json!({ "op": "veronese_count", "r": 5, "s": 1 }))["count"], 1);
}

#[test]
fn construct_then_verify_then_classify() {
    let map = ok("map:construct", json!({ "family": "veronese_q4", "a": -1, "b": -1 }));
    assert_eq!(map["target"], "x0*x5-x1^2+x2^2+x3^2-x4^2");

    let verified = ok(
        "map:verify",
        json!({ "coords": map["coords"], "target": map["target"], "target_coords": map["target_coords"] }),
    );
    assert_eq!(verified["verified"], true);

    let label = ok("map:classify", json!({ "coords": map["coords"] }));
    assert_eq!(label["label"], "veronese");
    assert_eq!(label["span_dim"], 6);
}

#[test]
fn verify_reports_the_defect() {
    let v = ok(
        "map:verify",
        json!({ "coords": ["u^2", "u*v", "v*w", "u*w", "w^2", "v^2-w^2"], "target": "x0*x5-x1^2+x2^2+x3^2-x4^2" }),
    );
    assert_eq!(v["verified"], false);
    assert_eq!(v["defect"], "v^2*w^2-w^4");
}

#[test]
fn classify_conic_image() {
    let c = ok("map:classify", json!({ "coords": ["u^2", "v^2", "u*v", "0", "0", "0"] }));
    assert_eq!(c["label"], "conic-image");
    assert_eq!(c["span_dim"], 3);
}

#[test]
fn seed_flag_overrides_payload_and_is_reproducible() {
    let payload = json!({ "coords": ["u^2", "v^2", "w^2", "u*v", "v*w", "u*w+a*u^2"], "seed": 1 }).to_string();
    let (_, a) = quadmaps(&["map:classify", "--seed", "7"], &payload);
    let (_, b) = quadmaps(&["map:classify", "--seed", "7"], &payload);
    assert_eq!(a, b);
    assert_eq!(a["seed"], 7);
    let (_, c) = quadmaps(&["map:classify"], &payload);
    assert_eq!(c["seed"], 1);
}

#[test]
fn curves() {
    let dp4 = ok("curve:reduce", json!({ "op": "dp4", "d": 6, "p_a": 1 }));
    assert_eq!(dp4, json!({ "degree": 2, "genus": -1, "guaranteed": true }));

    let line = ok(
        "curve:reduce",
        json!({ "op": "reduce", "form": "x0*x1+x2*x3-x4^2", "map": ["t^3", "s^3", "t^2*s", "-t*s^2", "0"] }),
    );
    assert_eq!(line["degree"], 1);

    let conic = ok(
        "curve:conic3",
        json!({ "form": "x0*x1+x2*x3-x4^2", "points": [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [1, 1, 0, 0, 1]] }),
    );
    assert_eq!(conic["degree"], 2);

    let sp = ok(
        "curve:sympower",
        json!({ "equation": "x1^2+x2^2+t^2-1", "xs": ["x1", "x2"], "t": "t", "points": [[0, 0, 1], [0, 0, -1], ["3/5", 0, "4/5"]] }),
    );
    assert_eq!(sp["interpolant"], json!(["-5/3*t^2+5/3", "0"]));
}

#[test]
fn veronese_checks_pass() {
    assert_eq!(ok("veronese:check", json!({ "check": "sigma" }))["status"], "pass");
    let locus = ok("veronese:check", json!({ "check": "double_line_locus", "a": -1, "b": -1 }));
    assert_eq!(locus["witness"], "u^2+v^2-w^2");
    let cp = ok("veronese:check", json!({ "check": "conic_product", "a": 1, "b": 2, "c": 3 }));
    assert_eq!(cp["status"], "pass");
    assert_eq!(cp["checks"].as_array().unwrap().len(), 3);
    assert_eq!(ok("veronese:check", json!({ "check": "rank_stratum", "point": [1, 0, 0, 0, 0, 0] }))["rank"], 1);
}

#[test]
fn stereographic_round_trip() {
    let s = ok("sphere:stereo", json!({ "n": 2 }));
    assert_eq!(s["status"], "pass");
    assert_eq!(s["inverse"].as_array().unwrap().len(), 3);
}

#[test]
fn file_flag_reads_the_payload() {
    let path = std::env::temp_dir().join(format!("quadmaps-cli-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"form":"x^2+y^2"}"#).unwrap();
    let (code, value) = quadmaps(&["qform:analyze", "--file", path.to_str().unwrap()], "");
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(value["rank"], 2);
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(error("qform:analyze", "not json"), (2, "validation".into()));
    assert_eq!(error("qform:analyze", r#"{"form":"x^2","bogus":1}"#), (2, "validation".into()));
    assert_eq!(error("qform:analyze", r#"{"form":"x^3"}"#), (2, "validation".into()));
    assert_eq!(
        error("curve:conic3", r#"{"form":"x0*x1+x2*x3-x4^2","points":[[1,0,0,0,0],[0,1,0,0,0]]}"#),
        (2, "validation".into())
    );
    let (code, _) = quadmaps(&["qform:analyze", "--file", "/nonexistent/payload.json"], "");
    assert_eq!(code, 2);
}

#[test]
fn mathematical_refusals_exit_3() {
    assert_eq!(error("qform:witt", r#"{"form":"a*x^2+y^2"}"#), (3, "not_numeric".into()));
    assert_eq!(
        error("curve:conic3", r#"{"form":"x0*x1+x2*x3-x4^2","points":[[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0]]}"#),
        (3, "singular_conic".into())
    );
    assert_eq!(
        error("curve:reduce", r#"{"op":"reduce","form":"x0*x1+x2*x3-x4^2","map":["t^3","s^3","t*s^2","0","t^2*s"]}"#),
        (3, "map_not_on_quadric".into())
    );
}

#[test]
fn symbolic_veronese_round_trips_through_verify() {
    let map = ok("map:construct", json!({ "family": "veronese_q4", "a": "a", "b": "b" }));
    assert_eq!(map["params"], json!(["a", "b"]));
    let verified = ok("map:verify", json!({ "coords": map["coords"], "target": map["target"] }));
    assert_eq!(verified, json!({ "verified": true }));
}

#[test]
fn projected_veronese_has_center_rank_2() {
    let c = ok("map:classify", json!({ "coords": ["u^2", "v^2", "w^2", "u*v", "v*w"] }));
    assert_eq!(c["label"], "projected-veronese");
    assert_eq!(c["span_dim"], 5);
    assert_eq!(c["center_rank"], 2);
}
