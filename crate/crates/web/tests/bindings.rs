use monodec_web::{check_axioms, decompose_map, inf, mv};
use serde_json::{json, Value};

fn call(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn xor() {
    let v = call(inf("0110"));
    assert_eq!(v["formula"], "(imp (imp (or x1 x2) (and x1 x2)) lit:0)");
    assert_eq!(v["arrows"], 2);
}

#[test]
fn bad_table_is_reported() {
    assert!(call(inf("012")).get("error").is_some());
    assert!(call(mv(3, 1, "0 1")).get("error").is_some());
}

#[test]
fn mv_levels() {
    let v = call(mv(3, 1, "0, 2, 1"));
    assert!(v["file"].as_str().unwrap().starts_with(";; q=3 n=1"));
}

#[test]
fn decompose_chain() {
    let v = call(decompose_map(
        r#"{"domain": "chain:3", "values": {"0": 0, "1": 2, "2": 1}}"#,
        "chain-primal:3",
        "t1",
    ));
    assert_eq!(v["parts"], json!([["0", "2", "2"], ["0", "0", "1"]]));
    assert_eq!(v["stats"]["parts"], 2);
}

#[test]
fn axioms() {
    let v = call(check_axioms("boolean-dual", "A*"));
    assert_eq!(v["system"], "A*");
    assert!(call(check_axioms("boolean-dual", "Z"))
        .get("error")
        .is_some());
}
