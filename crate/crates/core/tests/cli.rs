use serde_json::Value;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_modsuper")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let path = std::env::temp_dir().join(format!("modsuper-cli-{}-{}.json", std::process::id(), args.join("_").replace(['/', ' ', '|', '(', ')', ','], "")));
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--json", &p]);
    let (code, _) = run(&full);
    let v = serde_json::from_str(&std::fs::read_to_string(&path).unwrap_or_else(|_| "null".into())).unwrap();
    std::fs::remove_file(&path).ok();
    (code, v)
}

#[test]
fn roots() {
    let (code, v) = json_of(&["roots", "g2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["count"], 6);
    let max = v["roots"].as_array().unwrap().iter().map(|r| r["height"].as_i64().unwrap()).max();
    assert_eq!(max, Some(5));
    assert_eq!(json_of(&["roots", "e8"]).1["count"], 120);
    assert_eq!(json_of(&["roots", "a1"]).1["count"], 1);
}

#[test]
fn decompose() {
    let (code, v) = json_of(&["decompose", "--algebra", "e6", "-p", "3", "--element", "e1+e2+e6"]);
    assert_eq!(code, 0);
    assert_eq!(v["block_counts"], serde_json::json!([11, 14, 13]));
    let (_, v) = json_of(&["decompose", "--algebra", "e7", "--subset", "1,7"]);
    assert_eq!(v["block_counts"], serde_json::json!([39, 32, 10]));
    let (_, v) = json_of(&["decompose", "--algebra", "e8", "-p", "5", "--element", "e2+e3+e4"]);
    assert_eq!(v["block_counts"], serde_json::json!([55, 0, 0, 32, 13]));
}

#[test]
fn semisimplify() {
    let (code, v) = json_of(&["semisimplify", "--algebra", "gl3", "--element", "e23"]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 4);
    assert_eq!(v["parity"].as_array().unwrap().iter().filter(|b| **b == 1).count(), 2);
    let (_, v) = json_of(&["semisimplify", "--algebra", "f4", "--element", "e4"]);
    assert_eq!(v["parity"].as_array().unwrap().len(), 35);
    let (_, out) = run(&["semisimplify", "--algebra", "e8", "--element", "e1+e2+e8"]);
    assert!(out.contains("superdimension: (55|50)"), "{out}");
}

#[test]
fn certify_and_exit_codes() {
    let (code, v) = json_of(&["certify", "--algebra", "e6", "--element", "e2", "--target", "g(2,6)"]);
    assert_eq!((code, v["conclusion"].as_str()), (0, Some("Verified")));
    assert_eq!(v["schema"], 1);
    let (code, v) = json_of(&["certify", "--algebra", "e8", "--plan", "g36"]);
    assert_eq!((code, v["conclusion"].as_str(), v["target"].as_str()), (0, Some("Verified"), Some("g(3,6)")));
    let (code, v) = json_of(&["certify", "--algebra", "f4", "--element", "e1", "--target", "sl(3|1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate"]["conclusion"], "Refuted");
    assert_eq!(v["subquotient"]["conclusion"], "Verified");
    assert_eq!(v["superdim"], serde_json::json!([15, 8]));
    let (code, v) = json_of(&["certify", "--algebra", "e7", "--element", "e2+e5+e7", "--target", "g(4,3)"]);
    assert_eq!((code, v["conclusion"].as_str()), (2, Some("Refuted")));
    assert_eq!(run(&["decompose", "--algebra", "x7", "--element", "e1"]).0, 3);
    assert_eq!(run(&["decompose", "--algebra", "e6", "--element", "e1 +"]).0, 3);
    assert_eq!(run(&["decompose", "--algebra", "e6"]).0, 3);
    assert_eq!(run(&["certify", "--algebra", "e6", "-p", "4", "--element", "e1"]).0, 3);
    assert_eq!(run(&["frobnicate"]).0, 3);
}

#[test]
fn deterministic_json() {
    let a = json_of(&["certify", "--algebra", "e6", "--subset", "1,2"]).1;
    let b = json_of(&["certify", "--algebra", "e6", "--subset", "1,2"]).1;
    assert_eq!(a, b);
    assert_eq!(a["target"], "g(3,3)");
    assert_eq!(a["target_inferred"], true);
}

#[test]
fn swaps() {
    let (code, v) = json_of(&["swaps", "--algebra", "f4", "--subset", "4"]);
    assert_eq!(code, 0);
    let subsets: Vec<Value> = v["members"].as_array().unwrap().iter().map(|m| m["subset"].clone()).collect();
    assert_eq!(subsets, vec![serde_json::json!([4]), serde_json::json!([3])]);
    let (code, v) = json_of(&["swaps", "--algebra", "e6", "--subset", "1", "--counts-only"]);
    assert_eq!(code, 0);
    for m in v["members"].as_array().unwrap() {
        assert_eq!(m["counts"], serde_json::json!([35, 20, 1]));
    }
    let members: Vec<Value> = v["members"].as_array().unwrap().iter().map(|m| m["subset"].clone()).collect();
    for s in [[1], [2], [6]] {
        assert!(members.contains(&serde_json::json!(s)));
    }
}
