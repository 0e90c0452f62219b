use std::process::Command;

use serde_json::{json, Value};

fn flagcoh(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_flagcoh"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, stdout, stderr) = flagcoh(&full);
    assert_eq!(code, 0, "{args:?}: {stderr}");
    serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{stdout}"))
}

#[test]
fn bwb_json() {
    assert_eq!(
        json(&["bwb", "A1", "--", "-2"]),
        json!({"vanishes": false, "degree": 1, "mu": [0], "dim": 1, "word": [1]})
    );
    assert_eq!(json(&["bwb", "A1", "--", "-1"]), json!({"vanishes": true}));
    let v = json(&["bwb", "A2", "1,1"]);
    assert_eq!(
        (v["degree"].clone(), v["dim"].clone()),
        (json!(0), json!(8))
    );
    assert_eq!(v["word"], json!([]));
    // negative coordinates without `--` once the type is given
    let v = json(&["bwb", "A2", "-2,1"]);
    assert_eq!(v["degree"], 1);
    assert_eq!(json(&["bwb", "A2", "-3,0"])["degree"], 2);
}

#[test]
fn xcoh_json() {
    let v = json(&["xcoh", "A2", "--degree", "1"]);
    assert_eq!(v["multiplicity"], 2);
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
    assert_eq!(json(&["xcoh", "A2"])["histogram"], json!([1, 2, 2, 1]));
    let v = json(&["xcoh", "A1", "--degree", "0"]);
    assert_eq!(v["multiplicity"], 1);
    assert_eq!(v["classes"][0]["e_weight"], json!([0]));
}

#[test]
fn svariety_json() {
    let v = json(&["svariety", "A1", "--gens", "2"]);
    assert_eq!(v["holds"], true);
    assert_eq!(v["quotient"], "Z/2");
    assert_eq!(v["finite_factors"], json!([2]));
    let v = json(&["svariety", "A1", "--gens", "2;3"]);
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"], json!([1]));
    let v = json(&["svariety", "A2", "--gens", "1,1"]);
    assert_eq!(v["holds"], true);
    assert_eq!(v["torus_rank"], 1);
    assert_eq!(v["finite_factors"], json!([]));
}

#[test]
fn peta_json() {
    assert_eq!(json(&["peta", "A1", "1"])["polynomial"], "h1");
    assert_eq!(
        json(&["peta", "A1", "1", "--twist", "w0"])["polynomial"],
        "-h1 - 2"
    );
    let v = json(&["peta", "A2", "1,1", "--psi", "1,1"]);
    assert_eq!(v["polynomial"], "4*y1^4 + 2*y1^3");
    assert_eq!(v["degree"], 4);
}

#[test]
fn minorbit_json() {
    let t = json(&["minorbit", "--table"]);
    let rows = t.as_array().unwrap();
    assert_eq!(rows.len(), 27);
    let e8 = rows.iter().find(|r| r["type"] == "E8").unwrap();
    assert_eq!(e8["k"], 58);
    let v = json(&["minorbit", "A3"]);
    assert_eq!(
        (v["k"].clone(), v["surjectivity"].clone()),
        (json!(6), json!("NotSurjective"))
    );
    let v = json(&["minorbit", "G2"]);
    assert_eq!(
        (v["k"].clone(), v["surjectivity"].clone()),
        (json!(10), json!("CriterionNotApplicable"))
    );
}

#[test]
fn kvalue_and_weyl_json() {
    assert_eq!(json(&["kvalue", "A2", "1,1"])["k"], 4);
    assert_eq!(json(&["kvalue", "A1", "--", "-3"])["k"], -3);
    let v = json(&["weyl", "B2", "--list"]);
    assert_eq!(v["order"], 8);
    assert_eq!(v["poincare"], json!([1, 2, 2, 2, 1]));
    assert_eq!(v["elements"].as_array().unwrap().len(), 8);
    assert_eq!(
        json(&["nullstellensatz", "A2", "1,0"])["no_common_zero"],
        true
    );
}

#[test]
fn table_and_json_agree() {
    let (code, table, _) = flagcoh(&["svariety", "A1", "--gens", "2;3"]);
    assert_eq!(code, 0);
    let v = json(&["svariety", "A1", "--gens", "2;3"]);
    for (k, val) in v.as_object().unwrap() {
        let text = match val {
            Value::String(s) => s.clone(),
            Value::Null => "-".into(),
            other => other.to_string(),
        };
        assert!(
            table.contains(&format!("{k}: {text}\n")),
            "{k}: {text} missing from\n{table}"
        );
    }
}

#[test]
fn exit_codes() {
    assert_eq!(flagcoh(&["bwb", "Q2", "1"]).0, 2);
    assert_eq!(flagcoh(&["bwb", "A2", "1"]).0, 2);
    assert_eq!(flagcoh(&["bwb", "A2", "x,1"]).0, 2);
    assert_eq!(flagcoh(&["frobnicate"]).0, 2);
    assert_eq!(flagcoh(&["minorbit"]).0, 2);
    assert_eq!(flagcoh(&["svariety", "A2", "--gens", "1,-1"]).0, 3);
    assert_eq!(flagcoh(&["peta", "A2", "-1,1"]).0, 2);
    assert_eq!(flagcoh(&["peta", "A2", "1,-1"]).0, 3);
    assert_eq!(flagcoh(&["peta", "A2", "--", "1,-1"]).0, 3);
    assert_eq!(flagcoh(&["xcoh", "A2", "--degree", "9"]).0, 3);
    assert_eq!(flagcoh(&["minorbit", "A1xA1"]).0, 3);
    assert_eq!(
        flagcoh(&["xcoh", "E8", "--degree", "1", "--weyl-cap", "100"]).0,
        4
    );
    assert_eq!(
        flagcoh(&["svariety", "A1", "--gens", "5;7", "--hilbert-cap", "3"]).0,
        4
    );
    let (code, out, err) = flagcoh(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("bwb") && err.is_empty());
}
