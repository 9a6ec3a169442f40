use serde_json::Value;
use ssa::cli::{run, Outcome};

fn ssa(args: &[&str], stdin: &str) -> Outcome {
    let mut argv = vec!["ssa"];
    argv.extend_from_slice(args);
    run(argv, &mut stdin.as_bytes())
}

fn ok(args: &[&str]) -> String {
    let out = ssa(args, "");
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

#[test]
fn act_on_odometer() {
    assert_eq!(ok(&["act", "--example", "odometer", "--word", "τ", "--input", "11"]), "00\n");
    let v = json(&[
        "act", "--example", "odometer", "--word", "τ", "--input", "11", "--format", "json",
    ]);
    assert_eq!(v["output"], "00");
    assert_eq!(v["restriction"], "τ");
}

#[test]
fn odometer_nucleus() {
    let v = json(&["nucleus", "--example", "odometer"]);
    assert_eq!(v["schema"], "ssa-report/1");
    assert_eq!(v["status"], "contracting");
    let names: Vec<&str> = v["nucleus"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert_eq!(names.len(), 3);
    for n in ["ε", "τ", "τ^-1"] {
        assert!(names.contains(&n), "{names:?}");
    }
}

#[test]
fn stdin_matches_example() {
    for name in ["odometer", "basilica", "nonsmooth3b"] {
        let doc = ok(&["examples", "dump", name]);
        for cmd in [
            vec!["nucleus"],
            vec!["schreier", "--level", "3"],
            vec!["recurrent"],
            vec!["quotient-order", "--level", "3"],
        ] {
            let mut from_example = cmd.clone();
            from_example.extend(["--example", name]);
            let mut from_stdin = cmd.clone();
            from_stdin.push("--stdin");
            let piped = ssa(&from_stdin, &doc);
            assert_eq!(piped.code, 0, "{}", piped.stderr);
            assert_eq!(piped.stdout, ok(&from_example), "{name} {cmd:?}");
        }
    }
}

#[test]
fn file_input_and_nuclear_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nuc.json");
    std::fs::write(&path, ok(&["examples", "dump", "nonsmooth3", "--nuclear"])).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(ok(&["nuclear", "--file", p, "--format", "text"]), "true\n");
    assert_eq!(
        ok(&["nuclear", "--example", "nonsmooth3", "--nuclear", "--format", "text"]),
        "true\n"
    );
}

#[test]
fn basilica_schreier_dot() {
    let dot = ok(&["schreier", "--example", "basilica", "--level", "2", "--format", "dot"]);
    assert!(dot.starts_with("digraph \"schreier\" {"));
    for v in ["\"00\";", "\"01\";", "\"10\";", "\"11\";"] {
        assert!(dot.contains(v), "{dot}");
    }
    // one edge per vertex and state, ε included
    assert_eq!(dot.matches(" -> ").count(), 4 * 3);
    assert!(dot.contains("\"00\" -> \"10\" [label=\"a\"];"));
}

#[test]
fn product_and_power() {
    let prod = json(&["product", "--example", "odometer", "--right-example", "odometer"]);
    let power = json(&["power", "--example", "odometer", "--n", "2"]);
    assert_eq!(prod["states"].as_array().unwrap().len(), 4);
    assert_eq!(power["alphabet_size"], 2);
    assert_eq!(power["states"].as_array().unwrap().len(), 4);
    let dual = json(&["dual", "--example", "basilica"]);
    assert_eq!(dual["alphabet_size"], 3);
}

#[test]
fn tile_commands_warn_on_generating_automata() {
    let out = ssa(
        &["tile-connectivity", "--example", "odometer", "--level", "3", "--tile-level", "1"],
        "",
    );
    assert_eq!(out.code, 0);
    assert!(out.stderr.contains("not nuclear"));
    let out = ssa(
        &[
            "tile-connectivity", "--example", "odometer", "--nuclear", "--level", "3",
            "--tile-level", "1",
        ],
        "",
    );
    assert_eq!(out.code, 0);
    assert!(out.stderr.is_empty(), "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["all"], true);
}

#[test]
fn exit_codes() {
    let unknown = ssa(&["nucleus", "--example", "nope"], "");
    assert_eq!(unknown.code, 1);
    let err: Value = serde_json::from_str(&unknown.stderr).unwrap();
    assert_eq!(err["code"], "unknown_example");
    assert_eq!(err["context"]["command"], "nucleus");

    let bad_json = ssa(&["nucleus", "--stdin"], "{not json");
    assert_eq!(bad_json.code, 1);

    assert_eq!(ssa(&["frobnicate"], "").code, 2);
    assert_eq!(ssa(&["nucleus"], "").code, 2);
    assert_eq!(ssa(&["nucleus", "--example", "odometer", "--stdin"], "").code, 2);
    assert_eq!(ssa(&["nucleus", "--example", "odometer", "--format", "dot"], "").code, 2);
    assert_eq!(ssa(&["--help"], "").code, 0);
}

#[test]
fn non_contracting_nuclear_flag() {
    let out = ssa(&["nuclear", "--example", "lamplighter", "--nuclear"], "");
    assert_eq!(out.code, 1);
    let err: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(err["code"], "not_contracting");
    let v = json(&["nucleus", "--example", "lamplighter"]);
    assert_eq!(v["status"], "exceeded_bound");
}

#[test]
fn examples_list() {
    let v = json(&["examples", "list"]);
    assert_eq!(v.as_array().unwrap().len(), 7);
    assert!(ok(&["examples", "list", "--format", "text"]).contains("basilica\n"));
}
