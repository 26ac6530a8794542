use std::process::{Command, Output};

fn dcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcm"))
        .args(args)
        .env_remove("DCM_MAX_K")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn enumerate_lists_in_canonical_order() {
    let o = dcm(&["enumerate", "--k", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1-2,3-4,5-6\n1-2,3-6,4-5\n1-4,2-3,5-6\n1-6,2-3,4-5\n1-6,2-5,3-4\n");
    assert_eq!(stdout(&dcm(&["enumerate", "--k", "1"])), "1-2\n");
    assert_eq!(stdout(&dcm(&["enumerate", "--k", "2", "--format", "json"])), "[\"1-2,3-4\",\"1-4,2-3\"]\n");
}

#[test]
fn out_of_bound_k_is_a_resource_error() {
    let o = dcm(&["enumerate", "--k", "99"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stderr(&o), "error code=resource message=k = 99 exceeds the configured bound 12\n");
    let o = Command::new(env!("CARGO_BIN_EXE_dcm"))
        .args(["enumerate", "--k", "5"])
        .env("DCM_MAX_K", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_dcm"))
        .args(["enumerate", "--k", "5"])
        .env("DCM_MAX_K", "five")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_are_single_lines() {
    for args in [
        vec!["frobnicate"],
        vec!["enumerate"],
        vec!["classify", "--k", "3", "--matching", "1-3,2-4,5-6"],
        vec!["classify", "--k", "3", "--matching", "1-2,3-4"],
        vec!["neighbors", "--k", "2", "--matching", "1-2,3-x"],
        vec!["counts", "--k-range", "5..2"],
        vec!["enumerate", "--k", "0"],
    ] {
        let o = dcm(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let e = stderr(&o);
        assert_eq!(e.lines().count(), 1, "{args:?}: {e}");
        assert!(e.starts_with("error code=usage message="), "{e}");
    }
    let e = stderr(&dcm(&["neighbors", "--k", "2", "--matching", "1-2,3-x"]));
    assert!(e.contains("position 6"), "{e}");
}

#[test]
fn neighbors_and_classify() {
    let o = dcm(&["neighbors", "--k", "4", "--matching", "1-8,2-3,4-7,5-6"]);
    assert_eq!(stdout(&o), "1-2,3-8,4-5,6-7\n");
    assert_eq!(stdout(&dcm(&["classify", "--k", "3", "--matching", "1-6,2-5,3-4"])), "Isolated-I\n");
    assert_eq!(stdout(&dcm(&["classify", "--k", "5", "--matching", "1-2,3-4,5-6,7-8,9-10"])), "Regular\n");
    assert_eq!(
        stdout(&dcm(&["classify", "--k", "4", "--matching", "1-8,2-3,4-7,5-6"])),
        "Pair-DB DB(4, ε, 1)\n"
    );
    let o = dcm(&["classify", "--k", "3", "--matching", "1-6,2-5,3-4", "--format", "json", "--dump-dual"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["class"], "Isolated-I");
    assert_eq!(v["dual_tree"]["vertices"], 4);
}

#[test]
fn component_census_golden() {
    let o = dcm(&["components", "--k", "4"]);
    assert_eq!(
        stdout(&o),
        "k,component_id,order,class,bipartite\n\
         4,0,6,medium,true\n\
         4,1,2,small,true\n\
         4,2,2,small,true\n\
         4,3,2,small,true\n\
         4,4,2,small,true\n"
    );
    let text = stdout(&dcm(&["components", "--k", "9", "--format", "text"]));
    assert!(text.contains("612 component(s) of order 1 (small)"));
    assert!(text.contains("36 component(s) of order 5 (medium)"));
    assert!(text.contains("1 component(s) of order 4070 (big)"));
    let six = stdout(&dcm(&["components", "--k", "6", "--format", "text"]));
    assert!(six.contains("12 component(s) of order 2") && six.contains("6 component(s) of order 12"));
}

#[test]
fn graph_exports() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let o = dcm(&["graph", "--k", "2", "--out", dot.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(
        std::fs::read_to_string(&dot).unwrap(),
        "graph DCM_2 {\n  \"1-2,3-4\";\n  \"1-4,2-3\";\n  \"1-2,3-4\" -- \"1-4,2-3\";\n}\n"
    );
    let json = dir.path().join("g.json");
    dcm(&["graph", "--k", "3", "--out", json.to_str().unwrap(), "--format", "json"]);
    assert_eq!(
        std::fs::read_to_string(&json).unwrap(),
        "{\"k\":3,\"vertices\":[\"1-2,3-4,5-6\",\"1-2,3-6,4-5\",\"1-4,2-3,5-6\",\"1-6,2-3,4-5\",\"1-6,2-5,3-4\"],\"edges\":[[0,3]]}\n"
    );
    let o = dcm(&["graph", "--k", "2", "--out", dir.path().join("missing/g.dot").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error code=io"));
}

#[test]
fn worker_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    dcm(&["--threads", "1", "graph", "--k", "7", "--format", "json", "--out", a.to_str().unwrap()]);
    dcm(&["graph", "--k", "7", "--format", "json", "--out", b.to_str().unwrap(), "--threads", "3"]);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn memory_cap_is_a_resource_error() {
    let o = dcm(&["components", "--k", "12", "--memory-cap", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error code=resource message=estimated"));
}

#[test]
fn series_and_counts() {
    let s = stdout(&dcm(&["series", "--edges", "--terms", "5"]));
    assert_eq!(s, "k,d_k\n0,1\n1,0\n2,1\n3,1\n4,9\n5,21\n");
    let f = stdout(&dcm(&["series", "--fuss", "--terms", "3"]));
    assert_eq!(f, "l,a_l\n0,1\n1,1\n2,4\n3,22\n");
    let c = stdout(&dcm(&["counts", "--k-range", "9..10"]));
    assert_eq!(
        c,
        "k,l,vertices,small_components,small_order,medium_components,medium_order,big_order\n\
         9,5,4862,612,1,36,5,4070\n\
         10,5,16796,80,2,40,24,15676\n"
    );
    assert_eq!(dcm(&["series", "--terms", "3"]).status.code(), Some(2));
}

#[test]
fn verify_reports_json() {
    let o = dcm(&["verify", "--k-range", "1..4", "--quick"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    let o = dcm(&["verify", "--k-range", "1..8"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let iso: Vec<u64> = v["summaries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["isomorphism_classes"].as_u64().unwrap())
        .collect();
    assert_eq!(iso, vec![1, 1, 2, 2, 3, 3, 4, 4]);
    let o = dcm(&["verify", "--k-range", "9..10"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for s in v["summaries"].as_array().unwrap() {
        assert_eq!(s["isomorphism_classes"], 3);
    }
    let o = dcm(&["verify", "--k-range", "9..10", "--quick"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["skipped"], serde_json::json!([9, 10]));
}
