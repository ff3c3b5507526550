use std::fs;

use cubic_twist::census::{curve_census, read_jsonl};
use cubic_twist::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("cubic-twist").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn invariants_and_lowering_text() {
    assert_eq!(ok(&["invariants", "--form", "[1,0,1,2]"]), "a=1 H=-1 U=2 Delta=-8\n");
    assert_eq!(
        ok(&["lower", "--k", "2", "--point", "-1,7", "--B", "5"]),
        "M=5 w=18 form [5,18,65,236] Delta=-8\n"
    );
    assert_eq!(ok(&["hessian", "--form", "[1,0,1,2]"]), "[-1,-2,1]\n");
    assert_eq!(ok(&["reduce", "--form", "[1,5,26,142]"]), "form [1,0,1,2] gamma [[1,0],[-5,1]]\n");
}

#[test]
fn json_output() {
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["--json", "lower", "--k", "2", "--point", "-2,8", "--B", "6", "--M", "3"])).unwrap();
    assert_eq!(v["w"], 5);
    assert_eq!(v["form"], serde_json::json!([3, 5, 9, 19]));
    assert_eq!(v["Delta"], -32);

    let v: serde_json::Value = serde_json::from_str(&ok(&["invariants", "--json", "--form", "[1,0,1,2]"])).unwrap();
    assert_eq!((v["a"].as_i64(), v["H"].as_i64(), v["U"].as_i64()), (Some(1), Some(-1), Some(2)));
}

#[test]
fn correspond_both_directions() {
    assert_eq!(ok(&["correspond", "--k", "2", "--point", "-1,7", "--B", "5"]), "form [1,0,1,14] Delta=-200\n");
    assert_eq!(ok(&["correspond", "--k", "2", "--form", "[1,0,1,14]"]), "B=5 point -1,7\n");
    let (code, _, err) = call(&["correspond", "--k", "2", "--form", "[1,0,1,13]"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn equiv_and_extract_hu() {
    let out = ok(&["equiv", "--form1", "[1,5,26,142]", "--form2", "[1,0,1,2]"]);
    assert!(out.starts_with("equivalent gamma "), "{out}");
    let out = ok(&[
        "equiv", "--form1", "[1,0,1,2]", "--point1", "1,0", "--form2", "[1,0,1,-2]", "--point2", "1,0",
    ]);
    assert!(out.starts_with("equivalent"), "{out}");
    let out = ok(&["equiv", "--form1", "[1,0,1,2]", "--form2", "[1,0,2,2]"]);
    assert!(out.starts_with("no equivalence"), "{out}");
    assert_eq!(ok(&["extract-hu", "--form", "[5,18,65,236]", "--k", "2", "--g0", "1", "--g1", "1"]), "h=-1 u=7\n");
}

#[test]
fn counting_subcommands() {
    assert_eq!(ok(&["enumerate", "--k", "-2", "--B", "1", "--x-bound", "100"]), "3,5\n3,-5\n");
    assert_eq!(ok(&["cubefull-count", "--N", "100", "--K", "8"]), "15\n");
    assert_eq!(ok(&["m-count", "--k", "2", "--N", "10"]), "6\n");
    assert!(ok(&["reducible-census", "--k", "2", "--N", "10"]).contains("b=0 c=2 B=2\n"));
    let out = ok(&["heuristic", "--k", "-2", "--N", "1000"]);
    assert!(out.starts_with("constant=2.42865"), "{out}");
}

#[test]
fn census_writes_records_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("census.jsonl");
    let csv = dir.path().join("summary.csv");
    let text = ok(&[
        "census", "--k", "2", "--N", "7", "--x-bound", "10000", "--workers", "2",
        "--out", out.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
    ]);
    let report = read_jsonl(fs::read(&out).unwrap().as_slice()).unwrap();
    assert_eq!(report.records.len(), 7);
    assert!(report.curve_count >= 6);
    assert_eq!(report, curve_census(2, 7, 10_000).unwrap());
    assert!(text.contains(&format!("curve_count={}", report.curve_count)));
    let lines = fs::read_to_string(&out).unwrap();
    assert_eq!(lines.lines().count(), 9);
    let csv_text = fs::read_to_string(&csv).unwrap();
    assert_eq!(
        csv_text,
        format!("N,curve_count,point_sum,point_sum_cubefree\n7,{},{},{}\n", report.curve_count, report.point_sum, report.point_sum_cubefree)
    );
}

#[test]
fn shards_merge_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    ok(&["census", "--k", "-2", "--N", "30", "--x-bound", "5000", "--out", &p("a.jsonl")]);
    ok(&["census", "--k", "-2", "--N", "80", "--b-start", "31", "--x-bound", "5000", "--out", &p("b.jsonl")]);
    ok(&["merge", &p("b.jsonl"), &p("a.jsonl"), "--out", &p("all.jsonl")]);
    let merged = read_jsonl(fs::read(p("all.jsonl")).unwrap().as_slice()).unwrap();
    assert_eq!(merged, curve_census(-2, 80, 5000).unwrap());

    ok(&["census", "--k", "-2", "--N", "90", "--b-start", "40", "--x-bound", "5000", "--out", &p("gap.jsonl")]);
    let (code, _, err) = call(&["merge", &p("a.jsonl"), &p("gap.jsonl"), "--out", &p("bad.jsonl")]);
    assert_eq!(code, 2);
    assert!(err.contains("not adjacent"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["frobnicate"]).0, 1);
    assert_eq!(call(&["invariants"]).0, 1);
    assert_eq!(call(&["invariants", "--form", "[1,2,3]"]).0, 1);
    assert_eq!(call(&["census", "--k", "0", "--N", "5", "--x-bound", "10"]).0, 2);
    assert_eq!(call(&["census", "--k", "2", "--N", "0", "--x-bound", "10"]).0, 2);
    assert_eq!(call(&["lower", "--k", "2", "--point", "-1,7", "--B", "5", "--M", "3"]).0, 2);
    assert_eq!(call(&["heuristic", "--k", "2", "--N", "10", "--tol", "0.5"]).0, 2);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("census"));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var(cubic_twist::cli::OUT_DIR_ENV, dir.path());
    ok(&["census", "--k", "3", "--N", "5", "--x-bound", "100"]);
    ok(&["census", "--k", "3", "--N", "5", "--x-bound", "100", "--out", "named.jsonl", "--csv", "s.csv"]);
    std::env::remove_var(cubic_twist::cli::OUT_DIR_ENV);
    assert!(dir.path().join("census_k3_N5.jsonl").exists());
    assert!(dir.path().join("named.jsonl").exists());
    assert!(dir.path().join("s.csv").exists());
}
