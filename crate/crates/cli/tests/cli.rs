use std::io::Write;
use std::process::{Command, Output};

fn ribbon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ribbon")).args(args).env_remove("RIBBON_KNOT_TABLE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--output", "json"];
    all.extend_from_slice(args);
    let o = ribbon(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn homology_table_and_json_agree() {
    let table = stdout(&ribbon(&["homology", "--knot", "3_1"]));
    let v = json(&["homology", "--knot", "3_1"]);
    assert_eq!(v[0]["mu"], 1);
    for t in v[0]["torsion"].as_array().unwrap() {
        let (r, q, order) = (t["r"].as_i64().unwrap(), t["q"].as_i64().unwrap(), t["order"].as_i64().unwrap());
        let line = format!("torsion  r={r:<3} q={q:<4} order {order}");
        assert!(table.contains(&line), "{line} missing from\n{table}");
    }
    assert!(table.contains("mu = 1"));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let one = ribbon(&["--jobs", "1", "--output", "json", "homology", "--max-crossings", "6"]);
    let many = ribbon(&["--jobs", "4", "--output", "json", "homology", "--max-crossings", "6"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn bound_with_a_ribbon_movie() {
    let v = json(&["bound", "--knot", "unknot", "--knot", "6_1", "--movie", "stevedore-ribbon"]);
    assert_eq!(v["pairs"][0]["lower_bound"], 1);
    assert_eq!(v["movie_saddles"], 1);
    assert_eq!(v["movie_consistent"], true);
    let o = ribbon(&["bound", "--knot", "unknot", "--knot", "6_1", "--saddles", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("INCONSISTENT"));
}

#[test]
fn bound_at_a_specialization_uses_the_star_order() {
    let v = json(&["bound", "--theory", "alpha@0,t/f2", "--knot", "3_1", "--knot", "unknot"]);
    assert_eq!(v["invariant"], "nu_phi");
    assert_eq!(v["knots"][0]["value"], 1);
}

#[test]
fn links_are_refused() {
    let o = ribbon(&["bound", "--pd", "X[1,3,2,4] X[3,1,4,2]", "--knot", "unknot"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("2 components"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("refused"));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(ribbon(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(ribbon(&["homology", "--knot", "99_1"]).status.code(), Some(2));
    assert_eq!(ribbon(&["homology", "--theory", "bogus", "--knot", "3_1"]).status.code(), Some(2));
    let mut script = tempfile::NamedTempFile::new().unwrap();
    writeln!(script, "start unknot\nbirth\nsaddle 1").unwrap();
    let o = ribbon(&["movie", "--input", script.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn verify_suites_pass() {
    let o = ribbon(&["verify", "neckcut"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 failed"));
    let v = json(&["verify", "saddle-split", "--theory", "bn", "--max-crossings", "3"]);
    assert!(v.as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn movie_composed_with_its_reverse() {
    let o = ribbon(&["movie", "--input", "unknot-ribbon", "--compose-reverse", "--compare", "id"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("compare with id: holds"));
    let o = ribbon(&["movie", "--input", "unknot-ribbon", "--compose-reverse", "--compare", "h^1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn knot_table_from_the_environment() {
    let mut table = tempfile::NamedTempFile::new().unwrap();
    writeln!(table, "# name\tpd\nmy_trefoil\tX[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_ribbon"))
        .args(["--output", "json", "homology", "--knot", "my_trefoil"])
        .env("RIBBON_KNOT_TABLE", table.path())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["mu"], 1);
}
