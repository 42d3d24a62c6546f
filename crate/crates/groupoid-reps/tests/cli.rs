use std::process::Command;

use groupoid_reps::{run, Outcome};
use serde_json::Value;

fn cli(args: &str) -> Outcome {
    run(std::iter::once("groupoid-reps").chain(args.split_whitespace()))
}

fn json(args: &str) -> Value {
    let o = cli(&format!("{args} --out json"));
    assert_eq!(o.code, 0, "{args}: {}{}", o.stdout, o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

fn check<'a>(v: &'a Value, name: &str) -> &'a str {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))["status"]
        .as_str()
        .unwrap()
}

#[test]
fn simples_for_two_colors() {
    let v = json("simples --ell 2 --d 2");
    assert_eq!(v["schema"], "groupoid-reps/1");
    assert_eq!(v["command"], "simples");
    let r = &v["results"]["simples(l=2,d=2)"];
    assert_eq!(r["count"], 5);
    let mut dims: Vec<u64> = r["dims"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    dims.sort();
    assert_eq!(dims, [1, 1, 1, 1, 2]);
    assert_eq!(check(&v, "wedderburn"), "pass");
    assert_eq!(v["parameters"]["ell"], 2);
}

#[test]
fn single_color_iso() {
    let o = cli("verify-iso --ell 1 --d 3");
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("PASS  multiplicative"));
    assert!(o.stdout.contains("0 failed"));
}

#[test]
fn gkd_two_two_two() {
    let v = json("gkd --ell 2 --k 2 --d 2");
    let r = &v["results"]["gkd(l=2,k=2,d=2)"];
    assert_eq!(r["orbits"].as_array().unwrap().len(), 2);
    assert_eq!(r["simples"].as_array().unwrap().len(), 4);
    assert_eq!(check(&v, "span equality"), "pass");
    assert_eq!(v["passed"], true);
}

#[test]
fn schur_weyl_and_cyclic_variant() {
    let v = json("schur-weyl --ell 2 --k 1,1 --d 2");
    assert_eq!(v["results"]["schur-weyl(k=1,1,d=2)"]["commutant_dim"], 6);
    let v = json("schur-weyl --kvec 2,1 --d 2");
    assert_eq!(v["passed"], true);
    let v = json("schur-weyl --theorem95 --ell 2 --kk 2 --m 1 --d 1");
    assert_eq!(v["results"]["theorem95(l=2,k=2,m=1,d=1)"]["image_dim"], 1);
}

#[test]
fn other_commands() {
    for args in ["objects --ell 2 --d 2", "gelfand --ell 2 --d 2", "branching --ell 2 --d 2", "rook-check --d 3"] {
        let v = json(args);
        assert_eq!(v["passed"], true, "{args}");
        assert!(!v["checks"].as_array().unwrap().is_empty(), "{args}");
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        "bogus",
        "objects --ell 2",
        "gkd --ell 2 --k 3 --d 2",
        "schur-weyl --ell 3 --k 1,1 --d 2",
        "simples --ell two --d 2",
        "branching --ell 2 --d 0",
        "objects --ell 2 --d 2 --config /nonexistent.toml",
    ] {
        let o = cli(args);
        assert_eq!(o.code, 2, "{args}: {}", o.stderr);
        assert!(o.stdout.is_empty(), "{args}");
    }
}

#[test]
fn caps_exit_3() {
    assert_eq!(cli("objects --ell 4 --d 9").code, 3);
    assert_eq!(cli("simples --ell 2 --d 3 --cap 10").code, 3);
    assert_eq!(cli("schur-weyl --k 4,4 --d 5").code, 3);
    assert!(cli("objects --ell 4 --d 9").stderr.contains("cap"));
}

#[test]
fn config_file_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "ell = 3\nd = 2\nout = \"json\"\nseed = 11\n").unwrap();
    let o = cli(&format!("verify-iso --config {}", path.display()));
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["parameters"]["ell"], 3);
    assert_eq!(v["parameters"]["seed"], 11);
    let o = cli(&format!("verify-iso --ell 2 --out text --config {}", path.display()));
    assert!(o.stdout.starts_with("verify-iso"), "{}", o.stdout);
    assert!(o.stdout.contains("verify-iso(l=2,d=2)"));

    std::fs::write(&path, "ell = 2\ncolour = 1\n").unwrap();
    assert_eq!(cli(&format!("objects --d 1 --config {}", path.display())).code, 2);
}

#[test]
fn json_is_deterministic() {
    let a = cli("gkd --ell 3 --k 3 --d 2 --out json").envelope.unwrap();
    let b = cli("gkd --ell 3 --k 3 --d 2 --out json --jobs 1").envelope.unwrap();
    assert_eq!(a.payload(), b.payload());
    assert!(!a.payload().contains("timings"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_groupoid-reps");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["objects", "--ell", "2", "--d", "2", "--out", "json"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["results"]["objects(l=2,d=2)"]["summary"]["objects"], 4);
    assert_eq!(status(&["objects", "--ell", "2"]).status.code(), Some(2));
    assert_eq!(status(&["objects", "--ell", "4", "--d", "9"]).status.code(), Some(3));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}

#[test]
fn failing_checks_mark_the_envelope() {
    use groupoid_reps::{Envelope, TaskOutput};
    use groupoid_reps_core::report::Report;
    let mut report = Report::new();
    report.push("a", true, "");
    report.push("b", false, "why");
    let out = TaskOutput { name: "t".into(), result: Value::Null, report, seconds: 0.0 };
    let e = Envelope::new("x", Default::default(), vec![out]);
    assert!(!e.passed);
    assert!(e.render(groupoid_reps::config::OutFormat::Text).contains("FAIL  b  [why]"));
}
