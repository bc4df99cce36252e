use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    root.join(name).to_string_lossy().into_owned()
}

fn dqb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dqb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exit_code_matrix() {
    let cases: Vec<(Vec<String>, i32)> = vec![
        (vec!["verify".into(), data("z2_sign.dqb.json")], 0),
        (vec!["verify".into(), data("z3_broken_cocycle.dqb.json")], 1),
        (vec!["verify".into(), data("missing.dqb.json")], 2),
        (vec!["verify".into(), data("bad_index.dqb.json")], 2),
        (vec!["solve-preantipode".into(), data("z2_sign.dqb.json")], 0),
        (vec!["solve-preantipode".into(), data("idempotent_monoid.dqb.json")], 1),
        (vec!["solve-preantipode".into(), data("z3_broken_cocycle.dqb.json")], 2),
        (vec!["from-antipode".into(), data("z2_sign.dqb.json"), data("z2_sign.antipode.json")], 0),
        (vec!["from-antipode".into(), data("z2_sign.dqb.json"), data("z2_sign_beta_counit.antipode.json")], 1),
        (vec!["from-antipode".into(), data("z2_sign.dqb.json"), data("z2_sign.dqb.json")], 2),
        (vec!["structure-theorem".into(), data("z2_sign.dqb.json"), "--use-hhat".into()], 0),
        (vec!["structure-theorem".into(), data("z2_sign.dqb.json"), data("z2_sign.f_trivial.module.json")], 0),
        (
            vec![
                "structure-theorem".into(),
                data("idempotent_monoid.dqb.json"),
                "--use-hhat".into(),
                "--preantipode".into(),
                data("idempotent_monoid.zero.preantipode.json"),
            ],
            1,
        ),
        (vec!["structure-theorem".into(), data("idempotent_monoid.dqb.json"), "--use-hhat".into()], 1),
        (vec!["gen".into(), "--cyclic".into(), "3".into(), "--r".into(), "3".into(), "--out".into(), "/nonexistent".into()], 2),
    ];
    for (args, code) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = dqb(&args);
        assert_eq!(o.status.code(), Some(code), "{args:?}\n{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn verify_names_failing_axiom() {
    let o = dqb(&["verify", &data("z3_broken_cocycle.dqb.json")]);
    assert!(stdout(&o).contains("FAIL omega-3-cocycle"));
    let o = dqb(&["--report", "json-lines", "verify", &data("z3_broken_cocycle.dqb.json")]);
    let records: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 14);
    let failing: Vec<_> = records.iter().filter(|r| r["pass"] == false).collect();
    assert_eq!(failing.len(), 1);
    assert_eq!(failing[0]["axiom"], "omega-3-cocycle");
    assert!(failing[0]["witness"].is_array());
}

#[test]
fn solver_prints_sign_preantipode() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let o = dqb(&["solve-preantipode", &data("z2_sign.dqb.json"), "--out", out.to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.contains("S(e1) = (-1)*e1"), "{text}");
    assert!(text.contains("kernel dimension: 0"));
    assert!(std::fs::read_to_string(&out).unwrap().contains("[1, 1, \"-1\"]"));
    let o = dqb(&["solve-preantipode", &data("trivial.dqb.json")]);
    assert!(stdout(&o).starts_with("S(e0) = e0\n"));
    assert_eq!(stdout(&dqb(&["solve-preantipode", &data("idempotent_monoid.dqb.json")])), "none\n");
}

#[test]
fn from_antipode_on_trivial_cocycle_returns_s() {
    let o = dqb(&["from-antipode", &data("z3_r0.dqb.json"), &data("z3_r0.antipode.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("S(e1) = e2") && text.contains("S(e2) = e1"), "{text}");
}

#[test]
fn structure_theorem_reports_dimensions() {
    let o = dqb(&["structure-theorem", &data("z2_sign.dqb.json"), "--use-hhat"]);
    let text = stdout(&o);
    assert!(text.contains("coinvariant dimension: 2"));
    assert!(text.contains("epsilon bijective: yes"));
}

#[test]
fn generated_files_verify_and_match_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    for (n, r) in [("2", "1"), ("3", "0"), ("4", "1")] {
        let o = dqb(&["gen", "--cyclic", n, "--r", r, "--out", path]);
        assert_eq!(o.status.code(), Some(0));
        let file = dir.path().join(format!("z{n}_r{r}.dqb.json"));
        assert_eq!(dqb(&["verify", file.to_str().unwrap()]).status.code(), Some(0));
        let antipode = dir.path().join(format!("z{n}_r{r}.antipode.json"));
        let o = dqb(&["from-antipode", file.to_str().unwrap(), antipode.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let generated = std::fs::read_to_string(dir.path().join("z2_r1.dqb.json")).unwrap();
    assert_eq!(generated, std::fs::read_to_string(data("z2_sign.dqb.json")).unwrap());
    let generated = std::fs::read_to_string(dir.path().join("z4_r1.dqb.json")).unwrap();
    assert!(generated.contains("\"kind\": \"cyclotomic\", \"order\": 4"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--report", "json-lines", "structure-theorem", &data("z2_sign.dqb.json"), "--use-hhat"];
    assert_eq!(dqb(&args).stdout, dqb(&args).stdout);
}
