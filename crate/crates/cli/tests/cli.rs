use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(format!("{name}.json"));
    p.to_string_lossy().into_owned()
}

fn out_dir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("betauto-cli-{}-{tag}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_betauto")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn json(path: PathBuf) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn relations_writes_files() {
    let dir = out_dir("rel");
    let o = run(&["relations", "--config", &fixture("intro"), "--out", dir.to_str().unwrap()]);
    assert!(o.status.success());
    let s = json(dir.join("summary.json"));
    assert_eq!(s["state_count"], 3);
    assert_eq!(s["free"], false);
    assert!(dir.join("relations.dot").exists());
    let rel = std::fs::read_to_string(dir.join("relations.json")).unwrap();
    assert!(betauto::automata::Automaton::from_json(&rel).is_ok());

    let o = run(&["relations", "--config", &fixture("kenyon_1_5"), "--out", dir.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(json(dir.join("summary.json"))["free"], true);
}

#[test]
fn salem_is_blocked_then_capped() {
    let dir = out_dir("salem");
    let o = run(&["relations", "--config", &fixture("salem"), "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(dir.join("summary.json"))["status"], "blocked");
    let o = run(&[
        "relations",
        "--config",
        &fixture("salem"),
        "--out",
        dir.to_str().unwrap(),
        "--force",
        "--max-states",
        "2000",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let s = json(dir.join("summary.json"));
    assert_eq!(s["status"], "capped");
    assert_eq!(s["conclusive"], false);
    assert!(String::from_utf8_lossy(&o.stderr).contains("inconclusive"));
}

#[test]
fn structure_reports_growth() {
    let dir = out_dir("structure");
    let o = run(&[
        "structure",
        "--config",
        &fixture("t_1_x"),
        "--out",
        dir.to_str().unwrap(),
        "--n",
        "6",
        "--pi",
        "x^2-3x+1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let g = json(dir.join("growth.json"));
    let counts: Vec<&str> = g["counts"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(counts, ["1", "3", "8", "21", "55", "144", "377"]);
    assert!((g["lambda"]["lo"].as_f64().unwrap() - 2.6180).abs() < 1e-3);
    assert!(dir.join("mult_P.json").exists() && dir.join("reduced.dot").exists());

    let o = run(&["structure", "--config", &fixture("kenyon_1_6"), "--out", dir.to_str().unwrap(), "--pi", "x^2-3x+1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn word_commands() {
    let intro = fixture("intro");
    assert_eq!(stdout(&run(&["reduce", "--config", &intro, "10"])), "03");
    assert_eq!(stdout(&run(&["reduce", "--config", &intro, "110"])), "033");
    assert_eq!(stdout(&run(&["reduce", "--config", &intro, "--order", "revlex", "03"])), "10");
    assert_eq!(stdout(&run(&["equiv", "--config", &intro, "110", "033"])), "equivalent");
    assert_eq!(stdout(&run(&["equiv", "--config", &intro, "0", "1"])), "distinct");
    assert_eq!(stdout(&run(&["verify", "--config", &intro, "10", "03"])), "true");
    assert_eq!(stdout(&run(&["verify", "--config", &intro, "--identity", "β^2 = 9"])), "true");
    let o = run(&["reduce", "--config", &intro, "12"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn free_verdicts() {
    let o = run(&["free", "--config", &fixture("golden")]);
    assert!(stdout(&o).starts_with("non-free") && stdout(&o).contains("mahler<2"));
    let o = run(&["free", "--config", &fixture("salem_free"), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "free");
    assert_eq!(v["quick_free_sufficient"], "free");
    let o = run(&["free", "--config", &fixture("kenyon_2_7"), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["base3_criterion"], "free");
    assert_eq!(v["automaton"], "free");
}

#[test]
fn oracle_passes_on_fixtures() {
    for name in ["intro", "golden", "t_1_x2+1"] {
        let o = run(&["oracle", "--config", &fixture(name), "--n", "4", "--samples", "200"]);
        assert!(o.status.success(), "{name}: {}", stdout(&o));
    }
}

#[test]
fn outputs_are_deterministic() {
    let (a, b) = (out_dir("det-a"), out_dir("det-b"));
    for d in [&a, &b] {
        assert!(run(&["structure", "--config", &fixture("pisot_4b"), "--out", d.to_str().unwrap()]).status.success());
        assert!(run(&["relations", "--config", &fixture("pisot_4b"), "--out", d.to_str().unwrap()]).status.success());
    }
    for f in ["relations.json", "relations.dot", "summary.json", "reduced.json", "mult_1.dot", "growth.json"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn bad_input_exits_1() {
    let dir = out_dir("bad");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("bad.json");
    std::fs::write(&cfg, r#"{"beta": {"minpoly": [2, 3]}, "digits": [[0], [1]]}"#).unwrap();
    let o = run(&["relations", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["relations", "--config", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(1));
}
