use std::process::{Command, Output};

fn permtt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permtt"))
        .args(args)
        .env_remove("PERMTT_FORMAT")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn classify_klein_four() {
    let out = permtt(&["classify", "--group", "C2xC2", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "NotRegular");
    assert_eq!(v["reason"], "KleinFourWitness");
    assert_eq!(v["witness"]["order"], 4);
}

#[test]
fn bad_descriptor_is_a_usage_error() {
    let out = permtt(&["classify", "--group", "ZZZ", "--p", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 0"));
    assert_eq!(permtt(&["classify", "--group", "C2", "--p", "4"]).status.code(), Some(2));
    assert_eq!(permtt(&["classify", "--group", "S5", "--p", "2"]).status.code(), Some(2));
    assert_eq!(permtt(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn residue_certificates() {
    let out = permtt(&["verify-residue", "--group", "C3", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for key in ["hom_table", "section_scalar", "compactness", "pass"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["pass"], true);
    assert_eq!(v["compactness"]["verdict"], "NotCompact");

    let out = permtt(&["verify-residue", "--group", "C2", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["compactness"]["verdict"], "Compact");

    // the Klein complex fails the Hom condition at the order-2 subgroups
    let out = permtt(&["verify-residue", "--group", "C2xC2", "--p", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);

    assert_eq!(permtt(&["verify-residue", "--group", "S3", "--p", "2"]).status.code(), Some(2));
    let narrow = permtt(&["verify-residue", "--group", "C2", "--p", "2", "--degree-window", "-1:1"]);
    assert_eq!(json(&narrow)["hom_table"].as_array().unwrap().len(), 2 * 3);
}

#[test]
fn census_tsv_schema() {
    let out = permtt(&["census", "--groups", "C2,C4,C2xC2,Q8,D8,S3", "--primes", "2", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("group\torder\tp\tmodular\tverdict\treason\twitness"));
    let verdicts: Vec<&str> = lines.map(|l| l.split('\t').nth(4).unwrap()).collect();
    assert_eq!(
        verdicts,
        ["Regular", "Regular", "NotRegular", "NotRegular", "NotRegular", "Regular"]
    );
}

#[test]
fn format_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_permtt"))
        .args(["closed-points", "--group", "C2xC2", "--p", "2"])
        .env("PERMTT_FORMAT", "tsv")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 5);
}

#[test]
fn deterministic_output() {
    let args = ["hom", "--group", "C4", "--p", "2", "--count", "5", "--seed", "11"];
    let a = permtt(&args);
    let b = permtt(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["disagreements"].as_array().unwrap().len(), 0);
}

#[test]
fn separable_and_trichotomy() {
    let out = permtt(&["verify-separable", "--group", "S3", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out).as_array().unwrap().len(), 6);
    let out = permtt(&["trichotomy", "--group", "Q16"]);
    assert_eq!(json(&out)["branch"], "ContainsQ8");
    assert_eq!(permtt(&["trichotomy", "--group", "S3"]).status.code(), Some(2));
}

#[test]
fn support_and_hom_from_a_file() {
    let dir = std::env::temp_dir().join(format!("permtt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s.txt");
    std::fs::write(
        &path,
        "group: C2\np: 2\nterm 0: G/G\nterm -1: G/1\nterm -2: G/G\nd -1: [[1]]\nd -2: [[t]]\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let out = permtt(&["support", "--complex", p]);
    assert_eq!(out.status.code(), Some(0));
    let pts = json(&out);
    assert_eq!(pts.as_array().unwrap().len(), 1);
    assert_eq!(pts[0]["subgroup"]["order"], 2);

    let out = permtt(&["hom", "--complex", p, "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "Hom(k(G/<a>)[0], S) has dimension 1");
    assert_eq!(permtt(&["support", "--complex", "/nonexistent/file"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
