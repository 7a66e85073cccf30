//! The `ncgraded` binary: exit codes, file input and JSON output.

use std::process::{Command, Output};

fn ncgraded(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncgraded")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn polynomial_three_is_regular() {
    let o = ncgraded(&["--builtin", "polynomial-3", "--check", "asregular", "-d", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("regular(n=3, l=3)"), "{}", stdout(&o));
}

#[test]
fn smith_zhang_claim_koszul_and_failure() {
    let o = ncgraded(&["--builtin", "smith-zhang", "--claim", "1/(1-t)^4", "-d", "8", "--check", "koszul,asregular"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("hilbert claim 1/(1-t)^4: ok"));
    assert!(text.contains("koszul: Koszul up to"));
    assert!(text.contains("as: fails:"));
}

#[test]
fn quantum_plane_rigid_in_window() {
    let o = ncgraded(&["--builtin", "quantum-plane-2", "--check", "hochschild,rigidity", "-d", "6"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("rigidity: concentrated in degree 2, shift 2, graded match yes"), "{text}");
}

#[test]
fn wrong_claim_exits_one() {
    let o = ncgraded(&["--builtin", "polynomial-2", "--claim", "1/(1-t)^3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("mismatch"));
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["--builtin", "no-such-algebra"],
        vec!["--input", "/nonexistent/file.alg"],
        vec!["--builtin", "polynomial-2", "--check", "bogus"],
        vec!["--builtin", "cubic-as3", "-d", "2"],
        vec!["--builtin", "polynomial-2", "-h", "0"],
        vec!["--builtin", "polynomial-2", "--claim", "1/(1-"],
        vec!["--builtin", "polynomial-3", "--check", "normal-elements"],
    ] {
        let o = ncgraded(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn input_file_matches_builtin() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/smith-zhang.alg");
    let from_file = ncgraded(&["--input", path, "--field", "F32003", "--check", "hilbert,betti"]);
    let builtin = ncgraded(&["--builtin", "smith-zhang", "--check", "hilbert,betti"]);
    assert_eq!(from_file.status.code(), Some(0));
    // the builtin also checks its stored series claim
    let tail = |o: &Output| {
        stdout(o).lines().skip(2).filter(|l| !l.starts_with("hilbert claim")).map(str::to_string).collect::<Vec<_>>()
    };
    assert_eq!(tail(&from_file), tail(&builtin));
}

#[test]
fn json_output_is_deterministic_and_parses() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = ncgraded(&[
            "--builtin",
            "quantum-plane-2",
            "--check",
            "hilbert,betti,asregular,hochschild,rigidity",
            "--seed",
            "7",
            "--json",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    for key in ["algebra", "field", "bounds", "hilbert", "betti", "ext_k_A", "hochschild", "as_verdict", "rigidity"] {
        assert!(v.get(key).is_some_and(|x| !x.is_null()), "missing {key}");
    }
    assert_eq!(v["invariants"]["fhtr"], 2);
    assert_eq!(v["invariants"]["htr_QA_conditional"], 2);
    assert_eq!(v["unchecked_hypotheses"].as_array().unwrap().len(), 2);
}

#[test]
fn normal_elements_over_small_field() {
    let o = ncgraded(&["--builtin", "smith-zhang", "--field", "F2", "--check", "normal-elements"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("heuristic"), "{text}");
}
