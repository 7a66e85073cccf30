//! Full reports for every builtin at d = 8, h = 5 over F_32003, compared
//! byte for byte. Set `NCGRADED_BLESS=1` to rewrite the files.

use std::path::PathBuf;

use ncgraded::cli::{run, CheckRegistry, ExitStatus, RunConfig};
use ncgraded::presentation::builtin_names;

const CHECKS: [&str; 6] = ["hilbert", "betti", "koszul", "asregular", "hochschild", "rigidity"];

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden").join(format!("{name}.json"))
}

fn report_for(name: &str) -> String {
    let mut cfg = RunConfig::builtin(name);
    cfg.checks = CHECKS.iter().map(|s| s.to_string()).collect();
    let out = run(&cfg, &CheckRegistry::default());
    assert_eq!(out.status, ExitStatus::Ok, "{name}:\n{}", out.text);
    out.report.expect("report on success").to_json()
}

#[test]
fn corpus_reports_match_golden_files() {
    let bless = std::env::var("NCGRADED_BLESS").is_ok_and(|v| v == "1");
    let mut stale = Vec::new();
    for name in builtin_names() {
        let json = report_for(name);
        let path = golden_path(name);
        if bless {
            std::fs::write(&path, &json).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e} (run with NCGRADED_BLESS=1 to create)", path.display()));
        if expected != json {
            stale.push(name);
        }
    }
    assert!(stale.is_empty(), "reports differ from golden files: {stale:?}");
}

#[test]
fn reports_are_deterministic() {
    for name in ["quantum-plane-2", "cubic-as3"] {
        assert_eq!(report_for(name), report_for(name));
    }
}
