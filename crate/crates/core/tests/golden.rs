//! Checked-in outputs for the ATM fixture. Run with `UPDATE_GOLDEN=1` to
//! rewrite them after an intended change.

use std::path::{Path, PathBuf};

use amda_core::fixtures::{atm_charts, ATM_CORRECT_PIN, ATM_DISPATCH, ATM_WRONG_PIN_X3};
use amda_core::pim::read_dispatcher;
use amda_core::pipeline::{build_network, run};
use amda_core::psm::{load_profile, DOTNET_PROFILE, JAVA_PROFILE};
use amda_core::sim::{format_trace, parse_script, SimSession};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/atm/golden")
}

fn check(rel: &str, actual: &str) {
    let path = golden_dir().join(rel);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e} (run with UPDATE_GOLDEN=1)", path.display()));
    if expected != actual {
        let line = expected
            .lines()
            .zip(actual.lines())
            .position(|(a, b)| a != b)
            .unwrap_or_else(|| expected.lines().count().min(actual.lines().count()));
        panic!(
            "{rel} differs from golden at line {}:\n  golden: {:?}\n  actual: {:?}",
            line + 1,
            expected.lines().nth(line),
            actual.lines().nth(line)
        );
    }
}

#[test]
fn atm_pipeline_matches_goldens() {
    for text in [JAVA_PROFILE, DOTNET_PROFILE] {
        let profile = load_profile(text, None).unwrap();
        let out = run(&atm_charts(), Some(ATM_DISPATCH), &profile).unwrap();
        check("atm.pim.xml", &out.pim);
        check(&format!("atm.{}.psm.xml", profile.name), &out.psm);
        for f in &out.sources.files {
            check(&format!("gen/{}/{}", profile.name, f.name), &f.text);
        }
    }
}

#[test]
fn atm_traces_match_goldens() {
    for (name, text) in [
        ("correct-pin", ATM_CORRECT_PIN),
        ("wrong-pin-x3", ATM_WRONG_PIN_X3),
    ] {
        let script = parse_script(text).unwrap();
        let net = build_network(&atm_charts()).unwrap();
        let disp = read_dispatcher(ATM_DISPATCH).unwrap();
        let mut s = SimSession::instantiate(net, disp, script.stubs.clone()).unwrap();
        s.run_script(&script).unwrap();
        check(&format!("{name}.trace"), &format_trace(s.trace()));
    }
}
