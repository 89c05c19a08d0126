use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpStream;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn amda(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amda"))
        .args(args)
        .current_dir(root())
        .env_remove("AMDA_MAX_STEPS")
        .output()
        .unwrap()
}

fn ok(out: &Output) -> String {
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn files_under(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push(p.strip_prefix(dir).unwrap().to_path_buf());
            }
        }
    }
    out.sort();
    out
}

fn same_tree(a: &Path, b: &Path) {
    let files = files_under(a);
    assert_eq!(files, files_under(b));
    for f in files {
        assert_eq!(
            std::fs::read(a.join(&f)).unwrap(),
            std::fs::read(b.join(&f)).unwrap(),
            "{}",
            f.display()
        );
    }
}

fn pipeline(out: &Path) {
    ok(&amda(&[
        "pipeline",
        "fixtures/atm",
        "--profile",
        "profiles/java.profile.xml",
        "-o",
        s(out),
    ]));
}

#[test]
fn pipeline_reproduces_goldens() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    pipeline(&out);
    let golden = root().join("fixtures/atm/golden");
    for (ours, theirs) in [
        ("atm.pim.xml", "atm.pim.xml"),
        ("atm.psm.xml", "atm.java.psm.xml"),
    ] {
        assert_eq!(
            std::fs::read_to_string(out.join(ours)).unwrap(),
            std::fs::read_to_string(golden.join(theirs)).unwrap(),
            "{ours}"
        );
    }
    same_tree(&out.join("gen/java"), &golden.join("gen/java"));

    let again = tmp.path().join("again");
    pipeline(&again);
    same_tree(&out, &again);
}

#[test]
fn stages_compose_to_the_pipeline() {
    let tmp = tempfile::tempdir().unwrap();
    let all = tmp.path().join("all");
    pipeline(&all);

    let step = tmp.path().join("step");
    let pim = step.join("atm.pim.xml");
    let psm = step.join("atm.psm.xml");
    ok(&amda(&["frontend", "fixtures/atm", "-o", s(&pim)]));
    assert!(step.join("atm.dispatch.xml").exists());
    ok(&amda(&[
        "transform",
        s(&pim),
        "--profile",
        "profiles/java.profile.xml",
        "-o",
        s(&psm),
    ]));
    ok(&amda(&[
        "codegen",
        s(&psm),
        "-o",
        s(&step.join("gen/java")),
    ]));
    same_tree(&all, &step);
}

#[test]
fn validate_accepts_every_artifact() {
    let tmp = tempfile::tempdir().unwrap();
    pipeline(tmp.path());
    let stdout = ok(&amda(&[
        "validate",
        s(&tmp.path().join("atm.pim.xml")),
        s(&tmp.path().join("atm.psm.xml")),
        s(&tmp.path().join("atm.dispatch.xml")),
        "profiles/java.profile.xml",
        "fixtures/atm/a1_controller.statechart.xml",
        "fixtures/atm/wrong-pin-x3.events",
    ]));
    assert_eq!(stdout.lines().count(), 6, "{stdout}");
    assert!(stdout.contains("PIM, 4 automata"));
}

#[test]
fn simulate_wrong_pin_script() {
    let tmp = tempfile::tempdir().unwrap();
    pipeline(tmp.path());
    let stdout = ok(&amda(&[
        "simulate",
        s(&tmp.path().join("atm.pim.xml")),
        "--script",
        "fixtures/atm/wrong-pin-x3.events",
    ]));
    let (trace, tail) = stdout.split_once("# final snapshot").unwrap();
    let golden =
        std::fs::read_to_string(root().join("fixtures/atm/golden/wrong-pin-x3.trace")).unwrap();
    assert_eq!(trace, golden);
    assert!(
        tail.contains("controller End PIN_code_OK=false errors=3"),
        "{tail}"
    );
}

#[test]
fn failures_use_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(amda(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        amda(&["validate", "no/such/file.xml"]).status.code(),
        Some(2)
    );
    assert_eq!(amda(&["--help"]).status.code(), Some(0));

    let bad = tmp.path().join("bad.pim.xml");
    std::fs::write(&bad, "<pim><bogus/></pim>").unwrap();
    let out = amda(&["validate", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dtd-violation"));

    pipeline(tmp.path());
    let out = Command::new(env!("CARGO_BIN_EXE_amda"))
        .args([
            "simulate",
            s(&tmp.path().join("atm.pim.xml")),
            "--script",
            "fixtures/atm/wrong-pin-x3.events",
        ])
        .current_dir(root())
        .env("AMDA_MAX_STEPS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn serve_answers_requests() {
    let tmp = tempfile::tempdir().unwrap();
    pipeline(tmp.path());
    let mut child = Command::new(env!("CARGO_BIN_EXE_amda"))
        .args([
            "simulate",
            s(&tmp.path().join("atm.pim.xml")),
            "--stubs",
            "fixtures/atm/correct-pin.events",
            "--serve",
            "--port",
            "0",
        ])
        .current_dir(root())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut line = String::new();
    BufReader::new(child.stderr.take().unwrap())
        .read_line(&mut line)
        .unwrap();
    let addr = line
        .trim()
        .strip_prefix("listening on http://")
        .unwrap()
        .to_string();

    let body = r#"{"id":1,"op":"instantiate","payload":{"model":"atm"}}"#;
    let mut stream = TcpStream::connect(&addr).unwrap();
    write!(
        stream,
        "POST /api HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\n\
         Content-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )
    .unwrap();
    let mut reply = String::new();
    stream.read_to_string(&mut reply).unwrap();
    child.kill().unwrap();
    child.wait().unwrap();
    assert!(reply.starts_with("HTTP/1.1 200"), "{reply}");
    assert!(reply.contains(r#""session":"s1""#), "{reply}");
    assert!(reply.contains(r#""state_name":"S1""#), "{reply}");
}
