//! End-to-end tests of the binary: exit codes, text and JSON output,
//! bound overrides, and byte-for-byte determinism.

use std::io::Write;
use std::process::{Command, Output};
use tau4::pd::PDLink;

fn tau4_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tau4"))
}

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = tau4_bin();
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("spawning the CLI binary")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn tmp_file(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f.flush().unwrap();
    f
}

/// Serialize a library-built link into the CLI's input schema.
fn link_json(link: &PDLink) -> String {
    let crossings: Vec<String> = link
        .crossings()
        .iter()
        .map(|c| {
            format!(
                "{{\"arcs\":[{},{},{},{}],\"sign\":{}}}",
                c.arcs[0], c.arcs[1], c.arcs[2], c.arcs[3], c.sign
            )
        })
        .collect();
    let loops: Vec<String> = link.free_loops().iter().map(|a| a.to_string()).collect();
    let framings: Vec<String> = link.framings().iter().map(|f| f.to_string()).collect();
    format!(
        "{{\"crossings\":[{}],\"free_loops\":[{}],\"framings\":[{}]}}",
        crossings.join(","),
        loops.join(","),
        framings.join(",")
    )
}

fn trefoil() -> PDLink {
    PDLink::from_braid(2, &[1, 1, 1]).unwrap()
}

fn borromean() -> PDLink {
    PDLink::from_braid(3, &[1, -2, 1, -2, 1, -2]).unwrap()
}

#[test]
fn surgery_tau4_of_zero_framed_borromean_is_six() {
    let f = tmp_file(&link_json(&borromean()));
    let out = run(&["surgery-tau4", f.path().to_str().unwrap()], &[]);
    let text = stdout_of(&out);
    assert!(text.contains("tau4 6\n"), "got: {}", text);
    assert!(text.contains("method exponential"), "got: {}", text);

    let json = run(
        &["surgery-tau4", f.path().to_str().unwrap(), "--format", "json"],
        &[],
    );
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&json)).unwrap();
    assert_eq!(v["integer"], serde_json::json!(6));
    assert_eq!(v["tau4"][0], serde_json::json!(6));
    assert_eq!(v["method"], serde_json::json!("exponential"));
}

#[test]
fn surgery_tau4_cross_check_and_all_methods_agree() {
    let f = tmp_file(&link_json(&borromean()));
    let path = f.path().to_str().unwrap();
    let checked = run(
        &["surgery-tau4", path, "--method", "spin-sum", "--cross-check", "--format", "json"],
        &[],
    );
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&checked)).unwrap();
    assert_eq!(v["cross_check"]["agree"], serde_json::json!(true));
    assert_eq!(v["integer"], serde_json::json!(6));
    assert_eq!(v["method"], serde_json::json!("spin-sum"));

    let modeled = run(&["surgery-tau4", path, "--method", "model", "--format", "json"], &[]);
    let mv: serde_json::Value = serde_json::from_str(&stdout_of(&modeled)).unwrap();
    assert_eq!(mv["integer"], serde_json::json!(6));
}

#[test]
fn surgery_tau4_product_on_diagonal_matrix() {
    let f = tmp_file("{\"matrix\":[[2,0],[0,2]]}");
    let out = run(
        &["surgery-tau4", f.path().to_str().unwrap(), "--method", "product", "--format", "json"],
        &[],
    );
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    // omega^2 (1 + omega^-2)^2 = 2 + omega^2 - omega^6, three factors evaluated.
    assert_eq!(v["tau4"], serde_json::json!([2, 0, 1, 0, 0, 0, -1, 0]));
    assert_eq!(v["terms"], serde_json::json!(3));
}

#[test]
fn surgery_tau4_rejects_method_and_input_mismatches() {
    let matrix = tmp_file("{\"matrix\":[[0]]}");
    let out = run(&["surgery-tau4", matrix.path().to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("link diagram"), "stderr: {}", err);

    let cross = run(
        &["surgery-tau4", matrix.path().to_str().unwrap(), "--method", "product", "--cross-check"],
        &[],
    );
    assert_eq!(cross.status.code(), Some(2));
}

#[test]
fn enum_bound_env_turns_large_inputs_into_exit_three() {
    let f = tmp_file(&link_json(&borromean()));
    let out = run(
        &["surgery-tau4", f.path().to_str().unwrap()],
        &[("TAU4_ENUM_BOUND", "2")],
    );
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("bound"), "stderr: {}", err);

    let bad = run(
        &["surgery-tau4", f.path().to_str().unwrap()],
        &[("TAU4_ENUM_BOUND", "lots")],
    );
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn surgery_mu_of_plus_one_trefoil() {
    let f = tmp_file(&link_json(&trefoil().with_framings(vec![1]).unwrap()));
    let out = run(&["surgery-mu", f.path().to_str().unwrap(), "--format", "json"], &[]);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    // One component with odd framing: the only characteristic sublink is the
    // whole link, and mu = sigma - 1 + 8 arf = 1 - 1 + 8 = 8.
    assert_eq!(v["count"], serde_json::json!(1));
    assert_eq!(v["sublinks"], serde_json::json!([{"components": [1], "mu": 8}]));
}

#[test]
fn link_invariants_on_known_diagrams() {
    let t = tmp_file(&link_json(&trefoil()));
    let path = t.path().to_str().unwrap();
    assert_eq!(stdout_of(&run(&["link-conway", path], &[])), "conway 1 0 1\n");
    assert_eq!(stdout_of(&run(&["link-arf", path], &[])), "arf 1\n");

    let b = tmp_file(&link_json(&borromean()));
    let brown = run(&["link-brown", b.path().to_str().unwrap(), "--format", "json"], &[]);
    assert_eq!(stdout_of(&brown), "{\"brown\":4}\n");

    let torus24 = tmp_file(&link_json(&PDLink::from_braid(2, &[1, 1, 1, 1]).unwrap()));
    assert_eq!(
        stdout_of(&run(&["link-brown", torus24.path().to_str().unwrap()], &[])),
        "brown 6\n"
    );
}

#[test]
fn enhanced_space_classification_and_brown() {
    // P1: one-dimensional, x.x = 1, enhancement 1.
    let p1 = tmp_file("{\"form\":[[1]],\"values\":[1]}");
    let out = stdout_of(&run(&["enhanced-classify", p1.path().to_str().unwrap()], &[]));
    assert!(out.contains("brown 1\n"), "got: {}", out);
    assert!(out.contains("normal-form P1"), "got: {}", out);

    // A-infinity: totally isotropic with enhancement 2, improper.
    let ainf = tmp_file("{\"form\":[[0]],\"values\":[2]}");
    assert_eq!(
        stdout_of(&run(&["enhanced-brown", ainf.path().to_str().unwrap()], &[])),
        "brown infinity\n"
    );
    let json = run(
        &["enhanced-classify", ainf.path().to_str().unwrap(), "--format", "json"],
        &[],
    );
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&json)).unwrap();
    assert_eq!(v["proper"], serde_json::json!(false));
    assert_eq!(v["brown"], serde_json::json!("infinity"));
    assert_eq!(v["normal_form"]["ainf"], serde_json::json!(1));
}

#[test]
fn count_and_reduce_agree_on_single_clause() {
    let cnf = tmp_file("p cnf 3 1\n1 2 3 0\n");
    let path = cnf.path().to_str().unwrap();
    assert_eq!(stdout_of(&run(&["count", path], &[])), "models 7\n");

    let reduced = run(&["reduce", path, "--verify", "--format", "json"], &[]);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&reduced)).unwrap();
    assert_eq!(v["verify"]["models"], serde_json::json!(7));
    assert_eq!(v["verify"]["holds"], serde_json::json!(true));
    let zeros = v["verify"]["zeros"].as_u64().unwrap();
    let (m, k) = (
        v["verify"]["m"].as_u64().unwrap(),
        v["verify"]["k"].as_u64().unwrap(),
    );
    assert_eq!(2 * zeros, (1 << (m + k)) + 7 * (1 << k));

    let stage = run(&["reduce", path, "--emit", "cubic-system"], &[]);
    assert_eq!(stdout_of(&stage), "vars 3\npolys 1\npoly 1 x1*x2*x3\n");
}

#[test]
fn cubic_tau4_matches_surgery_on_the_realizing_link() {
    // x1 x2 x3 in three variables realizes the zero-framed Borromean rings.
    let cubic = tmp_file("{\"n\":3,\"cubic\":[[1,2,3]]}");
    let out = run(
        &["cubic-tau4", cubic.path().to_str().unwrap(), "--format", "json"],
        &[],
    );
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["integer"], serde_json::json!(6));
    assert_eq!(v["method"], serde_json::json!("counting"));
}

#[test]
fn invalid_inputs_exit_two_with_diagnostics() {
    let cases: Vec<(Vec<&str>, tempfile::NamedTempFile, &str)> = vec![
        (vec!["link-conway"], tmp_file("{\"crossings\":[nope]}"), "JSON"),
        (vec!["surgery-tau4"], tmp_file("{\"matrix\":[[0,1],[2,0]]}"), "symmetric"),
        (vec!["enhanced-brown"], tmp_file("{\"form\":[[1]],\"values\":[0]}"), "e(x)"),
        (vec!["enhanced-brown"], tmp_file("{\"form\":[[1]],\"values\":[7]}"), "value"),
        (
            vec!["surgery-tau4", "--method", "model"],
            tmp_file(
                "{\"components\":2,\"arf\":[0,0],\"lk\":[[0,2],[2,0]],\
                 \"sato_levine\":[{\"i\":1,\"j\":2,\"value\":3}]}",
            ),
            "even",
        ),
    ];
    for (args, file, needle) in cases {
        let mut full = args.clone();
        let path = file.path().to_str().unwrap().to_string();
        full.push(&path);
        let out = run(&full, &[]);
        assert_eq!(
            out.status.code(),
            Some(2),
            "args {:?}: stderr {}",
            args,
            String::from_utf8_lossy(&out.stderr)
        );
        let err = String::from_utf8_lossy(&out.stderr).to_string();
        assert!(err.contains(needle), "args {:?}: stderr {}", args, err);
    }

    let missing = run(&["link-arf", "/nonexistent/input.json"], &[]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_json_is_machine_readable() {
    let f = tmp_file(&link_json(&borromean()));
    let path = f.path().to_str().unwrap();
    for args in [
        vec!["surgery-tau4", path, "--format", "json"],
        vec!["surgery-mu", path, "--format", "json"],
        vec!["surgery-tau4", path, "--cross-check"],
    ] {
        let first = run(&args, &[]);
        let second = run(&args, &[]);
        assert_eq!(first.stdout, second.stdout, "args {:?}", args);
        assert!(first.status.success());
    }

    // The emitted link schema round-trips through the CLI parser.
    let reparsed: serde_json::Value = serde_json::from_str(&link_json(&trefoil())).unwrap();
    assert_eq!(reparsed["framings"], serde_json::json!([0]));
}

#[test]
fn stdin_dash_reads_the_input_stream() {
    use std::process::Stdio;
    let mut child = tau4_bin()
        .args(["count", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"p cnf 3 1\n1 -2 3 0\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "models 7\n");
}
