use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> (String, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_phinmod"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

fn parse(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn certificate_golden() {
    let (out, code) = run(&["--p", "2", "--cmd", "gl3-certificate"], r#"{"phi": [[1,0,0],[0,2,0],[0,0,2]]}"#);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"in_x_reg\":false,\"preimages\":\"P1\",\"verdict\":\"SINGULAR\"}\n");

    let (out, code) = run(&["--p", "3", "--cmd", "gl3-certificate"], r#"{"phi": [[1,0,0],[0,3,0],[0,0,9]]}"#);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"in_x_reg\":true,\"preimages\":2,\"verdict\":\"SINGULAR\"}\n");
}

#[test]
fn kernel_and_complex_goldens() {
    let (out, code) = run(&["--p", "2", "--cmd", "kernel"], r#"{"phi": [[1,0],[0,2]]}"#);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["basis"], serde_json::json!([[[[["0", "0"], ["1/1", "0"]], [["0", "0"], ["0", "0"]]]]]));

    let (out, code) = run(
        &["--p", "2", "--cmd", "complex-dims"],
        r#"{"phi": [[1,0,0],[0,2,0],[0,0,2]], "nil": [[0,0,0],[0,0,0],[0,0,0]]}"#,
    );
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!((v["h2"].as_u64(), v["tangent_dim"].as_u64()), (Some(2), Some(11)));
}

#[test]
fn output_is_deterministic() {
    let input = r#"[{"nil": [[0,1,0],[0,0,1],[0,0,0]]}, {"nil": [[0,1,0],[0,0,0],[0,0,0]]}, {"nil": [[0,0],[0,0]]}]"#;
    let args = ["--p", "3", "--f", "2", "--cmd", "canonical-point", "--batch"];
    let (first, code) = run(&args, input);
    assert_eq!(code, 0);
    for _ in 0..3 {
        assert_eq!(run(&args, input).0, first);
    }
    assert_eq!(parse(&first).as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    // relation violated
    let (out, code) = run(&["--cmd", "validate"], r#"{"phi": [[1,0],[0,1]], "nil": [[0,1],[0,0]]}"#);
    assert_eq!(code, 1);
    assert_eq!(parse(&out)["error"]["kind"], "relation_violated");
    // malformed JSON
    assert_eq!(run(&["--cmd", "kernel"], "{").1, 1);
    // p not prime
    assert_eq!(run(&["--p", "4", "--cmd", "kernel"], "{}").1, 1);
    // unknown command
    assert_eq!(run(&["--cmd", "frobnicate"], "{}").1, 1);
    // subregular fibers need f = 1
    let input = r#"{"phi": [[[1,0,0],[0,2,0],[0,0,4]], [[1,0,0],[0,1,0],[0,0,1]]]}"#;
    assert_eq!(run(&["--f", "2", "--cmd", "gl3-sub-fiber"], input).1, 2);
}

#[test]
fn batch_reports_worst_code_in_order() {
    let input = r#"[{"phi": [[1,0],[0,2]]}, {"phi": [[0,0],[0,0]]}, {"phi": [[1,0],[0,1]]}]"#;
    let (out, code) = run(&["--p", "2", "--cmd", "gl2-report", "--batch"], input);
    assert_eq!(code, 1);
    let v = parse(&out);
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 3);
    assert_eq!(items[0]["on_divisor"], true);
    assert_eq!(items[1]["error"]["kind"], "singular");
    assert_eq!(items[2]["on_divisor"], false);
}

#[test]
fn files_in_and_out() {
    let dir = std::env::temp_dir().join(format!("phinmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.json");
    let output = dir.join("out.json");
    std::fs::write(&input, r#"{"nil": [[0,1,0],[0,0,0],[0,0,0]]}"#).unwrap();
    let (stdout, code) = run(
        &["--cmd", "jordan-type", "--in", input.to_str().unwrap(), "--out", output.to_str().unwrap()],
        "",
    );
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&output).unwrap(), "{\"partition\":[2,1]}\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_passes() {
    let (out, code) = run(&["--cmd", "selftest"], "");
    assert_eq!(code, 0, "{out}");
    assert_eq!(parse(&out)["failed"], 0);
}
