use std::process::Command;

use reesmod_cli::{parse, run, Options, EXIT_DIAGNOSTICS, EXIT_OK};

fn quiet() -> Options {
    Options {
        timing: false,
        ..Options::default()
    }
}

const PLANE: &str = "ring A = QQ[x,y]; ideal I = (x,y); poly f = x^2;";

#[test]
fn four_statement_script() {
    let (script, diags) = parse(&format!("{PLANE} show proper(I,f);"));
    assert!(diags.is_empty());
    assert_eq!(script.stmts.len(), 4);
}

#[test]
fn worked_examples() {
    let out = run(&format!("{PLANE} show transforms_equal(I, x);"), &quiet());
    assert!(out.stdout.contains("equal: true\n"), "{}", out.stdout);
    assert_eq!(out.exit_code, EXIT_OK);

    let out = run(
        &format!("{PLANE} centre C = ((x,y), x); show member(C, y^2, 2, 20);"),
        &quiet(),
    );
    assert!(
        out.stdout.contains("result: member at N=2\n"),
        "{}",
        out.stdout
    );

    let out = run(&format!("{PLANE} show proper(I, f);"), &quiet());
    assert!(
        out.stdout.contains("ideal: <y*u - x*v, x*u, x^2*v>"),
        "{}",
        out.stdout
    );

    let out = run("", &quiet());
    assert_eq!((out.stdout.as_str(), out.exit_code), ("", EXIT_OK));
}

#[test]
fn stray_comma_is_located() {
    let out = run("ring A = QQ[x,,y];", &quiet());
    assert_eq!(
        out.stdout,
        "error at 1:15: expected a variable name, found `,`\n"
    );
    assert_eq!(out.exit_code, EXIT_DIAGNOSTICS);
}

#[test]
fn bad_statement_does_not_stop_the_script() {
    let src =
        format!("{PLANE} show proper(I, y + 1); poly g = x +; show strict(I, x); show gb(I);");
    let out = run(&src, &quiet());
    assert_eq!(out.exit_code, EXIT_DIAGNOSTICS);
    assert_eq!(out.stdout.matches("error at").count(), 2, "{}", out.stdout);
    assert!(out.stdout.contains("> strict(I, x)"));
    assert!(out.stdout.contains("> gb(I)"));
    // diagnostics appear where their statement is
    let e1 = out.stdout.find("not in the ideal").unwrap();
    let e2 = out.stdout.find("expected an expression").unwrap();
    let s = out.stdout.find("> strict").unwrap();
    assert!(e1 < e2 && e2 < s);
}

#[test]
fn names_are_single_assignment_and_resolved() {
    let out = run(
        "ring A = QQ[x]; poly f = x; poly f = x^2; poly x = 1; show g;",
        &quiet(),
    );
    assert!(out.stdout.contains("`f` is already declared"));
    assert!(out.stdout.contains("`x` is a variable of the current ring"));
    assert!(out.stdout.contains("unknown name `g`"));
}

#[test]
fn kinds_and_arity_are_checked() {
    let out = run(
        &format!("{PLANE} show proper(f); show member(I, x); show rees(I, I, I);"),
        &quiet(),
    );
    assert!(
        out.stdout
            .contains("`f` is a polynomial, expected a centre"),
        "{}",
        out.stdout
    );
    assert!(
        out.stdout.contains("`I` is an ideal, expected a centre"),
        "{}",
        out.stdout
    );
    assert!(out.stdout.contains("got 3 arguments"), "{}", out.stdout);
}

#[test]
fn json_results_keep_key_order() {
    let opts = Options {
        json: true,
        ..Options::default()
    };
    let out = run(&format!("{PLANE} show proper(I, f);"), &opts);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let r = &v["results"][0];
    assert_eq!(r["command"], "proper");
    assert!(r["timing_ms"].is_number());
    let keys = ["\"command\"", "\"inputs\"", "\"result\"", "\"timing_ms\""]
        .map(|k| out.stdout.find(k).unwrap());
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(v["diagnostics"].as_array().unwrap().len(), 0);
}

#[test]
fn field_check_flags_bad_primes() {
    let opts = Options {
        field_check: Some(3),
        ..quiet()
    };
    let out = run("ring A = QQ[x]; show gb((3*x - 1));", &opts);
    assert!(
        out.stdout.contains("field_check: skipped over GF(3)"),
        "{}",
        out.stdout
    );
    assert!(out.stdout.contains("warning at 1:17"), "{}", out.stdout);
    assert_eq!(out.exit_code, EXIT_OK);

    let opts = Options {
        field_check: Some(32003),
        ..quiet()
    };
    let out = run(&format!("{PLANE} show strict(I, f);"), &opts);
    assert!(out.stdout.contains("field_check: agree over GF(32003)"));
}

#[test]
fn binary_exit_codes() {
    let dir = std::env::temp_dir().join(format!("reesmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.rees");
    let bad = dir.join("bad.rees");
    std::fs::write(&good, format!("{PLANE} show proper(I, f);")).unwrap();
    std::fs::write(&bad, "ring A = QQ[x,,y];").unwrap();
    let exe = env!("CARGO_BIN_EXE_reesmod");

    let out = Command::new(exe)
        .args(["run", good.to_str().unwrap(), "--no-timing"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("x*u"));

    let out = Command::new(exe)
        .args(["run", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = Command::new(exe)
        .args([
            "run",
            good.to_str().unwrap(),
            "--json",
            "--field-check",
            "GF(7)",
            "--nmax",
            "5",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"][0]["field_check"]["status"], "agree");

    let out = Command::new(exe)
        .args(["run", good.to_str().unwrap(), "--field-check", "GF(8)"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));
    std::fs::remove_dir_all(&dir).ok();
}
