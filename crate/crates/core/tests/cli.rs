use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilpotent")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

const CASES: &[&[&str]] = &[
    &["weil", "normalize", "--expr", "Q[x]/(x^2); aug x->0"],
    &["weil", "tensor", "--expr", "Q[x]/(x^2)", "--expr", "Q[y]/(y^3)"],
    &["jet", "derive", "--expr", "x^3", "--at", "2"],
    &["jet", "taylor", "--expr", "1/(1-x)", "--at", "0", "--order", "5"],
    &["micro", "check", "--square", "axis:2,1"],
    &["micro", "battery", "--constraint", "a^2+b^2-1", "--vars", "a,b", "--base", "1,0", "--seed", "7"],
    &["orbifold", "sl2z", "--op", "mobius", "--matrix", "2,1,1,1", "--tau", "i"],
    &["orbifold", "scene", "--builtin", "c4", "--x", "0,0"],
    &["orbifold", "torus", "--op", "fixed-points", "--matrix", "[[-1,0],[0,-1]]"],
    &["orbifold", "cycle", "--n", "4", "--set", "0,2"],
];

#[test]
fn out_file_matches_stdout_bytes() {
    let dir = tempfile::tempdir().unwrap();
    for (k, case) in CASES.iter().enumerate() {
        let plain = run(case);
        let path = dir.path().join(format!("r{k}.json"));
        let mut args = case.to_vec();
        let p = path.to_str().unwrap();
        args.extend(["--out", p]);
        let filed = run(&args);
        assert!(filed.stdout.is_empty(), "{case:?}: --out also wrote to stdout");
        assert_eq!(filed.status.code(), plain.status.code());
        assert_eq!(std::fs::read(&path).unwrap(), plain.stdout, "{case:?}");
    }
}

#[test]
fn reports_are_deterministic() {
    for case in CASES {
        let (a, b) = (run(case), run(case));
        assert_eq!(a.stdout, b.stdout, "{case:?}");
        assert!(a.stdout.ends_with(b"\n"));
    }
}

#[test]
fn report_shape_and_exit_codes() {
    let ok = run(&["jet", "derive", "--expr", "x^3", "--at", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    let r = report(&ok);
    assert_eq!(r["verb"], "jet.derive");
    assert_eq!(r["status"], "pass");
    assert_eq!(r["exit_code"], 0);
    assert_eq!(r["result"]["derivative"], "12");
    assert!(r.get("error").is_none());

    let fail = run(&["micro", "check", "--square", "tensor-cross"]);
    assert_eq!(fail.status.code(), Some(1));
    let r = report(&fail);
    assert_eq!(r["status"], "fail");
    assert_eq!(r["certificates"][0]["witness"]["kind"], "kernel");

    let usage = run(&["weil", "normalize", "--bogus"]);
    assert_eq!(usage.status.code(), Some(2));
    let r = report(&usage);
    assert_eq!(r["status"], "usage_error");
    assert_eq!(r["error"]["name"], "UsageError");
    assert!(r["error"]["synopsis"].as_str().unwrap().starts_with("Usage:"));
}

#[test]
fn kernel_errors_keep_their_names() {
    let cases: &[(&[&str], &str)] = &[
        (&["weil", "normalize", "--expr", "Q[x]/(x^2 - x)"], "NotWeil"),
        (&["weil", "normalize", "--expr", "Q[x]/(x^2"], "SyntaxError"),
        (&["weil", "normalize", "--expr", "Q[x]/(y^2)"], "UndeclaredGenerator"),
        (&["jet", "derive", "--expr", "1/x", "--at", "0"], "DivisionByInfinitesimal"),
        (&["jet", "derive", "--expr", "exp(x)", "--at", "0"], "ExactModeUnsupportedPrimitive"),
        (&["jet", "derive", "--expr", "frob(x)", "--at", "0"], "UnknownPrimitive"),
        (&["jet", "tangent", "--constraint", "a^2+b^2-1", "--vars", "a,b", "--at", "1,1"], "PointNotOnLocus"),
        (&["micro", "battery", "--constraint", "y-x^2", "--base", "0,0", "--square", "mismatch"], "SquareNotRPushout"),
        (&["orbifold", "sl2z", "--op", "mobius", "--matrix", "2,0,0,1", "--tau", "i"], "DeterminantNotOne"),
        (&["orbifold", "sl2z", "--op", "mobius", "--matrix", "1,0,0,1", "--tau", "-i"], "NotInUpperHalfPlane"),
        (&["orbifold", "sl2z", "--op", "basis-change", "--from", "1,i", "--to", "1,1/2i"], "NotSameLattice"),
        (&["orbifold", "sl2z", "--op", "basis-change", "--from", "1,i", "--to", "i,1"], "OrientationMismatch"),
        (&["orbifold", "sl2z", "--op", "lattice-equal", "--from", "1,2", "--to", "1,i"], "DegenerateBasis"),
        (&["orbifold", "scene", "--builtin", "c4", "--x", "1,2,3"], "PointNotInCarrier"),
        (
            &["fin", "assoc", "--op", "verify", "--expr", r#"[{"left":["a","b","c"],"right":2,"pairs":[["a",0],["b",1]]}]"#],
            "InvariantViolation",
        ),
    ];
    for (args, name) in cases {
        let out = run(args);
        let r = report(&out);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {r}");
        assert_eq!(r["status"], "error");
        assert_eq!(r["error"]["name"], *name, "{args:?}: {r}");
    }
}

#[test]
fn malformed_input_never_panics() {
    let junk: &[&[&str]] = &[
        &["weil", "normalize", "--expr", ""],
        &["weil", "normalize", "--expr", "Q[x]/(x^2); aug x->"],
        &["weil", "normalize", "--expr", "Q[x]/(x^99999999999)"],
        &["jet", "derive", "--expr", "((((x", "--at", "1"],
        &["jet", "derive", "--expr", "x", "--at", "1/0"],
        &["jet", "partial", "--expr", "x*y", "--at", "1", "--orders", "1,1"],
        &["orbifold", "torus", "--op", "fixed-points", "--matrix", "[[1,2],[3]]"],
        &["orbifold", "torus", "--op", "fixed-points", "--matrix", "[[-1]]", "--d", "0"],
        &["orbifold", "cycle", "--n", "0"],
        &["fin", "assoc", "--op", "compose", "--expr", "not json"],
        &["spec", "validate", "--input", "/nonexistent/point.json"],
    ];
    for args in junk {
        let out = run(args);
        let code = out.status.code();
        assert!(matches!(code, Some(1) | Some(2)), "{args:?}: exit {code:?}");
        let r = report(&out);
        assert!(r["error"]["name"].is_string(), "{args:?}");
        assert!(!String::from_utf8_lossy(&out.stderr).contains("panicked"), "{args:?}");
    }
}
