use p1::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("p1").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    assert_eq!(call(args).1, out, "{args:?} not deterministic");
    out.trim_end().to_string()
}

#[test]
fn hom_examples() {
    assert_eq!(
        ok(&["hom", "--field", "2", "O(0)", "O(1)"]),
        r#"{"dims":{"0":2}}"#
    );
    assert_eq!(
        ok(&["hom", "--field", "2", "O(1)", "O(0)"]),
        r#"{"dims":{}}"#
    );
    assert_eq!(
        ok(&["hom", "--field", "2", "T([t],2)", "T([t],3)"]),
        r#"{"dims":{"0":2,"1":2}}"#
    );
    assert_eq!(
        ok(&["hom", "--field", "2", "T([t],1)", "O(0)"]),
        r#"{"dims":{"1":1}}"#
    );
    assert_eq!(
        ok(&["hom", "--field", "Q", "T([t^2-2],1)", "O(0)"]),
        r#"{"dims":{"1":2}}"#
    );
    assert_eq!(
        ok(&["oracle", "--field", "2", "hom", "O(1)", "O(0)"]),
        r#"{"dims":{}}"#
    );
    assert_eq!(
        ok(&["oracle", "--field", "3", "hom", "O(0)", "O(1)"]),
        r#"{"dims":{"0":2}}"#
    );
}

#[test]
fn tensor_and_support_examples() {
    let obj = |s: &str| ok(&["tensor", "--field", "2", "O(0)", s]);
    assert_eq!(
        ok(&["tensor", "--field", "2", "O(2)", "O(3)"]),
        r#"{"object":"O(5)","summands":[{"shift":0,"sheaf":"O(5)","mult":1}]}"#
    );
    assert_eq!(
        ok(&["tensor", "--field", "2", "T([t],1)", "T([t+1],1)"]),
        r#"{"object":"","summands":[]}"#
    );
    let self_tor = r#"{"object":"T([t],2) (+) s^1 T([t],2)","summands":[{"shift":0,"sheaf":"T([t],2)","mult":1},{"shift":1,"sheaf":"T([t],2)","mult":1}]}"#;
    assert_eq!(
        ok(&["tensor", "--field", "2", "T([t],2)", "T([t],3)"]),
        self_tor
    );
    let koszul = ok(&["oracle", "--field", "2", "tensor", "T([t],1)", "T([t],1)"]);
    assert!(
        koszul.starts_with(r#"{"object":"T([t],1) (+) s^1 T([t],1)""#),
        "{koszul}"
    );
    assert_eq!(
        obj("T(inf,2)"),
        ok(&["tensor", "--field", "2", "T(inf,2)", "O(0)"])
    );
    assert_eq!(
        ok(&["support", "--field", "2", "O(4)"]),
        r#"{"kind":"cofinite","points":[],"eta":true}"#
    );
    assert_eq!(
        ok(&["support", "--field", "2", "T([t],3)"]),
        r#"{"kind":"finite","points":[{"poly":"t"}],"eta":false}"#
    );
    assert_eq!(
        ok(&["support", "--field", "2", ""]),
        r#"{"kind":"finite","points":[],"eta":false}"#
    );
}

#[test]
fn tilting_examples() {
    assert_eq!(
        ok(&["tilt", "--field", "2", "O(0)"]),
        r#"{"object":"P(0)","summands":[{"shift":0,"module":"P(0)","mult":1}]}"#
    );
    assert_eq!(
        ok(&["tilt", "--field", "2", "O(-1)"]),
        r#"{"object":"s^-1 I(0)","summands":[{"shift":-1,"module":"I(0)","mult":1}]}"#
    );
    assert_eq!(
        ok(&["tilt", "--field", "3", "T([t^2+1],2)"]),
        r#"{"object":"R([t^2+1],2)","summands":[{"shift":0,"module":"R([t^2+1],2)","mult":1}]}"#
    );
    assert_eq!(
        ok(&["untilt", "--field", "2", "P(3)"]),
        r#"{"object":"O(3)","summands":[{"shift":0,"sheaf":"O(3)","mult":1}]}"#
    );
    assert_eq!(
        ok(&["untilt", "--field", "2", "I(1)"]),
        r#"{"object":"s^1 O(-2)","summands":[{"shift":1,"sheaf":"O(-2)","mult":1}]}"#
    );
    assert_eq!(
        ok(&["untilt", "--field", "2", ""]),
        r#"{"object":"","summands":[]}"#
    );
}

#[test]
fn decompose_examples() {
    let rep = |f: &str, ds: usize, dt: usize, a: &str, b: &str| {
        format!(r#"{{"field":"{f}","d_src":{ds},"d_tgt":{dt},"A":{a},"B":{b}}}"#)
    };
    assert_eq!(
        ok(&["decompose", "--field", "5", &rep("F5", 0, 0, "[]", "[]")]),
        r#"{"summands":[]}"#
    );
    assert_eq!(
        ok(&[
            "decompose",
            "--field",
            "2",
            &rep("F2", 1, 1, r#"[["1"]]"#, r#"[["1"]]"#)
        ]),
        r#"{"summands":[{"type":"regular","point":{"poly":"t+1"},"length":1,"mult":1}]}"#
    );
    let preproj = rep("F5", 1, 2, r#"[["1"],["0"]]"#, r#"[["0"],["1"]]"#);
    assert_eq!(
        ok(&["decompose", "--field", "5", &preproj]),
        r#"{"summands":[{"type":"preproj","n":1,"mult":1}]}"#
    );
    let checked = ok(&[
        "decompose",
        "--field",
        "5",
        "--verify",
        "--seed",
        "3",
        &preproj,
    ]);
    assert!(checked.ends_with(r#""verified":true}"#), "{checked}");

    let path = std::env::temp_dir().join(format!("p1-cli-rep-{}.json", std::process::id()));
    std::fs::write(&path, &preproj).unwrap();
    assert_eq!(
        ok(&["decompose", "--field", "5", path.to_str().unwrap()]),
        r#"{"summands":[{"type":"preproj","n":1,"mult":1}]}"#
    );
    std::fs::remove_file(&path).unwrap();
    assert_eq!(call(&["decompose", "--field", "2", &preproj]).0, 1);
}

#[test]
fn class_examples() {
    let full =
        r#"{"kind":"ideal","points":{"kind":"cofinite","points":[],"eta":true},"note":"Full"}"#;
    let zero =
        r#"{"kind":"ideal","points":{"kind":"finite","points":[],"eta":false},"note":"Zero"}"#;
    assert_eq!(ok(&["classify", "--field", "3", "O(1)", "O(3)"]), full);
    assert_eq!(
        ok(&["classify", "--field", "2", "O(2)"]),
        r#"{"kind":"twist","i":2}"#
    );
    assert_eq!(
        ok(&["classify", "--field", "2", "T([t],1)"]),
        r#"{"kind":"ideal","points":{"kind":"finite","points":[{"poly":"t"}],"eta":false}}"#
    );
    assert_eq!(
        ok(&["classify", "--field", "2", "PI:Generic"]),
        r#"{"kind":"ideal","points":{"kind":"finite","points":[],"eta":true}}"#
    );
    assert_eq!(
        ok(&["classify", "--field", "2", "PI:Adic([t])"]),
        r#"{"kind":"ideal","points":{"kind":"finite","points":[{"poly":"t"}],"eta":true}}"#
    );
    assert_eq!(
        ok(&["classify", "--field", "2", "PI:O(5)"]),
        r#"{"kind":"twist","i":5}"#
    );
    assert_eq!(ok(&["classify", "--field", "2"]), zero);
    assert_eq!(
        ok(&["lattice", "--field", "2", "meet", "Twist(3)", "Twist(4)"]),
        zero
    );
    assert_eq!(
        ok(&["lattice", "--field", "2", "join", "Twist(1)", "Ideal{}+eta"]),
        full
    );
    assert_eq!(
        ok(&[
            "lattice",
            "--field",
            "2",
            "join",
            "Ideal{[t]}",
            "Ideal{inf}+eta"
        ]),
        r#"{"kind":"ideal","points":{"kind":"finite","points":[{"inf":true},{"poly":"t"}],"eta":true}}"#
    );
    assert_eq!(
        ok(&["lattice", "--field", "2", "meet", "Twist(2)", "Full"]),
        r#"{"kind":"twist","i":2}"#
    );
}

#[test]
fn perp_examples() {
    assert_eq!(
        ok(&["perp", "right", "--field", "2", "--class", "Twist(4)"]),
        concat!(
            r#"{"line_bundles":[3],"torsion_at":{"kind":"finite","points":[]},"#,
            r#""prufer_at":{"kind":"finite","points":[]},"adic_at":{"kind":"finite","points":[]},"generic":false}"#
        )
    );
    assert_eq!(
        ok(&["perp", "right", "--field", "2", "--class", "Ideal{}+eta"]),
        concat!(
            r#"{"line_bundles":[],"torsion_at":{"kind":"cofinite","points":[]},"#,
            r#""prufer_at":{"kind":"finite","points":[]},"adic_at":{"kind":"cofinite","points":[]},"generic":false}"#
        )
    );
    assert_eq!(
        ok(&[
            "perp",
            "left",
            "--field",
            "2",
            "--family",
            r#"{"line_bundles":[-1]}"#
        ]),
        r#"{"kind":"twist","i":0}"#
    );
    assert_eq!(
        ok(&[
            "perp",
            "left",
            "--field",
            "2",
            "--family",
            r#"{"generic":true}"#
        ]),
        r#"{"kind":"ideal","points":{"kind":"cofinite","points":[],"eta":false}}"#
    );
    assert_eq!(
        ok(&["perp", "left", "--field", "2", "--family", "{}"]),
        r#"{"kind":"ideal","points":{"kind":"cofinite","points":[],"eta":true},"note":"Full"}"#
    );
}

#[test]
fn hasse_examples() {
    let dot = ok(&[
        "hasse",
        "--field",
        "2",
        "--max-degree",
        "1",
        "--twist-min",
        "0",
        "--twist-max",
        "1",
    ]);
    assert!(
        dot.starts_with("digraph lattice {\n  rankdir=BT;\n  n0 [label=\"Zero\"];"),
        "{dot}"
    );
    assert_eq!(dot.matches("[label=").count(), 18);
    assert_eq!(dot.matches(" -> ").count(), 4 * 8 + 2 * 2);
    let cube = ok(&["hasse", "--field", "3", "--emit", "json"]);
    let v: serde_json::Value = serde_json::from_str(&cube).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 32);
    assert_eq!(v["edges"].as_array().unwrap().len(), 5 * 16);
    assert_eq!(call(&["hasse", "--field", "Q"]).0, 1);
}

#[test]
fn errors_and_usage() {
    let (code, _, err) = call(&["hom", "--field", "2", "T([t^2+1],1)", "O(0)"]);
    assert_eq!(code, 1);
    assert!(
        err.contains("reducible") && err.contains("(t+1)^2"),
        "{err}"
    );
    let (code, _, err) = call(&["hom", "--field", "2", "O(1) (+) Q(2)", "O(0)"]);
    assert_eq!(code, 1);
    assert!(err.contains("position 9"), "{err}");
    assert_eq!(call(&["hom", "--field", "6", "O(0)", "O(0)"]).0, 1);
    assert_eq!(
        call(&["lattice", "--field", "2", "xor", "Zero", "Full"]).0,
        2
    );
    assert_eq!(call(&["hom", "O(0)", "O(1)"]).0, 2);
    let (code, out, err) = call(&["transmogrify"]);
    assert_eq!((code, out.is_empty()), (2, true));
    assert!(err.contains("Usage"), "{err}");
    assert_eq!(
        call(&["decompose", "--field", "2", "/nonexistent/rep.json"]).0,
        1
    );
}
