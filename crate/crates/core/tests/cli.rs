use std::path::PathBuf;

use serde_json::Value;
use trigroup::cli::run;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn trigroup(args: &[&str]) -> Output {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("trigroup").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json(args: &[&str]) -> Value {
    let o = trigroup(args);
    assert_eq!(o.code, 0, "{}", o.err);
    serde_json::from_str(&o.out).unwrap_or_else(|e| panic!("{e}: {}", o.out))
}

#[test]
fn validate_accepts_catalog_diagrams() {
    for name in [
        "d333.json",
        "d244.json",
        "d236.json",
        "z2_d244.json",
        "index3.json",
        "hyperbolic_237.json",
    ] {
        let o = trigroup(&["validate", &data(name)]);
        assert_eq!((o.code, o.out.trim()), (0, "valid"), "{name}: {}", o.err);
    }
}

#[test]
fn validation_failures_exit_2_with_witness() {
    let o = trigroup(&["validate", &data("broken_non_injective.json")]);
    assert_eq!(o.code, 2);
    assert!(o.err.contains("NonInjectiveHom"), "{}", o.err);

    let o = trigroup(&["validate", &data("broken_angle_pi.json")]);
    assert_eq!(o.code, 2);
    assert!(o.err.contains("AnglePi"), "{}", o.err);

    let v = {
        let o = trigroup(&["validate", &data("broken_angle_pi.json"), "--json", "-"]);
        assert_eq!(o.code, 2);
        serde_json::from_str::<Value>(&o.out).unwrap()
    };
    assert_eq!(v["valid"], false);
    assert_eq!(v["issues"][0]["kind"], "AnglePi");
}

#[test]
fn infinite_and_malformed_input_is_rejected() {
    let o = trigroup(&["tits", &data("infinite_thompson.json")]);
    assert_eq!(o.code, 2, "{}", o.err);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"index_set\": [1, 2, 3],\n  \"groups\": {\n").unwrap();
    let o = trigroup(&["angles", bad.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.err.contains("line 4"), "{}", o.err);

    let o = trigroup(&["angles", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.code, 2);

    let o = trigroup(&["no-such-command"]);
    assert_eq!(o.code, 2);
}

#[test]
fn tits_verdicts_as_json() {
    assert_eq!(json(&["tits", &data("d244.json"), "--json", "-"])["verdict"], "small");
    assert_eq!(
        json(&["tits", &data("hyperbolic_237.json"), "--json", "-"])["verdict"],
        "large"
    );
    let v = json(&["tits", &data("index3.json"), "--json", "-"]);
    assert_eq!(v["verdict"], "large");
    assert!(!v["witness"].is_null());
    assert!(v["trace"].as_array().is_some_and(|t| !t.is_empty()));
}

#[test]
fn spherical_input_is_rejected_verdict() {
    let v = json(&["tits", &data("spherical_225.json"), "--json", "-"]);
    assert_eq!(v["verdict"], "rejected");
}

#[test]
fn certify_writes_certificate_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("path.svg");
    let cert = dir.path().join("cert.json");
    let o = trigroup(&[
        "certify",
        &data("d333.json"),
        "--word",
        "1:1,2:1,3:1",
        "--svg",
        svg.to_str().unwrap(),
        "--json",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.err);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(v["conclusion"], "nontrivial");
    assert_eq!(v["labels"], serde_json::json!([1, 2, 3]));

    let o = trigroup(&[
        "certify",
        &data("d333.json"),
        "--word",
        "1:1,2:1,3:1",
        "--infinite-order",
    ]);
    assert_eq!(o.code, 0, "{}", o.err);

    let o = trigroup(&[
        "certify",
        &data("d333.json"),
        "--word",
        "1:1,2:1,3:1",
        "--mode",
        "float",
    ]);
    assert_eq!(o.code, 0, "{}", o.err);
}

#[test]
fn certify_failures() {
    let o = trigroup(&["certify", &data("d333.json"), "--word", "1:1,1:1"]);
    assert_eq!(o.code, 4, "{}", o.err);
    let o = trigroup(&["certify", &data("d333.json"), "--word", "x"]);
    assert_eq!(o.code, 2);
    let o = trigroup(&["certify", &data("hyperbolic_237.json"), "--word", "1:1,2:1,3:1"]);
    assert_eq!(o.code, 2);
}

#[test]
fn shoot_reports_labels() {
    let o = trigroup(&[
        "shoot",
        &data("d333.json"),
        "--start",
        "1/2,1/3",
        "--dir",
        "1,1/3",
        "--max-reflections",
        "3",
    ]);
    assert_eq!(o.code, 0, "{}", o.err);
    assert!(o.out.starts_with("labels [3, 1, 2]"), "{}", o.out);
    let o = trigroup(&["shoot", &data("d333.json"), "--start", "5,5", "--dir", "1,0"]);
    assert_eq!(o.code, 2);
}

#[test]
fn wallpaper_report() {
    let v = json(&["wallpaper", "2,4,4", "--json", "-"]);
    assert_eq!(v["relators_hold"], true);
    assert_eq!(v["stabilizer_orders"], serde_json::json!([4, 8, 8]));
    assert!(v["intersections"].as_array().unwrap().iter().all(|c| c["ok"] == true));
    assert_eq!(trigroup(&["wallpaper", "2,3,7"]).code, 2);
}

#[test]
fn dominate_and_presentation() {
    let o = trigroup(&["dominate", "2", "3", "7"]);
    assert_eq!((o.code, o.out.trim()), (0, "(2,3,7) ≥ (2,3,6)"));
    assert_eq!(trigroup(&["dominate", "2", "2", "2"]).code, 2);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.txt");
    let o = trigroup(&["export-presentation", &data("d244.json"), "-o", path.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.err);
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .lines()
        .any(|l| l.starts_with("gen ")));
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        vec!["witness", "index3.json", "--verify-depth", "2", "--threads", "2"],
        vec!["angles", "d236.json"],
        vec!["tits", "not_generated.json"],
    ] {
        let mut args: Vec<String> = args.into_iter().map(String::from).collect();
        args[1] = data(&args[1]);
        args.extend(["--json".into(), "-".into()]);
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = trigroup(&argv);
        assert_eq!(first.code, 0, "{}", first.err);
        assert_eq!(first.out, trigroup(&argv).out);
    }
}
