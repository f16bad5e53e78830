//! The `fraclap` command line, driven in-process.

use fraclap::ballsolve::SpectralExpansion;
use fraclap::cli::run;
use serde_json::Value;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn fraclap(args: &str) -> Out {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("fraclap").chain(args.split_whitespace());
    let code = run(argv, &mut out, &mut err);
    Out {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn ok(args: &str) -> String {
    let o = fraclap(args);
    assert_eq!(o.code, 0, "{args}: {}", o.stderr);
    o.stdout
}

fn csv_rows(s: &str) -> Vec<Vec<String>> {
    s.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn transform_formats() {
    let args = "transform --d 1 --alpha 1 --kernel ball --rho 0 --sigma 1/2";
    let json: Value = serde_json::from_str(&ok(&format!("{args} --format json"))).unwrap();
    assert_eq!(json["operator"], "fractional-laplacian");
    assert_eq!(json["class"], "B");
    assert_eq!(json["validity"], "|x| != 1");
    let text = ok(&format!("{args} --format text"));
    assert!(text.contains("G^{1,1}_{2,2}"), "{text}");
    // negative order: Riesz potential of the full-space kernel
    let riesz: Value = serde_json::from_str(&ok("transform --d 3 --alpha -1 --kernel full --rho 0 --sigma -2")).unwrap();
    assert_eq!(riesz["operator"], "riesz-potential");
}

#[test]
fn output_is_deterministic() {
    for args in [
        "transform --d 2 --l 1 --alpha 3/4 --kernel 2f1 --rho 1/3 --sigma 1/5",
        "eval --d 1 --alpha 1 --kernel full --rho 0 --sigma -1 --points 0,0.5,2 --format csv",
        "verify --case cauchy",
        "solve --d 2 --alpha 1/2 --lmax 1 --nmax 4",
    ] {
        assert_eq!(ok(args), ok(args), "{args}");
    }
}

#[test]
fn eval_matches_closed_forms() {
    let rows = csv_rows(&ok("eval --d 1 --alpha 1 --kernel full --rho 0 --sigma -1 --points 0,0.5,2 --format csv"));
    for (row, x) in rows.iter().zip([0.0f64, 0.5, 2.0]) {
        let v: f64 = row[1].parse().unwrap();
        assert!((v - (1.0 - x * x) / (1.0 + x * x).powi(2)).abs() < 1e-10);
        assert_eq!(row[3], "true");
    }
    // without --alpha the G-function itself is evaluated
    let g = r#"{"m":1,"n":0,"p":0,"q":1,"a":[],"b":["0"]}"#;
    let v: f64 = csv_rows(&ok(&format!("eval --g {g} --points 1 --format csv")))[0][1].parse().unwrap();
    assert!((v - (-1f64).exp()).abs() < 1e-12);
}

#[test]
fn eigen_table() {
    let rows = csv_rows(&ok("table --eigen --d 1 --alpha 1 --nmax 2"));
    let exact: Vec<&str> = rows.iter().map(|r| r[3].as_str()).collect();
    assert_eq!(exact, ["1", "3", "5"]);
    let json: Value = serde_json::from_str(&ok("table --eigen --d 2 --alpha 1/2 --lmax 1 --nmax 1 --format json")).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 4);
}

#[test]
fn verify_cases_pass() {
    for args in [
        "verify --case getoor --d 1 --alpha 1 --points 0.2,0.5,0.8",
        "verify --case getoor --d 2 --alpha 3/2 --points 0.3:0.4",
        "verify --case cosine --alpha 5/2",
        "verify --case cauchy",
        "verify --case green-harmonic",
        "verify --case eigen --l 1 --nmax 2",
        "verify --case semigroup --points 0.5",
    ] {
        let out = ok(args);
        let rows = csv_rows(&out);
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r.last().unwrap() == "pass"), "{args}\n{out}");
    }
}

#[test]
fn solve_round_trips() {
    let json: Value = serde_json::from_str(&ok("solve --d 1 --alpha 1 --nmax 8 --points 0,0.5")).unwrap();
    let e = SpectralExpansion::from_json(&json).unwrap();
    // g = 1 is solved by a multiple of the first basis function
    assert!(e.coeff(0, 1, 0).abs() > 0.1);
    assert!(e.terms.iter().filter(|(i, _)| (i.l, i.n) != (0, 0)).all(|(_, c)| c.abs() < 1e-10));
    let wu = json["values"][1]["wu"].as_f64().unwrap();
    assert!((wu - 0.75f64.sqrt()).abs() < 1e-10, "{wu}");
    let csv = ok("solve --d 1 --alpha 1 --nmax 2 --format csv");
    assert!(csv.starts_with("l,m,n,coeff,lambda\n"));
}

#[test]
fn exit_codes() {
    // sigma = 0 is degenerate for the ball kernel
    let o = fraclap("transform --d 1 --alpha 1 --kernel full --rho 1/2 --sigma 0");
    assert_eq!(o.code, 2, "{}", o.stderr);
    assert!(o.stderr.starts_with("error:"));
    // Riesz order beyond the dimension
    assert_eq!(fraclap("transform --d 1 --alpha -3/2 --kernel full --sigma -1").code, 2);
    assert_eq!(fraclap("transform --d 1 --kernel full").code, 2);
    assert_eq!(fraclap("verify --case getoor --points 0.1:0.2").code, 2);
    assert_eq!(fraclap("frobnicate").code, 2);
    assert_eq!(fraclap("--help").code, 0);
    // an unattainably tight threshold fails the comparison
    let o = fraclap("verify --case green-harmonic --tol 1e-15");
    assert_eq!(o.code, 3);
    assert!(o.stdout.contains(",fail"));
}
