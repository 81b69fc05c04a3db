use std::path::Path;
use std::process::{Command, Output};

use planar_dunkl::scalar::{rat, Rational, ScalarText};
use planar_dunkl_cli::{
    constants_from_csv, constants_table, constants_to_csv, harmonics_from_csv, harmonics_table, harmonics_to_csv,
    specialize_text, validate_harmonics, ConstantsTable, HarmonicEntry, HarmonicsTable, KappaArg, RunConfig,
};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planar-dunkl"))
        .args(args)
        .env_remove("PLANAR_DUNKL_MAX_DEGREE")
        .output()
        .expect("run binary")
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

fn cfg(n_vars: usize, kappa: KappaArg, max_degree: u32) -> RunConfig {
    RunConfig { n_vars, kappa, max_degree, perturb: None }
}

#[test]
fn harmonics_degree_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.json");
    let o = bin(&["harmonics", "--n-vars", "3", "--max-degree", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t: HarmonicsTable = serde_json::from_str(&read(&out)).unwrap();
    assert_eq!(t.entries.len(), 3);
    let HarmonicEntry::Ok(h1m) = &t.entries[2] else { panic!("h_1^- missing") };
    assert_eq!(h1m.basis.len(), 1);
    assert_eq!(h1m.basis[0].j, 0);
    assert_eq!(h1m.basis[0].coeff, "1 | 1");
    validate_harmonics(&t).unwrap();
}

#[test]
fn symbolic_coefficients_are_field_strings() {
    let t = harmonics_table(&cfg(3, KappaArg::Symbolic, 3)).unwrap();
    let text = serde_json::to_string(&t).unwrap();
    assert!(text.contains('k'), "expected kappa in symbolic output");
    for e in &t.entries {
        let HarmonicEntry::Ok(h) = e else { panic!("unexpected failure") };
        for b in &h.basis {
            planar_dunkl::KappaScalar::parse_text(&b.coeff).unwrap();
        }
    }
}

#[test]
fn pole_is_reported_per_entry() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.json");
    let o = bin(&["harmonics", "--kappa", "-7/3", "--max-degree", "8", "--out", out.to_str().unwrap()]);
    // the run completes, writes every entry, and signals the failure
    assert_eq!(o.status.code(), Some(1));
    let t: HarmonicsTable = serde_json::from_str(&read(&out)).unwrap();
    assert_eq!(t.entries.len(), 17);
    let failed: Vec<(u32, String)> = t
        .entries
        .iter()
        .filter_map(|e| match e {
            HarmonicEntry::Failed { n, sign, error } => {
                assert!(error.contains("pole"), "{error}");
                Some((*n, sign.to_string()))
            }
            _ => None,
        })
        .collect();
    assert!(failed.contains(&(7, "-".to_string())), "{failed:?}");
    assert!(t.entries.iter().take(13).all(|e| matches!(e, HarmonicEntry::Ok(_))));
    validate_harmonics(&t).unwrap();
}

#[test]
fn decimal_kappa_is_rejected() {
    let o = bin(&["harmonics", "--kappa", "0.5"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("exact rational"));
}

#[test]
fn default_verify_passes() {
    let o = bin(&["verify", "--max-degree", "4"]);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(o.status.success(), "{stdout}");
    assert!(stdout.lines().any(|l| l.starts_with("PASS harmonicity")));
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn perturbed_g_fails_harmonicity() {
    let o = bin(&["verify", "--suite", "harmonicity", "--max-degree", "5", "--perturb-g", "o:2:1"]);
    assert_eq!(o.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.lines().any(|l| l.starts_with("FAIL harmonicity")), "{stdout}");
}

#[test]
fn suite_selector_runs_only_that_suite() {
    let o = bin(&["verify", "--suite", "genfunS", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = v.as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["suite"] == "genfunS"));
}

#[test]
fn unknown_suite_is_an_error() {
    let o = bin(&["verify", "--suite", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for (cmd, fmt) in [("harmonics", "json"), ("harmonics", "csv"), ("constants", "csv"), ("verify", "text")] {
        let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("{cmd}-{fmt}-{i}"))).collect();
        for p in &paths {
            let o = bin(&[cmd, "--max-degree", "4", "--format", fmt, "--out", p.to_str().unwrap()]);
            assert!(o.status.success());
        }
        assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap(), "{cmd} {fmt}");
    }
}

#[test]
fn env_var_sets_default_degree_and_flag_wins() {
    let run = |env: &str, args: &[&str]| {
        let o = Command::new(env!("CARGO_BIN_EXE_planar-dunkl"))
            .args(args)
            .env("PLANAR_DUNKL_MAX_DEGREE", env)
            .output()
            .unwrap();
        let t: HarmonicsTable = serde_json::from_slice(&o.stdout).unwrap();
        t.entries.len()
    };
    assert_eq!(run("2", &["harmonics"]), 5);
    assert_eq!(run("2", &["harmonics", "--max-degree", "1"]), 3);
}

#[test]
fn harmonics_json_and_csv_round_trip() {
    for kappa in [KappaArg::Symbolic, KappaArg::Value(rat(-7, 3))] {
        let t = harmonics_table(&cfg(3, kappa, 8)).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<HarmonicsTable>(&json).unwrap(), t);
        let csv = harmonics_to_csv(&t).unwrap();
        assert_eq!(harmonics_from_csv(&csv).unwrap(), t);
    }
}

#[test]
fn constants_json_and_csv_round_trip() {
    let t = constants_table(&cfg(4, KappaArg::Symbolic, 5)).unwrap();
    let json = serde_json::to_string(&t).unwrap();
    assert_eq!(serde_json::from_str::<ConstantsTable>(&json).unwrap(), t);
    let csv = constants_to_csv(&t).unwrap();
    assert_eq!(constants_from_csv(&csv, "symbolic").unwrap(), t);
}

#[test]
fn constants_degree_zero_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.csv");
    let o = bin(&["constants", "--max-degree", "2", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let t = constants_from_csv(&read(&out), "symbolic").unwrap();
    let r = &t.rows[0];
    assert_eq!((r.n, r.sign.to_string().as_str()), (0, "+"));
    let one = Rational::from_integer(1.into());
    for text in [&r.norm_kappa, &r.sphere_factor, &r.norm_sphere] {
        assert_eq!(specialize_text(text, "symbolic", &rat(5, 7)).unwrap(), one);
    }
}

#[test]
fn symbolic_rows_specialize_to_numeric_rows() {
    let sym = constants_table(&cfg(3, KappaArg::Symbolic, 5)).unwrap();
    let at_one = constants_table(&cfg(3, KappaArg::Value(rat(1, 1)), 5)).unwrap();
    assert_eq!(sym.rows.len(), at_one.rows.len());
    for (a, b) in sym.rows.iter().zip(&at_one.rows) {
        for (x, y) in [
            (&a.norm_kappa, &b.norm_kappa),
            (&a.sphere_factor, &b.sphere_factor),
            (&a.norm_sphere, &b.norm_sphere),
        ] {
            let one = rat(1, 1);
            assert_eq!(
                specialize_text(x, "symbolic", &one).unwrap(),
                specialize_text(y, "1", &one).unwrap(),
                "n={} {}",
                a.n,
                a.sign
            );
        }
    }
}
