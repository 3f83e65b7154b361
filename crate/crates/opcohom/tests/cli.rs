use std::path::PathBuf;

use opcohom::cli::{run, EXIT_CAP, EXIT_MALFORMED, EXIT_OK, EXIT_PROPERTY};
use opcohom::doc::{self, ClassificationDoc, Cochain3Doc, CohomologousDoc, ErrorDoc, FactorSetDoc, H3Doc, ReportDoc, StrictifyDoc};
use proptest::prelude::*;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn exec(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["opcohom".to_string()];
    argv.extend(args.iter().map(|a| if a.ends_with(".json") { fixture(a) } else { a.to_string() }));
    let mut out = Vec::new();
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

/// (arguments, exit code, text the output must contain)
const CASES: &[(&[&str], i32, &str)] = &[
    (&["h3", "z2_gamma_trivial.json", "--method", "enum"], EXIT_OK, "H3 order: 2"),
    (&["h3", "z2_gamma_trivial.json"], EXIT_OK, "H3 order: 2"),
    (&["h3", "z2_cubed.json"], EXIT_OK, "H3 order: 8"),
    (&["h3", "z2_cubed.json", "--method", "enum"], EXIT_OK, "invariant factors: [2, 2, 2]"),
    (&["h3", "negation.json"], EXIT_OK, "H3 order"),
    (&["h3", "z3_cubed.json", "--method", "enum", "--cap", "10"], EXIT_CAP, "cap_exceeded"),
    (&["cocycle-check", "z2_cubed.json", "zero_cochain_222.json"], EXIT_OK, "theta_cocycle"),
    (&["cocycle-check", "z2_cubed.json", "theta_cochain_222.json"], EXIT_OK, "0 failed"),
    (&["cocycle-check", "negation.json", "twisted_cochain_222.json"], EXIT_PROPERTY, "FAIL"),
    (&["factorset-build", "z2_cubed.json", "theta_cochain_222.json"], EXIT_OK, "factor set"),
    (&["factorset-build", "z2_cubed.json", "twisted_cochain_222.json"], EXIT_OK, "factor set"),
    (&["factorset-induce", "fs_222_theta.json"], EXIT_OK, "h_pgg"),
    (&["factorset-induce", "fs_222_unit.json"], EXIT_PROPERTY, "not_enough_strict"),
    (&["factorset-induce", "fs_corrupt_theta.json"], EXIT_PROPERTY, "theta_cocycle"),
    (&["factorset-strictify", "fs_222_unit.json"], EXIT_OK, "witness"),
    (&["cohomologous", "fs_222_unit.json", "fs_222_unit_strict.json"], EXIT_OK, "cohomologous: true"),
    (&["cohomologous", "fs_222_theta.json", "fs_222_trivial.json"], EXIT_PROPERTY, "witness: none"),
    (&["crossed-verify", "fs_222_theta.json"], EXIT_OK, "pentagon"),
    (&["crossed-verify", "fs_corrupt_theta.json"], EXIT_PROPERTY, "associativity"),
    (&["crossed-verify", "fs_222_unit.json"], EXIT_PROPERTY, "not_enough_strict"),
    (&["classify", "z2_cubed.json"], EXIT_OK, "bijection verified: true"),
    (&["classify", "negation.json"], EXIT_OK, "cohomology classes: 1"),
    (&["classify", "z2_cubed.json", "twisted_category_22.json"], EXIT_OK, "cohomology classes: 4"),
    (&["classify", "z3_cubed.json", "--cap", "5"], EXIT_CAP, "cap_exceeded"),
    (&["validate", "z2_cubed.json"], EXIT_OK, "equivariance"),
    (&["validate", "twisted_category_22.json"], EXIT_OK, "xi_cocycle"),
    (&["validate", "fs_222_unit.json"], EXIT_OK, "derived_c_identity"),
    (&["validate", "fs_222_unit.json", "--assume-condition-i"], EXIT_OK, "condition_i"),
    (&["validate", "fs_corrupt_theta.json"], EXIT_PROPERTY, "theta_cocycle"),
    (&["validate", "malformed/not_equivariant.json"], EXIT_PROPERTY, "equivariance"),
    (&["validate", "malformed/not_associative.json"], EXIT_PROPERTY, "witness: [1, 2, 2]"),
    (&["validate", "malformed/no_inverse.json"], EXIT_PROPERTY, "pi_group"),
    (&["validate", "malformed/action_not_bijective.json"], EXIT_PROPERTY, "gamma_on_a"),
    (&["validate", "malformed/fs_xi_not_cocycle.json"], EXIT_PROPERTY, "base_category"),
];

/// Every file in the malformed corpus, the verb that reads it and the exit
/// code. `validate` reports broken algebra as a failed property.
const MALFORMED: &[(&str, &[&str], i32)] = &[
    ("garbage.json", &["h3"], EXIT_MALFORMED),
    ("empty.json", &["h3"], EXIT_MALFORMED),
    ("array.json", &["validate"], EXIT_MALFORMED),
    ("missing_gamma.json", &["h3"], EXIT_MALFORMED),
    ("unknown_key.json", &["h3"], EXIT_MALFORMED),
    ("ragged_table.json", &["h3"], EXIT_MALFORMED),
    ("no_inverse.json", &["h3"], EXIT_MALFORMED),
    ("not_associative.json", &["h3"], EXIT_MALFORMED),
    ("identity_not_first.json", &["h3"], EXIT_MALFORMED),
    ("order_mismatch.json", &["validate"], EXIT_MALFORMED),
    ("bad_invariant_factors.json", &["h3"], EXIT_MALFORMED),
    ("trivial_factor.json", &["h3"], EXIT_MALFORMED),
    ("negative_factor.json", &["h3"], EXIT_MALFORMED),
    ("huge_a.json", &["h3"], EXIT_MALFORMED),
    ("action_missing_key.json", &["validate"], EXIT_MALFORMED),
    ("action_not_bijective.json", &["h3"], EXIT_MALFORMED),
    ("action_not_homomorphic.json", &["classify"], EXIT_MALFORMED),
    ("identity_acts.json", &["h3"], EXIT_MALFORMED),
    ("not_equivariant.json", &["h3"], EXIT_MALFORMED),
    ("action_string.json", &["validate"], EXIT_MALFORMED),
    ("cochain_wrong_dims.json", &["cocycle-check", "z2_cubed.json"], EXIT_MALFORMED),
    ("cochain_out_of_range.json", &["cocycle-check", "z2_cubed.json"], EXIT_MALFORMED),
    ("cochain_not_numbers.json", &["factorset-build", "z2_cubed.json"], EXIT_MALFORMED),
    ("fs_missing_sigma.json", &["crossed-verify"], EXIT_MALFORMED),
    ("fs_ftilde_dims.json", &["factorset-induce"], EXIT_MALFORMED),
    ("fs_xi_not_cocycle.json", &["crossed-verify"], EXIT_MALFORMED),
    ("fs_t_missing_tau.json", &["validate"], EXIT_MALFORMED),
];

fn malformed_args(name: &str, verb: &[&str]) -> Vec<String> {
    // the malformed file goes last, after any well-formed companions
    let mut args: Vec<String> = verb.iter().map(|s| s.to_string()).collect();
    args.push(format!("malformed/{name}"));
    args
}

#[test]
fn fixture_cases() {
    for &(args, code, needle) in CASES {
        let (got, out) = exec(args);
        assert_eq!(got, code, "{args:?}\n{out}");
        assert!(out.contains(needle), "{args:?} lacks {needle:?}\n{out}");
    }
}

#[test]
fn malformed_corpus_exit_codes() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", "malformed"].iter().collect();
    let mut files: Vec<String> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    files.sort();
    let mut listed: Vec<String> = MALFORMED.iter().map(|(n, _, _)| n.to_string()).collect();
    listed.sort();
    assert_eq!(files, listed);
    assert!(MALFORMED.len() >= 20);
    for &(name, verb, expected) in MALFORMED {
        let args = malformed_args(name, verb);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        for output in ["json", "text"] {
            let mut with_output = refs.clone();
            with_output.extend(["--output", output]);
            let (code, out) = exec(&with_output);
            assert_eq!(code, expected, "{name} via {verb:?}\n{out}");
            if output == "json" && code == EXIT_MALFORMED {
                let e: ErrorDoc = doc::parse(&out).unwrap();
                assert!(!e.message.is_empty());
            }
        }
    }
}

#[test]
fn usage_errors() {
    assert_eq!(exec(&["frobnicate"]).0, EXIT_MALFORMED);
    assert_eq!(exec(&[]).0, EXIT_MALFORMED);
    assert_eq!(exec(&["h3", "z2_cubed.json", "--method", "magic"]).0, EXIT_MALFORMED);
    assert_eq!(exec(&["h3", "z2_cubed.json", "--cap", "-1"]).0, EXIT_MALFORMED);
    assert_eq!(exec(&["h3", "does_not_exist.json"]).0, EXIT_MALFORMED);
    assert_eq!(exec(&["cocycle-check", "z2_cubed.json"]).0, EXIT_MALFORMED);
    assert_eq!(exec(&["--help"]).0, EXIT_OK);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for &(args, _, _) in CASES {
        for output in ["json", "text"] {
            let mut a = args.to_vec();
            a.extend(["--output", output]);
            assert_eq!(exec(&a), exec(&a), "{a:?}");
        }
    }
}

fn reparses<T: serde::de::DeserializeOwned + serde::Serialize>(out: &str) {
    let d: T = doc::parse(out).unwrap();
    assert_eq!(doc::emit(&d), out);
}

#[test]
fn emitted_json_round_trips() {
    for &(args, _, _) in CASES {
        let mut a = args.to_vec();
        a.extend(["--output", "json"]);
        let (_, out) = exec(&a);
        let value: serde_json::Value = serde_json::from_str(&out).unwrap();
        match args[0] {
            _ if value.get("error").is_some() => reparses::<ErrorDoc>(&out),
            _ if value.get("checks").is_some() && value.get("pairing").is_none() => reparses::<ReportDoc>(&out),
            "h3" => reparses::<H3Doc>(&out),
            "factorset-build" => reparses::<FactorSetDoc>(&out),
            "factorset-induce" => reparses::<Cochain3Doc>(&out),
            "factorset-strictify" => reparses::<StrictifyDoc>(&out),
            "cohomologous" => reparses::<CohomologousDoc>(&out),
            "classify" => reparses::<ClassificationDoc>(&out),
            other => panic!("unexpected document from {other}"),
        }
    }
}

#[test]
fn binary_matches_library() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_opcohom"))
        .args(["h3", &fixture("z2_cubed.json"), "--output", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), exec(&["h3", "z2_cubed.json", "--output", "json"]).1);
    let bad = std::process::Command::new(env!("CARGO_BIN_EXE_opcohom"))
        .args(["h3", &fixture("malformed/garbage.json")])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_MALFORMED));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mutated_inputs_never_crash(
        pos in 0usize..4096,
        byte in any::<u8>(),
        cut in proptest::option::of(0usize..4096),
        verb in 0usize..3,
    ) {
        let source = ["z2_cubed.json", "fs_222_theta.json", "zero_cochain_222.json"][verb];
        let mut bytes = std::fs::read(fixture(source)).unwrap();
        let i = pos % bytes.len();
        bytes[i] = byte;
        if let Some(c) = cut {
            bytes.truncate(c % (bytes.len() + 1));
        }
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("input.json");
        std::fs::write(&path, &bytes).unwrap();
        let p = path.to_string_lossy().into_owned();
        let args: Vec<String> = match verb {
            0 => vec!["h3".into(), p],
            1 => vec!["crossed-verify".into(), p],
            _ => vec!["cocycle-check".into(), fixture("z2_cubed.json"), p],
        };
        let mut argv = vec!["opcohom".to_string()];
        argv.extend(args);
        argv.extend(["--output".into(), "json".into()]);
        let mut out = Vec::new();
        let code = run(argv, &mut out);
        prop_assert!([EXIT_OK, EXIT_PROPERTY, EXIT_MALFORMED].contains(&code));
        let value: serde_json::Value = serde_json::from_slice(&out).unwrap();
        prop_assert!(code != EXIT_MALFORMED || value.get("error").is_some());
    }
}
