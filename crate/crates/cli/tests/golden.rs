//! Every shipped example reproduces its reference report (timing lines
//! excluded), and every replay line in a failing report reconfirms its
//! witness. Set `NUCA_BLESS=1` to rewrite the reference reports.

mod common;

use std::fs;

use common::{code, data_dir, nuca, stable, stdout};

const CASES: &[(&str, i32, &[&str])] = &[
    ("preinj_example1", 0, &["preinj", "--rules", "example1.nuca", "--bound", "3", "--radius", "4"]),
    ("certB_example3", 2, &["certB", "--rules", "example3.nuca", "--window", "0..1", "--filler", "0"]),
    ("density_coset", 0, &["density", "--set", "coset(2,1)"]),
    ("density_halfplane", 0, &["density", "--dim", "2", "--set", "halfspace(1,0;>=;0)", "--n-max", "6"]),
    (
        "density_laws",
        0,
        &["density", "--set", "union(coset(4,1),powers(2))", "--laws-with", "coset(6,0)", "--n-max", "12"],
    ),
    ("image_example1", 0, &["image", "--rules", "example1.nuca", "--window", "-1..1", "--list"]),
    ("image_example2_tau", 0, &["image", "--rules", "example2_tau.nuca", "--window", "-1..1 x -1..1"]),
    ("preinj_example2_sigma", 2, &["preinj", "--rules", "example2_sigma.nuca", "--bound", "2", "--radius", "3"]),
    ("probe_example1", 0, &["probe", "--rules", "example1.nuca", "--support", "-1..1", "--window", "-2..2"]),
    (
        "probe_example2_tau",
        0,
        &["probe", "--rules", "example2_tau.nuca", "--support", "{(0,-1),(0,0),(0,1)}", "--window", "-1..1 x -1..1"],
    ),
    ("entropy_example3", 0, &["entropy", "--rules", "example3.nuca", "--n-max", "3"]),
    ("entropy_compare_example1", 0, &["entropy", "--rules", "example1.nuca", "--compare", "--n-max", "3"]),
    ("entropy_golden_mean", 0, &["entropy", "--sft", "golden_mean.sft", "--n-max", "5"]),
    ("mdim_identity_off3", 0, &["mdim", "--rules", "identity_off3.lnuca", "--n-max", "4"]),
    ("mdim_xor_pair", 0, &["mdim", "--rules", "xor_pair.lnuca", "--n-max", "4"]),
    ("preinj_xor_pair", 0, &["preinj", "--rules", "xor_pair.lnuca", "--bound", "12", "--radius", "8"]),
    ("preinj_identity_off3", 2, &["preinj", "--rules", "identity_off3.lnuca", "--bound", "2", "--radius", "3"]),
    ("sft_lang_golden_mean", 0, &["sft-lang", "--sft", "golden_mean.sft", "--window", "0..11"]),
    ("sft_lang_hard_square", 0, &["sft-lang", "--sft", "hard_square.sft", "--window", "0..2 x 0..2"]),
    ("sft_periodic_golden_mean", 0, &["sft-periodic", "--sft", "golden_mean.sft", "--period", "6", "--list"]),
    ("sft_periodic_approx", 0, &["sft-periodic", "--sft", "golden_mean.sft", "--n0", "2", "--r", "1", "--n", "3"]),
    (
        "sft_certC_shift",
        0,
        &["sft-certC", "--sft", "golden_mean.sft", "--rules", "shift.nuca", "--cylinder", "[0:0]", "--n", "3", "--n0", "2", "--r", "1"],
    ),
    ("sft_irred_golden_mean", 0, &["sft-irred", "--sft", "golden_mean.sft", "--gap", "-1..1", "--radius", "3"]),
    ("sft_irred_period_two", 2, &["sft-irred", "--sft", "period_two.sft", "--gap", "-1..1", "--radius", "3"]),
    (
        "tiling_300",
        0,
        &["tiling", "--region", "0..299", "--shape", "0..29", "--epsilon", "1/100", "--memory", "0..0"],
    ),
    (
        "locus_identity_off3",
        0,
        &["locus", "--rules", "identity_off3.lnuca", "--tiling", "golden/tiling_300.report", "--target", "2/5"],
    ),
    (
        "simulate_shift",
        0,
        &["simulate", "--rules", "shift.nuca", "--config", "const(0) with [3:1]", "--window", "0..4", "--steps", "3"],
    ),
];

#[test]
fn reference_reports() {
    let bless = std::env::var_os("NUCA_BLESS").is_some();
    let mut failures = Vec::new();
    for (name, expected_code, args) in CASES {
        let out = nuca(args);
        let got = stable(&stdout(&out));
        let path = data_dir().join("golden").join(format!("{name}.report"));
        if bless {
            fs::write(&path, &got).expect("write reference");
        }
        let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing reference {}", path.display()));
        if got != want {
            failures.push(format!("{name}: report differs\n--- want\n{want}--- got\n{got}"));
        }
        if common::code(&out) != *expected_code {
            failures.push(format!(
                "{name}: exit {} (want {expected_code}); stderr: {}",
                code(&out),
                common::stderr(&out)
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn replay_lines_reconfirm_witnesses() {
    let mut replayed = 0;
    for (name, _, _) in CASES {
        let path = data_dir().join("golden").join(format!("{name}.report"));
        let text = fs::read_to_string(&path).expect("reference exists");
        let report = nuca_core::report::Report::parse(&text).expect("reference parses");
        let verdict_failed = report.of_kind(nuca_core::report::Kind::Verdict).any(|e| e.value == "FAIL");
        let Some(line) = report.value("command").filter(|_| verdict_failed) else {
            continue;
        };
        let words = shlex::split(line).expect("replay line is shell-quoted");
        assert_eq!(words[0], "nuca");
        let args: Vec<&str> = words[1..].iter().map(String::as_str).collect();
        let out = nuca(&args);
        let rerun = stdout(&out);
        if args[0] == "replay" {
            assert_eq!(code(&out), 0, "{name}: replay did not confirm\n{rerun}");
            assert!(rerun.contains("verdict replay.confirmed = PASS"), "{name}");
        } else {
            assert_eq!(stable(&rerun).lines().skip(4).collect::<Vec<_>>(), text.lines().skip(4).collect::<Vec<_>>(), "{name}");
        }
        replayed += 1;
    }
    assert!(replayed >= 4, "only {replayed} failing reports carry replay lines");
}
