//! The text files under `data/` describe the same objects as the catalog.

use std::fs;
use std::path::PathBuf;

use nuca_core::catalog;
use nuca_core::engine::{evaluate_window, RuleAssignment};
use nuca_core::format::{parse_linear, parse_rules, parse_sft, write_linear, write_rules, write_sft};
use nuca_core::{Cell, Configuration, Dim, FiniteSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn read(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Same outputs on random finitely supported configurations.
fn assert_same_map(a: &RuleAssignment, b: &RuleAssignment, what: &str) {
    assert_eq!(a.dim(), b.dim(), "{what}");
    assert_eq!(a.alphabet(), b.alphabet(), "{what}");
    let dim = a.dim();
    let (support, window) = match dim {
        Dim::One => (FiniteSet::interval(-12, 12), FiniteSet::interval(-10, 10)),
        Dim::Two => (FiniteSet::centered_box(dim, 6), FiniteSet::centered_box(dim, 5)),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..64 {
        let mut x = Configuration::constant(dim, rng.gen_range(0..a.alphabet()));
        for c in support.iter() {
            if rng.gen_bool(0.5) {
                x = x.with_override(*c, rng.gen_range(0..a.alphabet())).unwrap();
            }
        }
        assert_eq!(
            evaluate_window(a, &x, &window).unwrap(),
            evaluate_window(b, &x, &window).unwrap(),
            "{what}"
        );
    }
}

#[test]
fn rule_files_match_the_catalog() {
    let shift = {
        let m = FiniteSet::interval(0, 1);
        RuleAssignment::uniform(nuca_core::engine::RuleTable::projection("shift", m, 2, Cell::d1(1)).unwrap())
    };
    for (file, expected) in [
        ("example1.nuca", catalog::example1()),
        ("example2_tau.nuca", catalog::example2_tau()),
        ("example2_sigma.nuca", catalog::example2_sigma()),
        ("example3.nuca", catalog::example3()),
        ("identity.nuca", catalog::identity(Dim::One, 2)),
        ("shift.nuca", shift),
    ] {
        let parsed = parse_rules(&read(file)).unwrap();
        assert_same_map(&parsed, &expected, file);
        let again = parse_rules(&write_rules(&parsed)).unwrap();
        assert_same_map(&again, &parsed, file);
    }
}

#[test]
fn linear_files_match_the_catalog() {
    for (file, expected) in [
        ("xor_pair.lnuca", catalog::linear_xor_pair()),
        ("identity_off3.lnuca", catalog::linear_identity_off(3)),
    ] {
        let parsed = parse_linear(&read(file)).unwrap();
        assert_eq!(parsed.k(), expected.k(), "{file}");
        assert_eq!(parsed.field(), expected.field(), "{file}");
        assert_same_map(
            &parsed.to_rule_assignment().unwrap(),
            &expected.to_rule_assignment().unwrap(),
            file,
        );
        let again = parse_linear(&write_linear(&parsed)).unwrap();
        assert_same_map(&again.to_rule_assignment().unwrap(), &parsed.to_rule_assignment().unwrap(), file);
    }
}

#[test]
fn sft_files_match_the_catalog() {
    for (file, expected) in [
        ("golden_mean.sft", catalog::golden_mean()),
        ("hard_square.sft", catalog::hard_square()),
        ("period_two.sft", catalog::period_two()),
    ] {
        let parsed = parse_sft(&read(file)).unwrap();
        assert_eq!(parsed, expected, "{file}");
        assert_eq!(parse_sft(&write_sft(&parsed)).unwrap(), parsed, "{file}");
    }
}
