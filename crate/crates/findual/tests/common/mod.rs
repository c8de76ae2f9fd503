//! Golden cases shared by the CLI tests and the acceptance suite.

use std::path::{Path, PathBuf};
use std::process::Command;

/// `(golden name, arguments)`; paths are relative to the crate root.
pub const CASES: &[(&str, &[&str])] = &[
    ("dualize-chain2", &["dualize", "--in", "fixtures/chain2.json"]),
    ("dualize-antichain2", &["dualize", "--in", "fixtures/antichain2.json"]),
    ("dualize-vee", &["dualize", "--in", "fixtures/vee.json"]),
    ("dualize-boolean2", &["dualize", "--in", "fixtures/boolean2.json"]),
    ("dualize-chain3-abstract", &["dualize", "--in", "fixtures/chain3-abstract.json"]),
    ("dualize-swap-operator", &["dualize", "--in", "fixtures/swap-operator.json"]),
    ("dualize-min-operator", &["dualize", "--in", "fixtures/min-operator.json"]),
    ("dualize-leq-relation", &["dualize", "--in", "fixtures/leq-relation.json"]),
    ("dualize-z2", &["dualize", "--in", "fixtures/z2.json"]),
    ("dualize-max-chain2", &["dualize", "--in", "fixtures/max-chain2.json"]),
    ("dualize-arrow-category", &["dualize", "--in", "fixtures/arrow-category.json"]),
    ("dualize-discrete2-category", &["dualize", "--in", "fixtures/discrete2-category.json"]),
    ("dualize-multivalued-relmon", &["dualize", "--in", "fixtures/multivalued-relmon.json"]),
    ("dualize-z2-to-trivial", &["dualize", "--in", "fixtures/z2-to-trivial.json"]),
    ("dualize-inclusion-map", &["dualize", "--in", "fixtures/inclusion-map.json"]),
    ("dualize-not-total-morphism", &["dualize", "--in", "fixtures/not-total-morphism.json"]),
    ("dualize-even-a", &["dualize", "--in", "fixtures/even-a.json"]),
    ("classify-identity-operator", &["classify", "--in", "fixtures/identity-operator.json"]),
    ("classify-swap-operator", &["classify", "--in", "fixtures/swap-operator.json"]),
    ("classify-min-operator", &["classify", "--in", "fixtures/min-operator.json"]),
    ("classify-leq-relation", &["classify", "--in", "fixtures/leq-relation.json"]),
    ("classify-z2", &["classify", "--in", "fixtures/z2.json"]),
    ("classify-max-chain2", &["classify", "--in", "fixtures/max-chain2.json"]),
    ("classify-multivalued-relmon", &["classify", "--in", "fixtures/multivalued-relmon.json"]),
    ("classify-arrow-category", &["classify", "--in", "fixtures/arrow-category.json"]),
    ("classify-chain3-abstract", &["classify", "--in", "fixtures/chain3-abstract.json"]),
    ("classify-vee", &["classify", "--in", "fixtures/vee.json"]),
    ("correspond-identity-reflexive", &["correspond", "--property", "reflexive", "--in", "fixtures/identity-operator.json"]),
    ("correspond-swap-operator", &["correspond", "--in", "fixtures/swap-operator.json"]),
    ("correspond-leq-relation", &["correspond", "--in", "fixtures/leq-relation.json"]),
    ("correspond-unknown-property", &["correspond", "--property", "dense", "--in", "fixtures/swap-operator.json"]),
    ("correspond-min-operator", &["correspond", "--in", "fixtures/min-operator.json"]),
    ("synmon-ab-star", &["synmon", "--gamma", "--in", "fixtures/ab-star.json"]),
    ("synmon-a-star-b-star", &["synmon", "--gamma", "--in", "fixtures/a-star-b-star.json"]),
    ("synmon-contains-aba", &["synmon", "--in", "fixtures/contains-aba.json"]),
    ("synmon-even-a", &["synmon", "--gamma", "--in", "fixtures/even-a.json"]),
    ("synmon-bad-regex", &["synmon", "--in", "fixtures/bad-regex.json"]),
    ("sweep-default", &["sweep"]),
    ("sweep-2", &["sweep", "--max-size", "2"]),
    ("sweep-1-reflexive", &["sweep", "--max-size", "1", "--property", "reflexive"]),
    ("validate-arrow-category", &["validate", "--in", "fixtures/arrow-category.json"]),
    ("validate-diamond-m3", &["validate", "--in", "fixtures/diamond-m3.json"]),
    ("validate-malformed", &["validate", "--in", "fixtures/malformed.json"]),
    ("validate-unknown-kind", &["validate", "--in", "fixtures/unknown-kind.json"]),
    ("validate-not-transitive", &["validate", "--in", "fixtures/not-transitive.json"]),
    ("validate-not-associative-monoid", &["validate", "--in", "fixtures/not-associative-monoid.json"]),
    ("validate-not-monotone-operator", &["validate", "--in", "fixtures/not-monotone-operator.json"]),
    ("validate-out-of-range-operator", &["validate", "--in", "fixtures/out-of-range-operator.json"]),
    ("validate-missing-composite-category", &["validate", "--in", "fixtures/missing-composite-category.json"]),
    ("validate-not-total-morphism", &["validate", "--in", "fixtures/not-total-morphism.json"]),
    ("validate-missing-file", &["validate", "--in", "fixtures/no-such-file.json"]),
    ("quiet-validate-z2", &["validate", "--quiet", "--in", "fixtures/z2.json"]),
    ("quiet-validate-not-transitive", &["validate", "--quiet", "--in", "fixtures/not-transitive.json"]),
    ("quiet-validate-malformed", &["validate", "--quiet", "--in", "fixtures/malformed.json"]),
];

pub fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{name}.txt"))
}

/// Runs the binary from the crate root; the transcript records the command
/// line, standard output and the exit code.
pub fn transcript(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_findual"))
        .args(args)
        .current_dir(crate_dir())
        .output()
        .expect("binary runs");
    format!(
        "$ findual {}\n{}exit: {}\n",
        args.join(" "),
        String::from_utf8(out.stdout).expect("utf-8 output"),
        out.status.code().unwrap_or(-1)
    )
}
