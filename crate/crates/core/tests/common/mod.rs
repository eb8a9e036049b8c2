use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

/// Runs the `effhom` binary on bundled inputs.
pub fn effhom(task: &str, inputs: &[&str], extra: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_effhom"));
    cmd.args(["--task", task]);
    for i in inputs {
        cmd.arg("--input").arg(data(i));
    }
    cmd.args(extra).output().expect("effhom runs")
}

/// Every task over the bundled corpus, with its maximal degree.
pub const RUNS: &[(&str, &[&str], &str)] = &[
    ("homology-of-hocolim", &["pushout_s1.json"], "4"),
    ("homology-of-hocolim", &["pushout_s2.json"], "4"),
    ("homology-of-hocolim", &["projective_plane.json"], "4"),
    ("cofibrant-homology", &["pushout_s1.json"], "3"),
    ("cohomology", &["pushout_s2.json", "coefficients_z2.json"], "3"),
    ("bredon", &["point_z2.json", "coefficients_z.json"], "4"),
    ("bredon", &["point_z2.json", "coefficients_free_orbit.json"], "4"),
    ("bredon", &["free_circle_z2.json", "coefficients_z.json"], "3"),
    ("bredon", &["free_circle_z3.json", "coefficients_z2.json"], "3"),
    ("eq-operations", &["em_z_z2.json"], "3"),
    ("eq-operations", &["em_z3_z2.json"], "2"),
];
