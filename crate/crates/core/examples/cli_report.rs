//! Running a bundled task through the command-line layer and printing the
//! deterministic report.

use std::path::Path;

use effhom::cli::{run, Format, TaskKind, TaskSpec};

fn main() -> effhom::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let spec = TaskSpec {
        task: TaskKind::Bredon,
        inputs: vec![data.join("point_z2.json"), data.join("coefficients_z.json")],
        max_degree: 4,
        format: Format::Text,
        cache: None,
        strict_audit: true,
        threads: None,
        generators: false,
    };
    let report = run(&spec)?;
    print!("{}", report.to_text());
    println!("{}", report.to_json());
    Ok(())
}
