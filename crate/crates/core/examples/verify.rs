// Runs the quick verification suite with a character table cache in a
// temporary directory.

use hurwitz_hodge::cli::verify::{verify_suite, VerifyLevel};
use hurwitz_hodge::Result;

pub fn run_example() -> Result<()> {
    let dir = std::env::temp_dir().join(format!("hurwitz-hodge-example-{}", std::process::id()));
    let report = verify_suite(VerifyLevel::Quick, Some(&dir))?;
    for (d, status) in &report.cache {
        println!("table d={d}: {status:?}");
    }
    for check in &report.checks {
        println!("{check}");
    }
    let _ = std::fs::remove_dir_all(&dir);
    assert!(report.all_pass());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
