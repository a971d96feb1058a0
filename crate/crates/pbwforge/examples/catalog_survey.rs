//! Runs the σ-filtered check across every shipped presentation and prints
//! the verdict table.
//!
//! ```bash
//! cargo run --example catalog_survey
//! ```

use pbwforge::catalog;

fn main() {
    println!("{:20} {:12} summary", "entry", "σ-filtered");
    println!("{}", "-".repeat(72));
    for entry in catalog::entries() {
        let file = catalog::load(entry.name).expect("catalog entries build");
        let ext = file.extension.expect("catalog entries define extensions");
        let report = ext.check_sigma_filtered();
        println!(
            "{:20} {:12} {}",
            entry.name,
            if report.verdict { "yes" } else { "NO" },
            entry.summary
        );
        for failure in &report.failures {
            println!("{:20} {:12} ^ {failure}", "", "");
        }
    }
}
