//! The full verification chain on one entry, rendered as text and as the
//! versioned JSON the `--json` flag emits.
//!
//! ```bash
//! cargo run --example full_report
//! ```

use pbwforge::catalog;
use pbwforge::report::{self, ReportOptions};

fn main() {
    let file = catalog::load("jordan-ext").unwrap();
    let opts = ReportOptions {
        degree: 8,
        ..ReportOptions::default()
    };
    let report = report::run_report(&file, "jordan-ext", &opts);

    print!("{}", report.render_text());
    println!("\nall checks pass: {}", report.all_pass());
    println!("\nJSON form:\n{}", report.to_json());
}
