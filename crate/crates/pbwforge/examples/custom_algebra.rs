//! Authoring a presentation in the DSL: the shift algebra x t = (t + 1) x
//! over K[t], which is not in the shipped catalog. Also shows what the
//! parser diagnostics look like on broken input.
//!
//! ```bash
//! cargo run --example custom_algebra
//! ```

use pbwforge::dsl;
use pbwforge::homog;
use pbwforge::report::{self, ReportOptions};

const SHIFT_ALGEBRA: &str = "\
# the shift algebra: x t = (t + 1) x
ring kt
gens t

extension shift over kt
vars x
sigma 1: t -> t + 1
sigma_inv 1: t -> t - 1
delta 1: t -> 0
option degree = 8
";

const BROKEN: &str = "\
ring kt
gens t
rel t*t -> t*t*t
rel t2*t -> t*t2
extension shift over kt
vars x
";

fn main() {
    let file = dsl::parse(SHIFT_ALGEBRA).expect("the shift algebra parses");
    let opts = ReportOptions::default().with_file(&file);
    let report = report::run_report(&file, "shift-algebra", &opts);
    print!("{}", report.render_text());

    let ext = file.extension.as_ref().unwrap();
    println!(
        "\nnormal form of x^2*t: {}",
        report::run_nf(ext, "x^2*t").unwrap()
    );
    let h = homog::homogenize_extension(ext).unwrap();
    println!(
        "sigma-hat(t) in the homogenization: {}",
        h.extension().sigma(0).image(0)
    );

    println!("\ndiagnostics on broken input:");
    match dsl::parse(BROKEN) {
        Ok(_) => unreachable!("the broken source must not parse"),
        Err(diags) => {
            for d in diags {
                println!("  {d}");
            }
        }
    }
}
