//! Homogenization: pad every defining relation with a fresh central
//! generator so the extension becomes graded, and print the result in the
//! same DSL the parser accepts.
//!
//! ```bash
//! cargo run --example homogenize
//! ```

use pbwforge::catalog;
use pbwforge::dsl;
use pbwforge::homog;

fn main() {
    for name in ["weyl-1", "usl2", "kt-general", "type-I"] {
        let ext = catalog::load(name).unwrap().extension.unwrap();
        let h = homog::homogenize_extension(&ext).expect("entry is σ-filtered and bijective");
        println!(
            "# homogenization of {name} (central generator `{}`)",
            h.central_name().unwrap()
        );
        print!("{}", dsl::emit_extension(h.extension(), h.central_name()));
        let check = h.verify();
        println!("# graded conditions verdict: {}\n", check.verdict);
    }

    // the check is a real hypothesis: the non-filtered entry is refused
    let bad = catalog::load("non-filtered").unwrap().extension.unwrap();
    match homog::homogenize_extension(&bad) {
        Err(e) => println!("non-filtered is rejected as expected: {e}"),
        Ok(_) => unreachable!("non-filtered must not homogenize"),
    }
}
