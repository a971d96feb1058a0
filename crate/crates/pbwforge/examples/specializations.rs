//! The two specializations of a homogenized extension: substituting 1 for
//! the central generator recovers the original presentation verbatim, and
//! substituting 0 yields the associated graded presentation, which can also
//! be built directly from the top-degree components.
//!
//! ```bash
//! cargo run --example specializations
//! ```

use pbwforge::catalog;
use pbwforge::dsl;
use pbwforge::homog;

fn main() {
    for name in ["weyl-1", "jordan-ext", "kt-general", "usl2"] {
        let ext = catalog::load(name).unwrap().extension.unwrap();
        let h = homog::homogenize_extension(&ext).unwrap();

        let back = h.specialize_one().unwrap();
        println!(
            "{name}: specialize at 1 recovers the input: {}",
            back == ext
        );

        let gr_via_h = h.specialize_zero().unwrap();
        let gr_direct = homog::gr_presentation(&ext).unwrap();
        println!(
            "{name}: specialize at 0 equals the direct associated graded: {}",
            gr_via_h == gr_direct
        );
    }

    // the associated graded presentation of the general Ore extension keeps
    // only top-degree components: sigma(t) = 2t + 1 becomes 2t, and
    // delta(t) = t^2 + t + 1 becomes t^2
    let kt = catalog::load("kt-general").unwrap().extension.unwrap();
    let gr = homog::gr_presentation(&kt).unwrap();
    println!("\n# associated graded presentation of kt-general");
    print!("{}", dsl::emit_extension(gr.extension(), gr.central_name()));
}
