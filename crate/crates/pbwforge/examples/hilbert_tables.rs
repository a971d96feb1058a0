//! Graded dimension analysis: Hilbert functions of homogenizations,
//! filtration dimensions, the degreewise Rees comparison, and z-regularity.
//!
//! ```bash
//! cargo run --example hilbert_tables
//! ```

use pbwforge::catalog;
use pbwforge::graded;
use pbwforge::homog;

fn main() {
    let n = 10;
    for name in ["weyl-1", "weyl-2", "usl2", "type-I", "jordan-ext"] {
        let ext = catalog::load(name).unwrap().extension.unwrap();
        let h = homog::homogenize_extension(&ext).unwrap();

        let hilbert = graded::hilbert_extension(&h, n).unwrap();
        let filtration = graded::filtration_dims(&ext, n).unwrap();
        let gr = homog::gr_presentation(&ext).unwrap();
        let gr_dims = graded::hilbert_extension(&gr, n).unwrap();

        println!("{name}");
        println!("  dim H(A)_p      : {hilbert}");
        println!("  dim F_p(A)      : {filtration}");
        println!(
            "  dim F_p/F_(p-1) : {}",
            filtration
                .layer_dims()
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        );
        println!("  dim G(A)_p      : {gr_dims}");

        let rees = graded::rees_vs_homog(&ext, n).unwrap();
        println!("  Rees(A) = H(A) degreewise: {}", rees.agrees());
        let z = graded::check_z_regular(&h, n).unwrap();
        println!(
            "  z regular up to degree {}: {}",
            z.checked_up_to, z.regular
        );
        println!();
    }
}
