//! Normal-form arithmetic in skew PBW extensions: products are rewritten to
//! the unique representation with left coefficients and sorted monomials.
//!
//! ```bash
//! cargo run --example pbw_arithmetic
//! ```

use pbwforge::catalog;
use pbwforge::dsl::evaluate_element;
use pbwforge::skewext::ExtensionPresentation;

fn show(ext: &ExtensionPresentation, expr: &str) {
    let value = evaluate_element(ext, expr).expect("well-formed expression");
    println!("  {expr:18} = {}", ext.display(&value));
}

fn load(name: &str) -> ExtensionPresentation {
    catalog::load(name).unwrap().extension.unwrap()
}

fn main() {
    let weyl = load("weyl-1");
    println!("first Weyl algebra (x t = t x + 1):");
    show(&weyl, "x*t");
    show(&weyl, "x*t^2");
    show(&weyl, "x^2*t^2");
    show(&weyl, "x*t - t*x");

    let jordan = load("jordan-ext");
    println!("extension of the Jordan plane:");
    show(&jordan, "x1*t2");
    show(&jordan, "x1*t2^2");
    show(&jordan, "t2*t1");

    let usl2 = load("usl2");
    println!("U(sl2):");
    show(&usl2, "f*e");
    show(&usl2, "h*e - e*h");
    show(&usl2, "h*f*e");

    // total degree and the filtration
    let f = evaluate_element(&weyl, "x*t^2").unwrap();
    println!(
        "tdeg(x*t^2 in normal form) = {}, monomial degree = {}",
        weyl.tdeg(&f).unwrap(),
        weyl.lr_degree(&f).unwrap()
    );
    let parts = weyl.free_filtered_decomposition(&f, 3).unwrap();
    println!("free-filtered decomposition at level 3:");
    for (mono, coeff, budget) in parts {
        println!(
            "  coefficient {} on x^{:?} (coefficient degree budget {budget})",
            coeff,
            mono.exponents()
        );
    }
}
