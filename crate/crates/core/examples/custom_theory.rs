//! Groups of a custom rationally even theory, and additivity under wedge sums.
//!
//! Run with `cargo run --example custom_theory`.

use std::fmt::Write;

use hodge_filtered::{hfc_group, space, CoefficientField, CoefficientTheory, Space, Variant};

pub fn run_example() -> String {
    let mut out = String::new();
    // connective 2-periodic ranks in degrees 0, -2, -4
    let k = CoefficientTheory::custom("k", [(0, 1), (-1, 1), (-2, 1)], CoefficientField::Integral)
        .expect("non-negative ranks");
    let hz = CoefficientTheory::hz();
    let sum = k.wedge(&hz);
    let x: Space = space::curve(2).into();
    for (n, p) in [(1, 1), (2, 1), (3, 2)] {
        let a = hfc_group(&x, &k, n, p, Variant::Analytic).unwrap();
        let b = hfc_group(&x, &hz, n, p, Variant::Analytic).unwrap();
        let ab = hfc_group(&x, &sum, n, p, Variant::Analytic).unwrap();
        writeln!(out, "n={n} p={p}: {a}  (+)  {b}  =  {ab}").unwrap();
        assert_eq!(a.direct_sum(&b), ab);
    }
    let negative = CoefficientTheory::custom("bad", [(0, -1)], CoefficientField::Integral);
    writeln!(out, "negative rank: {}", negative.unwrap_err()).unwrap();
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
