//! The short exact sequence 0 -> J^{2p-1}_E(X) -> E_D^{2p}(p)(X) -> Hdg_E^{2p}(X) -> 0
//! for a few curves and surfaces: the torus on the left, the discrete group of
//! Hodge classes on the right.
//!
//! Run with `cargo run --example fundamental_sequence`.

use std::fmt::Write;

use hodge_filtered::{
    hfc_group, hodge_group, jacobian, space, CoefficientTheory, KahlerModel, Space, Variant,
};

pub fn run_example() -> String {
    let mut out = String::new();
    let hz = CoefficientTheory::hz();
    let mu = CoefficientTheory::mu();
    let surfaces: Vec<KahlerModel> = vec![
        space::curve(1),
        space::curve(2),
        space::projective_space(2),
        space::product(&space::curve(1), &space::curve(1)).expect("torsion-free factors"),
    ];
    for x in &surfaces {
        for e in [&hz, &mu] {
            let p = 1;
            let j = jacobian(x, e, p).expect("odd-degree Hodge data is even-rank");
            let hdg = hodge_group(x, e, p).expect("valid model");
            let middle = hfc_group(&Space::Kahler(x.clone()), e, 2 * p, p, Variant::Analytic)
                .expect("Kaehler input");
            writeln!(
                out,
                "{:>6} {:>2}: 0 -> {j} -> {middle} -> {hdg} -> 0",
                x.name(),
                e.name()
            )
            .unwrap();
            assert_eq!(middle.circle_rank(), j.circle_rank());
            assert_eq!(middle.free_rank(), hdg.free_rank());
        }
    }
    // the Picard group of a genus-g curve: Z (degree) plus a g-dimensional torus
    let pic = jacobian(&space::curve(3), &hz, 1).unwrap();
    writeln!(
        out,
        "Pic^0(C3) has complex dimension {:?}",
        pic.complex_torus_dim()
    )
    .unwrap();
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
