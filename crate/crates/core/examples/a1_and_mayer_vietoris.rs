//! The logarithmic theory on quasi-projective models: it does not see the
//! affine line, and the cover P1 = A1 u A1 with intersection Gm balances.
//!
//! Run with `cargo run --example a1_and_mayer_vietoris`.

use std::fmt::Write;

use hodge_filtered::{
    a1_invariance_check, hfc_group, mv_consistency, space, CoefficientTheory, QuasiProjModel,
    Space, Variant,
};

pub fn run_example() -> String {
    let mut out = String::new();
    let mu = CoefficientTheory::mu();
    let gm = space::gm();
    for n in 0..=2 {
        for p in 0..=1 {
            let g =
                hfc_group(&Space::QuasiProjective(gm.clone()), &mu, n, p, Variant::Log).unwrap();
            writeln!(out, "MU_log^{n}({p})(Gm) = {g}").unwrap();
        }
    }
    let bases: Vec<QuasiProjModel> =
        vec![space::affine_space(0), space::gm(), space::affine_space(2)];
    for x in &bases {
        let c = a1_invariance_check(x, &mu, 1, 1).unwrap();
        writeln!(
            out,
            "{} x A1 vs {}: {} / {} [{}]",
            x.name(),
            x.name(),
            c.lhs,
            c.rhs,
            c.holds
        )
        .unwrap();
    }

    let p1: Space = space::projective_space(1).into();
    let a1: Space = space::affine_space(1).into();
    let gm: Space = space::gm().into();
    let holds = mv_consistency(&p1, &a1, &a1, &gm, &mu, 1).unwrap();
    writeln!(out, "P1 = A1 u A1, A1 n A1 = Gm: balanced = {holds}").unwrap();
    // replacing the intersection by a point breaks the balance
    let pt: Space = space::point().into();
    let broken = mv_consistency(&p1, &a1, &a1, &pt, &mu, 1).unwrap();
    writeln!(out, "with a point as intersection: balanced = {broken}").unwrap();
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
