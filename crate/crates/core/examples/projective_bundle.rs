//! Projective bundles: the group of P(V) is a free module over the base on
//! 1, xi, ..., xi^{r-1}, and xi satisfies the Grothendieck relation.
//!
//! Run with `cargo run --example projective_bundle`.

use std::fmt::Write;

use hodge_filtered::{
    grothendieck_check, pbf_check, space, transfer_normalization_check, CoefficientTheory, Space,
};

pub fn run_example() -> String {
    let mut out = String::new();
    let mu = CoefficientTheory::mu();
    let line: Space = space::projective_space(1).into();
    for r in 1..=3 {
        let c = pbf_check(&line, r, 2, 1, &mu).expect("bundle over P1");
        writeln!(
            out,
            "MU_D^2(1)(P{r}(P1)) = {} = {} [{}]",
            c.lhs, c.rhs, c.holds
        )
        .unwrap();
    }

    // a rank-2 bundle on P2 with c1 = 3 xi, c2 = xi^2
    let plane: Space = space::projective_space(2).into();
    let ring = plane.ring().expect("P2 carries its ring");
    let chern = vec![
        ring.parse_poly("3*xi").unwrap(),
        ring.parse_poly("xi^2").unwrap(),
    ];
    let holds = grothendieck_check(&plane, 2, &chern).expect("ringed base");
    writeln!(out, "Grothendieck relation on P(V) over P2: {holds}").unwrap();
    let bundle = space::projective_bundle(&plane, 2, &chern).unwrap();
    let bundle_ring = bundle.ring().unwrap();
    for rel in bundle_ring.relations() {
        writeln!(out, "  relation: {} = 0", bundle_ring.format_poly(rel)).unwrap();
    }

    // i_*(1) = c_1(O(D)) for a line in the plane
    let report =
        transfer_normalization_check(&plane, &ring.parse_poly("xi").unwrap(), Some(&line), &mu)
            .unwrap();
    writeln!(
        out,
        "transfer of a line: rank {} inside {} [{}]",
        report.contribution_rank, report.target, report.holds
    )
    .unwrap();
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
