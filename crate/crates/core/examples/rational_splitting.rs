//! Rationally, MU splits into shifted copies of HQ, one per partition:
//! (MU ^ HQ)_D^n(p)(X) = sum_j H_D^{n+2j}(X; Q(p+j)) (x) pi_{2j}MU.
//!
//! Run with `cargo run --example rational_splitting`.

use std::fmt::Write;

use hodge_filtered::{mu_rank, rational_splitting_check, space, Space};

pub fn run_example() -> String {
    let mut out = String::new();
    writeln!(
        out,
        "rank pi_(2j)MU for j = 0..8: {:?}",
        (0..=8).map(mu_rank).collect::<Vec<_>>()
    )
    .unwrap();
    let spaces: Vec<Space> = vec![
        space::point().into(),
        space::projective_space(2).into(),
        space::curve(2).into(),
    ];
    for x in &spaces {
        for (n, p) in [(0, 0), (1, 1), (2, 1), (3, 2), (4, 2)] {
            let c = rational_splitting_check(x, n, p).expect("rational input");
            writeln!(
                out,
                "{:>3} n={n} p={p}: {} = {} [{}]",
                x.name(),
                c.lhs,
                c.rhs,
                if c.holds { "ok" } else { "MISMATCH" }
            )
            .unwrap();
        }
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
