//! Smith normal form and finitely generated abelian groups, the exact layer
//! under every group the engine reports.
//!
//! Run with `cargo run --example exact_linear_algebra`.

use std::fmt::Write;

use hodge_filtered::{cokernel_of, kernel_rank, smith_normal_form, FgAbelianGroup, IntMatrix};

pub fn run_example() -> String {
    let mut out = String::new();
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf: Vec<String> = smith_normal_form(&m)
        .iter()
        .map(|d| d.to_string())
        .collect();
    writeln!(out, "M =\n{m}").unwrap();
    writeln!(out, "invariant factors: [{}]", snf.join(", ")).unwrap();
    writeln!(out, "coker M = {}", cokernel_of(&m)).unwrap();
    writeln!(out, "rank ker M = {}", kernel_rank(&m)).unwrap();

    // Z/4 + Z/6 is Z/2 + Z/12 in invariant-factor form
    let g = FgAbelianGroup::new(1, vec![4u32, 6]);
    writeln!(out, "Z + Z/4 + Z/6 = {g}").unwrap();
    writeln!(
        out,
        "(Z/2)^3 + Z/3 = {}",
        FgAbelianGroup::new(0, vec![2u32, 2, 2, 3])
    )
    .unwrap();
    writeln!(
        out,
        "sum with Z^2 + Z/2: {}",
        g.direct_sum(&FgAbelianGroup::new(2, vec![2u32]))
    )
    .unwrap();
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
