//! Groups MU_D^n(p) of a point: lattices where the filtration swallows
//! everything, circles and lines where it misses the coefficients.
//!
//! Run with `cargo run --example point_table`.

use std::fmt::Write;

use hodge_filtered::{point_table, CoefficientTheory, Notation};

pub fn run_example() -> String {
    let mut out = String::new();
    let mu = CoefficientTheory::mu();
    let table = point_table(&mu, -6..=2, -2..=2).expect("point tables always evaluate");
    writeln!(out, "MU_D^n(p)(pt), rows n, columns p").unwrap();
    for n in table.n_range.clone() {
        let cells: Vec<String> = table
            .p_range
            .clone()
            .map(|p| table.cells[&(n, p)].render(Notation::Ascii))
            .collect();
        writeln!(out, "{n:>3}: {}", cells.join(" | ")).unwrap();
    }

    // odd degrees below the filtration are R/Z-extensions, e.g. C/Z in degree -1
    let g = &table.cells[&(-1, 1)];
    writeln!(
        out,
        "MU_D^-1(1)(pt) = {g} (circle {}, line {})",
        g.circle_rank(),
        g.real_rank()
    )
    .unwrap();
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
