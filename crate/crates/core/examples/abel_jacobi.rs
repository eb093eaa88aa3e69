//! Abel-Jacobi map for the curve y^2 = x^3 - 2, written as
//! y^2 = 4x^3 - g2 x - g3 with g2 = 0, g3 = 8. The rational point (3, 5)
//! becomes (3, 10) and has infinite order.
//!
//! Run with `cargo run --example abel_jacobi`.

use std::fmt::Write;

use hodge_filtered::{CurvePoint, Divisor, EllipticCurveData};

pub fn run_example() -> String {
    let mut out = String::new();
    let curve = EllipticCurveData::from_f64(0.0, 8.0, 40).expect("nonsingular");
    let (w1, w2) = curve.periods();
    writeln!(out, "omega1 = {w1:.25}").unwrap();
    writeln!(out, "omega2 = {w2:.25}").unwrap();

    let p = curve
        .point(&curve.cx(3.0, 0.0), &curve.cx(10.0, 0.0))
        .unwrap();
    let d = Divisor::difference(p.clone(), CurvePoint::Infinity);
    for k in 1..=3 {
        let z = curve.aj(&d.times(k)).unwrap();
        writeln!(
            out,
            "AJ({k}((P) - (O))) = {:.20} * omega1 + {:.20} * omega2",
            z.a, z.b
        )
        .unwrap();
    }
    writeln!(
        out,
        "torsion order of P up to 50: {:?}",
        curve.is_torsion(&p, 50).unwrap()
    )
    .unwrap();

    // a principal divisor: the line through P and 2P meets the curve again
    let two_p = curve.add(&p, &p);
    let r = curve.third_intersection(&p, &two_p);
    let line = Divisor::from_terms([(p, 1), (two_p, 1), (r, 1), (CurvePoint::Infinity, -3)]);
    let z = curve.aj(&line).unwrap();
    writeln!(
        out,
        "AJ(div of a line) = {:.20}, distance to lattice {:.1e}",
        z.z,
        curve.lattice_distance(&z.z)
    )
    .unwrap();
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
