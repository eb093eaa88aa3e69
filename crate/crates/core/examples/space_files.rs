//! Space and theory documents: explicit tables, constructor trees and
//! custom coefficient theories, as read by the `hfc` command line.
//!
//! Run with `cargo run --example space_files`.

use std::fmt::Write;

use hodge_filtered::io::{parse_space, parse_theory, space_to_value};
use hodge_filtered::{hfc_group, space, Variant};

const ELLIPTIC: &str = r#"{
  "name": "E",
  "kind": "kahler",
  "dim": 1,
  "betti": [1, 2, 1],
  "hodge": {"0,0": 1, "1,0": 1, "0,1": 1, "1,1": 1},
  "hodge_class_rank": [1, 1]
}"#;

const THREEFOLD: &str = r#"{
  "name": "E x P2",
  "kind": "construct",
  "expr": ["product", ["curve", 1], ["projective_space", 2]]
}"#;

const TWO_PERIODIC: &str = r#"{"name": "K2", "field": "integral", "ranks": [[-1, 1], [0, 1]]}"#;

pub fn run_example() -> String {
    let mut out = String::new();
    let e = parse_space(ELLIPTIC).expect("valid tables");
    writeln!(
        out,
        "explicit tables equal curve(1): {}",
        e.same_data(&space::curve(1).into())
    )
    .unwrap();

    let x = parse_space(THREEFOLD).expect("valid expression");
    let k = parse_theory(TWO_PERIODIC).expect("valid theory");
    for (n, p) in [(1, 1), (3, 2), (4, 2)] {
        let g = hfc_group(&x, &k, n, p, Variant::Analytic).unwrap();
        writeln!(out, "{}_D^{n}({p})({}) = {g}", k.name(), x.name()).unwrap();
    }

    let doc = space_to_value(&x);
    writeln!(out, "betti of {}: {}", x.name(), doc["betti"]).unwrap();

    let bad = ELLIPTIC.replace("\"1,0\": 1", "\"1,0\": 2");
    writeln!(out, "asymmetric table: {}", parse_space(&bad).unwrap_err()).unwrap();
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
