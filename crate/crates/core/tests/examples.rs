//! Every example under `examples/` runs to completion and says what it claims.

macro_rules! example {
    ($name:ident, $path:literal) => {
        #[allow(dead_code)]
        #[path = $path]
        mod $name;
    };
}

example!(point_table, "../examples/point_table.rs");
example!(fundamental_sequence, "../examples/fundamental_sequence.rs");
example!(rational_splitting, "../examples/rational_splitting.rs");
example!(projective_bundle, "../examples/projective_bundle.rs");
example!(
    a1_and_mayer_vietoris,
    "../examples/a1_and_mayer_vietoris.rs"
);
example!(abel_jacobi, "../examples/abel_jacobi.rs");
example!(space_files, "../examples/space_files.rs");
example!(exact_linear_algebra, "../examples/exact_linear_algebra.rs");
example!(custom_theory, "../examples/custom_theory.rs");

#[test]
fn point_table_shows_circles_below_the_filtration() {
    let out = point_table::run_example();
    assert!(
        out.contains("MU_D^-1(1)(pt) = (ℝ/ℤ)^1 ⊕ ℝ^1 (circle 1, line 1)"),
        "{out}"
    );
    assert!(out.contains(" -4: Z^2 | 0 | 0 | 0 | 0"), "{out}");
}

#[test]
fn fundamental_sequence_matches_picard() {
    let out = fundamental_sequence::run_example();
    assert!(
        out.contains("Pic^0(C3) has complex dimension Some(3)"),
        "{out}"
    );
    assert!(out.contains("P2 MU: 0 -> 0 -> ℤ^2 -> Z^2 -> 0"), "{out}");
}

#[test]
fn rational_splitting_holds_everywhere_shown() {
    let out = rational_splitting::run_example();
    assert!(out.contains("[1, 1, 2, 3, 5, 7, 11, 15, 22]"), "{out}");
    assert!(!out.contains("MISMATCH"), "{out}");
}

#[test]
fn projective_bundle_relations() {
    let out = projective_bundle::run_example();
    assert!(
        out.contains("MU_D^2(1)(P3(P1)) = ℤ^6 = ℤ^6 [true]"),
        "{out}"
    );
    assert!(
        out.contains("Grothendieck relation on P(V) over P2: true"),
        "{out}"
    );
    assert!(
        out.contains("transfer of a line: rank 1 inside ℤ^2 [true]"),
        "{out}"
    );
}

#[test]
fn mayer_vietoris_detects_wrong_intersection() {
    let out = a1_and_mayer_vietoris::run_example();
    assert!(out.contains("balanced = true"), "{out}");
    assert!(
        out.contains("with a point as intersection: balanced = false"),
        "{out}"
    );
    assert!(!out.contains("[false]"), "{out}");
}

#[test]
fn abel_jacobi_example_values() {
    let out = abel_jacobi::run_example();
    assert!(out.contains("omega1 = 2.16368174901375100947"), "{out}");
    assert!(out.contains("torsion order of P up to 50: None"), "{out}");
    assert!(out.contains("distance to lattice"), "{out}");
}

#[test]
fn space_files_round_trip() {
    let out = space_files::run_example();
    assert!(
        out.contains("explicit tables equal curve(1): true"),
        "{out}"
    );
    assert!(out.contains("betti of E x P2: [1,2,2,2,2,2,1]"), "{out}");
    assert!(out.contains("Hodge symmetry fails"), "{out}");
}

#[test]
fn exact_linear_algebra_invariant_factors() {
    let out = exact_linear_algebra::run_example();
    assert!(out.contains("invariant factors: [2, 6, 12]"), "{out}");
    assert!(out.contains("Z + Z/4 + Z/6 = Z^1 + Z/2 + Z/12"), "{out}");
}

#[test]
fn custom_theory_is_additive() {
    let out = custom_theory::run_example();
    assert!(out.contains("negative rank"), "{out}");
}
