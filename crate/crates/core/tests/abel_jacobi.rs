use hodge_filtered::abel_jacobi::DEFAULT_DIGITS;
use hodge_filtered::{
    jacobian, space, CoefficientTheory, CurvePoint, Cx, Divisor, EllipticCurveData, Error, Real,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

/// Adaptive Simpson quadrature in double precision.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let m = 0.5 * (a + b);
        (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
    }
    fn recurse(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, eps: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, m);
        let right = simpson(f, m, b);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * eps {
            return left + right + (left + right - whole) / 15.0;
        }
        recurse(f, a, m, left, eps / 2.0, depth - 1) + recurse(f, m, b, right, eps / 2.0, depth - 1)
    }
    recurse(f, a, b, simpson(f, a, b), eps, 50)
}

/// ∫₁^∞ dx/√(4x³ − 4x), rewritten with x = 1 + t² and split at t = 1
/// (the tail through t = 1/s) so both pieces are smooth on [0, 1].
fn lemniscatic_quadrature() -> f64 {
    let head = |t: f64| 1.0 / ((1.0 + t * t) * (2.0 + t * t)).sqrt();
    let tail = |s: f64| 1.0 / ((s * s + 1.0) * (2.0 * s * s + 1.0)).sqrt();
    adaptive_simpson(&head, 0.0, 1.0, 1e-14) + adaptive_simpson(&tail, 0.0, 1.0, 1e-14)
}

fn random_curve(rng: &mut ChaCha8Rng) -> EllipticCurveData {
    loop {
        let g2 = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let g3 = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let bits = hodge_filtered::numeric::bits_for_digits(DEFAULT_DIGITS);
        let g2 = Cx::from_f64(g2.0, g2.1, bits);
        let g3 = Cx::from_f64(g3.0, g3.1, bits);
        if let Ok(c) = EllipticCurveData::new(&g2, &g3, DEFAULT_DIGITS) {
            return c;
        }
    }
}

fn random_point(curve: &EllipticCurveData, rng: &mut ChaCha8Rng) -> CurvePoint {
    let x = curve.cx(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let p = curve.point_with_x(&x);
    if rng.gen_bool(0.5) {
        curve.negate(&p)
    } else {
        p
    }
}

#[test]
fn real_half_period_matches_quadrature() {
    let curve = EllipticCurveData::from_f64(4.0, 0.0, DEFAULT_DIGITS).unwrap();
    let (w1, _) = curve.periods();
    let half = w1.re.to_f64() / 2.0;
    let oracle = lemniscatic_quadrature();
    assert!((half - oracle).abs() < TOL, "{half} vs {oracle}");
}

#[test]
fn eisenstein_round_trip_on_random_curves() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let curve = random_curve(&mut rng);
        let (g2, g3) = curve.eisenstein_invariants();
        let tol = 10f64.powi(-(DEFAULT_DIGITS as i32) + 3);
        assert!(
            (&g2 - curve.g2()).abs_f64() < tol,
            "g2 mismatch for {}",
            curve.g2()
        );
        assert!(
            (&g3 - curve.g3()).abs_f64() < tol,
            "g3 mismatch for {}",
            curve.g3()
        );
        assert!(curve.tau().im.to_f64() > 0.0);
    }
}

#[test]
fn eisenstein_round_trip_on_real_curves() {
    for (g2, g3) in [
        (4.0, 0.0),
        (0.0, 8.0),
        (7.0, -3.0),
        (1.0, 1.0),
        (-2.0, 5.0),
        (30.0, 1.0),
    ] {
        let curve = EllipticCurveData::from_f64(g2, g3, DEFAULT_DIGITS).unwrap();
        let (w1, w2) = curve.periods();
        assert!(w1.im.is_zero() && !w1.re.is_negative(), "ω1 real positive");
        assert!(curve.tau().im.to_f64() > 0.0);
        let (e2, e3) = curve.eisenstein_invariants();
        assert!((e2.re.to_f64() - g2).abs() < 1e-30, "{g2} {g3} {w2}");
        assert!((e3.re.to_f64() - g3).abs() < 1e-30);
    }
}

#[test]
fn periods_scale_linearly() {
    let lambda: f64 = 2.0;
    let base = EllipticCurveData::from_f64(1.5, -0.75, DEFAULT_DIGITS).unwrap();
    let scaled =
        EllipticCurveData::from_f64(1.5 / lambda.powi(4), -0.75 / lambda.powi(6), DEFAULT_DIGITS)
            .unwrap();
    let (a1, a2) = base.periods();
    let (b1, b2) = scaled.periods();
    assert!((b1 - &a1.mul_int(2)).abs_f64() < 1e-30);
    assert!((b2 - &a2.mul_int(2)).abs_f64() < 1e-30);
}

#[test]
fn precision_increase_shrinks_error() {
    let errors: Vec<f64> = [15u32, 30, 45]
        .iter()
        .map(|&d| {
            let curve = EllipticCurveData::from_f64(2.5, 1.25, d).unwrap();
            let (g2, g3) = curve.eisenstein_invariants();
            (&g2 - curve.g2())
                .abs_f64()
                .max((&g3 - curve.g3()).abs_f64())
        })
        .collect();
    assert!(errors[1] < errors[0] / 2.0, "{errors:?}");
    assert!(errors[2] < errors[1] / 2.0, "{errors:?}");
}

#[test]
fn forward_evaluation_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let curve = random_curve(&mut rng);
        let (w1, w2) = curve.periods();
        let bits = curve.bits();
        for _ in 0..4 {
            let a = Real::from_f64(rng.gen_range(0.05..0.95), bits);
            let b = Real::from_f64(rng.gen_range(0.05..0.95), bits);
            let z0 = &w1.scale(&a) + &w2.scale(&b);
            let (x, y) = curve.weierstrass_p(&z0);
            let p = curve.point(&x, &y).expect("℘ parametrizes the curve");
            let z = curve.elliptic_log(&p).unwrap();
            assert!(curve.lattice_distance(&(&z - &z0)) < 1e-25);
            // and the other direction
            let (x2, y2) = curve.weierstrass_p(&z);
            let scale = 1.0 + x.abs_f64() + y.abs_f64();
            assert!((&x2 - &x).abs_f64() < 1e-30 * scale);
            assert!((&y2 - &y).abs_f64() < 1e-30 * scale);
        }
    }
}

#[test]
fn two_torsion_points_sit_at_half_periods() {
    let curve = EllipticCurveData::from_f64(4.0, 0.0, DEFAULT_DIGITS).unwrap();
    let (w1, _) = curve.periods();
    let p = curve.two_torsion_point(0);
    let z = curve.elliptic_log(&p).unwrap();
    assert!(curve.lattice_distance(&(&z - &w1.div_int(2))) < 1e-30);
    assert_eq!(curve.is_torsion(&p, 20).unwrap(), Some(2));
    assert_eq!(
        curve.is_torsion(&CurvePoint::Infinity, 20).unwrap(),
        Some(1)
    );
    assert!(curve.elliptic_log(&CurvePoint::Infinity).unwrap().is_zero());

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..5 {
        let curve = random_curve(&mut rng);
        for i in 0..3 {
            let p = curve.two_torsion_point(i);
            assert_eq!(curve.is_torsion(&p, 20).unwrap(), Some(2));
        }
        let generic = random_point(&curve, &mut rng);
        assert_eq!(curve.is_torsion(&generic, 20).unwrap(), None);
    }
}

#[test]
fn rational_torsion_point_has_its_order() {
    // y² = x³ + 1 has (2, 3) of order 6; rescaled to 4x³ − g2·x − g3 via y ↦ 2y.
    let curve = EllipticCurveData::from_f64(0.0, -4.0, DEFAULT_DIGITS).unwrap();
    let p = curve
        .point(&curve.cx(2.0, 0.0), &curve.cx(6.0, 0.0))
        .unwrap();
    assert_eq!(curve.is_torsion(&p, 20).unwrap(), Some(6));
}

#[test]
fn non_torsion_witness() {
    // y² = x³ − 2 with P = (3, 5) of infinite order; scaled: g2 = 0, g3 = 8.
    let curve = EllipticCurveData::from_f64(0.0, 8.0, DEFAULT_DIGITS).unwrap();
    let p = curve
        .point(&curve.cx(3.0, 0.0), &curve.cx(10.0, 0.0))
        .unwrap();
    let d = Divisor::difference(p.clone(), CurvePoint::Infinity);
    for k in 1..=12 {
        let image = curve.aj(&d.times(k)).unwrap();
        assert!(curve.lattice_distance(&image.z) > 1e-6, "k = {k}");
    }
    assert_eq!(curve.is_torsion(&p, 12).unwrap(), None);
}

#[test]
fn trivial_divisors_map_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let curve = random_curve(&mut rng);
    let p = random_point(&curve, &mut rng);
    let image = curve.aj(&Divisor::difference(p.clone(), p)).unwrap();
    assert!(image.is_zero());
    assert!(curve.aj(&Divisor::new()).unwrap().is_zero());
}

#[test]
fn principal_divisors_map_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for round in 0..30 {
        let curve = random_curve(&mut rng);
        let p = random_point(&curve, &mut rng);
        let d = if round % 2 == 0 {
            // line through p and q
            let q = random_point(&curve, &mut rng);
            let r = curve.third_intersection(&p, &q);
            Divisor::from_terms([(p, 1), (q, 1), (r, 1), (CurvePoint::Infinity, -3)])
        } else {
            // vertical line x = x(p)
            let minus = curve.negate(&p);
            Divisor::from_terms([(p, 1), (minus, 1), (CurvePoint::Infinity, -2)])
        };
        let image = curve.aj(&d).unwrap();
        assert!(curve.lattice_distance(&image.z) < TOL, "round {round}");
    }
}

#[test]
fn tangent_lines_are_principal() {
    let curve = EllipticCurveData::from_f64(2.0, 3.0, DEFAULT_DIGITS).unwrap();
    let p = curve.point_with_x(&curve.cx(0.7, 0.3));
    let r = curve.third_intersection(&p, &p);
    let d = Divisor::from_terms([(p, 2), (r, 1), (CurvePoint::Infinity, -3)]);
    assert!(curve.lattice_distance(&curve.aj(&d).unwrap().z) < TOL);
}

#[test]
fn aj_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..10 {
        let curve = random_curve(&mut rng);
        let d1 = Divisor::from_terms([
            (random_point(&curve, &mut rng), 2),
            (random_point(&curve, &mut rng), -1),
            (CurvePoint::Infinity, -1),
        ]);
        let d2 = Divisor::difference(
            random_point(&curve, &mut rng),
            random_point(&curve, &mut rng),
        );
        let lhs = curve.aj(&d1.plus(&d2)).unwrap().z;
        let rhs = &curve.aj(&d1).unwrap().z + &curve.aj(&d2).unwrap().z;
        assert!(curve.lattice_distance(&(&lhs - &rhs)) < TOL);
    }
}

#[test]
fn fundamental_domain_coordinates() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let curve = random_curve(&mut rng);
    let d = Divisor::difference(random_point(&curve, &mut rng), CurvePoint::Infinity);
    let image = curve.aj(&d).unwrap();
    let (a, b) = (image.a.to_f64(), image.b.to_f64());
    assert!((0.0..1.0).contains(&a) && (0.0..1.0).contains(&b));
    let (w1, w2) = curve.periods();
    let back = &w1.scale(&image.a) + &w2.scale(&image.b);
    assert!((&back - &image.z).abs_f64() < 1e-30);
}

#[test]
fn group_law_matches_addition_of_logarithms() {
    let curve = EllipticCurveData::from_f64(-1.0, 0.5, DEFAULT_DIGITS).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let p = random_point(&curve, &mut rng);
    let q = random_point(&curve, &mut rng);
    let s = curve.add(&p, &q);
    let lhs = curve.elliptic_log(&s).unwrap();
    let rhs = &curve.elliptic_log(&p).unwrap() + &curve.elliptic_log(&q).unwrap();
    assert!(curve.lattice_distance(&(&lhs - &rhs)) < TOL);
}

#[test]
fn errors_are_reported() {
    let curve = EllipticCurveData::from_f64(4.0, 0.0, DEFAULT_DIGITS).unwrap();
    let d = Divisor::from_terms([(CurvePoint::Infinity, 1)]);
    assert_eq!(curve.aj(&d).unwrap_err(), Error::NonzeroDegree(1));
    let off = CurvePoint::affine(curve.cx(1.0, 0.0), curve.cx(1.0, 0.0));
    match curve.elliptic_log(&off).unwrap_err() {
        Error::OffCurve { residual, .. } => assert!(residual > 0.1),
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(
        EllipticCurveData::from_f64(12.0, 8.0, DEFAULT_DIGITS).unwrap_err(),
        Error::SingularCurve
    );
}

#[test]
fn jacobian_of_curve_is_a_two_dimensional_torus() {
    // ℂ/Λ is a real 2-torus; the engine's J¹ of a genus-one curve agrees.
    let j = jacobian(&space::curve(1), &CoefficientTheory::hz(), 1).unwrap();
    assert_eq!(j.circle_rank(), 2);
    assert_eq!(j.complex_torus_dim(), Some(1));
    let curve = EllipticCurveData::from_f64(4.0, 0.0, DEFAULT_DIGITS).unwrap();
    let (w1, w2) = curve.periods();
    let independent_real_directions: u64 = if (w2 / w1).im.is_zero() { 1 } else { 2 };
    assert_eq!(independent_real_directions, j.circle_rank());
}

#[test]
fn points_on_the_bounded_real_component() {
    // roots 1, 0, −1: abscissae in [−1, 0] put x − e_i on the negative axis
    let curve = EllipticCurveData::from_f64(4.0, 0.0, DEFAULT_DIGITS).unwrap();
    for x in [-0.9, -0.5, -0.1] {
        for sign in [1.0, -1.0] {
            let x = curve.cx(x, 0.0);
            let y = curve
                .cubic(&x)
                .sqrt()
                .scale(&Real::from_f64(sign, curve.bits()));
            let p = curve.point(&x, &y).unwrap();
            let z = curve.elliptic_log(&p).unwrap();
            let (px, py) = curve.weierstrass_p(&z);
            assert!((&px - &x).abs_f64() < 1e-30);
            assert!((&py - &y).abs_f64() < 1e-30);
        }
    }
}
