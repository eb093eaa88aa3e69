//! Numerical Abel–Jacobi map for elliptic curves `y² = 4x³ − g2·x − g3`.
//!
//! * Half-periods are Carlson integrals `R_F(e_i − e_1, e_i − e_2, e_i − e_3)`
//!   over the three roots `e_i` of the cubic. Their doubles generate the
//!   period lattice `Λ`, which is then Gauss-reduced.
//! * The elliptic logarithm of `(x, y)` is `±R_F(x − e_1, x − e_2, x − e_3)`.
//!   The sign comes from comparing `y` with `℘'(z) = −2∏√(x − e_i)`.
//! * `℘` and `℘'` are evaluated independently through q-series on the
//!   reduced lattice, and `g2`, `g3` are recovered from Eisenstein series.
//!   Tests use both as oracles.
//!
//! The fixed-point reals keep absolute precision. Curves whose invariants are
//! of moderate size, roughly `1e-6 ≤ |g2|, |g3| ≤ 1e6`, therefore keep nearly
//! all requested digits.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{bits_for_digits, Cx, Real};

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: u32 = 40;

/// Smallest accepted working precision in decimal digits.
pub const MIN_DIGITS: u32 = 12;

/// A point of the projective curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine { x: Cx, y: Cx },
}

impl CurvePoint {
    pub fn affine(x: Cx, y: Cx) -> Self {
        CurvePoint::Affine { x, y }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(12);
        match self {
            CurvePoint::Infinity => write!(f, "inf"),
            CurvePoint::Affine { x, y } => write!(f, "({x:.digits$}, {y:.digits$})"),
        }
    }
}

/// A formal integer combination of curve points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    terms: Vec<(CurvePoint, i64)>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (CurvePoint, i64)>) -> Self {
        Divisor {
            terms: terms.into_iter().collect(),
        }
    }

    /// `(p) − (q)`.
    pub fn difference(p: CurvePoint, q: CurvePoint) -> Self {
        Divisor::from_terms([(p, 1), (q, -1)])
    }

    pub fn push(&mut self, point: CurvePoint, multiplicity: i64) {
        self.terms.push((point, multiplicity));
    }

    pub fn terms(&self) -> &[(CurvePoint, i64)] {
        &self.terms
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(_, m)| m).sum()
    }

    /// Formal sum of two divisors.
    pub fn plus(&self, other: &Divisor) -> Divisor {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Divisor { terms }
    }

    /// `k · D`.
    pub fn times(&self, k: i64) -> Divisor {
        Divisor {
            terms: self.terms.iter().map(|(p, m)| (p.clone(), m * k)).collect(),
        }
    }
}

/// A point of `ℂ/Λ` given in the fundamental domain. `z = a·ω1 + b·ω2`
/// with `a, b ∈ [0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub z: Cx,
    pub a: Real,
    pub b: Real,
}

impl LatticePoint {
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// Weierstrass invariants together with the computed period lattice.
#[derive(Clone, Debug)]
pub struct EllipticCurveData {
    g2: Cx,
    g3: Cx,
    digits: u32,
    bits: u32,
    roots: [Cx; 3],
    omega1: Cx,
    omega2: Cx,
    /// Gauss-reduced basis `(u, v)` with `Im(v/u) > 0`, used for the series.
    reduced: (Cx, Cx),
}

impl EllipticCurveData {
    /// Builds the curve at `digits` decimal digits of working precision.
    pub fn new(g2: &Cx, g3: &Cx, digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::invariant(
                "elliptic curve",
                format!("working precision {digits} is below the minimum of {MIN_DIGITS} digits"),
            ));
        }
        let bits = bits_for_digits(digits);
        let g2 = g2.with_bits(bits);
        let g3 = g3.with_bits(bits);

        let disc = discriminant(&g2, &g3);
        let scale = g2.abs_f64().powi(3).max(27.0 * g3.abs_f64().powi(2));
        if scale == 0.0 || disc.abs_f64() <= scale * 10f64.powi(-(digits as i32) + 3) {
            return Err(Error::SingularCurve);
        }

        let roots = cubic_roots(&g2, &g3, bits);
        let half: Vec<Cx> = (0..3)
            .map(|i| {
                let args: Vec<Cx> = (0..3).map(|j| &roots[i] - &roots[j]).collect();
                carlson_rf(&args[0], &args[1], &args[2])
            })
            .collect();
        let gens: Vec<Cx> = half.iter().map(|z| z.mul_int(2)).collect();
        let reduced = lattice_from_generators(&gens)?;

        let is_real = g2.im.is_zero() && g3.im.is_zero();
        let (mut omega1, mut omega2) = if is_real {
            // Take the real period attached to the largest real root.
            let real_root = (0..3)
                .filter(|&i| roots[i].im.abs().to_f64() <= 10f64.powi(-(digits as i32) / 2))
                .max_by(|&i, &j| roots[i].re.partial_cmp(&roots[j].re).unwrap())
                .expect("a real cubic has a real root");
            let w1 = Cx::from_real(gens[real_root].re.clone());
            let w2 = complete_basis(&w1, &reduced);
            (w1, w2)
        } else {
            reduced.clone()
        };
        if (&omega2 / &omega1).im.is_negative() {
            omega2 = -&omega2;
        }
        let shift = (&omega2 / &omega1).re.round();
        omega2 = &omega2 - &omega1.scale(&Real::from_bigint(&shift, bits));
        if omega1.re.is_negative() && is_real {
            omega1 = -&omega1;
            omega2 = -&omega2;
            if (&omega2 / &omega1).im.is_negative() {
                omega2 = -&omega2;
            }
        }

        Ok(EllipticCurveData {
            g2,
            g3,
            digits,
            bits,
            roots,
            omega1,
            omega2,
            reduced,
        })
    }

    /// Convenience constructor for real invariants given as `f64`.
    pub fn from_f64(g2: f64, g3: f64, digits: u32) -> Result<Self> {
        let bits = bits_for_digits(digits);
        Self::new(
            &Cx::from_f64(g2, 0.0, bits),
            &Cx::from_f64(g3, 0.0, bits),
            digits,
        )
    }

    pub fn g2(&self) -> &Cx {
        &self.g2
    }

    pub fn g3(&self) -> &Cx {
        &self.g3
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Roots `e_1, e_2, e_3` of `4x³ − g2·x − g3`.
    pub fn roots(&self) -> &[Cx; 3] {
        &self.roots
    }

    /// Normalized period basis `(ω1, ω2)` with `Im(ω2/ω1) > 0`. For real
    /// invariants `ω1` is the positive real period.
    pub fn periods(&self) -> (&Cx, &Cx) {
        (&self.omega1, &self.omega2)
    }

    /// `τ = ω2/ω1`.
    pub fn tau(&self) -> Cx {
        &self.omega2 / &self.omega1
    }

    pub fn discriminant(&self) -> Cx {
        discriminant(&self.g2, &self.g3)
    }

    /// Lifts a decimal literal or `f64` pair to the working precision.
    pub fn cx(&self, re: f64, im: f64) -> Cx {
        Cx::from_f64(re, im, self.bits)
    }

    /// `4x³ − g2·x − g3`.
    pub fn cubic(&self, x: &Cx) -> Cx {
        let x2 = x * x;
        &(&(&x2 * x).mul_int(4) - &(&self.g2 * x)) - &self.g3
    }

    /// Relative residual of the curve equation at `(x, y)`.
    pub fn residual(&self, x: &Cx, y: &Cx) -> f64 {
        let y2 = y * y;
        let rhs = self.cubic(x);
        let scale = 1f64
            .max(y2.abs_f64())
            .max(4.0 * x.abs_f64().powi(3))
            .max(self.g3.abs_f64());
        (&y2 - &rhs).abs_f64() / scale
    }

    /// Validated affine point.
    pub fn point(&self, x: &Cx, y: &Cx) -> Result<CurvePoint> {
        let x = x.with_bits(self.bits);
        let y = y.with_bits(self.bits);
        self.check_on_curve(&x, &y)?;
        Ok(CurvePoint::Affine { x, y })
    }

    /// The point with abscissa `x` and `y` the principal root of the cubic.
    pub fn point_with_x(&self, x: &Cx) -> CurvePoint {
        let x = x.with_bits(self.bits);
        let y = self.cubic(&x).sqrt();
        CurvePoint::Affine { x, y }
    }

    /// The 2-torsion point `(e_i, 0)`.
    pub fn two_torsion_point(&self, i: usize) -> CurvePoint {
        CurvePoint::Affine {
            x: self.roots[i].clone(),
            y: Cx::zero(self.bits),
        }
    }

    fn check_on_curve(&self, x: &Cx, y: &Cx) -> Result<()> {
        let residual = self.residual(x, y);
        if residual > self.curve_tolerance() {
            return Err(Error::OffCurve {
                x: format!("{x:.15}"),
                y: format!("{y:.15}"),
                residual,
            });
        }
        Ok(())
    }

    fn curve_tolerance(&self) -> f64 {
        10f64.powi(-(self.digits as i32) + 2)
    }

    pub fn negate(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: -y,
            },
        }
    }

    /// Third intersection of the curve with the line through `p` and `q`
    /// (the tangent when `p = q`). `(p) + (q) + (r) − 3(∞)` is the divisor
    /// of that line.
    pub fn third_intersection(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) = (p, q)
        else {
            // the line through ∞ and p is vertical
            return match (p, q) {
                (CurvePoint::Infinity, CurvePoint::Infinity) => CurvePoint::Infinity,
                (CurvePoint::Infinity, other) | (other, CurvePoint::Infinity) => self.negate(other),
                _ => unreachable!(),
            };
        };
        let tol = 10f64.powi(-(self.digits as i32) / 2);
        let dx = x2 - x1;
        let slope = if dx.abs_f64() > tol {
            &(y2 - y1) / &dx
        } else if (y1 + y2).abs_f64() <= tol {
            return CurvePoint::Infinity;
        } else {
            let num = &(x1 * x1).mul_int(12) - &self.g2;
            &num / &y1.mul_int(2)
        };
        let intercept = y1 - &(&slope * x1);
        let x3 = &(&(&slope * &slope).div_int(4) - x1) - x2;
        let y3 = &(&slope * &x3) + &intercept;
        CurvePoint::Affine { x: x3, y: y3 }
    }

    /// Group law with `∞` as identity.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        self.negate(&self.third_intersection(p, q))
    }

    /// A representative `z` of the elliptic logarithm: `(℘(z), ℘'(z)) = (x, y)`.
    pub fn elliptic_log(&self, p: &CurvePoint) -> Result<Cx> {
        let (x, y) = match p {
            CurvePoint::Infinity => return Ok(Cx::zero(self.bits)),
            CurvePoint::Affine { x, y } => (x.with_bits(self.bits), y.with_bits(self.bits)),
        };
        self.check_on_curve(&x, &y)?;
        let args: Vec<Cx> = self.roots.iter().map(|e| &x - e).collect();
        let z = carlson_rf(&args[0], &args[1], &args[2]);
        let roots: Vec<Cx> = args.iter().map(Cx::sqrt).collect();
        let s = (&(&roots[0] * &roots[1]) * &roots[2]).mul_int(-2);
        if (&y - &s).abs_f64() <= (&y + &s).abs_f64() {
            Ok(z)
        } else {
            Ok(-&z)
        }
    }

    /// Coordinates `(a, b)` with `z = a·ω1 + b·ω2`.
    pub fn coordinates(&self, z: &Cx) -> (Real, Real) {
        lattice_coordinates(z, &self.omega1, &self.omega2)
    }

    /// Reduces `z` into the fundamental parallelogram `{a·ω1 + b·ω2 : a, b ∈ [0, 1)}`.
    /// Coordinates within `10^{-(digits − 6)}` of an integer snap to it.
    pub fn reduce(&self, z: &Cx) -> LatticePoint {
        let (a, b) = self.coordinates(z);
        let snap = Real::from_f64(10f64.powi(-(self.digits as i32) + 6), self.bits);
        let unit = |t: Real| -> Real {
            let t = &t - &Real::from_bigint(&t.floor(), self.bits);
            let one = Real::one(self.bits);
            if t < snap || &one - &t < snap {
                Real::zero(self.bits)
            } else {
                t
            }
        };
        let a = unit(a);
        let b = unit(b);
        let z = &self.omega1.scale(&a) + &self.omega2.scale(&b);
        LatticePoint { z, a, b }
    }

    /// Distance from `z` to the nearest lattice point.
    pub fn lattice_distance(&self, z: &Cx) -> f64 {
        let (u, v) = &self.reduced;
        let (a, b) = lattice_coordinates(z, u, v);
        let (fa, fb) = (a.floor(), b.floor());
        let mut best = f64::INFINITY;
        for da in 0..2 {
            for db in 0..2 {
                let ka = Real::from_bigint(&(&fa + da), self.bits);
                let kb = Real::from_bigint(&(&fb + db), self.bits);
                let w = &(z - &u.scale(&ka)) - &v.scale(&kb);
                best = best.min(w.abs_f64());
            }
        }
        best
    }

    /// Abel–Jacobi image of a degree-zero divisor in `J¹ = ℂ/Λ`.
    pub fn aj(&self, divisor: &Divisor) -> Result<LatticePoint> {
        let degree = divisor.degree();
        if degree != 0 {
            return Err(Error::NonzeroDegree(degree));
        }
        let mut total = Cx::zero(self.bits);
        for (point, multiplicity) in divisor.terms() {
            if *multiplicity == 0 {
                continue;
            }
            let z = self.reduce(&self.elliptic_log(point)?).z;
            total = &total + &z.mul_int(*multiplicity);
        }
        Ok(self.reduce(&total))
    }

    /// Tolerance used when deciding that a multiple lies on the lattice.
    pub fn torsion_tolerance(&self) -> f64 {
        10f64.powi(-(2 * self.digits as i32) / 3) * self.reduced.0.abs_f64()
    }

    /// Least `k ≤ bound` with `k·elliptic_log(p) ∈ Λ`, if any.
    pub fn is_torsion(&self, p: &CurvePoint, bound: u32) -> Result<Option<u32>> {
        let z = self.elliptic_log(p)?;
        let tol = self.torsion_tolerance();
        Ok((1..=bound).find(|&k| self.lattice_distance(&z.mul_int(i64::from(k))) < tol))
    }

    /// `(℘(z), ℘'(z))` by q-series, independent of the logarithm.
    pub fn weierstrass_p(&self, z: &Cx) -> (Cx, Cx) {
        let bits = self.bits;
        let (u0, v0) = &self.reduced;
        let tau = v0 / u0;
        let (a, b) = lattice_coordinates(z, u0, v0);
        // centre the imaginary coordinate so both u and 1/u stay bounded
        let b_shift = Real::from_bigint(&b.round(), bits);
        let a_shift = Real::from_bigint(&a.round(), bits);
        let w = &(&(z / u0) - &tau.scale(&b_shift)) - &Cx::from_real(a_shift);

        let two_pi_i = Cx::new(Real::zero(bits), Real::pi(bits).shl(1));
        let q = (&two_pi_i * &tau).exp();
        let u = (&two_pi_i * &w).exp();
        let u_inv = u.recip();
        let one = Cx::one(bits);

        let pole = |t: &Cx| -> (Cx, Cx) {
            let d = &one - t;
            let d2 = &d * &d;
            let p = t / &d2;
            let dp = &(t * &(&one + t)) / &(&d2 * &d);
            (p, dp)
        };

        let (p0, mut sdp) = pole(&u);
        let mut sp = &Cx::from_real(Real::one(bits).div_int(12)) + &p0;
        let mut qn = q.clone();
        let cutoff = 2f64.powi(-(bits as i32) - 8);
        for _ in 0..10_000 {
            if qn.abs_f64() < cutoff {
                break;
            }
            let (p1, dp1) = pole(&(&qn * &u));
            let (p2, dp2) = pole(&(&qn * &u_inv));
            let (p3, _) = pole(&qn);
            sp = &(&(&sp + &p1) + &p2) - &p3.mul_int(2);
            sdp = &(&sdp + &dp1) - &dp2;
            qn = &qn * &q;
        }
        let c2 = &two_pi_i * &two_pi_i;
        let c3 = &c2 * &two_pi_i;
        let u2 = u0 * u0;
        let p = &(&c2 * &sp) / &u2;
        let dp = &(&c3 * &sdp) / &(&u2 * u0);
        (p, dp)
    }

    /// `(g2, g3)` recomputed from the lattice by Eisenstein series.
    pub fn eisenstein_invariants(&self) -> (Cx, Cx) {
        eisenstein_invariants(&self.reduced.0, &self.reduced.1)
    }
}

/// Period basis of `y² = 4x³ − g2·x − g3` at `digits` decimal digits.
pub fn periods(g2: &Cx, g3: &Cx, digits: u32) -> Result<(Cx, Cx)> {
    let curve = EllipticCurveData::new(g2, g3, digits)?;
    let (w1, w2) = curve.periods();
    Ok((w1.clone(), w2.clone()))
}

fn discriminant(g2: &Cx, g3: &Cx) -> Cx {
    &(&(g2 * g2) * g2) - &(g3 * g3).mul_int(27)
}

/// `g2 = 60·Σ'ω⁻⁴` and `g3 = 140·Σ'ω⁻⁶` over `Λ = ℤu + ℤv` with `Im(v/u) > 0`,
/// summed as q-expansions.
pub fn eisenstein_invariants(u: &Cx, v: &Cx) -> (Cx, Cx) {
    let bits = u.bits();
    let tau = v / u;
    let two_pi_i = Cx::new(Real::zero(bits), Real::pi(bits).shl(1));
    let q = (&two_pi_i * &tau).exp();
    let mut e4 = Cx::one(bits);
    let mut e6 = Cx::one(bits);
    let mut qn = q.clone();
    let cutoff = 2f64.powi(-(bits as i32) - 8);
    let mut n: i64 = 1;
    while qn.abs_f64() * (n as f64).powi(6) >= cutoff && n < 100_000 {
        let (s3, s5) = divisor_sums(n);
        e4 = &e4 + &qn.scale(&Real::from_bigint(&(s3 * 240), bits));
        e6 = &e6 - &qn.scale(&Real::from_bigint(&(s5 * 504), bits));
        qn = &qn * &q;
        n += 1;
    }
    let two_pi = Cx::from_real(Real::pi(bits).shl(1));
    let k = &two_pi / u;
    let k2 = &k * &k;
    let k4 = &k2 * &k2;
    let k6 = &k4 * &k2;
    let g2 = (&k4 * &e4).div_int(12);
    let g3 = (&k6 * &e6).div_int(216);
    (g2, g3)
}

fn divisor_sums(n: i64) -> (BigInt, BigInt) {
    let mut s3 = BigInt::zero();
    let mut s5 = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            for e in [d, n / d] {
                let e = BigInt::from(e);
                s3 += num_traits::pow(e.clone(), 3);
                s5 += num_traits::pow(e, 5);
            }
            if d * d == n {
                let e = BigInt::from(d);
                s3 -= num_traits::pow(e.clone(), 3);
                s5 -= num_traits::pow(e, 5);
            }
        }
        d += 1;
    }
    (s3, s5)
}

/// Roots of `4x³ − g2·x − g3`: Durand–Kerner in double precision, then
/// Newton refinement at working precision. Sorted by real part, descending.
fn cubic_roots(g2: &Cx, g3: &Cx, bits: u32) -> [Cx; 3] {
    let (g2r, g2i) = g2.to_f64();
    let (g3r, g3i) = g3.to_f64();
    let c1 = Complex64::new(-g2r / 4.0, -g2i / 4.0);
    let c0 = Complex64::new(-g3r / 4.0, -g3i / 4.0);
    let f = |x: Complex64| x * x * x + c1 * x + c0;
    let radius = 1.0 + c1.norm().max(c0.norm()).sqrt();
    let seed = Complex64::new(0.4, 0.9);
    let mut r = [
        seed * radius,
        seed * seed * radius,
        seed * seed * seed * radius,
    ];
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..3 {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..3 {
                if i != j {
                    den *= r[i] - r[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-300, 0.0);
            }
            let step = f(r[i]) / den;
            r[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta <= 1e-15 * radius {
            break;
        }
    }

    let mut roots: Vec<Cx> = r
        .iter()
        .map(|z| {
            let mut x = Cx::from_f64(z.re, z.im, bits);
            let stop = 2f64.powi(-(bits as i32) + 16) * radius;
            for _ in 0..64 {
                let x2 = &x * &x;
                let fx = &(&(&x2 * &x).mul_int(4) - &(g2 * &x)) - g3;
                let dfx = &x2.mul_int(12) - g2;
                if dfx.is_zero() {
                    break;
                }
                let step = &fx / &dfx;
                x = &x - &step;
                if step.abs_f64() <= stop {
                    break;
                }
            }
            x
        })
        .collect();
    roots.sort_by(|a, b| {
        b.re.partial_cmp(&a.re)
            .unwrap()
            .then(b.im.partial_cmp(&a.im).unwrap())
    });
    [roots[0].clone(), roots[1].clone(), roots[2].clone()]
}

/// Carlson's symmetric integral `R_F(x, y, z) = ½∫₀^∞ dt/√((t+x)(t+y)(t+z))`
/// by the duplication theorem, with principal square roots.
pub fn carlson_rf(x: &Cx, y: &Cx, z: &Cx) -> Cx {
    let bits = x.bits();
    let tol = 2f64.powi(-(bits as i32) / 6 - 6);
    let (mut x, mut y, mut z) = (x.clone(), y.clone(), z.clone());
    let mut mu = (&(&x + &y) + &z).div_int(3);
    for _ in 0..400 {
        let m = mu.abs_f64();
        let dev = (&x - &mu)
            .abs_f64()
            .max((&y - &mu).abs_f64())
            .max((&z - &mu).abs_f64());
        if dev <= tol * m {
            break;
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = &(&(&sx * &sy) + &(&sx * &sz)) + &(&sy * &sz);
        x = (&x + &lambda).div_int(4);
        y = (&y + &lambda).div_int(4);
        z = (&z + &lambda).div_int(4);
        mu = (&(&x + &y) + &z).div_int(3);
    }
    let one = Cx::one(bits);
    let big_x = &one - &(&x / &mu);
    let big_y = &one - &(&y / &mu);
    let big_z = -&(&big_x + &big_y);
    let e2 = &(&big_x * &big_y) - &(&big_z * &big_z);
    let e3 = &(&big_x * &big_y) * &big_z;
    let series = &(&(&(&one - &e2.div_int(10)) + &e3.div_int(14)) + &(&e2 * &e2).div_int(24))
        - &(&e2 * &e3).mul_int(3).div_int(44);
    &series / &mu.sqrt()
}

fn lattice_coordinates(z: &Cx, u: &Cx, v: &Cx) -> (Real, Real) {
    let tau = v / u;
    let w = z / u;
    let b = &w.im / &tau.im;
    let a = &w.re - &(&b * &tau.re);
    (a, b)
}

fn gauss_reduce(u: &Cx, v: &Cx) -> (Cx, Cx) {
    let (mut u, mut v) = (u.clone(), v.clone());
    let bits = u.bits();
    for _ in 0..10_000 {
        if v.norm_sqr() < u.norm_sqr() {
            std::mem::swap(&mut u, &mut v);
        }
        let m = (&(&v * &u.conj()).re / &u.norm_sqr()).round();
        if m.is_zero() {
            break;
        }
        v = &v - &u.scale(&Real::from_bigint(&m, bits));
    }
    if (&v / &u).im.is_negative() {
        v = -&v;
    }
    (u, v)
}

/// Reduced basis of the lattice generated by `gens` (rank 2 expected).
fn lattice_from_generators(gens: &[Cx]) -> Result<(Cx, Cx)> {
    let independent = |u: &Cx, v: &Cx| {
        let r = v / u;
        r.im.abs().to_f64() > 1e-8 * r.abs_f64().max(1.0)
    };
    let mut basis = None;
    'outer: for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if independent(&gens[i], &gens[j]) {
                basis = Some((i, j));
                break 'outer;
            }
        }
    }
    let (i, j) = basis.ok_or_else(|| {
        Error::invariant(
            "elliptic curve",
            "half-periods are collinear; lattice is degenerate",
        )
    })?;
    let mut reduced = gauss_reduce(&gens[i], &gens[j]);
    for (k, g) in gens.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        // fold in further generators: if g is not already in the lattice,
        // the generated lattice is strictly finer and is re-reduced from
        // the shortest non-trivial remainder.
        let (a, b) = lattice_coordinates(g, &reduced.0, &reduced.1);
        let bits = g.bits();
        let ra = Real::from_bigint(&a.round(), bits);
        let rb = Real::from_bigint(&b.round(), bits);
        let rem = &(g - &reduced.0.scale(&ra)) - &reduced.1.scale(&rb);
        if rem.abs_f64() > 1e-8 * reduced.0.abs_f64() {
            return Err(Error::invariant(
                "elliptic curve",
                "half-periods generate inconsistent lattices",
            ));
        }
    }
    reduced = gauss_reduce(&reduced.0, &reduced.1);
    Ok(reduced)
}

/// Second basis vector `w2` with `{w1, w2}` a basis of `ℤu + ℤv`, given a
/// primitive lattice vector `w1`.
fn complete_basis(w1: &Cx, (u, v): &(Cx, Cx)) -> Cx {
    let (a, b) = lattice_coordinates(w1, u, v);
    let a = a.round().to_i64().expect("small coordinate");
    let b = b.round().to_i64().expect("small coordinate");
    // a·d − b·c = 1
    let (g, x, y) = ext_gcd(a, b);
    debug_assert_eq!(g.abs(), 1, "period is not primitive");
    let (d, c) = (x * g, -y * g);
    &u.mul_int(c) + &v.mul_int(d)
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemniscatic_real_period() {
        let curve = EllipticCurveData::from_f64(4.0, 0.0, 40).unwrap();
        let (w1, w2) = curve.periods();
        // ω1/2 = π / (2·AGM(√2, 1))
        let half = w1.re.to_f64() / 2.0;
        assert!((half - 1.311_028_777_146_059_9).abs() < 1e-15, "{half}");
        assert!(w1.im.is_zero());
        // square lattice: ω2 = i·ω1
        assert!((w2.re.to_f64()).abs() < 1e-30);
        assert!((w2.im.to_f64() - w1.re.to_f64()).abs() < 1e-14);
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(
            EllipticCurveData::from_f64(3.0, 1.0, 40).unwrap_err(),
            Error::SingularCurve
        );
        assert_eq!(
            EllipticCurveData::from_f64(0.0, 0.0, 40).unwrap_err(),
            Error::SingularCurve
        );
    }

    #[test]
    fn eisenstein_round_trip_complex() {
        let curve = EllipticCurveData::new(
            &Cx::parse("1.3+0.7i", 200).unwrap(),
            &Cx::parse("-0.4+2.1i", 200).unwrap(),
            40,
        )
        .unwrap();
        let (g2, g3) = curve.eisenstein_invariants();
        assert!((&g2 - curve.g2()).abs_f64() < 1e-35);
        assert!((&g3 - curve.g3()).abs_f64() < 1e-35);
    }

    #[test]
    fn degree_rejected() {
        let curve = EllipticCurveData::from_f64(4.0, 0.0, 30).unwrap();
        let d = Divisor::from_terms([(CurvePoint::Infinity, 2)]);
        assert_eq!(curve.aj(&d).unwrap_err(), Error::NonzeroDegree(2));
    }

    #[test]
    fn off_curve_rejected() {
        let curve = EllipticCurveData::from_f64(4.0, 0.0, 30).unwrap();
        let p = CurvePoint::affine(curve.cx(2.0, 0.0), curve.cx(1.0, 0.0));
        assert!(matches!(
            curve.elliptic_log(&p),
            Err(Error::OffCurve { .. })
        ));
    }
}
