//! Fixed-point arbitrary precision real and complex arithmetic.
//!
//! A [`Real`] is `m / 2^bits` for a big integer `m`. Precision is absolute,
//! which is what period and elliptic-logarithm computations need: every
//! quantity lives on a bounded scale set by the curve.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Binary precision for `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 48
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real {
    m: BigInt,
    bits: u32,
}

impl Real {
    pub fn zero(bits: u32) -> Self {
        Real {
            m: BigInt::zero(),
            bits,
        }
    }

    pub fn one(bits: u32) -> Self {
        Real {
            m: BigInt::one() << bits,
            bits,
        }
    }

    pub fn from_i64(v: i64, bits: u32) -> Self {
        Real {
            m: BigInt::from(v) << bits,
            bits,
        }
    }

    pub fn from_f64(v: f64, bits: u32) -> Self {
        assert!(v.is_finite(), "non-finite input");
        if v == 0.0 {
            return Self::zero(bits);
        }
        let raw = v.to_bits();
        let sign = if raw >> 63 == 0 { 1i64 } else { -1 };
        let exp_bits = ((raw >> 52) & 0x7ff) as i64;
        let frac = raw & 0x000f_ffff_ffff_ffff;
        let (mant, exp) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | 0x0010_0000_0000_0000, exp_bits - 1075)
        };
        let m = BigInt::from(mant) * sign;
        let shift = exp + i64::from(bits);
        let m = if shift >= 0 {
            m << shift as u32
        } else {
            m >> (-shift) as u32
        };
        Real { m, bits }
    }

    /// Parses a decimal literal such as `-12.5`, `3`, `1e-3` or `2.5E4`
    /// exactly (up to the working precision).
    pub fn parse(s: &str, bits: u32) -> Option<Self> {
        let s = s.trim();
        let (mantissa, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
            None => (s, 0),
        };
        let (neg, digits) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = match digits.find('.') {
            Some(i) => (&digits[..i], &digits[i + 1..]),
            None => (digits, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
        {
            return None;
        }
        let all = format!("{int_part}{frac_part}");
        let n: BigInt = if all.is_empty() {
            BigInt::zero()
        } else {
            all.parse().ok()?
        };
        let n = if neg { -n } else { n };
        let scale = exp - frac_part.len() as i64;
        let ten = BigInt::from(10);
        let m = if scale >= 0 {
            (n * num_traits::pow(ten, scale as usize)) << bits
        } else {
            (n << bits) / num_traits::pow(ten, (-scale) as usize)
        };
        Some(Real { m, bits })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Same value at another precision.
    pub fn with_bits(&self, bits: u32) -> Self {
        let m = if bits >= self.bits {
            &self.m << (bits - self.bits)
        } else {
            &self.m >> (self.bits - bits)
        };
        Real { m, bits }
    }

    pub fn to_f64(&self) -> f64 {
        if self.m.is_zero() {
            return 0.0;
        }
        let len = self.m.bits() as i64;
        let drop = (len - 62).max(0);
        let top = (&self.m >> drop as u32).to_f64().unwrap_or(0.0);
        let e = (drop - i64::from(self.bits)) as i32;
        top * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.sign() == Sign::Minus
    }

    pub fn abs(&self) -> Self {
        Real {
            m: self.m.abs(),
            bits: self.bits,
        }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Real {
            m: &self.m * k,
            bits: self.bits,
        }
    }

    pub fn div_int(&self, k: i64) -> Self {
        Real {
            m: &self.m / k,
            bits: self.bits,
        }
    }

    /// `self * 2^k`.
    pub fn shl(&self, k: u32) -> Self {
        Real {
            m: &self.m << k,
            bits: self.bits,
        }
    }

    /// `self / 2^k`.
    pub fn shr(&self, k: u32) -> Self {
        Real {
            m: &self.m >> k,
            bits: self.bits,
        }
    }

    /// Nearest integer.
    pub fn round(&self) -> BigInt {
        let half = BigInt::one() << (self.bits - 1);
        (&self.m + half) >> self.bits
    }

    pub fn floor(&self) -> BigInt {
        &self.m >> self.bits
    }

    pub fn from_bigint(k: &BigInt, bits: u32) -> Self {
        Real { m: k << bits, bits }
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of a negative number");
        Real {
            m: (&self.m << self.bits).sqrt(),
            bits: self.bits,
        }
    }

    pub fn pi(bits: u32) -> Self {
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
        let w = bits + 32;
        let atan_inv = |n: i64| -> BigInt {
            let one = BigInt::one() << w;
            let n2 = BigInt::from(n * n);
            let mut power = one / n;
            let mut sum = BigInt::zero();
            let mut k = 0i64;
            while !power.is_zero() {
                let term = &power / (2 * k + 1);
                if k % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
                power /= &n2;
                k += 1;
            }
            sum
        };
        let m = atan_inv(5) * 16 - atan_inv(239) * 4;
        Real { m, bits: w }.with_bits(bits)
    }

    pub fn exp(&self) -> Self {
        let bits = self.bits;
        let lower = -(f64::from(bits) * std::f64::consts::LN_2) - 8.0;
        let approx = self.to_f64();
        if approx < lower {
            return Real::zero(bits);
        }
        let s = (approx.abs().max(1.0).log2().ceil() as u32) + 10;
        let w = bits + 32 + s;
        let r = self.with_bits(w).shr(s);
        let one = Real::one(w);
        let mut sum = one.clone();
        let mut term = one;
        let mut k = 1i64;
        loop {
            term = (&term * &r).div_int(k);
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
            k += 1;
        }
        for _ in 0..s {
            sum = &sum * &sum;
        }
        sum.with_bits(bits)
    }

    /// `(cos x, sin x)`.
    pub fn cos_sin(&self) -> (Self, Self) {
        let bits = self.bits;
        let s = 10u32;
        let w = bits + 40;
        let x = self.with_bits(w);
        let two_pi = Real::pi(w).shl(1);
        let k = (&x / &two_pi).round();
        let r = &x - &(&Real::from_bigint(&k, w) * &two_pi);
        let r = r.shr(s);
        let r2 = &r * &r;
        let mut cos = Real::one(w);
        let mut sin = r.clone();
        let mut ct = Real::one(w);
        let mut st = r;
        let mut n = 1i64;
        loop {
            ct = (&ct * &r2).div_int((2 * n - 1) * (2 * n));
            st = (&st * &r2).div_int((2 * n) * (2 * n + 1));
            if ct.is_zero() && st.is_zero() {
                break;
            }
            if n % 2 == 1 {
                cos = &cos - &ct;
                sin = &sin - &st;
            } else {
                cos = &cos + &ct;
                sin = &sin + &st;
            }
            n += 1;
        }
        for _ in 0..s {
            let c2 = &(&cos * &cos) - &(&sin * &sin);
            let s2 = (&sin * &cos).shl(1);
            cos = c2;
            sin = s2;
        }
        (cos.with_bits(bits), sin.with_bits(bits))
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        debug_assert_eq!(self.bits, other.bits);
        Some(self.m.cmp(&other.m))
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                debug_assert_eq!(self.bits, rhs.bits, "precision mismatch");
                let f: fn(&Real, &Real) -> BigInt = $body;
                Real {
                    m: f(self, rhs),
                    bits: self.bits,
                }
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
    };
}

real_binop!(Add, add, |a, b| &a.m + &b.m);
real_binop!(Sub, sub, |a, b| &a.m - &b.m);
real_binop!(Mul, mul, |a, b| {
    let p = &a.m * &b.m;
    (p + (BigInt::one() << (a.bits - 1))) >> a.bits
});
real_binop!(Div, div, |a, b| {
    assert!(!b.m.is_zero(), "division by zero");
    (&a.m << a.bits) / &b.m
});

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            m: -&self.m,
            bits: self.bits,
        }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

impl fmt::Display for Real {
    /// Decimal expansion with the formatter's precision (default 20 digits).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        let scale = num_traits::pow(BigInt::from(10), digits);
        let half = BigInt::one() << (self.bits.max(1) - 1);
        let scaled = &self.m.abs() * &scale;
        let q: BigInt = (scaled + half) >> self.bits;
        let int = &q / &scale;
        let frac = &q % &scale;
        let sign = if self.is_negative() && !q.is_zero() {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            write!(f, "{sign}{int}")
        } else {
            write!(
                f,
                "{sign}{int}.{:0>width$}",
                frac.to_string(),
                width = digits
            )
        }
    }
}

/// Complex number over [`Real`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cx {
    pub re: Real,
    pub im: Real,
}

impl Cx {
    pub fn new(re: Real, im: Real) -> Self {
        debug_assert_eq!(re.bits, im.bits);
        Cx { re, im }
    }

    pub fn zero(bits: u32) -> Self {
        Cx::new(Real::zero(bits), Real::zero(bits))
    }

    pub fn one(bits: u32) -> Self {
        Cx::new(Real::one(bits), Real::zero(bits))
    }

    pub fn i(bits: u32) -> Self {
        Cx::new(Real::zero(bits), Real::one(bits))
    }

    pub fn from_real(re: Real) -> Self {
        let bits = re.bits;
        Cx::new(re, Real::zero(bits))
    }

    pub fn from_f64(re: f64, im: f64, bits: u32) -> Self {
        Cx::new(Real::from_f64(re, bits), Real::from_f64(im, bits))
    }

    pub fn from_i64(re: i64, bits: u32) -> Self {
        Cx::from_real(Real::from_i64(re, bits))
    }

    /// Parses `a`, `bi`, `a+bi`, `a-bi` (also with `j`), with decimal parts
    /// as accepted by [`Real::parse`].
    pub fn parse(s: &str, bits: u32) -> Option<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return None;
        }
        let imag_unit = s.ends_with('i') || s.ends_with('j');
        if !imag_unit {
            return Real::parse(&s, bits).map(Cx::from_real);
        }
        let body = &s[..s.len() - 1];
        // split at the last sign that is not part of an exponent or leading
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let parse_im = |t: &str| -> Option<Real> {
            match t {
                "" | "+" => Some(Real::one(bits)),
                "-" => Some(-Real::one(bits)),
                _ => Real::parse(t, bits),
            }
        };
        match split {
            Some(k) => Some(Cx::new(
                Real::parse(&body[..k], bits)?,
                parse_im(&body[k..])?,
            )),
            None => Some(Cx::new(Real::zero(bits), parse_im(body)?)),
        }
    }

    pub fn bits(&self) -> u32 {
        self.re.bits
    }

    pub fn with_bits(&self, bits: u32) -> Self {
        Cx::new(self.re.with_bits(bits), self.im.with_bits(bits))
    }

    pub fn conj(&self) -> Self {
        Cx::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn abs_f64(&self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(&self, k: &Real) -> Self {
        Cx::new(&self.re * k, &self.im * k)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Cx::new(self.re.mul_int(k), self.im.mul_int(k))
    }

    pub fn div_int(&self, k: i64) -> Self {
        Cx::new(self.re.div_int(k), self.im.div_int(k))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Principal square root (branch cut along the negative reals, which
    /// map to the positive imaginary axis).
    pub fn sqrt(&self) -> Self {
        let bits = self.bits();
        if self.is_zero() {
            return Cx::zero(bits);
        }
        let r = self.abs();
        let zero = Real::zero(bits);
        let a = (&r + &self.re).shr(1).max(zero.clone()).sqrt();
        let b = (&r - &self.re).shr(1).max(zero).sqrt();
        if self.im.is_negative() {
            Cx::new(a, -b)
        } else {
            Cx::new(a, b)
        }
    }

    pub fn exp(&self) -> Self {
        let e = self.re.exp();
        let (c, s) = self.im.cos_sin();
        Cx::new(&e * &c, &e * &s)
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut out = Cx::one(self.bits());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Cx::new(&self.re / &n, &(-&self.im) / &n)
    }
}

impl<'a> Add<&'a Cx> for &'a Cx {
    type Output = Cx;
    fn add(self, rhs: &'a Cx) -> Cx {
        Cx::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Cx> for &'a Cx {
    type Output = Cx;
    fn sub(self, rhs: &'a Cx) -> Cx {
        Cx::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Cx> for &'a Cx {
    type Output = Cx;
    fn mul(self, rhs: &'a Cx) -> Cx {
        Cx::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl<'a> Div<&'a Cx> for &'a Cx {
    type Output = Cx;
    fn div(self, rhs: &'a Cx) -> Cx {
        let n = rhs.norm_sqr();
        let num = self * &rhs.conj();
        Cx::new(&num.re / &n, &num.im / &n)
    }
}

impl Neg for &Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx::new(-&self.re, -&self.im)
    }
}

macro_rules! cx_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<Cx> for Cx {
            type Output = Cx;
            fn $method(self, rhs: Cx) -> Cx {
                (&self).$method(&rhs)
            }
        }
    };
}
cx_owned!(Add, add);
cx_owned!(Sub, sub);
cx_owned!(Mul, mul);
cx_owned!(Div, div);

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        let im = &self.im;
        let sign = if im.is_negative() { "-" } else { "+" };
        write!(f, "{:.*} {sign} {:.*}i", digits, self.re, digits, im.abs())
    }
}
