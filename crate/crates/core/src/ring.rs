//! Graded-commutative ring presentations `Z[g1, ..., gk] / (relations)` with
//! even-degree generators, used for cellular models and projective bundles.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank, IntMatrix};

/// Polynomial with integer coefficients in a fixed number of variables,
/// keyed by exponent vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(nvars, vec![0; nvars], 1)
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, coeff: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        let c = coeff.into();
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// `coeff * x_var^power`.
    pub fn var_power(nvars: usize, var: usize, power: u32, coeff: impl Into<BigInt>) -> Self {
        let mut e = vec![0; nvars];
        e[var] = power;
        Self::monomial(nvars, e, coeff)
    }

    pub fn from_terms<C: Into<BigInt>>(nvars: usize, terms: Vec<(Vec<u32>, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p = p.add(&Self::monomial(nvars, e, c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out = out.add(&Poly::monomial(self.nvars, e, ca * cb));
            }
        }
        out
    }

    /// Re-embeds into `nvars` variables, placing the current ones at
    /// `offset..offset + self.nvars`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Poly {
        assert!(offset + self.nvars <= nvars);
        let mut out = Poly::zero(nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; nvars];
            f[offset..offset + self.nvars].copy_from_slice(e);
            out.terms.insert(f, c.clone());
        }
        out
    }

    /// Weighted degrees of the terms (empty for the zero polynomial).
    fn degrees(&self, weights: &[u32]) -> Vec<u32> {
        let mut d: Vec<u32> = self
            .terms
            .keys()
            .map(|e| e.iter().zip(weights).map(|(a, w)| a * w).sum())
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

/// Monomials (as exponent vectors) of weighted degree exactly `deg`.
fn monomials_of_degree(weights: &[u32], deg: u32) -> Vec<Vec<u32>> {
    fn go(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[i];
        let max = left / w;
        for k in 0..=max {
            cur.push(k);
            go(weights, i + 1, left - k * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, 0, deg, &mut Vec::new(), &mut out);
    out
}

/// A presentation of `H^*(X; Z)` by generators of positive even degree and
/// homogeneous relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingModel {
    generators: Vec<(String, u32)>,
    relations: Vec<Poly>,
}

impl RingModel {
    /// The ring `Z` in degree 0.
    pub fn trivial() -> Self {
        RingModel {
            generators: Vec::new(),
            relations: Vec::new(),
        }
    }

    pub fn new(generators: Vec<(String, u32)>, relations: Vec<Poly>) -> Result<Self> {
        let ring = RingModel {
            generators,
            relations,
        };
        ring.check()?;
        Ok(ring)
    }

    fn check(&self) -> Result<()> {
        for (name, d) in &self.generators {
            if *d == 0 || d % 2 == 1 {
                return Err(Error::invariant(
                    "ring",
                    format!(
                        "generator {name} has degree {d}; only positive even degrees are supported"
                    ),
                ));
            }
        }
        let n = self.generators.len();
        let w = self.weights();
        for (i, r) in self.relations.iter().enumerate() {
            if r.nvars != n {
                return Err(Error::invariant(
                    "ring",
                    format!("relation {i} uses {} variables, ring has {n}", r.nvars),
                ));
            }
            if r.degrees(&w).len() > 1 {
                return Err(Error::invariant(
                    "ring",
                    format!("relation {i} is not homogeneous"),
                ));
            }
        }
        Ok(())
    }

    /// `Z[xi] / (xi^(n+1))`, `deg xi = 2`.
    pub fn truncated_polynomial(name: &str, n: u32) -> Self {
        RingModel {
            generators: vec![(name.to_string(), 2)],
            relations: vec![Poly::var_power(1, 0, n + 1, 1)],
        }
    }

    pub fn generators(&self) -> &[(String, u32)] {
        &self.generators
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    fn weights(&self) -> Vec<u32> {
        self.generators.iter().map(|(_, d)| *d).collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|(n, _)| n == name)
    }

    /// Degree of a homogeneous element; `None` for zero or mixed degrees.
    pub fn degree_of(&self, f: &Poly) -> Option<u32> {
        match f.degrees(&self.weights()).as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// The generator as an element of the ring.
    pub fn generator(&self, name: &str) -> Option<Poly> {
        self.generator_index(name)
            .map(|i| Poly::var_power(self.nvars(), i, 1, 1))
    }

    /// Parses a polynomial in the generator names, e.g. `xi^2 - 3*h*xi + 2`.
    pub fn parse_poly(&self, text: &str) -> Result<Poly> {
        let n = self.nvars();
        let err = |detail: String| Error::parse(format!("polynomial `{text}`"), detail);
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty expression".into()));
        }
        // split into signed terms
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, c) in compact.chars().enumerate() {
            if c == '+' || c == '-' {
                if current.is_empty() && i > 0 {
                    return Err(err(format!("dangling sign at offset {i}")));
                }
                if !current.is_empty() {
                    terms.push((negative, std::mem::take(&mut current)));
                }
                negative = c == '-';
            } else {
                current.push(c);
            }
        }
        if current.is_empty() {
            return Err(err("expression ends with a sign".into()));
        }
        terms.push((negative, current));

        let mut out = Poly::zero(n);
        for (negative, term) in terms {
            let mut coeff = BigInt::one();
            let mut exps = vec![0u32; n];
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(err(format!("empty factor in `{term}`")));
                }
                if factor.chars().all(|c| c.is_ascii_digit()) {
                    coeff *= factor.parse::<BigInt>().map_err(|e| err(e.to_string()))?;
                    continue;
                }
                let (name, power) = match factor.split_once('^') {
                    Some((name, k)) => (
                        name,
                        k.parse::<u32>()
                            .map_err(|_| err(format!("bad exponent `{k}` in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                let i = self
                    .generator_index(name)
                    .ok_or_else(|| err(format!("unknown generator `{name}`")))?;
                exps[i] += power;
            }
            if negative {
                coeff = -coeff;
            }
            out = out.add(&Poly::monomial(n, exps, coeff));
        }
        Ok(out)
    }

    /// Prints `f` using the generator names; inverse of [`RingModel::parse_poly`].
    pub fn format_poly(&self, f: &Poly) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (exps, c)) in f.terms().enumerate() {
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = &self.generators[i].0;
                    if e == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let negative = c.is_negative();
            let magnitude = c.abs();
            let body = if mono.is_empty() {
                magnitude.to_string()
            } else if magnitude.is_one() {
                mono.join("*")
            } else {
                format!("{magnitude}*{}", mono.join("*"))
            };
            match (k, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => out.push_str(&format!("-{body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
                (_, true) => out.push_str(&format!(" - {body}")),
            }
        }
        out
    }

    /// Spanning set (as coefficient rows over the degree-`deg` monomials) of
    /// the degree-`deg` part of the relation ideal.
    fn ideal_rows(&self, deg: u32, basis: &[Vec<u32>]) -> Vec<Vec<BigInt>> {
        let w = self.weights();
        let index: BTreeMap<&Vec<u32>, usize> =
            basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut rows = Vec::new();
        for r in &self.relations {
            let Some(&rd) = r.degrees(&w).first() else {
                continue;
            };
            if rd > deg {
                continue;
            }
            for m in monomials_of_degree(&w, deg - rd) {
                let prod = r.mul(&Poly::monomial(self.nvars(), m, 1));
                let mut row = vec![BigInt::zero(); basis.len()];
                for (e, c) in prod.terms() {
                    row[index[e]] = c.clone();
                }
                rows.push(row);
            }
        }
        rows
    }

    /// Rank of the degree-`deg` part of the quotient ring.
    pub fn graded_dim(&self, deg: u32) -> usize {
        let basis = monomials_of_degree(&self.weights(), deg);
        let rows = self.ideal_rows(deg, &basis);
        if rows.is_empty() {
            return basis.len();
        }
        basis.len() - rank(&IntMatrix::from_rows(&rows))
    }

    /// Whether `f` vanishes in the quotient (tested over `Q`, degree by degree).
    pub fn reduces_to_zero(&self, f: &Poly) -> bool {
        assert_eq!(f.nvars, self.nvars());
        let w = self.weights();
        for deg in f.degrees(&w) {
            let basis = monomials_of_degree(&w, deg);
            let mut rows = self.ideal_rows(deg, &basis);
            let before = if rows.is_empty() {
                0
            } else {
                rank(&IntMatrix::from_rows(&rows))
            };
            let mut frow = vec![BigInt::zero(); basis.len()];
            for (e, c) in f.terms() {
                let ed: u32 = e.iter().zip(&w).map(|(a, b)| a * b).sum();
                if ed == deg {
                    let i = basis
                        .iter()
                        .position(|b| b == e)
                        .expect("monomial in basis");
                    frow[i] = c.clone();
                }
            }
            rows.push(frow);
            if rank(&IntMatrix::from_rows(&rows)) != before {
                return false;
            }
        }
        true
    }

    /// Tensor product of presentations (Kuenneth for torsion-free cellular
    /// spaces). Generator names are prefixed to keep them distinct.
    pub fn product(&self, other: &RingModel, left: &str, right: &str) -> RingModel {
        let n = self.nvars() + other.nvars();
        let mut generators: Vec<(String, u32)> = self
            .generators
            .iter()
            .map(|(g, d)| (format!("{left}.{g}"), *d))
            .collect();
        generators.extend(
            other
                .generators
                .iter()
                .map(|(g, d)| (format!("{right}.{g}"), *d)),
        );
        let mut relations: Vec<Poly> = self.relations.iter().map(|r| r.embed(n, 0)).collect();
        relations.extend(other.relations.iter().map(|r| r.embed(n, self.nvars())));
        RingModel {
            generators,
            relations,
        }
    }

    /// `Sum_{q=0}^{r} (-1)^q c_q xi^(r-q)` in a ring whose last generator is
    /// `xi`; `chern[q-1]` is `c_q` written in the first `nvars - 1` variables.
    /// Missing classes are zero.
    pub fn grothendieck_polynomial(nvars: usize, r: u32, chern: &[Poly]) -> Poly {
        let xi = nvars - 1;
        let mut out = Poly::var_power(nvars, xi, r, 1);
        for q in 1..=r {
            let Some(c) = chern.get(q as usize - 1) else {
                continue;
            };
            let sign = if q % 2 == 1 { -1 } else { 1 };
            let term = c
                .embed(nvars, 0)
                .mul(&Poly::var_power(nvars, xi, r - q, sign));
            out = out.add(&term);
        }
        out
    }

    /// `H^*(P(V))`: adjoin `xi` in degree 2 subject to the Grothendieck
    /// relation for the given Chern classes of `V` (rank `r`).
    pub fn projective_bundle(&self, r: u32, chern: &[Poly]) -> Result<RingModel> {
        let w = self.weights();
        for (i, c) in chern.iter().enumerate() {
            if c.nvars != self.nvars() {
                return Err(Error::invariant(
                    "ring",
                    format!(
                        "Chern class c{} has {} variables, base has {}",
                        i + 1,
                        c.nvars,
                        self.nvars()
                    ),
                ));
            }
            let want = 2 * (i as u32 + 1);
            if c.degrees(&w).iter().any(|&d| d != want) {
                return Err(Error::invariant(
                    "ring",
                    format!("Chern class c{} is not homogeneous of degree {want}", i + 1),
                ));
            }
        }
        let n = self.nvars() + 1;
        let mut generators = self.generators.clone();
        let mut name = "xi".to_string();
        while generators.iter().any(|(g, _)| *g == name) {
            name.push('\'');
        }
        generators.push((name, 2));
        let mut relations: Vec<Poly> = self.relations.iter().map(|p| p.embed(n, 0)).collect();
        relations.push(Self::grothendieck_polynomial(n, r, chern));
        Ok(RingModel {
            generators,
            relations,
        })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            format!("x{i}")
                        } else {
                            format!("x{i}^{k}")
                        }
                    })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    mono.join("*")
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let r = RingModel::new(vec![("h".into(), 2), ("xi".into(), 2)], vec![]).unwrap();
        let f = r.parse_poly("xi^2 - 3*h*xi + 2*h^2").unwrap();
        assert_eq!(r.parse_poly(&r.format_poly(&f)).unwrap(), f);
        assert_eq!(r.parse_poly("-h + h").unwrap(), Poly::zero(2));
        assert_eq!(r.parse_poly("4").unwrap(), Poly::monomial(2, vec![0, 0], 4));
        assert!(r.parse_poly("y").is_err());
        assert!(r.parse_poly("h +").is_err());
        assert!(r.parse_poly("h^x").is_err());
        assert!(r.parse_poly("h**xi").is_err());
    }

    #[test]
    fn truncated_polynomial_dims() {
        let r = RingModel::truncated_polynomial("xi", 3);
        let dims: Vec<usize> = (0..10).map(|d| r.graded_dim(d)).collect();
        assert_eq!(dims, vec![1, 0, 1, 0, 1, 0, 1, 0, 0, 0]);
        assert!(r.reduces_to_zero(&Poly::var_power(1, 0, 4, 1)));
        assert!(!r.reduces_to_zero(&Poly::var_power(1, 0, 3, 1)));
    }

    #[test]
    fn product_of_lines() {
        let p1 = RingModel::truncated_polynomial("h", 1);
        let r = p1.product(&p1, "a", "b");
        let dims: Vec<usize> = (0..7).map(|d| r.graded_dim(d)).collect();
        assert_eq!(dims, vec![1, 0, 2, 0, 1, 0, 0]);
    }

    #[test]
    fn bundle_over_line_with_twist() {
        let p1 = RingModel::truncated_polynomial("h", 1);
        // c(V) = 1 + 3h
        let c1 = Poly::var_power(1, 0, 1, 3);
        let b = p1.projective_bundle(2, std::slice::from_ref(&c1)).unwrap();
        let dims: Vec<usize> = (0..7).map(|d| b.graded_dim(d)).collect();
        assert_eq!(dims, vec![1, 0, 2, 0, 1, 0, 0]);
        let good = RingModel::grothendieck_polynomial(2, 2, &[c1]);
        assert!(b.reduces_to_zero(&good));
        let dropped = RingModel::grothendieck_polynomial(2, 2, &[]);
        assert!(!b.reduces_to_zero(&dropped));
    }

    #[test]
    fn rejects_odd_generators_and_inhomogeneous_relations() {
        assert!(RingModel::new(vec![("a".into(), 1)], vec![]).is_err());
        let rel = Poly::from_terms(1, vec![(vec![1], 1), (vec![2], 1)]);
        assert!(RingModel::new(vec![("a".into(), 2)], vec![rel]).is_err());
    }
}
