//! Cohomological presentations of spaces.
//!
//! A [`KahlerModel`] is a compact Kaehler manifold given by its integral
//! cohomology, Hodge numbers and the ranks of its integral Hodge classes. A
//! [`QuasiProjModel`] is a smooth quasi-projective variety given by Betti
//! ranks, the dimensions of the (logarithmic) Hodge filtration, and the
//! ranks of the integral lattices lying in each filtration step.
//!
//! Hodge-class ranks are data, never derived from Hodge numbers: the Picard
//! number of a surface is not a function of its Hodge diamond.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::FgAbelianGroup;
use crate::ring::{Poly, RingModel};

/// A compact Kaehler manifold presented by cohomological data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerModel {
    name: String,
    dim: usize,
    betti: Vec<FgAbelianGroup>,
    hodge: BTreeMap<(usize, usize), u64>,
    hodge_class_rank: Vec<u64>,
    ring: Option<RingModel>,
}

impl KahlerModel {
    /// Builds and validates a model. `betti[n]` is `H^n(X; Z)` for
    /// `0 <= n <= 2 dim`; `hodge_class_rank[q]` is the rank of the integral
    /// Hodge classes in `H^{2q}`.
    pub fn new(
        name: &str,
        dim: usize,
        betti: Vec<FgAbelianGroup>,
        hodge: BTreeMap<(usize, usize), u64>,
        hodge_class_rank: Vec<u64>,
    ) -> Result<Self> {
        let mut hodge = hodge;
        hodge.retain(|_, h| *h > 0);
        let model = KahlerModel {
            name: name.to_string(),
            dim,
            betti,
            hodge,
            hodge_class_rank,
            ring: None,
        };
        model.validate()?;
        Ok(model)
    }

    /// Attaches a ring presentation whose graded ranks must match the Betti
    /// ranks.
    pub fn with_ring(mut self, ring: RingModel) -> Result<Self> {
        check_ring(
            &self.name,
            &ring,
            |n| self.betti_rank(n as i64),
            2 * self.dim,
        )?;
        self.ring = Some(ring);
        Ok(self)
    }

    /// Replaces the Hodge-class ranks (e.g. for a product whose Picard
    /// number exceeds the Kuenneth default).
    pub fn with_hodge_class_rank(mut self, ranks: Vec<u64>) -> Result<Self> {
        self.hodge_class_rank = ranks;
        self.validate()?;
        Ok(self)
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    fn validate(&self) -> Result<()> {
        let name = self.name.as_str();
        let d = self.dim;
        if self.betti.len() != 2 * d + 1 {
            return Err(Error::invariant(
                name,
                format!(
                    "betti table has {} entries, expected {}",
                    self.betti.len(),
                    2 * d + 1
                ),
            ));
        }
        if self.hodge_class_rank.len() != d + 1 {
            return Err(Error::invariant(
                name,
                format!(
                    "hodge_class_rank has {} entries, expected {}",
                    self.hodge_class_rank.len(),
                    d + 1
                ),
            ));
        }
        for &(s, t) in self.hodge.keys() {
            if s > d || t > d {
                return Err(Error::invariant(
                    name,
                    format!("h^{{{s},{t}}} is nonzero outside 0 <= s,t <= {d}"),
                ));
            }
        }
        for (&(s, t), &h) in &self.hodge {
            let mirror = self.hodge_number(t, s);
            if mirror != h {
                return Err(Error::invariant(
                    name,
                    format!(
                        "Hodge symmetry fails: h^{{{s},{t}}} = {h} != h^{{{t},{s}}} = {mirror}"
                    ),
                ));
            }
        }
        for n in 0..=2 * d {
            let rank = self.betti[n].free_rank() as u64;
            let sum: u64 = (0..=n).map(|s| self.hodge_number(s, n - s)).sum();
            if sum != rank {
                return Err(Error::invariant(
                    name,
                    format!("sum of h^{{s,t}} with s+t = {n} is {sum}, but rank H^{n} = {rank}"),
                ));
            }
            if n % 2 == 1 && rank % 2 == 1 {
                return Err(Error::invariant(
                    name,
                    format!("rank H^{n} = {rank} is odd in odd degree"),
                ));
            }
            let dual = self.betti[2 * d - n].free_rank() as u64;
            if dual != rank {
                return Err(Error::invariant(
                    name,
                    format!(
                        "Poincare duality fails: rank H^{n} = {rank} != rank H^{} = {dual}",
                        2 * d - n
                    ),
                ));
            }
        }
        for q in 0..=d {
            let hqq = self.hodge_number(q, q);
            let r = self.hodge_class_rank[q];
            if r > hqq {
                return Err(Error::invariant(
                    name,
                    format!("hodge_class_rank({q}) = {r} exceeds h^{{{q},{q}}} = {hqq}"),
                ));
            }
            // every integral class of a pure (q,q) group is a Hodge class
            if hqq == self.betti[2 * q].free_rank() as u64 && r != hqq {
                return Err(Error::invariant(
                    name,
                    format!(
                        "H^{} is of pure type ({q},{q}) but hodge_class_rank({q}) = {r} != {hqq}",
                        2 * q
                    ),
                ));
            }
        }
        if let Some(ring) = &self.ring {
            check_ring(name, ring, |n| self.betti_rank(n as i64), 2 * d)?;
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn betti(&self) -> &[FgAbelianGroup] {
        &self.betti
    }

    pub fn hodge_numbers(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.hodge
    }

    pub fn hodge_class_ranks(&self) -> &[u64] {
        &self.hodge_class_rank
    }

    pub fn ring(&self) -> Option<&RingModel> {
        self.ring.as_ref()
    }

    pub fn hodge_number(&self, s: usize, t: usize) -> u64 {
        self.hodge.get(&(s, t)).copied().unwrap_or(0)
    }

    pub fn cohomology(&self, n: i64) -> FgAbelianGroup {
        if n < 0 || n as usize > 2 * self.dim {
            FgAbelianGroup::zero()
        } else {
            self.betti[n as usize].clone()
        }
    }

    pub fn betti_rank(&self, n: i64) -> u64 {
        if n < 0 || n as usize > 2 * self.dim {
            0
        } else {
            self.betti[n as usize].free_rank() as u64
        }
    }

    pub fn hodge_class_rank(&self, q: i64) -> u64 {
        if q < 0 || q as usize > self.dim {
            0
        } else {
            self.hodge_class_rank[q as usize]
        }
    }

    pub fn is_torsion_free(&self) -> bool {
        self.betti.iter().all(FgAbelianGroup::is_torsion_free)
    }

    /// `dim F^p H^n(X; C) = Sum_{s >= p} h^{s, n-s}`.
    pub fn filtration_dim(&self, p: i64, n: i64) -> u64 {
        if n < 0 || n as usize > 2 * self.dim {
            return 0;
        }
        let n = n as usize;
        let lo = p.max(0) as usize;
        (lo..=n).map(|s| self.hodge_number(s, n - s)).sum()
    }

    /// Complex dimension of `F^p H^n ∩ conj(F^p H^n)`, which equals the real
    /// dimension of `F^p H^n ∩ H^n(X; R)`.
    pub fn real_filtered_dim(&self, p: i64, n: i64) -> u64 {
        if n < 0 || n as usize > 2 * self.dim {
            return 0;
        }
        let lo = p.max(0);
        let hi = n - p;
        if lo > hi {
            return 0;
        }
        (lo..=hi)
            .map(|s| self.hodge_number(s as usize, (n - s) as usize))
            .sum()
    }

    /// Rank of the sublattice of `H^n(X; Z)` lying in `F^p H^n`.
    ///
    /// Everything when `F^p` is the whole group; otherwise the integral Hodge
    /// classes for even `n` and `p <= n/2`, and nothing for odd `n`.
    pub fn lattice_in_filtration(&self, p: i64, n: i64) -> u64 {
        let total = self.betti_rank(n);
        if total == 0 {
            return 0;
        }
        if self.filtration_dim(p, n) == total {
            return total;
        }
        if n % 2 == 0 && p <= n / 2 {
            self.hodge_class_rank(n / 2)
        } else {
            0
        }
    }

    /// Same data, ignoring the name.
    pub fn same_data(&self, other: &KahlerModel) -> bool {
        self.dim == other.dim
            && self.betti == other.betti
            && self.hodge == other.hodge
            && self.hodge_class_rank == other.hodge_class_rank
            && self.ring == other.ring
    }

    /// The same variety viewed as a quasi-projective model. Needs a
    /// torsion-free model.
    pub fn to_quasi_projective(&self) -> Result<QuasiProjModel> {
        if let Some(n) = self.betti.iter().position(|g| !g.is_torsion_free()) {
            return Err(Error::Torsion {
                model: self.name.clone(),
                degree: n,
                reason: "quasi-projective models are torsion-free".into(),
            });
        }
        let top = 2 * self.dim;
        let betti: Vec<u64> = (0..=top).map(|n| self.betti_rank(n as i64)).collect();
        let filt = (0..=top)
            .map(|n| {
                (1..=n as i64)
                    .map(|p| self.filtration_dim(p, n as i64))
                    .collect()
            })
            .collect();
        let lattice = (0..=top)
            .map(|n| {
                (1..=n as i64)
                    .map(|p| self.lattice_in_filtration(p, n as i64))
                    .collect()
            })
            .collect();
        let hcr = (0..=top / 2)
            .map(|q| self.hodge_class_rank(q as i64))
            .collect();
        let model = QuasiProjModel {
            name: self.name.clone(),
            betti,
            filt,
            lattice,
            hodge_class_rank: hcr,
            ring: self.ring.clone(),
        };
        model.validate()?;
        Ok(model)
    }
}

fn check_ring(
    name: &str,
    ring: &RingModel,
    betti: impl Fn(usize) -> u64,
    top: usize,
) -> Result<()> {
    for n in 0..=top + 2 {
        let dim = ring.graded_dim(n as u32) as u64;
        let want = if n <= top { betti(n) } else { 0 };
        if dim != want {
            return Err(Error::invariant(
                name,
                format!("ring presentation has rank {dim} in degree {n}, but rank H^{n} = {want}"),
            ));
        }
    }
    Ok(())
}

/// A smooth quasi-projective variety presented by Betti ranks and the
/// dimensions of its logarithmic Hodge filtration.
///
/// `filt[n][p - 1]` and `lattice[n][p - 1]` hold the values for
/// `1 <= p <= n`; below that range the filtration is everything, above it
/// nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiProjModel {
    name: String,
    betti: Vec<u64>,
    filt: Vec<Vec<u64>>,
    lattice: Vec<Vec<u64>>,
    hodge_class_rank: Vec<u64>,
    ring: Option<RingModel>,
}

impl QuasiProjModel {
    /// Builds a model from Betti ranks and `(p, n, value)` entries of the
    /// filtration and lattice tables. Entries with `p <= 0` or `p > n` must
    /// agree with the forced values; unlisted entries inside `1..=n` are 0.
    pub fn new(
        name: &str,
        betti: Vec<u64>,
        filt_entries: &[(i64, usize, u64)],
        lattice_entries: &[(i64, usize, u64)],
        hodge_class_rank: Vec<u64>,
    ) -> Result<Self> {
        let top = betti.len().saturating_sub(1);
        let mut filt: Vec<Vec<u64>> = (0..betti.len()).map(|n| vec![0; n]).collect();
        let mut lattice = filt.clone();
        for (table, entries, label) in [
            (&mut filt, filt_entries, "filt_dim"),
            (&mut lattice, lattice_entries, "lattice_in_F"),
        ] {
            for &(p, n, v) in entries {
                if n > top {
                    if v != 0 {
                        return Err(Error::invariant(
                            name,
                            format!("{label}({p},{n}) = {v} but H^{n} = 0"),
                        ));
                    }
                    continue;
                }
                if p <= 0 {
                    if v != betti[n] {
                        return Err(Error::invariant(
                            name,
                            format!(
                                "{label}({p},{n}) = {v} but p <= 0 forces rank H^{n} = {}",
                                betti[n]
                            ),
                        ));
                    }
                } else if p as usize > n {
                    if v != 0 {
                        return Err(Error::invariant(
                            name,
                            format!("{label}({p},{n}) = {v} but p > n forces 0"),
                        ));
                    }
                } else {
                    table[n][p as usize - 1] = v;
                }
            }
        }
        let model = QuasiProjModel {
            name: name.to_string(),
            betti,
            filt,
            lattice,
            hodge_class_rank,
            ring: None,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn with_ring(mut self, ring: RingModel) -> Result<Self> {
        let top = self.top_degree();
        check_ring(&self.name, &ring, |n| self.betti_rank(n as i64), top)?;
        self.ring = Some(ring);
        Ok(self)
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    fn validate(&self) -> Result<()> {
        let name = self.name.as_str();
        for n in 0..self.betti.len() {
            let mut prev_f = self.betti[n];
            let mut prev_l = self.betti[n];
            for p in 1..=n {
                let f = self.filt[n][p - 1];
                let l = self.lattice[n][p - 1];
                if f > prev_f {
                    return Err(Error::invariant(
                        name,
                        format!(
                            "filt_dim({p},{n}) = {f} exceeds filt_dim({},{n}) = {prev_f}",
                            p - 1
                        ),
                    ));
                }
                if l > prev_l {
                    return Err(Error::invariant(
                        name,
                        format!(
                            "lattice_in_F({p},{n}) = {l} exceeds lattice_in_F({},{n}) = {prev_l}",
                            p - 1
                        ),
                    ));
                }
                if l > f.min(self.betti[n]) {
                    return Err(Error::invariant(
                        name,
                        format!("lattice_in_F({p},{n}) = {l} exceeds min(rank H^{n}, filt_dim({p},{n})) = {}", f.min(self.betti[n])),
                    ));
                }
                prev_f = f;
                prev_l = l;
            }
        }
        for (q, &r) in self.hodge_class_rank.iter().enumerate() {
            let rank = self.betti_rank(2 * q as i64);
            if r > rank {
                return Err(Error::invariant(
                    name,
                    format!(
                        "hodge_class_rank({q}) = {r} exceeds rank H^{} = {rank}",
                        2 * q
                    ),
                ));
            }
        }
        if let Some(ring) = &self.ring {
            check_ring(name, ring, |n| self.betti_rank(n as i64), self.top_degree())?;
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Largest degree with a recorded (possibly zero) Betti rank.
    pub fn top_degree(&self) -> usize {
        self.betti.len().saturating_sub(1)
    }

    pub fn betti_ranks(&self) -> &[u64] {
        &self.betti
    }

    pub fn hodge_class_ranks(&self) -> &[u64] {
        &self.hodge_class_rank
    }

    pub fn ring(&self) -> Option<&RingModel> {
        self.ring.as_ref()
    }

    pub fn betti_rank(&self, n: i64) -> u64 {
        if n < 0 || n as usize >= self.betti.len() {
            0
        } else {
            self.betti[n as usize]
        }
    }

    pub fn hodge_class_rank(&self, q: i64) -> u64 {
        if q < 0 {
            0
        } else {
            self.hodge_class_rank.get(q as usize).copied().unwrap_or(0)
        }
    }

    pub fn filtration_dim(&self, p: i64, n: i64) -> u64 {
        let b = self.betti_rank(n);
        if b == 0 || p > n {
            0
        } else if p <= 0 {
            b
        } else {
            self.filt[n as usize][p as usize - 1]
        }
    }

    pub fn lattice_in_filtration(&self, p: i64, n: i64) -> u64 {
        let b = self.betti_rank(n);
        if b == 0 || p > n {
            0
        } else if p <= 0 {
            b
        } else {
            self.lattice[n as usize][p as usize - 1]
        }
    }

    /// Nonzero `(p, n, value)` entries of the filtration table with `1 <= p <= n`.
    pub fn filtration_entries(&self) -> Vec<(i64, usize, u64)> {
        entries(&self.filt)
    }

    pub fn lattice_entries(&self) -> Vec<(i64, usize, u64)> {
        entries(&self.lattice)
    }

    pub fn same_data(&self, other: &QuasiProjModel) -> bool {
        // trailing zero Betti ranks carry no information
        let top = self.top_degree().max(other.top_degree()) as i64;
        let hcr_top = self
            .hodge_class_rank
            .len()
            .max(other.hodge_class_rank.len()) as i64;
        (0..=top).all(|n| {
            self.betti_rank(n) == other.betti_rank(n)
                && (0..=n + 1).all(|p| {
                    self.filtration_dim(p, n) == other.filtration_dim(p, n)
                        && self.lattice_in_filtration(p, n) == other.lattice_in_filtration(p, n)
                })
        }) && (0..hcr_top).all(|q| self.hodge_class_rank(q) == other.hodge_class_rank(q))
            && self.ring == other.ring
    }
}

fn entries(table: &[Vec<u64>]) -> Vec<(i64, usize, u64)> {
    let mut out = Vec::new();
    for (n, row) in table.iter().enumerate() {
        for (i, &v) in row.iter().enumerate() {
            if v > 0 {
                out.push((i as i64 + 1, n, v));
            }
        }
    }
    out
}

/// Either kind of model; engine queries accept both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    Kahler(KahlerModel),
    QuasiProjective(QuasiProjModel),
}

impl From<KahlerModel> for Space {
    fn from(m: KahlerModel) -> Self {
        Space::Kahler(m)
    }
}

impl From<QuasiProjModel> for Space {
    fn from(m: QuasiProjModel) -> Self {
        Space::QuasiProjective(m)
    }
}

impl Space {
    pub fn name(&self) -> &str {
        match self {
            Space::Kahler(m) => m.name(),
            Space::QuasiProjective(m) => m.name(),
        }
    }

    pub fn as_kahler(&self) -> Option<&KahlerModel> {
        match self {
            Space::Kahler(m) => Some(m),
            Space::QuasiProjective(_) => None,
        }
    }

    pub fn top_degree(&self) -> usize {
        match self {
            Space::Kahler(m) => 2 * m.dim(),
            Space::QuasiProjective(m) => m.top_degree(),
        }
    }

    pub fn cohomology(&self, n: i64) -> FgAbelianGroup {
        match self {
            Space::Kahler(m) => m.cohomology(n),
            Space::QuasiProjective(m) => FgAbelianGroup::free(m.betti_rank(n) as usize),
        }
    }

    pub fn betti_rank(&self, n: i64) -> u64 {
        match self {
            Space::Kahler(m) => m.betti_rank(n),
            Space::QuasiProjective(m) => m.betti_rank(n),
        }
    }

    pub fn filtration_dim(&self, p: i64, n: i64) -> u64 {
        match self {
            Space::Kahler(m) => m.filtration_dim(p, n),
            Space::QuasiProjective(m) => m.filtration_dim(p, n),
        }
    }

    pub fn lattice_in_filtration(&self, p: i64, n: i64) -> u64 {
        match self {
            Space::Kahler(m) => m.lattice_in_filtration(p, n),
            Space::QuasiProjective(m) => m.lattice_in_filtration(p, n),
        }
    }

    /// Real dimension of `F^p H^n ∩ H^n(X; R)` when the data determines it.
    pub fn real_filtered_dim(&self, p: i64, n: i64) -> Option<u64> {
        match self {
            Space::Kahler(m) => Some(m.real_filtered_dim(p, n)),
            Space::QuasiProjective(m) => {
                let f = m.filtration_dim(p, n);
                let b = m.betti_rank(n);
                if f == 0 {
                    Some(0)
                } else if f == b {
                    Some(b)
                } else {
                    None
                }
            }
        }
    }

    pub fn hodge_class_rank(&self, q: i64) -> u64 {
        match self {
            Space::Kahler(m) => m.hodge_class_rank(q),
            Space::QuasiProjective(m) => m.hodge_class_rank(q),
        }
    }

    pub fn ring(&self) -> Option<&RingModel> {
        match self {
            Space::Kahler(m) => m.ring(),
            Space::QuasiProjective(m) => m.ring(),
        }
    }

    pub fn is_torsion_free(&self) -> bool {
        match self {
            Space::Kahler(m) => m.is_torsion_free(),
            Space::QuasiProjective(_) => true,
        }
    }

    /// First degree carrying torsion, if any.
    pub fn first_torsion_degree(&self) -> Option<usize> {
        match self {
            Space::Kahler(m) => m.betti().iter().position(|g| !g.is_torsion_free()),
            Space::QuasiProjective(_) => None,
        }
    }

    pub fn to_quasi_projective(&self) -> Result<QuasiProjModel> {
        match self {
            Space::Kahler(m) => m.to_quasi_projective(),
            Space::QuasiProjective(m) => Ok(m.clone()),
        }
    }

    pub fn same_data(&self, other: &Space) -> bool {
        match (self, other) {
            (Space::Kahler(a), Space::Kahler(b)) => a.same_data(b),
            (Space::QuasiProjective(a), Space::QuasiProjective(b)) => a.same_data(b),
            _ => false,
        }
    }
}

/// The point.
pub fn point() -> KahlerModel {
    KahlerModel {
        name: "pt".into(),
        dim: 0,
        betti: vec![FgAbelianGroup::free(1)],
        hodge: BTreeMap::from([((0, 0), 1)]),
        hodge_class_rank: vec![1],
        ring: Some(RingModel::trivial()),
    }
}

/// `P^n` with `H^* = Z[xi]/(xi^(n+1))`.
pub fn projective_space(n: usize) -> KahlerModel {
    let betti = (0..=2 * n)
        .map(|k| FgAbelianGroup::free(usize::from(k % 2 == 0)))
        .collect();
    KahlerModel {
        name: format!("P{n}"),
        dim: n,
        betti,
        hodge: (0..=n).map(|q| ((q, q), 1)).collect(),
        hodge_class_rank: vec![1; n + 1],
        ring: Some(RingModel::truncated_polynomial("xi", n as u32)),
    }
}

/// A compact Riemann surface of genus `g`. Genus 0 is `P^1` and carries its
/// ring; higher genus curves have odd cohomology and no ring presentation.
pub fn curve(g: usize) -> KahlerModel {
    if g == 0 {
        return projective_space(1).renamed("C0");
    }
    KahlerModel {
        name: format!("C{g}"),
        dim: 1,
        betti: vec![
            FgAbelianGroup::free(1),
            FgAbelianGroup::free(2 * g),
            FgAbelianGroup::free(1),
        ],
        hodge: BTreeMap::from([
            ((0, 0), 1),
            ((1, 0), g as u64),
            ((0, 1), g as u64),
            ((1, 1), 1),
        ]),
        hodge_class_rank: vec![1, 1],
        ring: None,
    }
}

fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Merges two rings, renaming clashing generators of the right factor.
fn product_ring(left: &RingModel, right: &RingModel) -> RingModel {
    let mut names: Vec<String> = left.generators().iter().map(|(g, _)| g.clone()).collect();
    let mut renamed = Vec::new();
    for (g, d) in right.generators() {
        let mut name = g.clone();
        let mut k = 2;
        while names.contains(&name) {
            name = format!("{g}_{k}");
            k += 1;
        }
        names.push(name.clone());
        renamed.push((name, *d));
    }
    let n = left.nvars() + right.nvars();
    let mut generators = left.generators().to_vec();
    generators.extend(renamed);
    let mut relations: Vec<Poly> = left.relations().iter().map(|r| r.embed(n, 0)).collect();
    relations.extend(right.relations().iter().map(|r| r.embed(n, left.nvars())));
    RingModel::new(generators, relations).expect("product of valid rings")
}

/// Kuenneth product of torsion-free compact Kaehler models. Hodge-class
/// ranks default to the convolution of the factors' ranks (pullback
/// products only); override with [`KahlerModel::with_hodge_class_rank`].
pub fn product(x: &KahlerModel, y: &KahlerModel) -> Result<KahlerModel> {
    for m in [x, y] {
        if let Some(n) = m.betti.iter().position(|g| !g.is_torsion_free()) {
            return Err(Error::Torsion {
                model: m.name.clone(),
                degree: n,
                reason: "Kuenneth products need torsion-free factors".into(),
            });
        }
    }
    let d = x.dim + y.dim;
    let bx: Vec<u64> = (0..=2 * x.dim).map(|n| x.betti_rank(n as i64)).collect();
    let by: Vec<u64> = (0..=2 * y.dim).map(|n| y.betti_rank(n as i64)).collect();
    let betti = convolve(&bx, &by)
        .into_iter()
        .map(|r| FgAbelianGroup::free(r as usize))
        .collect();
    let mut hodge = BTreeMap::new();
    for (&(s1, t1), &h1) in &x.hodge {
        for (&(s2, t2), &h2) in &y.hodge {
            *hodge.entry((s1 + s2, t1 + t2)).or_insert(0) += h1 * h2;
        }
    }
    let hcr = convolve(&x.hodge_class_rank, &y.hodge_class_rank);
    let mut model = KahlerModel {
        name: format!("{}x{}", x.name, y.name),
        dim: d,
        betti,
        hodge,
        hodge_class_rank: hcr,
        ring: None,
    };
    if let (Some(rx), Some(ry)) = (&x.ring, &y.ring) {
        model.ring = Some(product_ring(rx, ry));
    }
    model.validate()?;
    Ok(model)
}

/// Product of quasi-projective models. Filtrations multiply as filtered
/// vector spaces; lattice ranks count tensor products of lattices lying in
/// complementary filtration steps.
pub fn product_quasi(x: &QuasiProjModel, y: &QuasiProjModel) -> Result<QuasiProjModel> {
    let top = x.top_degree() + y.top_degree();
    let betti = convolve(&x.betti, &y.betti);
    let graded = |m: &QuasiProjModel, k: i64, a: i64, lattice: bool| -> u64 {
        let (hi, lo) = if lattice {
            (
                m.lattice_in_filtration(k, a),
                m.lattice_in_filtration(k + 1, a),
            )
        } else {
            (m.filtration_dim(k, a), m.filtration_dim(k + 1, a))
        };
        hi - lo
    };
    let mut filt = Vec::new();
    let mut lattice = Vec::new();
    for n in 0..=top as i64 {
        let mut frow = Vec::new();
        let mut lrow = Vec::new();
        for p in 1..=n {
            let mut f = 0;
            let mut l = 0;
            for a in 0..=n {
                let b = n - a;
                for k in 0..=a {
                    f += graded(x, k, a, false) * y.filtration_dim(p - k, b);
                    l += graded(x, k, a, true) * y.lattice_in_filtration(p - k, b);
                }
            }
            frow.push(f);
            lrow.push(l);
        }
        filt.push(frow);
        lattice.push(lrow);
    }
    let model = QuasiProjModel {
        name: format!("{}x{}", x.name, y.name),
        betti,
        filt,
        lattice,
        hodge_class_rank: convolve(&x.hodge_class_rank, &y.hodge_class_rank),
        ring: match (&x.ring, &y.ring) {
            (Some(a), Some(b)) => Some(product_ring(a, b)),
            _ => None,
        },
    };
    model.validate()?;
    Ok(model)
}

/// Product of arbitrary models: Kaehler when both factors are, otherwise
/// quasi-projective.
pub fn product_spaces(x: &Space, y: &Space) -> Result<Space> {
    match (x, y) {
        (Space::Kahler(a), Space::Kahler(b)) => product(a, b).map(Space::Kahler),
        _ => product_quasi(&x.to_quasi_projective()?, &y.to_quasi_projective()?)
            .map(Space::QuasiProjective),
    }
}

/// Projective bundle `P(V)` of a rank `r` bundle. Cohomology is free over
/// the base on `1, xi, ..., xi^(r-1)`; `chern[q-1]` is `c_q(V)` in the base
/// ring (empty for `c(V) = 1`).
pub fn projective_bundle(x: &Space, r: usize, chern: &[Poly]) -> Result<Space> {
    if r == 0 {
        return Err(Error::ZeroBundleRank);
    }
    let ring = match x.ring() {
        Some(base) => Some(base.projective_bundle(r as u32, chern)?),
        None if !chern.is_empty() => return Err(Error::MissingRing(x.name().to_string())),
        None => None,
    };
    let name = format!("P{r}({})", x.name());
    match x {
        Space::Kahler(m) => {
            let d = m.dim + r - 1;
            let betti = (0..=2 * d as i64)
                .map(|n| {
                    (0..r as i64).fold(FgAbelianGroup::zero(), |acc, i| {
                        acc.direct_sum(&m.cohomology(n - 2 * i))
                    })
                })
                .collect();
            let mut hodge = BTreeMap::new();
            for (&(s, t), &h) in &m.hodge {
                for i in 0..r {
                    *hodge.entry((s + i, t + i)).or_insert(0) += h;
                }
            }
            let hcr = (0..=d as i64)
                .map(|q| (0..r as i64).map(|i| m.hodge_class_rank(q - i)).sum())
                .collect();
            let model = KahlerModel {
                name,
                dim: d,
                betti,
                hodge,
                hodge_class_rank: hcr,
                ring,
            };
            model.validate()?;
            Ok(Space::Kahler(model))
        }
        Space::QuasiProjective(m) => {
            let top = m.top_degree() + 2 * (r - 1);
            let shift_sum = |f: &dyn Fn(i64, i64) -> u64, p: i64, n: i64| -> u64 {
                (0..r as i64).map(|i| f(p - i, n - 2 * i)).sum()
            };
            let betti = (0..=top as i64)
                .map(|n| (0..r as i64).map(|i| m.betti_rank(n - 2 * i)).sum())
                .collect();
            let filt = (0..=top as i64)
                .map(|n| {
                    (1..=n)
                        .map(|p| shift_sum(&|a, b| m.filtration_dim(a, b), p, n))
                        .collect()
                })
                .collect();
            let lattice = (0..=top as i64)
                .map(|n| {
                    (1..=n)
                        .map(|p| shift_sum(&|a, b| m.lattice_in_filtration(a, b), p, n))
                        .collect()
                })
                .collect();
            let hcr = (0..=(top / 2) as i64)
                .map(|q| (0..r as i64).map(|i| m.hodge_class_rank(q - i)).sum())
                .collect();
            let model = QuasiProjModel {
                name,
                betti,
                filt,
                lattice,
                hodge_class_rank: hcr,
                ring,
            };
            model.validate()?;
            Ok(Space::QuasiProjective(model))
        }
    }
}

/// Affine space `A^n`; cohomologically a point.
pub fn affine_space(n: usize) -> QuasiProjModel {
    QuasiProjModel {
        name: format!("A{n}"),
        betti: vec![1],
        filt: vec![vec![]],
        lattice: vec![vec![]],
        hodge_class_rank: vec![1],
        ring: Some(RingModel::trivial()),
    }
}

/// The multiplicative group `G_m = A^1 - {0}`. `H^1` is spanned by the class
/// of `dz/z`, which sits in `F^1` and is integral up to `2 pi i`.
pub fn gm() -> QuasiProjModel {
    QuasiProjModel {
        name: "Gm".into(),
        betti: vec![1, 1],
        filt: vec![vec![], vec![1]],
        lattice: vec![vec![], vec![1]],
        hodge_class_rank: vec![1],
        ring: None,
    }
}
