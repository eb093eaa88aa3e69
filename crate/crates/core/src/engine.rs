//! Hodge filtered `E`-cohomology groups of a model, read off from the long
//! exact sequence
//!
//! ```text
//! E^{n-1}(X) (+) F^{p+*}H^{n-1} --a--> E^{n-1}(X) (x) C --> E_D^n(p)(X)
//!     --> E^n(X) (+) F^{p+*}H^n --b--> E^n(X) (x) C
//! ```
//!
//! split as `0 -> coker(a) -> E_D^n(p)(X) -> ker(b) -> 0`.
//!
//! Everything is computed blockwise over the coefficient degrees `j`: block
//! `j` of degree `m` is `H^{m+2j}(X) (x) pi_{2j}E` with filtration step
//! `F^{p+j}`. The kernel of `b` is the lattice lying in the filtration. The
//! cokernel of `a` is `V / (F + L)` for a complex space `V`, a subspace `F`
//! and a full lattice `L` in the real points of `V`. When the lattice spans
//! the real points of `F`, that quotient is `(R/Z)^{D-c} x R^{D-2f+c}` with
//! `D = dim V`, `f = dim F` and `c = dim_R (F ∩ V_R)`. Blocks where the data
//! does not certify that are flagged rank-level.
//!
//! Since the connected part is divisible and the discrete part is discrete,
//! the extension always splits as Lie groups; descriptors are the direct sum.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigUint;

use crate::coefficients::{CoefficientField, CoefficientTheory};
use crate::error::{Error, Result};
use crate::linalg::FgAbelianGroup;
use crate::space::{KahlerModel, Space};

/// Whether the Lie type of a descriptor is certified by the data or only
/// its ranks are.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exactness {
    Exact,
    RankLevel,
}

impl Exactness {
    pub fn as_str(self) -> &'static str {
        match self {
            Exactness::Exact => "exact",
            Exactness::RankLevel => "rank-level",
        }
    }
}

/// How to print descriptors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Notation {
    #[default]
    Unicode,
    Ascii,
}

/// Isomorphism type of an abelian Lie group
/// `Z^a (+) torsion (+) (R/Z)^b (+) R^c`, optionally noting that the
/// connected part is a compact complex torus.
///
/// Over rational coefficients the lattices are `Q`-lattices and the circles
/// are the divisible groups `R/Q`; the counts are kept the same way.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HFGroupDescriptor {
    field: CoefficientField,
    discrete: FgAbelianGroup,
    circle_rank: u64,
    real_rank: u64,
    complex_torus_dim: Option<u64>,
    exactness: Exactness,
}

impl HFGroupDescriptor {
    pub fn zero(field: CoefficientField) -> Self {
        HFGroupDescriptor {
            field,
            discrete: FgAbelianGroup::zero(),
            circle_rank: 0,
            real_rank: 0,
            complex_torus_dim: Some(0),
            exactness: Exactness::Exact,
        }
    }

    /// Checks the torus invariants: a set torus dimension means
    /// `circle_rank = 2 dim` and no real factors.
    pub fn from_parts(
        field: CoefficientField,
        discrete: FgAbelianGroup,
        circle_rank: u64,
        real_rank: u64,
        complex_torus_dim: Option<u64>,
        exactness: Exactness,
    ) -> Result<Self> {
        if let Some(t) = complex_torus_dim {
            if circle_rank != 2 * t || real_rank != 0 {
                return Err(Error::invariant(
                    "descriptor",
                    format!(
                        "complex torus of dimension {t} needs circle_rank {} and real_rank 0, got {circle_rank} and {real_rank}",
                        2 * t
                    ),
                ));
            }
        }
        if field == CoefficientField::Rational && !discrete.is_torsion_free() {
            return Err(Error::invariant(
                "descriptor",
                "rational groups carry no torsion",
            ));
        }
        Ok(HFGroupDescriptor {
            field,
            discrete,
            circle_rank,
            real_rank,
            complex_torus_dim,
            exactness,
        })
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn free_rank(&self) -> usize {
        self.discrete.free_rank()
    }

    pub fn torsion(&self) -> &[BigUint] {
        self.discrete.torsion()
    }

    pub fn discrete_part(&self) -> &FgAbelianGroup {
        &self.discrete
    }

    pub fn circle_rank(&self) -> u64 {
        self.circle_rank
    }

    pub fn real_rank(&self) -> u64 {
        self.real_rank
    }

    pub fn complex_torus_dim(&self) -> Option<u64> {
        self.complex_torus_dim
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn is_zero(&self) -> bool {
        self.discrete.is_zero() && self.circle_rank == 0 && self.real_rank == 0
    }

    /// True when the connected component is trivial.
    pub fn is_discrete(&self) -> bool {
        self.circle_rank == 0 && self.real_rank == 0
    }

    pub fn direct_sum(&self, other: &HFGroupDescriptor) -> HFGroupDescriptor {
        assert_eq!(
            self.field, other.field,
            "direct sum across coefficient fields"
        );
        HFGroupDescriptor {
            field: self.field,
            discrete: self.discrete.direct_sum(&other.discrete),
            circle_rank: self.circle_rank + other.circle_rank,
            real_rank: self.real_rank + other.real_rank,
            complex_torus_dim: match (self.complex_torus_dim, other.complex_torus_dim) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
            exactness: if self.exactness == Exactness::Exact && other.exactness == Exactness::Exact
            {
                Exactness::Exact
            } else {
                Exactness::RankLevel
            },
        }
    }

    /// `k` copies.
    pub fn times(&self, k: u64) -> HFGroupDescriptor {
        (0..k).fold(HFGroupDescriptor::zero(self.field), |acc, _| {
            acc.direct_sum(self)
        })
    }

    pub fn render(&self, notation: Notation) -> String {
        let rational = self.field == CoefficientField::Rational;
        let (lattice, div, plus, circle, real) = match (notation, rational) {
            (Notation::Unicode, false) => ("ℤ", "ℤ/", " ⊕ ", "(ℝ/ℤ)", "ℝ"),
            (Notation::Unicode, true) => ("ℚ", "ℚ/", " ⊕ ", "(ℝ/ℚ)", "ℝ"),
            (Notation::Ascii, false) => ("Z", "Z/", " + ", "T", "R"),
            (Notation::Ascii, true) => ("Q", "Q/", " + ", "T_Q", "R"),
        };
        let mut parts = Vec::new();
        if self.free_rank() > 0 {
            parts.push(format!("{lattice}^{}", self.free_rank()));
        }
        for d in self.torsion() {
            parts.push(format!("{div}{d}"));
        }
        if self.circle_rank > 0 {
            parts.push(format!("{circle}^{}", self.circle_rank));
        }
        if self.real_rank > 0 {
            parts.push(format!("{real}^{}", self.real_rank));
        }
        let mut out = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(plus)
        };
        if let Some(t) = self.complex_torus_dim.filter(|&t| t > 0) {
            out.push_str(&format!(" [complex torus dim {t}]"));
        }
        if self.exactness == Exactness::RankLevel {
            out.push_str(" (rank-level)");
        }
        out
    }
}

impl fmt::Display for HFGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Unicode))
    }
}

/// Which Hodge filtered theory to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Variant {
    /// `E_D`, defined through holomorphic forms on a compact Kaehler model.
    #[default]
    Analytic,
    /// `E_log`, defined through forms with logarithmic poles; agrees with the
    /// analytic theory on compact models.
    Log,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Analytic => "analytic",
            Variant::Log => "log",
        }
    }
}

fn check_inputs(x: &Space, e: &CoefficientTheory) -> Result<()> {
    if e.field() == CoefficientField::Integral && !e.is_ordinary_integral() {
        if let Some(n) = x.first_torsion_degree() {
            return Err(Error::Torsion {
                model: x.name().to_string(),
                degree: n,
                reason: format!(
                    "E^*(X) = H^*(X; Z) (x) pi_*E is only available for torsion-free cohomology, so {} queries are refused",
                    e.name()
                ),
            });
        }
    }
    Ok(())
}

/// Coefficient degrees `j` with `offset + 2j` inside `[0, top]` and
/// `pi_{2j} E` possibly nonzero.
fn coefficient_degrees(x: &Space, e: &CoefficientTheory, offset: i64) -> RangeInclusive<i64> {
    let top = x.top_degree() as i64;
    let Some(jmin) = e.j_min() else {
        // no coefficient degrees at all: an empty range
        #[allow(clippy::reversed_empty_ranges)]
        return 1..=0;
    };
    let lo = (-offset).div_euclid(2) + i64::from((-offset).rem_euclid(2) != 0);
    let hi = (top - offset).div_euclid(2);
    let lo = lo.max(jmin);
    let hi = match e.j_max() {
        Some(jmax) => hi.min(jmax),
        None => hi,
    };
    lo..=hi
}

/// One coefficient block `H^m(X) (x) pi_{2j}E` with filtration step `F^q`.
#[derive(Clone, Copy, Debug)]
struct Block {
    total: u64,
    filtered: u64,
    lattice: u64,
    real_filtered: Option<u64>,
}

fn blocks(x: &Space, e: &CoefficientTheory, m_offset: i64, p: i64) -> Vec<Block> {
    coefficient_degrees(x, e, m_offset)
        .filter_map(|j| {
            let r = e.rank_at(j);
            let m = m_offset + 2 * j;
            let q = p + j;
            let total = x.betti_rank(m) * r;
            if total == 0 {
                return None;
            }
            Some(Block {
                total,
                filtered: x.filtration_dim(q, m) * r,
                lattice: x.lattice_in_filtration(q, m) * r,
                real_filtered: x.real_filtered_dim(q, m).map(|c| c * r),
            })
        })
        .collect()
}

/// Rank of `E^n(X)`: `Sum_j rank H^{n+2j}(X) * rank pi_{2j}E`.
pub fn e_rank(x: &Space, e: &CoefficientTheory, n: i64) -> Result<u64> {
    check_inputs(x, e)?;
    Ok(coefficient_degrees(x, e, n)
        .map(|j| x.betti_rank(n + 2 * j) * e.rank_at(j))
        .sum())
}

/// `dim F^{p+*} H^n(X; pi_{2*}E (x) C) = Sum_j dim F^{p+j} H^{n+2j} * rank pi_{2j}E`.
pub fn filtered_dim(x: &Space, e: &CoefficientTheory, n: i64, p: i64) -> Result<u64> {
    check_inputs(x, e)?;
    Ok(coefficient_degrees(x, e, n)
        .map(|j| x.filtration_dim(p + j, n + 2 * j) * e.rank_at(j))
        .sum())
}

/// The generalized Jacobian `J_E^{2p-1}(X)`, a compact complex torus of
/// dimension `rank E^{2p-1}(X) / 2`.
pub fn jacobian(x: &KahlerModel, e: &CoefficientTheory, p: i64) -> Result<HFGroupDescriptor> {
    let space = Space::Kahler(x.clone());
    let rank = e_rank(&space, e, 2 * p - 1)?;
    if rank % 2 == 1 {
        return Err(Error::invariant(
            x.name(),
            format!(
                "rank {}^{} = {rank} is odd, contradicting Hodge symmetry",
                e.name(),
                2 * p - 1
            ),
        ));
    }
    HFGroupDescriptor::from_parts(
        e.field(),
        FgAbelianGroup::zero(),
        rank,
        0,
        Some(rank / 2),
        Exactness::Exact,
    )
}

/// `Hdg_E^{2p}(X)`: classes in `E^{2p}(X)` whose complex images lie in
/// `H^{p+j,p+j} (x) pi_{2j}E` for every `j`.
pub fn hodge_group(x: &KahlerModel, e: &CoefficientTheory, p: i64) -> Result<FgAbelianGroup> {
    let space = Space::Kahler(x.clone());
    check_inputs(&space, e)?;
    let free: u64 = coefficient_degrees(&space, e, 2 * p)
        .filter(|&j| x.betti_rank(2 * p + 2 * j) > 0)
        .map(|j| x.hodge_class_rank(p + j) * e.rank_at(j))
        .sum();
    let mut group = FgAbelianGroup::free(free as usize);
    if e.is_ordinary_integral() {
        group = group.direct_sum(&FgAbelianGroup::new(
            0,
            x.cohomology(2 * p).torsion().to_vec(),
        ));
    }
    Ok(group)
}

/// `E_D^n(p)(X)` (analytic) or `E_log^n(p)(X)` (log).
pub fn hfc_group(
    x: &Space,
    e: &CoefficientTheory,
    n: i64,
    p: i64,
    variant: Variant,
) -> Result<HFGroupDescriptor> {
    if variant == Variant::Analytic && x.as_kahler().is_none() {
        return Err(Error::NotKahler(x.name().to_string()));
    }
    check_inputs(x, e)?;

    // ker(b): lattice in the filtration, plus torsion of H^n for HZ-like E
    let lattice: u64 = blocks(x, e, n, p).iter().map(|b| b.lattice).sum();
    let mut discrete = FgAbelianGroup::free(lattice as usize);
    if e.is_ordinary_integral() {
        discrete = discrete.direct_sum(&FgAbelianGroup::new(0, x.cohomology(n).torsion().to_vec()));
    }

    // coker(a)
    let mut circle = 0;
    let mut real = 0;
    let mut exact = true;
    for b in blocks(x, e, n - 1, p) {
        if b.filtered == b.total {
            continue;
        }
        let lower = (2 * b.filtered).saturating_sub(b.total);
        let c = match b.real_filtered {
            Some(c) if c == b.lattice => c,
            Some(c) => {
                exact = false;
                c
            }
            None => {
                exact = false;
                b.lattice
            }
        }
        .max(lower);
        circle += b.total - c;
        real += b.total + c - 2 * b.filtered;
    }
    let exactness = if exact {
        Exactness::Exact
    } else {
        Exactness::RankLevel
    };
    let torus = (exact && real == 0).then_some(circle / 2);
    HFGroupDescriptor::from_parts(e.field(), discrete, circle, real, torus, exactness)
}

/// `hfc_group(point, E, n, p)` over rectangular ranges, keyed by `(n, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointTable {
    pub theory: String,
    pub n_range: RangeInclusive<i64>,
    pub p_range: RangeInclusive<i64>,
    pub cells: BTreeMap<(i64, i64), HFGroupDescriptor>,
}

pub fn point_table(
    e: &CoefficientTheory,
    n_range: RangeInclusive<i64>,
    p_range: RangeInclusive<i64>,
) -> Result<PointTable> {
    let pt = Space::Kahler(crate::space::point());
    let mut cells = BTreeMap::new();
    for n in n_range.clone() {
        for p in p_range.clone() {
            cells.insert((n, p), hfc_group(&pt, e, n, p, Variant::Analytic)?);
        }
    }
    Ok(PointTable {
        theory: e.name().to_string(),
        n_range,
        p_range,
        cells,
    })
}
