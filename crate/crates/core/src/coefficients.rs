//! Rationally even coefficient theories, presented by the ranks of their
//! even homotopy groups.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Number of partitions of `j` (0 for negative `j`), which is the rank of
/// the degree `2j` part of `Z[x2, x4, x6, ...]`.
pub fn mu_rank(j: i64) -> u64 {
    if j < 0 {
        return 0;
    }
    partition_numbers(j as usize)[j as usize]
}

/// `p(0), ..., p(n)` by the coin-change recurrence over part sizes.
pub fn partition_numbers(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] = p[total]
                .checked_add(p[total - part])
                .expect("partition number overflows u64");
        }
    }
    p
}

/// Whether the coefficient ring is `Z` or `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientField {
    Integral,
    Rational,
}

impl CoefficientField {
    pub fn as_str(self) -> &'static str {
        match self {
            CoefficientField::Integral => "integral",
            CoefficientField::Rational => "rational",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum RankTable {
    Partitions,
    Finite(BTreeMap<i64, u64>),
    Sum(Vec<RankTable>),
}

impl RankTable {
    fn rank_at(&self, j: i64) -> u64 {
        match self {
            RankTable::Partitions => mu_rank(j),
            RankTable::Finite(t) => t.get(&j).copied().unwrap_or(0),
            RankTable::Sum(parts) => parts.iter().map(|p| p.rank_at(j)).sum(),
        }
    }

    fn j_min(&self) -> Option<i64> {
        match self {
            RankTable::Partitions => Some(0),
            RankTable::Finite(t) => t.iter().find(|(_, &r)| r > 0).map(|(&j, _)| j),
            RankTable::Sum(parts) => parts.iter().filter_map(RankTable::j_min).min(),
        }
    }

    fn j_max(&self) -> Option<i64> {
        match self {
            RankTable::Partitions => None,
            RankTable::Finite(t) => Some(
                t.iter()
                    .rev()
                    .find(|(_, &r)| r > 0)
                    .map_or(i64::MIN, |(&j, _)| j),
            ),
            RankTable::Sum(parts) => {
                let mut m = i64::MIN;
                for p in parts {
                    m = m.max(p.j_max()?);
                }
                Some(m)
            }
        }
    }
}

/// A rationally even theory `E`, described by `rank pi_{2j} E` for every `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTheory {
    name: String,
    ranks: RankTable,
    field: CoefficientField,
}

impl CoefficientTheory {
    pub fn mu() -> Self {
        CoefficientTheory {
            name: "MU".into(),
            ranks: RankTable::Partitions,
            field: CoefficientField::Integral,
        }
    }

    pub fn hz() -> Self {
        CoefficientTheory {
            name: "HZ".into(),
            ranks: RankTable::Finite(BTreeMap::from([(0, 1)])),
            field: CoefficientField::Integral,
        }
    }

    pub fn hq() -> Self {
        CoefficientTheory {
            name: "HQ".into(),
            field: CoefficientField::Rational,
            ..Self::hz()
        }
    }

    /// `MU ^ HQ`.
    pub fn muq() -> Self {
        CoefficientTheory {
            name: "MUQ".into(),
            field: CoefficientField::Rational,
            ..Self::mu()
        }
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "MU" => Ok(Self::mu()),
            "HZ" => Ok(Self::hz()),
            "HQ" => Ok(Self::hq()),
            "MUQ" => Ok(Self::muq()),
            other => Err(Error::UnknownTheory(other.to_string())),
        }
    }

    /// A theory with the given (finitely supported) ranks.
    pub fn custom<I>(name: &str, ranks: I, field: CoefficientField) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let mut table = BTreeMap::new();
        for (j, r) in ranks {
            if r < 0 {
                return Err(Error::NegativeRank { degree: j, rank: r });
            }
            if r > 0 {
                table.insert(j, r as u64);
            }
        }
        Ok(CoefficientTheory {
            name: name.to_string(),
            ranks: RankTable::Finite(table),
            field,
        })
    }

    /// Wedge sum `E v E'`: ranks add. Both must live over the same field.
    pub fn wedge(&self, other: &CoefficientTheory) -> Self {
        assert_eq!(
            self.field, other.field,
            "wedge of theories over different fields"
        );
        CoefficientTheory {
            name: format!("{}+{}", self.name, other.name),
            ranks: RankTable::Sum(vec![self.ranks.clone(), other.ranks.clone()]),
            field: self.field,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn is_rational(&self) -> bool {
        self.field == CoefficientField::Rational
    }

    pub fn rank_at(&self, j: i64) -> u64 {
        self.ranks.rank_at(j)
    }

    /// Least `j` with nonzero rank; `None` for the zero theory.
    pub fn j_min(&self) -> Option<i64> {
        self.ranks.j_min()
    }

    /// Largest `j` with nonzero rank, or `None` when the support is unbounded.
    pub fn j_max(&self) -> Option<i64> {
        self.ranks.j_max()
    }

    /// True when `E` is integral with `pi_0 = Z` and nothing else, i.e. it
    /// agrees with `HZ` in every query, torsion included.
    pub fn is_ordinary_integral(&self) -> bool {
        self.field == CoefficientField::Integral
            && self.j_min() == Some(0)
            && self.j_max() == Some(0)
            && self.rank_at(0) == 1
    }

    /// Finite ranks table over `[lo, hi]`, for serialization.
    pub fn ranks_in(&self, lo: i64, hi: i64) -> Vec<(i64, u64)> {
        (lo..=hi)
            .map(|j| (j, self.rank_at(j)))
            .filter(|&(_, r)| r > 0)
            .collect()
    }
}

impl fmt::Display for CoefficientTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name, self.field.as_str())
    }
}
