//! Exact integer linear algebra: Smith normal form, ranks, cokernels and
//! finitely generated abelian groups.
//!
//! Every entry is a `BigInt`; elimination on small matrices can still blow
//! intermediate values past machine words.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row-major entries.
    ///
    /// Panics if `entries.len() != rows * cols`.
    pub fn from_entries<T: Into<BigInt>>(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count must equal rows * cols"
        );
        IntMatrix {
            rows,
            cols,
            entries: entries.into_iter().map(Into::into).collect(),
        }
    }

    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: r,
            cols: c,
            entries,
        }
    }

    pub fn diagonal<T: Clone + Into<BigInt>>(rows: usize, cols: usize, diag: &[T]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.entries[i * cols + i] = d.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: impl Into<BigInt>) {
        self.entries[r * self.cols + c] = v.into();
    }

    fn to_grid(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(|c| c.to_vec())
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Position of the smallest nonzero |entry| in the lower-right block
/// starting at `(t, t)`; ties go to the lowest (row, col).
fn find_pivot(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[bi][bj].abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Invariant factors `d1 | d2 | ...` of `m` (the nonzero diagonal of its
/// Smith normal form), all positive.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.rows;
    let cols = m.cols;
    if rows == 0 || cols == 0 {
        return Vec::new();
    }
    let mut a = m.to_grid();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                let (upper, lower) = a.split_at_mut(i);
                for (x, y) in lower[0][t..].iter_mut().zip(&upper[t][t..]) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                for row in a.iter_mut().skip(t) {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // the pivot must divide the whole remaining block
                let p = a[t][t].clone();
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &p).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let (upper, lower) = a.split_at_mut(i);
                        for (x, y) in upper[t][t..].iter_mut().zip(&lower[0][t..]) {
                            *x += y;
                        }
                    }
                }
            }
            let (pi, pj) = find_pivot(&a, t).expect("block still has a nonzero entry");
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        t += 1;
    }
    (0..rows.min(cols))
        .map(|i| a[i][i].abs())
        .take_while(|d| !d.is_zero())
        .collect()
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).len()
}

pub fn kernel_rank(m: &IntMatrix) -> usize {
    m.cols - rank(m)
}

/// `Z^rows / image(m)` for `m: Z^cols -> Z^rows`.
pub fn cokernel_of(m: &IntMatrix) -> FgAbelianGroup {
    let factors = smith_normal_form(m);
    let free_rank = m.rows - factors.len();
    let torsion = factors
        .into_iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_biguint().expect("invariant factors are positive"))
        .collect();
    FgAbelianGroup { free_rank, torsion }
}

/// A finitely generated abelian group `Z^r + Z/d1 + ... + Z/dk` with
/// `d1 | d2 | ... | dk`, every `di >= 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigUint>,
}

impl FgAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Builds a group from any list of cyclic orders; entries equal to 1 are
    /// dropped, zeros count as free summands, and the rest is normalized to
    /// a divisibility chain.
    pub fn new<T: Into<BigUint>>(free_rank: usize, cyclic_orders: Vec<T>) -> Self {
        let mut free = free_rank;
        let mut orders: Vec<BigInt> = Vec::new();
        for o in cyclic_orders {
            let o: BigUint = o.into();
            if o.is_zero() {
                free += 1;
            } else {
                orders.push(BigInt::from_biguint(Sign::Plus, o));
            }
        }
        let n = orders.len();
        let torsion = smith_normal_form(&IntMatrix::diagonal(n, n, &orders))
            .into_iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_biguint().expect("positive"))
            .collect();
        FgAbelianGroup {
            free_rank: free,
            torsion,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn without_torsion(&self) -> Self {
        Self::free(self.free_rank)
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let orders: Vec<BigUint> = self
            .torsion
            .iter()
            .chain(other.torsion.iter())
            .cloned()
            .collect();
        FgAbelianGroup::new(self.free_rank + other.free_rank, orders)
    }

    /// `k` copies of `self`.
    pub fn times(&self, k: usize) -> FgAbelianGroup {
        let mut orders = Vec::with_capacity(self.torsion.len() * k);
        for _ in 0..k {
            orders.extend(self.torsion.iter().cloned());
        }
        FgAbelianGroup::new(self.free_rank * k, orders)
    }
}

pub fn direct_sum(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    a.direct_sum(b)
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_identity_and_zero() {
        assert_eq!(smith_normal_form(&IntMatrix::identity(2)), ints(&[1, 1]));
        assert!(smith_normal_form(&IntMatrix::zeros(2, 2)).is_empty());
        assert!(smith_normal_form(&IntMatrix::zeros(0, 3)).is_empty());
    }

    #[test]
    fn snf_small() {
        // gcd of entries is 2, |det| = 8
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(smith_normal_form(&m), ints(&[2, 4]));
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m), ints(&[1, 6]));
    }

    #[test]
    fn snf_needs_divisibility_fixup() {
        // already diagonal but not a chain
        let m = IntMatrix::diagonal(3, 3, &[4, 6, 10]);
        assert_eq!(smith_normal_form(&m), ints(&[2, 2, 60]));
    }

    #[test]
    fn cokernels() {
        let g = cokernel_of(&IntMatrix::diagonal(2, 2, &[2, 0]));
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.torsion(), &[BigUint::from(2u32)]);

        let g = cokernel_of(&IntMatrix::identity(3));
        assert!(g.is_zero());

        let g = cokernel_of(&IntMatrix::zeros(2, 0));
        assert_eq!(g, FgAbelianGroup::free(2));
    }

    #[test]
    fn kernel_ranks() {
        assert_eq!(kernel_rank(&IntMatrix::identity(2)), 0);
        assert_eq!(kernel_rank(&IntMatrix::zeros(2, 3)), 3);
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(kernel_rank(&m), 2);
    }

    #[test]
    fn sums_normalize() {
        let a = FgAbelianGroup::new(1, vec![2u32]);
        let b = FgAbelianGroup::new(0, vec![4u32]);
        let s = a.direct_sum(&b);
        assert_eq!(s.free_rank(), 1);
        assert_eq!(s.torsion(), &[BigUint::from(2u32), BigUint::from(4u32)]);

        let s = FgAbelianGroup::new(0, vec![2u32]).direct_sum(&FgAbelianGroup::new(0, vec![3u32]));
        assert_eq!(s.torsion(), &[BigUint::from(6u32)]);

        assert_eq!(FgAbelianGroup::zero().direct_sum(&a), a);
    }

    #[test]
    fn new_drops_units_and_counts_zero_as_free() {
        let g = FgAbelianGroup::new(0, vec![1u32, 0, 12, 18]);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.torsion(), &[BigUint::from(6u32), BigUint::from(36u32)]);
    }

    #[test]
    fn large_intermediates() {
        let big = BigInt::from(u64::MAX) * BigInt::from(3u32);
        let m = IntMatrix::from_entries(
            2,
            2,
            vec![big.clone(), BigInt::from(2), BigInt::from(4), big],
        );
        let f = smith_normal_form(&m);
        assert_eq!(f.len(), 2);
        assert!(f[0].is_one());
    }
}
