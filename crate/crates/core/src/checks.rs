//! Consistency checks between engine computations: rational splitting,
//! Mayer-Vietoris, A^1-invariance, the projective bundle formula, the
//! Grothendieck relation and the normalization of transfers.

use crate::coefficients::{mu_rank, CoefficientField, CoefficientTheory};
use crate::engine::{hfc_group, HFGroupDescriptor, Variant};
use crate::error::{Error, Result};
use crate::ring::{Poly, RingModel};
use crate::space::{affine_space, product_quasi, projective_bundle, QuasiProjModel, Space};

/// Outcome of comparing two descriptors that should agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub holds: bool,
    pub lhs: HFGroupDescriptor,
    pub rhs: HFGroupDescriptor,
}

impl Comparison {
    fn new(lhs: HFGroupDescriptor, rhs: HFGroupDescriptor) -> Self {
        Comparison {
            holds: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

/// Analytic on Kaehler models, logarithmic otherwise.
pub fn natural_variant(x: &Space) -> Variant {
    if x.as_kahler().is_some() {
        Variant::Analytic
    } else {
        Variant::Log
    }
}

/// `(MU ^ HQ)_D^n(p)(X)` against `(+)_j H_D^{n+2j}(X; Q(p+j)) (x) pi_{2j}MU`.
pub fn rational_splitting_check(x: &Space, n: i64, p: i64) -> Result<Comparison> {
    let variant = natural_variant(x);
    let lhs = hfc_group(x, &CoefficientTheory::muq(), n, p, variant)?;
    let hq = CoefficientTheory::hq();
    let top = x.top_degree() as i64;
    // H_D^{n+2j} needs degree n+2j or n+2j-1 inside [0, top]
    let j_hi = (top + 1 - n).div_euclid(2);
    let mut rhs = HFGroupDescriptor::zero(CoefficientField::Rational);
    for j in 0..=j_hi.max(-1) {
        let group = hfc_group(x, &hq, n + 2 * j, p + j, variant)?;
        rhs = rhs.direct_sum(&group.times(mu_rank(j)));
    }
    Ok(Comparison::new(lhs, rhs))
}

/// Euler characteristic of `level -> dim F^level H^*` (unfiltered for very
/// negative levels).
fn filtered_euler(x: &Space, level: i64) -> i64 {
    (0..=x.top_degree() as i64)
        .map(|m| {
            let f = x.filtration_dim(level, m) as i64;
            if m % 2 == 0 {
                f
            } else {
                -f
            }
        })
        .sum()
}

/// Necessary condition for exactness of the Mayer-Vietoris sequence of
/// `X = U ∪ V` with `W = U ∩ V`: the alternating sums of `rank E^n` and of
/// `dim F^{p+*}H^n` over `n` balance.
///
/// The sums are taken one coefficient degree `j` at a time (each block is
/// `H^*(-) (x) pi_{2j}E` with filtration step `p + j`), which keeps them
/// finite for theories like `MU` whose coefficients are unbounded below.
pub fn mv_consistency(
    x: &Space,
    u: &Space,
    v: &Space,
    w: &Space,
    e: &CoefficientTheory,
    p: i64,
) -> Result<bool> {
    let spaces = [x, u, v, w];
    let signs = [1i64, -1, -1, 1];
    let balance = |level: i64| -> i64 {
        spaces
            .iter()
            .zip(signs)
            .map(|(s, sign)| sign * filtered_euler(s, level))
            .sum()
    };
    let Some(jmin) = e.j_min() else {
        return Ok(true);
    };
    let top = spaces
        .iter()
        .map(|s| s.top_degree() as i64)
        .max()
        .unwrap_or(0);
    // filtered Euler characteristics are constant below level 0 and vanish
    // above the top degree, so this window sees every distinct value
    let jmax = match e.j_max() {
        Some(j) => j.min(top + 1 - p),
        None => top + 1 - p,
    };
    let jmin = jmin.max(-p - 1);
    for j in jmin..=jmax {
        if e.rank_at(j) == 0 {
            continue;
        }
        if balance(i64::MIN / 4) != 0 || balance(p + j) != 0 {
            return Ok(false);
        }
    }
    // a theory whose support lies entirely below the window still sees the
    // unfiltered Euler characteristic
    if e.j_max().is_some_and(|j| j < jmin) && balance(i64::MIN / 4) != 0 {
        return Ok(false);
    }
    Ok(true)
}

/// `E_log^n(p)(X x A^1)` against `E_log^n(p)(X)`.
pub fn a1_invariance_check(
    x: &QuasiProjModel,
    e: &CoefficientTheory,
    n: i64,
    p: i64,
) -> Result<Comparison> {
    let line = product_quasi(x, &affine_space(1))?;
    let lhs = hfc_group(&Space::QuasiProjective(line), e, n, p, Variant::Log)?;
    let rhs = hfc_group(&Space::QuasiProjective(x.clone()), e, n, p, Variant::Log)?;
    Ok(Comparison::new(lhs, rhs))
}

/// `E_D^n(p)(P(V))` against `(+)_{i<r} E_D^{n-2i}(p-i)(X)` for a rank `r`
/// bundle `V` with trivial Chern classes.
pub fn pbf_check(x: &Space, r: usize, n: i64, p: i64, e: &CoefficientTheory) -> Result<Comparison> {
    let variant = natural_variant(x);
    let bundle = projective_bundle(x, r, &[])?;
    let lhs = hfc_group(&bundle, e, n, p, variant)?;
    let mut rhs = HFGroupDescriptor::zero(e.field());
    for i in 0..r as i64 {
        rhs = rhs.direct_sum(&hfc_group(x, e, n - 2 * i, p - i, variant)?);
    }
    Ok(Comparison::new(lhs, rhs))
}

/// Whether `Sum_q (-1)^q c_q xi^(r-q)` vanishes in a bundle ring whose last
/// generator is `xi`.
pub fn grothendieck_relation_holds(bundle_ring: &RingModel, r: u32, chern: &[Poly]) -> bool {
    let rel = RingModel::grothendieck_polynomial(bundle_ring.nvars(), r, chern);
    bundle_ring.reduces_to_zero(&rel)
}

/// Builds `P(V)` over `x` for the given Chern classes and checks the
/// Grothendieck relation in its cohomology ring.
pub fn grothendieck_check(x: &Space, r: usize, chern: &[Poly]) -> Result<bool> {
    if x.ring().is_none() {
        return Err(Error::MissingRing(x.name().to_string()));
    }
    let bundle = projective_bundle(x, r, chern)?;
    let ring = bundle.ring().expect("bundle over a ringed base has a ring");
    Ok(grothendieck_relation_holds(ring, r as u32, chern))
}

/// Rank bookkeeping for `i_*(1) = c_1(O(D))` under the pushforward along a
/// divisor `i: D -> X`, which shifts `(n, p)` by `(2, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    /// Rank of the subgroup generated by the divisor class (0 or 1).
    pub contribution_rank: u64,
    /// `E_log^0(0)(D)`, which contains the unit, when a divisor model is given.
    pub unit: Option<HFGroupDescriptor>,
    /// `E_log^2(1)(X)`.
    pub target: HFGroupDescriptor,
    pub holds: bool,
}

pub fn transfer_normalization_check(
    x: &Space,
    divisor_class: &Poly,
    divisor: Option<&Space>,
    e: &CoefficientTheory,
) -> Result<TransferReport> {
    let ring = x
        .ring()
        .ok_or_else(|| Error::MissingRing(x.name().to_string()))?;
    if divisor_class.nvars() != ring.nvars() {
        return Err(Error::invariant(
            x.name(),
            format!(
                "divisor class uses {} variables, ring has {}",
                divisor_class.nvars(),
                ring.nvars()
            ),
        ));
    }
    if !divisor_class.is_zero() && ring.degree_of(divisor_class) != Some(2) {
        return Err(Error::invariant(
            x.name(),
            "divisor class must be homogeneous of degree 2",
        ));
    }
    let contribution_rank = u64::from(!ring.reduces_to_zero(divisor_class));
    let unit = divisor
        .map(|d| hfc_group(d, e, 0, 0, Variant::Log))
        .transpose()?;
    let target = hfc_group(x, e, 2, 1, Variant::Log)?;
    let unit_ok = unit.as_ref().is_none_or(|u| u.free_rank() >= 1);
    // a nonzero divisor class is an integral Hodge class in H^2
    let class_ok = contribution_rank == 0 || x.hodge_class_rank(1) >= 1;
    let holds = unit_ok && class_ok && contribution_rank <= target.free_rank() as u64;
    Ok(TransferReport {
        contribution_rank,
        unit,
        target,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{curve, gm, point, product, projective_space};

    #[test]
    fn splitting_small() {
        for x in [point(), projective_space(2)] {
            let x = Space::Kahler(x);
            assert!(rational_splitting_check(&x, 1, 1).unwrap().holds);
            assert!(rational_splitting_check(&x, 2, 1).unwrap().holds);
        }
        let c = rational_splitting_check(&Space::Kahler(point()), 1, 1).unwrap();
        assert_eq!((c.lhs.circle_rank(), c.lhs.real_rank()), (1, 1));
    }

    #[test]
    fn mayer_vietoris_p1() {
        let p1 = Space::Kahler(projective_space(1));
        let a1 = Space::QuasiProjective(affine_space(1));
        let g = Space::QuasiProjective(gm());
        for e in [CoefficientTheory::hz(), CoefficientTheory::mu()] {
            for p in -2..=3 {
                assert!(mv_consistency(&p1, &a1, &a1, &g, &e, p).unwrap(), "p={p}");
            }
        }
        let bad = Space::QuasiProjective(
            QuasiProjModel::new("bad", vec![1, 2], &[(1, 1, 2)], &[(1, 1, 2)], vec![1]).unwrap(),
        );
        assert!(!mv_consistency(&p1, &a1, &a1, &bad, &CoefficientTheory::hz(), 1).unwrap());
        assert!(mv_consistency(&p1, &p1, &p1, &p1, &CoefficientTheory::mu(), 0).unwrap());
    }

    #[test]
    fn a1_on_gm() {
        let c = a1_invariance_check(&gm(), &CoefficientTheory::hz(), 1, 1).unwrap();
        assert!(c.holds);
        assert_eq!(c.rhs.free_rank(), 1);
    }

    #[test]
    fn pbf_over_point() {
        let pt = Space::Kahler(point());
        let c = pbf_check(&pt, 2, 2, 1, &CoefficientTheory::mu()).unwrap();
        assert!(c.holds);
        assert_eq!(c.lhs.free_rank(), 1);
        assert!(c.lhs.is_discrete());
        let e = Space::Kahler(curve(1));
        assert!(
            pbf_check(&e, 2, 2, 1, &CoefficientTheory::hz())
                .unwrap()
                .holds
        );
        assert!(
            pbf_check(&e, 1, 3, 2, &CoefficientTheory::hz())
                .unwrap()
                .holds
        );
    }

    #[test]
    fn grothendieck() {
        let pt = Space::Kahler(point());
        assert!(grothendieck_check(&pt, 3, &[]).unwrap());

        let p1 = Space::Kahler(projective_space(1));
        let c1 = Poly::var_power(1, 0, 1, 5);
        assert!(grothendieck_check(&p1, 2, std::slice::from_ref(&c1)).unwrap());
        let bundle = projective_bundle(&p1, 2, &[c1]).unwrap();
        assert!(!grothendieck_relation_holds(bundle.ring().unwrap(), 2, &[]));

        let e = Space::Kahler(curve(1));
        assert_eq!(
            grothendieck_check(&e, 2, &[]).unwrap_err(),
            Error::MissingRing("C1".into())
        );
    }

    #[test]
    fn transfers() {
        let p2 = Space::Kahler(projective_space(2));
        let line = Space::Kahler(projective_space(1));
        let xi = Poly::var_power(1, 0, 1, 1);
        let mu = CoefficientTheory::mu();
        let t = transfer_normalization_check(&p2, &xi, Some(&line), &mu).unwrap();
        assert!(t.holds);
        assert_eq!(t.contribution_rank, 1);

        let t = transfer_normalization_check(&p2, &Poly::zero(1), None, &mu).unwrap();
        assert_eq!(t.contribution_rank, 0);
        assert!(t.holds);

        let q = Space::Kahler(product(&projective_space(1), &projective_space(1)).unwrap());
        let ruling = Poly::var_power(2, 0, 1, 1);
        let t = transfer_normalization_check(&q, &ruling, Some(&line), &CoefficientTheory::hz())
            .unwrap();
        assert_eq!(t.contribution_rank, 1);
        assert_eq!(t.target.free_rank(), 2);
        assert!(t.holds);

        let bad = Poly::var_power(2, 0, 2, 1);
        assert!(transfer_normalization_check(&q, &bad, None, &mu).is_err());
    }
}
