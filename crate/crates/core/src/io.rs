//! JSON documents for spaces, coefficient theories and descriptors.
//!
//! A space document has a `kind`:
//!
//! * `"kahler"`: `name`, `dim`, `betti` (integers or `{"free": r, "torsion": [..]}`),
//!   `hodge` (`[[s, t, h], ..]` or `{"s,t": h}`), `hodge_class_rank` and an
//!   optional `ring`;
//! * `"quasiprojective"`: `name`, `betti`, `filt_dim` and `lattice_in_F` as
//!   `[[p, n, value], ..]`, `hodge_class_rank` and an optional `ring`;
//! * `"construct"`: an `expr` tree such as `["product", ["curve", 1], ["projective_space", 2]]`
//!   with an optional `name` override.
//!
//! A ring is `{"generators": [["xi", 2]], "relations": ["xi^3"]}`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coefficients::{CoefficientField, CoefficientTheory};
use crate::engine::{Exactness, HFGroupDescriptor};
use crate::error::{Error, Result};
use crate::linalg::FgAbelianGroup;
use crate::ring::{Poly, RingModel};
use crate::space::{self, KahlerModel, QuasiProjModel, Space};

/// Parses a space document.
pub fn parse_space(text: &str) -> Result<Space> {
    let value = parse_json(text)?;
    space_from_value(&value, "$")
}

/// Parses a coefficient theory document.
pub fn parse_theory(text: &str) -> Result<CoefficientTheory> {
    let value = parse_json(text)?;
    theory_from_value(&value, "$")
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

/// Shorthand names: `pt`, `P<n>`, `C<g>`, `A<n>`, `Gm`.
pub fn builtin_space(name: &str) -> Option<Space> {
    let number = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|k| k.parse::<usize>().ok())
    };
    match name {
        "pt" => Some(space::point().into()),
        "Gm" => Some(space::gm().into()),
        _ => {
            if let Some(n) = number("P") {
                Some(space::projective_space(n).into())
            } else if let Some(g) = number("C") {
                Some(space::curve(g).into())
            } else {
                number("A").map(|n| space::affine_space(n).into())
            }
        }
    }
}

fn field<'a>(obj: &'a Value, key: &str, at: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::parse(at, format!("missing field `{key}`")))
}

fn as_u64(v: &Value, at: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::parse(at, format!("expected a non-negative integer, got {v}")))
}

fn as_i64(v: &Value, at: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::parse(at, format!("expected an integer, got {v}")))
}

fn as_array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::parse(at, format!("expected an array, got {v}")))
}

fn as_str<'a>(v: &'a Value, at: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::parse(at, format!("expected a string, got {v}")))
}

fn u64_list(v: &Value, at: &str) -> Result<Vec<u64>> {
    as_array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_u64(x, &format!("{at}[{i}]")))
        .collect()
}

fn triples(v: &Value, at: &str) -> Result<Vec<(i64, usize, u64)>> {
    as_array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let here = format!("{at}[{i}]");
            match as_array(t, &here)?.as_slice() {
                [p, n, val] => Ok((
                    as_i64(p, &here)?,
                    as_u64(n, &here)? as usize,
                    as_u64(val, &here)?,
                )),
                _ => Err(Error::parse(here, "expected [p, n, value]")),
            }
        })
        .collect()
}

fn group_from_value(v: &Value, at: &str) -> Result<FgAbelianGroup> {
    if let Some(r) = v.as_u64() {
        return Ok(FgAbelianGroup::free(r as usize));
    }
    let free = match v.get("free") {
        Some(f) => as_u64(f, &format!("{at}.free"))? as usize,
        None => 0,
    };
    let torsion = match v.get("torsion") {
        Some(t) => big_list(t, &format!("{at}.torsion"))?,
        None => Vec::new(),
    };
    if v.as_object().is_none() {
        return Err(Error::parse(
            at,
            "expected an integer or {\"free\", \"torsion\"}",
        ));
    }
    Ok(FgAbelianGroup::new(free, torsion))
}

fn big_list(v: &Value, at: &str) -> Result<Vec<BigUint>> {
    as_array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let here = format!("{at}[{i}]");
            match x {
                Value::Number(_) => Ok(BigUint::from(as_u64(x, &here)?)),
                Value::String(s) => s
                    .parse::<BigUint>()
                    .map_err(|_| Error::parse(here, format!("not a natural number: `{s}`"))),
                _ => Err(Error::parse(here, "expected an integer")),
            }
        })
        .collect()
}

fn big_to_value(d: &BigUint) -> Value {
    match d.to_u64() {
        Some(v) => json!(v),
        None => json!(d.to_string()),
    }
}

fn group_to_value(g: &FgAbelianGroup) -> Value {
    if g.is_torsion_free() {
        json!(g.free_rank())
    } else {
        json!({
            "free": g.free_rank(),
            "torsion": g.torsion().iter().map(big_to_value).collect::<Vec<_>>(),
        })
    }
}

fn ring_from_value(v: &Value, at: &str) -> Result<RingModel> {
    let gens_at = format!("{at}.generators");
    let mut generators = Vec::new();
    for (i, g) in as_array(field(v, "generators", at)?, &gens_at)?
        .iter()
        .enumerate()
    {
        let here = format!("{gens_at}[{i}]");
        match as_array(g, &here)?.as_slice() {
            [name, deg] => {
                generators.push((as_str(name, &here)?.to_string(), as_u64(deg, &here)? as u32))
            }
            _ => return Err(Error::parse(here, "expected [name, degree]")),
        }
    }
    let names = RingModel::new(generators.clone(), Vec::new())?;
    let rel_at = format!("{at}.relations");
    let relations = match v.get("relations") {
        Some(r) => as_array(r, &rel_at)?
            .iter()
            .enumerate()
            .map(|(i, t)| names.parse_poly(as_str(t, &format!("{rel_at}[{i}]"))?))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    RingModel::new(generators, relations)
}

fn ring_to_value(r: &RingModel) -> Value {
    json!({
        "generators": r.generators().iter().map(|(n, d)| json!([n, d])).collect::<Vec<_>>(),
        "relations": r.relations().iter().map(|p| r.format_poly(p)).collect::<Vec<_>>(),
    })
}

fn hodge_from_value(v: &Value, at: &str) -> Result<BTreeMap<(usize, usize), u64>> {
    let mut out = BTreeMap::new();
    if let Some(obj) = v.as_object() {
        for (key, h) in obj {
            let here = format!("{at}.\"{key}\"");
            let (s, t) = key
                .split_once(',')
                .and_then(|(s, t)| Some((s.trim().parse().ok()?, t.trim().parse().ok()?)))
                .ok_or_else(|| Error::parse(&here, "keys must look like \"s,t\""))?;
            out.insert((s, t), as_u64(h, &here)?);
        }
        return Ok(out);
    }
    for (i, t) in as_array(v, at)?.iter().enumerate() {
        let here = format!("{at}[{i}]");
        match as_array(t, &here)?.as_slice() {
            [s, t, h] => {
                out.insert(
                    (as_u64(s, &here)? as usize, as_u64(t, &here)? as usize),
                    as_u64(h, &here)?,
                );
            }
            _ => return Err(Error::parse(here, "expected [s, t, h]")),
        }
    }
    Ok(out)
}

fn kahler_from_value(v: &Value, at: &str) -> Result<KahlerModel> {
    let name = as_str(field(v, "name", at)?, &format!("{at}.name"))?;
    let dim = as_u64(field(v, "dim", at)?, &format!("{at}.dim"))? as usize;
    let betti_at = format!("{at}.betti");
    let betti = as_array(field(v, "betti", at)?, &betti_at)?
        .iter()
        .enumerate()
        .map(|(i, g)| group_from_value(g, &format!("{betti_at}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let hodge = hodge_from_value(field(v, "hodge", at)?, &format!("{at}.hodge"))?;
    let hcr = match v.get("hodge_class_rank") {
        Some(h) => u64_list(h, &format!("{at}.hodge_class_rank"))?,
        None => default_hodge_class_rank(name, dim, &betti, &hodge)?,
    };
    let mut model = KahlerModel::new(name, dim, betti, hodge, hcr)?;
    if let Some(r) = v.get("ring") {
        model = model.with_ring(ring_from_value(r, &format!("{at}.ring"))?)?;
    }
    Ok(model)
}

/// `h^{q,q}` in every degree where `H^{2q}` is pure of type `(q,q)`; any
/// impure even degree makes the ranks mandatory.
fn default_hodge_class_rank(
    name: &str,
    dim: usize,
    betti: &[FgAbelianGroup],
    hodge: &BTreeMap<(usize, usize), u64>,
) -> Result<Vec<u64>> {
    (0..=dim)
        .map(|q| {
            let hqq = hodge.get(&(q, q)).copied().unwrap_or(0);
            let b = betti.get(2 * q).map_or(0, |g| g.free_rank() as u64);
            if hqq == b {
                Ok(hqq)
            } else {
                Err(Error::invariant(
                    name,
                    format!(
                        "H^{} is not pure of type ({q},{q}); hodge_class_rank must be given",
                        2 * q
                    ),
                ))
            }
        })
        .collect()
}

fn quasi_from_value(v: &Value, at: &str) -> Result<QuasiProjModel> {
    let name = as_str(field(v, "name", at)?, &format!("{at}.name"))?;
    let betti = u64_list(field(v, "betti", at)?, &format!("{at}.betti"))?;
    let filt = match v.get("filt_dim") {
        Some(f) => triples(f, &format!("{at}.filt_dim"))?,
        None => Vec::new(),
    };
    let lattice = match v.get("lattice_in_F") {
        Some(l) => triples(l, &format!("{at}.lattice_in_F"))?,
        None => Vec::new(),
    };
    let hcr = match v.get("hodge_class_rank") {
        Some(h) => u64_list(h, &format!("{at}.hodge_class_rank"))?,
        None => Vec::new(),
    };
    let mut model = QuasiProjModel::new(name, betti, &filt, &lattice, hcr)?;
    if let Some(r) = v.get("ring") {
        model = model.with_ring(ring_from_value(r, &format!("{at}.ring"))?)?;
    }
    Ok(model)
}

fn rename(space: Space, name: &str) -> Space {
    match space {
        Space::Kahler(m) => Space::Kahler(m.renamed(name)),
        Space::QuasiProjective(m) => Space::QuasiProjective(m.renamed(name)),
    }
}

fn expr_from_value(v: &Value, at: &str) -> Result<Space> {
    if v.is_object() {
        return space_from_value(v, at);
    }
    if let Some(s) = v.as_str() {
        return expr_from_value(&json!([s]), at);
    }
    let items = as_array(v, at)?;
    let head = items
        .first()
        .ok_or_else(|| Error::parse(at, "empty constructor expression"))?;
    let op = as_str(head, &format!("{at}[0]"))?;
    let arg = |i: usize| -> Result<&Value> {
        items
            .get(i)
            .ok_or_else(|| Error::parse(at, format!("`{op}` expects an argument at position {i}")))
    };
    let arity = |n: usize| -> Result<()> {
        if items.len() > n + 1 {
            Err(Error::parse(
                at,
                format!("`{op}` takes at most {n} arguments"),
            ))
        } else {
            Ok(())
        }
    };
    let here = |i: usize| format!("{at}[{i}]");
    match op {
        "point" => {
            arity(0)?;
            Ok(space::point().into())
        }
        "gm" => {
            arity(0)?;
            Ok(space::gm().into())
        }
        "projective_space" => {
            arity(1)?;
            Ok(space::projective_space(as_u64(arg(1)?, &here(1))? as usize).into())
        }
        "curve" => {
            arity(1)?;
            Ok(space::curve(as_u64(arg(1)?, &here(1))? as usize).into())
        }
        "affine_space" => {
            arity(1)?;
            Ok(space::affine_space(as_u64(arg(1)?, &here(1))? as usize).into())
        }
        "product" => {
            arity(2)?;
            let x = expr_from_value(arg(1)?, &here(1))?;
            let y = expr_from_value(arg(2)?, &here(2))?;
            space::product_spaces(&x, &y)
        }
        "projective_bundle" => {
            arity(3)?;
            let base = expr_from_value(arg(1)?, &here(1))?;
            let r = as_u64(arg(2)?, &here(2))? as usize;
            let chern = match items.get(3) {
                Some(c) => chern_classes(&base, c, &here(3))?,
                None => Vec::new(),
            };
            space::projective_bundle(&base, r, &chern)
        }
        other => Err(Error::parse(
            here(0),
            format!(
                "unknown constructor `{other}` (expected point, projective_space, curve, product, projective_bundle, affine_space or gm)"
            ),
        )),
    }
}

/// Chern classes `c_1, c_2, ..` as polynomials in the ring of `base`.
pub fn chern_classes(base: &Space, v: &Value, at: &str) -> Result<Vec<Poly>> {
    let ring = base
        .ring()
        .ok_or_else(|| Error::MissingRing(base.name().to_string()))?;
    as_array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, c)| ring.parse_poly(as_str(c, &format!("{at}[{i}]"))?))
        .collect()
}

/// Evaluates a space document value; `at` names its position for errors.
pub fn space_from_value(v: &Value, at: &str) -> Result<Space> {
    if v.as_object().is_none() {
        return Err(Error::parse(at, "a space document must be a JSON object"));
    }
    let kind = as_str(field(v, "kind", at)?, &format!("{at}.kind"))?;
    match kind {
        "kahler" => kahler_from_value(v, at).map(Space::Kahler),
        "quasiprojective" => quasi_from_value(v, at).map(Space::QuasiProjective),
        "construct" => {
            let space = expr_from_value(field(v, "expr", at)?, &format!("{at}.expr"))?;
            Ok(match v.get("name") {
                Some(n) => rename(space, as_str(n, &format!("{at}.name"))?),
                None => space,
            })
        }
        other => Err(Error::parse(
            format!("{at}.kind"),
            format!("unknown kind `{other}` (expected kahler, quasiprojective or construct)"),
        )),
    }
}

/// Explicit-table document for a model; `parse_space` inverts it.
pub fn space_to_value(space: &Space) -> Value {
    let mut doc = match space {
        Space::Kahler(m) => json!({
            "name": m.name(),
            "kind": "kahler",
            "dim": m.dim(),
            "betti": m.betti().iter().map(group_to_value).collect::<Vec<_>>(),
            "hodge": m
                .hodge_numbers()
                .iter()
                .map(|(&(s, t), &h)| json!([s, t, h]))
                .collect::<Vec<_>>(),
            "hodge_class_rank": m.hodge_class_ranks(),
        }),
        Space::QuasiProjective(m) => json!({
            "name": m.name(),
            "kind": "quasiprojective",
            "betti": m.betti_ranks(),
            "filt_dim": m.filtration_entries().iter().map(|&(p, n, v)| json!([p, n, v])).collect::<Vec<_>>(),
            "lattice_in_F": m.lattice_entries().iter().map(|&(p, n, v)| json!([p, n, v])).collect::<Vec<_>>(),
            "hodge_class_rank": m.hodge_class_ranks(),
        }),
    };
    if let Some(r) = space.ring() {
        doc["ring"] = ring_to_value(r);
    }
    doc
}

/// Builtin name (`MU`, `HZ`, `HQ`, `MUQ`) or a document
/// `{"name", "field": "integral"|"rational", "ranks": [[j, rank], ..]}`
/// or `{"wedge": [theory, theory]}` (wedge sum over a common field).
pub fn theory_from_value(v: &Value, at: &str) -> Result<CoefficientTheory> {
    if let Some(name) = v.as_str() {
        return CoefficientTheory::builtin(name);
    }
    if v.as_object().is_none() {
        return Err(Error::parse(
            at,
            "a theory must be a builtin name or a JSON object",
        ));
    }
    if let Some(w) = v.get("wedge") {
        let wedge_at = format!("{at}.wedge");
        let parts = as_array(w, &wedge_at)?;
        let [a, b] = parts.as_slice() else {
            return Err(Error::parse(wedge_at, "expected exactly two theories"));
        };
        let a = theory_from_value(a, &format!("{wedge_at}[0]"))?;
        let b = theory_from_value(b, &format!("{wedge_at}[1]"))?;
        if a.field() != b.field() {
            return Err(Error::parse(
                wedge_at,
                format!(
                    "cannot wedge {} over {} with {} over {}",
                    a.name(),
                    a.field().as_str(),
                    b.name(),
                    b.field().as_str()
                ),
            ));
        }
        return Ok(a.wedge(&b));
    }
    let name = as_str(field(v, "name", at)?, &format!("{at}.name"))?;
    let field_name = match v.get("field") {
        Some(f) => as_str(f, &format!("{at}.field"))?,
        None => "integral",
    };
    let coefficient_field = match field_name {
        "integral" => CoefficientField::Integral,
        "rational" => CoefficientField::Rational,
        other => {
            return Err(Error::parse(
                format!("{at}.field"),
                format!("unknown field `{other}` (expected integral or rational)"),
            ))
        }
    };
    let ranks_at = format!("{at}.ranks");
    let mut ranks = Vec::new();
    for (i, pair) in as_array(field(v, "ranks", at)?, &ranks_at)?
        .iter()
        .enumerate()
    {
        let here = format!("{ranks_at}[{i}]");
        match as_array(pair, &here)?.as_slice() {
            [j, r] => ranks.push((as_i64(j, &here)?, as_i64(r, &here)?)),
            _ => return Err(Error::parse(here, "expected [j, rank]")),
        }
    }
    CoefficientTheory::custom(name, ranks, coefficient_field)
}

/// Wire form of a descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DescriptorDoc {
    field: String,
    free_rank: usize,
    torsion: Vec<Value>,
    circle_rank: u64,
    real_rank: u64,
    complex_torus_dim: Option<u64>,
    exactness: String,
}

pub fn descriptor_to_value(d: &HFGroupDescriptor) -> Value {
    let doc = DescriptorDoc {
        field: d.field().as_str().to_string(),
        free_rank: d.free_rank(),
        torsion: d.torsion().iter().map(big_to_value).collect(),
        circle_rank: d.circle_rank(),
        real_rank: d.real_rank(),
        complex_torus_dim: d.complex_torus_dim(),
        exactness: d.exactness().as_str().to_string(),
    };
    serde_json::to_value(doc).expect("descriptor serializes")
}

pub fn descriptor_from_value(v: &Value) -> Result<HFGroupDescriptor> {
    let doc: DescriptorDoc =
        serde_json::from_value(v.clone()).map_err(|e| Error::parse("descriptor", e.to_string()))?;
    let field = match doc.field.as_str() {
        "integral" => CoefficientField::Integral,
        "rational" => CoefficientField::Rational,
        other => {
            return Err(Error::parse(
                "descriptor.field",
                format!("unknown field `{other}`"),
            ))
        }
    };
    let exactness = match doc.exactness.as_str() {
        "exact" => Exactness::Exact,
        "rank-level" => Exactness::RankLevel,
        other => {
            return Err(Error::parse(
                "descriptor.exactness",
                format!("unknown exactness `{other}`"),
            ))
        }
    };
    let torsion = big_list(&Value::Array(doc.torsion), "descriptor.torsion")?;
    if torsion.iter().any(|d| *d < BigUint::from(2u32)) {
        return Err(Error::parse(
            "descriptor.torsion",
            "invariant factors must be at least 2",
        ));
    }
    let discrete = FgAbelianGroup::new(doc.free_rank, torsion);
    HFGroupDescriptor::from_parts(
        field,
        discrete,
        doc.circle_rank,
        doc.real_rank,
        doc.complex_torus_dim,
        exactness,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construct_projective_plane() {
        let s = parse_space(r#"{"kind":"construct","expr":["projective_space",2]}"#).unwrap();
        assert!(s.same_data(&space::projective_space(2).into()));
    }

    #[test]
    fn explicit_elliptic_curve_tables() {
        let doc = r#"{
            "name": "E", "kind": "kahler", "dim": 1,
            "betti": [1, 2, 1],
            "hodge": {"0,0": 1, "1,0": 1, "0,1": 1, "1,1": 1},
            "hodge_class_rank": [1, 1]
        }"#;
        let s = parse_space(doc).unwrap();
        assert!(s.same_data(&space::curve(1).into()));
    }

    #[test]
    fn asymmetric_hodge_rejected() {
        let doc = r#"{
            "name": "bad", "kind": "kahler", "dim": 1,
            "betti": [1, 2, 1],
            "hodge": [[0,0,1],[1,0,2],[1,1,1]],
            "hodge_class_rank": [1, 1]
        }"#;
        let err = parse_space(doc).unwrap_err().to_string();
        assert!(err.contains("h^{1,0}") && err.contains("h^{0,1}"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_space("{\n  \"kind\": }").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = parse_space(r#"{"kind":"construct","expr":["torus",2]}"#).unwrap_err();
        assert!(err.to_string().contains("$.expr[0]"), "{err}");
    }

    #[test]
    fn round_trip_tables() {
        let bundle = space::projective_bundle(&space::projective_space(1).into(), 2, &[]).unwrap();
        let spaces: Vec<Space> = vec![
            space::point().into(),
            space::curve(2).into(),
            bundle,
            space::gm().into(),
            space::product_spaces(&space::gm().into(), &space::curve(1).into()).unwrap(),
        ];
        for s in spaces {
            let text = serde_json::to_string(&space_to_value(&s)).unwrap();
            let back = parse_space(&text).unwrap();
            assert!(back.same_data(&s), "{text}");
            assert_eq!(back.name(), s.name());
        }
    }

    #[test]
    fn theories() {
        let t = parse_theory(r#"{"name":"K","ranks":[[-1,1],[0,2]]}"#).unwrap();
        assert_eq!(t.rank_at(0), 2);
        assert!(!t.is_rational());
        let w = parse_theory(r#"{"wedge":["MU",{"name":"K","ranks":[[0,1]]}]}"#).unwrap();
        assert_eq!(w.rank_at(0), 2);
        assert!(parse_theory(r#"{"wedge":["MU","HQ"]}"#).is_err());
        assert!(parse_theory(r#""KU""#).is_err());
        assert!(parse_theory(r#"{"name":"K","ranks":[[0,-1]]}"#).is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        let d = HFGroupDescriptor::from_parts(
            CoefficientField::Integral,
            FgAbelianGroup::new(2, vec![2u32, 4]),
            2,
            1,
            None,
            Exactness::RankLevel,
        )
        .unwrap();
        let v = descriptor_to_value(&d);
        assert_eq!(descriptor_from_value(&v).unwrap(), d);
        let mut bad = v.clone();
        bad["torsion"] = json!([1]);
        assert!(descriptor_from_value(&bad).is_err());
        let mut extra = v;
        extra["colour"] = json!("red");
        assert!(descriptor_from_value(&extra).is_err());
    }
}
