//! Integer linear relations `sum_rho alpha_rho phi(D, delta, rho) = 0`.

pub mod nullspace;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{binomial, int_rat, primitive_integer_vector, ExactRational};
use crate::phi::{phi, PhiKey};
use crate::symalg::{BarMonomial, SymPoly};

/// Default cap on the degree for minimal-support mining.
pub const DEFAULT_MINING_CAP: u32 = 12;

/// Upper bound on zero-set combinations examined while mining.
pub const MAX_MINING_COMBINATIONS: u64 = 5_000_000;

fn ser_ints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(i) => seq.serialize_element(&i)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

/// Primitive integer relation over a set of root-family orders.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RelationVector {
    #[serde(rename = "D")]
    pub d: u32,
    pub delta: i64,
    pub support: Vec<i64>,
    #[serde(serialize_with = "ser_ints")]
    pub alpha: Vec<BigInt>,
}

impl RelationVector {
    /// Normalizes (drops zeros, merges repeated orders, primitive, first entry positive)
    /// and verifies the relation exactly.
    pub fn new(d: u32, delta: i64, pairs: &[(i64, BigInt)]) -> Result<Self> {
        let rel = Self::normalized(d, delta, pairs);
        if rel.alpha.is_empty() {
            return Err(Error::NotARelation("empty relation".into()));
        }
        let residual = rel.residual()?;
        if !residual.is_zero() {
            return Err(Error::NotARelation(format!("{rel}: residual {residual}")));
        }
        Ok(rel)
    }

    /// Normalized form without verification.
    pub fn normalized(d: u32, delta: i64, pairs: &[(i64, BigInt)]) -> Self {
        let mut merged: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (rho, a) in pairs {
            *merged.entry(*rho).or_insert_with(BigInt::zero) += a;
        }
        merged.retain(|_, a| !a.is_zero());
        let support: Vec<i64> = merged.keys().copied().collect();
        let q: Vec<ExactRational> = merged.values().map(|a| int_rat(a.clone())).collect();
        Self {
            d,
            delta,
            support,
            alpha: primitive_integer_vector(&q),
        }
    }

    pub fn from_ints(d: u32, delta: i64, pairs: &[(i64, i64)]) -> Result<Self> {
        let p: Vec<(i64, BigInt)> = pairs.iter().map(|&(r, a)| (r, BigInt::from(a))).collect();
        Self::new(d, delta, &p)
    }

    pub fn keys(&self) -> Result<Vec<PhiKey>> {
        self.support
            .iter()
            .map(|&rho| PhiKey::new(self.d, self.delta, rho))
            .collect()
    }

    /// `sum alpha_rho phi(D, delta, rho)`.
    pub fn residual(&self) -> Result<SymPoly> {
        combination(self.d, self.delta, &self.pairs())
    }

    pub fn pairs(&self) -> Vec<(i64, BigInt)> {
        self.support.iter().copied().zip(self.alpha.iter().cloned()).collect()
    }

    pub fn coefficient_sum(&self) -> BigInt {
        self.alpha.iter().sum()
    }

    /// Value at `rho`, zero off the support.
    pub fn at(&self, rho: i64) -> BigInt {
        self.support
            .iter()
            .position(|&r| r == rho)
            .map_or_else(BigInt::zero, |i| self.alpha[i].clone())
    }

    /// The relation moved to `(D+1, delta+1, rho+1)`.
    pub fn shifted(&self) -> RelationVector {
        RelationVector {
            d: self.d + 1,
            delta: self.delta + 1,
            support: self.support.iter().map(|r| r + 1).collect(),
            alpha: self.alpha.clone(),
        }
    }
}

impl std::fmt::Display for RelationVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .pairs()
            .iter()
            .map(|(rho, a)| format!("{a}@{rho}"))
            .collect();
        write!(f, "D={} delta={} [{}]", self.d, self.delta, parts.join(", "))
    }
}

/// `sum alpha_rho phi(D, delta, rho)` for arbitrary (possibly repeated) pairs.
pub fn combination(d: u32, delta: i64, pairs: &[(i64, BigInt)]) -> Result<SymPoly> {
    let mut acc = SymPoly::zero();
    for (rho, a) in pairs {
        let r = phi(PhiKey::new(d, delta, *rho)?)?;
        acc.add_scaled(&r.poly, &int_rat(a.clone()));
    }
    Ok(acc)
}

/// Monomials as rows, keys as columns.
#[derive(Debug, Clone)]
pub struct PhiMatrix {
    pub rows: Vec<BarMonomial>,
    pub cols: Vec<PhiKey>,
    pub entries: Vec<Vec<ExactRational>>,
}

impl PhiMatrix {
    pub fn build(cols: Vec<PhiKey>) -> Result<Self> {
        let polys: Vec<SymPoly> = cols
            .par_iter()
            .map(|&k| phi(k).map(|r| r.poly.clone()))
            .collect::<Result<_>>()?;
        let rows: Vec<BarMonomial> = polys
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let entries = rows
            .iter()
            .map(|m| polys.iter().map(|p| p.coefficient(m)).collect())
            .collect();
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn nullspace(&self) -> Vec<Vec<ExactRational>> {
        nullspace::nullspace(&self.entries, self.cols.len())
    }

    pub fn rank(&self) -> usize {
        nullspace::rank(&self.entries, self.cols.len())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    #[serde(rename = "D")]
    pub d: u32,
    pub delta: i64,
    pub rho_set: Vec<i64>,
    pub dim: usize,
    pub basis: Vec<RelationVector>,
    pub minimal_support: Vec<RelationVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternating_binomial: Option<RelationVector>,
    /// Every relation has coefficient sum zero; only reported for `delta = 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_sum_ok: Option<bool>,
    pub minimal_support_mined: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct MiningOptions {
    pub minimal_support: bool,
    pub max_degree: u32,
}

impl Default for MiningOptions {
    fn default() -> Self {
        Self {
            minimal_support: true,
            max_degree: DEFAULT_MINING_CAP,
        }
    }
}

fn to_relation(d: u32, delta: i64, rho_set: &[i64], v: &[ExactRational]) -> Result<RelationVector> {
    let ints = primitive_integer_vector(v);
    let pairs: Vec<(i64, BigInt)> = rho_set.iter().copied().zip(ints).collect();
    RelationVector::new(d, delta, &pairs)
}

/// The default window of root-family orders: `[-(D+2), D-1]`.
pub fn default_rho_window(d: u32) -> (i64, i64) {
    (-(d as i64 + 2), d as i64 - 1)
}

/// Relation space over `rho_set` with the default mining options.
pub fn find_relations(d: u32, delta: i64, rho_set: &[i64]) -> Result<RelationReport> {
    find_relations_with(d, delta, rho_set, MiningOptions::default())
}

pub fn find_relations_with(
    d: u32,
    delta: i64,
    rho_set: &[i64],
    opts: MiningOptions,
) -> Result<RelationReport> {
    let rho_set: Vec<i64> = rho_set.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let keys: Vec<PhiKey> = rho_set
        .iter()
        .map(|&r| PhiKey::new(d, delta, r))
        .collect::<Result<_>>()?;
    let m = PhiMatrix::build(keys)?;
    let ns = m.nullspace();
    let basis: Vec<RelationVector> = ns
        .iter()
        .map(|v| to_relation(d, delta, &rho_set, v))
        .collect::<Result<_>>()?;

    let mine = opts.minimal_support && d <= opts.max_degree;
    let minimal_support = if mine {
        minimal_support_relations(d, delta, &rho_set, &ns)?
    } else {
        Vec::new()
    };

    let alternating_binomial = if delta == 0 && d % 2 == 1 && ns.len() >= 1 {
        let alt = alternating_binomial_vector(d);
        let inside = alt.support.iter().all(|r| rho_set.contains(r));
        (inside && alt.residual()?.is_zero()).then_some(alt)
    } else {
        None
    };

    let zero_sum_ok = (delta == 0).then(|| {
        basis
            .iter()
            .chain(minimal_support.iter())
            .all(|r| r.coefficient_sum().is_zero())
    });

    Ok(RelationReport {
        d,
        delta,
        rho_set,
        dim: ns.len(),
        basis,
        minimal_support,
        alternating_binomial,
        zero_sum_ok,
        minimal_support_mined: mine,
    })
}

/// Relations whose support is minimal: the circuits of the column matroid.
///
/// Every circuit is the unique (up to scale) kernel vector vanishing on some
/// `dim - 1` coordinates, so it suffices to enumerate those zero sets.
pub fn minimal_support_relations(
    d: u32,
    delta: i64,
    rho_set: &[i64],
    basis: &[Vec<ExactRational>],
) -> Result<Vec<RelationVector>> {
    let k = basis.len();
    let m = rho_set.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let combos = binomial(m as u64, (k - 1) as u64);
    if combos > BigInt::from(MAX_MINING_COMBINATIONS) {
        return Err(Error::TooLarge(format!(
            "{combos} zero sets for a {k}-dimensional space over {m} orders"
        )));
    }
    let mut found: BTreeMap<Vec<usize>, Vec<ExactRational>> = BTreeMap::new();
    for zeros in k_subsets(m, k - 1) {
        let rows: Vec<Vec<ExactRational>> = zeros
            .iter()
            .map(|&z| basis.iter().map(|b| b[z].clone()).collect())
            .collect();
        let sol = nullspace::nullspace(&rows, k);
        if sol.len() != 1 {
            continue;
        }
        let y = &sol[0];
        let v: Vec<ExactRational> = (0..m)
            .map(|i| basis.iter().zip(y).map(|(b, c)| &b[i] * c).sum())
            .collect();
        let support: Vec<usize> = (0..m).filter(|&i| !v[i].is_zero()).collect();
        found.entry(support).or_insert(v);
    }
    let supports: Vec<Vec<usize>> = found.keys().cloned().collect();
    let mut out = Vec::new();
    for (s, v) in &found {
        let minimal = !supports
            .iter()
            .any(|t| t.len() < s.len() && t.iter().all(|i| s.contains(i)));
        if minimal {
            out.push(to_relation(d, delta, rho_set, v)?);
        }
    }
    out.sort_by(|a, b| a.support.cmp(&b.support).then_with(|| a.alpha.cmp(&b.alpha)));
    Ok(out)
}

fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

/// Dimension of the relation space for `delta = 0` over `rho = 1..D-1`.
pub fn relation_space_dim(d: u32) -> Result<usize> {
    if d < 2 {
        return Err(Error::Precondition("degree must be at least 2".into()));
    }
    let keys: Vec<PhiKey> = (1..d as i64)
        .map(|r| PhiKey::new(d, 0, r))
        .collect::<Result<_>>()?;
    let m = PhiMatrix::build(keys)?;
    Ok(m.cols.len() - m.rank())
}

/// `((-1)^rho C(D, rho))_{0 < rho < D}` in primitive form (unverified).
pub fn alternating_binomial_vector(d: u32) -> RelationVector {
    let pairs: Vec<(i64, BigInt)> = (1..d as i64)
        .map(|rho| {
            let c = binomial(d as u64, rho as u64);
            (rho, if rho % 2 == 0 { c } else { -c })
        })
        .collect();
    RelationVector::normalized(d, 0, &pairs)
}

/// True when `sum_{0<rho<D} (-1)^rho C(D,rho) phi(D,0,rho)` is the zero polynomial.
pub fn check_odd_binomial(d: u32) -> Result<bool> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::Precondition(format!("need odd D >= 3, got {d}")));
    }
    Ok(alternating_binomial_vector(d).residual()?.is_zero())
}

/// True when the relation also holds at `(D+1, delta+1, rho+1)`.
pub fn check_inheritance(rel: &RelationVector) -> Result<bool> {
    let s = rel.shifted();
    s.keys()?;
    Ok(s.residual()?.is_zero())
}

/// Rank of a set of relations sharing `(D, delta)`, over the union of their supports.
pub fn relations_rank(rels: &[RelationVector]) -> usize {
    let mut orders: BTreeSet<i64> = BTreeSet::new();
    for r in rels {
        orders.extend(r.support.iter().copied());
    }
    let rows: Vec<Vec<ExactRational>> = rels
        .iter()
        .map(|r| orders.iter().map(|&o| int_rat(r.at(o))).collect())
        .collect();
    nullspace::rank(&rows, orders.len())
}

/// True when `v` lies in the span of `basis` (all over the same `(D, delta)`).
pub fn in_span(basis: &[RelationVector], v: &RelationVector) -> bool {
    let mut with = basis.to_vec();
    with.push(v.clone());
    relations_rank(&with) == relations_rank(basis)
}

/// Relation space dimensions for `D` in `lo..=hi`, computed in parallel.
pub fn dimension_sweep(lo: u32, hi: u32) -> Result<Vec<(u32, usize)>> {
    (lo..=hi)
        .into_par_iter()
        .map(|d| relation_space_dim(d).map(|k| (d, k)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn quartic_unique_relation() {
        let r = find_relations(4, 0, &[1, 2, 3]).unwrap();
        assert_eq!(r.dim, 1);
        assert_eq!(r.basis[0].alpha, ints(&[5, -6, 1]));
        assert_eq!(r.zero_sum_ok, Some(true));
    }

    #[test]
    fn small_degrees() {
        let r = find_relations(3, 0, &[1, 2]).unwrap();
        assert_eq!(r.basis[0].alpha, ints(&[1, -1]));
        assert_eq!(find_relations(2, 0, &[1]).unwrap().dim, 0);
        assert_eq!(relation_space_dim(2).unwrap(), 0);
        let r = find_relations(5, 2, &[0, 3]).unwrap();
        assert_eq!(r.basis[0].alpha, ints(&[1, 5]));
    }

    #[test]
    fn quintic_circuits() {
        let r = find_relations(5, 0, &[1, 2, 3, 4]).unwrap();
        assert_eq!(r.dim, 2);
        let got: Vec<(Vec<i64>, Vec<BigInt>)> = r
            .minimal_support
            .iter()
            .map(|x| (x.support.clone(), x.alpha.clone()))
            .collect();
        assert_eq!(
            got,
            vec![
                (vec![1, 2, 3], ints(&[3, -4, 1])),
                (vec![1, 2, 4], ints(&[5, -6, 1])),
                (vec![1, 3, 4], ints(&[1, -3, 2])),
                (vec![2, 3, 4], ints(&[2, -5, 3])),
            ]
        );
        let alt = r.alternating_binomial.unwrap();
        assert_eq!(alt.alpha, ints(&[1, -2, 2, -1]));
    }

    #[test]
    fn odd_binomial_small() {
        for d in [3, 5, 7, 9] {
            assert!(check_odd_binomial(d).unwrap(), "D={d}");
        }
        assert!(check_odd_binomial(4).is_err());
    }

    #[test]
    fn inheritance_examples() {
        let b = RelationVector::from_ints(4, 0, &[(1, 5), (2, -6), (3, 1)]).unwrap();
        assert!(check_inheritance(&b).unwrap());
        let a = RelationVector::from_ints(3, 0, &[(1, 1), (2, -1)]).unwrap();
        assert!(check_inheritance(&a).unwrap());
        let e = RelationVector::from_ints(3, 1, &[(0, 1), (2, 1)]).unwrap();
        assert!(check_inheritance(&e).unwrap());
    }

    #[test]
    fn construction_rejects_non_relations() {
        assert!(RelationVector::from_ints(4, 0, &[(1, 5), (2, -6), (3, 2)]).is_err());
        assert!(RelationVector::from_ints(4, 0, &[(1, 0)]).is_err());
    }

    #[test]
    fn normalization() {
        let r = RelationVector::normalized(5, 0, &[(2, BigInt::from(-4)), (4, BigInt::from(2)), (2, BigInt::from(0))]);
        assert_eq!(r.support, vec![2, 4]);
        assert_eq!(r.alpha, ints(&[2, -1]));
    }

    #[test]
    fn subsets() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(3, 0), vec![Vec::<usize>::new()]);
    }
}
