//! Sparse polynomials over the barred quasi-binomial parameters and integration constants.
//!
//! Monomials are ordered by weight (descending), then lexicographically descending on
//! the exponent vector `(r1, r2, ..., c1, c2, ...)`. That is the order used for display
//! and serialization.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, format_rational, int_rat, parse_rational, ExactRational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BarSymbol {
    /// Root parameter with `order` bars; weight `order`.
    Root(u32),
    /// Integration constant `c_index` created when extending a degree-`base` vector; weight `base + index`.
    Const { index: u32, base: u32 },
}

impl BarSymbol {
    pub fn weight(&self) -> u32 {
        match *self {
            BarSymbol::Root(i) => i,
            BarSymbol::Const { index, base } => base + index,
        }
    }

    pub fn is_const(&self) -> bool {
        matches!(self, BarSymbol::Const { .. })
    }

    /// Text name: `r<i>` or `c<m>`.
    pub fn name(&self) -> String {
        match *self {
            BarSymbol::Root(i) => format!("r{i}"),
            BarSymbol::Const { index, .. } => format!("c{index}"),
        }
    }

    pub fn pretty(&self) -> String {
        match *self {
            BarSymbol::Root(i) => format!("r^[{i}]"),
            BarSymbol::Const { index, .. } => format!("c[{index}]"),
        }
    }
}

/// Product of symbols with positive exponents, stored sorted by symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BarMonomial {
    factors: Vec<(BarSymbol, u32)>,
}

impl BarMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (BarSymbol, u32)>) -> Self {
        let mut map: BTreeMap<BarSymbol, u32> = BTreeMap::new();
        for (s, e) in pairs {
            *map.entry(s).or_insert(0) += e;
        }
        Self {
            factors: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn symbol(s: BarSymbol) -> Self {
        Self {
            factors: vec![(s, 1)],
        }
    }

    pub fn factors(&self) -> &[(BarSymbol, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.factors.iter().map(|(s, e)| s.weight() * e).sum()
    }

    /// Weight counting root parameters only.
    pub fn root_weight(&self) -> u32 {
        self.factors
            .iter()
            .filter(|(s, _)| !s.is_const())
            .map(|(s, e)| s.weight() * e)
            .sum()
    }

    pub fn exponent(&self, s: BarSymbol) -> u32 {
        self.factors
            .iter()
            .find(|(t, _)| *t == s)
            .map_or(0, |&(_, e)| e)
    }

    pub fn has_const(&self) -> bool {
        self.factors.iter().any(|(s, _)| s.is_const())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self { factors: out }
    }

    fn text(&self) -> String {
        self.factors
            .iter()
            .map(|(s, e)| {
                if *e == 1 {
                    s.name()
                } else {
                    format!("{}^{e}", s.name())
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    fn pretty(&self) -> String {
        self.factors
            .iter()
            .map(|(s, e)| {
                if *e == 1 {
                    s.pretty()
                } else {
                    format!("{}^{e}", s.pretty())
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Ord for BarMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.weight().cmp(&self.weight()).then_with(|| {
            let (a, b) = (&self.factors, &other.factors);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(&(sa, ea)), Some(&(sb, eb))) => match sa.cmp(&sb) {
                        Ordering::Less => return Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal => {
                            if ea != eb {
                                return eb.cmp(&ea);
                            }
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for BarMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with exact rational coefficients, no zero terms stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SymPoly {
    terms: BTreeMap<BarMonomial, ExactRational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(q: ExactRational) -> Self {
        Self::term(BarMonomial::one(), q)
    }

    pub fn symbol(s: BarSymbol) -> Self {
        Self::term(BarMonomial::symbol(s), ExactRational::one())
    }

    pub fn root(i: u32) -> Self {
        Self::symbol(BarSymbol::Root(i))
    }

    pub fn term(m: BarMonomial, q: ExactRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(m, q);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BarMonomial, &ExactRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &BarMonomial) -> ExactRational {
        self.terms.get(m).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn add_term(&mut self, m: BarMonomial, q: ExactRational) {
        if q.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SymPoly, c: &ExactRational) {
        if c.is_zero() {
            return;
        }
        for (m, q) in &other.terms {
            self.add_term(m.clone(), q * c);
        }
    }

    pub fn scale(&self, c: &ExactRational) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero();
        }
        SymPoly {
            terms: self.terms.iter().map(|(m, q)| (m.clone(), q * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &BarMonomial, c: &ExactRational) -> SymPoly {
        let mut out = SymPoly::zero();
        if c.is_zero() {
            return out;
        }
        for (n, q) in &self.terms {
            out.add_term(n.mul(m), q * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> SymPoly {
        let mut acc = SymPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Simultaneous substitution; every symbol present must be bound.
    pub fn substitute(&self, binding: &BTreeMap<BarSymbol, SymPoly>) -> Result<SymPoly> {
        let mut powers: BTreeMap<(BarSymbol, u32), SymPoly> = BTreeMap::new();
        let mut out = SymPoly::zero();
        for (m, q) in &self.terms {
            let mut acc = SymPoly::constant(q.clone());
            for &(s, e) in m.factors() {
                let base = binding
                    .get(&s)
                    .ok_or_else(|| Error::UnboundSymbol(s.name()))?;
                let p = powers
                    .entry((s, e))
                    .or_insert_with(|| base.pow(e))
                    .clone();
                acc = &acc * &p;
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Symbol-for-symbol renaming; symbols missing from the map are kept.
    pub fn rename(&self, map: &BTreeMap<BarSymbol, BarSymbol>) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, q) in &self.terms {
            let pairs = m
                .factors()
                .iter()
                .map(|&(s, e)| (*map.get(&s).unwrap_or(&s), e));
            out.add_term(BarMonomial::from_pairs(pairs), q.clone());
        }
        out
    }

    /// Root-parameter weights of all monomials, deduplicated.
    pub fn root_weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.terms.keys().map(|m| m.root_weight()).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.terms.keys().map(|m| m.weight()).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    pub fn is_homogeneous(&self, weight: u32) -> bool {
        self.terms.keys().all(|m| m.weight() == weight)
    }

    pub fn has_const(&self) -> bool {
        self.terms.keys().any(|m| m.has_const())
    }

    pub fn symbols(&self) -> Vec<BarSymbol> {
        let mut v: Vec<BarSymbol> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(s, _)| s))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Sum of the positive coefficients.
    pub fn sum_positive(&self) -> ExactRational {
        self.terms
            .values()
            .filter(|q| q.is_positive())
            .fold(ExactRational::zero(), |acc, q| acc + q)
    }

    pub fn eval_complex(&self, value: impl Fn(BarSymbol) -> Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, q) in &self.terms {
            let mut t = Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0);
            for &(s, e) in m.factors() {
                t *= value(s).powu(e);
            }
            acc += t;
        }
        acc
    }

    pub fn eval_exact(&self, value: impl Fn(BarSymbol) -> ExactRational) -> ExactRational {
        let mut acc = ExactRational::zero();
        for (m, q) in &self.terms {
            let mut t = q.clone();
            for &(s, e) in m.factors() {
                t *= num_traits::pow(value(s), e as usize);
            }
            acc += t;
        }
        acc
    }

    /// Parses the text form, assigning `const_base` to any `c<m>` symbol.
    pub fn parse_with_base(s: &str, const_base: u32) -> Result<SymPoly> {
        Parser::new(s, const_base).poly()
    }

    /// Layout with bars rendered as `r^[i]`.
    pub fn pretty(&self) -> String {
        self.render(|m| m.pretty(), " ")
    }

    fn render(&self, mono: impl Fn(&BarMonomial) -> String, sep: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            let mag = q.abs();
            let body = if m.is_one() {
                format_rational(&mag)
            } else if mag.is_one() {
                mono(m)
            } else {
                format!("{}{sep}{}", format_rational(&mag), mono(m))
            };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }

    pub fn to_json(&self) -> SymPolyJson {
        let base = self.symbols().iter().find_map(|s| match s {
            BarSymbol::Const { base, .. } => Some(*base),
            _ => None,
        });
        SymPolyJson {
            terms: self
                .terms
                .iter()
                .map(|(m, q)| TermJson {
                    expt: ExptJson(m.factors().iter().map(|(s, e)| (s.name(), *e)).collect()),
                    coeff: format_rational(q),
                })
                .collect(),
            const_base: base,
        }
    }

    pub fn from_json(j: &SymPolyJson) -> Result<SymPoly> {
        let base = j.const_base.unwrap_or(0);
        let mut out = SymPoly::zero();
        for t in &j.terms {
            let mut pairs = Vec::new();
            for (name, e) in &t.expt.0 {
                pairs.push((parse_symbol(name, base)?, *e));
            }
            out.add_term(BarMonomial::from_pairs(pairs), parse_rational(&t.coeff)?);
        }
        Ok(out)
    }
}

fn parse_symbol(name: &str, base: u32) -> Result<BarSymbol> {
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("bad symbol {name:?}"),
    };
    let (kind, digits) = name.split_at(1);
    let order: u32 = digits.parse().map_err(|_| bad())?;
    if order == 0 {
        return Err(bad());
    }
    match kind {
        "r" => Ok(BarSymbol::Root(order)),
        "c" => Ok(BarSymbol::Const { index: order, base }),
        _ => Err(bad()),
    }
}

/// Text form, e.g. `-9*r1^4 + 18*r1^2*r2 - 4*r1*r3 - 6*r2^2 + r4`.
impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|m| m.text(), "*"))
    }
}

/// Parses the text form; integration constants get base 0 (weight = index).
impl FromStr for SymPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<SymPoly> {
        SymPoly::parse_with_base(s, 0)
    }
}

impl Add for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.add_term(m.clone(), q.clone());
        }
        out
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.add_term(m.clone(), -q.clone());
        }
        out
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        SymPoly {
            terms: self.terms.iter().map(|(m, q)| (m.clone(), -q.clone())).collect(),
        }
    }
}

impl Mul for &SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (ma, qa) in &self.terms {
            for (mb, qb) in &rhs.terms {
                out.add_term(ma.mul(mb), qa * qb);
            }
        }
        out
    }
}

pub fn add(a: &SymPoly, b: &SymPoly) -> SymPoly {
    a + b
}

pub fn scale(a: &SymPoly, c: &ExactRational) -> SymPoly {
    a.scale(c)
}

pub fn mul(a: &SymPoly, b: &SymPoly) -> SymPoly {
    a * b
}

pub fn substitute(p: &SymPoly, binding: &BTreeMap<BarSymbol, SymPoly>) -> Result<SymPoly> {
    p.substitute(binding)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymPolyJson {
    pub terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub const_base: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub expt: ExptJson,
    pub coeff: String,
}

/// Exponent map that keeps the monomial's symbol order when serialized.
#[derive(Debug, Clone, PartialEq)]
pub struct ExptJson(pub Vec<(String, u32)>);

impl Serialize for ExptJson {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for ExptJson {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map: BTreeMap<String, u32> = BTreeMap::deserialize(d)?;
        Ok(ExptJson(map.into_iter().collect()))
    }
}

impl Serialize for SymPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    base: u32,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str, base: u32) -> Self {
        Self {
            src: s.as_bytes(),
            pos: 0,
            base,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn poly(&mut self) -> Result<SymPoly> {
        let mut out = SymPoly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if !first => break,
                None => return Err(self.err("empty polynomial")),
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(b'+') if !first => {
                    self.pos += 1;
                    1
                }
                Some(_) if first => 1,
                Some(_) => return Err(self.err("expected + or -")),
            };
            first = false;
            let (m, q) = self.term()?;
            out.add_term(m, if sign < 0 { -q } else { q });
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(BarMonomial, ExactRational)> {
        let mut coeff = ExactRational::one();
        let mut pairs = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n: BigInt = self.digits()?.parse().map_err(|_| self.err("number"))?;
                    let mut q = int_rat(n);
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let d: BigInt = self.digits()?.parse().map_err(|_| self.err("number"))?;
                        if d.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                        q /= int_rat(d);
                    }
                    coeff *= q;
                }
                Some(c @ (b'r' | b'c')) => {
                    self.pos += 1;
                    let order: u32 = self.digits()?.parse().map_err(|_| self.err("order"))?;
                    if order == 0 {
                        return Err(self.err("order must be positive"));
                    }
                    let sym = if c == b'r' {
                        BarSymbol::Root(order)
                    } else {
                        BarSymbol::Const {
                            index: order,
                            base: self.base,
                        }
                    };
                    let mut e = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        e = self.digits()?.parse().map_err(|_| self.err("exponent"))?;
                    }
                    pairs.push((sym, e));
                }
                _ => return Err(self.err("expected number or symbol")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((BarMonomial::from_pairs(pairs), coeff))
    }
}

/// Ordered parameter vector `(entry_1, ..., entry_len)`; entry `i` has weight `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiBinomialVector {
    params: Vec<SymPoly>,
}

impl QuasiBinomialVector {
    /// `(r1, ..., rD)`.
    pub fn standard(degree: u32) -> Self {
        Self {
            params: (1..=degree).map(SymPoly::root).collect(),
        }
    }

    pub fn from_entries(params: Vec<SymPoly>) -> Self {
        Self { params }
    }

    pub fn degree(&self) -> u32 {
        self.params.len() as u32
    }

    pub fn entries(&self) -> &[SymPoly] {
        &self.params
    }

    /// Entry of order `i`; order 0 is the monic 1.
    pub fn entry(&self, i: u32) -> SymPoly {
        if i == 0 {
            SymPoly::one()
        } else {
            self.params[(i - 1) as usize].clone()
        }
    }
}

/// Drops the top `m` entries: the parameter vector of the m-th derivative.
pub fn truncate_params(r: &QuasiBinomialVector, m: usize) -> Result<QuasiBinomialVector> {
    if m >= r.params.len() {
        return Err(Error::Truncation {
            len: r.params.len(),
            by: m,
        });
    }
    Ok(QuasiBinomialVector {
        params: r.params[..r.params.len() - m].to_vec(),
    })
}

/// Appends constants `c_1..c_m` at orders `len+1..len+m`: the m-th antiderivative.
pub fn extend_params(r: &QuasiBinomialVector, m: usize) -> QuasiBinomialVector {
    let base = r.degree();
    let mut params = r.params.clone();
    params.extend((1..=m as u32).map(|index| SymPoly::symbol(BarSymbol::Const { index, base })));
    QuasiBinomialVector { params }
}

/// Coefficients of the monic degree-`d` polynomial from `x^d` down to `x^0`.
pub fn quasi_binomial_coeffs(d: u32, r: &QuasiBinomialVector) -> Result<Vec<SymPoly>> {
    if r.degree() < d {
        return Err(Error::ShortVector {
            len: r.params.len(),
            degree: d,
        });
    }
    Ok((0..=d)
        .map(|i| {
            let mut c = int_rat(binomial(d as u64, i as u64));
            if i % 2 == 1 {
                c = -c;
            }
            r.entry(i).scale(&c)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn p(s: &str) -> SymPoly {
        s.parse().unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&SymPoly::root(1) * &SymPoly::root(1), p("r1^2"));
        let q = p("3*r1^2 - 2*r2");
        assert!((&q + &q.scale(&rat(-1))).is_zero());
        assert_eq!(&q * &SymPoly::root(1), p("3*r1^3 - 2*r1*r2"));
    }

    #[test]
    fn display_order_matches_tables() {
        let q = p("r4 - 6*r2^2 - 4*r1*r3 + 18*r1^2*r2 - 9*r1^4");
        assert_eq!(q.to_string(), "-9*r1^4 + 18*r1^2*r2 - 4*r1*r3 - 6*r2^2 + r4");
        assert_eq!(q.pretty(), "-9 r^[1]^4 + 18 r^[1]^2 r^[2] - 4 r^[1] r^[3] - 6 r^[2]^2 + r^[4]");
    }

    #[test]
    fn parse_rationals_and_constants() {
        let q = SymPoly::parse_with_base("3/2*r1*c1 - 7 + c2^2", 3).unwrap();
        assert!(q.has_const());
        assert_eq!(q.weights(), vec![0, 5, 10]);
        assert_eq!(q.to_string(), "c2^2 + 3/2*r1*c1 - 7");
        assert!("r0".parse::<SymPoly>().is_err());
        assert!("3 r1".parse::<SymPoly>().is_err());
        assert_eq!(p("0"), SymPoly::zero());
        assert_eq!(SymPoly::zero().to_string(), "0");
    }

    #[test]
    fn substitution() {
        let s = p("2*r1^2 - r2");
        let mut b = BTreeMap::new();
        b.insert(BarSymbol::Root(1), p("r1 + r2"));
        b.insert(BarSymbol::Root(2), p("r1^2"));
        assert_eq!(s.substitute(&b).unwrap(), p("r1^2 + 4*r1*r2 + 2*r2^2"));
        let mut partial = BTreeMap::new();
        partial.insert(BarSymbol::Root(1), p("r1"));
        assert_eq!(
            s.substitute(&partial).unwrap_err(),
            Error::UnboundSymbol("r2".into())
        );
    }

    #[test]
    fn json_shape() {
        let q = p("-9*r1^4 + r2^2");
        let v = serde_json::to_value(&q).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"terms":[{"expt":{"r1":4},"coeff":"-9"},{"expt":{"r2":2},"coeff":"1"}]})
        );
        let back: SymPolyJson = serde_json::from_value(v).unwrap();
        assert_eq!(SymPoly::from_json(&back).unwrap(), q);
    }

    #[test]
    fn vectors_and_coefficients() {
        let r = QuasiBinomialVector::standard(4);
        let t = truncate_params(&r, 1).unwrap();
        assert_eq!(t, QuasiBinomialVector::standard(3));
        assert_eq!(truncate_params(&r, 3).unwrap(), QuasiBinomialVector::standard(1));
        assert!(truncate_params(&r, 4).is_err());
        assert_eq!(
            truncate_params(&truncate_params(&r, 1).unwrap(), 2).unwrap(),
            truncate_params(&r, 3).unwrap()
        );

        let r3 = QuasiBinomialVector::standard(3);
        let e = extend_params(&r3, 2);
        let w: Vec<u32> = e.entries().iter().map(|x| x.weights()[0]).collect();
        assert_eq!(w, vec![1, 2, 3, 4, 5]);
        assert_eq!(truncate_params(&extend_params(&r3, 1), 1).unwrap(), r3);

        let c: Vec<String> = quasi_binomial_coeffs(3, &r3)
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(c, vec!["1", "-3*r1", "3*r2", "-r3"]);
        let c4: Vec<String> = quasi_binomial_coeffs(4, &r)
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(c4, vec!["1", "-4*r1", "6*r2", "-4*r3", "r4"]);
        assert_eq!(quasi_binomial_coeffs(1, &r).unwrap().len(), 2);
        assert!(quasi_binomial_coeffs(5, &r).is_err());
    }
}
