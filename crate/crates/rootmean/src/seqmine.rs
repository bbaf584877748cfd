//! Leading-coefficient sequences of the mean-value polynomials and the integer
//! sequences mined from them.
//!
//! For fixed `D`, the coefficient of a chosen top monomial in `phi(D, 0, rho)` is
//! a polynomial `h_D(n)` in the family size `n = D - rho`. Dividing out
//! `((-1)^D D / D!) (D - n) n^chi` leaves `g_D(n)`, whose coefficients `t_k(D)`
//! are again polynomial in `D`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{common_denominator, factorial, format_rational, int_rat, rat, ExactRational};
use crate::phi::{phi, PhiKey};
use crate::symalg::{BarMonomial, BarSymbol};

/// Dense univariate polynomial over the rationals, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<ExactRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        Self::new(vec![rat(0), rat(1)])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| rat(x)).collect())
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficient(&self, i: usize) -> ExactRational {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn leading(&self) -> ExactRational {
        self.coeffs.last().cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Least common denominator of the coefficients.
    pub fn lcd(&self) -> BigInt {
        common_denominator(self.coeffs.iter())
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coefficient(i) - other.coefficient(i)).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![ExactRational::zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * b;
                }
            }
            q[i] = c;
        }
        rem.truncate(dd);
        (Self::new(q), Self::new(rem))
    }

    /// The polynomial of least degree through the points (Newton divided differences).
    pub fn interpolate(points: &[(ExactRational, ExactRational)]) -> Result<Self> {
        let xs: BTreeSet<&ExactRational> = points.iter().map(|p| &p.0).collect();
        if xs.len() != points.len() {
            return Err(Error::Precondition("interpolation nodes must be distinct".into()));
        }
        let n = points.len();
        let mut dd: Vec<ExactRational> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&points[i].0 - &points[i - level].0);
            }
        }
        let mut acc = Self::zero();
        for i in (0..n).rev() {
            let shift = Self::new(vec![-points[i].0.clone(), rat(1)]);
            acc = acc.mul(&shift);
            let mut c = acc.coeffs.clone();
            if c.is_empty() {
                c.push(ExactRational::zero());
            }
            c[0] += &dd[i];
            acc = Self::new(c);
        }
        Ok(acc)
    }

    /// Text form in the variable `var`, highest power first.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                s.push_str(&format_rational(&a));
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{mono}", format_rational(&a)));
            }
        }
        s
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("n"))
    }
}

impl Serialize for RationalPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        v.serialize(s)
    }
}

/// Which top-weight monomial of `phi(D, 0, rho)` is tracked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LeadingTerm {
    /// `r1^D`, the maximal power of the mean.
    PowerOfMean,
    /// `r_D`, the top-order parameter.
    TopParameter,
}

impl LeadingTerm {
    pub fn monomial(self, d: u32) -> BarMonomial {
        match self {
            LeadingTerm::PowerOfMean => BarMonomial::from_pairs([(BarSymbol::Root(1), d)]),
            LeadingTerm::TopParameter => BarMonomial::symbol(BarSymbol::Root(d)),
        }
    }
}

/// Coefficient of `term` in `phi(D, 0, rho)`.
pub fn leading_coefficient(d: u32, rho: i64, term: LeadingTerm) -> Result<ExactRational> {
    let r = phi(PhiKey::new(d, 0, rho)?)?;
    Ok(r.poly.coefficient(&term.monomial(d)))
}

/// Coefficient of `r1^D` in `phi(D, 0, rho)`.
pub fn leading_phi_coefficient(d: u32, rho: i64) -> Result<ExactRational> {
    leading_coefficient(d, rho, LeadingTerm::PowerOfMean)
}

/// Interpolates `h_D(n)` through `n_points` and checks it at the next two family sizes.
pub fn fit_h(d: u32, n_points: &[u32], term: LeadingTerm) -> Result<RationalPolynomial> {
    if n_points.is_empty() || n_points.contains(&0) {
        return Err(Error::Precondition("family sizes must be positive".into()));
    }
    let pt = |n: u32| -> Result<(ExactRational, ExactRational)> {
        Ok((rat(n as i64), leading_coefficient(d, d as i64 - n as i64, term)?))
    };
    let pts: Vec<_> = n_points.iter().map(|&n| pt(n)).collect::<Result<_>>()?;
    let h = RationalPolynomial::interpolate(&pts)?;
    let top = *n_points.iter().max().expect("nonempty");
    for n in [top + 1, top + 2] {
        let (x, y) = pt(n)?;
        if h.eval(&x) != y {
            return Err(Error::NotPolynomial(format!(
                "D={d}: fit through {} points misses n={n}",
                pts.len()
            )));
        }
    }
    Ok(h)
}

/// `n = 1..=D+2` minus the two held-out sizes, i.e. `1..=D`.
pub fn default_fit_points(d: u32) -> Vec<u32> {
    (1..=d).collect()
}

/// Outcome of an irreducibility test over the integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Irreducibility {
    /// The constant 1.
    Unit,
    Irreducible,
    Reducible,
    /// Neither a factor nor a proof was found.
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct GDecomposition {
    #[serde(rename = "D")]
    pub d: u32,
    pub chi: u32,
    pub h: RationalPolynomial,
    pub g: RationalPolynomial,
    pub irreducible: Irreducibility,
}

/// `((-1)^D D / D!) (D - n) n^chi`.
pub fn structural_factor(d: u32) -> RationalPolynomial {
    let chi = d % 2;
    let sign = if d % 2 == 0 { 1 } else { -1 };
    let c = rat(sign * d as i64) / int_rat(factorial(d as u64));
    let mut f = RationalPolynomial::from_ints(&[d as i64, -1]).scale(&c);
    for _ in 0..chi {
        f = f.mul(&RationalPolynomial::x());
    }
    f
}

/// Divides `h` by the structural factor and checks that the quotient is a monic
/// integer polynomial of degree `D - 2 - chi`.
pub fn extract_g(d: u32, h: &RationalPolynomial) -> Result<GDecomposition> {
    if d < 2 {
        return Err(Error::Precondition("degree must be at least 2".into()));
    }
    let chi = d % 2;
    let (g, r) = h.div_rem(&structural_factor(d));
    if !r.is_zero() {
        return Err(Error::Structure(format!("D={d}: h is not divisible by the structural factor")));
    }
    let m = d as usize - 2 - chi as usize;
    if g.degree() != Some(m) || !g.is_monic() || !g.is_integral() {
        return Err(Error::Structure(format!(
            "D={d}: quotient {g} is not a monic integer polynomial of degree {m}"
        )));
    }
    let irreducible = irreducibility(&g);
    Ok(GDecomposition {
        d,
        chi,
        h: h.clone(),
        g,
        irreducible,
    })
}

/// `extract_g(D, fit_h(D, 1..=D, TopParameter))`.
pub fn decompose(d: u32) -> Result<GDecomposition> {
    extract_g(d, &fit_h(d, &default_fit_points(d), LeadingTerm::TopParameter)?)
}

fn int_coeffs(g: &RationalPolynomial) -> Vec<BigInt> {
    g.coeffs().iter().map(|c| c.to_integer()).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let Some(v) = n.to_u64() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= v {
        if v % i == 0 {
            out.push(BigInt::from(i));
            if i * i != v {
                out.push(BigInt::from(v / i));
            }
        }
        i += 1;
    }
    out
}

/// Irreducibility of a monic integer polynomial: the rational-root test, then the
/// factor degrees allowed by distinct-degree factorization modulo small primes.
pub fn irreducibility(g: &RationalPolynomial) -> Irreducibility {
    let m = match g.degree() {
        None => return Irreducibility::Reducible,
        Some(0) if g.coefficient(0).abs().is_one() => return Irreducibility::Unit,
        Some(0) => return Irreducibility::Reducible,
        Some(1) => return Irreducibility::Irreducible,
        Some(m) => m,
    };
    let a = int_coeffs(g);
    if a[0].is_zero() {
        return Irreducibility::Reducible;
    }
    let c0 = &a[0];
    if c0.to_u64().is_some() || (-c0).to_u64().is_some() {
        for q in divisors(c0) {
            for r in [q.clone(), -q] {
                if g.eval(&int_rat(r)).is_zero() {
                    return Irreducibility::Reducible;
                }
            }
        }
    }
    let mut allowed: BTreeSet<usize> = (1..m).collect();
    for p in small_primes(400) {
        let f = modp::reduce(&a, p);
        if f.len() != m + 1 || !modp::is_squarefree(&f, p) {
            continue;
        }
        let sums = modp::subset_sums(&modp::factor_degrees(&f, p));
        allowed.retain(|k| sums.contains(k));
        if allowed.is_empty() {
            return Irreducibility::Irreducible;
        }
    }
    Irreducibility::Inconclusive
}

fn small_primes(bound: u64) -> Vec<u64> {
    (2..bound).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}

/// Polynomials over `F_p`, constant term first, no trailing zeros.
mod modp {
    use super::*;

    pub fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        trim(a.iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced")).collect())
    }

    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim((0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect())
    }

    fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    fn divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let db = b.len() - 1;
        let li = inv(b[db], p);
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![0; r.len() - db];
        for i in (0..q.len()).rev() {
            let c = r[i + db] * li % p;
            q[i] = c;
            if c != 0 {
                for (j, &y) in b.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - c * y % p) % p;
                }
            }
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let (_, r) = divmod(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        trim(a.iter().enumerate().skip(1).map(|(i, &c)| c * (i as u64 % p) % p).collect())
    }

    pub fn is_squarefree(f: &[u64], p: u64) -> bool {
        let d = derivative(f, p);
        !d.is_empty() && gcd(f, &d, p).len() == 1
    }

    fn powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut r = vec![1];
        let mut b = divmod(base, f, p).1;
        while e > 0 {
            if e & 1 == 1 {
                r = divmod(&mul(&r, &b, p), f, p).1;
            }
            b = divmod(&mul(&b, &b, p), f, p).1;
            e >>= 1;
        }
        r
    }

    /// Degrees of the irreducible factors of a squarefree `f`, with repetition.
    pub fn factor_degrees(f: &[u64], p: u64) -> Vec<usize> {
        let mut f = f.to_vec();
        let mut out = Vec::new();
        let x = vec![0, 1];
        let mut h = x.clone();
        let mut i = 1;
        while f.len() - 1 >= 2 * i {
            h = powmod(&h, p, &f, p);
            let g = gcd(&f, &sub(&h, &x, p), p);
            let dg = g.len() - 1;
            if dg > 0 {
                out.extend(std::iter::repeat(i).take(dg / i));
                f = divmod(&f, &g, p).0;
                h = divmod(&h, &f, p).1;
            }
            i += 1;
        }
        if f.len() > 1 {
            out.push(f.len() - 1);
        }
        out
    }

    pub fn subset_sums(degrees: &[usize]) -> BTreeSet<usize> {
        let mut s = BTreeSet::from([0]);
        for &d in degrees {
            let next: Vec<usize> = s.iter().map(|x| x + d).collect();
            s.extend(next);
        }
        s
    }
}

/// `t_k(D)`: the coefficient of `n^(D-k-chi)` in `g_D`, zero when that power is negative.
pub fn t_value(g: &GDecomposition, k: u32) -> ExactRational {
    let e = g.d as i64 - k as i64 - g.chi as i64;
    if e < 0 {
        ExactRational::zero()
    } else {
        g.g.coefficient(e as usize)
    }
}

/// Decompositions for `D = 2..=d_max`, computed in parallel.
pub fn decompositions(d_max: u32) -> Result<Vec<GDecomposition>> {
    (2..=d_max).into_par_iter().map(decompose).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct TSeries {
    pub k: u32,
    /// `t_k` as a polynomial in `D`.
    pub t: RationalPolynomial,
    #[serde(serialize_with = "ser_big_one")]
    pub q: BigInt,
    /// `Q_k t_k`.
    pub u: RationalPolynomial,
    pub fit_degrees: Vec<u32>,
    pub held_out: Vec<u32>,
    /// `t_k(D) = 0` and `t_(k+1)(D) = 0` for extracted values with `D <= k` (odd `k` only).
    pub vanishing_ok: Option<bool>,
    /// The fitted polynomial vanishes at `D = k` (odd `k` only).
    pub vanishes_at_k: Option<bool>,
}

/// Fits `t_k(D)` over `D = k+1..` in `decomps` (all but the last two) and checks the rest.
pub fn t_series(k: u32, decomps: &[GDecomposition]) -> Result<TSeries> {
    if k < 2 {
        return Err(Error::Precondition("k must be at least 2".into()));
    }
    let pts: Vec<(u32, ExactRational)> = decomps
        .iter()
        .filter(|g| g.d > k)
        .map(|g| (g.d, t_value(g, k)))
        .collect();
    if pts.len() < 3 {
        return Err(Error::Precondition(format!("k={k}: need at least 3 degrees above k")));
    }
    let (fit, held) = pts.split_at(pts.len() - 2);
    let nodes: Vec<(ExactRational, ExactRational)> =
        fit.iter().map(|(d, v)| (rat(*d as i64), v.clone())).collect();
    let t = RationalPolynomial::interpolate(&nodes)?;
    for (d, v) in held {
        if &t.eval(&rat(*d as i64)) != v {
            return Err(Error::NotPolynomial(format!("t_{k} misses held-out D={d}")));
        }
    }
    let q = t.lcd();
    let u = t.scale(&int_rat(q.clone()));
    if !u.is_integral() {
        return Err(Error::Structure(format!("u_{k} is not integral")));
    }
    let (vanishing_ok, vanishes_at_k) = if k % 2 == 1 {
        let low: Vec<&GDecomposition> = decomps.iter().filter(|g| g.d <= k).collect();
        let ok = low
            .iter()
            .all(|g| t_value(g, k).is_zero() && t_value(g, k + 1).is_zero());
        (Some(ok), Some(t.eval(&rat(k as i64)).is_zero()))
    } else {
        (None, None)
    };
    Ok(TSeries {
        k,
        t,
        q,
        u,
        fit_degrees: fit.iter().map(|p| p.0).collect(),
        held_out: held.iter().map(|p| p.0).collect(),
        vanishing_ok,
        vanishes_at_k,
    })
}

/// Checks that the `t_k` polynomials rebuild every `g_D` in `decomps`.
pub fn round_trip(series: &[TSeries], decomps: &[GDecomposition]) -> bool {
    decomps.iter().all(|g| {
        let m = g.g.degree().unwrap_or(0) as u32;
        (2..=2 + m).all(|k| match series.iter().find(|s| s.k == k) {
            Some(s) if g.d > k => s.t.eval(&rat(g.d as i64)) == t_value(g, k),
            _ => true,
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub d_max: u32,
    pub k_min: u32,
    pub k_max: u32,
    pub term: LeadingTerm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinedSequence {
    pub name: String,
    /// Values for `k = k_min..=k_max`.
    #[serde(serialize_with = "ser_big")]
    pub values: Vec<BigInt>,
    pub provenance: Provenance,
}

fn ser_big_one<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_big<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    v.serialize(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct MiningReport {
    pub q: MinedSequence,
    pub norlund: MinedSequence,
    pub series: Vec<TSeries>,
    pub decompositions: Vec<GDecomposition>,
    pub round_trip_ok: bool,
}

/// Sweeps `D = 2..=d_max`, fits `t_2..t_k_max`, and collects `Q_k` and the leading
/// coefficients of `u_k`.
pub fn mine_q_and_norlund(k_max: u32, d_max: u32) -> Result<MiningReport> {
    if k_max < 2 || d_max < k_max + 3 {
        return Err(Error::Precondition(format!(
            "need k_max >= 2 and d_max >= k_max + 3 (got {k_max}, {d_max})"
        )));
    }
    let decomps = decompositions(d_max)?;
    let series: Vec<TSeries> = (2..=k_max)
        .into_par_iter()
        .map(|k| t_series(k, &decomps))
        .collect::<Result<_>>()?;
    let prov = Provenance {
        d_max,
        k_min: 2,
        k_max,
        term: LeadingTerm::TopParameter,
    };
    let q = MinedSequence {
        name: "Q_k".into(),
        values: series.iter().map(|s| s.q.clone()).collect(),
        provenance: prov.clone(),
    };
    let norlund = MinedSequence {
        name: "Norlund-N_k".into(),
        values: series.iter().map(|s| s.u.leading().to_integer()).collect(),
        provenance: prov,
    };
    let round_trip_ok = round_trip(&series, &decomps);
    Ok(MiningReport {
        q,
        norlund,
        series,
        decompositions: decomps,
        round_trip_ok,
    })
}

/// Reads an OEIS b-file: `index value` per line, `#` comments and blank lines ignored.
pub fn parse_bfile(text: &str) -> Result<Vec<(i64, BigInt)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let bad = |msg: &str| Error::Parse {
            pos: lineno + 1,
            msg: msg.into(),
        };
        let i = it
            .next()
            .and_then(|s| s.parse::<i64>().ok())
            .ok_or_else(|| bad("expected an index"))?;
        let v = it
            .next()
            .and_then(|s| s.parse::<BigInt>().ok())
            .ok_or_else(|| bad("expected a value"))?;
        out.push((i, v));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Alignment {
    /// b-file index matched to the first mined value.
    pub offset: i64,
    pub compared: usize,
    pub matches: bool,
}

/// Best alignment of the mined values (by absolute value) against a b-file: the
/// offset with the most compared terms among those where every compared term agrees.
pub fn compare_with_bfile(seq: &MinedSequence, bfile: &[(i64, BigInt)]) -> Alignment {
    let mut best: Option<Alignment> = None;
    for &(start, _) in bfile {
        let mut compared = 0;
        let mut ok = true;
        for (k, v) in seq.values.iter().enumerate() {
            if let Some((_, b)) = bfile.iter().find(|(i, _)| *i == start + k as i64) {
                compared += 1;
                if &v.abs() != &b.abs() {
                    ok = false;
                    break;
                }
            }
        }
        if ok && best.as_ref().is_none_or(|b| compared > b.compared) {
            best = Some(Alignment {
                offset: start,
                compared,
                matches: true,
            });
        }
    }
    best.unwrap_or(Alignment {
        offset: 0,
        compared: 0,
        matches: false,
    })
}

/// Coefficients of `r1^(j - w) * fixed` in the mean `j`-th power sum over `n` elements,
/// where `w` is the weight of `fixed`, for each `j` in `js`.
pub fn power_sum_sequence(n: u32, fixed: &BarMonomial, js: impl IntoIterator<Item = u32>) -> Vec<ExactRational> {
    let w = fixed.weight();
    js.into_iter()
        .map(|j| {
            if j < w {
                return ExactRational::zero();
            }
            let m = fixed.mul(&BarMonomial::from_pairs([(BarSymbol::Root(1), j - w)]));
            crate::gw::power_sum_mean(j, n).coefficient(&m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    /// `(-1)^D (1 - (n-1)(n-2)...(n-D+1) / (D-1)!)`.
    fn h_top_oracle(d: u32) -> RationalPolynomial {
        let mut prod = RationalPolynomial::constant(rat(1));
        for i in 1..d as i64 {
            prod = prod.mul(&RationalPolynomial::from_ints(&[-i, 1]));
        }
        let p = RationalPolynomial::constant(rat(1))
            .sub(&prod.scale(&(rat(1) / int_rat(factorial(d as u64 - 1)))));
        p.scale(&rat(if d % 2 == 0 { 1 } else { -1 }))
    }

    #[test]
    fn interpolation_and_division() {
        let p = RationalPolynomial::from_ints(&[3, -2, 1]);
        let pts: Vec<_> = (0..5).map(|x| (rat(x), p.eval(&rat(x)))).collect();
        assert_eq!(RationalPolynomial::interpolate(&pts).unwrap(), p);
        let (q, r) = p.mul(&RationalPolynomial::from_ints(&[1, 1])).div_rem(&p);
        assert_eq!(q, RationalPolynomial::from_ints(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(p.to_string(), "n^2 - 2*n + 3");
    }

    #[test]
    fn leading_coefficients() {
        assert_eq!(leading_phi_coefficient(4, 1).unwrap(), rat(-9));
        assert_eq!(leading_phi_coefficient(4, 0).unwrap(), rat(0));
        assert_eq!(leading_phi_coefficient(5, -1).unwrap(), rat(216));
    }

    #[test]
    fn h_of_power_of_mean() {
        let h = fit_h(4, &[1, 2, 3, 4, 5, 6], LeadingTerm::PowerOfMean).unwrap();
        let vals: Vec<ExactRational> = (1..=7).map(|n| h.eval(&rat(n))).collect();
        let want: Vec<ExactRational> = [-3, -8, -9, 0, 25, 72, 147].iter().map(|&v| rat(v)).collect();
        assert_eq!(vals, want);
        let h2 = fit_h(2, &[1, 2], LeadingTerm::PowerOfMean).unwrap();
        assert_eq!(h2.eval(&rat(2)), rat(0));
        assert_eq!(h2.eval(&rat(1)), rat(-1));
    }

    #[test]
    fn h_of_top_parameter_matches_closed_form() {
        for d in 2..=9 {
            let h = fit_h(d, &default_fit_points(d), LeadingTerm::TopParameter).unwrap();
            assert_eq!(h, h_top_oracle(d), "D={d}");
        }
    }

    #[test]
    fn small_g() {
        let g = |d| decompose(d).unwrap().g;
        assert_eq!(g(2), RationalPolynomial::from_ints(&[1]));
        assert_eq!(g(3), RationalPolynomial::from_ints(&[1]));
        assert_eq!(g(4), RationalPolynomial::from_ints(&[3, -2, 1]));
        assert_eq!(g(5), RationalPolynomial::from_ints(&[10, -5, 1]));
        assert_eq!(g(6), RationalPolynomial::from_ints(&[40, -39, 31, -9, 1]));
        assert_eq!(decompose(5).unwrap().chi, 1);
        assert_eq!(decompose(6).unwrap().g.degree(), Some(4));
    }

    #[test]
    fn quartic_structural_factor() {
        let f = structural_factor(4);
        assert_eq!(f, RationalPolynomial::new(vec![ratio(2, 3), ratio(-1, 6)]));
        let h = fit_h(4, &default_fit_points(4), LeadingTerm::TopParameter).unwrap();
        assert_eq!(f.mul(&RationalPolynomial::from_ints(&[3, -2, 1])), h);
    }

    #[test]
    fn power_of_mean_has_no_structural_form() {
        let h = fit_h(4, &[1, 2, 3, 4], LeadingTerm::PowerOfMean).unwrap();
        assert!(matches!(extract_g(4, &h), Err(Error::Structure(_))));
    }

    #[test]
    fn irreducibility_examples() {
        assert_eq!(irreducibility(&RationalPolynomial::from_ints(&[3, -2, 1])), Irreducibility::Irreducible);
        assert_eq!(irreducibility(&RationalPolynomial::from_ints(&[-1, 0, 1])), Irreducibility::Reducible);
        // (x^2 + 1)(x^2 + 2) has no rational root; (x^2 + 1)^2 + x is irreducible.
        assert_eq!(irreducibility(&RationalPolynomial::from_ints(&[2, 0, 3, 0, 1])), Irreducibility::Inconclusive);
        assert_eq!(irreducibility(&RationalPolynomial::from_ints(&[1, 1, 2, 0, 1])), Irreducibility::Irreducible);
    }

    #[test]
    fn low_t_series() {
        let decomps = decompositions(14).unwrap();
        let t2 = t_series(2, &decomps).unwrap();
        assert_eq!(t2.t, RationalPolynomial::constant(rat(1)));
        let t3 = t_series(3, &decomps).unwrap();
        assert_eq!(t3.t, RationalPolynomial::new(vec![rat(0), ratio(3, 2), ratio(-1, 2)]));
        assert_eq!(t3.vanishing_ok, Some(true));
        assert_eq!(t3.vanishes_at_k, Some(true));
        let t4 = t_series(4, &decomps).unwrap();
        assert_eq!(t4.q, BigInt::from(24));
        assert!(round_trip(&[t2, t3, t4], &decomps));
    }

    #[test]
    fn bfile_alignment() {
        let text = "# test\n0 1\n1 2\n2 24\n3 48\n\n4 5760\n";
        let b = parse_bfile(text).unwrap();
        let seq = MinedSequence {
            name: "Q_k".into(),
            values: [1, 2, 24, 48].iter().map(|&v| BigInt::from(v)).collect(),
            provenance: Provenance { d_max: 0, k_min: 2, k_max: 5, term: LeadingTerm::TopParameter },
        };
        let a = compare_with_bfile(&seq, &b);
        assert_eq!(a, Alignment { offset: 0, compared: 4, matches: true });
        let neg = MinedSequence {
            values: [2, -24].iter().map(|&v| BigInt::from(v)).collect(),
            ..seq
        };
        assert_eq!(compare_with_bfile(&neg, &b).offset, 1);
        assert!(parse_bfile("1 x").is_err());
    }

    #[test]
    fn monomial_sequence_n4() {
        let fixed = BarMonomial::symbol(BarSymbol::Root(2));
        let got = power_sum_sequence(4, &fixed, 3..=8);
        let want: Vec<ExactRational> = (3..=8).map(|j: i64| rat(-6 * j * 4i64.pow(j as u32 - 3))).collect();
        assert_eq!(got, want);
    }
}
