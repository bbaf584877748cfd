//! Mean of `f^(delta)` over the roots of `f^(rho)` for a monic degree-`D` polynomial,
//! expressed in the quasi-binomial parameters of `f`.
//!
//! Negative orders are antiderivatives. Antiderivative parameter vectors are the
//! original vector extended by shared constants `c1, c2, ...`, so the averaged
//! function and an antiderivative root family use the same constants.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, int_rat, ExactRational};
use crate::gw::power_sum_mean;
use crate::symalg::{
    extend_params, quasi_binomial_coeffs, truncate_params, BarSymbol, QuasiBinomialVector,
    SymPoly,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PhiKey {
    #[serde(rename = "D")]
    pub d: u32,
    pub delta: i64,
    pub rho: i64,
}

impl PhiKey {
    pub fn new(d: u32, delta: i64, rho: i64) -> Result<Self> {
        let key = Self { d, delta, rho };
        key.validate()?;
        Ok(key)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason| Error::InvalidKey {
            d: self.d,
            delta: self.delta,
            rho: self.rho,
            reason,
        };
        if self.d == 0 {
            return Err(bad("degree must be positive"));
        }
        if self.d as i64 - self.rho < 1 {
            return Err(bad("root family is empty"));
        }
        Ok(())
    }

    /// Number of roots in the averaging family.
    pub fn family_size(&self) -> u32 {
        (self.d as i64 - self.rho) as u32
    }

    /// The averaged function is constant or zero.
    pub fn is_degenerate(&self) -> bool {
        self.delta >= self.d as i64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiResult {
    pub key: PhiKey,
    pub poly: SymPoly,
    pub family_size: u32,
    /// Set when `delta >= D`.
    pub degenerate: bool,
}

/// `D! / (D - delta)!` for any integer `delta < D`.
pub fn derivative_scale(d: u32, delta: i64) -> ExactRational {
    let top = int_rat(factorial(d as u64));
    let bottom = int_rat(factorial((d as i64 - delta) as u64));
    top / bottom
}

/// Parameter vector of `f^(order)`: truncated, identity, or extended.
pub fn params_for_order(d: u32, order: i64) -> Result<QuasiBinomialVector> {
    let r = QuasiBinomialVector::standard(d);
    match order {
        o if o > 0 => truncate_params(&r, o as usize),
        0 => Ok(r),
        o => Ok(extend_params(&r, (-o) as usize)),
    }
}

fn compute(key: PhiKey) -> Result<PhiResult> {
    key.validate()?;
    let d = key.d;
    let n = key.family_size();
    let base = PhiResult {
        key,
        poly: SymPoly::zero(),
        family_size: n,
        degenerate: key.is_degenerate(),
    };
    if key.delta > d as i64 {
        return Ok(base);
    }
    if key.delta == d as i64 {
        return Ok(PhiResult {
            poly: SymPoly::constant(int_rat(factorial(d as u64))),
            ..base
        });
    }

    let g_params = params_for_order(d, key.delta)?;
    let m = g_params.degree();
    let coeffs = quasi_binomial_coeffs(m, &g_params)?;

    let family = params_for_order(d, key.rho)?;
    let rename: BTreeMap<BarSymbol, BarSymbol> = family
        .entries()
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let sym = e.symbols()[0];
            (BarSymbol::Root(k as u32 + 1), sym)
        })
        .filter(|(a, b)| a != b)
        .collect();

    let mut poly = SymPoly::zero();
    for (i, c) in coeffs.iter().enumerate() {
        let j = m - i as u32;
        let pbar = power_sum_mean(j, n);
        let pbar = if rename.is_empty() {
            (*pbar).clone()
        } else {
            pbar.rename(&rename)
        };
        for (mono, q) in c.terms() {
            for (pm, pq) in pbar.terms() {
                poly.add_term(pm.mul(mono), pq * q);
            }
        }
    }
    let poly = poly.scale(&derivative_scale(d, key.delta));
    Ok(PhiResult { poly, ..base })
}

type Memo = RwLock<HashMap<PhiKey, Arc<PhiResult>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Memoized.
pub fn phi(key: PhiKey) -> Result<Arc<PhiResult>> {
    if let Some(r) = memo().read().expect("memo lock").get(&key) {
        return Ok(r.clone());
    }
    let r = Arc::new(compute(key)?);
    Ok(memo()
        .write()
        .expect("memo lock")
        .entry(key)
        .or_insert(r)
        .clone())
}

/// Shorthand for `phi(PhiKey::new(d, delta, rho)).poly`.
pub fn phi_poly(d: u32, delta: i64, rho: i64) -> Result<SymPoly> {
    Ok(phi(PhiKey::new(d, delta, rho)?)?.poly.clone())
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiRow {
    #[serde(flatten)]
    pub result: PhiResult,
    pub sum_positive: String,
}

/// Rows for `rho` from the top of the range down, matching the printed layout.
pub fn phi_table(d: u32, delta: i64, rho_lo: i64, rho_hi: i64) -> Result<Vec<PhiRow>> {
    let keys: Vec<PhiKey> = (rho_lo..=rho_hi)
        .rev()
        .map(|rho| PhiKey::new(d, delta, rho))
        .collect::<Result<_>>()?;
    keys.par_iter()
        .map(|&k| {
            let r = phi(k)?;
            Ok(PhiRow {
                sum_positive: crate::exact::format_rational(&r.poly.sum_positive()),
                result: (*r).clone(),
            })
        })
        .collect()
}

/// Renames each constant `c_k` of a degree-`b` vector to the root parameter of order `b + k`.
pub fn identify_constants(p: &SymPoly) -> SymPoly {
    let map: BTreeMap<BarSymbol, BarSymbol> = p
        .symbols()
        .into_iter()
        .filter_map(|s| match s {
            BarSymbol::Const { index, base } => Some((s, BarSymbol::Root(base + index))),
            _ => None,
        })
        .collect();
    p.rename(&map)
}

/// True when `phi(D, delta, 0) = D!/(D-delta)! * phi(D-delta, 0, -delta)`.
pub fn factorial_scaling_holds(d: u32, delta: u32) -> Result<bool> {
    if delta == 0 || delta >= d {
        return Err(Error::Precondition(format!("need 0 < delta < D, got delta={delta}, D={d}")));
    }
    let lhs = phi_poly(d, delta as i64, 0)?;
    let rhs = identify_constants(&phi_poly(d - delta, 0, -(delta as i64))?)
        .scale(&derivative_scale(d, delta as i64));
    Ok(lhs == rhs)
}

/// True when no monomial of `phi(key)` carries an integration constant.
pub fn constant_free(key: PhiKey) -> Result<bool> {
    Ok(!phi(key)?.poly.has_const())
}

/// True when the mean slope at the roots has no term in the top parameter `r_D`.
pub fn mean_slope_ignores_constant_term(d: u32) -> Result<bool> {
    let p = phi_poly(d, 1, 0)?;
    let top = BarSymbol::Root(d);
    let ok = p.terms().all(|(m, _)| m.exponent(top) == 0);
    Ok(ok)
}

/// Mean, variance and third central moment of a cubic's roots in its parameters:
/// `E = r1`, `V = 2(r1^2 - r2)`, `W = 2 r1^3 - 3 r1 r2 + r3`.
pub fn statistical_moments(r: &QuasiBinomialVector) -> Result<(SymPoly, SymPoly, SymPoly)> {
    if r.degree() < 3 {
        return Err(Error::ShortVector {
            len: r.degree() as usize,
            degree: 3,
        });
    }
    let (r1, r2, r3) = (r.entry(1), r.entry(2), r.entry(3));
    let two = ExactRational::from_integer(2.into());
    let three = ExactRational::from_integer(3.into());
    let e = r1.clone();
    let v = (&(&r1 * &r1) - &r2).scale(&two);
    let w = &(&(&r1 * &r1) * &r1).scale(&two) - &(&(&r1 * &r2).scale(&three) - &r3);
    Ok((e, v, w))
}
