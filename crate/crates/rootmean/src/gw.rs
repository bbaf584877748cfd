//! Normalized Girard-Waring expansion of mean power sums.
//!
//! For an `n`-element family with normalized elementary symmetric means
//! `e_i / C(n, i)` (written `r_i` here), the mean power sum `p_j / n` is a
//! weight-`j` polynomial in the `r_i`, one term per partition of `j` with parts `<= n`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{binomial, int_rat, multinomial, rat, ExactRational};
use crate::partition::{partitions_bounded, PartitionVector};
use crate::symalg::{BarMonomial, BarSymbol, SymPoly};

#[derive(Debug, Clone, PartialEq)]
pub struct GwTerm {
    pub kappa: PartitionVector,
    pub coeff: ExactRational,
}

/// `c_kappa = (j (-1)^j / n) ((-1)^|k| / |k|) multinomial(|k|; k) prod_i C(n,i)^{k_i}`.
pub fn gw_coefficient(kappa: &PartitionVector, n: u32) -> ExactRational {
    assert!(n >= 1 && !kappa.is_empty(), "n >= 1 and a nonempty partition");
    if kappa.largest_part().unwrap_or(0) > n {
        return ExactRational::zero();
    }
    let j = kappa.weight() as i64;
    let card = kappa.card() as u64;
    let mults: Vec<u64> = kappa.parts().values().map(|&k| k as u64).collect();
    let mut prod = multinomial(card, &mults).expect("multiplicities sum to card");
    for (&i, &k) in kappa.parts() {
        prod *= num_traits::pow(binomial(n as u64, i as u64), k as usize);
    }
    let sign = if (j + card as i64) % 2 == 0 { 1 } else { -1 };
    let mut c = int_rat(prod) * rat(sign * j);
    c /= rat(n as i64 * card as i64);
    c
}

/// The nonzero terms of the expansion of the mean `j`-th power sum over `n` elements.
pub fn gw_terms(j: u32, n: u32) -> Vec<GwTerm> {
    partitions_bounded(j, n)
        .into_iter()
        .map(|kappa| {
            let coeff = gw_coefficient(&kappa, n);
            GwTerm { kappa, coeff }
        })
        .filter(|t| !t.coeff.is_zero())
        .collect()
}

fn kappa_monomial(kappa: &PartitionVector) -> BarMonomial {
    BarMonomial::from_pairs(kappa.parts().iter().map(|(&i, &k)| (BarSymbol::Root(i), k)))
}

fn expand(j: u32, n: u32) -> SymPoly {
    if j == 0 {
        return SymPoly::one();
    }
    let mut out = SymPoly::zero();
    for t in gw_terms(j, n) {
        out.add_term(kappa_monomial(&t.kappa), t.coeff);
    }
    out
}

type Cache = RwLock<HashMap<(u32, u32), Arc<SymPoly>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Mean `j`-th power sum over an `n`-element family, in that family's parameters `r1..rn`.
/// `j = 0` gives 1.
pub fn power_sum_mean(j: u32, n: u32) -> Arc<SymPoly> {
    assert!(n >= 1, "family size must be positive");
    if let Some(p) = cache().read().expect("cache lock").get(&(j, n)) {
        return p.clone();
    }
    let p = Arc::new(expand(j, n));
    cache()
        .write()
        .expect("cache lock")
        .entry((j, n))
        .or_insert(p)
        .clone()
}

/// Elementary symmetric polynomials `e_0..e_n` of the values.
pub fn elementary_symmetric(values: &[ExactRational]) -> Vec<ExactRational> {
    let mut e = vec![ExactRational::one()];
    for v in values {
        e.push(ExactRational::zero());
        for i in (1..e.len()).rev() {
            let prev = e[i - 1].clone();
            e[i] += prev * v;
        }
    }
    e
}

/// Normalized means `e_i / C(n,i)` for `i = 1..n`.
pub fn elementary_means(values: &[ExactRational]) -> Vec<ExactRational> {
    let n = values.len() as u64;
    elementary_symmetric(values)
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(i, e)| e / int_rat(binomial(n, i as u64)))
        .collect()
}

/// `sum_{i+j=n} (-1)^j p_j e_i` with `p_0 = n`; zero for any multiset.
pub fn newton_residual(n: u32, values: &[ExactRational]) -> ExactRational {
    assert_eq!(values.len(), n as usize, "need exactly n values");
    let e = elementary_symmetric(values);
    let mut acc = ExactRational::zero();
    for j in 0..=n as usize {
        let pj = if j == 0 {
            rat(n as i64)
        } else {
            values.iter().map(|v| num_traits::pow(v.clone(), j)).sum()
        };
        let term = pj * &e[n as usize - j];
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Evaluates an expansion at the family's normalized elementary means.
pub fn eval_at_means(p: &SymPoly, means: &[ExactRational]) -> ExactRational {
    p.eval_exact(|s| match s {
        BarSymbol::Root(i) => means[(i - 1) as usize].clone(),
        BarSymbol::Const { .. } => panic!("expansions carry no constants"),
    })
}

/// Chebyshev T_j coefficients, constant term first, by the three-term recurrence.
pub fn chebyshev_t(j: u32) -> Vec<BigInt> {
    let mut prev = vec![BigInt::one()];
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    if j == 0 {
        return prev;
    }
    for _ in 1..j {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * 2;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}
