//! Exact rational arithmetic and the integer combinatorics built on it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

pub fn rat(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_rat(n: BigInt) -> ExactRational {
    BigRational::from_integer(n)
}

/// C(n, k); zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// n (n-1) ... (n-k+1)
pub fn falling_factorial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    ((n - k + 1)..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// card! / prod(parts!), requiring the parts to sum to card.
pub fn multinomial(card: u64, parts: &[u64]) -> Result<BigInt> {
    let total: u64 = parts.iter().sum();
    if total != card {
        return Err(Error::Precondition(format!(
            "multinomial parts sum to {total}, expected {card}"
        )));
    }
    let mut acc = BigInt::one();
    let mut seen = 0u64;
    for &p in parts {
        seen += p;
        acc *= binomial(seen, p);
    }
    Ok(acc)
}

/// Integer or "num/den".
pub fn format_rational(q: &ExactRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("bad rational {s:?}"),
    };
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(int_rat(s.parse().map_err(|_| bad())?)),
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a ExactRational>) -> BigInt {
    use num_integer::Integer;
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scales a rational vector to a primitive integer vector whose first nonzero entry is positive.
pub fn primitive_integer_vector(v: &[ExactRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let den = common_denominator(v.iter());
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|q| (q * int_rat(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let flip = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in ints.iter_mut() {
        *x /= &g;
        if flip {
            *x = -&*x;
        }
    }
    ints
}
