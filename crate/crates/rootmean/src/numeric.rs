//! Floating-point oracle: Aberth root finding, direct means over root families,
//! and seeded numeric checks of relations and root identities.
//!
//! Sampled functions are built in the quasi-binomial basis. A sample holds the
//! parameters of a random monic `f` followed by random constants, so every
//! derivative and antiderivative of `f` is the monic polynomial on a prefix of
//! that vector, scaled by `D!/(D-order)!`.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::phi::{phi, PhiKey};
use crate::relations::RelationVector;
use crate::symalg::BarSymbol;

/// Root residual tolerance, relative to `sum |a_i| |z|^i`.
pub const ROOT_TOL: f64 = 1e-10;
/// Relative tolerance for relation and identity residuals.
pub const REL_TOL: f64 = 1e-8;
/// Planted roots closer than this are resampled.
pub const MIN_SEPARATION: f64 = 1e-6;

const MAX_ITER: usize = 2000;
const MAX_RESAMPLE: usize = 100;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn binom_f64(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn falling_f64(n: i64, k: i64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64)
}

/// Horner evaluation of ascending coefficients.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, &a| acc * z + a)
}

fn abs_horner(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

/// The `delta`-th derivative of ascending coefficients; negative `delta` integrates
/// with zero constants.
pub fn raw_derivative(coeffs: &[Complex64], delta: i64) -> Vec<Complex64> {
    let mut a = coeffs.to_vec();
    if delta >= 0 {
        for _ in 0..delta {
            if a.len() <= 1 {
                return vec![Complex64::zero()];
            }
            a = a.iter().enumerate().skip(1).map(|(i, &x)| x * i as f64).collect();
        }
    } else {
        for _ in 0..(-delta) {
            let mut b = vec![Complex64::zero()];
            b.extend(a.iter().enumerate().map(|(i, &x)| x / (i + 1) as f64));
            a = b;
        }
    }
    a
}

/// Monic polynomial with complex coefficients, constant term first.
#[derive(Debug, Clone, PartialEq)]
pub struct NumPoly {
    coeffs: Vec<Complex64>,
}

impl NumPoly {
    /// Divides through by the leading coefficient.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        let lead = *coeffs.last().ok_or_else(|| Error::Precondition("empty polynomial".into()))?;
        if coeffs.len() < 2 {
            return Err(Error::Precondition("degree must be at least 1".into()));
        }
        if lead == Complex64::zero() || !lead.is_finite() {
            return Err(Error::Precondition("leading coefficient must be finite and nonzero".into()));
        }
        let mut coeffs: Vec<Complex64> = coeffs.into_iter().map(|a| a / lead).collect();
        *coeffs.last_mut().expect("nonempty") = c(1.0);
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| c(x)).collect())
    }

    pub fn from_roots(roots: &[Complex64]) -> Result<Self> {
        let mut a = vec![c(1.0)];
        for &r in roots {
            let mut b = vec![Complex64::zero(); a.len() + 1];
            for (i, &x) in a.iter().enumerate() {
                b[i + 1] += x;
                b[i] -= x * r;
            }
            a = b;
        }
        Self::new(a)
    }

    /// Monic polynomial of degree `params.len()` with `x^(m-i)` coefficient
    /// `(-1)^i C(m,i) params[i-1]`.
    pub fn from_quasi_binomial(params: &[Complex64]) -> Result<Self> {
        let m = params.len();
        let mut a = vec![Complex64::zero(); m + 1];
        a[m] = c(1.0);
        for i in 1..=m {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            a[m - i] = params[i - 1] * (sign * binom_f64(m, i));
        }
        Self::new(a)
    }

    /// Inverse of `from_quasi_binomial`.
    pub fn quasi_binomial_params(&self) -> Vec<Complex64> {
        let m = self.degree();
        (1..=m)
            .map(|i| {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                self.coeffs[m - i] * (sign / binom_f64(m, i))
            })
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }

    /// `sum |a_i| |z|^i`, the natural scale of `|p(z)|`.
    pub fn scale_at(&self, z: Complex64) -> f64 {
        abs_horner(&self.coeffs, z)
    }

    /// `p - t`.
    pub fn shifted(&self, t: Complex64) -> NumPoly {
        let mut a = self.coeffs.clone();
        a[0] -= t;
        NumPoly { coeffs: a }
    }
}

/// Roots of one polynomial, with the `(D, rho)` it stands for when known.
#[derive(Debug, Clone, PartialEq)]
pub struct RootFamily {
    pub roots: Vec<Complex64>,
    pub source: Option<(u32, i64)>,
    /// Largest `sum |a_i||z|^i / (|z| |p'(z)|)` over the roots; infinite at a repeated root.
    pub condition_estimate: f64,
}

impl RootFamily {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Groups roots closer than `tol * (1 + |z|)` and returns each group's centroid and size.
    pub fn clusters(&self, tol: f64) -> Vec<(Complex64, usize)> {
        let mut taken = vec![false; self.roots.len()];
        let mut out = Vec::new();
        for i in 0..self.roots.len() {
            if taken[i] {
                continue;
            }
            let mut members = vec![i];
            taken[i] = true;
            let mut k = 0;
            while k < members.len() {
                let z = self.roots[members[k]];
                for j in 0..self.roots.len() {
                    if !taken[j] && (self.roots[j] - z).norm() <= tol * (1.0 + z.norm()) {
                        taken[j] = true;
                        members.push(j);
                    }
                }
                k += 1;
            }
            let sum: Complex64 = members.iter().map(|&m| self.roots[m]).sum();
            out.push((sum / members.len() as f64, members.len()));
        }
        out
    }

    /// Clusters refined by Newton steps on `p^(m-1)`, where the `m`-fold root is simple.
    pub fn refined_clusters(&self, p: &NumPoly, tol: f64) -> Vec<(Complex64, usize)> {
        self.clusters(tol)
            .into_iter()
            .map(|(mut z, m)| {
                if m > 1 {
                    let g = raw_derivative(p.coeffs(), m as i64 - 1);
                    let dg = raw_derivative(&g, 1);
                    for _ in 0..8 {
                        let step = horner(&g, z) / horner(&dg, z);
                        if !step.is_finite() {
                            break;
                        }
                        z -= step;
                    }
                }
                (z, m)
            })
            .collect()
    }

    /// Smallest pairwise distance, infinite for fewer than two roots.
    pub fn min_separation(&self) -> f64 {
        min_pairwise(&self.roots)
    }
}

fn min_pairwise(z: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            best = best.min((z[i] - z[j]).norm());
        }
    }
    best
}

/// All complex roots by Aberth-Ehrlich iteration from a circle of Fujiwara-bound radius.
pub fn find_roots(p: &NumPoly) -> Result<RootFamily> {
    find_roots_tol(p, ROOT_TOL)
}

pub fn find_roots_tol(p: &NumPoly, tol: f64) -> Result<RootFamily> {
    let n = p.degree();
    let a = p.coeffs();
    let da = raw_derivative(a, 1);
    if n == 1 {
        let z = -a[0];
        return Ok(RootFamily {
            roots: vec![z],
            source: None,
            condition_estimate: p.scale_at(z) / z.norm().max(1.0),
        });
    }
    let radius = (0..n)
        .map(|i| a[i].norm().powf(1.0 / (n - i) as f64))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE)
        * 2.0;
    let center = -a[n - 1] / n as f64;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            center + Complex64::from_polar(radius, t)
        })
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITER {
        let mut moved = false;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let pk = horner(a, z[k]);
            if pk == Complex64::zero() {
                done[k] = true;
                continue;
            }
            let ratio = pk / horner(&da, z[k]);
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let w = ratio / (c(1.0) - ratio * s);
            if !w.is_finite() {
                continue;
            }
            z[k] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * (1.0 + z[k].norm()) {
                done[k] = true;
            } else {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    let mut worst: f64 = 0.0;
    let mut cond: f64 = 0.0;
    for &r in &z {
        let res = p.eval(r).norm() / p.scale_at(r).max(f64::MIN_POSITIVE);
        worst = worst.max(if res.is_nan() { f64::INFINITY } else { res });
        let d = horner(&da, r).norm() * r.norm().max(1.0);
        cond = cond.max(p.scale_at(r) / d);
    }
    if worst > tol {
        return Err(Error::NoConvergence { residual: worst });
    }
    Ok(RootFamily {
        roots: z,
        source: None,
        condition_estimate: cond,
    })
}

/// `(1/n) sum_{z in fam} p^(delta)(z)` with zero integration constants for `delta < 0`.
pub fn mean_over_family(p: &NumPoly, delta: i64, fam: &RootFamily) -> Complex64 {
    assert!(!fam.is_empty(), "empty root family");
    let g = raw_derivative(p.coeffs(), delta);
    fam.roots.iter().map(|&z| horner(&g, z)).sum::<Complex64>() / fam.len() as f64
}

/// How sampled polynomials are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RootModel {
    /// I.i.d. uniform on the complex disk of the given radius.
    ComplexDisk(f64),
    /// I.i.d. uniform on the real interval `[-r, r]`.
    RealInterval(f64),
}

impl Default for RootModel {
    fn default() -> Self {
        RootModel::ComplexDisk(2.0)
    }
}

/// Generator for sample `index` under `seed`, independent of thread scheduling.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn disk_point(rng: &mut impl Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
}

/// `n` planted roots with pairwise distance at least `MIN_SEPARATION`.
pub fn sample_roots(rng: &mut impl Rng, n: usize, model: RootModel) -> Vec<Complex64> {
    for _ in 0..MAX_RESAMPLE {
        let z: Vec<Complex64> = (0..n)
            .map(|_| match model {
                RootModel::ComplexDisk(r) => disk_point(rng, r),
                RootModel::RealInterval(r) => c(rng.gen_range(-r..=r)),
            })
            .collect();
        if min_pairwise(&z) >= MIN_SEPARATION {
            return z;
        }
    }
    panic!("could not draw {n} separated roots");
}

/// A random monic `f` of degree `D` plus random constants for its antiderivatives.
#[derive(Debug, Clone)]
pub struct Sample {
    pub d: u32,
    /// `r1..rD` followed by `c1..cM`.
    pub params: Vec<Complex64>,
}

impl Sample {
    pub fn draw(rng: &mut impl Rng, d: u32, constants: usize, model: RootModel) -> Result<Self> {
        let f = NumPoly::from_roots(&sample_roots(rng, d as usize, model))?;
        let mut params = f.quasi_binomial_params();
        params.extend((0..constants).map(|_| disk_point(rng, 1.0)));
        Ok(Self { d, params })
    }

    /// The monic polynomial standing for `f^(order)`.
    pub fn monic(&self, order: i64) -> Result<NumPoly> {
        let m = self.d as i64 - order;
        if m < 1 || m as usize > self.params.len() {
            return Err(Error::Precondition(format!("order {order} outside the sample")));
        }
        NumPoly::from_quasi_binomial(&self.params[..m as usize])
    }

    pub fn family(&self, rho: i64) -> Result<RootFamily> {
        let mut fam = find_roots(&self.monic(rho)?)?;
        fam.source = Some((self.d, rho));
        fam
            .roots
            .sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(fam)
    }

    /// Mean of `f^(delta)` (scaled by `D!/(D-delta)!`) over a root family, with the
    /// same mean taken over absolute values of the terms as a scale.
    pub fn mean(&self, delta: i64, fam: &RootFamily) -> Result<(Complex64, f64)> {
        let d = self.d as i64;
        if delta > d {
            return Ok((Complex64::zero(), 0.0));
        }
        let scale = if delta >= 0 {
            falling_f64(d, delta)
        } else {
            1.0 / falling_f64(d - delta, -delta)
        };
        if delta == d {
            return Ok((c(scale), scale));
        }
        let g = self.monic(delta)?;
        let n = fam.len() as f64;
        let s: Complex64 = fam.roots.iter().map(|&z| g.eval(z)).sum();
        let mag: f64 = fam.roots.iter().map(|&z| g.scale_at(z)).sum();
        Ok((s * scale / n, mag * scale / n))
    }

    /// Value bound to a symbol of the exact engine.
    pub fn symbol_value(&self, s: BarSymbol) -> Complex64 {
        match s {
            BarSymbol::Root(i) => self.params[i as usize - 1],
            BarSymbol::Const { index, base } => self.params[(base + index) as usize - 1],
        }
    }
}

/// Outcome of a seeded numeric check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericReport {
    pub relation: String,
    pub samples: usize,
    pub max_rel_residual: f64,
    pub skipped: usize,
    pub pass: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub model: RootModel,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            samples: 1000,
            seed: 42,
            tol: REL_TOL,
            model: RootModel::default(),
        }
    }
}

fn rel(num: f64, den: f64) -> f64 {
    if den <= f64::MIN_POSITIVE {
        num.min(1.0)
    } else {
        num / den
    }
}

fn lowest_order(rels: &[RelationVector]) -> i64 {
    rels.iter()
        .flat_map(|r| r.support.iter().copied().chain([r.delta]))
        .min()
        .unwrap_or(0)
}

/// Relative residual of each relation on one sample, or `None` when a root
/// family could not be found.
fn relation_residuals(sample: &Sample, rels: &[RelationVector]) -> Option<Vec<f64>> {
    let mut fams = std::collections::BTreeMap::new();
    let mut out = Vec::with_capacity(rels.len());
    for r in rels {
        let mut acc = Complex64::zero();
        let mut mag = 0.0;
        for (rho, a) in r.pairs() {
            if !fams.contains_key(&rho) {
                fams.insert(rho, sample.family(rho).ok()?);
            }
            let (m, scale) = sample.mean(r.delta, &fams[&rho]).ok()?;
            let a = a.to_f64().unwrap_or(f64::INFINITY);
            acc += m * a;
            mag += scale * a.abs();
        }
        out.push(rel(acc.norm(), mag));
    }
    Some(out)
}

/// Checks many relations sharing a degree on the same samples. An empty relation passes vacuously.
pub fn check_relations_numeric(rels: &[RelationVector], opts: CheckOptions) -> Result<Vec<NumericReport>> {
    let Some(d) = rels.first().map(|r| r.d) else {
        return Ok(Vec::new());
    };
    if rels.iter().any(|r| r.d != d) {
        return Err(Error::Precondition("relations must share a degree".into()));
    }
    let constants = (-lowest_order(rels)).max(0) as usize;
    let per_sample: Vec<Option<Vec<f64>>> = (0..opts.samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(opts.seed, i);
            let s = Sample::draw(&mut rng, d, constants, opts.model).ok()?;
            relation_residuals(&s, rels)
        })
        .collect();
    let skipped = per_sample.iter().filter(|s| s.is_none()).count();
    Ok(rels
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let max = per_sample
                .iter()
                .flatten()
                .map(|v| v[k])
                .fold(0.0, f64::max);
            NumericReport {
                relation: r.to_string(),
                samples: opts.samples,
                max_rel_residual: max,
                skipped,
                pass: max <= opts.tol && skipped < opts.samples.max(1),
                seed: opts.seed,
            }
        })
        .collect())
}

pub fn check_relation_numeric(rel: &RelationVector, samples: usize, seed: u64) -> Result<NumericReport> {
    let opts = CheckOptions {
        samples,
        seed,
        ..CheckOptions::default()
    };
    if rel.alpha.is_empty() || samples == 0 {
        return Ok(NumericReport {
            relation: rel.to_string(),
            samples,
            max_rel_residual: 0.0,
            skipped: 0,
            pass: true,
            seed,
        });
    }
    Ok(check_relations_numeric(std::slice::from_ref(rel), opts)?.remove(0))
}

/// Compares the exact `phi(key)` evaluated at each sample's parameters with the direct mean.
pub fn check_phi_numeric(key: PhiKey, opts: CheckOptions) -> Result<NumericReport> {
    let res = phi(key)?;
    let constants = (-key.rho.min(key.delta)).max(0) as usize;
    let per: Vec<Option<f64>> = (0..opts.samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(opts.seed, i);
            let s = Sample::draw(&mut rng, key.d, constants, opts.model).ok()?;
            let fam = s.family(key.rho).ok()?;
            let (direct, scale) = s.mean(key.delta, &fam).ok()?;
            Some(compare_symbolic(&res.poly, &s, direct, scale))
        })
        .collect();
    Ok(summarize(format!("phi D={} delta={} rho={}", key.d, key.delta, key.rho), &per, opts))
}

/// Relative distance between a polynomial evaluated at the sample and a direct value
/// whose own magnitude scale is `scale`.
pub fn compare_symbolic(p: &crate::symalg::SymPoly, s: &Sample, direct: Complex64, scale: f64) -> f64 {
    let exact = p.eval_complex(|sym| s.symbol_value(sym));
    let mag: f64 = p
        .terms()
        .map(|(m, q)| {
            let mut t = q.to_f64().unwrap_or(f64::INFINITY).abs();
            for &(sym, e) in m.factors() {
                t *= s.symbol_value(sym).norm().powi(e as i32);
            }
            t
        })
        .sum();
    rel((exact - direct).norm(), mag.max(scale))
}

fn summarize(name: String, per: &[Option<f64>], opts: CheckOptions) -> NumericReport {
    let skipped = per.iter().filter(|s| s.is_none()).count();
    let max = per.iter().flatten().copied().fold(0.0, f64::max);
    NumericReport {
        relation: name,
        samples: opts.samples,
        max_rel_residual: max,
        skipped,
        pass: max <= opts.tol && (opts.samples == 0 || skipped < opts.samples),
        seed: opts.seed,
    }
}

/// `sum_r f^(k)(r) / f'(r)` over the roots and the sum of the absolute terms.
/// Errors with `Precondition` when the roots are not simple enough to divide by `f'`.
pub fn check_relative_rates(p: &NumPoly, k: u32) -> Result<(Complex64, f64)> {
    let n = p.degree();
    if k as usize > n {
        return Ok((Complex64::zero(), 0.0));
    }
    let fam = find_roots(p)?;
    if fam.min_separation() < MIN_SEPARATION {
        return Err(Error::Precondition("repeated roots; resample".into()));
    }
    let d1 = raw_derivative(p.coeffs(), 1);
    let dk = raw_derivative(p.coeffs(), k as i64);
    let mut sum = Complex64::zero();
    let mut mag = 0.0;
    for &r in &fam.roots {
        let t = horner(&dk, r) / horner(&d1, r);
        sum += t;
        mag += t.norm();
    }
    Ok((sum, mag))
}

/// Relative-rates residuals for `k = 2..D-1` and `D = 3..=max_degree`, `samples` per degree.
pub fn relative_rates_suite(max_degree: u32, opts: CheckOptions) -> Vec<NumericReport> {
    (3..=max_degree)
        .map(|d| {
            let per: Vec<Option<f64>> = (0..opts.samples as u64)
                .into_par_iter()
                .map(|i| {
                    let mut rng = sample_rng(opts.seed ^ ((d as u64) << 32), i);
                    let p = NumPoly::from_roots(&sample_roots(&mut rng, d as usize, opts.model)).ok()?;
                    let mut worst: f64 = 0.0;
                    for k in 2..d {
                        let (s, mag) = check_relative_rates(&p, k).ok()?;
                        worst = worst.max(rel(s.norm(), mag));
                    }
                    Some(worst)
                })
                .collect();
            summarize(format!("relative-rates D={d}"), &per, opts)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TranslationReport {
    pub base_mean: [f64; 2],
    pub max_rel_residual: f64,
}

/// Mean of `p'` over the roots of `p - t` compared with `p - t - dh` for every `dh`.
pub fn check_translation_invariance(p: &NumPoly, t: Complex64, dh_list: &[f64]) -> Result<TranslationReport> {
    if p.degree() < 2 {
        return Err(Error::Precondition("degree must be at least 2".into()));
    }
    let slope = |q: &NumPoly| -> Result<(Complex64, f64)> {
        let fam = find_roots(q)?;
        let d1 = raw_derivative(q.coeffs(), 1);
        let mag: f64 = fam.roots.iter().map(|&z| abs_horner(&d1, z)).sum::<f64>() / fam.len() as f64;
        Ok((mean_over_family(q, 1, &fam), mag))
    };
    let (base, base_mag) = slope(&p.shifted(t))?;
    let mut worst: f64 = 0.0;
    for &dh in dh_list {
        let (m, mag) = slope(&p.shifted(t + dh))?;
        worst = worst.max(rel((m - base).norm(), base_mag.max(mag)));
    }
    Ok(TranslationReport {
        base_mean: [base.re, base.im],
        max_rel_residual: worst,
    })
}

/// Translation-invariance residuals for degrees `2..=max_degree` with three random shifts per sample.
pub fn translation_suite(max_degree: u32, opts: CheckOptions) -> Vec<NumericReport> {
    (2..=max_degree)
        .map(|d| {
            let per: Vec<Option<f64>> = (0..opts.samples as u64)
                .into_par_iter()
                .map(|i| {
                    let mut rng = sample_rng(opts.seed ^ ((d as u64) << 40), i);
                    let p = NumPoly::from_roots(&sample_roots(&mut rng, d as usize, opts.model)).ok()?;
                    let t = disk_point(&mut rng, 1.0);
                    let dh: Vec<f64> = (0..3).map(|_| rng.gen_range(-4.0..4.0)).collect();
                    check_translation_invariance(&p, t, &dh).ok().map(|r| r.max_rel_residual)
                })
                .collect();
            summarize(format!("translation D={d}"), &per, opts)
        })
        .collect()
}

/// `E +- sqrt(V)`.
pub fn solve_quadratic_statistical(e: f64, v: f64) -> [Complex64; 2] {
    let s = c(v).sqrt();
    [c(e) - s, c(e) + s]
}

/// Roots `E + w^k T+ + w^-k T-` with `T+ T- = V/2`, from the mean, variance and
/// third central moment of the roots.
pub fn solve_cubic_statistical(e: f64, v: f64, w: f64) -> [Complex64; 3] {
    let half_v = c(v / 2.0);
    let disc = (c(w / 2.0) * (w / 2.0) - half_v * half_v * half_v).sqrt();
    let a = (c(w / 2.0) + disc).cbrt();
    let b = (c(w / 2.0) - disc).cbrt();
    let (tp, tm) = if a.norm() >= b.norm() {
        (a, if a == Complex64::zero() { b } else { half_v / a })
    } else {
        (half_v / b, b)
    };
    let omega = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
    let mut out = [Complex64::zero(); 3];
    let mut wk = c(1.0);
    for z in out.iter_mut() {
        *z = c(e) + wk * tp + wk.conj() * tm;
        wk *= omega;
    }
    out
}

/// Mean, population variance and third central moment of a multiset.
pub fn root_moments(roots: &[Complex64]) -> (Complex64, Complex64, Complex64) {
    let n = roots.len() as f64;
    let e: Complex64 = roots.iter().sum::<Complex64>() / n;
    let v = roots.iter().map(|&z| (z - e) * (z - e)).sum::<Complex64>() / n;
    let w = roots.iter().map(|&z| (z - e).powu(3)).sum::<Complex64>() / n;
    (e, v, w)
}
