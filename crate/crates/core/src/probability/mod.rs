//! The probability `P_G(w)` that a word evaluates to the identity on a
//! uniformly random generator tuple: Monte Carlo estimation, exact
//! enumeration, power-word counts in `S_n`, and closed-form bounds.

pub mod bounds;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::groups::{GeneratorTuple, Group, GroupElement};
use crate::harness::seed::substream;
use crate::words::{self, Word};

pub use bounds::*;

/// Samples per substream. The split is fixed so results do not depend on the worker count.
pub const MC_CHUNK: u64 = 8192;

#[derive(Clone, Debug, PartialEq)]
pub struct ProbEstimate {
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub confidence: f64,
    pub successes: u64,
    pub samples: u64,
    pub seed: u64,
    /// `3 / samples`, reported only when no success was observed.
    pub rule_of_three: Option<f64>,
}

impl ProbEstimate {
    pub fn contains(&self, p: f64) -> bool {
        self.ci_low <= p && p <= self.ci_high
    }
}

/// Wilson score interval for `successes` out of `samples` at two-sided `confidence`.
pub fn wilson_interval(successes: u64, samples: u64, confidence: f64) -> Result<(f64, f64)> {
    if samples == 0 || successes > samples {
        return Err(Error::domain("wilson interval needs 0 <= successes <= samples, samples >= 1"));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::domain(format!("confidence {confidence} outside (0, 1)")));
    }
    let z = Normal::standard().inverse_cdf(1.0 - (1.0 - confidence) / 2.0);
    let n = samples as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let rad = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = ((center - rad) / denom).clamp(0.0, p);
    let hi = ((center + rad) / denom).clamp(p, 1.0);
    Ok((lo, hi))
}

fn check_word(w: &Word) -> Result<()> {
    if w.is_empty() {
        return Err(Error::domain("the empty word is trivially the identity"));
    }
    if !w.is_reduced() {
        return Err(Error::domain(format!("word {w} is not reduced")));
    }
    Ok(())
}

/// Counts identity evaluations over `samples` random tuples. Only the
/// generators that occur in `w` are sampled.
///
/// Samples are drawn in chunks of [`MC_CHUNK`], chunk `c` from substream
/// `c` of `seed`; chunks run on the current rayon pool.
pub fn estimate_mc(group: &Group, w: &Word, samples: u64, confidence: f64, seed: u64) -> Result<ProbEstimate> {
    check_word(w)?;
    if samples == 0 {
        return Err(Error::domain("samples must be at least 1"));
    }
    let word = w.compact();
    let chunks = samples.div_ceil(MC_CHUNK);
    let successes = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = substream(seed, c);
            let count = MC_CHUNK.min(samples - c * MC_CHUNK);
            let mut hits = 0u64;
            for _ in 0..count {
                let gens = group.sample_tuple(word.k(), &mut rng)?;
                if group.is_identity(&words::evaluate(group, &word, &gens)?) {
                    hits += 1;
                }
            }
            Ok(hits)
        })
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .sum::<u64>();
    let (ci_low, ci_high) = wilson_interval(successes, samples, confidence)?;
    Ok(ProbEstimate {
        p_hat: successes as f64 / samples as f64,
        ci_low,
        ci_high,
        confidence,
        successes,
        samples,
        seed,
        rule_of_three: (successes == 0).then(|| (3.0 / samples as f64).min(1.0)),
    })
}

/// Exact `P_G(w)` by iterating over all tuples of the generators that occur in `w`.
pub fn exact_by_enumeration(group: &Group, w: &Word, cap: u64) -> Result<BigRational> {
    let word = w.compact();
    let k = word.k();
    let order = group.order();
    let total = order.pow(k as u32);
    if total > BigUint::from(cap) {
        return Err(Error::Capacity(format!("|G|^{k} = {total} exceeds the cap {cap}")));
    }
    if k == 0 {
        return Ok(BigRational::one());
    }
    let elems: Vec<GroupElement> = group.enumerate(cap)?.collect();
    let m = elems.len();
    let mut idx = vec![0usize; k];
    let mut hits = 0u64;
    loop {
        let gens = GeneratorTuple::new(idx.iter().map(|&i| elems[i].clone()).collect());
        if group.is_identity(&words::evaluate(group, &word, &gens)?) {
            hits += 1;
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == k {
                let denom = BigInt::from(total);
                return Ok(BigRational::new(BigInt::from(hits), denom));
            }
            idx[pos] += 1;
            if idx[pos] < m {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Number of `g` in `S_n` with `g^len = 1`, via
/// `a(m) = Σ_{d | len, d ≤ m} (m-1)(m-2)⋯(m-d+1) · a(m-d)`, `a(0) = 1`.
pub fn power_root_count(n: usize, len: usize) -> Result<BigUint> {
    if len == 0 {
        return Err(Error::domain("exponent must be at least 1"));
    }
    let divisors: Vec<usize> = (1..=len).filter(|d| len % d == 0).collect();
    let mut a: Vec<BigUint> = vec![BigUint::one()];
    for m in 1..=n {
        let mut total = BigUint::zero();
        for &d in divisors.iter().take_while(|&&d| d <= m) {
            // (m-1)!/(m-d)! ways to complete the cycle through point m
            let falling = ((m - d + 1)..m).fold(BigUint::one(), |acc, x| acc * x);
            total += falling * &a[m - d];
        }
        a.push(total);
    }
    Ok(a.pop().unwrap())
}

/// `P_{S_n}(x^len) = power_root_count(n, len) / n!` as an exact rational.
pub fn power_word_probability(n: usize, len: usize) -> Result<BigRational> {
    let count = power_root_count(n, len)?;
    let fact = (1..=n).fold(BigUint::one(), |acc, x| acc * x);
    Ok(BigRational::new(count.into(), fact.into()))
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
