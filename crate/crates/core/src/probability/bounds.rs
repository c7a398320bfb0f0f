//! Closed-form upper bounds on word probabilities and the constants they use.
//!
//! Everything that involves a group order is computed in natural-log space.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::groups::{Family, GroupSpec};

/// Number of factors used for [`constant_a`] unless stated otherwise.
pub const CONSTANT_A_TERMS: usize = 60;

/// Which of the two bound regimes applies: `GL`/`SL` or the form-preserving groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyCase {
    Linear,
    Classical,
}

impl FamilyCase {
    pub fn of(family: Family) -> Result<Self> {
        match family {
            Family::GL | Family::SL => Ok(FamilyCase::Linear),
            Family::Sp => Ok(FamilyCase::Classical),
            Family::Sym | Family::Alt => Err(Error::domain("bound applies to matrix groups only")),
        }
    }
}

/// Dimension threshold constant: `n ≥ c(ε)·len` makes the length bound applicable.
pub fn c_eps(case: FamilyCase, eps: f64) -> f64 {
    let base = match case {
        FamilyCase::Linear => 4.0,
        FamilyCase::Classical => 7.0,
    };
    base * (1.0 + 2.0 / eps)
}

/// Partial product `∏_{i < terms} (1 + 1/(2^{2i+1} - 1))`.
pub fn constant_a(terms: usize) -> f64 {
    (0..terms)
        .map(|i| 1.0 + 1.0 / ((2.0f64).powi(2 * i as i32 + 1) - 1.0))
        .product()
}

/// Linear girth slope `1 / (7(1 + 2 log2(2k - 1)))`.
pub fn girth_slope(k: usize) -> f64 {
    1.0 / (7.0 * (1.0 + 2.0 * ((2 * k - 1) as f64).log2()))
}

/// Girth scale `(ln q)^{-1/2}`.
pub fn girth_scale(q: u32) -> f64 {
    (q as f64).ln().powf(-0.5)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundParams {
    pub eps: f64,
    pub case: FamilyCase,
    pub c_eps: f64,
    pub girth_slope: f64,
    pub a: f64,
    pub girth_scale: Option<f64>,
}

impl BoundParams {
    pub fn new(eps: f64, case: FamilyCase, k: usize, q: Option<u32>) -> Result<Self> {
        if !(eps > 0.0) {
            return Err(Error::domain("epsilon must be positive"));
        }
        if k < 2 {
            return Err(Error::domain("k must be at least 2"));
        }
        Ok(BoundParams {
            eps,
            case,
            c_eps: c_eps(case, eps),
            girth_slope: girth_slope(k),
            a: constant_a(CONSTANT_A_TERMS),
            girth_scale: q.map(girth_scale),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LengthBound {
    /// `ln(|G|^{-1/((2+ε)len)})`.
    pub ln_bound: f64,
    /// Whether `n ≥ c(ε)·len`.
    pub applicable: bool,
    pub c_eps: f64,
}

/// The bound `|G|^{-1/((2+ε)len)}` for reduced words of length `len`, with its applicability flag.
pub fn length_bound(spec: &GroupSpec, len: usize, eps: f64) -> Result<LengthBound> {
    if len == 0 {
        return Err(Error::domain("word length must be at least 1"));
    }
    if !(eps > 0.0) {
        return Err(Error::domain("epsilon must be positive"));
    }
    let case = FamilyCase::of(spec.family)?;
    let c = c_eps(case, eps);
    Ok(LengthBound {
        ln_bound: -spec.ln_order() / ((2.0 + eps) * len as f64),
        applicable: spec.n as f64 >= c * len as f64,
        c_eps: c,
    })
}

fn check_nlq(n: usize, len: usize, q: u32) -> Result<()> {
    if n == 0 || len == 0 || q < 2 {
        return Err(Error::domain("need n >= 1, len >= 1, q >= 2"));
    }
    Ok(())
}

/// `ln(a · (q/(q-1))^{n/len} · q^{-n²/(2 len) + 3n/2})`.
pub fn ln_linear_final(q: u32, n: usize, len: usize) -> Result<f64> {
    check_nlq(n, len, q)?;
    let (q, n, l) = (q as f64, n as f64, len as f64);
    Ok(constant_a(CONSTANT_A_TERMS).ln() + (n / l) * (q / (q - 1.0)).ln() + (-n * n / (2.0 * l) + 1.5 * n) * q.ln())
}

/// `ln(a · (Q/(Q-1))^{n/(2 len)} · Q^{-n²/(4 len) + 3n/2})`.
pub fn ln_classical_final(big_q: u32, n: usize, len: usize) -> Result<f64> {
    check_nlq(n, len, big_q)?;
    let (q, n, l) = (big_q as f64, n as f64, len as f64);
    Ok(constant_a(CONSTANT_A_TERMS).ln() + (n / (2.0 * l)) * (q / (q - 1.0)).ln() + (-n * n / (4.0 * l) + 1.5 * n) * q.ln())
}

/// Positive-word bound in `S_n`: `(2 len / n)^{⌊n / (2 len)⌋}`, exactly.
pub fn positive_word_bound(n: usize, len: usize) -> Result<BigRational> {
    if len == 0 || n < 2 * len {
        return Err(Error::domain(format!("positive-word bound needs n >= 2 len (n={n}, len={len})")));
    }
    let base = BigRational::new(BigInt::from(2 * len), BigInt::from(n));
    let exp = (n / (2 * len)) as u32;
    Ok(if exp == 0 { BigRational::one() } else { Pow::pow(base, exp) })
}

/// `ln E` with `E = k/(k-1) · (2k-1)^{n/c} · |G|^{-c/((2+ε)n)}`.
pub fn ln_union_e(k: usize, n: usize, c: f64, eps: f64, ln_order: f64) -> Result<f64> {
    if k < 2 || n == 0 || !(c > 0.0) || !(eps > 0.0) {
        return Err(Error::domain("need k >= 2, n >= 1, c > 0, eps > 0"));
    }
    let (kf, nf) = (k as f64, n as f64);
    Ok((kf / (kf - 1.0)).ln() + (nf / c) * (2.0 * kf - 1.0).ln() - c / ((2.0 + eps) * nf) * ln_order)
}

/// The simplified upper estimate `1 + n/c - 3.5(n-1)/ε · log_{2k-1} q` of `log_{2k-1} E`.
pub fn log_union_e_estimate(k: usize, n: usize, c: f64, eps: f64, q: u32) -> f64 {
    let base = (2.0 * k as f64 - 1.0).ln();
    1.0 + n as f64 / c - 3.5 * (n as f64 - 1.0) / eps * (q as f64).ln() / base
}
