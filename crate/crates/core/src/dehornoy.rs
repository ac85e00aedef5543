//! Handle reduction and the Dehornoy order.
//!
//! A `σ_i`-handle is a factor `σ_i^e u σ_i^{-e}` where every letter of `u`
//! has index greater than `i`. Reduction always picks the handle with the
//! leftmost right end; such a handle contains no other handle and is
//! therefore permitted.

use alloc::vec::Vec;

use thiserror::Error;

use crate::braid::{family, half_twist, BraidError, BraidWord, Family};

pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DehornoyError {
    #[error("handle reduction stopped after {steps} steps with a word of length {length}")]
    Budget { steps: u64, length: usize },
    #[error(transparent)]
    Braid(#[from] BraidError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    SigmaPositive,
    SigmaNegative,
    Trivial,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::SigmaPositive => "sigma_positive",
            Verdict::SigmaNegative => "sigma_negative",
            Verdict::Trivial => "trivial",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaClass {
    pub verdict: Verdict,
    /// Smallest generator index in the reduced word.
    pub main_index: Option<u32>,
    pub reduced_word: BraidWord,
    pub steps: u64,
}

const NONE: usize = usize::MAX;

/// Reduced word and the number of handle reductions performed.
pub fn handle_reduce_counted(b: &BraidWord, step_budget: u64) -> Result<(BraidWord, u64), DehornoyError> {
    let mut w: Vec<i32> = b.letters().to_vec();
    // prev[q]: nearest index before q whose letter index is <= that of w[q]
    let mut prev: Vec<usize> = Vec::with_capacity(w.len());
    let mut start = 0;
    let mut steps = 0u64;
    'outer: loop {
        prev.truncate(start);
        for q in start..w.len() {
            let level = w[q].unsigned_abs();
            let mut p = if q == 0 { NONE } else { q - 1 };
            while p != NONE && w[p].unsigned_abs() > level {
                p = prev[p];
            }
            prev.push(p);
            if p != NONE && w[p] == -w[q] {
                if steps >= step_budget {
                    return Err(DehornoyError::Budget { steps, length: w.len() });
                }
                steps += 1;
                let e = w[p].signum();
                let i = level as i32;
                let mut mid: Vec<i32> = Vec::with_capacity(3 * (q - p));
                for &x in &w[p + 1..q] {
                    if x.abs() == i + 1 {
                        mid.extend([-e * (i + 1), x.signum() * i, e * (i + 1)]);
                    } else {
                        mid.push(x);
                    }
                }
                w.splice(p..=q, mid);
                start = p;
                continue 'outer;
            }
        }
        return Ok((BraidWord::new_unchecked(b.strands(), w), steps));
    }
}

pub fn handle_reduce(b: &BraidWord, step_budget: u64) -> Result<BraidWord, DehornoyError> {
    handle_reduce_counted(b, step_budget).map(|(w, _)| w)
}

/// Sign of the smallest generator in a handle-free word.
fn classify_reduced(w: &[i32]) -> (Verdict, Option<u32>) {
    let Some(min) = w.iter().map(|l| l.unsigned_abs()).min() else {
        return (Verdict::Trivial, None);
    };
    let first = w.iter().find(|l| l.unsigned_abs() == min).copied().unwrap_or(0);
    debug_assert!(w.iter().filter(|l| l.unsigned_abs() == min).all(|l| l.signum() == first.signum()));
    let verdict = if first > 0 { Verdict::SigmaPositive } else { Verdict::SigmaNegative };
    (verdict, Some(min))
}

pub fn sigma_classify(b: &BraidWord, step_budget: u64) -> Result<SigmaClass, DehornoyError> {
    let (reduced_word, steps) = handle_reduce_counted(b, step_budget)?;
    let (verdict, main_index) = classify_reduced(reduced_word.letters());
    Ok(SigmaClass {
        verdict,
        main_index,
        reduced_word,
        steps,
    })
}

/// `a <_D b` iff `a⁻¹b` is σ-positive.
pub fn dehornoy_less(a: &BraidWord, b: &BraidWord, step_budget: u64) -> Result<bool, DehornoyError> {
    let w = a.inverse().compose(b)?;
    Ok(sigma_classify(&w, step_budget)?.verdict == Verdict::SigmaPositive)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorCertificate {
    pub n: usize,
    /// `Δ⁻⁴ · X_n β_n X_n⁻¹` is σ-positive, i.e. `Δ⁴ <_D X_n β_n X_n⁻¹`.
    pub holds: bool,
    pub input_len: usize,
    pub class: SigmaClass,
}

pub fn floor_word(n: usize) -> Result<BraidWord, DehornoyError> {
    let x = family(Family::X, n)?;
    let beta = family(Family::Beta, n)?;
    let conj = beta.conjugate(&x)?;
    Ok(half_twist(2 * n).inverse().pow(4).compose(&conj)?)
}

pub fn floor_exceeds_one(n: usize, step_budget: u64) -> Result<FloorCertificate, DehornoyError> {
    let w = floor_word(n)?;
    let class = sigma_classify(&w, step_budget)?;
    Ok(FloorCertificate {
        n,
        holds: class.verdict == Verdict::SigmaPositive,
        input_len: w.len(),
        class,
    })
}
