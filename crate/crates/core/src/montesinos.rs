//! Seifert invariants `M(e; r₁, …, r_k)` of Montesinos links, the L-space
//! criterion for `M(-1; r₁, r₂, r₃)`, and the determinant and slope
//! arithmetic for the surgery quotients `ℓ`, `ℓ₀`, `ℓ∞ⁱ`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MontesinosError {
    #[error("zero denominator in fiber {0}")]
    ZeroDenominator(usize),
    #[error("fibers must satisfy 1 >= r1 >= r2 >= r3 >= 0")]
    Ordering,
    #[error("r3 = 0 leaves the search over m unbounded")]
    UnboundedSearch,
    #[error("integer overflow")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertData {
    pub euler: i64,
    pub fibers: Vec<Rational>,
}

impl SeifertData {
    /// Build from `(numerator, denominator)` pairs.
    pub fn new(euler: i64, fibers: &[(i64, i64)]) -> Result<Self, MontesinosError> {
        let fibers = fibers
            .iter()
            .enumerate()
            .map(|(i, &(p, q))| {
                if q == 0 {
                    Err(MontesinosError::ZeroDenominator(i))
                } else {
                    Ok(Rational::new(p, q))
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(SeifertData { euler, fibers })
    }

    /// Integer parts move into `euler`, fibers land in `(0, 1)`, zero fibers
    /// are dropped, the rest sorted descending.
    pub fn normalize(&self) -> SeifertData {
        let mut euler = self.euler;
        let mut fibers: Vec<Rational> = Vec::with_capacity(self.fibers.len());
        for r in &self.fibers {
            let fl = r.floor();
            euler += fl.to_integer();
            let frac = r - fl;
            if !frac.is_zero() {
                fibers.push(frac);
            }
        }
        fibers.sort_by(|a, b| b.cmp(a));
        SeifertData { euler, fibers }
    }

    /// `e + Σ r_i`.
    pub fn total(&self) -> BigRational {
        let mut s = BigRational::from_integer(self.euler.into());
        for r in &self.fibers {
            s += BigRational::new((*r.numer()).into(), (*r.denom()).into());
        }
        s
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({};", self.euler)?;
        for (i, r) in self.fibers.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{}/{}", r.numer(), r.denom())?;
        }
        f.write_str(")")
    }
}

/// `|Π α_i · (e + Σ β_i/α_i)|` with `r_i = β_i/α_i` in lowest terms.
pub fn det_montesinos(s: &SeifertData) -> BigInt {
    let prod: BigInt = s.fibers.iter().map(|r| BigInt::from(*r.denom())).product();
    let t = s.total() * BigRational::from_integer(prod);
    debug_assert!(t.is_integer());
    t.to_integer().abs()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LspaceVerdict {
    pub is_lspace: bool,
    /// First coprime `(m, a)` with `m r₁ < a < m(1 - r₂)` and `m r₃ < 1`.
    pub witness: Option<(i64, i64)>,
    /// Largest `m` examined.
    pub m_max: i64,
}

/// Exhaustive search of the criterion for `M(-1; r₁, r₂, r₃)`.
pub fn is_lspace_m1(r1: Rational, r2: Rational, r3: Rational) -> Result<LspaceVerdict, MontesinosError> {
    let one = Rational::from_integer(1);
    let zero = Rational::zero();
    if !(one >= r1 && r1 >= r2 && r2 >= r3 && r3 >= zero) {
        return Err(MontesinosError::Ordering);
    }
    if r3.is_zero() {
        return Err(MontesinosError::UnboundedSearch);
    }
    let mut m: i64 = 2;
    let mut m_max = 1;
    while Rational::from_integer(m) * r3 < one {
        m_max = m;
        let mf = Rational::from_integer(m);
        let lo = (mf * r1).floor().to_integer() + 1;
        let hi = (mf * (one - r2)).ceil().to_integer() - 1;
        for a in lo.max(1)..=hi.min(m - 1) {
            if a.gcd(&m) == 1 {
                return Ok(LspaceVerdict {
                    is_lspace: false,
                    witness: Some((m, a)),
                    m_max: m,
                });
            }
        }
        m = m.checked_add(1).ok_or(MontesinosError::Overflow)?;
    }
    Ok(LspaceVerdict {
        is_lspace: true,
        witness: None,
        m_max,
    })
}

/// Criterion on normalized data with `e = -1` and exactly three fibers.
pub fn is_lspace(s: &SeifertData) -> Result<Option<LspaceVerdict>, MontesinosError> {
    let n = s.normalize();
    if n.euler != -1 || n.fibers.len() != 3 {
        return Ok(None);
    }
    is_lspace_m1(n.fibers[0], n.fibers[1], n.fibers[2]).map(Some)
}

fn kk(k: i64) -> Result<i64, MontesinosError> {
    k.checked_mul(k).ok_or(MontesinosError::Overflow)
}

/// `M(0; -2/3, 1/2, 2k/(6k-1))`, the double cover of `ℓ₀`.
pub fn ell0_data(k: i64) -> SeifertData {
    SeifertData {
        euler: 0,
        fibers: alloc::vec![Rational::new(-2, 3), Rational::new(1, 2), Rational::new(2 * k, 6 * k - 1)],
    }
}

/// `M(0; 2/5, -1/2, 2k/(14k-1))`, the double cover of `ℓ∞^{2k-1}`.
pub fn ell_inf_data(k: i64) -> SeifertData {
    SeifertData {
        euler: 0,
        fibers: alloc::vec![Rational::new(2, 5), Rational::new(-1, 2), Rational::new(2 * k, 14 * k - 1)],
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllFamily {
    pub k: i64,
    /// `12k² + 2k`.
    pub det_ell: i64,
    /// `6k + 1`.
    pub det_ell0: i64,
    /// `det(ℓ∞ⁱ) = 12k² + 2k - (6k + 1)i` for `i = 1..=2k-1`.
    pub det_ell_inf: Vec<i64>,
    pub recursion_holds: bool,
    /// Montesinos determinants of `ℓ₀` and `ℓ∞^{2k-1}` agree with the closed forms.
    pub endpoints_match: bool,
}

pub fn ell_family(k: i64) -> Result<EllFamily, MontesinosError> {
    let det_ell = 12 * kk(k)? + 2 * k;
    let det_ell0 = 6 * k + 1;
    let det_ell_inf: Vec<i64> = (1..=2 * k - 1).map(|i| det_ell - det_ell0 * i).collect();
    let mut recursion_holds = det_ell_inf.first().is_some_and(|&d1| det_ell == d1 + det_ell0);
    for w in det_ell_inf.windows(2) {
        recursion_holds &= w[0] == w[1] + det_ell0;
    }
    let last = *det_ell_inf.last().unwrap_or(&det_ell);
    let endpoints_match = det_montesinos(&ell0_data(k)) == BigInt::from(det_ell0)
        && det_montesinos(&ell_inf_data(k)) == BigInt::from(last);
    Ok(EllFamily {
        k,
        det_ell,
        det_ell0,
        det_ell_inf,
        recursion_holds,
        endpoints_match,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgerySlopes {
    pub k: i64,
    /// `4k² + 2k`, the surgery coefficient on the quotient knot.
    pub quotient_coeff: i64,
    /// `12k² + 2k`.
    pub lspace_slope: i64,
    /// `4k² + 2k + 1`.
    pub writhe: i64,
    /// `lift(quotient_coeff) = lspace_slope = det(ℓ)`.
    pub consistent: bool,
}

impl SurgerySlopes {
    /// Slope `r` on the quotient corresponds to `8k² + r` on `K_{2k}`.
    pub fn lift(&self, r: i64) -> i64 {
        8 * self.k * self.k + r
    }
}

pub fn surgery_slopes(k: i64) -> Result<SurgerySlopes, MontesinosError> {
    let k2 = kk(k)?;
    let mut s = SurgerySlopes {
        k,
        quotient_coeff: 4 * k2 + 2 * k,
        lspace_slope: 12 * k2 + 2 * k,
        writhe: 4 * k2 + 2 * k + 1,
        consistent: false,
    };
    let det_ell = ell_family(k)?.det_ell;
    s.consistent = s.lift(s.quotient_coeff) == s.lspace_slope && s.lspace_slope == det_ell;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    #[test]
    fn normalize_examples() {
        let s = SeifertData::new(0, &[(-2, 3), (1, 2), (2, 5)]).unwrap();
        assert_eq!(s.normalize().to_string(), "M(-1; 1/2, 2/5, 1/3)");
        let h = SeifertData::new(0, &[(1, 2)]).unwrap();
        assert_eq!(h.normalize(), h);
        let e = SeifertData::new(3, &[]).unwrap();
        assert_eq!(e.normalize().to_string(), "M(3;)");
        assert_eq!(SeifertData::new(0, &[(1, 0)]), Err(MontesinosError::ZeroDenominator(0)));
        let whole = SeifertData::new(1, &[(4, 2), (7, 3)]).unwrap().normalize();
        assert_eq!(whole.to_string(), "M(5; 1/3)");
    }

    #[test]
    fn lspace_examples() {
        let v = is_lspace_m1(q(1, 2), q(2, 5), q(1, 3)).unwrap();
        assert!(v.is_lspace);
        assert_eq!(v.m_max, 2);
        let v = is_lspace_m1(q(1, 2), q(2, 5), q(2, 13)).unwrap();
        assert!(v.is_lspace);
        assert_eq!(v.m_max, 6);
        let v = is_lspace_m1(q(1, 2), q(1, 3), q(1, 7)).unwrap();
        assert_eq!((v.is_lspace, v.witness), (false, Some((5, 3))));
        assert_eq!(is_lspace_m1(q(1, 2), q(1, 3), q(0, 1)), Err(MontesinosError::UnboundedSearch));
        assert_eq!(is_lspace_m1(q(1, 3), q(1, 2), q(1, 7)), Err(MontesinosError::Ordering));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(det_montesinos(&ell0_data(1)), 7.into());
        assert_eq!(det_montesinos(&SeifertData::new(0, &[(2, 5), (-1, 2), (2, 13)]).unwrap()), 7.into());
        assert_eq!(det_montesinos(&SeifertData::new(0, &[(1, 2), (-1, 2)]).unwrap()), 0.into());
        assert_eq!(det_montesinos(&SeifertData::new(0, &[(1, 2), (1, 2)]).unwrap()), 4.into());
    }

    #[test]
    fn ell_family_examples() {
        let f = ell_family(1).unwrap();
        assert_eq!((f.det_ell, f.det_ell0, f.det_ell_inf.clone()), (14, 7, alloc::vec![7]));
        assert!(f.recursion_holds && f.endpoints_match);
        let f = ell_family(2).unwrap();
        assert_eq!((f.det_ell, f.det_ell0, f.det_ell_inf[2]), (52, 13, 13));
        let f = ell_family(3).unwrap();
        assert_eq!(f.det_ell, 114);
        assert!(f.recursion_holds);
    }

    #[test]
    fn slope_examples() {
        let s = surgery_slopes(1).unwrap();
        assert_eq!((s.lspace_slope, s.quotient_coeff, s.writhe), (14, 6, 7));
        assert!(s.consistent);
        assert_eq!(surgery_slopes(2).unwrap().lspace_slope, 52);
    }

    #[test]
    fn seifert_forms_normalize_to_criterion_input() {
        let n = ell0_data(1).normalize();
        assert_eq!(n.to_string(), "M(-1; 1/2, 2/5, 1/3)");
        let n = ell_inf_data(1).normalize();
        assert_eq!(n.to_string(), "M(-1; 1/2, 2/5, 2/13)");
        assert!(is_lspace(&ell_inf_data(1)).unwrap().unwrap().is_lspace);
    }
}
