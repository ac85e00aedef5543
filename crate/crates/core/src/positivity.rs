//! Sharpness of positive braids, the α-positivity obstruction to braid
//! positivity, and the top-term and decomposition checks for `K_n`.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::braid::{family, BraidError, BraidWord, Family};
use crate::homfly::{Engine, HomflyError};
use crate::poly::{LaurentPoly1, LaurentPoly2, PolyError, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PositivityError {
    #[error("word contains the negative letter {0}")]
    NegativeLetter(i32),
    #[error("genus formula is only established for even n, got {0}")]
    OddN(usize),
    #[error("closure has {0} components; a knot is required")]
    NotKnot(usize),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Homfly(#[from] HomflyError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl PositivityError {
    /// Budget exhaustion, as opposed to a genuine failure.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            PositivityError::Homfly(HomflyError::Budget { .. } | HomflyError::NodeBudget(_))
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpnessReport {
    pub strands: usize,
    pub crossings: usize,
    pub components: usize,
    pub p0_degree: i64,
    /// `strands + crossings - components`.
    pub bound: i64,
    pub sharp: bool,
}

pub fn sharpness(engine: &mut Engine, b: &BraidWord) -> Result<SharpnessReport, PositivityError> {
    if let Some(&l) = b.letters().iter().find(|&&l| l < 0) {
        return Err(PositivityError::NegativeLetter(l));
    }
    let p = engine.p0(b)?;
    let p0_degree = p.degree().ok_or(PolyError::ZeroPolynomial)? as i64;
    let components = b.component_count();
    let bound = b.strands() as i64 + b.len() as i64 - components as i64;
    Ok(SharpnessReport {
        strands: b.strands(),
        crossings: b.len(),
        components,
        p0_degree,
        bound,
        sharp: p0_degree == bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusCheck {
    pub supplied: u64,
    /// Half the span of the Alexander polynomial; a lower bound for the genus,
    /// equal to it for fibered knots.
    pub alexander_half_span: u64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItoVerdict {
    pub genus: u64,
    /// `(-α)^{-g} P|_{v² = -α}` in `α, z`.
    pub tilde_poly: LaurentPoly2,
    pub positive: bool,
    /// Lowest-ordered monomial `(α exp, z exp, coeff)` with negative coefficient.
    pub witness: Option<(i32, i32, BigInt)>,
    pub genus_check: GenusCheck,
}

impl ItoVerdict {
    /// The `z⁰` part of the tilde polynomial, in `α`.
    pub fn z0_part(&self) -> LaurentPoly1 {
        self.tilde_poly.z_coefficient(0)
    }
}

/// `(-α)^{-g} P|_{v² = -α}`.
pub fn tilde_homfly(p: &LaurentPoly2, genus: u64) -> Result<LaurentPoly2, PolyError> {
    let a = p.v_squared_to_neg_alpha()?;
    let g = genus as i32;
    let sign = if genus % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    Ok(a.shift(-g, 0).scale(&sign))
}

pub fn genus_cross_check(engine: &mut Engine, b: &BraidWord, genus: u64) -> Result<GenusCheck, PositivityError> {
    let a = engine.alexander(b)?;
    let span = match (a.degree(), a.order()) {
        (Some(d), Some(o)) => (d - o) as u64,
        _ => 0,
    };
    Ok(GenusCheck {
        supplied: genus,
        alexander_half_span: span / 2,
        agrees: span == 2 * genus,
    })
}

pub fn ito_obstruction(engine: &mut Engine, b: &BraidWord, genus: u64) -> Result<ItoVerdict, PositivityError> {
    let c = b.component_count();
    if c != 1 {
        return Err(PositivityError::NotKnot(c));
    }
    let p = engine.homfly(b)?;
    let tilde_poly = tilde_homfly(&p, genus)?;
    let witness = tilde_poly
        .terms()
        .find(|(_, _, c)| c.is_negative())
        .map(|(a, z, c)| (a, z, c.clone()));
    let genus_check = genus_cross_check(engine, b, genus)?;
    Ok(ItoVerdict {
        genus,
        positive: witness.is_none(),
        tilde_poly,
        witness,
        genus_check,
    })
}

/// `(3n² - n + 2) / 2`, the genus of `K_n` for even `n`.
pub fn genus_kn(n: usize) -> Result<u64, PositivityError> {
    if n < 2 || n % 2 == 1 {
        return Err(PositivityError::OddN(n));
    }
    let n = n as u64;
    Ok((3 * n * n - n + 2) / 2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopTermCheck {
    pub n: usize,
    /// `(3n² + 3n, (-1)^n)`.
    pub expected: (i32, BigInt),
    pub computed: (i32, BigInt),
    pub pass: bool,
}

pub fn expected_top_term(n: usize) -> (i32, BigInt) {
    let e = (3 * n * n + 3 * n) as i32;
    let c = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    (e, c)
}

pub fn verify_topterm(engine: &mut Engine, n: usize) -> Result<TopTermCheck, PositivityError> {
    let b = family(Family::Kn, n)?;
    let computed = engine.p0(&b)?.top_term()?;
    let expected = expected_top_term(n);
    Ok(TopTermCheck {
        n,
        pass: computed == expected,
        expected,
        computed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCheck {
    pub n: usize,
    pub p0_kn: LaurentPoly1,
    pub rhs: LaurentPoly1,
    pub pass: bool,
}

/// Right side of the p⁰ recursion for `K_n`:
/// `Σ_{k=1}^{n-1} v^{-2(k-1)}(1 - v⁻²)v^{2(3(n-k)k+k)} p⁰(cable k) p⁰(K_{n-k})
///  + v^{-2(n-1)} p⁰(K_n⁺)`.
pub fn decomposition_rhs(engine: &mut Engine, n: usize) -> Result<LaurentPoly1, PositivityError> {
    let one_minus = LaurentPoly1::one(Var::V) - LaurentPoly1::monomial(Var::V, -2, 1);
    let mut rhs = LaurentPoly1::zero(Var::V);
    for k in 1..n {
        let cable = engine.p0(&family(Family::Cable, k)?)?;
        let rest = engine.p0(&family(Family::Kn, n - k)?)?;
        let shift = -2 * (k as i32 - 1) + 2 * (3 * (n - k) * k + k) as i32;
        rhs = rhs + (&one_minus * &(&cable * &rest)).shift(shift);
    }
    let plus = engine.p0(&family(Family::KnPlus, n)?)?;
    Ok(rhs + plus.shift(-2 * (n as i32 - 1)))
}

pub fn skein_decomposition_check(engine: &mut Engine, n: usize) -> Result<DecompositionCheck, PositivityError> {
    let p0_kn = engine.p0(&family(Family::Kn, n)?)?;
    let rhs = decomposition_rhs(engine, n)?;
    Ok(DecompositionCheck {
        n,
        pass: p0_kn == rhs,
        p0_kn,
        rhs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteEntry {
    pub label: String,
    pub word: BraidWord,
    pub expect_sharp: bool,
    /// `Err` carries budget exhaustion and other engine errors.
    pub result: Result<SharpnessReport, PositivityError>,
}

impl SuiteEntry {
    /// `Some(true)` on the expected verdict, `None` when not computed.
    pub fn pass(&self) -> Option<bool> {
        self.result.as_ref().ok().map(|r| r.sharp == self.expect_sharp)
    }
}

/// Cables `k = 2..=n_max` and `K_n⁺` for `n = 3..=n_max`, all expected
/// non-sharp, preceded by the sharp trefoil control.
pub fn nonsharpness_suite(engine: &mut Engine, n_max: usize) -> Vec<SuiteEntry> {
    use alloc::format;
    let mut cases: Vec<(String, BraidWord, bool)> = Vec::new();
    cases.push(("trefoil".into(), BraidWord::new_unchecked(2, alloc::vec![1, 1, 1]), true));
    for k in 2..=n_max {
        cases.push((format!("cable-{k}"), family(Family::Cable, k).expect("k >= 1"), false));
    }
    for n in 3..=n_max {
        cases.push((format!("kn-plus-{n}"), family(Family::KnPlus, n).expect("n >= 2"), false));
    }
    cases
        .into_iter()
        .map(|(label, word, expect_sharp)| {
            let result = sharpness(engine, &word);
            SuiteEntry {
                label,
                word,
                expect_sharp,
                result,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;
    use alloc::string::ToString;

    fn w(s: &str) -> BraidWord {
        parse_braid(s, None).unwrap()
    }

    #[test]
    fn sharpness_examples() {
        let mut e = Engine::default();
        let hopf = sharpness(&mut e, &w("1 1")).unwrap();
        assert_eq!((hopf.p0_degree, hopf.bound, hopf.sharp), (2, 2, true));
        let tref = sharpness(&mut e, &w("1 1 1")).unwrap();
        assert_eq!((tref.p0_degree, tref.bound, tref.sharp), (4, 4, true));
        let cable = sharpness(&mut e, &family(Family::Cable, 2).unwrap()).unwrap();
        assert!(!cable.sharp);
        assert!(cable.p0_degree < cable.bound);
        assert_eq!(sharpness(&mut e, &w("1 -1")), Err(PositivityError::NegativeLetter(-1)));
    }

    #[test]
    fn ito_examples() {
        let mut e = Engine::default();
        let t = ito_obstruction(&mut e, &w("1 1 1"), 1).unwrap();
        assert_eq!(t.tilde_poly.to_string(), "2 + a + z^2");
        assert!(t.positive && t.witness.is_none());
        assert!(t.genus_check.agrees);
        let k2 = ito_obstruction(&mut e, &family(Family::Beta, 2).unwrap(), 6).unwrap();
        assert!(!k2.positive);
        assert_eq!(k2.z0_part().top_term().unwrap(), (3, (-1).into()));
        let u = ito_obstruction(&mut e, &BraidWord::identity(1), 0).unwrap();
        assert_eq!(u.tilde_poly, LaurentPoly2::one(Var::Alpha));
        assert!(u.positive);
    }

    #[test]
    fn genus_formula() {
        assert_eq!(genus_kn(2), Ok(6));
        assert_eq!(genus_kn(4), Ok(23));
        assert_eq!(genus_kn(6), Ok(52));
        assert_eq!(genus_kn(3), Err(PositivityError::OddN(3)));
    }

    #[test]
    fn top_terms() {
        let mut e = Engine::default();
        let c2 = verify_topterm(&mut e, 2).unwrap();
        assert!(c2.pass);
        assert_eq!(c2.computed, (18, 1.into()));
        let c3 = verify_topterm(&mut e, 3).unwrap();
        assert_eq!(c3.computed, (36, (-1).into()));
        assert!(c3.pass);
    }

    #[test]
    fn suite_control_is_sharp() {
        let mut e = Engine::default();
        let s = nonsharpness_suite(&mut e, 2);
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|x| x.pass() == Some(true)));
    }
}
