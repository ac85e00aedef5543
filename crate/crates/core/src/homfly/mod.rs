//! HOMFLY polynomials of closed braids under
//! `v⁻¹P(L₊) - vP(L₋) = zP(L₀)`, `P(unknot) = 1`.
//!
//! Three engines: a Hecke-algebra trace (primary), a plain skein resolver
//! (oracle for small inputs) and a p⁰-only skein recursion.

mod hecke;
mod p0;
mod skein;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::braid::BraidWord;
use crate::poly::{LaurentPoly1, LaurentPoly2, PolyError, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomflyError {
    #[error("braid with {strands} strands and {letters} letters exceeds the budget of {max_strands} strands and {max_letters} letters")]
    Budget {
        strands: usize,
        letters: usize,
        max_strands: usize,
        max_letters: usize,
    },
    #[error("p0 recursion exceeded its budget of {0} nodes")]
    NodeBudget(usize),
    #[error("closure has {0} components; a knot is required")]
    NotKnot(usize),
    #[error("polynomial does not match the expansion for {components} components: {reason}")]
    Shape {
        components: usize,
        reason: &'static str,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_strands: usize,
    pub max_letters: usize,
    /// Distinct knot nodes the p⁰ recursion may expand per engine.
    pub p0_nodes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_strands: 8,
            max_letters: 80,
            p0_nodes: 5_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Algorithm {
    Hecke,
    Skein,
    P0Skein,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Hecke => "hecke-trace",
            Algorithm::Skein => "skein-oracle",
            Algorithm::P0Skein => "p0-skein",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientDecomposition {
    pub components: usize,
    /// `coeffs[i]` is `p^i`; no trailing zero entry.
    pub coeffs: Vec<LaurentPoly1>,
}

impl CoefficientDecomposition {
    pub fn p0(&self) -> LaurentPoly1 {
        self.coeffs
            .first()
            .cloned()
            .unwrap_or_else(|| LaurentPoly1::zero(Var::V))
    }

    /// `(v⁻¹z)^{1-c} Σ p^i z^{2i}`.
    pub fn reassemble(&self) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero(Var::V);
        for (i, p) in self.coeffs.iter().enumerate() {
            for (e, c) in p.terms() {
                out = out + LaurentPoly2::monomial(Var::V, e, 2 * i as i32, c.clone());
            }
        }
        let c = self.components as i32;
        out.shift(c - 1, 1 - c)
    }
}

/// Lexicographically least cyclic rotation.
pub fn canonical_rotation(letters: &[i32]) -> Vec<i32> {
    let n = letters.len();
    let mut best = 0;
    for s in 1..n {
        let better = (0..n)
            .map(|k| (letters[(s + k) % n], letters[(best + k) % n]))
            .find(|(a, b)| a != b)
            .is_some_and(|(a, b)| a < b);
        if better {
            best = s;
        }
    }
    (0..n).map(|k| letters[(best + k) % n]).collect()
}

/// HOMFLY and p⁰ evaluation with budgets and memo stores keyed by
/// `(strands, least rotation)`.
pub struct Engine {
    budget: Budget,
    homfly_memo: BTreeMap<(usize, Vec<i32>), LaurentPoly2>,
    p0: p0::P0Engine,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(Budget::default())
    }
}

impl Engine {
    pub fn new(budget: Budget) -> Self {
        Engine {
            budget,
            homfly_memo: BTreeMap::new(),
            p0: p0::P0Engine::new(budget.p0_nodes),
        }
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn set_budget(&mut self, budget: Budget) {
        self.budget = budget;
        self.p0.set_budget(budget.p0_nodes);
    }

    /// Knot nodes expanded by the p⁰ recursion so far.
    pub fn p0_nodes(&self) -> usize {
        self.p0.nodes()
    }

    pub fn check_budget(&self, b: &BraidWord) -> Result<(), HomflyError> {
        if b.strands() > self.budget.max_strands || b.len() > self.budget.max_letters {
            return Err(HomflyError::Budget {
                strands: b.strands(),
                letters: b.len(),
                max_strands: self.budget.max_strands,
                max_letters: self.budget.max_letters,
            });
        }
        Ok(())
    }

    pub fn homfly(&mut self, b: &BraidWord) -> Result<LaurentPoly2, HomflyError> {
        let key = (b.strands(), canonical_rotation(b.letters()));
        if let Some(p) = self.homfly_memo.get(&key) {
            return Ok(p.clone());
        }
        self.check_budget(b)?;
        let p = hecke::hecke_homfly(b);
        self.homfly_memo.insert(key, p.clone());
        Ok(p)
    }

    /// Zeroth coefficient polynomial via the p⁰ recursion. A cached HOMFLY
    /// polynomial is used directly when present.
    pub fn p0(&mut self, b: &BraidWord) -> Result<LaurentPoly1, HomflyError> {
        let key = (b.strands(), canonical_rotation(b.letters()));
        if let Some(p) = self.homfly_memo.get(&key) {
            return Ok(coefficient_polys(p, b.component_count())?.p0());
        }
        self.p0.link(b)
    }

    /// p⁰ through the full HOMFLY polynomial, for cross-checks.
    pub fn p0_via_homfly(&mut self, b: &BraidWord) -> Result<LaurentPoly1, HomflyError> {
        let p = self.homfly(b)?;
        Ok(coefficient_polys(&p, b.component_count())?.p0())
    }

    pub fn insert_homfly(&mut self, strands: usize, letters: &[i32], p: LaurentPoly2) {
        self.homfly_memo
            .insert((strands, canonical_rotation(letters)), p);
    }

    /// Memoized HOMFLY polynomials as `(strands, canonical letters, P)`.
    pub fn homfly_entries(&self) -> impl Iterator<Item = (usize, &[i32], &LaurentPoly2)> + '_ {
        self.homfly_memo
            .iter()
            .map(|((s, w), p)| (*s, w.as_slice(), p))
    }

    pub fn alexander(&mut self, b: &BraidWord) -> Result<LaurentPoly1, HomflyError> {
        let c = b.component_count();
        if c != 1 {
            return Err(HomflyError::NotKnot(c));
        }
        alexander_from_homfly(&self.homfly(b)?)
    }

    pub fn determinant(&mut self, b: &BraidWord) -> Result<BigInt, HomflyError> {
        Ok(self.alexander(b)?.eval_unit(-1).abs())
    }
}

pub fn homfly(b: &BraidWord) -> Result<LaurentPoly2, HomflyError> {
    Engine::default().homfly(b)
}

/// HOMFLY polynomial by the reference skein resolver. Exponential; meant for
/// small words.
pub fn homfly_skein(b: &BraidWord) -> LaurentPoly2 {
    skein::SkeinOracle::default().eval(b.strands(), b.letters())
}

pub fn p0(b: &BraidWord) -> Result<LaurentPoly1, HomflyError> {
    Engine::default().p0(b)
}

pub fn alexander(b: &BraidWord) -> Result<LaurentPoly1, HomflyError> {
    Engine::default().alexander(b)
}

pub fn determinant(b: &BraidWord) -> Result<BigInt, HomflyError> {
    Engine::default().determinant(b)
}

/// Split `P` as `(v⁻¹z)^{1-c} Σ p^i z^{2i}`.
pub fn coefficient_polys(p: &LaurentPoly2, components: usize) -> Result<CoefficientDecomposition, HomflyError> {
    let shape = |reason| HomflyError::Shape { components, reason };
    if components == 0 {
        return Err(shape("component count must be positive"));
    }
    if p.var() != Var::V {
        return Err(shape("expected a polynomial in v and z"));
    }
    let c = components as i32;
    let q = p.shift(1 - c, c - 1);
    let mut coeffs: Vec<LaurentPoly1> = Vec::new();
    for (e, z, coeff) in q.terms() {
        if z < 0 {
            return Err(shape("z exponent below the expected order"));
        }
        if z % 2 != 0 {
            return Err(shape("odd z exponent"));
        }
        let i = (z / 2) as usize;
        if coeffs.len() <= i {
            coeffs.resize(i + 1, LaurentPoly1::zero(Var::V));
        }
        coeffs[i] = &coeffs[i] + &LaurentPoly1::monomial(Var::V, e, coeff.clone());
    }
    Ok(CoefficientDecomposition { components, coeffs })
}

/// Alexander polynomial in `t` from a knot's HOMFLY polynomial.
pub fn alexander_from_homfly(p: &LaurentPoly2) -> Result<LaurentPoly1, HomflyError> {
    Ok(p.at_v_one().z_squared_to_t()?)
}
