//! Sparse Laurent polynomials over arbitrary-precision integers.
//!
//! [`LaurentPoly1`] is univariate (`v`, `t`, `alpha` or `z`), [`LaurentPoly2`]
//! is bivariate with `z` as its second variable (`(v, z)` or `(alpha, z)`).
//! Zero coefficients are never stored, so structural equality is polynomial
//! equality.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    V,
    T,
    Alpha,
    Z,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::V => "v",
            Var::T => "t",
            Var::Alpha => "a",
            Var::Z => "z",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable mismatch: {left:?} vs {right:?}")]
    VarMismatch { left: Var, right: Var },
    #[error("zero polynomial has no top term")]
    ZeroPolynomial,
    #[error("substitution {rule:?} needs even exponents, found {exponent}")]
    Parity { rule: Substitution, exponent: i32 },
}

/// Substitutions used by the invariants in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    /// `v = 1`; the result is a polynomial in `z`.
    VToOne,
    /// `z^2 = t - 2 + t^-1`.
    Z2ToT,
    /// `v^2 = -alpha`.
    V2ToNegAlpha,
}

fn add_term<K: Ord>(map: &mut BTreeMap<K, BigInt>, key: K, c: BigInt) {
    if c.is_zero() {
        return;
    }
    use alloc::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly1 {
    var: Var,
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly1 {
    pub fn zero(var: Var) -> Self {
        LaurentPoly1 {
            var,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(var: Var) -> Self {
        Self::monomial(var, 0, 1)
    }

    pub fn monomial(var: Var, exp: i32, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(var);
        add_term(&mut p.terms, exp, coeff.into());
        p
    }

    pub fn from_terms<I, C>(var: Var, terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            add_term(&mut p.terms, e, c.into());
        }
        p
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Highest exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent, `None` for the zero polynomial.
    pub fn order(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn top_term(&self) -> Result<(i32, BigInt), PolyError> {
        self.terms
            .iter()
            .next_back()
            .map(|(e, c)| (*e, c.clone()))
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// True when every stored coefficient is positive (vacuously for zero).
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(PolyError::VarMismatch {
                left: self.var,
                right: other.var,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            add_term(&mut out.terms, *e, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            add_term(&mut out.terms, *e, -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = Self::zero(self.var);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                add_term(&mut out.terms, e1 + e2, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.var);
        for (e, c) in &self.terms {
            add_term(&mut out.terms, *e, c * k);
        }
        out
    }

    /// Multiply by `var^shift`.
    pub fn shift(&self, shift: i32) -> Self {
        LaurentPoly1 {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.var);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Same coefficients, different variable tag.
    pub fn relabel(&self, var: Var) -> Self {
        LaurentPoly1 {
            var,
            terms: self.terms.clone(),
        }
    }

    /// Evaluate at an integer point. Negative exponents require `x = ±1`.
    pub fn eval_unit(&self, x: i8) -> BigInt {
        debug_assert!(x == 1 || x == -1);
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            if x == -1 && e.rem_euclid(2) == 1 {
                acc -= c;
            } else {
                acc += c;
            }
        }
        acc
    }

    /// `z^2 -> t - 2 + t^-1` on a polynomial in `z`.
    pub fn z_squared_to_t(&self) -> Result<Self, PolyError> {
        let base = LaurentPoly1::from_terms(Var::T, [(1, 1), (0, -2), (-1, 1)]);
        let mut out = Self::zero(Var::T);
        for (e, c) in &self.terms {
            if e.rem_euclid(2) != 0 || *e < 0 {
                return Err(PolyError::Parity {
                    rule: Substitution::Z2ToT,
                    exponent: *e,
                });
            }
            let term = base.pow((*e / 2) as u32).scale(c);
            out = &out + &term;
        }
        Ok(out)
    }

    /// `v^(2j) -> (-alpha)^j`.
    pub fn v_squared_to_neg_alpha(&self) -> Result<Self, PolyError> {
        let mut out = Self::zero(Var::Alpha);
        for (e, c) in &self.terms {
            if e.rem_euclid(2) != 0 {
                return Err(PolyError::Parity {
                    rule: Substitution::V2ToNegAlpha,
                    exponent: *e,
                });
            }
            let j = e / 2;
            let c = if j.rem_euclid(2) == 1 { -c } else { c.clone() };
            add_term(&mut out.terms, j, c);
        }
        Ok(out)
    }

    /// Sorted `(exp, coeff)` pairs.
    pub fn to_pairs(&self) -> Vec<(i32, BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c.clone())).collect()
    }
}

impl fmt::Debug for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_monomial(out: &mut String, first: bool, c: &BigInt, factors: &[(Var, i32)]) {
    use core::fmt::Write;
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let vars: Vec<_> = factors.iter().filter(|(_, e)| *e != 0).collect();
    if vars.is_empty() {
        let _ = write!(out, "{abs}");
        return;
    }
    if !abs.is_one() {
        let _ = write!(out, "{abs}*");
    }
    for (i, (v, e)) in vars.iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        if *e == 1 {
            let _ = write!(out, "{}", v.symbol());
        } else {
            let _ = write!(out, "{}^{}", v.symbol(), e);
        }
    }
}

impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            write_monomial(&mut s, i == 0, c, &[(self.var, *e)]);
        }
        f.write_str(&s)
    }
}

macro_rules! forward_ops {
    ($t:ty) => {
        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                self.checked_add(rhs).expect("polynomial variables must agree")
            }
        }
        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                self.checked_sub(rhs).expect("polynomial variables must agree")
            }
        }
        impl Mul for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                self.checked_mul(rhs).expect("polynomial variables must agree")
            }
        }
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                self.scale(&BigInt::from(-1))
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

forward_ops!(LaurentPoly1);
forward_ops!(LaurentPoly2);

/// Bivariate Laurent polynomial; keys are `(first exponent, z exponent)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    var: Var,
    terms: BTreeMap<(i32, i32), BigInt>,
}

impl LaurentPoly2 {
    pub fn zero(var: Var) -> Self {
        LaurentPoly2 {
            var,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(var: Var) -> Self {
        Self::monomial(var, 0, 0, 1)
    }

    pub fn monomial(var: Var, e: i32, z: i32, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(var);
        add_term(&mut p.terms, (e, z), coeff.into());
        p
    }

    pub fn from_terms<I, C>(var: Var, terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, i32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(var);
        for (e, z, c) in terms {
            add_term(&mut p.terms, (e, z), c.into());
        }
        p
    }

    /// The first variable; the second is always `z`.
    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i32, &BigInt)> + '_ {
        self.terms.iter().map(|((e, z), c)| (*e, *z, c))
    }

    pub fn coeff(&self, e: i32, z: i32) -> BigInt {
        self.terms.get(&(e, z)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(PolyError::VarMismatch {
                left: self.var,
                right: other.var,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_term(&mut out.terms, *k, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_term(&mut out.terms, *k, -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = Self::zero(self.var);
        for ((e1, z1), c1) in &self.terms {
            for ((e2, z2), c2) in &other.terms {
                add_term(&mut out.terms, (e1 + e2, z1 + z2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.var);
        for (key, c) in &self.terms {
            add_term(&mut out.terms, *key, c * k);
        }
        out
    }

    /// Multiply by `var^de * z^dz`.
    pub fn shift(&self, de: i32, dz: i32) -> Self {
        LaurentPoly2 {
            var: self.var,
            terms: self
                .terms
                .iter()
                .map(|((e, z), c)| ((e + de, z + dz), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.var);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Coefficient of `z^k` as a univariate polynomial in the first variable.
    pub fn z_coefficient(&self, k: i32) -> LaurentPoly1 {
        LaurentPoly1::from_terms(
            self.var,
            self.terms
                .iter()
                .filter(|((_, z), _)| *z == k)
                .map(|((e, _), c)| (*e, c.clone())),
        )
    }

    /// Range of `z` exponents present, `None` for zero.
    pub fn z_range(&self) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|(_, z)| *z);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), z| (lo.min(z), hi.max(z))))
    }

    /// `v = 1`, leaving a polynomial in `z`.
    pub fn at_v_one(&self) -> LaurentPoly1 {
        LaurentPoly1::from_terms(Var::Z, self.terms.iter().map(|((_, z), c)| (*z, c.clone())))
    }

    /// `v^(2j) -> (-alpha)^j`, keeping `z`.
    pub fn v_squared_to_neg_alpha(&self) -> Result<Self, PolyError> {
        let mut out = Self::zero(Var::Alpha);
        for ((e, z), c) in &self.terms {
            if e.rem_euclid(2) != 0 {
                return Err(PolyError::Parity {
                    rule: Substitution::V2ToNegAlpha,
                    exponent: *e,
                });
            }
            let j = e / 2;
            let c = if j.rem_euclid(2) == 1 { -c } else { c.clone() };
            add_term(&mut out.terms, (j, *z), c);
        }
        Ok(out)
    }

    /// Multiply by a univariate polynomial in the same first variable.
    pub fn mul_poly1(&self, p: &LaurentPoly1) -> Result<Self, PolyError> {
        if p.var() != self.var {
            return Err(PolyError::VarMismatch {
                left: self.var,
                right: p.var(),
            });
        }
        let mut out = Self::zero(self.var);
        for ((e1, z1), c1) in &self.terms {
            for (e2, c2) in p.terms() {
                add_term(&mut out.terms, (e1 + e2, *z1), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Sorted `(exp, z_exp, coeff)` triples.
    pub fn to_triples(&self) -> Vec<(i32, i32, BigInt)> {
        self.terms.iter().map(|((e, z), c)| (*e, *z, c.clone())).collect()
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // z-major order reads naturally as a polynomial in z
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_key(|((e, z), _)| (*z, *e));
        let mut s = String::new();
        for (i, ((e, z), c)) in keys.into_iter().enumerate() {
            write_monomial(&mut s, i == 0, c, &[(self.var, *e), (Var::Z, *z)]);
        }
        f.write_str(&s)
    }
}

/// Either kind of polynomial, for callers that dispatch on a substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Polynomial {
    One(LaurentPoly1),
    Two(LaurentPoly2),
}

impl Polynomial {
    pub fn is_positive(&self) -> bool {
        match self {
            Polynomial::One(p) => p.is_positive(),
            Polynomial::Two(p) => p.is_positive(),
        }
    }

    pub fn specialize(&self, rule: Substitution) -> Result<Polynomial, PolyError> {
        Ok(match (self, rule) {
            (Polynomial::Two(p), Substitution::VToOne) => Polynomial::One(p.at_v_one()),
            (Polynomial::One(p), Substitution::VToOne) => match p.var() {
                Var::V => Polynomial::One(LaurentPoly1::monomial(Var::Z, 0, p.eval_unit(1))),
                _ => Polynomial::One(p.clone()),
            },
            (Polynomial::One(p), Substitution::Z2ToT) => match p.var() {
                Var::Z => Polynomial::One(p.z_squared_to_t()?),
                _ => Polynomial::One(p.clone()),
            },
            (Polynomial::Two(p), Substitution::Z2ToT) => {
                // only meaningful once v has been eliminated
                if p.terms().all(|(e, _, _)| e == 0) {
                    Polynomial::One(p.at_v_one().z_squared_to_t()?)
                } else {
                    return Err(PolyError::VarMismatch {
                        left: p.var(),
                        right: Var::Z,
                    });
                }
            }
            (Polynomial::Two(p), Substitution::V2ToNegAlpha) => {
                Polynomial::Two(p.v_squared_to_neg_alpha()?)
            }
            (Polynomial::One(p), Substitution::V2ToNegAlpha) => match p.var() {
                Var::V => Polynomial::One(p.v_squared_to_neg_alpha()?),
                _ => Polynomial::One(p.clone()),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn v(terms: &[(i32, i64)]) -> LaurentPoly1 {
        LaurentPoly1::from_terms(Var::V, terms.iter().copied())
    }

    #[test]
    fn ring_examples() {
        let a = v(&[(-2, 1), (0, -1)]);
        assert_eq!(&a * &v(&[(2, 1)]), v(&[(0, 1), (2, -1)]));
        assert_eq!(&v(&[(2, 2), (4, -1)]) + &v(&[(4, 1)]), v(&[(2, 2)]));
        let b = v(&[(0, 1), (2, -1)]);
        assert_eq!(&b * &b, v(&[(0, 1), (2, -2), (4, 1)]));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = &v(&[(4, 1)]) - &v(&[(4, 1)]);
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn top_terms() {
        assert_eq!(v(&[(2, 2), (4, -1)]).top_term().unwrap(), (4, BigInt::from(-1)));
        assert_eq!(LaurentPoly1::one(Var::V).top_term().unwrap(), (0, BigInt::from(1)));
        assert_eq!(v(&[(-2, 1), (0, -1)]).top_term().unwrap(), (0, BigInt::from(-1)));
        assert_eq!(LaurentPoly1::zero(Var::V).top_term(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn tag_mismatch_is_an_error() {
        let a = LaurentPoly1::one(Var::V);
        let b = LaurentPoly1::one(Var::T);
        assert!(matches!(a.checked_add(&b), Err(PolyError::VarMismatch { .. })));
    }

    #[test]
    fn trefoil_substitution() {
        let p = LaurentPoly2::from_terms(Var::V, [(2, 0, 2), (4, 0, -1), (2, 2, 1)]);
        let q = p.v_squared_to_neg_alpha().unwrap();
        let want = LaurentPoly2::from_terms(Var::Alpha, [(1, 0, -2), (2, 0, -1), (1, 2, -1)]);
        assert_eq!(q, want);
        let vz = LaurentPoly2::monomial(Var::V, 2, 2, 1);
        assert_eq!(vz.at_v_one(), LaurentPoly1::monomial(Var::Z, 2, 1));
    }

    #[test]
    fn specialize_constant_is_constant() {
        let one = Polynomial::Two(LaurentPoly2::one(Var::V));
        for rule in [Substitution::VToOne, Substitution::V2ToNegAlpha] {
            let s = one.specialize(rule).unwrap();
            assert!(s.is_positive());
        }
        let c = one.specialize(Substitution::VToOne).unwrap();
        let t = c.specialize(Substitution::Z2ToT).unwrap();
        assert_eq!(t, Polynomial::One(LaurentPoly1::one(Var::T)));
    }

    #[test]
    fn parity_violation() {
        let p = LaurentPoly2::monomial(Var::V, 1, 0, 1);
        assert!(matches!(p.v_squared_to_neg_alpha(), Err(PolyError::Parity { exponent: 1, .. })));
        let z = LaurentPoly1::monomial(Var::Z, 1, 1);
        assert!(z.z_squared_to_t().is_err());
    }

    #[test]
    fn positivity() {
        let p = LaurentPoly2::from_terms(Var::Alpha, [(0, 0, 2), (1, 0, 1), (0, 2, 1)]);
        assert!(p.is_positive());
        assert!(!(-p).is_positive());
        assert!(LaurentPoly2::zero(Var::Alpha).is_positive());
    }

    #[test]
    fn rendering() {
        let p = LaurentPoly2::from_terms(Var::V, [(2, 0, 2), (4, 0, -1), (2, 2, 1)]);
        assert_eq!(p.to_string(), "2*v^2 - v^4 + v^2*z^2");
        assert_eq!(v(&[(-2, 1), (0, -1)]).to_string(), "v^-2 - 1");
        assert_eq!(LaurentPoly1::zero(Var::T).to_string(), "0");
    }
}
