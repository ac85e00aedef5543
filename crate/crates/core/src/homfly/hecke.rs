//! Ocneanu trace on the Hecke algebra `H_m` with `g² = vz·g + v²`.
//!
//! The trace is normalized so that `tr(x·g_{m-1}^{±1}) = tr(x)` and
//! `tr(x ⊗ 1) = δ·tr(x)` with `δ = (v⁻¹ - v)z⁻¹`; it then equals the HOMFLY
//! polynomial of the closure without any writhe correction.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::braid::BraidWord;
use crate::poly::{LaurentPoly2, Var};

pub(crate) trait Coef: Clone + PartialEq {
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn into_big(self) -> BigInt;
}

impl Coef for i128 {
    fn from_i64(x: i64) -> Self {
        x as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Coef for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

/// Sparse polynomial in `v, z`, sorted by `(v, z)`, no zero coefficients.
type Terms<C> = Vec<(i32, i32, C)>;

fn shifted<C: Coef>(p: &Terms<C>, dv: i32, dz: i32) -> Terms<C> {
    p.iter().map(|(a, b, c)| (a + dv, b + dz, c.clone())).collect()
}

/// `a ± v^dv z^dz · b`.
fn add_shifted<C: Coef>(a: &Terms<C>, b: &Terms<C>, dv: i32, dz: i32, negate: bool) -> Option<Terms<C>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let kb = b.get(j).map(|t| (t.0 + dv, t.1 + dz));
        let ka = a.get(i).map(|t| (t.0, t.1));
        match (ka, kb) {
            (Some(x), Some(y)) if x == y => {
                let c = if negate { a[i].2.sub(&b[j].2)? } else { a[i].2.add(&b[j].2)? };
                if !c.is_zero() {
                    out.push((x.0, x.1, c));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(x), None) => {
                out.push((x.0, x.1, a[i].2.clone()));
                i += 1;
            }
            (_, Some(y)) => {
                let c = if negate { C::from_i64(0).sub(&b[j].2)? } else { b[j].2.clone() };
                out.push((y.0, y.1, c));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Some(out)
}

fn add_into<C: Coef>(acc: &mut Terms<C>, p: &Terms<C>) -> Option<()> {
    if p.is_empty() {
        return Some(());
    }
    if acc.is_empty() {
        *acc = p.clone();
        return Some(());
    }
    *acc = add_shifted(acc, p, 0, 0, false)?;
    Some(())
}

/// Permutation bookkeeping for one `S_m`, ranked by Lehmer code.
struct Level {
    /// `pairs[k]` lists `(lo, hi)` with `hi = lo·s_k` and `lo[k] < lo[k+1]`.
    pairs: Vec<Vec<(u32, u32)>>,
    /// For each rank: position of the top value and rank of the remainder in
    /// `S_{m-1}`.
    reduce: Vec<(u8, u32)>,
}

fn factorial(m: usize) -> usize {
    (1..=m).product()
}

fn rank(w: &[u8]) -> usize {
    let m = w.len();
    let mut r = 0;
    for i in 0..m {
        let smaller = w[i + 1..].iter().filter(|&&x| x < w[i]).count();
        r = r * (m - i) + smaller;
    }
    r
}

fn unrank(mut r: usize, m: usize) -> Vec<u8> {
    let mut digits = vec![0usize; m];
    for i in (0..m).rev() {
        let base = m - i;
        digits[i] = r % base;
        r /= base;
    }
    let mut pool: Vec<u8> = (0..m as u8).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

impl Level {
    fn new(m: usize) -> Level {
        let n = factorial(m);
        let perms: Vec<Vec<u8>> = (0..n).map(|r| unrank(r, m)).collect();
        let mut pairs = vec![Vec::with_capacity(n / 2); m.saturating_sub(1)];
        for (r, w) in perms.iter().enumerate() {
            for (k, list) in pairs.iter_mut().enumerate() {
                if w[k] < w[k + 1] {
                    let mut s = w.clone();
                    s.swap(k, k + 1);
                    list.push((r as u32, rank(&s) as u32));
                }
            }
        }
        let reduce = perms
            .iter()
            .map(|w| {
                let p = w.iter().position(|&x| x as usize == m - 1).unwrap();
                let u: Vec<u8> = w.iter().copied().filter(|&x| x as usize != m - 1).collect();
                (p as u8, rank(&u) as u32)
            })
            .collect();
        Level { pairs, reduce }
    }

    /// Right multiplication by `g_k^{±1}` (0-based `k`).
    fn mul_gen<C: Coef>(&self, x: &mut [Terms<C>], k: usize, positive: bool) -> Option<()> {
        for &(lo, hi) in &self.pairs[k] {
            let (lo, hi) = (lo as usize, hi as usize);
            if x[lo].is_empty() && x[hi].is_empty() {
                continue;
            }
            let a = core::mem::take(&mut x[lo]);
            let b = core::mem::take(&mut x[hi]);
            if positive {
                x[hi] = add_shifted(&a, &b, 1, 1, false)?;
                x[lo] = shifted(&b, 2, 0);
            } else {
                x[lo] = add_shifted(&b, &a, -1, 1, true)?;
                x[hi] = shifted(&a, -2, 0);
            }
        }
        Some(())
    }
}

/// Trace of the image of `b` in `H_strands`, or `None` on coefficient
/// overflow of `C`.
fn trace_with<C: Coef>(b: &BraidWord, levels: &[Level]) -> Option<Terms<C>> {
    let s = b.strands();
    let top = &levels[s - 1];
    let mut x: Vec<Terms<C>> = vec![Vec::new(); factorial(s)];
    x[0] = vec![(0, 0, C::from_i64(1))];
    for &l in b.letters() {
        top.mul_gen(&mut x, l.unsigned_abs() as usize - 1, l > 0)?;
    }
    for m in (2..=s).rev() {
        let level = &levels[m - 1];
        let lower = &levels[m - 2];
        let size = factorial(m - 1);
        let mut y: Vec<Vec<Terms<C>>> = vec![vec![Vec::new(); size]; m];
        for (r, t) in x.into_iter().enumerate() {
            if t.is_empty() {
                continue;
            }
            let (p, u) = level.reduce[r];
            y[p as usize][u as usize] = t;
        }
        let mut next: Vec<Terms<C>> = vec![Vec::new(); size];
        // δ = v⁻¹z⁻¹ - v z⁻¹
        for (slot, t) in next.iter_mut().zip(&y[m - 1]) {
            if !t.is_empty() {
                *slot = add_shifted(&shifted(t, -1, -1), t, 1, -1, true)?;
            }
        }
        for (p, mut yp) in y.into_iter().enumerate().take(m - 1) {
            if yp.iter().all(|t| t.is_empty()) {
                continue;
            }
            for k in (p..m.saturating_sub(2)).rev() {
                lower.mul_gen(&mut yp, k, true)?;
            }
            for (slot, t) in next.iter_mut().zip(&yp) {
                add_into(slot, t)?;
            }
        }
        x = next;
    }
    x.into_iter().next()
}

fn to_poly<C: Coef>(t: Terms<C>) -> LaurentPoly2 {
    LaurentPoly2::from_terms(Var::V, t.into_iter().map(|(a, b, c)| (a, b, c.into_big())))
}

/// Sum of letters plus the quadratic growth of the reduction phase bounds the
/// bit length of every intermediate coefficient.
fn fits_i128(b: &BraidWord) -> bool {
    let s = b.strands();
    b.len() + s * s / 2 + s <= 120
}

/// HOMFLY polynomial of the closure of `b`.
pub fn hecke_homfly(b: &BraidWord) -> LaurentPoly2 {
    let levels: Vec<Level> = (1..=b.strands()).map(Level::new).collect();
    if fits_i128(b) {
        if let Some(t) = trace_with::<i128>(b, &levels) {
            return to_poly(t);
        }
    }
    let t = trace_with::<BigInt>(b, &levels).expect("big integers never overflow");
    to_poly(t)
}
