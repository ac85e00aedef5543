//! Zeroth coefficient polynomial by skein recursion on p⁰ alone.
//!
//! Knots: `p⁰(L₊) = v²p⁰(L₋) + v²p⁰(L₀)`, `p⁰(L₋) = v⁻²p⁰(L₊) - p⁰(L₀)`.
//! Links: `p⁰(L) = (v⁻² - 1)^{c-1} v^{2Σlk} Π p⁰(k_i)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{canonical_rotation, HomflyError};
use crate::braid::BraidWord;
use crate::poly::{LaurentPoly1, Var};

pub(crate) struct P0Engine {
    memo: BTreeMap<(usize, Vec<i32>), LaurentPoly1>,
    nodes: usize,
    node_budget: usize,
}

fn mono(e: i32, c: i64) -> LaurentPoly1 {
    LaurentPoly1::monomial(Var::V, e, c)
}

/// Cyclically free-reduce, then destabilize at either end while a boundary
/// generator occurs exactly once. The closure type is unchanged.
pub(crate) fn simplify_knot(mut strands: usize, letters: &[i32]) -> (usize, Vec<i32>) {
    let mut w: Vec<i32> = letters.to_vec();
    loop {
        let mut out: Vec<i32> = Vec::with_capacity(w.len());
        for &l in &w {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        while out.len() >= 2 && out[0] == -out[out.len() - 1] {
            out.pop();
            out.remove(0);
        }
        w = out;
        if strands <= 1 {
            return (1, w);
        }
        let top = strands as i32 - 1;
        if w.iter().filter(|l| l.abs() == top).count() == 1 {
            w.retain(|l| l.abs() != top);
            strands -= 1;
            continue;
        }
        if w.iter().filter(|l| l.abs() == 1).count() == 1 {
            w.retain(|l| l.abs() != 1);
            for l in w.iter_mut() {
                *l -= l.signum();
            }
            strands -= 1;
            continue;
        }
        return (strands, w);
    }
}

/// Letters to switch for a descending or ascending diagram, choosing the base
/// point and direction with the fewest switches.
fn switch_set(strands: usize, letters: &[i32]) -> Vec<usize> {
    let mut visits: Vec<(usize, bool)> = Vec::with_capacity(2 * letters.len());
    let mut pos = 0usize;
    loop {
        for (t, &l) in letters.iter().enumerate() {
            let i = l.unsigned_abs() as usize - 1;
            if pos == i || pos == i + 1 {
                visits.push((t, (pos == i) == (l > 0)));
                pos = if pos == i { i + 1 } else { i };
            }
        }
        if pos == 0 {
            break;
        }
    }
    debug_assert!(strands >= 1 && visits.len() == 2 * letters.len());
    let len = visits.len();
    let mut best: Option<(usize, usize, bool)> = None;
    let mut seen = alloc::vec![false; letters.len()];
    for start in 0..len {
        seen.iter_mut().for_each(|s| *s = false);
        let mut under_first = 0;
        for k in 0..len {
            let (t, over) = visits[(start + k) % len];
            if !seen[t] {
                seen[t] = true;
                if !over {
                    under_first += 1;
                }
            }
        }
        for (count, descending) in [(under_first, true), (letters.len() - under_first, false)] {
            if best.map_or(true, |b| count < b.0) {
                best = Some((count, start, descending));
            }
        }
    }
    let Some((_, start, descending)) = best else {
        return Vec::new();
    };
    seen.iter_mut().for_each(|s| *s = false);
    let mut out = Vec::new();
    for k in 0..len {
        let (t, over) = visits[(start + k) % len];
        if !seen[t] {
            seen[t] = true;
            if over != descending {
                out.push(t);
            }
        }
    }
    out
}

impl P0Engine {
    pub(crate) fn new(node_budget: usize) -> Self {
        P0Engine {
            memo: BTreeMap::new(),
            nodes: 0,
            node_budget,
        }
    }

    pub(crate) fn nodes(&self) -> usize {
        self.nodes
    }

    pub(crate) fn set_budget(&mut self, node_budget: usize) {
        self.node_budget = node_budget;
    }

    pub(crate) fn link(&mut self, b: &BraidWord) -> Result<LaurentPoly1, HomflyError> {
        let comps = b.components0();
        if comps.len() == 1 {
            return self.knot(b.strands(), b.letters());
        }
        let mut out = (mono(-2, 1) - mono(0, 1)).pow(comps.len() as u32 - 1);
        out = out.shift(2 * b.total_linking() as i32);
        for c in &comps {
            let k = b.restrict0(c);
            out = &out * &self.knot(k.strands(), k.letters())?;
        }
        Ok(out)
    }

    fn knot(&mut self, strands: usize, letters: &[i32]) -> Result<LaurentPoly1, HomflyError> {
        let (strands, w) = simplify_knot(strands, letters);
        if w.is_empty() {
            return Ok(mono(0, 1));
        }
        let key = (strands, canonical_rotation(&w));
        if let Some(p) = self.memo.get(&key) {
            return Ok(p.clone());
        }
        self.nodes += 1;
        if self.nodes > self.node_budget {
            return Err(HomflyError::NodeBudget(self.node_budget));
        }
        let mut cur = w.clone();
        let mut factor = mono(0, 1);
        let mut total = LaurentPoly1::zero(Var::V);
        for t in switch_set(strands, &w) {
            let (a, b) = if cur[t] > 0 { (mono(2, 1), mono(2, 1)) } else { (mono(-2, 1), mono(0, -1)) };
            let mut smoothed = cur.clone();
            smoothed.remove(t);
            let p = self.link(&BraidWord::new_unchecked(strands, smoothed))?;
            total = total + &factor * &(&b * &p);
            factor = &factor * &a;
            cur[t] = -cur[t];
        }
        total = total + factor;
        self.memo.insert(key, total.clone());
        Ok(total)
    }
}
