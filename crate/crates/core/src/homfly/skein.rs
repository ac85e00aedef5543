//! Reference skein resolver: switches every crossing first met from below
//! until the diagram is a stacked unlink, recursing only on smoothings.
//! Deliberately plain (no destabilization, exact-word memo) so that it stays
//! independent of the Hecke and p⁰ engines.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::braid::BraidWord;
use crate::poly::{LaurentPoly2, Var};

#[derive(Default)]
pub(crate) struct SkeinOracle {
    memo: BTreeMap<(usize, Vec<i32>), LaurentPoly2>,
}

fn delta() -> LaurentPoly2 {
    LaurentPoly2::monomial(Var::V, -1, -1, 1) - LaurentPoly2::monomial(Var::V, 1, -1, 1)
}

/// Letter indices that must be switched so that, traversing components in
/// order of their smallest position, every crossing is first met from above.
fn wrong_crossings(strands: usize, letters: &[i32]) -> (Vec<usize>, usize) {
    let word = BraidWord::new_unchecked(strands, letters.to_vec());
    let comps = word.components0();
    let mut seen = alloc::vec![false; letters.len()];
    let mut wrong = Vec::new();
    for comp in &comps {
        let start = comp[0];
        let mut pos = start;
        loop {
            for (t, &l) in letters.iter().enumerate() {
                let i = l.unsigned_abs() as usize - 1;
                if pos != i && pos != i + 1 {
                    continue;
                }
                let over = (pos == i) == (l > 0);
                if !seen[t] {
                    seen[t] = true;
                    if !over {
                        wrong.push(t);
                    }
                }
                pos = if pos == i { i + 1 } else { i };
            }
            if pos == start {
                break;
            }
        }
    }
    (wrong, comps.len())
}

impl SkeinOracle {
    pub(crate) fn eval(&mut self, strands: usize, letters: &[i32]) -> LaurentPoly2 {
        let key = (strands, letters.to_vec());
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let (wrong, comps) = wrong_crossings(strands, letters);
        let mut cur = letters.to_vec();
        let mut factor = LaurentPoly2::one(Var::V);
        let mut total = LaurentPoly2::zero(Var::V);
        for t in wrong {
            let (a, b) = if cur[t] > 0 {
                (LaurentPoly2::monomial(Var::V, 2, 0, 1), LaurentPoly2::monomial(Var::V, 1, 1, 1))
            } else {
                (LaurentPoly2::monomial(Var::V, -2, 0, 1), LaurentPoly2::monomial(Var::V, -1, 1, -1))
            };
            let mut smoothed = cur.clone();
            smoothed.remove(t);
            let p0 = self.eval(strands, &smoothed);
            total = total + &factor * &(&b * &p0);
            factor = &factor * &a;
            cur[t] = -cur[t];
        }
        total = total + factor * delta().pow(comps as u32 - 1);
        self.memo.insert(key, total.clone());
        total
    }
}
