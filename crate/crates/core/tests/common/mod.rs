#![allow(dead_code)]

use knotcert::BraidWord;
use proptest::prelude::*;
use rand::Rng;

/// Nonempty braid words with `2..=max_strands` strands and up to `max_len` letters.
pub fn word(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |s| {
        let letter = (1..s as i32, any::<bool>()).prop_map(|(i, neg)| if neg { -i } else { i });
        proptest::collection::vec(letter, 0..=max_len).prop_map(move |l| BraidWord::new(s, l).unwrap())
    })
}

pub fn positive_word(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |s| {
        proptest::collection::vec(1..s as i32, 1..=max_len).prop_map(move |l| BraidWord::new(s, l).unwrap())
    })
}

pub fn sample_word<R: Rng>(rng: &mut R, max_strands: usize, max_len: usize, positive: bool) -> BraidWord {
    let s = rng.gen_range(2..=max_strands);
    let n = rng.gen_range(1..=max_len);
    let letters = (0..n)
        .map(|_| {
            let i = rng.gen_range(1..s as i32);
            if !positive && rng.gen_bool(0.5) {
                -i
            } else {
                i
            }
        })
        .collect();
    BraidWord::new(s, letters).unwrap()
}

/// Freely reduced word in the free group on `x_1..x_n`; `-k` is `x_k⁻¹`.
fn push_reduced(out: &mut Vec<i32>, g: i32) {
    if out.last() == Some(&-g) {
        out.pop();
    } else {
        out.push(g);
    }
}

fn image_of_generator(letter: i32, g: i32) -> Vec<i32> {
    // σ_i: x_i ↦ x_i x_{i+1} x_i⁻¹, x_{i+1} ↦ x_i; σ_i⁻¹: x_i ↦ x_{i+1}, x_{i+1} ↦ x_{i+1}⁻¹ x_i x_{i+1}
    let i = letter.abs();
    let k = g.abs();
    let base = if letter > 0 {
        if k == i {
            vec![i, i + 1, -i]
        } else if k == i + 1 {
            vec![i]
        } else {
            vec![k]
        }
    } else if k == i {
        vec![i + 1]
    } else if k == i + 1 {
        vec![-(i + 1), i, i + 1]
    } else {
        vec![k]
    };
    if g > 0 {
        base
    } else {
        base.iter().rev().map(|x| -x).collect()
    }
}

/// Images of the free generators under the Artin action; a faithful
/// representation of the braid group, independent of any normal form.
pub fn artin_action(b: &BraidWord) -> Vec<Vec<i32>> {
    let n = b.strands() as i32;
    let mut images: Vec<Vec<i32>> = (1..=n).map(|k| vec![k]).collect();
    for &l in b.letters().iter().rev() {
        images = images
            .into_iter()
            .map(|w| {
                let mut out = Vec::new();
                for g in w {
                    for h in image_of_generator(l, g) {
                        push_reduced(&mut out, h);
                    }
                }
                out
            })
            .collect();
    }
    images
}

pub fn is_trivial_braid(b: &BraidWord) -> bool {
    artin_action(b)
        .iter()
        .enumerate()
        .all(|(k, w)| w.as_slice() == [k as i32 + 1])
}
