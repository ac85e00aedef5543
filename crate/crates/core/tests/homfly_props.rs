mod common;

use common::{positive_word, word};
use knotcert::braid::{family, parse_braid, x_antidiagonal, Family};
use knotcert::homfly::{coefficient_polys, homfly, homfly_skein, Engine};
use knotcert::{BraidWord, LaurentPoly1, LaurentPoly2, Var};
use num_bigint::BigInt;
use proptest::prelude::*;

fn with_letters(b: &BraidWord, letters: Vec<i32>) -> BraidWord {
    BraidWord::new(b.strands(), letters).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn skein_relation(b in word(4, 10), pick in any::<prop::sample::Index>()) {
        prop_assume!(!b.is_empty());
        let j = pick.index(b.len());
        let mut plus = b.letters().to_vec();
        plus[j] = plus[j].abs();
        let mut minus = plus.clone();
        minus[j] = -minus[j];
        let mut zero = plus.clone();
        zero.remove(j);
        let pp = homfly(&with_letters(&b, plus)).unwrap();
        let pm = homfly(&with_letters(&b, minus)).unwrap();
        let p0 = homfly(&with_letters(&b, zero)).unwrap();
        let lhs = &pp.shift(-1, 0) - &pm.shift(1, 0);
        prop_assert_eq!(lhs, p0.shift(0, 1));
    }

    #[test]
    fn markov_conjugation(b in word(4, 10), cut in any::<prop::sample::Index>()) {
        let k = cut.index(b.len() + 1);
        let mut rotated = b.letters()[k..].to_vec();
        rotated.extend_from_slice(&b.letters()[..k]);
        prop_assert_eq!(homfly(&b).unwrap(), homfly(&with_letters(&b, rotated)).unwrap());
    }

    #[test]
    fn markov_stabilization(b in word(4, 9), neg in any::<bool>()) {
        let s = b.strands();
        let mut letters = b.letters().to_vec();
        letters.push(if neg { -(s as i32) } else { s as i32 });
        let stab = BraidWord::new(s + 1, letters).unwrap();
        prop_assert_eq!(homfly(&stab).unwrap(), homfly(&b).unwrap());
    }

    #[test]
    fn conjugation_invariance(b in word(4, 8), c in word(4, 4)) {
        let s = b.strands().max(c.strands());
        let b = b.with_strands(s).unwrap();
        let c = c.with_strands(s).unwrap();
        prop_assert_eq!(homfly(&b.conjugate(&c).unwrap()).unwrap(), homfly(&b).unwrap());
    }

    #[test]
    fn hecke_matches_skein_oracle(b in word(4, 8)) {
        prop_assert_eq!(homfly(&b).unwrap(), homfly_skein(&b));
    }

    #[test]
    fn p0_dual_path(b in word(5, 12)) {
        let mut e = Engine::default();
        let fast = e.p0(&b).unwrap();
        let via = coefficient_polys(&homfly(&b).unwrap(), b.component_count()).unwrap().p0();
        prop_assert_eq!(fast, via);
    }

    #[test]
    fn decomposition_reassembles(b in word(4, 10)) {
        let p = homfly(&b).unwrap();
        let d = coefficient_polys(&p, b.component_count()).unwrap();
        prop_assert!(d.coeffs.last().map_or(true, |c| !c.is_zero()));
        prop_assert_eq!(d.reassemble(), p);
    }

    #[test]
    fn two_component_product_law(b in word(4, 10)) {
        prop_assume!(b.component_count() == 2);
        let via = coefficient_polys(&homfly(&b).unwrap(), 2).unwrap().p0();
        let k1 = coefficient_polys(&homfly(&b.component_braid(0).unwrap()).unwrap(), 1).unwrap().p0();
        let k2 = coefficient_polys(&homfly(&b.component_braid(1).unwrap()).unwrap(), 1).unwrap().p0();
        let lk = b.linking_number(0, 1).unwrap() as i32;
        let unlink = LaurentPoly1::from_terms(Var::V, [(-2, 1), (0, -1)]);
        prop_assert_eq!(via, (&unlink * &(&k1 * &k2)).shift(2 * lk));
    }

    #[test]
    fn degree_bound(b in positive_word(5, 12)) {
        let p = Engine::default().p0(&b).unwrap();
        let bound = (b.strands() + b.len()) as i32 - b.component_count() as i32;
        prop_assert!(p.degree().unwrap() <= bound);
    }

    #[test]
    fn alexander_symmetry(b in word(4, 10)) {
        prop_assume!(b.component_count() == 1);
        let mut e = Engine::default();
        let a = e.alexander(&b).unwrap();
        let mirrored = LaurentPoly1::from_terms(Var::T, a.terms().map(|(k, c)| (-k, c.clone())));
        prop_assert_eq!(&a, &mirrored);
        prop_assert_eq!(a.eval_unit(1), BigInt::from(1));
        let det = e.determinant(&b).unwrap();
        prop_assert!(det.bit(0));
    }
}

#[test]
fn antidiagonal_reading_is_the_same_braid() {
    for n in 1..=3 {
        let x = family(Family::X, n).unwrap();
        let y = x_antidiagonal(n);
        assert_eq!(homfly(&x).unwrap(), homfly(&y).unwrap(), "n = {n}");
        assert!(common::is_trivial_braid(&x.compose(&y.inverse()).unwrap()));
    }
}

#[test]
fn unlinks() {
    for c in 1..=4 {
        let p = homfly(&BraidWord::identity(c)).unwrap();
        let delta = LaurentPoly2::from_terms(Var::V, [(-1, -1, 1), (1, -1, -1)]);
        assert_eq!(p, delta.pow(c as u32 - 1));
    }
    assert_eq!(homfly(&parse_braid("1 2 3", None).unwrap()).unwrap(), LaurentPoly2::one(Var::V));
}
