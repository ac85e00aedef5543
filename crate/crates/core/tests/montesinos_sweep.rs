use knotcert::montesinos::{
    det_montesinos, ell0_data, ell_family, ell_inf_data, is_lspace, is_lspace_m1, surgery_slopes, Rational,
};
use num_bigint::BigInt;

/// Direct transcription of the criterion in integer arithmetic: an obstruction
/// is a coprime pair `m > a > 0` with `m p1 / q1 < a < m (q2 - p2) / q2` and
/// `m p3 < q3`.
fn brute_force_obstructed(r: [(i64, i64); 3]) -> bool {
    let [(p1, q1), (p2, q2), (p3, q3)] = r;
    let gcd = |mut x: i64, mut y: i64| {
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    };
    let mut m = 1;
    while m * p3 < q3 {
        for a in 1..m {
            if gcd(a, m) == 1 && m * p1 < a * q1 && a * q2 < m * (q2 - p2) {
                return true;
            }
        }
        m += 1;
    }
    false
}

#[test]
fn both_families_are_lspaces() {
    for k in 1..=500i64 {
        let triples = [[(1, 2), (2 * k, 6 * k - 1), (1, 3)], [(1, 2), (2, 5), (2 * k, 14 * k - 1)]];
        for t in triples {
            let r = t.map(|(p, q)| Rational::new(p, q));
            let v = is_lspace_m1(r[0], r[1], r[2]).unwrap();
            assert!(v.is_lspace, "k = {k}, {t:?}");
            if k <= 60 {
                assert!(!brute_force_obstructed(t), "oracle disagrees at k = {k}");
            }
        }
        assert!(is_lspace(&ell0_data(k)).unwrap().unwrap().is_lspace);
        assert!(is_lspace(&ell_inf_data(k)).unwrap().unwrap().is_lspace);
    }
}

#[test]
fn seifert_forms_normalize_to_the_swept_triples() {
    for k in 1..=200i64 {
        let n = ell0_data(k).normalize();
        assert_eq!(n.euler, -1);
        assert_eq!(n.fibers, vec![Rational::new(1, 2), Rational::new(2 * k, 6 * k - 1), Rational::new(1, 3)]);
        let n = ell_inf_data(k).normalize();
        assert_eq!(n.fibers, vec![Rational::new(1, 2), Rational::new(2, 5), Rational::new(2 * k, 14 * k - 1)]);
    }
}

#[test]
fn negative_control_agrees_with_oracle() {
    let t = [(1, 2), (1, 3), (1, 7)];
    assert!(brute_force_obstructed(t));
    let v = is_lspace_m1(Rational::new(1, 2), Rational::new(1, 3), Rational::new(1, 7)).unwrap();
    assert_eq!(v.witness, Some((5, 3)));
}

/// `|e + Σ p/q| · Π q`, computed without rationals.
fn det_oracle(euler: i64, fibers: &[(i64, i64)]) -> i64 {
    let den: i64 = fibers.iter().map(|f| f.1).product();
    let num: i64 = euler * den + fibers.iter().map(|&(p, q)| p * (den / q)).sum::<i64>();
    num.abs()
}

#[test]
fn determinants_sweep() {
    for k in 1..=500i64 {
        let f = ell_family(k).unwrap();
        assert_eq!(f.det_ell, 12 * k * k + 2 * k);
        assert_eq!(f.det_ell0, 6 * k + 1);
        assert!(f.recursion_holds && f.endpoints_match, "k = {k}");
        assert_eq!(det_oracle(0, &[(-2, 3), (1, 2), (2 * k, 6 * k - 1)]), f.det_ell0);
        assert_eq!(det_oracle(0, &[(2, 5), (-1, 2), (2 * k, 14 * k - 1)]), *f.det_ell_inf.last().unwrap());
        assert_eq!(det_montesinos(&ell0_data(k)), BigInt::from(f.det_ell0));
        let s = surgery_slopes(k).unwrap();
        assert!(s.consistent);
        assert_eq!(8 * k * k + (4 * k * k + 2 * k), s.lspace_slope);
    }
    assert_eq!(surgery_slopes(1).unwrap().lspace_slope, 14);
}
