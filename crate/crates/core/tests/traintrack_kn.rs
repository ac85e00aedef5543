use knotcert::traintrack::{
    is_efficient_up_to, is_irreducible, kn_map, kn_real, kn_structural_checks, pf_eigenvalue, primitive_exponent,
    trace_exceeds, transition, EdgeSelector,
};

const TOL: f64 = 1e-9;

#[test]
fn kn_certificates() {
    for n in 3..=8 {
        let m = kn_map(n).unwrap();
        assert_eq!(m.real_edges().len(), 2 * n + 2);
        assert!(m.diagnostics().pre_peripheral.is_empty());
        let t = transition(&m, &EdgeSelector::Real).unwrap();
        assert!(is_irreducible(&t), "n = {n}");
        let pf = pf_eigenvalue(&t, TOL).unwrap();
        assert!(pf.lower > 1.0 + 1e-6, "n = {n}: {pf:?}");
        let pt = pf_eigenvalue(&t.transpose(), TOL).unwrap();
        assert!((pf.value - pt.value).abs() < 2.0 * TOL);
        assert_eq!(is_efficient_up_to(&m, 2 * (2 * n + 2)), None, "n = {n}");
        assert!(kn_structural_checks(&m, n).hold());
        assert!(primitive_exponent(&t).is_some());
        assert!(trace_exceeds(&t, t.size() as u128, 4 * n * n).is_some());
    }
}

#[test]
fn real_block_rows() {
    let n = 3;
    let m = kn_map(n).unwrap();
    let t = transition(&m, &EdgeSelector::Real).unwrap();
    // g(e_i) = e_{n+1+i}: column i has a single 1 in row n+1+i
    for i in 1..n {
        let col: Vec<u64> = t.entries.iter().map(|r| r[i - 1]).collect();
        let mut expected = vec![0; 2 * n + 2];
        expected[n + i] = 1;
        assert_eq!(col, expected);
    }
    let en = &m.map().edge_image[&kn_real(n)];
    assert_eq!(en.len(), 3 * (2 * n) + 3);
}

#[test]
fn all_edges_matrix_has_circle_permutation_block() {
    let m = kn_map(4).unwrap();
    let t = transition(&m, &EdgeSelector::All).unwrap();
    let real = 2 * 4 + 2;
    for j in real..t.size() {
        let col_sum: u64 = t.entries.iter().map(|r| r[j]).sum();
        assert_eq!(col_sum, 1);
        let row_sum: u64 = t.entries[j][real..].iter().sum();
        assert_eq!(row_sum, 1);
    }
}
