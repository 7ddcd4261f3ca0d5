use mplrc::constructions::{
    build_cor1, build_cor2, build_thm1, build_thm2, build_thm4, build_thm5, build_thm6,
    enumerate_cor1, BuildOptions, CodeBundle,
};
use mplrc::galois::Field;
use mplrc::product::vandermonde_nsc;

fn check(b: &CodeBundle) {
    let v = b.verify().unwrap();
    assert!(
        v.passed(b.optimal_claim),
        "{} {:?}: {} vs {}",
        b.family,
        b.inputs,
        v.report.summary(),
        b.predicted
    );
}

#[test]
fn cor1_rows_verify_up_to_q7() {
    for q in [3u64, 4, 5, 7] {
        let rows = enumerate_cor1(q).unwrap();
        assert!(!rows.is_empty());
        for r in rows {
            let b = build_cor1(q, r.r, r.delta, r.m_codes, r.n_blocks, &BuildOptions::default())
                .unwrap();
            assert_eq!((b.predicted.n, b.predicted.k, b.predicted.d), (r.n, r.k, r.d));
            check(&b);
        }
    }
}

#[test]
fn cor1_rows_sorted() {
    let rows = enumerate_cor1(7).unwrap();
    let keys: Vec<_> = rows.iter().map(|r| (r.n_blocks, r.m_codes, r.delta, r.r)).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted);
    assert!(rows.iter().any(|r| (r.n_blocks, r.m_codes, r.r, r.delta) == (5, 2, 2, 4)
        || r.n_blocks == 7));
}

#[test]
fn inner_family_is_nested_for_small_fields() {
    let o = BuildOptions::default();
    for q in [3u64, 4, 5, 7, 8, 9] {
        for r in 2..=q as usize {
            for delta in 2..=(q as usize + 1 - r) {
                for v in 2..=3 {
                    for tau in 0..=delta.min(r.saturating_sub(2)) {
                        if tau + 1 >= r {
                            continue;
                        }
                        let outer = build_thm4(q, r, delta, v, &o).unwrap();
                        let inner = build_thm5(q, r, delta, v, tau, &o).unwrap();
                        assert!(
                            inner.code.is_subcode_of(&outer.code).unwrap(),
                            "q={q} r={r} δ={delta} v={v} τ={tau}"
                        );
                        assert_eq!(inner.code.dimension(), inner.predicted.k);
                    }
                }
            }
        }
    }
}

#[test]
fn parity_families_verify() {
    let o = BuildOptions::default();
    for (q, r, delta, v, tau) in [(5, 3, 2, 2, 1), (7, 3, 3, 3, 1), (7, 4, 2, 2, 2), (8, 3, 3, 2, 1), (9, 4, 3, 2, 2)] {
        check(&build_thm4(q, r, delta, v, &o).unwrap());
        check(&build_thm5(q, r, delta, v, tau, &o).unwrap());
    }
}

#[test]
fn two_block_family_over_extension_fields() {
    let o = BuildOptions::default();
    check(&build_thm6(8, 4, 2, 2, 1, 2, &o).unwrap());
    check(&build_thm6(9, 4, 3, 2, 1, 2, &o).unwrap());
    check(&build_thm6(7, 5, 2, 2, 1, 3, &o).unwrap());
}

#[test]
fn cyclic_family_instances() {
    let o = BuildOptions::default();
    check(&build_cor2(5, 3, 4, 5, &o).unwrap());
    check(&build_cor2(7, 3, 2, 3, &o).unwrap());
    check(&build_cor2(7, 1, 2, 5, &o).unwrap());
    let err = build_cor2(5, 3, 2, 5, &o).unwrap_err().to_string();
    assert!(err.contains("q+2"), "{err}");
}

#[test]
fn general_grs_family() {
    let o = BuildOptions::default();
    // g = r - 1 is the optimal case
    check(&build_thm1(7, 2, 4, 1, 2, 3, &o).unwrap());
    check(&build_thm1(8, 3, 4, 2, 3, 4, &o).unwrap());
    let b = build_thm1(7, 3, 4, 1, 2, 3, &o).unwrap();
    assert!(!b.optimal_claim);
    let v = b.verify().unwrap();
    assert!(v.passed(false));
    assert!(!v.report.optimal);
}

#[test]
fn composition_of_supplied_codes() {
    let o = BuildOptions::default();
    let c1 = build_thm4(9, 4, 3, 2, &o).unwrap();
    let cn = build_thm5(9, 4, 3, 2, 1, &o).unwrap();
    let f = Field::with_order(9).unwrap();
    let a = vandermonde_nsc(&f, &f.elements().skip(1).take(2).collect::<Vec<_>>(), 2).unwrap();
    let b = build_thm2(&c1.code, &c1.cert, &cn.code, a.matrix()).unwrap();
    check(&b);
    assert_eq!((b.predicted.n, b.predicted.k, b.predicted.d), (22, 13, 4));
    assert!(build_thm2(&cn.code, &cn.cert, &c1.code, a.matrix()).is_err());
}
