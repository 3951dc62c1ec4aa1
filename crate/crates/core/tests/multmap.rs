mod common;

use common::*;
use proptest::prelude::*;
use scrollkit::curve::{span_rank, Divisor, FunctionElem};
use scrollkit::multmap::{
    corank, corank_additivity_check, green_hypothesis, is_projectively_normal, lange_hypothesis,
    pencil_trick_kernel_check, NormalityVerdict,
};
use scrollkit::riemann_roch::{base_locus, base_multiplicity, h0, rr_space};

/// Rank of all pairwise products, computed without `product_span`.
fn direct_corank(c: &scrollkit::curve::CurveModel, a: &Divisor, b: &Divisor) -> usize {
    let (ba, bb) = (rr_space(c, a).unwrap().basis, rr_space(c, b).unwrap().basis);
    let prods: Vec<FunctionElem> = ba.iter().flat_map(|f| bb.iter().map(move |g| f.mul(c, g))).collect();
    h0(c, &(a + b)).unwrap() - if prods.is_empty() { 0 } else { span_rank(&prods) }
}

#[test]
fn base_locus_matches_pointwise_multiplicities() {
    for c in [g2_small(), quartic(13)] {
        for seed in 0..12 {
            let d = c.random_divisor(1 + seed as i64 % 5, seed, seed % 3 == 0);
            if h0(&c, &d).unwrap() == 0 {
                assert!(base_locus(&c, &d).is_err());
                continue;
            }
            let locus = base_locus(&c, &d).unwrap();
            for pt in c.enumerate_points() {
                assert_eq!(locus.coeff(pt), base_multiplicity(&c, &d, pt).unwrap() as i64, "{d} at {pt}");
            }
        }
    }
}

#[test]
fn noether_coranks() {
    for (c, want) in [(g2_small(), 0), (g3_hyper(), 1), (quartic(13), 0)] {
        let k = c.canonical_divisor().unwrap();
        let r = corank(&c, &[k.clone(), k.clone()]).unwrap();
        assert_eq!(r.corank, want);
        assert_eq!(direct_corank(&c, &k, &k), want);
    }
}

#[test]
fn empty_factor_is_degenerate() {
    let c = g2_small();
    let r = corank(&c, &[inf(-1), inf(3)]).unwrap();
    assert!(r.degenerate);
    assert_eq!(r.corank, h0(&c, &inf(2)).unwrap());
}

#[test]
fn hyperelliptic_canonical_is_not_normal() {
    let c = g3_hyper();
    let k = c.canonical_divisor().unwrap();
    let rep = is_projectively_normal(&c, &k, 3).unwrap();
    assert_eq!(rep.verdict, NormalityVerdict::NotProjectivelyNormal { k: 2 });
    assert!(!rep.birational);
}

#[test]
fn quartic_hyperplane_class_is_normal() {
    let c = quartic(13);
    let h = c.line_section().unwrap();
    let rep = is_projectively_normal(&c, &h, 3).unwrap();
    assert_eq!(rep.verdict, NormalityVerdict::ProjectivelyNormal);
}

#[test]
fn lange_conditions_force_surjectivity() {
    let c = g2_small();
    let mut seen = 0;
    for seed in 0..40u64 {
        let b1 = c.random_divisor(5, seed, false);
        let b2 = c.random_divisor(4, seed + 100, false);
        let a = c.random_divisor(1, seed + 200, false);
        let l = lange_hypothesis(&c, &b1, &b2, &a).unwrap();
        if l.holds {
            seen += 1;
            assert_eq!(corank(&c, &[b1, b2]).unwrap().corank, 0);
        }
    }
    assert!(seen > 0);
}

#[test]
fn pencil_trick_on_the_canonical_pencil() {
    let c = g2_small();
    let k = c.canonical_divisor().unwrap();
    for n in 0..5 {
        let chk = pencil_trick_kernel_check(&c, &k, &inf(n)).unwrap();
        assert!(chk.holds, "F = {n} inf: {chk:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn corank_ignores_factor_order(s in 0u64..10_000, d1 in 0i64..5, d2 in 0i64..5, d3 in 0i64..4) {
        let c = g2_small();
        let ds = [c.random_divisor(d1, s, false), c.random_divisor(d2, s + 1, false), c.random_divisor(d3, s + 2, false)];
        let a = corank(&c, &ds).unwrap().corank;
        let b = corank(&c, &[ds[2].clone(), ds[0].clone(), ds[1].clone()]).unwrap().corank;
        let d = corank(&c, &[ds[1].clone(), ds[2].clone(), ds[0].clone()]).unwrap().corank;
        prop_assert_eq!(a, b);
        prop_assert_eq!(a, d);
    }

    #[test]
    fn green_hypothesis_implies_surjective(s in 0u64..10_000, da in 2i64..7, db in 3i64..7) {
        let c = g2_small();
        let (a, b) = (c.random_divisor(da, s, false), c.random_divisor(db, s + 7, false));
        if green_hypothesis(&c, &a, &b).unwrap().holds {
            prop_assert_eq!(corank(&c, &[a.clone(), b.clone()]).unwrap().corank, 0);
            prop_assert_eq!(direct_corank(&c, &a, &b), 0);
        }
    }

    #[test]
    fn additivity_under_its_precondition(s in 0u64..10_000, d1 in 2i64..5, d2 in 2i64..5, d3 in 1i64..4) {
        let c = g2_small();
        let (f1, f2, r) = (c.random_divisor(d1, s, false), c.random_divisor(d2, s + 1, false), c.random_divisor(d3, s + 2, false));
        let chk = corank_additivity_check(&c, &f1, &f2, &[r]).unwrap();
        prop_assert!(!chk.precondition || chk.holds);
    }
}
