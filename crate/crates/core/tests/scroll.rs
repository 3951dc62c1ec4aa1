mod common;

use common::*;
use proptest::prelude::*;
use scrollkit::curve::{Divisor, Point};
use scrollkit::jacobian::{is_equivalent, Jacobian};
use scrollkit::multmap::{corank, NormalityVerdict};
use scrollkit::riemann_roch::h0;
use scrollkit::scroll::*;
use scrollkit::Error;

fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn canonical_pair_conditions() {
    let c = g2_large();
    let k = c.canonical_divisor().unwrap();
    assert_eq!(is_canonical_pair(&c, &k).unwrap().status, Status::Fails);
    assert_eq!(is_canonical_pair(&c, &inf(1)).unwrap().status, Status::Fails);
    assert!(is_canonical_pair(&c, &inf(4)).unwrap().holds());
    assert!(is_canonical_pair(&c, &inf(7)).unwrap().holds());
}

#[test]
fn exceptional_classes_on_genus_two() {
    let c = g2_large();
    let four = defines_canonical_scroll(&c, &inf(4)).unwrap();
    assert_eq!(four.exception, Some(ScrollException::KPlusPencil));
    let three = defines_canonical_scroll(&c, &inf(3)).unwrap();
    assert_eq!(three.exception, Some(ScrollException::KPlusWeierstrass));
    assert_eq!(defines_canonical_scroll(&c, &inf(5)).unwrap().status, Status::Holds);
}

#[test]
fn bisecant_classification_needs_a_pair() {
    let c = g2_large();
    assert!(matches!(classify_bisecant(&c, &inf(1)), Err(Error::Domain(_))));
    let b = classify_bisecant(&c, &inf(4)).unwrap();
    assert_eq!(b.case, BisecantCase::KPlusPencil);
    assert_eq!(b.hyperelliptic_c, Some(true));
    let five = classify_bisecant(&c, &inf(5)).unwrap();
    assert_eq!((five.case, five.criterion), (BisecantCase::NoCase, Some(false)));
}

#[test]
fn twin_is_canonical_and_speciality_one() {
    let c = g3_hyper();
    let s = PolarizedScroll::canonical(&c, &inf(7)).unwrap();
    assert!(is_equivalent(&c, &s.twin(), &c.canonical_divisor().unwrap()).unwrap());
    assert_eq!(s.speciality().unwrap(), 1);
    assert_eq!(s.degree(), 11);
    assert_eq!(s.ambient_dim().unwrap(), 5 + 3 - 1);
}

#[test]
fn hypersurface_count_from_first_principles() {
    let c = g2_large();
    let k = c.canonical_divisor().unwrap();
    for b in [inf(3), inf(5)] {
        let s = PolarizedScroll::canonical(&c, &b).unwrap();
        let n = (h0(&c, &b).unwrap() + h0(&c, &k).unwrap()) as i64 - 1;
        // sections of 2H: b-degrees 2b, 2b + e, 2b + 2e with e = K - b
        let e = &k - &b;
        let sections: i64 = (0..=2).map(|i| h0(&c, &(&b.scale(2) + &e.scale(i))).unwrap() as i64).sum();
        let s2: i64 = (0..=2)
            .map(|i| {
                let mut f = vec![&b + &e; i];
                f.extend(std::iter::repeat(b.clone()).take(2 - i));
                corank(&c, &f).unwrap().corank as i64
            })
            .sum();
        assert_eq!(s.hypersurface_count(2).unwrap(), binom(n + 2, 2) - sections + s2);
        assert_eq!(s.hypersurface_count(1).unwrap(), 0);
    }
    // the scroll of 3 inf lies on exactly one quadric
    assert_eq!(PolarizedScroll::canonical(&c, &inf(3)).unwrap().hypersurface_count(2).unwrap(), 1);
}

#[test]
fn principal_decomposition() {
    let q = quartic(13);
    let b = q.random_divisor(7, 1, false);
    assert!(PolarizedScroll::canonical(&q, &b).unwrap().principal_check().unwrap().holds);
    let h = g3_hyper();
    assert!(PolarizedScroll::canonical(&h, &inf(7)).unwrap().principal_check().unwrap().holds);
}

#[test]
fn mixed_corank_for_three_infinity() {
    let c = g2_large();
    let s = PolarizedScroll::canonical(&c, &inf(3)).unwrap();
    let t = s.corank_terms(2).unwrap();
    assert_eq!(t.terms[1], 1);
    assert!(!s.principal_check().unwrap().holds);
}

#[test]
fn cubic_identity_for_a_base_point_free_class() {
    let c = g2_small();
    let b = Divisor::from_terms([(Point::affine(3, 3, 7), 2), (Point::Infinity(0), 1)]);
    let s = PolarizedScroll::canonical(&c, &b).unwrap();
    let t = s.corank_terms(3).unwrap();
    assert_eq!(t.terms, vec![4, 1, 0, 1]);
    assert_eq!(t.total, t.k_side() + t.b_side() + 1);
}

#[test]
fn normality_failure_sits_on_the_canonical_side() {
    let c = g2_large();
    let n = normality_verdict(&c, &inf(5), 4).unwrap();
    assert_eq!(n.verdict, NormalityVerdict::NotProjectivelyNormal { k: 3 });
    let f = n.failure.unwrap();
    assert_eq!((f.k_side, f.b_side, f.mixed), (1, 0, 0));
    assert!(matches!(normality_verdict(&c, &inf(4), 4), Err(Error::Domain(_))));
}

#[test]
fn elliptic_normality() {
    let c = elliptic();
    assert_eq!(normality_verdict(&c, &inf(3), 4).unwrap().verdict, NormalityVerdict::ProjectivelyNormal);
}

#[test]
fn degree_two_canonical_classes_are_two_torsion() {
    let c = g2_split();
    let ex = existence_exhaustive(&c, 2).unwrap();
    let t = Jacobian::new(&c).unwrap().two_torsion().unwrap().len();
    assert_eq!(ex.classes, 128);
    assert_eq!(ex.canonical, t - 1);
    assert_eq!(ex.indeterminate, 0);
}

#[test]
fn high_degree_scan_is_exact() {
    let c = g2_large();
    let s = existence_scan(&c, 4, 60, 9).unwrap();
    assert_eq!(s.canonical, 60);
    assert!((s.fraction - 1.0).abs() < 1e-12);
}

#[test]
fn special_configurations() {
    let c = g2_small();
    let pair = [Point::affine(2, 3, 7), Point::affine(2, 4, 7)];
    assert!(c.contains(&pair[0]) && c.contains(&pair[1]));
    assert!(is_special_configuration(&c, &pair));
    assert!(!is_special_configuration(&c, &[Point::affine(2, 3, 7), Point::affine(3, 3, 7)]));
}

#[test]
fn projection_speciality_on_the_quartic() {
    let q = quartic(13);
    let pts: Vec<Point> = q.enumerate_points().iter().take(3).copied().collect();
    let one = projection_speciality(&q, &pts[..1]).unwrap();
    assert_eq!((one.span_dim, one.i_new), (0, 1));
    let three = projection_speciality(&q, &pts).unwrap();
    let a = Divisor::from_terms(pts.iter().map(|p| (*p, 1)));
    assert_eq!(three.span_dim, 3 - h0(&q, &a).unwrap() as i64);
    assert!(matches!(projection_speciality(&g3_hyper(), &pts[..0]), Err(Error::Unsupported(_))));
}

#[test]
fn product_surface_is_rejected() {
    let c = g2_large();
    let surface = RuledSurface::new(&c, Divisor::zero());
    assert!(matches!(surface.fixed_space_dims(), Err(Error::Domain(_))));
    let dims = RuledSurface::new(&c, &c.canonical_divisor().unwrap() - &inf(4)).fixed_space_dims().unwrap();
    assert_eq!((dims.dim_2x1, dims.dim_f0, dims.dim_f1), (5, 3, 1));
}

#[test]
fn family_probe_counts() {
    let c = g2_small();
    let p = divisor_family_probe(&c, 4, 40, 3).unwrap();
    assert_eq!((p.samples, p.smooth, p.nonspecial), (40, 40, 40));
    let low = divisor_family_probe(&c, 1, 40, 3).unwrap();
    assert_eq!(low.speciality.get(&1).copied().unwrap_or(0), low.samples);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn sampled_pairs_have_speciality_one(seed in 0u64..100_000, deg in 3i64..6) {
        let c = g2_large();
        let b = c.random_divisor(deg, seed, false);
        if is_canonical_pair(&c, &b).unwrap().holds() {
            let s = PolarizedScroll::canonical(&c, &b).unwrap();
            prop_assert_eq!(s.speciality().unwrap(), 1);
            prop_assert_eq!(s.hypersurface_count(1).unwrap(), 0);
        }
    }

    #[test]
    fn corank_rows_add_up(seed in 0u64..100_000) {
        let c = g2_small();
        let b = c.random_divisor(5, seed, false);
        let t = PolarizedScroll::canonical(&c, &b).unwrap().corank_terms(2).unwrap();
        prop_assert_eq!(t.total, t.terms.iter().sum::<usize>());
        prop_assert_eq!(t.b_side() + t.k_side() + t.mixed(), t.total);
    }
}
