use proptest::prelude::*;
use scrollkit::algebra::Poly;
use scrollkit::curve::{CurveModel, Divisor, Point};
use scrollkit::jacobian::{is_equivalent, Jacobian};

fn curve(coeffs: &[i64], p: u32) -> CurveModel {
    CurveModel::make_hyperelliptic(&Poly::from_i64s(coeffs, p)).unwrap()
}

fn genus2() -> CurveModel {
    curve(&[0, -1, 0, 0, 0, 1], 7)
}

/// Point count over F_{p^2} = F_p[i]/(i^2 - n), with arithmetic done by hand.
fn count_over_quadratic_extension(f: &[i64], p: i64) -> i64 {
    let n = (2..p).find(|&a| (0..p).all(|b| (b * b - a).rem_euclid(p) != 0)).unwrap();
    let mul = |a: (i64, i64), b: (i64, i64)| ((a.0 * b.0 + n * a.1 * b.1) % p, (a.0 * b.1 + a.1 * b.0) % p);
    let pow = |mut a: (i64, i64), mut e: i64| {
        let mut r = (1, 0);
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        r
    };
    let mut total = 1; // one point at infinity on an odd model
    for a in 0..p {
        for b in 0..p {
            let mut v = (0, 0);
            for &c in f.iter().rev() {
                v = mul(v, (a, b));
                v = ((v.0 + c).rem_euclid(p), v.1);
            }
            total += match v {
                (0, 0) => 1,
                _ if pow(v, (p * p - 1) / 2) == (1, 0) => 2,
                _ => 0,
            };
        }
    }
    total
}

#[test]
fn group_order_matches_point_count_oracle() {
    for (f, p) in [(vec![0, -1, 0, 0, 0, 1], 7i64), (vec![1, 2, 0, 3, 0, 1], 11), (vec![3, 1, 4, 0, 2, 1], 5)] {
        let c = curve(&f, p as u32);
        let n1 = c.enumerate_points().len() as i64;
        let n2 = count_over_quadratic_extension(&f, p);
        let expect = (n1 * n1 + n2) / 2 - p;
        assert_eq!(Jacobian::new(&c).unwrap().order().unwrap() as i64, expect, "f = {f:?} over F_{p}");
    }
    // elliptic: J = E
    let e = curve(&[1, 1, 0, 1], 7);
    assert_eq!(Jacobian::new(&e).unwrap().order().unwrap(), e.enumerate_points().len());
}

#[test]
fn two_torsion_counts() {
    let c = curve(&[0, -1, 0, 0, 0, 1], 5);
    let j = Jacobian::new(&c).unwrap();
    let t = j.two_torsion().unwrap();
    assert_eq!(t.len(), 16);
    assert!(t.iter().any(|x| x.is_identity()));
    assert!(t.iter().all(|x| j.double(x).unwrap().is_identity()));
    let e = curve(&[0, -1, 0, 1], 7);
    assert_eq!(Jacobian::new(&e).unwrap().two_torsion().unwrap().len(), 4);
    assert!(Jacobian::new(&genus2()).unwrap().two_torsion().is_err());
}

#[test]
fn square_roots_of_identity_are_the_torsion() {
    let c = curve(&[0, -1, 0, 0, 0, 1], 5);
    let j = Jacobian::new(&c).unwrap();
    let mut roots = j.square_roots(&j.identity()).unwrap();
    let mut tors = j.two_torsion().unwrap();
    roots.sort_by_key(|x| format!("{x:?}"));
    tors.sort_by_key(|x| format!("{x:?}"));
    assert_eq!(roots, tors);
}

#[test]
fn fibre_size_law() {
    let c = genus2();
    let j = Jacobian::new(&c).unwrap();
    let torsion = j.square_roots(&j.identity()).unwrap().len();
    let elems = j.elements().unwrap();
    for (i, x0) in elems.iter().step_by(elems.len() / 50 + 1).enumerate() {
        let c2 = j.double(x0).unwrap();
        let roots = j.square_roots(&c2).unwrap();
        assert!(roots.contains(x0));
        assert_eq!(roots.len(), torsion, "sample {i}");
    }
}

#[test]
fn budget_is_enforced() {
    let c = curve(&[1, 2, 0, 3, 0, 1], 10007);
    let j = Jacobian::new(&c).unwrap();
    assert!(matches!(j.square_roots(&j.identity()), Err(scrollkit::Error::Budget(_))));
}

#[test]
fn equivalence_examples() {
    let c = genus2();
    let p = 7;
    let two_w = Divisor::from_terms([(Point::affine(0, 0, p), 2)]);
    let two_inf = Divisor::from_terms([(Point::Infinity(0), 2)]);
    assert!(is_equivalent(&c, &two_w, &two_inf).unwrap());
    let w1 = Divisor::point(Point::affine(0, 0, p));
    let w2 = Divisor::point(Point::affine(1, 0, p));
    assert!(!is_equivalent(&c, &w1, &w2).unwrap());
    assert!(is_equivalent(&c, &w1, &w1).unwrap());
    assert!(is_equivalent(&c, &w1, &two_inf).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn group_axioms(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let c = curve(&[1, 2, 0, 3, 0, 1], 101);
        let j = Jacobian::new(&c).unwrap();
        let [a, b, d] = [s1, s2, s3].map(|s| j.class_of(&c.random_divisor(2, s, true)).unwrap());
        prop_assert_eq!(j.add(&j.add(&a, &b).unwrap(), &d).unwrap(), j.add(&a, &j.add(&b, &d).unwrap()).unwrap());
        prop_assert_eq!(j.add(&a, &j.identity()).unwrap(), a.clone());
        prop_assert!(j.add(&a, &j.neg(&a)).unwrap().is_identity());
        prop_assert_eq!(j.add(&a, &b).unwrap(), j.add(&b, &a).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn class_map_is_additive(s1 in any::<u64>(), s2 in any::<u64>(), d1 in 0i64..5, d2 in 0i64..5) {
        let c = curve(&[0, 1, 3, 0, 0, 0, 0, 1], 13);
        let j = Jacobian::new(&c).unwrap();
        let a = c.random_divisor(d1, s1, false);
        let b = c.random_divisor(d2, s2, false);
        prop_assert_eq!(j.class_of(&(&a + &b)).unwrap(), j.add(&j.class_of(&a).unwrap(), &j.class_of(&b).unwrap()).unwrap());
    }

    #[test]
    fn cantor_agrees_with_riemann_roch(s1 in any::<u64>(), s2 in any::<u64>(), deg in 0i64..4) {
        // small p so that equivalent pairs actually occur
        let c = genus2();
        let a = c.random_divisor(deg, s1, false);
        let b = c.random_divisor(deg, s2, false);
        // is_equivalent errors if the two computations disagree
        is_equivalent(&c, &a, &b).unwrap();
    }
}
