use proptest::prelude::*;
use scrollkit::algebra::{BiPoly, Fp, Poly};
use scrollkit::curve::{CurveModel, Divisor, FunctionElem, Point};
use scrollkit::riemann_roch::{h0, h1, rr_space};

fn genus2() -> CurveModel {
    CurveModel::make_hyperelliptic(&Poly::from_i64s(&[0, -1, 0, 0, 0, 1], 7)).unwrap()
}

fn models() -> Vec<CurveModel> {
    vec![
        genus2(),
        CurveModel::make_hyperelliptic(&Poly::from_i64s(&[1, 1, 0, 1], 7)).unwrap(),
        CurveModel::make_hyperelliptic(&Poly::from_i64s(&[5, 1, 0, 2, 0, 0, 0, 1], 11)).unwrap(),
        // even model with two rational points at infinity
        CurveModel::make_hyperelliptic(&Poly::from_i64s(&[1, 0, 3, 0, 0, 1, 1], 11)).unwrap(),
        CurveModel::make_plane(&BiPoly::from_terms(&[(4, 0, 1), (0, 4, 1), (0, 0, 1)], 13)).unwrap(),
        CurveModel::make_plane(&BiPoly::from_terms(&[(0, 3, 1), (3, 0, 1), (1, 1, 2), (0, 0, 1)], 11)).unwrap(),
    ]
}

#[test]
fn pole_order_oracle_at_infinity() {
    // On an odd model 1, x, x^2, ... and y have pole orders 0, 2, 4, ... and 2g+1
    // at infinity, so h0(n inf) counts monomials x^a y^b with 2a + 5b <= n.
    let c = genus2();
    for n in 0..12i64 {
        let mut count = 0;
        for a in 0..=n {
            for b in 0..2 {
                if 2 * a + 5 * b <= n {
                    count += 1;
                }
            }
        }
        let d = Divisor::from_terms([(Point::Infinity(0), n)]);
        assert_eq!(h0(&c, &d).unwrap(), count, "n = {n}");
    }
}

#[test]
fn canonical_classes() {
    for c in models() {
        let k = c.canonical_divisor().unwrap();
        assert_eq!(k.degree(), 2 * c.genus() as i64 - 2);
        assert_eq!(h0(&c, &k).unwrap(), c.genus());
        assert_eq!(h1(&c, &k).unwrap(), 1);
    }
}

#[test]
fn fermat_quartic_canonical_is_a_line_section() {
    let c = &models()[4];
    let k = c.canonical_divisor().unwrap();
    assert_eq!(k.support().len(), 4);
    assert_eq!(h0(c, &k).unwrap(), 3);
}

#[test]
fn basis_elements_have_the_allowed_poles() {
    for (i, c) in models().iter().enumerate() {
        for seed in 0..6 {
            let d = c.random_divisor(2 * c.genus() as i64 + seed as i64 % 3, seed + 10 * i as u64, seed % 2 == 1);
            let rr = rr_space(c, &d).unwrap();
            for h in &rr.basis {
                for pt in c.enumerate_points() {
                    assert!(h.valuation(c, pt).unwrap() >= -d.coeff(pt), "{d} at {pt}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn riemann_roch_identity_holds(model in 0usize..6, deg in -1i64..9, seed in any::<u64>(), signed in any::<bool>()) {
        let cs = models();
        let c = &cs[model];
        let d = c.random_divisor(deg, seed, signed);
        // h0 asserts the identity internally
        let h = h0(c, &d).unwrap();
        let g = c.genus() as i64;
        if d.degree() >= 2 * g - 1 {
            prop_assert_eq!(h1(c, &d).unwrap(), 0);
        }
        for pt in c.enumerate_points().iter().take(4) {
            let hp = h0(c, &(&d - &Divisor::point(*pt))).unwrap();
            prop_assert!(hp <= h && hp + 1 >= h);
        }
    }

    #[test]
    fn valuation_is_additive(seed in any::<u64>()) {
        let c = genus2();
        let p = c.modulus();
        let d = c.random_divisor(5, seed, false);
        let rr = rr_space(&c, &d).unwrap();
        let x = FunctionElem::x(&c).add(&c, &FunctionElem::constant(&c, Fp::new(seed as i64 % 7, p)));
        for h in &rr.basis {
            let prod = h.mul(&c, &x);
            for pt in c.enumerate_points() {
                prop_assert_eq!(prod.valuation(&c, pt).unwrap(), h.valuation(&c, pt).unwrap() + x.valuation(&c, pt).unwrap());
            }
        }
    }
}

mod linear_systems {
    use super::*;
    use scrollkit::riemann_roch::{base_points, is_base_point, is_smooth_system, phi_b_profile, separates};

    fn inf(n: i64) -> Divisor {
        Divisor::from_terms([(Point::Infinity(0), n)])
    }

    #[test]
    fn base_points_of_small_systems() {
        let c = genus2();
        let k = c.canonical_divisor().unwrap();
        assert!(base_points(&c, &k).unwrap().is_empty());
        // L(3 inf) = <1, x>, so inf is a base point of |3 inf|
        assert_eq!(base_points(&c, &inf(3)).unwrap(), vec![Point::Infinity(0)]);
        for pt in c.enumerate_points().iter().filter(|p| !p.is_infinite()) {
            assert_eq!(h0(&c, &(&inf(3) - &Divisor::point(*pt))).unwrap(), 1);
        }
        let e = &models()[1];
        let pt = e.enumerate_points()[0];
        assert!(is_base_point(e, &Divisor::point(pt), &pt).unwrap());
    }

    #[test]
    fn smooth_system_criterion() {
        let c = genus2();
        assert!(is_smooth_system(&c, &Divisor::zero()).unwrap());
        // 2P for a non-Weierstrass P has h0 = 1 and P is a double base point
        let p0 = Point::affine(2, 3, 7);
        assert!(!is_smooth_system(&c, &Divisor::from_terms([(p0, 2)])).unwrap());
        for seed in 0..5 {
            assert!(is_smooth_system(&c, &c.random_divisor(3, seed, false)).unwrap());
        }
    }

    #[test]
    fn separation_examples() {
        let c = genus2();
        let k = c.canonical_divisor().unwrap();
        let b = &k + &Divisor::from_terms([(Point::affine(2, 3, 7), 1), (Point::affine(3, 3, 7), 1)]);
        assert!(!separates(&c, &b).unwrap().holds);
        assert!(separates(&c, &c.random_divisor(5, 3, false)).unwrap().holds);
        let e = &models()[1];
        assert!(separates(e, &e.random_divisor(3, 1, false)).unwrap().holds);
    }

    #[test]
    fn phi_profiles() {
        let c = genus2();
        let prof = phi_b_profile(&c, &inf(3)).unwrap();
        assert!(!prof.birational);
        assert!(phi_b_profile(&c, &c.random_divisor(5, 8, false)).unwrap().very_ample);
        let g3 = &models()[2];
        let b = g3.random_divisor(4, 2, false);
        if h1(g3, &b).unwrap() == 0 {
            assert!(!phi_b_profile(g3, &b).unwrap().birational);
        }
    }
}
