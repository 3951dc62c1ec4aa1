use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use scrollkit::algebra::{Fp, Poly};
use scrollkit::cover::{is_admissible, random_admissible, DoubleCover, ProjectionState};
use scrollkit::curve::{Divisor, Point};
use scrollkit::jacobian::is_equivalent;
use scrollkit::riemann_roch::{h0, h1};
use scrollkit::Error;

fn cubic() -> DoubleCover {
    // g = x^3 + x^2 + 1 over F_13, g(0) = 1
    DoubleCover::new(&Poly::from_i64s(&[1, 0, 1, 1], 13)).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn genera_follow_hurwitz() {
    let c = cubic();
    assert_eq!((c.x.genus(), c.c.genus(), c.branch_degree()), (1, 2, 2));
    assert!(c.hurwitz());
    let q = DoubleCover::new(&random_admissible(5, 13, &mut rng(1)).unwrap()).unwrap();
    assert_eq!((q.x.genus(), q.c.genus()), (2, 4));
}

#[test]
fn vanishing_constant_term_is_rejected() {
    let g = Poly::from_i64s(&[0, 1, 0, 1], 13);
    assert!(!is_admissible(&g));
    assert!(matches!(DoubleCover::new(&g), Err(Error::Singular(_))));
}

#[test]
fn branch_and_ramification_of_the_cubic() {
    let c = cubic();
    let (b, r) = c.branch_and_ramification().unwrap();
    let p = 13;
    assert_eq!(b, Divisor::from_terms([(Point::affine(0, 1, p), 1), (Point::affine(0, -1, p), 1)]));
    assert_eq!(r, Divisor::from_terms([(Point::affine(0, 1, p), 1), (Point::affine(0, -1, p), 1)]));
    assert_eq!(c.pushforward(&r).unwrap(), b);
}

#[test]
fn twist_of_the_cubic() {
    let c = cubic();
    let e = c.pushforward_twist(&mut rng(5)).unwrap();
    assert_eq!(e.degree(), -1);
    let (b, _) = c.branch_and_ramification().unwrap();
    assert!(is_equivalent(&c.x, &e.scale(-2), &b).unwrap());
    assert_eq!(h0(&c.x, &e).unwrap(), 0);
    assert!(c.canonical_formula().unwrap());
    assert!(c.verify_segre(&e).unwrap());
}

#[test]
fn degree_three_pullback_on_the_elliptic_base() {
    let c = cubic();
    let e = c.pushforward_twist(&mut rng(5)).unwrap();
    let pts = c.liftable_points();
    let m = Divisor::from_terms([(pts[0], 2), (pts[1], 1)]);
    assert_eq!(m.degree(), 3);
    let pulled = c.pullback(&m).unwrap();
    assert_eq!(pulled.degree(), 6);
    assert_eq!(h0(&c.c, &pulled).unwrap(), 5);
    assert_eq!(h0(&c.x, &m).unwrap() + h0(&c.x, &(&m + &e)).unwrap(), 5);
}

#[test]
fn non_square_fibres_do_not_lift() {
    let c = cubic();
    let p = 13;
    let u = (1..p).map(|u| Fp::new(u as i64, p)).find(|u| !u.is_square()).unwrap();
    let pt = c.x.points_over(u).into_iter().next();
    if let Some(pt) = pt {
        assert!(!c.liftable(&pt));
        assert!(matches!(c.pullback(&Divisor::point(pt)), Err(Error::NonRational(_))));
    }
}

#[test]
fn diagram_and_genus_set() {
    for seed in 0..3 {
        let c = DoubleCover::new(&random_admissible(3 + 2 * (seed as usize % 2), 13, &mut rng(seed)).unwrap()).unwrap();
        assert!(c.involution_genus_check());
        assert!(c.h1_diagram_check().unwrap());
    }
}

#[test]
fn projection_bookkeeping() {
    let c = cubic();
    let start = ProjectionState::new(&c).unwrap();
    let base = start.report().unwrap();
    assert_eq!((base.h0, base.speciality), (2, 1));
    for x in c.c.enumerate_points() {
        assert_eq!(start.project(x).unproject(x).report().unwrap(), base);
        let projected = start.project(x).report().unwrap();
        assert_eq!(projected.speciality, h0(&c.c, &Divisor::point(*x)).unwrap());
    }
    let e = c.pushforward_twist(&mut rng(5)).unwrap();
    let kx = c.x.canonical_divisor().unwrap();
    let b = &kx - &e;
    let mut r = rng(11);
    for _ in 0..10 {
        let m = c.random_liftable(&mut r);
        let lhs = start.twist(&m).unwrap().report().unwrap().h0;
        assert_eq!(lhs, h0(&c.x, &(&b + &m)).unwrap() + h0(&c.x, &(&kx + &m)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn projection_formula_on_random_covers(seed in 0u64..100_000, pi in 0usize..3) {
        let p = [13u32, 17, 19][pi];
        let g = random_admissible(3, p, &mut rng(seed)).unwrap();
        let c = DoubleCover::new(&g).unwrap();
        let e = c.pushforward_twist(&mut rng(seed + 1)).unwrap();
        let mut r = rng(seed + 2);
        for _ in 0..6 {
            let m = c.random_liftable(&mut r);
            prop_assert!(c.projection_formula(&e, &m).unwrap());
            prop_assert!(c.projection_formula_h1(&e, &m).unwrap());
            let pulled = c.pullback(&m).unwrap();
            prop_assert_eq!(h1(&c.c, &pulled).unwrap(), h1(&c.x, &m).unwrap() + h1(&c.x, &(&m + &e)).unwrap());
        }
    }
}
