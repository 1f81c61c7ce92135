use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hadamard_core::linalg::{rat, Rational};
use hadamard_core::product::{implicitize, morphism_check, ImplicitizeOptions, ProductKind};
use hadamard_core::projgeom::{hadamard_point, LineP3, ParamCurve, ProjPoint};
use hadamard_core::quadric::Quadric;

fn opts() -> ImplicitizeOptions {
    ImplicitizeOptions { cap: None, seed: 11 }
}

fn torus_point() -> impl Strategy<Value = ProjPoint> {
    prop::array::uniform4(prop_oneof![-9i64..=-1, 1i64..=9]).prop_map(|c| ProjPoint::from_ints(c).unwrap())
}

fn point() -> impl Strategy<Value = ProjPoint> {
    prop::array::uniform4(-9i64..=9).prop_filter_map("nonzero", |c| ProjPoint::from_ints(c).ok())
}

#[test]
fn generic_line_times_conic_is_a_quartic() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut seen = 0;
    while seen < 5 {
        let l = LineP3::from_points(&ProjPoint::random_torus(&mut rng), &ProjPoint::random_torus(&mut rng));
        let c = ParamCurve::conic(
            &ProjPoint::random_torus(&mut rng),
            &ProjPoint::random_torus(&mut rng),
            &ProjPoint::random_torus(&mut rng),
        );
        let (Ok(l), Ok(c)) = (l, c) else { continue };
        if !morphism_check(&l.parametrization(), &c).is_morphism() {
            continue;
        }
        seen += 1;
        let prod = implicitize(&l.parametrization(), &c, &opts()).unwrap();
        let s = prod.surface().expect("surface image");
        assert_eq!(s.degree(), 4, "{}", s.equation());
    }
}

#[test]
fn coordinate_plane_line_gives_a_plane() {
    let l = LineP3::from_points(&ProjPoint::from_ints([1, 0, 0, 2]).unwrap(), &ProjPoint::from_ints([0, 0, 1, 3]).unwrap())
        .unwrap();
    let r = LineP3::from_points(&ProjPoint::from_ints([1, 2, 3, 4]).unwrap(), &ProjPoint::from_ints([2, -1, 1, 5]).unwrap())
        .unwrap();
    let prod = implicitize(&l.parametrization(), &r.parametrization(), &opts()).unwrap();
    match prod.kind {
        ProductKind::PlaneImage(f) => {
            assert!(f[1] != rat(0));
            assert!(f.iter().enumerate().all(|(i, c)| i == 1 || *c == rat(0)));
        }
        other => panic!("expected a plane, got {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sampled_products_lie_on_the_implicit_quadric(
        a in torus_point(), b in torus_point(), c in torus_point(), d in torus_point(),
        s in -5i64..=5, t in -5i64..=5,
    ) {
        let (Ok(l), Ok(r)) = (LineP3::from_points(&a, &b), LineP3::from_points(&c, &d)) else { return Ok(()) };
        let prod = implicitize(&l.parametrization(), &r.parametrization(), &opts()).unwrap();
        if let Some(w) = prod.surface() {
            let p = l.point_at(&rat(s), &rat(1)).unwrap();
            let q = r.point_at(&rat(t), &rat(1)).unwrap();
            if let Ok(x) = hadamard_point(&p, &q) {
                prop_assert!(w.contains_point(&x));
            }
        }
    }

    #[test]
    fn reconstruction_inverts_scl_for_line_products(
        a in torus_point(), b in torus_point(), c in torus_point(), d in torus_point(),
    ) {
        let (Ok(l), Ok(r)) = (LineP3::from_points(&a, &b), LineP3::from_points(&c, &d)) else { return Ok(()) };
        if !morphism_check(&l.parametrization(), &r.parametrization()).is_morphism() {
            return Ok(());
        }
        let prod = implicitize(&l.parametrization(), &r.parametrization(), &opts()).unwrap();
        let w = prod.surface().expect("line products are surfaces off the coordinate planes");
        prop_assert_eq!(w.degree(), 2);
        let q = Quadric::from_poly(w.equation()).unwrap();
        let centers = q.scl().centers().expect("four reducible sections");
        let back = hadamard_core::identify::reconstruct(&centers).unwrap();
        prop_assert!(back.same_up_to_scale(&q));
    }

    #[test]
    fn quadric_coefficients_round_trip(c in prop::collection::vec(-20i64..=20, 10)) {
        let coeffs: Vec<Rational> = c.iter().map(|&x| rat(x)).collect();
        match Quadric::from_coefficients(&coeffs) {
            Ok(q) => prop_assert_eq!(q.coefficients(), coeffs),
            Err(_) => prop_assert!(c.iter().all(|&x| x == 0)),
        }
    }

    #[test]
    fn hadamard_point_is_commutative(p in point(), q in point()) {
        prop_assert_eq!(hadamard_point(&p, &q).ok(), hadamard_point(&q, &p).ok());
    }
}
