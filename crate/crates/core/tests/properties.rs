use ::dziobek::dziobek::{
    cayley, psi_prime, scaling_transform, sign_det, t_values, DziobekState, MassVector,
    ResidualVector, SquaredDistances,
};
use ::dziobek::geometry::{congruent, oriented_areas, squared_distances, PlanarConfig, Point};
use ::dziobek::json;
use proptest::prelude::*;

fn convex(u: f64, v: f64, t: f64, s: f64, th: f64, m: MassVector) -> PlanarConfig {
    let dir = Point::new(th.cos(), th.sin());
    PlanarConfig::new([Point::new(-u, 0.0), Point::new(v, 0.0), dir * t, -dir * s], m).unwrap()
}

fn side() -> impl Strategy<Value = f64> {
    0.2f64..3.0
}

fn angle() -> impl Strategy<Value = f64> {
    0.2f64..2.9
}

proptest! {
    #[test]
    fn psi_prime_increases(s1 in 1e-3f64..50.0, gap in 1e-6f64..50.0) {
        prop_assert!(psi_prime(s1 + gap).unwrap() > psi_prime(s1).unwrap());
    }

    #[test]
    fn psi_prime_is_concave_in_the_sign_determinant(w in 0.01f64..10.0, d1 in 1e-3f64..5.0, d2 in 1e-3f64..5.0) {
        let (v, u) = (w + d1, w + d1 + d2);
        let g = |s: f64| psi_prime(s).unwrap();
        prop_assert!(sign_det(u, v, w, g(u), g(v), g(w)) > 0.0);
    }

    #[test]
    fn sign_det_is_antisymmetric(x in prop::array::uniform6(-10.0f64..10.0)) {
        let [u, v, w, uu, vv, ww] = x;
        let a = sign_det(u, v, w, uu, vv, ww);
        let b = sign_det(w, v, u, ww, vv, uu);
        prop_assert!((a + b).abs() <= 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn planar_data_is_planar_and_t_is_constant(u in side(), v in side(), t in side(), s in side(), th in angle()) {
        let p = convex(u, v, t, s, th, MassVector::equal());
        let sq = squared_distances(&p);
        let l2 = sq.scale2();
        prop_assert!(cayley(&sq).abs() < 1e-10 * l2.powi(3));
        let tv = t_values(&sq, &oriented_areas(&p).unwrap());
        for k in 1..4 {
            prop_assert!((tv[k] - tv[0]).abs() < 1e-10 * l2 * l2);
        }
    }

    #[test]
    fn shape_frame_ignores_rigid_motion_and_scale(
        u in side(), v in side(), t in side(), s in side(), th in angle(),
        rot in -3.0f64..3.0, k in 0.1f64..10.0, shift in prop::array::uniform2(-5.0f64..5.0),
    ) {
        let m = MassVector::new(0.7, 1.3).unwrap();
        let p = convex(u, v, t, s, th, m);
        let moved = p.rotated(rot).scaled(k).map_points(|x| x + Point::new(shift[0], shift[1])).unwrap();
        prop_assert!(congruent(&p, &moved, 1e-9));
        prop_assert!(congruent(&p, &p.reflected(), 1e-9));
    }

    #[test]
    fn scaling_composes(e1 in 0.05f64..20.0, e2 in 0.05f64..20.0) {
        let m = MassVector::new(0.5, 0.8).unwrap();
        let sq = SquaredDistances::new(1.0, 0.6, 0.7, 0.6, 0.7, 1.6).unwrap();
        let st = DziobekState::from_distances(sq, &m).unwrap();
        let (a, ma) = scaling_transform(&st, &m, e1).unwrap();
        let (b, mb) = scaling_transform(&a, &ma, e2).unwrap();
        let (c, mc) = scaling_transform(&st, &m, e1 * e2).unwrap();
        for (x, y) in b.sq.as_array().iter().zip(c.sq.as_array()) {
            prop_assert!((x - y).abs() <= 1e-12 * y.abs());
        }
        prop_assert!((b.nu - c.nu).abs() <= 1e-12 * c.nu.abs());
        prop_assert!((mb.alpha - mc.alpha).abs() <= 1e-12 * mc.alpha);
        // Residual norms scale with ψ', so their relative size is unchanged.
        let r0 = ResidualVector::evaluate(&st, &m).unwrap().scaled_cc_max(&st.sq);
        let r1 = ResidualVector::evaluate(&c, &mc).unwrap().scaled_cc_max(&c.sq);
        prop_assert!((r0 - r1).abs() <= 1e-10 * (1.0 + r0));
    }

    #[test]
    fn json_round_trips_states(x in prop::array::uniform6(0.1f64..10.0), nu in -5.0f64..5.0, xi in -5.0f64..5.0) {
        let sq = SquaredDistances::from_array(x).unwrap();
        let st = DziobekState {
            sq,
            areas: ::dziobek::OrientedAreas::new([-0.3, -0.2, 0.25, 0.25]),
            nu,
            xi,
        };
        let text = json::to_string(&st);
        let back: DziobekState = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, st);
    }
}
