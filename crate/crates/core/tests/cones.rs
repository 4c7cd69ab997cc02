use num_traits::{Signed, Zero};
use parabolic_walls::arith::{int, rat, Rational};
use parabolic_walls::picard::{effective_cone, nef_cone_one_point, weight_to_divisor};
use parabolic_walls::{Cone, DivisorClass, ModuliSetup, Side, Weight};
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn det3(a: &DivisorClass, b: &DivisorClass, c: &DivisorClass) -> Rational {
    a.dot(&b.cross(c))
}

/// Carathéodory oracle for full-rank cones: `v` lies in the cone iff it is a
/// nonnegative combination of some three independent rays, solved by Cramer.
fn caratheodory(rays: &[DivisorClass], v: &DivisorClass) -> bool {
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            for k in j + 1..rays.len() {
                let (a, b, c) = (&rays[i], &rays[j], &rays[k]);
                let d = det3(a, b, c);
                if d.is_zero() {
                    continue;
                }
                let x = det3(v, b, c) / &d;
                let y = det3(a, v, c) / &d;
                let z = det3(a, b, v) / &d;
                if !x.is_negative() && !y.is_negative() && !z.is_negative() {
                    return true;
                }
            }
        }
    }
    false
}

/// Strict membership by perturbation: `v` is interior iff `v − ε·w` stays in
/// the cone for every direction `w` in a fixed spanning set and small `ε`.
fn interior_by_shift(rays: &[DivisorClass], v: &DivisorClass) -> bool {
    let eps = rat(1, 1_000_000);
    let mut dirs = Vec::new();
    for i in 0..3 {
        for s in [1, -1] {
            let mut c = [0i64; 3];
            c[i] = s;
            dirs.push(DivisorClass::from_ints(c[0], c[1], c[2]));
        }
    }
    dirs.iter().all(|w| caratheodory(rays, &(v - &w.scale(&eps))))
}

fn random_class(rng: &mut StdRng) -> DivisorClass {
    let mut c = || rat(rng.gen_range(-40..=40), rng.gen_range(1..=6));
    DivisorClass::new(c(), c(), c())
}

#[test]
fn effective_membership_matches_oracle() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (r, d) in [(2, 1), (3, 1), (5, 2), (7, 3), (11, 4)] {
        let setup = ModuliSetup::two_point(r, d, 2).unwrap();
        let cone = effective_cone(&setup).unwrap();
        for _ in 0..1000 {
            let v = random_class(&mut rng);
            assert_eq!(cone.contains(&v, false).unwrap(), caratheodory(cone.rays(), &v), "{v}");
        }
    }
}

#[test]
fn strict_membership_matches_shift_oracle() {
    let mut rng = StdRng::seed_from_u64(7);
    let setup = ModuliSetup::two_point(5, 2, 2).unwrap();
    let cone = effective_cone(&setup).unwrap();
    let rays = cone.rays().to_vec();
    let mut samples: Vec<DivisorClass> = (0..300).map(|_| random_class(&mut rng)).collect();
    // boundary points: sums of adjacent rays and the rays themselves
    samples.extend(rays.iter().cloned());
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            samples.push(&rays[i] + &rays[j]);
        }
    }
    for v in samples {
        assert_eq!(cone.contains(&v, true).unwrap(), interior_by_shift(&rays, &v), "{v}");
    }
}

#[test]
fn anticanonical_is_interior_everywhere() {
    for r in 2..=20i64 {
        for d in 1..r {
            if num_integer::gcd(r, d) != 1 {
                continue;
            }
            let setup = ModuliSetup::two_point(r, d, 2).unwrap();
            let cone = effective_cone(&setup).unwrap();
            assert!(cone.contains(&DivisorClass::from_ints(r, r, 2), true).unwrap());
        }
    }
}

#[test]
fn one_point_nef_cone_agrees_with_planar_oracle() {
    let setup = ModuliSetup::one_point(5, 2, 2).unwrap();
    let cone = nef_cone_one_point(Side::X, &setup).unwrap();
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..500 {
        let c = int(rng.gen_range(-5..=5));
        let t = int(rng.gen_range(-5..=5));
        let y = if rng.gen_bool(0.2) { int(1) } else { int(0) };
        let v = DivisorClass::new(c.clone(), y.clone(), t.clone());
        let expected = y.is_zero() && !c.is_negative() && !t.is_negative();
        assert_eq!(cone.contains(&v, false).unwrap(), expected, "{v}");
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (0i64..=60, 1i64..=60).prop_filter_map("in [0,1]", |(p, q)| (p <= q).then(|| rat(p, q)))
}

proptest! {
    #[test]
    fn weight_map_is_affine(ax in small_rational(), ay in small_rational(), bx in small_rational(), by in small_rational(), t in small_rational()) {
        let setup = ModuliSetup::two_point(7, 3, 2).unwrap();
        let w = |x: &Rational, y: &Rational| weight_to_divisor(&Weight::new(vec![x.clone(), y.clone()]).unwrap(), &setup).unwrap();
        let one_minus = Rational::from_integer(1.into()) - &t;
        let mx = &ax * &one_minus + &bx * &t;
        let my = &ay * &one_minus + &by * &t;
        let lhs = w(&mx, &my);
        let rhs = &w(&ax, &ay).scale(&one_minus) + &w(&bx, &by).scale(&t);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight_images_are_effective(ax in small_rational(), ay in small_rational()) {
        let setup = ModuliSetup::two_point(5, 2, 2).unwrap();
        let v = weight_to_divisor(&Weight::new(vec![ax, ay]).unwrap(), &setup).unwrap();
        prop_assert!(effective_cone(&setup).unwrap().contains(&v, false).unwrap());
    }

    #[test]
    fn primitive_rays_are_same_ray(a in -30i64..30, b in -30i64..30, c in -30i64..30, k in 1i64..9) {
        prop_assume!(a != 0 || b != 0 || c != 0);
        let v = DivisorClass::from_ints(a * k, b * k, c * k);
        let cone = Cone::new(vec![v.clone()]).unwrap();
        prop_assert!(cone.rays()[0].is_positive_multiple_of(&v));
    }
}
