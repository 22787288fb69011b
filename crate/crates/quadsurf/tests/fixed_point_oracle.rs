//! Fixed-point sets against enumeration of a torsion grid.

mod common;

use common::*;
use quadsurf::fixed_points::{common_fixed_set, fixed_set, FixedPointSet};
use quadsurf::matrix_group::element_order;
use quadsurf::quad_order::ratio;
use quadsurf::torus::{AffineAut, TorusPoint};
use quadsurf::{Mat2, RingSpec};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_finite(rng: &mut StdRng, r: RingSpec) -> Mat2 {
    loop {
        let m = random_gl(rng, r, 6);
        if matches!(element_order(&m), Some(n) if n > 1) {
            return m;
        }
    }
}

fn random_translation(rng: &mut StdRng, q: i64) -> TorusPoint {
    TorusPoint::new([0; 4].map(|_| ratio(rng.gen_range(0..q), q)))
}

#[test]
fn minus_identity_has_sixteen() {
    for r in catalog_rings() {
        let h = AffineAut::linear(Mat2::identity(r).neg()).unwrap();
        assert_eq!(fixed_set(&h).count(), 16);
        assert_eq!(grid_fixed_count(&h, 2), 16);
    }
}

#[test]
fn isolated_fixed_points_match_enumeration() {
    let mut rng = StdRng::seed_from_u64(6);
    let mut checked = 0;
    while checked < 120 {
        let r = catalog_rings()[rng.gen_range(0..5)];
        let m = random_finite(&mut rng, r);
        let h0 = AffineAut::linear(m.clone()).unwrap();
        let a = minus_identity(&h0);
        if abs_det(&a) == 0 {
            continue;
        }
        let led = largest_elementary_divisor(&a);
        let q = [1, 2, 3, 4, 6][rng.gen_range(0..5)];
        let h = AffineAut::new(random_translation(&mut rng, q), m).unwrap();
        let n = led * denominator(h.translation_part());
        if n > 24 {
            continue;
        }
        let fs = fixed_set(&h);
        assert!(matches!(fs, FixedPointSet::Finite { .. }));
        assert_eq!(fs.count() as i128, abs_det(&a), "{:?}", h);
        assert_eq!(grid_fixed_count(&h, n), fs.count(), "{:?}", h);
        assert!(fs.points().iter().all(|x| h.apply(x) == *x));
        checked += 1;
    }
}

#[test]
fn returned_points_are_fixed() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..200 {
        let r = catalog_rings()[rng.gen_range(0..5)];
        let q = [1, 2, 3, 4][rng.gen_range(0..4)];
        let h = AffineAut::new(random_translation(&mut rng, q), random_finite(&mut rng, r)).unwrap();
        let fs = fixed_set(&h);
        assert!(fs.points().iter().all(|x| h.apply(x) == *x), "{:?}", h);
        if let FixedPointSet::PositiveDimensional { dimension, .. } = fs {
            assert_eq!(dimension, 1);
        }
    }
}

#[test]
fn common_fixed_points_are_fixed_by_every_generator() {
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..60 {
        let r = catalog_rings()[rng.gen_range(0..5)];
        let hs: Vec<AffineAut> = (0..2)
            .map(|_| AffineAut::new(random_translation(&mut rng, 2), random_finite(&mut rng, r)).unwrap())
            .collect();
        let c = common_fixed_set(&hs);
        for x in c.points() {
            assert!(hs.iter().all(|h| h.apply(x) == *x));
        }
        for h in &hs {
            if fixed_set(h).is_empty() {
                assert!(c.is_empty());
            }
        }
    }
}
