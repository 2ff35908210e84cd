mod support;

use std::collections::BTreeSet;

use dp5_core::casework::tables::{enumerate_table, ConstraintSystem, TableCase, TableRow};
use dp5_core::cohomology::{h0, is_effective, scan_moving_halves, verify_no_moving_half};
use dp5_core::curves::{is_irreducible, line_classes, minus_one_curves, minus_two_curves, ruling_classes};
use dp5_core::lattice::canonical_class;
use dp5_core::{Configuration, DivisorClass};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::plane_curves::{general_points, plane_curve_h0};

#[test]
fn h0_agrees_with_plane_curve_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pts = general_points(&mut rng);
    for d in 0..=4i64 {
        for m1 in -1..=2i64 {
            for m2 in -1..=2 {
                for m3 in -1..=2 {
                    for m4 in -1..=2 {
                        let m = [m1, m2, m3, m4];
                        let c = DivisorClass::new([d, -m1, -m2, -m3, -m4]);
                        let ours = h0(&c, Configuration::General).unwrap();
                        assert_eq!(ours, BigInt::from(plane_curve_h0(d, m, &pts)), "d={d} m={m:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn oracle_independent_of_point_choice() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (p, q) = (general_points(&mut rng), general_points(&mut rng));
    for (d, m) in [(3, [1, 1, 1, 1]), (4, [2, 2, 1, 1]), (2, [1, 1, 1, 0]), (5, [2, 2, 2, 2])] {
        assert_eq!(plane_curve_h0(d, m, &p), plane_curve_h0(d, m, &q));
    }
}

/// Every root of square −2 orthogonal to K in a small box: a (−2)-curve of the
/// configuration iff irreducible; effective iff a non-negative sum of (−2)-curves.
#[test]
fn minus_two_root_sweep() {
    let k = canonical_class(Configuration::General);
    let r = -2..=2i64;
    let mut roots = Vec::new();
    for a in r.clone() {
        for b1 in r.clone() {
            for b2 in r.clone() {
                for b3 in r.clone() {
                    for b4 in r.clone() {
                        let d = DivisorClass::new([a, b1, b2, b3, b4]);
                        if d.sq() == BigInt::from(-2) && d.dot(&k) == BigInt::from(0) {
                            roots.push(d);
                        }
                    }
                }
            }
        }
    }
    assert_eq!(roots.len(), 20);
    for cfg in Configuration::ALL {
        let listed: BTreeSet<DivisorClass> = minus_two_curves(cfg).iter().map(|c| c.cls.clone()).collect();
        let irreducible: BTreeSet<DivisorClass> =
            roots.iter().filter(|r| is_irreducible(r, cfg).unwrap()).cloned().collect();
        assert_eq!(listed, irreducible, "{cfg}");
        let effective = roots.iter().filter(|r| is_effective(r, cfg)).count();
        let positive_roots = [0, 1, 2, 4, 3, 6, 10][cfg.index()];
        assert_eq!(effective, positive_roots, "{cfg}");
    }
}

#[test]
fn rulings_are_conic_classes() {
    let k = canonical_class(Configuration::General);
    for cfg in Configuration::ALL {
        for f in ruling_classes(cfg, false) {
            assert_eq!(f.sq(), BigInt::from(0));
            assert_eq!(f.dot(&k), BigInt::from(-2));
            assert_eq!(h0(&f, cfg).unwrap(), BigInt::from(2), "{cfg} {f:?}");
        }
        for f in ruling_classes(cfg, true) {
            for t in minus_two_curves(cfg) {
                assert_eq!(f.dot(&t.cls), BigInt::from(0));
            }
        }
    }
}

#[test]
fn h0_monotone_under_adding_lines() {
    let lines = line_classes();
    for cfg in Configuration::ALL {
        for a in 0..=3 {
            for b in -1..=1 {
                let d = DivisorClass::new([a, b, -1, 0, -1]);
                let base = h0(&d, cfg).unwrap();
                for l in lines.iter().filter(|l| is_effective(l, cfg)) {
                    assert!(h0(&(&d + l), cfg).unwrap() >= base, "{cfg} {d:?} + {l:?}");
                }
            }
        }
    }
}

#[test]
fn moving_half_scan() {
    assert!(verify_no_moving_half(3).is_empty());
    let without = scan_moving_halves(1, false);
    assert!(without.contains(&DivisorClass::l()));
}

#[test]
fn p6_has_a_single_minus_one_curve() {
    assert_eq!(minus_one_curves(Configuration::P6).len(), 1);
}

#[test]
fn tables_saturate_at_double_bound() {
    for case in [TableCase::P4, TableCase::P5, TableCase::P6] {
        let base: BTreeSet<TableRow> = enumerate_table(case).into_iter().map(|r| r.into_row()).collect();
        let wide: BTreeSet<TableRow> = ConstraintSystem::for_case(case)
            .with_coefficient_bound(32)
            .enumerate()
            .into_iter()
            .map(|r| r.into_row())
            .collect();
        assert_eq!(base, wide, "{case}");
    }
}
