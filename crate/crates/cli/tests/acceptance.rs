//! Release gate: one test per advertised guarantee, each printing a
//! PASS or FAIL line (visible under --nocapture) in addition to the
//! usual test verdict.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use realh1::catalog;
use realh1::f2;
use realh1::h1core::{self, H1Options};
use realh1::oracles::{orbit_count_bruteforce, random_involutive_lattice, random_unimodular, torus_h1_by_types};
use realh1::realform::{compact_form, RealFormSpec};
use realh1::rootdata::RootDatum;
use realh1::torus::{RealTorus, TorusPart};
use realh1::zc2lat::{normal_form, InvolutiveLattice};
use realh1::{Error, IntMatrix};
use realh1_cli::doc::{self, ParsedSpec};

fn criterion<T>(number: u32, summary: &str, body: impl FnOnce() -> T) -> T {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(value) => {
            println!("criterion {number}: PASS ({summary})");
            value
        }
        Err(cause) => {
            println!("criterion {number}: FAIL ({summary})");
            std::panic::resume_unwind(cause)
        }
    }
}

fn specs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs")
}

fn bundled_documents() -> Vec<(String, ParsedSpec)> {
    let mut paths: Vec<_> = std::fs::read_dir(specs_dir())
        .expect("specs directory exists")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    assert!(paths.len() >= 15, "bundled corpus went missing");
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            let parsed = doc::load(&p).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, parsed)
        })
        .collect()
}

fn bundled_forms() -> Vec<(String, RealFormSpec)> {
    bundled_documents()
        .into_iter()
        .filter_map(|(name, parsed)| match parsed {
            ParsedSpec::Group(form) => Some((name, form)),
            ParsedSpec::Torus { .. } => None,
        })
        .collect()
}

fn planted(q: usize, r: usize, rng: &mut ChaCha8Rng) -> (RealTorus, IntMatrix) {
    let rank = q + 2 * r;
    let basis = random_unimodular(rng, rank, 20);
    let sigma = basis
        .mul(&normal_form(0, q, r))
        .mul(&realh1::mat::inverse_unimodular(&basis));
    let torus = RealTorus::new(InvolutiveLattice::new(sigma).unwrap());
    (torus, basis)
}

#[test]
fn criterion_1_torus_base_cases() {
    criterion(1, "rank-one torus types give |H1| = 1, 1, 2", || {
        let cases = [
            (normal_form(1, 0, 0), 1u128),
            (normal_form(0, 0, 1), 1),
            (normal_form(0, 1, 0), 2),
        ];
        for (sigma, expected) in cases {
            let torus = RealTorus::new(InvolutiveLattice::new(sigma).unwrap());
            assert_eq!(torus.h1().size(), expected);
            assert_eq!(torus.points2().size(), 2);
        }
    });
}

#[test]
fn criterion_2_two_torsion_fuzz() {
    criterion(2, "200 random lattices: kernel, surjectivity, counts", || {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for round in 0..200 {
            let (lattice, (p, q, r)) = random_involutive_lattice(&mut rng, 6);
            let torus = RealTorus::new(lattice);
            let h1 = torus.h1();

            // Both routes to the cohomology size agree.
            assert_eq!(
                torus_h1_by_types(torus.lattice()).unwrap(),
                h1.size(),
                "round {round}: type route disagrees"
            );

            // Kernel of the class map is exactly the split 2-torsion,
            // and the induced map on the quotient is a bijection.
            let split_image: BTreeSet<Vec<u8>> = torus
                .part_points2_image(TorusPart::Split)
                .members()
                .collect();
            let mut kernel = BTreeSet::new();
            let mut classes = BTreeSet::new();
            for x in torus.points2().members() {
                let class = torus.class_of_point2(&x).unwrap();
                if class.is_trivial() {
                    kernel.insert(x);
                }
                classes.insert(class.vector().clone());
            }
            assert_eq!(kernel, split_image, "round {round}: kernel mismatch");
            assert_eq!(classes.len() as u128, h1.size(), "round {round}: not onto");
            assert_eq!(
                torus.points2().size(),
                kernel.len() as u128 * h1.size(),
                "round {round}: induced map not bijective"
            );

            // Compact 2-torsion also covers every class.
            let (compact, _) = torus.part(TorusPart::Compact);
            let covered: BTreeSet<Vec<u8>> = compact
                .points2()
                .members()
                .map(|x| torus.compact_class(&x).unwrap().vector().clone())
                .collect();
            assert_eq!(covered.len() as u128, h1.size(), "round {round}: mu not onto");

            // Quotient count: compact points over the overlap with the
            // split part.
            let counts = torus.compact_intersection_counts();
            assert_eq!(counts.compact_points2, counts.intersection * counts.h1);
            assert_eq!(counts.compact_points2, 1u128 << (q + r));
            assert_eq!(counts.h1, 1u128 << q);
            let _ = p;
        }
    });
}

#[test]
fn criterion_3_compact_factor_bijection() {
    criterion(3, "compact factor 2-torsion bijects onto H1", || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let q = rng.gen_range(1..=4);
            let r = rng.gen_range(0..=2);
            let (torus, basis) = planted(q, r, &mut rng);
            let columns = basis.columns_mod2();
            // The first q basis columns span the compact factor; its
            // 2-torsion is everything that factor contains.
            let mut classes = BTreeSet::new();
            for bits in 0u32..(1 << q) {
                let mut point = vec![0u8; torus.rank()];
                for (j, column) in columns.iter().enumerate().take(q) {
                    if bits >> j & 1 == 1 {
                        f2::xor_into(&mut point, column);
                    }
                }
                classes.insert(
                    torus
                        .class_of_point2(&point)
                        .expect("factor points are 2-torsion")
                        .vector()
                        .clone(),
                );
            }
            assert_eq!(classes.len() as u128, 1u128 << q, "not injective");
            assert_eq!(torus.h1().size(), 1u128 << q, "not onto");
        }
    });
}

fn assert_compact(datum: RootDatum, expected: u128, averaged: &mut usize) {
    let label = format!("rank {}", datum.rank());
    let form = compact_form(datum);
    let result = h1core::h1_group(&form).unwrap();
    assert_eq!(result.cardinality, expected, "{label}: wrong cardinality");
    if result.w0_order.is_some() {
        assert_eq!(
            h1core::burnside_count(&form, 10_000).unwrap(),
            expected,
            "{label}: fixed-point average disagrees"
        );
        *averaged += 1;
    }
}

#[test]
fn criterion_4_compact_tables() {
    criterion(4, "compact form tables match signature counts", || {
        let mut averaged = 0usize;
        for n in 2..=8 {
            assert_compact(catalog::su(n), (n / 2 + 1) as u128, &mut averaged);
        }
        for n in 1..=8 {
            assert_compact(catalog::sp(n), (n + 1) as u128, &mut averaged);
        }
        for n in 3..=9 {
            assert_compact(catalog::so(n), (n / 2 + 1) as u128, &mut averaged);
        }
        assert_compact(catalog::g2(), 2, &mut averaged);
        assert_compact(catalog::f4(), 3, &mut averaged);
        assert_compact(catalog::e8(), 3, &mut averaged);
        assert!(averaged >= 15, "only {averaged} Burnside cross-checks ran");
    });
}

#[test]
fn criterion_5_split_rank_one_groups() {
    criterion(5, "sl2r and pgl2r documents give |H1| = 2", || {
        for name in ["sl2r.json", "pgl2r.json"] {
            let ParsedSpec::Group(form) = doc::load(&specs_dir().join(name)).unwrap() else {
                panic!("{name} should describe a group");
            };
            let result = h1core::h1_group(&form).unwrap();
            assert_eq!(result.cardinality, 2, "{name}");
            assert_eq!(h1core::burnside_count(&form, 100).unwrap(), 2, "{name}");
        }
    });
}

#[test]
fn criterion_6_oracle_agreement() {
    criterion(6, "three counting routes agree on the bundled corpus", || {
        let mut cross_checked = 0usize;
        for (name, parsed) in bundled_documents() {
            match parsed {
                ParsedSpec::Torus { torus, .. } => {
                    assert_eq!(
                        torus_h1_by_types(torus.lattice()).unwrap(),
                        torus.h1().size(),
                        "{name}"
                    );
                }
                ParsedSpec::Group(form) => {
                    let result = h1core::h1_group(&form).unwrap();
                    if result.w0_order.is_none() {
                        continue;
                    }
                    assert_eq!(
                        h1core::burnside_count(&form, 10_000).unwrap(),
                        result.cardinality,
                        "{name}: fixed-point average"
                    );
                    assert_eq!(
                        orbit_count_bruteforce(&form, 10_000).unwrap(),
                        result.cardinality,
                        "{name}: full enumeration"
                    );
                    cross_checked += 1;
                }
            }
        }
        assert!(cross_checked >= 9, "only {cross_checked} group documents cross-checked");
    });
}

#[test]
fn criterion_7_twist_invariance() {
    criterion(7, "100 random twists preserve the partition shape", || {
        let options = H1Options::default();
        for (name, form) in bundled_forms() {
            let (space, original) = h1core::h1_partition(&form, &options).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for round in 0..100 {
                let coords: Vec<u8> =
                    (0..space.dim()).map(|_| rng.gen_range(0..=1)).collect();
                let zeta = space.vector_of_coords(&coords);
                let twisted = h1core::twist(&form, &zeta);
                let (tspace, moved) = h1core::h1_partition(&twisted, &options).unwrap();
                assert_eq!(
                    moved.orbit_count(),
                    original.orbit_count(),
                    "{name} round {round}: orbit count moved"
                );
                // The partition must be the zeta-translate: mapping each
                // twisted orbit through x -> x + zeta lands on exactly
                // one original orbit, bijectively.
                let orbits = moved.orbit_count() as usize;
                let mut forward = vec![usize::MAX; orbits];
                let mut backward = vec![usize::MAX; orbits];
                for x in 0..(space.size() as u32) {
                    let mut shifted = tspace.vector_of_packed(x);
                    f2::xor_into(&mut shifted, &zeta);
                    let image = space.packed_of_vector(&shifted).unwrap();
                    let t = moved.orbit_of_packed(x);
                    let o = original.orbit_of_packed(image);
                    assert!(
                        forward[t] == usize::MAX || forward[t] == o,
                        "{name} round {round}: partition is not the translate"
                    );
                    assert!(
                        backward[o] == usize::MAX || backward[o] == t,
                        "{name} round {round}: partition is not the translate"
                    );
                    forward[t] = o;
                    backward[o] = t;
                }
            }
        }
    });
}

#[test]
fn criterion_8_nonzero_shift() {
    criterion(8, "shifted rank-one action has one orbit of size two", || {
        let ParsedSpec::Group(form) = doc::load(&specs_dir().join("a1_shifted.json")).unwrap()
        else {
            panic!("a1_shifted.json should describe a group");
        };
        let result = h1core::h1_group(&form).unwrap();
        assert_eq!(result.cardinality, 1);
        assert_eq!(result.orbit_sizes, vec![2]);
        assert_eq!(result.representatives, vec![vec![0]]);
    });
}

#[test]
fn criterion_9_consistency_policing() {
    criterion(9, "inconsistent shifts and non-fundamental forms are rejected", || {
        // A shift assignment violating the generator's own order-two
        // relation on the compact rank-two form.
        let datum = catalog::su(3);
        let minus = IntMatrix::from_fn(2, 2, |i, j| if i == j { (-1).into() } else { 0.into() });
        let form = RealFormSpec::new(
            datum.clone(),
            minus,
            datum.simple_reflections(),
            vec![vec![1, 1], vec![0, 0]],
            "poisoned",
        )
        .unwrap();
        assert!(matches!(
            form.extend_cocycle(100),
            Err(Error::InconsistentCocycle { .. })
        ));
        assert!(matches!(
            h1core::h1_group(&form),
            Err(Error::InconsistentCocycle { .. })
        ));

        // A split involution is not fundamental for a rank-one datum.
        let a1 = catalog::su(2);
        let gens = a1.simple_reflections();
        assert!(matches!(
            RealFormSpec::new(a1, IntMatrix::identity(1), gens, vec![vec![0]], "split"),
            Err(Error::FundamentalityViolation { root_index: 0 })
        ));
    });
}
