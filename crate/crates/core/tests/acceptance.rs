//! End-to-end acceptance run. Each criterion prints one `pass`/`fail` line
//! with its wall time; the process fails if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use fusion_core::bounds::{e10, e2_mean, ectff2_moments, gap_closed_form, p22_sum_prediction, sic_to_eitff};
use fusion_core::grassmann::zonal::k2;
use fusion_core::grassmann::{
    check_grassmann_design_4, check_simplex_bound, check_tff, chordal_distance, chs_embed, coordinate_subspace,
    principal_angles, zonal_p2, zonal_p22, zonal_p4,
};
use fusion_core::lifting::{certify_lift, lift};
use fusion_core::numerics::{q, Rational};
use fusion_core::orbits::{
    brute_force_f, delta, enumerate_orbit, f_value, orbit_size, scaling_family, search_range, solve_single_orbit,
    two_point_test, Probe, SolutionClass,
};
use fusion_core::sphere::{check_spherical_design_pairwise, GegenbauerEvaluator};
use fusion_core::{FrameConfig, LiftSpec, OrbitParams, OrbitUnion, SicSystem};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{chs_dim, gegenbauer_explicit, orbit_frame, random_plane, signed_rational, unit_rational};

fn grid_4_to_8() -> impl Iterator<Item = OrbitParams> {
    (4..=8).flat_map(OrbitParams::all)
}

fn orbit_counts() {
    for p in grid_4_to_8() {
        let n = enumerate_orbit(p).unwrap().len();
        assert_eq!(BigInt::from(n), orbit_size(p), "{p}");
    }
}

fn functional_values() {
    for p in grid_4_to_8() {
        let f1 = brute_force_f(p, Probe::E1).unwrap();
        let f12 = brute_force_f(p, Probe::E12).unwrap();
        assert_eq!(f1, f_value(p, Probe::E1), "{p} at e1");
        assert_eq!(f12, f_value(p, Probe::E12), "{p} at (e1+e2)/sqrt2");
        assert_eq!(&f1 - &f12, delta(p), "{p} delta");
    }
}

fn single_orbit_family() {
    assert_eq!(solve_single_orbit(4), vec![(1, 3)]);
    assert_eq!(solve_single_orbit(13), vec![(3, 5)]);
    for (d0, a0, b0) in [(4, 1, 3), (13, 3, 5)] {
        for s in 1..=5 {
            let p = scaling_family(d0, a0, b0, s).unwrap();
            assert_eq!((p.d, p.a, p.b), ((d0 + 2) * s - 2, a0 * s, b0 * s));
            assert!(delta(p).is_zero(), "{p}");
        }
    }
}

fn two_orbit_search() {
    let found = search_range(5, 33, true, false);
    assert!(found.iter().all(|s| s.class == SolutionClass::Pure));
    let dims: BTreeSet<usize> = found.iter().map(|s| s.d).collect();
    assert_eq!(dims, BTreeSet::from([5, 7, 13, 19, 33]));
    let has = |d, x, y| found.iter().any(|s| s.d == d && s.first == x && s.second == y);
    assert!(has(5, (1, 1), (2, 2)));
    assert!(has(7, (1, 3), (3, 3)));
}

fn tff_equivalence() {
    let mut unions = Vec::new();
    for d in 4..=6 {
        unions.extend(OrbitParams::all(d).into_iter().map(OrbitUnion::single));
    }
    let five = OrbitParams::all(5);
    for (i, x) in five.iter().enumerate() {
        for y in &five[i + 1..] {
            unions.push(OrbitUnion::new(5, vec![(x.a, x.b), (y.a, y.b)]).unwrap());
        }
    }
    unions.push(OrbitUnion::new(7, vec![(1, 3), (3, 3)]).unwrap());
    unions.push(OrbitUnion::new(7, vec![(1, 1), (2, 2)]).unwrap());

    let (mut passes, mut fails) = (0, 0);
    for u in &unions {
        let two_point = two_point_test(u).unwrap();
        let frame = check_tff(&u.to_frame().unwrap(), 2).unwrap();
        assert_eq!(frame.tolerance, 0.0);
        assert_eq!(two_point.passed(), frame.passed(), "{u}");
        if frame.passed() {
            passes += 1;
        } else {
            fails += 1;
        }
    }
    assert!(unions.len() >= 20);
    assert!(passes >= 3 && fails >= 3, "{passes} passing, {fails} failing");
}

fn hexagon_lift() {
    let spec = LiftSpec::new(orbit_frame(4, 1, 3), 2, 5, 2024);
    let design = lift(&spec).unwrap();
    assert_eq!(design.result.len(), 96);
    assert_eq!(design.result.dim(), 4);
    assert_eq!(design.strength, 5);
    let cert = check_spherical_design_pairwise(&design.result, 6).unwrap();
    let tol = 1e-9 * 96.0 * 96.0;
    for l in 1..=5 {
        let r = cert.residual_at(l).unwrap();
        assert!(r <= tol, "degree {l}: {r}");
    }
    let r6 = cert.residual_at(6).unwrap();
    assert!(r6 > 1e3 * tol, "degree 6 residual {r6} should not vanish");
}

fn strength_law() {
    let sic = FrameConfig::equal_weight(sic_to_eitff(&SicSystem::tetrahedral()).unwrap()).unwrap();
    let v = coordinate_subspace(4, &[0, 1]);
    let complement = FrameConfig::equal_weight(vec![v.clone(), v.orthogonal_complement().unwrap()]).unwrap();
    let frames = [(1, complement), (1, orbit_frame(5, 1, 1)), (2, orbit_frame(4, 1, 3)), (2, sic)];
    for (t, frame) in frames {
        for s in 2..=7u32 {
            let spec = LiftSpec::new(frame.clone(), t, s, 17 + s as u64);
            let expected = s.min(2 * t + 1);
            assert_eq!(spec.declared_strength(), expected);
            let design = lift(&spec).unwrap();
            let cert = certify_lift(&design, expected).unwrap();
            assert!(cert.passed(), "t = {t}, s = {s}, {} planes", frame.len());
        }
    }
}

fn sic_planes() {
    let planes = sic_to_eitff(&SicSystem::tetrahedral()).unwrap();
    assert_eq!(planes.len(), 4);
    let d = planes[0].ambient_dim();
    assert_eq!((d, planes[0].dim()), (4, 2));
    assert_eq!(planes.len() * 4, d * d);
    for i in 0..4 {
        for j in i + 1..4 {
            for y in principal_angles(&planes[i], &planes[j]).unwrap() {
                assert!((y - 1.0 / 3.0).abs() <= 1e-10, "cos^2 = {y}");
            }
        }
    }
    assert!(check_tff(&FrameConfig::equal_weight(planes.clone()).unwrap(), 2).unwrap().passed());

    let predicted = ectff2_moments(4, 4).unwrap();
    assert_eq!(predicted.p22_sum, Rational::from(8));
    assert_eq!(predicted.lower_bound, Rational::from(4));
    let design = check_grassmann_design_4(&planes).unwrap();
    let measured = design.labelled("P(2,2)").unwrap().to_f64();
    assert!((measured - 8.0).abs() <= 1e-8, "measured {measured}");
    assert!(!design.passed());

    let simplex = check_simplex_bound(&planes, 1e-10).unwrap();
    assert_eq!(simplex.bound, q(4, 3));
    assert!(simplex.equality);
}

fn bounds_identities() {
    for d in 4..=20i64 {
        let du = d as usize;
        for n in 2..=300i64 {
            let e = e10(d, n);
            let e2 = e2_mean(d, n);
            let nr = Rational::from(n);
            let pairs = &nr * &(&nr - &Rational::one());
            // Σ P_(2) = 0 over N planes with common e₁ fixes e₁,₀
            assert!((&nr + &pairs * &k2::p2(&e, du).unwrap()).is_zero(), "P2 sum at d={d}, N={n}");
            // P_(4) and P_(2,2) are affine in e₂, so the ordered-pair sums only see ē₂
            let p4_self = k2::p4(&Rational::from(2), &Rational::one(), du).unwrap();
            assert_eq!(p4_self, Rational::one());
            assert!((&nr + &pairs * &k2::p4(&e, &e2, du).unwrap()).is_zero(), "P4 sum at d={d}, N={n}");
            let p22 = &nr + &pairs * &k2::p22(&e, &e2, du).unwrap();
            assert_eq!(p22, p22_sum_prediction(d, n), "P22 sum at d={d}, N={n}");
            assert_eq!(&e * &e / Rational::from(4) - &e2, gap_closed_form(d, n), "gap at d={d}, N={n}");
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for d in [4, 5, 7] {
        for _ in 0..100 {
            let (v, w) = (random_plane(&mut rng, d), random_plane(&mut rng, d));
            let (rv, rw) = (chs_embed(&v).unwrap(), chs_embed(&w).unwrap());
            let inner: f64 = rv.iter().zip(&rw).map(|(a, b)| a * b).sum();
            let p2 = zonal_p2(&principal_angles(&v, &w).unwrap(), d).unwrap();
            assert!((inner - p2).abs() <= 1e-10, "d = {d}: {inner} vs {p2}");
            let dc = chordal_distance(&v, &w).unwrap();
            let k = 2.0;
            let df = d as f64;
            assert!((dc * dc - k * (df - k) / df * (1.0 - inner)).abs() <= 1e-10);
        }
    }
}

fn zonal_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..200 {
        let x = signed_rational(&mut rng);
        for d in 3..=12usize {
            let q = GegenbauerEvaluator::new(d, 8).eval_all(&x);
            let di = d as i64;
            for l in 1..8usize {
                let li = l as i64;
                let residual = Rational::from(li + di - 2) * &q[l + 1] - Rational::from(2 * li + di - 2) * &x * &q[l]
                    + Rational::from(li) * &q[l - 1];
                assert!(residual.is_zero());
            }
        }
    }
    for _ in 0..20 {
        let x = signed_rational(&mut rng);
        for d in [3, 4, 7] {
            let q = GegenbauerEvaluator::new(d, 6).eval_all(&x);
            for l in 0..=6u32 {
                assert_eq!(q[l as usize], gegenbauer_explicit(d, l, &x), "d = {d}, l = {l}");
            }
        }
    }

    for d in 4..=10usize {
        let di = d as i64;
        let c0 = chs_dim(d).recip();
        let c1 = Rational::new(4 * (di - 4) * (di - 4), 2 * (di - 2) * (di + 4) * (di - 2));
        let c2 = Rational::new(di * di * 4 * di, 6 * (di + 2) * (di + 4) * (di - 2));
        let c3 = Rational::new(2 * di * di * (di - 3), 6 * (di - 2) * (di - 1) * (di - 2));
        for _ in 0..100 {
            let y = [unit_rational(&mut rng), unit_rational(&mut rng)];
            let e1 = &y[0] + &y[1];
            let e2 = &y[0] * &y[1];
            let (p2, p4, p22) = (zonal_p2(&y, d).unwrap(), zonal_p4(&y, d).unwrap(), zonal_p22(&y, d).unwrap());
            assert_eq!(p2, k2::p2(&e1, d).unwrap());
            assert_eq!(p4, k2::p4(&e1, &e2, d).unwrap());
            assert_eq!(p22, k2::p22(&e1, &e2, d).unwrap());
            let rhs = &c0 + &(&c1 * &p2) + &c2 * &p4 + &c3 * &p22;
            assert_eq!(&p2 * &p2, rhs, "expansion at d = {d}");
        }
    }
}

type Criterion = (u32, &'static str, fn(), Duration);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "orbit counts", orbit_counts, Duration::from_secs(30)),
        (2, "orbit functional values", functional_values, Duration::from_secs(60)),
        (3, "single-orbit family", single_orbit_family, Duration::from_secs(1)),
        (4, "two-orbit search", two_orbit_search, Duration::from_secs(10)),
        (5, "two-point test vs frame check", tff_equivalence, Duration::from_secs(60)),
        (6, "hexagon lift", hexagon_lift, Duration::from_secs(5)),
        (7, "strength law", strength_law, Duration::from_secs(60)),
        (8, "SIC planes", sic_planes, Duration::from_secs(1)),
        (9, "ECTFF identities and CHS embedding", bounds_identities, Duration::from_secs(30)),
        (10, "Gegenbauer and zonal identities", zonal_properties, Duration::from_secs(10)),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (n, name, run, budget) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let over = elapsed > budget;
        let ok = outcome.is_ok() && !over;
        if !ok {
            failed += 1;
        }
        let note = if over { format!(", over the {:?} budget", budget) } else { String::new() };
        println!("criterion {n}: {} ({name}, {:.2} s{note})", if ok { "pass" } else { "fail" }, elapsed.as_secs_f64());
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
