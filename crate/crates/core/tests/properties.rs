//! Property tests. Inputs are drawn from the crate's seeded generators, with
//! proptest supplying the seeds.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use fixloc_core::cli::hyperelliptic_lifts;
use fixloc_core::random;
use fixloc_core::{
    component_dimension, d_mu, elementary_modification, equivalence_classes, from_parabolic,
    gamma_apply, graded_of, graded_points, hyperelliptic_report, orbit_length_under_power,
    s_i_possible, sim_e_steps, sim_o_step, split_moduli_p1, stability_classify, to_parabolic,
    zeta2_apply, zeta2_graded, zeta2_parabolic, CoverProfile, InvariantDivisor, ParabolicP1,
    RootExponent, SplitModuli, StabilityClass, Tracked,
};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::{big, euclid_gcd, ids, Oracle};

fn rng(seed: u64) -> ChaCha8Rng {
    random::rng(seed)
}

fn divisor(rng: &mut ChaCha8Rng, p: &CoverProfile) -> InvariantDivisor {
    InvariantDivisor {
        residues: ids(p).into_iter().map(|y| (y, rng.random_range(-20..=20))).collect(),
        base_degree: rng.random_range(-5..=5),
    }
}

/// A parabolic bundle with up to eight points and arbitrary split type.
fn bundle(rng: &mut ChaCha8Rng) -> ParabolicP1 {
    let c = rng.random_range(-3..=2);
    let d = rng.random_range(2 * c - 4..=2 * c);
    let n = rng.random_range(0..=8);
    let mut points: Vec<BigRational> = Vec::new();
    while points.len() < n {
        let z = BigRational::new(rng.random_range(-9..=9).into(), rng.random_range(1..=3).into());
        if !points.contains(&z) {
            points.push(z);
        }
    }
    let palette = [(1, 0), (0, 1), (1, 1), (1, -2), (2, 3)];
    let flags = (0..n)
        .map(|_| {
            let (a, b) = *palette.choose(rng).unwrap();
            (big(a), big(b))
        })
        .collect();
    let wpal = [(0, 1), (1, 2), (1, 3), (2, 3), (1, 4), (3, 4)];
    let weights = (0..n)
        .map(|_| {
            let (a, b) = *wpal.choose(rng).unwrap();
            BigRational::new(a.into(), b.into())
        })
        .collect();
    ParabolicP1::new(c, d, points, flags, weights).expect("generated bundle is valid")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kernel_order_is_gcd(seed in any::<u64>()) {
        let p = random::profile(&mut rng(seed), 30, 5);
        let expected = p.orbits().iter().fold(p.n(), |g, o| euclid_gcd(g, o.k));
        prop_assert_eq!(p.kernel_order(), expected);
        prop_assert_eq!(p.gcd_orbit_lengths(), expected);
    }

    #[test]
    fn factor_cover_restores_lengths(seed in any::<u64>()) {
        let p = random::profile(&mut rng(seed), 30, 5);
        let (ramified, r) = p.factor_cover();
        prop_assert_eq!(ramified.n() * r, p.n());
        let back: Vec<(String, i64)> = ramified.orbits().iter().map(|o| (o.id.clone(), o.k * r)).collect();
        let orig: Vec<(String, i64)> = p.orbits().iter().map(|o| (o.id.clone(), o.k)).collect();
        prop_assert_eq!(back, orig);
        prop_assert_eq!(ramified.kernel_order(), 1);
    }

    #[test]
    fn orbit_length_under_power_divides(k in 1i64..200, d in 1i64..200) {
        prop_assert_eq!(k % orbit_length_under_power(k, d), 0);
    }

    #[test]
    fn numeric_data_ignores_pullbacks(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::profile(&mut r, 12, 4);
        let div = divisor(&mut r, &p);
        let pulled = InvariantDivisor {
            residues: p.orbits().iter().map(|o| (o.id.clone(), o.nprime * r.random_range(-3..=3))).collect(),
            base_degree: r.random_range(-5..=5),
        };
        prop_assert!(pulled.is_pullback(&p).unwrap());
        prop_assert_eq!(div.add(&pulled).numeric_data(&p).unwrap(), div.numeric_data(&p).unwrap());
        let e = r.random_range(-9..=9);
        prop_assert_eq!(InvariantDivisor::pullback(e).degree_on_x(&p).unwrap(), p.n() * e);
        prop_assert!(InvariantDivisor::pullback(e).is_pullback(&p).unwrap());
    }

    #[test]
    fn d_mu_is_multiplicative(seed in any::<u64>(), a in -50i64..50, b in -50i64..50) {
        let p = random::profile(&mut rng(seed), 24, 4);
        let (mu, nu) = (RootExponent::new(a, p.n()), RootExponent::new(b, p.n()));
        for o in p.orbits() {
            prop_assert_eq!(d_mu(mu * nu, o), (d_mu(mu, o) + d_mu(nu, o)).rem_euclid(o.nprime));
        }
    }

    #[test]
    fn modifications_stay_in_t(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::profile(&mut r, 12, 4);
        let x = random::data(&mut r, &p);
        for o in p.orbits() {
            for tracked in [Tracked::First, Tracked::Second] {
                for inverse in [false, true] {
                    let (y, _) = elementary_modification(&x, &p, &o.id, tracked, inverse).unwrap();
                    prop_assert!(y.check(&p).is_ok());
                    let step = if inverse { -1 } else { 1 };
                    prop_assert_eq!(y.det.degree, x.det.degree - step * o.k);
                }
            }
        }
        let m: BTreeMap<String, i64> = ids(&p).into_iter().map(|y| (y, r.random_range(-4..=4))).collect();
        let flags: BTreeMap<String, Tracked> = ids(&p).into_iter().map(|y| (y, Tracked::Second)).collect();
        let (y, induced) = gamma_apply(&x, &p, &m, &flags).unwrap();
        prop_assert!(y.check(&p).is_ok());
        let neg: BTreeMap<String, i64> = m.iter().map(|(k, v)| (k.clone(), -v)).collect();
        prop_assert_eq!(gamma_apply(&y, &p, &neg, &induced).unwrap().0, x);
    }

    #[test]
    fn parabolic_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::profile(&mut r, 12, 4);
        let x = random::data(&mut r, &p);
        let pdat = to_parabolic(&x, &p).unwrap();
        let back = from_parabolic(&pdat, &p).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(to_parabolic(&back, &p).unwrap(), pdat);
    }

    #[test]
    fn zeta2_involution_and_commutation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2 * r.random_range(1..=8);
        let p = random::profile_of_order(&mut r, n, 4);
        let x = random::data(&mut r, &p);
        let z = zeta2_apply(&x, &p).unwrap();
        prop_assert!(z.check(&p).is_ok());
        prop_assert_eq!(zeta2_apply(&z, &p).unwrap(), x.clone());
        let pdat = to_parabolic(&x, &p).unwrap();
        prop_assert_eq!(to_parabolic(&z, &p).unwrap(), zeta2_parabolic(&pdat, &p).unwrap());
    }

    #[test]
    fn split_parity(deg in -1000i64..1000) {
        prop_assert_eq!(split_moduli_p1(deg) == SplitModuli::Empty, deg % 2 != 0);
    }

    #[test]
    fn s_i_matches_gcd_parity(seed in any::<u64>()) {
        let p = random::profile(&mut rng(seed), 24, 4);
        prop_assert_eq!(s_i_possible(&p), p.gcd_orbit_lengths() % 2 == 0);
        for o in p.orbits() {
            let rest = p.orbits().iter().filter(|q| q.id != o.id).fold(p.n(), |g, q| euclid_gcd(g, q.k));
            if o.k % 2 == 1 && euclid_gcd(o.k, rest) == 1 {
                prop_assert!(!s_i_possible(&p));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stability_matches_oracle(seed in any::<u64>()) {
        let b = bundle(&mut rng(seed));
        let verdict = stability_classify(&b);
        prop_assert_eq!(verdict.class, Oracle::new(&b).classify());
        if let Some(w) = &verdict.witness {
            prop_assert!(w.check(&b).is_ok());
        }
    }

    #[test]
    fn verdicts_are_coordinate_free(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = r.random_range(1..=3);
        let c = r.random_range(-((g + 1) / 2)..=0);
        let cfg = random::flag_config(&mut r, g, c, true);
        let b = cfg.bundle().unwrap();
        let class = stability_classify(&b).class;
        let alpha = BigRational::new(r.random_range(1..=7).into(), r.random_range(1..=5).into());
        let alpha = if r.random_bool(0.5) { -alpha } else { alpha };
        let beta = BigRational::new(r.random_range(-9..=9).into(), r.random_range(1..=4).into());
        prop_assert_eq!(stability_classify(&b.moved(&alpha, &beta).unwrap()).class, class);
        let mut perm: Vec<usize> = (0..b.len()).collect();
        perm.shuffle(&mut r);
        prop_assert_eq!(stability_classify(&b.permuted(&perm).unwrap()).class, class);
    }

    #[test]
    fn semistable_summands_have_equal_slope(seed in any::<u64>()) {
        let mut r = rng(seed);
        let cfg = random::flag_config(&mut r, 2, -1, true);
        let b = cfg.bundle().unwrap();
        let v = stability_classify(&b);
        if v.class == StabilityClass::StrictlySemistable {
            let split = graded_of(&b, &v).unwrap();
            let half_total = (big(b.d()) + b.total_weight()) / big(2);
            for s in &split.summands {
                let pardeg = big(s.degree) + s.support.iter().map(|&i| b.weights()[i].clone()).sum::<BigRational>();
                prop_assert_eq!(pardeg, half_total.clone());
            }
        }
    }
}

#[test]
fn max_component_dimension() {
    for g in 1..=6 {
        let report = hyperelliptic_report(g).unwrap();
        let d = -(g + 1);
        for comp in &report.components {
            // flags on 2g + 2 points modulo Aut(O(c) + O(d - c)) / scalars
            let aut = if 2 * comp.c == d { 4 } else { 2 + (comp.c - (d - comp.c) + 1) };
            assert_eq!(comp.dimension, 2 * g + 2 - (aut - 1), "g = {g}, c = {}", comp.c);
            assert_eq!(comp.dimension, component_dimension(g, comp.c));
        }
        let top = report.components.iter().max_by_key(|c| c.dimension).unwrap();
        assert_eq!(top.dimension, 2 * g - 1);
        let at = if g % 2 == 1 { -(g + 1) / 2 } else { -g / 2 };
        assert_eq!(top.c, at, "g = {g}");
    }
}

#[test]
fn graded_steps_preserve_balance() {
    for g in 1..=3 {
        let p = CoverProfile::hyperelliptic(g).unwrap();
        let mut points = Vec::new();
        for det in hyperelliptic_lifts(&p).unwrap() {
            points.extend(graded_points(&det, &p).unwrap());
        }
        for pt in &points {
            assert_eq!(pt.pardeg(0, &p).unwrap(), pt.pardeg(1, &p).unwrap());
            let mut moved = vec![zeta2_graded(pt, &p).unwrap()];
            moved.extend(sim_e_steps(pt, &p).unwrap());
            moved.push(sim_o_step(pt, RootExponent::new(1, 2), &p).unwrap());
            for q in moved {
                q.check(&p).unwrap();
                assert_eq!(q.pardeg(0, &p).unwrap(), q.pardeg(1, &p).unwrap());
            }
        }
        let classes = equivalence_classes(&points, &p).unwrap();
        assert_eq!(classes.len(), 1 << (2 * g), "g = {g}");
        let labels: BTreeSet<usize> = classes.iter().map(Vec::len).collect();
        assert_eq!(labels, [3].into_iter().collect(), "g = {g}");
    }
}

#[test]
fn zeta2_parabolic_half_degree_twist() {
    // an odd-length orbit with n' = 6 moves n deg D-bar by n / 2
    let p = CoverProfile::new(6, 1, [("y0", 1), ("y1", 2)]).unwrap();
    let x = fixloc_core::Rank2EqData::new(
        &p,
        [("y0".to_string(), (2, 2)), ("y1".to_string(), (1, 2))].into_iter().collect(),
        fixloc_core::DeterminantLift::new(
            &p,
            &[("y0".to_string(), 4), ("y1".to_string(), 0)].into_iter().collect(),
            10,
            fixloc_core::LiftSign::Minus,
        )
        .unwrap(),
    )
    .unwrap();
    let z = zeta2_parabolic(&to_parabolic(&x, &p).unwrap(), &p).unwrap();
    assert_eq!(z.det_bar_degree, -1);
    assert_eq!(z, to_parabolic(&zeta2_apply(&x, &p).unwrap(), &p).unwrap());
}
