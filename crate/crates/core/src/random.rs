//! Seeded generators for randomized checks. Everything random flows from one
//! `ChaCha8Rng`, so a seed reproduces a run exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cover::CoverProfile;
use crate::equivariant::{DeterminantLift, LiftSign, NumericData, Rank2EqData};
use crate::stability::FlagConfig;

pub const DEFAULT_SEED: u64 = 0x00f1_c5ed;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A profile with `2 <= n <= max_n` and at most `max_orbits` special orbits.
pub fn profile<R: Rng>(rng: &mut R, max_n: i64, max_orbits: usize) -> CoverProfile {
    let n = rng.random_range(2..=max_n.max(2));
    profile_of_order(rng, n, max_orbits)
}

pub fn profile_of_order<R: Rng>(rng: &mut R, n: i64, max_orbits: usize) -> CoverProfile {
    let proper: Vec<i64> = (1..n).filter(|k| n % k == 0).collect();
    let count = rng.random_range(0..=max_orbits);
    let orbits: Vec<(String, i64)> = (0..count)
        .map(|i| (format!("y{i}"), *proper.choose(rng).expect("n >= 2")))
        .collect();
    let genus = rng.random_range(0..=2);
    CoverProfile::new(n, genus, orbits).expect("generated profile is valid")
}

/// A determinant lift whose degree is consistent with its residues.
pub fn determinant<R: Rng>(rng: &mut R, profile: &CoverProfile) -> DeterminantLift {
    let residues: BTreeMap<String, i64> = profile
        .orbits()
        .iter()
        .map(|o| (o.id.clone(), rng.random_range(0..o.nprime)))
        .collect();
    let fibres: i64 = profile.orbits().iter().map(|o| o.k * residues[&o.id]).sum();
    let degree = fibres + profile.n() * rng.random_range(-4..=4);
    let sign = if profile.n() % 2 == 0 && rng.random_bool(0.5) {
        LiftSign::Minus
    } else {
        LiftSign::Plus
    };
    DeterminantLift::new(profile, &residues, degree, sign).expect("generated lift is valid")
}

/// A uniformly chosen member of `Lambda_Delta` for `det`.
pub fn numeric<R: Rng>(rng: &mut R, det: &DeterminantLift, profile: &CoverProfile) -> NumericData {
    profile
        .orbits()
        .iter()
        .map(|o| {
            let target = det.residues[&o.id];
            let pairs: Vec<(i64, i64)> = (0..o.nprime)
                .flat_map(|d1| (d1..o.nprime).map(move |d2| (d1, d2)))
                .filter(|(d1, d2)| (d1 + d2 - target).rem_euclid(o.nprime) == 0)
                .collect();
            (o.id.clone(), *pairs.choose(rng).expect("Lambda is never empty"))
        })
        .collect()
}

pub fn data<R: Rng>(rng: &mut R, profile: &CoverProfile) -> Rank2EqData {
    let det = determinant(rng, profile);
    let numeric = numeric(rng, &det, profile);
    Rank2EqData::new(profile, numeric, det).expect("generated data is valid")
}

fn small_rational<R: Rng>(rng: &mut R, span: i64, max_den: i64) -> BigRational {
    BigRational::new(
        BigInt::from(rng.random_range(-span..=span)),
        BigInt::from(rng.random_range(1..=max_den)),
    )
}

/// A flag configuration on `2g + 2` points. With `special` set, flags are
/// drawn from a small palette (the two summand directions and a few slopes)
/// so that non-stable configurations are common; weights are `1/2` or drawn
/// from `{0, 1/4, 1/3, 1/2}`.
pub fn flag_config<R: Rng>(rng: &mut R, g: i64, c: i64, special: bool) -> FlagConfig {
    let n = (2 * g + 2) as usize;
    let mut points: Vec<BigRational> = Vec::with_capacity(n);
    while points.len() < n {
        let z = small_rational(rng, 8, 3);
        if !points.contains(&z) {
            points.push(z);
        }
    }
    let one = BigRational::from_integer(1.into());
    let zero = BigRational::from_integer(0.into());
    let flags = (0..n)
        .map(|_| {
            if special {
                match rng.random_range(0..4) {
                    0 => (one.clone(), zero.clone()),
                    1 => (zero.clone(), one.clone()),
                    _ => (one.clone(), BigRational::from_integer(rng.random_range(-2..=2).into())),
                }
            } else {
                (one.clone(), small_rational(rng, 50, 13))
            }
        })
        .collect();
    let half = BigRational::new(1.into(), 2.into());
    let weights = if !special || rng.random_bool(0.5) {
        vec![half; n]
    } else {
        let palette = [(0, 1), (1, 4), (1, 3), (1, 2)];
        (0..n)
            .map(|_| {
                let (a, b) = *palette.choose(rng).unwrap();
                BigRational::new(a.into(), b.into())
            })
            .collect()
    };
    FlagConfig { g, c, points, flags, weights }
}
