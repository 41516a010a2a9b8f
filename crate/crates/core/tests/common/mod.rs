//! Helpers shared by the integration tests, including a brute-force
//! stability oracle that shares no code with the library's decision routine.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use fixloc_core::{ParabolicP1, StabilityClass};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn euclid_gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Rank by textbook elimination over `Q`.
pub fn naive_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = &rows[r][col] / &pivot;
            let (top, rest) = rows.split_at_mut(r);
            for (x, p) in rest[0][col..].iter_mut().zip(&top[rank][col..]) {
                *x -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

/// Brute force over subbundles `O(e) -> E` of a parabolic bundle on `P^1`.
///
/// `dim(e, S)` is the dimension of the space of maps `(p, q)` with
/// `deg p <= c - e`, `deg q <= d - c - e` whose value at every point of `S`
/// lies in the flag. A saturated map of exact degree `e` agreeing on at least
/// `S` exists iff that space is not swept out by maps of degree `e + 1`
/// multiplied by a linear form: those form a family of dimension
/// `dim(e + 1, S) + 1` (moving root) or `dim(e + 1, S - i)` (root at a point
/// of `S`).
pub struct Oracle<'a> {
    bundle: &'a ParabolicP1,
    weighted: Vec<usize>,
    memo: HashMap<(i64, u32), usize>,
}

impl<'a> Oracle<'a> {
    pub fn new(bundle: &'a ParabolicP1) -> Self {
        let weighted = (0..bundle.len()).filter(|&i| bundle.weights()[i].is_positive()).collect();
        Oracle { bundle, weighted, memo: HashMap::new() }
    }

    fn dim(&mut self, e: i64, mask: u32) -> usize {
        if let Some(&v) = self.memo.get(&(e, mask)) {
            return v;
        }
        let b = self.bundle;
        let np = (b.c() - e + 1).max(0) as usize;
        let nq = (b.d() - b.c() - e + 1).max(0) as usize;
        let mut rows = Vec::new();
        for (j, &i) in self.weighted.iter().enumerate() {
            if mask >> j & 1 == 0 {
                continue;
            }
            let z = &b.points()[i];
            let (fa, fb) = &b.flags()[i];
            let mut pow = vec![BigRational::one()];
            for _ in 1..np.max(nq) {
                let next = pow.last().unwrap() * z;
                pow.push(next);
            }
            // flag (a : b) contains (p(z) : q(z)) iff b p(z) - a q(z) = 0
            let mut row: Vec<BigRational> = (0..np).map(|k| fb * &pow[k]).collect();
            row.extend((0..nq).map(|k| -(fa * &pow[k])));
            rows.push(row);
        }
        let v = np + nq - if rows.is_empty() { 0 } else { naive_rank(rows) };
        self.memo.insert((e, mask), v);
        v
    }

    fn saturated_exists(&mut self, e: i64, mask: u32) -> bool {
        let here = self.dim(e, mask);
        if here == 0 {
            return false;
        }
        let moving = self.dim(e + 1, mask);
        if moving >= 1 && moving + 1 == here {
            return false;
        }
        (0..self.weighted.len())
            .filter(|j| mask >> j & 1 == 1)
            .all(|j| self.dim(e + 1, mask & !(1 << j)) < here)
    }

    fn margin(&self, e: i64, mask: u32) -> BigRational {
        let b = self.bundle;
        let half = BigRational::new(1.into(), 2.into());
        let mut out = big(b.d()) * &half - big(e);
        for (j, &i) in self.weighted.iter().enumerate() {
            let w = &b.weights()[i] * &half;
            if mask >> j & 1 == 1 {
                out -= w;
            } else {
                out += w;
            }
        }
        out
    }

    /// Smallest margin over all saturated subbundles. Degrees below
    /// `(d - W) / 2` have positive margin whatever they agree with, so the
    /// search starts at `min(d, floor((d - W) / 2))`.
    pub fn min_margin(&mut self) -> Option<BigRational> {
        let (d, c) = (self.bundle.d(), self.bundle.c());
        let total: BigRational = self.bundle.weights().iter().sum();
        let floor = ((big(d) - total) / big(2)).floor().to_integer();
        let lo = d.min(i64::try_from(floor).expect("small degrees"));
        let mut best: Option<BigRational> = None;
        for e in lo..=c {
            for mask in 0u32..1 << self.weighted.len() {
                if self.saturated_exists(e, mask) {
                    let m = self.margin(e, mask);
                    if best.as_ref().is_none_or(|b| m < *b) {
                        best = Some(m);
                    }
                }
            }
        }
        best
    }

    pub fn classify(&mut self) -> StabilityClass {
        match self.min_margin() {
            Some(m) if m.is_zero() => StabilityClass::StrictlySemistable,
            Some(m) if m.is_negative() => StabilityClass::Unstable,
            _ => StabilityClass::Stable,
        }
    }
}

pub fn ids(profile: &fixloc_core::CoverProfile) -> Vec<String> {
    profile.orbits().iter().map(|o| o.id.clone()).collect()
}

/// Every subset of `items`.
pub fn subsets(items: &[String]) -> Vec<BTreeSet<String>> {
    (0u64..1 << items.len())
        .map(|m| {
            items.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, y)| y.clone()).collect()
        })
        .collect()
}
