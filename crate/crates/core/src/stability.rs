//! Parabolic stability of split rank-2 bundles `O(c) + O(d - c)` on the
//! projective line.
//!
//! A line subbundle `O(e)` is a pair `(p, q)` with `deg p <= c - e` and
//! `deg q <= d - c - e`; it agrees with the flag spanned by `(a_i, b_i)` at
//! `z_i` when `b_i p(z_i) = a_i q(z_i)`. Its parabolic slope margin is
//!
//! ```text
//!   d/2 - e + (1/2) sum_{disagree} w - (1/2) sum_{agree} w
//! ```
//!
//! and the bundle is semistable when every margin is `>= 0`, stable when
//! every margin is `> 0`.
//!
//! The search works per degree `e` on "virtual" subbundles: a non-zero
//! solution of the interpolation system imposed by a subset `S` of points.
//! Saturating such a solution never increases its margin, so the smallest
//! virtual margin equals the smallest true one and its witness, once
//! saturated, attains it.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cover::CoverProfile;
use crate::equivariant::AdmissibleParabolicDatum;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::Poly;
use crate::rational::{self, Q};

/// A parabolic structure on `O(c) + O(d - c)` over points of the affine line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BundleRecord", into = "BundleRecord")]
pub struct ParabolicP1 {
    c: i64,
    d: i64,
    points: Vec<BigRational>,
    flags: Vec<(BigRational, BigRational)>,
    weights: Vec<BigRational>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleRecord {
    c: i64,
    d: i64,
    #[serde(with = "rational::big_vec")]
    points: Vec<BigRational>,
    #[serde(with = "rational::big_pair_vec")]
    flags: Vec<(BigRational, BigRational)>,
    #[serde(with = "rational::big_vec")]
    weights: Vec<BigRational>,
}

impl TryFrom<BundleRecord> for ParabolicP1 {
    type Error = Error;

    fn try_from(r: BundleRecord) -> Result<Self> {
        ParabolicP1::new(r.c, r.d, r.points, r.flags, r.weights)
    }
}

impl From<ParabolicP1> for BundleRecord {
    fn from(b: ParabolicP1) -> Self {
        BundleRecord { c: b.c, d: b.d, points: b.points, flags: b.flags, weights: b.weights }
    }
}

/// The flag-configuration file format. The degree is `d = -(g + 1)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagConfig {
    pub g: i64,
    pub c: i64,
    #[serde(with = "rational::big_vec")]
    pub points: Vec<BigRational>,
    #[serde(with = "rational::big_pair_vec")]
    pub flags: Vec<(BigRational, BigRational)>,
    #[serde(with = "rational::big_vec")]
    pub weights: Vec<BigRational>,
}

impl FlagConfig {
    pub fn bundle(&self) -> Result<ParabolicP1> {
        if self.g < 0 {
            return Err(Error::InvalidBundle(format!("negative genus {}", self.g)));
        }
        ParabolicP1::new(
            self.c,
            -(self.g + 1),
            self.points.clone(),
            self.flags.clone(),
            self.weights.clone(),
        )
    }
}

fn normalize_flag(a: &BigRational, b: &BigRational) -> Option<(BigRational, BigRational)> {
    if !a.is_zero() {
        Some((BigRational::one(), b / a))
    } else if !b.is_zero() {
        Some((BigRational::zero(), BigRational::one()))
    } else {
        None
    }
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl ParabolicP1 {
    pub fn new(
        c: i64,
        d: i64,
        points: Vec<BigRational>,
        flags: Vec<(BigRational, BigRational)>,
        weights: Vec<BigRational>,
    ) -> Result<Self> {
        if d - c > c {
            return Err(Error::InvalidBundle(format!(
                "split type O({c}) + O({}) is not normalised",
                d - c
            )));
        }
        if points.len() != flags.len() || points.len() != weights.len() {
            return Err(Error::InvalidBundle(format!(
                "{} points, {} flags and {} weights",
                points.len(),
                flags.len(),
                weights.len()
            )));
        }
        let distinct: BTreeSet<&BigRational> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(Error::InvalidBundle("marked points are not distinct".into()));
        }
        let flags = flags
            .iter()
            .enumerate()
            .map(|(i, (a, b))| {
                normalize_flag(a, b)
                    .ok_or_else(|| Error::InvalidBundle(format!("flag {i} is (0 : 0)")))
            })
            .collect::<Result<Vec<_>>>()?;
        for (i, w) in weights.iter().enumerate() {
            if w.is_negative() || *w >= BigRational::one() {
                return Err(Error::InvalidBundle(format!("weight {w} at point {i} outside [0, 1)")));
            }
        }
        Ok(ParabolicP1 { c, d, points, flags, weights })
    }

    /// All weights `1/2`, as in the hyperelliptic picture.
    pub fn half_weights(
        c: i64,
        d: i64,
        points: Vec<BigRational>,
        flags: Vec<(BigRational, BigRational)>,
    ) -> Result<Self> {
        let w = vec![half(); points.len()];
        ParabolicP1::new(c, d, points, flags, w)
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn points(&self) -> &[BigRational] {
        &self.points
    }

    pub fn flags(&self) -> &[(BigRational, BigRational)] {
        &self.flags
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_weight(&self) -> BigRational {
        self.weights.iter().sum()
    }

    /// Number of coefficients of `p` and of `q` for a subbundle of degree `e`.
    fn unknowns(&self, e: i64) -> (usize, usize) {
        let np = (self.c - e + 1).max(0) as usize;
        let nq = (self.d - self.c - e + 1).max(0) as usize;
        (np, nq)
    }

    fn agrees(&self, i: usize, p: &Poly, q: &Poly) -> bool {
        let (a, b) = &self.flags[i];
        let z = &self.points[i];
        b * p.eval(z) == a * q.eval(z)
    }

    fn interpolation_rows(&self, e: i64, subset: &[usize]) -> (Vec<Vec<BigRational>>, usize, usize) {
        let (np, nq) = self.unknowns(e);
        let rows = subset
            .iter()
            .map(|&i| {
                let (a, b) = &self.flags[i];
                let z = &self.points[i];
                let mut row = Vec::with_capacity(np + nq);
                let mut pow = BigRational::one();
                for _ in 0..np {
                    row.push(b * &pow);
                    pow *= z;
                }
                let mut pow = BigRational::one();
                for _ in 0..nq {
                    row.push(-(a * &pow));
                    pow *= z;
                }
                row
            })
            .collect();
        (rows, np, nq)
    }

    /// Kernel basis of the interpolation system, split into `(p, q)`.
    fn solutions(&self, e: i64, subset: &[usize]) -> Vec<(Poly, Poly)> {
        let (rows, np, nq) = self.interpolation_rows(e, subset);
        if np + nq == 0 {
            return Vec::new();
        }
        linalg::kernel(&rows, np + nq)
            .into_iter()
            .map(|v| (Poly::new(v[..np].to_vec()), Poly::new(v[np..].to_vec())))
            .collect()
    }

    /// Degree of the saturation of a non-zero `(p, q)`: the map extends over
    /// common zeros, including a common zero at infinity.
    fn saturated_degree(&self, p: &Poly, q: &Poly) -> i64 {
        let from_p = p.degree().map(|dp| self.c - dp as i64);
        let from_q = q.degree().map(|dq| self.d - self.c - dq as i64);
        match (from_p, from_q) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => panic!("zero map has no saturation"),
        }
    }

    /// Saturates a non-zero `(p, q)` and records where it meets the flags.
    fn witness(&self, p: &Poly, q: &Poly) -> SubbundleWitness {
        let g = p.gcd(q);
        let (p, _) = p.div_rem(&g);
        let (q, _) = q.div_rem(&g);
        let e = self.saturated_degree(&p, &q);
        let scale = p
            .coeffs()
            .iter()
            .chain(q.coeffs())
            .find(|c| !c.is_zero())
            .expect("non-zero solution")
            .clone();
        let p = Poly::new(p.coeffs().iter().map(|c| c / &scale).collect());
        let q = Poly::new(q.coeffs().iter().map(|c| c / &scale).collect());
        let agreement = (0..self.len()).filter(|&i| self.agrees(i, &p, &q)).collect();
        SubbundleWitness { e, p_coeffs: p.coeffs().to_vec(), q_coeffs: q.coeffs().to_vec(), agreement }
    }

    /// Whether a non-zero `(p, q)` with the degree bounds of `e` is already
    /// a saturated subbundle of degree exactly `e`.
    fn is_saturated_at(&self, e: i64, p: &Poly, q: &Poly) -> bool {
        !(p.is_zero() && q.is_zero())
            && p.gcd(q).is_constant_one()
            && self.saturated_degree(p, q) == e
    }

    /// Affine change of coordinate `z -> alpha z + beta` on the marked points.
    pub fn moved(&self, alpha: &BigRational, beta: &BigRational) -> Result<ParabolicP1> {
        if alpha.is_zero() {
            return Err(Error::InvalidBundle("degenerate coordinate change".into()));
        }
        ParabolicP1::new(
            self.c,
            self.d,
            self.points.iter().map(|z| alpha * z + beta).collect(),
            self.flags.clone(),
            self.weights.clone(),
        )
    }

    /// The same bundle with its marked points listed in the order `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Result<ParabolicP1> {
        let pick = |v: &[BigRational]| perm.iter().map(|&i| v[i].clone()).collect::<Vec<_>>();
        ParabolicP1::new(
            self.c,
            self.d,
            pick(&self.points),
            perm.iter().map(|&i| self.flags[i].clone()).collect(),
            pick(&self.weights),
        )
    }
}

/// A saturated line subbundle `O(e) -> O(c) + O(d - c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubbundleWitness {
    pub e: i64,
    #[serde(with = "rational::big_vec")]
    pub p_coeffs: Vec<BigRational>,
    #[serde(with = "rational::big_vec")]
    pub q_coeffs: Vec<BigRational>,
    pub agreement: BTreeSet<usize>,
}

impl SubbundleWitness {
    /// Degree bounds, non-vanishing, saturation and the recorded agreement set.
    pub fn check(&self, bundle: &ParabolicP1) -> Result<()> {
        let p = Poly::new(self.p_coeffs.clone());
        let q = Poly::new(self.q_coeffs.clone());
        if p.is_zero() && q.is_zero() {
            return Err(Error::InvalidBundle("witness is the zero map".into()));
        }
        let (np, nq) = bundle.unknowns(self.e);
        if p.coeffs().len() > np || q.coeffs().len() > nq {
            return Err(Error::InvalidBundle("witness exceeds its degree bounds".into()));
        }
        if !p.gcd(&q).is_constant_one() {
            return Err(Error::InvalidBundle("witness is not saturated".into()));
        }
        let agreement: BTreeSet<usize> =
            (0..bundle.len()).filter(|&i| bundle.agrees(i, &p, &q)).collect();
        if agreement != self.agreement {
            return Err(Error::InvalidBundle("recorded agreement set is wrong".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StabilityClass {
    Stable,
    StrictlySemistable,
    Unstable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilityVerdict {
    pub class: StabilityClass,
    pub witness: Option<SubbundleWitness>,
}

/// `pa-mu(E) - pa-mu(L)` for the subbundle `sub`.
pub fn parabolic_slope_difference(bundle: &ParabolicP1, sub: &SubbundleWitness) -> BigRational {
    margin(bundle, sub.e, &sub.agreement)
}

fn margin(bundle: &ParabolicP1, e: i64, agreement: &BTreeSet<usize>) -> BigRational {
    let mut out = big(bundle.d) * half() - big(e);
    for (i, w) in bundle.weights.iter().enumerate() {
        if agreement.contains(&i) {
            out -= w * half();
        } else {
            out += w * half();
        }
    }
    out
}

/// Both sides of the slope transfer identity for a subbundle `L-bar` of
/// degree `sub_bar_degree` agreeing with the flags exactly on `agreement`:
/// the downstairs margin, and `(mu(E) - mu(L)) / n` computed from the
/// upstairs degrees.
pub fn slope_transfer_check(
    cover: &CoverProfile,
    pdat: &AdmissibleParabolicDatum,
    sub_bar_degree: i64,
    agreement: &BTreeSet<String>,
) -> Result<(Q, Q)> {
    for id in pdat.weights.keys().chain(pdat.d2.keys()).chain(agreement) {
        cover.orbit(id)?;
    }
    let zero = Q::from_integer(0);
    let half = Q::new(1, 2);
    let weight = |id: &str| pdat.weights.get(id).copied().unwrap_or(zero);
    let mut lhs = half * pdat.det_bar_degree - sub_bar_degree;
    for o in cover.orbits() {
        if agreement.contains(&o.id) {
            lhs -= half * weight(&o.id);
        } else {
            lhs += half * weight(&o.id);
        }
    }

    let n = cover.n();
    let mut deg_d = zero;
    let mut deg_d2 = zero;
    let mut modif = zero;
    for o in cover.orbits() {
        let kn = Q::from_integer(o.k * o.nprime);
        let m = weight(&o.id) * kn;
        deg_d += m;
        deg_d2 += Q::from_integer(o.k * pdat.d2.get(&o.id).copied().unwrap_or(0));
        if !agreement.contains(&o.id) {
            modif += m;
        }
    }
    let deg_e = Q::from_integer(n * pdat.det_bar_degree) - deg_d + deg_d2 * 2;
    let deg_l = Q::from_integer(n * sub_bar_degree) - modif + deg_d2;
    let rhs = (half * deg_e - deg_l) / n;
    Ok((lhs, rhs))
}

/// Positive-weight subsets, heaviest first; ties by size then lexicographically.
fn weighted_subsets(bundle: &ParabolicP1) -> Vec<(BigRational, Vec<usize>)> {
    let support: Vec<usize> =
        (0..bundle.len()).filter(|&i| bundle.weights[i].is_positive()).collect();
    let mut out: Vec<(BigRational, Vec<usize>)> = (0u64..1 << support.len())
        .map(|mask| {
            let s: Vec<usize> = support
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, &i)| i)
                .collect();
            let w = s.iter().map(|&i| bundle.weights[i].clone()).sum();
            (w, s)
        })
        .collect();
    out.sort_by(|(wa, a), (wb, b)| wb.cmp(wa).then(b.len().cmp(&a.len())).then(a.cmp(b)));
    out
}

fn ceil_to_i64(x: &BigRational) -> i64 {
    i64::try_from(x.ceil().to_integer()).expect("degree bound fits in 64 bits")
}

/// Decides stability exactly. Non-stable verdicts carry a saturated
/// subbundle of minimal margin.
pub fn stability_classify(bundle: &ParabolicP1) -> StabilityVerdict {
    let total = bundle.total_weight();
    // Below this degree every margin is positive.
    let lo = ceil_to_i64(&((big(bundle.d) - &total) * half()));
    let subsets = weighted_subsets(bundle);
    let mut best: Option<(BigRational, (Poly, Poly))> = None;
    for e in lo..=bundle.c {
        let (np, nq) = bundle.unknowns(e);
        if np + nq == 0 {
            continue;
        }
        for (w, s) in &subsets {
            let Some(sol) = bundle.solutions(e, s).into_iter().next() else {
                continue;
            };
            let v = big(bundle.d) * half() - big(e) + &total * half() - w;
            if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                best = Some((v, sol));
            }
            break;
        }
    }
    match best {
        Some((v, (p, q))) if !v.is_positive() => {
            let witness = bundle.witness(&p, &q);
            debug_assert_eq!(parabolic_slope_difference(bundle, &witness), v);
            let class = if v.is_zero() {
                StabilityClass::StrictlySemistable
            } else {
                StabilityClass::Unstable
            };
            StabilityVerdict { class, witness: Some(witness) }
        }
        _ => StabilityVerdict { class: StabilityClass::Stable, witness: None },
    }
}

/// Largest number of flag agreements of a saturated subbundle of degree
/// exactly `e`, with a subbundle attaining it. `None` when there is no
/// saturated subbundle of that degree (for instance `d - c < e < c`).
pub fn max_agreement(bundle: &ParabolicP1, e: i64) -> (Option<usize>, Option<SubbundleWitness>) {
    if e > bundle.c {
        return (None, None);
    }
    let n = bundle.len();
    let mut subsets: Vec<Vec<usize>> = (0u64..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    for s in &subsets {
        if let Some((p, q)) = saturated_member(bundle, e, &bundle.solutions(e, s)) {
            let w = bundle.witness(&p, &q);
            debug_assert_eq!(w.e, e);
            return (Some(w.agreement.len()), Some(w));
        }
    }
    (None, None)
}

/// A saturated subbundle of degree exactly `e` in the span of `basis`, if
/// the span contains one.
///
/// If the members of the span are pointwise dependent they are all
/// multiples `f (u, v)` of one saturated map, and only a one-dimensional
/// span can be saturated. Otherwise the non-saturated members form a proper
/// algebraic subset as soon as no point (infinity included) is a common zero
/// of the whole span, and a pseudo-random member avoids it.
fn saturated_member(bundle: &ParabolicP1, e: i64, basis: &[(Poly, Poly)]) -> Option<(Poly, Poly)> {
    match basis {
        [] => return None,
        [(p, q)] => return bundle.is_saturated_at(e, p, q).then(|| (p.clone(), q.clone())),
        _ => {}
    }
    let independent = basis.iter().enumerate().any(|(i, (pi, qi))| {
        basis[i + 1..].iter().any(|(pj, qj)| !pi.mul(qj).sub(&pj.mul(qi)).is_zero())
    });
    if !independent {
        return None;
    }
    let common = basis.iter().fold(Poly::zero(), |g, (p, q)| g.gcd(p).gcd(q));
    if !common.is_constant_one() {
        return None;
    }
    if !basis.iter().any(|(p, q)| bundle.saturated_degree(p, q) == e) {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    loop {
        let (mut p, mut q) = (Poly::zero(), Poly::zero());
        for (bp, bq) in basis {
            let t = big(rng.random_range(-1_000_000..=1_000_000));
            p = add_scaled(&p, bp, &t);
            q = add_scaled(&q, bq, &t);
        }
        if bundle.is_saturated_at(e, &p, &q) {
            return Some((p, q));
        }
    }
}

fn add_scaled(a: &Poly, b: &Poly, s: &BigRational) -> Poly {
    let len = a.coeffs().len().max(b.coeffs().len());
    let get = |p: &Poly, i: usize| p.coeffs().get(i).cloned().unwrap_or_else(BigRational::zero);
    Poly::new((0..len).map(|i| get(a, i) + get(b, i) * s).collect())
}

/// Semistable rank-2 bundles of degree `det_degree` on the line without
/// parabolic structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitModuli {
    Empty,
    /// The single point `O(c) + O(c)`.
    Balanced { c: i64 },
}

pub fn split_moduli_p1(det_degree: i64) -> SplitModuli {
    if det_degree % 2 != 0 {
        SplitModuli::Empty
    } else {
        SplitModuli::Balanced { c: det_degree / 2 }
    }
}

/// One summand of a graded object: its degree and the points where it meets
/// the flag (and so carries the weight).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineSummand {
    pub degree: i64,
    pub support: BTreeSet<usize>,
}

/// The unordered pair `L1 + L2` underlying a strictly semistable bundle,
/// stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradedSplit {
    pub summands: [LineSummand; 2],
}

impl GradedSplit {
    pub fn new(a: LineSummand, b: LineSummand) -> Self {
        let mut s = [a, b];
        s.sort();
        GradedSplit { summands: s }
    }
}

/// The graded object of a strictly semistable bundle from its destabilising
/// witness: the witness line and the quotient, each with the weights where it
/// meets the flags.
pub fn graded_of(bundle: &ParabolicP1, verdict: &StabilityVerdict) -> Result<GradedSplit> {
    let witness = match (&verdict.class, &verdict.witness) {
        (StabilityClass::StrictlySemistable, Some(w)) => w,
        _ => return Err(Error::NotSemistableNotStrict),
    };
    let weighted: BTreeSet<usize> =
        (0..bundle.len()).filter(|&i| bundle.weights[i].is_positive()).collect();
    let first: BTreeSet<usize> = witness.agreement.intersection(&weighted).copied().collect();
    let second: BTreeSet<usize> = weighted.difference(&first).copied().collect();
    Ok(GradedSplit::new(
        LineSummand { degree: witness.e, support: first },
        LineSummand { degree: bundle.d - witness.e, support: second },
    ))
}

/// Parabolic degree of a summand: its degree plus the weights it carries.
pub fn summand_pardeg(bundle: &ParabolicP1, s: &LineSummand) -> BigRational {
    big(s.degree) + s.support.iter().map(|&i| bundle.weights[i].clone()).sum::<BigRational>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pts(n: usize) -> Vec<BigRational> {
        (0..n as i64).map(|i| q(i * i + 3 * i + 1, i + 2)).collect()
    }

    fn first() -> (BigRational, BigRational) {
        (q(1, 1), q(0, 1))
    }

    fn second() -> (BigRational, BigRational) {
        (q(0, 1), q(1, 1))
    }

    /// `<Q>` on `2g + 2` points: first-summand flags on `Q`.
    fn angle(g: i64, q_set: &[usize]) -> ParabolicP1 {
        let n = (2 * g + 2) as usize;
        let k = q_set.len() as i64 / 2;
        let d = -(g + 1);
        let flags = (0..n).map(|i| if q_set.contains(&i) { first() } else { second() }).collect();
        let c = (-k).max(d + k);
        if c == -k {
            ParabolicP1::half_weights(c, d, pts(n), flags).unwrap()
        } else {
            // Normalise so the larger summand comes first.
            let flags = (0..n).map(|i| if q_set.contains(&i) { second() } else { first() }).collect();
            ParabolicP1::half_weights(c, d, pts(n), flags).unwrap()
        }
    }

    #[test]
    fn slope_difference_examples() {
        let b = ParabolicP1::half_weights(-1, -3, pts(6), vec![first(); 6]).unwrap();
        let all: BTreeSet<usize> = (0..6).collect();
        assert_eq!(margin(&b, -3, &all), q(0, 1));
        let bare = ParabolicP1::new(-2, -4, vec![], vec![], vec![]).unwrap();
        assert_eq!(margin(&bare, -2, &BTreeSet::new()), q(0, 1));
        let w = ParabolicP1::new(-1, -3, pts(2), vec![second(); 2], vec![q(1, 3), q(1, 5)]).unwrap();
        assert_eq!(margin(&w, -1, &BTreeSet::new()), q(-3, 2) + q(1, 1) + q(4, 15));
    }

    #[test]
    fn all_first_summand_is_unstable() {
        let b = ParabolicP1::half_weights(-1, -3, pts(6), vec![first(); 6]).unwrap();
        let v = stability_classify(&b);
        assert_eq!(v.class, StabilityClass::Unstable);
        let w = v.witness.unwrap();
        w.check(&b).unwrap();
        assert_eq!(w.e, -1);
        assert_eq!(w.agreement.len(), 6);
        assert_eq!(max_agreement(&b, -1).0, Some(6));
    }

    #[test]
    fn angle_configurations_are_strictly_semistable() {
        for (g, qs) in [(2, vec![0, 1]), (2, vec![]), (3, vec![1, 2, 5, 6]), (3, vec![0, 3])] {
            let b = angle(g, &qs);
            let v = stability_classify(&b);
            assert_eq!(v.class, StabilityClass::StrictlySemistable, "g={g} Q={qs:?}");
            v.witness.as_ref().unwrap().check(&b).unwrap();
            let gr = graded_of(&b, &v).unwrap();
            let k = qs.len() as i64 / 2;
            let qset: BTreeSet<usize> = qs.iter().copied().collect();
            let rest: BTreeSet<usize> = (0..(2 * g + 2) as usize).filter(|i| !qset.contains(i)).collect();
            let expected = GradedSplit::new(
                LineSummand { degree: -k, support: qset },
                LineSummand { degree: -(g + 1) + k, support: rest },
            );
            assert_eq!(gr, expected);
            let half_total = (big(b.d()) + b.total_weight()) * half();
            for s in &gr.summands {
                assert_eq!(summand_pardeg(&b, s), half_total);
            }
        }
    }

    #[test]
    fn generic_flags_are_stable() {
        let flags: Vec<_> = (0..6).map(|i| (q(1, 1), q(2 * i + 3, 7 - i))).collect();
        let b = ParabolicP1::half_weights(-1, -3, pts(6), flags).unwrap();
        let v = stability_classify(&b);
        assert_eq!(v, StabilityVerdict { class: StabilityClass::Stable, witness: None });
        assert_eq!(graded_of(&b, &v), Err(Error::NotSemistableNotStrict));
        assert!(max_agreement(&b, -3).0.unwrap() >= 4);
        assert_eq!(max_agreement(&b, -1).0, Some(0));
    }

    #[test]
    fn max_agreement_gap() {
        let b = ParabolicP1::half_weights(0, -4, pts(6), vec![second(); 6]).unwrap();
        for e in -3..0 {
            assert_eq!(max_agreement(&b, e), (None, None));
        }
        assert_eq!(max_agreement(&b, 1), (None, None));
        let (count, w) = max_agreement(&b, -4);
        assert_eq!(count, Some(6));
        w.unwrap().check(&b).unwrap();
    }

    #[test]
    fn split_moduli() {
        assert_eq!(split_moduli_p1(-3), SplitModuli::Empty);
        assert_eq!(split_moduli_p1(-4), SplitModuli::Balanced { c: -2 });
        assert_eq!(split_moduli_p1(0), SplitModuli::Balanced { c: 0 });
    }

    #[test]
    fn bundle_validation_and_json() {
        assert!(ParabolicP1::new(-2, -3, vec![], vec![], vec![]).is_err());
        assert!(ParabolicP1::half_weights(-1, -3, vec![q(1, 1), q(1, 1)], vec![first(); 2]).is_err());
        assert!(ParabolicP1::half_weights(-1, -3, vec![q(1, 1)], vec![(q(0, 1), q(0, 1))]).is_err());
        assert!(ParabolicP1::new(-1, -3, vec![q(1, 1)], vec![first()], vec![q(1, 1)]).is_err());
        let b = ParabolicP1::half_weights(-1, -3, vec![q(1, 1)], vec![(q(2, 1), q(3, 1))]).unwrap();
        assert_eq!(b.flags()[0], (q(1, 1), q(3, 2)));

        let cfg: FlagConfig = serde_json::from_str(
            r#"{"g":0,"c":0,"points":[{"num":1,"den":2},{"num":3,"den":1}],
                "flags":[[{"num":1,"den":1},{"num":0,"den":1}],[{"num":0,"den":1},{"num":5,"den":1}]],
                "weights":[{"num":1,"den":2},{"num":1,"den":2}]}"#,
        )
        .unwrap();
        let b = cfg.bundle().unwrap();
        assert_eq!((b.c(), b.d()), (0, -1));
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(serde_json::from_str::<ParabolicP1>(&s).unwrap(), b);
    }

    #[test]
    fn slope_transfer_trivial_case() {
        let p = CoverProfile::unramified(2, 1).unwrap();
        let pdat = AdmissibleParabolicDatum {
            det_bar_degree: 3,
            weights: BTreeMap::new(),
            d2: BTreeMap::new(),
            det_lift_sign: crate::equivariant::LiftSign::Plus,
        };
        let (lhs, rhs) = slope_transfer_check(&p, &pdat, 1, &BTreeSet::new()).unwrap();
        assert_eq!(lhs, Q::new(1, 2));
        assert_eq!(rhs, lhs);
    }
}
