//! Structure of the fixed locus: the `zeta_2`-action, the relations
//! `~o` and `~e` on graded points, and the reports built on them.
//!
//! A graded point `L1-bar + L2-bar` is recorded by the degree of each summand
//! and the orbits where it meets the flag. Upstairs the summand `nu` is an
//! equivariant line bundle with exponent `d2(y)` where it meets the flag and
//! `d1(y)` elsewhere, and degree `n deg L-bar + sum k(y) e(y)`. The relations
//! act on these exponents; degrees on `Y` are recovered by dividing back.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cover::CoverProfile;
use crate::divisor::{d_mu, RootExponent};
use crate::equivariant::{
    bar_delta_degree, enumerate_lambda, to_parabolic, weight_system, AdmissibleParabolicDatum,
    DeterminantLift, LiftSign, NumericData, Rank2EqData,
};
use crate::error::{Error, Result};
use crate::rational::Q;

/// `zeta_2` on equivariant data: `(E, tau~) -> (E, -tau~)`.
///
/// Orbits of even length are untouched; on odd ones both exponents move by
/// `n'/2`, swapping when they straddle `n'/2`. The determinant is unchanged
/// since `det(-tau~) = det(tau~)`.
pub fn zeta2_apply(data: &Rank2EqData, profile: &CoverProfile) -> Result<Rank2EqData> {
    if profile.n().is_odd() {
        return Err(Error::OddOrder(profile.n()));
    }
    data.check(profile)?;
    let mut out = data.clone();
    for o in profile.orbits() {
        if o.k.is_even() {
            continue;
        }
        let h = o.nprime / 2;
        let (d1, d2) = data.numeric[&o.id];
        let pair = if d2 < h {
            (d1 + h, d2 + h)
        } else if d1 >= h {
            (d1 - h, d2 - h)
        } else {
            (d2 - h, d1 + h)
        };
        out.numeric.insert(o.id.clone(), pair);
    }
    out.check(profile)?;
    Ok(out)
}

/// Orbits where `zeta_2` switches the flag: odd `k` and `d1 < n'/2 <= d2`.
pub fn crossing_orbits(numeric: &NumericData, profile: &CoverProfile) -> BTreeSet<String> {
    profile
        .orbits()
        .iter()
        .filter(|o| {
            let (d1, d2) = numeric[&o.id];
            o.k.is_odd() && d1 < o.nprime / 2 && o.nprime / 2 <= d2
        })
        .map(|o| o.id.clone())
        .collect()
}

/// `zeta_2` on the parabolic side: `Gamma_(-m_x, F)(E-bar) (x) D-bar`, with
/// weights `1 - w` on the crossing orbits.
pub fn zeta2_parabolic(
    pdat: &AdmissibleParabolicDatum,
    profile: &CoverProfile,
) -> Result<AdmissibleParabolicDatum> {
    if profile.n().is_odd() {
        return Err(Error::OddOrder(profile.n()));
    }
    let zero = Q::from_integer(0);
    let mut weights = BTreeMap::new();
    let mut d2_new = BTreeMap::new();
    // n deg D-bar = sum k (d2 - d2') - sum_{crossing} k n' w
    let mut n_deg_dbar = 0;
    let mut crossings = 0;
    for o in profile.orbits() {
        let w = pdat.weights.get(&o.id).copied().unwrap_or(zero);
        let m = (w * o.nprime).to_integer();
        let d2 = *pdat
            .d2
            .get(&o.id)
            .ok_or_else(|| Error::InvalidDatum(format!("missing d2 at `{}`", o.id)))?;
        let d1 = d2 - m;
        let h = o.nprime / 2;
        let (w_new, d2_n) = if o.k.is_even() {
            (w, d2)
        } else if d2 < h {
            (w, d2 + h)
        } else if d1 >= h {
            (w, d2 - h)
        } else {
            crossings += 1;
            n_deg_dbar -= o.k * m;
            (Q::from_integer(1) - w, d1 + h)
        };
        n_deg_dbar += o.k * (d2 - d2_n);
        weights.insert(o.id.clone(), w_new);
        d2_new.insert(o.id.clone(), d2_n);
    }
    // Only the square of D-bar enters, so deg D-bar may be a half integer.
    let numerator = profile.n() * crossings + 2 * n_deg_dbar;
    if numerator % profile.n() != 0 {
        return Err(Error::NonIntegralDegree { numerator, n: profile.n() });
    }
    Ok(AdmissibleParabolicDatum {
        det_bar_degree: pdat.det_bar_degree + numerator / profile.n(),
        weights,
        d2: d2_new,
        det_lift_sign: pdat.det_lift_sign,
    })
}

/// One summand of a graded point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedSummand {
    pub bar_degree: i64,
    /// Orbits where the summand meets the flag and carries the weight.
    pub support: BTreeSet<String>,
}

/// A strictly semistable graded object `(L1-bar, w1) + (L2-bar, w2)` with
/// the equivariant context it came from. The summands are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedPoint {
    pub summands: [GradedSummand; 2],
    pub det: DeterminantLift,
    pub numeric: NumericData,
}

impl GradedPoint {
    pub fn new(
        profile: &CoverProfile,
        det: DeterminantLift,
        numeric: NumericData,
        a: GradedSummand,
        b: GradedSummand,
    ) -> Result<Self> {
        let mut summands = [a, b];
        summands.sort();
        let pt = GradedPoint { summands, det, numeric };
        pt.check(profile)?;
        Ok(pt)
    }

    pub fn check(&self, profile: &CoverProfile) -> Result<()> {
        let data = Rank2EqData { numeric: self.numeric.clone(), det: self.det.clone() };
        data.check(profile)?;
        let weights = weight_system(&self.numeric, profile)?;
        let weighted: BTreeSet<&String> =
            weights.iter().filter(|(_, w)| **w != Q::from_integer(0)).map(|(k, _)| k).collect();
        let [a, b] = &self.summands;
        if !a.support.is_disjoint(&b.support)
            || a.support.iter().chain(&b.support).collect::<BTreeSet<_>>() != weighted
        {
            return Err(Error::InvalidData(
                "graded supports do not partition the weighted orbits".into(),
            ));
        }
        let total = bar_delta_degree(&self.det, &self.numeric, profile)?;
        if a.bar_degree + b.bar_degree != total {
            return Err(Error::InvalidData(format!(
                "summand degrees {} + {} != deg Delta-bar = {total}",
                a.bar_degree, b.bar_degree
            )));
        }
        if self.pardeg(0, profile)? != self.pardeg(1, profile)? {
            return Err(Error::InvalidData("summands have different parabolic degree".into()));
        }
        Ok(())
    }

    /// `deg L-bar + sum_{support} w`.
    pub fn pardeg(&self, idx: usize, profile: &CoverProfile) -> Result<Q> {
        let weights = weight_system(&self.numeric, profile)?;
        let s = &self.summands[idx];
        Ok(s.support.iter().fold(Q::from_integer(s.bar_degree), |acc, y| acc + weights[y]))
    }

    /// Exponents of the equivariant line bundle upstairs.
    pub fn exponents(&self, idx: usize) -> BTreeMap<String, i64> {
        let s = &self.summands[idx];
        self.numeric
            .iter()
            .map(|(y, &(d1, d2))| (y.clone(), if s.support.contains(y) { d2 } else { d1 }))
            .collect()
    }

    /// Degree of the equivariant line bundle upstairs.
    pub fn equivariant_degree(&self, idx: usize, profile: &CoverProfile) -> i64 {
        let e = self.exponents(idx);
        profile.n() * self.summands[idx].bar_degree
            + profile.orbits().iter().map(|o| o.k * e[&o.id]).sum::<i64>()
    }

    fn from_equivariant(
        profile: &CoverProfile,
        det: DeterminantLift,
        exps: [BTreeMap<String, i64>; 2],
        degrees: [i64; 2],
    ) -> Result<Self> {
        let mut numeric = NumericData::new();
        let mut supports = [BTreeSet::new(), BTreeSet::new()];
        for o in profile.orbits() {
            let (x, y) = (exps[0][&o.id], exps[1][&o.id]);
            numeric.insert(o.id.clone(), (x.min(y), x.max(y)));
            if x > y {
                supports[0].insert(o.id.clone());
            } else if y > x {
                supports[1].insert(o.id.clone());
            }
        }
        let mut summands = Vec::with_capacity(2);
        for nu in 0..2 {
            let numerator = degrees[nu]
                - profile.orbits().iter().map(|o| o.k * exps[nu][&o.id]).sum::<i64>();
            if numerator % profile.n() != 0 {
                return Err(Error::NonIntegralDegree { numerator, n: profile.n() });
            }
            summands.push(GradedSummand {
                bar_degree: numerator / profile.n(),
                support: std::mem::take(&mut supports[nu]),
            });
        }
        let b = summands.pop().unwrap();
        let a = summands.pop().unwrap();
        GradedPoint::new(profile, det, numeric, a, b)
    }

    /// Twists summand `nu` by the character with exponent `shift[nu]` (as a
    /// root of unity of order `n`) and keeps the equivariant degrees.
    fn twisted(&self, profile: &CoverProfile, shift: [i64; 2], det: DeterminantLift) -> Result<Self> {
        let exps = [0, 1].map(|nu| {
            let mu = RootExponent::new(shift[nu], profile.n());
            self.exponents(nu)
                .into_iter()
                .map(|(y, e)| {
                    let o = profile.orbit(&y).expect("checked profile");
                    (y, (e + d_mu(mu, o)).rem_euclid(o.nprime))
                })
                .collect()
        });
        let degrees = [0, 1].map(|nu| self.equivariant_degree(nu, profile));
        GradedPoint::from_equivariant(profile, det, exps, degrees)
    }
}

/// `~o` step: `L1 (x) mu`, `L2 (x) mu^-1`; the determinant is unchanged.
pub fn sim_o_step(pt: &GradedPoint, mu: RootExponent, profile: &CoverProfile) -> Result<GradedPoint> {
    pt.check(profile)?;
    if mu.modulus() != profile.n() {
        return Err(Error::InvalidData(format!(
            "root of unity of order {} for a cover of order {}",
            mu.modulus(),
            profile.n()
        )));
    }
    pt.twisted(profile, [mu.a(), -mu.a()], pt.det.clone())
}

/// The root `mu` with `mu . Delta` the other lift: `exp(2 pi i / n)` from the
/// `+` lift and its inverse from the `-` lift.
pub fn cross_root(det: &DeterminantLift, profile: &CoverProfile) -> RootExponent {
    match det.lift_sign {
        LiftSign::Plus => RootExponent::new(1, profile.n()),
        LiftSign::Minus => RootExponent::new(-1, profile.n()),
    }
}

/// `~e` step twisting summand `idx` into the other determinant lift.
pub fn sim_e_step(pt: &GradedPoint, idx: usize, profile: &CoverProfile) -> Result<GradedPoint> {
    if profile.n().is_odd() {
        return Err(Error::OddOrder(profile.n()));
    }
    pt.check(profile)?;
    let mu = cross_root(&pt.det, profile);
    let mut shift = [0, 0];
    shift[idx] = mu.a();
    pt.twisted(profile, shift, pt.det.twisted(mu, profile))
}

/// Both `~e` translates (either summand may play `L1`).
pub fn sim_e_steps(pt: &GradedPoint, profile: &CoverProfile) -> Result<Vec<GradedPoint>> {
    let mut out = vec![sim_e_step(pt, 0, profile)?, sim_e_step(pt, 1, profile)?];
    out.sort();
    out.dedup();
    Ok(out)
}

/// `zeta_2` on graded points: both summands twisted by `-1`.
pub fn zeta2_graded(pt: &GradedPoint, profile: &CoverProfile) -> Result<GradedPoint> {
    if profile.n().is_odd() {
        return Err(Error::OddOrder(profile.n()));
    }
    pt.check(profile)?;
    let h = profile.n() / 2;
    pt.twisted(profile, [h, h], pt.det.clone())
}

/// All graded points over the lift `det` (up to the class of each summand
/// in its degree).
pub fn graded_points(det: &DeterminantLift, profile: &CoverProfile) -> Result<Vec<GradedPoint>> {
    let mut out = BTreeSet::new();
    for numeric in enumerate_lambda(det, profile)? {
        let total = bar_delta_degree(det, &numeric, profile)?;
        let weights = weight_system(&numeric, profile)?;
        let weighted: Vec<&String> =
            weights.iter().filter(|(_, w)| **w != Q::from_integer(0)).map(|(k, _)| k).collect();
        for mask in 0u64..1 << weighted.len() {
            let s1: BTreeSet<String> = weighted
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, y)| (*y).clone())
                .collect();
            // 2 e1 = deg Delta-bar + w(S2) - w(S1)
            let twice = weighted.iter().fold(Q::from_integer(total), |acc, y| {
                if s1.contains(*y) {
                    acc - weights[*y]
                } else {
                    acc + weights[*y]
                }
            });
            if !twice.is_integer() || twice.to_integer().is_odd() {
                continue;
            }
            let e1 = twice.to_integer() / 2;
            let s2 = weighted.iter().filter(|y| !s1.contains(**y)).map(|y| (*y).clone()).collect();
            out.insert(GradedPoint::new(
                profile,
                det.clone(),
                numeric.clone(),
                GradedSummand { bar_degree: e1, support: s1 },
                GradedSummand { bar_degree: total - e1, support: s2 },
            )?);
        }
    }
    Ok(out.into_iter().collect())
}

/// Neighbours of a graded point under the generating steps: `~o` for every
/// `mu`, and for even `n` also `zeta_2` and `~e`.
fn neighbours(pt: &GradedPoint, profile: &CoverProfile) -> Result<Vec<GradedPoint>> {
    let mut out = Vec::new();
    for mu in RootExponent::all(profile.n()) {
        out.push(sim_o_step(pt, mu, profile)?);
    }
    if profile.n().is_even() {
        out.push(zeta2_graded(pt, profile)?);
        out.extend(sim_e_steps(pt, profile)?);
    }
    Ok(out)
}

/// Partition of the closure of `points` into equivalence classes, each class
/// sorted and the classes ordered by their least element.
pub fn equivalence_classes(
    points: &[GradedPoint],
    profile: &CoverProfile,
) -> Result<Vec<Vec<GradedPoint>>> {
    let mut index: BTreeMap<GradedPoint, usize> = BTreeMap::new();
    let mut nodes: Vec<GradedPoint> = Vec::new();
    let mut parent: Vec<usize> = Vec::new();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut intern = |p: GradedPoint, nodes: &mut Vec<GradedPoint>, parent: &mut Vec<usize>| {
        *index.entry(p.clone()).or_insert_with(|| {
            nodes.push(p);
            parent.push(parent.len());
            parent.len() - 1
        })
    };
    for p in points {
        intern(p.clone(), &mut nodes, &mut parent);
    }
    let mut next = 0;
    while next < nodes.len() {
        let pt = nodes[next].clone();
        for q in neighbours(&pt, profile)? {
            let j = intern(q, &mut nodes, &mut parent);
            let (a, b) = (find(&mut parent, next), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        next += 1;
    }
    let mut groups: BTreeMap<usize, Vec<GradedPoint>> = BTreeMap::new();
    for (i, node) in nodes.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(node.clone());
    }
    let mut classes: Vec<Vec<GradedPoint>> = groups
        .into_values()
        .map(|mut c| {
            c.sort();
            c
        })
        .collect();
    classes.sort();
    Ok(classes)
}

/// Whether stable admissible bundles can map to strictly semistable points:
/// `r` even.
pub fn s_i_possible(profile: &CoverProfile) -> bool {
    profile.gcd_orbit_lengths().is_even()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub n: i64,
    pub r: i64,
    pub n_parity: String,
    pub r_parity: String,
    pub case: String,
    pub s_i_possible: bool,
    pub statements: Vec<String>,
}

fn parity(x: i64) -> String {
    if x.is_even() { "even" } else { "odd" }.to_string()
}

/// Which of the three cases of the decomposition theorem applies, and what
/// it asserts.
pub fn decomposition_report(profile: &CoverProfile) -> Result<DecompositionReport> {
    profile.validate()?;
    let n = profile.n();
    let r = profile.gcd_orbit_lengths();
    let mut statements = vec!["F : P_a -> |M| is onto with finite fibres".to_string()];
    let case = if n.is_odd() {
        statements.push("F : P_a^s -> |M^s| is a bijection".into());
        statements.push("F induces a bijection P_a^ss / ~o -> |M^ss|".into());
        "n odd"
    } else if r.is_odd() {
        statements.push("F induces a bijection P_a^s / zeta_2 -> |M^s|".into());
        statements.push("F induces a bijection (P_a^ss / zeta_2) / ~e -> |M^ss|".into());
        "n even, r odd"
    } else {
        statements.push(
            "F induces a bijection (P_a^s - P_a^{s,i}) / zeta_2 -> |M^s|".into(),
        );
        statements.push(
            "F induces a bijection P_a^{s,i} / zeta_2 + (P_a^ss / zeta_2) / ~e -> |M^ss|".into(),
        );
        "n even, r even"
    };
    Ok(DecompositionReport {
        n,
        r,
        n_parity: parity(n),
        r_parity: parity(r),
        case: case.into(),
        s_i_possible: s_i_possible(profile),
        statements,
    })
}

impl DecompositionReport {
    pub fn to_text(&self) -> String {
        let mut s = format!("case: {}\nn = {} ({}), r = {} ({})\n", self.case, self.n, self.n_parity, self.r, self.r_parity);
        let _ = writeln!(s, "stable bundles with non-stable image possible: {}", self.s_i_possible);
        for st in &self.statements {
            let _ = writeln!(s, "  - {st}");
        }
        s
    }
}

/// A subset `Q` of the branch points, stored as the canonical member of
/// `{Q, P - Q}`: the smaller one, or the one containing the first point when
/// both have `g + 1` elements.
pub type BoundaryLabel = BTreeSet<String>;

pub fn canonical_label(q: &BTreeSet<String>, profile: &CoverProfile) -> BoundaryLabel {
    let all: BTreeSet<String> = profile.orbits().iter().map(|o| o.id.clone()).collect();
    let comp: BTreeSet<String> = all.difference(q).cloned().collect();
    let first = profile.orbits().first().map(|o| o.id.clone());
    match q.len().cmp(&comp.len()) {
        std::cmp::Ordering::Less => q.clone(),
        std::cmp::Ordering::Greater => comp,
        std::cmp::Ordering::Equal => {
            if first.is_some_and(|f| q.contains(&f)) {
                q.clone()
            } else {
                comp
            }
        }
    }
}

/// The subset a hyperelliptic graded point stands for: the support of a
/// weighted summand, or where the exponents are `(1, 1)` when unweighted.
fn hyperelliptic_label(pt: &GradedPoint, profile: &CoverProfile) -> BoundaryLabel {
    let weighted = pt.numeric.values().any(|&(d1, d2)| d1 != d2);
    let q: BTreeSet<String> = if weighted {
        pt.summands[0].support.clone()
    } else {
        pt.numeric.iter().filter(|(_, &(d1, _))| d1 == 1).map(|(y, _)| y.clone()).collect()
    };
    canonical_label(&q, profile)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub c: i64,
    pub dimension: i64,
    pub boundary_classes: BTreeSet<BoundaryLabel>,
    pub normal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Intersection {
    pub components: (i64, i64),
    pub classes: BTreeSet<BoundaryLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperellipticReport {
    pub g: i64,
    pub d: i64,
    /// Number of strictly semistable classes found by closing the graded
    /// points under the equivalence relations.
    pub semistable_classes: usize,
    pub components: Vec<ComponentRecord>,
    /// The closed stratum `c = 0`, a single point.
    pub point_stratum: BTreeSet<BoundaryLabel>,
    pub pairwise: Vec<Intersection>,
    pub global_intersection: BTreeSet<BoundaryLabel>,
}

/// `g - 2c - 1`, or `2g - 1` for the balanced split type.
pub fn component_dimension(g: i64, c: i64) -> i64 {
    let d = -(g + 1);
    if 2 * c == d {
        2 * g - 1
    } else {
        g - 2 * c - 1
    }
}

/// True iff every within-component class is a singleton.
pub fn component_normality(_component: &ComponentRecord, relation_restricted: &[BTreeSet<BoundaryLabel>]) -> bool {
    relation_restricted.iter().all(|class| class.len() <= 1)
}

/// Components `Phi_c`, `d/2 <= c < 0`, of the fixed locus of the
/// hyperelliptic involution on a genus `g` curve, with their boundary
/// classes `<Q>`.
pub fn hyperelliptic_report(g: i64) -> Result<HyperellipticReport> {
    let profile = CoverProfile::hyperelliptic(g)?;
    let d = -(g + 1);
    let ids: Vec<String> = profile.orbits().iter().map(|o| o.id.clone()).collect();
    let lift = |r: i64, sign| {
        let residues = ids.iter().map(|y| (y.clone(), r)).collect();
        DeterminantLift::new(&profile, &residues, 0, sign)
    };
    let mut points = graded_points(&lift(0, LiftSign::Plus)?, &profile)?;
    points.extend(graded_points(&lift(1, LiftSign::Minus)?, &profile)?);
    let classes = equivalence_classes(&points, &profile)?;
    let class_labels: Vec<BTreeSet<BoundaryLabel>> = classes
        .iter()
        .map(|c| c.iter().map(|p| hyperelliptic_label(p, &profile)).collect())
        .collect();
    let all_labels: BTreeSet<BoundaryLabel> = class_labels.iter().flatten().cloned().collect();

    let members = |c: i64| -> BTreeSet<BoundaryLabel> {
        all_labels.iter().filter(|q| q.len() as i64 <= -2 * c).cloned().collect()
    };
    // ceil(d / 2) for d < 0
    let lo = -((-d) / 2);
    let mut components = Vec::new();
    for c in lo..0 {
        let boundary = members(c);
        let restricted: Vec<BTreeSet<BoundaryLabel>> = class_labels
            .iter()
            .map(|cl| cl.intersection(&boundary).cloned().collect())
            .collect();
        let mut rec = ComponentRecord {
            c,
            dimension: component_dimension(g, c),
            boundary_classes: boundary,
            normal: false,
        };
        rec.normal = component_normality(&rec, &restricted);
        components.push(rec);
    }
    let point_stratum = members(0);
    let mut pairwise = Vec::new();
    for (i, a) in components.iter().enumerate() {
        for b in &components[i + 1..] {
            pairwise.push(Intersection {
                components: (a.c, b.c),
                classes: a.boundary_classes.intersection(&b.boundary_classes).cloned().collect(),
            });
        }
    }
    let global_intersection = components
        .iter()
        .fold(point_stratum.clone(), |acc, c| acc.intersection(&c.boundary_classes).cloned().collect());
    Ok(HyperellipticReport {
        g,
        d,
        semistable_classes: classes.len(),
        components,
        point_stratum,
        pairwise,
        global_intersection,
    })
}

fn label_text(q: &BoundaryLabel) -> String {
    format!("<{{{}}}>", q.iter().cloned().collect::<Vec<_>>().join(","))
}

impl HyperellipticReport {
    pub fn to_text(&self) -> String {
        let mut s = format!("hyperelliptic fixed locus, g = {}, d = {}\n", self.g, self.d);
        let _ = writeln!(s, "strictly semistable classes: {}", self.semistable_classes);
        let _ = writeln!(s, "{:>4}  {:>9}  {:>8}  normal", "c", "dimension", "boundary");
        for c in &self.components {
            let _ = writeln!(s, "{:>4}  {:>9}  {:>8}  {}", c.c, c.dimension, c.boundary_classes.len(), c.normal);
        }
        for p in &self.pairwise {
            let _ = writeln!(s, "Phi_{} & Phi_{}: {} classes", p.components.0, p.components.1, p.classes.len());
        }
        let global: Vec<String> = self.global_intersection.iter().map(label_text).collect();
        let _ = writeln!(s, "intersection of all strata: {}", global.join(" "));
        s
    }

    /// Containment lattice: strata and boundary classes as nodes.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph fixed_locus {\n");
        for c in &self.components {
            let _ = writeln!(s, "  \"Phi_{0}\" [shape=box, label=\"Phi_{0} (dim {1})\"];", c.c, c.dimension);
        }
        let _ = writeln!(s, "  \"Phi_0\" [shape=box];");
        let mut labels: BTreeSet<&BoundaryLabel> = self.point_stratum.iter().collect();
        for c in &self.components {
            labels.extend(&c.boundary_classes);
        }
        for q in &labels {
            let _ = writeln!(s, "  \"{}\";", label_text(q));
        }
        for c in &self.components {
            for q in &c.boundary_classes {
                let _ = writeln!(s, "  \"Phi_{}\" -> \"{}\";", c.c, label_text(q));
            }
        }
        for q in &self.point_stratum {
            let _ = writeln!(s, "  \"Phi_0\" -> \"{}\";", label_text(q));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusComponent {
    pub name: String,
    pub copies: u32,
    /// Known dimension, when the symbolic formula evaluates.
    pub dimension: Option<i64>,
    pub dimension_formula: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub n: i64,
    pub deg_delta: i64,
    pub genus_y: i64,
    pub bar_degree: i64,
    pub case: String,
    pub components: Vec<CensusComponent>,
    /// The strictly semistable locus, when it is not empty.
    pub semistable_locus: Option<CensusComponent>,
    pub notes: Vec<String>,
}

/// Components of the fixed locus for an unramified cyclic cover of order `n`
/// over a curve of genus `genus_y`, with determinant of degree `deg_delta`.
pub fn unramified_census(n: i64, deg_delta: i64, genus_y: i64) -> Result<CensusRecord> {
    if genus_y < 1 && n > 1 {
        return Err(Error::InvalidProfile(format!(
            "a genus {genus_y} curve has no unramified cover of order {n}"
        )));
    }
    CoverProfile::unramified(n, genus_y)?;
    if deg_delta % n != 0 {
        return Err(Error::InconsistentDegrees(format!(
            "deg Delta = {deg_delta} is not n deg Delta-bar for n = {n}"
        )));
    }
    let bar = deg_delta / n;
    let moduli = CensusComponent {
        name: "M(Delta-bar)".into(),
        copies: 1,
        dimension: (genus_y >= 2).then_some(3 * genus_y - 3),
        dimension_formula: "3 g_Y - 3".into(),
    };
    let pic = CensusComponent {
        name: "Pic_0(Y)/G".into(),
        copies: 1,
        dimension: Some(genus_y),
        dimension_formula: "g_Y".into(),
    };
    let (case, components, semistable_locus) = if n.is_odd() {
        if deg_delta.is_odd() {
            ("n odd, deg Delta odd", vec![moduli], None)
        } else {
            ("n odd, deg Delta even", vec![moduli], Some(pic))
        }
    } else if bar.is_odd() {
        let prym = CensusComponent {
            name: "Prym variety".into(),
            copies: 2,
            dimension: None,
            dimension_formula: "dim Prym".into(),
        };
        ("n even, deg Delta / n odd", vec![prym], None)
    } else {
        let kummer = CensusComponent {
            name: "Kummer variety Prym/{+-1}".into(),
            copies: 4,
            dimension: None,
            dimension_formula: "dim Prym".into(),
        };
        ("n even, deg Delta / n even", vec![kummer, pic.clone()], Some(pic))
    };
    let mut notes = vec![
        "line bundles on Y are tracked by degree and kernel power only".to_string(),
    ];
    if case == "n even, deg Delta / n even" {
        notes.push("Pic_0(Y)/G meets each Kummer component in finitely many points".into());
    }
    Ok(CensusRecord {
        n,
        deg_delta,
        genus_y,
        bar_degree: bar,
        case: case.into(),
        components,
        semistable_locus,
        notes,
    })
}

impl CensusRecord {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "unramified census: n = {}, deg Delta = {}, g_Y = {}\ncase: {}\n",
            self.n, self.deg_delta, self.genus_y, self.case
        );
        for c in &self.components {
            let dim = c.dimension.map_or(c.dimension_formula.clone(), |d| format!("dim {d}"));
            let _ = writeln!(s, "  {} x {} ({})", c.copies, c.name, dim);
        }
        if let Some(ss) = &self.semistable_locus {
            let _ = writeln!(s, "strictly semistable locus: {}", ss.name);
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

/// `to_parabolic` after `zeta2_apply`, for comparison with [`zeta2_parabolic`].
pub fn zeta2_via_equivariant(
    data: &Rank2EqData,
    profile: &CoverProfile,
) -> Result<AdmissibleParabolicDatum> {
    to_parabolic(&zeta2_apply(data, profile)?, profile)
}
