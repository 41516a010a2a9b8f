//! Discrete calculus of equivariant rank-2 bundles.
//!
//! An equivariant bundle is seen through its numeric data: at every special
//! orbit the two eigenvalues of `tau~^k` are `xi^d1, xi^d2` with
//! `0 <= d1 <= d2 < n'`. Elementary modifications, the iterated modification
//! `Gamma_(m, F)` and the correspondence with admissible parabolic data all act
//! on these exponents together with the determinant lift.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cover::CoverProfile;
use crate::divisor::{d_mu, RootExponent};
use crate::error::{Error, Result};
use crate::rational::{self, Q};

/// Per-orbit sorted exponent pairs `(d1, d2)`.
pub type NumericData = BTreeMap<String, (i64, i64)>;

/// Which member of the determinant lift set is used. Only meaningful for even `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LiftSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl LiftSign {
    pub fn toggled(self) -> LiftSign {
        match self {
            LiftSign::Plus => LiftSign::Minus,
            LiftSign::Minus => LiftSign::Plus,
        }
    }
}

impl fmt::Display for LiftSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LiftSign::Plus => "+",
            LiftSign::Minus => "-",
        })
    }
}

/// An equivariant determinant line bundle `Delta`: residues `Delta(y)` in
/// `[0, n'(y))`, its degree on `X`, and the lift tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeterminantLift {
    pub residues: BTreeMap<String, i64>,
    pub degree: i64,
    pub lift_sign: LiftSign,
}

impl DeterminantLift {
    /// Normalises residues mod `n'` and fills missing orbits with zero.
    pub fn new(
        profile: &CoverProfile,
        residues: &BTreeMap<String, i64>,
        degree: i64,
        lift_sign: LiftSign,
    ) -> Result<Self> {
        for id in residues.keys() {
            profile.orbit(id)?;
        }
        let residues = profile
            .orbits()
            .iter()
            .map(|o| {
                let r = residues.get(&o.id).copied().unwrap_or(0);
                (o.id.clone(), r.rem_euclid(o.nprime))
            })
            .collect();
        let det = DeterminantLift { residues, degree, lift_sign };
        det.check(profile)?;
        Ok(det)
    }

    pub fn check(&self, profile: &CoverProfile) -> Result<()> {
        if self.residues.len() != profile.orbits().len() {
            return Err(Error::InvalidData(
                "determinant residues must cover every special orbit".into(),
            ));
        }
        for o in profile.orbits() {
            let r = *self
                .residues
                .get(&o.id)
                .ok_or_else(|| Error::UnknownOrbit(o.id.clone()))?;
            if !(0..o.nprime).contains(&r) {
                return Err(Error::InvalidData(format!(
                    "determinant residue {r} at `{}` outside [0, {})",
                    o.id, o.nprime
                )));
            }
        }
        if profile.n().is_odd() && self.lift_sign != LiftSign::Plus {
            return Err(Error::InvalidData("odd order admits only the + lift".into()));
        }
        Ok(())
    }

    /// `mu . Delta`: the same line bundle with the lift multiplied by `mu`.
    /// The tag flips when `mu` is not a square in the group of `n`-th roots.
    pub fn twisted(&self, mu: RootExponent, profile: &CoverProfile) -> DeterminantLift {
        let residues = profile
            .orbits()
            .iter()
            .map(|o| (o.id.clone(), (self.residues[&o.id] + d_mu(mu, o)).rem_euclid(o.nprime)))
            .collect();
        let lift_sign = if profile.n().is_even() && mu.a().is_odd() {
            self.lift_sign.toggled()
        } else {
            self.lift_sign
        };
        DeterminantLift { residues, degree: self.degree, lift_sign }
    }
}

/// The discrete shadow of an equivariant rank-2 bundle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rank2EqData {
    pub numeric: NumericData,
    pub det: DeterminantLift,
}

impl Rank2EqData {
    pub fn new(profile: &CoverProfile, numeric: NumericData, det: DeterminantLift) -> Result<Self> {
        let data = Rank2EqData { numeric, det };
        data.check(profile)?;
        Ok(data)
    }

    /// T-membership of every pair and the determinant congruence.
    pub fn check(&self, profile: &CoverProfile) -> Result<()> {
        self.det.check(profile)?;
        check_numeric(&self.numeric, profile)?;
        for o in profile.orbits() {
            let (d1, d2) = self.numeric[&o.id];
            if (d1 + d2 - self.det.residues[&o.id]).rem_euclid(o.nprime) != 0 {
                return Err(Error::InvalidData(format!(
                    "d1 + d2 = {} is not congruent to Delta = {} mod {} at `{}`",
                    d1 + d2,
                    self.det.residues[&o.id],
                    o.nprime,
                    o.id
                )));
            }
        }
        Ok(())
    }
}

fn check_numeric(numeric: &NumericData, profile: &CoverProfile) -> Result<()> {
    for id in numeric.keys() {
        profile.orbit(id)?;
    }
    for o in profile.orbits() {
        let &(d1, d2) = numeric
            .get(&o.id)
            .ok_or_else(|| Error::InvalidData(format!("missing numeric data at `{}`", o.id)))?;
        if !(0 <= d1 && d1 <= d2 && d2 < o.nprime) {
            return Err(Error::InvalidData(format!(
                "({d1}, {d2}) at `{}` is not in T_{}",
                o.id, o.nprime
            )));
        }
    }
    Ok(())
}

/// Which eigenvalue exponent of the sorted pair a flag keeps fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tracked {
    First,
    Second,
}

pub type FlagSelector = BTreeMap<String, Tracked>;

/// The parabolic side of the correspondence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdmissibleParabolicDatum {
    pub det_bar_degree: i64,
    #[serde(with = "rational::q_map")]
    pub weights: BTreeMap<String, Q>,
    pub d2: BTreeMap<String, i64>,
    pub det_lift_sign: LiftSign,
}

/// All numeric data compatible with `det`: the label set `Lambda_Delta`.
///
/// With no special orbits this is the single empty assignment.
pub fn enumerate_lambda(det: &DeterminantLift, profile: &CoverProfile) -> Result<Vec<NumericData>> {
    det.check(profile)?;
    let mut out: Vec<NumericData> = vec![BTreeMap::new()];
    for o in profile.orbits() {
        let target = det.residues[&o.id];
        let choices: Vec<(i64, i64)> = (0..o.nprime)
            .flat_map(|d1| (d1..o.nprime).map(move |d2| (d1, d2)))
            .filter(|(d1, d2)| (d1 + d2 - target).rem_euclid(o.nprime) == 0)
            .collect();
        out = out
            .into_iter()
            .flat_map(|partial| {
                choices.iter().map(move |&pair| {
                    let mut next = partial.clone();
                    next.insert(o.id.clone(), pair);
                    next
                })
            })
            .collect();
    }
    Ok(out)
}

/// `w(y) = (d2 - d1) / n'(y)`.
pub fn weight_system(numeric: &NumericData, profile: &CoverProfile) -> Result<BTreeMap<String, Q>> {
    check_numeric(numeric, profile)?;
    Ok(profile
        .orbits()
        .iter()
        .map(|o| {
            let (d1, d2) = numeric[&o.id];
            (o.id.clone(), Q::new(d2 - d1, o.nprime))
        })
        .collect())
}

/// Degree of the line bundle `Delta-bar` on `Y` with
/// `pi^* Delta-bar = Delta - sum (d1 + d2) pi^-1(y)`.
pub fn bar_delta_degree(
    det: &DeterminantLift,
    numeric: &NumericData,
    profile: &CoverProfile,
) -> Result<i64> {
    check_numeric(numeric, profile)?;
    let fibres: i64 = profile
        .orbits()
        .iter()
        .map(|o| {
            let (d1, d2) = numeric[&o.id];
            (d1 + d2) * o.k
        })
        .sum();
    let numerator = det.degree - fibres;
    if numerator % profile.n() != 0 {
        return Err(Error::NonIntegralDegree { numerator, n: profile.n() });
    }
    Ok(numerator / profile.n())
}

/// Shifts the untracked exponent by `-shift` and re-sorts. Returns the new
/// pair and the position of the tracked exponent in it.
fn shift_untracked(pair: (i64, i64), tracked: Tracked, shift: i64, nprime: i64) -> ((i64, i64), Tracked) {
    let (kept, other) = match tracked {
        Tracked::First => (pair.0, pair.1),
        Tracked::Second => (pair.1, pair.0),
    };
    let other = (other - shift).rem_euclid(nprime);
    if kept <= other {
        ((kept, other), Tracked::First)
    } else {
        ((other, kept), Tracked::Second)
    }
}

/// One elementary modification (or, with `inverse`, one inverse elementary
/// modification) along the flag fixing the `tracked` eigenvalue at `orbit`.
///
/// Returns the new data and the position of the tracked eigenvalue in the
/// re-sorted pair.
pub fn elementary_modification(
    data: &Rank2EqData,
    profile: &CoverProfile,
    orbit: &str,
    tracked: Tracked,
    inverse: bool,
) -> Result<(Rank2EqData, Tracked)> {
    data.check(profile)?;
    let o = profile.orbit(orbit)?;
    let step = if inverse { -1 } else { 1 };
    let (pair, pos) = shift_untracked(data.numeric[orbit], tracked, step, o.nprime);
    let mut out = data.clone();
    out.numeric.insert(orbit.to_string(), pair);
    let res = out.det.residues.get_mut(orbit).expect("checked above");
    *res = (*res - step).rem_euclid(o.nprime);
    out.det.degree -= step * o.k;
    Ok((out, pos))
}

/// `Gamma_(m, F)`: `m(y)` modifications at every orbit (inverse ones when
/// negative), each keeping the eigenvalue selected by `flags` fixed.
///
/// Returns the result together with the induced selector `F'`, for which
/// `gamma_apply(gamma_apply(x, m, F), -m, F') == x`.
pub fn gamma_apply(
    data: &Rank2EqData,
    profile: &CoverProfile,
    m: &BTreeMap<String, i64>,
    flags: &FlagSelector,
) -> Result<(Rank2EqData, FlagSelector)> {
    data.check(profile)?;
    for id in m.keys().chain(flags.keys()) {
        profile.orbit(id)?;
    }
    let mut out = data.clone();
    let mut induced = flags.clone();
    for o in profile.orbits() {
        let mult = m.get(&o.id).copied().unwrap_or(0);
        if mult == 0 {
            continue;
        }
        let tracked = *flags.get(&o.id).ok_or_else(|| {
            Error::InvalidData(format!("no flag selected at `{}` where m = {mult}", o.id))
        })?;
        let (pair, pos) = shift_untracked(data.numeric[&o.id], tracked, mult, o.nprime);
        out.numeric.insert(o.id.clone(), pair);
        let res = out.det.residues.get_mut(&o.id).expect("checked above");
        *res = (*res - mult).rem_euclid(o.nprime);
        out.det.degree -= mult * o.k;
        induced.insert(o.id.clone(), pos);
    }
    Ok((out, induced))
}

/// The parabolic datum `(Delta-bar, w, d2)` attached to an equivariant datum.
pub fn to_parabolic(data: &Rank2EqData, profile: &CoverProfile) -> Result<AdmissibleParabolicDatum> {
    data.check(profile)?;
    Ok(AdmissibleParabolicDatum {
        det_bar_degree: bar_delta_degree(&data.det, &data.numeric, profile)?,
        weights: weight_system(&data.numeric, profile)?,
        d2: data.numeric.iter().map(|(id, &(_, d2))| (id.clone(), d2)).collect(),
        det_lift_sign: data.det.lift_sign,
    })
}

fn scaled_weight(w: Q, nprime: i64, id: &str) -> Result<i64> {
    if w < Q::from_integer(0) || w >= Q::from_integer(1) {
        return Err(Error::InvalidDatum(format!("weight {w} at `{id}` outside [0, 1)")));
    }
    let scaled = w * nprime;
    if !scaled.is_integer() {
        return Err(Error::InvalidDatum(format!(
            "weight {w} at `{id}` has denominator not dividing {nprime}"
        )));
    }
    Ok(scaled.to_integer())
}

/// Inverse of [`to_parabolic`]: `(E, tau~) = Gamma_(w n', pi^* F)(pi^* E-bar) (x) [D2]`.
pub fn from_parabolic(pdat: &AdmissibleParabolicDatum, profile: &CoverProfile) -> Result<Rank2EqData> {
    for id in pdat.weights.keys().chain(pdat.d2.keys()) {
        profile.orbit(id)?;
    }
    if profile.n().is_odd() && pdat.det_lift_sign != LiftSign::Plus {
        return Err(Error::InvalidDatum("odd order admits only the + lift".into()));
    }
    let mut numeric = NumericData::new();
    let mut residues = BTreeMap::new();
    let mut degree = profile.n() * pdat.det_bar_degree;
    for o in profile.orbits() {
        let w = pdat.weights.get(&o.id).copied().unwrap_or_else(|| Q::from_integer(0));
        let m = scaled_weight(w, o.nprime, &o.id)?;
        let d2 = *pdat
            .d2
            .get(&o.id)
            .ok_or_else(|| Error::InvalidDatum(format!("missing d2 at `{}`", o.id)))?;
        if !(0..o.nprime).contains(&d2) {
            return Err(Error::InvalidDatum(format!("d2 = {d2} at `{}` outside [0, {})", o.id, o.nprime)));
        }
        let d1 = d2 - m;
        if d1 < 0 {
            return Err(Error::InvalidDatum(format!(
                "derived d1 = {d1} at `{}` is negative",
                o.id
            )));
        }
        numeric.insert(o.id.clone(), (d1, d2));
        residues.insert(o.id.clone(), (d1 + d2).rem_euclid(o.nprime));
        degree += (d1 + d2) * o.k;
    }
    Rank2EqData::new(
        profile,
        numeric,
        DeterminantLift { residues, degree, lift_sign: pdat.det_lift_sign },
    )
}

/// All `d2` assignments with `Delta(y) + n'(y) w(y) - 2 d2(y) = 0 mod n'(y)`
/// and `d1 = d2 - n' w >= 0`.
pub fn solve_d2(
    det: &DeterminantLift,
    weights: &BTreeMap<String, Q>,
    profile: &CoverProfile,
) -> Result<Vec<BTreeMap<String, i64>>> {
    det.check(profile)?;
    for id in weights.keys() {
        profile.orbit(id)?;
    }
    let mut out: Vec<BTreeMap<String, i64>> = vec![BTreeMap::new()];
    for o in profile.orbits() {
        let w = weights.get(&o.id).copied().unwrap_or_else(|| Q::from_integer(0));
        let m = scaled_weight(w, o.nprime, &o.id)?;
        let delta = det.residues[&o.id];
        let sols: Vec<i64> = (m..o.nprime)
            .filter(|d2| (delta + m - 2 * d2).rem_euclid(o.nprime) == 0)
            .collect();
        if sols.is_empty() {
            return Err(Error::NoSolution(o.id.clone()));
        }
        out = out
            .into_iter()
            .flat_map(|partial| {
                sols.iter().map(move |&d2| {
                    let mut next = partial.clone();
                    next.insert(o.id.clone(), d2);
                    next
                })
            })
            .collect();
    }
    Ok(out)
}
