//! Residue and degree shadows of `tau`-invariant divisors.
//!
//! An invariant divisor is recorded as coefficients on full special fibres
//! plus the degree of a divisor pulled back from `Y`. Roots of unity are
//! carried as exponents: `mu = exp(2 pi i a / n)` and the local generator
//! `xi_y = exp(2 pi i / n'(y))`, so `mu^k = xi^(a mod n')`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cover::{CoverProfile, SpecialOrbit};
use crate::error::Result;

/// The root of unity `exp(2 pi i a / modulus)`, normalised to `0 <= a < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootExponent {
    a: i64,
    modulus: i64,
}

impl RootExponent {
    pub fn new(a: i64, modulus: i64) -> Self {
        assert!(modulus >= 1, "root of unity modulus must be positive");
        RootExponent { a: a.rem_euclid(modulus), modulus }
    }

    pub fn one(modulus: i64) -> Self {
        RootExponent::new(0, modulus)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }


    pub fn inv(self) -> RootExponent {
        RootExponent::new(-self.a, self.modulus)
    }

    /// All elements of the group of `modulus`-th roots of unity.
    pub fn all(modulus: i64) -> impl Iterator<Item = RootExponent> {
        (0..modulus).map(move |a| RootExponent::new(a, modulus))
    }
}

/// Product of roots of unity of the same order.
impl std::ops::Mul for RootExponent {
    type Output = RootExponent;

    fn mul(self, other: RootExponent) -> RootExponent {
        assert_eq!(self.modulus, other.modulus);
        RootExponent::new(self.a + other.a, self.modulus)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantDivisor {
    /// Coefficient of the full fibre over each special orbit.
    pub residues: BTreeMap<String, i64>,
    /// Degree on `Y` of the pulled-back part.
    pub base_degree: i64,
}

impl InvariantDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `pi^*` of a degree `base_degree` divisor on `Y`.
    pub fn pullback(base_degree: i64) -> Self {
        InvariantDivisor { residues: BTreeMap::new(), base_degree }
    }

    pub fn check(&self, profile: &CoverProfile) -> Result<()> {
        for id in self.residues.keys() {
            profile.orbit(id)?;
        }
        Ok(())
    }

    fn residue(&self, id: &str) -> i64 {
        self.residues.get(id).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &InvariantDivisor) -> InvariantDivisor {
        let mut residues = self.residues.clone();
        for (id, v) in &other.residues {
            *residues.entry(id.clone()).or_insert(0) += v;
        }
        InvariantDivisor { residues, base_degree: self.base_degree + other.base_degree }
    }

    /// `sum_y residue(y) k(y) + n base_degree`.
    pub fn degree_on_x(&self, profile: &CoverProfile) -> Result<i64> {
        self.check(profile)?;
        let fibres: i64 = profile.orbits().iter().map(|o| self.residue(&o.id) * o.k).sum();
        Ok(fibres + profile.n() * self.base_degree)
    }

    /// Residues reduced mod `n'(y)`, one entry per special orbit.
    pub fn numeric_data(&self, profile: &CoverProfile) -> Result<LineNumericData> {
        self.check(profile)?;
        let values = profile
            .orbits()
            .iter()
            .map(|o| (o.id.clone(), self.residue(&o.id).rem_euclid(o.nprime)))
            .collect();
        Ok(LineNumericData { values })
    }

    /// Whether `[D]` is equivariantly a pullback from `Y`.
    pub fn is_pullback(&self, profile: &CoverProfile) -> Result<bool> {
        Ok(self.numeric_data(profile)?.values.values().all(|&v| v == 0))
    }
}

/// Numeric data `0 <= L(y) < n'(y)` of an equivariant line bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineNumericData {
    pub values: BTreeMap<String, i64>,
}

/// Degree of `pi^* D` for a divisor `D` on `Y`; equals `Nm(pi^* D)` up to the
/// factor making every kernel element `n`-torsion.
pub fn norm_degree_check(divisor_on_y_degree: i64, profile: &CoverProfile) -> i64 {
    profile.n() * divisor_on_y_degree
}

/// Order of vanishing, mod `n'(y)`, of a function `f` with `f o tau^-1 = mu f`
/// at the fibre over `y`.
pub fn d_mu(mu: RootExponent, orbit: &SpecialOrbit) -> i64 {
    mu.a().rem_euclid(orbit.nprime)
}
