//! Combinatorial type of a cyclic cover `X -> Y = X/<tau>`.
//!
//! Only the special orbits (length `k < n`) are listed. Generic orbits have
//! length `n` and enter every gcd implicitly.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpecialOrbit {
    pub id: String,
    /// Orbit length.
    pub k: i64,
    /// Ramification number `n / k`.
    pub nprime: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrbitRecord {
    id: String,
    k: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileRecord {
    n: i64,
    genus_base: i64,
    orbits: Vec<OrbitRecord>,
}

/// Order of the automorphism, its special orbits and the genus of the base.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ProfileRecord", into = "ProfileRecord")]
pub struct CoverProfile {
    n: i64,
    genus_base: i64,
    orbits: Vec<SpecialOrbit>,
}

impl TryFrom<ProfileRecord> for CoverProfile {
    type Error = Error;

    fn try_from(rec: ProfileRecord) -> Result<Self> {
        CoverProfile::new(
            rec.n,
            rec.genus_base,
            rec.orbits.into_iter().map(|o| (o.id, o.k)),
        )
    }
}

impl From<CoverProfile> for ProfileRecord {
    fn from(p: CoverProfile) -> Self {
        ProfileRecord {
            n: p.n,
            genus_base: p.genus_base,
            orbits: p
                .orbits
                .into_iter()
                .map(|o| OrbitRecord { id: o.id, k: o.k })
                .collect(),
        }
    }
}

impl CoverProfile {
    /// Builds and validates a profile from `(id, k)` pairs.
    pub fn new<I, S>(n: i64, genus_base: i64, orbits: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        if n < 1 {
            return Err(Error::InvalidProfile(format!("order n = {n} must be positive")));
        }
        let orbits = orbits
            .into_iter()
            .map(|(id, k)| {
                let nprime = if k >= 1 && n % k == 0 { n / k } else { 0 };
                SpecialOrbit { id: id.into(), k, nprime }
            })
            .collect();
        let profile = CoverProfile { n, genus_base, orbits };
        profile.validate()?;
        Ok(profile)
    }

    /// The double cover of `P^1` by a hyperelliptic curve of genus `g`:
    /// `n = 2` with the `2g + 2` Weierstrass points as fixed points.
    pub fn hyperelliptic(g: i64) -> Result<Self> {
        if g < 1 {
            return Err(Error::InvalidGenus(g));
        }
        let width = (2 * g + 2).to_string().len();
        CoverProfile::new(
            2,
            0,
            (1..=2 * g + 2).map(|i| (format!("z{i:0width$}"), 1)),
        )
    }

    /// An unramified cyclic cover of order `n`.
    pub fn unramified(n: i64, genus_base: i64) -> Result<Self> {
        CoverProfile::new(n, genus_base, std::iter::empty::<(String, i64)>())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidProfile(format!("order n = {} must be positive", self.n)));
        }
        if self.genus_base < 0 {
            return Err(Error::InvalidProfile(format!(
                "base genus {} is negative",
                self.genus_base
            )));
        }
        let mut seen = BTreeSet::new();
        for o in &self.orbits {
            if !seen.insert(o.id.as_str()) {
                return Err(Error::InvalidProfile(format!("duplicate orbit label `{}`", o.id)));
            }
            if o.k < 1 || self.n % o.k != 0 {
                return Err(Error::InvalidProfile(format!(
                    "orbit `{}`: length {} does not divide n = {}",
                    o.id, o.k, self.n
                )));
            }
            if o.k == self.n {
                return Err(Error::InvalidProfile(format!(
                    "orbit `{}` has the generic length n = {} and is not special",
                    o.id, self.n
                )));
            }
            if o.nprime != self.n / o.k {
                return Err(Error::InvalidProfile(format!(
                    "orbit `{}`: ramification number {} != n/k",
                    o.id, o.nprime
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn genus_base(&self) -> i64 {
        self.genus_base
    }

    pub fn orbits(&self) -> &[SpecialOrbit] {
        &self.orbits
    }

    pub fn is_unramified(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbit(&self, id: &str) -> Result<&SpecialOrbit> {
        self.orbits
            .iter()
            .find(|o| o.id == id)
            .ok_or_else(|| Error::UnknownOrbit(id.to_string()))
    }

    /// `r = gcd(n, k(y) for y special)`.
    pub fn gcd_orbit_lengths(&self) -> i64 {
        self.orbits.iter().fold(self.n, |acc, o| acc.gcd(&o.k))
    }

    /// Order of `ker(pi^*: Pic(Y) -> Pic(X))`.
    ///
    /// Computed as the largest divisor `d` of `n` for which `X/<tau^d> -> Y`
    /// is unramified, i.e. every fibre of that intermediate cover has the
    /// generic length `d`. This is independent of [`Self::gcd_orbit_lengths`]
    /// and the two are cross-checked in tests.
    pub fn kernel_order(&self) -> i64 {
        (1..=self.n)
            .rev()
            .filter(|d| self.n % d == 0)
            .find(|&d| {
                self.orbits
                    .iter()
                    .all(|o| o.k / orbit_length_under_power(o.k, d) == d)
            })
            .unwrap_or(1)
    }

    /// Splits the cover into `X -> X/<tau^r>` (fibre lengths co-prime) and an
    /// unramified part of degree `r`. One orbit record is kept per `y`.
    pub fn factor_cover(&self) -> (CoverProfile, i64) {
        let r = self.gcd_orbit_lengths();
        let ramified = CoverProfile {
            n: self.n / r,
            genus_base: self.genus_base,
            orbits: self
                .orbits
                .iter()
                .map(|o| SpecialOrbit {
                    id: o.id.clone(),
                    k: o.k / r,
                    nprime: o.nprime,
                })
                .collect(),
        };
        (ramified, r)
    }
}

/// Length of the orbit of `tau^d` through a point whose `tau`-orbit has length `k`.
pub fn orbit_length_under_power(k: i64, d: i64) -> i64 {
    k / k.gcd(&d)
}
