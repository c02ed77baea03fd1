//! Weights for `sl_∞` (integer-indexed fundamental weights) and for affine
//! `sl_e` (residue-indexed, without a null-root coordinate).
//!
//! Conventions: `α_j = -Λ_{j-1} + 2Λ_j - Λ_{j+1}`, `ε_j = Λ_j - Λ_{j-1}` and
//! `ω_k = ε_k + … + ε_{k-e+1} = Λ_k - Λ_{k-e}`. With these, an entry `j` of a
//! symbol contributes `ε_j` to the weight and removing a period with maximum
//! `M` subtracts `ω_M`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finitely supported integer combination of the `Λ_{j,∞}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeightInf {
    coeffs: BTreeMap<i64, i64>,
}

impl WeightInf {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn fundamental(j: i64) -> Self {
        Self::from_pairs([(j, 1)])
    }

    /// `Λ_{t,∞} = Σ_c Λ_{t_c}`.
    pub fn from_charge(charge: &[i64]) -> Self {
        Self::from_pairs(charge.iter().map(|&j| (j, 1)))
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut w = Self::zero();
        for (j, a) in pairs {
            w.add_term(j, a);
        }
        w
    }

    pub fn alpha(j: i64) -> Self {
        Self::from_pairs([(j - 1, -1), (j, 2), (j + 1, -1)])
    }

    pub fn epsilon(j: i64) -> Self {
        Self::from_pairs([(j, 1), (j - 1, -1)])
    }

    pub fn omega(k: i64, e: u32) -> Self {
        Self::from_pairs([(k, 1), (k - e as i64, -1)])
    }

    pub fn add_term(&mut self, j: i64, a: i64) {
        if a == 0 {
            return;
        }
        let slot = self.coeffs.entry(j).or_insert(0);
        *slot += a;
        if *slot == 0 {
            self.coeffs.remove(&j);
        }
    }

    pub fn coeff(&self, j: i64) -> i64 {
        self.coeffs.get(&j).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, i64> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn level(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Smallest and largest index with a nonzero coefficient.
    pub fn support_range(&self) -> Option<(i64, i64)> {
        Some((*self.coeffs.keys().next()?, *self.coeffs.keys().next_back()?))
    }

    /// Coordinates on the `ε_j` basis; only level-0 weights have them.
    pub fn eps_coordinates(&self) -> Option<BTreeMap<i64, i64>> {
        if self.level() != 0 {
            return None;
        }
        let mut out = BTreeMap::new();
        let mut running = 0;
        let Some((lo, hi)) = self.support_range() else {
            return Some(out);
        };
        for j in (lo..=hi).rev() {
            running += self.coeff(j);
            if running != 0 {
                out.insert(j, running);
            }
        }
        Some(out)
    }

    /// `π`: `Λ_{j,∞} ↦ Λ_{j mod e, e}`.
    pub fn project(&self, e: u32) -> WeightAff {
        let mut w = WeightAff::zero(e);
        for (&j, &a) in &self.coeffs {
            w.add_term(j, a);
        }
        w
    }
}

impl fmt::Display for WeightInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.coeffs.iter().map(|(&j, &a)| (j, a)))
    }
}

fn write_combination(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (i64, i64)>) -> fmt::Result {
    let mut first = true;
    for (j, a) in terms {
        if a == 0 {
            continue;
        }
        let sign = if a < 0 { "-" } else { "+" };
        if first {
            if a < 0 {
                f.write_str("-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        if a.abs() != 1 {
            write!(f, "{}", a.abs())?;
        }
        write!(f, "L{j}")?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl Add for WeightInf {
    type Output = WeightInf;
    fn add(mut self, rhs: WeightInf) -> WeightInf {
        self += rhs;
        self
    }
}

impl AddAssign for WeightInf {
    fn add_assign(&mut self, rhs: WeightInf) {
        for (j, a) in rhs.coeffs {
            self.add_term(j, a);
        }
    }
}

impl Sub for WeightInf {
    type Output = WeightInf;
    fn sub(mut self, rhs: WeightInf) -> WeightInf {
        self -= rhs;
        self
    }
}

impl SubAssign for WeightInf {
    fn sub_assign(&mut self, rhs: WeightInf) {
        for (j, a) in rhs.coeffs {
            self.add_term(j, -a);
        }
    }
}

impl Neg for WeightInf {
    type Output = WeightInf;
    fn neg(self) -> WeightInf {
        WeightInf::from_pairs(self.coeffs.into_iter().map(|(j, a)| (j, -a)))
    }
}

impl Mul<WeightInf> for i64 {
    type Output = WeightInf;
    fn mul(self, rhs: WeightInf) -> WeightInf {
        WeightInf::from_pairs(rhs.coeffs.into_iter().map(|(j, a)| (j, self * a)))
    }
}

#[derive(Serialize, Deserialize)]
struct WeightInfRepr {
    fundamental: BTreeMap<String, i64>,
}

impl Serialize for WeightInf {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeightInfRepr { fundamental: self.coeffs.iter().map(|(j, a)| (j.to_string(), *a)).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightInf {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = WeightInfRepr::deserialize(d)?;
        let mut w = WeightInf::zero();
        for (k, a) in repr.fundamental {
            let j = k.trim().parse::<i64>().map_err(serde::de::Error::custom)?;
            w.add_term(j, a);
        }
        Ok(w)
    }
}

impl WeightInf {
    /// Parses `{"fundamental": {"j": coeff, …}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|err| Error::Parse {
            what: "weight",
            input: text.to_string(),
            reason: err.to_string(),
        })
    }
}

/// An integer combination of `Λ_{0,e}, …, Λ_{e-1,e}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightAff {
    e: u32,
    coeffs: Vec<i64>,
}

impl WeightAff {
    pub fn zero(e: u32) -> Self {
        WeightAff { e, coeffs: vec![0; e as usize] }
    }

    pub fn fundamental(i: i64, e: u32) -> Self {
        let mut w = Self::zero(e);
        w.add_term(i, 1);
        w
    }

    /// `Λ_{s mod e}`.
    pub fn from_charge(charge: &[i64], e: u32) -> Self {
        let mut w = Self::zero(e);
        for &s in charge {
            w.add_term(s, 1);
        }
        w
    }

    pub fn alpha(i: i64, e: u32) -> Self {
        let mut w = Self::zero(e);
        w.add_term(i - 1, -1);
        w.add_term(i, 2);
        w.add_term(i + 1, -1);
        w
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Adds `a·Λ_{i mod e}`.
    pub fn add_term(&mut self, i: i64, a: i64) {
        self.coeffs[i.rem_euclid(self.e as i64) as usize] += a;
    }

    pub fn coeff(&self, i: i64) -> i64 {
        self.coeffs[i.rem_euclid(self.e as i64) as usize]
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&a| a == 0)
    }

    pub fn level(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    fn check_same(&self, other: &WeightAff) {
        assert_eq!(self.e, other.e, "affine weights with different moduli");
    }
}

impl fmt::Display for WeightAff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.coeffs.iter().enumerate().map(|(i, &a)| (i as i64, a)))
    }
}

impl Add for WeightAff {
    type Output = WeightAff;
    fn add(mut self, rhs: WeightAff) -> WeightAff {
        self += rhs;
        self
    }
}

impl AddAssign for WeightAff {
    fn add_assign(&mut self, rhs: WeightAff) {
        self.check_same(&rhs);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for WeightAff {
    type Output = WeightAff;
    fn sub(mut self, rhs: WeightAff) -> WeightAff {
        self -= rhs;
        self
    }
}

impl SubAssign for WeightAff {
    fn sub_assign(&mut self, rhs: WeightAff) {
        self.check_same(&rhs);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Mul<WeightAff> for i64 {
    type Output = WeightAff;
    fn mul(self, mut rhs: WeightAff) -> WeightAff {
        for a in &mut rhs.coeffs {
            *a *= self;
        }
        rhs
    }
}

#[derive(Serialize, Deserialize)]
struct WeightAffRepr {
    e: u32,
    fundamental: BTreeMap<String, i64>,
}

impl Serialize for WeightAff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeightAffRepr {
            e: self.e,
            fundamental: self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| (i.to_string(), a))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightAff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = WeightAffRepr::deserialize(d)?;
        if repr.e < 2 {
            return Err(serde::de::Error::custom("modulus must be at least 2"));
        }
        let mut w = WeightAff::zero(repr.e);
        for (k, a) in repr.fundamental {
            let i = k.trim().parse::<i64>().map_err(serde::de::Error::custom)?;
            w.add_term(i, a);
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_is_sum_of_epsilons() {
        for e in 2..6u32 {
            for k in -5..5 {
                let mut sum = WeightInf::zero();
                for r in 0..e as i64 {
                    sum += WeightInf::epsilon(k - r);
                }
                assert_eq!(sum, WeightInf::omega(k, e));
                assert!(WeightInf::omega(k, e).project(e).is_zero());
            }
        }
    }

    #[test]
    fn alpha_projection() {
        assert_eq!(WeightAff::alpha(0, 2).coeffs(), &[2, -2]);
        assert_eq!(WeightInf::alpha(3).project(3), WeightAff::alpha(0, 3));
        let w = WeightAff::fundamental(0, 2) - WeightAff::alpha(0, 2);
        assert_eq!(w.coeffs(), &[-1, 2]);
    }

    #[test]
    fn eps_coordinates_roundtrip() {
        let w = WeightInf::omega(8, 2) + WeightInf::omega(3, 2) + WeightInf::epsilon(-1);
        let w = w - WeightInf::epsilon(4);
        let eps = w.eps_coordinates().unwrap();
        let mut back = WeightInf::zero();
        for (j, b) in eps {
            back += b * WeightInf::epsilon(j);
        }
        assert_eq!(back, w);
        assert!(WeightInf::fundamental(0).eps_coordinates().is_none());
    }

    #[test]
    fn json_shape() {
        let w = WeightInf::from_charge(&[-1, 2, 3, 6]);
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(text, r#"{"fundamental":{"-1":1,"2":1,"3":1,"6":1}}"#);
        assert_eq!(WeightInf::from_json(&text).unwrap(), w);
        let a = WeightAff::from_charge(&[0, 1, 3], 2);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<WeightAff>(&text).unwrap(), a);
    }

    #[test]
    fn display() {
        let w = WeightInf::from_pairs([(-1, 1), (2, -2)]);
        assert_eq!(w.to_string(), "L-1 - 2L2");
        assert_eq!(WeightInf::zero().to_string(), "0");
    }
}
