//! Exact number helpers and their serde encodings.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise. Rationals are always strings `"p/q"` (or `"p"`
//! for integers).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

pub type Rational = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn ivec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

pub fn rvec(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(rat_int).collect()
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_rat_int(a: &[Rational], b: &[BigInt]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * rat_int(y))
}

pub fn gcd_all<'a>(v: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    v.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Scales a rational vector to the primitive integer vector pointing the same way.
pub fn primitive_direction(v: &[Rational]) -> Option<Vec<BigInt>> {
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * rat_int(&l)).to_integer()).collect();
    let g = gcd_all(&ints);
    Some(ints.into_iter().map(|x| x / &g).collect())
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
        let q = BigInt::from_str(q.trim()).map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Rational::new(p, q))
    } else {
        BigInt::from_str(s)
            .map(Rational::from_integer)
            .map_err(|e| format!("bad rational {s:?}: {e}"))
    }
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn fmt_ivec(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn is_nonneg(x: &BigInt) -> bool {
    !x.is_negative()
}

/// Serde wrapper for a single `BigInt`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntVisitor;

impl<'de> Visitor<'de> for IntVisitor {
    type Value = Int;
    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }
    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(BigInt::from(v)))
    }
    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int(BigInt::from(v)))
    }
    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Int, E> {
        Err(E::custom(format!("expected an integer, found {v}")))
    }
    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        BigInt::from_str(v.trim())
            .map(Int)
            .map_err(|e| E::custom(format!("bad integer {v:?}: {e}")))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

/// Serde wrapper for a single rational, encoded as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(&self.0))
    }
}

struct RatVisitor;

impl<'de> Visitor<'de> for RatVisitor {
    type Value = Rat;
    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational string \"p/q\" or an integer")
    }
    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
        Ok(Rat(Rational::from_integer(BigInt::from(v))))
    }
    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
        Ok(Rat(Rational::from_integer(BigInt::from(v))))
    }
    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
        parse_rational(v).map(Rat).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        d.deserialize_any(RatVisitor)
    }
}

/// `#[serde(with = "int_vec")]` for `Vec<BigInt>`.
pub mod int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&Int(x.clone()))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v: Vec<Int> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|x| x.0).collect())
    }
}

/// `#[serde(with = "int_rows")]` for `Vec<Vec<BigInt>>`.
pub mod int_rows {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Int>> = v
            .iter()
            .map(|r| r.iter().cloned().map(Int).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let v: Vec<Vec<Int>> = Vec::deserialize(d)?;
        Ok(v.into_iter()
            .map(|r| r.into_iter().map(|x| x.0).collect())
            .collect())
    }
}

/// `#[serde(with = "opt_int_vec")]` for `Option<Vec<BigInt>>`.
pub mod opt_int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        let w: Option<Vec<Int>> = v.as_ref().map(|r| r.iter().cloned().map(Int).collect());
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
        let v: Option<Vec<Int>> = Option::deserialize(d)?;
        Ok(v.map(|r| r.into_iter().map(|x| x.0).collect()))
    }
}

/// `#[serde(with = "int")]` for a single `BigInt` field.
pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        Int(v.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        Int::deserialize(d).map(|x| x.0)
    }
}

/// `#[serde(with = "rat")]` for a single rational field.
pub mod rat {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        Rat(v.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        Rat::deserialize(d).map(|x| x.0)
    }
}

/// `#[serde(with = "rat_vec")]` for `Vec<Rational>`.
pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&Rat(x.clone()))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v: Vec<Rat> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|x| x.0).collect())
    }
}

/// `#[serde(with = "rat_rows")]` for `Vec<Vec<Rational>>`.
pub mod rat_rows {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Rat>> = v
            .iter()
            .map(|r| r.iter().cloned().map(Rat).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let v: Vec<Vec<Rat>> = Vec::deserialize(d)?;
        Ok(v.into_iter()
            .map(|r| r.into_iter().map(|x| x.0).collect())
            .collect())
    }
}
