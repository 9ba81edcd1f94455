//! Exact arithmetic in the quadratic field ℚ(√3).
//!
//! Every vertex, reflection line and billiard point of the three Euclidean
//! triangles lives in this field, so all geometric predicates can be
//! decided without tolerances.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `a + b·√3` with exact rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadRat {
    a: BigRational,
    b: BigRational,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl QuadRat {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::rational(rat(n, d))
    }

    /// `(p/q) + (r/s)·√3`.
    pub fn from_parts(p: i64, q: i64, r: i64, s: i64) -> Self {
        Self {
            a: rat(p, q),
            b: rat(r, s),
        }
    }

    pub fn sqrt3() -> Self {
        Self {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b√3`.
    pub fn conj(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a² - 3b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(3.into()) * &self.b * &self.b
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // Mixed signs: the larger of a² and 3b² wins.
            (sa, _) => {
                let a2 = &self.a * &self.a;
                let b2 = BigRational::from_integer(3.into()) * &self.b * &self.b;
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero in ℚ(√3)");
        Self {
            a: &self.a / &n,
            b: -(&self.b / &n),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * 3f64.sqrt()
    }
}

impl PartialOrd for QuadRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadRat {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum()
    }
}

impl Add for QuadRat {
    type Output = QuadRat;
    fn add(self, o: QuadRat) -> QuadRat {
        QuadRat {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl Sub for QuadRat {
    type Output = QuadRat;
    fn sub(self, o: QuadRat) -> QuadRat {
        QuadRat {
            a: self.a - o.a,
            b: self.b - o.b,
        }
    }
}

impl Mul for QuadRat {
    type Output = QuadRat;
    fn mul(self, o: QuadRat) -> QuadRat {
        let three = BigRational::from_integer(3.into());
        QuadRat {
            a: &self.a * &o.a + three * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Div for QuadRat {
    type Output = QuadRat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: QuadRat) -> QuadRat {
        self * o.recip()
    }
}

impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat { a: -self.a, b: -self.b }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl fmt::Debug for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√3", self.b),
            (false, false) => write!(f, "{}{:+}√3", self.a, self.b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse rational number from {0:?}")]
pub struct ParseQuadRatError(pub String);

/// Parses `p`, `p/q`, or `p/q|r/s` (meaning `p/q + (r/s)√3`).
impl FromStr for QuadRat {
    type Err = ParseQuadRatError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = match s.split_once('|') {
            Some((a, b)) => (parse_rat(a)?, parse_rat(b)?),
            None => (parse_rat(s)?, BigRational::zero()),
        };
        Ok(QuadRat { a, b })
    }
}

pub fn parse_rat(s: &str) -> Result<BigRational, ParseQuadRatError> {
    let err = || ParseQuadRatError(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(n, d))
}

#[derive(Serialize, Deserialize)]
struct QuadRatJson {
    a: String,
    b: String,
}

impl Serialize for QuadRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuadRatJson {
            a: fmt_rat(&self.a),
            b: fmt_rat(&self.b),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = QuadRatJson::deserialize(d)?;
        let a = parse_rat(&j.a).map_err(serde::de::Error::custom)?;
        let b = parse_rat(&j.b).map_err(serde::de::Error::custom)?;
        Ok(QuadRat { a, b })
    }
}

impl QuadRat {
    /// The two components as `"p/q"` strings.
    pub fn to_strings(&self) -> [String; 2] {
        [fmt_rat(&self.a), fmt_rat(&self.b)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, qd: i64, r: i64, s: i64) -> QuadRat {
        QuadRat::from_parts(p, qd, r, s)
    }

    #[test]
    fn sqrt3_squares_to_three() {
        assert_eq!(QuadRat::sqrt3() * QuadRat::sqrt3(), QuadRat::from_int(3));
    }

    #[test]
    fn signs_with_mixed_components() {
        assert_eq!(q(2, 1, -1, 1).signum(), Ordering::Greater); // 2 - √3
        assert_eq!(q(1, 1, -1, 1).signum(), Ordering::Less); // 1 - √3
        assert_eq!(q(-2, 1, 1, 1).signum(), Ordering::Less);
        assert_eq!(q(-1, 1, 1, 1).signum(), Ordering::Greater);
        assert_eq!(QuadRat::zero().signum(), Ordering::Equal);
    }

    #[test]
    fn parse_and_display() {
        let x: QuadRat = "1/2|-3/4".parse().unwrap();
        assert_eq!(x, q(1, 2, -3, 4));
        assert!("1/0".parse::<QuadRat>().is_err());
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"a":"1/2","b":"-3/4"}"#);
        assert_eq!(serde_json::from_str::<QuadRat>(&json).unwrap(), x);
    }

    fn arb() -> impl Strategy<Value = QuadRat> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(p, qd, r, s)| q(p, qd, r, s))
    }

    proptest! {
        #[test]
        fn sign_matches_float(x in arb()) {
            let f = x.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(x.signum(), f.partial_cmp(&0.0).unwrap());
            }
        }

        #[test]
        fn field_laws(x in arb(), y in arb(), z in arb()) {
            prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
            prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
            if !x.is_zero() {
                prop_assert_eq!(x.clone() * x.recip(), QuadRat::one());
            }
        }
    }
}
