//! Exact Laurent polynomials in one variable `q` with integer coefficients.
//!
//! A [`LaurentPoly`] is stored sparsely as `exponent -> coefficient`, where
//! coefficients are arbitrary-precision integers. No zero coefficient is ever
//! stored, so structural equality is ring equality.
//!
//! Text form: terms sorted by ascending exponent, e.g. `q^-1 - q`,
//! `2 + 3*q^2`, `0` for the zero polynomial. JSON form: an object
//! `{"<exponent>": <coefficient>, ...}` whose coefficients are integers, or
//! decimal strings when they do not fit in an `i64`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An element of `Z[q, q^-1]`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// `c * q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents and dropping zeros.
    pub fn from_terms<C: Into<BigInt>>(pairs: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Coefficient of `q^k`; zero when absent.
    pub fn coeff(&self, k: i32) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// The ring involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Multiplication by an integer scalar.
    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// True when every coefficient is nonnegative (exponents unrestricted).
    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// True when the polynomial lies in `Z_{>=0}[q]`: no negative exponents
    /// and no negative coefficients.
    pub fn is_nonnegative_polynomial(&self) -> bool {
        self.has_nonnegative_coeffs() && self.min_exponent().is_none_or(|e| e >= 0)
    }

    /// `self += c * q^e`.
    pub fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += factor * other`.
    pub fn add_product(&mut self, factor: &LaurentPoly, other: &LaurentPoly) {
        for (&e1, c1) in &factor.terms {
            for (&e2, c2) in &other.terms {
                self.add_term(e1 + e2, c1 * c2);
            }
        }
    }

    /// `self -= factor * other`.
    pub fn sub_product(&mut self, factor: &LaurentPoly, other: &LaurentPoly) {
        for (&e1, c1) in &factor.terms {
            for (&e2, c2) in &other.terms {
                self.add_term(e1 + e2, -(c1 * c2));
            }
        }
    }

    /// Evaluates at an integer `q` (only meaningful for `q = +-1` or when all
    /// exponents are nonnegative).
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn fmt_magnitude(f: &mut fmt::Formatter<'_>, e: i32, c: &BigInt) -> fmt::Result {
        match (e, c.is_one()) {
            (0, _) => write!(f, "{c}"),
            (1, true) => write!(f, "q"),
            (1, false) => write!(f, "{c}*q"),
            (_, true) => write!(f, "q^{e}"),
            (_, false) => write!(f, "{c}*q^{e}"),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            Self::fmt_magnitude(f, e, &mag)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        if cleaned.is_empty() {
            return Err(bad("empty polynomial"));
        }
        // Split into signed terms; a sign directly after '^' belongs to an exponent.
        let mut pieces: Vec<String> = Vec::new();
        let mut current = String::new();
        let mut prev: Option<char> = None;
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && prev.is_some() && prev != Some('^') {
                pieces.push(std::mem::take(&mut current));
            }
            current.push(ch);
            prev = Some(ch);
        }
        pieces.push(current);

        let mut out = LaurentPoly::zero();
        for piece in pieces {
            let (negative, body) = match piece.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            if body.is_empty() {
                return Err(bad("dangling sign"));
            }
            let (coeff_str, q_part) = match body.find('q') {
                None => (body, None),
                Some(pos) => {
                    let c = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
                    (c, Some(&body[pos + 1..]))
                }
            };
            let mut c: BigInt = if coeff_str.is_empty() {
                BigInt::one()
            } else {
                coeff_str
                    .parse()
                    .map_err(|_| bad(&format!("bad coefficient {coeff_str:?}")))?
            };
            let e: i32 = match q_part {
                None => 0,
                Some("") => 1,
                Some(rest) => {
                    let exp = rest
                        .strip_prefix('^')
                        .ok_or_else(|| bad(&format!("expected '^' after q in {body:?}")))?;
                    exp.parse().map_err(|_| bad(&format!("bad exponent {exp:?}")))?
                }
            };
            if negative {
                c = -c;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            let key = e.to_string();
            match c.to_i64() {
                Some(small) => map.serialize_entry(&key, &small)?,
                None => map.serialize_entry(&key, &c.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor;

        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Int(i64),
            Text(String),
        }

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping exponent strings to integer coefficients")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((key, value)) = access.next_entry::<String, Coeff>()? {
                    let e: i32 = key
                        .parse()
                        .map_err(|_| de::Error::custom(format!("bad exponent key {key:?}")))?;
                    let c = match value {
                        Coeff::Int(i) => BigInt::from(i),
                        Coeff::Text(t) => t
                            .parse()
                            .map_err(|_| de::Error::custom(format!("bad coefficient {t:?}")))?,
                    };
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }

        deserializer.deserialize_map(PolyVisitor)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c.clone());
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(p("q + 1") + p("-1"), LaurentPoly::q());
        assert_eq!(LaurentPoly::zero() + p("3*q^-2 + q"), p("3*q^-2 + q"));
        assert_eq!(p("q^-1 - q") + p("q^-1 - q"), p("2*q^-1 - 2*q"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(LaurentPoly::q() * LaurentPoly::q_pow(-1), LaurentPoly::one());
        assert_eq!(p("q^-1 - q") * p("q^-1 - q"), p("q^-2 - 2 + q^2"));
        assert_eq!(p("q + q^-1") * LaurentPoly::q(), p("q^2 + 1"));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(LaurentPoly::q().bar(), LaurentPoly::q_pow(-1));
        assert_eq!(p("1 + q^2").bar(), p("1 + q^-2"));
        let x = p("3*q^-4 - q + 7*q^5");
        assert_eq!(x.bar().bar(), x);
    }

    #[test]
    fn coeff_examples() {
        assert_eq!(p("q^2 + 3*q").coeff(1), BigInt::from(3));
        assert_eq!(p("q^2").coeff(5), BigInt::zero());
        assert_eq!(LaurentPoly::q_pow(3).bar().coeff(-3), BigInt::one());
    }

    #[test]
    fn text_format() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::one().to_string(), "1");
        assert_eq!(p("q^-1 - q").to_string(), "q^-1 - q");
        assert_eq!(p("-q^-1 + q").to_string(), "-q^-1 + q");
        assert_eq!(p("2*q^-1 - 2*q").to_string(), "2*q^-1 - 2*q");
        assert_eq!(p("q^2 + q^4").to_string(), "q^2 + q^4");
        assert_eq!(p("-3 + 5*q").to_string(), "-3 + 5*q");
        assert_eq!(p("q \u{2212} q^3"), p("q - q^3"));
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("2*x".parse::<LaurentPoly>().is_err());
        assert!("1 +".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn json_format() {
        let x = p("2*q^-1 - 2*q");
        let v = serde_json::to_value(&x).unwrap();
        assert_eq!(v, serde_json::json!({"-1": 2, "1": -2}));
        let big = LaurentPoly::monomial(BigInt::from(i64::MAX) * 4, 3);
        let v = serde_json::to_value(&big).unwrap();
        assert_eq!(v, serde_json::json!({"3": "36893488147419103228"}));
        let back: LaurentPoly = serde_json::from_value(v).unwrap();
        assert_eq!(back, big);
        let zero: LaurentPoly = serde_json::from_str("{}").unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn nonnegativity_predicates() {
        assert!(p("q + 2*q^3").is_nonnegative_polynomial());
        assert!(p("1").is_nonnegative_polynomial());
        assert!(LaurentPoly::zero().is_nonnegative_polynomial());
        assert!(!p("q^-1 + q").is_nonnegative_polynomial());
        assert!(p("q^-1 + q").has_nonnegative_coeffs());
        assert!(!p("q - q^2").is_nonnegative_polynomial());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i32..6, -5i64..5), 0..6).prop_map(LaurentPoly::from_terms)
    }

    fn canonical(x: &LaurentPoly) -> bool {
        x.terms().all(|(_, c)| !c.is_zero())
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn bar_is_ring_automorphism(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
            prop_assert_eq!(a.bar().bar(), a.clone());
        }

        #[test]
        fn canonical_form_is_closed(a in arb_poly(), b in arb_poly()) {
            prop_assert!(canonical(&(&a + &b)));
            prop_assert!(canonical(&(&a - &a)));
            prop_assert!((&a - &a).is_zero());
            prop_assert!(canonical(&(&a * &b)));
            prop_assert!(canonical(&a.bar()));
        }

        #[test]
        fn text_and_json_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a.clone());
            let json = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&json).unwrap(), a);
        }
    }
}
