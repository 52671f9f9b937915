use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;

/// A finite Q-linear combination of symbols q^a with rational exponents a:
/// the value type of all q-intersection numbers. Stored terms never have a
/// zero coefficient; the empty map is the zero element. Exponent keys live
/// in a BTreeMap so iteration and serialization are deterministic.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct QLaurent {
    terms: BTreeMap<Rational, Rational>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent::default()
    }

    pub fn one() -> Self {
        QLaurent::monomial(Rational::one(), Rational::zero())
    }

    /// The single-variable generator q.
    pub fn q() -> Self {
        QLaurent::monomial(Rational::one(), Rational::one())
    }

    /// c * q^exp.
    pub fn monomial(coeff: Rational, exp: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        QLaurent { terms }
    }

    pub fn constant(c: Rational) -> Self {
        QLaurent::monomial(c, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Rational) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, coeff: &Rational, exp: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp.clone()).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(exp);
        }
    }

    pub fn scale(&self, c: &Rational) -> QLaurent {
        let mut out = QLaurent::zero();
        for (exp, coeff) in &self.terms {
            out.add_term(&(coeff * c), exp);
        }
        out
    }

    /// q -> q^{-1}: each term c*q^a becomes c*q^{-a}.
    pub fn invert_variable(&self) -> QLaurent {
        let mut out = QLaurent::zero();
        for (exp, coeff) in &self.terms {
            out.add_term(coeff, &-exp);
        }
        out
    }

    /// The q = 1 specialization: sum of all coefficients.
    pub fn eval_at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }
}

impl Add<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (exp, coeff) in &rhs.terms {
            out.add_term(coeff, exp);
        }
        out
    }
}

impl Sub<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (exp, coeff) in &rhs.terms {
            out.add_term(&-coeff, exp);
        }
        out
    }
}

impl Mul<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(&(c1 * c2), &(e1 + e2));
            }
        }
        out
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        self.scale(&-Rational::one())
    }
}

macro_rules! by_value {
    ($trait:ident, $method:ident) => {
        impl $trait for QLaurent {
            type Output = QLaurent;
            fn $method(self, rhs: QLaurent) -> QLaurent {
                (&self).$method(&rhs)
            }
        }
    };
}

by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl fmt::Display for QLaurent {
    /// Golden-file format: terms sorted by exponent ascending, coefficients
    /// as num/den, monomials as q^(num/den).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(exp, coeff)| {
                if exp.is_zero() {
                    format!("{}", coeff)
                } else {
                    format!("{}*q^({})", coeff, exp)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// Wire format: array of triples [coeff_num, coeff_den, [exp_num, exp_den]],
// sorted by exponent ascending.
impl Serialize for QLaurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut rows: Vec<(i64, i64, (i64, i64))> = Vec::with_capacity(self.terms.len());
        for (exp, coeff) in &self.terms {
            let (cn, cd) = coeff
                .to_i64_pair()
                .ok_or_else(|| serde::ser::Error::custom("coefficient exceeds i64 range"))?;
            let (en, ed) = exp
                .to_i64_pair()
                .ok_or_else(|| serde::ser::Error::custom("exponent exceeds i64 range"))?;
            rows.push((cn, cd, (en, ed)));
        }
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QLaurent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<(i64, i64, (i64, i64))>::deserialize(deserializer)?;
        let mut out = QLaurent::zero();
        for (cn, cd, (en, ed)) in rows {
            if cd == 0 || ed == 0 {
                return Err(D::Error::custom("zero denominator"));
            }
            out.add_term(&Rational::new(cn, cd), &Rational::new(en, ed));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> QLaurent {
        QLaurent::monomial(Rational::one(), Rational::new(n, d))
    }

    #[test]
    fn mul_identity() {
        let a = &QLaurent::one() - &q(1, 1); // 1 - q
        assert_eq!(&a * &QLaurent::one(), a);
    }

    #[test]
    fn exponent_addition() {
        // (-q^{1/3}) * (q^{2/3}) = -q
        let a = q(1, 3).scale(&Rational::from_int(-1));
        let b = q(2, 3);
        assert_eq!(&a * &b, -&q(1, 1));
    }

    #[test]
    fn self_cancellation() {
        let a = &(&QLaurent::one() + &q(1, 2)) + &q(1, 1);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn invert_variable_examples() {
        assert_eq!(QLaurent::zero().invert_variable(), QLaurent::zero());
        let a = &QLaurent::one() + &q(1, 1);
        let b = &QLaurent::one() + &q(-1, 1);
        assert_eq!(a.invert_variable(), b);
        let c = q(1, 3).scale(&Rational::from_int(-1));
        assert_eq!(c.invert_variable(), q(-1, 3).scale(&Rational::from_int(-1)));
    }

    #[test]
    fn eval_at_one_examples() {
        // 1 + q^{2/4} + q with n = 4: three terms
        let a = &(&QLaurent::one() + &q(1, 2)) + &q(1, 1);
        assert_eq!(a.eval_at_one(), Rational::from_int(3));
        assert_eq!(QLaurent::zero().eval_at_one(), Rational::zero());
        let sphere = &QLaurent::one() - &q(1, 1);
        assert_eq!(sphere.eval_at_one(), Rational::zero());
    }

    #[test]
    fn serde_matches_spec_format() {
        let a = &QLaurent::one() - &q(1, 3); // 1 - q^{1/3}
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[[1,1,[0,1]],[-1,1,[1,3]]]");
        assert_eq!(serde_json::from_str::<QLaurent>(&s).unwrap(), a);
    }

    #[test]
    fn display_format() {
        let a = &QLaurent::one() - &q(1, 3);
        assert_eq!(a.to_string(), "1/1 + -1/1*q^(1/3)");
        assert_eq!(QLaurent::zero().to_string(), "0");
    }
}
