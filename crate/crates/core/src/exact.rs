//! Exact positive reals of the form `prod p^(q_p)` with rational exponents.
//!
//! Every quantity the rho = Lambda test compares (`Lambda`, `g(P)`, products
//! of out-degrees, potentials) has this form, so all condition checks run
//! without floating point.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

pub type Exponent = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactValue {
    /// Prime -> nonzero exponent.
    exponents: BTreeMap<u64, Exponent>,
}

fn factorize(mut n: u64) -> Vec<(u64, i64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl ExactValue {
    pub fn one() -> Self {
        Self::default()
    }

    /// Positive integer. Panics on zero.
    pub fn from_int(n: u64) -> Self {
        assert!(n > 0, "ExactValue must be positive");
        let exponents = factorize(n)
            .into_iter()
            .map(|(p, k)| (p, Exponent::from_integer(k)))
            .collect();
        ExactValue { exponents }
    }

    pub fn from_ratio(num: u64, den: u64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    /// `(prime, exponent)` pairs, ascending by prime.
    pub fn exponents(&self) -> impl Iterator<Item = (u64, Exponent)> + '_ {
        self.exponents.iter().map(|(&p, &q)| (p, q))
    }

    pub fn exponent_of(&self, p: u64) -> Exponent {
        self.exponents.get(&p).copied().unwrap_or_else(Exponent::zero)
    }

    /// `[[p, num, den], ...]`.
    pub fn to_triples(&self) -> Vec<[i64; 3]> {
        self.exponents()
            .map(|(p, q)| [p as i64, *q.numer(), *q.denom()])
            .collect()
    }

    pub fn from_triples(triples: &[[i64; 3]]) -> Self {
        let mut v = ExactValue::one();
        for &[p, num, den] in triples {
            v = v * ExactValue::from_int(p as u64).pow(Exponent::new(num, den));
        }
        v
    }

    pub fn pow(&self, q: Exponent) -> Self {
        if q.is_zero() {
            return Self::one();
        }
        ExactValue {
            exponents: self.exponents.iter().map(|(&p, &e)| (p, e * q)).collect(),
        }
    }

    pub fn powi(&self, k: i64) -> Self {
        self.pow(Exponent::from_integer(k))
    }

    pub fn inv(&self) -> Self {
        self.powi(-1)
    }

    pub fn ln(&self) -> f64 {
        self.exponents()
            .map(|(p, q)| (p as f64).ln() * q.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    pub fn log2(&self) -> f64 {
        self.exponents()
            .map(|(p, q)| (p as f64).log2() * q.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    pub fn to_f64(&self) -> f64 {
        self.log2().exp2()
    }

    /// Exact comparison with one: raise to the common exponent denominator
    /// and compare the two resulting integers.
    pub fn cmp_one(&self) -> Ordering {
        let den = self.exponents.values().fold(1i64, |acc, q| acc.lcm(q.denom()));
        let mut above = BigUint::one();
        let mut below = BigUint::one();
        for (&p, q) in &self.exponents {
            let k = (q * den).to_integer();
            let factor = BigUint::from(p).pow(k.unsigned_abs());
            if k.is_positive() {
                above *= factor;
            } else {
                below *= factor;
            }
        }
        above.cmp(&below)
    }
}

impl Ord for ExactValue {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        (self.clone() / other.clone()).cmp_one()
    }
}

impl PartialOrd for ExactValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for ExactValue {
    type Output = ExactValue;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(mut self, rhs: ExactValue) -> ExactValue {
        for (p, q) in rhs.exponents {
            let e = self.exponents.entry(p).or_insert_with(Exponent::zero);
            *e += q;
            if e.is_zero() {
                self.exponents.remove(&p);
            }
        }
        self
    }
}

impl<'a> Mul<&'a ExactValue> for &'a ExactValue {
    type Output = ExactValue;

    fn mul(self, rhs: &ExactValue) -> ExactValue {
        self.clone() * rhs.clone()
    }
}

impl Div for ExactValue {
    type Output = ExactValue;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: ExactValue) -> ExactValue {
        self * rhs.inv()
    }
}

impl<'a> Div<&'a ExactValue> for &'a ExactValue {
    type Output = ExactValue;

    fn div(self, rhs: &ExactValue) -> ExactValue {
        self.clone() / rhs.clone()
    }
}

impl std::iter::Product for ExactValue {
    fn product<I: Iterator<Item = ExactValue>>(iter: I) -> Self {
        iter.fold(ExactValue::one(), |acc, v| acc * v)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (p, q)) in self.exponents().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if q.is_one() {
                write!(f, "{p}")?;
            } else if q.is_integer() {
                write!(f, "{p}^{q}")?;
            } else {
                write!(f, "{p}^({q})")?;
            }
        }
        Ok(())
    }
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let triples = self.to_triples();
        let mut seq = serializer.serialize_seq(Some(triples.len()))?;
        for t in &triples {
            seq.serialize_element(t)?;
        }
        seq.end()
    }
}
