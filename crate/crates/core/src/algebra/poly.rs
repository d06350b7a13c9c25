//! Dense univariate polynomials in `q` over exact rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::error::{KacError, Result};

/// A polynomial `c_0 + c_1 q + ... + c_n q^n`.
///
/// Coefficients are stored densely by exponent with trailing zeros stripped,
/// so the zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, exponent: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); exponent + 1];
        coeffs[exponent] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from small integer coefficients, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// `q^k - 1`.
    pub fn q_power_minus_one(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[0] = -Rational::one();
        coeffs[k] += Rational::one();
        Poly::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// The coefficients as integers, if they all are.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divides by `q^k`; the caller guarantees `k <= valuation`.
    pub fn unshift(&self, k: usize) -> Poly {
        debug_assert!(self.valuation().is_none_or(|v| v >= k));
        Poly { coeffs: self.coeffs.iter().skip(k).cloned().collect() }
    }

    /// Substitutes `q -> q^l`.
    pub fn substitute_power(&self, l: usize) -> Poly {
        assert!(l >= 1, "power substitution needs l >= 1");
        if l == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * l + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * l] = c.clone();
        }
        Poly { coeffs }
    }

    /// `q^deg P(1/q)` with `deg` the polynomial's own degree.
    pub fn reverse(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Poly::zero(),
        }
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dlead = divisor.leading().ok_or(KacError::ZeroDenominator)?.clone();
        let ddeg = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= ddeg {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - ddeg];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + ddeg] / &dlead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(ddeg);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Quotient of an exact division; a nonzero remainder is an error.
    pub fn exact_divide(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(KacError::NotDivisible)
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        let mut a = primitive_part(&clear_denominators(self));
        let mut b = primitive_part(&clear_denominators(other));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_remainder(&a, &b);
            a = b;
            b = primitive_part(&r);
        }
        Poly::from_bigints(&a).monic()
    }

    /// Serializable record: valuation plus decimal coefficient strings from there on.
    pub fn to_record(&self) -> PolyRecord {
        let valuation = self.valuation().unwrap_or(0);
        PolyRecord {
            valuation,
            coefficients: self.coeffs.iter().skip(valuation).map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_record(record: &PolyRecord) -> std::result::Result<Poly, String> {
        let coeffs = record
            .coefficients
            .iter()
            .map(|s| s.parse::<Rational>().map_err(|e| format!("bad coefficient {s:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Poly::from_coeffs(coeffs).shift(record.valuation))
    }
}

/// Wire form of a polynomial: `{valuation, coefficients}` with exact decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyRecord {
    pub valuation: usize,
    pub coefficients: Vec<String>,
}

// Integer-coefficient helpers for the primitive PRS gcd.

fn clear_denominators(p: &Poly) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect()
}

fn primitive_part(p: &[BigInt]) -> Vec<BigInt> {
    let mut v = p.to_vec();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() || content.is_one() {
        return v;
    }
    v.iter().map(|c| c / &content).collect()
}

fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor").clone();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    /// Renders ascending, e.g. `2 + 4*q - q^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else if mag.is_integer() {
                write!(f, "{mag}*{var}")?;
            } else {
                write!(f, "({mag})*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
    }

    #[test]
    fn expand_cubed_times_squared() {
        let a = p(&[-1, 1]).pow(3);
        let b = p(&[1, 1]).pow(2);
        // hand expansion: q^5 - q^4 - 2q^3 + 2q^2 + q - 1
        assert_eq!(&a * &b, p(&[-1, 1, 2, -2, -1, 1]));
    }

    #[test]
    fn additive_identity() {
        let a = p(&[3, 0, -2]);
        assert_eq!(&a + &Poly::zero(), a);
    }

    #[test]
    fn exact_division_examples() {
        assert_eq!(p(&[1, 0, 0, 0, -1]).exact_divide(&p(&[1, 0, -1])).unwrap(), p(&[1, 0, 1]));
        let g = 3;
        let num = &Poly::one() - &Poly::monomial(Rational::one(), 2 * g);
        assert_eq!(num.exact_divide(&p(&[1, 0, -1])).unwrap(), p(&[1, 0, 1, 0, 1]));
        assert_eq!(p(&[0, 0, 0, 1]).exact_divide(&p(&[1, 1])), Err(KacError::NotDivisible));
    }

    #[test]
    fn valuation_and_degree() {
        let a = p(&[0, 0, 3, 1]);
        assert_eq!(a.valuation(), Some(2));
        assert_eq!(a.degree(), Some(3));
        assert_eq!(Poly::zero().valuation(), None);
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn gcd_examples() {
        let a = &p(&[-1, 1]).pow(3) * &p(&[1, 1]);
        let b = &p(&[-1, 1]).pow(2) * &p(&[1, 1, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]).pow(2));
        assert_eq!(p(&[1, 1]).gcd(&p(&[2])), Poly::one());
    }

    #[test]
    fn rendering() {
        assert_eq!(Poly::q().to_string(), "q");
        assert_eq!(p(&[2, 4, 0, -1]).to_string(), "2 + 4*q - q^3");
        assert_eq!(Poly::zero().to_string(), "0");
        let half = Poly::from_coeffs(vec![Rational::new(1.into(), 2.into())]);
        assert_eq!(half.shift(1).to_string(), "(1/2)*q");
    }

    #[test]
    fn record_round_trip() {
        let a = p(&[0, 0, 3, -1]);
        let rec = a.to_record();
        assert_eq!(rec.valuation, 2);
        assert_eq!(rec.coefficients, vec!["3".to_string(), "-1".to_string()]);
        assert_eq!(Poly::from_record(&rec).unwrap(), a);
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-5i64..=5, 0..6).prop_map(|v| Poly::from_ints(&v))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn product_degree(a in small_poly(), b in small_poly()) {
            if !a.is_zero() && !b.is_zero() {
                prop_assert_eq!((&a * &b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
            }
        }

        #[test]
        fn exact_divide_inverts_mul(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
        }

        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assume!(!c.is_zero());
            let x = &a * &c;
            let y = &b * &c;
            let g = x.gcd(&y);
            if !g.is_zero() {
                prop_assert!(x.exact_divide(&g).is_ok());
                prop_assert!(y.exact_divide(&g).is_ok());
                prop_assert!(g.exact_divide(&c.monic()).is_ok() || x.is_zero() || y.is_zero());
            }
        }
    }
}
