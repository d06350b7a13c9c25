//! Reduced rational functions in `q`.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Poly, Rational};
use crate::error::{KacError, Result};

/// `numerator / denominator` with the pair coprime and the denominator monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(Poly::constant(c))
    }

    /// `q^k` for any integer `k`.
    pub fn q_power(k: i64) -> Self {
        if k >= 0 {
            RationalFunction::from_poly(Poly::monomial(Rational::one(), k as usize))
        } else {
            RationalFunction {
                num: Poly::one(),
                den: Poly::monomial(Rational::one(), (-k) as usize),
            }
        }
    }

    /// Reduces `num / den` to lowest terms with a monic denominator.
    pub fn reduce(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(KacError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_divide(&g)?, den.exact_divide(&g)?)
        };
        let lc = den.leading().expect("nonzero").recip();
        Ok(RationalFunction { num: num.scale(&lc), den: den.scale(&lc) })
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        RationalFunction::reduce(num, den).expect("denominator is a product of nonzero factors")
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this function equals, if its denominator is constant.
    pub fn to_poly(&self) -> Option<Poly> {
        self.den.is_constant().then(|| self.num.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduced(&self.num + &other.num, self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let a = self.den.exact_divide(&g).expect("gcd divides");
        let b = other.den.exact_divide(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&other.num * &a);
        Self::reduced(num, &a * &other.den)
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RationalFunction::zero();
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.exact_divide(&g1).expect("gcd divides");
        let d2 = other.den.exact_divide(&g1).expect("gcd divides");
        let n2 = other.num.exact_divide(&g2).expect("gcd divides");
        let d1 = self.den.exact_divide(&g2).expect("gcd divides");
        let den = &d1 * &d2;
        let lc = den.leading().expect("nonzero").recip();
        RationalFunction { num: (&n1 * &n2).scale(&lc), den: den.scale(&lc) }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(KacError::ZeroDenominator);
        }
        Ok(self.mul(&RationalFunction { num: other.den.clone(), den: other.num.clone() }.normalized()))
    }

    fn normalized(self) -> Self {
        let lc = self.den.leading().expect("nonzero").recip();
        RationalFunction { num: self.num.scale(&lc), den: self.den.scale(&lc) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Substitutes `q -> q^l`.
    pub fn substitute_power(&self, l: usize) -> Self {
        RationalFunction {
            num: self.num.substitute_power(l),
            den: self.den.substitute_power(l),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl Poly {
    fn is_one_poly(&self) -> bool {
        self.coeffs().len() == 1 && self.coeffs()[0].is_one()
    }
}
