//! Integer Laurent polynomials, the numerators of parametric coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Poly, Rational};

/// `Σ c_k q^{shift + k}` with integer `c_k`; normalized so the first and last
/// stored coefficients are nonzero. Zero has no coefficients and shift 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ZLaurent {
    shift: i64,
    coeffs: Vec<BigInt>,
}

impl ZLaurent {
    pub fn zero() -> Self {
        ZLaurent::default()
    }

    pub fn monomial(c: BigInt, exponent: i64) -> Self {
        ZLaurent::new(exponent, vec![c])
    }

    pub fn new(shift: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return ZLaurent::zero();
        }
        coeffs.drain(..lead);
        ZLaurent { shift: shift + lead as i64, coeffs }
    }

    pub fn from_ints(shift: i64, coeffs: &[i64]) -> Self {
        ZLaurent::new(shift, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent present.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.shift)
    }

    /// Highest exponent present.
    pub fn top(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.shift + self.coeffs.len() as i64 - 1)
    }

    /// Coefficients from the valuation upward.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.shift.min(other.shift);
        let hi = self.top().unwrap().max(other.top().unwrap());
        let mut out = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[(self.shift - lo) as usize + k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            out[(other.shift - lo) as usize + k] += c;
        }
        ZLaurent::new(lo, out)
    }

    pub fn add_assign(&mut self, other: &Self) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        if other.shift >= self.shift && other.top() <= self.top() {
            let off = (other.shift - self.shift) as usize;
            for (k, c) in other.coeffs.iter().enumerate() {
                self.coeffs[off + k] += c;
            }
            let renorm = self.coeffs.first().is_some_and(|c| c.is_zero())
                || self.coeffs.last().is_some_and(|c| c.is_zero());
            if renorm {
                *self = ZLaurent::new(self.shift, std::mem::take(&mut self.coeffs));
            }
        } else {
            *self = self.add(other);
        }
    }

    pub fn neg(&self) -> Self {
        ZLaurent { shift: self.shift, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ZLaurent::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        ZLaurent::new(self.shift + other.shift, out)
    }

    /// Multiplies by an ordinary integer polynomial given by ascending coefficients.
    pub fn mul_poly(&self, p: &[BigInt]) -> Self {
        if p.len() == 1 && p[0].is_one() {
            return self.clone();
        }
        self.mul(&ZLaurent::new(0, p.to_vec()))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return ZLaurent::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        ZLaurent { shift: self.shift, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Divides every coefficient by `c`, which must divide them all.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        ZLaurent {
            shift: self.shift,
            coeffs: self.coeffs.iter().map(|x| {
                debug_assert!((x % c).is_zero());
                x / c
            }).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shifted(&self, k: i64) -> Self {
        if self.is_zero() {
            return ZLaurent::zero();
        }
        ZLaurent { shift: self.shift + k, coeffs: self.coeffs.clone() }
    }

    /// `q -> q^l`.
    pub fn substitute_power(&self, l: u32) -> Self {
        if l == 1 || self.is_zero() {
            return self.clone();
        }
        let l = l as usize;
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * l + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * l] = c.clone();
        }
        ZLaurent { shift: self.shift * l as i64, coeffs }
    }

    /// Content (nonnegative gcd of coefficients).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Exact division by a monic integer polynomial, if the remainder is zero.
    pub fn div_exact_monic(&self, divisor: &[BigInt]) -> Option<Self> {
        if self.is_zero() {
            return Some(ZLaurent::zero());
        }
        let dd = divisor.len() - 1;
        debug_assert!(divisor[dd].is_one());
        if self.coeffs.len() <= dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem[..dd].iter().all(|c| c.is_zero()).then(|| ZLaurent::new(self.shift, quot))
    }

    /// The ordinary polynomial `q^{-valuation} self`, as rationals, plus the valuation.
    pub fn split_valuation(&self) -> (i64, Poly) {
        match self.valuation() {
            None => (0, Poly::zero()),
            Some(v) => (v, Poly::from_bigints(&self.coeffs)),
        }
    }

    /// As a polynomial, if no negative exponent occurs.
    pub fn to_poly(&self) -> Option<Poly> {
        match self.valuation() {
            None => Some(Poly::zero()),
            Some(v) if v >= 0 => Some(Poly::from_bigints(&self.coeffs).shift(v as usize)),
            Some(_) => None,
        }
    }

    /// Like `to_poly` but divides every coefficient by `den`.
    pub fn to_poly_over(&self, den: &BigInt) -> Option<Poly> {
        self.to_poly().map(|p| p.scale(&Rational::new(BigInt::one(), den.clone())))
    }

    pub fn max_abs_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.abs().bits()).max().unwrap_or(0)
    }
}
