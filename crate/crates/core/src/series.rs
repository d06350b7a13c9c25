//! Truncated multivariate power series in the vertex variables `z_i`.
//!
//! A series lives in a box: only multidegrees `e` with `e_i <= box_i` for
//! every `i` are kept, everything else is discarded by arithmetic. The
//! coefficient ring is generic, see [`Coefficient`].

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{rat, Poly, Rational, RationalFunction};
use crate::combinatorics::moebius;
use crate::error::{KacError, Result};

/// The operations a coefficient ring must provide for the Hua pipeline.
///
/// Implementations must be exact, and safe to call from several threads on
/// distinct values.
pub trait Coefficient: Clone + Send + Sync + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn mul_int(&self, k: i64) -> Self;
    /// Division by a nonzero integer.
    fn div_int(&self, k: i64) -> Self;
    /// The substitution `q -> q^l`.
    fn adams(&self, l: u32) -> Self;
    fn from_poly(p: &Poly) -> Self;

    /// Brings a value into its preferred representation (e.g. cancels
    /// common factors). Called after each coefficient of log/exp is built.
    fn normalized(self) -> Self {
        self
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn is_one(&self) -> bool {
        self.sub(&Self::one()).is_zero()
    }

    /// A size measure used for resource caps; 1 unless the ring is heavy.
    fn weight(&self) -> usize {
        1
    }
}

impl Coefficient for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RationalFunction::add(self, other)
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        RationalFunction::mul(self, other)
    }
    fn mul_int(&self, k: i64) -> Self {
        self.scale(&rat(k))
    }
    fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        self.scale(&Rational::new(1.into(), k.into()))
    }
    fn adams(&self, l: u32) -> Self {
        self.substitute_power(l as usize)
    }
    fn from_poly(p: &Poly) -> Self {
        RationalFunction::from_poly(p.clone())
    }
    fn sub(&self, other: &Self) -> Self {
        RationalFunction::sub(self, other)
    }
}

/// A power series truncated to a box of multidegrees.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    bounds: Vec<u32>,
    strides: Vec<usize>,
    data: Vec<C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    pub fn zero(bounds: &[u32]) -> Self {
        let mut strides = vec![1usize; bounds.len()];
        for i in (0..bounds.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (bounds[i + 1] as usize + 1);
        }
        let len = bounds.iter().map(|&b| b as usize + 1).product();
        TruncatedSeries { bounds: bounds.to_vec(), strides, data: vec![C::zero(); len] }
    }

    pub fn one(bounds: &[u32]) -> Self {
        let mut s = Self::zero(bounds);
        s.data[0] = C::one();
        s
    }

    /// Builds a series from `(multidegree, coefficient)` pairs; keys outside the box are dropped.
    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, C)>>(bounds: &[u32], terms: I) -> Self {
        let mut s = Self::zero(bounds);
        for (k, c) in terms {
            if s.contains(&k) {
                let i = s.index(&k);
                s.data[i] = s.data[i].add(&c);
            }
        }
        s
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn contains(&self, key: &[u32]) -> bool {
        key.len() == self.bounds.len() && key.iter().zip(&self.bounds).all(|(k, b)| k <= b)
    }

    fn index(&self, key: &[u32]) -> usize {
        key.iter().zip(&self.strides).map(|(&k, &s)| k as usize * s).sum()
    }

    fn key(&self, mut index: usize) -> Vec<u32> {
        self.strides
            .iter()
            .map(|&s| {
                let k = index / s;
                index %= s;
                k as u32
            })
            .collect()
    }

    /// Every multidegree of the box, in storage order (a key's divisors come first).
    pub fn keys(&self) -> Vec<Vec<u32>> {
        (0..self.data.len()).map(|i| self.key(i)).collect()
    }

    pub fn get(&self, key: &[u32]) -> Result<&C> {
        if !self.contains(key) {
            return Err(KacError::OutOfBox(key.to_vec()));
        }
        Ok(&self.data[self.index(key)])
    }

    pub fn set(&mut self, key: &[u32], value: C) -> Result<()> {
        if !self.contains(key) {
            return Err(KacError::OutOfBox(key.to_vec()));
        }
        let i = self.index(key);
        self.data[i] = value;
        Ok(())
    }

    pub fn constant_term(&self) -> &C {
        &self.data[0]
    }

    /// Nonzero terms in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &C)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.key(i), c))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn map<D: Coefficient, F: Fn(&C) -> D + Sync + Send>(&self, f: F) -> TruncatedSeries<D>
    where
        C: Sync,
    {
        TruncatedSeries {
            bounds: self.bounds.clone(),
            strides: self.strides.clone(),
            data: self.data.par_iter().map(f).collect(),
        }
    }

    fn check_box(&self, other: &Self) -> Result<()> {
        if self.bounds != other.bounds {
            return Err(KacError::BoxMismatch { left: self.bounds.clone(), right: other.bounds.clone() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_box(other)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.add(b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_box(other)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.sub(b);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn div_int(&self, k: i64) -> Self {
        self.map(|x| x.div_int(k))
    }

    /// Pairs `(index(e'), index(e - e'))` over all `e' <= e` for the key at `index`.
    fn splittings(&self, index: usize) -> Vec<(usize, usize)> {
        let key = self.key(index);
        let mut out = Vec::new();
        let mut sub = vec![0u32; key.len()];
        loop {
            let i = self.index(&sub);
            out.push((i, index - i));
            // odometer increment of `sub` within `key`
            let mut pos = key.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if sub[pos] < key[pos] {
                    sub[pos] += 1;
                    break;
                }
                sub[pos] = 0;
            }
        }
    }

    fn total_degree(&self, index: usize) -> i64 {
        self.key(index).iter().map(|&k| k as i64).sum()
    }

    /// Cauchy product truncated to the box.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_box(other)?;
        let data = (0..self.data.len())
            .into_par_iter()
            .map(|e| {
                self.splittings(e).into_iter().fold(C::zero(), |acc, (i, j)| {
                    if self.data[i].is_zero() || other.data[j].is_zero() {
                        acc
                    } else {
                        acc.add(&self.data[i].mul(&other.data[j]))
                    }
                })
                .normalized()
            })
            .collect();
        Ok(TruncatedSeries { bounds: self.bounds.clone(), strides: self.strides.clone(), data })
    }

    /// `log f = -Σ_{i>=1} (1 - f)^i / i`, for `f` with constant term 1.
    ///
    /// Evaluated through the Euler-operator recurrence `E f = f · E(log f)`,
    /// where `E` multiplies the `z^e` coefficient by `|e|`; the result agrees
    /// with the power sum term by term.
    pub fn log(&self) -> Result<Self> {
        self.log_capped(None)
    }

    pub fn log_capped(&self, cap: Option<usize>) -> Result<Self> {
        if !self.data[0].is_one() {
            return Err(KacError::BadConstantTerm { expected: "1", found: format!("{:?}", self.data[0]) });
        }
        let mut out = Self::zero(&self.bounds);
        for e in 1..self.data.len() {
            let n = self.total_degree(e);
            let pairs: Vec<(usize, usize)> = self
                .splittings(e)
                .into_iter()
                .filter(|&(i, j)| i != 0 && j != 0 && !self.data[i].is_zero() && !out.data[j].is_zero())
                .collect();
            let acc = pairs
                .par_iter()
                .map(|&(i, j)| self.data[i].mul(&out.data[j].mul_int(self.total_degree(j))))
                .reduce(C::zero, |a, b| a.add(&b));
            let value = self.data[e].sub(&acc.div_int(n)).normalized();
            check_cap(&value, cap)?;
            out.data[e] = value;
        }
        Ok(out)
    }

    /// `exp f = Σ f^i / i!`, for `f` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.data[0].is_zero() {
            return Err(KacError::BadConstantTerm { expected: "0", found: format!("{:?}", self.data[0]) });
        }
        let mut out = Self::one(&self.bounds);
        for e in 1..self.data.len() {
            let n = self.total_degree(e);
            let acc = self
                .splittings(e)
                .into_iter()
                .filter(|&(i, j)| i != 0 && !self.data[i].is_zero() && !out.data[j].is_zero())
                .fold(C::zero(), |acc, (i, j)| {
                    acc.add(&self.data[i].mul_int(self.total_degree(i)).mul(&out.data[j]))
                });
            out.data[e] = acc.div_int(n).normalized();
        }
        Ok(out)
    }

    /// `ψ_l`: `z_i -> z_i^l`, and `q -> q^l` in coefficients when `include_q`.
    pub fn adams(&self, l: u32, include_q: bool) -> Self {
        assert!(l >= 1, "Adams operations are indexed by l >= 1");
        let mut out = Self::zero(&self.bounds);
        for (i, c) in self.data.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let key: Vec<u32> = self.key(i).iter().map(|&k| k * l).collect();
            if out.contains(&key) {
                let j = out.index(&key);
                out.data[j] = if include_q { c.adams(l) } else { c.clone() };
            }
        }
        out
    }

    fn max_adams_index(&self) -> u32 {
        self.bounds.iter().copied().max().unwrap_or(0).max(1)
    }

    /// Plethystic logarithm `Σ_{l>=1} μ(l)/l · ψ_l(log f)`.
    pub fn pleth_log(&self, include_q: bool) -> Result<Self> {
        let log = self.log()?;
        let mut out = log.clone();
        for l in 2..=self.max_adams_index() {
            let mu = moebius(l as u64);
            if mu == 0 {
                continue;
            }
            let term = log.adams(l, include_q).map(|c| c.mul_int(mu).div_int(l as i64));
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Plethystic exponential `exp(Σ_{l>=1} ψ_l(f) / l)`.
    pub fn pleth_exp(&self, include_q: bool) -> Result<Self> {
        if !self.data[0].is_zero() {
            return Err(KacError::BadConstantTerm { expected: "0", found: format!("{:?}", self.data[0]) });
        }
        let mut arg = self.clone();
        for l in 2..=self.max_adams_index() {
            arg = arg.add(&self.adams(l, include_q).div_int(l as i64))?;
        }
        arg.exp()
    }
}

fn check_cap<C: Coefficient>(value: &C, cap: Option<usize>) -> Result<()> {
    if let Some(cap) = cap {
        let count = value.weight();
        if count > cap {
            return Err(KacError::TermExplosion { count, cap });
        }
    }
    Ok(())
}

impl<C: Coefficient> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (k, c) in self.terms() {
            m.entry(&k, c);
        }
        m.finish()
    }
}
