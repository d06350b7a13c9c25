//! Cyclotomic polynomials and certification that a denominator only has
//! roots of unity as roots.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Poly, Rational};
use crate::combinatorics::{divisors, euler_totient, moebius};
use crate::error::{KacError, Result};

/// `Φ_k` as a product over divisors: `Π_{d|k} (q^d - 1)^{μ(k/d)}`.
pub fn cyclotomic_poly(k: u32) -> Poly {
    assert!(k >= 1, "cyclotomic index starts at 1");
    let mut num = Poly::one();
    let mut den = Poly::one();
    for d in divisors(k as u64) {
        match moebius(k as u64 / d) {
            1 => num = &num * &Poly::q_power_minus_one(d as usize),
            -1 => den = &den * &Poly::q_power_minus_one(d as usize),
            _ => {}
        }
    }
    num.exact_divide(&den).expect("Möbius product is exact")
}

static INT_CACHE: OnceLock<RwLock<Vec<Arc<Vec<BigInt>>>>> = OnceLock::new();

/// Integer coefficients of `Φ_k`, ascending, memoized process-wide.
pub fn cyclotomic_int(k: u32) -> Arc<Vec<BigInt>> {
    let cache = INT_CACHE.get_or_init(|| RwLock::new(Vec::new()));
    if let Some(c) = cache.read().expect("cache lock").get(k as usize - 1) {
        return Arc::clone(c);
    }
    let mut w = cache.write().expect("cache lock");
    while w.len() < k as usize {
        let idx = w.len() as u32 + 1;
        let p = cyclotomic_poly(idx);
        let ints = p.to_integers().expect("cyclotomic polynomials are integral");
        w.push(Arc::new(ints));
    }
    Arc::clone(&w[k as usize - 1])
}

/// Factorization of `Φ_k(q^l)` into cyclotomic polynomials:
/// `Φ_k(q^l) = Π_{d | l, gcd(d, k) = 1} Φ_{kl/d}(q)`.
pub fn cyclotomic_adams(k: u32, l: u32) -> Vec<u32> {
    divisors(l as u64)
        .into_iter()
        .filter(|&d| num_integer::gcd(d, k as u64) == 1)
        .map(|d| (k as u64 * l as u64 / d) as u32)
        .collect()
}

/// `den = constant * Π Φ_k^{e_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicFactorization {
    pub constant: Rational,
    /// `(k, multiplicity)` pairs, ascending in `k`.
    pub factors: Vec<(u32, u32)>,
}

impl CyclotomicFactorization {
    pub fn expand(&self) -> Poly {
        let mut out = Poly::constant(self.constant.clone());
        for &(k, e) in &self.factors {
            out = &out * &cyclotomic_poly(k).pow(e);
        }
        out
    }
}

/// Splits `den` into cyclotomic factors by trial division.
///
/// Only `Φ_k` with `φ(k) <= deg den` can divide `den`, which bounds the search.
pub fn cyclotomic_certify(den: &Poly) -> Result<CyclotomicFactorization> {
    if den.is_zero() {
        return Err(KacError::ZeroDenominator);
    }
    if den.coeff(0).is_zero() {
        return Err(KacError::NotCyclotomic { residue: den.to_string() });
    }
    let mut residue = den.clone();
    let mut factors = Vec::new();
    let deg = den.degree().unwrap_or(0) as u64;
    // φ(k) >= sqrt(k / 2), so k <= 2 deg^2 covers every candidate
    let bound = 2 * deg * deg + 2;
    let mut k = 1u64;
    while k <= bound && !residue.is_constant() {
        if euler_totient(k) <= deg {
            let phi_k = cyclotomic_poly(k as u32);
            let mut mult = 0;
            loop {
                let (q, r) = residue.div_rem(&phi_k)?;
                if !r.is_zero() {
                    break;
                }
                residue = q;
                mult += 1;
            }
            if mult > 0 {
                factors.push((k as u32, mult));
            }
        }
        k += 1;
    }
    if !residue.is_constant() {
        return Err(KacError::NotCyclotomic { residue: residue.to_string() });
    }
    Ok(CyclotomicFactorization { constant: residue.coeff(0), factors })
}

/// A product `Π Φ_k^{e_k}` kept in factored form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct CycloProduct {
    exps: BTreeMap<u32, u32>,
}

impl CycloProduct {
    pub fn one() -> Self {
        CycloProduct::default()
    }

    /// `Π_j (q^j - 1)` for the listed `j`.
    pub fn from_q_powers_minus_one(js: &[u32]) -> Self {
        let mut out = CycloProduct::one();
        for &j in js {
            for d in divisors(j as u64) {
                *out.exps.entry(d as u32).or_insert(0) += 1;
            }
        }
        out
    }

    /// The single factor `Φ_k`.
    pub fn from_cyclotomic(k: u32) -> Self {
        let mut out = CycloProduct::one();
        out.exps.insert(k, 1);
        out
    }

    pub fn exponents(&self) -> &BTreeMap<u32, u32> {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, &e) in &other.exps {
            *out.exps.entry(k).or_insert(0) += e;
        }
        out
    }

    /// Least common multiple and the two cofactors `lcm / self`, `lcm / other`.
    pub fn lcm_with(&self, other: &Self) -> (Self, Self, Self) {
        let mut lcm = self.clone();
        for (&k, &e) in &other.exps {
            let slot = lcm.exps.entry(k).or_insert(0);
            *slot = (*slot).max(e);
        }
        (lcm.clone(), lcm.quotient(self), lcm.quotient(other))
    }

    /// `self / other`; the caller guarantees divisibility.
    pub fn quotient(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, &e) in &other.exps {
            let slot = out.exps.get_mut(&k).expect("divisor factor present");
            *slot -= e;
            if *slot == 0 {
                out.exps.remove(&k);
            }
        }
        out
    }

    pub fn divide_factor(&mut self, k: u32) {
        let slot = self.exps.get_mut(&k).expect("factor present");
        *slot -= 1;
        if *slot == 0 {
            self.exps.remove(&k);
        }
    }

    /// Image under `q -> q^l`.
    pub fn adams(&self, l: u32) -> Self {
        if l == 1 {
            return self.clone();
        }
        let mut out = CycloProduct::one();
        for (&k, &e) in &self.exps {
            for m in cyclotomic_adams(k, l) {
                *out.exps.entry(m).or_insert(0) += e;
            }
        }
        out
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|(&k, &e)| euler_totient(k as u64) * e as u64).sum()
    }

    /// Integer coefficients of the expanded product.
    pub fn expand_int(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::one()];
        for (&k, &e) in &self.exps {
            let phi = cyclotomic_int(k);
            for _ in 0..e {
                out = int_poly_mul(&out, &phi);
            }
        }
        out
    }

    pub fn expand(&self) -> Poly {
        Poly::from_bigints(&self.expand_int())
    }
}

pub(crate) fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
