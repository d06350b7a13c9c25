//! Partitions and the elementary number theory feeding Hua's formula.

use std::fmt;

use crate::algebra::{Poly, RationalFunction};

/// An integer partition, parts weakly decreasing; the empty partition has size 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Sorts the given parts descending and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let largest = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=largest)
            .map(|i| self.parts.iter().take_while(|&&p| p >= i).count() as u32)
            .collect();
        Partition { parts }
    }

    /// `m_k`: number of parts equal to `k`.
    pub fn multiplicity(&self, k: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == k).count() as u32
    }

    /// Nonzero multiplicities `(k, m_k)` for ascending `k`.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((k, m)) if *k == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All partitions of `n`, lexicographically descending: `(n), (n-1,1), ...`.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for p in (1..=remaining.min(max_part)).rev() {
        current.push(p);
        fill(remaining - p, p, current, out);
        current.pop();
    }
}

/// Partitions of every size `0..=n`, grouped by ascending size.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// `⟨λ, μ⟩ = Σ_i λ'_i μ'_i`.
///
/// Debug builds also evaluate `Σ_{i,j} min(i, j) m_i(λ) m_j(μ)` and compare.
pub fn pairing(a: &Partition, b: &Partition) -> u64 {
    let value = pairing_conjugate(&a.conjugate(), &b.conjugate());
    debug_assert_eq!(value, pairing_min(a, b), "pairing formulas disagree on {a} {b}");
    value
}

/// The pairing from precomputed conjugates.
pub fn pairing_conjugate(a_conj: &Partition, b_conj: &Partition) -> u64 {
    a_conj
        .parts
        .iter()
        .zip(&b_conj.parts)
        .map(|(&x, &y)| x as u64 * y as u64)
        .sum()
}

/// The pairing through multiplicities: `Σ_{i,j} min(i, j) m_i(λ) m_j(μ)`.
pub fn pairing_min(a: &Partition, b: &Partition) -> u64 {
    let ma = a.multiplicities();
    let mb = b.multiplicities();
    ma.iter()
        .flat_map(|&(i, mi)| mb.iter().map(move |&(j, mj)| i.min(j) as u64 * mi as u64 * mj as u64))
        .sum()
}

/// `φ_r(q⁻¹) = Π_{j=1}^r (1 - q^{-j})`, returned as `Π (q^j - 1) / q^{r(r+1)/2}`.
pub fn phi(r: u32) -> RationalFunction {
    let num = (1..=r).fold(Poly::one(), |acc, j| &acc * &Poly::q_power_minus_one(j as usize));
    let shift = (r as i64) * (r as i64 + 1) / 2;
    RationalFunction::from_poly(num).mul(&RationalFunction::q_power(-shift))
}

/// The `φ` indices making up `b_λ`: the differences `λ'_i - λ'_{i+1}` of the
/// conjugate, which are the nonzero part multiplicities of `λ`.
pub fn b_indices(lambda: &Partition) -> Vec<u32> {
    let conj = lambda.conjugate();
    let mut out = Vec::new();
    for (i, &c) in conj.parts.iter().enumerate() {
        let next = conj.parts.get(i + 1).copied().unwrap_or(0);
        if c > next {
            out.push(c - next);
        }
    }
    debug_assert_eq!(
        {
            let mut v = out.clone();
            v.sort_unstable();
            v
        },
        {
            let mut v: Vec<u32> = lambda.multiplicities().into_iter().map(|(_, m)| m).collect();
            v.sort_unstable();
            v
        },
        "conjugate differences must equal multiplicities"
    );
    out
}

/// `b_λ(q⁻¹) = Π_i φ_{n_i}(q⁻¹)`.
pub fn b_of(lambda: &Partition) -> RationalFunction {
    b_indices(lambda)
        .into_iter()
        .fold(RationalFunction::one(), |acc, m| acc.mul(&phi(m)))
}

/// The Möbius function.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1, "moebius is defined for n >= 1");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors are defined for n >= 1");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient.
pub fn euler_totient(n: u64) -> u64 {
    let mut n_left = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= n_left {
        if n_left.is_multiple_of(p) {
            while n_left.is_multiple_of(p) {
                n_left /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n_left > 1 {
        out -= out / n_left;
    }
    out
}
