//! Kac polynomials as functions of the arrow multiplicities.
//!
//! Running Hua's pipeline over [`ParamElement`] instead of rational functions
//! yields, for a fixed dimension vector, the normal form
//!
//! ```text
//! A_{Q_n, d}(q) = Σ_j q^{l_j(n)} P_j(q) / Q(q)
//! ```
//!
//! with affine exponents `l_j`, a monic product of cyclotomic polynomials `Q`
//! and integer polynomials `P_j` with `P_j(0) != 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::algebra::cyclotomic::cyclotomic_int;
use crate::algebra::{cyclotomic_certify, CycloProduct, Poly, PolyRecord, Rational, ZLaurent};
use crate::error::{KacError, Result};
use crate::hua::{common_denominator, hua_series, kac_from_log, HuaCoefficient, HuaTerm};
use crate::quiver::{DimVector, Quiver, QuiverFile};
use crate::series::Coefficient;

/// Default bound on the number of stored integer coefficients in one element.
pub const DEFAULT_TERM_CAP: usize = 1_000_000;

/// `Σ_L q^{L·n} N_L(q) / (scale · den(q))`.
///
/// `L` ranges over integer vectors indexed by the varying arrows (trailing
/// zeros dropped), `N_L` are integer Laurent polynomials, `den` is a product
/// of cyclotomic polynomials and `scale` a positive integer. Zero is the
/// empty sum.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamElement {
    scale: BigInt,
    den: CycloProduct,
    terms: BTreeMap<Vec<i64>, ZLaurent>,
}

fn add_keys(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

impl ParamElement {
    pub fn new(scale: BigInt, den: CycloProduct, terms: BTreeMap<Vec<i64>, ZLaurent>) -> Self {
        assert!(scale.is_positive(), "scale must be positive");
        let mut out = ParamElement { scale, den, terms };
        out.terms.retain(|_, v| !v.is_zero());
        if out.terms.is_empty() {
            return ParamElement::zero();
        }
        out
    }

    /// `q^{constant + linear·n}` with unit coefficient.
    pub fn monomial(constant: i64, linear: &[i64]) -> Self {
        let mut key = linear.to_vec();
        while key.last() == Some(&0) {
            key.pop();
        }
        let mut terms = BTreeMap::new();
        terms.insert(key, ZLaurent::monomial(BigInt::one(), constant));
        ParamElement { scale: BigInt::one(), den: CycloProduct::one(), terms }
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn denominator(&self) -> &CycloProduct {
        &self.den
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, ZLaurent> {
        &self.terms
    }

    /// Total number of stored integer coefficients.
    pub fn term_count(&self) -> usize {
        self.terms.values().map(ZLaurent::term_count).sum()
    }

    fn map_numerators<F: Fn(&ZLaurent) -> ZLaurent>(&self, f: F) -> Self {
        ParamElement::new(
            self.scale.clone(),
            self.den.clone(),
            self.terms.iter().map(|(k, v)| (k.clone(), f(v))).collect(),
        )
    }
}

impl Coefficient for ParamElement {
    fn zero() -> Self {
        ParamElement { scale: BigInt::one(), den: CycloProduct::one(), terms: BTreeMap::new() }
    }

    fn one() -> Self {
        ParamElement::monomial(0, &[])
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (den, ca, cb) = self.den.lcm_with(&other.den);
        let scale = self.scale.lcm(&other.scale);
        let fa = &scale / &self.scale;
        let fb = &scale / &other.scale;
        let ea = ca.expand_int();
        let eb = cb.expand_int();
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            terms.insert(k.clone(), v.mul_poly(&ea).scale(&fa));
        }
        for (k, v) in &other.terms {
            let t = v.mul_poly(&eb).scale(&fb);
            terms.entry(k.clone()).or_insert_with(ZLaurent::zero).add_assign(&t);
        }
        ParamElement::new(scale, den, terms)
    }

    fn neg(&self) -> Self {
        self.map_numerators(ZLaurent::neg)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ParamElement::zero();
        }
        let mut terms: BTreeMap<Vec<i64>, ZLaurent> = BTreeMap::new();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                terms.entry(add_keys(ka, kb)).or_default().add_assign(&va.mul(vb));
            }
        }
        ParamElement::new(&self.scale * &other.scale, self.den.mul(&other.den), terms)
    }

    fn mul_int(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        self.map_numerators(|v| v.scale(&k))
    }

    fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        let mut out = if k < 0 { self.neg() } else { self.clone() };
        if out.is_zero() {
            return out;
        }
        out.scale *= BigInt::from(k.unsigned_abs());
        out
    }

    fn adams(&self, l: u32) -> Self {
        if l == 1 {
            return self.clone();
        }
        ParamElement::new(
            self.scale.clone(),
            self.den.adams(l),
            self.terms
                .iter()
                .map(|(k, v)| (k.iter().map(|x| x * l as i64).collect(), v.substitute_power(l)))
                .collect(),
        )
    }

    fn from_poly(p: &Poly) -> Self {
        let scale = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rational::from_integer(scale.clone())).to_integer()).collect();
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), ZLaurent::new(0, ints));
        ParamElement::new(scale, CycloProduct::one(), terms)
    }

    /// Cancels cyclotomic factors common to the denominator and every
    /// numerator, then the integer content against the scale.
    fn normalized(mut self) -> Self {
        if self.is_zero() {
            return ParamElement::zero();
        }
        let factors: Vec<(u32, u32)> = self.den.exponents().iter().map(|(&k, &e)| (k, e)).collect();
        for (k, e) in factors {
            let phi = cyclotomic_int(k);
            for _ in 0..e {
                let divided: Option<BTreeMap<Vec<i64>, ZLaurent>> = self
                    .terms
                    .iter()
                    .map(|(key, v)| v.div_exact_monic(&phi).map(|d| (key.clone(), d)))
                    .collect();
                match divided {
                    Some(t) => {
                        self.terms = t;
                        self.den.divide_factor(k);
                    }
                    None => break,
                }
            }
        }
        let g = self.terms.values().fold(self.scale.clone(), |acc, v| acc.gcd(&v.content()));
        if !g.is_one() {
            self.scale /= &g;
            for v in self.terms.values_mut() {
                *v = v.div_exact_scalar(&g);
            }
        }
        self
    }

    fn weight(&self) -> usize {
        self.term_count()
    }
}

impl HuaCoefficient for ParamElement {
    fn from_hua_terms(terms: &[HuaTerm]) -> Result<Self> {
        let (den, nums) = common_denominator(terms);
        Ok(ParamElement::new(BigInt::one(), den, nums).normalized())
    }
}

impl fmt::Debug for ParamElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let (val, p) = v.split_valuation();
            write!(f, "q^({val} + {k:?}·n)·({p})")?;
        }
        write!(f, "] / ({} · {:?})", self.scale, self.den.exponents())
    }
}

/// `constant + Σ_α linear_α n_α`, with `linear` aligned to a list of varying arrows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineExponent {
    pub constant: i64,
    pub linear: Vec<i64>,
}

impl AffineExponent {
    pub fn eval(&self, n: &[u64]) -> i64 {
        self.constant + self.linear.iter().zip(n).map(|(&l, &m)| l * m as i64).sum::<i64>()
    }

    pub fn has_linear_part(&self, linear: &[i64]) -> bool {
        self.linear == linear
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub exponent: AffineExponent,
    /// Integer polynomial with nonzero constant term.
    pub numerator: Poly,
}

/// The canonical form `Σ_j q^{l_j(n)} P_j(q) / Q(q)` of a parametric Kac polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub quiver: Quiver,
    pub dim: DimVector,
    /// Names of the arrows whose multiplicity is symbolic.
    pub varying: Vec<String>,
    /// Monic, with only roots of unity as roots.
    pub denom: Poly,
    /// Sorted by linear part, then constant; linear parts pairwise distinct.
    pub groups: Vec<Group>,
}

impl Decomposition {
    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    fn varying_indices(&self) -> Result<Vec<usize>> {
        self.varying.iter().map(|a| self.quiver.arrow_index(a)).collect()
    }

    /// Back to a ring element, with the denominator in factored form.
    pub fn to_param(&self) -> Result<ParamElement> {
        let factored = cyclotomic_certify(&self.denom)?;
        let mut den = CycloProduct::one();
        for &(k, e) in &factored.factors {
            for _ in 0..e {
                den = den.mul(&CycloProduct::from_cyclotomic(k));
            }
        }
        let mut terms = BTreeMap::new();
        for g in &self.groups {
            let ints = g.numerator.to_integers().ok_or_else(|| {
                KacError::InvariantViolation { instance: self.instance(), detail: "non-integer numerator".into() }
            })?;
            let mut key = g.exponent.linear.clone();
            while key.last() == Some(&0) {
                key.pop();
            }
            terms.insert(key, ZLaurent::new(g.exponent.constant, ints));
        }
        Ok(ParamElement::new(BigInt::one(), den, terms))
    }

    fn instance(&self) -> String {
        format!("{} d={} varying {:?}", self.quiver, self.dim, self.varying)
    }

    /// `Σ_j q^{l_j(n)} P_j / Q` at concrete multiplicities of the varying arrows.
    pub fn specialize(&self, n: &[u64]) -> Result<Poly> {
        if n.len() != self.varying.len() {
            return Err(KacError::KeyMismatch(format!(
                "{} multiplicities given for {} varying arrows",
                n.len(),
                self.varying.len()
            )));
        }
        let mut num = ZLaurent::zero();
        for g in &self.groups {
            let ints = g.numerator.to_integers().expect("canonical numerators are integral");
            num.add_assign(&ZLaurent::new(g.exponent.eval(n), ints));
        }
        let den = self.denom.to_integers().expect("canonical denominators are integral");
        let quotient = num
            .div_exact_monic(&den)
            .ok_or_else(|| KacError::NotPolynomial(format!("{} at n={n:?}: denominator does not divide", self.instance())))?;
        quotient
            .to_poly()
            .ok_or_else(|| KacError::NotPolynomial(format!("{} at n={n:?}: negative powers of q", self.instance())))
    }

    /// `1 - ⟨d, d⟩` as an affine function of the varying multiplicities.
    pub fn degree_exponent(&self) -> Result<AffineExponent> {
        degree_exponent(&self.quiver, &self.dim, &self.varying_indices()?)
    }

    pub fn to_record(&self) -> DecompositionRecord {
        DecompositionRecord {
            quiver: self.quiver.to_file(),
            dim: self.dim.0.clone(),
            varying: self.varying.clone(),
            denominator: self.denom.to_record(),
            groups: self
                .groups
                .iter()
                .map(|g| GroupRecord {
                    constant: g.exponent.constant,
                    linear: self
                        .varying
                        .iter()
                        .zip(&g.exponent.linear)
                        .filter(|(_, &c)| c != 0)
                        .map(|(a, &c)| (a.clone(), c))
                        .collect(),
                    numerator: g.numerator.to_record(),
                })
                .collect(),
        }
    }

    pub fn from_record(record: &DecompositionRecord) -> Result<Self> {
        let quiver = Quiver::from_file(record.quiver.clone())?;
        let bad = |e: String| KacError::InvalidQuiver(format!("malformed decomposition: {e}"));
        for a in &record.varying {
            quiver.arrow_index(a)?;
        }
        let groups = record
            .groups
            .iter()
            .map(|g| {
                for a in g.linear.keys() {
                    if !record.varying.contains(a) {
                        return Err(KacError::KeyMismatch(format!("arrow {a} is not varying")));
                    }
                }
                Ok(Group {
                    exponent: AffineExponent {
                        constant: g.constant,
                        linear: record.varying.iter().map(|a| g.linear.get(a).copied().unwrap_or(0)).collect(),
                    },
                    numerator: Poly::from_record(&g.numerator).map_err(bad)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition {
            quiver,
            dim: DimVector(record.dim.clone()),
            varying: record.varying.clone(),
            denom: Poly::from_record(&record.denominator).map_err(bad)?,
            groups,
        })
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "0");
        }
        write!(f, "[")?;
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut exp = g.exponent.constant.to_string();
            for (a, &c) in self.varying.iter().zip(&g.exponent.linear) {
                if c != 0 {
                    exp.push_str(&format!(" + {c}*n_{a}"));
                }
            }
            write!(f, "q^({exp})*({})", g.numerator)?;
        }
        write!(f, "] / ({})", self.denom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupRecord {
    pub constant: i64,
    pub linear: BTreeMap<String, i64>,
    pub numerator: PolyRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionRecord {
    pub quiver: QuiverFile,
    pub dim: Vec<u32>,
    pub varying: Vec<String>,
    pub denominator: PolyRecord,
    pub groups: Vec<GroupRecord>,
}

/// `1 - ⟨d, d⟩` with the multiplicities of `varying` arrows left symbolic.
pub fn degree_exponent(quiver: &Quiver, d: &DimVector, varying: &[usize]) -> Result<AffineExponent> {
    let mut constant = 1 - d.0.iter().map(|&x| (x as i64) * (x as i64)).sum::<i64>();
    let mut linear = vec![0; varying.len()];
    for (i, a) in quiver.arrows().iter().enumerate() {
        let c = a.multiplicity as i64 * d.0[a.source] as i64 * d.0[a.target] as i64;
        match varying.iter().position(|&v| v == i) {
            Some(slot) => linear[slot] = c,
            None => constant += c,
        }
    }
    Ok(AffineExponent { constant, linear })
}

/// Puts a raw pipeline output into the unique normal form.
pub fn canonicalize(raw: &ParamElement, quiver: &Quiver, dim: &DimVector, varying: &[String]) -> Result<Decomposition> {
    let instance = || format!("{quiver} d={dim} varying {varying:?}");
    let reduced = raw.clone().normalized();
    if !reduced.scale.is_one() {
        return Err(KacError::InvariantViolation {
            instance: instance(),
            detail: format!("numerators not integral (common scale {})", reduced.scale),
        });
    }
    let mut groups = Vec::with_capacity(reduced.terms.len());
    for (key, num) in &reduced.terms {
        if key.len() > varying.len() {
            return Err(KacError::KeyMismatch(format!("linear part {key:?} exceeds the varying arrows")));
        }
        let mut linear = key.clone();
        linear.resize(varying.len(), 0);
        if linear.iter().any(|&c| c < 0) {
            return Err(KacError::InvariantViolation {
                instance: instance(),
                detail: format!("negative linear coefficient in {linear:?}"),
            });
        }
        let (constant, numerator) = num.split_valuation();
        groups.push(Group { exponent: AffineExponent { constant, linear }, numerator });
    }
    groups.sort_by(|a, b| (&a.exponent.linear, a.exponent.constant).cmp(&(&b.exponent.linear, b.exponent.constant)));
    let denom = reduced.den.expand();
    cyclotomic_certify(&denom)?;
    Ok(Decomposition { quiver: quiver.clone(), dim: dim.clone(), varying: varying.to_vec(), denom, groups })
}

/// The parametric Kac polynomial, with every arrow in `varying` symbolic.
pub fn param_kac(quiver: &Quiver, d: &DimVector, varying: &[String]) -> Result<Decomposition> {
    param_kac_capped(quiver, d, varying, DEFAULT_TERM_CAP)
}

pub fn param_kac_capped(quiver: &Quiver, d: &DimVector, varying: &[String], cap: usize) -> Result<Decomposition> {
    if d.0.len() != quiver.vertex_count() || d.is_zero() {
        return Err(KacError::KeyMismatch(format!("dimension vector {d} does not fit {quiver}")));
    }
    let mut names: Vec<String> = Vec::new();
    for a in varying {
        if !names.contains(a) {
            names.push(a.clone());
        }
    }
    let mut indices: Vec<usize> = names.iter().map(|a| quiver.arrow_index(a)).collect::<Result<_>>()?;
    // canonical arrow order regardless of how the request listed them
    let mut order: Vec<usize> = (0..indices.len()).collect();
    order.sort_by_key(|&i| indices[i]);
    names = order.iter().map(|&i| names[i].clone()).collect();
    indices.sort();

    let p = hua_series::<ParamElement>(quiver, d, &indices)?;
    let count: usize = p.terms().map(|(_, c)| c.term_count()).sum();
    if count > cap {
        return Err(KacError::TermExplosion { count, cap });
    }
    let log = p.log_capped(Some(cap))?;
    let raw = kac_from_log(&log, d)?;
    if raw.term_count() > cap {
        return Err(KacError::TermExplosion { count: raw.term_count(), cap });
    }
    canonicalize(&raw, quiver, d, &names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hua::kac_direct;
    use crate::quiver::MultVector;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn exponent(constant: i64, linear: &[i64]) -> AffineExponent {
        AffineExponent { constant, linear: linear.to_vec() }
    }

    #[test]
    fn ring_examples() {
        let a = ParamElement::monomial(1, &[2]);
        let b = ParamElement::monomial(-1, &[0, 3]);
        assert_eq!(a.mul(&b), ParamElement::monomial(0, &[2, 3]));
        let x = ParamElement::monomial(0, &[1]);
        let y = x.mul(&ParamElement::from_poly(&p(&[-1, 1])));
        assert_eq!(x.add(&y).normalized(), ParamElement::monomial(1, &[1]));
        // ψ_2(q^n / (1 - q)) = q^{2n} / (1 - q^2)
        let inv = ParamElement::new(
            BigInt::one(),
            CycloProduct::from_q_powers_minus_one(&[1]),
            [(vec![1], ZLaurent::from_ints(0, &[-1]))].into_iter().collect(),
        );
        let expected = ParamElement::new(
            BigInt::one(),
            CycloProduct::from_q_powers_minus_one(&[2]),
            [(vec![2], ZLaurent::from_ints(0, &[-1]))].into_iter().collect(),
        );
        assert_eq!(inv.adams(2), expected);
        assert!(inv.sub(&inv).is_zero());
        assert_eq!(inv.mul_int(3).div_int(6).mul_int(2).normalized(), inv);
    }

    #[test]
    fn multi_loop_degree_two() {
        let dec = param_kac(&Quiver::multi_loop(1), &dv(&[2]), &names(&["loop"])).unwrap();
        assert_eq!(dec.denom, p(&[-1, 0, 1]));
        assert_eq!(
            dec.groups,
            vec![
                Group { exponent: exponent(-1, &[2]), numerator: p(&[-1]) },
                Group { exponent: exponent(-1, &[4]), numerator: p(&[1]) },
            ]
        );
        assert_eq!(dec.specialize(&[1]).unwrap(), p(&[0, 1]));
    }

    #[test]
    fn kronecker_two_two() {
        let dec = param_kac(&Quiver::kronecker(1), &dv(&[2, 2]), &names(&["a"])).unwrap();
        assert_eq!(dec.denom, &p(&[-1, 1]).pow(3) * &p(&[1, 1]).pow(2));
        let expected = vec![
            Group { exponent: exponent(0, &[0]), numerator: p(&[-1, -2]) },
            Group { exponent: exponent(-1, &[1]), numerator: p(&[2, 4, 2]) },
            Group { exponent: exponent(-2, &[2]), numerator: p(&[-1, -2, -3]) },
            Group { exponent: exponent(-2, &[4]), numerator: p(&[1]) },
        ];
        assert_eq!(dec.groups, expected);
        assert_eq!(dec.specialize(&[1]).unwrap(), Poly::zero());
        assert_eq!(dec.specialize(&[2]).unwrap(), p(&[1, 1]));
    }

    #[test]
    fn tennis_racket_one_one() {
        let dec = param_kac(&Quiver::tennis_racket(1, 1), &dv(&[1, 1]), &names(&["beta", "alpha"])).unwrap();
        assert_eq!(dec.varying, names(&["alpha", "beta"]));
        assert_eq!(dec.denom, p(&[-1, 1]));
        assert_eq!(
            dec.groups,
            vec![
                Group { exponent: exponent(0, &[0, 1]), numerator: p(&[-1]) },
                Group { exponent: exponent(0, &[1, 1]), numerator: p(&[1]) },
            ]
        );
    }

    #[test]
    fn specialization_matches_direct_computation() {
        let cases = [
            (Quiver::kronecker(1), dv(&[2, 3]), names(&["a"])),
            (Quiver::multi_loop(1), dv(&[3]), names(&["loop"])),
            (Quiver::tennis_racket(1, 1), dv(&[2, 1]), names(&["alpha", "beta"])),
            (Quiver::tennis_racket(1, 1), dv(&[1, 2]), names(&["beta"])),
        ];
        for (q, d, vary) in cases {
            let dec = param_kac(&q, &d, &vary).unwrap();
            let idx: Vec<usize> = dec.varying.iter().map(|a| q.arrow_index(a).unwrap()).collect();
            for m in 1..=3u64 {
                let n: Vec<u64> = vec![m; idx.len()];
                let mut full = MultVector(vec![1; q.arrows().len()]);
                for &i in &idx {
                    full.0[i] = m;
                }
                let direct = kac_direct(&q.multi_arrow(&full).unwrap(), &d).unwrap().poly;
                assert_eq!(dec.specialize(&n).unwrap(), direct, "{q} {d} n={m}");
            }
        }
    }

    #[test]
    fn canonical_form_is_stable() {
        let q = Quiver::kronecker(1);
        let d = dv(&[2, 2]);
        let vary = names(&["a"]);
        let dec = param_kac(&q, &d, &vary).unwrap();
        let raw = dec.to_param().unwrap();
        assert_eq!(canonicalize(&raw, &q, &d, &vary).unwrap(), dec);
        // multiply top and bottom by 1 + q
        let padded = ParamElement::new(
            BigInt::one(),
            raw.denominator().mul(&CycloProduct::from_cyclotomic(2)),
            raw.terms().iter().map(|(k, v)| (k.clone(), v.mul_poly(&[BigInt::one(), BigInt::one()]))).collect(),
        );
        assert_eq!(canonicalize(&padded, &q, &d, &vary).unwrap(), dec);
    }

    #[test]
    fn record_round_trip() {
        let dec = param_kac(&Quiver::tennis_racket(1, 1), &dv(&[1, 2]), &names(&["alpha", "beta"])).unwrap();
        let json = serde_json::to_string(&dec.to_record()).unwrap();
        let back: DecompositionRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(Decomposition::from_record(&back).unwrap(), dec);
    }

    #[test]
    fn degree_group_exists() {
        let dec = param_kac(&Quiver::kronecker(1), &dv(&[2, 3]), &names(&["a"])).unwrap();
        let deg = dec.degree_exponent().unwrap();
        assert_eq!(deg, exponent(-12, &[6]));
        let matching: Vec<&Group> = dec.groups.iter().filter(|g| g.exponent.linear == deg.linear).collect();
        assert_eq!(matching.len(), 1);
    }

    #[test]
    fn term_cap_is_enforced() {
        let err = param_kac_capped(&Quiver::kronecker(1), &dv(&[2, 2]), &names(&["a"]), 5).unwrap_err();
        assert!(matches!(err, KacError::TermExplosion { cap: 5, .. }));
    }

    #[test]
    fn unknown_arrow() {
        assert!(param_kac(&Quiver::kronecker(1), &dv(&[1, 1]), &names(&["b"])).is_err());
    }
}
