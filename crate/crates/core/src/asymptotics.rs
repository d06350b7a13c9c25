//! Limits of Kac polynomials as arrow multiplicities grow, their
//! reciprocals, rates of convergence, valuations and Witt dimensions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Poly, ZLaurent};
use crate::combinatorics::{divisors, moebius};
use crate::error::{KacError, Result};
use crate::hua::kac_all;
use crate::parametric::{AffineExponent, Decomposition};
use crate::quiver::{DimVector, MultVector, Quiver, ValuationConvention};

/// How the varying multiplicities go to infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitMode {
    /// One entry per varying arrow: `None` grows, `Some(m)` stays at `m`.
    Componentwise(Vec<Option<u64>>),
    /// `n = base + s · ray` with `s -> ∞`.
    Direction { base: Vec<u64>, ray: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitSpec {
    pub mode: LimitMode,
    /// The output holds coefficients of `q^0 ..= q^order`.
    pub order: usize,
    /// Divide by the valuation before passing to the limit. Always on in direction mode.
    pub renormalize: bool,
    /// Accept componentwise limits on quivers with loops, which rely on the
    /// limit not depending on the direction of approach.
    pub assume_direction_free: bool,
}

impl LimitSpec {
    pub fn direction(ray: Vec<u64>, order: usize) -> Self {
        let base = vec![0; ray.len()];
        LimitSpec { mode: LimitMode::Direction { base, ray }, order, renormalize: true, assume_direction_free: false }
    }

    pub fn componentwise(target: Vec<Option<u64>>, order: usize) -> Self {
        LimitSpec { mode: LimitMode::Componentwise(target), order, renormalize: false, assume_direction_free: false }
    }

    fn renormalizes(&self) -> bool {
        self.renormalize || matches!(self.mode, LimitMode::Direction { .. })
    }

    /// The point of the family at parameter `s` (every growing entry set to `s` in componentwise mode).
    pub fn point(&self, s: u64) -> Vec<u64> {
        match &self.mode {
            LimitMode::Componentwise(t) => t.iter().map(|m| m.unwrap_or(s)).collect(),
            LimitMode::Direction { base, ray } => base.iter().zip(ray).map(|(b, r)| b + s * r).collect(),
        }
    }
}

/// Leading coefficients of an element of `Z[[q]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesPrefix {
    pub coefficients: Vec<BigInt>,
}

impl SeriesPrefix {
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coefficients.iter().map(|c| c.to_i64()).collect()
    }
}

/// A group exponent restricted to the limit's free parameters, groups with
/// equal restricted linear part merged into one Laurent numerator.
struct Restricted {
    linear: Vec<i64>,
    num: ZLaurent,
}

fn restrict_exponent(e: &AffineExponent, spec: &LimitSpec) -> AffineExponent {
    match &spec.mode {
        LimitMode::Componentwise(t) => {
            let mut constant = e.constant;
            let mut linear = Vec::new();
            for (l, m) in e.linear.iter().zip(t) {
                match m {
                    Some(m) => constant += l * *m as i64,
                    None => linear.push(*l),
                }
            }
            AffineExponent { constant, linear }
        }
        LimitMode::Direction { base, ray } => AffineExponent {
            constant: e.constant + e.linear.iter().zip(base).map(|(l, &b)| l * b as i64).sum::<i64>(),
            linear: vec![e.linear.iter().zip(ray).map(|(l, &r)| l * r as i64).sum()],
        },
    }
}

fn validate(dec: &Decomposition, spec: &LimitSpec) -> Result<()> {
    let k = dec.varying.len();
    match &spec.mode {
        LimitMode::Componentwise(t) => {
            if t.len() != k {
                return Err(KacError::KeyMismatch(format!("{} limit entries for {k} varying arrows", t.len())));
            }
            if t.iter().all(Option::is_some) {
                return Err(KacError::InvalidLimit("no multiplicity goes to infinity".into()));
            }
            let loopy = dec.quiver.arrows().iter().any(|a| a.is_loop());
            if loopy && !spec.assume_direction_free {
                return Err(KacError::InvalidLimit(
                    "componentwise limits on quivers with loops need a direction, or an explicit \
                     assumption that the limit is direction-free"
                        .into(),
                ));
            }
        }
        LimitMode::Direction { base, ray } => {
            if base.len() != k || ray.len() != k {
                return Err(KacError::KeyMismatch(format!("direction must have {k} entries")));
            }
            if ray.iter().all(|&r| r == 0) {
                return Err(KacError::InvalidLimit("direction must be nonzero".into()));
            }
        }
    }
    Ok(())
}

fn restrict(dec: &Decomposition, spec: &LimitSpec) -> Result<Vec<Restricted>> {
    validate(dec, spec)?;
    let mut merged: BTreeMap<Vec<i64>, ZLaurent> = BTreeMap::new();
    for g in &dec.groups {
        let e = restrict_exponent(&g.exponent, spec);
        let ints = g.numerator.to_integers().expect("canonical numerators are integral");
        merged.entry(e.linear).or_default().add_assign(&ZLaurent::new(e.constant, ints));
    }
    Ok(merged
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(linear, num)| Restricted { linear, num })
        .collect())
}

fn dominated(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// The group whose restricted linear part is below all others, if one is.
fn minimal(groups: &[Restricted]) -> Result<usize> {
    if groups.is_empty() {
        return Err(KacError::EmptyLimit);
    }
    (0..groups.len())
        .find(|&i| groups.iter().all(|g| dominated(&groups[i].linear, &g.linear)))
        .ok_or_else(|| {
            KacError::InvalidLimit("no group dominates the others; the limit depends on the direction".into())
        })
}

/// Power series of `num / den` at `q = 0`, with `num` a polynomial and `den(0) = ±1`.
fn expand(num: &[BigInt], den: &[BigInt], order: usize) -> Vec<BigInt> {
    let d0 = &den[0];
    debug_assert!(d0.abs().is_one());
    let mut out = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut c = num.get(k).cloned().unwrap_or_default();
        for j in 1..=k.min(den.len() - 1) {
            c -= &den[j] * &out[k - j];
        }
        out.push(c * d0);
    }
    out
}

fn nonnegative(prefix: Vec<BigInt>, dec: &Decomposition) -> Result<SeriesPrefix> {
    if prefix.iter().any(|c| c.is_negative()) {
        return Err(KacError::InvariantViolation {
            instance: format!("{} d={}", dec.quiver, dec.dim),
            detail: format!("negative coefficient in limit series {prefix:?}"),
        });
    }
    Ok(SeriesPrefix { coefficients: prefix })
}

fn laurent_to_series(num: &ZLaurent, dec: &Decomposition, order: usize) -> Result<SeriesPrefix> {
    let v = num.valuation().unwrap_or(0);
    if v < 0 {
        return Err(KacError::InvalidLimit(format!("limit has a pole of order {} at q = 0", -v)));
    }
    let mut coeffs = vec![BigInt::zero(); v as usize];
    coeffs.extend_from_slice(num.coeffs());
    let den = dec.denom.to_integers().expect("canonical denominators are integral");
    nonnegative(expand(&coeffs, &den, order), dec)
}

/// The surviving groups and, when renormalizing, the exponent `q^{v(n)}` divided out.
fn surviving(dec: &Decomposition, spec: &LimitSpec, groups: &[Restricted]) -> Result<Option<(usize, AffineExponent)>> {
    if spec.renormalizes() {
        let i = minimal(groups)?;
        let v = groups[i].num.valuation().expect("nonzero group");
        Ok(Some((i, AffineExponent { constant: v, linear: groups[i].linear.clone() })))
    } else {
        let _ = dec;
        Ok(groups
            .iter()
            .position(|g| g.linear.iter().all(|&l| l == 0))
            .map(|i| (i, AffineExponent { constant: 0, linear: vec![0; groups[i].linear.len()] })))
    }
}

/// Expansion at `q = 0` of the limit (renormalized if requested) to `spec.order`.
///
/// Without renormalization a family whose terms all escape to infinity has
/// limit 0, returned as a zero prefix.
pub fn limit_series(dec: &Decomposition, spec: &LimitSpec) -> Result<SeriesPrefix> {
    let groups = restrict(dec, spec)?;
    match surviving(dec, spec, &groups)? {
        None => Ok(SeriesPrefix { coefficients: vec![BigInt::zero(); spec.order + 1] }),
        Some((i, shift)) => laurent_to_series(&groups[i].num.shifted(-shift.constant), dec, spec.order),
    }
}

/// Prediction for `val(A_n / q^{v(n)} - limit)` as an affine function of the free parameters.
pub fn predicted_rate(dec: &Decomposition, spec: &LimitSpec) -> Result<AffineExponent> {
    let groups = restrict(dec, spec)?;
    let (keep, shift) = match surviving(dec, spec, &groups)? {
        Some(s) => (Some(s.0), s.1),
        None => (None, AffineExponent { constant: 0, linear: vec![0; free_count(spec)] }),
    };
    let rest: Vec<Restricted> = groups
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| Some(i) != keep)
        .map(|(_, g)| g)
        .collect();
    if rest.is_empty() {
        return Err(KacError::EmptyComplement);
    }
    let j = minimal(&rest).map_err(|e| match e {
        KacError::EmptyLimit => KacError::EmptyComplement,
        other => other,
    })?;
    let g = &rest[j];
    Ok(AffineExponent {
        constant: g.num.valuation().expect("nonzero group") - shift.constant,
        linear: g.linear.iter().zip(&shift.linear).map(|(a, b)| a - b).collect(),
    })
}

fn free_count(spec: &LimitSpec) -> usize {
    match &spec.mode {
        LimitMode::Componentwise(t) => t.iter().filter(|m| m.is_none()).count(),
        LimitMode::Direction { .. } => 1,
    }
}

/// Limit of `q^{deg A_n} A_n(q^{-1})`.
pub fn reciprocal_limit(dec: &Decomposition, spec: &LimitSpec) -> Result<SeriesPrefix> {
    validate(dec, spec)?;
    if dec.is_zero() {
        return Err(KacError::EmptyLimit);
    }
    let deg = restrict_exponent(&dec.degree_exponent()?, spec);
    let den_deg = dec.denom.degree().unwrap_or(0) as i64;
    let mut num = ZLaurent::zero();
    let mut found = false;
    for g in &dec.groups {
        let e = restrict_exponent(&g.exponent, spec);
        if e.linear == deg.linear {
            found = true;
            let p_deg = g.numerator.degree().unwrap_or(0) as i64;
            let ints = g.numerator.reverse().to_integers().expect("canonical numerators are integral");
            num.add_assign(&ZLaurent::new(deg.constant - e.constant - p_deg + den_deg, ints));
        } else if !dominated(&e.linear, &deg.linear) {
            return Err(KacError::InvalidLimit(format!(
                "group exponent {:?} outgrows the degree {:?}",
                e.linear, deg.linear
            )));
        }
    }
    if !found {
        return Err(KacError::NoDegreeGroup);
    }
    let v = num.valuation().unwrap_or(0);
    if v < 0 {
        return Err(KacError::InvalidLimit("reciprocal limit has a pole at q = 0".into()));
    }
    let mut coeffs = vec![BigInt::zero(); v as usize];
    coeffs.extend_from_slice(num.coeffs());
    let den = dec.denom.reverse().to_integers().expect("canonical denominators are integral");
    let out = nonnegative(expand(&coeffs, &den, spec.order), dec)?;
    if !out.coefficients[0].is_one() {
        return Err(KacError::InvariantViolation {
            instance: format!("{} d={}", dec.quiver, dec.dim),
            detail: format!("reciprocal limit starts with {}", out.coefficients[0]),
        });
    }
    Ok(out)
}

/// `A / q^{val A}` as a coefficient list.
pub fn renormalized_coefficients(a: &Poly) -> Vec<BigInt> {
    let v = a.valuation().unwrap_or(0);
    a.to_integers().expect("Kac polynomials are integral")[v..].to_vec()
}

/// Valuation of `a / q^{val a} - limit`, looking only at the prefix length.
/// `None` when they agree on the whole prefix.
pub fn measured_rate(a: &Poly, limit: &SeriesPrefix) -> Option<usize> {
    let coeffs = renormalized_coefficients(a);
    let zero = BigInt::zero();
    (0..limit.coefficients.len()).find(|&k| coeffs.get(k).unwrap_or(&zero) != &limit.coefficients[k])
}

/// One line of the valuation report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationRecord {
    pub multiplicities: Vec<u64>,
    pub dim: Vec<u32>,
    pub actual: i64,
    /// Sum over every imaginary vertex.
    pub predicted_all_imaginary: i64,
    /// Sum over imaginary vertices in the support of `d`.
    pub predicted_support: i64,
    pub matches_all_imaginary: bool,
    pub matches_support: bool,
}

impl ValuationRecord {
    pub fn conventions_differ(&self) -> bool {
        self.predicted_all_imaginary != self.predicted_support
    }
}

/// Compares the actual valuation of every nonzero `A_{Q_n, d}` (`0 < d <= d_box`,
/// multiplicity factors in `1..=n_box`) with the conjectured formula.
pub fn valuation_report(quiver: &Quiver, d_box: &DimVector, n_box: u64) -> Result<Vec<ValuationRecord>> {
    let arrows = quiver.arrows().len();
    let mut grid: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..arrows {
        grid = grid
            .into_iter()
            .flat_map(|prefix| {
                (1..=n_box).map(move |m| {
                    let mut p = prefix.clone();
                    p.push(m);
                    p
                })
            })
            .collect();
    }
    let per_point: Vec<Result<Vec<ValuationRecord>>> = grid
        .par_iter()
        .map(|n| {
            let q = quiver.multi_arrow(&MultVector(n.clone()))?;
            let mut out = Vec::new();
            for (d, a) in kac_all(&q, d_box)? {
                let Some(actual) = a.valuation() else { continue };
                let all = q.predicted_valuation(&d, ValuationConvention::AllImaginary)?;
                let support = q.predicted_valuation(&d, ValuationConvention::Support)?;
                let actual = actual as i64;
                out.push(ValuationRecord {
                    multiplicities: n.clone(),
                    dim: d.0,
                    actual,
                    predicted_all_imaginary: all,
                    predicted_support: support,
                    matches_all_imaginary: actual == all,
                    matches_support: actual == support,
                });
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_point {
        out.extend(r?);
    }
    Ok(out)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Dimension of the degree-`d` part of the free Lie algebra on `d.len()` generators.
pub fn witt_dim(d: &[u32]) -> BigInt {
    let total: u64 = d.iter().map(|&x| x as u64).sum();
    assert!(total > 0, "Witt dimension needs a nonzero degree");
    let g = d.iter().fold(0u64, |acc, &x| acc.gcd(&(x as u64)));
    let mut sum = BigInt::zero();
    for e in divisors(g) {
        let mu = moebius(e);
        if mu == 0 {
            continue;
        }
        let mut term = factorial(total / e);
        for &x in d {
            term /= factorial(x as u64 / e);
        }
        sum += term * mu;
    }
    let (q, r) = sum.div_rem(&BigInt::from(total));
    debug_assert!(r.is_zero());
    q
}

/// Limit series along several rays, for comparing directions.
pub fn direction_report(dec: &Decomposition, rays: &[Vec<u64>], order: usize) -> Vec<(Vec<u64>, Result<SeriesPrefix>)> {
    rays.iter().map(|r| (r.clone(), limit_series(dec, &LimitSpec::direction(r.clone(), order)))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hua::kac_direct;
    use crate::parametric::param_kac;

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn ints(v: &SeriesPrefix) -> Vec<i64> {
        v.to_i64().unwrap()
    }

    #[test]
    fn kronecker_limit() {
        let dec = param_kac(&Quiver::kronecker(1), &dv(&[2, 2]), &names(&["a"])).unwrap();
        let spec = LimitSpec::componentwise(vec![None], 10);
        assert_eq!(ints(&limit_series(&dec, &spec).unwrap()), vec![1, 3, 5, 9, 12, 18, 22, 30, 35, 45, 51]);
        assert_eq!(ints(&limit_series(&dec, &LimitSpec::direction(vec![1], 10)).unwrap()), ints(&limit_series(&dec, &spec).unwrap()));
        assert_eq!(predicted_rate(&dec, &spec).unwrap(), AffineExponent { constant: -1, linear: vec![1] });
    }

    #[test]
    fn multi_loop_limits() {
        let dec = param_kac(&Quiver::multi_loop(1), &dv(&[3]), &names(&["loop"])).unwrap();
        let spec = LimitSpec::direction(vec![1], 10);
        assert_eq!(ints(&limit_series(&dec, &spec).unwrap()), vec![1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4]);
        let componentwise = LimitSpec::componentwise(vec![None], 10);
        assert!(matches!(limit_series(&dec, &componentwise), Err(KacError::InvalidLimit(_))));
        let acknowledged = LimitSpec { assume_direction_free: true, ..componentwise };
        assert!(ints(&limit_series(&dec, &acknowledged).unwrap()).iter().all(|&c| c == 0));
    }

    #[test]
    fn reciprocal_limits() {
        let k = param_kac(&Quiver::kronecker(1), &dv(&[1, 1]), &names(&["a"])).unwrap();
        let spec = LimitSpec::componentwise(vec![None], 10);
        assert_eq!(ints(&reciprocal_limit(&k, &spec).unwrap()), vec![1; 11]);
        let s = param_kac(&Quiver::multi_loop(1), &dv(&[2]), &names(&["loop"])).unwrap();
        let spec = LimitSpec::direction(vec![1], 10);
        assert_eq!(ints(&reciprocal_limit(&s, &spec).unwrap()), vec![1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn rate_matches_subtraction() {
        let dec = param_kac(&Quiver::kronecker(1), &dv(&[2, 2]), &names(&["a"])).unwrap();
        let spec = LimitSpec::componentwise(vec![None], 20);
        let limit = limit_series(&dec, &spec).unwrap();
        let rate = predicted_rate(&dec, &spec).unwrap();
        for r in 3..=6u64 {
            let a = kac_direct(&Quiver::kronecker(r), &dv(&[2, 2])).unwrap().poly;
            assert_eq!(measured_rate(&a, &limit), Some(rate.eval(&[r]) as usize));
        }
    }

    #[test]
    fn witt_values() {
        assert_eq!(witt_dim(&[1, 0]), BigInt::from(1));
        assert_eq!(witt_dim(&[2, 2]), BigInt::from(1));
        assert_eq!(witt_dim(&[3, 5]), BigInt::from(7));
        assert_eq!(witt_dim(&[4, 4]), BigInt::from(8));
        // necklace count: 2 generators, degree 6 total
        let total: BigInt = (0..=6).map(|a| witt_dim(&[a, 6 - a])).sum();
        assert_eq!(total, BigInt::from(9));
    }

    #[test]
    fn valuation_report_on_jordan_family() {
        let report = valuation_report(&Quiver::multi_loop(1), &dv(&[3]), 3).unwrap();
        assert_eq!(report.len(), 9);
        assert!(report.iter().all(|r| r.matches_support && r.matches_all_imaginary));
    }

    #[test]
    fn invalid_specs() {
        let dec = param_kac(&Quiver::kronecker(1), &dv(&[1, 1]), &names(&["a"])).unwrap();
        assert!(limit_series(&dec, &LimitSpec::direction(vec![0], 3)).is_err());
        assert!(limit_series(&dec, &LimitSpec::componentwise(vec![Some(2)], 3)).is_err());
        assert!(limit_series(&dec, &LimitSpec::componentwise(vec![None, None], 3)).is_err());
    }
}
