//! Kac polynomials at fixed multiplicities via Hua's formula.
//!
//! The generating series
//!
//! ```text
//! P = Σ_π Π_{α: i→j} q^{⟨π^i, π^j⟩} / Π_i q^{⟨π^i, π^i⟩} b_{π^i}(q^{-1}) · z^{|π|}
//! ```
//!
//! is built term by term, then either its ordinary logarithm is Möbius
//! inverted (`kac_direct`) or its plethystic logarithm is read off
//! (`kac_plethystic`). Both routes must agree.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{rat, CycloProduct, Poly, RationalFunction, ZLaurent};
use crate::combinatorics::{divisors, moebius, pairing, partitions_of, Partition};
use crate::error::{KacError, Result};
use crate::quiver::{DimVector, Quiver};
use crate::series::{Coefficient, TruncatedSeries};

/// One summand of Hua's series: `q^exponent · q^{Σ linear_k n_k} / Π_j (q^j - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuaTerm {
    pub exponent: i64,
    /// Coefficients of the varying multiplicities, in the order they were requested.
    pub linear: Vec<i64>,
    pub den: Vec<u32>,
}

/// A coefficient ring that can absorb a batch of [`HuaTerm`]s for one multidegree.
pub trait HuaCoefficient: Coefficient {
    fn from_hua_terms(terms: &[HuaTerm]) -> Result<Self>;
}

/// Sums terms over their least common denominator, keyed by linear part.
///
/// Returns the denominator and one integer Laurent numerator per linear part.
pub(crate) fn common_denominator(terms: &[HuaTerm]) -> (CycloProduct, BTreeMap<Vec<i64>, ZLaurent>) {
    let dens: Vec<CycloProduct> = terms.iter().map(|t| CycloProduct::from_q_powers_minus_one(&t.den)).collect();
    let lcm = dens.iter().fold(CycloProduct::one(), |acc, d| acc.lcm_with(d).0);
    let mut expansions: HashMap<CycloProduct, Vec<BigInt>> = HashMap::new();
    let mut out: BTreeMap<Vec<i64>, ZLaurent> = BTreeMap::new();
    for (t, d) in terms.iter().zip(&dens) {
        let cof = lcm.quotient(d);
        let coeffs = expansions.entry(cof.clone()).or_insert_with(|| cof.expand_int());
        let num = ZLaurent::new(t.exponent, coeffs.clone());
        let mut key = t.linear.clone();
        while key.last() == Some(&0) {
            key.pop();
        }
        out.entry(key).or_default().add_assign(&num);
    }
    out.retain(|_, v| !v.is_zero());
    (lcm, out)
}

impl HuaCoefficient for RationalFunction {
    fn from_hua_terms(terms: &[HuaTerm]) -> Result<Self> {
        let (den, nums) = common_denominator(terms);
        let mut total = ZLaurent::zero();
        for (key, num) in nums {
            if !key.is_empty() {
                return Err(KacError::InvalidQuiver("rational coefficients cannot carry varying multiplicities".into()));
            }
            total.add_assign(&num);
        }
        let (v, num) = total.split_valuation();
        let den = den.expand();
        if v >= 0 {
            RationalFunction::reduce(num.shift(v as usize), den)
        } else {
            RationalFunction::reduce(num, den.shift((-v) as usize))
        }
    }
}

struct PartitionData {
    partition: Partition,
    self_pairing: i64,
    /// `Σ_k m_k (m_k + 1) / 2`
    b_shift: i64,
    den: Vec<u32>,
}

impl PartitionData {
    fn new(partition: Partition) -> Self {
        let mults = partition.multiplicities();
        let b_shift = mults.iter().map(|&(_, m)| (m as i64) * (m as i64 + 1) / 2).sum();
        let den = mults.iter().flat_map(|&(_, m)| 1..=m).collect();
        PartitionData { self_pairing: pairing(&partition, &partition) as i64, partition, b_shift, den }
    }
}

/// Every summand of Hua's series with `|π| = key`.
///
/// `varying` lists arrow indices whose multiplicity becomes a symbol; their
/// contribution goes into [`HuaTerm::linear`] scaled by the base multiplicity.
pub fn hua_terms(quiver: &Quiver, key: &[u32], varying: &[usize]) -> Vec<HuaTerm> {
    let per_vertex: Vec<Vec<PartitionData>> =
        key.iter().map(|&n| partitions_of(n).into_iter().map(PartitionData::new).collect()).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; key.len()];
    loop {
        let tuple: Vec<&PartitionData> = choice.iter().enumerate().map(|(i, &c)| &per_vertex[i][c]).collect();
        let mut exponent: i64 = tuple.iter().map(|p| p.b_shift - p.self_pairing).sum();
        let mut linear = vec![0i64; varying.len()];
        for (ai, a) in quiver.arrows().iter().enumerate() {
            let pr = pairing(&tuple[a.source].partition, &tuple[a.target].partition) as i64;
            let c = a.multiplicity as i64 * pr;
            match varying.iter().position(|&v| v == ai) {
                Some(slot) => linear[slot] = c,
                None => exponent += c,
            }
        }
        let den = tuple.iter().flat_map(|p| p.den.iter().copied()).collect();
        out.push(HuaTerm { exponent, linear, den });
        let mut pos = key.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if choice[pos] + 1 < per_vertex[pos].len() {
                choice[pos] += 1;
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Hua's series truncated to `bounds`, over any coefficient ring that can absorb its terms.
pub fn hua_series<C: HuaCoefficient>(quiver: &Quiver, bounds: &DimVector, varying: &[usize]) -> Result<TruncatedSeries<C>> {
    check_dim(quiver, bounds)?;
    let mut series = TruncatedSeries::<C>::zero(&bounds.0);
    let keys = series.keys();
    let coeffs: Vec<Result<C>> =
        keys.par_iter().map(|k| C::from_hua_terms(&hua_terms(quiver, k, varying))).collect();
    for (k, c) in keys.iter().zip(coeffs) {
        series.set(k, c?)?;
    }
    Ok(series)
}

/// Hua's series with rational-function coefficients.
pub fn hua_p(quiver: &Quiver, bounds: &DimVector) -> Result<TruncatedSeries<RationalFunction>> {
    hua_series(quiver, bounds, &[])
}

/// `H(d, q) = gcd(d) · [z^d] log P`.
pub fn hua_h<C: Coefficient>(log_p: &TruncatedSeries<C>, d: &DimVector) -> Result<C> {
    Ok(log_p.get(&d.0)?.mul_int(d.gcd() as i64))
}

/// `(q - 1)/d̄ · Σ_{e | d̄} μ(e) H(d/e, q^e)` from the logarithm of Hua's series.
pub fn kac_from_log<C: Coefficient>(log_p: &TruncatedSeries<C>, d: &DimVector) -> Result<C> {
    let dbar = d.gcd() as u64;
    let mut sum = C::zero();
    for e in divisors(dbar) {
        let mu = moebius(e);
        if mu == 0 {
            continue;
        }
        let sub = DimVector(d.0.iter().map(|&x| x / e as u32).collect());
        sum = sum.add(&hua_h(log_p, &sub)?.adams(e as u32).mul_int(mu));
    }
    Ok(sum.mul(&C::from_poly(&Poly::from_ints(&[-1, 1]))).div_int(dbar as i64).normalized())
}

/// Which computation produced a [`KacResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KacPath {
    Moebius,
    Plethystic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KacResult {
    pub quiver: Quiver,
    pub dim: DimVector,
    pub poly: Poly,
    pub path: KacPath,
}

fn check_dim(quiver: &Quiver, d: &DimVector) -> Result<()> {
    if d.0.len() != quiver.vertex_count() {
        return Err(KacError::KeyMismatch(format!(
            "dimension vector {d} has {} entries, quiver has {} vertices",
            d.0.len(),
            quiver.vertex_count()
        )));
    }
    Ok(())
}

fn nonzero_dim(quiver: &Quiver, d: &DimVector) -> Result<()> {
    check_dim(quiver, d)?;
    if d.is_zero() {
        return Err(KacError::KeyMismatch("dimension vector must be nonzero".into()));
    }
    Ok(())
}

fn to_poly(r: RationalFunction, what: &str) -> Result<Poly> {
    r.to_poly().ok_or_else(|| KacError::NotPolynomial(format!("{what}: {r}")))
}

/// Kac polynomial by ordinary logarithm and Möbius inversion.
pub fn kac_direct(quiver: &Quiver, d: &DimVector) -> Result<KacResult> {
    nonzero_dim(quiver, d)?;
    let log_p = hua_p(quiver, d)?.log()?;
    let poly = to_poly(kac_from_log(&log_p, d)?, "Kac polynomial")?;
    Ok(KacResult { quiver: quiver.clone(), dim: d.clone(), poly, path: KacPath::Moebius })
}

/// Kac polynomial as `(q - 1)` times the plethystic logarithm of Hua's series.
pub fn kac_plethystic(quiver: &Quiver, d: &DimVector) -> Result<KacResult> {
    nonzero_dim(quiver, d)?;
    let log_p = hua_p(quiver, d)?.pleth_log(true)?;
    let r = log_p.get(&d.0)?.mul(&RationalFunction::from_poly(Poly::from_ints(&[-1, 1])));
    let poly = to_poly(r, "Kac polynomial")?;
    Ok(KacResult { quiver: quiver.clone(), dim: d.clone(), poly, path: KacPath::Plethystic })
}

/// Every Kac polynomial `A_e` for `0 < e <= bounds`, from a single run of the pipeline.
pub fn kac_all(quiver: &Quiver, bounds: &DimVector) -> Result<BTreeMap<DimVector, Poly>> {
    check_dim(quiver, bounds)?;
    let log_p = hua_p(quiver, bounds)?.log()?;
    let keys: Vec<Vec<u32>> = log_p.keys().into_iter().skip(1).collect();
    keys.into_par_iter()
        .map(|k| {
            let d = DimVector(k);
            let a = to_poly(kac_from_log(&log_p, &d)?, "Kac polynomial")?;
            Ok((d, a))
        })
        .collect()
}

/// Checks the structural properties every Kac polynomial has.
pub fn check_invariants(result: &KacResult) -> Result<()> {
    let fail = |detail: String| KacError::InvariantViolation {
        instance: format!("{} d={}", result.quiver, result.dim),
        detail,
    };
    let p = &result.poly;
    if p.is_zero() {
        return Ok(());
    }
    let ints = p.to_integers().ok_or_else(|| fail(format!("non-integer coefficient in {p}")))?;
    if ints.iter().any(|c| c.is_negative()) {
        return Err(fail(format!("negative coefficient in {p}")));
    }
    if !p.is_monic() {
        return Err(fail(format!("not monic: {p}")));
    }
    let expected = result.quiver.degree_formula(&result.dim)?;
    let degree = p.degree().unwrap_or(0) as i64;
    if degree != expected {
        return Err(fail(format!("degree {degree}, expected 1 - <d,d> = {expected}")));
    }
    debug_assert!(ints.iter().any(|c| !c.is_zero()));
    Ok(())
}

/// Integer values at `q = 0..=deg` force integer values at every integer `q`.
pub fn is_integer_valued(p: &Poly) -> bool {
    (0..=p.degree().unwrap_or(0) as i64).all(|x| p.eval(&rat(x)).is_integer())
}

/// Which counting polynomial [`counts_from_a`] returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Count {
    /// All representations up to isomorphism.
    M,
    /// Indecomposable representations up to isomorphism.
    I,
}

/// `Σ M_d z^d = Exp_z(Σ I_d z^d) = Exp_{q,z}(Σ A_d z^d)`, read off for every `d <= bounds`.
pub fn counts_from_a(quiver: &Quiver, bounds: &DimVector, which: Count) -> Result<BTreeMap<DimVector, Poly>> {
    let a = kac_all(quiver, bounds)?;
    let series = TruncatedSeries::from_terms(
        &bounds.0,
        a.into_iter().map(|(d, p)| (d.0, RationalFunction::from_poly(p))),
    );
    let m = series.pleth_exp(true)?;
    let out = match which {
        Count::M => m,
        Count::I => m.pleth_log(false)?,
    };
    out.keys()
        .into_iter()
        .skip(1)
        .map(|k| {
            let p = to_poly(out.get(&k)?.clone(), "counting polynomial")?;
            if !is_integer_valued(&p) {
                return Err(KacError::NotPolynomial(format!("counting polynomial {p} is not integer-valued")));
            }
            Ok((DimVector(k), p))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    fn qfrac(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::reduce(p(num), p(den)).unwrap()
    }

    #[test]
    fn hua_series_low_terms() {
        let s = hua_p(&Quiver::multi_loop(1), &dv(&[1])).unwrap();
        assert_eq!(s.get(&[0]).unwrap(), &RationalFunction::one());
        assert_eq!(s.get(&[1]).unwrap(), &qfrac(&[0, 1], &[-1, 1]));
        let k = hua_p(&Quiver::kronecker(1), &dv(&[1, 1])).unwrap();
        assert_eq!(k.get(&[1, 1]).unwrap(), &qfrac(&[0, 1], &[1, -2, 1]));
    }

    #[test]
    fn h_equals_log_coefficient_for_primitive_dims() {
        let log_p = hua_p(&Quiver::kronecker(2), &dv(&[1, 2])).unwrap().log().unwrap();
        assert_eq!(&hua_h(&log_p, &dv(&[1, 2])).unwrap(), log_p.get(&[1, 2]).unwrap());
        assert!(matches!(hua_h(&log_p, &dv(&[2, 2])), Err(KacError::OutOfBox(_))));
    }

    #[test]
    fn direct_examples() {
        let cases: Vec<(Quiver, Vec<u32>, Poly)> = vec![
            (Quiver::multi_loop(1), vec![1], p(&[0, 1])),
            (Quiver::kronecker(1), vec![2, 2], Poly::zero()),
            (Quiver::kronecker(2), vec![2, 2], p(&[1, 1])),
            (Quiver::multi_loop(2), vec![2], p(&[0, 0, 0, 1, 0, 1])),
            (
                Quiver::kronecker(4),
                vec![2, 3],
                p(&[2, 4, 9, 12, 15, 14, 13, 9, 7, 4, 3, 1, 1]),
            ),
        ];
        for (q, d, expected) in cases {
            let r = kac_direct(&q, &dv(&d)).unwrap();
            assert_eq!(r.poly, expected, "{q} {d:?}");
            check_invariants(&r).unwrap();
        }
    }

    #[test]
    fn plethystic_examples() {
        assert_eq!(kac_plethystic(&Quiver::multi_loop(1), &dv(&[2])).unwrap().poly, p(&[0, 1]));
        for r in 1..5u64 {
            let expected = Poly::from_ints(&vec![1; r as usize]);
            assert_eq!(kac_plethystic(&Quiver::kronecker(r), &dv(&[1, 1])).unwrap().poly, expected);
        }
        assert_eq!(kac_plethystic(&Quiver::tennis_racket(1, 1), &dv(&[1, 1])).unwrap().poly, p(&[0, 1]));
    }

    #[test]
    fn paths_agree_on_small_grid() {
        for q in [Quiver::kronecker(3), Quiver::multi_loop(2), Quiver::tennis_racket(2, 1)] {
            let bounds = if q.vertex_count() == 1 { dv(&[3]) } else { dv(&[2, 2]) };
            let all = kac_all(&q, &bounds).unwrap();
            for (d, a) in all {
                assert_eq!(kac_plethystic(&q, &d).unwrap().poly, a, "{q} {d}");
                assert_eq!(kac_direct(&q, &d).unwrap().poly, a, "{q} {d}");
            }
        }
    }

    #[test]
    fn real_roots_of_a2() {
        let a2 = Quiver::kronecker(1).with_reversed_arrow(0);
        for (d, expected) in [(vec![1, 0], 1), (vec![0, 1], 1), (vec![1, 1], 1), (vec![2, 1], 0)] {
            let a = kac_direct(&a2, &dv(&d)).unwrap().poly;
            assert_eq!(a, Poly::constant(rat(expected)), "{d:?}");
        }
    }

    #[test]
    fn jordan_quiver_counts() {
        let jordan = Quiver::multi_loop(1);
        let m = counts_from_a(&jordan, &dv(&[2]), Count::M).unwrap();
        assert_eq!(m[&dv(&[1])], p(&[0, 1]));
        assert_eq!(m[&dv(&[2])], p(&[0, 1, 1]));
        let i = counts_from_a(&jordan, &dv(&[2]), Count::I).unwrap();
        assert_eq!(i[&dv(&[1])], p(&[0, 1]));
        let half = rat(1) / rat(2);
        assert_eq!(i[&dv(&[2])], Poly::from_coeffs(vec![rat(0), half.clone(), half]));
    }

    #[test]
    fn rejects_bad_dims() {
        assert!(kac_direct(&Quiver::kronecker(1), &dv(&[1])).is_err());
        assert!(kac_direct(&Quiver::kronecker(1), &dv(&[0, 0])).is_err());
    }
}
