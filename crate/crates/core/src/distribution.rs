//! Shape of the coefficient sequence of a Kac polynomial: normalized
//! even/odd coefficient plots and a unimodality test.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::algebra::{Poly, Rational};
use crate::asymptotics::renormalized_coefficients;
use crate::error::{KacError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn residue(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffGraph {
    pub parity: Parity,
    /// `(j / deg, a_j / max a)` for `j` of the given parity, increasing in `j`.
    pub points: Vec<(Rational, Rational)>,
}

/// Plots the coefficients of `a / q^{val a}` of one parity, both axes scaled into `[0, 1]`.
///
/// For a constant polynomial the single point sits at `x = 0`.
pub fn coefficient_graph(a: &Poly, parity: Parity) -> Result<CoeffGraph> {
    if a.is_zero() {
        return Err(KacError::ZeroPolynomial);
    }
    let coeffs = renormalized_coefficients(a);
    let deg = (coeffs.len() - 1).max(1) as i64;
    let max = coeffs.iter().max().cloned().unwrap_or_default();
    let points = coeffs
        .iter()
        .enumerate()
        .filter(|(j, _)| j % 2 == parity.residue())
        .map(|(j, c)| {
            (
                Rational::new(BigInt::from(j as i64), BigInt::from(deg)),
                Rational::new(c.clone(), max.clone()),
            )
        })
        .collect();
    Ok(CoeffGraph { parity, points })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unimodality {
    pub unimodal: bool,
    /// Position of the first maximum within the parity-restricted sequence.
    pub peak_index: usize,
}

/// Weakly increasing, then weakly decreasing.
pub fn is_unimodal(seq: &[BigInt]) -> Unimodality {
    if seq.is_empty() {
        return Unimodality { unimodal: true, peak_index: 0 };
    }
    let peak_index = seq
        .iter()
        .enumerate()
        .fold(0, |best, (i, c)| if c > &seq[best] { i } else { best });
    let rising = seq[..=peak_index].windows(2).all(|w| w[0] <= w[1]);
    let falling = seq[peak_index..].windows(2).all(|w| w[0] >= w[1]);
    Unimodality { unimodal: rising && falling, peak_index }
}

/// Unimodality of the coefficients of `a / q^{val a}` of one parity.
pub fn unimodality_check(a: &Poly, parity: Parity) -> Result<Unimodality> {
    if a.is_zero() {
        return Err(KacError::ZeroPolynomial);
    }
    let seq: Vec<BigInt> = renormalized_coefficients(a)
        .into_iter()
        .enumerate()
        .filter(|(j, _)| j % 2 == parity.residue())
        .map(|(_, c)| c)
        .collect();
    Ok(is_unimodal(&seq))
}

pub const CSV_HEADER: &str = "parity,x_num,x_den,y_num,y_den,x_float,y_float";

fn float(r: &Rational) -> String {
    let v = r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN);
    format!("{:.16e}", v)
}

/// CSV rows for the given graphs, header first, rows in graph order then by `x`.
pub fn to_csv(graphs: &[CoeffGraph]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for g in graphs {
        for (x, y) in &g.points {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                g.parity.name(),
                x.numer(),
                x.denom(),
                y.numer(),
                y.denom(),
                float(x),
                float(y)
            );
        }
    }
    out
}

/// Interleaves the even and odd graphs back into the integer coefficients of `a / q^{val a}`.
pub fn merge_graphs(even: &CoeffGraph, odd: &CoeffGraph, max: &BigInt) -> Vec<BigInt> {
    let mut all: Vec<(Rational, BigInt)> = even
        .points
        .iter()
        .chain(&odd.points)
        .map(|(x, y)| (x.clone(), (y * Rational::from_integer(max.clone())).to_integer()))
        .collect();
    all.sort_by(|a, b| a.0.cmp(&b.0));
    all.into_iter().map(|(_, c)| c).collect()
}
