//! Quivers with multiplicity-weighted arrows, their Euler form, and the
//! multi-arrow construction.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{KacError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub multiplicity: u64,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A finite quiver. Vertex order is declaration order and fixes the layout of
/// every dimension vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// On-disk quiver description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowFile {
    pub name: String,
    pub from: String,
    pub to: String,
    #[serde(default = "one")]
    pub mult: u64,
}

fn one() -> u64 {
    1
}

/// Which imaginary vertices the valuation formula sums over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValuationConvention {
    /// Every vertex carrying a loop, as the formula is literally written.
    AllImaginary,
    /// Only imaginary vertices in the support of the dimension vector.
    Support,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<ArrowFile>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(KacError::InvalidQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        let index = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| KacError::InvalidQuiver(format!("unknown vertex {name:?}")))
        };
        let mut names = HashSet::new();
        let mut out = Vec::with_capacity(arrows.len());
        for a in arrows {
            if !names.insert(a.name.clone()) {
                return Err(KacError::InvalidQuiver(format!("duplicate arrow {:?}", a.name)));
            }
            out.push(Arrow {
                source: index(&a.from)?,
                target: index(&a.to)?,
                name: a.name,
                multiplicity: a.mult,
            });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn from_file(file: QuiverFile) -> Result<Self> {
        Quiver::new(file.vertices, file.arrows)
    }

    pub fn to_file(&self) -> QuiverFile {
        QuiverFile {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowFile {
                    name: a.name.clone(),
                    from: self.vertices[a.source].clone(),
                    to: self.vertices[a.target].clone(),
                    mult: a.multiplicity,
                })
                .collect(),
        }
    }

    /// `K_r`: two vertices, one arrow `a: 1 -> 2` of multiplicity `r`.
    pub fn kronecker(r: u64) -> Self {
        Quiver::new(
            vec!["1".into(), "2".into()],
            vec![ArrowFile { name: "a".into(), from: "1".into(), to: "2".into(), mult: r }],
        )
        .expect("well-formed")
    }

    /// `S_g`: one vertex with a loop of multiplicity `g`.
    pub fn multi_loop(g: u64) -> Self {
        Quiver::new(
            vec!["1".into()],
            vec![ArrowFile { name: "loop".into(), from: "1".into(), to: "1".into(), mult: g }],
        )
        .expect("well-formed")
    }

    /// Arrow `alpha: 1 -> 2` of multiplicity `n_alpha`, loop `beta` at 2 of multiplicity `n_beta`.
    pub fn tennis_racket(n_alpha: u64, n_beta: u64) -> Self {
        Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                ArrowFile { name: "alpha".into(), from: "1".into(), to: "2".into(), mult: n_alpha },
                ArrowFile { name: "beta".into(), from: "2".into(), to: "2".into(), mult: n_beta },
            ],
        )
        .expect("well-formed")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| KacError::KeyMismatch(format!("unknown arrow {name:?}")))
    }

    fn check_dim(&self, d: &DimVector) -> Result<()> {
        if d.0.len() != self.vertices.len() {
            return Err(KacError::KeyMismatch(format!(
                "dimension vector {d} has {} entries, quiver has {} vertices",
                d.0.len(),
                self.vertices.len()
            )));
        }
        Ok(())
    }

    /// `⟨d, e⟩ = Σ_i d_i e_i - Σ_{α: i -> j} mult(α) d_i e_j`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        self.check_dim(d)?;
        self.check_dim(e)?;
        let diag: i64 = d.0.iter().zip(&e.0).map(|(&x, &y)| x as i64 * y as i64).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|a| a.multiplicity as i64 * d.0[a.source] as i64 * e.0[a.target] as i64)
            .sum();
        Ok(diag - off)
    }

    /// `Q_n`: every arrow's multiplicity scaled by its entry of `n`.
    pub fn multi_arrow(&self, n: &MultVector) -> Result<Quiver> {
        if n.0.len() != self.arrows.len() {
            return Err(KacError::KeyMismatch(format!(
                "multiplicity vector has {} entries, quiver has {} arrows",
                n.0.len(),
                self.arrows.len()
            )));
        }
        let mut out = self.clone();
        for (a, &k) in out.arrows.iter_mut().zip(&n.0) {
            a.multiplicity *= k;
        }
        Ok(out)
    }

    /// Same quiver with the given arrow pointing the other way.
    pub fn with_reversed_arrow(&self, index: usize) -> Quiver {
        let mut out = self.clone();
        let a = &mut out.arrows[index];
        std::mem::swap(&mut a.source, &mut a.target);
        out
    }

    /// `1 - ⟨d, d⟩`, the degree of the Kac polynomial when it is nonzero.
    pub fn degree_formula(&self, d: &DimVector) -> Result<i64> {
        Ok(1 - self.euler_form(d, d)?)
    }

    /// Vertices carrying at least one loop of positive multiplicity.
    pub fn imaginary_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| self.arrows.iter().any(|a| a.is_loop() && a.source == i && a.multiplicity > 0))
            .collect()
    }

    /// Number of loops (with multiplicity) at vertex `i`.
    pub fn loop_count(&self, i: usize) -> u64 {
        self.arrows
            .iter()
            .filter(|a| a.is_loop() && a.source == i)
            .map(|a| a.multiplicity)
            .sum()
    }

    /// `Σ_{i ∈ I^im} (1 + d_i (loops(i) - 1))`, the conjectured valuation.
    pub fn predicted_valuation(&self, d: &DimVector, convention: ValuationConvention) -> Result<i64> {
        self.check_dim(d)?;
        Ok(self
            .imaginary_vertices()
            .into_iter()
            .filter(|&i| convention == ValuationConvention::AllImaginary || d.0[i] > 0)
            .map(|i| 1 + d.0[i] as i64 * (self.loop_count(i) as i64 - 1))
            .sum())
    }

    pub fn parse_dim(&self, text: &str) -> Result<DimVector> {
        let d: DimVector = text.parse()?;
        self.check_dim(&d)?;
        Ok(d)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(vertices [{}]", self.vertices.join(","))?;
        for a in &self.arrows {
            write!(
                f,
                ", {}: {}->{} x{}",
                a.name, self.vertices[a.source], self.vertices[a.target], a.multiplicity
            )?;
        }
        write!(f, ")")
    }
}

/// A dimension vector in vertex declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVector(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// gcd of the entries; 0 for the zero vector.
    pub fn gcd(&self) -> u32 {
        self.0.iter().fold(0, |acc, &x| num_integer::gcd(acc, x))
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for DimVector {
    type Err = KacError;
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| KacError::KeyMismatch(format!("bad entry {t:?} in {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(DimVector)
    }
}

/// Arrow multiplicities `n_α` in arrow declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultVector(pub Vec<u64>);

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn euler_form_examples() {
        assert_eq!(Quiver::kronecker(2).euler_form(&dv(&[1, 1]), &dv(&[1, 1])).unwrap(), 0);
        for g in 0..5 {
            for d in 0..5u32 {
                let s = Quiver::multi_loop(g);
                assert_eq!(s.euler_form(&dv(&[d]), &dv(&[d])).unwrap(), (1 - g as i64) * (d * d) as i64);
            }
        }
        let k4 = Quiver::kronecker(4);
        assert_eq!(k4.euler_form(&dv(&[2, 3]), &dv(&[2, 3])).unwrap(), -11);
        assert_eq!(k4.degree_formula(&dv(&[2, 3])).unwrap(), 12);
    }

    #[test]
    fn key_mismatch() {
        let k = Quiver::kronecker(1);
        assert!(matches!(k.euler_form(&dv(&[1]), &dv(&[1, 1])), Err(KacError::KeyMismatch(_))));
        assert!(matches!(k.multi_arrow(&MultVector(vec![1, 2])), Err(KacError::KeyMismatch(_))));
    }

    #[test]
    fn multi_arrow_examples() {
        assert_eq!(Quiver::multi_loop(1).multi_arrow(&MultVector(vec![5])).unwrap(), Quiver::multi_loop(5));
        assert_eq!(Quiver::kronecker(1).multi_arrow(&MultVector(vec![3])).unwrap(), Quiver::kronecker(3));
        let t = Quiver::tennis_racket(1, 1).multi_arrow(&MultVector(vec![2, 3])).unwrap();
        assert_eq!(t, Quiver::tennis_racket(2, 3));
        assert_eq!(t.arrows()[1].source, 1);
        assert!(t.arrows()[1].is_loop());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(Quiver::multi_loop(1).degree_formula(&dv(&[1])).unwrap(), 1);
        for r in 1..6u64 {
            assert_eq!(Quiver::kronecker(r).degree_formula(&dv(&[2, 2])).unwrap(), 4 * r as i64 - 7);
        }
        for g in 1..6u64 {
            assert_eq!(Quiver::multi_loop(g).degree_formula(&dv(&[2])).unwrap(), 4 * g as i64 - 3);
        }
    }

    #[test]
    fn degree_is_affine_in_multiplicities() {
        let base = Quiver::tennis_racket(1, 1);
        let d = dv(&[2, 3]);
        for na in 1..5u64 {
            for nb in 1..5u64 {
                let q = base.multi_arrow(&MultVector(vec![na, nb])).unwrap();
                // 1 - Σ d_i² + Σ n_α d_src d_tgt
                let expected = 1 - (4 + 9) + na as i64 * 2 * 3 + nb as i64 * 3 * 3;
                assert_eq!(q.degree_formula(&d).unwrap(), expected);
            }
        }
    }

    #[test]
    fn valuation_predictions() {
        let k = Quiver::kronecker(3);
        assert_eq!(k.predicted_valuation(&dv(&[2, 2]), ValuationConvention::AllImaginary).unwrap(), 0);
        for g in 1..5u64 {
            for d in 1..5u32 {
                let s = Quiver::multi_loop(g);
                assert_eq!(
                    s.predicted_valuation(&dv(&[d]), ValuationConvention::AllImaginary).unwrap(),
                    1 + d as i64 * (g as i64 - 1)
                );
            }
        }
        let t = Quiver::tennis_racket(2, 3);
        assert_eq!(t.predicted_valuation(&dv(&[1, 2]), ValuationConvention::AllImaginary).unwrap(), 1 + 2 * 2);
        // the two conventions split when the loop vertex is outside the support
        assert_eq!(t.predicted_valuation(&dv(&[1, 0]), ValuationConvention::AllImaginary).unwrap(), 1);
        assert_eq!(t.predicted_valuation(&dv(&[1, 0]), ValuationConvention::Support).unwrap(), 0);
    }

    #[test]
    fn imaginary_vertex_sets() {
        assert!(Quiver::kronecker(3).imaginary_vertices().is_empty());
        assert_eq!(Quiver::multi_loop(2).imaginary_vertices(), vec![0]);
        assert_eq!(Quiver::tennis_racket(1, 1).imaginary_vertices(), vec![1]);
    }

    #[test]
    fn bilinearity() {
        let q = Quiver::tennis_racket(2, 3);
        for a in 0..3u32 {
            for b in 0..3u32 {
                for c in 0..3u32 {
                    let d1 = dv(&[a, b]);
                    let d2 = dv(&[b, c]);
                    let e = dv(&[c, a]);
                    let sum = dv(&[a + b, b + c]);
                    assert_eq!(
                        q.euler_form(&sum, &e).unwrap(),
                        q.euler_form(&d1, &e).unwrap() + q.euler_form(&d2, &e).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_malformed() {
        let bad = Quiver::new(vec!["1".into(), "1".into()], vec![]);
        assert!(matches!(bad, Err(KacError::InvalidQuiver(_))));
        let bad = Quiver::new(
            vec!["1".into()],
            vec![ArrowFile { name: "a".into(), from: "1".into(), to: "2".into(), mult: 1 }],
        );
        assert!(matches!(bad, Err(KacError::InvalidQuiver(_))));
    }

    #[test]
    fn file_round_trip_rejects_unknown_fields() {
        let text = r#"{"vertices":["1","2"],"arrows":[{"name":"alpha","from":"1","to":"2","mult":1},{"name":"beta","from":"2","to":"2","mult":1}]}"#;
        let file: QuiverFile = serde_json::from_str(text).unwrap();
        let q = Quiver::from_file(file.clone()).unwrap();
        assert_eq!(q, Quiver::tennis_racket(1, 1));
        assert_eq!(q.to_file(), file);
        let bad = r#"{"vertices":["1"],"arrows":[],"extra":1}"#;
        assert!(serde_json::from_str::<QuiverFile>(bad).is_err());
    }
}
