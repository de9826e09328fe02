//! Exact convex polytopes in Q^N: vertices, Minkowski sums, volumes and mixed volumes.
//!
//! Hulls come from gift wrapping; volumes from a pulling triangulation.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::row_space_basis;
use super::hull;

pub type Point = Vec<BigRational>;

/// Largest ambient dimension accepted by [`mixed_volume`].
pub const MAX_MIXED_DIM: usize = 4;

/// The convex hull of finitely many points, stored by its vertices in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn sub(a: &Point, b: &Point) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Pivot columns of the difference space; projecting onto them is injective on the hull.
fn local_columns(points: &[&Point]) -> Vec<usize> {
    let diffs: Vec<Point> = points[1..].iter().map(|p| sub(p, points[0])).collect();
    row_space_basis(&diffs)
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero"))
        .collect()
}

/// Affine dimension and facets (as indices into `points`) of the hull of `points`.
fn hull_facets(points: &[&Point]) -> (usize, Vec<Vec<usize>>) {
    let cols = local_columns(points);
    let k = cols.len();
    if k == 0 {
        return (0, Vec::new());
    }
    let local: Vec<Point> = points.iter().map(|p| cols.iter().map(|&c| p[c].clone()).collect()).collect();
    (k, hull::facets(&local, k))
}

/// Simplices (index tuples into `points`) of a pulling triangulation from the lex-min point.
fn triangulate(points: &[Point], idx: &[usize]) -> Vec<Vec<usize>> {
    let refs: Vec<&Point> = idx.iter().map(|&i| &points[i]).collect();
    let (k, fs) = hull_facets(&refs);
    if k == 0 {
        return vec![vec![idx[0]]];
    }
    let apex = (0..idx.len()).min_by(|&a, &b| refs[a].cmp(refs[b])).unwrap();
    let mut out = Vec::new();
    for f in fs.iter().filter(|f| !f.contains(&apex)) {
        let face: Vec<usize> = f.iter().map(|&j| idx[j]).collect();
        for mut s in triangulate(points, &face) {
            s.push(idx[apex]);
            out.push(s);
        }
    }
    out
}

fn determinant_q(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for j in c..n {
                let t = &f * &a[c][j];
                a[r][j] -= t;
            }
        }
    }
    det
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl Polytope {
    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        let dim = points.first().map(Vec::len).ok_or_else(|| Error::DimensionMismatch("empty point set".into()))?;
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch("points of different dimensions".into()));
        }
        let set: BTreeSet<Point> = points.into_iter().collect();
        let pts: Vec<Point> = set.into_iter().collect();
        let refs: Vec<&Point> = pts.iter().collect();
        let (k, fs) = hull_facets(&refs);
        let vertices = if k == 0 {
            pts
        } else {
            // A vertex is the only point common to all facets through it.
            (0..pts.len())
                .filter(|&i| {
                    let mut common: Option<BTreeSet<usize>> = None;
                    for f in fs.iter().filter(|f| f.contains(&i)) {
                        let s: BTreeSet<usize> = f.iter().copied().collect();
                        common = Some(match common {
                            None => s,
                            Some(c) => c.intersection(&s).copied().collect(),
                        });
                    }
                    common.is_some_and(|c| c.len() == 1)
                })
                .map(|i| pts[i].clone())
                .collect()
        };
        Ok(Polytope { dim, vertices })
    }

    pub fn from_lattice(points: &[Vec<i64>]) -> Result<Self> {
        Self::from_points(points.iter().map(|p| p.iter().map(|&x| q(x)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn affine_dim(&self) -> usize {
        local_columns(&self.vertices.iter().collect::<Vec<_>>()).len()
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!("Minkowski sum of polytopes in Q^{} and Q^{}", self.dim, other.dim)));
        }
        let sums = self
            .vertices
            .iter()
            .flat_map(|a| other.vertices.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect()))
            .collect();
        Polytope::from_points(sums)
    }

    /// Euclidean `N`-volume; zero unless full-dimensional.
    pub fn volume(&self) -> BigRational {
        if self.affine_dim() < self.dim {
            return BigRational::zero();
        }
        let idx: Vec<usize> = (0..self.vertices.len()).collect();
        let total = triangulate(&self.vertices, &idx).iter().fold(BigRational::zero(), |acc, s| {
            let apex = &self.vertices[s[s.len() - 1]];
            let rows = s[..s.len() - 1].iter().map(|&i| sub(&self.vertices[i], apex)).collect();
            acc + determinant_q(rows).abs()
        });
        total / BigRational::from_integer(factorial(self.dim))
    }
}

/// `MV(Q_1, …, Q_N) = Σ_{∅≠J} (−1)^{N−|J|} vol(Σ_{j∈J} Q_j)`, for `N ≤ MAX_MIXED_DIM`.
pub fn mixed_volume(polytopes: &[Polytope]) -> Result<BigRational> {
    let n = polytopes.len();
    if n == 0 || polytopes.iter().any(|p| p.dim != n) {
        return Err(Error::DimensionMismatch(format!("mixed volume needs N polytopes in Q^N, got {n}")));
    }
    if n > MAX_MIXED_DIM {
        return Err(Error::TooLarge(format!("mixed volume in dimension {n}")));
    }
    let terms: Vec<BigRational> = (1usize..1 << n)
        .into_par_iter()
        .map(|mask| {
            let mut members = (0..n).filter(|j| mask >> j & 1 == 1);
            let first = polytopes[members.next().unwrap()].clone();
            let sum = members.try_fold(first, |acc, j| acc.minkowski_sum(&polytopes[j]))?;
            let v = sum.volume();
            Ok(if (n - mask.count_ones() as usize) % 2 == 0 { v } else { -v })
        })
        .collect::<Result<_>>()?;
    Ok(terms.into_iter().fold(BigRational::zero(), |a, b| a + b))
}

/// Mixed volume of lattice polytopes, which is a nonnegative integer.
pub fn mixed_volume_lattice(polytopes: &[Polytope]) -> Result<u64> {
    let mv = mixed_volume(polytopes)?;
    use num_traits::ToPrimitive;
    if !mv.is_integer() || mv.is_negative() {
        return Err(Error::InternalConsistency(format!("mixed volume {mv} of lattice polytopes is not a natural number")));
    }
    mv.to_integer().to_u64().ok_or_else(|| Error::TooLarge(format!("mixed volume {mv}")))
}
