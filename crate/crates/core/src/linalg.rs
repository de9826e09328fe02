//! Exact rational linear algebra: rank, nullspace and projected solves.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coordinate-list matrix over Q with no duplicate coordinates and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrixQ {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, BigRational)>,
}

impl SparseMatrixQ {
    /// Sums duplicate coordinates and drops zeros.
    pub fn from_entries(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, BigRational)>) -> Self {
        let mut acc: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside a {rows}x{cols} matrix");
            *acc.entry((r, c)).or_insert_with(BigRational::zero) += v;
        }
        let entries = acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((r, c), v)| (r, c, v)).collect();
        SparseMatrixQ { rows, cols, entries }
    }

    pub fn from_dense(rows: &[Vec<BigRational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_entries(
            rows.len(),
            cols,
            rows.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))),
        )
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        Self::from_dense(
            &rows.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect::<Vec<_>>(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, BigRational)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.rows];
        for (r, c, a) in &self.entries {
            out[*r] += a * &v[*c];
        }
        out
    }

    fn integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut rows: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            rows[*r].push((*c, v.clone()));
        }
        rows.into_iter()
            .map(|row| {
                let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
                let ints = row.into_iter().map(|(c, v)| (c, v.numer() * (&lcm / v.denom()))).collect();
                primitive(ints)
            })
            .collect()
    }
}

fn primitive(row: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        return row;
    }
    row.into_iter().map(|(c, v)| (c, v / &g)).collect()
}

fn entry(row: &[(usize, BigInt)], col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// `(p/g)·row − (a/g)·pivot` where `a` is the entry of `row` and `p` that of `pivot` in
/// `col`; the result vanishes in `col` and has its content stripped.
fn eliminate(row: &[(usize, BigInt)], pivot: &[(usize, BigInt)], col: usize) -> Vec<(usize, BigInt)> {
    let a = entry(row, col).unwrap();
    let p = entry(pivot, col).unwrap();
    let g = a.gcd(p);
    let (fr, fp) = (p / &g, a / &g);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let (c, v) = if j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
            let v = &row[i].1 * &fr;
            i += 1;
            (row[i - 1].0, v)
        } else if i == row.len() || pivot[j].0 < row[i].0 {
            let v = -(&pivot[j].1 * &fp);
            j += 1;
            (pivot[j - 1].0, v)
        } else {
            let v = &row[i].1 * &fr - &pivot[j].1 * &fp;
            i += 1;
            j += 1;
            (row[i - 1].0, v)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    primitive(out)
}

/// Reduced echelon data: pivot rows as primitive integer rows, keyed by pivot column.
struct Echelon {
    pivots: Vec<(usize, Vec<(usize, BigInt)>)>,
}

/// Gauss–Jordan elimination with integer rows; the pivot for each column is the row with
/// the fewest nonzeros, ties broken by lowest index.
fn echelon(m: &SparseMatrixQ) -> Echelon {
    let mut rows: Vec<Option<Vec<(usize, BigInt)>>> = m.integer_rows().into_iter().map(Some).collect();
    let mut by_col: Vec<Vec<usize>> = vec![Vec::new(); m.cols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row.as_ref().unwrap() {
            by_col[*c].push(r);
        }
    }
    let mut pivots: Vec<(usize, Vec<(usize, BigInt)>)> = Vec::new();
    for col in 0..m.cols {
        let candidates: Vec<usize> = {
            let mut v: Vec<usize> = by_col[col]
                .iter()
                .copied()
                .filter(|&r| rows[r].as_ref().is_some_and(|row| entry(row, col).is_some()))
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let Some(&p) = candidates.iter().min_by_key(|&&r| (rows[r].as_ref().unwrap().len(), r)) else {
            continue;
        };
        let pivot_row = rows[p].take().unwrap();
        for &r in &candidates {
            if r == p {
                continue;
            }
            let reduced = eliminate(rows[r].as_ref().unwrap(), &pivot_row, col);
            for (c, _) in &reduced {
                if *c > col {
                    by_col[*c].push(r);
                }
            }
            rows[r] = Some(reduced);
        }
        for (_, prev) in pivots.iter_mut() {
            if entry(prev, col).is_some() {
                *prev = eliminate(prev, &pivot_row, col);
            }
        }
        pivots.push((col, pivot_row));
    }
    Echelon { pivots }
}

pub fn rank_q(m: &SparseMatrixQ) -> usize {
    echelon(m).pivots.len()
}

/// Basis of the right nullspace, one vector per free column in increasing order, with the
/// free column set to 1.
pub fn nullspace_q(m: &SparseMatrixQ) -> Vec<Vec<BigRational>> {
    let ech = echelon(m);
    let mut is_pivot = vec![false; m.cols];
    for (c, _) in &ech.pivots {
        is_pivot[*c] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![BigRational::zero(); m.cols];
            v[f] = BigRational::one();
            for (c, row) in &ech.pivots {
                if let Some(a) = entry(row, f) {
                    let p = entry(row, *c).unwrap();
                    v[*c] = -BigRational::new(a.clone(), p.clone());
                }
            }
            v
        })
        .collect()
}

/// A nullspace vector whose restriction to `target` is nonzero: the first basis vector with
/// that property, else the sum of the basis if it qualifies.
pub fn solve_for_nonzero_projection(m: &SparseMatrixQ, target: &[usize]) -> Option<Vec<BigRational>> {
    let basis = nullspace_q(m);
    let hits = |v: &Vec<BigRational>| target.iter().any(|&c| !v[c].is_zero());
    if let Some(v) = basis.iter().find(|v| hits(v)) {
        return Some(v.clone());
    }
    let sum = basis.iter().fold(vec![BigRational::zero(); m.cols], |mut acc, v| {
        for (a, b) in acc.iter_mut().zip(v) {
            *a += b;
        }
        acc
    });
    hits(&sum).then_some(sum)
}

/// Reduced row echelon basis of the span of `vectors` (each of equal length).
pub fn row_space_basis(vectors: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = SparseMatrixQ::from_dense(vectors);
    echelon(&m)
        .pivots
        .into_iter()
        .map(|(c, row)| {
            let p = entry(&row, c).unwrap().clone();
            let mut v = vec![BigRational::zero(); m.cols];
            for (j, a) in row {
                v[j] = BigRational::new(a, p.clone());
            }
            v
        })
        .collect()
}

/// A rational solution `x` of `A x = b` with free variables set to zero, if consistent.
pub fn solve_q(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let cols = a.first().map_or(0, Vec::len);
    let augmented: Vec<Vec<BigRational>> =
        a.iter().zip(b).map(|(row, rhs)| row.iter().cloned().chain(std::iter::once(rhs.clone())).collect()).collect();
    let m = SparseMatrixQ::from_entries(
        augmented.len(),
        cols + 1,
        augmented.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))),
    );
    let ech = echelon(&m);
    let mut x = vec![BigRational::zero(); cols];
    for (c, row) in &ech.pivots {
        if *c == cols {
            return None;
        }
        let p = entry(row, *c).unwrap();
        if let Some(rhs) = entry(row, cols) {
            x[*c] = BigRational::new(rhs.clone(), p.clone());
        }
    }
    Some(x)
}
