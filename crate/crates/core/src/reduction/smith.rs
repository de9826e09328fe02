//! Smith and Hermite normal forms of integer matrices, with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | …`, `d_i ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[i][i].clone()).collect()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row_a += f·row_b`.
fn add_row(m: &mut IntMatrix, a: usize, b: usize, f: &BigInt) {
    let src = m[b].clone();
    for (x, y) in m[a].iter_mut().zip(&src) {
        *x += f * y;
    }
}

/// `col_a += f·col_b`.
fn add_col(m: &mut IntMatrix, a: usize, b: usize, f: &BigInt) {
    for row in m.iter_mut() {
        let y = row[b].clone();
        row[a] += f * y;
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero() && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = -d[i][t].div_floor(&d[t][t]);
                add_row(&mut d, i, t, &q);
                add_row(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    d.swap(t, i);
                    u.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = -d[t][j].div_floor(&d[t][t]);
                add_col(&mut d, j, t, &q);
                add_col(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Divisibility: fold a row with an entry not divisible by the pivot into row t.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&d[i][j] % &d[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    add_row(&mut d, t, i, &one);
                    add_row(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    SmithForm { u, v, d, rank: t }
}

/// Row-style Hermite normal form of the lattice spanned by the rows: an upper-triangular
/// basis with positive pivots and `0 ≤ h_ij < h_jj` above each pivot. Zero rows dropped.
pub fn hermite_basis(rows: &IntMatrix) -> IntMatrix {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m: IntMatrix = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut out: IntMatrix = Vec::new();
    for c in 0..cols {
        // Euclid down column c across the remaining rows.
        loop {
            let nonzero: Vec<usize> = (0..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| m[i][c].abs()).unwrap();
            for &i in &nonzero {
                if i != p {
                    let q = -m[i][c].div_floor(&m[p][c]);
                    add_row(&mut m, i, p, &q);
                }
            }
        }
        if let Some(p) = (0..m.len()).find(|&i| !m[i][c].is_zero()) {
            let mut row = m.remove(p);
            if row[c].is_negative() {
                row.iter_mut().for_each(|x| *x = -x.clone());
            }
            out.push(row);
        }
        m.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    // Reduce entries above each pivot.
    for k in 0..out.len() {
        let c = out[k].iter().position(|x| !x.is_zero()).unwrap();
        for i in 0..k {
            let q = -out[i][c].div_floor(&out[k][c]);
            add_row(&mut out, i, k, &q);
        }
    }
    out
}

/// Coordinates `w` with `w·H = e` for a square upper-triangular `H`, if integral.
pub fn lattice_coordinates(h: &IntMatrix, e: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = h.len();
    let mut rest: Vec<BigRational> = e.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let mut w = Vec::with_capacity(n);
    for (k, row) in h.iter().enumerate() {
        let c = row.iter().position(|x| !x.is_zero())?;
        debug_assert!(c >= k);
        let coef = &rest[c] / BigRational::from_integer(row[c].clone());
        if !coef.is_integer() {
            return None;
        }
        for (r, x) in rest.iter_mut().zip(row) {
            *r -= &coef * BigRational::from_integer(x.clone());
        }
        w.push(coef.to_integer());
    }
    rest.iter().all(Zero::is_zero).then_some(w)
}

/// Integer determinant by fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}
