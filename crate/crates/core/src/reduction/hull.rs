//! Facets of full-dimensional point sets by gift wrapping, in exact arithmetic.
//!
//! A facet is reported as the sorted indices of every point on it. Coordinates that are
//! small integers run in `i128`; anything else runs in `BigRational`.

use std::collections::{BTreeSet, VecDeque};

use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Ring operations needed by the wrapper; `exact_div` is only called on exact quotients.
trait Exact: Clone + Ord {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn exact_div(&self, o: &Self) -> Self;
}

impl Exact for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Exact for BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_nil(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
}

/// With `|x| ≤ 2^10` and dimension at most 5, Bareiss intermediates stay below `2^120`.
const SMALL_COORD: i64 = 1 << 10;
const SMALL_DIM: usize = 5;

/// Bareiss elimination; returns the rank and, for square input, the determinant.
fn bareiss<T: Exact>(mut a: Vec<Vec<T>>) -> (usize, T) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut negate = false;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_nil()) else { continue };
        if p != rank {
            a.swap(p, rank);
            negate = !negate;
        }
        for i in rank + 1..rows {
            for j in c + 1..cols {
                a[i][j] = a[i][j].times(&a[rank][c]).minus(&a[i][c].times(&a[rank][j])).exact_div(&prev);
            }
            a[i][c] = T::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    let det = if rank == rows && rows == cols {
        if negate {
            prev.negated()
        } else {
            prev
        }
    } else {
        T::zero()
    };
    (rank, det)
}

fn diff<T: Exact>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.minus(y)).collect()
}

/// `det[b_1 − b_0, …, b_{k−2} − b_0, p − b_0, x − b_0]` for a ridge basis `b`.
fn orient<T: Exact>(pts: &[Vec<T>], basis: &[usize], p: usize, x: usize) -> T {
    let o = &pts[basis[0]];
    let mut rows: Vec<Vec<T>> = basis[1..].iter().map(|&i| diff(&pts[i], o)).collect();
    rows.push(diff(&pts[p], o));
    rows.push(diff(&pts[x], o));
    bareiss(rows).1
}

/// Greedy affinely independent subset of `idx`.
fn affine_basis<T: Exact>(pts: &[Vec<T>], idx: &[usize]) -> Vec<usize> {
    let mut basis = vec![idx[0]];
    for &i in &idx[1..] {
        let mut rows: Vec<Vec<T>> = basis[1..].iter().map(|&b| diff(&pts[b], &pts[basis[0]])).collect();
        rows.push(diff(&pts[i], &pts[basis[0]]));
        if bareiss(rows).0 == basis.len() {
            basis.push(i);
        }
    }
    basis
}

/// Normal of the hyperplane through `k` affinely independent points, by cofactors.
fn normal<T: Exact>(pts: &[Vec<T>], basis: &[usize], k: usize) -> Vec<T> {
    let o = &pts[basis[0]];
    let diffs: Vec<Vec<T>> = basis[1..].iter().map(|&i| diff(&pts[i], o)).collect();
    (0..k)
        .map(|j| {
            let minor = diffs.iter().map(|d| d.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect()).collect();
            let det = bareiss(minor).1;
            if j % 2 == 0 {
                det
            } else {
                det.negated()
            }
        })
        .collect()
}

fn drop_coordinate<T: Exact>(pts: &[Vec<T>], idx: &[usize], j: usize) -> Vec<Vec<T>> {
    idx.iter().map(|&i| pts[i].iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect()).collect()
}

/// Turns around the ridge `basis` from `start` to the extreme hyperplane on which every
/// point has `orient` of sign `−sense`; returns the points on it.
fn wrap<T: Exact>(pts: &[Vec<T>], basis: &[usize], start: usize, sense: std::cmp::Ordering) -> Vec<usize> {
    let zero = T::zero();
    let mut p = start;
    for x in 0..pts.len() {
        if orient(pts, basis, p, x).cmp(&zero) == sense {
            p = x;
        }
    }
    (0..pts.len()).filter(|&x| orient(pts, basis, p, x).is_nil()).collect()
}

/// Facets of the full-dimensional `pts` in `k` coordinates whose points include `ridge`.
fn facet_through_face<T: Exact>(pts: &[Vec<T>], face: Vec<usize>, k: usize) -> Vec<usize> {
    let basis = affine_basis(pts, &face);
    if basis.len() == k {
        return face;
    }
    let off = (0..pts.len()).find(|x| !face.contains(x)).expect("a full-dimensional set has points off any face");
    wrap(pts, &basis, off, std::cmp::Ordering::Greater)
}

/// One facet: lift a facet of the projection along the last axis to a supporting vertical
/// hyperplane, whose contact face is a facet or a ridge to wrap around.
fn initial_facet<T: Exact>(pts: &[Vec<T>], k: usize) -> Vec<usize> {
    let all: Vec<usize> = (0..pts.len()).collect();
    if k == 1 {
        let lo = pts.iter().map(|p| &p[0]).min().unwrap();
        return all.into_iter().filter(|&i| &pts[i][0] == lo).collect();
    }
    let proj = drop_coordinate(pts, &all, k - 1);
    let g0 = initial_facet(&proj, k - 1);
    let basis = affine_basis(&proj, &g0);
    let n = normal(&proj, &basis, k - 1);
    let level = |p: &Vec<T>| p.iter().zip(&n).fold(T::zero(), |acc, (a, b)| acc.plus(&a.times(b)));
    let c = level(&proj[g0[0]]);
    let face: Vec<usize> = all.into_iter().filter(|&i| level(&proj[i]) == c).collect();
    facet_through_face(pts, face, k)
}

fn facets_generic<T: Exact>(pts: &[Vec<T>], k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        let lo = pts.iter().map(|p| &p[0]).min().unwrap();
        let hi = pts.iter().map(|p| &p[0]).max().unwrap();
        let at = |v: &T| (0..pts.len()).filter(|&i| &pts[i][0] == v).collect::<Vec<_>>();
        let mut ends = vec![at(lo), at(hi)];
        ends.sort();
        return ends;
    }
    let first = initial_facet(pts, k);
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::from([first.clone()]);
    let mut queue = VecDeque::from([first]);
    while let Some(f) = queue.pop_front() {
        let basis = affine_basis(pts, &f);
        let n = normal(pts, &basis, k);
        let j = n.iter().position(|x| !x.is_nil()).expect("facet normals are nonzero");
        let proj = drop_coordinate(pts, &f, j);
        for ridge in facets_generic(&proj, k - 1) {
            let ridge: Vec<usize> = ridge.iter().map(|&r| f[r]).collect();
            let rb = affine_basis(pts, &ridge);
            let inside = *f.iter().find(|x| !ridge.contains(x)).expect("a ridge is a proper subset of its facet");
            let off = (0..pts.len()).find(|x| !f.contains(x)).expect("a full-dimensional set has points off any facet");
            let sense = orient(pts, &rb, inside, off).cmp(&T::zero());
            let g = wrap(pts, &rb, inside, sense);
            if found.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }
    found.into_iter().collect()
}

fn small_integers(pts: &[Vec<BigRational>]) -> Option<Vec<Vec<i128>>> {
    pts.iter()
        .map(|p| {
            p.iter()
                .map(|x| {
                    let v = x.is_integer().then(|| x.to_integer().to_i64()).flatten()?;
                    (v.abs() <= SMALL_COORD).then_some(v as i128)
                })
                .collect()
        })
        .collect()
}

/// Facets of distinct or repeated points spanning Q^k, `k ≥ 1`.
pub(crate) fn facets(pts: &[Vec<BigRational>], k: usize) -> Vec<Vec<usize>> {
    match small_integers(pts) {
        Some(small) if k <= SMALL_DIM => facets_generic(&small, k),
        _ => facets_generic(pts, k),
    }
}
