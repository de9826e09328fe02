//! Sparse multivariate polynomials over Q, used for exact rank over rational function fields.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Dense exponent vectors of a fixed length, lexicographic order; the leading term is the
/// largest key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn monomial(nvars: usize, c: BigRational, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Exact quotient `self / d`; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (de, dc) = d.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        while let Some((re, rc)) = rem.terms.iter().next_back() {
            if re.iter().zip(de).any(|(r, d)| r < d) {
                return None;
            }
            let qe: Vec<u32> = re.iter().zip(de).map(|(r, d)| r - d).collect();
            let qc = rc / dc;
            let step = MPoly::monomial(self.nvars, qc.clone(), qe.clone());
            rem = rem.sub(&step.mul(d));
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t *= num_traits::pow(x.clone(), k as usize);
            }
            acc += t;
        }
        acc
    }
}

/// Rank over the fraction field by fraction-free (Bareiss) elimination; every division is
/// exact because each intermediate entry is a minor of the input.
pub fn fraction_free_rank(mut a: Vec<Vec<MPoly>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let nvars = a.first().and_then(|r| r.first()).map_or(0, MPoly::nvars);
    let mut prev = MPoly::constant(nvars, BigRational::one());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].terms.len()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = a[r][c].mul(&a[i][j]).sub(&a[i][c].mul(&a[r][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][c] = MPoly::zero(nvars);
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}
