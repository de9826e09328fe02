//! Generic sparse Laurent polynomial systems over plain algebraic variables.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{rank_q, SparseMatrixQ};
use crate::mpoly::{fraction_free_rank, MPoly};
use crate::support::{random_coefficient, RankMode};

/// The coefficient `u_{block,slot}^(shift)` attached to one term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub block: usize,
    pub slot: usize,
    pub shift: u32,
}

/// `Σ_t c_t · x^{e_t}`; the first term is the reference term, so the relative support
/// `{e_t − e_0}` contains 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgPoly {
    pub terms: Vec<(Slot, Vec<i64>)>,
}

impl AlgPoly {
    /// `e_t − e_0` for `t ≥ 1`.
    pub fn relative_support(&self) -> Vec<Vec<i64>> {
        let base = &self.terms[0].1;
        self.terms[1..].iter().map(|(_, e)| e.iter().zip(base).map(|(a, b)| a - b).collect()).collect()
    }

    /// Exponents shifted so every coordinate has minimum 0.
    pub fn norm_exponents(&self) -> Vec<Vec<i64>> {
        let dim = self.terms[0].1.len();
        let mins: Vec<i64> = (0..dim).map(|j| self.terms.iter().map(|(_, e)| e[j]).min().unwrap()).collect();
        self.terms.iter().map(|(_, e)| e.iter().zip(&mins).map(|(a, m)| a - m).collect()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgPolySystem {
    pub vars: Vec<String>,
    pub polys: Vec<AlgPoly>,
}

impl AlgPolySystem {
    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn restrict(&self, subset: &[usize]) -> AlgPolySystem {
        AlgPolySystem { vars: self.vars.clone(), polys: subset.iter().map(|&i| self.polys[i].clone()).collect() }
    }

    /// Rows `ω_p = Σ_t c_pt (e_pt − e_p0)` as `(coefficient id, vector)` lists; ids are
    /// `(poly, term)` pairs flattened in order.
    fn generic_rows(&self, subset: &[usize]) -> Vec<Vec<(usize, Vec<i64>)>> {
        let mut offset = vec![0usize; self.polys.len() + 1];
        for (p, poly) in self.polys.iter().enumerate() {
            offset[p + 1] = offset[p] + poly.terms.len();
        }
        subset
            .iter()
            .map(|&p| {
                self.polys[p].relative_support().into_iter().enumerate().map(|(t, v)| (offset[p] + t + 1, v)).collect()
            })
            .collect()
    }

    /// Rank of the algebraic symbolic support matrix of `subset` over Q(c).
    pub fn generic_rank(&self, subset: &[usize], mode: RankMode) -> usize {
        let rows = self.generic_rows(subset);
        self.rank_of_rows(&rows, mode)
    }

    /// Same rank restricted to the variable columns in `cols`.
    pub fn generic_rank_on_columns(&self, subset: &[usize], cols: &[usize], mode: RankMode) -> usize {
        let rows: Vec<Vec<(usize, Vec<i64>)>> = self
            .generic_rows(subset)
            .into_iter()
            .map(|row| row.into_iter().map(|(id, v)| (id, cols.iter().map(|&j| v[j]).collect())).collect())
            .collect();
        self.rank_of_rows(&rows, mode)
    }

    fn rank_of_rows(&self, rows: &[Vec<(usize, Vec<i64>)>], mode: RankMode) -> usize {
        let cols = rows.iter().flat_map(|r| r.iter().map(|(_, v)| v.len())).next().unwrap_or(0);
        if rows.is_empty() || cols == 0 {
            return 0;
        }
        let mut ids: Vec<usize> = rows.iter().flat_map(|r| r.iter().map(|(id, _)| *id)).collect();
        ids.sort_unstable();
        ids.dedup();
        match mode {
            RankMode::Probabilistic { trials, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..trials.max(1))
                    .map(|_| {
                        let values: Vec<BigRational> = ids.iter().map(|_| random_coefficient(&mut rng)).collect();
                        let entries = rows.iter().enumerate().flat_map(|(r, row)| {
                            let values = &values;
                            let ids = &ids;
                            row.iter().flat_map(move |(id, v)| {
                                let c = values[ids.binary_search(id).unwrap()].clone();
                                v.iter().enumerate().filter(|(_, &e)| e != 0).map(move |(j, &e)| {
                                    (r, j, &c * BigRational::from_integer(BigInt::from(e)))
                                })
                            })
                        });
                        rank_q(&SparseMatrixQ::from_entries(rows.len(), cols, entries))
                    })
                    .max()
                    .unwrap_or(0)
            }
            RankMode::Exact => {
                let nvars = ids.len();
                let dense = rows
                    .iter()
                    .map(|row| {
                        let mut acc = vec![MPoly::zero(nvars); cols];
                        for (id, v) in row {
                            let vi = ids.binary_search(id).unwrap();
                            for (a, &e) in acc.iter_mut().zip(v) {
                                if e != 0 {
                                    let mut ex = vec![0u32; nvars];
                                    ex[vi] = 1;
                                    *a = a.add(&MPoly::monomial(nvars, BigRational::from_integer(e.into()), ex));
                                }
                            }
                        }
                        acc
                    })
                    .collect();
                fraction_free_rank(dense)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slot(block: usize, s: usize) -> Slot {
        Slot { block, slot: s, shift: 0 }
    }

    #[test]
    fn three_linear_forms_have_rank_two() {
        let sys = AlgPolySystem {
            vars: vec!["x1".into(), "x2".into()],
            polys: (0..3)
                .map(|i| AlgPoly { terms: vec![(slot(i, 0), vec![0, 0]), (slot(i, 1), vec![1, 0]), (slot(i, 2), vec![0, 1])] })
                .collect(),
        };
        assert_eq!(sys.generic_rank(&[0, 1, 2], RankMode::Exact), 2);
        assert_eq!(sys.generic_rank(&[0, 1, 2], RankMode::default()), 2);
        assert_eq!(sys.generic_rank(&[0], RankMode::Exact), 1);
        assert_eq!(sys.generic_rank_on_columns(&[0, 1], &[0], RankMode::Exact), 1);
    }

    #[test]
    fn norm_exponents_shift_to_zero() {
        let p = AlgPoly { terms: vec![(slot(0, 0), vec![-1, 2]), (slot(0, 1), vec![1, 3])] };
        assert_eq!(p.norm_exponents(), vec![vec![0, 0], vec![2, 1]]);
        assert_eq!(p.relative_support(), vec![vec![2, 1]]);
    }
}
