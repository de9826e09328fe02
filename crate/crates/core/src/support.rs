//! Symbolic support vectors, rank over Q[x], essentiality and the super-essential subset.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diffpoly::{GenericSystem, LaurentMonomial};
use crate::error::{Error, Result};
use crate::mpoly::{fraction_free_rank, MPoly};
use crate::upoly::UPoly;

/// Entry `j` is `Σ_k e_jk x^k` where `e_jk` is the exponent of `y_j^(k)`.
pub type SupportVector = Vec<UPoly>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicSupportMatrix {
    pub cols: usize,
    pub rows: Vec<SupportVector>,
}

/// Row `i` is `Σ_k u_ik·β_ik`; coefficient variables are opaque identifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericSupportMatrix {
    pub cols: usize,
    pub rows: Vec<Vec<(usize, SupportVector)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    /// Maximum over `trials` random integer specializations in `[1, 2^31]`.
    Probabilistic { trials: usize, seed: u64 },
    /// Fraction-free elimination with the coefficients as indeterminates.
    Exact,
}

impl Default for RankMode {
    fn default() -> Self {
        RankMode::Probabilistic { trials: 3, seed: 0 }
    }
}

pub fn support_vector(m: &LaurentMonomial, n: usize) -> Result<SupportVector> {
    let mut entries: Vec<Vec<i64>> = vec![Vec::new(); n];
    for &(sv, e) in m.factors() {
        let j = sv.var();
        if j >= n {
            return Err(Error::CoeffInSupport);
        }
        let k = sv.shift as usize;
        if entries[j].len() <= k {
            entries[j].resize(k + 1, 0);
        }
        entries[j][k] += e as i64;
    }
    Ok(entries.iter().map(|c| UPoly::from_ints(c)).collect())
}

/// Rank over Q(x) by row swaps, Euclidean row updates and column swaps down to an upper
/// triangular form; pivots are minimal-degree entries.
pub fn rank_qx(m: &SymbolicSupportMatrix) -> usize {
    let mut a = m.rows.clone();
    let rows = a.len();
    let cols = m.cols;
    let mut t = 0;
    while t < rows && t < cols {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, e) in row.iter().enumerate().skip(t) {
                if let Some(d) = e.degree() {
                    if best.is_none_or(|b| d < b.0) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut swapped = false;
            for k in t + 1..rows {
                if a[k][t].is_zero() {
                    continue;
                }
                let (q, _) = a[k][t].div_rem(&a[t][t]);
                for j in t..cols {
                    let update = &q * &a[t][j];
                    a[k][j] = &a[k][j] - &update;
                }
                if !a[k][t].is_zero() {
                    a.swap(t, k);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        t += 1;
    }
    t
}

/// Difference transcendence degree of the field generated by a set of monomials.
pub fn dtrdeg_monomials(b: &[LaurentMonomial], n: usize) -> Result<usize> {
    let rows = b.iter().map(|m| support_vector(m, n)).collect::<Result<Vec<_>>>()?;
    Ok(rank_qx(&SymbolicSupportMatrix { cols: n, rows }))
}

/// Uniform integer in `[1, 2^31]`.
pub fn random_coefficient(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::from_integer(BigInt::from(rng.gen_range(1u64..=(1u64 << 31))))
}

/// Rank of a generic support matrix over Q(u)(x).
pub fn rank_generic(m: &GenericSupportMatrix, mode: RankMode) -> usize {
    let ids = coefficient_ids(m);
    match mode {
        RankMode::Probabilistic { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..trials.max(1))
                .map(|_| {
                    let values: Vec<BigRational> = ids.iter().map(|_| random_coefficient(&mut rng)).collect();
                    let rows = m
                        .rows
                        .iter()
                        .map(|row| {
                            let mut acc = vec![UPoly::zero(); m.cols];
                            for (id, beta) in row {
                                let c = &values[ids.binary_search(id).unwrap()];
                                for (a, b) in acc.iter_mut().zip(beta) {
                                    *a = &*a + &b.scale(c);
                                }
                            }
                            acc
                        })
                        .collect();
                    rank_qx(&SymbolicSupportMatrix { cols: m.cols, rows })
                })
                .max()
                .unwrap_or(0)
        }
        RankMode::Exact => {
            // One variable per coefficient identifier, then x.
            let nvars = ids.len() + 1;
            let rows = m
                .rows
                .iter()
                .map(|row| {
                    let mut acc = vec![MPoly::zero(nvars); m.cols];
                    for (id, beta) in row {
                        let vi = ids.binary_search(id).unwrap();
                        for (a, b) in acc.iter_mut().zip(beta) {
                            for (k, c) in b.coeffs().iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let mut e = vec![0u32; nvars];
                                e[vi] = 1;
                                e[nvars - 1] = k as u32;
                                *a = a.add(&MPoly::monomial(nvars, c.clone(), e));
                            }
                        }
                    }
                    acc
                })
                .collect();
            fraction_free_rank(rows)
        }
    }
}

fn coefficient_ids(m: &GenericSupportMatrix) -> Vec<usize> {
    let mut ids: Vec<usize> = m.rows.iter().flat_map(|r| r.iter().map(|(id, _)| *id)).collect();
    ids.sort_unstable();
    ids.dedup();
    ids
}

/// Generic support matrix of the polynomials `subset` of `sys`; `β_i0 = 0` is omitted.
pub fn generic_support_matrix(sys: &GenericSystem, subset: &[usize]) -> GenericSupportMatrix {
    let n = sys.n();
    let rows = subset
        .iter()
        .map(|&i| {
            let a = sys.support(i);
            let denom = a[0].inv();
            (1..a.len())
                .map(|k| {
                    let beta = support_vector(&a[k].mul(&denom), n).expect("supports hold main variables only");
                    (sys.vars().coeff(i, k), beta)
                })
                .collect()
        })
        .collect();
    GenericSupportMatrix { cols: n, rows }
}

pub fn is_laurent_transformally_essential(sys: &GenericSystem, mode: RankMode) -> bool {
    let all: Vec<usize> = (0..sys.len()).collect();
    rank_generic(&generic_support_matrix(sys, &all), mode) == sys.n()
}

/// All `size`-subsets of `0..m` in lexicographic order.
pub fn subsets_of_size(m: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, size, &mut Vec::new(), &mut out);
    out
}

/// The unique super-essential subset: the first subset (by cardinality, then
/// lexicographically) whose rank deficiency is one.
pub fn super_essential_subset(sys: &GenericSystem, mode: RankMode) -> Result<Vec<usize>> {
    if !is_laurent_transformally_essential(sys, mode) {
        return Err(Error::NotEssential);
    }
    for size in 1..=sys.len() {
        for subset in subsets_of_size(sys.len(), size) {
            let rank = rank_generic(&generic_support_matrix(sys, &subset), mode);
            if rank + 1 == subset.len() {
                #[cfg(debug_assertions)]
                {
                    let all = all_super_essential_subsets(sys, mode);
                    debug_assert_eq!(all, vec![subset.clone()], "super-essential subset is not unique");
                }
                return Ok(subset);
            }
        }
    }
    Err(Error::InternalConsistency("essential system without a super-essential subset".into()))
}

/// Every subset with deficiency one whose proper subsets all have full rank, by exhaustive
/// enumeration.
pub fn all_super_essential_subsets(sys: &GenericSystem, mode: RankMode) -> Vec<Vec<usize>> {
    let m = sys.len();
    let members = |mask: usize| (0..m).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>();
    let mut rank = vec![0usize; 1 << m];
    for (mask, r) in rank.iter_mut().enumerate().skip(1) {
        *r = rank_generic(&generic_support_matrix(sys, &members(mask)), mode);
    }
    let full = |mask: usize| rank[mask] == mask.count_ones() as usize;
    let mut out = Vec::new();
    for mask in 1usize..1 << m {
        if rank[mask] + 1 != mask.count_ones() as usize {
            continue;
        }
        if (0..m).filter(|i| mask >> i & 1 == 1).all(|i| full(mask & !(1 << i))) {
            out.push(members(mask));
        }
    }
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}
