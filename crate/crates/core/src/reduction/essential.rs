//! Essential subsets of algebraic systems and the specialization to essential variables.

use rayon::prelude::*;

use crate::algsys::{AlgPoly, AlgPolySystem};
use crate::error::{Error, Result};
use crate::support::{subsets_of_size, RankMode};

/// Ranking key: members in decreasing order. Keys compare lexicographically, so a set whose
/// highest polynomial is lower ranks lower, and a prefix ranks below its extensions.
pub fn ranking_key(subset: &[usize]) -> Vec<usize> {
    let mut key = subset.to_vec();
    key.sort_unstable_by(|a, b| b.cmp(a));
    key
}

fn independent(sys: &AlgPolySystem, subset: &[usize], mode: RankMode) -> bool {
    sys.generic_rank(subset, mode) == subset.len()
}

/// The essential subset (rank `|I| − 1`, every proper subset independent) of minimal
/// ranking, for polynomials listed in increasing ranking order.
///
/// With `m` the first index where `{0..m}` turns dependent, every essential subset has a
/// member `≥ m`, and the only one inside `{0..m}` is the circuit through `m`: it consists of
/// `m` and each `j < m` whose removal restores independence.
pub fn essential_subset_minimal_ranking(sys: &AlgPolySystem, mode: RankMode) -> Result<Vec<usize>> {
    let count = sys.polys.len();
    let mut prefix = Vec::new();
    for m in 0..count {
        prefix.push(m);
        if independent(sys, &prefix, mode) {
            continue;
        }
        let mut circuit: Vec<usize> = (0..m)
            .into_par_iter()
            .filter(|&j| {
                let rest: Vec<usize> = (0..=m).filter(|&x| x != j).collect();
                independent(sys, &rest, mode)
            })
            .collect();
        circuit.push(m);
        return Ok(circuit);
    }
    Err(Error::NoEssentialSubset)
}

/// Every essential subset, by exhaustive enumeration, sorted by ranking.
pub fn all_essential_subsets(sys: &AlgPolySystem, mode: RankMode) -> Vec<Vec<usize>> {
    let count = sys.polys.len();
    let mut out: Vec<Vec<usize>> = (1..=count)
        .flat_map(|size| subsets_of_size(count, size))
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|s| {
            sys.generic_rank(s, mode) + 1 == s.len()
                && (0..s.len()).all(|drop| {
                    let rest: Vec<usize> = s.iter().enumerate().filter(|&(k, _)| k != drop).map(|(_, &x)| x).collect();
                    independent(sys, &rest, mode)
                })
        })
        .collect();
    out.sort_by_key(|s| ranking_key(s));
    out
}

/// An essential system in exactly `|I| − 1` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedSystem {
    pub system: AlgPolySystem,
    /// Kept variables, as column indices of the input.
    pub kept: Vec<usize>,
}

fn project(poly: &AlgPoly, cols: &[usize]) -> AlgPoly {
    AlgPoly { terms: poly.terms.iter().map(|(s, e)| (*s, cols.iter().map(|&c| e[c]).collect())).collect() }
}

/// Keeps the lexicographically first `|I| − 1` columns on which the support matrix keeps
/// full rank and no two terms of a polynomial collide; the other variables are set to 1.
pub fn specialize_to_essential_vars(sys: &AlgPolySystem, mode: RankMode) -> Result<SpecializedSystem> {
    let count = sys.polys.len();
    if count == 0 {
        return Err(Error::NoEssentialSubset);
    }
    let all: Vec<usize> = (0..count).collect();
    let target = count - 1;
    if sys.generic_rank(&all, mode) != target {
        return Err(Error::DegenerateSpecialization(format!("system of {count} polynomials is not essential")));
    }
    // Zero columns never help, so only occurring variables are candidates.
    let occurring: Vec<usize> =
        (0..sys.dim()).filter(|&c| sys.polys.iter().any(|p| p.relative_support().iter().any(|v| v[c] != 0))).collect();
    for choice in subsets_of_size(occurring.len(), target) {
        let cols: Vec<usize> = choice.iter().map(|&k| occurring[k]).collect();
        let projected: Vec<AlgPoly> = sys.polys.iter().map(|p| project(p, &cols)).collect();
        let distinct = projected.iter().all(|p| {
            let mut exps: Vec<&Vec<i64>> = p.terms.iter().map(|(_, e)| e).collect();
            exps.sort();
            exps.windows(2).all(|w| w[0] != w[1])
        });
        if distinct && sys.generic_rank_on_columns(&all, &cols, mode) == target {
            let vars = cols.iter().map(|&c| sys.vars[c].clone()).collect();
            return Ok(SpecializedSystem { system: AlgPolySystem { vars, polys: projected }, kept: cols });
        }
    }
    Err(Error::DegenerateSpecialization("no full-rank set of variables".into()))
}
