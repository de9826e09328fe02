//! The ansatz/nullspace solver shared by both resultant engines.
//!
//! For a system of norm-form polynomials `F_p = Σ_t c_pt N_pt` with designated denominators
//! `N_p0`, degree `d` asks for `SR_0` homogeneous of degree `d` in the `c` and multipliers
//! `H_p` of bounded degree with `∏_p N_p0^d · SR_0 = Σ_p H_p F_p`.
//!
//! Every `F_p` and every `N_p0` is homogeneous for the grading `c_pt ↦ (e_p, −N_pt)`,
//! `x_j ↦ (0, e_j)`, so the linear system splits into independent blocks, one per grade.
//! Inside a block every multiplier monomial `ν·x^a` has its exponent `a` fixed by `ν`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algsys::{AlgPolySystem, Slot};
use crate::error::{Error, Result};
use crate::linalg::{nullspace_q, row_space_basis, SparseMatrixQ};

/// A monomial in the coefficient variables: sorted `(coefficient id, exponent)` pairs.
pub type UMono = Vec<(usize, u32)>;

#[derive(Clone, Debug)]
struct CorePoly {
    coeff_ids: Vec<usize>,
    exps: Vec<Vec<i64>>,
    denom: usize,
    degree: i64,
}

#[derive(Clone, Debug)]
pub struct AnsatzCore {
    dim: usize,
    polys: Vec<CorePoly>,
    slots: Vec<Slot>,
    coeff_poly: Vec<usize>,
    coeff_exp: Vec<Vec<i64>>,
    max_degree: i64,
    denom_degree_sum: i64,
    denom_exp_sum: Vec<i64>,
}

/// One multiplier term `value · ν · x^a` of `H_poly`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofactorTerm {
    pub poly: usize,
    pub coeffs: UMono,
    pub exponent: Vec<i64>,
    pub value: BigRational,
}

#[derive(Clone, Debug)]
pub struct DegreeHit {
    pub sr: Vec<(UMono, BigRational)>,
    pub cofactors: Vec<CofactorTerm>,
    pub degree: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// One homogeneous ansatz over all monomials of degree `d`.
    #[default]
    Plain,
    /// Layer-degree vectors one at a time; the first one admitting a solution wins.
    Multihomogeneous,
}

/// Saturates at `u128::MAX`; callers only compare it against size limits.
fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        match acc.checked_mul((n - i) as u128) {
            Some(x) => acc = x / (i + 1) as u128,
            None => return u128::MAX,
        }
    }
    acc
}

/// Compositions of `total` into `parts` nonnegative parts, lexicographically increasing.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == parts {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(left - v, parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

fn mono_mul_var(m: &UMono, id: usize) -> UMono {
    let mut out = m.clone();
    match out.binary_search_by_key(&id, |&(c, _)| c) {
        Ok(i) => out[i].1 += 1,
        Err(i) => out.insert(i, (id, 1)),
    }
    out
}

impl AnsatzCore {
    /// Takes norm forms of every polynomial and picks a minimal-degree denominator term
    /// (first such term on ties). `max_degree` overrides `m = max deg F_p` when given.
    pub fn new(sys: &AlgPolySystem, max_degree: Option<i64>) -> Self {
        let dim = sys.dim();
        let mut polys = Vec::new();
        let mut slots = Vec::new();
        let mut coeff_poly = Vec::new();
        let mut coeff_exp = Vec::new();
        for (p, poly) in sys.polys.iter().enumerate() {
            let exps = poly.norm_exponents();
            let degs: Vec<i64> = exps.iter().map(|e| e.iter().sum()).collect();
            let denom = (0..degs.len()).min_by_key(|&t| (degs[t], t)).unwrap();
            let mut coeff_ids = Vec::new();
            for (t, (slot, _)) in poly.terms.iter().enumerate() {
                coeff_ids.push(slots.len());
                slots.push(*slot);
                coeff_poly.push(p);
                coeff_exp.push(exps[t].clone());
            }
            let degree = *degs.iter().max().unwrap();
            polys.push(CorePoly { coeff_ids, exps, denom, degree });
        }
        let max_degree = max_degree.unwrap_or_else(|| polys.iter().map(|p| p.degree).max().unwrap_or(0));
        let denom_degree_sum = polys.iter().map(|p| p.exps[p.denom].iter().sum::<i64>()).sum();
        let mut denom_exp_sum = vec![0i64; dim];
        for p in &polys {
            for (a, b) in denom_exp_sum.iter_mut().zip(&p.exps[p.denom]) {
                *a += b;
            }
        }
        AnsatzCore { dim, polys, slots, coeff_poly, coeff_exp, max_degree, denom_degree_sum, denom_exp_sum }
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn poly_count(&self) -> usize {
        self.polys.len()
    }

    /// Coefficient identifiers of polynomial `p`, by term.
    pub fn coeff_ids(&self, p: usize) -> &[usize] {
        &self.polys[p].coeff_ids
    }

    /// Norm-form exponent of the term carrying coefficient `id`.
    pub fn coeff_exponent(&self, id: usize) -> &[i64] {
        &self.coeff_exp[id]
    }

    /// Polynomial owning coefficient `id`.
    pub fn coeff_poly(&self, id: usize) -> usize {
        self.coeff_poly[id]
    }

    pub fn denominator_term(&self, p: usize) -> usize {
        self.polys[p].denom
    }

    pub fn poly_degree(&self, p: usize) -> i64 {
        self.polys[p].degree
    }

    /// Number of ansatz unknowns `C(d+L−1, L−1)` for `L` coefficients.
    pub fn ansatz_size(&self, d: u32) -> u128 {
        let l = self.slots.len() as u64;
        binomial(d as u64 + l - 1, l - 1)
    }

    /// `[m + 1 + Σ_p deg N_p0]·d`, the degree of the left-hand side bound.
    pub fn total_degree_bound(&self, d: u32) -> i64 {
        (self.max_degree + 1 + self.denom_degree_sum) * d as i64
    }

    /// Degree bound for `H_p`: `[m + 1 + Σ deg N_p0]·d − m_p − 1`.
    pub fn multiplier_degree(&self, p: usize, d: u32) -> i64 {
        self.total_degree_bound(d) - self.polys[p].degree - 1
    }

    /// All coefficient monomials with the given layer-degree vector, with `Σ N_u` over their
    /// factors.
    fn layer_monomials(&self, layer: &[u32]) -> Vec<(UMono, Vec<i64>)> {
        let mut acc: Vec<(UMono, Vec<i64>)> = vec![(Vec::new(), vec![0; self.dim])];
        for (p, &k) in layer.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let ids = &self.polys[p].coeff_ids;
            let parts = compositions(k, ids.len());
            let mut next = Vec::with_capacity(acc.len() * parts.len());
            for (m, s) in &acc {
                for part in &parts {
                    let mut mono = m.clone();
                    let mut sum = s.clone();
                    for (t, &e) in part.iter().enumerate() {
                        if e == 0 {
                            continue;
                        }
                        mono.push((ids[t], e));
                        for (a, b) in sum.iter_mut().zip(&self.polys[p].exps[t]) {
                            *a += b * e as i64;
                        }
                    }
                    next.push((mono, sum));
                }
            }
            acc = next;
        }
        for (m, _) in acc.iter_mut() {
            m.sort_unstable();
        }
        acc
    }

    /// Solves every grade block of one layer-degree vector. Returns the c_0-projection basis
    /// of each block that has one, with a full solution vector for the first basis element.
    fn solve_layer(&self, d: u32, layer: &[u32]) -> Vec<BlockSolution> {
        let candidates = self.layer_monomials(layer);
        let mut classes: HashMap<Vec<i64>, Vec<UMono>> = HashMap::new();
        let mut class_order: Vec<Vec<i64>> = Vec::new();
        for (m, s) in candidates {
            let entry = classes.entry(s.clone()).or_insert_with(|| {
                class_order.push(s);
                Vec::new()
            });
            entry.push(m);
        }
        class_order.sort();
        let e: Vec<i64> = self.denom_exp_sum.iter().map(|x| x * d as i64).collect();
        let reduced: Vec<Option<Vec<(UMono, Vec<i64>)>>> = (0..self.polys.len())
            .map(|p| {
                (layer[p] > 0).then(|| {
                    let mut l = layer.to_vec();
                    l[p] -= 1;
                    self.layer_monomials(&l)
                })
            })
            .collect();
        let mut out = Vec::new();
        for s0 in class_order {
            let sr_monos = &classes[&s0];
            let mut unknowns: Vec<(usize, &UMono, Vec<i64>)> = Vec::new();
            for (p, red) in reduced.iter().enumerate() {
                let Some(red) = red else { continue };
                let bound = self.multiplier_degree(p, d);
                for (nu, s) in red {
                    let a: Vec<i64> = e.iter().zip(&s0).zip(s).map(|((e, s0), s)| e - s0 + s).collect();
                    if a.iter().any(|&x| x < 0) {
                        continue;
                    }
                    if d as i64 - 1 + a.iter().sum::<i64>() > bound {
                        continue;
                    }
                    unknowns.push((p, nu, a));
                }
            }
            let mut rows: HashMap<UMono, usize> = HashMap::new();
            let mut entries = Vec::new();
            let ncols = sr_monos.len() + unknowns.len();
            for (c, m) in sr_monos.iter().enumerate() {
                let n = rows.len();
                let r = *rows.entry(m.clone()).or_insert(n);
                entries.push((r, c, BigRational::one()));
            }
            for (k, (p, nu, _)) in unknowns.iter().enumerate() {
                for &id in &self.polys[*p].coeff_ids {
                    let key = mono_mul_var(nu, id);
                    let n = rows.len();
                    let r = *rows.entry(key).or_insert(n);
                    entries.push((r, sr_monos.len() + k, -BigRational::one()));
                }
            }
            let matrix = SparseMatrixQ::from_entries(rows.len(), ncols, entries);
            let basis = nullspace_q(&matrix);
            let projections: Vec<Vec<BigRational>> =
                basis.iter().map(|v| v[..sr_monos.len()].to_vec()).filter(|v| v.iter().any(|x| !x.is_zero())).collect();
            if projections.is_empty() {
                continue;
            }
            let span = row_space_basis(&projections);
            let witness = basis.into_iter().find(|v| v[..sr_monos.len()].iter().any(|x| !x.is_zero())).unwrap();
            let sr = sr_monos.iter().cloned().zip(witness[..sr_monos.len()].iter().cloned()).filter(|(_, c)| !c.is_zero()).collect();
            let cofactors = unknowns
                .iter()
                .zip(&witness[sr_monos.len()..])
                .filter(|(_, v)| !v.is_zero())
                .map(|((p, nu, a), v)| CofactorTerm { poly: *p, coeffs: (*nu).clone(), exponent: a.clone(), value: v.clone() })
                .collect();
            out.push(BlockSolution { dimension: span.len(), sr, cofactors });
        }
        out
    }

    /// Layer-degree vectors of total `d` in enumeration order.
    pub fn layers(&self, d: u32) -> Vec<Vec<u32>> {
        compositions(d, self.polys.len())
    }

    /// Looks for a nonzero `SR_0` of degree `d`. In multihomogeneous mode only layer vectors
    /// accepted by `admit` are tried.
    pub fn solve_degree(&self, d: u32, mode: SearchMode, admit: &(dyn Fn(&[u32]) -> bool + Sync)) -> Result<Option<DegreeHit>> {
        match mode {
            SearchMode::Plain => {
                let layers = self.layers(d);
                let results: Vec<Vec<BlockSolution>> = layers.par_iter().map(|l| self.solve_layer(d, l)).collect();
                let blocks: Vec<BlockSolution> = results.into_iter().flatten().collect();
                self.unique(blocks, d)
            }
            SearchMode::Multihomogeneous => {
                for layer in self.layers(d) {
                    if !admit(&layer) {
                        continue;
                    }
                    let blocks = self.solve_layer(d, &layer);
                    if !blocks.is_empty() {
                        return self.unique(blocks, d);
                    }
                }
                Ok(None)
            }
        }
    }

    fn unique(&self, blocks: Vec<BlockSolution>, d: u32) -> Result<Option<DegreeHit>> {
        let dimension: usize = blocks.iter().map(|b| b.dimension).sum();
        match dimension {
            0 => Ok(None),
            1 => {
                let b = blocks.into_iter().next().unwrap();
                Ok(Some(DegreeHit { sr: b.sr, cofactors: b.cofactors, degree: d }))
            }
            k => Err(Error::InternalConsistency(format!(
                "{k} independent polynomials of minimal degree {d} in the elimination ideal"
            ))),
        }
    }

    /// The full literal linear system at degree `d`: unknowns are one coefficient per
    /// monomial of `SR_0` (first) and of each `H_p`, rows are all monomials of degree at most
    /// [`AnsatzCore::total_degree_bound`] in the algebraic and coefficient variables.
    pub fn assemble_literal(&self, d: u32) -> LiteralSystem {
        let nv = self.dim + self.slots.len();
        let d1 = self.total_degree_bound(d);
        let all_rows = monomials_up_to(nv, d1 as u32);
        let row_index: HashMap<Vec<u32>, usize> = all_rows.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut columns: Vec<ColumnKind> = Vec::new();
        let mut entries = Vec::new();
        let lhs_y: Vec<u32> = self.denom_exp_sum.iter().map(|&x| (x * d as i64) as u32).collect();
        for m in monomials_exact(self.slots.len(), d) {
            let mut key = lhs_y.clone();
            key.extend(m.iter().copied());
            let c = columns.len();
            entries.push((row_index[&key], c, BigRational::one()));
            columns.push(ColumnKind::Ansatz(m));
        }
        let c0 = columns.len();
        for (p, poly) in self.polys.iter().enumerate() {
            let bound = self.multiplier_degree(p, d);
            if bound < 0 {
                continue;
            }
            for m in monomials_up_to(nv, bound as u32) {
                let c = columns.len();
                for (t, &id) in poly.coeff_ids.iter().enumerate() {
                    let mut key = m.clone();
                    for (j, &e) in poly.exps[t].iter().enumerate() {
                        key[j] += e as u32;
                    }
                    key[self.dim + id] += 1;
                    entries.push((row_index[&key], c, -BigRational::one()));
                }
                columns.push(ColumnKind::Multiplier(p, m));
            }
        }
        LiteralSystem { matrix: SparseMatrixQ::from_entries(all_rows.len(), columns.len(), entries), ansatz_columns: c0, columns }
    }
}

#[derive(Clone, Debug)]
struct BlockSolution {
    dimension: usize,
    sr: Vec<(UMono, BigRational)>,
    cofactors: Vec<CofactorTerm>,
}

/// Column labels of the literal system: exponent vectors over (algebraic vars, coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColumnKind {
    Ansatz(Vec<u32>),
    Multiplier(usize, Vec<u32>),
}

#[derive(Clone, Debug)]
pub struct LiteralSystem {
    pub matrix: SparseMatrixQ,
    pub ansatz_columns: usize,
    pub columns: Vec<ColumnKind>,
}

/// Dense exponent vectors of total degree exactly `d` in `n` variables.
pub fn monomials_exact(n: usize, d: u32) -> Vec<Vec<u32>> {
    compositions(d, n)
}

/// Dense exponent vectors of total degree at most `d` in `n` variables.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    (0..=d).flat_map(|k| compositions(k, n)).collect()
}

pub fn binomial_u128(n: u64, k: u64) -> u128 {
    binomial(n, k)
}
