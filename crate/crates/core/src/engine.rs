//! The ansatz engine: prolongation, the order/degree search, certificates and their
//! verification, and solution reconstruction from a vanishing resultant.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algsys::{AlgPoly, AlgPolySystem, Slot};
use crate::ansatz::{binomial_u128, compositions, AnsatzCore, DegreeHit, LiteralSystem, SearchMode, UMono};
use crate::diffpoly::{rational_pow, DiffPoly, GenericSystem, LaurentMonomial, ShiftedVar};
use crate::error::{Error, Result};
use crate::jacobi::{bounds_with_subset, BoundReport};
use crate::linalg::solve_q;
use crate::order::Order;
use crate::support::{is_laurent_transformally_essential, super_essential_subset, RankMode};

/// `P^{[K]}` viewed as an algebraic system in the occurring shifted main variables.
#[derive(Clone, Debug)]
pub struct Prolongation {
    /// `(i, k)` for the polynomial `norm(P_i)^{(k)}`, in increasing order.
    pub entries: Vec<(usize, u32)>,
    pub polys: Vec<DiffPoly>,
    /// `Y^{[t]}` restricted to the variables that occur, sorted by `(var, shift)`.
    pub y_vars: Vec<ShiftedVar>,
    /// `U^{[K]}`.
    pub u_vars: Vec<ShiftedVar>,
    pub system: AlgPolySystem,
}

/// The multiset `{norm(P_i)^{(k)} : 0 ≤ k ≤ K_i}`; blocks with `K_i = −∞` are left out.
pub fn prolong(sys: &GenericSystem, k: &[Order]) -> Result<Prolongation> {
    if k.len() != sys.len() {
        return Err(Error::DimensionMismatch(format!("order vector has {} entries for {} polynomials", k.len(), sys.len())));
    }
    let mut entries = Vec::new();
    let mut norm_monos: Vec<Vec<LaurentMonomial>> = Vec::new();
    for (i, ki) in k.iter().enumerate() {
        let Some(ki) = ki.finite() else { continue };
        if ki < 0 {
            return Err(Error::DimensionMismatch(format!("negative prolongation order {ki}")));
        }
        let base = sys.norm_monomials(i);
        for s in 0..=ki as u32 {
            entries.push((i, s));
            norm_monos.push(base.iter().map(|m| m.transform(s)).collect());
        }
    }
    let y_set: BTreeSet<ShiftedVar> =
        norm_monos.iter().flatten().flat_map(|m| m.factors().iter().map(|&(sv, _)| sv)).collect();
    let y_vars: Vec<ShiftedVar> = y_set.into_iter().collect();
    let names = y_vars.iter().map(|sv| sv.display(sys.vars()).to_string()).collect();
    let mut polys = Vec::new();
    let mut alg = Vec::new();
    let mut u_vars = Vec::new();
    for (&(i, s), monos) in entries.iter().zip(&norm_monos) {
        let mut terms = Vec::new();
        let mut dp = Vec::new();
        for (slot, m) in monos.iter().enumerate() {
            let exps = y_vars.iter().map(|&sv| m.exponent(sv) as i64).collect();
            terms.push((Slot { block: i, slot, shift: s }, exps));
            let u = sys.coeff_var(i, slot, s);
            u_vars.push(u);
            dp.push((BigRational::one(), m.mul(&LaurentMonomial::var(u))));
        }
        alg.push(AlgPoly { terms });
        polys.push(DiffPoly::from_terms(dp));
    }
    u_vars.sort();
    Ok(Prolongation { entries, polys, y_vars, u_vars, system: AlgPolySystem { vars: names, polys: alg } })
}

/// `Π_{i∈T} (m_i+1)^{h_i+1}` with `m_i = deg norm(P_i)`, saturating.
pub fn degree_cap(sys: &GenericSystem, h: &[Order]) -> u128 {
    let mut cap: u128 = 1;
    for (i, hi) in h.iter().enumerate() {
        let Some(hi) = hi.finite() else { continue };
        let m = sys.norm(i).1.degree_in_group(|sv| sys.vars().is_main(sv.var())) as u128;
        for _ in 0..=hi {
            cap = cap.saturating_mul(m + 1);
        }
    }
    cap
}

/// The `SR_0` template: one unknown per listed monomial.
#[derive(Clone, Debug)]
pub struct AnsatzTemplate {
    pub monomials: Vec<LaurentMonomial>,
}

/// One `H_{ij}` template: the generic polynomial of the given degree in `Y^{[h]} ∪ U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierTemplate {
    pub block: usize,
    pub shift: u32,
    pub degree_bound: i64,
    pub variables: usize,
    pub unknowns: u128,
}

const TEMPLATE_LIMIT: u128 = 2_000_000;

fn slot_var(sys: &GenericSystem, s: &Slot) -> ShiftedVar {
    sys.coeff_var(s.block, s.slot, s.shift)
}

/// Top layer `(i, h_i)` must occur for every retained block.
fn top_layers(prol: &Prolongation, h: &[Order]) -> Vec<usize> {
    prol.entries
        .iter()
        .enumerate()
        .filter(|(_, &(i, s))| h[i].finite() == Some(s as i64))
        .map(|(p, _)| p)
        .collect()
}

/// `SR_0` as a generic homogeneous polynomial of degree `d` in `U = ∪ u_i^{[h_i]}`.
/// Multihomogeneous mode keeps only monomials reaching the top layer of every block.
pub fn build_ansatz(sys: &GenericSystem, h: &[Order], d: u32, mode: SearchMode) -> Result<AnsatzTemplate> {
    let prol = prolong(sys, h)?;
    let core = AnsatzCore::new(&prol.system, None);
    let size = core.ansatz_size(d);
    if size > TEMPLATE_LIMIT {
        return Err(Error::TooLarge(format!("{size} ansatz monomials")));
    }
    let top = top_layers(&prol, h);
    let slots = core.slots();
    let monomials = crate::ansatz::monomials_exact(slots.len(), d)
        .into_iter()
        .filter(|e| {
            mode == SearchMode::Plain
                || top.iter().all(|&p| core.coeff_ids(p).iter().any(|&id| e[id] > 0))
        })
        .map(|e| {
            LaurentMonomial::from_pairs(
                e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(id, &x)| (slot_var(sys, &slots[id]), x as i32)),
            )
        })
        .collect();
    Ok(AnsatzTemplate { monomials })
}

/// One multiplier template per prolonged polynomial with degree bound
/// `[m + 1 + Σ deg N_{i0}^{(k)}]·d − m_i − 1`.
pub fn build_multipliers(sys: &GenericSystem, h: &[Order], d: u32) -> Result<Vec<MultiplierTemplate>> {
    let prol = prolong(sys, h)?;
    let core = AnsatzCore::new(&prol.system, None);
    let variables = prol.y_vars.len() + prol.u_vars.len();
    Ok(prol
        .entries
        .iter()
        .enumerate()
        .map(|(p, &(block, shift))| {
            let degree_bound = core.multiplier_degree(p, d);
            let unknowns = if degree_bound < 0 { 0 } else { binomial_u128(degree_bound as u64 + variables as u64, variables as u64) };
            MultiplierTemplate { block, shift, degree_bound, variables, unknowns }
        })
        .collect())
}

/// The literal linear system with its dimensions.
#[derive(Clone, Debug)]
pub struct AssembledSystem {
    pub literal: LiteralSystem,
    /// Number of rows, `C(d_1 + V, V)` with `V = |Y| + |U|`.
    pub rows: usize,
    /// Number of unknowns; the first `literal.ansatz_columns` are `c_0`.
    pub cols: usize,
}

/// Assembles the coefficients of `∏ N_{i0}^{(k)d}·SR_0 − Σ H_{ij} norm(P_i)^{(j)}` as linear
/// forms in the unknowns. Only feasible for tiny configurations.
pub fn assemble_system(sys: &GenericSystem, h: &[Order], d: u32) -> Result<AssembledSystem> {
    let prol = prolong(sys, h)?;
    let core = AnsatzCore::new(&prol.system, None);
    let v = (prol.y_vars.len() + prol.u_vars.len()) as u64;
    let rows = binomial_u128(core.total_degree_bound(d) as u64 + v, v);
    if rows > 200_000 {
        return Err(Error::TooLarge(format!("{rows} rows in the literal system")));
    }
    let literal = core.assemble_literal(d);
    let (rows, cols) = (literal.matrix.rows(), literal.matrix.cols());
    Ok(AssembledSystem { literal, rows, cols })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Rank mode for the essentiality check, super-essential detection and the screen.
    pub rank_mode: RankMode,
    pub ansatz: SearchMode,
    /// Skip order vectors whose prolongation has full generic rank: such a system is
    /// algebraically independent and cannot carry a nonzero elimination polynomial.
    pub rank_screen: bool,
    pub verify_trials: usize,
    pub seed: u64,
    pub keep_cofactors: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            rank_mode: RankMode::default(),
            ansatz: SearchMode::Plain,
            rank_screen: true,
            verify_trials: 5,
            seed: 0,
            keep_cofactors: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineKind {
    Ansatz,
    Reduction,
    Dense,
}

/// How the certificate was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchRecord {
    pub engine: EngineKind,
    pub order_vector: Vec<Order>,
    pub degree_cap: u128,
    /// Order vectors examined, including screened ones.
    pub orders_tried: usize,
    pub screened_out: usize,
    /// Degree steps solved across all order vectors.
    pub degrees_tried: usize,
}

/// `SR = scale · SR_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub scale: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cofactor {
    pub block: usize,
    pub shift: u32,
    pub poly: DiffPoly,
}

/// `multiplier · SR = Σ G_ik · norm(P_i)^{(k)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub multiplier: LaurentMonomial,
    pub cofactors: Vec<Cofactor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub trials: usize,
    pub seed: u64,
    /// Per trial, whether SR vanished at the generic zero.
    pub vanishing: Vec<bool>,
    /// Per block, the layer degrees, or `None` when the block is not homogeneous.
    pub layers: Vec<Option<Vec<i64>>>,
    pub representation: Option<bool>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.vanishing.iter().all(|&v| v) && self.layers.iter().all(Option::is_some) && self.representation != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultantCertificate {
    pub resultant: DiffPoly,
    /// `ord(SR, u_i)`, −∞ when block `i` is absent.
    pub orders: Vec<Order>,
    pub degree: u32,
    pub normalization: Normalization,
    pub verification: Option<VerificationReport>,
    pub representation: Option<Representation>,
    pub search: SearchRecord,
}

/// Block orders of a polynomial in the coefficient variables.
pub fn block_orders(sys: &GenericSystem, p: &DiffPoly) -> Vec<Order> {
    let mut orders = vec![Order::NegInf; sys.len()];
    for sv in p.shifted_vars() {
        if let crate::diffpoly::VarKind::Coeff { block, .. } = sys.vars().kind(sv.var()) {
            orders[block] = orders[block].max(Order::Fin(sv.shift as i64));
        }
    }
    orders
}

/// `ord − lord` per block, −∞ when block `i` is absent.
pub fn block_effective_orders(sys: &GenericSystem, p: &DiffPoly) -> Vec<Order> {
    let mut range: Vec<Option<(u32, u32)>> = vec![None; sys.len()];
    for sv in p.shifted_vars() {
        if let crate::diffpoly::VarKind::Coeff { block, .. } = sys.vars().kind(sv.var()) {
            let r = range[block].get_or_insert((sv.shift, sv.shift));
            r.0 = r.0.min(sv.shift);
            r.1 = r.1.max(sv.shift);
        }
    }
    range.into_iter().map(|r| r.map_or(Order::NegInf, |(lo, hi)| Order::Fin((hi - lo) as i64))).collect()
}

/// Wraps an externally supplied polynomial so it can be verified.
pub fn certificate_from_polynomial(sys: &GenericSystem, resultant: DiffPoly) -> Result<ResultantCertificate> {
    if resultant.is_zero() {
        return Err(Error::Certificate("zero resultant".into()));
    }
    if !resultant.is_coefficient_only(sys.vars()) {
        return Err(Error::Certificate("resultant mentions main variables".into()));
    }
    let degree = resultant.degree().unwrap_or(0).max(0) as u32;
    Ok(ResultantCertificate {
        orders: block_orders(sys, &resultant),
        degree,
        resultant,
        normalization: Normalization { scale: BigRational::one() },
        verification: None,
        representation: None,
        search: SearchRecord {
            engine: EngineKind::Ansatz,
            order_vector: Vec::new(),
            degree_cap: 0,
            orders_tried: 0,
            screened_out: 0,
            degrees_tried: 0,
        },
    })
}

fn umono_to_monomial(sys: &GenericSystem, slots: &[Slot], m: &UMono) -> LaurentMonomial {
    LaurentMonomial::from_pairs(m.iter().map(|&(id, e)| (slot_var(sys, &slots[id]), e as i32)))
}

/// Builds a normalized certificate from a solver hit.
pub(crate) fn certificate_from_hit(
    sys: &GenericSystem,
    prol: &Prolongation,
    core: &AnsatzCore,
    hit: DegreeHit,
    keep_cofactors: bool,
    search: SearchRecord,
) -> ResultantCertificate {
    let slots = core.slots();
    let raw = DiffPoly::from_terms(hit.sr.iter().map(|(m, c)| (c.clone(), umono_to_monomial(sys, slots, m))));
    let (resultant, scale) = raw.normalize_integer();
    let representation = keep_cofactors.then(|| {
        let mut multiplier = LaurentMonomial::one();
        for p in 0..core.poly_count() {
            let e = core.coeff_exponent(core.coeff_ids(p)[core.denominator_term(p)]);
            multiplier = multiplier.mul(&y_monomial(prol, e).pow(hit.degree as i32));
        }
        let mut grouped: BTreeMap<usize, Vec<(BigRational, LaurentMonomial)>> = BTreeMap::new();
        for t in &hit.cofactors {
            let m = umono_to_monomial(sys, slots, &t.coeffs).mul(&y_monomial(prol, &t.exponent));
            grouped.entry(t.poly).or_default().push((&t.value * &scale, m));
        }
        let cofactors = grouped
            .into_iter()
            .map(|(p, terms)| {
                let (block, shift) = prol.entries[p];
                Cofactor { block, shift, poly: DiffPoly::from_terms(terms) }
            })
            .collect();
        Representation { multiplier, cofactors }
    });
    ResultantCertificate {
        orders: block_orders(sys, &resultant),
        degree: hit.degree,
        resultant,
        normalization: Normalization { scale },
        verification: None,
        representation,
        search,
    }
}

fn y_monomial(prol: &Prolongation, e: &[i64]) -> LaurentMonomial {
    LaurentMonomial::from_pairs(prol.y_vars.iter().zip(e).filter(|(_, &x)| x != 0).map(|(&sv, &x)| (sv, x as i32)))
}

/// Order vectors with `Σ h_i = o`, `h_i ≤ bound_i` on `t` and −∞ elsewhere, lexicographically.
pub fn order_vectors(bound: &[Order], t: &[usize], o: u32) -> Vec<Vec<Order>> {
    compositions(o, t.len())
        .into_iter()
        .filter(|c| t.iter().zip(c).all(|(&i, &x)| Order::Fin(x as i64) <= bound[i]))
        .map(|c| {
            let mut h = vec![Order::NegInf; bound.len()];
            for (&i, &x) in t.iter().zip(&c) {
                h[i] = Order::Fin(x as i64);
            }
            h
        })
        .collect()
}

/// Runs the order/degree search and returns the first hit, verified.
pub fn search_resultant(sys: &GenericSystem, options: &SearchOptions) -> Result<ResultantCertificate> {
    if !is_laurent_transformally_essential(sys, options.rank_mode) {
        return Err(Error::NotEssential);
    }
    let t = super_essential_subset(sys, options.rank_mode)?;
    let bounds = bounds_with_subset(sys, t.clone());
    search_with_bounds(sys, &bounds, options)
}

/// The search loop for a precomputed bound report.
pub fn search_with_bounds(sys: &GenericSystem, bounds: &BoundReport, options: &SearchOptions) -> Result<ResultantCertificate> {
    let t = &bounds.super_essential;
    let total: i64 = t.iter().filter_map(|&i| bounds.final_bound[i].finite()).sum();
    let max_degree = (0..sys.len()).map(|i| sys.norm(i).1.degree_in_group(|sv| sys.vars().is_main(sv.var()))).max().unwrap_or(0);
    let mut record = SearchRecord {
        engine: EngineKind::Ansatz,
        order_vector: Vec::new(),
        degree_cap: 0,
        orders_tried: 0,
        screened_out: 0,
        degrees_tried: 0,
    };
    for o in 0..=total as u32 {
        for h in order_vectors(&bounds.final_bound, t, o) {
            record.orders_tried += 1;
            let prol = prolong(sys, &h)?;
            let count = prol.system.polys.len();
            if options.rank_screen {
                let all: Vec<usize> = (0..count).collect();
                if prol.system.generic_rank(&all, options.rank_mode) == count {
                    record.screened_out += 1;
                    continue;
                }
            }
            let core = AnsatzCore::new(&prol.system, Some(max_degree));
            let cap = degree_cap(sys, &h);
            let top = top_layers(&prol, &h);
            let admit = |layer: &[u32]| top.iter().all(|&p| layer[p] > 0);
            let mut d: u32 = 1;
            while (d as u128) <= cap {
                record.degrees_tried += 1;
                if let Some(hit) = core.solve_degree(d, options.ansatz, &admit)? {
                    record.order_vector = h.clone();
                    record.degree_cap = cap;
                    let mut cert = certificate_from_hit(sys, &prol, &core, hit, options.keep_cofactors, record);
                    let report = verify_certificate(&cert, sys, options.verify_trials, options.seed)?;
                    if !report.passed() {
                        return Err(Error::InternalConsistency("computed resultant failed verification".into()));
                    }
                    cert.verification = Some(report);
                    return Ok(cert);
                }
                d += 1;
            }
        }
    }
    Err(Error::BoundsExceeded(format!("no resultant with total order at most {total}")))
}

/// Uniform nonzero rational with 63-bit numerator and denominator.
pub fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let bound = 1i64 << 62;
    loop {
        let num = rng.gen_range(-bound..=bound);
        if num != 0 {
            let den = rng.gen_range(1..=bound);
            return BigRational::new(BigInt::from(num), BigInt::from(den));
        }
    }
}

/// `transform(M_ik / M_i0, l)`.
fn ratio_monomial(sys: &GenericSystem, i: usize, k: usize, l: u32) -> LaurentMonomial {
    let a = sys.support(i);
    a[k].mul(&a[0].inv()).transform(l)
}

fn evaluate_monomial(m: &LaurentMonomial, values: &BTreeMap<ShiftedVar, BigRational>) -> Result<BigRational> {
    DiffPoly::monomial(BigRational::one(), m.clone()).evaluate(values)
}

/// Checks that the SR vanishes at random points of the generic zero, that every block is
/// transformally homogeneous, and when present that the representation identity holds.
pub fn verify_certificate(cert: &ResultantCertificate, sys: &GenericSystem, trials: usize, seed: u64) -> Result<VerificationReport> {
    let sr = &cert.resultant;
    if sr.is_zero() {
        return Err(Error::Certificate("zero resultant".into()));
    }
    if !sr.is_coefficient_only(sys.vars()) {
        return Err(Error::Certificate("resultant mentions main variables".into()));
    }
    // Layers (i, l) whose coefficients occur.
    let mut layers_used: BTreeSet<(usize, u32)> = BTreeSet::new();
    for sv in sr.shifted_vars() {
        if let crate::diffpoly::VarKind::Coeff { block, .. } = sys.vars().kind(sv.var()) {
            layers_used.insert((block, sv.shift));
        }
    }
    let mut needed_y: BTreeSet<ShiftedVar> = BTreeSet::new();
    for &(i, l) in &layers_used {
        for k in 1..sys.support(i).len() {
            needed_y.extend(ratio_monomial(sys, i, k, l).factors().iter().map(|&(sv, _)| sv));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vanishing = Vec::with_capacity(trials);
    for _ in 0..trials {
        let mut eta: BTreeMap<ShiftedVar, BigRational> = BTreeMap::new();
        for &sv in &needed_y {
            eta.insert(sv, random_rational(&mut rng));
        }
        let mut point: BTreeMap<ShiftedVar, BigRational> = BTreeMap::new();
        for &(i, l) in &layers_used {
            let mut zeta = BigRational::zero();
            for k in 1..sys.support(i).len() {
                let u = random_rational(&mut rng);
                zeta -= &u * evaluate_monomial(&ratio_monomial(sys, i, k, l), &eta)?;
                point.insert(sys.coeff_var(i, k, l), u);
            }
            point.insert(sys.coeff_var(i, 0, l), zeta);
        }
        vanishing.push(sr.evaluate(&point)?.is_zero());
    }
    let layers = (0..sys.len())
        .map(|i| {
            let group: BTreeSet<usize> = sys.vars().block(i).iter().copied().collect();
            sr.transformal_layers(&group)
        })
        .collect();
    let representation = cert.representation.as_ref().map(|r| check_representation(sr, r, sys));
    Ok(VerificationReport { trials, seed, vanishing, layers, representation })
}

/// Exact check of `multiplier · SR = Σ G_ik · norm(P_i)^{(k)}`.
pub fn check_representation(sr: &DiffPoly, rep: &Representation, sys: &GenericSystem) -> bool {
    let lhs = sr.mul_monomial(&rep.multiplier);
    let mut rhs = DiffPoly::zero();
    for c in &rep.cofactors {
        rhs = &rhs + &(&c.poly * &sys.norm(c.block).1.transform(c.shift));
    }
    lhs == rhs
}

/// A coefficient specialization: `v[i][k]` for `u_ik` and all of its transforms.
pub type Specialization = Vec<Vec<BigRational>>;

fn constant_assignment(p: &DiffPoly, sys: &GenericSystem, v: &Specialization) -> BTreeMap<ShiftedVar, BigRational> {
    p.shifted_vars()
        .into_iter()
        .filter_map(|sv| match sys.vars().kind(sv.var()) {
            crate::diffpoly::VarKind::Coeff { block, slot } => Some((sv, v[block][slot].clone())),
            crate::diffpoly::VarKind::Main => None,
        })
        .collect()
}

/// SR evaluated at a constant coefficient specialization.
pub fn evaluate_specialized(sr: &DiffPoly, sys: &GenericSystem, v: &Specialization) -> Result<BigRational> {
    sr.evaluate(&constant_assignment(sr, sys, v))
}

fn exact_root(x: &BigRational, q: u32) -> Option<BigRational> {
    if q == 1 {
        return Some(x.clone());
    }
    if x.is_negative() && q % 2 == 0 {
        return None;
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.nth_root(q);
        (num_traits::pow(r.clone(), q as usize) == *n).then_some(r)
    };
    Some(BigRational::new(root(x.numer())?, root(x.denom())?))
}

/// The unique candidate constant solution `ξ` of the specialized system, from
/// `M_ik(ξ)/M_i0(ξ) = ∂SR/∂u_ik(v) / ∂SR/∂u_i0(v)` and a lattice expression of each `y_j`
/// in the ratios. `None` when the lattice condition fails or the root is irrational.
pub fn reconstruct_solution(cert: &ResultantCertificate, sys: &GenericSystem, v: &Specialization) -> Result<Option<Vec<BigRational>>> {
    let sr = &cert.resultant;
    let n = sys.n();
    let mut rows: Vec<(usize, usize)> = Vec::new();
    for (i, o) in cert.orders.iter().enumerate() {
        if o.is_neg_inf() {
            continue;
        }
        for k in 1..sys.support(i).len() {
            rows.push((i, k));
        }
    }
    // β_ik(1): exponent sums of M_ik/M_i0 per main variable.
    let beta: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|&(i, k)| {
            let m = ratio_monomial(sys, i, k, 0);
            (0..n)
                .map(|j| {
                    let s: i64 = m.factors().iter().filter(|(sv, _)| sv.var() == j).map(|&(_, e)| e as i64).sum();
                    BigRational::from_integer(s.into())
                })
                .collect()
        })
        .collect();
    let transpose: Vec<Vec<BigRational>> = (0..n).map(|j| beta.iter().map(|r| r[j].clone()).collect()).collect();
    let mut exponents = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<BigRational> = (0..n).map(|r| if r == j { BigRational::one() } else { BigRational::zero() }).collect();
        match solve_q(&transpose, &e) {
            Some(d) => exponents.push(d),
            None => return Ok(None),
        }
    }
    let top = cert.orders.iter().filter_map(|o| o.finite()).max().unwrap_or(0) as u32;
    let point = |p: &DiffPoly| evaluate_specialized(p, sys, v);
    let mut ratios: BTreeMap<usize, BigRational> = BTreeMap::new();
    let mut ratio = |r: usize| -> Result<BigRational> {
        if let Some(x) = ratios.get(&r) {
            return Ok(x.clone());
        }
        let (i, k) = rows[r];
        for l in 0..=top {
            let den = point(&sr.derivative(sys.coeff_var(i, 0, l)))?;
            if den.is_zero() {
                continue;
            }
            let num = point(&sr.derivative(sys.coeff_var(i, k, l)))?;
            if num.is_zero() {
                return Err(Error::DegenerateSpecialization(format!("derivative in u{i}{k} vanishes")));
            }
            let x = num / den;
            ratios.insert(r, x.clone());
            return Ok(x);
        }
        Err(Error::DegenerateSpecialization(format!("every derivative in u{i}0 vanishes")))
    };
    let mut xi = Vec::with_capacity(n);
    for d in &exponents {
        let mut value = BigRational::one();
        for (r, e) in d.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let base = ratio(r)?;
            let p = e.numer().to_i32().ok_or_else(|| Error::DegenerateSpecialization("exponent too large".into()))?;
            let q = e.denom().to_u32().ok_or_else(|| Error::DegenerateSpecialization("exponent too large".into()))?;
            let Some(root) = exact_root(&rational_pow(&base, p)?, q) else { return Ok(None) };
            value *= root;
        }
        xi.push(value);
    }
    Ok(Some(xi))
}

/// `P_i(v, ξ)` for the constant point `y_j^{(k)} = ξ_j`.
pub fn check_solution(sys: &GenericSystem, v: &Specialization, xi: &[BigRational]) -> Result<Vec<BigRational>> {
    (0..sys.len())
        .map(|i| {
            let p = sys.poly(i);
            let mut a = constant_assignment(p, sys, v);
            for sv in p.shifted_vars() {
                if sys.vars().is_main(sv.var()) {
                    a.insert(sv, xi[sv.var()].clone());
                }
            }
            p.evaluate(&a)
        })
        .collect()
}

/// A specialization for which the constant `ξ` is a common solution: random nonzero
/// `v_ik` for `k ≥ 1` and `v_i0 = −Σ v_ik M_ik(ξ)/M_i0(ξ)`.
pub fn planted_specialization(sys: &GenericSystem, xi: &[BigRational], rng: &mut ChaCha8Rng) -> Result<Specialization> {
    let at = |m: &LaurentMonomial| -> Result<BigRational> {
        let mut value = BigRational::one();
        for &(sv, e) in m.factors() {
            value *= rational_pow(&xi[sv.var()], e)?;
        }
        Ok(value)
    };
    (0..sys.len())
        .map(|i| {
            let a = sys.support(i);
            let mut row = vec![BigRational::zero(); a.len()];
            let mut acc = BigRational::zero();
            for k in 1..a.len() {
                let mut x = 0i64;
                while x == 0 {
                    x = rng.gen_range(-20..=20);
                }
                row[k] = BigRational::from_integer(x.into());
                acc -= &row[k] * at(&a[k])? / at(&a[0])?;
            }
            row[0] = acc;
            Ok(row)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::text::{format_poly, parse_system};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn exact() -> SearchOptions {
        SearchOptions { rank_mode: RankMode::Exact, keep_cofactors: true, ..SearchOptions::default() }
    }

    #[test]
    fn prolongation_counts() {
        let sys = parse_system("u00 + u01*y1^2 ; u10*y1@1 + u11*y1").unwrap();
        let p = prolong(&sys, &[Order::Fin(1), Order::Fin(0)]).unwrap();
        assert_eq!(p.entries, vec![(0, 0), (0, 1), (1, 0)]);
        assert_eq!(p.u_vars.len(), 6);
        let p = prolong(&sys, &[Order::Fin(0), Order::Fin(0)]).unwrap();
        assert_eq!(p.polys[0], sys.norm(0).1);
    }

    #[test]
    fn first_example() {
        let sys = parse_system("u00 + u01*y1^2 ; u10*y1@1 + u11*y1").unwrap();
        let cert = search_resultant(&sys, &exact()).unwrap();
        assert_eq!(format_poly(&cert.resultant, sys.vars()), "u00*u01@1*u11^2 - u00@1*u01*u10^2");
        assert_eq!(cert.orders, vec![Order::Fin(1), Order::Fin(0)]);
        assert_eq!(cert.degree, 4);
        let v = cert.verification.as_ref().unwrap();
        assert!(v.passed());
        assert_eq!(v.representation, Some(true));
    }

    #[test]
    fn second_example_and_modes_agree() {
        let sys = parse_system("u00 + u01*y1*y2 ; u10 + u11*y1@1*y2@1 ; u20 + u21*y2").unwrap();
        let plain = search_resultant(&sys, &exact()).unwrap();
        assert_eq!(format_poly(&plain.resultant, sys.vars()), "u00@1*u11 - u01@1*u10");
        assert_eq!(plain.orders[2], Order::NegInf);
        let v = plain.verification.as_ref().unwrap();
        assert_eq!(v.layers[0], Some(vec![0, 1]));
        assert_eq!(v.layers[1], Some(vec![1]));
        let multi = search_resultant(&sys, &SearchOptions { ansatz: SearchMode::Multihomogeneous, ..exact() }).unwrap();
        assert_eq!(multi.resultant, plain.resultant);
        let unscreened = search_resultant(&sys, &SearchOptions { rank_screen: false, ..exact() }).unwrap();
        assert_eq!(unscreened.resultant, plain.resultant);
    }

    #[test]
    fn corrupted_certificate_fails() {
        let sys = parse_system("u00 + u01*y1^2 ; u10*y1@1 + u11*y1").unwrap();
        let mut cert = search_resultant(&sys, &exact()).unwrap();
        let terms: Vec<_> = cert.resultant.terms().iter().enumerate().map(|(i, (c, m))| (if i == 0 { c * q(2) } else { c.clone() }, m.clone())).collect();
        cert.resultant = DiffPoly::from_terms(terms);
        cert.representation = None;
        let report = verify_certificate(&cert, &sys, 1, 9).unwrap();
        assert!(!report.vanishing[0]);
    }

    #[test]
    fn reconstruction_of_the_worked_system() {
        let sys = parse_system("u00 + u01*y1*y2 ; u10 + u11*y1*y2@1 ; u20 + u21*y2").unwrap();
        let cert = search_resultant(&sys, &exact()).unwrap();
        let xi = vec![BigRational::new(3.into(), 2.into()), q(-5)];
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let v = planted_specialization(&sys, &xi, &mut rng).unwrap();
        assert!(evaluate_specialized(&cert.resultant, &sys, &v).unwrap().is_zero());
        let got = reconstruct_solution(&cert, &sys, &v).unwrap().unwrap();
        assert_eq!(got, xi);
        assert_eq!(got[1], -&v[2][0] / &v[2][1]);
        assert_eq!(got[0], &v[0][0] * &v[2][1] / (&v[0][1] * &v[2][0]));
        assert!(check_solution(&sys, &v, &got).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn vanishing_without_solution() {
        let sys = parse_system("u00 + u01*y1^2 ; u10*y1@1 + u11*y1").unwrap();
        let cert = search_resultant(&sys, &exact()).unwrap();
        let v = vec![vec![q(-4), q(1)], vec![q(1), q(1)]];
        assert!(evaluate_specialized(&cert.resultant, &sys, &v).unwrap().is_zero());
        let xi = reconstruct_solution(&cert, &sys, &v).unwrap().unwrap();
        assert_eq!(xi, vec![q(2)]);
        assert!(check_solution(&sys, &v, &xi).unwrap().iter().any(|r| !r.is_zero()));
    }

    #[test]
    fn linear_pair_reconstruction() {
        let sys = parse_system("u00 + u01*y1 ; u10 + u11*y1@1").unwrap();
        let cert = search_resultant(&sys, &exact()).unwrap();
        let v = vec![vec![q(6), q(-3)], vec![q(4), q(-2)]];
        let xi = reconstruct_solution(&cert, &sys, &v).unwrap().unwrap();
        assert_eq!(xi, vec![-&v[0][0] / &v[0][1]]);
    }

    #[test]
    fn template_sizes() {
        let sys = parse_system("u00 + u01*y1^2 ; u10*y1@1 + u11*y1").unwrap();
        let h = [Order::Fin(1), Order::Fin(0)];
        // L = 6 coefficients.
        assert_eq!(build_ansatz(&sys, &h, 1, SearchMode::Plain).unwrap().monomials.len(), 6);
        assert_eq!(build_ansatz(&sys, &h, 2, SearchMode::Plain).unwrap().monomials.len(), 21);
        let hs = build_multipliers(&sys, &h, 1).unwrap();
        assert_eq!(hs.len(), 3);
        // m = 2 and N_10 = y1@1 has degree 1: (2 + 1 + 1)·1 − 1 − 1.
        assert_eq!(hs[2].degree_bound, 2);
        // With constant denominators the bound is (m + 1)·d − m_i − 1.
        let constant = parse_system("u00 + u01*y1^2 ; u10 + u11*y1").unwrap();
        assert_eq!(build_multipliers(&constant, &[Order::Fin(0), Order::Fin(0)], 1).unwrap()[1].degree_bound, 1);
        let sys2 = parse_system("u00 + u01*y1*y2 ; u10 + u11*y1@1*y2@1 ; u20 + u21*y2").unwrap();
        let h2 = [Order::Fin(1), Order::Fin(0), Order::NegInf];
        let multi = build_ansatz(&sys2, &h2, 2, SearchMode::Multihomogeneous).unwrap();
        let u00_1 = sys2.coeff_var(0, 0, 1);
        let u11 = sys2.coeff_var(1, 1, 0);
        let target = LaurentMonomial::from_pairs([(u00_1, 1), (u11, 1)]);
        assert!(multi.monomials.contains(&target));
    }

    #[test]
    fn literal_system_dimensions() {
        let sys = parse_system("u00 + u01*y1 ; u10 + u11*y1").unwrap();
        let h = [Order::Fin(0), Order::Fin(0)];
        let asm = assemble_system(&sys, &h, 2).unwrap();
        // V = 1 + 4 variables, d_1 = (1 + 1 + 0)·2 = 4.
        assert_eq!(asm.rows, binomial_u128(4 + 5, 5) as usize);
        let target: Vec<usize> = (0..asm.literal.ansatz_columns).collect();
        assert!(crate::linalg::solve_for_nonzero_projection(&asm.literal.matrix, &target).is_some());
        let asm1 = assemble_system(&sys, &h, 1).unwrap();
        let target: Vec<usize> = (0..asm1.literal.ansatz_columns).collect();
        assert!(crate::linalg::solve_for_nonzero_projection(&asm1.literal.matrix, &target).is_none());
    }
}
