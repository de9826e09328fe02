//! The reduction engine: prolong by Jacobi numbers, cut down to an essential algebraic
//! system in a full lattice, and compute its sparse resultant.

pub mod dense;
pub mod essential;
mod hull;
pub mod lattice;
pub mod polytope;
pub mod smith;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algsys::{AlgPolySystem, Slot};
use crate::ansatz::{AnsatzCore, DegreeHit, SearchMode};
use crate::diffpoly::GenericSystem;
use crate::engine::{certificate_from_hit, prolong, verify_certificate, EngineKind, ResultantCertificate, SearchOptions, SearchRecord};
use crate::error::{Error, Result};
use crate::jacobi::bounds_with_subset;
use crate::order::Order;
use crate::support::{is_laurent_transformally_essential, super_essential_subset};

use essential::{essential_subset_minimal_ranking, specialize_to_essential_vars};
use lattice::smith_transform;
use polytope::{mixed_volume_lattice, Polytope, MAX_MIXED_DIM};

/// Newton polytopes of the relative supports (translates of the true ones).
pub fn newton_polytopes(sys: &AlgPolySystem) -> Result<Vec<Polytope>> {
    sys.polys
        .iter()
        .map(|p| {
            let mut pts = p.relative_support();
            pts.push(vec![0; sys.dim()]);
            Polytope::from_lattice(&pts)
        })
        .collect()
}

/// For `N+1` polynomials in `N ≤ 4` variables, `MV` of all Newton polytopes but the
/// `p`-th, per `p`: the degree of the sparse resultant in the coefficients of `F_p`.
pub fn mixed_volume_degrees(sys: &AlgPolySystem) -> Result<Option<Vec<u64>>> {
    let n = sys.dim();
    if n == 0 || n > MAX_MIXED_DIM || sys.polys.len() != n + 1 {
        return Ok(None);
    }
    let polytopes = newton_polytopes(sys)?;
    (0..=n)
        .map(|p| {
            let others: Vec<Polytope> = polytopes.iter().enumerate().filter(|&(q, _)| q != p).map(|(_, x)| x.clone()).collect();
            mixed_volume_lattice(&others)
        })
        .collect::<Result<Vec<u64>>>()
        .map(Some)
}

#[derive(Clone, Debug)]
pub struct AlgebraicResultant {
    pub core: AnsatzCore,
    pub hit: DegreeHit,
    pub degree_cap: u128,
    pub mixed_volumes: Option<Vec<u64>>,
    pub degrees_tried: usize,
}

impl AlgebraicResultant {
    /// Integer coprime coefficients, positive on the largest slot monomial.
    pub fn slot_terms(&self) -> Vec<(BigInt, Vec<(Slot, u32)>)> {
        let slots = self.core.slots();
        let mut terms: Vec<(BigRational, Vec<(Slot, u32)>)> = self
            .hit
            .sr
            .iter()
            .map(|(m, c)| {
                let mut mono: Vec<(Slot, u32)> = m.iter().map(|&(id, e)| (slots[id], e)).collect();
                mono.sort();
                (c.clone(), mono)
            })
            .collect();
        terms.sort_by(|a, b| b.1.cmp(&a.1));
        let lcm = terms.iter().fold(BigInt::from(1), |acc, (c, _)| num_integer::lcm(acc, c.denom().clone()));
        let ints: Vec<BigInt> = terms.iter().map(|(c, _)| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| num_integer::gcd(acc, c.clone()));
        if ints.first().is_some_and(Signed::is_negative) {
            g = -g;
        }
        ints.into_iter().zip(terms).map(|(c, (_, m))| (c / &g, m)).collect()
    }

    /// Degree in the coefficients of each polynomial.
    pub fn poly_degrees(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.core.poly_count()];
        if let Some((m, _)) = self.hit.sr.first() {
            for &(id, e) in m {
                out[self.core.coeff_poly(id)] += e;
            }
        }
        out
    }
}

/// The generator of the elimination ideal of a strong essential system, by the degree
/// loop up to the mixed-volume degree when it is available and `Π (m_p + 1)` otherwise.
pub fn algebraic_sparse_resultant(sys: &AlgPolySystem, mode: SearchMode) -> Result<AlgebraicResultant> {
    let mixed_volumes = mixed_volume_degrees(sys)?;
    let core = AnsatzCore::new(sys, None);
    let degree_cap: u128 = match &mixed_volumes {
        Some(mv) => mv.iter().map(|&v| v as u128).sum(),
        None => (0..core.poly_count()).fold(1u128, |acc, p| acc.saturating_mul(core.poly_degree(p) as u128 + 1)),
    };
    let admit = |layer: &[u32]| layer.iter().all(|&x| x > 0);
    let mut d: u32 = 1;
    let mut degrees_tried = 0;
    while (d as u128) <= degree_cap {
        degrees_tried += 1;
        if let Some(hit) = core.solve_degree(d, mode, &admit)? {
            return Ok(AlgebraicResultant { core, hit, degree_cap, mixed_volumes, degrees_tried });
        }
        d += 1;
    }
    Err(Error::BoundsExceeded(format!("no elimination polynomial up to degree {degree_cap}")))
}

/// The intermediate objects of [`resultant_via_reduction`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub super_essential: Vec<usize>,
    /// `K_i = Jac((A_T)_î)`, −∞ outside `T`.
    pub prolongation: Vec<Order>,
    /// `(i, k)` for `σ^k P_i`, in ranking order.
    pub prolonged: Vec<(usize, u32)>,
    /// The essential subset of minimal ranking.
    pub essential: Vec<(usize, u32)>,
    pub kept: Vec<String>,
    pub set_to_one: Vec<String>,
    pub invariant_factors: Vec<BigInt>,
    /// `z_j = …` in the kept variables.
    pub substitutions: Vec<String>,
    /// Per essential polynomial, the mixed volume of the other Newton polytopes.
    pub mixed_volumes: Option<Vec<u64>>,
    /// Degree of the resultant in the coefficients of each essential polynomial.
    pub poly_degrees: Vec<u32>,
    pub degree_cap: u128,
}

/// The resultant via the strong essential algebraic system. Verification uses the same
/// trial count and seed as the ansatz engine, so the emitted certificates coincide.
/// Cofactors live in the transformed variables and are not kept.
pub fn resultant_via_reduction(sys: &GenericSystem, options: &SearchOptions) -> Result<(ResultantCertificate, ReductionTrace)> {
    let mode = options.rank_mode;
    if !is_laurent_transformally_essential(sys, mode) {
        return Err(Error::NotEssential);
    }
    let t = super_essential_subset(sys, mode)?;
    let bounds = bounds_with_subset(sys, t.clone());
    let k = bounds.super_essential_jacobi.clone();
    let prol = prolong(sys, &k)?;
    let picked = essential_subset_minimal_ranking(&prol.system, mode)?;
    let sub = prol.system.restrict(&picked);
    let spec = specialize_to_essential_vars(&sub, mode)?;
    let lat = smith_transform(&spec.system)?;
    let asr = algebraic_sparse_resultant(&lat.system, options.ansatz)?;
    let record = SearchRecord {
        engine: EngineKind::Reduction,
        order_vector: k.clone(),
        degree_cap: asr.degree_cap,
        orders_tried: 1,
        screened_out: 0,
        degrees_tried: asr.degrees_tried,
    };
    let trace = ReductionTrace {
        super_essential: t,
        prolongation: k,
        prolonged: prol.entries.clone(),
        essential: picked.iter().map(|&p| prol.entries[p]).collect(),
        kept: spec.system.vars.clone(),
        set_to_one: (0..sub.dim())
            .filter(|c| !spec.kept.contains(c) && sub.polys.iter().any(|p| p.relative_support().iter().any(|v| v[*c] != 0)))
            .map(|c| sub.vars[c].clone())
            .collect(),
        invariant_factors: lat.smith.invariant_factors(),
        substitutions: lat.describe(&spec.system.vars),
        mixed_volumes: asr.mixed_volumes.clone(),
        poly_degrees: asr.poly_degrees(),
        degree_cap: asr.degree_cap,
    };
    let AlgebraicResultant { core, hit, .. } = asr;
    let mut cert = certificate_from_hit(sys, &prol, &core, hit, false, record);
    let report = verify_certificate(&cert, sys, options.verify_trials, options.seed)?;
    if !report.passed() {
        return Err(Error::InternalConsistency("reduced resultant failed verification".into()));
    }
    cert.verification = Some(report);
    Ok((cert, trace))
}
