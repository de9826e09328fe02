//! Dense difference resultants: every monomial of degree at most `m_i` in `Y^{[s_i]}`.

use num_traits::ToPrimitive;

use super::{algebraic_sparse_resultant, mixed_volume_degrees};
use crate::ansatz::{monomials_up_to, AnsatzCore};
use crate::diffpoly::{GenericSystem, LaurentMonomial, ShiftedVar};
use crate::engine::{certificate_from_hit, prolong, verify_certificate, EngineKind, ResultantCertificate, SearchOptions, SearchRecord};
use crate::error::{Error, Result};
use crate::order::Order;

/// Largest ansatz (number of `SR_0` unknowns at the expected degree) attempted.
pub const DENSE_ANSATZ_LIMIT: u128 = 200_000;

/// What is known about a dense resultant before computing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseReport {
    pub n: usize,
    pub orders: Vec<u32>,
    pub degrees: Vec<u32>,
    /// `ord(SR, u_i) = s − s_i`.
    pub block_orders: Vec<i64>,
    /// `Π (m_i + 1)^{s − s_i + 1}`.
    pub degree_cap: u128,
    /// `deg(SR, u_i^{(k)})` for `k = 0..=s−s_i`, when the mixed volumes are computable.
    pub layer_degrees: Option<Vec<Vec<u64>>>,
    pub block_degrees: Option<Vec<u64>>,
    pub total_degree: Option<u64>,
    /// Number of `SR_0` unknowns the ansatz would need.
    pub ansatz_size: u128,
}

impl std::fmt::Display for DenseReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={} orders={:?} degrees={:?} block orders={:?} cap={}", self.n, self.orders, self.degrees, self.block_orders, self.degree_cap)?;
        if let (Some(b), Some(t)) = (&self.block_degrees, self.total_degree) {
            write!(f, " block degrees={b:?} total degree={t}")?;
        }
        Ok(())
    }
}

/// The generic dense system `P_i = u_i0 + Σ_α u_iα (Y^{[s_i]})^α`, `1 ≤ |α| ≤ m_i`, with the
/// monomials by degree and then by decreasing exponent over `y_1, y_1^{(1)}, …`.
pub fn dense_system(n: usize, orders: &[u32], degrees: &[u32]) -> Result<GenericSystem> {
    if n == 0 || orders.len() != n + 1 || degrees.len() != n + 1 {
        return Err(Error::DimensionMismatch(format!("need n ≥ 1 and n+1 orders and degrees, got n={n}, {} orders, {} degrees", orders.len(), degrees.len())));
    }
    if degrees.contains(&0) {
        return Err(Error::Malformed("dense degrees must be positive".into()));
    }
    let main: Vec<String> = (1..=n).map(|j| format!("y{j}")).collect();
    let supports = orders
        .iter()
        .zip(degrees)
        .map(|(&s, &m)| {
            let vars: Vec<ShiftedVar> = (0..n).flat_map(|j| (0..=s).map(move |k| ShiftedVar::new(j, k))).collect();
            let mut exps = monomials_up_to(vars.len(), m);
            exps.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum::<u32>()).then_with(|| b.cmp(a)));
            exps.into_iter()
                .map(|e| LaurentMonomial::from_pairs(vars.iter().zip(&e).filter(|(_, &x)| x > 0).map(|(&v, &x)| (v, x as i32))))
                .collect()
        })
        .collect();
    GenericSystem::new(&main, supports)
}

fn prolongation_orders(orders: &[u32]) -> Vec<Order> {
    let s: u32 = orders.iter().sum();
    orders.iter().map(|&si| Order::Fin((s - si) as i64)).collect()
}

pub fn dense_report(n: usize, orders: &[u32], degrees: &[u32]) -> Result<DenseReport> {
    let sys = dense_system(n, orders, degrees)?;
    let k = prolongation_orders(orders);
    let s: u32 = orders.iter().sum();
    let mut degree_cap: u128 = 1;
    for (&si, &m) in orders.iter().zip(degrees) {
        for _ in 0..=(s - si) {
            degree_cap = degree_cap.saturating_mul(m as u128 + 1);
        }
    }
    let prol = prolong(&sys, &k)?;
    let per_poly = mixed_volume_degrees(&prol.system)?;
    let layer_degrees = per_poly.map(|mv| {
        let mut layers: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
        for (&(i, _), v) in prol.entries.iter().zip(mv) {
            layers[i].push(v);
        }
        layers
    });
    let block_degrees: Option<Vec<u64>> = layer_degrees.as_ref().map(|l| l.iter().map(|x| x.iter().sum()).collect());
    let total_degree = block_degrees.as_ref().map(|b| b.iter().sum());
    let core = AnsatzCore::new(&prol.system, None);
    let expected = total_degree.map_or(degree_cap, u128::from);
    let ansatz_size = core.ansatz_size(expected.min(u32::MAX as u128) as u32);
    Ok(DenseReport {
        n,
        orders: orders.to_vec(),
        degrees: degrees.to_vec(),
        block_orders: k.iter().map(|o| o.finite().unwrap()).collect(),
        degree_cap,
        layer_degrees,
        block_degrees,
        total_degree,
        ansatz_size,
    })
}

/// The dense resultant as the sparse resultant of `P_i^{[s−s_i]}` in `Y^{[s]}`. Refuses with
/// the degree report when the ansatz would exceed [`DENSE_ANSATZ_LIMIT`].
pub fn dense_resultant(n: usize, orders: &[u32], degrees: &[u32], options: &SearchOptions) -> Result<(GenericSystem, ResultantCertificate, DenseReport)> {
    let report = dense_report(n, orders, degrees)?;
    if report.ansatz_size > DENSE_ANSATZ_LIMIT {
        return Err(Error::SizeGuard(Box::new(report)));
    }
    let sys = dense_system(n, orders, degrees)?;
    let k = prolongation_orders(orders);
    let prol = prolong(&sys, &k)?;
    let asr = algebraic_sparse_resultant(&prol.system, options.ansatz)?;
    let record = SearchRecord {
        engine: EngineKind::Dense,
        order_vector: k,
        degree_cap: report.degree_cap,
        orders_tried: 1,
        screened_out: 0,
        degrees_tried: asr.degrees_tried,
    };
    let mut cert = certificate_from_hit(&sys, &prol, &asr.core, asr.hit, options.keep_cofactors, record);
    let check = verify_certificate(&cert, &sys, options.verify_trials, options.seed)?;
    if !check.passed() {
        return Err(Error::InternalConsistency("dense resultant failed verification".into()));
    }
    cert.verification = Some(check);
    let expected_orders: Vec<Order> = report.block_orders.iter().map(|&o| Order::Fin(o)).collect();
    if cert.orders != expected_orders {
        return Err(Error::InternalConsistency(format!("dense resultant has orders {:?}", cert.orders)));
    }
    if let Some(t) = report.total_degree {
        if Some(t) != cert.degree.to_u64() {
            return Err(Error::InternalConsistency(format!("dense resultant has degree {} instead of {t}", cert.degree)));
        }
    }
    Ok((sys, cert, report))
}
