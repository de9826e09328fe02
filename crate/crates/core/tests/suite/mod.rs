//! The randomized suite shared by the test targets and the acceptance harness: 1000 cases
//! per property from a fixed seed.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{RngSeed, TestCaseResult, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::common::*;
use sdresultant::ansatz::SearchMode;
use sdresultant::diffpoly::{DiffPoly, GenericSystem, LaurentMonomial, ShiftedVar};
use sdresultant::engine::{
    check_solution, evaluate_specialized, planted_specialization, reconstruct_solution, search_resultant, verify_certificate,
    ResultantCertificate, SearchOptions,
};
use sdresultant::jacobi::{jacobi_assignment, jacobi_brute_force};
use sdresultant::linalg::{nullspace_q, rank_q, row_space_basis, SparseMatrixQ};
use sdresultant::order::Order;
use sdresultant::reduction::{resultant_via_reduction, ReductionTrace};
use sdresultant::support::{rank_qx, RankMode, SymbolicSupportMatrix};
use sdresultant::upoly::UPoly;

pub const CASES: u32 = 1000;
pub const SEED: u64 = 0x5d7e_5017;

pub fn config() -> ProptestConfig {
    ProptestConfig { cases: CASES, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..ProptestConfig::default() }
}

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> TestCaseResult) -> Result<(), String> {
    TestRunner::new(config()).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn shifted_var() -> impl Strategy<Value = ShiftedVar> {
    (0usize..3, 0u32..3).prop_map(|(v, s)| ShiftedVar::new(v, s))
}

fn monomial() -> impl Strategy<Value = LaurentMonomial> {
    prop::collection::vec((shifted_var(), -2i32..=2), 0..4).prop_map(LaurentMonomial::from_pairs)
}

pub fn diffpoly() -> impl Strategy<Value = DiffPoly> {
    prop::collection::vec((-4i64..=4, monomial()), 0..5).prop_map(|t| DiffPoly::from_terms(t.into_iter().map(|(c, m)| (q(c), m))))
}

/// Nonzero values for `y_v^(s)`, `v < 3`, `s < 8`.
fn point() -> impl Strategy<Value = BTreeMap<ShiftedVar, BigRational>> {
    prop::collection::vec(nonzero_rational(), 24).prop_map(|vals| vals.into_iter().enumerate().map(|(i, x)| (ShiftedVar::new(i / 8, (i % 8) as u32), x)).collect())
}

pub fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    (1i64..=9, any::<bool>(), 1i64..=4).prop_map(|(n, neg, d)| BigRational::new((if neg { -n } else { n }).into(), d.into()))
}

pub fn ring_laws() -> Result<(), String> {
    run((diffpoly(), diffpoly(), diffpoly()), |(a, b, c)| {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &DiffPoly::one(), a.clone());
        prop_assert_eq!(&a + &DiffPoly::zero(), a.clone());
        prop_assert_eq!(-(-&a), a);
        Ok(())
    })
}

pub fn transform_homomorphism() -> Result<(), String> {
    run((diffpoly(), diffpoly(), 0u32..3, 0u32..3, point()), |(a, b, j, k, at)| {
        prop_assert_eq!((&a * &b).transform(k), &a.transform(k) * &b.transform(k));
        prop_assert_eq!((&a + &b).transform(k), &a.transform(k) + &b.transform(k));
        prop_assert_eq!(a.transform(j).transform(k), a.transform(j + k));
        prop_assert_eq!(a.transform(0), a.clone());
        prop_assert_eq!((&a * &b).evaluate(&at).unwrap(), a.evaluate(&at).unwrap() * b.evaluate(&at).unwrap());
        // Evaluating σ^k(a) at η equals evaluating a at σ^k(η).
        let shifted: BTreeMap<ShiftedVar, BigRational> =
            at.iter().filter_map(|(sv, x)| sv.shift.checked_sub(k).map(|s| (ShiftedVar::new(sv.var(), s), x.clone()))).collect();
        prop_assert_eq!(a.transform(k).evaluate(&at).unwrap(), a.evaluate(&shifted).unwrap());
        Ok(())
    })
}

fn upoly() -> impl Strategy<Value = UPoly> {
    prop::collection::vec(-2i64..=2, 0..4).prop_map(|c| UPoly::from_ints(&c))
}

fn symbolic_matrix() -> impl Strategy<Value = SymbolicSupportMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(upoly(), c), r).prop_map(move |rows| SymbolicSupportMatrix { cols: c, rows }))
}

pub fn int_matrix(rows: std::ops::RangeInclusive<usize>, cols: std::ops::RangeInclusive<usize>, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (rows, cols).prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(prop_oneof![2 => Just(0i64), 3 => lo..=hi], c), r))
}

/// A nonzero `r × r` minor has degree at most `3r ≤ 12` in `x`, so one of 13 sample points
/// avoids all its roots and the maximum specialized rank is the rank over Q(x).
pub fn rank_over_qx() -> Result<(), String> {
    run(symbolic_matrix(), |m| {
        let oracle = (0..=12i64)
            .map(|x| {
                let rows: Vec<Vec<BigRational>> = m.rows.iter().map(|r| r.iter().map(|p| p.eval(&q(x))).collect()).collect();
                rank_q(&SparseMatrixQ::from_dense(&rows))
            })
            .max()
            .unwrap();
        prop_assert_eq!(rank_qx(&m), oracle);
        Ok(())
    })
}

fn order_entry() -> impl Strategy<Value = Order> {
    prop_oneof![1 => Just(Order::NegInf), 3 => (-3i64..=6).prop_map(Order::Fin)]
}

pub fn jacobi_numbers() -> Result<(), String> {
    let matrix = (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(order_entry(), c), r));
    run(matrix, |a| {
        prop_assert_eq!(jacobi_assignment(&a), jacobi_brute_force(&a));
        Ok(())
    })
}

pub fn nullspace_residuals() -> Result<(), String> {
    run(int_matrix(1..=6, 1..=7, -3, 3), |a| {
        let m = SparseMatrixQ::from_ints(&a);
        let ns = nullspace_q(&m);
        prop_assert_eq!(ns.len(), m.cols() - rank_q(&m));
        for v in &ns {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(row_space_basis(&ns).len(), ns.len());
        Ok(())
    })
}

pub struct Computed {
    pub sys: GenericSystem,
    pub ansatz: ResultantCertificate,
    pub multihomogeneous: ResultantCertificate,
    pub reduced: ResultantCertificate,
    pub trace: ReductionTrace,
}

/// Certificates are expensive and the family is finite, so each system is solved once.
pub fn computed(text: &str) -> Arc<Computed> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<Computed>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(text) {
        return c.clone();
    }
    let sys = sys(text);
    let exact = SearchOptions { rank_mode: RankMode::Exact, ..SearchOptions::default() };
    let ansatz = search_resultant(&sys, &exact).unwrap();
    let multihomogeneous = search_resultant(&sys, &SearchOptions { ansatz: SearchMode::Multihomogeneous, ..exact }).unwrap();
    let (reduced, trace) = resultant_via_reduction(&sys, &exact).unwrap();
    let c = Arc::new(Computed { sys, ansatz, multihomogeneous, reduced, trace });
    cache.lock().unwrap().insert(text.to_string(), c.clone());
    c
}

/// Worked examples plus binomial pairs `u_i0 + u_i1·y^a·(y^(1))^b` with `0 < (a, b) ≤ 2`.
pub fn family() -> impl Strategy<Value = String> {
    let exponent = (0u32..=2, 0u32..=2).prop_filter("nonconstant", |&(a, b)| a + b > 0);
    prop_oneof![
        1 => prop::sample::select(vec![EX0, EX2, EX2N, LINEAR, WORKED]).prop_map(str::to_string),
        4 => (exponent.clone(), exponent).prop_map(|((a, b), (c, d))| format!("u00 + u01*y1^{a}*y1@1^{b} ; u10 + u11*y1^{c}*y1@1^{d}")),
    ]
}

/// Vanishing at random points of the generic zero and transformal homogeneity per block.
pub fn certificates_verify() -> Result<(), String> {
    run((family(), any::<u64>()), |(text, seed)| {
        let c = computed(&text);
        for cert in [&c.ansatz, &c.reduced] {
            let report = verify_certificate(cert, &c.sys, 2, seed).unwrap();
            prop_assert!(report.vanishing.iter().all(|&v| v));
            prop_assert!(report.layers.iter().all(Option::is_some));
        }
        Ok(())
    })
}

/// Coefficients chosen so that a random constant `ξ` solves the system annihilate SR.
pub fn planted_solutions() -> Result<(), String> {
    run((family(), prop::collection::vec(nonzero_rational(), 3), any::<u64>()), |(text, xi, seed)| {
        let c = computed(&text);
        let xi = &xi[..c.sys.n()];
        let v = planted_specialization(&c.sys, xi, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert!(check_solution(&c.sys, &v, xi).unwrap().iter().all(Zero::is_zero));
        prop_assert!(evaluate_specialized(&c.ansatz.resultant, &c.sys, &v).unwrap().is_zero());
        Ok(())
    })
}

/// `P0 = s·(y² − c²)`, `P1 = t·(y^(1) + y)`: SR vanishes, and the reconstructed candidate
/// `ξ = ±c` is no constant solution since `ξ + ξ ≠ 0`.
pub fn vanishing_without_solution() -> Result<(), String> {
    let c0 = computed(EX0);
    run((1i64..=60, nonzero_rational(), nonzero_rational()), |(c, s, t)| {
        let v = vec![vec![-q(c * c) * &s, s.clone()], vec![t.clone(), t]];
        prop_assert!(evaluate_specialized(&c0.ansatz.resultant, &c0.sys, &v).unwrap().is_zero());
        let xi = reconstruct_solution(&c0.ansatz, &c0.sys, &v).unwrap().unwrap();
        prop_assert_eq!(&xi[0] * &xi[0], q(c * c));
        prop_assert!(check_solution(&c0.sys, &v, &xi).unwrap().iter().any(|r| !r.is_zero()));
        Ok(())
    })
}

/// The properties required of the randomized suite, by name.
pub fn required() -> Vec<(&'static str, fn() -> Result<(), String>)> {
    vec![
        ("ring laws", ring_laws),
        ("transform homomorphism", transform_homomorphism),
        ("rank over Q[x] vs specialization", rank_over_qx),
        ("Jacobi assignment vs brute force", jacobi_numbers),
        ("nullspace residuals", nullspace_residuals),
        ("certificate vanishing and homogeneity", certificates_verify),
        ("planted solutions", planted_solutions),
        ("vanishing without a solution", vanishing_without_solution),
    ]
}
