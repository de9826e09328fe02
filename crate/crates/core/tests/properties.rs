//! Randomized checks of the algebraic building blocks against independent oracles.

mod common;
mod suite;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use sdresultant::algsys::{AlgPoly, AlgPolySystem, Slot};
use sdresultant::diffpoly::{DiffPoly, GenericSystem, LaurentMonomial, ShiftedVar};
use sdresultant::io::{format_poly, format_system, parse_poly, parse_system};
use sdresultant::linalg::{rank_q, SparseMatrixQ};
use sdresultant::reduction::essential::{all_essential_subsets, essential_subset_minimal_ranking, ranking_key};
use sdresultant::reduction::polytope::{mixed_volume, Polytope};
use sdresultant::reduction::smith::{determinant, hermite_basis, identity, lattice_coordinates, mat_mul, smith_normal_form, IntMatrix};
use sdresultant::support::RankMode;
use suite::{config, diffpoly, int_matrix, q};

#[test]
fn ring_laws() {
    suite::ring_laws().unwrap();
}

#[test]
fn transform_is_a_ring_homomorphism() {
    suite::transform_homomorphism().unwrap();
}

#[test]
fn rank_over_qx_matches_specialization() {
    suite::rank_over_qx().unwrap();
}

#[test]
fn jacobi_assignment_matches_brute_force() {
    suite::jacobi_numbers().unwrap();
}

#[test]
fn nullspace_vectors_are_exact() {
    suite::nullspace_residuals().unwrap();
}

fn big(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(a in int_matrix(1..=4, 1..=4, -6, 6)) {
        let a = big(&a);
        let s = smith_normal_form(&a);
        prop_assert_eq!(mat_mul(&mat_mul(&s.u, &a), &s.v), s.d.clone());
        prop_assert_eq!(determinant(&s.u).abs(), BigInt::one());
        prop_assert_eq!(determinant(&s.v).abs(), BigInt::one());
        for (i, row) in s.d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                prop_assert!(i == j || x.is_zero());
            }
        }
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(Signed::is_positive));
        prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        let dense: Vec<Vec<BigRational>> = a.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
        prop_assert_eq!(s.rank, rank_q(&SparseMatrixQ::from_dense(&dense)));
    }

    /// The Hermite basis spans the row lattice: it contains every input row, and both bases
    /// have the same invariant-factor product, hence the same covolume in their common span.
    #[test]
    fn hermite_basis_spans_the_row_lattice(a in int_matrix(1..=4, 1..=4, -6, 6)) {
        let a = big(&a);
        let h = hermite_basis(&a);
        let rank = smith_normal_form(&a).rank;
        prop_assert_eq!(h.len(), rank);
        let mut last_pivot: Option<usize> = None;
        for (i, row) in h.iter().enumerate() {
            let p = row.iter().position(|x| !x.is_zero()).unwrap();
            prop_assert!(last_pivot.is_none_or(|l| p > l));
            last_pivot = Some(p);
            prop_assert!(row[p].is_positive());
            for above in &h[..i] {
                prop_assert!(!above[p].is_negative() && above[p] < row[p]);
            }
        }
        for row in &a {
            prop_assert!(lattice_coordinates(&h, row).is_some());
        }
        let product = |m: &IntMatrix| smith_normal_form(m).invariant_factors().iter().fold(BigInt::one(), |acc, x| acc * x);
        if rank > 0 {
            prop_assert_eq!(product(&a), product(&h));
        }
    }
}

fn lattice_points(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    let count = if dim == 2 { 1..=6 } else { 1..=4 };
    prop::collection::vec(prop::collection::vec(0i64..=3, dim), count)
}

/// Twice the area of the convex hull, by monotone chain and the shoelace formula.
fn doubled_area(points: &[Vec<i64>]) -> i64 {
    let mut p: Vec<(i64, i64)> = points.iter().map(|v| (v[0], v[1])).collect();
    p.sort_unstable();
    p.dedup();
    if p.len() < 3 {
        return 0;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for &x in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], x) <= 0 {
                hull.pop();
            }
            hull.push(x);
        }
        hull.pop();
    }
    let n = hull.len();
    (0..n).map(|i| hull[i].0 * hull[(i + 1) % n].1 - hull[(i + 1) % n].0 * hull[i].1).sum::<i64>().abs()
}

fn sums(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().flat_map(|x| b.iter().map(move |y| x.iter().zip(y).map(|(s, t)| s + t).collect())).collect()
}

fn polytope(points: &[Vec<i64>]) -> Polytope {
    Polytope::from_lattice(points).unwrap()
}

proptest! {
    #![proptest_config(config())]

    /// In the plane `MV(P, Q) = area(P + Q) − area(P) − area(Q)`.
    #[test]
    fn planar_mixed_volume_matches_areas(a in lattice_points(2), b in lattice_points(2)) {
        let (p, r) = (polytope(&a), polytope(&b));
        prop_assert_eq!(p.volume() * q(2), q(doubled_area(&a)));
        let oracle = BigRational::new((doubled_area(&sums(&a, &b)) - doubled_area(&a) - doubled_area(&b)).into(), 2.into());
        let mv = mixed_volume(&[p.clone(), r.clone()]).unwrap();
        prop_assert_eq!(&mv, &oracle);
        prop_assert_eq!(mixed_volume(&[r, p]).unwrap(), mv);
    }

    #[test]
    fn mixed_volume_is_symmetric_and_multilinear(a in lattice_points(3), a2 in lattice_points(3), b in lattice_points(3), c in lattice_points(3)) {
        let (p, p2, r, s) = (polytope(&a), polytope(&a2), polytope(&b), polytope(&c));
        let mv = mixed_volume(&[p.clone(), r.clone(), s.clone()]).unwrap();
        // A transposition and a 3-cycle generate every permutation.
        for perm in [[&r, &p, &s], [&r, &s, &p]] {
            prop_assert_eq!(&mixed_volume(&perm.map(|x| x.clone())).unwrap(), &mv);
        }
        let sum = p.minkowski_sum(&p2).unwrap();
        prop_assert_eq!(&sum, &polytope(&sums(&a, &a2)));
        let lhs = mixed_volume(&[sum, r.clone(), s.clone()]).unwrap();
        prop_assert_eq!(lhs, mv + mixed_volume(&[p2, r, s]).unwrap());
        let three = mixed_volume(&[p.clone(), p.clone(), p.clone()]).unwrap();
        prop_assert_eq!(three, p.volume() * q(6));
    }
}

fn alg_system() -> impl Strategy<Value = AlgPolySystem> {
    (2usize..=3, 2usize..=5).prop_flat_map(|(dim, count)| {
        prop::collection::vec(prop::collection::vec(prop::collection::vec(-1i64..=2, dim), 2..=3), count).prop_map(move |polys| AlgPolySystem {
            vars: (1..=dim).map(|j| format!("x{j}")).collect(),
            polys: polys
                .into_iter()
                .enumerate()
                .map(|(block, terms)| AlgPoly { terms: terms.into_iter().enumerate().map(|(slot, e)| (Slot { block, slot, shift: 0 }, e)).collect() })
                .collect(),
        })
    })
}

proptest! {
    #![proptest_config(config())]

    /// The circuit construction agrees with exhaustive enumeration of essential subsets.
    #[test]
    fn minimal_ranking_subset_matches_exhaustive_search(sys in alg_system()) {
        let all = all_essential_subsets(&sys, RankMode::Exact);
        match essential_subset_minimal_ranking(&sys, RankMode::Exact) {
            Ok(found) => {
                prop_assert_eq!(Some(&found), all.first());
                prop_assert!(all.iter().all(|s| ranking_key(&found) <= ranking_key(s)));
                prop_assert_eq!(sys.generic_rank(&found, RankMode::Exact), found.len() - 1);
            }
            Err(_) => prop_assert!(all.is_empty()),
        }
    }
}

fn main_monomial(n: usize) -> impl Strategy<Value = LaurentMonomial> {
    prop::collection::vec((0..n, 0u32..3, -1i32..=2), 0..3).prop_map(|f| LaurentMonomial::from_pairs(f.into_iter().map(|(v, s, e)| (ShiftedVar::new(v, s), e))))
}

fn generic_system() -> impl Strategy<Value = GenericSystem> {
    (1usize..=2).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(main_monomial(n), 2..=3), n + 1).prop_filter_map("distinct monomials", move |supports| {
            let main: Vec<String> = (1..=n).map(|j| format!("y{j}")).collect();
            GenericSystem::new(&main, supports).ok()
        })
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn systems_and_polynomials_round_trip(sys in generic_system(), p in diffpoly()) {
        prop_assert_eq!(&parse_system(&format_system(&sys)).unwrap(), &sys);
        // Restrict `p` to variables the table knows: main variables only.
        let known = DiffPoly::from_terms(
            p.terms().iter().filter(|(_, m)| m.factors().iter().all(|(sv, _)| sv.var() < sys.n())).cloned(),
        );
        prop_assert_eq!(parse_poly(&format_poly(&known, sys.vars()), sys.vars()).unwrap(), known);
        for poly in sys.polys() {
            prop_assert_eq!(&parse_poly(&format_poly(poly, sys.vars()), sys.vars()).unwrap(), poly);
        }
    }
}

#[test]
fn identity_is_its_own_smith_form() {
    let s = smith_normal_form(&identity(3));
    assert_eq!(s.invariant_factors(), vec![BigInt::one(); 3]);
}
