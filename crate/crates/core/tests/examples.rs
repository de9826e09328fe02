mod common;

use common::*;
use sdresultant::engine::{block_effective_orders, search_resultant, SearchOptions};
use sdresultant::io::{emit_certificate, format_poly, CertificateFormat};
use sdresultant::jacobi::search_bounds;
use sdresultant::order::Order::{self, Fin, NegInf};
use sdresultant::reduction::dense::{dense_report, dense_resultant};
use sdresultant::reduction::resultant_via_reduction;
use sdresultant::support::{all_super_essential_subsets, super_essential_subset, RankMode};

fn exact() -> SearchOptions {
    SearchOptions { rank_mode: RankMode::Exact, ..SearchOptions::default() }
}

fn both(text: &str) -> (String, Vec<Order>, u32) {
    let s = sys(text);
    let a = search_resultant(&s, &exact()).unwrap();
    let (r, _) = resultant_via_reduction(&s, &exact()).unwrap();
    for format in [CertificateFormat::Text, CertificateFormat::Json] {
        assert_eq!(emit_certificate(&a, &s, format), emit_certificate(&r, &s, format));
    }
    (format_poly(&a.resultant, s.vars()), a.orders, a.degree)
}

#[test]
fn first_example() {
    assert_eq!(both(EX0), (EX0_SR.to_string(), vec![Fin(1), Fin(0)], 4));
}

#[test]
fn determinant_example() {
    let (sr, orders, degree) = both(EX1);
    assert_eq!(sr, "u00*u11*u22 - u00*u12*u21 - u01*u10*u22 + u01*u12*u20 + u02*u10*u21 - u02*u11*u20");
    assert_eq!(orders, vec![Fin(0); 3]);
    assert_eq!(degree, 3);
}

#[test]
fn absent_block() {
    assert_eq!(both(EX2), (EX2_SR.to_string(), vec![Fin(1), Fin(0), NegInf], 2));
    assert_eq!(super_essential_subset(&sys(EX2), RankMode::Exact).unwrap(), vec![0, 1]);
}

#[test]
fn absent_block_with_transforms() {
    assert_eq!(both(EX2N), (EX2N_SR.to_string(), vec![Fin(0), Fin(1), NegInf], 3));
    let b = search_bounds(&sys(EX2N), RankMode::Exact).unwrap();
    assert_eq!(b.jacobi, vec![Fin(1), Fin(2), NegInf]);
    assert_eq!(b.super_essential, vec![0, 1]);
    assert_eq!(&b.super_essential_jacobi[..2], &[Fin(0), Fin(1)]);
}

#[test]
fn linear_example_orders() {
    let s = sys(LINEAR);
    let b = search_bounds(&s, RankMode::Exact).unwrap();
    assert_eq!(b.jacobi, vec![Fin(2), Fin(1), Fin(1)]);
    assert_eq!(b.effective, vec![Fin(0); 3]);
    assert_eq!(b.effective_order_bound, vec![Fin(1), Fin(0), Fin(0)]);
    let (_, orders, _) = both(LINEAR);
    assert_eq!(orders, vec![Fin(1), Fin(0), Fin(0)]);
    let cert = search_resultant(&s, &exact()).unwrap();
    assert_eq!(block_effective_orders(&s, &cert.resultant), vec![Fin(0); 3]);
}

#[test]
fn worked_system() {
    assert_eq!(both(WORKED), ("u00*u11*u20@1*u21 - u01*u10*u20*u21@1".to_string(), vec![Fin(0), Fin(0), Fin(1)], 4));
}

#[test]
fn pipeline_stages() {
    let s = sys(PIPELINE);
    let (cert, trace) = resultant_via_reduction(&s, &exact()).unwrap();
    assert_eq!(trace.super_essential, vec![0, 1, 2]);
    assert_eq!(trace.prolongation, vec![Fin(3), Fin(2), Fin(3), NegInf]);
    assert_eq!(trace.prolonged.len(), 11);
    assert_eq!(trace.essential, vec![(0, 1), (1, 0), (2, 1)]);
    assert_eq!(trace.kept, vec!["y1@1", "y1@2"]);
    assert_eq!(trace.set_to_one, vec!["y2@1", "y2@2", "y3@1"]);
    assert_eq!(trace.substitutions, vec!["z1 = y1@1^2", "z2 = y1@2^2"]);
    assert_eq!(trace.mixed_volumes, Some(vec![2, 1, 2]));
    assert_eq!(trace.poly_degrees, vec![2, 1, 2]);
    assert_eq!(cert.resultant, pipeline_resultant(&s));
    assert_eq!(cert.orders, vec![Fin(1), Fin(0), Fin(1), NegInf]);
    assert_eq!(all_super_essential_subsets(&s, RankMode::Exact), vec![vec![0, 1, 2]]);
}

#[test]
fn pipeline_engines_agree() {
    let s = sys(PIPELINE);
    let a = search_resultant(&s, &exact()).unwrap();
    assert_eq!(a.resultant, pipeline_resultant(&s));
}

#[test]
fn dense_examples() {
    let (s, cert, report) = dense_resultant(1, &[0, 1], &[1, 1], &SearchOptions::default()).unwrap();
    assert_eq!(format_poly(&cert.resultant, s.vars()), "u00*u01@1*u11 + u00@1*u01*u12 - u01*u01@1*u10");
    assert_eq!(cert.orders, vec![Fin(1), Fin(0)]);
    assert_eq!(report.block_degrees, Some(vec![2, 1]));
    let r = dense_report(1, &[1, 1], &[2, 2]).unwrap();
    assert_eq!((r.degree_cap, r.block_degrees.clone(), r.total_degree, r.block_orders.clone()), (81, Some(vec![16, 16]), Some(32), vec![1, 1]));
}

#[test]
fn dense_two_variables() {
    // n = 2, all orders 0, linear: a 3×3 determinant.
    let (s, cert, report) = dense_resultant(2, &[0, 0, 0], &[1, 1, 1], &SearchOptions::default()).unwrap();
    assert_eq!(cert.degree, 3);
    assert_eq!(report.block_degrees, Some(vec![1, 1, 1]));
    assert_eq!(cert.resultant.len(), 6);
    assert!(cert.verification.unwrap().passed());
    assert_eq!(s.len(), 3);
}
