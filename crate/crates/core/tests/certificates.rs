//! Randomized checks of computed certificates: vanishing on the generic zero, homogeneity,
//! planted solutions, order and degree bounds, and agreement between the engines.

mod common;
mod suite;

use std::collections::BTreeMap;

use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use sdresultant::diffpoly::VarKind;
use sdresultant::engine::{degree_cap, planted_specialization, reconstruct_solution};
use sdresultant::io::{emit_certificate, format_poly, parse_poly, CertificateFormat};
use suite::{computed, config, family, q};

#[test]
fn certificates_vanish_on_the_generic_zero() {
    suite::certificates_verify().unwrap();
}

#[test]
fn planted_solutions_are_zeros() {
    suite::planted_solutions().unwrap();
}

#[test]
fn vanishing_without_a_solution() {
    suite::vanishing_without_solution().unwrap();
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn engines_and_modes_agree(text in family()) {
        let c = computed(&text);
        for format in [CertificateFormat::Text, CertificateFormat::Json] {
            prop_assert_eq!(emit_certificate(&c.ansatz, &c.sys, format), emit_certificate(&c.reduced, &c.sys, format));
        }
        prop_assert_eq!(&c.ansatz.resultant, &c.multihomogeneous.resultant);
        prop_assert_eq!(&c.ansatz.orders, &c.multihomogeneous.orders);
    }

    /// Every coefficient of a block that occurs does so up to the same order, and the degree
    /// respects `Π (m_i + 1)^{h_i + 1}`.
    #[test]
    fn orders_are_uniform_and_degree_is_bounded(text in family()) {
        let c = computed(&text);
        let mut top: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for sv in c.ansatz.resultant.shifted_vars() {
            if let VarKind::Coeff { block, slot } = c.sys.vars().kind(sv.var()) {
                let e = top.entry((block, slot)).or_insert(0);
                *e = (*e).max(sv.shift);
            }
        }
        for (&(block, _), &h) in &top {
            prop_assert_eq!(c.ansatz.orders[block].finite(), Some(h as i64));
        }
        prop_assert!(c.ansatz.degree as u128 <= degree_cap(&c.sys, &c.ansatz.orders));
        let parsed = parse_poly(&format_poly(&c.ansatz.resultant, c.sys.vars()), c.sys.vars()).unwrap();
        prop_assert_eq!(&parsed, &c.ansatz.resultant);
    }

    /// The degree of the reduced resultant in each essential polynomial's coefficients is
    /// the mixed volume of the other Newton polytopes.
    #[test]
    fn mixed_volumes_give_the_degrees(text in family()) {
        let c = computed(&text);
        if let Some(mv) = &c.trace.mixed_volumes {
            let degrees: Vec<u64> = c.trace.poly_degrees.iter().map(|&d| d as u64).collect();
            prop_assert_eq!(mv, &degrees);
        }
        prop_assert_eq!(c.trace.essential.len(), c.trace.poly_degrees.len());
    }
}

#[test]
fn worked_reconstruction_formula() {
    let c = computed(WORKED);
    let xi = vec![BigRational::new(7.into(), 3.into()), q(-2)];
    let v = planted_specialization(&c.sys, &xi, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
    let got = reconstruct_solution(&c.ansatz, &c.sys, &v).unwrap().unwrap();
    assert_eq!(got[1], -&v[2][0] / &v[2][1]);
    assert_eq!(got[0], &v[0][0] * &v[2][1] / (&v[0][1] * &v[2][0]));
    assert_eq!(got, xi);
}
