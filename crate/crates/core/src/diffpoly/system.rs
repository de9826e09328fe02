use num_rational::BigRational;
use num_traits::One;

use super::monomial::LaurentMonomial;
use super::poly::DiffPoly;
use super::vars::{ShiftedVar, VarTable};
use crate::error::{Error, Result};

/// `n+1` generic Laurent difference polynomials `P_i = Σ_k u_ik·M_ik`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericSystem {
    vars: VarTable,
    supports: Vec<Vec<LaurentMonomial>>,
    polys: Vec<DiffPoly>,
}

impl GenericSystem {
    /// `supports[i][k]` is `M_ik`; `supports[i][0]` is the designated denominator monomial.
    pub fn new(main: &[String], supports: Vec<Vec<LaurentMonomial>>) -> Result<Self> {
        if supports.len() != main.len() + 1 {
            return Err(Error::Malformed(format!(
                "{} polynomials given for {} main variables; expected {}",
                supports.len(),
                main.len(),
                main.len() + 1
            )));
        }
        let sizes: Vec<usize> = supports.iter().map(Vec::len).collect();
        let vars = VarTable::new(main, &sizes)?;
        for (i, a) in supports.iter().enumerate() {
            if a.len() < 2 {
                return Err(Error::Malformed(format!("polynomial {i} needs at least two monomials")));
            }
            for (k, m) in a.iter().enumerate() {
                if m.factors().iter().any(|(sv, _)| !vars.is_main(sv.var())) {
                    return Err(Error::CoeffInSupport);
                }
                if a[..k].contains(m) {
                    return Err(Error::Malformed(format!("duplicate monomial in the support of polynomial {i}")));
                }
            }
        }
        let polys = supports
            .iter()
            .enumerate()
            .map(|(i, a)| {
                DiffPoly::from_terms(a.iter().enumerate().map(|(k, m)| {
                    (BigRational::one(), m.mul(&LaurentMonomial::var(ShiftedVar::new(vars.coeff(i, k), 0))))
                }))
            })
            .collect();
        Ok(GenericSystem { vars, supports, polys })
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    /// Number of main variables.
    pub fn n(&self) -> usize {
        self.vars.n()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polys(&self) -> &[DiffPoly] {
        &self.polys
    }

    pub fn poly(&self, i: usize) -> &DiffPoly {
        &self.polys[i]
    }

    pub fn support(&self, i: usize) -> &[LaurentMonomial] {
        &self.supports[i]
    }

    pub fn supports(&self) -> &[Vec<LaurentMonomial>] {
        &self.supports
    }

    pub fn coeff_var(&self, i: usize, k: usize, shift: u32) -> ShiftedVar {
        ShiftedVar::new(self.vars.coeff(i, k), shift)
    }

    /// Norm form of `P_i`.
    pub fn norm(&self, i: usize) -> (LaurentMonomial, DiffPoly) {
        // P_i is nonzero by construction.
        self.polys[i].norm_form(&self.vars).expect("generic polynomial is nonzero")
    }

    /// `M_ik` multiplied by the normalizing monomial of `P_i`.
    pub fn norm_monomials(&self, i: usize) -> Vec<LaurentMonomial> {
        let (shift, _) = self.norm(i);
        self.supports[i].iter().map(|m| m.mul(&shift)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Order;

    fn sv(j: usize, s: u32) -> ShiftedVar {
        ShiftedVar::new(j, s)
    }

    #[test]
    fn builds_example_two() {
        let main = vec!["y1".to_string(), "y2".to_string()];
        let sys = GenericSystem::new(
            &main,
            vec![
                vec![LaurentMonomial::one(), LaurentMonomial::from_pairs([(sv(0, 0), 1), (sv(1, 0), 1)])],
                vec![LaurentMonomial::one(), LaurentMonomial::from_pairs([(sv(0, 1), 1), (sv(1, 1), 1)])],
                vec![LaurentMonomial::one(), LaurentMonomial::var(sv(1, 0))],
            ],
        )
        .unwrap();
        let s = sys.poly(1).order_stats(1);
        assert_eq!((s.ord, s.lord, s.eord), (Order::Fin(1), Order::Fin(1), Order::Fin(0)));
        assert_eq!(sys.poly(2).len(), 2);
    }

    #[test]
    fn rejects_bad_shapes() {
        let main = vec!["y1".to_string()];
        let one = LaurentMonomial::one;
        assert!(GenericSystem::new(&main, vec![vec![one(), LaurentMonomial::var(sv(0, 0))]]).is_err());
        assert!(GenericSystem::new(&main, vec![vec![one(), one()], vec![one(), LaurentMonomial::var(sv(0, 0))]]).is_err());
        assert!(GenericSystem::new(&main, vec![vec![one()], vec![one(), LaurentMonomial::var(sv(0, 0))]]).is_err());
    }
}
