use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::LaurentMonomial;
use super::vars::{ShiftedVar, VarTable};
use crate::error::{Error, Result};
use crate::order::Order;

/// A Laurent difference polynomial over Q: terms sorted descending in the graded order,
/// monomials distinct, coefficients nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DiffPoly {
    terms: Vec<(BigRational, LaurentMonomial)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderStats {
    pub ord: Order,
    pub lord: Order,
    pub eord: Order,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, LaurentMonomial::one())
    }

    pub fn monomial(c: BigRational, m: LaurentMonomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffPoly { terms: vec![(c, m)] }
    }

    pub fn var(sv: ShiftedVar) -> Self {
        Self::monomial(BigRational::one(), LaurentMonomial::var(sv))
    }

    /// Collects terms, merging equal monomials and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (BigRational, LaurentMonomial)>) -> Self {
        let mut acc: BTreeMap<LaurentMonomial, BigRational> = BTreeMap::new();
        for (c, m) in terms {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: BTreeMap<LaurentMonomial, BigRational>) -> Self {
        DiffPoly { terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (c, m)).collect() }
    }

    pub fn terms(&self) -> &[(BigRational, LaurentMonomial)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(BigRational, LaurentMonomial)> {
        self.terms.first()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(a, m)| (a * c, m.clone())).collect() }
    }

    pub fn mul_monomial(&self, m: &LaurentMonomial) -> Self {
        // Multiplying by a monomial preserves the graded order.
        DiffPoly { terms: self.terms.iter().map(|(a, t)| (a.clone(), t.mul(m))).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Applies σ^k: every shifted variable `(v, s)` becomes `(v, s + k)`.
    pub fn transform(&self, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        // Shifting all keys uniformly can reorder monomials, so re-sort.
        Self::from_terms(self.terms.iter().map(|(c, m)| (c.clone(), m.transform(k))))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.iter().map(|(_, m)| m.degree()).max()
    }

    /// Maximum exponent of a single shifted variable.
    pub fn degree_in(&self, sv: ShiftedVar) -> i32 {
        self.terms.iter().map(|(_, m)| m.exponent(sv)).max().unwrap_or(0)
    }

    /// Degree in the set of variables accepted by `group`.
    pub fn degree_in_group(&self, group: impl Fn(ShiftedVar) -> bool) -> i64 {
        self.terms
            .iter()
            .map(|(_, m)| m.factors().iter().filter(|(sv, _)| group(*sv)).map(|&(_, e)| e as i64).sum::<i64>())
            .max()
            .unwrap_or(0)
    }

    /// All shifted variables that occur.
    pub fn shifted_vars(&self) -> BTreeSet<ShiftedVar> {
        self.terms.iter().flat_map(|(_, m)| m.factors().iter().map(|&(sv, _)| sv)).collect()
    }

    /// ord, lord and Eord of `var`.
    pub fn order_stats(&self, var: usize) -> OrderStats {
        let shifts: Vec<u32> =
            self.shifted_vars().into_iter().filter(|sv| sv.var() == var).map(|sv| sv.shift).collect();
        match (shifts.iter().min(), shifts.iter().max()) {
            (Some(&lo), Some(&hi)) => OrderStats {
                ord: Order::Fin(hi as i64),
                lord: Order::Fin(lo as i64),
                eord: Order::Fin((hi - lo) as i64),
            },
            _ => OrderStats { ord: Order::NegInf, lord: Order::NegInf, eord: Order::NegInf },
        }
    }

    pub fn evaluate(&self, assignment: &BTreeMap<ShiftedVar, BigRational>) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (c, m) in &self.terms {
            let mut v = c.clone();
            for &(sv, e) in m.factors() {
                let base = assignment.get(&sv).ok_or_else(|| Error::MissingAssignment(format!("{sv:?}")))?;
                v *= rational_pow(base, e)?;
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitutes values for some shifted variables, leaving the rest symbolic.
    pub fn substitute(&self, assignment: &BTreeMap<ShiftedVar, BigRational>) -> Result<DiffPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            let mut v = c.clone();
            let mut rest = Vec::new();
            for &(sv, e) in m.factors() {
                match assignment.get(&sv) {
                    Some(base) => v *= rational_pow(base, e)?,
                    None => rest.push((sv, e)),
                }
            }
            terms.push((v, LaurentMonomial::from_pairs(rest)));
        }
        Ok(Self::from_terms(terms))
    }

    /// Partial derivative with respect to one shifted variable.
    pub fn derivative(&self, sv: ShiftedVar) -> DiffPoly {
        Self::from_terms(self.terms.iter().filter_map(|(c, m)| {
            let e = m.exponent(sv);
            if e == 0 {
                return None;
            }
            let reduced = m.mul(&LaurentMonomial::var_pow(sv, -1));
            Some((c * BigRational::from_integer(BigInt::from(e)), reduced))
        }))
    }

    /// Norm form `(M, N)` with `N = M·F` free of negative exponents and of monomial content
    /// in the main variables.
    pub fn norm_form(&self, vars: &VarTable) -> Result<(LaurentMonomial, DiffPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroNormForm);
        }
        let mut min: BTreeMap<ShiftedVar, i32> = BTreeMap::new();
        for sv in self.shifted_vars() {
            if vars.is_main(sv.var()) {
                min.insert(sv, i32::MAX);
            }
        }
        for (_, m) in &self.terms {
            for (sv, lo) in min.iter_mut() {
                *lo = (*lo).min(m.exponent(*sv));
            }
        }
        let shift = LaurentMonomial::from_pairs(min.into_iter().map(|(sv, lo)| (sv, -lo)));
        Ok((shift.clone(), self.mul_monomial(&shift)))
    }

    /// Per-layer degrees `(m_0, m_1, …)` in `{v^(r) : v ∈ group}` when every term agrees on
    /// every layer, `None` otherwise.
    pub fn transformal_layers(&self, group: &BTreeSet<usize>) -> Option<Vec<i64>> {
        let top = self
            .shifted_vars()
            .into_iter()
            .filter(|sv| group.contains(&sv.var()))
            .map(|sv| sv.shift as usize + 1)
            .max()
            .unwrap_or(0);
        let mut layers: Option<Vec<i64>> = None;
        for (_, m) in &self.terms {
            let mut cur = vec![0i64; top];
            for &(sv, e) in m.factors() {
                if group.contains(&sv.var()) {
                    cur[sv.shift as usize] += e as i64;
                }
            }
            match &layers {
                None => layers = Some(cur),
                Some(l) if *l != cur => return None,
                Some(_) => {}
            }
        }
        Some(layers.unwrap_or_default())
    }

    pub fn map_coefficients(&self, f: impl Fn(&BigRational) -> BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(c, m)| (f(c), m.clone())))
    }

    /// Rescales to coprime integer coefficients with a positive leading coefficient; returns
    /// the polynomial and the factor applied.
    pub fn normalize_integer(&self) -> (DiffPoly, BigRational) {
        if self.is_zero() {
            return (Self::zero(), BigRational::one());
        }
        let mut den_lcm = BigInt::one();
        for (c, _) in &self.terms {
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for (c, _) in &self.terms {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_integer::Integer::gcd(&num_gcd, &scaled);
        }
        let mut factor = BigRational::new(den_lcm, num_gcd);
        if self.terms[0].0.is_negative() {
            factor = -factor;
        }
        (self.scale(&factor), factor)
    }

    /// `true` when every variable belongs to the coefficient sort.
    pub fn is_coefficient_only(&self, vars: &VarTable) -> bool {
        self.shifted_vars().iter().all(|sv| !vars.is_main(sv.var()))
    }
}

pub fn rational_pow(base: &BigRational, e: i32) -> Result<BigRational> {
    if e < 0 {
        if base.is_zero() {
            return Err(Error::ZeroToNegativePower);
        }
        Ok(num_traits::pow(base.recip(), e.unsigned_abs() as usize))
    } else {
        Ok(num_traits::pow(base.clone(), e as usize))
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        DiffPoly::from_terms(self.terms.iter().chain(rhs.terms.iter()).cloned())
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        DiffPoly::from_terms(self.terms.iter().cloned().chain(rhs.terms.iter().map(|(c, m)| (-c, m.clone()))))
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly { terms: self.terms.iter().map(|(c, m)| (-c, m.clone())).collect() }
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut acc: BTreeMap<LaurentMonomial, BigRational> = BTreeMap::new();
        for (a, m) in &self.terms {
            for (b, t) in &rhs.terms {
                *acc.entry(m.mul(t)).or_insert_with(BigRational::zero) += a * b;
            }
        }
        DiffPoly::from_map(acc)
    }
}

impl Add for DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: DiffPoly) -> DiffPoly {
        &self + &rhs
    }
}

impl Sub for DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: DiffPoly) -> DiffPoly {
        &self - &rhs
    }
}

impl Mul for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        &self * &rhs
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}
