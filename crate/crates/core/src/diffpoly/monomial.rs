use std::cmp::Ordering;

use super::vars::ShiftedVar;

/// A Laurent monomial stored as `(ShiftedVar, exponent)` pairs, sorted by key, with no
/// zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentMonomial {
    factors: Vec<(ShiftedVar, i32)>,
}

impl LaurentMonomial {
    pub fn one() -> Self {
        LaurentMonomial { factors: Vec::new() }
    }

    pub fn var(sv: ShiftedVar) -> Self {
        LaurentMonomial { factors: vec![(sv, 1)] }
    }

    pub fn var_pow(sv: ShiftedVar, e: i32) -> Self {
        Self::from_pairs([(sv, e)])
    }

    /// Combines repeated keys and drops zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (ShiftedVar, i32)>) -> Self {
        let mut factors: Vec<(ShiftedVar, i32)> = pairs.into_iter().collect();
        factors.sort_by_key(|&(sv, _)| sv);
        let mut out: Vec<(ShiftedVar, i32)> = Vec::with_capacity(factors.len());
        for (sv, e) in factors {
            match out.last_mut() {
                Some(last) if last.0 == sv => last.1 += e,
                _ => out.push((sv, e)),
            }
        }
        out.retain(|&(_, e)| e != 0);
        LaurentMonomial { factors: out }
    }

    pub fn factors(&self) -> &[(ShiftedVar, i32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, sv: ShiftedVar) -> i32 {
        match self.factors.binary_search_by_key(&sv, |&(k, _)| k) {
            Ok(i) => self.factors[i].1,
            Err(_) => 0,
        }
    }

    /// Total degree (sum of exponents).
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn has_negative(&self) -> bool {
        self.factors.iter().any(|&(_, e)| e < 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        LaurentMonomial { factors: out }
    }

    pub fn inv(&self) -> Self {
        LaurentMonomial { factors: self.factors.iter().map(|&(sv, e)| (sv, -e)).collect() }
    }

    pub fn pow(&self, k: i32) -> Self {
        if k == 0 {
            return Self::one();
        }
        LaurentMonomial { factors: self.factors.iter().map(|&(sv, e)| (sv, e * k)).collect() }
    }

    pub fn transform(&self, k: u32) -> Self {
        LaurentMonomial { factors: self.factors.iter().map(|&(sv, e)| (sv.shifted(k), e)).collect() }
    }

    /// Keeps only the factors whose key satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(ShiftedVar) -> bool) -> Self {
        LaurentMonomial { factors: self.factors.iter().copied().filter(|&(sv, _)| keep(sv)).collect() }
    }

    /// `true` when `other / self` has no negative exponents.
    pub fn divides(&self, other: &Self) -> bool {
        other.mul(&self.inv()).factors.iter().all(|&(_, e)| e > 0)
    }

    /// Lexicographic comparison on canonical keys; the smaller key is the more significant.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        loop {
            let (key, ea, eb) = match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(x), None) => (x.0, x.1, 0),
                (None, Some(y)) => (y.0, 0, y.1),
                (Some(x), Some(y)) => {
                    if x.0 < y.0 {
                        (x.0, x.1, 0)
                    } else if y.0 < x.0 {
                        (y.0, 0, y.1)
                    } else {
                        (x.0, x.1, y.1)
                    }
                }
            };
            if ea != eb {
                return ea.cmp(&eb);
            }
            if a.get(i).map(|x| x.0) == Some(key) {
                i += 1;
            }
            if b.get(j).map(|y| y.0) == Some(key) {
                j += 1;
            }
        }
    }
}

/// Graded order: total degree first, then [`LaurentMonomial::lex_cmp`].
impl Ord for LaurentMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for LaurentMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
