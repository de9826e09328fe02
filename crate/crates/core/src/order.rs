//! Orders in N ∪ {−∞}.

use std::fmt;
use std::ops::Add;

/// An order value; `NegInf` marks an absent variable and sorts below every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    NegInf,
    Fin(i64),
}

impl Order {
    pub fn finite(self) -> Option<i64> {
        match self {
            Order::NegInf => None,
            Order::Fin(v) => Some(v),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        self == Order::NegInf
    }

    /// `self − c`, saturating at −∞.
    pub fn minus(self, c: i64) -> Order {
        match self {
            Order::NegInf => Order::NegInf,
            Order::Fin(v) => Order::Fin(v - c),
        }
    }
}

impl Add for Order {
    type Output = Order;
    fn add(self, rhs: Order) -> Order {
        match (self, rhs) {
            (Order::Fin(a), Order::Fin(b)) => Order::Fin(a + b),
            _ => Order::NegInf,
        }
    }
}

impl From<i64> for Order {
    fn from(v: i64) -> Self {
        Order::Fin(v)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::NegInf => write!(f, "-inf"),
            Order::Fin(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neg_inf_absorbs_and_sorts_first() {
        assert_eq!(Order::NegInf + Order::Fin(3), Order::NegInf);
        assert_eq!(Order::Fin(2) + Order::Fin(3), Order::Fin(5));
        assert!(Order::NegInf < Order::Fin(-100));
        assert_eq!(Order::NegInf.minus(4), Order::NegInf);
    }
}
