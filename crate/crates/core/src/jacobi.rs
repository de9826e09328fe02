//! Order matrices, Jacobi numbers and the order bounds that limit the resultant search.

use crate::diffpoly::GenericSystem;
use crate::error::{Error, Result};
use crate::order::Order;
use crate::support::{super_essential_subset, RankMode};

/// `(n+1) × n` matrix of `s_ij = ord(norm(P_i), y_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderMatrix {
    pub rows: Vec<Vec<Order>>,
}

impl OrderMatrix {
    /// The matrix with row `i` deleted.
    pub fn without_row(&self, i: usize) -> Vec<Vec<Order>> {
        self.rows.iter().enumerate().filter(|&(r, _)| r != i).map(|(_, row)| row.clone()).collect()
    }

    /// Rows restricted to `subset`, in order.
    pub fn restrict(&self, subset: &[usize]) -> OrderMatrix {
        OrderMatrix { rows: subset.iter().map(|&i| self.rows[i].clone()).collect() }
    }
}

pub fn order_matrix(sys: &GenericSystem) -> OrderMatrix {
    let rows = (0..sys.len())
        .map(|i| {
            let (_, norm) = sys.norm(i);
            (0..sys.n()).map(|j| norm.order_stats(j).ord).collect()
        })
        .collect();
    OrderMatrix { rows }
}

fn transpose(a: &[Vec<Order>]) -> Vec<Vec<Order>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

/// Maximal diagonal sum over all `k × k` submatrices, `k = min(rows, cols)`.
pub fn jacobi_number(a: &[Vec<Order>]) -> Order {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if rows.min(cols) <= 8 && rows.max(cols) <= 10 {
        jacobi_brute_force(a)
    } else {
        jacobi_assignment(a)
    }
}

/// Exhaustive search over injective row-to-column maps (of the shorter side).
pub fn jacobi_brute_force(a: &[Vec<Order>]) -> Order {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Order::Fin(0);
    }
    if rows > cols {
        return jacobi_brute_force(&transpose(a));
    }
    fn rec(a: &[Vec<Order>], i: usize, used: &mut [bool], acc: i64, best: &mut Order) {
        if i == a.len() {
            *best = (*best).max(Order::Fin(acc));
            return;
        }
        for j in 0..used.len() {
            if used[j] {
                continue;
            }
            if let Order::Fin(v) = a[i][j] {
                used[j] = true;
                rec(a, i + 1, used, acc + v, best);
                used[j] = false;
            }
        }
    }
    let mut best = Order::NegInf;
    rec(a, 0, &mut vec![false; cols], 0, &mut best);
    best
}

/// Maximum-weight assignment (Hungarian method with potentials); −∞ entries are forbidden
/// edges and the result is −∞ when no full matching avoids them.
pub fn jacobi_assignment(a: &[Vec<Order>]) -> Order {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Order::Fin(0);
    }
    if rows > cols {
        return jacobi_assignment(&transpose(a));
    }
    if max_matching(a) < rows {
        return Order::NegInf;
    }
    let finite: Vec<i64> = a.iter().flatten().filter_map(|o| o.finite()).collect();
    let hi = *finite.iter().max().unwrap() as i128;
    let lo = *finite.iter().min().unwrap() as i128;
    // Any assignment using a forbidden edge costs more than every admissible one.
    let forbidden = (hi - lo + 1) * (rows as i128 + 1) + 1;
    let cost = |i: usize, j: usize| -> i128 {
        match a[i][j] {
            Order::Fin(v) => hi - v as i128,
            Order::NegInf => forbidden,
        }
    };
    // 1-indexed Hungarian algorithm for rows ≤ cols.
    let inf = i128::MAX / 4;
    let mut u = vec![0i128; rows + 1];
    let mut v = vec![0i128; cols + 1];
    let mut p = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    for i in 1..=rows {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=cols {
                if !used[j] {
                    let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut total = 0i64;
    for j in 1..=cols {
        if p[j] != 0 {
            match a[p[j] - 1][j - 1] {
                Order::Fin(x) => total += x,
                Order::NegInf => return Order::NegInf,
            }
        }
    }
    Order::Fin(total)
}

/// Size of a maximum matching on the finite entries (Kuhn's augmenting paths).
fn max_matching(a: &[Vec<Order>]) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut owner: Vec<Option<usize>> = vec![None; cols];
    fn augment(a: &[Vec<Order>], i: usize, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for j in 0..seen.len() {
            if a[i][j].is_neg_inf() || seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(a, k, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    (0..a.len()).filter(|&i| augment(a, i, &mut vec![false; cols], &mut owner)).count()
}

/// All order-bound families and the final search bound per polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub order_matrix: OrderMatrix,
    /// `J_i = Jac(A_î)`.
    pub jacobi: Vec<Order>,
    /// `o̲_j`: lowest shift of `y_j` over all norm forms.
    pub lowest_orders: Vec<Order>,
    /// `γ̲ = Σ o̲_j`.
    pub gamma: i64,
    /// `J_i − γ̲`.
    pub modified: Vec<Order>,
    pub super_essential: Vec<usize>,
    /// `Jac((A_T)_î)` for `i ∈ T`, −∞ otherwise.
    pub super_essential_jacobi: Vec<Order>,
    /// `s̲_i` for `i ∈ T`, −∞ otherwise.
    pub lowest_shifts: Vec<Order>,
    /// `s̲ = Σ_{i∈T} s̲_i`.
    pub lowest_shift_sum: i64,
    /// `m = max_{i∈T} s̲_i`.
    pub lowest_shift_max: i64,
    /// `J̃_i = J_i − s̲ + s̲_i`, a bound on the effective order.
    pub effective: Vec<Order>,
    /// `J̲_i = J_i − s̲ + m`.
    pub effective_order_bound: Vec<Order>,
    pub final_bound: Vec<Order>,
    /// Set where the minimum of the bounds was negative and got clamped to 0.
    pub clamped: Vec<bool>,
}

pub fn search_bounds(sys: &GenericSystem, mode: RankMode) -> Result<BoundReport> {
    let t = super_essential_subset(sys, mode)?;
    Ok(bounds_with_subset(sys, t))
}

/// Bound report for a known super-essential subset `t`.
pub fn bounds_with_subset(sys: &GenericSystem, t: Vec<usize>) -> BoundReport {
    let a = order_matrix(sys);
    let count = sys.len();
    let norms: Vec<_> = (0..count).map(|i| sys.norm(i).1).collect();
    let jacobi: Vec<Order> = (0..count).map(|i| jacobi_number(&a.without_row(i))).collect();
    let lowest_orders: Vec<Order> =
        (0..sys.n()).map(|j| norms.iter().map(|p| p.order_stats(j).lord).filter(|o| !o.is_neg_inf()).min().unwrap_or(Order::NegInf)).collect();
    let gamma: i64 = lowest_orders.iter().filter_map(|o| o.finite()).sum();
    let modified: Vec<Order> = jacobi.iter().map(|j| j.minus(gamma)).collect();
    let at = a.restrict(&t);
    let mut super_essential_jacobi = vec![Order::NegInf; count];
    let mut lowest_shifts = vec![Order::NegInf; count];
    for (pos, &i) in t.iter().enumerate() {
        super_essential_jacobi[i] = jacobi_number(&at.without_row(pos));
        lowest_shifts[i] =
            (0..sys.n()).map(|j| norms[i].order_stats(j).lord).filter(|o| !o.is_neg_inf()).min().unwrap_or(Order::NegInf);
    }
    let lowest_shift_sum: i64 = t.iter().filter_map(|&i| lowest_shifts[i].finite()).sum();
    let lowest_shift_max: i64 = t.iter().filter_map(|&i| lowest_shifts[i].finite()).max().unwrap_or(0);
    let mut effective = vec![Order::NegInf; count];
    let mut effective_order_bound = vec![Order::NegInf; count];
    let mut final_bound = vec![Order::NegInf; count];
    let mut clamped = vec![false; count];
    for &i in &t {
        let Some(ji) = jacobi[i].finite() else { continue };
        let si = lowest_shifts[i].finite().unwrap_or(0);
        effective[i] = Order::Fin(ji - lowest_shift_sum + si);
        effective_order_bound[i] = Order::Fin(ji - lowest_shift_sum + lowest_shift_max);
        let candidates = [jacobi[i], modified[i], super_essential_jacobi[i], effective_order_bound[i]];
        let min = candidates.iter().filter_map(|o| o.finite()).min().unwrap();
        if min < 0 {
            clamped[i] = true;
        }
        final_bound[i] = Order::Fin(min.max(0));
    }
    BoundReport {
        order_matrix: a,
        jacobi,
        lowest_orders,
        gamma,
        modified,
        super_essential: t,
        super_essential_jacobi,
        lowest_shifts,
        lowest_shift_sum,
        lowest_shift_max,
        effective,
        effective_order_bound,
        final_bound,
        clamped,
    }
}

/// `Σ k_i ≥ Σ_j max_i (s_ij + k_i)`, skipping −∞ entries; an empty column contributes 0.
pub fn constraint_holds(sys: &GenericSystem, k: &[i64]) -> Result<bool> {
    if k.len() != sys.len() {
        return Err(Error::DimensionMismatch(format!("expected {} entries, got {}", sys.len(), k.len())));
    }
    let a = order_matrix(sys);
    let lhs: i64 = k.iter().sum();
    let rhs: i64 = (0..sys.n())
        .map(|j| (0..sys.len()).filter_map(|i| a.rows[i][j].finite().map(|s| s + k[i])).max().unwrap_or(0))
        .sum();
    Ok(lhs >= rhs)
}
