use num_rational::BigRational;
use num_traits::Zero;

use super::region::{LinearRegion, Relation};
use crate::error::{Error, Result};
use crate::exactalg::linalg;
use crate::exactalg::Rationals;

/// Unique solution of the square-or-tall system rows . x = rhs, if any.
fn solve(rows: &[(&[BigRational], &BigRational)], dim: usize) -> Option<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|(c, r)| c.iter().cloned().chain(std::iter::once((*r).clone())).collect()).collect();
    let piv = linalg::rref(&Rationals, &mut m);
    if piv.len() != dim || piv.contains(&dim) {
        return None;
    }
    Some((0..dim).map(|i| m[i][dim].clone()).collect())
}

fn combinations(n: usize, k: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        combinations(n, k, out, cur, i + 1);
        cur.pop();
    }
}

/// The vertices of a pointed polyhedron (closure taken), by solving every
/// choice of active inequalities together with all equalities.
fn raw_vertices(region: &LinearRegion) -> Vec<Vec<BigRational>> {
    let r = region.closure();
    let dim = r.dim;
    let eqs: Vec<_> = r.constraints.iter().filter(|c| c.rel == Relation::Eq).collect();
    let ineqs: Vec<_> = r.constraints.iter().filter(|c| c.rel != Relation::Eq).collect();
    let eq_rows: Vec<Vec<BigRational>> = eqs.iter().map(|c| c.coeffs.clone()).collect();
    let eq_rank = if eq_rows.is_empty() { 0 } else { linalg::rank(&Rationals, &eq_rows) };
    if eq_rank > dim {
        return Vec::new();
    }
    let need = dim - eq_rank;
    let mut combos = Vec::new();
    combinations(ineqs.len(), need, &mut combos, &mut Vec::new(), 0);
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    for combo in combos {
        let rows: Vec<(&[BigRational], &BigRational)> = eqs
            .iter()
            .map(|c| (c.coeffs.as_slice(), &c.rhs))
            .chain(combo.iter().map(|&i| (ineqs[i].coeffs.as_slice(), &ineqs[i].rhs)))
            .collect();
        if let Some(x) = solve(&rows, dim) {
            if r.constraints.iter().all(|c| c.holds(&x)) && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out.sort();
    out
}

/// Whether the closure is nonempty and bounded is decided through its
/// recession cone: bounded iff no ray d with d_i = +-1 for some i.
pub fn is_bounded(region: &LinearRegion) -> bool {
    let r = region.closure();
    let dim = r.dim;
    let rows: Vec<Vec<BigRational>> = r.constraints.iter().map(|c| c.coeffs.clone()).collect();
    if dim > 0 && (rows.is_empty() || linalg::rank(&Rationals, &rows) < dim) {
        return false;
    }
    let mut rec = LinearRegion::new(dim);
    for c in &r.constraints {
        rec.push(c.coeffs.clone(), c.rel, BigRational::zero()).expect("same dimension");
    }
    for i in 0..dim {
        for s in [1i64, -1] {
            let mut probe = rec.clone();
            let mut unit = vec![BigRational::zero(); dim];
            unit[i] = BigRational::from_integer(s.into());
            probe.push(unit, Relation::Eq, BigRational::from_integer(1.into())).expect("same dimension");
            if !raw_vertices(&probe).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Exact vertex list of a bounded region. Strict inequalities are closed.
pub fn vertices(region: &LinearRegion) -> Result<Vec<Vec<BigRational>>> {
    if !is_bounded(region) {
        return Err(Error::Unbounded);
    }
    Ok(raw_vertices(region))
}
