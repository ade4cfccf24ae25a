//! Exhaustive enumeration of submodules, boundary modules, homothety
//! classes and Grassmannians of `V_r`.
//!
//! Submodules are produced by building Howell forms directly, one pivot row
//! at a time from the bottom up; every Howell form is reached exactly once
//! because the rows below any pivot row form a Howell form themselves.

use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::counting;
use crate::error::{Error, Result};
use crate::howell::{self, Row};
use crate::ring::{ChainRing, Elem};
use crate::submodule::{HomothetyClass, Submodule};

/// Calls `f` on every tuple of the cartesian product of `choices`.
fn for_each_product(choices: &[Vec<Elem>], f: &mut impl FnMut(&[Elem])) {
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; choices.len()];
    let mut current: Vec<Elem> = choices.iter().map(|c| c[0]).collect();
    loop {
        f(&current);
        let mut k = choices.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                current[k] = choices[k][idx[k]];
                break;
            }
            idx[k] = 0;
            current[k] = choices[k][0];
        }
    }
}

/// Upper bound on `|L(V_r)|`: at most `r + 1` modules per homothety class.
pub fn predicted_submodule_count(ring: &ChainRing, d: usize) -> u64 {
    counting::ball_polynomial(d as u32, ring.r(), u64::MAX)
        .map(|p| p.eval(ring.q() as i64) * (ring.r() as i64 + 1))
        .ok()
        .and_then(|n| n.to_u64())
        .unwrap_or(u64::MAX)
}

fn check_budget(what: &str, predicted: u64, budget: u64) -> Result<()> {
    if predicted > budget {
        return Err(Error::BudgetExceeded { what: what.into(), predicted, budget });
    }
    Ok(())
}

fn check_rank(d: usize) -> Result<()> {
    if d < 1 {
        return Err(Error::InvalidParameter("ambient rank d must be positive".into()));
    }
    Ok(())
}

/// Every submodule of `R^d`, each once, sorted canonically.
pub fn enumerate_submodules(ring: &Arc<ChainRing>, d: usize, budget: u64) -> Result<Vec<Submodule>> {
    check_rank(d)?;
    check_budget("submodules", predicted_submodule_count(ring, d), budget)?;
    let mut out = Vec::new();
    let mut rows: Vec<Row> = Vec::new();
    extend(ring, d, &mut rows, d, &mut out);
    out.sort();
    Ok(out)
}

fn extend(ring: &Arc<ChainRing>, d: usize, rows: &mut Vec<Row>, max_col: usize, out: &mut Vec<Submodule>) {
    out.push(Submodule::from_canonical_rows(ring, d, rows.clone()));
    let r = ring.r();
    let pivots = howell::pivots(ring, rows);
    let all: Vec<Elem> = (0..ring.order()).map(|c| ring.elem(c)).collect();
    for col in 0..max_col {
        for a in 0..r {
            // entries above a pivot pi^b are reduced below pi^b
            let choices: Vec<Vec<Elem>> = (col + 1..d)
                .map(|j| match pivots.iter().find(|&&(pc, _)| pc == j) {
                    Some(&(_, b)) => (0..ring.q().pow(b)).map(|c| ring.elem(c)).collect(),
                    None => all.clone(),
                })
                .collect();
            for_each_product(&choices, &mut |tail| {
                let mut row = vec![ring.zero(); d];
                row[col] = ring.pi_pow(a);
                row[col + 1..].copy_from_slice(tail);
                if a > 0 {
                    let torsion = howell::scale_pi(ring, &row, r - a);
                    if !howell::reduces_to_zero(ring, rows, &pivots, &torsion) {
                        return;
                    }
                }
                rows.insert(0, row);
                extend(ring, d, rows, col, out);
                rows.remove(0);
            });
        }
    }
}

/// Submodules with `pi^(r-1) V_r ⊄ U ⊄ pi V_r`.
pub fn enumerate_boundary(ring: &Arc<ChainRing>, d: usize, budget: u64) -> Result<Vec<Submodule>> {
    let sphere = counting::sphere_polynomial(d as u32, ring.r())
        .ok()
        .and_then(|p| p.eval(ring.q() as i64).to_u64())
        .unwrap_or(u64::MAX);
    check_budget("boundary modules", sphere, budget)?;
    Ok(enumerate_submodules(ring, d, budget)?.into_iter().filter(Submodule::is_boundary).collect())
}

/// All homothety classes (the ball of radius `r` around `[V_r]`), sorted.
pub fn enumerate_classes(ring: &Arc<ChainRing>, d: usize, budget: u64) -> Result<Vec<HomothetyClass>> {
    Ok(enumerate_submodules(ring, d, budget)?
        .into_iter()
        .filter(|u| !u.is_zero() && u.tilde() == *u)
        .map(HomothetyClass::from_saturated)
        .collect())
}

/// Bases of the free rank-`n` submodules, one per module: reduced echelon
/// form with unit pivots equal to `1`, zeros in the other pivot columns and
/// non-units to the left of each pivot.
pub fn grassmannian_bases(ring: &Arc<ChainRing>, d: usize, n: usize, budget: u64) -> Result<Vec<Vec<Row>>> {
    if n < 1 || n >= d {
        return Err(Error::InvalidParameter(format!("Grassmannian rank n = {n} outside 1..{d}")));
    }
    let predicted = counting::grassmannian_count(d as u32, n as u32, ring.q(), ring.r())?.to_u64().unwrap_or(u64::MAX);
    check_budget("Grassmannian", predicted, budget)?;
    let all: Vec<Elem> = (0..ring.order()).map(|c| ring.elem(c)).collect();
    let non_units: Vec<Elem> = all.iter().copied().filter(|&x| !ring.is_unit(x)).collect();
    let mut out = Vec::new();
    for pivot_cols in combinations(d, n) {
        let mut slots = Vec::new();
        let mut choices = Vec::new();
        for (i, &c) in pivot_cols.iter().enumerate() {
            for j in (0..d).filter(|j| !pivot_cols.contains(j)) {
                slots.push((i, j));
                choices.push(if j < c { non_units.clone() } else { all.clone() });
            }
        }
        for_each_product(&choices, &mut |values| {
            let mut basis = vec![vec![ring.zero(); d]; n];
            for (i, &c) in pivot_cols.iter().enumerate() {
                basis[i][c] = ring.one();
            }
            for (&(i, j), &v) in slots.iter().zip(values) {
                basis[i][j] = v;
            }
            out.push(basis);
        });
    }
    debug_assert_eq!(out.len() as u64, predicted);
    Ok(out)
}

/// The free rank-`n` submodules, sorted canonically.
pub fn enumerate_grassmannian(ring: &Arc<ChainRing>, d: usize, n: usize, budget: u64) -> Result<Vec<Submodule>> {
    let mut out: Vec<Submodule> =
        grassmannian_bases(ring, d, n, budget)?.into_iter().map(|b| Submodule::span(ring, d, b)).collect();
    out.sort();
    Ok(out)
}

/// `n`-subsets of `0..d` in lexicographic order.
pub fn combinations(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(i + 1, d, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, n, &mut Vec::new(), &mut out);
    out
}
