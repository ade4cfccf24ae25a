//! Row reduction over a chain ring: Howell normal form, membership by
//! reduction, and a two-sided (Smith-like) diagonalization.

use crate::ring::{ChainRing, Elem};

pub type Row = Vec<Elem>;

fn is_zero_row(row: &[Elem]) -> bool {
    row.iter().all(|x| x.is_zero())
}

fn leading_col(row: &[Elem]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// `row -= c * other`
fn axpy(ring: &ChainRing, row: &mut [Elem], c: Elem, other: &[Elem]) {
    if c.is_zero() {
        return;
    }
    for (x, &y) in row.iter_mut().zip(other) {
        *x = ring.sub(*x, ring.mul(c, y));
    }
}

fn scale(ring: &ChainRing, row: &[Elem], c: Elem) -> Row {
    row.iter().map(|&x| ring.mul(c, x)).collect()
}

/// `pi^k * row`
pub fn scale_pi(ring: &ChainRing, row: &[Elem], k: u32) -> Row {
    row.iter().map(|&x| ring.mul_pi(x, k)).collect()
}

/// The Howell normal form of the row span of `rows`.
///
/// Output rows are nonzero with strictly increasing pivot columns; each
/// pivot equals `pi^a` for its valuation `a`; entries above a pivot are
/// reduced to their lowest `a` digits; and for each pivot row, `pi^(r-a)`
/// times the row lies in the span of the rows below it. Two inputs with the
/// same row span produce identical output.
pub fn howell_form(ring: &ChainRing, d: usize, rows: impl IntoIterator<Item = Row>) -> Vec<Row> {
    let r = ring.r();
    let mut work: Vec<Row> = rows.into_iter().filter(|row| !is_zero_row(row)).collect();
    debug_assert!(work.iter().all(|row| row.len() == d));
    let mut out: Vec<(usize, u32, Row)> = Vec::new();
    for col in 0..d {
        let Some((best, a)) = work
            .iter()
            .enumerate()
            .map(|(i, row)| (i, ring.valuation(row[col])))
            .filter(|&(_, v)| v < r)
            .min_by_key(|&(i, v)| (v, i))
        else {
            continue;
        };
        let mut pivot = work.swap_remove(best);
        let u = ring.inv(ring.unit_part(pivot[col])).expect("unit part is a unit");
        pivot = scale(ring, &pivot, u);
        debug_assert_eq!(pivot[col], ring.pi_pow(a));
        for row in work.iter_mut() {
            let x = row[col];
            if !x.is_zero() {
                axpy(ring, row, ring.div_pi(x, a), &pivot);
            }
        }
        if a > 0 {
            work.push(scale_pi(ring, &pivot, r - a));
        }
        work.retain(|row| !is_zero_row(row));
        out.push((col, a, pivot));
    }
    for i in 0..out.len() {
        let (col, a) = (out[i].0, out[i].1);
        let (above, rest) = out.split_at_mut(i);
        let pivot_row = &rest[0].2;
        for (_, _, row) in above.iter_mut() {
            let x = row[col];
            let reduced = ring.reduce_mod_pi(x, a);
            if reduced != x {
                let c = ring.div_pi(ring.sub(x, reduced), a);
                axpy(ring, row, c, pivot_row);
            }
        }
    }
    out.into_iter().map(|(_, _, row)| row).collect()
}

/// Pivot column and pivot valuation of each row of a Howell form.
pub fn pivots(ring: &ChainRing, rows: &[Row]) -> Vec<(usize, u32)> {
    rows.iter()
        .map(|row| {
            let c = leading_col(row).expect("Howell rows are nonzero");
            (c, ring.valuation(row[c]))
        })
        .collect()
}

/// Decides `v` in the span of a Howell form by reducing against its rows.
pub fn reduces_to_zero(ring: &ChainRing, howell: &[Row], pivots: &[(usize, u32)], v: &[Elem]) -> bool {
    let mut v = v.to_vec();
    let mut start = 0;
    for (row, &(col, a)) in howell.iter().zip(pivots) {
        if v[start..col].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let x = v[col];
        if !x.is_zero() {
            if ring.valuation(x) < a {
                return false;
            }
            axpy(ring, &mut v, ring.div_pi(x, a), row);
        }
        start = col + 1;
    }
    v[start..].iter().all(|x| x.is_zero())
}

/// Result of a two-sided diagonalization of a generator matrix.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    /// Exponents `a_1 <= ... <= a_k` of the nonzero diagonal entries `pi^a_i`.
    pub exponents: Vec<u32>,
    /// Rows of an invertible `d x d` matrix (a basis `w_1..w_d` of `R^d`)
    /// such that the span equals `span{pi^a_i w_i}`.
    pub basis: Vec<Row>,
}

/// Smith-like reduction: row operations on the generators and column
/// operations on the ambient basis until the matrix is diagonal.
/// Pivots are chosen by minimal valuation, ties broken by position.
pub fn diagonalize(ring: &ChainRing, d: usize, rows: &[Row]) -> Diagonalization {
    let r = ring.r();
    let mut a: Vec<Row> = rows.iter().filter(|row| !is_zero_row(row)).cloned().collect();
    let mut basis: Vec<Row> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect();
    let mut exponents = Vec::new();
    for step in 0..d.min(a.len()) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(step) {
            for (j, &x) in row.iter().enumerate().skip(step) {
                let v = ring.valuation(x);
                if v < r && best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((v, i, j)) = best else { break };
        a.swap(step, i);
        if j != step {
            for row in a.iter_mut() {
                row.swap(step, j);
            }
            basis.swap(step, j);
        }
        let u = ring.inv(ring.unit_part(a[step][step])).expect("unit part is a unit");
        a[step] = scale(ring, &a[step], u);
        let pivot_row = a[step].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != step && !row[step].is_zero() {
                let c = ring.div_pi(row[step], v);
                axpy(ring, row, c, &pivot_row);
            }
        }
        for col in step + 1..d {
            let x = a[step][col];
            if x.is_zero() {
                continue;
            }
            let c = ring.div_pi(x, v);
            // col_j -= c * col_step; only row `step` is nonzero in col_step
            a[step][col] = ring.zero();
            // inverse transform on the basis: w_step += c * w_col
            let wc = basis[col].clone();
            for (y, &z) in basis[step].iter_mut().zip(&wc) {
                *y = ring.add(*y, ring.mul(c, z));
            }
        }
        exponents.push(v);
    }
    Diagonalization { exponents, basis }
}
