//! The distance between homothety classes, distance matrices, balls and
//! spheres around `[V_r]`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate;
use crate::error::{Error, Result};
use crate::ring::ChainRing;
use crate::submodule::{HomothetyClass, Submodule};

fn check_same_space(c1: &HomothetyClass, c2: &HomothetyClass) {
    let (u1, u2) = (c1.rep(), c2.rep());
    assert!(
        u1.d() == u2.d() && u1.ring().spec() == u2.ring().spec(),
        "classes live in different ambient modules: {}^{} and {}^{}",
        u1.ring(),
        u1.d(),
        u2.ring(),
        u2.d()
    );
}

/// Least `m` with `pi^m Ũ1 ⊆ Ũ2`.
pub fn n_value(c1: &HomothetyClass, c2: &HomothetyClass) -> u32 {
    check_same_space(c1, c2);
    let r = c1.rep().ring().r();
    (0..=r).find(|&m| c1.rep().scaled_is_subset(m, c2.rep())).expect("pi^r kills everything")
}

pub fn dist(c1: &HomothetyClass, c2: &HomothetyClass) -> u32 {
    n_value(c1, c2) + n_value(c2, c1)
}

/// `min` of [`dist`] over a nonempty set.
pub fn dist_to_set<'a>(c: &HomothetyClass, set: impl IntoIterator<Item = &'a HomothetyClass>) -> Result<u32> {
    set.into_iter()
        .map(|m| dist(c, m))
        .min()
        .ok_or_else(|| Error::InvalidParameter("distance to an empty set".into()))
}

/// Half-distance matrix `N` (`N_ij = n(U_i, U_j)`) and distance matrix `D = N + N^t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceMatrix {
    pub n: Vec<Vec<u32>>,
    pub d: Vec<Vec<u32>>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }

    /// Least off-diagonal entry of `D`.
    pub fn min_distance(&self) -> Result<u32> {
        let s = self.len();
        if s < 2 {
            return Err(Error::InvalidParameter(format!("minimum distance of a set of size {s}")));
        }
        Ok((0..s).flat_map(|i| (0..s).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| self.d[i][j]).min().unwrap())
    }

    /// `D` as comma-separated rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.d {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, labels: &[String]) -> serde_json::Value {
        serde_json::json!({ "labels": labels, "N": self.n, "D": self.d })
    }
}

pub fn half_distance_matrix(classes: &[HomothetyClass]) -> DistanceMatrix {
    let n: Vec<Vec<u32>> = classes.par_iter().map(|a| classes.iter().map(|b| n_value(a, b)).collect()).collect();
    let s = classes.len();
    let d = (0..s).map(|i| (0..s).map(|j| n[i][j] + n[j][i]).collect()).collect();
    let m = DistanceMatrix { n, d };
    if let Some(first) = classes.first() {
        let r = first.rep().ring().r();
        debug_assert!(m.d.iter().flatten().all(|&x| x <= 2 * r));
    }
    m
}

/// Minimum pairwise distance; at most `2r` for boundary classes.
pub fn min_distance(classes: &[HomothetyClass]) -> Result<u32> {
    let m = half_distance_matrix(classes).min_distance()?;
    if let Some(first) = classes.first() {
        let r = first.rep().ring().r();
        if classes.iter().all(HomothetyClass::is_boundary) {
            assert!(m <= 2 * r, "boundary classes at distance {m} > 2r");
        }
    }
    Ok(m)
}

fn check_radius(ring: &ChainRing, radius: u32) -> Result<()> {
    if radius > ring.r() {
        return Err(Error::InvalidParameter(format!("radius {radius} exceeds r = {}", ring.r())));
    }
    Ok(())
}

/// Classes at distance exactly `radius` from `[V_r]`. Each is also checked
/// to have exactly `r - radius + 1` members.
pub fn sphere(ring: &Arc<ChainRing>, d: usize, radius: u32, budget: u64) -> Result<Vec<HomothetyClass>> {
    check_radius(ring, radius)?;
    let center = HomothetyClass::of(&Submodule::full(ring, d));
    let out: Vec<HomothetyClass> = enumerate::enumerate_classes(ring, d, budget)?
        .into_iter()
        .filter(|c| {
            let by_distance = dist(c, &center) == radius;
            let by_size = c.members().len() as u32 == ring.r() - radius + 1;
            assert_eq!(by_distance, by_size, "sphere characterizations disagree on {}", c.rep());
            by_distance
        })
        .collect();
    Ok(out)
}

/// Classes at distance at most `radius` from `[V_r]`.
pub fn ball(ring: &Arc<ChainRing>, d: usize, radius: u32, budget: u64) -> Result<Vec<HomothetyClass>> {
    check_radius(ring, radius)?;
    Ok(enumerate::enumerate_classes(ring, d, budget)?.into_iter().filter(|c| c.depth() <= radius).collect())
}

/// Both classes on the boundary, and neither `pi^(r-1) U_i` inside `U_1 ∩ U_2`.
pub fn is_max_distance_pair(c1: &HomothetyClass, c2: &HomothetyClass) -> bool {
    check_same_space(c1, c2);
    if !c1.is_boundary() || !c2.is_boundary() {
        return false;
    }
    let (u1, u2) = (c1.rep(), c2.rep());
    let r = u1.ring().r();
    let meet = u1.intersect(u2).expect("same ambient module");
    !u1.scaled_is_subset(r - 1, &meet) && !u2.scaled_is_subset(r - 1, &meet)
}

/// `max_i (delta_i - eps_i) - min_i (delta_i - eps_i)`: the distance between
/// the classes of two diagonal modules.
pub fn tropical_distance(delta: &[u32], eps: &[u32]) -> u32 {
    assert_eq!(delta.len(), eps.len());
    let diffs: Vec<i64> = delta.iter().zip(eps).map(|(&a, &b)| a as i64 - b as i64).collect();
    (diffs.iter().max().unwrap() - diffs.iter().min().unwrap()) as u32
}
