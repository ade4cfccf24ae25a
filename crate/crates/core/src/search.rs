//! Exact extremal values by maximum-clique search on the compatibility
//! graph of boundary classes: `card(d; R; psi)` and `dist(d; R; chi)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::codes::{self, Code, Construction};
use crate::counting;
use crate::enumerate;
use crate::error::{Error, Result};
use crate::metric;
use crate::ring::{ChainRing, RingKind};
use crate::submodule::HomothetyClass;

/// Largest vertex count accepted for exact search.
pub const MAX_VERTICES: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bitset(Vec<u64>);

impl Bitset {
    fn empty(n: usize) -> Self {
        Bitset(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.0.iter().position(|&w| w != 0).map(|k| k * 64 + self.0[k].trailing_zeros() as usize)
    }

    fn and(&self, other: &Bitset) -> Bitset {
        Bitset(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + t)
            })
        })
    }
}

/// Boundary classes joined when their distance is at least `psi`.
#[derive(Clone, Debug)]
pub struct CompatibilityGraph {
    vertices: Vec<HomothetyClass>,
    dist: Vec<Vec<u32>>,
    psi: u32,
    adj: Vec<Bitset>,
}

impl CompatibilityGraph {
    /// Builds the graph on the given classes (kept in the given order).
    pub fn from_classes(vertices: Vec<HomothetyClass>, psi: u32) -> Self {
        let dist = metric::half_distance_matrix(&vertices).d;
        Self::from_distances(vertices, dist, psi)
    }

    fn from_distances(vertices: Vec<HomothetyClass>, dist: Vec<Vec<u32>>, psi: u32) -> Self {
        let n = vertices.len();
        let adj = (0..n)
            .map(|i| {
                let mut b = Bitset::empty(n);
                for j in (0..n).filter(|&j| j != i && dist[i][j] >= psi) {
                    b.insert(j);
                }
                b
            })
            .collect();
        CompatibilityGraph { vertices, dist, psi, adj }
    }

    /// The same vertices and distances with another threshold.
    pub fn with_threshold(&self, psi: u32) -> Self {
        Self::from_distances(self.vertices.clone(), self.dist.clone(), psi)
    }

    pub fn vertices(&self) -> &[HomothetyClass] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn psi(&self) -> u32 {
        self.psi
    }

    pub fn distance(&self, i: usize, j: usize) -> u32 {
        self.dist[i][j]
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|b| b.iter().count()).sum::<usize>() / 2
    }

    /// Whether `set` is a clique: checked against freshly computed distances.
    pub fn verify_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(a, &i)| {
            set[a + 1..].iter().all(|&j| i != j && metric::dist(&self.vertices[i], &self.vertices[j]) >= self.psi)
        })
    }
}

fn predicted_boundary(ring: &ChainRing, d: usize) -> u64 {
    counting::sphere_polynomial(d as u32, ring.r())
        .ok()
        .and_then(|p| p.eval(ring.q() as i64).to_u64())
        .unwrap_or(u64::MAX)
}

/// The compatibility graph on all boundary classes of `R^d`.
pub fn build_graph(ring: &Arc<ChainRing>, d: usize, psi: u32, budget: u64) -> Result<CompatibilityGraph> {
    if psi < 1 || psi > 2 * ring.r() {
        return Err(Error::InvalidParameter(format!("psi = {psi} outside 1..={}", 2 * ring.r())));
    }
    let predicted = predicted_boundary(ring, d);
    if predicted > MAX_VERTICES as u64 {
        return Err(Error::BudgetExceeded { what: "boundary classes for clique search".into(), predicted, budget: MAX_VERTICES as u64 });
    }
    let vertices: Vec<HomothetyClass> =
        enumerate::enumerate_boundary(ring, d, budget)?.into_iter().map(|u| HomothetyClass::of(&u)).collect();
    debug_assert_eq!(vertices.len() as u64, predicted);
    Ok(CompatibilityGraph::from_classes(vertices, psi))
}

struct Search<'a> {
    graph: &'a CompatibilityGraph,
    best: Vec<usize>,
    stop_at: Option<usize>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.stop_at.is_some_and(|k| self.best.len() >= k)
    }

    /// Greedy coloring of `candidates` in index order; returns vertices
    /// sorted by color together with the color bounds.
    fn color_sort(&self, candidates: &Bitset) -> Vec<(usize, usize)> {
        let mut uncolored = candidates.clone();
        let mut order = Vec::new();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut available = uncolored.clone();
            while let Some(v) = available.first() {
                available.remove(v);
                uncolored.remove(v);
                order.push((v, color));
                for u in self.graph.adj[v].iter() {
                    available.remove(u);
                }
            }
        }
        order
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut candidates: Bitset) {
        let order = self.color_sort(&candidates);
        for &(v, color) in order.iter().rev() {
            if self.done() || clique.len() + color <= self.best.len() {
                return;
            }
            clique.push(v);
            let next = candidates.and(&self.graph.adj[v]);
            if next.is_empty() {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            candidates.remove(v);
        }
    }
}

fn run_search(graph: &CompatibilityGraph, seed: Option<&[usize]>, stop_at: Option<usize>) -> Vec<usize> {
    let mut best = Vec::new();
    if let Some(seed) = seed {
        assert!(graph.verify_clique(seed), "seed is not a clique");
        best = seed.to_vec();
    }
    if graph.is_empty() {
        return best;
    }
    let mut search = Search { graph, best, stop_at };
    search.expand(&mut Vec::new(), Bitset::full(graph.len()));
    let mut best = search.best;
    best.sort_unstable();
    assert!(graph.verify_clique(&best), "search returned a non-clique");
    best
}

/// Maximum clique `(size, vertices)`. A seed clique only primes the
/// incumbent; the optimum is exact either way.
pub fn max_clique(graph: &CompatibilityGraph, seed: Option<&[usize]>) -> (usize, Vec<usize>) {
    let best = run_search(graph, seed, None);
    (best.len(), best)
}

/// Some clique of size at least `k`, if one exists.
pub fn find_clique(graph: &CompatibilityGraph, k: usize) -> Option<Vec<usize>> {
    let best = run_search(graph, None, Some(k));
    (best.len() >= k).then_some(best)
}

fn witness(graph: &CompatibilityGraph, clique: &[usize], construction: Construction) -> Result<Code> {
    let first = graph.vertices.first().ok_or_else(|| Error::InvalidParameter("empty graph".into()))?;
    let ring = first.rep().ring().clone();
    let d = first.rep().d();
    Code::new(&ring, d, clique.iter().map(|&i| graph.vertices[i].clone()).collect(), construction)
}

/// Indices of the members of `code` among the graph vertices.
pub fn locate(graph: &CompatibilityGraph, code: &Code) -> Option<Vec<usize>> {
    code.members().iter().map(|c| graph.vertices.iter().position(|v| v == c)).collect()
}

/// `card(d; R; psi)`: the largest spherical code with minimum distance at least `psi`.
pub fn card_exact(ring: &Arc<ChainRing>, d: usize, psi: u32, budget: u64) -> Result<(usize, Code)> {
    let graph = build_graph(ring, d, psi, budget)?;
    card_on_graph(&graph, None)
}

/// [`card_exact`] on a prebuilt graph, optionally seeded.
pub fn card_on_graph(graph: &CompatibilityGraph, seed: Option<&Code>) -> Result<(usize, Code)> {
    let seed = match seed {
        Some(code) => Some(locate(graph, code).ok_or_else(|| Error::InvalidParameter("seed code is not spherical".into()))?),
        None => None,
    };
    let (size, clique) = max_clique(graph, seed.as_deref());
    let code = witness(graph, &clique, Construction::new("clique", serde_json::json!({ "psi": graph.psi })))?;
    assert!(code.min_distance() >= graph.psi);
    Ok((size, code))
}

/// `dist(d; R; chi)`: the largest minimum distance of a spherical code with at least `chi` members.
pub fn dist_exact(ring: &Arc<ChainRing>, d: usize, chi: usize, budget: u64) -> Result<(u32, Code)> {
    if chi < 2 {
        return Err(Error::InvalidParameter(format!("chi = {chi} must be at least 2")));
    }
    let graph = build_graph(ring, d, 1, budget)?;
    if chi > graph.len() {
        return Err(Error::InvalidParameter(format!("chi = {chi} exceeds the {} boundary classes", graph.len())));
    }
    for psi in (1..=2 * ring.r()).rev() {
        let g = graph.with_threshold(psi);
        if let Some(clique) = find_clique(&g, chi) {
            let code = witness(&g, &clique, Construction::new("clique", serde_json::json!({ "chi": chi })))?;
            assert!(code.len() >= chi && code.min_distance() >= psi);
            return Ok((psi, code));
        }
    }
    unreachable!("the whole boundary is a code with minimum distance at least 1")
}

/// One point of a certification grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub kind: RingKind,
    pub p: u32,
    pub s: u32,
    pub r: u32,
    pub d: usize,
    pub alpha: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One line of a certification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub params: GridPoint,
    pub theorem: String,
    pub expected: serde_json::Value,
    pub found: serde_json::Value,
    pub witness_ref: Option<String>,
    pub status: Status,
    /// Whether the Sperner construction attains the exact optimum.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tight: Option<bool>,
}

/// A report together with the witness codes it refers to.
#[derive(Clone, Debug)]
pub struct Certification {
    pub entries: Vec<ReportEntry>,
    pub witnesses: Vec<(String, Code)>,
}

impl Certification {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }
}

/// The small default grid: rank 2 over `Z/2^r` and `Z/3^r`, rank 3 over `Z/2^r`.
pub fn small_grid() -> Vec<GridPoint> {
    let mut grid = Vec::new();
    for (p, d, rmax) in [(2, 2, 3), (3, 2, 2), (2, 3, 2)] {
        for r in 1..=rmax {
            for alpha in 1..=r {
                grid.push(GridPoint { kind: RingKind::IntegerModular, p, s: 1, r, d, alpha });
            }
        }
    }
    grid
}

fn big(x: &BigInt) -> serde_json::Value {
    x.to_u64().map(serde_json::Value::from).unwrap_or_else(|| x.to_string().into())
}

/// Closed forms against constructions and exact search on every grid point.
pub fn certify_theorems(grid: &[GridPoint], budget: u64) -> Certification {
    let mut cert = Certification { entries: Vec::new(), witnesses: Vec::new() };
    for &pt in grid {
        certify_point(pt, budget, &mut cert);
    }
    cert
}

fn certify_point(pt: GridPoint, budget: u64, cert: &mut Certification) {
    let entry = |theorem: &str, expected: serde_json::Value, found: serde_json::Value, status: Status| ReportEntry {
        params: pt,
        theorem: theorem.into(),
        expected,
        found,
        witness_ref: None,
        status,
        tight: None,
    };
    let ring = match ChainRing::new(pt.kind, pt.p, pt.s, pt.r) {
        Ok(r) => Arc::new(r),
        Err(e) => {
            cert.entries.push(entry("parameters", serde_json::Value::Null, e.to_string().into(), Status::Fail));
            return;
        }
    };
    let (q, r, d, alpha) = (ring.q(), pt.r, pt.d, pt.alpha);
    let tag = format!("{}-p{}-s{}-r{}-d{}-a{}", pt.kind, pt.p, pt.s, r, d, alpha);
    let skipped = |theorem: &str, err: Error| entry(theorem, serde_json::Value::Null, err.to_string().into(), Status::Skipped);
    let status = |ok: bool| if ok { Status::Pass } else { Status::Fail };

    // Sperner construction against its closed-form size
    let bound = match codes::sperner_lower_bound(d as u32, q, r, alpha) {
        Ok(b) => b,
        Err(e) => {
            cert.entries.push(entry("sperner-size", serde_json::Value::Null, e.to_string().into(), Status::Fail));
            return;
        }
    };
    let sperner = match codes::sperner_code(&ring, d, alpha, budget) {
        Ok(code) => {
            let name = format!("sperner-{tag}");
            let mut e = entry("sperner-size", big(&bound), code.len().into(), status(BigInt::from(code.len()) == bound));
            e.witness_ref = Some(name.clone());
            cert.entries.push(e);
            cert.witnesses.push((name, code.clone()));
            Some(code)
        }
        Err(err @ Error::BudgetExceeded { .. }) => {
            cert.entries.push(skipped("sperner-size", err));
            None
        }
        Err(err) => {
            cert.entries.push(entry("sperner-size", big(&bound), err.to_string().into(), Status::Fail));
            None
        }
    };

    // exact optimum at psi = 2 alpha
    let graph = match build_graph(&ring, d, 2 * alpha, budget) {
        Ok(g) => g,
        Err(err) => {
            cert.entries.push(skipped("card-exact", err));
            return;
        }
    };
    let (theorem, expected) = if d == 2 {
        ("card-rank-two", codes::exact_card_d2(q, r, alpha).ok())
    } else if alpha == r {
        ("card-max-distance", codes::exact_card_maxdist(d as u32, q).ok())
    } else {
        ("card-sperner-lower-bound", None)
    };
    match card_on_graph(&graph, sperner.as_ref()) {
        Ok((found, code)) => {
            let name = format!("clique-{tag}");
            let ok = match &expected {
                Some(x) => BigInt::from(found) == *x,
                None => BigInt::from(found) >= bound,
            };
            let shown = expected.as_ref().map(big).unwrap_or_else(|| serde_json::json!({ "at_least": big(&bound) }));
            let mut e = entry(theorem, shown, found.into(), status(ok));
            e.witness_ref = Some(name.clone());
            e.tight = sperner.as_ref().map(|s| s.len() == found);
            cert.entries.push(e);
            cert.witnesses.push((name, code));
        }
        Err(err) => cert.entries.push(entry(theorem, serde_json::Value::Null, err.to_string().into(), Status::Fail)),
    }

    // d + 1 classes at distance 2r, once per ring and rank
    if alpha == r {
        match dist_exact(&ring, d, d + 1, budget) {
            Ok((found, code)) => {
                let name = format!("dist-{tag}");
                let star = codes::star_configuration(&ring, d).map(|s| s.len() == d + 1 && s.min_distance() == 2 * r);
                let ok = found == 2 * r && star == Ok(true);
                let mut e = entry("dist-star", (2 * r).into(), found.into(), status(ok));
                e.witness_ref = Some(name.clone());
                cert.entries.push(e);
                cert.witnesses.push((name, code));
            }
            Err(err @ Error::BudgetExceeded { .. }) => cert.entries.push(skipped("dist-star", err)),
            Err(err) => cert.entries.push(entry("dist-star", (2 * r).into(), err.to_string().into(), Status::Fail)),
        }
    }
}
