//! Submodules of `V_r = R^d` in Howell normal form, the saturation
//! (tilde) map and homothety classes.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::howell::{self, Row};
use crate::ring::{ChainRing, ChainRingSpec, Elem};

/// An `R`-submodule of `R^d`, stored as the Howell normal form of its
/// generators. Equality and hashing compare the canonical rows.
#[derive(Clone)]
pub struct Submodule {
    ring: Arc<ChainRing>,
    d: usize,
    rows: Vec<Row>,
    pivots: Vec<(usize, u32)>,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.rows == other.rows && self.ring.spec() == other.ring.spec()
    }
}

impl Eq for Submodule {}

impl Hash for Submodule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.d.hash(state);
        self.rows.hash(state);
    }
}

impl PartialOrd for Submodule {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by ambient rank, then lexicographically on the Howell rows.
impl Ord for Submodule {
    fn cmp(&self, other: &Self) -> Ordering {
        self.d.cmp(&other.d).then_with(|| self.rows.cmp(&other.rows))
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule{}", self)
    }
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let entries: Vec<String> = row.iter().map(|&x| self.ring.format(x)).collect();
            write!(f, "({})", entries.join(","))?;
        }
        f.write_str("}")
    }
}

impl Submodule {
    fn from_howell(ring: Arc<ChainRing>, d: usize, rows: Vec<Row>) -> Self {
        let pivots = howell::pivots(&ring, &rows);
        Submodule { ring, d, rows, pivots }
    }

    /// The span of `rows`, canonicalized.
    pub fn from_generators(ring: &Arc<ChainRing>, d: usize, rows: Vec<Row>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|row| row.len() != d) {
            return Err(Error::DimensionMismatch(format!("row of length {} in R^{d}", bad.len())));
        }
        Ok(Self::span(ring, d, rows))
    }

    pub(crate) fn span(ring: &Arc<ChainRing>, d: usize, rows: Vec<Row>) -> Self {
        let h = howell::howell_form(ring, d, rows);
        Self::from_howell(ring.clone(), d, h)
    }

    /// Builds a submodule from rows already in Howell form (checked in debug builds).
    pub(crate) fn from_canonical_rows(ring: &Arc<ChainRing>, d: usize, rows: Vec<Row>) -> Self {
        debug_assert_eq!(howell::howell_form(ring, d, rows.clone()), rows);
        Self::from_howell(ring.clone(), d, rows)
    }

    pub fn zero(ring: &Arc<ChainRing>, d: usize) -> Self {
        Self::from_howell(ring.clone(), d, vec![])
    }

    /// The ambient module `V_r = R^d`.
    pub fn full(ring: &Arc<ChainRing>, d: usize) -> Self {
        let rows = (0..d).map(|i| unit_vector(ring, d, i)).collect();
        Self::from_howell(ring.clone(), d, rows)
    }

    pub fn ring(&self) -> &Arc<ChainRing> {
        &self.ring
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Howell-form rows.
    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// `(column, valuation)` of each Howell pivot.
    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.d && self.pivots.iter().all(|&(_, a)| a == 0)
    }

    /// `log_q |U|`.
    pub fn log_size(&self) -> u32 {
        self.pivots.iter().map(|&(_, a)| self.ring.r() - a).sum()
    }

    fn check_compatible(&self, other: &Submodule) -> Result<()> {
        if self.d != other.d || self.ring.spec() != other.ring.spec() {
            return Err(Error::DimensionMismatch(format!(
                "{} in {}^{} vs {} in {}^{}",
                self, self.ring, self.d, other, other.ring, other.d
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Elem]) -> Result<bool> {
        if v.len() != self.d {
            return Err(Error::DimensionMismatch(format!("vector of length {} in R^{}", v.len(), self.d)));
        }
        Ok(self.contains_unchecked(v))
    }

    pub(crate) fn contains_unchecked(&self, v: &[Elem]) -> bool {
        howell::reduces_to_zero(&self.ring, &self.rows, &self.pivots, v)
    }

    pub fn is_subset(&self, other: &Submodule) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.is_subset_unchecked(other))
    }

    pub(crate) fn is_subset_unchecked(&self, other: &Submodule) -> bool {
        self.log_size() <= other.log_size() && self.rows.iter().all(|row| other.contains_unchecked(row))
    }

    /// Whether `pi^k * self` is contained in `other`.
    pub(crate) fn scaled_is_subset(&self, k: u32, other: &Submodule) -> bool {
        self.rows.iter().all(|row| other.contains_unchecked(&howell::scale_pi(&self.ring, row, k)))
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.check_compatible(other)?;
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(Self::span(&self.ring, self.d, rows))
    }

    /// Intersection via the Howell form of `[[A, A], [B, 0]]`: the rows whose
    /// first `d` entries vanish span `{(0, x) : x in A and B}`.
    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        self.check_compatible(other)?;
        let d = self.d;
        let zeros = vec![self.ring.zero(); d];
        let stacked = self
            .rows
            .iter()
            .map(|row| row.iter().chain(row).copied().collect())
            .chain(other.rows.iter().map(|row| row.iter().chain(&zeros).copied().collect()));
        let h = howell::howell_form(&self.ring, 2 * d, stacked);
        let rows = h
            .into_iter()
            .filter(|row| row[..d].iter().all(|x| x.is_zero()))
            .map(|row| row[d..].to_vec())
            .collect();
        Ok(Self::span(&self.ring, d, rows))
    }

    /// `pi^k U`.
    pub fn scale_pi(&self, k: u32) -> Submodule {
        let rows = self.rows.iter().map(|row| howell::scale_pi(&self.ring, row, k)).collect();
        Self::span(&self.ring, self.d, rows)
    }

    /// Largest `m` with `U` contained in `pi^m V_r`; `r` for the zero module.
    pub fn m_of(&self) -> u32 {
        self.rows
            .iter()
            .flatten()
            .map(|&x| self.ring.valuation(x))
            .min()
            .unwrap_or(self.ring.r())
    }

    /// The saturation `{x : pi^m x in U}` with `m = m_of(U)`: generated by
    /// `g / pi^m` for the generators `g` together with the kernel
    /// `pi^(r-m) V_r` of multiplication by `pi^m`.
    pub fn tilde(&self) -> Submodule {
        let ring = &self.ring;
        let m = self.m_of();
        let mut rows: Vec<Row> =
            self.rows.iter().map(|row| row.iter().map(|&x| ring.div_pi(x, m)).collect()).collect();
        if m > 0 {
            for i in 0..self.d {
                let mut e = vec![ring.zero(); self.d];
                e[i] = ring.pi_pow(ring.r() - m);
                rows.push(e);
            }
        }
        let t = Self::span(ring, self.d, rows);
        debug_assert!(t.scale_pi(m) == *self);
        t
    }

    /// `pi^(r-1) V_r` not contained in `U`, and `U` not contained in `pi V_r`.
    pub fn is_boundary(&self) -> bool {
        let ring = &self.ring;
        if self.m_of() != 0 {
            return false;
        }
        let top = ring.pi_pow(ring.r() - 1);
        (0..self.d).any(|i| {
            let mut e = vec![ring.zero(); self.d];
            e[i] = top;
            !self.contains_unchecked(&e)
        })
    }

    /// `pi U = U ∩ pi V_r`.
    pub fn is_free(&self) -> bool {
        let pi_v = Submodule::full(&self.ring, self.d).scale_pi(1);
        self.scale_pi(1) == self.intersect(&pi_v).expect("same ambient module")
    }

    /// Elementary-divisor exponents, weakly decreasing: `U` is carried to
    /// `⊕ R pi^(eps_i) e_i` by a change of basis of `V_r`. The zero module
    /// gives `(r, ..., r)`.
    pub fn ed_type(&self) -> Vec<u32> {
        let diag = howell::diagonalize(&self.ring, self.d, &self.rows);
        let mut eps = diag.exponents;
        eps.resize(self.d, self.ring.r());
        eps.reverse();
        eps
    }

    /// A decomposition `U = X ⊕ H` with `H` free, `pi^(r-1) X = 0` and
    /// `pi^(r-1) U = pi^(r-1) H`. Returns `(X, H)`.
    pub fn free_part(&self) -> Result<(Submodule, Submodule)> {
        if self.is_zero() {
            return Err(Error::InvalidParameter("free_part of the zero module".into()));
        }
        let ring = &self.ring;
        let diag = howell::diagonalize(ring, self.d, &self.rows);
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (&a, w) in diag.exponents.iter().zip(&diag.basis) {
            if a == 0 {
                free.push(w.clone());
            } else {
                torsion.push(howell::scale_pi(ring, w, a));
            }
        }
        let x = Self::span(ring, self.d, torsion);
        let h = Self::span(ring, self.d, free);
        debug_assert!(self.scale_pi(ring.r() - 1) == h.scale_pi(ring.r() - 1));
        Ok((x, h))
    }

    pub fn to_json(&self) -> SubmoduleJson {
        SubmoduleJson {
            ring: self.ring.spec(),
            d: self.d,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|&x| elem_to_json(&self.ring, x)).collect())
                .collect(),
        }
    }

    pub fn from_json(ring: &Arc<ChainRing>, json: &SubmoduleJson) -> Result<Submodule> {
        if json.ring != ring.spec() {
            return Err(Error::Parse(format!("submodule over {:?}, expected {:?}", json.ring, ring.spec())));
        }
        let rows = json
            .rows
            .iter()
            .map(|row| row.iter().map(|v| elem_from_json(ring, v)).collect::<Result<Row>>())
            .collect::<Result<Vec<Row>>>()?;
        Self::from_generators(ring, json.d, rows)
    }
}

pub(crate) fn unit_vector(ring: &ChainRing, d: usize, i: usize) -> Row {
    (0..d).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()
}

pub fn elem_to_json(ring: &ChainRing, x: Elem) -> serde_json::Value {
    match ring.kind() {
        crate::ring::RingKind::IntegerModular => serde_json::Value::from(x.code()),
        crate::ring::RingKind::TruncatedPolynomial => serde_json::Value::from(ring.format(x)),
    }
}

pub fn elem_from_json(ring: &ChainRing, v: &serde_json::Value) -> Result<Elem> {
    match v {
        serde_json::Value::Number(n) => ring.parse(&n.to_string()),
        serde_json::Value::String(s) => ring.parse(s),
        other => Err(Error::Parse(format!("ring element must be a number or string, got {other}"))),
    }
}

/// Wire form of a submodule: `{ring, d, rows}` with rows in Howell form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubmoduleJson {
    pub ring: ChainRingSpec,
    pub d: usize,
    pub rows: Vec<Vec<serde_json::Value>>,
}

/// `U_delta = ⊕ R pi^(delta_i) e_i`.
pub fn diagonal_module(ring: &Arc<ChainRing>, delta: &[u32]) -> Result<Submodule> {
    let d = delta.len();
    if let Some(&bad) = delta.iter().find(|&&x| x > ring.r()) {
        return Err(Error::InvalidParameter(format!("diagonal exponent {bad} exceeds r = {}", ring.r())));
    }
    let rows = delta
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let mut row = vec![ring.zero(); d];
            row[i] = ring.pi_pow(k);
            row
        })
        .collect();
    Ok(Submodule::span(ring, d, rows))
}

/// A homothety class `[U]`, represented by its saturation `Ũ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomothetyClass {
    rep: Submodule,
}

impl HomothetyClass {
    pub fn of(u: &Submodule) -> Self {
        HomothetyClass { rep: u.tilde() }
    }

    /// Wraps a module already equal to its own saturation.
    pub(crate) fn from_saturated(rep: Submodule) -> Self {
        debug_assert!(rep.tilde() == rep);
        HomothetyClass { rep }
    }

    pub fn rep(&self) -> &Submodule {
        &self.rep
    }

    pub fn into_rep(self) -> Submodule {
        self.rep
    }

    /// Distance to `[V_r]`: least `n` with `pi^n V_r` inside the representative.
    pub fn depth(&self) -> u32 {
        let ring = self.rep.ring();
        let d = self.rep.d();
        (0..=ring.r())
            .find(|&n| (0..d).all(|i| self.rep.contains_unchecked(&howell::scale_pi(ring, &unit_vector(ring, d, i), n))))
            .expect("pi^r V_r = 0")
    }

    /// `|[U]| = r - dist([U], [V_r]) + 1`.
    pub fn size(&self) -> u32 {
        self.rep.ring().r() - self.depth() + 1
    }

    /// The members `pi^j Ũ` of the class, listed by direct enumeration.
    pub fn members(&self) -> Vec<Submodule> {
        let mut out: Vec<Submodule> = Vec::new();
        for j in 0..=self.rep.ring().r() {
            let m = self.rep.scale_pi(j);
            if m.tilde() == self.rep && !out.contains(&m) {
                out.push(m);
            }
        }
        out
    }

    /// Whether the class is a boundary point (equivalently a singleton).
    pub fn is_boundary(&self) -> bool {
        self.rep.is_boundary()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> Arc<ChainRing> {
        Arc::new(ChainRing::integers_mod(2, 2).unwrap())
    }

    fn module(ring: &Arc<ChainRing>, d: usize, rows: &[&[u32]]) -> Submodule {
        let rows = rows.iter().map(|row| row.iter().map(|&c| ring.elem(c)).collect()).collect();
        Submodule::from_generators(ring, d, rows).unwrap()
    }

    /// All vectors of a span, by closing under addition of generator multiples.
    fn brute_span(ring: &ChainRing, d: usize, gens: &[Row]) -> std::collections::BTreeSet<Row> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(vec![ring.zero(); d]);
        for g in gens {
            let mut next = std::collections::BTreeSet::new();
            for v in &set {
                for c in ring.elements().unwrap() {
                    next.insert(v.iter().zip(g).map(|(&x, &y)| ring.add(x, ring.mul(c, y))).collect());
                }
            }
            set = next;
        }
        set
    }

    fn all_vectors(ring: &ChainRing, d: usize) -> Vec<Row> {
        let n = ring.order() as usize;
        (0..n.pow(d as u32))
            .map(|mut code| {
                (0..d)
                    .map(|_| {
                        let e = ring.elem((code % n) as u32);
                        code /= n;
                        e
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn intersection_example() {
        let ring = z4();
        let a = module(&ring, 2, &[&[1, 0]]);
        let b = module(&ring, 2, &[&[1, 2]]);
        assert_eq!(a.intersect(&b).unwrap(), module(&ring, 2, &[&[2, 0]]));
        // oracle: brute-force membership scan over all 16 vectors
        let expected: Vec<Row> =
            all_vectors(&ring, 2).into_iter().filter(|v| a.contains_unchecked(v) && b.contains_unchecked(v)).collect();
        assert_eq!(brute_span(&ring, 2, a.intersect(&b).unwrap().rows()).into_iter().collect::<Vec<_>>().len(), expected.len());
    }

    #[test]
    fn m_of_tilde_boundary() {
        let z8 = Arc::new(ChainRing::integers_mod(2, 3).unwrap());
        assert_eq!(module(&z8, 2, &[&[2, 4]]).m_of(), 1);
        let ring = z4();
        let v = Submodule::full(&ring, 2);
        let zero = Submodule::zero(&ring, 2);
        assert_eq!(v.m_of(), 0);
        assert_eq!(zero.m_of(), 2);
        assert_eq!(zero.tilde(), v);
        assert_eq!(module(&ring, 2, &[&[2, 0]]).tilde(), module(&ring, 2, &[&[1, 0], &[0, 2]]));
        assert!(!v.is_boundary());
        assert!(module(&ring, 2, &[&[1, 0]]).is_boundary());
        assert!(!v.scale_pi(1).is_boundary());
    }

    #[test]
    fn tilde_matches_brute_force_kernel() {
        let ring = z4();
        let u = module(&ring, 2, &[&[2, 0]]);
        let m = u.m_of();
        let expected: Vec<Row> = all_vectors(&ring, 2)
            .into_iter()
            .filter(|x| u.contains_unchecked(&howell::scale_pi(&ring, x, m)))
            .collect();
        let t = u.tilde();
        let got: Vec<Row> = all_vectors(&ring, 2).into_iter().filter(|x| t.contains_unchecked(x)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn class_sizes() {
        let ring = z4();
        let zero = Submodule::zero(&ring, 2);
        let v = Submodule::full(&ring, 2);
        assert_eq!(HomothetyClass::of(&zero), HomothetyClass::of(&v));
        assert_eq!(HomothetyClass::of(&zero).size(), 3);
        assert_eq!(HomothetyClass::of(&v).members().len(), 3);
        assert_eq!(HomothetyClass::of(&module(&ring, 2, &[&[1, 0]])).size(), 1);
        // {(1,0),(0,2)} contains pi V_r, so it sits at depth 1 with class {U, pi U}
        let c = HomothetyClass::of(&module(&ring, 2, &[&[1, 0], &[0, 2]]));
        assert_eq!(c.size(), 2);
        assert_eq!(c.members().len(), 2);
    }

    #[test]
    fn free_part_example() {
        let ring = z4();
        let v = Submodule::full(&ring, 2);
        assert!(v.is_free());
        let u = module(&ring, 2, &[&[1, 0], &[0, 2]]);
        assert!(!u.is_free());
        let (x, h) = u.free_part().unwrap();
        assert_eq!(x, module(&ring, 2, &[&[0, 2]]));
        assert_eq!(h, module(&ring, 2, &[&[1, 0]]));
        assert!(module(&ring, 2, &[&[1, 0]]).is_free());
        assert!(Submodule::zero(&ring, 2).free_part().is_err());
    }

    #[test]
    fn ed_types() {
        let ring = z4();
        let u = diagonal_module(&ring, &[2, 0]).unwrap();
        assert_eq!(u.ed_type(), vec![2, 0]);
        assert_eq!(Submodule::full(&ring, 3).ed_type(), vec![0, 0, 0]);
        assert_eq!(Submodule::zero(&ring, 2).ed_type(), vec![2, 2]);
        for gens in [&[&[1u32, 2][..], &[2, 0]][..], &[&[2, 2]], &[&[2, 0], &[0, 2]], &[&[1, 1], &[0, 2]]] {
            let w = module(&ring, 2, gens);
            assert_eq!(w.ed_type(), brute_ed_type(&ring, &w), "{w}");
        }
        // (1,2) has a unit coordinate, so span{(1,2),(2,0)} = R(1,2) is free of rank 1
        assert_eq!(module(&ring, 2, &[&[1, 2], &[2, 0]]).ed_type(), vec![2, 0]);
    }

    /// Reads the divisor type off the quotient V/U: the number of classes
    /// killed by pi^k is q^(sum_i min(k, eps_i)).
    fn brute_ed_type(ring: &Arc<ChainRing>, u: &Submodule) -> Vec<u32> {
        let d = u.d();
        let r = ring.r();
        let q = ring.q() as usize;
        let vectors = all_vectors(ring, d);
        let u_size = vectors.iter().filter(|v| u.contains_unchecked(v)).count();
        // log_q of the pi^k-torsion of V/U for k = 0..=r
        let logs: Vec<u32> = (0..=r)
            .map(|k| {
                let n = vectors.iter().filter(|v| u.contains_unchecked(&howell::scale_pi(ring, v, k))).count() / u_size;
                (n as f64).log(q as f64).round() as u32
            })
            .collect();
        // #{i : eps_i >= k} = logs[k] - logs[k-1]
        let mut eps = vec![0u32; d];
        for k in 1..=r as usize {
            let at_least = (logs[k] - logs[k - 1]) as usize;
            for e in eps.iter_mut().take(at_least) {
                *e = k as u32;
            }
        }
        eps
    }

    #[test]
    fn diagonal_modules() {
        let z8 = Arc::new(ChainRing::integers_mod(2, 3).unwrap());
        assert_eq!(diagonal_module(&z8, &[0, 0, 0]).unwrap(), Submodule::full(&z8, 3));
        assert!(diagonal_module(&z8, &[3, 3, 3]).unwrap().is_zero());
        assert_eq!(diagonal_module(&z8, &[3, 1, 0]).unwrap(), module(&z8, 3, &[&[0, 2, 0], &[0, 0, 1]]));
        assert!(diagonal_module(&z8, &[4, 0, 0]).is_err());
    }

    #[test]
    fn lattice_operations() {
        let ring = z4();
        let u = module(&ring, 2, &[&[1, 2]]);
        assert!(u.scale_pi(1).is_subset(&u).unwrap());
        assert_eq!(u.sum(&Submodule::zero(&ring, 2)).unwrap(), u);
        let other = Arc::new(ChainRing::integers_mod(3, 2).unwrap());
        assert!(matches!(u.sum(&Submodule::zero(&other, 2)), Err(Error::DimensionMismatch(_))));
        assert!(u.contains(&[ring.one()]).is_err());
    }

    #[test]
    fn json_round_trip_poly() {
        let ring = Arc::new(ChainRing::truncated_poly(2, 2, 2).unwrap());
        let rows = vec![vec![ring.elem(6), ring.elem(1)], vec![ring.elem(4), ring.elem(0)]];
        let u = Submodule::from_generators(&ring, 2, rows).unwrap();
        let json = serde_json::to_string(&u.to_json()).unwrap();
        let back: SubmoduleJson = serde_json::from_str(&json).unwrap();
        assert_eq!(Submodule::from_json(&ring, &back).unwrap(), u);
    }

    #[test]
    fn canonical_form_matches_brute_force_spans() {
        // Equal spans give equal forms and vice versa, over all pairs of generators
        for ring in [z4(), Arc::new(ChainRing::truncated_poly(2, 1, 2).unwrap())] {
            let vectors = all_vectors(&ring, 2);
            let mut seen: std::collections::HashMap<Submodule, std::collections::BTreeSet<Row>> = Default::default();
            for a in &vectors {
                for b in &vectors {
                    let u = Submodule::from_generators(&ring, 2, vec![a.clone(), b.clone()]).unwrap();
                    let span = brute_span(&ring, 2, &[a.clone(), b.clone()]);
                    assert_eq!(1usize << u.log_size(), span.len());
                    let prev = seen.entry(u).or_insert_with(|| span.clone());
                    assert_eq!(*prev, span);
                }
            }
            let distinct: std::collections::BTreeSet<_> = seen.values().cloned().collect();
            assert_eq!(distinct.len(), seen.len());
        }
    }
}
