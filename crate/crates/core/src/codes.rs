//! Code constructions: Sperner codes from lifted Grassmannians, permutation
//! codes in one apartment, free codes and star configurations, with the
//! closed-form cardinalities they are measured against.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::counting::{self, EdType};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::howell::Row;
use crate::metric::{self, DistanceMatrix};
use crate::ring::{ChainRing, ChainRingSpec};
use crate::submodule::{diagonal_module, HomothetyClass, Submodule, SubmoduleJson};

/// How a code was produced, e.g. `{"kind": "sperner", "params": {"alpha": 2}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Construction {
    pub kind: String,
    pub params: serde_json::Value,
}

impl Construction {
    pub fn new(kind: &str, params: serde_json::Value) -> Self {
        Construction { kind: kind.into(), params }
    }
}

/// At least two distinct homothety classes of `R^d`, kept sorted.
#[derive(Clone, Debug)]
pub struct Code {
    ring: Arc<ChainRing>,
    d: usize,
    members: Vec<HomothetyClass>,
    construction: Construction,
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.members == other.members && self.construction == other.construction
    }
}

impl Code {
    pub fn new(ring: &Arc<ChainRing>, d: usize, members: Vec<HomothetyClass>, construction: Construction) -> Result<Self> {
        let set: BTreeSet<HomothetyClass> = members.iter().cloned().collect();
        if set.len() != members.len() {
            return Err(Error::InvalidParameter("code members must be distinct".into()));
        }
        if set.len() < 2 {
            return Err(Error::InvalidParameter("a code needs at least two members".into()));
        }
        if let Some(bad) = set.iter().find(|c| c.rep().d() != d || c.rep().ring().spec() != ring.spec()) {
            return Err(Error::DimensionMismatch(format!("member {} is not a submodule of {}^{d}", bad.rep(), ring)));
        }
        Ok(Code { ring: ring.clone(), d, members: set.into_iter().collect(), construction })
    }

    pub fn ring(&self) -> &Arc<ChainRing> {
        &self.ring
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn members(&self) -> &[HomothetyClass] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    /// Every member lies on the boundary.
    pub fn is_spherical(&self) -> bool {
        self.members.iter().all(HomothetyClass::is_boundary)
    }

    pub fn distance_matrix(&self) -> DistanceMatrix {
        metric::half_distance_matrix(&self.members)
    }

    pub fn min_distance(&self) -> u32 {
        self.distance_matrix().min_distance().expect("codes have two or more members")
    }

    pub fn to_json(&self) -> CodeJson {
        CodeJson {
            ring: self.ring.spec(),
            d: self.d,
            construction: self.construction.clone(),
            members: self.members.iter().map(|c| c.rep().to_json()).collect(),
            min_distance: self.min_distance(),
            cardinality: self.len(),
        }
    }

    /// Rebuilds a code and checks the recorded cardinality and distance.
    pub fn from_json(json: &CodeJson) -> Result<Code> {
        let ring = Arc::new(ChainRing::from_spec(json.ring)?);
        let members = json
            .members
            .iter()
            .map(|m| Submodule::from_json(&ring, m).map(|u| HomothetyClass::of(&u)))
            .collect::<Result<Vec<_>>>()?;
        let code = Code::new(&ring, json.d, members, json.construction.clone())?;
        if code.len() != json.cardinality {
            return Err(Error::Parse(format!("cardinality {} recorded, {} members found", json.cardinality, code.len())));
        }
        let m = code.min_distance();
        if m != json.min_distance {
            return Err(Error::Parse(format!("min_distance {} recorded, {m} computed", json.min_distance)));
        }
        Ok(code)
    }
}

/// Wire form of a [`Code`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeJson {
    pub ring: ChainRingSpec,
    pub d: usize,
    pub construction: Construction,
    pub members: Vec<SubmoduleJson>,
    pub min_distance: u32,
    pub cardinality: usize,
}

/// Maps generator rows over `R / pi^m` (first argument) to rows over `R`.
pub type Lift<'a> = &'a dyn Fn(&ChainRing, &ChainRing, &[Row]) -> Vec<Row>;

/// Entrywise zero-padding of the `pi`-adic digits.
pub fn canonical_lift(quotient: &ChainRing, ring: &ChainRing, rows: &[Row]) -> Vec<Row> {
    let m = quotient.r();
    rows.iter().map(|row| row.iter().map(|&x| ring.lift_from_quotient(x.code(), m)).collect()).collect()
}

fn check_alpha(ring: &ChainRing, alpha: u32) -> Result<()> {
    if alpha < 1 || alpha > ring.r() {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} outside 1..={}", ring.r())));
    }
    Ok(())
}

fn check_rank(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("codes need d >= 2, got {d}")));
    }
    Ok(())
}

/// Sperner code with minimum distance at least `2 alpha`, using the canonical lift.
pub fn sperner_code(ring: &Arc<ChainRing>, d: usize, alpha: u32, budget: u64) -> Result<Code> {
    sperner_code_with_lift(ring, d, alpha, budget, &canonical_lift)
}

/// Lifts `Gr(e, (R/pi^m)^d)` to `R^d` with `m = r + 1 - alpha`, `e = ceil(d/2)`.
///
/// Panics if the lift breaks the defining property: `U -> pi^(alpha-1) U`
/// must be a bijection onto the free rank-`e` submodules of `pi^(alpha-1) V_r`.
pub fn sperner_code_with_lift(ring: &Arc<ChainRing>, d: usize, alpha: u32, budget: u64, lift: Lift<'_>) -> Result<Code> {
    check_rank(d)?;
    check_alpha(ring, alpha)?;
    let r = ring.r();
    let m = r + 1 - alpha;
    let e = d.div_ceil(2);
    let quotient = Arc::new(ring.with_nilpotency(m)?);
    let bases = enumerate::grassmannian_bases(&quotient, d, e, budget)?;
    let mut members = Vec::with_capacity(bases.len());
    let mut images = BTreeSet::new();
    for basis in &bases {
        let u = Submodule::span(ring, d, lift(&quotient, ring, basis));
        assert!(u.is_boundary(), "lifted module {u} is not on the boundary");
        let image = u.scale_pi(alpha - 1);
        let mut expected = vec![r; d];
        for x in expected.iter_mut().skip(d - e) {
            *x = alpha - 1;
        }
        assert_eq!(image.ed_type(), expected, "pi^(alpha-1) {u} is not free of rank {e} in pi^(alpha-1) V_r");
        assert!(images.insert(image), "two lifts collide after scaling by pi^(alpha-1)");
        members.push(HomothetyClass::of(&u));
    }
    let target = counting::grassmannian_count(d as u32, e as u32, ring.q(), m)?;
    assert_eq!(BigInt::from(images.len()), target, "lifted Grassmannian has the wrong size");
    let code = Code::new(ring, d, members, Construction::new("sperner", serde_json::json!({ "alpha": alpha })))?;
    let dist = code.min_distance();
    assert!(dist >= 2 * alpha, "Sperner code with alpha = {alpha} has minimum distance {dist}");
    Ok(code)
}

/// `binom(d, e)_{q^{-1}} q^((r+1-alpha) e (d-e))` with `e = ceil(d/2)`.
pub fn sperner_lower_bound(d: u32, q: u32, r: u32, alpha: u32) -> Result<BigInt> {
    if alpha < 1 || alpha > r {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} outside 1..={r}")));
    }
    counting::grassmannian_count(d, d.div_ceil(2), q, r + 1 - alpha)
}

/// Distinct permutations of `v` in lexicographic order.
pub fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

fn check_boundary_type(ring: &ChainRing, eps: &EdType) -> Result<()> {
    if !eps.is_boundary(ring.r()) {
        return Err(Error::InvalidParameter(format!("type {:?} does not start with r = {}", eps.eps(), ring.r())));
    }
    Ok(())
}

/// The classes `[U_delta]` for `delta` in the `Sym(d)`-orbit of `eps`.
pub fn permutation_code(ring: &Arc<ChainRing>, eps: &EdType) -> Result<Code> {
    check_boundary_type(ring, eps)?;
    let members = distinct_permutations(eps.eps())
        .iter()
        .map(|delta| {
            let u = diagonal_module(ring, delta)?;
            assert!(u.is_boundary(), "U_{delta:?} is not on the boundary");
            Ok(HomothetyClass::of(&u))
        })
        .collect::<Result<Vec<_>>>()?;
    Code::new(ring, eps.d(), members, Construction::new("perm", serde_json::json!({ "eps": eps.eps() })))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(d! / prod m_s!, 2 * least gap between consecutive distinct values)`.
pub fn perm_card_dist(eps: &EdType) -> Result<(BigInt, u32)> {
    if eps.ell() == 0 {
        return Err(Error::InvalidParameter("the zero type has a single permutation".into()));
    }
    let card = eps.multiplicities().iter().fold(factorial(eps.d() as u64), |acc, &m| acc / factorial(m as u64));
    let gap = *eps.gaps().iter().min().unwrap();
    Ok((card, 2 * gap))
}

/// Largest minimum distance of a permutation code with `ell + 1` distinct values: `2 floor(r / ell)`.
pub fn perm_distance_bound(r: u32, ell: u32) -> Result<u32> {
    if ell == 0 {
        return Err(Error::InvalidParameter("ell must be positive".into()));
    }
    Ok(2 * (r / ell))
}

/// Two answers to "largest permutation code with minimum distance `2 alpha`".
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PermCardinalityBound {
    /// `d! / ((beta!)^(X+1) (beta+1)^gamma)` with `r = alpha X + Y`, `d = beta X + gamma`, `gamma < X`.
    pub formula: String,
    /// Exact maximum of the multinomial over boundary types with every gap at least `alpha`.
    pub exhaustive: String,
    /// A type attaining the exhaustive value.
    pub witness: Vec<u32>,
    pub agree: bool,
}

pub fn perm_cardinality_bound(d: u32, r: u32, alpha: u32) -> Result<PermCardinalityBound> {
    if alpha < 1 || alpha > r {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} outside 1..={r}")));
    }
    if d < 2 {
        return Err(Error::InvalidParameter(format!("d = {d} must be at least 2")));
    }
    let x = r / alpha;
    let (beta, gamma) = (d / x, d % x);
    let denom = num_traits::pow(factorial(beta as u64), (x + 1) as usize) * num_traits::pow(BigInt::from(beta + 1), gamma as usize);
    let formula = BigRational::new(factorial(d as u64), denom);

    let mut best: Option<(BigInt, Vec<u32>)> = None;
    for eps in counting::boundary_ed_types(d as usize, r) {
        if eps.gaps().iter().all(|&g| g >= alpha) {
            let (card, _) = perm_card_dist(&eps)?;
            if best.as_ref().is_none_or(|(b, _)| card > *b) {
                best = Some((card, eps.eps().to_vec()));
            }
        }
    }
    let (exhaustive, witness) = best.expect("(r, 0, ..., 0) always qualifies");
    let agree = formula.is_integer() && formula.to_integer() == exhaustive;
    Ok(PermCardinalityBound { formula: formula.to_string(), exhaustive: exhaustive.to_string(), witness, agree })
}

/// The `binom(d, n)` coordinate submodules `⊕_{i in S} R e_i` with `|S| = n`.
pub fn free_code(ring: &Arc<ChainRing>, d: usize, n: usize) -> Result<Code> {
    if n < 1 || n >= d {
        return Err(Error::InvalidParameter(format!("free code rank n = {n} outside 1..{d}")));
    }
    let r = ring.r();
    let mut eps = vec![r; d - n];
    eps.resize(d, 0);
    let perm = permutation_code(ring, &EdType::new(eps)?)?;
    let code = Code { construction: Construction::new("free", serde_json::json!({ "n": n })), ..perm };
    assert_eq!(BigInt::from(code.len()), counting::binomial(d as u64, n as u64));
    assert_eq!(code.min_distance(), 2 * r);
    Ok(code)
}

/// `R e_1, ..., R e_d` and `R (e_1 + ... + e_d)`: any `d` of them sum to `V_r`.
pub fn star_configuration(ring: &Arc<ChainRing>, d: usize) -> Result<Code> {
    check_rank(d)?;
    let r = ring.r();
    let mut modules: Vec<Submodule> =
        (0..d).map(|i| Submodule::span(ring, d, vec![crate::submodule::unit_vector(ring, d, i)])).collect();
    modules.push(Submodule::span(ring, d, vec![vec![ring.one(); d]]));
    let mut rank_one = vec![r; d];
    rank_one[d - 1] = 0;
    let full = Submodule::full(ring, d);
    for (i, u) in modules.iter().enumerate() {
        assert_eq!(u.ed_type(), rank_one, "{u} is not free of rank one");
        let rest = modules
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(Submodule::zero(ring, d), |acc, (_, w)| acc.sum(w).expect("same ambient module"));
        assert_eq!(rest, full, "the modules other than {u} do not span V_r");
    }
    let code = Code::new(
        ring,
        d,
        modules.iter().map(HomothetyClass::of).collect(),
        Construction::new("star", serde_json::json!({})),
    )?;
    assert_eq!(code.len(), d + 1);
    assert_eq!(code.min_distance(), 2 * r);
    Ok(code)
}

/// `u_i - u_j <= m_ij` for all `i, j`.
pub fn pyrope_contains(m: &[Vec<i64>], u: &[i64]) -> bool {
    assert!(m.iter().enumerate().all(|(i, row)| row.len() == u.len() && row[i] == 0), "malformed pyrope matrix");
    (0..u.len()).all(|i| (0..u.len()).all(|j| u[i] - u[j] <= m[i][j]))
}

/// Integral points of `Q(r J_d)` modulo `Z 1`, normalized to minimum entry `0`.
pub fn pyrope_integral_points(d: usize, r: u32) -> Vec<Vec<u32>> {
    let rj: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| if i == j { 0 } else { r as i64 }).collect()).collect();
    let side = r as u64 + 1;
    let mut out = Vec::new();
    for code in 0..side.pow(d as u32) {
        let point: Vec<u32> = (0..d).map(|i| ((code / side.pow(i as u32)) % side) as u32).collect();
        let as_i64: Vec<i64> = point.iter().map(|&x| x as i64).collect();
        if point.contains(&0) && pyrope_contains(&rj, &as_i64) {
            out.push(point);
        }
    }
    out.sort();
    out
}

/// The diagonal class for each pyrope point; the classes are pairwise distinct.
pub fn pyrope_classes(ring: &Arc<ChainRing>, d: usize) -> Result<Vec<(Vec<u32>, HomothetyClass)>> {
    let points = pyrope_integral_points(d, ring.r());
    let expected = (ring.r() as u64 + 1).pow(d as u32) - (ring.r() as u64).pow(d as u32);
    assert_eq!(points.len() as u64, expected);
    let pairs = points
        .into_iter()
        .map(|p| Ok((p.clone(), HomothetyClass::of(&diagonal_module(ring, &p)?))))
        .collect::<Result<Vec<_>>>()?;
    let distinct: BTreeSet<&HomothetyClass> = pairs.iter().map(|(_, c)| c).collect();
    assert_eq!(distinct.len(), pairs.len(), "pyrope points give repeated classes");
    Ok(pairs)
}

/// Tropical sum (min).
pub fn trop_min(a: i64, b: i64) -> i64 {
    a.min(b)
}

/// Tropical sum (max).
pub fn trop_max(a: i64, b: i64) -> i64 {
    a.max(b)
}

/// Tropical product.
pub fn trop_mul(a: i64, b: i64) -> i64 {
    a + b
}

/// Largest spherical code at distance `2r`: `binom(d, e)_{q^{-1}} q^(e (d-e))`, for any `r`.
pub fn exact_card_maxdist(d: u32, q: u32) -> Result<BigInt> {
    counting::grassmannian_count(d, d.div_ceil(2), q, 1)
}

/// Largest code in rank two at distance `2 alpha`: `(q + 1) q^(r - alpha)`.
pub fn exact_card_d2(q: u32, r: u32, alpha: u32) -> Result<BigInt> {
    if alpha < 1 || alpha > r {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} outside 1..={r}")));
    }
    Ok(BigInt::from(q + 1) * num_traits::pow(BigInt::from(q), (r - alpha) as usize))
}

/// Replaces each member `U` by the free part `H` of `U = X ⊕ H`.
pub fn free_reduction(code: &Code) -> Result<Code> {
    let members = code
        .members
        .iter()
        .map(|c| c.rep().free_part().map(|(_, h)| HomothetyClass::of(&h)))
        .collect::<Result<Vec<_>>>()?;
    Code::new(&code.ring, code.d, members, Construction::new("free-reduction", code.construction.params.clone()))
}
