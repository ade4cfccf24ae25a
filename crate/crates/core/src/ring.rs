//! Finite commutative chain rings.
//!
//! Two families are supported: the integers modulo `p^r` and the truncated
//! polynomial rings `F_q[t]/(t^r)` with `q = p^s`. Both share a single
//! element encoding: an element is stored as its base-`q` digit expansion
//! `code = sum_i c_i q^i` with `c_i` in the residue field. For `Z/p^r Z`
//! the digits are the `p`-adic digits of the integer; for `F_q[t]/(t^r)`
//! they are the coefficients of `1, t, t^2, ...`. In both cases the digit
//! index is the `pi`-adic position, so valuation, residue, truncation and
//! multiplication by powers of the uniformizer are plain digit operations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on `q^r` so that codes and products of codes fit comfortably.
const MAX_ORDER: u64 = 1 << 24;
/// Field tables are only built for non-prime residue fields up to this size.
const MAX_TABLE_FIELD: u32 = 1024;
/// Full ring tables are built for truncated-polynomial rings up to this order.
const MAX_RING_TABLE: u32 = 256;
/// Guard for [`ChainRing::elements`].
pub const ELEMENT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingKind {
    /// `Z/p^r Z`
    #[serde(rename = "integer-modular")]
    IntegerModular,
    /// `F_{p^s}[t]/(t^r)`
    #[serde(rename = "truncated-polynomial")]
    TruncatedPolynomial,
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::IntegerModular => f.write_str("integer-modular"),
            RingKind::TruncatedPolynomial => f.write_str("truncated-polynomial"),
        }
    }
}

/// The parameters that determine a chain ring; serialized as `{kind, p, s, r}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChainRingSpec {
    pub kind: RingKind,
    pub p: u32,
    pub s: u32,
    pub r: u32,
}

/// A ring element, stored as its canonical base-`q` code in `[0, q^r)`.
///
/// Elements carry no reference to their ring; every operation goes through
/// the owning [`ChainRing`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u32;
    while (k as u64) * (k as u64) <= n as u64 {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// The residue field `F_q`, `q = p^s`, with elements coded in base `p`.
#[derive(Clone, Debug)]
struct ResidueField {
    p: u32,
    s: u32,
    q: u32,
    /// Monic defining polynomial, coefficients `c_0..=c_s` (only for `s > 1`).
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl ResidueField {
    fn new(p: u32, s: u32) -> Result<Self> {
        let q = p
            .checked_pow(s)
            .ok_or_else(|| Error::InvalidRing(format!("p^s = {p}^{s} overflows")))?;
        if s == 1 {
            return Ok(ResidueField { p, s, q, modulus: vec![0, 1], add: vec![], mul: vec![] });
        }
        if q > MAX_TABLE_FIELD {
            return Err(Error::InvalidRing(format!(
                "residue field of size {q} exceeds the supported {MAX_TABLE_FIELD}"
            )));
        }
        let modulus = least_irreducible(p, s);
        let mut field = ResidueField { p, s, q, modulus, add: vec![], mul: vec![] };
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            for b in 0..q {
                add[a as usize * qs + b as usize] = field.add_slow(a, b);
                mul[a as usize * qs + b as usize] = field.mul_slow(a, b);
            }
        }
        // every nonzero element is invertible, so the modulus is irreducible
        for a in 1..q {
            assert!((1..q).any(|b| mul[a as usize * qs + b as usize] == 1), "F_{q} has no inverse for {a}");
        }
        field.add = add;
        field.mul = mul;
        Ok(field)
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = vec![0; self.s as usize];
        for d in out.iter_mut() {
            *d = a % self.p;
            a /= self.p;
        }
        out
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&sum)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s = self.s as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * s - 1];
        for i in 0..s {
            for j in 0..s {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        // reduce by the monic modulus, highest degree first
        for deg in (s..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for k in 0..s {
                let sub = c * self.modulus[k] as u64 % p;
                prod[deg - s + k] = (prod[deg - s + k] + p - sub) % p;
            }
        }
        let low: Vec<u32> = prod[..s].iter().map(|&x| x as u32).collect();
        self.undigits(&low)
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        if self.s == 1 {
            (a + b) % self.p
        } else {
            self.add[(a * self.q + b) as usize]
        }
    }

    #[inline]
    fn neg(&self, a: u32) -> u32 {
        if self.s == 1 {
            (self.p - a) % self.p
        } else {
            let d: Vec<u32> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
            self.undigits(&d)
        }
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if self.s == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else {
            self.mul[(a * self.q + b) as usize]
        }
    }

    fn format(&self, a: u32) -> String {
        if self.s == 1 || a < self.p {
            return a.to_string();
        }
        let terms: Vec<String> = self
            .digits(a)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| monomial(c, "a", k))
            .collect();
        format!("({})", terms.join("+"))
    }

    fn parse(&self, text: &str) -> Option<u32> {
        let text = text.trim();
        let inner = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(text);
        if let Ok(v) = inner.parse::<u32>() {
            return (v < self.p).then_some(v);
        }
        if self.s == 1 {
            return None;
        }
        let mut digits = vec![0u32; self.s as usize];
        for term in inner.split('+') {
            let (c, k) = parse_monomial(term.trim(), 'a')?;
            if c >= self.p || k >= self.s as usize {
                return None;
            }
            digits[k] = (digits[k] + c) % self.p;
        }
        Some(self.undigits(&digits))
    }
}

fn monomial(c: u32, var: &str, k: usize) -> String {
    match (k, c) {
        (0, _) => c.to_string(),
        (1, 1) => var.to_string(),
        (1, _) => format!("{c}{var}"),
        (_, 1) => format!("{var}^{k}"),
        _ => format!("{c}{var}^{k}"),
    }
}

/// Parses `c`, `var`, `c var`, `var^k`, `c var^k` (optional `*`).
fn parse_monomial(term: &str, var: char) -> Option<(u32, usize)> {
    match term.find(var) {
        None => term.parse().ok().map(|c| (c, 0)),
        Some(pos) => {
            let coeff = term[..pos].trim().trim_end_matches('*').trim();
            let c = if coeff.is_empty() { 1 } else { coeff.parse().ok()? };
            let rest = &term[pos + var.len_utf8()..];
            let k = match rest.strip_prefix('^') {
                Some(e) => e.parse().ok()?,
                None if rest.is_empty() => 1,
                None => return None,
            };
            Some((c, k))
        }
    }
}

/// Lowest monic irreducible polynomial of degree `s` over `F_p`, ordering the
/// non-leading coefficients `c_0..c_{s-1}` by the integer `sum c_i p^i`.
fn least_irreducible(p: u32, s: u32) -> Vec<u32> {
    let count = p.pow(s);
    for low in 0..count {
        let mut poly = Vec::with_capacity(s as usize + 1);
        let mut x = low;
        for _ in 0..s {
            poly.push(x % p);
            x /= p;
        }
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if poly[0] == 0 {
        return false;
    }
    for fdeg in 1..=deg / 2 {
        let total = p.pow(fdeg as u32);
        for low in 0..total {
            let mut f = Vec::with_capacity(fdeg + 1);
            let mut x = low;
            for _ in 0..fdeg {
                f.push(x % p);
                x /= p;
            }
            f.push(1);
            if poly_rem_is_zero(poly, &f, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(a: &[u32], monic: &[u32], p: u32) -> bool {
    let mut rem: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let fd = monic.len() - 1;
    let p = p as u64;
    for deg in (fd..rem.len()).rev() {
        let c = rem[deg] % p;
        if c == 0 {
            continue;
        }
        for k in 0..=fd {
            let idx = deg - fd + k;
            rem[idx] = (rem[idx] + p * p - c * monic[k] as u64 % p) % p;
        }
    }
    rem[..fd].iter().all(|&c| c % p == 0)
}

/// A finite commutative chain ring with residue field `F_q` and nilpotency
/// index `r` (`pi^r = 0`, `pi^(r-1) != 0`).
#[derive(Clone, Debug)]
pub struct ChainRing {
    spec: ChainRingSpec,
    q: u32,
    order: u32,
    pow_q: Vec<u32>,
    field: ResidueField,
    add_table: Vec<u32>,
    mul_table: Vec<u32>,
}

impl PartialEq for ChainRing {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for ChainRing {}

impl ChainRing {
    pub fn new(kind: RingKind, p: u32, s: u32, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("p = {p} is not prime")));
        }
        if s == 0 || r == 0 {
            return Err(Error::InvalidRing(format!("need s >= 1 and r >= 1, got s = {s}, r = {r}")));
        }
        if kind == RingKind::IntegerModular && s != 1 {
            return Err(Error::InvalidRing(format!("Z/p^r Z has residue field F_p; s must be 1, got {s}")));
        }
        let field = ResidueField::new(p, s)?;
        let q = field.q;
        let order = (q as u64).checked_pow(r).filter(|&o| o <= MAX_ORDER).ok_or_else(|| {
            Error::InvalidRing(format!("ring order q^r = {q}^{r} exceeds the supported {MAX_ORDER}"))
        })? as u32;
        let pow_q = (0..=r).map(|k| q.pow(k)).collect();
        let mut ring = ChainRing {
            spec: ChainRingSpec { kind, p, s, r },
            q,
            order,
            pow_q,
            field,
            add_table: vec![],
            mul_table: vec![],
        };
        if kind == RingKind::TruncatedPolynomial && order <= MAX_RING_TABLE {
            let n = order as usize;
            let mut add = vec![0; n * n];
            let mut mul = vec![0; n * n];
            for a in 0..order {
                for b in 0..order {
                    add[a as usize * n + b as usize] = ring.poly_add(a, b);
                    mul[a as usize * n + b as usize] = ring.poly_mul(a, b);
                }
            }
            ring.add_table = add;
            ring.mul_table = mul;
        }
        Ok(ring)
    }

    pub fn from_spec(spec: ChainRingSpec) -> Result<Self> {
        Self::new(spec.kind, spec.p, spec.s, spec.r)
    }

    /// `Z/p^r Z`.
    pub fn integers_mod(p: u32, r: u32) -> Result<Self> {
        Self::new(RingKind::IntegerModular, p, 1, r)
    }

    /// `F_{p^s}[t]/(t^r)`.
    pub fn truncated_poly(p: u32, s: u32, r: u32) -> Result<Self> {
        Self::new(RingKind::TruncatedPolynomial, p, s, r)
    }

    /// The same kind of ring with a different nilpotency index, e.g. `R/pi^m R`.
    pub fn with_nilpotency(&self, m: u32) -> Result<Self> {
        Self::new(self.spec.kind, self.spec.p, self.spec.s, m)
    }

    pub fn spec(&self) -> ChainRingSpec {
        self.spec
    }

    pub fn kind(&self) -> RingKind {
        self.spec.kind
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn s(&self) -> u32 {
        self.spec.s
    }

    /// Nilpotency index of the maximal ideal.
    pub fn r(&self) -> u32 {
        self.spec.r
    }

    /// Size of the residue field.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// `|R| = q^r`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `|R^x| = q^r - q^(r-1)`.
    pub fn unit_count(&self) -> u32 {
        self.order - self.order / self.q
    }

    /// Defining polynomial of the residue field, `c_0..=c_s`, monic.
    pub fn residue_modulus(&self) -> &[u32] {
        &self.field.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(1 % self.order)
    }

    /// The uniformizer (`p` or `t`).
    pub fn pi(&self) -> Elem {
        self.pi_pow(1)
    }

    pub fn pi_pow(&self, k: u32) -> Elem {
        if k >= self.r() {
            Elem(0)
        } else {
            Elem(self.pow_q[k as usize])
        }
    }

    /// Builds an element from its code, reducing modulo `q^r`.
    pub fn elem(&self, code: u32) -> Elem {
        Elem(code % self.order)
    }

    fn digit(&self, code: u32, i: usize) -> u32 {
        code / self.pow_q[i] % self.q
    }

    fn poly_add(&self, a: u32, b: u32) -> u32 {
        let mut out = 0;
        for i in (0..self.r() as usize).rev() {
            out = out * self.q + self.field.add(self.digit(a, i), self.digit(b, i));
        }
        out
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let r = self.r() as usize;
        let da: Vec<u32> = (0..r).map(|i| self.digit(a, i)).collect();
        let db: Vec<u32> = (0..r).map(|i| self.digit(b, i)).collect();
        let mut prod = vec![0u32; r];
        for i in 0..r {
            if da[i] == 0 {
                continue;
            }
            for j in 0..r - i {
                let t = self.field.mul(da[i], db[j]);
                prod[i + j] = self.field.add(prod[i + j], t);
            }
        }
        prod.iter().rev().fold(0, |acc, &c| acc * self.q + c)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match self.spec.kind {
            RingKind::IntegerModular => Elem(((a.0 as u64 + b.0 as u64) % self.order as u64) as u32),
            RingKind::TruncatedPolynomial if !self.add_table.is_empty() => {
                Elem(self.add_table[(a.0 * self.order + b.0) as usize])
            }
            RingKind::TruncatedPolynomial => Elem(self.poly_add(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match self.spec.kind {
            RingKind::IntegerModular => Elem((self.order - a.0) % self.order),
            RingKind::TruncatedPolynomial => {
                let mut out = 0;
                for i in (0..self.r() as usize).rev() {
                    out = out * self.q + self.field.neg(self.digit(a.0, i));
                }
                Elem(out)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match self.spec.kind {
            RingKind::IntegerModular => Elem(((a.0 as u64 * b.0 as u64) % self.order as u64) as u32),
            RingKind::TruncatedPolynomial if !self.mul_table.is_empty() => {
                Elem(self.mul_table[(a.0 * self.order + b.0) as usize])
            }
            RingKind::TruncatedPolynomial => Elem(self.poly_mul(a.0, b.0)),
        }
    }

    pub fn pow(&self, mut base: Elem, mut exp: u64) -> Elem {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a unit, via `x^(|R^x| - 1)`.
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if !self.is_unit(a) {
            return Err(Error::NotUnit(self.format(a)));
        }
        Ok(self.pow(a, self.unit_count() as u64 - 1))
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.valuation(a) == 0
    }

    /// `pi`-adic valuation; `valuation(0) = r`.
    pub fn valuation(&self, a: Elem) -> u32 {
        if a.0 == 0 {
            return self.r();
        }
        let mut v = 0;
        let mut x = a.0;
        while x % self.q == 0 {
            x /= self.q;
            v += 1;
        }
        v
    }

    /// A unit `u` with `a = u * pi^valuation(a)` (the digit shift of `a`;
    /// `1` for zero).
    pub fn unit_part(&self, a: Elem) -> Elem {
        if a.0 == 0 {
            return self.one();
        }
        let v = self.valuation(a);
        Elem(a.0 / self.pow_q[v as usize])
    }

    /// `pi^k * a`.
    pub fn mul_pi(&self, a: Elem, k: u32) -> Elem {
        if k >= self.r() {
            return Elem(0);
        }
        Elem(((a.0 as u64 * self.pow_q[k as usize] as u64) % self.order as u64) as u32)
    }

    /// The representative `b` of `a / pi^k` whose top `k` digits vanish.
    /// Requires `valuation(a) >= k`.
    pub fn div_pi(&self, a: Elem, k: u32) -> Elem {
        debug_assert!(self.valuation(a) >= k);
        if k >= self.r() {
            return Elem(0);
        }
        Elem(a.0 / self.pow_q[k as usize])
    }

    /// The canonical representative of `a + pi^k R` (low `k` digits).
    pub fn reduce_mod_pi(&self, a: Elem, k: u32) -> Elem {
        if k >= self.r() {
            return a;
        }
        Elem(a.0 % self.pow_q[k as usize])
    }

    /// Image in the residue field `F_q`, as a field code in `[0, q)`.
    pub fn residue(&self, a: Elem) -> u32 {
        a.0 % self.q
    }

    /// The constant lift of a residue-field element.
    pub fn canonical_lift(&self, a: u32) -> Elem {
        assert!(a < self.q, "residue code {a} out of range for F_{}", self.q);
        Elem(a)
    }

    /// Lifts an element of `R / pi^m R` (given by its code in that ring)
    /// to `R` by zero-padding its higher `pi`-adic digits.
    pub fn lift_from_quotient(&self, code: u32, m: u32) -> Elem {
        assert!(m <= self.r(), "quotient level {m} exceeds r = {}", self.r());
        Elem(code % self.pow_q[m as usize])
    }

    /// All `q^r` elements, in increasing code order.
    pub fn elements(&self) -> Result<impl Iterator<Item = Elem>> {
        if self.order as u64 > ELEMENT_BUDGET {
            return Err(Error::BudgetExceeded { what: "ring elements".into(), predicted: self.order as u64, budget: ELEMENT_BUDGET });
        }
        Ok((0..self.order).map(Elem))
    }

    pub fn format(&self, a: Elem) -> String {
        match self.spec.kind {
            RingKind::IntegerModular => a.0.to_string(),
            RingKind::TruncatedPolynomial => {
                if a.0 == 0 {
                    return "0".into();
                }
                let terms: Vec<String> = (0..self.r() as usize)
                    .filter_map(|k| {
                        let c = self.digit(a.0, k);
                        (c != 0).then(|| {
                            let coeff = self.field.format(c);
                            match (k, c) {
                                (0, _) => coeff,
                                (_, 1) if k == 1 => "t".into(),
                                (_, 1) => format!("t^{k}"),
                                _ if k == 1 => format!("{coeff}t"),
                                _ => format!("{coeff}t^{k}"),
                            }
                        })
                    })
                    .collect();
                terms.join("+")
            }
        }
    }

    /// Inverse of [`ChainRing::format`]. Integers are accepted for both kinds
    /// (for polynomial rings an integer is read as a raw element code).
    pub fn parse(&self, text: &str) -> Result<Elem> {
        let text = text.trim();
        let bad = || Error::Parse(format!("cannot read ring element {text:?}"));
        if let Ok(v) = text.parse::<u64>() {
            return match self.spec.kind {
                RingKind::IntegerModular => Ok(Elem((v % self.order as u64) as u32)),
                RingKind::TruncatedPolynomial if v < self.order as u64 => Ok(Elem(v as u32)),
                RingKind::TruncatedPolynomial => Err(bad()),
            };
        }
        if self.spec.kind == RingKind::IntegerModular {
            return Err(bad());
        }
        let mut digits = vec![0u32; self.r() as usize];
        for term in split_terms(text) {
            let term = term.trim();
            let (coeff, k) = match term.find('t') {
                None => (term, 0usize),
                Some(pos) => {
                    let rest = &term[pos + 1..];
                    let k = match rest.strip_prefix('^') {
                        Some(e) => e.parse().map_err(|_| bad())?,
                        None if rest.is_empty() => 1,
                        None => return Err(bad()),
                    };
                    (term[..pos].trim_end_matches('*'), k)
                }
            };
            let c = if coeff.is_empty() { 1 } else { self.field.parse(coeff).ok_or_else(bad)? };
            if k >= digits.len() {
                continue; // t^k = 0 for k >= r
            }
            digits[k] = self.field.add(digits[k], c);
        }
        Ok(Elem(digits.iter().rev().fold(0, |acc, &c| acc * self.q + c)))
    }
}

/// Splits on `+` outside parentheses.
fn split_terms(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

impl fmt::Display for ChainRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ChainRingSpec { kind, p, s, r } = self.spec;
        match kind {
            RingKind::IntegerModular => write!(f, "Z/{}Z", self.order),
            RingKind::TruncatedPolynomial if s == 1 => write!(f, "F_{p}[t]/(t^{r})"),
            RingKind::TruncatedPolynomial => write!(f, "F_{}[t]/(t^{r})", self.q),
        }
    }
}

impl FromStr for RingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z" | "integer-modular" => Ok(RingKind::IntegerModular),
            "poly" | "truncated-polynomial" => Ok(RingKind::TruncatedPolynomial),
            other => Err(Error::Parse(format!("unknown ring kind {other:?}"))),
        }
    }
}
