//! Counting polynomials: Gaussian binomials, Grassmannian sizes, and the
//! polynomials `b_eps(X)` whose sum over all elementary-divisor types counts
//! the homothety classes in a ball.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::polynomial::IntPolynomial;
use crate::ring::is_prime;

/// A homothety-normalized elementary-divisor type: a weakly decreasing
/// vector of nonnegative integers whose last entry is `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdType {
    eps: Vec<u32>,
}

impl EdType {
    pub fn new(eps: Vec<u32>) -> Result<Self> {
        if eps.is_empty() {
            return Err(Error::InvalidParameter("empty divisor type".into()));
        }
        if eps.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!("divisor type {eps:?} is not weakly decreasing")));
        }
        if *eps.last().unwrap() != 0 {
            return Err(Error::InvalidParameter(format!("divisor type {eps:?} must end in 0")));
        }
        Ok(EdType { eps })
    }

    pub fn eps(&self) -> &[u32] {
        &self.eps
    }

    pub fn d(&self) -> usize {
        self.eps.len()
    }

    /// Largest entry.
    pub fn top(&self) -> u32 {
        self.eps[0]
    }

    /// Member of the boundary set: first entry equal to `r`.
    pub fn is_boundary(&self, r: u32) -> bool {
        self.eps[0] == r
    }

    /// Distinct values, strictly decreasing and ending in `0`.
    pub fn distinct_values(&self) -> Vec<u32> {
        let mut v = self.eps.clone();
        v.dedup();
        v
    }

    /// Number of distinct values minus one.
    pub fn ell(&self) -> usize {
        self.distinct_values().len() - 1
    }

    /// Multiplicity of each distinct value, in the order of [`Self::distinct_values`].
    pub fn multiplicities(&self) -> Vec<usize> {
        self.distinct_values().iter().map(|&v| self.eps.iter().filter(|&&e| e == v).count()).collect()
    }

    /// Jump positions `i_s = #{i : eps_i >= value_s}` for `s = 1..=ell`.
    pub fn jumps(&self) -> Vec<usize> {
        let values = self.distinct_values();
        values[..values.len() - 1].iter().map(|&v| self.eps.iter().filter(|&&e| e >= v).count()).collect()
    }

    /// Gaps `value_s - value_{s+1}` attached to each jump position.
    pub fn gaps(&self) -> Vec<u32> {
        self.distinct_values().windows(2).map(|w| w[0] - w[1]).collect()
    }

    /// `sum_{i<j} (eps_i - eps_j)`.
    pub fn pairwise_difference_sum(&self) -> u64 {
        let mut total = 0u64;
        for i in 0..self.eps.len() {
            for j in i + 1..self.eps.len() {
                total += (self.eps[i] - self.eps[j]) as u64;
            }
        }
        total
    }
}

/// All types with entries in `{0..r}` and `d` coordinates, in increasing
/// lexicographic order.
pub fn ed_types(d: usize, r: u32) -> Vec<EdType> {
    fn rec(prefix: &mut Vec<u32>, remaining: usize, bound: u32, out: &mut Vec<EdType>) {
        if remaining == 1 {
            prefix.push(0);
            out.push(EdType { eps: prefix.clone() });
            prefix.pop();
            return;
        }
        for v in 0..=bound {
            prefix.push(v);
            rec(prefix, remaining - 1, v, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    rec(&mut Vec::with_capacity(d), d, r, &mut out);
    out
}

/// Types with first entry `r`.
pub fn boundary_ed_types(d: usize, r: u32) -> Vec<EdType> {
    ed_types(d, r).into_iter().filter(|e| e.is_boundary(r)).collect()
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// The Gaussian binomial `prod_{i<b} (1 - X^(a-i)) / (1 - X^(b-i))`, by exact division.
pub fn gauss_binomial(a: u32, b: u32) -> Result<IntPolynomial> {
    if b > a {
        return Err(Error::InvalidParameter(format!("Gaussian binomial needs a >= b, got ({a}, {b})")));
    }
    let factor = |k: u32| &IntPolynomial::one() - &IntPolynomial::monomial(1, k as i64);
    let num = (0..b).fold(IntPolynomial::one(), |acc, i| &acc * &factor(a - i));
    let den = (0..b).fold(IntPolynomial::one(), |acc, i| &acc * &factor(b - i));
    let out = num.div_exact(&den).expect("Gaussian binomial quotient is exact");
    debug_assert_eq!(out.degree(), Some((b * (a - b)) as i64));
    Ok(out)
}

/// The Gaussian multinomial for the flag type `0 < i_1 < ... < i_l < d`:
/// `binom(d, i_l) binom(i_l, i_(l-1)) ... binom(i_2, i_1)`.
pub fn gauss_multinomial(d: u32, jumps: &[usize]) -> Result<IntPolynomial> {
    let mut acc = IntPolynomial::one();
    let mut upper = d;
    for &i in jumps.iter().rev() {
        acc = &acc * &gauss_binomial(upper, i as u32)?;
        upper = i as u32;
    }
    Ok(acc)
}

/// `binom(d; I)_{X^{-1}} * X^(sum_{i in I} r_i i (d - i))`.
pub fn gauss_binomial_at_inverse_times_power(d: u32, jumps: &[usize], gaps: &[u32]) -> Result<IntPolynomial> {
    if jumps.len() != gaps.len() {
        return Err(Error::InvalidParameter(format!("{} jump positions but {} gaps", jumps.len(), gaps.len())));
    }
    if jumps.windows(2).any(|w| w[0] >= w[1]) || jumps.iter().any(|&i| i == 0 || i as u32 >= d) {
        return Err(Error::InvalidParameter(format!("jump positions {jumps:?} must increase within 1..{d}")));
    }
    if gaps.contains(&0) {
        return Err(Error::InvalidParameter("gaps must be positive".into()));
    }
    let exponent: u64 = jumps.iter().zip(gaps).map(|(&i, &g)| g as u64 * (i as u64) * (d as u64 - i as u64)).sum();
    let out = gauss_multinomial(d, jumps)?.invert_variable().shift(exponent as i64);
    assert!(out.is_polynomial(), "negative powers survived in {out}");
    Ok(out)
}

/// `b_eps(X)`: counts homothety classes of elementary-divisor type `eps`.
pub fn b_epsilon(eps: &EdType) -> IntPolynomial {
    let d = eps.d() as u32;
    let jumps = eps.jumps();
    let gaps = eps.gaps();
    let out = gauss_binomial_at_inverse_times_power(d, &jumps, &gaps).expect("jumps and gaps of a valid type");
    assert!(out.is_monic(), "b_eps not monic: {out}");
    let degree: u64 = jumps.iter().zip(&gaps).map(|(&i, &g)| g as u64 * i as u64 * (d as u64 - i as u64)).sum();
    assert_eq!(out.degree(), Some(degree as i64));
    assert_eq!(degree, eps.pairwise_difference_sum());
    out
}

/// `b_r^(d)(X) = sum over all types of b_eps(X)`.
pub fn ball_polynomial(d: u32, r: u32, budget: u64) -> Result<IntPolynomial> {
    if d < 2 || r < 1 {
        return Err(Error::InvalidParameter(format!("ball polynomial needs d >= 2 and r >= 1, got d = {d}, r = {r}")));
    }
    let count = binomial((r + d - 1) as u64, (d - 1) as u64).to_u64().unwrap_or(u64::MAX);
    if count > budget {
        return Err(Error::BudgetExceeded { what: "divisor types".into(), predicted: count, budget });
    }
    let types = ed_types(d as usize, r);
    assert_eq!(types.len() as u64, count);
    Ok(types.iter().map(b_epsilon).sum())
}

/// `sum over boundary types of b_eps(X)`: the size of the sphere of radius `r`.
pub fn sphere_polynomial(d: u32, r: u32) -> Result<IntPolynomial> {
    if d < 2 || r < 1 {
        return Err(Error::InvalidParameter(format!("sphere polynomial needs d >= 2 and r >= 1, got d = {d}, r = {r}")));
    }
    Ok(boundary_ed_types(d as usize, r).iter().map(b_epsilon).sum())
}

pub fn is_prime_power(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|&k| q % k == 0).unwrap();
    let mut x = q;
    while x % p == 0 {
        x /= p;
    }
    x == 1 && is_prime(p)
}

/// `|Gr(n, V_r)| = binom(d, n)_{q^{-1}} q^(r n (d - n))`.
pub fn grassmannian_count(d: u32, n: u32, q: u32, r: u32) -> Result<BigInt> {
    if n < 1 || n >= d {
        return Err(Error::InvalidParameter(format!("Grassmannian rank n = {n} outside 1..{d}")));
    }
    if !is_prime_power(q) {
        return Err(Error::InvalidParameter(format!("q = {q} is not a prime power")));
    }
    let shift = (r * n * (d - n)) as i64;
    Ok(gauss_binomial(d, n)?.invert_variable().shift(shift).eval(q as i64))
}

/// Predicted leading term `(coefficient, degree)` of `b_r^(d)(X)`.
pub fn leading_term(d: u32, r: u32) -> Result<(BigInt, u64)> {
    if d < 2 || r < 1 {
        return Err(Error::InvalidParameter(format!("leading term needs d >= 2 and r >= 1, got d = {d}, r = {r}")));
    }
    let (d, r) = (d as u64, r as u64);
    Ok(if d % 2 == 0 { (BigInt::from(1), d * d * r / 4) } else { (BigInt::from(r + 1), (d * d - 1) * r / 4) })
}

/// Checks the degree relations between two types:
/// with `k = None`, `eps + rev(eps') = lambda * 1` must give equal degrees;
/// with `k = Some(k)` (1-based), `eps - eps' = lambda e_k` must give
/// `deg b_eps = deg b_eps' + (d + 1 - 2k) lambda`.
pub fn degree_relations_check(eps: &EdType, eps_prime: &EdType, lambda: u32, k: Option<usize>) -> Result<bool> {
    let d = eps.d();
    if eps_prime.d() != d {
        return Err(Error::DimensionMismatch(format!("types of length {d} and {}", eps_prime.d())));
    }
    let deg = |e: &EdType| b_epsilon(e).degree().unwrap_or(0);
    match k {
        None => {
            let holds = eps.eps().iter().zip(eps_prime.eps().iter().rev()).all(|(&a, &b)| a + b == lambda);
            if !holds {
                return Err(Error::InvalidParameter(format!(
                    "{:?} + rev({:?}) is not {lambda} * 1",
                    eps.eps(),
                    eps_prime.eps()
                )));
            }
            Ok(deg(eps) == deg(eps_prime))
        }
        Some(k) => {
            if k < 1 || k > d {
                return Err(Error::InvalidParameter(format!("k = {k} outside 1..={d}")));
            }
            let holds = (0..d).all(|i| {
                let expected = if i + 1 == k { lambda } else { 0 };
                eps.eps()[i] as i64 - eps_prime.eps()[i] as i64 == expected as i64
            });
            if !holds {
                return Err(Error::InvalidParameter(format!(
                    "{:?} - {:?} is not {lambda} e_{k}",
                    eps.eps(),
                    eps_prime.eps()
                )));
            }
            Ok(deg(eps) == deg(eps_prime) + (d as i64 + 1 - 2 * k as i64) * lambda as i64)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(c)
    }

    fn ed(v: &[u32]) -> EdType {
        EdType::new(v.to_vec()).unwrap()
    }

    /// Expands the defining product by hand: numerator and denominator
    /// factors, then checks `binom * den == num`.
    #[test]
    fn gaussian_binomials() {
        assert_eq!(gauss_binomial(2, 1).unwrap(), poly(&[1, 1]));
        assert_eq!(gauss_binomial(4, 2).unwrap(), poly(&[1, 1, 2, 1, 1]));
        assert_eq!(gauss_binomial(5, 0).unwrap(), IntPolynomial::one());
        assert!(gauss_binomial(1, 2).is_err());
        // (1-X^4)(1-X^3) = binom(4,2) * (1-X^2)(1-X)
        let num = &poly(&[1, 0, 0, 0, -1]) * &poly(&[1, 0, 0, -1]);
        let den = &poly(&[1, 0, -1]) * &poly(&[1, -1]);
        assert_eq!(&gauss_binomial(4, 2).unwrap() * &den, num);
    }

    #[test]
    fn gaussian_binomial_shape() {
        for a in 0..=8u32 {
            for b in 0..=a {
                let g = gauss_binomial(a, b).unwrap();
                assert!(g.is_palindromic());
                assert!(g.terms().all(|(_, c)| *c > BigInt::from(0)));
                assert_eq!(g.degree(), Some((b * (a - b)) as i64));
                // at X = 1 the Gaussian binomial is the ordinary one
                assert_eq!(g.eval(1), binomial(a as u64, b as u64));
            }
        }
    }

    #[test]
    fn inverse_times_power() {
        assert_eq!(gauss_binomial_at_inverse_times_power(2, &[1], &[1]).unwrap(), poly(&[1, 1]));
        assert_eq!(gauss_binomial_at_inverse_times_power(3, &[1], &[2]).unwrap(), poly(&[0, 0, 1, 1, 1]));
        assert_eq!(gauss_binomial_at_inverse_times_power(3, &[], &[]).unwrap(), IntPolynomial::one());
        assert!(gauss_binomial_at_inverse_times_power(3, &[2, 1], &[1, 1]).is_err());
        assert!(gauss_binomial_at_inverse_times_power(3, &[3], &[1]).is_err());
        assert!(gauss_binomial_at_inverse_times_power(3, &[1], &[]).is_err());
    }

    #[test]
    fn b_epsilon_values() {
        assert_eq!(b_epsilon(&ed(&[2, 1, 0])), poly(&[0, 1, 2, 2, 1]));
        assert_eq!(b_epsilon(&ed(&[0, 0, 0])), IntPolynomial::one());
        let big = ed(&[5, 4, 3, 3, 1, 0]);
        assert_eq!(big.jumps(), vec![1, 2, 4, 5]);
        assert_eq!(big.gaps(), vec![1, 1, 2, 1]);
        assert_eq!(b_epsilon(&big).degree(), Some(34));
        assert!(EdType::new(vec![1, 2, 0]).is_err());
        assert!(EdType::new(vec![2, 1]).is_err());
    }

    #[test]
    fn ball_polynomials() {
        assert_eq!(ball_polynomial(3, 2, 1000).unwrap().to_string(), "3X^4+4X^3+6X^2+3X+3");
        assert_eq!(ball_polynomial(2, 1, 1000).unwrap(), poly(&[2, 1]));
        assert!(ball_polynomial(3, 0, 1000).is_err());
        assert!(matches!(ball_polynomial(6, 10, 5), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn type_enumeration_count() {
        for d in 1..=5usize {
            for r in 0..=4u32 {
                assert_eq!(ed_types(d, r).len() as u64, binomial((r as u64) + d as u64 - 1, d as u64 - 1).to_u64().unwrap());
            }
        }
        let types = ed_types(3, 2);
        assert!(types.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn grassmannian_counts() {
        assert_eq!(grassmannian_count(2, 1, 2, 1).unwrap(), BigInt::from(3));
        assert_eq!(grassmannian_count(3, 1, 2, 2).unwrap(), BigInt::from(28));
        assert_eq!(grassmannian_count(3, 2, 2, 1).unwrap(), BigInt::from(7));
        assert!(grassmannian_count(3, 3, 2, 1).is_err());
        assert!(grassmannian_count(3, 1, 6, 1).is_err());
        for d in 2..=5 {
            for n in 1..d {
                for r in 1..=3 {
                    assert_eq!(grassmannian_count(d, n, 3, r).unwrap(), grassmannian_count(d, d - n, 3, r).unwrap());
                }
            }
        }
    }

    #[test]
    fn leading_terms() {
        assert_eq!(leading_term(3, 2).unwrap(), (BigInt::from(3), 4));
        assert_eq!(leading_term(2, 1).unwrap(), (BigInt::from(1), 1));
        assert_eq!(leading_term(4, 1).unwrap(), (BigInt::from(1), 4));
        let p = ball_polynomial(4, 1, 1000).unwrap();
        assert_eq!((p.leading_coeff(), p.degree().unwrap()), (BigInt::from(1), 4));
    }

    #[test]
    fn degree_relations() {
        assert!(degree_relations_check(&ed(&[2, 0]), &ed(&[2, 0]), 2, None).unwrap());
        assert!(degree_relations_check(&ed(&[2, 1, 0]), &ed(&[2, 0, 0]), 1, Some(2)).unwrap());
        assert!(degree_relations_check(&ed(&[2, 2, 0]), &ed(&[2, 1, 0]), 1, Some(2)).unwrap());
        assert!(degree_relations_check(&ed(&[2, 1, 0]), &ed(&[2, 0, 0]), 1, Some(1)).is_err());
        assert!(degree_relations_check(&ed(&[2, 1, 0]), &ed(&[1, 0, 0]), 1, None).is_err());
    }

    #[test]
    fn degree_relations_exhaustive() {
        for d in 2..=4usize {
            let types = ed_types(d, 3);
            for a in &types {
                for b in &types {
                    let lambda = a.eps()[0] + b.eps()[d - 1];
                    if a.eps().iter().zip(b.eps().iter().rev()).all(|(&x, &y)| x + y == lambda) {
                        assert!(degree_relations_check(a, b, lambda, None).unwrap());
                    }
                    for k in 1..=d {
                        let diff: Vec<i64> = (0..d).map(|i| a.eps()[i] as i64 - b.eps()[i] as i64).collect();
                        let lambda = diff[k - 1];
                        if lambda >= 0 && diff.iter().enumerate().all(|(i, &x)| i + 1 == k || x == 0) {
                            assert!(degree_relations_check(a, b, lambda as u32, Some(k)).unwrap());
                        }
                    }
                }
            }
        }
    }
}
