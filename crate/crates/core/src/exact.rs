//! Arbitrary-precision integer combinatorics.
//!
//! Binomials, Gaussian binomials, per-rank matrix counts, bounded
//! compositions, prime-power recognition and a few valuation helpers. Every
//! value is an exact [`BigInt`]; divisions that must be exact are asserted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact signed integer used for every cardinality in the crate.
pub type ExactInt = BigInt;

/// Divides `num` by `den`, panicking if the division leaves a remainder.
pub(crate) fn div_exact(num: &BigInt, den: &BigInt) -> BigInt {
    let (quo, rem) = num.div_rem(den);
    assert!(rem.is_zero(), "non-exact division {num} / {den}");
    quo
}

pub(crate) fn pow(base: &BigInt, exp: u64) -> BigInt {
    Pow::pow(base, exp)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc = div_exact(&acc, &BigInt::from(i + 1));
    }
    acc
}

/// Gaussian binomial `[n choose k]_q`.
///
/// Built as `prod_{i<k} (q^{n-i} - 1) / (q^{i+1} - 1)`, multiplying then
/// dividing exactly at every step so the running value is itself a Gaussian
/// binomial `[n-k+i+1 choose i+1]_q` (which is integral).
pub fn q_binomial(n: u32, k: u32, q: &BigInt) -> BigInt {
    assert!(*q >= BigInt::from(2), "q_binomial needs q >= 2");
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // [m+1 choose i+1] = [m choose i] * (q^{m+1} - 1) / (q^{i+1} - 1), m = n-k+i
        let top = pow(q, u64::from(n - k + i + 1)) - 1u32;
        let bottom = pow(q, u64::from(i + 1)) - 1u32;
        acc = div_exact(&(acc * top), &bottom);
    }
    acc
}

/// Number of `n x m` matrices over `F_q` of rank exactly `r`.
pub fn rank_count(n: u32, m: u32, r: u32, q: &BigInt) -> BigInt {
    if r > n.min(m) {
        return BigInt::zero();
    }
    let qm = pow(q, u64::from(m));
    let mut falling = BigInt::one();
    for j in 0..r {
        falling *= &qm - pow(q, u64::from(j));
    }
    q_binomial(n, r, q) * falling
}

/// One tuple `(k_1, ..., k_t)` with `sum k_i = total` and `k_i <= caps[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedComposition<'a> {
    pub parts: Vec<u32>,
    pub caps: &'a [u32],
}

/// Lazy stream over bounded compositions, in descending lexicographic order.
#[derive(Debug, Clone)]
pub struct Compositions<'a> {
    caps: &'a [u32],
    // suffix_cap[i] = sum of caps[i..]
    suffix_cap: Vec<u64>,
    current: Option<Vec<u32>>,
}

/// Every composition of `total` into `caps.len()` non-negative parts with
/// `k_i <= caps[i]`, each exactly once.
pub fn compositions(total: u32, caps: &[u32]) -> Compositions<'_> {
    assert!(!caps.is_empty(), "compositions need at least one part");
    let mut suffix_cap = vec![0u64; caps.len() + 1];
    for i in (0..caps.len()).rev() {
        suffix_cap[i] = suffix_cap[i + 1] + u64::from(caps[i]);
    }
    let current = if u64::from(total) <= suffix_cap[0] {
        let mut parts = vec![0u32; caps.len()];
        fill_greedy(&mut parts, caps, 0, total);
        Some(parts)
    } else {
        None
    };
    Compositions {
        caps,
        suffix_cap,
        current,
    }
}

fn fill_greedy(parts: &mut [u32], caps: &[u32], from: usize, mut amount: u32) {
    for i in from..parts.len() {
        let take = amount.min(caps[i]);
        parts[i] = take;
        amount -= take;
    }
    debug_assert_eq!(amount, 0);
}

impl<'a> Compositions<'a> {
    fn advance(&mut self) {
        let Some(parts) = self.current.as_mut() else {
            return;
        };
        let t = parts.len();
        let mut rest: u64 = u64::from(parts[t - 1]);
        for i in (0..t.saturating_sub(1)).rev() {
            if parts[i] > 0 && rest < self.suffix_cap[i + 1] {
                parts[i] -= 1;
                let amount = (rest + 1) as u32;
                fill_greedy(parts, self.caps, i + 1, amount);
                return;
            }
            rest += u64::from(parts[i]);
        }
        self.current = None;
    }
}

impl<'a> Iterator for Compositions<'a> {
    type Item = BoundedComposition<'a>;

    fn next(&mut self) -> Option<Self::Item> {
        let parts = self.current.clone()?;
        self.advance();
        Some(BoundedComposition {
            parts,
            caps: self.caps,
        })
    }
}

/// Trial-division primality.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A finite field order `q = p^alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimePowerField {
    p: u64,
    alpha: u32,
    q: BigInt,
}

impl PrimePowerField {
    pub fn new(p: u64, alpha: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if alpha == 0 {
            return Err(Error::UnsupportedDegree(alpha));
        }
        Ok(PrimePowerField {
            p,
            alpha,
            q: pow(&BigInt::from(p), u64::from(alpha)),
        })
    }

    /// Recognizes `q` as a prime power.
    pub fn from_order(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let p = (2..)
            .take_while(|d| d * d <= q)
            .find(|d| q % d == 0)
            .unwrap_or(q);
        let mut rest = q;
        let mut alpha = 0;
        while rest % p == 0 {
            rest /= p;
            alpha += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        Self::new(p, alpha)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// The order as a machine integer, when it fits.
    pub fn order(&self) -> Option<u64> {
        self.q.to_u64()
    }
}

/// Largest `v` with `p^v | x`.
pub fn p_adic_valuation(x: &BigInt, p: u64) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (quo, rem) = x.div_rem(&p);
        if !rem.is_zero() {
            return Ok(v);
        }
        x = quo;
        v += 1;
    }
}

/// `Some(e)` iff `x = q^e` exactly.
pub fn as_q_power(x: &BigInt, q: &BigInt) -> Option<u64> {
    assert!(*q >= BigInt::from(2), "as_q_power needs q >= 2");
    if !x.is_positive() {
        return None;
    }
    let mut x = x.clone();
    let mut e = 0;
    while !x.is_one() {
        let (quo, rem) = x.div_rem(q);
        if !rem.is_zero() {
            return None;
        }
        x = quo;
        e += 1;
    }
    Some(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(3, 4), big(0));
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(100, 50).to_string(), "100891344545564193334812497256");
    }

    #[test]
    fn stars_and_bars_count() {
        // k = 3 into t = 2 parts: (3,0),(2,1),(1,2),(0,3)
        let k = 3;
        let t = 2;
        let brute = (0..=k).flat_map(|a| (0..=k).map(move |b| (a, b))).filter(|(a, b)| a + b == k).count();
        assert_eq!(brute, 4);
        assert_eq!(binomial(k + t - 1, t - 1), big(brute as i64));
    }

    #[test]
    fn q_binomial_small() {
        assert_eq!(q_binomial(7, 0, &big(3)), big(1));
        assert_eq!(q_binomial(2, 1, &big(2)), big(3));
        assert_eq!(q_binomial(4, 2, &big(2)), big(35));
        assert_eq!(q_binomial(2, 3, &big(2)), big(0));
    }

    /// Counts k-dimensional subspaces of F_2^n by collecting the row spaces
    /// of all k-tuples of vectors (bitmask encoding).
    fn brute_subspaces_f2(n: u32, k: u32) -> usize {
        use std::collections::HashSet;
        let vectors: Vec<u32> = (0..1u32 << n).collect();
        let mut spaces = HashSet::new();
        let mut idx = vec![0usize; k as usize];
        loop {
            let gens: Vec<u32> = idx.iter().map(|&i| vectors[i]).collect();
            let mut span = HashSet::new();
            for mask in 0..1u32 << k {
                let mut v = 0;
                for (b, g) in gens.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        v ^= g;
                    }
                }
                span.insert(v);
            }
            if span.len() == 1 << k {
                let mut s: Vec<u32> = span.into_iter().collect();
                s.sort();
                spaces.insert(s);
            }
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return spaces.len();
                }
                idx[pos] += 1;
                if idx[pos] < vectors.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn q_binomial_matches_subspace_enumeration() {
        assert_eq!(brute_subspaces_f2(2, 1), 3);
        assert_eq!(brute_subspaces_f2(4, 2), 35);
        for n in 1..=4 {
            for k in 1..=n {
                assert_eq!(q_binomial(n, k, &big(2)), big(brute_subspaces_f2(n, k) as i64), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn rank_count_binary_2x2() {
        assert_eq!(rank_count(2, 2, 0, &big(2)), big(1));
        assert_eq!(rank_count(2, 2, 1, &big(2)), big(9));
        assert_eq!(rank_count(2, 2, 2, &big(2)), big(6));
        assert_eq!(rank_count(2, 2, 3, &big(2)), big(0));
    }

    #[test]
    fn rank_counts_partition_the_space() {
        for q in [2i64, 3, 4] {
            for n in 1..=5u32 {
                for m in 1..=5u32 {
                    let total: BigInt = (0..=n.min(m)).map(|r| rank_count(n, m, r, &big(q))).sum();
                    assert_eq!(total, pow(&big(q), u64::from(n * m)), "q={q} {n}x{m}");
                }
            }
        }
    }

    #[test]
    fn q_binomial_symmetry() {
        for q in [2i64, 3, 5] {
            for n in 0..=8u32 {
                for k in 0..=n {
                    assert_eq!(q_binomial(n, k, &big(q)), q_binomial(n, n - k, &big(q)));
                }
            }
        }
    }

    fn collect(total: u32, caps: &[u32]) -> Vec<Vec<u32>> {
        compositions(total, caps).map(|c| c.parts).collect()
    }

    #[test]
    fn compositions_examples() {
        assert_eq!(collect(3, &[2, 2]), vec![vec![2, 1], vec![1, 2]]);
        assert_eq!(collect(2, &[2, 2]), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(collect(3, &[3, 3]).len(), 4);
        assert!(collect(5, &[2, 2]).is_empty());
        assert_eq!(collect(0, &[0, 0, 0]), vec![vec![0, 0, 0]]);
        assert_eq!(collect(4, &[4]), vec![vec![4]]);
    }

    #[test]
    fn compositions_match_filtered_product() {
        for t in 1..=4usize {
            for total in 0..=6u32 {
                for cap_code in 0..4u32.pow(t as u32) {
                    let caps: Vec<u32> = (0..t).map(|i| cap_code / 4u32.pow(i as u32) % 4).collect();
                    let mut brute = Vec::new();
                    let size: u32 = caps.iter().map(|c| c + 1).product();
                    for code in 0..size {
                        let mut rem = code;
                        let mut parts = Vec::with_capacity(t);
                        for c in &caps {
                            parts.push(rem % (c + 1));
                            rem /= c + 1;
                        }
                        if parts.iter().sum::<u32>() == total {
                            brute.push(parts);
                        }
                    }
                    brute.sort();
                    brute.reverse();
                    assert_eq!(collect(total, &caps), brute, "total={total} caps={caps:?}");
                }
            }
        }
    }

    #[test]
    fn valuation() {
        assert_eq!(p_adic_valuation(&big(112), 2), Ok(4));
        assert_eq!(p_adic_valuation(&big(1), 7), Ok(0));
        assert_eq!(p_adic_valuation(&big(-286), 2), Ok(1));
        assert_eq!(p_adic_valuation(&big(0), 2), Err(Error::ZeroValuation));
    }

    #[test]
    fn q_power_recognition() {
        assert_eq!(as_q_power(&big(8), &big(2)), Some(3));
        assert_eq!(as_q_power(&big(19), &big(2)), None);
        assert_eq!(as_q_power(&big(1), &big(9)), Some(0));
        assert_eq!(as_q_power(&big(0), &big(2)), None);
        assert_eq!(as_q_power(&big(27), &big(9)), None);
    }

    #[test]
    fn prime_powers() {
        let f = PrimePowerField::from_order(9).unwrap();
        assert_eq!((f.p(), f.alpha()), (3, 2));
        assert_eq!(PrimePowerField::from_order(2).unwrap().alpha(), 1);
        assert_eq!(PrimePowerField::from_order(12), Err(Error::NotPrimePower(12)));
        assert_eq!(PrimePowerField::from_order(1), Err(Error::NotPrimePower(1)));
        assert_eq!(PrimePowerField::new(6, 1), Err(Error::NotPrime(6)));
        assert!(is_prime(9973) && !is_prime(9971));
    }

    proptest! {
        #[test]
        fn unbounded_compositions_count(total in 0u32..8, t in 1usize..5) {
            let caps = vec![total; t];
            let count = compositions(total, &caps).count();
            prop_assert_eq!(BigInt::from(count), binomial(u64::from(total) + t as u64 - 1, t as u64 - 1));
        }

        #[test]
        fn pascal_rule(n in 1u64..60, k in 1u64..60) {
            prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }

        #[test]
        fn q_pascal_rule(n in 1u32..12, k in 1u32..12, q in 2i64..6) {
            // [n,k] = [n-1,k-1] + q^k [n-1,k]
            let q = BigInt::from(q);
            prop_assert_eq!(
                q_binomial(n, k, &q),
                q_binomial(n - 1, k - 1, &q) + pow(&q, u64::from(k)) * q_binomial(n - 1, k, &q)
            );
        }

        #[test]
        fn valuation_roundtrip(base in 1i64..1000, v in 0u32..40, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let unit = if base % p as i64 == 0 { base + 1 } else { base };
            let x = BigInt::from(unit) * pow(&BigInt::from(p), u64::from(v));
            prop_assert_eq!(p_adic_valuation(&x, p).unwrap(), v);
        }
    }
}
