//! Singleton-like and sphere-packing bounds, the linear-perfection
//! divisibility test, and exact comparison against fractional `q`-powers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::{as_q_power, binomial, pow};
use crate::volume::{ball_volume, ball_volume_by_convolution, space_size, sphere_volume, BlockProfile};

/// `(d - 1) / 2`, the packing radius.
pub fn packing_radius(d: u32) -> u32 {
    d.saturating_sub(1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingletonData {
    /// 1-based block index.
    pub j: usize,
    pub delta: u32,
    pub exponent: u64,
    pub bound: BigInt,
}

/// The Singleton-like bound `|C| <= q^{sum_{i>=j} n_i m_i - m_j delta}` where
/// `d - 1 = sum_{i<j} n_i + delta`, `0 <= delta < n_j`.
pub fn singleton_bound(profile: &BlockProfile, d: u32) -> Result<SingletonData> {
    if let Some((index, &(rows, cols))) = profile.blocks().iter().enumerate().find(|(_, &(n, m))| n > m) {
        return Err(Error::TransposedBlock { index, rows, cols });
    }
    let max = profile.row_sum();
    if d < 1 || d > max {
        return Err(Error::DistanceOutOfRange { d, max });
    }
    let mut rest = d - 1;
    let mut j = 0;
    while rest >= profile.blocks()[j].0 {
        rest -= profile.blocks()[j].0;
        j += 1;
    }
    let tail: u64 = profile.blocks()[j..].iter().map(|&(n, m)| u64::from(n) * u64::from(m)).sum();
    let exponent = tail - u64::from(profile.blocks()[j].1) * u64::from(rest);
    Ok(SingletonData {
        j: j + 1,
        delta: rest,
        exponent,
        bound: pow(profile.q(), exponent),
    })
}

fn check_distance(d: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::DistanceOutOfRange { d, max: u32::MAX });
    }
    Ok(())
}

/// `floor(|space| / V_r)` with `r = floor((d-1)/2)`.
pub fn packing_bound(profile: &BlockProfile, d: u32) -> Result<BigInt> {
    check_distance(d)?;
    let v = ball_volume_by_convolution(profile, packing_radius(d));
    Ok(space_size(profile).div_floor(&v))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisibilityVerdict {
    /// `V_r = q^exponent`; a linear perfect code would have this dimension.
    Pass { exponent: u64, dimension: u64 },
    /// `V_r` is not a power of `q`: no linear perfect code.
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisibility {
    pub radius: u32,
    pub ball_volume: BigInt,
    pub verdict: DivisibilityVerdict,
    /// `V_r` divides the space size (what an unrestricted perfect code needs).
    pub divides_space: bool,
}

/// A linear perfect code with minimum distance `d` forces `V_r` to be a
/// power of `q`.
pub fn perfection_divisibility(profile: &BlockProfile, d: u32) -> Result<Divisibility> {
    check_distance(d)?;
    let radius = packing_radius(d);
    let v = ball_volume_by_convolution(profile, radius);
    let verdict = match as_q_power(&v, profile.q()) {
        Some(e) if e <= profile.dimension() => DivisibilityVerdict::Pass {
            exponent: e,
            dimension: profile.dimension() - e,
        },
        _ => DivisibilityVerdict::Fail,
    };
    let divides_space = space_size(profile).is_multiple_of(&v);
    Ok(Divisibility {
        radius,
        ball_volume: v,
        verdict,
        divides_space,
    })
}

/// `multiplier * q^{exp_num / exp_den}` with `exp_den > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPowerExpr {
    pub multiplier: BigInt,
    pub exp_num: i64,
    pub exp_den: u64,
}

impl QPowerExpr {
    /// Builds the expression with the exponent fraction in lowest terms.
    pub fn new(multiplier: BigInt, exp_num: i64, exp_den: u64) -> Self {
        assert!(exp_den > 0, "exponent denominator must be positive");
        let g = (exp_num.unsigned_abs()).gcd(&exp_den).max(1);
        QPowerExpr {
            multiplier,
            exp_num: exp_num / g as i64,
            exp_den: exp_den / g,
        }
    }
}

impl fmt::Display for QPowerExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp_den == 1 {
            write!(f, "{} * q^{}", self.multiplier, self.exp_num)
        } else {
            write!(f, "{} * q^({}/{})", self.multiplier, self.exp_num, self.exp_den)
        }
    }
}

/// Orders `v` against `expr` exactly by raising both sides to `exp_den`.
pub fn compare_q_power(v: &BigInt, expr: &QPowerExpr, q: &BigInt) -> Ordering {
    assert!(v.is_positive() && expr.multiplier.is_positive(), "both sides must be positive");
    let den = expr.exp_den;
    let mut lhs = pow(v, den);
    let mut rhs = pow(&expr.multiplier, den);
    let shift = pow(q, expr.exp_num.unsigned_abs());
    if expr.exp_num >= 0 {
        rhs *= shift;
    } else {
        lhs *= shift;
    }
    lhs.cmp(&rhs)
}

/// Lower bound on `V(S_k)` in `t` blocks of size `n x m`:
/// `q^{(m + n - k/t - 2) k - t/4}`.
pub fn sphere_lower_bound(n: u32, m: u32, t: u32, k: u32) -> QPowerExpr {
    let (n, m, t, k) = (i64::from(n), i64::from(m), i64::from(t), i64::from(k));
    QPowerExpr::new(BigInt::one(), 4 * t * (m + n - 2) * k - 4 * k * k - t * t, 4 * t as u64)
}

/// Upper bound on `V_k` in `t` blocks of size `n x m`:
/// `k (k+1) C(k+t-1, t-1) q^{(n + m + 1 - k/t) k + (4 - t)/4}`.
pub fn ball_upper_bound(n: u32, m: u32, t: u32, k: u32) -> QPowerExpr {
    let multiplier = BigInt::from(k) * BigInt::from(k + 1) * binomial(u64::from(k + t - 1), u64::from(t - 1));
    let (n, m, t, k) = (i64::from(n), i64::from(m), i64::from(t), i64::from(k));
    QPowerExpr::new(multiplier, 4 * t * (n + m + 1) * k - 4 * k * k + t * (4 - t), 4 * t as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankMetricCheck {
    /// `q^{(n+m-2)k - k^2}`
    pub lower: QPowerExpr,
    /// `q^{(n+m+1)k - k^2}`
    pub sphere_upper: QPowerExpr,
    /// `q^{(n+m+1)k - k^2 + 1}`
    pub ball_upper: QPowerExpr,
    pub sphere_ok: bool,
    pub ball_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeBoundsReport {
    pub n: u32,
    pub t: u32,
    pub k: u32,
    pub sphere: BigInt,
    pub ball: BigInt,
    pub lower: Option<QPowerExpr>,
    pub upper: Option<QPowerExpr>,
    /// `lower <= V(S_k)`
    pub lower_ok: bool,
    /// `V(S_k) <= V_k`
    pub nested_ok: bool,
    /// `V_k <= upper`
    pub upper_ok: bool,
    /// Only for `t = 1`.
    pub rank_metric: Option<RankMetricCheck>,
}

impl VolumeBoundsReport {
    pub fn holds(&self) -> bool {
        self.lower_ok
            && self.nested_ok
            && self.upper_ok
            && self.rank_metric.as_ref().is_none_or(|r| r.sphere_ok && r.ball_ok)
    }
}

/// Checks `lower <= V(S_k) <= V_k <= upper` in `t` equal `n x n` blocks.
pub fn volume_bounds_check(profile: &BlockProfile, k: u32) -> Result<VolumeBoundsReport> {
    let n = profile
        .equal_square()
        .ok_or_else(|| Error::InvalidProfile("volume bounds need equal square blocks".into()))?;
    let t = profile.t() as u32;
    if k > t * n {
        return Err(Error::InvalidParams(format!("radius {k} exceeds t*n = {}", t * n)));
    }
    let q = profile.q();
    let sphere = sphere_volume(profile, k);
    let ball = ball_volume(profile, k).ball_volume;
    let nested_ok = sphere <= ball;
    if k == 0 {
        return Ok(VolumeBoundsReport {
            n,
            t,
            k,
            sphere,
            ball,
            lower: None,
            upper: None,
            lower_ok: true,
            nested_ok,
            upper_ok: true,
            rank_metric: None,
        });
    }
    let lower = sphere_lower_bound(n, n, t, k);
    let upper = ball_upper_bound(n, n, t, k);
    let lower_ok = compare_q_power(&sphere, &lower, q) != Ordering::Less;
    let upper_ok = compare_q_power(&ball, &upper, q) != Ordering::Greater;
    let rank_metric = (t == 1 && k <= n).then(|| {
        let (n, k) = (i64::from(n), i64::from(k));
        let lo = QPowerExpr::new(BigInt::one(), (2 * n - 2) * k - k * k, 1);
        let su = QPowerExpr::new(BigInt::one(), (2 * n + 1) * k - k * k, 1);
        let bu = QPowerExpr::new(BigInt::one(), (2 * n + 1) * k - k * k + 1, 1);
        RankMetricCheck {
            sphere_ok: compare_q_power(&sphere, &lo, q) != Ordering::Less
                && compare_q_power(&sphere, &su, q) != Ordering::Greater,
            ball_ok: compare_q_power(&ball, &lo, q) != Ordering::Less
                && compare_q_power(&ball, &bu, q) != Ordering::Greater,
            lower: lo,
            sphere_upper: su,
            ball_upper: bu,
        }
    });
    Ok(VolumeBoundsReport {
        n,
        t,
        k,
        sphere,
        ball,
        lower: Some(lower),
        upper: Some(upper),
        lower_ok,
        nested_ok,
        upper_ok,
        rank_metric,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingletonPacking {
    pub radius: u32,
    pub ball_volume: BigInt,
    pub singleton: SingletonData,
    /// `V_r * SingletonBound < |space|`: a perfect code would exceed the
    /// Singleton-like bound.
    pub excludes_perfect: bool,
}

/// Combines the two bounds: a perfect code has `|C| = |space| / V_r`, so it
/// cannot exist when `V_r * q^{singleton exponent} < |space|`.
pub fn singleton_packing_check(profile: &BlockProfile, d: u32) -> Result<SingletonPacking> {
    let singleton = singleton_bound(profile, d)?;
    let radius = packing_radius(d);
    let v = ball_volume_by_convolution(profile, radius);
    let excludes_perfect = &v * &singleton.bound < space_size(profile);
    Ok(SingletonPacking {
        radius,
        ball_volume: v,
        singleton,
        excludes_perfect,
    })
}

impl SingletonPacking {
    pub fn is_trivial(&self) -> bool {
        self.radius == 0 && self.ball_volume.is_one() && !self.excludes_perfect
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::PrimePowerField;
    use crate::volume::space_size;

    fn profile(q: u64, blocks: Vec<(u32, u32)>) -> BlockProfile {
        BlockProfile::new(PrimePowerField::from_order(q).unwrap(), blocks).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn singleton_examples() {
        let p = profile(2, vec![(2, 2), (2, 2)]);
        let s3 = singleton_bound(&p, 3).unwrap();
        assert_eq!((s3.j, s3.delta, s3.bound.clone()), (2, 0, big(16)));
        let s4 = singleton_bound(&p, 4).unwrap();
        assert_eq!((s4.j, s4.delta, s4.exponent), (2, 1, 2));
        assert_eq!(s4.bound, big(4));
        let s1 = singleton_bound(&p, 1).unwrap();
        assert_eq!((s1.j, s1.delta), (1, 0));
        assert_eq!(s1.bound, space_size(&p));
        assert_eq!(singleton_bound(&p, 5), Err(Error::DistanceOutOfRange { d: 5, max: 4 }));
        assert_eq!(singleton_bound(&p, 0), Err(Error::DistanceOutOfRange { d: 0, max: 4 }));
        let transposed = profile(2, vec![(3, 2)]);
        assert!(matches!(singleton_bound(&transposed, 2), Err(Error::TransposedBlock { .. })));
    }

    #[test]
    fn singleton_decomposition_is_unique() {
        let p = profile(3, vec![(4, 5), (3, 3), (2, 4)]);
        for d in 1..=p.row_sum() {
            let s = singleton_bound(&p, d).unwrap();
            let before: u32 = p.blocks()[..s.j - 1].iter().map(|b| b.0).sum();
            assert_eq!(before + s.delta, d - 1);
            assert!(s.delta < p.blocks()[s.j - 1].0);
        }
    }

    #[test]
    fn singleton_equal_square_specialization() {
        for q in [2u64, 3] {
            for n in 1..=4u32 {
                for t in 1..=3u32 {
                    let p = profile(q, vec![(n, n); t as usize]);
                    for d in 1..=t * n {
                        let k = u64::from(packing_radius(d));
                        let expected = if d % 2 == 1 {
                            u64::from(t * n * n) - 2 * k * u64::from(n)
                        } else {
                            u64::from(t * n * n) - (2 * k + 1) * u64::from(n)
                        };
                        assert_eq!(singleton_bound(&p, d).unwrap().exponent, expected, "q={q} n={n} t={t} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn packing_examples() {
        let hamming = profile(2, vec![(1, 1); 7]);
        assert_eq!(packing_bound(&hamming, 3).unwrap(), big(16));
        let p = profile(2, vec![(2, 2), (2, 2)]);
        assert_eq!(packing_bound(&p, 3).unwrap(), big(13));
        assert_eq!(packing_bound(&p, 1).unwrap(), big(256));
        assert_eq!(packing_bound(&p, 2).unwrap(), big(256));
        assert!(packing_bound(&p, 0).is_err());
    }

    #[test]
    fn divisibility_examples() {
        let hamming = profile(2, vec![(1, 1); 7]);
        let h = perfection_divisibility(&hamming, 3).unwrap();
        assert_eq!(h.verdict, DivisibilityVerdict::Pass { exponent: 3, dimension: 4 });
        assert!(h.divides_space);
        let p = profile(2, vec![(2, 2), (2, 2)]);
        let f = perfection_divisibility(&p, 3).unwrap();
        assert_eq!(f.verdict, DivisibilityVerdict::Fail);
        assert_eq!(f.ball_volume, big(19));
        assert_eq!(
            perfection_divisibility(&p, 1).unwrap().verdict,
            DivisibilityVerdict::Pass { exponent: 0, dimension: 8 }
        );
    }

    #[test]
    fn compare_examples() {
        let two = big(2);
        assert_eq!(compare_q_power(&big(93), &QPowerExpr::new(big(1), 3, 2), &two), Ordering::Greater);
        assert_eq!(compare_q_power(&big(8), &QPowerExpr::new(big(1), 3, 1), &two), Ordering::Equal);
        assert_eq!(compare_q_power(&big(112), &QPowerExpr::new(big(18), 17, 2), &two), Ordering::Less);
        // 1 vs 2^{-1/2}
        assert_eq!(compare_q_power(&big(1), &QPowerExpr::new(big(1), -1, 2), &two), Ordering::Greater);
    }

    #[test]
    fn bound_exponents() {
        assert_eq!(sphere_lower_bound(2, 2, 2, 2), QPowerExpr::new(big(1), 3, 2));
        assert_eq!(ball_upper_bound(2, 2, 2, 2), QPowerExpr::new(big(18), 17, 2));
        assert_eq!(sphere_lower_bound(2, 2, 2, 2).exp_den, 2);
    }

    #[test]
    fn volume_bounds_examples() {
        let r = volume_bounds_check(&profile(2, vec![(2, 2), (2, 2)]), 2).unwrap();
        assert_eq!((r.sphere.clone(), r.ball.clone()), (big(93), big(112)));
        assert!(r.holds());
        let r1 = volume_bounds_check(&profile(2, vec![(2, 2)]), 1).unwrap();
        assert_eq!(r1.sphere, big(9));
        let rm = r1.rank_metric.as_ref().unwrap();
        assert_eq!(rm.lower, QPowerExpr::new(big(1), 1, 1));
        assert_eq!(rm.sphere_upper, QPowerExpr::new(big(1), 4, 1));
        assert!(r1.holds());
        let r0 = volume_bounds_check(&profile(3, vec![(2, 2)]), 0).unwrap();
        assert!(r0.holds() && r0.ball == big(1));
        assert!(volume_bounds_check(&profile(2, vec![(2, 2), (3, 3)]), 1).is_err());
    }

    #[test]
    fn packing_bound_properties() {
        for blocks in [vec![(1, 1); 5], vec![(2, 2), (2, 3)], vec![(3, 3)], vec![(2, 2); 3]] {
            let p = profile(2, blocks);
            let space = space_size(&p);
            for d in 1..=p.max_weight() + 1 {
                let pb = packing_bound(&p, d).unwrap();
                let v = ball_volume(&p, packing_radius(d)).ball_volume;
                assert!(pb >= big(1));
                assert_eq!(pb == big(1), &v * 2 > space);
                let div = perfection_divisibility(&p, d).unwrap();
                if let DivisibilityVerdict::Pass { .. } = div.verdict {
                    assert!(space.is_multiple_of(&v));
                }
            }
        }
    }

    #[test]
    fn singleton_packing_excludes_two_binary_blocks() {
        let p = profile(2, vec![(2, 2), (2, 2)]);
        let c = singleton_packing_check(&p, 3).unwrap();
        // 19 * 16 = 304 >= 256, not excluded by size alone
        assert!(!c.excludes_perfect);
        let c = singleton_packing_check(&p, 4).unwrap();
        // 19 * 4 < 256
        assert!(c.excludes_perfect);
        let hamming = profile(2, vec![(1, 1); 7]);
        assert!(!singleton_packing_check(&hamming, 3).unwrap().excludes_perfect);
    }
}
