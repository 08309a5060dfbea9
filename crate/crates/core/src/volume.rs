//! Sphere and ball volumes in the sum-rank metric.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, compositions, div_exact, pow, rank_count, PrimePowerField};

/// The ambient space `Mat(n, m, F_q)`: a direct sum of `t` matrix blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockProfile {
    field: PrimePowerField,
    blocks: Vec<(u32, u32)>,
}

impl BlockProfile {
    /// Blocks are sorted by `(rows, cols)` descending; block order does not
    /// change the space up to isometry.
    pub fn new(field: PrimePowerField, mut blocks: Vec<(u32, u32)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidProfile("at least one block is required".into()));
        }
        if let Some(&(n, m)) = blocks.iter().find(|&&(n, m)| n == 0 || m == 0) {
            return Err(Error::InvalidProfile(format!("block {n}x{m} has a zero dimension")));
        }
        blocks.sort_by(|a, b| b.cmp(a));
        Ok(BlockProfile { field, blocks })
    }

    /// `t` copies of an `n x n` block.
    pub fn square(field: PrimePowerField, n: u32, t: u32) -> Result<Self> {
        Self::new(field, vec![(n, n); t as usize])
    }

    pub fn field(&self) -> &PrimePowerField {
        &self.field
    }

    pub fn q(&self) -> &BigInt {
        self.field.q()
    }

    pub fn blocks(&self) -> &[(u32, u32)] {
        &self.blocks
    }

    pub fn t(&self) -> usize {
        self.blocks.len()
    }

    /// `sum n_i m_i`, the `F_q`-dimension of the space.
    pub fn dimension(&self) -> u64 {
        self.blocks.iter().map(|&(n, m)| u64::from(n) * u64::from(m)).sum()
    }

    /// Largest attainable sum-rank weight.
    pub fn max_weight(&self) -> u32 {
        self.blocks.iter().map(|&(n, m)| n.min(m)).sum()
    }

    pub fn row_sum(&self) -> u32 {
        self.blocks.iter().map(|&(n, _)| n).sum()
    }

    /// `n_i <= m_i`, both sequences non-increasing, and the last block at
    /// least `2 x 2`.
    pub fn paper_regime(&self) -> bool {
        let (n_t, m_t) = *self.blocks.last().expect("non-empty");
        self.blocks.iter().all(|&(n, m)| n <= m)
            && self.blocks.windows(2).all(|w| w[0].1 >= w[1].1)
            && n_t >= 2
            && m_t >= 2
    }

    /// All blocks `n x n` for one common `n`.
    pub fn equal_square(&self) -> Option<u32> {
        let (n, m) = self.blocks[0];
        (n == m && self.blocks.iter().all(|&b| b == (n, n))).then_some(n)
    }

    pub fn caps(&self) -> Vec<u32> {
        self.blocks.iter().map(|&(n, m)| n.min(m)).collect()
    }
}

/// `q^{sum n_i m_i}`.
pub fn space_size(profile: &BlockProfile) -> BigInt {
    pow(profile.q(), profile.dimension())
}

/// Number of elements of sum-rank weight exactly `l`.
pub fn sphere_volume(profile: &BlockProfile, l: u32) -> BigInt {
    let caps = profile.caps();
    let q = profile.q();
    compositions(l, &caps)
        .map(|c| {
            c.parts
                .iter()
                .zip(profile.blocks())
                .map(|(&k, &(n, m))| rank_count(n, m, k, q))
                .product::<BigInt>()
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeReport {
    pub profile: BlockProfile,
    pub radius: u32,
    pub sphere_volumes: Vec<BigInt>,
    pub ball_volume: BigInt,
}

/// Volume of the radius-`r` ball together with each sphere inside it.
pub fn ball_volume(profile: &BlockProfile, r: u32) -> VolumeReport {
    let sphere_volumes: Vec<BigInt> = (0..=r).map(|l| sphere_volume(profile, l)).collect();
    let ball_volume = sphere_volumes.iter().sum();
    VolumeReport {
        profile: profile.clone(),
        radius: r,
        sphere_volumes,
        ball_volume,
    }
}

/// Sphere volumes `V(S_0), ..., V(S_max_l)` by multiplying the per-block
/// rank-count polynomials `sum_r rank_count(n_i, m_i, r) z^r`, truncated at
/// degree `max_l`. Agrees with [`sphere_volume`] term by term.
pub fn sphere_volumes_by_convolution(profile: &BlockProfile, max_l: u32) -> Vec<BigInt> {
    let len = max_l as usize + 1;
    let mut acc = vec![BigInt::zero(); len];
    acc[0] = BigInt::one();
    let q = profile.q();
    for &(n, m) in profile.blocks() {
        let block: Vec<BigInt> = (0..=n.min(m).min(max_l)).map(|r| rank_count(n, m, r, q)).collect();
        let mut next = vec![BigInt::zero(); len];
        for (i, a) in acc.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (r, b) in block.iter().enumerate() {
                if i + r < len {
                    next[i + r] += a * b;
                }
            }
        }
        acc = next;
    }
    acc
}

/// `V_r` through [`sphere_volumes_by_convolution`].
pub fn ball_volume_by_convolution(profile: &BlockProfile, r: u32) -> BigInt {
    sphere_volumes_by_convolution(profile, r).into_iter().sum()
}

/// Radius-1 ball in `t` equal `n x n` blocks: `1 + t (q^n-1)^2/(q-1)`.
pub fn closed_form_v1(q: &BigInt, n: u32, t: u32) -> BigInt {
    let a = pow(q, u64::from(n)) - 1u32;
    let qm1 = q - 1u32;
    BigInt::one() + BigInt::from(t) * div_exact(&(&a * &a), &qm1)
}

/// Radius-2 ball in `t` equal `n x n` blocks.
pub fn closed_form_v2(q: &BigInt, n: u32, t: u32) -> BigInt {
    let a = pow(q, u64::from(n)) - 1u32;
    let b = pow(q, u64::from(n - 1)) - 1u32;
    let qm1 = q - 1u32;
    let t = BigInt::from(t);
    let a2 = &a * &a;
    let single = div_exact(&a2, &qm1);
    let pairs = div_exact(&(&t * (&t - 1u32)), &BigInt::from(2)) * div_exact(&(&a2 * &a2), &(&qm1 * &qm1));
    let double = div_exact(&(&t * &a2 * &b * &b * q), &((q * q - 1u32) * &qm1));
    BigInt::one() + &t * single + pairs + double
}

/// The explicit two-block expressions for `q in {2, 3}`, as printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedFormExpr {
    /// Sphere of radius 3, `q = 2`.
    BinarySphere3,
    /// Sphere of radius 4, `q = 2`.
    BinarySphere4,
    /// Sphere of radius 5, `q = 2`.
    BinarySphere5,
    /// Ball of radius 2, `q = 3`.
    TernaryBall2,
    /// Sphere of radius 3, `q = 3`.
    TernarySphere3,
    /// Sphere of radius 4, `q = 3`.
    TernarySphere4,
}

impl ClosedFormExpr {
    pub const ALL: [ClosedFormExpr; 6] = [
        ClosedFormExpr::BinarySphere3,
        ClosedFormExpr::BinarySphere4,
        ClosedFormExpr::BinarySphere5,
        ClosedFormExpr::TernaryBall2,
        ClosedFormExpr::TernarySphere3,
        ClosedFormExpr::TernarySphere4,
    ];

    pub fn lookup(q: u32, l: u32) -> Result<Self> {
        Ok(match (q, l) {
            (2, 3) => ClosedFormExpr::BinarySphere3,
            (2, 4) => ClosedFormExpr::BinarySphere4,
            (2, 5) => ClosedFormExpr::BinarySphere5,
            (3, 2) => ClosedFormExpr::TernaryBall2,
            (3, 3) => ClosedFormExpr::TernarySphere3,
            (3, 4) => ClosedFormExpr::TernarySphere4,
            _ => return Err(Error::NoClosedForm { q, l }),
        })
    }

    pub fn q(self) -> u32 {
        match self {
            ClosedFormExpr::BinarySphere3 | ClosedFormExpr::BinarySphere4 | ClosedFormExpr::BinarySphere5 => 2,
            _ => 3,
        }
    }

    pub fn radius(self) -> u32 {
        match self {
            ClosedFormExpr::BinarySphere3 => 3,
            ClosedFormExpr::BinarySphere4 => 4,
            ClosedFormExpr::BinarySphere5 => 5,
            ClosedFormExpr::TernaryBall2 => 2,
            ClosedFormExpr::TernarySphere3 => 3,
            ClosedFormExpr::TernarySphere4 => 4,
        }
    }

    /// True for the ball expression, false for sphere expressions.
    pub fn is_ball(self) -> bool {
        self == ClosedFormExpr::TernaryBall2
    }

    pub fn label(self) -> &'static str {
        match self {
            ClosedFormExpr::BinarySphere3 => "S_3",
            ClosedFormExpr::BinarySphere4 => "S_4",
            ClosedFormExpr::BinarySphere5 => "S_5",
            ClosedFormExpr::TernaryBall2 => "S_2_3",
            ClosedFormExpr::TernarySphere3 => "S_3_3",
            ClosedFormExpr::TernarySphere4 => "S_4_3",
        }
    }

    /// Terms as `(coefficient, [(shift, power)])`, each factor being
    /// `(q^{n - shift} - 1)^power`. Constant terms have no factors.
    fn terms(self) -> Vec<((i64, i64), Vec<(i64, u32)>)> {
        match self {
            ClosedFormExpr::BinarySphere3 => vec![
                ((16, 21), vec![(0, 2), (1, 2), (2, 2)]),
                ((4, 3), vec![(0, 4), (1, 2)]),
            ],
            ClosedFormExpr::BinarySphere4 => vec![
                ((128, 315), vec![(0, 2), (1, 2), (2, 2), (3, 2)]),
                ((16, 21), vec![(0, 4), (1, 2), (2, 2)]),
                ((16, 3), vec![(0, 4), (1, 4)]),
            ],
            ClosedFormExpr::BinarySphere5 => vec![
                ((2048, 9765), vec![(0, 2), (1, 2), (2, 2), (3, 2), (4, 2)]),
                ((128, 315), vec![(0, 4), (1, 2), (2, 2), (3, 2)]),
                ((32, 63), vec![(0, 4), (1, 4), (2, 2)]),
            ],
            ClosedFormExpr::TernaryBall2 => vec![
                ((1, 1), vec![]),
                ((1, 1), vec![(0, 2)]),
                ((1, 4), vec![(0, 4)]),
                ((3, 8), vec![(0, 2), (1, 2)]),
            ],
            ClosedFormExpr::TernarySphere3 => vec![
                ((54, 416), vec![(0, 2), (1, 2), (2, 2)]),
                ((3, 16), vec![(0, 4), (1, 2)]),
            ],
            ClosedFormExpr::TernarySphere4 => vec![
                ((1458, 33280), vec![(0, 2), (1, 2), (2, 2), (3, 2)]),
                ((27, 416), vec![(0, 4), (1, 2), (2, 2)]),
                ((81, 16), vec![(0, 4), (1, 4)]),
            ],
        }
    }

    /// Evaluates the expression at block size `n` in exact rationals.
    /// Negative exponents `n - shift < 0` are evaluated as rationals too.
    pub fn evaluate(self, n: u32) -> Result<BigInt> {
        let q = BigRational::from_integer(BigInt::from(self.q()));
        let mut total = BigRational::zero();
        for ((num, den), factors) in self.terms() {
            let mut term = BigRational::new(BigInt::from(num), BigInt::from(den));
            for (shift, power) in factors {
                let e = i64::from(n) - shift;
                let base = Pow::pow(&q, e as i32) - BigRational::one();
                term *= Pow::pow(&base, power);
            }
            total += term;
        }
        if total.is_integer() {
            Ok(total.to_integer())
        } else {
            Err(Error::NotIntegral(format!("{} at n = {n} gives {total}", self.label())))
        }
    }

    /// The value the general formula gives for the same quantity.
    pub fn general_formula(self, n: u32) -> Result<BigInt> {
        let field = PrimePowerField::new(u64::from(self.q()), 1)?;
        let profile = BlockProfile::square(field, n, 2)?;
        Ok(if self.is_ball() {
            ball_volume(&profile, self.radius()).ball_volume
        } else {
            sphere_volume(&profile, self.radius())
        })
    }
}

/// Appendix closed form for two `n x n` blocks over `F_q`, `q in {2, 3}`.
pub fn appendix_closed_form(q: u32, n: u32, l: u32) -> Result<BigInt> {
    ClosedFormExpr::lookup(q, l)?.evaluate(n)
}

/// `P(t, k) = 1 + sum_{i=1}^k (-1)^i C(t, i)`, the residue of the radius-`k`
/// ball volume modulo `q` in `t` equal square blocks.
pub fn congruence_poly(t: u64, k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| {
        let c = binomial(t, i);
        if i % 2 == 0 {
            acc + c
        } else {
            acc - c
        }
    })
}
