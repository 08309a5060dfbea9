//! Arithmetic in `F_{p^alpha}` for `alpha <= 4`, plus Gaussian elimination.
//!
//! Elements are indices `0..q`; index `i` encodes the polynomial
//! `sum c_j x^j` with `i = sum c_j p^j`. Extension fields reduce modulo the
//! lexicographically smallest monic irreducible polynomial of degree alpha,
//! comparing coefficient vectors from the highest non-leading degree down.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::is_prime;

/// Default cap on how many elements an enumeration may visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// Environment variable overriding [`DEFAULT_ENUMERATION_CAP`].
pub const ENUMERATION_CAP_ENV: &str = "SUMRANK_ENUM_CAP";

/// Reads the enumeration cap from the environment, falling back to the default.
pub fn enumeration_cap_from_env() -> u64 {
    std::env::var(ENUMERATION_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_CAP)
}

const TABLE_LIMIT: u32 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A finite field descriptor. Immutable and cheap to share.
#[derive(Clone)]
pub struct Field {
    p: u32,
    alpha: u32,
    order: u32,
    /// Monic modulus, low degree first, length `alpha + 1`. `[0, 1]` for prime fields.
    modulus: Vec<u32>,
    mul_table: Option<Vec<u32>>,
    inv_table: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("alpha", &self.alpha)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.alpha == other.alpha && self.modulus == other.modulus
    }
}

impl Eq for Field {}

/// Builds `F_{p^alpha}` with a deterministic modulus.
pub fn make_field(p: u64, alpha: u32) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !(1..=4).contains(&alpha) {
        return Err(Error::UnsupportedDegree(alpha));
    }
    let p = u32::try_from(p).map_err(|_| Error::InvalidParams(format!("prime {p} too large")))?;
    let order = (p as u64).pow(alpha);
    let order = u32::try_from(order)
        .ok()
        .filter(|&o| o <= 1 << 24)
        .ok_or_else(|| Error::InvalidParams(format!("field order {p}^{alpha} too large")))?;
    let modulus = if alpha == 1 {
        vec![0, 1]
    } else {
        smallest_irreducible(p, alpha)
    };
    let mut field = Field {
        p,
        alpha,
        order,
        modulus,
        mul_table: None,
        inv_table: Vec::new(),
    };
    if alpha > 1 && order <= TABLE_LIMIT {
        let q = order as usize;
        let mut table = vec![0u32; q * q];
        for a in 0..order {
            for b in a..order {
                let c = field.poly_mul(a, b);
                table[a as usize * q + b as usize] = c;
                table[b as usize * q + a as usize] = c;
            }
        }
        field.mul_table = Some(table);
    }
    if order <= TABLE_LIMIT {
        field.inv_table = (0..order)
            .map(|a| if a == 0 { 0 } else { field.pow(FieldElement(a), order - 2).0 })
            .collect();
    }
    Ok(field)
}

fn poly_rem_is_zero(f: &[u32], g: &[u32], p: u32) -> bool {
    // g monic
    let mut r: Vec<u32> = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &c) in g.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

fn monic_from_code(code: u32, degree: u32, p: u32) -> Vec<u32> {
    // code digits base p, most significant = coefficient of x^{degree-1}
    let mut coeffs = vec![0u32; degree as usize + 1];
    let mut rem = code;
    for j in 0..degree as usize {
        coeffs[j] = rem % p;
        rem /= p;
    }
    coeffs[degree as usize] = 1;
    coeffs
}

fn smallest_irreducible(p: u32, alpha: u32) -> Vec<u32> {
    (0..p.pow(alpha))
        .map(|code| monic_from_code(code, alpha, p))
        .find(|f| {
            (1..=alpha / 2).all(|deg| {
                (0..p.pow(deg)).all(|code| !poly_rem_is_zero(f, &monic_from_code(code, deg, p), p))
            })
        })
        .expect("an irreducible polynomial exists in every degree")
}

impl Field {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.alpha
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    pub fn coefficients(&self, a: FieldElement) -> Vec<u32> {
        let mut rem = a.0;
        (0..self.alpha)
            .map(|_| {
                let c = rem % self.p;
                rem /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.alpha as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParams(format!(
                "coefficients {coeffs:?} are not {} residues mod {}",
                self.alpha, self.p
            )));
        }
        Ok(FieldElement(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)))
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.order {
            Ok(FieldElement(index))
        } else {
            Err(Error::InvalidParams(format!("{index} is not an element of F_{}", self.order)))
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.alpha == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        for _ in 0..self.alpha {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.alpha == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        let coeffs: Vec<u32> = self.coefficients(a).into_iter().map(|c| (self.p - c) % self.p).collect();
        self.from_coefficients(&coeffs).expect("residues stay in range")
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.alpha == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        match &self.mul_table {
            Some(t) => FieldElement(t[a.0 as usize * self.order as usize + b.0 as usize]),
            None => FieldElement(self.poly_mul(a.0, b.0)),
        }
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let ca = self.coefficients(FieldElement(a));
        let cb = self.coefficients(FieldElement(b));
        let deg = self.alpha as usize;
        let mut prod = vec![0u64; 2 * deg - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for top in (deg..prod.len()).rev() {
            let lead = prod[top];
            if lead == 0 {
                continue;
            }
            // x^deg = -(lower modulus terms)
            for (i, &c) in self.modulus[..deg].iter().enumerate() {
                let idx = top - deg + i;
                prod[idx] = (prod[idx] + p - (lead * c as u64) % p) % p;
            }
            prod[top] = 0;
        }
        prod[..deg].iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
    }

    pub fn pow(&self, a: FieldElement, mut e: u32) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        if let Some(&i) = self.inv_table.get(a.0 as usize) {
            return Some(FieldElement(i));
        }
        Some(self.pow(a, self.order - 2))
    }
}

/// Dense row-major matrix over a [`Field`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::InvalidParams(format!(
                "{} entries do not fill a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(FieldMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            entries: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = FieldElement::ONE;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.cols + c]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c));
            }
        }
        FieldMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn add(&self, other: &Self, field: &Field) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| field.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: FieldElement, field: &Field) -> Self {
        FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&a| field.mul(c, a)).collect(),
        }
    }

    pub fn rank(&self, field: &Field) -> usize {
        row_rank(self.entries.clone(), self.rows, self.cols, field)
    }
}

/// Rank of a row-major `rows x cols` array by Gaussian elimination.
pub fn row_rank(mut a: Vec<FieldElement>, rows: usize, cols: usize, field: &Field) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for c in 0..cols {
                a.swap(pivot * cols + c, rank * cols + c);
            }
        }
        let inv = field.inv(a[rank * cols + col]).expect("pivot is nonzero");
        for r in rank + 1..rows {
            let factor = a[r * cols + col];
            if factor.is_zero() {
                continue;
            }
            let f = field.mul(factor, inv);
            for c in col..cols {
                let sub = field.mul(f, a[rank * cols + c]);
                a[r * cols + c] = field.sub(a[r * cols + c], sub);
            }
        }
        rank += 1;
    }
    rank
}

/// Odometer over all `rows x cols` matrices; the last entry varies fastest.
pub struct MatrixIter<'f> {
    field: &'f Field,
    rows: usize,
    cols: usize,
    current: Option<Vec<FieldElement>>,
}

impl Iterator for MatrixIter<'_> {
    type Item = FieldMatrix;

    fn next(&mut self) -> Option<FieldMatrix> {
        let entries = self.current.as_mut()?;
        let out = FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: entries.clone(),
        };
        let mut pos = entries.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            entries[pos].0 += 1;
            if entries[pos].0 < self.field.order {
                break;
            }
            entries[pos] = FieldElement::ZERO;
        }
        Some(out)
    }
}

/// Every `rows x cols` matrix over `field`, failing if there are more than `cap`.
pub fn enumerate_matrices(rows: usize, cols: usize, field: &Field, cap: u64) -> Result<MatrixIter<'_>> {
    let count = checked_count(field.order, rows * cols);
    match count {
        Some(c) if c <= cap => Ok(MatrixIter {
            field,
            rows,
            cols,
            current: Some(vec![FieldElement::ZERO; rows * cols]),
        }),
        _ => Err(Error::CapExceeded {
            requested: format!("{}^{}", field.order, rows * cols),
            cap,
        }),
    }
}

pub(crate) fn checked_count(base: u32, exp: usize) -> Option<u64> {
    let exp = u32::try_from(exp).ok()?;
    (base as u64).checked_pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rank_count;
    use num_bigint::BigInt;

    #[test]
    fn prime_field_descriptor() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(make_field(2, 5).unwrap_err(), Error::UnsupportedDegree(5));
    }

    #[test]
    fn extension_moduli() {
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(make_field(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(make_field(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn coefficient_encoding() {
        let f = make_field(3, 2).unwrap();
        let a = f.from_coefficients(&[2, 1]).unwrap();
        assert_eq!(a, FieldElement(5));
        assert_eq!(f.coefficients(a), vec![2, 1]);
        assert!(f.from_coefficients(&[3, 0]).is_err());
        // x * x = x^2 = -1 = 2 in F_9 = F_3[x]/(x^2+1)
        let x = f.from_coefficients(&[0, 1]).unwrap();
        assert_eq!(f.mul(x, x), FieldElement(2));
    }

    fn check_axioms(f: &Field) {
        let els: Vec<_> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, FieldElement::ZERO), a);
            assert_eq!(f.mul(a, FieldElement::ONE), a);
            assert!(f.add(a, f.neg(a)).is_zero());
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                if !a.is_zero() && !b.is_zero() {
                    assert!(!f.mul(a, b).is_zero(), "zero divisor in {f:?}");
                }
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_up_to_order_nine() {
        for (p, alpha) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            check_axioms(&make_field(p, alpha).unwrap());
        }
    }

    #[test]
    fn untabled_extension_matches_tabled() {
        // 11^3 = 1331 exceeds the table limit, so mul goes through poly_mul
        let big = make_field(11, 3).unwrap();
        assert!(big.mul_table.is_none());
        for a in (0..big.order()).step_by(97) {
            let x = FieldElement(a);
            if !x.is_zero() {
                assert_eq!(big.mul(x, big.inv(x).unwrap()), FieldElement::ONE);
            }
        }
    }

    #[test]
    fn rank_basics() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(FieldMatrix::zero(3, 2).rank(&f), 0);
        assert_eq!(FieldMatrix::identity(4).rank(&f), 4);
        let m = FieldMatrix::new(2, 2, vec![FieldElement(1); 4]).unwrap();
        assert_eq!(m.rank(&f), 1);
        assert!(FieldMatrix::new(2, 2, vec![FieldElement(1); 3]).is_err());
    }

    #[test]
    fn enumeration_sizes() {
        let f2 = make_field(2, 1).unwrap();
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(enumerate_matrices(1, 1, &f2, DEFAULT_ENUMERATION_CAP).unwrap().count(), 2);
        assert_eq!(enumerate_matrices(2, 2, &f3, DEFAULT_ENUMERATION_CAP).unwrap().count(), 81);
        let rank1 = enumerate_matrices(2, 2, &f2, DEFAULT_ENUMERATION_CAP)
            .unwrap()
            .filter(|m| m.rank(&f2) == 1)
            .count();
        assert_eq!(rank1, 9);
        assert!(matches!(
            enumerate_matrices(5, 5, &f2, 1 << 24),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn rank_histogram_matches_rank_count() {
        for (p, alpha) in [(2u64, 1u32), (3, 1), (2, 2)] {
            let f = make_field(p, alpha).unwrap();
            let q = BigInt::from(f.order());
            for n in 1..=3 {
                for m in 1..=3 {
                    let mut hist = vec![0u64; 4];
                    for mat in enumerate_matrices(n, m, &f, DEFAULT_ENUMERATION_CAP).unwrap() {
                        hist[mat.rank(&f)] += 1;
                    }
                    for (r, &c) in hist.iter().enumerate() {
                        assert_eq!(BigInt::from(c), rank_count(n as u32, m as u32, r as u32, &q), "q={q} {n}x{m} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn rank_is_transpose_invariant() {
        for p in [2u64, 3] {
            let f = make_field(p, 1).unwrap();
            for n in 1..=3 {
                for m in 1..=3 {
                    for mat in enumerate_matrices(n, m, &f, DEFAULT_ENUMERATION_CAP).unwrap() {
                        assert_eq!(mat.rank(&f), mat.transpose().rank(&f));
                    }
                }
            }
        }
    }
}
