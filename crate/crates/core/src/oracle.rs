//! Brute-force ground truth: weight distributions by full enumeration, code
//! minimum distance, and perfectness of codes given by a generator set.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Deserialize;

use crate::bounds::packing_radius;
use crate::error::{Error, Result};
use crate::exact::PrimePowerField;
use crate::field::{enumerate_matrices, make_field, row_rank, Field, FieldElement, FieldMatrix};
use crate::volume::{ball_volume, space_size, sphere_volume, BlockProfile};

/// Default cap on the number of codewords `q^{|basis|}` enumerated.
pub const CODE_ENUMERATION_CAP: u64 = 1 << 20;

/// Number of space elements at each sum-rank weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    pub profile: BlockProfile,
    /// Indexed by weight, `0..=max_weight`.
    pub counts: Vec<BigInt>,
}

impl WeightDistribution {
    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// `(weight, enumerated, formula)` for every weight.
    pub fn against_formula(&self) -> Vec<(u32, BigInt, BigInt)> {
        self.counts
            .iter()
            .enumerate()
            .map(|(w, c)| (w as u32, c.clone(), sphere_volume(&self.profile, w as u32)))
            .collect()
    }

    pub fn matches_formula(&self) -> bool {
        self.against_formula().iter().all(|(_, a, b)| a == b)
    }
}

fn field_for(profile: &BlockProfile) -> Result<Field> {
    let f = profile.field();
    make_field(f.p(), f.alpha())
}

fn check_space_cap(profile: &BlockProfile, cap: u64) -> Result<()> {
    if space_size(profile) > BigInt::from(cap) {
        return Err(Error::CapExceeded {
            requested: format!("{}^{}", profile.q(), profile.dimension()),
            cap,
        });
    }
    Ok(())
}

/// Rank of every `rows x cols` matrix, indexed in odometer order.
fn rank_table(rows: usize, cols: usize, field: &Field, cap: u64) -> Result<Vec<u8>> {
    Ok(enumerate_matrices(rows, cols, field, cap)?
        .map(|m| m.rank(field) as u8)
        .collect())
}

/// Weight histogram by visiting every element of the space.
pub fn enumerate_distribution(profile: &BlockProfile, cap: u64) -> Result<WeightDistribution> {
    check_space_cap(profile, cap)?;
    let field = field_for(profile)?;
    let mut tables: BTreeMap<(u32, u32), Vec<u8>> = BTreeMap::new();
    for &(n, m) in profile.blocks() {
        if !tables.contains_key(&(n, m)) {
            tables.insert((n, m), rank_table(n as usize, m as usize, &field, cap)?);
        }
    }
    let ranks: Vec<&[u8]> = profile.blocks().iter().map(|b| tables[b].as_slice()).collect();
    let mut counts = vec![0u64; profile.max_weight() as usize + 1];
    let mut digits = vec![0usize; ranks.len()];
    let mut weight: usize = ranks.iter().map(|r| r[0] as usize).sum();
    'outer: loop {
        counts[weight] += 1;
        let mut pos = ranks.len();
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            weight -= ranks[pos][digits[pos]] as usize;
            digits[pos] += 1;
            if digits[pos] == ranks[pos].len() {
                digits[pos] = 0;
                weight += ranks[pos][0] as usize;
            } else {
                weight += ranks[pos][digits[pos]] as usize;
                break;
            }
        }
    }
    Ok(WeightDistribution {
        profile: profile.clone(),
        counts: counts.into_iter().map(BigInt::from).collect(),
    })
}

/// A linear code given by `F_q`-independent basis elements, each a tuple of
/// matrix blocks. Blocks stay in the order given; `profile` is normalized.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    profile: BlockProfile,
    field: Field,
    blocks: Vec<(u32, u32)>,
    basis: Vec<Vec<FieldMatrix>>,
}

impl GeneratorSet {
    pub fn new(field: Field, blocks: Vec<(u32, u32)>, basis: Vec<Vec<FieldMatrix>>) -> Result<Self> {
        let pf = PrimePowerField::new(u64::from(field.characteristic()), field.degree())?;
        let profile = BlockProfile::new(pf, blocks.clone())?;
        for (i, element) in basis.iter().enumerate() {
            if element.len() != blocks.len() {
                return Err(Error::MalformedGenerator(format!(
                    "basis element {i} has {} blocks, expected {}",
                    element.len(),
                    blocks.len()
                )));
            }
            for (j, (mat, &(n, m))) in element.iter().zip(&blocks).enumerate() {
                if mat.rows() != n as usize || mat.cols() != m as usize {
                    return Err(Error::MalformedGenerator(format!(
                        "basis element {i}, block {j} is {}x{}, expected {n}x{m}",
                        mat.rows(),
                        mat.cols()
                    )));
                }
            }
        }
        let gen = GeneratorSet {
            profile,
            field,
            blocks,
            basis,
        };
        let len = gen.profile.dimension() as usize;
        let flat: Vec<FieldElement> = gen.basis.iter().flat_map(|e| gen.flatten(e)).collect();
        if row_rank(flat, gen.basis.len(), len, &gen.field) != gen.basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(gen)
    }

    /// Every element of the space, as a basis of unit matrices.
    pub fn whole_space(field: Field, blocks: Vec<(u32, u32)>) -> Result<Self> {
        let mut basis = Vec::new();
        for (j, &(n, m)) in blocks.iter().enumerate() {
            for pos in 0..(n * m) as usize {
                let element = blocks
                    .iter()
                    .enumerate()
                    .map(|(i, &(a, b))| {
                        let mut entries = vec![FieldElement::ZERO; (a * b) as usize];
                        if i == j {
                            entries[pos] = FieldElement::ONE;
                        }
                        FieldMatrix::new(a as usize, b as usize, entries).expect("shape matches")
                    })
                    .collect();
                basis.push(element);
            }
        }
        Self::new(field, blocks, basis)
    }

    fn flatten(&self, element: &[FieldMatrix]) -> Vec<FieldElement> {
        element.iter().flat_map(|m| m.entries().iter().copied()).collect()
    }

    pub fn profile(&self) -> &BlockProfile {
        &self.profile
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn blocks(&self) -> &[(u32, u32)] {
        &self.blocks
    }

    pub fn basis(&self) -> &[Vec<FieldMatrix>] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `q^{dim}`
    pub fn code_size(&self) -> BigInt {
        crate::exact::pow(self.profile.q(), self.basis.len() as u64)
    }

    fn weight(&self, word: &[FieldElement]) -> u32 {
        let mut offset = 0;
        let mut total = 0;
        for &(n, m) in &self.blocks {
            let len = (n * m) as usize;
            total += row_rank(word[offset..offset + len].to_vec(), n as usize, m as usize, &self.field) as u32;
            offset += len;
        }
        total
    }
}

/// Minimum sum-rank weight over all nonzero codewords.
pub fn code_min_distance(gen: &GeneratorSet, cap: u64) -> Result<u32> {
    if gen.basis.is_empty() {
        return Err(Error::InvalidParams("the zero code has no minimum distance".into()));
    }
    let count = gen.code_size();
    if count > BigInt::from(cap) {
        return Err(Error::CapExceeded {
            requested: format!("{}^{}", gen.profile.q(), gen.basis.len()),
            cap,
        });
    }
    let field = &gen.field;
    // multiples[i][c] = c * basis_i, so a digit change is one subtract and one add.
    let multiples: Vec<Vec<Vec<FieldElement>>> = gen
        .basis
        .iter()
        .map(|e| {
            let row = gen.flatten(e);
            field
                .elements()
                .map(|c| row.iter().map(|&x| field.mul(c, x)).collect())
                .collect()
        })
        .collect();
    let q = field.order() as usize;
    let mut word = vec![FieldElement::ZERO; multiples[0][0].len()];
    let mut digits = vec![0usize; multiples.len()];
    let mut best = u32::MAX;
    for _ in 1..count.to_u64().expect("within cap") {
        let mut pos = multiples.len();
        loop {
            pos -= 1;
            let old = digits[pos];
            let new = (old + 1) % q;
            for ((w, &a), &b) in word.iter_mut().zip(&multiples[pos][old]).zip(&multiples[pos][new]) {
                *w = field.add(field.sub(*w, a), b);
            }
            digits[pos] = new;
            if new != 0 {
                break;
            }
        }
        best = best.min(gen.weight(&word));
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectReport {
    pub d: u32,
    pub min_distance: u32,
    pub radius: u32,
    pub code_size: BigInt,
    pub ball_volume: BigInt,
    /// `|C| * V_r`
    pub covered: BigInt,
    pub space_size: BigInt,
    pub perfect: bool,
}

/// Perfect means minimum distance at least `d` and `|C| * V_r = |space|`.
pub fn verify_perfect(gen: &GeneratorSet, d: u32, cap: u64) -> Result<PerfectReport> {
    if d == 0 {
        return Err(Error::DistanceOutOfRange { d, max: gen.profile.max_weight() });
    }
    let min_distance = code_min_distance(gen, cap)?;
    let radius = packing_radius(d);
    let code_size = gen.code_size();
    let ball = ball_volume(&gen.profile, radius).ball_volume;
    let covered = &code_size * &ball;
    let space = space_size(&gen.profile);
    Ok(PerfectReport {
        d,
        min_distance,
        radius,
        perfect: min_distance >= d && covered == space,
        code_size,
        ball_volume: ball,
        covered,
        space_size: space,
    })
}

/// Generator file: `{"q": {"p": 2, "alpha": 1}, "blocks": [[n, m], ...],
/// "basis": [[block entries, ...], ...]}`. Each block is a row-major entry
/// list; an entry is either an integer (a residue mod p, or for extension
/// fields the packed index `sum c_j p^j`) or a coefficient list
/// `[c_0, ..., c_{alpha-1}]`, constant term first.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorFile {
    q: FieldSpec,
    blocks: Vec<(u32, u32)>,
    basis: Vec<Vec<Vec<EntrySpec>>>,
    #[serde(default)]
    #[allow(dead_code)]
    description: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldSpec {
    p: u64,
    alpha: u32,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum EntrySpec {
    Packed(u32),
    Coefficients(Vec<u32>),
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedGenerator(msg.into())
}

/// Parses and validates a generator file (shapes, entry ranges, independence).
pub fn parse_generator(text: &str) -> Result<GeneratorSet> {
    let file: GeneratorFile = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    let field = make_field(file.q.p, file.q.alpha).map_err(|e| malformed(format!("field: {e}")))?;
    if file.blocks.is_empty() {
        return Err(malformed("no blocks"));
    }
    let mut basis = Vec::with_capacity(file.basis.len());
    for (i, element) in file.basis.iter().enumerate() {
        if element.len() != file.blocks.len() {
            return Err(malformed(format!(
                "basis element {i} has {} blocks, expected {}",
                element.len(),
                file.blocks.len()
            )));
        }
        let mut mats = Vec::with_capacity(element.len());
        for (j, (entries, &(n, m))) in element.iter().zip(&file.blocks).enumerate() {
            if entries.len() != (n * m) as usize {
                return Err(malformed(format!(
                    "basis element {i}, block {j}: {} entries for a {n}x{m} block",
                    entries.len()
                )));
            }
            let values = entries
                .iter()
                .map(|e| match e {
                    EntrySpec::Packed(x) => field.element(*x),
                    EntrySpec::Coefficients(c) if c.len() == field.degree() as usize => field.from_coefficients(c),
                    EntrySpec::Coefficients(c) => Err(malformed(format!(
                        "coefficient list of length {} for a degree-{} field",
                        c.len(),
                        field.degree()
                    ))),
                })
                .collect::<Result<Vec<_>>>()
                .map_err(|e| match e {
                    Error::MalformedGenerator(_) => e,
                    other => malformed(format!("basis element {i}, block {j}: {other}")),
                })?;
            mats.push(FieldMatrix::new(n as usize, m as usize, values)?);
        }
        basis.push(mats);
    }
    GeneratorSet::new(field, file.blocks, basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rank_count;

    fn profile(q: u64, blocks: Vec<(u32, u32)>) -> BlockProfile {
        BlockProfile::new(PrimePowerField::from_order(q).unwrap(), blocks).unwrap()
    }

    fn big(v: &[u64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn gf(p: u64, alpha: u32) -> Field {
        make_field(p, alpha).unwrap()
    }

    fn mat(rows: usize, cols: usize, v: &[u32]) -> FieldMatrix {
        FieldMatrix::new(rows, cols, v.iter().map(|&x| FieldElement(x)).collect()).unwrap()
    }

    #[test]
    fn distribution_examples() {
        let d = enumerate_distribution(&profile(2, vec![(2, 2), (2, 2)]), 1 << 24).unwrap();
        assert_eq!(d.counts, big(&[1, 18, 93, 108, 36]));
        assert_eq!(d.total(), BigInt::from(256));
        let d = enumerate_distribution(&profile(2, vec![(1, 1)]), 1 << 24).unwrap();
        assert_eq!(d.counts, big(&[1, 1]));
        let p3 = profile(3, vec![(2, 2)]);
        let d = enumerate_distribution(&p3, 1 << 24).unwrap();
        let q = BigInt::from(3);
        assert_eq!(d.counts, vec![BigInt::from(1), rank_count(2, 2, 1, &q), rank_count(2, 2, 2, &q)]);
        assert!(d.matches_formula());
    }

    #[test]
    fn distribution_cap() {
        let p = profile(2, vec![(3, 3), (3, 3)]);
        assert!(matches!(enumerate_distribution(&p, 1 << 10), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn mixed_and_extension_profiles() {
        for (q, blocks) in [
            (2, vec![(1, 3), (2, 2), (1, 1)]),
            (4, vec![(1, 2), (2, 2)]),
            (3, vec![(1, 1); 5]),
            (8, vec![(1, 1), (1, 2)]),
        ] {
            let d = enumerate_distribution(&profile(q, blocks), 1 << 24).unwrap();
            assert!(d.matches_formula(), "{:?}", d.profile);
            assert_eq!(d.total(), space_size(&d.profile));
        }
    }

    fn hamming74() -> GeneratorSet {
        let rows = [
            [1, 0, 0, 0, 1, 1, 0],
            [0, 1, 0, 0, 1, 0, 1],
            [0, 0, 1, 0, 0, 1, 1],
            [0, 0, 0, 1, 1, 1, 1],
        ];
        let basis = rows.iter().map(|r| r.iter().map(|&x| mat(1, 1, &[x])).collect()).collect();
        GeneratorSet::new(gf(2, 1), vec![(1, 1); 7], basis).unwrap()
    }

    #[test]
    fn min_distance_examples() {
        let full = vec![mat(2, 2, &[1, 0, 0, 1]), mat(2, 2, &[0, 1, 1, 1])];
        let g = GeneratorSet::new(gf(2, 1), vec![(2, 2), (2, 2)], vec![full]).unwrap();
        assert_eq!(code_min_distance(&g, CODE_ENUMERATION_CAP).unwrap(), 4);
        let g = identity_code();
        assert_eq!(code_min_distance(&g, CODE_ENUMERATION_CAP).unwrap(), 2);
        assert_eq!(code_min_distance(&hamming74(), CODE_ENUMERATION_CAP).unwrap(), 3);
    }

    fn identity_code() -> GeneratorSet {
        let e = vec![mat(2, 2, &[1, 0, 0, 1]), mat(2, 2, &[0, 0, 0, 0])];
        GeneratorSet::new(gf(2, 1), vec![(2, 2), (2, 2)], vec![e]).unwrap()
    }

    #[test]
    fn perfect_examples() {
        let r = verify_perfect(&hamming74(), 3, CODE_ENUMERATION_CAP).unwrap();
        assert!(r.perfect);
        assert_eq!(r.covered, BigInt::from(128));
        assert_eq!(r.code_size, BigInt::from(16));
        let r = verify_perfect(&identity_code(), 2, CODE_ENUMERATION_CAP).unwrap();
        assert!(!r.perfect);
        assert_eq!(r.covered, BigInt::from(2));
        for (p, a, blocks) in [(2, 1, vec![(2, 2), (2, 2)]), (3, 1, vec![(1, 2)]), (2, 2, vec![(1, 1), (1, 2)])] {
            let whole = GeneratorSet::whole_space(gf(p, a), blocks).unwrap();
            assert!(verify_perfect(&whole, 1, CODE_ENUMERATION_CAP).unwrap().perfect);
        }
    }

    #[test]
    fn repetition_code_is_perfect() {
        let basis = vec![vec![mat(1, 1, &[1]); 3]];
        let g = GeneratorSet::new(gf(2, 1), vec![(1, 1); 3], basis).unwrap();
        let r = verify_perfect(&g, 3, CODE_ENUMERATION_CAP).unwrap();
        assert_eq!(r.min_distance, 3);
        assert!(r.perfect);
    }

    #[test]
    fn dependent_basis_rejected() {
        let e = vec![mat(1, 1, &[1]), mat(1, 1, &[1])];
        let err = GeneratorSet::new(gf(2, 1), vec![(1, 1); 2], vec![e.clone(), e]).unwrap_err();
        assert_eq!(err, Error::DependentBasis);
        assert_eq!(err.to_string(), "basis not independent");
        // Over F_3 the second element is twice the first.
        let a = vec![mat(1, 2, &[1, 2])];
        let b = vec![mat(1, 2, &[2, 1])];
        assert_eq!(GeneratorSet::new(gf(3, 1), vec![(1, 2)], vec![a, b]).unwrap_err(), Error::DependentBasis);
    }

    #[test]
    fn code_cap() {
        let whole = GeneratorSet::whole_space(gf(2, 1), vec![(3, 3), (3, 3)]).unwrap();
        assert!(matches!(code_min_distance(&whole, 1 << 10), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn extension_field_code_matches_brute_force() {
        // Two F_4-multiples of a rank-1 element plus an independent one.
        let f = gf(2, 2);
        let a = vec![mat(2, 2, &[1, 2, 0, 0])];
        let b = vec![mat(2, 2, &[0, 0, 3, 1])];
        let g = GeneratorSet::new(f.clone(), vec![(2, 2)], vec![a.clone(), b.clone()]).unwrap();
        let mut best = u32::MAX;
        for x in f.elements() {
            for y in f.elements() {
                if x.is_zero() && y.is_zero() {
                    continue;
                }
                let w = a[0].scale(x, &f).add(&b[0].scale(y, &f), &f).rank(&f) as u32;
                best = best.min(w);
            }
        }
        assert_eq!(code_min_distance(&g, CODE_ENUMERATION_CAP).unwrap(), best);
    }

    #[test]
    fn parse_examples() {
        let text = r#"{"q": {"p": 2, "alpha": 1}, "blocks": [[1,1],[1,1],[1,1]], "basis": [[[1],[1],[1]]]}"#;
        let g = parse_generator(text).unwrap();
        assert_eq!(g.dimension(), 1);
        let ext = r#"{"q": {"p": 2, "alpha": 2}, "blocks": [[1,2]], "basis": [[[[1,0],[0,1]]], [[3, 0]]]}"#;
        let g = parse_generator(ext).unwrap();
        assert_eq!(g.basis()[0][0].entries(), &[FieldElement(1), FieldElement(2)]);
        assert_eq!(g.basis()[1][0].entries(), &[FieldElement(3), FieldElement(0)]);
    }

    #[test]
    fn parse_rejects() {
        let cases = [
            r#"{"q": {"p": 2, "alpha": 1}, "blocks": [[1,1]], "basis": [[[1]]], "extra": 1}"#,
            r#"{"q": {"p": 4, "alpha": 1}, "blocks": [[1,1]], "basis": [[[1]]]}"#,
            r#"{"q": {"p": 2, "alpha": 1}, "blocks": [[1,2]], "basis": [[[1]]]}"#,
            r#"{"q": {"p": 2, "alpha": 1}, "blocks": [[1,1]], "basis": [[[2]]]}"#,
            r#"{"q": {"p": 2, "alpha": 2}, "blocks": [[1,1]], "basis": [[[[1,0,1]]]]}"#,
            r#"{"q": {"p": 2, "alpha": 1}, "blocks": [], "basis": []}"#,
            r#"{"q": {"p": 2, "alpha": 1}, "blocks": [[1,1]], "basis": [[[1],[1]]]}"#,
            "not json",
        ];
        for c in cases {
            assert!(matches!(parse_generator(c), Err(Error::MalformedGenerator(_))), "{c}");
        }
        let dep = r#"{"q": {"p": 2, "alpha": 1}, "blocks": [[1,1]], "basis": [[[1]], [[1]]]}"#;
        assert_eq!(parse_generator(dep).unwrap_err(), Error::DependentBasis);
    }
}
