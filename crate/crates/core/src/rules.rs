//! Non-existence criteria for linear perfect codes in `t` equal `n x n`
//! blocks, each as a guarded predicate returning a verdict with witness data.

use std::cmp::Ordering;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bounds::{
    ball_upper_bound, compare_q_power, packing_radius, perfection_divisibility, singleton_packing_check,
    DivisibilityVerdict, QPowerExpr,
};
use crate::error::{Error, Result};
use crate::exact::{as_q_power, p_adic_valuation, PrimePowerField};
use crate::volume::{congruence_poly, BlockProfile};

/// Smallest integer above `e^3`.
pub const E3_CUTOFF: u64 = 21;
/// Smallest integer above `e^4`.
pub const E4_CUTOFF: u64 = 55;

/// Parameters `(q, n, t, d)` of a code in `t` blocks of size `n x n`, with an
/// optional claimed dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSet {
    field: PrimePowerField,
    n: u32,
    t: u32,
    d: u32,
    dim: Option<u64>,
}

impl ParamSet {
    pub fn new(field: PrimePowerField, n: u32, t: u32, d: u32, dim: Option<u64>) -> Result<Self> {
        if n == 0 || t == 0 {
            return Err(Error::InvalidParams(format!("n = {n} and t = {t} must be positive")));
        }
        let max = n.checked_mul(t).ok_or_else(|| Error::InvalidParams("t * n overflows".into()))?;
        if d < 1 || d > max {
            return Err(Error::DistanceOutOfRange { d, max });
        }
        if let Some(dim) = dim {
            let total = u64::from(n) * u64::from(n) * u64::from(t);
            if dim > total {
                return Err(Error::InvalidParams(format!("dimension {dim} exceeds t * n^2 = {total}")));
            }
        }
        Ok(ParamSet { field, n, t, d, dim })
    }

    pub fn field(&self) -> &PrimePowerField {
        &self.field
    }

    pub fn q(&self) -> &BigInt {
        self.field.q()
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn dim(&self) -> Option<u64> {
        self.dim
    }

    /// `floor((d - 1) / 2)`; the only place the parity split happens.
    pub fn k(&self) -> u32 {
        packing_radius(self.d)
    }

    pub fn d_even(&self) -> bool {
        self.d % 2 == 0
    }

    pub fn profile(&self) -> BlockProfile {
        BlockProfile::square(self.field.clone(), self.n, self.t).expect("validated parameters")
    }

    fn q_at_least(&self, bound: u64) -> bool {
        *self.q() >= BigInt::from(bound)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Conclusion {
    Inconclusive,
    NecessaryConditionViolated,
    NonExistent,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::NonExistent => "NonExistent",
            Conclusion::NecessaryConditionViolated => "NecessaryConditionViolated",
            Conclusion::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Confidence {
    High,
    Low,
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Confidence::High => "high",
            Confidence::Low => "low",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleVerdict {
    pub rule_id: &'static str,
    pub citation: &'static str,
    pub applicable: bool,
    pub conclusion: Conclusion,
    /// Exact values behind the decision, as `(name, value)` pairs.
    pub witness: Vec<(String, String)>,
    /// An exact computation in the witness confirms the conclusion.
    pub certified: bool,
    pub confidence: Confidence,
}

impl RuleVerdict {
    fn inapplicable(rule_id: &'static str, citation: &'static str, guard: &str) -> Self {
        RuleVerdict {
            rule_id,
            citation,
            applicable: false,
            conclusion: Conclusion::Inconclusive,
            witness: vec![("guard".into(), guard.into())],
            certified: false,
            confidence: Confidence::High,
        }
    }

    fn decided(
        rule_id: &'static str,
        citation: &'static str,
        conclusion: Conclusion,
        witness: Vec<(String, String)>,
        certified: bool,
    ) -> Self {
        let confidence = if conclusion == Conclusion::NonExistent && !certified {
            Confidence::Low
        } else {
            Confidence::High
        };
        RuleVerdict {
            rule_id,
            citation,
            applicable: true,
            conclusion,
            witness,
            certified,
            confidence,
        }
    }

    pub fn witness_value(&self, key: &str) -> Option<&str> {
        self.witness.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

fn w(key: &str, value: impl fmt::Display) -> (String, String) {
    (key.to_string(), value.to_string())
}

pub const T2_LARGE_K: &str = "t2_large_k";
pub const T2_SMALL_K: &str = "t2_small_k";
pub const T2_Q23: &str = "t2_q23";
pub const K1: &str = "k1";
pub const K2_CONGRUENCE: &str = "k2_congruence";
pub const DIM_DIVISIBILITY: &str = "dim_divisibility";
pub const LARGE_D: &str = "large_d";
pub const GCD: &str = "gcd";
pub const PRODUCT: &str = "product";
pub const MOD_P: &str = "mod_p";
pub const PERFECTION_DIVISIBILITY: &str = "perfection_divisibility";
pub const SINGLETON_PACKING: &str = "singleton_packing";

const CITE_T2_LARGE_K: &str = "t = 2, q >= 5, floor((d-1)/2) >= 6 => no perfect code";
const CITE_T2_SMALL_K: &str = "t = 2, q > e^3, 1 <= floor((d-1)/2) <= 5 => no perfect code";
const CITE_T2_Q23: &str =
    "t = 2, q = 2 with n >= 4 and floor((d-1)/2) != 2, or q = 3 with n >= 3 => no perfect code";
const CITE_K1: &str = "floor((d-1)/2) = 1, q > t + 1 => no perfect code";
const CITE_K2: &str =
    "d in {5, 6} => q odd needs t = 1 or 2 (mod q); q = 2 needs 4 | t - 2 or 4 | t - 1";
const CITE_DIM: &str = "d in {5, 6} => n divides the dimension of a perfect code";
const CITE_LARGE_D: &str =
    "t > 1, q > e^4, and d odd with floor((d-1)/2) >= 3t or d even with n > t and floor((d-1)/2) >= 7t/4 => no perfect code";
const CITE_GCD: &str = "gcd(q, k!) = 1 and gcd(t, q) != 1 => no perfect code";
const CITE_PRODUCT: &str = "gcd(q, k!) = 1 and (t-1)(t-2)...(t-k) != 0 (mod q) => no perfect code";
const CITE_MOD_P: &str = "1 + sum_{i<=k} (-1)^i C(t, i) != 0 (mod p) => no perfect code over any F_{p^alpha}";
const CITE_PERFECTION: &str = "a linear perfect code needs V_r to be a power of q";
const CITE_SINGLETON_PACKING: &str = "a perfect code has |space| / V_r codewords, at most the Singleton-like bound";

/// Standing hypotheses shared by every registry rule.
fn regime_guard(params: &ParamSet) -> Option<&'static str> {
    if params.n < 2 {
        Some("n >= 2 (rules need square blocks of size at least 2)")
    } else if params.k() == 0 {
        Some("floor((d-1)/2) >= 1")
    } else {
        None
    }
}

/// Exact checks on the true ball volume `V_k`.
struct VolumeEvidence {
    ball: BigInt,
    q_power: Option<u64>,
    /// `V_k * SingletonBound < |space|`
    singleton_excludes: bool,
}

impl VolumeEvidence {
    fn of(params: &ParamSet) -> Self {
        let check = singleton_packing_check(&params.profile(), params.d).expect("validated parameters");
        let q_power = as_q_power(&check.ball_volume, params.q());
        VolumeEvidence {
            ball: check.ball_volume,
            q_power,
            singleton_excludes: check.excludes_perfect,
        }
    }

    fn excludes(&self) -> bool {
        self.q_power.is_none() || self.singleton_excludes
    }

    fn push(&self, witness: &mut Vec<(String, String)>) {
        witness.push(w("V_k", &self.ball));
        witness.push(w("V_k_is_q_power", self.q_power.is_some()));
        witness.push(w("singleton_excludes", self.singleton_excludes));
    }
}

/// `k (k+1) C(k+t-1, t-1) < q^{(4k^2 - 4kt - t(4-t) + 4t*extra) / 4t}`, with
/// `extra = n` for even `d`: the volume upper bound stays below what the
/// Singleton-like bound allows.
fn size_certificate(params: &ParamSet, witness: &mut Vec<(String, String)>) -> bool {
    let (n, t, k) = (params.n, params.t, params.k());
    let multiplier = ball_upper_bound(n, n, t, k).multiplier;
    let extra = if params.d_even() { i64::from(n) } else { 0 };
    let (t, k) = (i64::from(t), i64::from(k));
    let rhs = QPowerExpr::new(BigInt::one(), 4 * k * k - 4 * k * t - t * (4 - t) + 4 * t * extra, 4 * t as u64);
    let holds = compare_q_power(&multiplier, &rhs, params.q()) == Ordering::Less;
    witness.push(w("size_multiplier", &multiplier));
    witness.push(w("size_threshold", &rhs));
    witness.push(w("size_certificate", holds));
    holds
}

/// `P(t, k) mod q`, the residue of `V_k` modulo `q`.
fn congruence_residue(params: &ParamSet) -> BigInt {
    congruence_poly(u64::from(params.t), u64::from(params.k())).mod_floor(params.q())
}

fn push_congruence(params: &ParamSet, witness: &mut Vec<(String, String)>) -> bool {
    let residue = congruence_residue(params);
    witness.push(w("P(t,k) mod q", &residue));
    !residue.is_zero()
}

/// Shared tail for the size-based rules: certify by the size inequality or
/// the true volume.
fn size_rule(
    params: &ParamSet,
    rule_id: &'static str,
    citation: &'static str,
    mut witness: Vec<(String, String)>,
) -> RuleVerdict {
    let by_size = size_certificate(params, &mut witness);
    let evidence = VolumeEvidence::of(params);
    evidence.push(&mut witness);
    RuleVerdict::decided(rule_id, citation, Conclusion::NonExistent, witness, by_size || evidence.excludes())
}

pub fn rule_t2_large_k(params: &ParamSet) -> RuleVerdict {
    let (id, cite) = (T2_LARGE_K, CITE_T2_LARGE_K);
    if let Some(g) = regime_guard(params) {
        return RuleVerdict::inapplicable(id, cite, g);
    }
    if params.t != 2 {
        return RuleVerdict::inapplicable(id, cite, "t = 2");
    }
    if !params.q_at_least(5) {
        return RuleVerdict::inapplicable(id, cite, "q >= 5");
    }
    if params.k() < 6 {
        return RuleVerdict::inapplicable(id, cite, "floor((d-1)/2) >= 6");
    }
    size_rule(params, id, cite, vec![w("k", params.k())])
}

pub fn rule_t2_small_k(params: &ParamSet) -> RuleVerdict {
    let (id, cite) = (T2_SMALL_K, CITE_T2_SMALL_K);
    if let Some(g) = regime_guard(params) {
        return RuleVerdict::inapplicable(id, cite, g);
    }
    if params.t != 2 {
        return RuleVerdict::inapplicable(id, cite, "t = 2");
    }
    if !params.q_at_least(E3_CUTOFF) {
        return RuleVerdict::inapplicable(id, cite, "q >= 21");
    }
    if params.k() > 5 {
        return RuleVerdict::inapplicable(id, cite, "floor((d-1)/2) <= 5");
    }
    size_rule(params, id, cite, vec![w("k", params.k())])
}

pub fn rule_t2_q23(params: &ParamSet) -> RuleVerdict {
    let (id, cite) = (T2_Q23, CITE_T2_Q23);
    if let Some(g) = regime_guard(params) {
        return RuleVerdict::inapplicable(id, cite, g);
    }
    if params.t != 2 {
        return RuleVerdict::inapplicable(id, cite, "t = 2");
    }
    let k = params.k();
    let q = params.q();
    let (branch, threshold) = if *q == BigInt::from(2) {
        if params.n < 4 {
            return RuleVerdict::inapplicable(id, cite, "q = 2 needs n >= 4");
        }
        if k == 2 {
            return RuleVerdict::inapplicable(id, cite, "q = 2 needs floor((d-1)/2) != 2");
        }
        ("q = 2", 6)
    } else if *q == BigInt::from(3) {
        if params.n < 3 {
            return RuleVerdict::inapplicable(id, cite, "q = 3 needs n >= 3");
        }
        ("q = 3", 5)
    } else {
        return RuleVerdict::inapplicable(id, cite, "q in {2, 3}");
    };
    let mut witness = vec![w("branch", branch), w("k", k)];
    let route = if k == 1 {
        "V_1 is not a power of q"
    } else if k < threshold {
        "closed-form volume of two square blocks"
    } else {
        "size inequality"
    };
    witness.push(w("route", route));
    witness.push(w(
        "reading",
        "hypotheses taken from the bullet conditions together with the closed-form appendix cases",
    ));
    let by_size = k >= threshold && size_certificate(params, &mut witness);
    let evidence = VolumeEvidence::of(params);
    evidence.push(&mut witness);
    RuleVerdict::decided(id, cite, Conclusion::NonExistent, witness, by_size || evidence.excludes())
}

pub fn rule_k1(params: &ParamSet) -> RuleVerdict {
    let (id, cite) = (K1, CITE_K1);
    if let Some(g) = regime_guard(params) {
        return RuleVerdict::inapplicable(id, cite, g);
    }
    if params.k() != 1 {
        return RuleVerdict::inapplicable(id, cite, "floor((d-1)/2) = 1");
    }
    if *params.q() <= BigInt::from(params.t) + 1 {
        return RuleVerdict::inapplicable(id, cite, "q > t + 1");
    }
    let mut witness = vec![w("q", params.q()), w("t + 1", params.t + 1)];
    let by_congruence = push_congruence(params, &mut witness);
    let evidence = VolumeEvidence::of(params);
    evidence.push(&mut witness);
    RuleVerdict::decided(id, cite, Conclusion::NonExistent, witness, by_congruence || evidence.excludes())
}

pub fn rule_k2_congruence(params: &ParamSet) -> RuleVerdict {
    let (id, cite) = (K2_CONGRUENCE, CITE_K2);
    if let Some(g) = regime_guard(params) {
        return RuleVerdict::inapplicable(id, cite, g);
    }
    if !matches!(params.d, 5 | 6) {
        return RuleVerdict::inapplicable(id, cite, "d in {5, 6}");
    }
    let q = params.q();
    let t = BigInt::from(params.t);
    let (fires, mut witness) = if q.is_odd() {
        let r = t.mod_floor(q);
        (!r.is_one() && r != BigInt::from(2), vec![w("t mod q", r)])
    } else if *q == BigInt::from(2) {
        let r = params.t % 4;
        (r != 2 && r != 1, vec![w("t mod 4", r)])
    } else {
        return RuleVerdict::inapplicable(id, cite, "q odd or q = 2");
    };
    if !fires {
        return RuleVerdict::decided(id, cite, Conclusion::Inconclusive, witness, false);
    }
    let certified = push_congruence(params, &mut witness);
    RuleVerdict::decided(id, cite, Conclusion::NonExistent, witness, certified)
}

pub fn rule_dim_divisibility(params: &ParamSet) -> RuleVerdict {
    let (id, cite) = (DIM_DIVISIBILITY, CITE_DIM);
    if let Some(g) = regime_guard(params) {
        return RuleVerdict::inapplicable(id, cite, g);
    }
    if !matches!(params.d, 5 | 6) {
        return RuleVerdict::inapplicable(id, cite, "d in {5, 6}");
    }
    let Some(dim) = params.dim else {
        return RuleVerdict::inapplicable(id, cite, "dimension given");
    };
    let rem = dim % u64::from(params.n);
    let witness = vec![w("dim", dim), w("n", params.n), w("dim mod n", rem)];
    let conclusion = if rem != 0 {
        Conclusion::NecessaryConditionViolated
    } else {
        Conclusion::Inconclusive
    };
    RuleVerdict::decided(id, cite, conclusion, witness, rem != 0)
}

pub fn rule_large_d(params: &ParamSet) -> RuleVerdict {
    let (id, cite) = (LARGE_D, CITE_LARGE_D);
    if let Some(g) = regime_guard(params) {
        return RuleVerdict::inapplicable(id, cite, g);
    }
    if params.t < 2 {
        return RuleVerdict::inapplicable(id, cite, "t > 1");
    }
    if !params.q_at_least(E4_CUTOFF) {
        return RuleVerdict::inapplicable(id, cite, "q >= 55");
    }
    let (k, t) = (params.k(), params.t);
    let branch = if params.d_even() {
        if params.n <= t {
            return RuleVerdict::inapplicable(id, cite, "d even needs n > t");
        }
        if 4 * k < 7 * t {
            return RuleVerdict::inapplicable(id, cite, "d even needs floor((d-1)/2) >= 7t/4");
        }
        "d even"
    } else {
        if k < 3 * t {
            return RuleVerdict::inapplicable(id, cite, "d odd needs floor((d-1)/2) >= 3t");
        }
        "d odd"
    };
    size_rule(params, id, cite, vec![w("branch", branch), w("k", k)])
}

pub fn rule_gcd(params: &ParamSet) -> RuleVerdict {
    let (id, cite) = (GCD, CITE_GCD);
    if let Some(g) = regime_guard(params) {
        return RuleVerdict::inapplicable(id, cite, g);
    }
    if params.p() <= u64::from(params.k()) {
        return RuleVerdict::inapplicable(id, cite, "p > k, i.e. gcd(q, k!) = 1");
    }
    let divides = u64::from(params.t) % params.p() == 0;
    let mut witness = vec![w("p", params.p()), w("t mod p", u64::from(params.t) % params.p())];
    if !divides {
        return RuleVerdict::decided(id, cite, Conclusion::Inconclusive, witness, false);
    }
    let certified = push_congruence(params, &mut witness);
    RuleVerdict::decided(id, cite, Conclusion::NonExistent, witness, certified)
}

pub fn rule_product(params: &ParamSet) -> RuleVerdict {
    let (id, cite) = (PRODUCT, CITE_PRODUCT);
    if let Some(g) = regime_guard(params) {
        return RuleVerdict::inapplicable(id, cite, g);
    }
    let k = params.k();
    if params.p() <= u64::from(k) {
        return RuleVerdict::inapplicable(id, cite, "p > k, i.e. gcd(q, k!) = 1");
    }
    let t = BigInt::from(params.t);
    let product = (1..=k).fold(BigInt::one(), |acc, i| acc * (&t - i));
    let residue = product.mod_floor(params.q());
    let mut witness = vec![w("(t-1)...(t-k)", &product), w("product mod q", &residue)];
    if residue.is_zero() {
        return RuleVerdict::decided(id, cite, Conclusion::Inconclusive, witness, false);
    }
    let certified = push_congruence(params, &mut witness);
    RuleVerdict::decided(id, cite, Conclusion::NonExistent, witness, certified)
}

pub fn rule_mod_p(params: &ParamSet) -> RuleVerdict {
    let (id, cite) = (MOD_P, CITE_MOD_P);
    if let Some(g) = regime_guard(params) {
        return RuleVerdict::inapplicable(id, cite, g);
    }
    let poly = congruence_poly(u64::from(params.t), u64::from(params.k()));
    let p = params.p();
    let residue = poly.mod_floor(&BigInt::from(p));
    let mut witness = vec![w("P(t,k)", &poly), w("P(t,k) mod p", &residue)];
    witness.push(match p_adic_valuation(&poly, p) {
        Ok(v) => w("v_p(P)", v),
        Err(_) => w("v_p(P)", "infinite"),
    });
    if residue.is_zero() {
        return RuleVerdict::decided(id, cite, Conclusion::Inconclusive, witness, false);
    }
    RuleVerdict::decided(id, cite, Conclusion::NonExistent, witness, true)
}

/// `V_r` must be a power of `q`; with a claimed dimension it must be exactly
/// `q^{t n^2 - dim}`.
pub fn check_perfection_divisibility(params: &ParamSet) -> RuleVerdict {
    let (id, cite) = (PERFECTION_DIVISIBILITY, CITE_PERFECTION);
    let div = perfection_divisibility(&params.profile(), params.d).expect("validated parameters");
    let mut witness = vec![w("r", div.radius), w("V_r", &div.ball_volume)];
    let conclusion = match div.verdict {
        DivisibilityVerdict::Fail => Conclusion::NonExistent,
        DivisibilityVerdict::Pass { exponent, dimension } => {
            witness.push(w("V_r = q^e, e", exponent));
            witness.push(w("forced dimension", dimension));
            match params.dim {
                Some(dim) if dim != dimension => {
                    witness.push(w("claimed dimension", dim));
                    Conclusion::NecessaryConditionViolated
                }
                _ => Conclusion::Inconclusive,
            }
        }
    };
    let certified = conclusion != Conclusion::Inconclusive;
    RuleVerdict::decided(id, cite, conclusion, witness, certified)
}

/// The perfect-code size `|space| / V_r` against the Singleton-like bound.
pub fn check_singleton_packing(params: &ParamSet) -> RuleVerdict {
    let (id, cite) = (SINGLETON_PACKING, CITE_SINGLETON_PACKING);
    let sp = singleton_packing_check(&params.profile(), params.d).expect("validated parameters");
    let witness = vec![
        w("r", sp.radius),
        w("V_r", &sp.ball_volume),
        w("singleton exponent", sp.singleton.exponent),
        w("excludes", sp.excludes_perfect),
    ];
    let conclusion = if sp.excludes_perfect {
        Conclusion::NonExistent
    } else {
        Conclusion::Inconclusive
    };
    RuleVerdict::decided(id, cite, conclusion, witness, sp.excludes_perfect)
}

/// The registry rules in evaluation order.
pub const RULES: [(&str, fn(&ParamSet) -> RuleVerdict); 10] = [
    (T2_LARGE_K, rule_t2_large_k),
    (T2_SMALL_K, rule_t2_small_k),
    (T2_Q23, rule_t2_q23),
    (K1, rule_k1),
    (K2_CONGRUENCE, rule_k2_congruence),
    (DIM_DIVISIBILITY, rule_dim_divisibility),
    (LARGE_D, rule_large_d),
    (GCD, rule_gcd),
    (PRODUCT, rule_product),
    (MOD_P, rule_mod_p),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub params: ParamSet,
    pub verdicts: Vec<RuleVerdict>,
    pub aggregate: Conclusion,
}

impl Evaluation {
    /// Verdicts that reached the aggregate conclusion.
    pub fn deciding(&self) -> impl Iterator<Item = &RuleVerdict> {
        self.verdicts.iter().filter(move |v| v.conclusion == self.aggregate && v.applicable)
    }
}

/// NonExistent beats NecessaryConditionViolated beats Inconclusive.
pub fn aggregate<'a>(verdicts: impl IntoIterator<Item = &'a RuleVerdict>) -> Conclusion {
    verdicts
        .into_iter()
        .map(|v| v.conclusion)
        .max()
        .unwrap_or(Conclusion::Inconclusive)
}

/// Every registry rule, then the generic divisibility and Singleton-packing
/// checks.
pub fn evaluate_all(params: &ParamSet) -> Evaluation {
    let mut verdicts: Vec<RuleVerdict> = RULES.iter().map(|(_, rule)| rule(params)).collect();
    verdicts.push(check_perfection_divisibility(params));
    verdicts.push(check_singleton_packing(params));
    let aggregate = aggregate(&verdicts);
    Evaluation {
        params: params.clone(),
        verdicts,
        aggregate,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub field: PrimePowerField,
    pub n: u32,
    pub t: u32,
    pub d: u32,
    /// Invalid tuples (e.g. `d > t n`) keep their row with the error.
    pub outcome: std::result::Result<Evaluation, Error>,
}

/// One row per `(q, n, t, d)`, in that nesting order.
pub fn sweep(
    fields: &[PrimePowerField],
    n_range: RangeInclusive<u32>,
    t_range: RangeInclusive<u32>,
    d_range: RangeInclusive<u32>,
) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    for field in fields {
        for n in n_range.clone() {
            for t in t_range.clone() {
                for d in d_range.clone() {
                    let outcome = ParamSet::new(field.clone(), n, t, d, None).map(|p| evaluate_all(&p));
                    rows.push(SweepRow {
                        field: field.clone(),
                        n,
                        t,
                        d,
                        outcome,
                    });
                }
            }
        }
    }
    rows
}
