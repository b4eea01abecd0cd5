//! Exact evaluation of the intersecting-family bounds and their hypotheses.
//!
//! Everything here is big-integer or exact-rational arithmetic. Fractional
//! exponents (`s^{5/2}`, `s^{2+1/(k-1)}`) are compared by raising both sides
//! to integer powers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// `C(n, k)`, or an error for negative `n`. Zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> Result<BigUint> {
    if n < 0 {
        return Err(Error::InvalidParameter(format!(
            "binomial with n = {n} < 0"
        )));
    }
    if k < 0 {
        return Ok(BigUint::zero());
    }
    Ok(binom(n as u64, k as u64))
}

pub(crate) fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by i + 1
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TheoremId {
    #[serde(rename = "ekr")]
    Ekr,
    #[serde(rename = "rcw")]
    Rcw,
    #[serde(rename = "frankl-wilson")]
    FranklWilson,
    #[serde(rename = "snevily")]
    Snevily,
    #[serde(rename = "thm15")]
    Thm15,
    #[serde(rename = "thm16")]
    Thm16,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Ekr => "ekr",
            TheoremId::Rcw => "rcw",
            TheoremId::FranklWilson => "frankl-wilson",
            TheoremId::Snevily => "snevily",
            TheoremId::Thm15 => "thm15",
            TheoremId::Thm16 => "thm16",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundParams {
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
}

impl Condition {
    fn new(name: impl Into<String>, holds: bool) -> Self {
        Condition {
            name: name.into(),
            holds,
        }
    }
}

/// A bound value with its hypotheses. `value` is always in lowest terms with
/// a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub theorem: TheoremId,
    pub params: BoundParams,
    pub value: BigRational,
    pub value_floor: BigInt,
    pub applicable: bool,
    pub conditions: Vec<Condition>,
}

impl BoundReport {
    fn new(
        theorem: TheoremId,
        params: BoundParams,
        value: BigRational,
        conditions: Vec<Condition>,
    ) -> Self {
        let value_floor = value.numer().div_floor(value.denom());
        let applicable = conditions.iter().all(|c| c.holds);
        BoundReport {
            theorem,
            params,
            value,
            value_floor,
            applicable,
            conditions,
        }
    }

    fn integral(
        theorem: TheoremId,
        params: BoundParams,
        value: BigUint,
        conditions: Vec<Condition>,
    ) -> Self {
        Self::new(
            theorem,
            params,
            BigRational::from_integer(BigInt::from(value)),
            conditions,
        )
    }

    pub fn condition(&self, name: &str) -> Option<bool> {
        self.conditions
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.holds)
    }
}

/// JSON shape: `{theorem, params, value: {num, den, floor}, conditions, applicable}`.
/// Big integers are decimal strings.
impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Value {
            num: String,
            den: String,
            floor: String,
        }
        let mut st = s.serialize_struct("BoundReport", 5)?;
        st.serialize_field("theorem", &self.theorem)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field(
            "value",
            &Value {
                num: self.value.numer().to_string(),
                den: self.value.denom().to_string(),
                floor: self.value_floor.to_string(),
            },
        )?;
        st.serialize_field("conditions", &self.conditions)?;
        st.serialize_field("applicable", &self.applicable)?;
        st.end()
    }
}

pub const COND_EKR_N: &str = "n ≥ 2s";
pub const COND_K_AT_LEAST_2: &str = "2 ≤ k";
pub const COND_K_PLUS_2: &str = "k+2 ≤ s";
pub const COND_S_LT_N: &str = "s < n";
pub const COND_FIVE_HALVES: &str = "n ≥ s^{5/2}";
pub const COND_K_RANGE: &str = "3 ≤ k ≤ s";
pub const COND_THM16_SUFFICIENT: &str = "n > s³(k−1)!/((s−3)⋯(s−k)) (sufficient, not tight)";

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

/// Intersecting `s`-uniform families with `n ≥ 2s` have at most `C(n−1, s−1)` members.
pub fn ekr_bound(n: u64, s: u64) -> Result<BoundReport> {
    require(n >= 1 && s >= 1, || {
        format!("ekr needs n, s ≥ 1 (n={n}, s={s})")
    })?;
    Ok(BoundReport::integral(
        TheoremId::Ekr,
        BoundParams {
            n,
            s: Some(s),
            k: None,
        },
        binom(n - 1, s - 1),
        vec![Condition::new(COND_EKR_N, n >= 2 * s)],
    ))
}

/// Uniform families with `k` allowed intersection sizes: `C(n, k)`.
pub fn rcw_bound(n: u64, k: u64) -> Result<BoundReport> {
    require(n >= 1 && k <= n, || {
        format!("rcw needs n ≥ 1, k ≤ n (n={n}, k={k})")
    })?;
    Ok(BoundReport::integral(
        TheoremId::Rcw,
        BoundParams {
            n,
            s: None,
            k: Some(k),
        },
        binom(n, k),
        vec![],
    ))
}

/// Non-uniform families with `k` allowed intersection sizes: `Σ_{i≤k} C(n, i)`.
pub fn frankl_wilson_bound(n: u64, k: u64) -> Result<BoundReport> {
    require(n >= 1 && k <= n, || {
        format!("frankl-wilson needs n ≥ 1, k ≤ n (n={n}, k={k})")
    })?;
    let value = (0..=k).map(|i| binom(n, i)).sum();
    Ok(BoundReport::integral(
        TheoremId::FranklWilson,
        BoundParams {
            n,
            s: None,
            k: Some(k),
        },
        value,
        vec![],
    ))
}

/// Families with `1 ≤ |A∩B| ≤ k`: `Σ_{i≤k} C(n−1, i)`.
pub fn snevily_bound(n: u64, k: u64) -> Result<BoundReport> {
    require(n >= 2 && k < n, || {
        format!("snevily needs n ≥ 2, k ≤ n−1 (n={n}, k={k})")
    })?;
    let value = (0..=k).map(|i| binom(n - 1, i)).sum();
    Ok(BoundReport::integral(
        TheoremId::Snevily,
        BoundParams {
            n,
            s: None,
            k: Some(k),
        },
        value,
        vec![],
    ))
}

/// `C(n−1, k) / C(s−1, k)` for `s`-uniform families with `1 ≤ |A∩B| ≤ k`.
///
/// Applicable when `2 ≤ k`, `k+2 ≤ s < n` and `n ≥ s^{5/2}`; the last test
/// is done as `n² ≥ s⁵`.
pub fn thm15_bound(n: u64, s: u64, k: u64) -> Result<BoundReport> {
    require(n >= 1 && s >= 1 && k >= 1, || {
        format!("thm15 needs n, s, k ≥ 1 (n={n}, s={s}, k={k})")
    })?;
    let den = binom(s - 1, k);
    if den.is_zero() {
        return Err(Error::BoundUndefined(format!(
            "C(s−1, k) = C({}, {k}) = 0",
            s - 1
        )));
    }
    let num = binom(n - 1, k);
    let value = BigRational::new(BigInt::from(num), BigInt::from(den));
    let conditions = vec![
        Condition::new(COND_K_AT_LEAST_2, k >= 2),
        Condition::new(COND_K_PLUS_2, k + 2 <= s),
        Condition::new(COND_S_LT_N, s < n),
        Condition::new(COND_FIVE_HALVES, five_halves_holds(n, s)),
    ];
    Ok(BoundReport::new(
        TheoremId::Thm15,
        BoundParams {
            n,
            s: Some(s),
            k: Some(k),
        },
        value,
        conditions,
    ))
}

/// `n ≥ s^{5/2}` decided as `n² ≥ s⁵`.
pub fn five_halves_holds(n: u64, s: u64) -> bool {
    big(n).pow(2u32) >= big(s).pow(5u32)
}

/// `C(n−1, k−1)` for families with members of size `k..=s` and
/// `1 ≤ |A∩B| ≤ k−1`.
///
/// For `k < s` the applicability condition is the sufficient (not tight)
/// threshold `n > s³(k−1)!/((s−3)(s−4)⋯(s−k))`; for `k = s` the statement is
/// the EKR theorem and the condition is `n ≥ 2s`.
pub fn thm16_bound(n: u64, s: u64, k: u64) -> Result<BoundReport> {
    if k < 3 || k > s {
        return Err(Error::InvalidParameter(format!(
            "thm16 needs 3 ≤ k ≤ s (s={s}, k={k})"
        )));
    }
    require(n >= 1, || "thm16 needs n ≥ 1".into())?;
    let mut conditions = vec![Condition::new(COND_K_RANGE, true)];
    if k == s {
        conditions.push(Condition::new(COND_EKR_N, n >= 2 * s));
    } else {
        conditions.push(Condition::new(
            COND_THM16_SUFFICIENT,
            thm16_sufficient_holds(n, s, k),
        ));
    }
    Ok(BoundReport::integral(
        TheoremId::Thm16,
        BoundParams {
            n,
            s: Some(s),
            k: Some(k),
        },
        binom(n - 1, k - 1),
        conditions,
    ))
}

/// `s³ (k−1)! < n · (s−3)(s−4)⋯(s−k)`, requiring `3 ≤ k < s`.
fn thm16_sufficient_holds(n: u64, s: u64, k: u64) -> bool {
    let lhs = big(s).pow(3u32) * (1..k).map(big).product::<BigUint>();
    let falling: BigUint = (3..=k).map(|j| big(s - j)).product();
    lhs < big(n) * falling
}

/// The rational threshold `s³(k−1)!/((s−3)⋯(s−k))` for `3 ≤ k < s`.
pub fn thm16_sufficient_threshold(s: u64, k: u64) -> Result<BigRational> {
    if k < 3 || k >= s {
        return Err(Error::InvalidParameter(format!(
            "threshold needs 3 ≤ k < s (s={s}, k={k})"
        )));
    }
    let lhs = big(s).pow(3u32) * (1..k).map(big).product::<BigUint>();
    let falling: BigUint = (3..=k).map(|j| big(s - j)).product();
    Ok(BigRational::new(BigInt::from(lhs), BigInt::from(falling)))
}

pub const INEQ_PAIR: &str = "2s ≤ (n−1)/(s−1)";
pub const INEQ_PAIR_SUFFICIENT: &str = "2s ≤ n/s";
pub const INEQ_TRIPLE: &str = "s³ ≤ (n−1)(n−2)/((s−1)(s−2))";
pub const INEQ_TRIPLE_SUFFICIENT: &str = "s³ ≤ n²/s²";
pub const INEQ_PAIR_K: &str = "2s ≤ (n−1)/(k−1)";

/// The inequalities closing the hitting-pair and triple-cover cases of the
/// uniform proof, with their sufficient forms, plus the hitting-pair
/// inequality of the mixed-size proof when `k ≥ 2`. All by cross-multiplication.
pub fn check_proof_inequalities(n: u64, s: u64, k: u64) -> Result<Vec<Condition>> {
    require(s >= 3 && n >= 3, || {
        format!("proof inequalities need s ≥ 3, n ≥ 3 (n={n}, s={s})")
    })?;
    let (bn, bs) = (big(n), big(s));
    let mut out = vec![
        Condition::new(INEQ_PAIR, big(2) * &bs * big(s - 1) <= big(n - 1)),
        Condition::new(INEQ_PAIR_SUFFICIENT, big(2) * bs.pow(2u32) <= bn),
        Condition::new(
            INEQ_TRIPLE,
            bs.pow(3u32) * big(s - 1) * big(s - 2) <= big(n - 1) * big(n - 2),
        ),
        Condition::new(INEQ_TRIPLE_SUFFICIENT, five_halves_holds(n, s)),
    ];
    if k >= 2 {
        out.push(Condition::new(
            INEQ_PAIR_K,
            big(2) * bs * big(k - 1) <= big(n - 1),
        ));
    }
    Ok(out)
}

/// Least integer `n` with `n^{k−1} ≥ s^{2k−1}`, i.e. `n ≥ s^{2+1/(k−1)}`.
pub fn op1_conjectured_threshold(s: u64, k: u64) -> Result<BigUint> {
    require(s >= 2 && k >= 2, || {
        format!("threshold needs s ≥ 2, k ≥ 2 (s={s}, k={k})")
    })?;
    let e =
        u32::try_from(k - 1).map_err(|_| Error::InvalidParameter(format!("k = {k} too large")))?;
    let target = big(s).pow(2 * e + 1);
    let mut root = target.nth_root(e);
    while root.pow(e) < target {
        root += 1u32;
    }
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(r: &BoundReport) -> u64 {
        assert!(r.value.is_integer());
        u64::try_from(r.value_floor.clone()).unwrap()
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(7, 3).unwrap(), big(35));
        for n in 0..20 {
            assert_eq!(binomial(n, 0).unwrap(), big(1));
        }
        assert_eq!(binomial(5, 7).unwrap(), big(0));
        assert_eq!(binomial(5, -1).unwrap(), big(0));
        assert!(binomial(-1, 0).is_err());
        assert_eq!(
            binomial(100, 50).unwrap().to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn binomial_matches_pascal() {
        let mut row = vec![big(1)];
        for n in 1..=60u64 {
            let mut next = vec![big(1)];
            for k in 1..n as usize {
                next.push(&row[k - 1] + &row[k]);
            }
            next.push(big(1));
            for (k, v) in next.iter().enumerate() {
                assert_eq!(&binom(n, k as u64), v);
            }
            row = next;
        }
    }

    #[test]
    fn ekr_examples() {
        let r = ekr_bound(6, 3).unwrap();
        assert_eq!(int(&r), 10);
        assert!(r.applicable);
        let r = ekr_bound(5, 3).unwrap();
        assert_eq!(int(&r), 6);
        assert!(!r.applicable);
        let r = ekr_bound(4, 2).unwrap();
        assert_eq!(int(&r), 3);
        assert!(r.applicable);
        assert!(ekr_bound(0, 1).is_err());
    }

    #[test]
    fn rcw_fw_snevily_examples() {
        assert_eq!(int(&rcw_bound(7, 2).unwrap()), 21);
        assert_eq!(int(&rcw_bound(9, 2).unwrap()), 36);
        assert_eq!(int(&rcw_bound(9, 0).unwrap()), 1);
        assert_eq!(int(&frankl_wilson_bound(7, 2).unwrap()), 29);
        assert_eq!(int(&frankl_wilson_bound(7, 0).unwrap()), 1);
        assert_eq!(int(&frankl_wilson_bound(5, 5).unwrap()), 32);
        assert_eq!(int(&snevily_bound(5, 1).unwrap()), 5);
        assert_eq!(int(&snevily_bound(7, 2).unwrap()), 22);
        assert_eq!(int(&snevily_bound(7, 0).unwrap()), 1);
        assert!(rcw_bound(3, 4).is_err());
        assert!(snevily_bound(3, 3).is_err());
        assert!(rcw_bound(3, 1).unwrap().applicable);
    }

    #[test]
    fn thm15_examples() {
        let r = thm15_bound(7, 4, 2).unwrap();
        assert_eq!(r.value, BigRational::from_integer(5.into()));
        assert_eq!(r.condition(COND_FIVE_HALVES), Some(false));
        assert!(!r.applicable);

        let r = thm15_bound(8, 4, 2).unwrap();
        assert_eq!(int(&r), 7);
        assert!(!r.applicable);

        let r = thm15_bound(1024, 16, 2).unwrap();
        assert_eq!(r.condition(COND_FIVE_HALVES), Some(true));
        assert!(r.applicable);
        assert!(!thm15_bound(1023, 16, 2).unwrap().applicable);

        let r = thm15_bound(11, 5, 2).unwrap();
        assert_eq!(r.value, BigRational::new(15.into(), 2.into()));
        assert_eq!(r.value_floor, BigInt::from(7));

        assert!(matches!(
            thm15_bound(10, 3, 3),
            Err(Error::BoundUndefined(_))
        ));
        assert!(thm15_bound(0, 3, 1).is_err());
    }

    #[test]
    fn thm16_examples() {
        let r = thm16_bound(5, 3, 3).unwrap();
        assert_eq!(int(&r), 6);
        assert_eq!(r.condition(COND_EKR_N), Some(false));
        assert!(!r.applicable);

        let r = thm16_bound(100, 4, 3).unwrap();
        assert_eq!(int(&r), 4851);
        assert_eq!(r.condition(COND_THM16_SUFFICIENT), Some(false));
        assert_eq!(
            thm16_sufficient_threshold(4, 3).unwrap(),
            BigRational::from_integer(128.into())
        );
        assert!(!thm16_bound(128, 4, 3).unwrap().applicable);
        assert!(thm16_bound(129, 4, 3).unwrap().applicable);

        let r = thm16_bound(200, 4, 3).unwrap();
        assert_eq!(int(&r), 19701);
        assert!(r.applicable);

        assert!(thm16_bound(10, 4, 2).is_err());
        assert!(thm16_bound(10, 4, 5).is_err());
    }

    #[test]
    fn proof_inequalities() {
        let c = check_proof_inequalities(32, 4, 2).unwrap();
        assert!(c.iter().find(|c| c.name == INEQ_PAIR).unwrap().holds);
        assert!(
            c.iter()
                .find(|c| c.name == INEQ_PAIR_SUFFICIENT)
                .unwrap()
                .holds
        );
        let c = check_proof_inequalities(7, 4, 2).unwrap();
        assert!(!c.iter().find(|c| c.name == INEQ_TRIPLE).unwrap().holds);
        let c = check_proof_inequalities(1024, 16, 2).unwrap();
        assert!(
            c.iter()
                .find(|c| c.name == INEQ_TRIPLE_SUFFICIENT)
                .unwrap()
                .holds
        );
        assert!(!check_proof_inequalities(1023, 16, 2).unwrap()[3].holds);
        // 2s(k−1) ≤ n−1: 2·4·2 = 16 ≤ 16
        let c = check_proof_inequalities(17, 4, 3).unwrap();
        assert!(c.iter().find(|c| c.name == INEQ_PAIR_K).unwrap().holds);
        let c = check_proof_inequalities(16, 4, 3).unwrap();
        assert!(!c.iter().find(|c| c.name == INEQ_PAIR_K).unwrap().holds);
        assert_eq!(check_proof_inequalities(16, 4, 1).unwrap().len(), 4);
        assert!(check_proof_inequalities(16, 2, 1).is_err());
    }

    #[test]
    fn op1_threshold() {
        assert_eq!(op1_conjectured_threshold(4, 2).unwrap(), big(64));
        assert_eq!(op1_conjectured_threshold(9, 3).unwrap(), big(243));
        assert_eq!(op1_conjectured_threshold(5, 3).unwrap(), big(56));
        assert!(op1_conjectured_threshold(1, 3).is_err());
    }

    #[test]
    fn op1_threshold_is_least() {
        for s in 2..40u64 {
            for k in 2..6u64 {
                let t = op1_conjectured_threshold(s, k).unwrap();
                let e = (k - 1) as u32;
                let target = big(s).pow(2 * e + 1);
                assert!(t.pow(e) >= target);
                assert!((&t - 1u32).pow(e) < target);
            }
        }
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(thm15_bound(11, 5, 2).unwrap()).unwrap();
        assert_eq!(v["theorem"], "thm15");
        assert_eq!(v["params"], serde_json::json!({"n": 11, "s": 5, "k": 2}));
        assert_eq!(
            v["value"],
            serde_json::json!({"num": "15", "den": "2", "floor": "7"})
        );
        assert_eq!(v["conditions"][3]["name"], COND_FIVE_HALVES);
        assert_eq!(v["applicable"], false);
        let v = serde_json::to_value(snevily_bound(5, 1).unwrap()).unwrap();
        assert_eq!(v["params"], serde_json::json!({"n": 5, "k": 1}));
    }

    #[test]
    fn ekr_equals_thm16_at_k_equals_s() {
        for s in 3..12 {
            for n in 1..40 {
                let a = ekr_bound(n, s).unwrap();
                let b = thm16_bound(n, s, s).unwrap();
                assert_eq!(a.value, b.value);
                assert_eq!(a.condition(COND_EKR_N), b.condition(COND_EKR_N));
            }
        }
    }

    #[test]
    fn five_halves_exhaustive_small() {
        for s in 0..60u64 {
            for n in 0..2000u64 {
                assert_eq!(five_halves_holds(n, s), n * n >= s.pow(5));
            }
        }
        for t in 1..40u64 {
            let (s, n) = (t * t, t.pow(5));
            assert!(five_halves_holds(n, s));
            assert!(!five_halves_holds(n - 1, s));
        }
    }

    proptest! {
        #[test]
        fn snevily_below_frankl_wilson(n in 2u64..60, k in 1u64..60) {
            prop_assume!(k < n);
            let a = snevily_bound(n, k).unwrap().value_floor;
            let b = frankl_wilson_bound(n, k).unwrap().value_floor;
            prop_assert!(a < b);
        }

        #[test]
        fn bounds_monotone_in_n(n in 3u64..80, s in 3u64..12, k in 1u64..10) {
            if k < s {
                prop_assert!(thm15_bound(n, s, k).unwrap().value <= thm15_bound(n + 1, s, k).unwrap().value);
            }
            if (3..=s).contains(&k) {
                prop_assert!(thm16_bound(n, s, k).unwrap().value <= thm16_bound(n + 1, s, k).unwrap().value);
            }
            prop_assert!(ekr_bound(n, s).unwrap().value <= ekr_bound(n + 1, s).unwrap().value);
            if k <= n {
                prop_assert!(rcw_bound(n, k).unwrap().value <= rcw_bound(n + 1, k).unwrap().value);
                prop_assert!(frankl_wilson_bound(n, k).unwrap().value <= frankl_wilson_bound(n + 1, k).unwrap().value);
            }
            if k < n {
                prop_assert!(snevily_bound(n, k).unwrap().value <= snevily_bound(n + 1, k).unwrap().value);
            }
        }

        #[test]
        fn thm15_value_identity(n in 1u64..400, s in 2u64..40, k in 1u64..39) {
            prop_assume!(k < s);
            let r = thm15_bound(n, s, k).unwrap();
            let lhs = r.value.clone() * BigRational::from_integer(BigInt::from(binom(s - 1, k)));
            prop_assert_eq!(lhs, BigRational::from_integer(BigInt::from(binom(n - 1, k))));
            prop_assert!(r.value.denom() > &BigInt::zero());
        }
    }
}
