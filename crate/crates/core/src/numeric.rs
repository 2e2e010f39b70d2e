//! Integer witnesses `(x, y, d = x^3 - y^2)` and exact comparisons of `|d|`
//! against powers of `x`.
//!
//! Every decision here is an integer comparison. Decimal ratios are produced
//! for reports only.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::families::{build_cubic, integer_values, CorpusEntry, HallFamilyInstance};
use crate::sequences::{Pell5Stream, DEFAULT_INDEX_BOUND};
use crate::{Error, Result};

/// Hard cap on polynomial evaluations in a single `t` scan.
pub const SCAN_LIMIT: u64 = 10_000_000;

/// Pell steps examined by [`danilov_stream`] before giving up.
pub const DANILOV_MAX_PELL_STEPS: usize = 500;

/// Digits used for the `ratio` field of witness JSON.
pub const REPORT_DIGITS: usize = 6;

/// An integer triple with `d = x^3 - y^2`, `x >= 1` and `d != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallWitness {
    source: String,
    t: Option<BigInt>,
    x: BigInt,
    y: BigInt,
    d: BigInt,
}

impl HallWitness {
    /// Validates the triple, recomputing `x^3 - y^2` independently of how
    /// `d` was obtained.
    pub fn new(source: impl Into<String>, t: Option<BigInt>, x: BigInt, y: BigInt, d: BigInt) -> Result<Self> {
        if x < BigInt::one() {
            return Err(Error::DegenerateWitness(format!("x = {x} < 1")));
        }
        if d.is_zero() {
            return Err(Error::DegenerateWitness("x^3 - y^2 = 0".into()));
        }
        if x.pow(3) - y.pow(2) != d {
            return Err(Error::InvariantViolated(format!("x^3 - y^2 != d for x = {x}, y = {y}")));
        }
        Ok(HallWitness { source: source.into(), t, x, y, d })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn t(&self) -> Option<&BigInt> {
        self.t.as_ref()
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn to_line(&self) -> WitnessLine {
        WitnessLine {
            source: self.source.clone(),
            t: self.t.as_ref().map(ToString::to_string),
            x: self.x.to_string(),
            y: self.y.to_string(),
            d: self.d.to_string(),
            ratio: ratio_report(self, REPORT_DIGITS),
        }
    }

    /// Parses and re-verifies a JSONL record.
    pub fn from_line(line: &WitnessLine) -> Result<Self> {
        let int = |s: &str| crate::zpoly::parse_decimal(s);
        let t = line.t.as_deref().map(int).transpose()?;
        Self::new(line.source.clone(), t, int(&line.x)?, int(&line.y)?, int(&line.d)?)
    }
}

/// One line of witness JSONL.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessLine {
    pub source: String,
    pub t: Option<String>,
    pub x: String,
    pub y: String,
    pub d: String,
    pub ratio: String,
}

impl Serialize for HallWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_line().serialize(s)
    }
}

/// A positive rational exponent `p/q`, stored reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EpsRational {
    p: u64,
    q: u64,
}

impl EpsRational {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidArgument(format!("epsilon must be a positive rational, got {p}/{q}")));
        }
        let g = p.gcd(&q);
        Ok(EpsRational { p: p / g, q: q / g })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl fmt::Display for EpsRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl FromStr for EpsRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected p/q with positive integers, got {s:?}"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p = p.parse().map_err(|_| bad())?;
        let q = q.parse().map_err(|_| bad())?;
        EpsRational::new(p, q)
    }
}

/// Where `|d|` falls relative to a threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HallOrdering {
    Below,
    Equal,
    Above,
}

impl From<std::cmp::Ordering> for HallOrdering {
    fn from(o: std::cmp::Ordering) -> Self {
        match o {
            std::cmp::Ordering::Less => HallOrdering::Below,
            std::cmp::Ordering::Equal => HallOrdering::Equal,
            std::cmp::Ordering::Greater => HallOrdering::Above,
        }
    }
}

/// Compares `|d|` with `x^(1/2 + eps)` by raising both sides to the power
/// `2q` (`|d|^(2q)` against `x^(q + 2p)`), with the two exponents divided by
/// their gcd.
pub fn hall_compare(w: &HallWitness, eps: EpsRational) -> HallOrdering {
    let lhs_exp = 2 * eps.q;
    let rhs_exp = eps.q + 2 * eps.p;
    let g = lhs_exp.gcd(&rhs_exp);
    let lhs = num_traits::pow(w.d.abs(), (lhs_exp / g) as usize);
    let rhs = num_traits::pow(w.x.clone(), (rhs_exp / g) as usize);
    lhs.cmp(&rhs).into()
}

/// Compares `|d|` with `(num/den) * sqrt(x)`, i.e. `den^2 d^2` with
/// `num^2 x`.
pub fn compare_scaled_sqrt(w: &HallWitness, num: u64, den: u64) -> HallOrdering {
    let lhs = BigInt::from(den).pow(2) * w.d.pow(2);
    let rhs = BigInt::from(num).pow(2) * &w.x;
    lhs.cmp(&rhs).into()
}

/// `|d| / sqrt(x)` truncated to `digits` decimals, trailing zeros removed.
pub fn ratio_report(w: &HallWitness, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (w.d.pow(2) * &scale * &scale / &w.x).sqrt();
    let (int_part, frac) = scaled.div_rem(&scale);
    if digits == 0 {
        return int_part.to_string();
    }
    let frac = format!("{:0>width$}", frac.to_string(), width = digits);
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        int_part.to_string()
    } else {
        format!("{int_part}.{frac}")
    }
}

/// Evaluates a family member at `t0`.
pub fn specialize(inst: &HallFamilyInstance, t0: &BigInt) -> Result<HallWitness> {
    HallWitness::new(
        format!("family k={}", inst.k()),
        Some(t0.clone()),
        inst.x().eval(t0),
        inst.y().eval(t0),
        inst.d().eval(t0),
    )
}

/// Evaluates a corpus entry at `t0`; the values must be integers there.
pub fn specialize_entry(entry: &CorpusEntry, t0: &BigInt) -> Result<HallWitness> {
    let (x, y, d) = integer_values(entry, t0)?;
    HallWitness::new(format!("corpus {}", entry.name), Some(t0.clone()), x, y, d)
}

/// Witnesses of the family at every `t` in `from..=to` where `x(t) >= 1`.
/// Work is split across threads; the output is in increasing `t`.
pub fn scan_family(inst: &HallFamilyInstance, from: i64, to: i64) -> Result<Vec<HallWitness>> {
    if to < from {
        return Ok(Vec::new());
    }
    let span = (to - from) as u64 + 1;
    if span > SCAN_LIMIT {
        return Err(Error::InvalidArgument(format!("scan of {span} values exceeds the limit {SCAN_LIMIT}")));
    }
    let results: Vec<Result<Option<HallWitness>>> = (from..=to)
        .into_par_iter()
        .map(|t| match specialize(inst, &BigInt::from(t)) {
            Ok(w) => Ok(Some(w)),
            Err(Error::DegenerateWitness(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect();
    results.into_iter().filter_map(Result::transpose).collect()
}

/// Integer near-misses from `z^2 - 5 w^2 = -1`: keeps Pell pairs with
/// `125 | 2z + 11` and `5 | w` and emits `x = (z^2 + 6z + 4)/5`,
/// `y = w (z^2 + 9z + 19)/5`, `d = -27 (2z + 11)/125`. Every witness is
/// checked against `|d| < 0.97 sqrt(x)`. At most
/// [`DANILOV_MAX_PELL_STEPS`] Pell pairs are examined, so fewer than `n`
/// witnesses can come back.
pub fn danilov_stream(n: usize) -> Result<Vec<HallWitness>> {
    let mut out = Vec::with_capacity(n);
    let (five, big125) = (BigInt::from(5), BigInt::from(125));
    for pair in Pell5Stream::default().take(DANILOV_MAX_PELL_STEPS) {
        if out.len() >= n {
            break;
        }
        let z = &pair.z;
        let lin: BigInt = BigInt::from(2) * z + 11;
        if !lin.is_multiple_of(&big125) || !pair.w.is_multiple_of(&five) {
            continue;
        }
        let exact = |num: BigInt, den: &BigInt, what: &str| -> Result<BigInt> {
            let (q, r) = num.div_rem(den);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::InvariantViolated(format!("{what} not divisible at Pell index {}", pair.index)))
            }
        };
        let z2 = z * z;
        let x = exact(&z2 + BigInt::from(6) * z + 4, &five, "x")?;
        let y = exact(&pair.w * (&z2 + BigInt::from(9) * z + 19), &five, "y")?;
        let d = exact(BigInt::from(-27) * &lin, &big125, "d")?;
        let w = HallWitness::new(format!("danilov n={}", out.len() + 1), None, x, y, d)?;
        if compare_scaled_sqrt(&w, 97, 100) != HallOrdering::Below {
            return Err(Error::InvariantViolated(format!(
                "witness at Pell index {} misses the 0.97 sqrt(x) bound",
                pair.index
            )));
        }
        log::debug!("danilov witness {} from Pell index {}", out.len() + 1, pair.index);
        out.push(w);
    }
    Ok(out)
}

/// The smallest even integer strictly greater than `5 / (2 eps)`.
pub fn delta_for_eps(eps: EpsRational) -> u64 {
    // 5/(2eps) = 5q / 2p
    let next = (5 * eps.q) / (2 * eps.p) + 1;
    if next.is_multiple_of(2) {
        next
    } else {
        next + 1
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub eps: String,
    pub n: String,
    pub delta: u64,
    pub k: u64,
    /// Number of `t` values with `x(t) <= N`.
    pub scanned: u64,
    pub count: usize,
    /// Exponent `eps / (5 + 4 eps)`.
    pub lower_bound_exponent: String,
    /// `N^exponent`, approximate.
    pub lower_bound_reference: String,
    pub aborted_on_decrease: bool,
    pub truncated: bool,
    pub witnesses: Vec<HallWitness>,
}

/// Constructive lower bound for the number of `x <= N` admitting `y` with
/// `0 < |x^3 - y^2| < x^(1/2 + eps)`, from the family with `delta` chosen
/// as the smallest even integer above `5 / (2 eps)`.
pub fn count_s(eps: EpsRational, n: &BigInt) -> Result<CountReport> {
    if n < &BigInt::one() {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let delta = delta_for_eps(eps);
    let k = delta + 1;
    if k as usize > DEFAULT_INDEX_BOUND {
        return Err(Error::InvalidArgument(format!(
            "eps = {eps} needs k = {k}, above the bound {DEFAULT_INDEX_BOUND}"
        )));
    }
    let inst = build_cubic(k as usize)?;

    // Find the scan range sequentially; x(t) is expected to increase.
    let mut last: Option<BigInt> = None;
    let mut t_max = 0u64;
    let mut aborted_on_decrease = false;
    let mut truncated = false;
    loop {
        if t_max >= SCAN_LIMIT {
            truncated = true;
            break;
        }
        let t = t_max + 1;
        let x = inst.x().eval(&BigInt::from(t));
        if &x > n {
            break;
        }
        if last.as_ref().is_some_and(|prev| &x <= prev) {
            aborted_on_decrease = true;
            break;
        }
        last = Some(x);
        t_max = t;
    }
    log::info!("count-s: k = {k}, scanning t = 1..={t_max}");

    let candidates: Vec<Result<Option<HallWitness>>> = (1..=t_max)
        .into_par_iter()
        .map(|t| {
            let w = specialize(&inst, &BigInt::from(t))?;
            Ok((hall_compare(&w, eps) == HallOrdering::Below).then_some(w))
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut witnesses = Vec::new();
    for c in candidates {
        if let Some(w) = c? {
            if seen.insert(w.x.clone()) {
                witnesses.push(w);
            }
        }
    }

    let exp_num = eps.p;
    let exp_den = 5 * eps.q + 4 * eps.p;
    let g = exp_num.gcd(&exp_den);
    let exponent = exp_num as f64 / exp_den as f64;
    let reference = n.to_f64().map(|nf| nf.powf(exponent)).unwrap_or(f64::INFINITY);
    Ok(CountReport {
        eps: eps.to_string(),
        n: n.to_string(),
        delta,
        k,
        scanned: t_max,
        count: witnesses.len(),
        lower_bound_exponent: format!("{}/{}", exp_num / g, exp_den / g),
        lower_bound_reference: format!("{reference:.6}"),
        aborted_on_decrease,
        truncated,
        witnesses,
    })
}
