//! Published examples shipped as polynomial JSON under `data/corpus/`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::{build_cubic, davenport_check, VerificationReport};
use crate::zpoly::{rat_sub_cube_square, IntPoly, RatPoly};
use crate::{Error, Result};

const FILES: [(&str, &str); 4] = [
    ("bchs", include_str!("../../data/corpus/bchs.json")),
    ("elkies", include_str!("../../data/corpus/elkies.json")),
    ("k27", include_str!("../../data/corpus/k27.json")),
    ("quartic_k3", include_str!("../../data/corpus/quartic_k3.json")),
];

/// How `d` relates to `x` and `y` for an entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `d = x^3 - y^2`
    Cubic,
    /// `d = x^4 - (t^2 + 2) y^2`
    Quartic,
}

/// Values of `t` at which `x`, `y`, `d` are claimed to be integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Integrality {
    pub modulus: i64,
    pub residue: i64,
    pub sample_t: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub description: String,
    pub relation: Relation,
    pub x: RatPoly,
    pub y: RatPoly,
    pub d: RatPoly,
    /// `deg d / deg x`, as `"p/q"`.
    pub expected_ratio: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integrality: Option<Integrality>,
}

impl CorpusEntry {
    pub fn expected_ratio(&self) -> Result<Rational64> {
        self.expected_ratio.parse().map_err(|_| Error::Parse(format!("bad ratio {:?}", self.expected_ratio)))
    }

    /// `d` recomputed from `x` and `y` according to the entry's relation.
    pub fn recompute_d(&self) -> RatPoly {
        match self.relation {
            Relation::Cubic => rat_sub_cube_square(&self.x, &self.y),
            Relation::Quartic => {
                let x4 = self.x.pow(4).expect("small exponent");
                let y2 = self.y.pow(2).expect("small exponent");
                x4.sub(&y2.mul(&IntPoly::from_i64s(&[2, 0, 1]).into()))
            }
        }
    }
}

pub fn corpus() -> Result<Vec<CorpusEntry>> {
    FILES
        .iter()
        .map(|(name, text)| {
            let entry: CorpusEntry = serde_json::from_str(text)
                .map_err(|e| Error::CorpusCorrupted { entry: name.to_string(), detail: e.to_string() })?;
            if entry.name != *name {
                return Err(Error::CorpusCorrupted {
                    entry: name.to_string(),
                    detail: format!("file declares name {:?}", entry.name),
                });
            }
            Ok(entry)
        })
        .collect()
}

pub fn corpus_entry(name: &str) -> Result<CorpusEntry> {
    corpus()?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::InvalidArgument(format!("no corpus entry named {name:?}")))
}

/// First index where `a` and `b` differ, both brought to the common
/// denominator.
fn first_mismatch(a: &RatPoly, b: &RatPoly) -> Option<(usize, String, String)> {
    let l = a.den().lcm(b.den());
    let an = a.num().scale(&(&l / a.den()));
    let bn = b.num().scale(&(&l / b.den()));
    let n = an.coeffs().len().max(bn.coeffs().len());
    (0..n).find_map(|i| {
        let (x, y) = (an.coeff(i), bn.coeff(i));
        (x != y).then(|| (i, format!("{x}/{l}"), format!("{y}/{l}")))
    })
}

fn degree_ratio(d: &RatPoly, x: &RatPoly) -> Option<Rational64> {
    let (dd, dx) = (d.degree().finite()?, x.degree().finite()?);
    (dx > 0).then(|| Rational64::new(dd as i64, dx as i64))
}

/// Verifies one entry. A mismatch between stored and recomputed `d` is a
/// [`Error::CorpusCorrupted`]; other failed checks are reported.
pub fn verify_entry(entry: &CorpusEntry) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("corpus:{}", entry.name));
    let recomputed = entry.recompute_d();
    if let Some((i, stored, computed)) = first_mismatch(&entry.d, &recomputed) {
        return Err(Error::CorpusCorrupted {
            entry: entry.name.clone(),
            detail: format!("coefficient of t^{i}: stored {stored}, recomputed {computed}"),
        });
    }
    let relation = match entry.relation {
        Relation::Cubic => "d = x^3 - y^2",
        Relation::Quartic => "d = x^4 - (t^2+2) y^2",
    };
    report.check(relation, true, format!("den {}", entry.d.den()));

    let expected = entry.expected_ratio()?;
    let ratio = degree_ratio(&entry.d, &entry.x);
    report.check(
        format!("deg d / deg x = {expected}"),
        ratio == Some(expected),
        ratio.map(|r| r.to_string()).unwrap_or_default(),
    );

    if entry.relation == Relation::Cubic {
        let dav = davenport_check(&entry.x, &entry.y)?;
        report.check(
            "Davenport bound satisfied",
            dav.satisfied,
            format!("deg d = {}, bound = {}, equality = {}", dav.deg_d, dav.bound, dav.equality),
        );
    }

    if let Some(integ) = &entry.integrality {
        for &t0 in &integ.sample_t {
            let in_class = t0.rem_euclid(integ.modulus) == integ.residue.rem_euclid(integ.modulus);
            let t0b = BigInt::from(t0);
            let values = [entry.x.eval(&t0b), entry.y.eval(&t0b), entry.d.eval(&t0b)];
            let integral = values.iter().all(|v| v.is_integer());
            report.check(
                format!("integral at t = {t0} (t = {} mod {})", integ.residue, integ.modulus),
                in_class && integral,
                values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "),
            );
        }
    }

    if entry.name == "k27" {
        let inst = build_cubic(27)?;
        let same = entry.x.num() == inst.x()
            && entry.y.num() == inst.y()
            && entry.d.num() == inst.d()
            && entry.x.is_integral()
            && entry.y.is_integral();
        report.check("equals build_cubic(27)", same, "");
    }
    Ok(report)
}

pub fn verify_corpus() -> Result<Vec<VerificationReport>> {
    corpus()?.iter().map(verify_entry).collect()
}

/// Evaluates an integral polynomial triple, failing if the entry is not
/// integral at `t0`.
pub(crate) fn integer_values(entry: &CorpusEntry, t0: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    let eval = |p: &RatPoly, what: &str| {
        let v = p.eval(t0);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::DegenerateWitness(format!("{} is not an integer at t = {t0}: {what} = {v}", entry.name)))
        }
    };
    Ok((eval(&entry.x, "x")?, eval(&entry.y, "y")?, eval(&entry.d, "d")?))
}
