//! Arithmetic in `Z[t][u, v]` modulo the relation
//! `v^2 - 2tuv - u^2 = -(t^2 + 1)^2`.
//!
//! Elements are kept as `P(v) + Q(v) u` with `P, Q` polynomials in `v` whose
//! coefficients are polynomials in `t`. Every `u^2` produced by a product is
//! rewritten as `v^2 - 2tuv + (t^2 + 1)^2`. The relation holds for
//! `u = a_{k-1}`, `v = a_k` with `k` odd, which is what
//! [`UVElem::substitute`] uses.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::sequences::a_seq;
use crate::zpoly::IntPoly;
use crate::{Error, Result};

type VPoly = Vec<IntPoly>;

fn trim(mut p: VPoly) -> VPoly {
    while p.last().is_some_and(IntPoly::is_zero) {
        p.pop();
    }
    p
}

fn v_add(a: &[IntPoly], b: &[IntPoly]) -> VPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

fn v_mul(a: &[IntPoly], b: &[IntPoly]) -> VPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![IntPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

fn v_scale(a: &[IntPoly], c: &IntPoly) -> VPoly {
    a.iter().map(|x| x * c).collect()
}

fn v_shift(a: &[IntPoly], n: usize) -> VPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![IntPoly::zero(); n];
    out.extend(a.iter().cloned());
    out
}

fn t2_plus_1() -> IntPoly {
    IntPoly::from_i64s(&[1, 0, 1])
}

/// A monomial `u^u v^v` with `u` in `{0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub u: u8,
    pub v: usize,
}

impl Monomial {
    pub const fn new(u: u8, v: usize) -> Self {
        Monomial { u, v }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.u, self.v) {
            (0, 0) => f.write_str("1"),
            (0, 1) => f.write_str("v"),
            (0, n) => write!(f, "v^{n}"),
            (_, 0) => f.write_str("u"),
            (_, 1) => f.write_str("uv"),
            (_, n) => write!(f, "uv^{n}"),
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawUVElem")]
pub struct UVElem {
    p: VPoly,
    q: VPoly,
}

#[derive(Deserialize)]
struct RawUVElem {
    p: VPoly,
    q: VPoly,
}

impl From<RawUVElem> for UVElem {
    fn from(raw: RawUVElem) -> Self {
        UVElem::from_parts(raw.p, raw.q)
    }
}

impl UVElem {
    pub fn zero() -> Self {
        UVElem::default()
    }

    pub fn one() -> Self {
        Self::constant(IntPoly::one())
    }

    pub fn u() -> Self {
        Self::term(IntPoly::one(), Monomial::new(1, 0))
    }

    pub fn v() -> Self {
        Self::term(IntPoly::one(), Monomial::new(0, 1))
    }

    pub fn constant(c: IntPoly) -> Self {
        Self::term(c, Monomial::new(0, 0))
    }

    /// `c * u^m.u * v^m.v`. Panics if `m.u > 1`.
    pub fn term(c: IntPoly, m: Monomial) -> Self {
        assert!(m.u <= 1, "canonical monomials have u-degree at most 1");
        let mut slots = vec![IntPoly::zero(); m.v + 1];
        slots[m.v] = c;
        if m.u == 0 {
            Self::from_parts(slots, Vec::new())
        } else {
            Self::from_parts(Vec::new(), slots)
        }
    }

    /// `p(v) + q(v) u`, trimmed.
    pub fn from_parts(p: Vec<IntPoly>, q: Vec<IntPoly>) -> Self {
        UVElem { p: trim(p), q: trim(q) }
    }

    /// Canonicalizes `p(v) + q(v) u + r(v) u^2` by one application of
    /// `u^2 = v^2 - 2tuv + (t^2 + 1)^2`.
    pub fn from_u_powers(p: &[IntPoly], q: &[IntPoly], r: &[IntPoly]) -> Self {
        let s = t2_plus_1();
        let s2 = &s * &s;
        let minus_2t = IntPoly::from_i64s(&[0, -2]);
        let p = v_add(&v_add(p, &v_shift(r, 2)), &v_scale(r, &s2));
        let q = v_add(q, &v_shift(&v_scale(r, &minus_2t), 1));
        Self::from_parts(p, q)
    }

    /// Coefficients of `u^0 v^i`.
    pub fn p(&self) -> &[IntPoly] {
        &self.p
    }

    /// Coefficients of `u v^i`.
    pub fn q(&self) -> &[IntPoly] {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_empty() && self.q.is_empty()
    }

    pub fn coefficient(&self, m: Monomial) -> IntPoly {
        let slots = if m.u == 0 { &self.p } else { &self.q };
        match m.u {
            0 | 1 => slots.get(m.v).cloned().unwrap_or_default(),
            _ => IntPoly::zero(),
        }
    }

    /// Nonzero terms, ordered by `(u, v)`.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &IntPoly)> {
        let p = self.p.iter().enumerate().map(|(v, c)| (Monomial::new(0, v), c));
        let q = self.q.iter().enumerate().map(|(v, c)| (Monomial::new(1, v), c));
        p.chain(q).filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, rhs: &UVElem) -> UVElem {
        Self::from_parts(v_add(&self.p, &rhs.p), v_add(&self.q, &rhs.q))
    }

    pub fn neg(&self) -> UVElem {
        UVElem { p: self.p.iter().map(|c| -c).collect(), q: self.q.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, rhs: &UVElem) -> UVElem {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &IntPoly) -> UVElem {
        Self::from_parts(v_scale(&self.p, c), v_scale(&self.q, c))
    }

    pub fn mul(&self, rhs: &UVElem) -> UVElem {
        let p = v_mul(&self.p, &rhs.p);
        let q = v_add(&v_mul(&self.p, &rhs.q), &v_mul(&self.q, &rhs.p));
        let r = v_mul(&self.q, &rhs.q);
        Self::from_u_powers(&p, &q, &r)
    }

    pub fn pow(&self, exponent: u32) -> UVElem {
        (0..exponent).fold(UVElem::one(), |acc, _| acc.mul(self))
    }

    /// Image in `Z[t]` under `u -> u_val`, `v -> v_val`.
    pub fn substitute_values(&self, u_val: &IntPoly, v_val: &IntPoly) -> IntPoly {
        let horner = |slots: &[IntPoly]| slots.iter().rev().fold(IntPoly::zero(), |acc, c| &(&acc * v_val) + c);
        &horner(&self.p) + &(&horner(&self.q) * u_val)
    }

    /// Image in `Z[t]` under `u -> a_{k-1}`, `v -> a_k` for odd `k >= 3`.
    pub fn substitute(&self, k: usize) -> Result<IntPoly> {
        if k < 3 || k.is_multiple_of(2) {
            return Err(Error::InvalidK(k as i64));
        }
        Ok(self.substitute_values(&a_seq(k - 1)?, &a_seq(k)?))
    }
}

impl fmt::Display for UVElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Monomial, &IntPoly)> = self.terms().collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        terms.sort_by_key(|(m, _)| std::cmp::Reverse((m.v, m.u)));
        let rendered: Vec<String> = terms.into_iter().map(|(m, c)| format!("({c})*{m}")).collect();
        f.write_str(&rendered.join(" + "))
    }
}

impl fmt::Debug for UVElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UVElem({self})")
    }
}

/// The twelve undetermined coefficients of
/// `x = [v^2] v^2 + [uv] uv + [u] u + [v] v + [1]` and
/// `y = [v^3] v^3 + [uv^2] uv^2 + [v^2] v^2 + [uv] uv + [u] u + [v] v + [1]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnsatzCoefficients {
    pub x_v2: IntPoly,
    pub x_uv: IntPoly,
    pub x_u: IntPoly,
    pub x_v: IntPoly,
    pub x_one: IntPoly,
    pub y_v3: IntPoly,
    pub y_uv2: IntPoly,
    pub y_v2: IntPoly,
    pub y_uv: IntPoly,
    pub y_u: IntPoly,
    pub y_v: IntPoly,
    pub y_one: IntPoly,
}

impl AnsatzCoefficients {
    /// The coefficients that make every listed residual tag vanish.
    pub fn solution() -> Self {
        let p = IntPoly::from_i64s;
        AnsatzCoefficients {
            x_v2: p(&[1]),
            x_uv: p(&[0, -2]),
            x_u: p(&[0, -6]),
            x_v: p(&[6]),
            x_one: p(&[4, 0, 5, 0, 1]),
            y_v3: p(&[0, -2]),
            y_uv2: p(&[1, 0, 4]),
            y_v2: p(&[0, -9]),
            y_uv: p(&[9, 0, 18]),
            y_u: p(&[19, 0, 20, 0, 1]),
            y_v: p(&[0, -2, 0, -4, 0, -2]),
            y_one: p(&[0, -9, 0, -18, 0, -9]),
        }
    }

    /// Assembles `(x, y)` in the ring, verbatim from the ansatz shape.
    pub fn build(&self) -> (UVElem, UVElem) {
        let t = |c: &IntPoly, u: u8, v: usize| UVElem::term(c.clone(), Monomial::new(u, v));
        let x =
            [t(&self.x_v2, 0, 2), t(&self.x_uv, 1, 1), t(&self.x_u, 1, 0), t(&self.x_v, 0, 1), t(&self.x_one, 0, 0)]
                .iter()
                .fold(UVElem::zero(), |acc, e| acc.add(e));
        let y = [
            t(&self.y_v3, 0, 3),
            t(&self.y_uv2, 1, 2),
            t(&self.y_v2, 0, 2),
            t(&self.y_uv, 1, 1),
            t(&self.y_u, 1, 0),
            t(&self.y_v, 0, 1),
            t(&self.y_one, 0, 0),
        ]
        .iter()
        .fold(UVElem::zero(), |acc, e| acc.add(e));
        (x, y)
    }

    pub fn residual(&self) -> AnsatzResidual {
        let (x, y) = self.build();
        let diff = x.pow(3).sub(&y.pow(2));
        let listed: Vec<(Monomial, IntPoly)> = RESIDUAL_TAGS.iter().map(|&m| (m, diff.coefficient(m))).collect();
        let mut remainder = diff;
        for &m in RESIDUAL_TAGS.iter() {
            let c = remainder.coefficient(m);
            if !c.is_zero() {
                remainder = remainder.sub(&UVElem::term(c, m));
            }
        }
        AnsatzResidual { listed, remainder }
    }
}

/// The monomials of `x^3 - y^2` that the ansatz must annihilate:
/// `v^6, uv^5, v^5, ..., v^2, uv`.
pub const RESIDUAL_TAGS: [Monomial; 10] = [
    Monomial::new(0, 6),
    Monomial::new(1, 5),
    Monomial::new(0, 5),
    Monomial::new(1, 4),
    Monomial::new(0, 4),
    Monomial::new(1, 3),
    Monomial::new(0, 3),
    Monomial::new(1, 2),
    Monomial::new(0, 2),
    Monomial::new(1, 1),
];

/// `x^3 - y^2` split into the coefficients on [`RESIDUAL_TAGS`] and
/// everything else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzResidual {
    pub listed: Vec<(Monomial, IntPoly)>,
    pub remainder: UVElem,
}

impl AnsatzResidual {
    pub fn listed_all_zero(&self) -> bool {
        self.listed.iter().all(|(_, c)| c.is_zero())
    }

    pub fn nonzero_tags(&self) -> Vec<Monomial> {
        self.listed.iter().filter(|(_, c)| !c.is_zero()).map(|(m, _)| *m).collect()
    }
}

/// `-27 (t^2 + 1)^2 (2v - 2tu + 11t^2 + 11)` as a ring element.
pub fn closed_form_difference() -> UVElem {
    let s = t2_plus_1();
    let factor = (&s * &s).scale(&BigInt::from(-27));
    let inner =
        UVElem::from_parts(vec![s.scale(&BigInt::from(11)), IntPoly::constant(2)], vec![IntPoly::from_i64s(&[0, -2])]);
    inner.scale(&factor)
}
