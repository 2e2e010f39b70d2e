//! Recurrence sequences: the binary recurrence `a_m`, polynomial Pell
//! solutions for `t^2 + 1` (norm -1) and `t^2 + 2` (norm -2), and the
//! integer Pell stream for `z^2 - 5 w^2 = -1`.

use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use serde::Serialize;

use crate::zpoly::IntPoly;
use crate::{Error, Result};

/// Largest index served by the memoized polynomial sequences.
pub const DEFAULT_INDEX_BOUND: usize = 200;

/// Append-only memo table for a sequence indexed from 1.
///
/// Readers share the lock; extension takes the write lock and recomputes
/// from whatever prefix is present, so concurrent callers see the same terms.
struct Memo<T> {
    terms: RwLock<Vec<T>>,
}

impl<T: Clone> Memo<T> {
    const fn new() -> Self {
        Memo { terms: RwLock::new(Vec::new()) }
    }

    fn get(&self, index: usize, seed: impl FnOnce() -> Vec<T>, step: impl Fn(&[T]) -> T) -> T {
        {
            let terms = self.terms.read().unwrap_or_else(|e| e.into_inner());
            if let Some(t) = terms.get(index - 1) {
                return t.clone();
            }
        }
        let mut terms = self.terms.write().unwrap_or_else(|e| e.into_inner());
        if terms.is_empty() {
            *terms = seed();
        }
        while terms.len() < index {
            let next = step(&terms);
            terms.push(next);
        }
        terms[index - 1].clone()
    }
}

fn check_index(index: usize) -> Result<()> {
    if index == 0 || index > DEFAULT_INDEX_BOUND {
        return Err(Error::IndexOutOfRange { index, bound: DEFAULT_INDEX_BOUND });
    }
    Ok(())
}

fn two_t() -> IntPoly {
    IntPoly::from_i64s(&[0, 2])
}

/// `a_1 = 0`, `a_2 = t^2 + 1`, `a_m = 2t a_{m-1} + a_{m-2}`.
pub fn a_seq(m: usize) -> Result<IntPoly> {
    static MEMO: Memo<IntPoly> = Memo::new();
    check_index(m)?;
    Ok(MEMO.get(
        m,
        || vec![IntPoly::zero(), IntPoly::from_i64s(&[1, 0, 1])],
        |prev| {
            let n = prev.len();
            &(&two_t() * &prev[n - 1]) + &prev[n - 2]
        },
    ))
}

/// Which Pell equation a [`PellPair`] solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PellKind {
    /// `z^2 - (t^2 + 1) w^2 = -1`
    PolyT2Plus1,
    /// `z^2 - (t^2 + 2) w^2 = -2`
    PolyT2Plus2,
    /// `z^2 - 5 w^2 = -1`
    Int5,
}

impl PellKind {
    pub fn norm(self) -> i64 {
        match self {
            PellKind::PolyT2Plus1 | PellKind::Int5 => -1,
            PellKind::PolyT2Plus2 => -2,
        }
    }
}

impl fmt::Display for PellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PellKind::PolyT2Plus1 => "z^2 - (t^2 + 1) w^2 = -1",
            PellKind::PolyT2Plus2 => "z^2 - (t^2 + 2) w^2 = -2",
            PellKind::Int5 => "z^2 - 5 w^2 = -1",
        })
    }
}

/// One solution `(z, w)` of a Pell equation, with its position in the
/// generated sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PellPair<T> {
    pub index: usize,
    pub z: T,
    pub w: T,
    pub kind: PellKind,
}

impl PellPair<IntPoly> {
    pub fn discriminant(&self) -> IntPoly {
        match self.kind {
            PellKind::PolyT2Plus1 => IntPoly::from_i64s(&[1, 0, 1]),
            PellKind::PolyT2Plus2 => IntPoly::from_i64s(&[2, 0, 1]),
            PellKind::Int5 => IntPoly::constant(5),
        }
    }

    /// `z^2 - D w^2`.
    pub fn norm_value(&self) -> IntPoly {
        &(&self.z * &self.z) - &(&self.discriminant() * &(&self.w * &self.w))
    }

    pub fn norm_holds(&self) -> bool {
        self.norm_value() == IntPoly::constant(self.kind.norm())
    }
}

impl PellPair<BigInt> {
    pub fn norm_value(&self) -> BigInt {
        &self.z * &self.z - BigInt::from(5) * &self.w * &self.w
    }

    pub fn norm_holds(&self) -> bool {
        self.norm_value() == BigInt::from(self.kind.norm())
    }
}

/// `j`-th solution of `z^2 - (t^2 + 1) w^2 = -1`: `z_1 = t`,
/// `z_2 = 4t^3 + 3t`, `w_1 = 1`, `w_2 = 4t^2 + 1`, both continued by
/// `s_j = (4t^2 + 2) s_{j-1} - s_{j-2}`.
pub fn pell_norm1_seq(j: usize) -> Result<PellPair<IntPoly>> {
    static MEMO: Memo<(IntPoly, IntPoly)> = Memo::new();
    check_index(j)?;
    let (z, w) = MEMO.get(
        j,
        || vec![(IntPoly::t(), IntPoly::one()), (IntPoly::from_i64s(&[0, 3, 0, 4]), IntPoly::from_i64s(&[1, 0, 4]))],
        |prev| {
            let n = prev.len();
            let mult = IntPoly::from_i64s(&[2, 0, 4]);
            let (z1, w1) = &prev[n - 1];
            let (z0, w0) = &prev[n - 2];
            (&(&mult * z1) - z0, &(&mult * w1) - w0)
        },
    );
    Ok(PellPair { index: j, z, w, kind: PellKind::PolyT2Plus1 })
}

/// `j`-th solution of `z^2 - (t^2 + 2) w^2 = -2`, starting from `(t, 1)` and
/// stepping by the unit `(t^2 + 1) + t sqrt(t^2 + 2)`.
pub fn pell_norm2_seq(j: usize) -> Result<PellPair<IntPoly>> {
    static MEMO: Memo<(IntPoly, IntPoly)> = Memo::new();
    check_index(j)?;
    let (z, w) = MEMO.get(
        j,
        || vec![(IntPoly::t(), IntPoly::one())],
        |prev| {
            let (z, w) = &prev[prev.len() - 1];
            let s1 = IntPoly::from_i64s(&[1, 0, 1]);
            let t = IntPoly::t();
            let t_d = IntPoly::from_i64s(&[0, 2, 0, 1]);
            (&(&s1 * z) + &(&t_d * w), &(&t * z) + &(&s1 * w))
        },
    );
    Ok(PellPair { index: j, z, w, kind: PellKind::PolyT2Plus2 })
}

/// Solutions of `z^2 - 5 w^2 = -1` in increasing order, from `(2, 1)` via
/// `(z, w) -> (9z + 20w, 4z + 9w)`.
#[derive(Debug, Clone)]
pub struct Pell5Stream {
    next: PellPair<BigInt>,
}

impl Default for Pell5Stream {
    fn default() -> Self {
        Pell5Stream { next: PellPair { index: 1, z: BigInt::from(2), w: BigInt::from(1), kind: PellKind::Int5 } }
    }
}

impl Iterator for Pell5Stream {
    type Item = PellPair<BigInt>;

    fn next(&mut self) -> Option<Self::Item> {
        let cur = &self.next;
        let following = PellPair {
            index: cur.index + 1,
            z: BigInt::from(9) * &cur.z + BigInt::from(20) * &cur.w,
            w: BigInt::from(4) * &cur.z + BigInt::from(9) * &cur.w,
            kind: PellKind::Int5,
        };
        Some(std::mem::replace(&mut self.next, following))
    }
}

pub fn pell5_stream(n: usize) -> Vec<PellPair<BigInt>> {
    Pell5Stream::default().take(n).collect()
}

/// Polynomials tying the recurrence construction at odd `k` to the norm -1
/// Pell solution of index `(k - 1) / 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UvBridge {
    pub k: usize,
    pub u: IntPoly,
    pub v: IntPoly,
    pub z: IntPoly,
    pub w: IntPoly,
}

pub(crate) fn check_k(k: usize) -> Result<()> {
    if k < 3 || k.is_multiple_of(2) || k > DEFAULT_INDEX_BOUND {
        return Err(Error::InvalidK(k as i64));
    }
    Ok(())
}

/// `u = a_{k-1}`, `v = a_k`, `(z, w)` the Pell pair of index `(k-1)/2`;
/// asserts `v - t u = (t^2 + 1) z` and `u = (t^2 + 1) w`.
pub fn uv_bridge(k: usize) -> Result<UvBridge> {
    check_k(k)?;
    let u = a_seq(k - 1)?;
    let v = a_seq(k)?;
    let pair = pell_norm1_seq((k - 1) / 2)?;
    let s = IntPoly::from_i64s(&[1, 0, 1]);
    if &v - &(&IntPoly::t() * &u) != &s * &pair.z {
        return Err(Error::BridgeBroken { k, detail: "v - t u != (t^2 + 1) z".into() });
    }
    if u != &s * &pair.w {
        return Err(Error::BridgeBroken { k, detail: "u != (t^2 + 1) w".into() });
    }
    Ok(UvBridge { k, u, v, z: pair.z, w: pair.w })
}
