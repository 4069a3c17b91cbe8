//! Exact chord lengths of the form |√a ± √b|.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurdOp {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl SurdOp {
    pub fn symbol(self) -> char {
        match self {
            SurdOp::Plus => '+',
            SurdOp::Minus => '-',
        }
    }

    fn sign(self) -> i32 {
        match self {
            SurdOp::Plus => 1,
            SurdOp::Minus => -1,
        }
    }
}

/// Nonnegative real `|√a ± √b|` with naturals `a ≥ b`.
///
/// Equality and ordering compare the denoted real numbers exactly, so
/// `|√18 - √0|` equals `|√2 + √8|`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SurdLength {
    a: u64,
    b: u64,
    op: SurdOp,
}

pub fn perfect_sqrt(v: u64) -> Option<u64> {
    let r = v.sqrt();
    (r * r == v).then_some(r)
}

impl SurdLength {
    pub fn new(a: u64, b: u64, op: SurdOp) -> Self {
        let (a, b) = if a >= b { (a, b) } else { (b, a) };
        // √a ± √0 does not depend on the sign
        let op = if b == 0 { SurdOp::Plus } else { op };
        SurdLength { a, b, op }
    }

    pub fn integer(k: u64) -> Self {
        SurdLength::new(k * k, 0, SurdOp::Plus)
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn op(&self) -> SurdOp {
        self.op
    }

    /// The value as a natural number, if it is one.
    ///
    /// `√a ± √b` is an integer only when both radicands are perfect squares,
    /// or when the terms cancel (`a = b` with the minus sign).
    pub fn exact_integer(&self) -> Option<u64> {
        if self.op == SurdOp::Minus && self.a == self.b {
            return Some(0);
        }
        let ra = perfect_sqrt(self.a)?;
        let rb = perfect_sqrt(self.b)?;
        Some(match self.op {
            SurdOp::Plus => ra + rb,
            SurdOp::Minus => ra - rb,
        })
    }

    pub fn value(&self) -> f64 {
        let sa = (self.a as f64).sqrt();
        let sb = (self.b as f64).sqrt();
        match self.op {
            SurdOp::Plus => sa + sb,
            // rewritten to avoid cancellation when √a ≈ √b
            SurdOp::Minus => {
                if self.a == self.b {
                    0.0
                } else {
                    (self.a - self.b) as f64 / (sa + sb)
                }
            }
        }
    }

    /// Square of the value as `m + e·√r` with `r = 4ab`.
    fn squared(&self) -> (BigInt, i32, BigInt) {
        let a = BigInt::from(self.a);
        let b = BigInt::from(self.b);
        let r = BigInt::from(4) * &a * &b;
        (a + b, self.op.sign(), r)
    }
}

/// Sign of `e·√r`.
fn sign_of_root(e: i32, r: &BigInt) -> i32 {
    if r.is_zero() {
        0
    } else {
        e
    }
}

fn sign_int(v: &BigInt) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `d + e·√r` for integer `d` and natural `r`.
fn sign_one_root(d: &BigInt, e: i32, r: &BigInt) -> i32 {
    let sd = sign_int(d);
    let sr = sign_of_root(e, r);
    if sr == 0 || sd == sr {
        return if sd == 0 { sr } else { sd };
    }
    if sd == 0 {
        return sr;
    }
    match (d * d).cmp(r) {
        Ordering::Greater => sd,
        Ordering::Less => sr,
        Ordering::Equal => 0,
    }
}

/// Sign of `d + p·√u + q·√v`.
fn sign_two_roots(d: &BigInt, p: i32, u: &BigInt, q: i32, v: &BigInt) -> i32 {
    let sp = sign_of_root(p, u);
    let sq = sign_of_root(q, v);
    let s = match (sp, sq) {
        (0, x) | (x, 0) => x,
        (x, y) if x == y => x,
        (x, _) => match u.cmp(v) {
            Ordering::Greater => x,
            Ordering::Less => -x,
            Ordering::Equal => 0,
        },
    };
    let sd = sign_int(d);
    if s == 0 {
        return sd;
    }
    if sd == 0 || sd == s {
        return s;
    }
    // opposite signs: compare d² with (p√u + q√v)² = u + v + 2pq√(uv)
    let e = d * d - u - v;
    let w = BigInt::from(4) * u * v;
    match sign_one_root(&e, -sp * sq, &w) {
        1 => sd,
        -1 => s,
        _ => 0,
    }
}

impl Ord for SurdLength {
    fn cmp(&self, other: &Self) -> Ordering {
        let (m1, e1, r1) = self.squared();
        let (m2, e2, r2) = other.squared();
        match sign_two_roots(&(m1 - m2), e1, &r1, -e2, &r2) {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl PartialOrd for SurdLength {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for SurdLength {
    fn eq(&self, other: &Self) -> bool {
        (self.a, self.b, self.op) == (other.a, other.b, other.op)
            || self.cmp(other) == Ordering::Equal
    }
}

impl Eq for SurdLength {}

impl fmt::Display for SurdLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact_integer() {
            Some(k) => write!(f, "{k}"),
            None => write!(f, "|√{} {} √{}|", self.a, self.op.symbol(), self.b),
        }
    }
}
