//! Complex circles of partition C°(n, C_M).
//!
//! A point is stored as `(n, x, sigma)`. Its imaginary part is
//! `sigma·√(x(n−x))`, so the circle condition `Im(z)² = Re(z)(n − Re(z))`
//! holds by construction and is checked on the integer `imag_sq`.

use std::fmt;

use crate::baseset::BaseSet;
use crate::cop::{axes, cop_build, nu, CoP};
use crate::error::{Error, Result};
use crate::surd::{SurdLength, SurdOp};

/// Sign of the imaginary part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CPoint {
    n: u64,
    x: u64,
    sigma: Sign,
}

impl CPoint {
    pub fn new(n: u64, x: u64, sigma: Sign) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGenerator(n));
        }
        if x == 0 || x >= n {
            return Err(Error::NotAPoint { n, x });
        }
        Ok(CPoint { n, x, sigma })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Real weight.
    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn sigma(&self) -> Sign {
        self.sigma
    }

    /// `Im(z)² = x(n − x)`.
    pub fn imag_sq(&self) -> u64 {
        self.x * (self.n - self.x)
    }

    pub fn imag(&self) -> f64 {
        f64::from(self.sigma.as_i8()) * (self.imag_sq() as f64).sqrt()
    }

    pub fn coords(&self) -> (f64, f64) {
        (self.x as f64, self.imag())
    }

    pub fn conjugate(&self) -> Self {
        CPoint {
            sigma: self.sigma.flip(),
            ..*self
        }
    }

    /// `[n − z]`: weight `(n − x) − iy`.
    pub fn partner(&self) -> Self {
        CPoint {
            n: self.n,
            x: self.n - self.x,
            sigma: self.sigma.flip(),
        }
    }

    /// Whether both points denote the same complex number, whatever their
    /// generators.
    pub fn same_value(&self, other: &CPoint) -> bool {
        self.x == other.x && self.sigma == other.sigma && self.imag_sq() == other.imag_sq()
    }
}

impl fmt::Display for CPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sigma == Sign::Plus { '+' } else { '-' };
        write!(f, "{} {} i√{}", self.x, s, self.imag_sq())
    }
}

pub fn conjugate(p: &CPoint) -> CPoint {
    p.conjugate()
}

/// Axis `([z], [n − z])` of a cCoP in canonical orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CAxis {
    p: CPoint,
    q: CPoint,
}

impl CAxis {
    /// The axis through `p`. The endpoint with the smaller real part comes
    /// first; the degenerate axis puts `+` first.
    pub fn through(p: CPoint) -> Self {
        let q = p.partner();
        if p.x < q.x {
            CAxis { p, q }
        } else if p.x > q.x {
            CAxis { p: q, q: p }
        } else {
            let top = CPoint {
                sigma: Sign::Plus,
                ..p
            };
            CAxis {
                p: top,
                q: top.partner(),
            }
        }
    }

    pub fn p(&self) -> CPoint {
        self.p
    }

    pub fn q(&self) -> CPoint {
        self.q
    }

    pub fn n(&self) -> u64 {
        self.p.n
    }

    /// Real part of the first endpoint.
    pub fn low(&self) -> u64 {
        self.p.x
    }

    pub fn high(&self) -> u64 {
        self.q.x
    }

    /// The vertical diameter through `n/2`, equal to its own conjugate.
    pub fn is_degenerate(&self) -> bool {
        self.p.x == self.q.x
    }

    pub fn conjugate(&self) -> Self {
        CAxis::through(self.p.conjugate())
    }

    /// Whether this is the conjugate copy of a real axis, i.e. the low
    /// endpoint lies below the real line.
    pub fn is_conjugate_copy(&self) -> bool {
        !self.is_degenerate() && self.p.sigma == Sign::Minus
    }

    pub fn contains(&self, z: &CPoint) -> bool {
        self.p == *z || self.q == *z
    }
}

/// A materialized cCoP with its source CoP.
#[derive(Debug, Clone)]
pub struct CCoP {
    source: CoP,
    points: Vec<CPoint>,
    axes: Vec<CAxis>,
}

impl CCoP {
    pub fn build(n: u64, base: &BaseSet) -> Result<Self> {
        let source = cop_build(n, base)?;
        Ok(Self::from_source(source))
    }

    pub fn from_source(source: CoP) -> Self {
        let n = source.n();
        let points = source
            .weights()
            .iter()
            .flat_map(|&x| {
                [
                    CPoint {
                        n,
                        x,
                        sigma: Sign::Plus,
                    },
                    CPoint {
                        n,
                        x,
                        sigma: Sign::Minus,
                    },
                ]
            })
            .collect();
        let set = axes(&source);
        let mut caxes = Vec::with_capacity(2 * set.real.len() + 1);
        for a in &set.real {
            let top = CPoint {
                n,
                x: a.low,
                sigma: Sign::Plus,
            };
            caxes.push(CAxis::through(top));
            caxes.push(CAxis::through(top.conjugate()));
        }
        if let Some(c) = set.degenerate {
            caxes.push(CAxis::through(CPoint {
                n,
                x: c.low,
                sigma: Sign::Plus,
            }));
        }
        CCoP {
            source,
            points,
            axes: caxes,
        }
    }

    pub fn n(&self) -> u64 {
        self.source.n()
    }

    pub fn source(&self) -> &CoP {
        &self.source
    }

    pub fn points(&self) -> &[CPoint] {
        &self.points
    }

    pub fn axes(&self) -> &[CAxis] {
        &self.axes
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, z: &CPoint) -> bool {
        z.n == self.n() && self.source.contains(z.x)
    }

    /// Whether the real weight `x` is a point.
    pub fn has_weight(&self, x: u64) -> bool {
        self.source.contains(x)
    }

    /// ν°: number of axes including conjugate copies and the center.
    pub fn nu_complex(&self) -> usize {
        self.axes.len()
    }
}

pub fn ccop_points(n: u64, base: &BaseSet) -> Result<Vec<CPoint>> {
    Ok(CCoP::build(n, base)?.points)
}

pub fn caxes(n: u64, base: &BaseSet) -> Result<Vec<CAxis>> {
    Ok(CCoP::build(n, base)?.axes)
}

/// `2ν + 1` when the source CoP has a center, `2ν` otherwise.
pub fn nu_complex(n: u64, base: &BaseSet) -> Result<usize> {
    let source = cop_build(n, base)?;
    Ok(2 * nu(&source) + usize::from(source.has_center()))
}

/// The diameter of the embedding circle through `p`.
pub fn diameter_of(n: u64, p: &CPoint) -> Result<CAxis> {
    if p.n != n {
        return Err(Error::GeneratorMismatch(n, p.n));
    }
    Ok(CAxis::through(*p))
}

/// Chord length `|√(x₁(n−x₂)) ± √(x₂(n−x₁))|`, minus when the imaginary
/// parts share a sign.
pub fn chord_gamma(p: &CPoint, q: &CPoint) -> Result<SurdLength> {
    if p.n != q.n {
        return Err(Error::GeneratorMismatch(p.n, q.n));
    }
    let n = p.n;
    let op = if p.sigma == q.sigma {
        SurdOp::Minus
    } else {
        SurdOp::Plus
    };
    Ok(SurdLength::new(p.x * (n - q.x), q.x * (n - p.x), op))
}

pub fn chord_float(p: &CPoint, q: &CPoint) -> Result<f64> {
    chord_gamma(p, q).map(|g| g.value())
}
