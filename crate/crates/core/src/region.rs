//! Embedding circles and the interior/exterior classification of complex
//! points, in exact rational arithmetic.

use std::cmp::Ordering;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::baseset::BaseSet;
use crate::ccop::{CCoP, CPoint};
use crate::cop::least_generator;
use crate::error::Result;

pub type Rational = Ratio<i128>;

pub fn rat(v: i128) -> Rational {
    Rational::from_integer(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        ComplexRational { re, im }
    }

    pub fn from_ints(re: i128, im: i128) -> Self {
        ComplexRational {
            re: rat(re),
            im: rat(im),
        }
    }

    /// The real part as a natural number, if it is one.
    pub fn natural_re(&self) -> Option<u64> {
        if self.re.is_integer() && self.re.is_positive() {
            u64::try_from(self.re.to_integer()).ok()
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionClass {
    OnCircle,
    Interior,
    Exterior,
}

/// Circle with center `n/2` on the real axis and diameter `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingCircle {
    n: u64,
}

impl EmbeddingCircle {
    pub fn new(n: u64) -> Self {
        EmbeddingCircle { n }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn center(&self) -> Rational {
        Rational::new(self.n as i128, 2)
    }

    pub fn diameter(&self) -> u64 {
        self.n
    }

    pub fn classify(&self, z: &ComplexRational) -> RegionClass {
        classify_sq(self.n, z.re, z.im * z.im)
    }
}

/// Classification by the real part and the square of the imaginary part.
pub fn classify_sq(n: u64, a: Rational, b_sq: Rational) -> RegionClass {
    let n = rat(n as i128);
    if a < rat(0) || a > n {
        return RegionClass::Exterior;
    }
    match b_sq.cmp(&(a * (n - a))) {
        Ordering::Equal => RegionClass::OnCircle,
        Ordering::Less => RegionClass::Interior,
        Ordering::Greater => RegionClass::Exterior,
    }
}

pub fn classify_region(n: u64, a: Rational, b: Rational) -> RegionClass {
    classify_sq(n, a, b * b)
}

/// Where a point of another cCoP falls relative to the circle for `n`.
pub fn classify_point(n: u64, z: &CPoint) -> RegionClass {
    classify_sq(n, rat(z.x() as i128), rat(z.imag_sq() as i128))
}

/// Candidates from C_M split by region. Candidates whose real part is not
/// in M appear in none of the lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RegionPartition {
    pub interior: Vec<ComplexRational>,
    pub exterior: Vec<ComplexRational>,
    pub on_circle: Vec<ComplexRational>,
}

/// Interior and exterior points of C°(n, C_M) among `candidates`.
///
/// For an empty cCoP the interior and exterior sets are empty.
pub fn interior_points_filter(
    n: u64,
    base: &BaseSet,
    candidates: &[ComplexRational],
) -> Result<RegionPartition> {
    let ccop = CCoP::build(n, base)?;
    let circle = EmbeddingCircle::new(n);
    let mut out = RegionPartition::default();
    for z in candidates {
        let Some(re) = z.natural_re() else { continue };
        if !base.contains(re)? {
            continue;
        }
        match circle.classify(z) {
            RegionClass::OnCircle => out.on_circle.push(*z),
            RegionClass::Interior if !ccop.is_empty() => out.interior.push(*z),
            RegionClass::Exterior if !ccop.is_empty() => out.exterior.push(*z),
            _ => {}
        }
    }
    Ok(out)
}

/// Least generator with a non-empty cCoP for this base set.
pub fn least_ccop_generator(base: &BaseSet) -> Option<u64> {
    least_generator(base)
}

/// Sign of `d + c·√k` for rationals `d`, `c` and natural `k`.
fn sign_with_root(d: Rational, c: Rational, k: u64) -> Ordering {
    let zero = Rational::zero();
    let sc = if k == 0 {
        Ordering::Equal
    } else {
        c.cmp(&zero)
    };
    let sd = d.cmp(&zero);
    if sc == Ordering::Equal {
        return sd;
    }
    if sd == Ordering::Equal || sd == sc {
        return sc;
    }
    match (d * d).cmp(&(c * c * rat(k as i128))) {
        Ordering::Greater => sd,
        Ordering::Less => sc,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Exact comparison of `|e − w|` with `d`.
pub fn distance_cmp(e: &ComplexRational, w: &CPoint, d: u64) -> Ordering {
    // |e−w|² − d² = (a−x)² + b² + k − d² − 2bσ√k with k = x(n−x)
    let k = w.imag_sq();
    let dx = e.re - rat(w.x() as i128);
    let rational = dx * dx + e.im * e.im + rat(k as i128) - rat((d as i128) * (d as i128));
    let coeff = -e.im * rat(2 * i128::from(w.sigma().as_i8()));
    sign_with_root(rational, coeff, k)
}

/// Whether every point of C°(n, C_M) is closer than `n` to `z`.
pub fn within_diameter_of_all(n: u64, base: &BaseSet, z: &ComplexRational) -> Result<bool> {
    let ccop = CCoP::build(n, base)?;
    Ok(ccop
        .points()
        .iter()
        .all(|w| distance_cmp(z, w, n) == Ordering::Less))
}

/// A point of C°(n, C_M) farther than `n` from `z`, if one exists.
pub fn exterior_witness(n: u64, base: &BaseSet, z: &ComplexRational) -> Result<Option<CPoint>> {
    let ccop = CCoP::build(n, base)?;
    Ok(ccop
        .points()
        .iter()
        .copied()
        .find(|w| distance_cmp(z, w, n) == Ordering::Greater))
}

/// Integer and half-integer lattice points in `[-pad, n+pad] × [-(n/2+pad), n/2+pad]`.
pub fn lattice_samples(n: u64, pad: i128) -> Vec<ComplexRational> {
    let n = n as i128;
    let half = n / 2 + 1 + pad;
    let mut out = Vec::new();
    for a2 in (-2 * pad)..=(2 * (n + pad)) {
        for b2 in (-2 * half)..=(2 * half) {
            out.push(ComplexRational::new(
                Rational::new(a2, 2),
                Rational::new(b2, 2),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccop::Sign;

    fn q(num: i128, den: i128) -> Rational {
        Rational::new(num, den)
    }

    fn float_dist(e: &ComplexRational, w: &CPoint) -> f64 {
        let to_f = |r: Rational| *r.numer() as f64 / *r.denom() as f64;
        let (x, y) = w.coords();
        ((to_f(e.re) - x).powi(2) + (to_f(e.im) - y).powi(2)).sqrt()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_region(10, rat(2), rat(2)), RegionClass::Interior);
        assert_eq!(classify_region(10, rat(5), rat(5)), RegionClass::OnCircle);
        assert_eq!(classify_region(10, rat(11), rat(0)), RegionClass::Exterior);
        assert_eq!(classify_region(10, rat(0), rat(0)), RegionClass::OnCircle);
        assert_eq!(
            classify_region(10, q(-1, 1000), rat(0)),
            RegionClass::Exterior
        );
        // just inside and just outside the top point
        assert_eq!(
            classify_region(10, rat(5), q(4999, 1000)),
            RegionClass::Interior
        );
        assert_eq!(
            classify_region(10, rat(5), q(5001, 1000)),
            RegionClass::Exterior
        );
    }

    #[test]
    fn filter_examples() {
        let primes = BaseSet::primes(50).unwrap();
        let cands = [
            ComplexRational::from_ints(3, 1),
            ComplexRational::from_ints(4, 1),
        ];
        let part = interior_points_filter(10, &primes, &cands).unwrap();
        assert_eq!(part.interior, vec![cands[0]]);
        assert!(part.exterior.is_empty());

        let cands = [
            ComplexRational::from_ints(3, 1),
            ComplexRational::from_ints(3, 40),
            ComplexRational::from_ints(13, 0),
        ];
        let part = interior_points_filter(11, &primes, &cands).unwrap();
        assert!(part.interior.is_empty() && part.exterior.is_empty());

        let part = interior_points_filter(10, &primes, &cands).unwrap();
        assert_eq!(part.exterior, vec![cands[1], cands[2]]);

        // non-integral real parts are never in C_M
        let half = [ComplexRational::new(q(7, 2), rat(0))];
        assert_eq!(
            interior_points_filter(10, &BaseSet::naturals(), &half).unwrap(),
            RegionPartition::default()
        );
    }

    #[test]
    fn least_generators() {
        assert_eq!(least_ccop_generator(&BaseSet::naturals()), Some(2));
        assert_eq!(
            least_ccop_generator(&BaseSet::primes(100).unwrap()),
            Some(4)
        );
    }

    #[test]
    fn exact_distance_matches_float() {
        let w = CPoint::new(10, 3, Sign::Plus).unwrap();
        for e in lattice_samples(10, 3) {
            let f = float_dist(&e, &w);
            let expect = if (f - 10.0).abs() < 1e-9 {
                continue;
            } else if f < 10.0 {
                Ordering::Less
            } else {
                Ordering::Greater
            };
            assert_eq!(distance_cmp(&e, &w, 10), expect, "{e:?}");
        }
        let partner = w.partner();
        let top = ComplexRational::new(rat(3), rat(0));
        assert_eq!(distance_cmp(&top, &partner, 10), Ordering::Less);
    }

    #[test]
    fn nesting_of_embedding_circles() {
        for m in 2..=60u64 {
            for n in 2..=60u64 {
                if m == n {
                    continue;
                }
                let all_interior = (1..m).all(|x| {
                    let z = CPoint::new(m, x, Sign::Plus).unwrap();
                    classify_point(n, &z) == RegionClass::Interior
                }) && classify_sq(n, rat(m as i128), rat(0))
                    == RegionClass::Interior;
                assert_eq!(all_interior, m < n, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn circles_meet_only_at_origin() {
        for m in 2..=200u64 {
            for n in (m + 1)..=200 {
                for a in 1..=m {
                    assert_ne!(a * (m - a), a * (n - a));
                }
                assert_eq!(classify_sq(n, rat(0), rat(0)), RegionClass::OnCircle);
            }
        }
    }

    #[test]
    fn interior_points_are_within_diameter() {
        let primes = BaseSet::primes(60).unwrap();
        for n in [10u64, 16, 22, 34] {
            for base in [BaseSet::naturals(), primes.clone()] {
                for e in lattice_samples(n, 2) {
                    if EmbeddingCircle::new(n).classify(&e) == RegionClass::Interior {
                        assert!(within_diameter_of_all(n, &base, &e).unwrap(), "n={n} {e:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn far_exterior_points_have_witnesses() {
        let primes = BaseSet::primes(60).unwrap();
        for n in [10u64, 16, 34] {
            let c = EmbeddingCircle::new(n).center();
            let r3 = rat(3 * n as i128) / rat(2);
            for base in [BaseSet::naturals(), primes.clone()] {
                for e in lattice_samples(n, n as i128 + 2) {
                    let dx = e.re - c;
                    if dx * dx + e.im * e.im > r3 * r3 {
                        assert!(
                            exterior_witness(n, &base, &e).unwrap().is_some(),
                            "n={n} {e:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn radially_outside_a_point_has_its_partner_as_witness() {
        let primes = BaseSet::primes(60).unwrap();
        let ccop = CCoP::build(34, &primes).unwrap();
        let c = rat(17);
        for w in ccop.points() {
            // e = c + 5/4·(w − c), kept as (Re, Im²) since Im is irrational
            let far = w.partner();
            let e_re = c + (rat(w.x() as i128) - c) * q(5, 4);
            let b_sq = rat(w.imag_sq() as i128) * q(25, 16);
            assert_eq!(classify_sq(34, e_re, b_sq), RegionClass::Exterior);
            // |e − partner| = r + (5/4) r = 9/4 · 17 > 34
            let dist_sq = (e_re - rat(far.x() as i128)).pow(2)
                + b_sq
                + rat(far.imag_sq() as i128)
                + rat(2) * q(5, 4) * rat(w.imag_sq() as i128);
            assert!(dist_sq > rat(34 * 34));
        }
    }

    #[test]
    fn near_circle_exterior_points_can_lack_witnesses() {
        // Just outside (0, 0) for n = 4: the farthest point of C°(4) is
        // (3, ±√3) at distance √(9.06 + 3) < 4.
        let e = ComplexRational::new(q(-1, 100), rat(0));
        assert_eq!(EmbeddingCircle::new(4).classify(&e), RegionClass::Exterior);
        assert_eq!(exterior_witness(4, &BaseSet::naturals(), &e).unwrap(), None);
    }
}
