//! Expansion certificates: axes of C°(n+s, C_B) deduced from witness axes of
//! C°(n, C_M) and C°(n+t, C_M).
//!
//! For a witness `z` (low endpoint of an axis of C°(n)) and a point `w` of
//! C°(n+t) with `Re(w) = Re(z) + s` and `Re(w), Re(n−z) ∈ B`, the pair
//! `{Re(w), Re(n−z)}` sums to `n + s` and is therefore an axis of
//! C°(n+s, C_B). Every certificate is checked against the direct
//! construction by [`verify_certificates`].

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::baseset::{BaseSet, GeneratorFilter};
use crate::ccop::{CAxis, CCoP, CPoint, Sign};
use crate::cop::{axes, Axis};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Principle {
    /// `s = t`
    Equality,
    /// `s > t`: the new generator lies after both known ones.
    Forecast,
    /// `0 < s < t`: the new generator lies between them.
    Squeeze,
}

impl Principle {
    pub fn classify(t: u64, s: u64) -> Self {
        match s.cmp(&t) {
            std::cmp::Ordering::Equal => Principle::Equality,
            std::cmp::Ordering::Greater => Principle::Forecast,
            std::cmp::Ordering::Less => Principle::Squeeze,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Principle::Equality => "equality",
            Principle::Forecast => "forecast",
            Principle::Squeeze => "squeeze",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "equality" => Some(Principle::Equality),
            "forecast" => Some(Principle::Forecast),
            "squeeze" => Some(Principle::Squeeze),
            _ => None,
        }
    }
}

impl fmt::Display for Principle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `(form1, form2)` of the axial points ordering lemma for a low endpoint
/// `zx` of C°(n) and `wx` of C°(n+t):
///
/// * form1: `zx < wx` and `n − zx < n + t − wx`
/// * form2: `zx < wx < zx + t`
pub fn axial_ordering_check(zx: u64, wx: u64, n: u64, t: u64) -> (bool, bool) {
    let (zx, wx, n, t) = (zx as i128, wx as i128, n as i128, t as i128);
    let form1 = zx < wx && n - zx < n + t - wx;
    let form2 = zx < wx && wx < zx + t;
    (form1, form2)
}

/// A validated expansion query.
#[derive(Debug, Clone, Copy)]
pub struct ExpansionQuery<'a> {
    n: u64,
    t: u64,
    s: u64,
    superset: &'a BaseSet,
    subset: &'a BaseSet,
}

impl<'a> ExpansionQuery<'a> {
    pub fn new(n: u64, t: u64, s: u64, superset: &'a BaseSet, subset: &'a BaseSet) -> Result<Self> {
        Self::with_filter(n, t, s, superset, subset, &GeneratorFilter::any())
    }

    pub fn with_filter(
        n: u64,
        t: u64,
        s: u64,
        superset: &'a BaseSet,
        subset: &'a BaseSet,
        filter: &GeneratorFilter,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGenerator(n));
        }
        if t == 0 || s == 0 {
            return Err(Error::InvalidQuery(format!(
                "t and s must be at least 1 (t = {t}, s = {s})"
            )));
        }
        for (name, v) in [("n", n), ("t", t), ("s", s)] {
            if !filter.admits(v)? {
                return Err(Error::InvalidQuery(format!(
                    "{name} = {v} is not an admissible generator"
                )));
            }
        }
        let top = n + t.max(s);
        superset.ensure_covers(top)?;
        subset.ensure_covers(top)?;
        if !subset.is_subset_up_to(superset, top) {
            return Err(Error::InvalidQuery(format!(
                "subset `{}` is not contained in superset `{}` up to {top}",
                subset.label(),
                superset.label()
            )));
        }
        Ok(ExpansionQuery {
            n,
            t,
            s,
            superset,
            subset,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn superset(&self) -> &'a BaseSet {
        self.superset
    }

    pub fn subset(&self) -> &'a BaseSet {
        self.subset
    }

    pub fn principle(&self) -> Principle {
        Principle::classify(self.t, self.s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionCertificate {
    n: u64,
    t: u64,
    s: u64,
    witness_z: CAxis,
    witness_w: CAxis,
    w: CPoint,
    u: CPoint,
    deduced_u: CAxis,
    principle: Principle,
}

impl ExpansionCertificate {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn principle(&self) -> Principle {
        self.principle
    }

    /// Axis of C°(n, C_M) with low endpoint `z`.
    pub fn witness_z(&self) -> CAxis {
        self.witness_z
    }

    /// Axis of C°(n+t, C_M) through `w`.
    pub fn witness_w(&self) -> CAxis {
        self.witness_w
    }

    /// The deduced axis of C°(n+s, C_B).
    pub fn deduced(&self) -> CAxis {
        self.deduced_u
    }

    /// The endpoint `u` of the deduced axis with `Re(u) = Re(w)`.
    pub fn u(&self) -> CPoint {
        self.u
    }

    pub fn w(&self) -> CPoint {
        self.w
    }

    pub fn z_low(&self) -> u64 {
        self.witness_z.low()
    }

    /// `Re(w)`.
    pub fn w_re(&self) -> u64 {
        self.w.x()
    }

    pub fn deduced_axis(&self) -> Axis {
        Axis::new(self.deduced_u.low(), self.deduced_u.high())
    }

    /// `w` is the larger real part of its axis.
    pub fn w_high_endpoint(&self) -> bool {
        2 * self.w.x() > self.n + self.t
    }

    pub fn degenerate_witness(&self) -> bool {
        self.witness_z.is_degenerate() || self.witness_w.is_degenerate()
    }
}

pub fn expand(q: &ExpansionQuery<'_>) -> Result<Vec<ExpansionCertificate>> {
    let (n, t, s) = (q.n, q.t, q.s);
    let known_low = CCoP::build(n, q.superset)?;
    let known_high = CCoP::build(n + t, q.superset)?;
    let principle = q.principle();
    let mut out = Vec::new();
    for &zx in known_low.source().weights() {
        if 2 * zx > n {
            break;
        }
        let wx = zx + s;
        if wx >= n + t || !known_high.has_weight(wx) {
            continue;
        }
        let mirror = n - zx;
        if !q.subset.contains_unchecked(wx) || !q.subset.contains_unchecked(mirror) {
            continue;
        }
        let z = CPoint::new(n, zx, Sign::Plus)?;
        let w = CPoint::new(n + t, wx, Sign::Plus)?;
        // imaginary part from the circle condition for n + s
        let u = CPoint::new(n + s, wx, Sign::Plus)?;
        out.push(ExpansionCertificate {
            n,
            t,
            s,
            witness_z: CAxis::through(z),
            witness_w: CAxis::through(w),
            w,
            u,
            deduced_u: CAxis::through(u),
            principle,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The deduced axis is missing from the direct construction.
    NotInDirect { z_low: u64, deduced: Axis },
    /// A certificate breaks one of its own arithmetic invariants.
    Malformed { z_low: u64, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// Soundness per certificate, in input order.
    pub certificate_sound: Vec<bool>,
    pub soundness_violations: Vec<Violation>,
    /// Direct axes (low endpoint `u` with `u − s ≥ 1`) that no certificate
    /// produced. `None` when completeness is not claimed (M ≠ ℕ).
    pub missing: Option<Vec<Axis>>,
    /// Axes of C°(n+s, C_B) counted by real weights, center included.
    pub direct_axes: Vec<Axis>,
    pub degenerate_witnesses: usize,
}

impl VerificationReport {
    pub fn sound(&self) -> bool {
        self.soundness_violations.is_empty()
    }

    pub fn complete(&self) -> Option<bool> {
        self.missing.as_ref().map(Vec::is_empty)
    }
}

fn malformed(cert: &ExpansionCertificate, q: &ExpansionQuery<'_>) -> Option<String> {
    let (n, t, s) = (q.n, q.t, q.s);
    let zx = cert.z_low();
    let wx = cert.w_re();
    if (cert.n, cert.t, cert.s) != (n, t, s) {
        return Some("certificate belongs to another query".into());
    }
    if cert.witness_z.n() != n || 2 * zx > n {
        return Some("z is not a low endpoint of an axis of C°(n)".into());
    }
    if cert.witness_w.n() != n + t || !cert.witness_w.contains(&cert.w) {
        return Some("w is not on an axis of C°(n+t)".into());
    }
    if wx != zx + s {
        return Some(format!("Re(w) = {wx} but Re(z) + s = {}", zx + s));
    }
    if !q.subset.contains_unchecked(wx) || !q.subset.contains_unchecked(n - zx) {
        return Some("Re(w) or Re(n−z) is outside B".into());
    }
    let u = cert.u;
    let partner = cert.deduced_u.p().x() + cert.deduced_u.q().x() - u.x();
    if u.x() != wx
        || partner != n - zx
        || cert.deduced_u.n() != n + s
        || !cert.deduced_u.contains(&u)
    {
        return Some("deduced axis does not match Re(u) = Re(w), Re(n+s−u) = Re(n−z)".into());
    }
    if u.imag_sq() != u.x() * (n + s - u.x()) {
        return Some("imaginary part of u violates the circle condition".into());
    }
    if cert.principle != Principle::classify(t, s) {
        return Some("principle does not match the sign of s − t".into());
    }
    match cert.principle {
        Principle::Equality
            if cert.deduced_axis() != Axis::new(cert.witness_w.low(), cert.witness_w.high()) =>
        {
            Some("equality certificate does not reproduce the w axis".into())
        }
        Principle::Forecast if (n - zx) as i128 <= (n + t) as i128 - wx as i128 => {
            Some("forecast ordering Re(n−z) > Re(n+t−w) fails".into())
        }
        Principle::Squeeze
            if !(zx < wx && wx < zx + t && ((n - zx) as i128) < (n + t) as i128 - wx as i128) =>
        {
            Some("squeeze ordering Re(z) < Re(w) < Re(z)+t fails".into())
        }
        _ => None,
    }
}

/// Cross-checks certificates against the direct construction of C°(n+s, C_B).
pub fn verify_certificates(
    q: &ExpansionQuery<'_>,
    certs: &[ExpansionCertificate],
) -> Result<VerificationReport> {
    let target = q.n + q.s;
    let direct = CCoP::build(target, q.subset)?;
    let direct_axes: Vec<Axis> = axes(direct.source()).all().collect();
    let direct_set: BTreeSet<Axis> = direct_axes.iter().copied().collect();

    let mut certificate_sound = Vec::with_capacity(certs.len());
    let mut soundness_violations = Vec::new();
    let mut produced = BTreeSet::new();
    for cert in certs {
        let mut ok = true;
        if let Some(reason) = malformed(cert, q) {
            soundness_violations.push(Violation::Malformed {
                z_low: cert.z_low(),
                reason,
            });
            ok = false;
        }
        let deduced = cert.deduced_axis();
        if !direct_set.contains(&deduced) {
            soundness_violations.push(Violation::NotInDirect {
                z_low: cert.z_low(),
                deduced,
            });
            ok = false;
        }
        produced.insert(deduced);
        certificate_sound.push(ok);
    }

    let missing = q.superset.is_naturals().then(|| {
        direct_axes
            .iter()
            .filter(|a| a.low > q.s && !produced.contains(a))
            .copied()
            .collect()
    });

    Ok(VerificationReport {
        certificate_sound,
        soundness_violations,
        missing,
        direct_axes,
        degenerate_witnesses: certs.iter().filter(|c| c.degenerate_witness()).count(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Inclusive generator range, optionally restricted to one parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorRange {
    pub from: u64,
    pub to: u64,
    pub parity: Option<Parity>,
}

impl GeneratorRange {
    pub fn new(from: u64, to: u64) -> Self {
        GeneratorRange {
            from,
            to,
            parity: None,
        }
    }

    pub fn even(from: u64, to: u64) -> Self {
        GeneratorRange {
            from,
            to,
            parity: Some(Parity::Even),
        }
    }

    pub fn odd(from: u64, to: u64) -> Self {
        GeneratorRange {
            from,
            to,
            parity: Some(Parity::Odd),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.values().next().is_none()
    }

    pub fn values(&self) -> impl Iterator<Item = u64> {
        let parity = self.parity;
        (self.from..=self.to).filter(move |n| match parity {
            None => true,
            Some(Parity::Even) => n % 2 == 0,
            Some(Parity::Odd) => n % 2 == 1,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub n: u64,
    pub t: u64,
    pub s: u64,
    pub principle: Principle,
    pub witnesses: usize,
    pub deduced_axes: usize,
    pub direct_axes: usize,
    pub sound: bool,
    pub complete: Option<bool>,
    pub degenerate_witnesses: usize,
}

/// Runs [`expand`] and [`verify_certificates`] for every generator in the
/// range. Rows come back in ascending `n`.
pub fn scan(
    range: GeneratorRange,
    t: u64,
    s: u64,
    superset: &BaseSet,
    subset: &BaseSet,
    filter: &GeneratorFilter,
) -> Result<Vec<ScanRow>> {
    let ns: Vec<u64> = range.values().collect();
    let rows: Vec<Option<ScanRow>> = ns
        .par_iter()
        .map(|&n| {
            if !filter.admits(n)? {
                return Ok(None);
            }
            let q = ExpansionQuery::with_filter(n, t, s, superset, subset, filter)?;
            let certs = expand(&q)?;
            let report = verify_certificates(&q, &certs)?;
            let deduced: BTreeSet<Axis> = certs
                .iter()
                .map(ExpansionCertificate::deduced_axis)
                .collect();
            Ok(Some(ScanRow {
                n,
                t,
                s,
                principle: q.principle(),
                witnesses: certs.len(),
                deduced_axes: deduced.len(),
                direct_axes: report.direct_axes.len(),
                sound: report.sound(),
                complete: report.complete(),
                degenerate_witnesses: report.degenerate_witnesses,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: all real axes {a, b} of C(m, B), center included.
    fn oracle_axes(m: u64, b: &BaseSet) -> Vec<(u64, u64)> {
        (1..=m / 2)
            .filter(|&x| b.contains(x).unwrap() && b.contains(m - x).unwrap())
            .map(|x| (x, m - x))
            .collect()
    }

    fn lows(certs: &[ExpansionCertificate]) -> Vec<(u64, u64)> {
        certs.iter().map(|c| (c.z_low(), c.w_re())).collect()
    }

    #[test]
    fn ordering_check_examples() {
        assert_eq!(axial_ordering_check(7, 11, 30, 8), (true, true));
        assert_eq!(axial_ordering_check(7, 11, 30, 2), (false, false));
        assert_eq!(axial_ordering_check(9, 9, 30, 4), (false, false));
    }

    #[test]
    fn forecast_figure_instance() {
        let nat = BaseSet::naturals();
        let primes = BaseSet::primes(100).unwrap();
        let q = ExpansionQuery::new(30, 2, 4, &nat, &primes).unwrap();
        assert_eq!(q.principle(), Principle::Forecast);
        let certs = expand(&q).unwrap();
        let c = certs
            .iter()
            .find(|c| c.z_low() == 7)
            .expect("z = 7 witness");
        assert_eq!(c.w_re(), 11);
        assert_eq!((c.witness_z().low(), c.witness_z().high()), (7, 23));
        assert_eq!((c.witness_w().low(), c.witness_w().high()), (11, 21));
        assert_eq!(c.deduced_axis(), Axis::new(11, 23));
        assert_eq!(c.u().n(), 34);
        assert_eq!(c.u().imag_sq(), 11 * 23);

        let report = verify_certificates(&q, &certs).unwrap();
        assert!(report.sound());
        assert_eq!(report.complete(), Some(true));
        assert_eq!(
            oracle_axes(34, &primes),
            vec![(3, 31), (5, 29), (11, 23), (17, 17)]
        );
        // {5, 29} comes from z = 1 (axis 1 + 29 of C°(30)) and w = 5
        assert!(lows(&certs).contains(&(1, 5)));
        // {17, 17} needs w = 17, the high endpoint of 15 + 17 in C°(32)
        let center = certs
            .iter()
            .find(|c| c.deduced_axis() == Axis::new(17, 17))
            .unwrap();
        assert!(center.w_high_endpoint());
    }

    #[test]
    fn squeeze_figure_instance() {
        let nat = BaseSet::naturals();
        let primes = BaseSet::primes(100).unwrap();
        let q = ExpansionQuery::new(30, 8, 4, &nat, &primes).unwrap();
        assert_eq!(q.principle(), Principle::Squeeze);
        let certs = expand(&q).unwrap();
        let c = certs.iter().find(|c| c.z_low() == 7).unwrap();
        assert_eq!((c.witness_w().low(), c.witness_w().high()), (11, 27));
        assert_eq!(c.deduced_axis(), Axis::new(11, 23));
        assert_eq!(axial_ordering_check(7, 11, 30, 8), (true, true));
        assert!(verify_certificates(&q, &certs).unwrap().sound());
    }

    #[test]
    fn equality_instance() {
        let nat = BaseSet::naturals();
        let primes = BaseSet::primes(100).unwrap();
        let q = ExpansionQuery::new(30, 2, 2, &nat, &primes).unwrap();
        let certs = expand(&q).unwrap();
        let c = certs.iter().find(|c| c.z_low() == 11).unwrap();
        assert_eq!(c.w_re(), 13);
        assert_eq!(c.deduced_axis(), Axis::new(13, 19));
        for c in &certs {
            assert_eq!(
                c.deduced_axis(),
                Axis::new(c.witness_w().low(), c.witness_w().high())
            );
        }
    }

    #[test]
    fn query_validation() {
        let nat = BaseSet::naturals();
        let primes = BaseSet::primes(100).unwrap();
        let odds = BaseSet::odds();
        assert!(matches!(
            ExpansionQuery::new(30, 2, 0, &nat, &primes),
            Err(Error::InvalidQuery(_))
        ));
        assert!(matches!(
            ExpansionQuery::new(30, 0, 2, &nat, &primes),
            Err(Error::InvalidQuery(_))
        ));
        // 2 is prime but not odd
        assert!(matches!(
            ExpansionQuery::new(30, 2, 2, &odds, &primes),
            Err(Error::InvalidQuery(_))
        ));
        assert!(matches!(
            ExpansionQuery::new(98, 2, 4, &nat, &primes),
            Err(Error::OutOfRange { .. })
        ));
        let evens = BaseSet::custom("evens", (1..=50).map(|k| 2 * k)).unwrap();
        let filter = GeneratorFilter::only(evens);
        assert!(ExpansionQuery::with_filter(30, 2, 4, &nat, &primes, &filter).is_ok());
        assert!(ExpansionQuery::with_filter(30, 3, 4, &nat, &primes, &filter).is_err());
    }

    #[test]
    fn empty_certificates_report_incompleteness() {
        let nat = BaseSet::naturals();
        let primes = BaseSet::primes(100).unwrap();
        let q = ExpansionQuery::new(30, 2, 4, &nat, &primes).unwrap();
        let report = verify_certificates(&q, &[]).unwrap();
        assert!(report.sound());
        assert_eq!(report.complete(), Some(false));
        assert_eq!(
            report.missing.unwrap(),
            vec![Axis::new(5, 29), Axis::new(11, 23), Axis::new(17, 17)]
        );
    }

    #[test]
    fn tampered_certificate_is_unsound() {
        let nat = BaseSet::naturals();
        let primes = BaseSet::primes(100).unwrap();
        let q = ExpansionQuery::new(30, 2, 4, &nat, &primes).unwrap();
        let mut certs = expand(&q).unwrap();
        let bogus = CPoint::new(34, 9, Sign::Plus).unwrap();
        certs[0].u = bogus;
        certs[0].deduced_u = CAxis::through(bogus);
        let report = verify_certificates(&q, &certs).unwrap();
        assert!(!report.sound());
        assert!(!report.certificate_sound[0]);
        assert!(report.certificate_sound[1..].iter().all(|&b| b));
    }

    #[test]
    fn completeness_not_claimed_for_proper_supersets() {
        let odds = BaseSet::odds();
        let primes = BaseSet::primes(100).unwrap();
        let odd_primes = BaseSet::custom(
            "odd-primes",
            primes.members_up_to(100).into_iter().filter(|p| p % 2 == 1),
        )
        .unwrap();
        let q = ExpansionQuery::new(30, 2, 4, &odds, &odd_primes).unwrap();
        let report = verify_certificates(&q, &expand(&q).unwrap()).unwrap();
        assert!(report.sound());
        assert_eq!(report.complete(), None);
    }

    #[test]
    fn degenerate_witnesses_are_flagged() {
        let nat = BaseSet::naturals();
        let primes = BaseSet::primes(100).unwrap();
        let q = ExpansionQuery::new(26, 2, 4, &nat, &primes).unwrap();
        let certs = expand(&q).unwrap();
        // z = 13 (center of 26), w = 17, deduced {17, 13} of C°(30, C_ℙ)
        let c = certs.iter().find(|c| c.z_low() == 13).unwrap();
        assert!(c.degenerate_witness());
        assert_eq!(c.deduced_axis(), Axis::new(13, 17));
        let report = verify_certificates(&q, &certs).unwrap();
        assert!(report.sound());
        assert_eq!(report.degenerate_witnesses, 1);
    }

    #[test]
    fn scan_examples() {
        let nat = BaseSet::naturals();
        let primes = BaseSet::primes(200).unwrap();
        let rows = scan(
            GeneratorRange::even(6, 100),
            2,
            4,
            &nat,
            &primes,
            &GeneratorFilter::any(),
        )
        .unwrap();
        assert_eq!(rows.len(), 48);
        assert!(rows.windows(2).all(|w| w[0].n < w[1].n));
        for row in &rows {
            assert!(row.sound);
            assert_eq!(row.complete, Some(true));
            let oracle = oracle_axes(row.n + 4, &primes);
            assert_eq!(row.direct_axes, oracle.len());
            let eligible = oracle.iter().filter(|(low, _)| *low > 4).count();
            assert!(row.deduced_axes >= eligible, "n = {}", row.n);
            assert!(row.deduced_axes <= row.direct_axes);
        }
        assert!(scan(
            GeneratorRange::new(6, 4),
            2,
            4,
            &nat,
            &primes,
            &GeneratorFilter::any()
        )
        .unwrap()
        .is_empty());
    }

    #[test]
    fn certificates_match_brute_force_enumeration() {
        let nat = BaseSet::naturals();
        let primes = BaseSet::primes(200).unwrap();
        for n in 4..=80 {
            for t in 1..=6 {
                for s in 1..=8 {
                    let q = ExpansionQuery::new(n, t, s, &nat, &primes).unwrap();
                    let got = lows(&expand(&q).unwrap());
                    let mut want = Vec::new();
                    for zx in 1..=n / 2 {
                        let wx = zx + s;
                        if wx < n + t
                            && primes.contains(wx).unwrap()
                            && primes.contains(n - zx).unwrap()
                        {
                            want.push((zx, wx));
                        }
                    }
                    assert_eq!(got, want, "n={n} t={t} s={s}");
                }
            }
        }
    }
}
