//! Truncated π-adic expansions with exact rational coefficients.
//!
//! A [`PiSeries`] stands for an element `Σ c_k π^k + O(π^t)` of a discretely
//! valued field with `v(π) = 1`. Coefficients are rationals, so distinct
//! coefficients are distinct residues. Everything past the truncation order
//! `t` is unknown; operations never invent information beyond it.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Value of the discrete valuation, with `Infinite` for the zero element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("+inf"),
        }
    }
}

/// A finite π-adic expansion known modulo `π^truncation`.
///
/// Invariants: exponents strictly increasing, no zero coefficients, every
/// exponent below `truncation`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSeries", into = "RawSeries")]
pub struct PiSeries {
    terms: Vec<(i64, Rational)>,
    truncation: i64,
}

#[derive(Serialize, Deserialize)]
struct RawSeries {
    terms: Vec<(i64, Rational)>,
    truncation: i64,
}

impl TryFrom<RawSeries> for PiSeries {
    type Error = String;

    fn try_from(raw: RawSeries) -> std::result::Result<Self, Self::Error> {
        if let Some((e, _)) = raw.terms.iter().find(|(e, _)| *e >= raw.truncation) {
            return Err(format!(
                "term with exponent {e} is not below the truncation order {}",
                raw.truncation
            ));
        }
        Ok(PiSeries::new(raw.terms, raw.truncation))
    }
}

impl From<PiSeries> for RawSeries {
    fn from(s: PiSeries) -> Self {
        RawSeries {
            terms: s.terms,
            truncation: s.truncation,
        }
    }
}

impl PiSeries {
    /// Builds a series from arbitrary terms: duplicates are merged, zero
    /// coefficients and terms at or past the truncation order are dropped.
    pub fn new(mut terms: Vec<(i64, Rational)>, truncation: i64) -> Self {
        terms.retain(|(e, _)| *e < truncation);
        terms.sort_by_key(|(e, _)| *e);
        let mut merged: Vec<(i64, Rational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some((last, acc)) if *last == e => *acc += &c,
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        PiSeries {
            terms: merged,
            truncation,
        }
    }

    pub fn zero(truncation: i64) -> Self {
        PiSeries {
            terms: Vec::new(),
            truncation,
        }
    }

    pub fn constant(c: Rational, truncation: i64) -> Self {
        PiSeries::new(vec![(0, c)], truncation)
    }

    /// `c · π^k`.
    pub fn monomial(c: Rational, k: i64, truncation: i64) -> Self {
        PiSeries::new(vec![(k, c)], truncation)
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(terms: &[(i64, i64)], truncation: i64) -> Self {
        PiSeries::new(
            terms.iter().map(|&(e, c)| (e, Rational::from_integer(c))).collect(),
            truncation,
        )
    }

    pub fn terms(&self) -> &[(i64, Rational)] {
        &self.terms
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    /// Coefficient of `π^k`, or `None` when `k` lies past the truncation.
    pub fn coefficient(&self, k: i64) -> Option<Rational> {
        if k >= self.truncation {
            return None;
        }
        Some(
            self.terms
                .iter()
                .find(|(e, _)| *e == k)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rational::zero),
        )
    }

    pub fn valuation(&self) -> Valuation {
        valuation(self)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn neg(&self) -> Self {
        PiSeries {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            truncation: self.truncation,
        }
    }

    /// Multiplies by `c · π^k` (`c` nonzero); the truncation shifts by `k`.
    pub fn scale(&self, c: &Rational, k: i64) -> Self {
        assert!(!c.is_zero(), "scaling by zero loses the truncation order");
        PiSeries {
            terms: self.terms.iter().map(|(e, a)| (e + k, a * c)).collect(),
            truncation: self.truncation + k,
        }
    }
}

impl fmt::Display for PiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})pi")?,
                _ => write!(f, "({c})pi^{e}")?,
            }
        }
        write!(f, " + O(pi^{})", self.truncation)
    }
}

impl fmt::Debug for PiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn combine(a: &PiSeries, b: &PiSeries, negate_b: bool) -> PiSeries {
    let truncation = a.truncation.min(b.truncation);
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let next = match (a.terms.get(i), b.terms.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        let (e, c) = match next {
            Ordering::Less => {
                i += 1;
                a.terms[i - 1].clone()
            }
            Ordering::Greater => {
                j += 1;
                let (e, c) = &b.terms[j - 1];
                (*e, if negate_b { -c } else { c.clone() })
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
                let (e, x) = &a.terms[i - 1];
                let y = &b.terms[j - 1].1;
                (*e, if negate_b { x - y } else { x + y })
            }
        };
        if e < truncation && !c.is_zero() {
            out.push((e, c));
        }
    }
    PiSeries { terms: out, truncation }
}

/// Exact difference `a − b`, known up to the smaller truncation order.
pub fn series_sub(a: &PiSeries, b: &PiSeries) -> PiSeries {
    combine(a, b, true)
}

/// Exact sum `a + b`, known up to the smaller truncation order.
pub fn series_add(a: &PiSeries, b: &PiSeries) -> PiSeries {
    combine(a, b, false)
}

/// Smallest exponent with a nonzero coefficient; `Infinite` when nothing
/// survives below the truncation order.
pub fn valuation(a: &PiSeries) -> Valuation {
    a.terms
        .first()
        .map_or(Valuation::Infinite, |(e, _)| Valuation::Finite(*e))
}

/// A point of `P^1(K)`: an affine value or the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ValuedPoint {
    Affine(PiSeries),
    Infinity,
}

impl ValuedPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ValuedPoint::Infinity)
    }

    pub fn affine(&self) -> Option<&PiSeries> {
        match self {
            ValuedPoint::Affine(s) => Some(s),
            ValuedPoint::Infinity => None,
        }
    }
}

impl fmt::Display for ValuedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuedPoint::Affine(s) => write!(f, "{s}"),
            ValuedPoint::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawPoint {
    Tag(String),
    Series(PiSeries),
}

impl Serialize for ValuedPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ValuedPoint::Affine(series) => series.serialize(s),
            ValuedPoint::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ValuedPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match RawPoint::deserialize(d)? {
            RawPoint::Series(s) => Ok(ValuedPoint::Affine(s)),
            RawPoint::Tag(t) if t == "inf" || t == "infinity" => Ok(ValuedPoint::Infinity),
            RawPoint::Tag(t) => Err(serde::de::Error::custom(format!(
                "expected a series object or \"inf\", found {t:?}"
            ))),
        }
    }
}

/// Why a pair of points could not be compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PairFailure {
    /// The difference vanishes up to the truncation order.
    Exhausted,
    /// Both points are ∞.
    Same,
    /// The affine point with the given valuation lies outside the unit disk.
    Negative(i64),
}

pub(crate) fn try_pairwise(p: &ValuedPoint, q: &ValuedPoint) -> std::result::Result<i64, PairFailure> {
    match (p, q) {
        (ValuedPoint::Affine(a), ValuedPoint::Affine(b)) => match valuation(&series_sub(a, b)) {
            Valuation::Finite(v) => Ok(v),
            Valuation::Infinite => Err(PairFailure::Exhausted),
        },
        (ValuedPoint::Affine(a), ValuedPoint::Infinity) | (ValuedPoint::Infinity, ValuedPoint::Affine(a)) => {
            match valuation(a) {
                Valuation::Finite(v) if v < 0 => Err(PairFailure::Negative(v)),
                // the minor of (α, 1) against (1, 0) is a unit once v(α) ≥ 0
                _ => Ok(0),
            }
        }
        (ValuedPoint::Infinity, ValuedPoint::Infinity) => Err(PairFailure::Same),
    }
}

pub(crate) fn pair_error(i: usize, j: usize, p: &ValuedPoint, f: PairFailure) -> Error {
    match f {
        PairFailure::Exhausted => Error::TruncationExhausted { first: i, second: j },
        PairFailure::Same => Error::DuplicatePoint { first: i, second: j },
        PairFailure::Negative(v) => Error::NegativeValuation {
            point: if p.is_infinity() { j } else { i },
            valuation: v,
        },
    }
}

/// Valuation of the 2×2 minor formed by the projective coordinates of two
/// points: `v(α − β)` for affine points, `0` against ∞.
pub fn pairwise_valuation(p: &ValuedPoint, q: &ValuedPoint) -> Result<i64> {
    try_pairwise(p, q).map_err(|f| pair_error(0, 1, p, f))
}

/// All pairwise valuations of a point list, indexed by position. Diagonal
/// entries are 0 and carry no meaning.
pub fn pairwise_valuations(points: &[ValuedPoint]) -> Result<Vec<Vec<i64>>> {
    for (i, p) in points.iter().enumerate() {
        if let Some(Valuation::Finite(v)) = p.affine().map(valuation) {
            if v < 0 {
                return Err(Error::NegativeValuation { point: i, valuation: v });
            }
        }
    }
    let n = points.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = try_pairwise(&points[i], &points[j]).map_err(|f| pair_error(i, j, &points[i], f))?;
            out[i][j] = v;
            out[j][i] = v;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(terms: &[(i64, i64)]) -> PiSeries {
        PiSeries::from_ints(terms, 8)
    }

    fn pt(terms: &[(i64, i64)]) -> ValuedPoint {
        ValuedPoint::Affine(s(terms))
    }

    #[test]
    fn sub_examples() {
        assert_eq!(series_sub(&s(&[(1, 1)]), &s(&[])), s(&[(1, 1)]));
        assert_eq!(series_sub(&s(&[(0, 1), (1, 1)]), &s(&[(0, 1)])), s(&[(1, 1)]));
        let a = s(&[(0, 2), (1, 1)]);
        let d = series_sub(&a, &a);
        assert!(d.is_zero());
        assert_eq!(d.truncation(), 8);
    }

    #[test]
    fn sub_truncates_to_smaller_order() {
        let a = PiSeries::from_ints(&[(0, 1), (5, 1)], 8);
        let b = PiSeries::from_ints(&[(0, 1)], 4);
        let d = series_sub(&a, &b);
        assert_eq!(d.truncation(), 4);
        assert!(d.is_zero());
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&s(&[(1, 1)])), Valuation::Finite(1));
        assert_eq!(valuation(&s(&[(0, 2), (1, 1)])), Valuation::Finite(0));
        assert_eq!(valuation(&s(&[])), Valuation::Infinite);
    }

    #[test]
    fn pairwise_examples() {
        assert_eq!(pairwise_valuation(&pt(&[(1, 1)]), &pt(&[(0, 1)])).unwrap(), 0);
        assert_eq!(pairwise_valuation(&pt(&[(0, 1)]), &pt(&[(0, 1), (1, 1)])).unwrap(), 1);
        assert_eq!(pairwise_valuation(&pt(&[]), &ValuedPoint::Infinity).unwrap(), 0);
        assert_eq!(pairwise_valuation(&pt(&[(2, 3)]), &ValuedPoint::Infinity).unwrap(), 0);
    }

    #[test]
    fn pairwise_errors() {
        let a = pt(&[(0, 1), (1, 1)]);
        assert!(matches!(
            pairwise_valuation(&a, &a),
            Err(Error::TruncationExhausted { .. })
        ));
        assert!(matches!(
            pairwise_valuation(&ValuedPoint::Infinity, &ValuedPoint::Infinity),
            Err(Error::DuplicatePoint { .. })
        ));
        let neg = ValuedPoint::Affine(PiSeries::from_ints(&[(-1, 1)], 4));
        assert!(matches!(
            pairwise_valuations(&[pt(&[]), neg]),
            Err(Error::NegativeValuation {
                point: 1,
                valuation: -1
            })
        ));
    }

    #[test]
    fn point_json() {
        let p = pt(&[(0, 1), (1, 1)]);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"terms":[[0,"1"],[1,"1"]],"truncation":8}"#);
        let back: ValuedPoint = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
        let inf: ValuedPoint = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(inf, ValuedPoint::Infinity);
        assert!(serde_json::from_str::<ValuedPoint>(r#"{"terms":[[9,"1"]],"truncation":8}"#).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_series() -> impl Strategy<Value = PiSeries> {
            (prop::collection::vec((0i64..6, -4i64..5, 1i64..4), 0..5), 3i64..8).prop_map(|(terms, t)| {
                PiSeries::new(terms.into_iter().map(|(e, n, d)| (e, Rational::new(n, d))).collect(), t)
            })
        }

        proptest! {
            #[test]
            fn sub_then_add_restores(a in arb_series(), b in arb_series()) {
                let t = a.truncation().min(b.truncation());
                let back = series_add(&series_sub(&a, &b), &b);
                prop_assert_eq!(back, PiSeries::new(a.terms().to_vec(), t));
            }

            #[test]
            fn scaling_shifts_valuation(a in arb_series(), k in -3i64..4, n in 1i64..5) {
                let scaled = a.scale(&Rational::new(n, 3), k);
                let shifted = match valuation(&a) {
                    Valuation::Finite(v) => Valuation::Finite(v + k),
                    Valuation::Infinite => Valuation::Infinite,
                };
                prop_assert_eq!(valuation(&scaled), shifted);
            }

            #[test]
            fn ultrametric(a in arb_series(), b in arb_series(), c in arb_series()) {
                let v = |x: &PiSeries, y: &PiSeries| valuation(&series_sub(x, y));
                let (ab, bc, ac) = (v(&a, &b), v(&b, &c), v(&a, &c));
                let t = a.truncation().min(b.truncation()).min(c.truncation());
                // only meaningful where all three are determined
                if let (Valuation::Finite(x), Valuation::Finite(y), Valuation::Finite(z)) = (ab, bc, ac) {
                    prop_assume!(x < t && y < t && z < t);
                    prop_assert!(z >= x.min(y));
                }
            }
        }
    }
}
