use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::valuation::{pairwise_valuations, ValuedPoint};

/// A factor `(x − α)^mult` of `f`, or the order of `f` at ∞.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    pub point: ValuedPoint,
    pub mult: i64,
}

/// The curve `y^n = ∏ (x − α_i)^{a_i}`. Point labels are positions in
/// [`points`](Self::points); ∞ is appended when not given explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawConfiguration", into = "RawConfiguration")]
pub struct BranchConfiguration {
    n: u64,
    points: Vec<ValuedPoint>,
    orders: Vec<i64>,
    input_len: usize,
}

#[derive(Serialize, Deserialize)]
struct RawConfiguration {
    n: u64,
    roots: Vec<Root>,
}

impl TryFrom<RawConfiguration> for BranchConfiguration {
    type Error = Error;

    fn try_from(raw: RawConfiguration) -> Result<Self> {
        BranchConfiguration::new(raw.n, raw.roots)
    }
}

impl From<BranchConfiguration> for RawConfiguration {
    fn from(cfg: BranchConfiguration) -> Self {
        RawConfiguration {
            n: cfg.n,
            roots: cfg.roots(),
        }
    }
}

impl BranchConfiguration {
    /// Validates the input: `n ≥ 2`, nonzero multiplicities, at least one
    /// affine root, an explicit ∞ only with order `−deg f`, pairwise distinct
    /// points of non-negative valuation, and `gcd(n, a_i, deg f) = 1`.
    pub fn new(n: u64, roots: Vec<Root>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("degree n = {n} must be at least 2")));
        }
        if roots.iter().any(|r| r.mult == 0) {
            return Err(Error::InvalidInput("root multiplicities must be nonzero".into()));
        }
        let infinities: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].point.is_infinity()).collect();
        if infinities.len() > 1 {
            return Err(Error::DuplicatePoint {
                first: infinities[0],
                second: infinities[1],
            });
        }
        if infinities.len() == roots.len() {
            return Err(Error::InvalidInput("at least one affine root is required".into()));
        }
        let degree: i64 = roots.iter().filter(|r| !r.point.is_infinity()).map(|r| r.mult).sum();
        if let Some(&i) = infinities.first() {
            if roots[i].mult != -degree {
                return Err(Error::InvalidInput(format!(
                    "order at infinity is {} but must equal -deg f = {}",
                    roots[i].mult, -degree
                )));
            }
        }
        pairwise_valuations(&roots.iter().map(|r| r.point.clone()).collect::<Vec<_>>())?;

        let mut g = n;
        for r in &roots {
            g = g.gcd(&r.mult.unsigned_abs());
        }
        g = g.gcd(&degree.unsigned_abs());
        if g != 1 {
            return Err(Error::Reducible { gcd: g });
        }

        let input_len = roots.len();
        let (mut points, mut orders): (Vec<_>, Vec<_>) = roots.into_iter().map(|r| (r.point, r.mult)).unzip();
        if infinities.is_empty() {
            points.push(ValuedPoint::Infinity);
            orders.push(-degree);
        }
        Ok(BranchConfiguration {
            n,
            points,
            orders,
            input_len,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// All points including ∞.
    pub fn points(&self) -> &[ValuedPoint] {
        &self.points
    }

    /// Order of `f` at each point; ∞ has order `−deg f`.
    pub fn orders(&self) -> BTreeMap<usize, i64> {
        self.orders.iter().copied().enumerate().collect()
    }

    pub fn infinity_label(&self) -> usize {
        self.points
            .iter()
            .position(ValuedPoint::is_infinity)
            .expect("∞ is always present")
    }

    pub fn degree(&self) -> i64 {
        -self.orders[self.infinity_label()]
    }

    /// The roots as given, with ∞ only if it was part of the input.
    pub fn roots(&self) -> Vec<Root> {
        self.points[..self.input_len]
            .iter()
            .zip(&self.orders)
            .map(|(p, m)| Root {
                point: p.clone(),
                mult: *m,
            })
            .collect()
    }
}

/// Labels of the points over which the cover ramifies: those where `n`
/// does not divide the order of `f`.
pub fn branch_points(cfg: &BranchConfiguration) -> Vec<usize> {
    cfg.orders
        .iter()
        .enumerate()
        .filter(|(_, &c)| c.rem_euclid(cfg.n as i64) != 0)
        .map(|(i, _)| i)
        .collect()
}

/// Genus from global Riemann–Hurwitz: `2g − 2 = −2n + Σ_P (n − gcd(c_P, n))`.
pub fn rh_genus(cfg: &BranchConfiguration) -> u64 {
    let n = cfg.n as i64;
    let ramification: i64 = cfg.orders.iter().map(|c| n - c.unsigned_abs().gcd(&cfg.n) as i64).sum();
    let twice = ramification - 2 * n + 2;
    debug_assert!(twice >= 0 && twice % 2 == 0);
    (twice / 2) as u64
}
