//! Effective divisors on the complex line with Gaussian-rational points.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::scalar::GaussRat;

/// `sum_j n_j [lambda_j]` with all `n_j >= 1` and positive total degree.
/// Points are kept sorted, so iteration order is deterministic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Divisor {
    points: BTreeMap<GaussRat, u32>,
}

impl Divisor {
    /// Build from `(point, multiplicity)` pairs. Multiplicities accumulate;
    /// zero entries are dropped; an empty result is rejected.
    pub fn from_points<I: IntoIterator<Item = (GaussRat, u32)>>(iter: I) -> Result<Self, Error> {
        let mut points: BTreeMap<GaussRat, u32> = BTreeMap::new();
        for (lambda, n) in iter {
            if n == 0 {
                continue;
            }
            *points.entry(lambda).or_insert(0) += n;
        }
        if points.is_empty() {
            return Err(Error::EmptyDivisor);
        }
        Ok(Divisor { points })
    }

    /// The single-point divisor `n [lambda]`.
    pub fn single(lambda: GaussRat, n: u32) -> Result<Self, Error> {
        Self::from_points([(lambda, n)])
    }

    pub fn degree(&self) -> u32 {
        self.points.values().sum()
    }

    pub fn multiplicity(&self, lambda: &GaussRat) -> u32 {
        self.points.get(lambda).copied().unwrap_or(0)
    }

    pub fn contains(&self, lambda: &GaussRat) -> bool {
        self.points.contains_key(lambda)
    }

    pub fn support(&self) -> impl Iterator<Item = &GaussRat> {
        self.points.keys()
    }

    pub fn points(&self) -> impl Iterator<Item = (&GaussRat, u32)> {
        self.points.iter().map(|(l, n)| (l, *n))
    }

    /// Pointwise sum of two divisors.
    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut points = self.points.clone();
        for (lambda, n) in &other.points {
            *points.entry(lambda.clone()).or_insert(0) += n;
        }
        Divisor { points }
    }

    /// Pointwise comparison: every multiplicity of `self` fits inside `other`.
    pub fn leq(&self, other: &Divisor) -> bool {
        self.points.iter().all(|(l, n)| *n <= other.multiplicity(l))
    }

    /// The shifted divisor `D_a`: every point moves `lambda -> lambda - a`.
    pub fn shift(&self, a: &GaussRat) -> Divisor {
        Divisor {
            points: self.points.iter().map(|(l, n)| (l - a, *n)).collect(),
        }
    }

    /// Points scaled by a nonzero factor: `lambda -> mu * lambda`.
    pub fn rescale(&self, mu: &GaussRat) -> Result<Divisor, Error> {
        if mu.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(Divisor {
            points: self.points.iter().map(|(l, n)| (l * mu, *n)).collect(),
        })
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (lambda, n) in &self.points {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *n == 1 {
                write!(f, "[{}]", lambda)?;
            } else {
                write!(f, "{}[{}]", n, lambda)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
