//! Maxwell's multipole construction: `l` directions determine the degree-`l`
//! harmonic `r^(2l+1) grad_{v_l} ... grad_{v_1} (1/r)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Chart, Poly, Var};
use crate::scalars::Scalar;

/// A point of `RP^2`: a nonzero real vector up to scale and sign, stored by its
/// canonical representative (first nonzero coordinate equal to 1).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Direction {
    v: [Scalar; 3],
}

impl Direction {
    pub fn new(v: [Scalar; 3]) -> Result<Self> {
        if v.iter().any(|c| !c.is_real()) {
            return Err(Error::InvalidDirection("coordinates must be real".into()));
        }
        let lead = v
            .iter()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidDirection("zero vector".into()))?
            .inv()?;
        Ok(Direction {
            v: v.map(|c| &c * &lead),
        })
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new([
            Scalar::from_int(x),
            Scalar::from_int(y),
            Scalar::from_int(z),
        ])
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.v
    }

    /// The canonical representative scaled to clear all denominators.
    pub fn integral_vector(&self) -> [Scalar; 3] {
        let l = self
            .v
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denominator()));
        let s = Scalar::from_bigint(l);
        self.v.clone().map(|c| &c * &s)
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.v[0], self.v[1], self.v[2])
    }
}

/// A multiset of directions; `l` is its size.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultipoleSet {
    pub directions: Vec<Direction>,
}

impl MultipoleSet {
    pub fn new(directions: Vec<Direction>) -> Self {
        MultipoleSet { directions }
    }

    pub fn l(&self) -> usize {
        self.directions.len()
    }
}

/// Numerator recursion `Q_{m+1} = r^2 grad_v Q_m - (2m+1)(v . x) Q_m`, `Q_0 = 1`.
pub fn maxwell_from_vectors(vectors: &[[Scalar; 3]]) -> Poly {
    let chart = Chart::Real3;
    let vars = [Var::X, Var::Y, Var::Z].map(|v| Poly::var(chart, v).expect("REAL3 variable"));
    let r2 = vars
        .iter()
        .fold(Poly::zero(chart), |acc, x| &acc + &(x * x));
    let mut q = Poly::one(chart);
    for (m, v) in vectors.iter().enumerate() {
        let mut grad = Poly::zero(chart);
        let mut vdotx = Poly::zero(chart);
        for k in 0..3 {
            if v[k].is_zero() {
                continue;
            }
            grad = &grad + &q.differentiate_index(k).scale(&v[k]);
            vdotx = &vdotx + &vars[k].scale(&v[k]);
        }
        let odd = Scalar::from_int(2 * m as i64 + 1);
        q = &(&r2 * &grad) - &(&vdotx * &q).scale(&odd);
    }
    q
}

/// The degree-`l` harmonic of a multipole set, built from the integral
/// representatives of its directions (the overall constant is a projective
/// choice).
pub fn maxwell_mode(set: &MultipoleSet) -> Poly {
    let vectors: Vec<[Scalar; 3]> = set
        .directions
        .iter()
        .map(Direction::integral_vector)
        .collect();
    maxwell_from_vectors(&vectors)
}

/// Checks `maxwell(scaled) = (prod scales) * maxwell(raw)` exactly.
pub fn directions_scale_invariance_check(
    vectors: &[[Scalar; 3]],
    scales: &[Scalar],
) -> Result<bool> {
    if vectors.len() != scales.len() {
        return Err(Error::InvalidDirection(format!(
            "{} vectors but {} scale factors",
            vectors.len(),
            scales.len()
        )));
    }
    if scales.iter().any(Scalar::is_zero) {
        return Err(Error::DivisionByZero);
    }
    let scaled: Vec<[Scalar; 3]> = vectors
        .iter()
        .zip(scales)
        .map(|(v, s)| v.clone().map(|c| &c * s))
        .collect();
    let product = scales.iter().fold(Scalar::one(), |acc, s| &acc * s);
    Ok(maxwell_from_vectors(&scaled) == maxwell_from_vectors(vectors).scale(&product))
}

/// JSON form of a multipole set: a list of direction triples.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultipoleSetJson(pub Vec<[Scalar; 3]>);

impl From<&MultipoleSet> for MultipoleSetJson {
    fn from(s: &MultipoleSet) -> Self {
        MultipoleSetJson(s.directions.iter().map(|d| d.coords().clone()).collect())
    }
}

impl TryFrom<&MultipoleSetJson> for MultipoleSet {
    type Error = Error;
    fn try_from(j: &MultipoleSetJson) -> Result<Self> {
        Ok(MultipoleSet::new(
            j.0.iter()
                .cloned()
                .map(Direction::new)
                .collect::<Result<_>>()?,
        ))
    }
}
