//! The `*235` orbifold `S^2 / I_h`: fractional-point accounting, the degree and
//! dimension formulas, lifting configurations to direction multisets, and a
//! deterministic enumeration of basis configurations.
//!
//! The fundamental triangle has corners `e2 = (0, 0, 1)` (edge midpoint, order
//! 2), `f3 = (1, 0, phi^2)` (face center, order 3) and `v5 = (0, 1, phi)`
//! (vertex, order 5). Points are written in these corner coordinates, so every
//! orbit stays in `Q(sqrt5)^3`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::icosa::{groups, orbit};
use crate::linalg::exact_rank;
use crate::maxwell::{maxwell_mode, Direction, MultipoleSet};
use crate::poly::Poly;
use crate::scalars::{parse_rational, Rational, Scalar};

pub const MAX_C10: u32 = 4;
pub const MAX_C6: u32 = 2;
pub const MAX_C4: u32 = 1;

pub fn corner_e2() -> [Scalar; 3] {
    [Scalar::zero(), Scalar::zero(), Scalar::one()]
}

pub fn corner_f3() -> [Scalar; 3] {
    let phi = Scalar::phi();
    [Scalar::one(), Scalar::zero(), &phi * &phi]
}

pub fn corner_v5() -> [Scalar; 3] {
    [Scalar::zero(), Scalar::one(), Scalar::phi()]
}

/// A mirror arc of the fundamental triangle, named by the orders of its ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Arc {
    #[serde(rename = "25")]
    E2V5,
    #[serde(rename = "23")]
    E2F3,
    #[serde(rename = "35")]
    F3V5,
}

impl Arc {
    pub fn ends(self) -> ([Scalar; 3], [Scalar; 3]) {
        match self {
            Arc::E2V5 => (corner_e2(), corner_v5()),
            Arc::E2F3 => (corner_e2(), corner_f3()),
            Arc::F3V5 => (corner_f3(), corner_v5()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Arc::E2V5 => "25",
            Arc::E2F3 => "23",
            Arc::F3V5 => "35",
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Arc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "25" => Ok(Arc::E2V5),
            "23" => Ok(Arc::E2F3),
            "35" => Ok(Arc::F3V5),
            _ => Err(Error::Format(format!("unknown arc {s:?}"))),
        }
    }
}

/// A point on a mirror arc: `(1 - t) * first + t * second`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfPoint {
    pub arc: Arc,
    pub t: Rational,
}

impl HalfPoint {
    pub fn new(arc: Arc, t: Rational) -> Self {
        HalfPoint { arc, t }
    }

    pub fn vector(&self) -> [Scalar; 3] {
        let (a, b) = self.arc.ends();
        let t = Scalar::from_rational(&self.t);
        let s = &Scalar::one() - &t;
        [0, 1, 2].map(|i| &(&a[i] * &s) + &(&b[i] * &t))
    }
}

/// An interior point with barycentric weights over `(e2, f3, v5)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WholePoint {
    pub bary: [Rational; 3],
}

impl WholePoint {
    pub fn new(bary: [Rational; 3]) -> Self {
        WholePoint { bary }
    }

    pub fn vector(&self) -> [Scalar; 3] {
        let corners = [corner_e2(), corner_f3(), corner_v5()];
        let w = self.bary.clone().map(|r| Scalar::from_rational(&r));
        [0, 1, 2].map(|i| (0..3).fold(Scalar::zero(), |acc, c| &acc + &(&corners[c][i] * &w[c])))
    }
}

/// How to treat corner counts above their caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CanonicalPolicy {
    #[default]
    Reject,
    /// Keep the excess as extra multiplicity of the corner orbit (a half point
    /// that has slid into the corner).
    Keep,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrbifoldConfig {
    pub c10: u32,
    pub c6: u32,
    pub c4: u32,
    pub half_points: Vec<HalfPoint>,
    pub whole_points: Vec<WholePoint>,
}

impl OrbifoldConfig {
    pub fn corners(c10: u32, c6: u32, c4: u32) -> Self {
        OrbifoldConfig {
            c10,
            c6,
            c4,
            ..Default::default()
        }
    }

    pub fn degree(&self) -> u64 {
        6 * self.c10 as u64
            + 10 * self.c6 as u64
            + 15 * self.c4 as u64
            + 30 * self.half_points.len() as u64
            + 60 * self.whole_points.len() as u64
    }

    pub fn is_canonical(&self) -> bool {
        self.c10 <= MAX_C10 && self.c6 <= MAX_C6 && self.c4 <= MAX_C4
    }
}

/// `dim V^l = max(0, 1 + floor(l/2) + floor(l/3) + floor(l/5) - l)`.
pub fn dim_v(l: u64) -> u64 {
    let d = 1 + (l / 2 + l / 3 + l / 5) as i128 - l as i128;
    d.max(0) as u64
}

/// Corner counts forced by `l` and the remaining budget `B = C_half + 2 C_whole`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForcedCounts {
    pub c10: u32,
    pub c6: u32,
    pub c4: u32,
    pub budget: u64,
}

pub fn forced_corner_counts(l: u64) -> Result<ForcedCounts> {
    let b = (l / 2 + l / 3 + l / 5) as i128 - l as i128;
    if b < 0 {
        return Err(Error::InfeasibleDegree(l));
    }
    Ok(ForcedCounts {
        c10: (l % 5) as u32,
        c6: (l % 3) as u32,
        c4: (l % 2) as u32,
        budget: b as u64,
    })
}

fn check_orbit(d: &Direction, expected: usize, what: &str) -> Result<Vec<Direction>> {
    let o = orbit(d, &groups().rotations);
    if o.len() != expected {
        return Err(Error::DegenerateLocation(format!(
            "{what} at {d:?} has an orbit of {} directions, expected {expected}",
            o.len()
        )));
    }
    Ok(o)
}

/// The multiset of `degree(config)` directions represented by a configuration.
pub fn lift_config(config: &OrbifoldConfig, policy: CanonicalPolicy) -> Result<MultipoleSet> {
    if policy == CanonicalPolicy::Reject && !config.is_canonical() {
        return Err(Error::InvalidConfig(format!(
            "corner counts ({}, {}, {}) exceed the caps ({MAX_C10}, {MAX_C6}, {MAX_C4})",
            config.c10, config.c6, config.c4
        )));
    }
    let mut dirs = Vec::with_capacity(config.degree() as usize);
    let corners = [
        (corner_v5(), config.c10, 6),
        (corner_f3(), config.c6, 10),
        (corner_e2(), config.c4, 15),
    ];
    for (v, count, size) in corners {
        if count == 0 {
            continue;
        }
        let o = check_orbit(&Direction::new(v)?, size, "corner")?;
        for _ in 0..count {
            dirs.extend(o.iter().cloned());
        }
    }
    for h in &config.half_points {
        if !(h.t.is_positive() && h.t < Rational::one()) {
            return Err(Error::DegenerateLocation(format!(
                "half point parameter {} on arc {} is not strictly inside (0, 1)",
                h.t, h.arc
            )));
        }
        dirs.extend(check_orbit(&Direction::new(h.vector())?, 30, "half point")?);
    }
    for w in &config.whole_points {
        if w.bary.iter().any(|r| !r.is_positive()) {
            return Err(Error::DegenerateLocation(
                "whole point weights must all be positive".into(),
            ));
        }
        dirs.extend(check_orbit(
            &Direction::new(w.vector())?,
            60,
            "whole point",
        )?);
    }
    Ok(MultipoleSet::new(dirs))
}

/// The Maxwell harmonic of a configuration, reduced to a primitive integral
/// representative.
pub fn config_mode(config: &OrbifoldConfig, policy: CanonicalPolicy) -> Result<Poly> {
    Ok(maxwell_mode(&lift_config(config, policy)?).primitive_part())
}

/// `n / (2n + 1)` for `n >= 1`: 1/3, 2/5, 3/7, ...
pub fn arc_parameter(n: u64) -> Rational {
    Rational::new((n as i64).into(), (2 * n as i64 + 1).into())
}

/// Candidate basis configurations for degree `l`, with parameters taken from
/// the sequence starting at position `offset`.
pub fn candidate_configs(l: u64, offset: u64) -> Result<Vec<OrbifoldConfig>> {
    let f = forced_corner_counts(l)?;
    let base = OrbifoldConfig::corners(f.c10, f.c6, f.c4);
    let b = f.budget;
    let half_at = |n: u64| HalfPoint::new(Arc::E2V5, arc_parameter(n + 1 + offset));
    let mut out = Vec::new();
    match b {
        0 => out.push(base),
        1 => {
            for j in 0..2 {
                let mut c = base.clone();
                c.half_points.push(half_at(j));
                out.push(c);
            }
        }
        _ => {
            for j in 0..b {
                let mut c = base.clone();
                c.half_points = (0..b).map(|i| half_at(j * b + i)).collect();
                out.push(c);
            }
            let mut c = base;
            c.whole_points.push(WholePoint::new([
                Rational::one(),
                Rational::from_integer((2 + offset as i64).into()),
                Rational::from_integer(3.into()),
            ]));
            c.half_points = (0..b - 2).map(|i| half_at(b * b + i)).collect();
            out.push(c);
        }
    }
    Ok(out)
}

/// How many parameter shifts to try before giving up.
const MAX_SHIFTS: u64 = 8;

/// `dim_v(l)` configurations of degree `l` whose Maxwell modes are linearly
/// independent, together with those modes.
pub fn enumerate_basis_configs(l: u64) -> Result<Vec<(OrbifoldConfig, Poly)>> {
    let dim = dim_v(l) as usize;
    for offset in 0..MAX_SHIFTS {
        let configs = candidate_configs(l, offset)?;
        let modes = configs
            .iter()
            .map(|c| config_mode(c, CanonicalPolicy::Reject))
            .collect::<Result<Vec<_>>>()?;
        if exact_rank(&modes)?.rank == dim {
            return Ok(configs.into_iter().zip(modes).collect());
        }
    }
    Err(Error::Internal(format!(
        "no independent configuration family found for l = {l}"
    )))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HalfPointJson {
    pub arc: Arc,
    pub t: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WholePointJson {
    pub bary: [String; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigJson {
    pub l: u64,
    pub c10: u32,
    pub c6: u32,
    pub c4: u32,
    #[serde(default)]
    pub half_points: Vec<HalfPointJson>,
    #[serde(default)]
    pub whole_points: Vec<WholePointJson>,
}

fn rat_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl From<&OrbifoldConfig> for ConfigJson {
    fn from(c: &OrbifoldConfig) -> Self {
        ConfigJson {
            l: c.degree(),
            c10: c.c10,
            c6: c.c6,
            c4: c.c4,
            half_points: c
                .half_points
                .iter()
                .map(|h| HalfPointJson {
                    arc: h.arc,
                    t: rat_string(&h.t),
                })
                .collect(),
            whole_points: c
                .whole_points
                .iter()
                .map(|w| WholePointJson {
                    bary: w.bary.clone().map(|r| rat_string(&r)),
                })
                .collect(),
        }
    }
}

impl TryFrom<&ConfigJson> for OrbifoldConfig {
    type Error = Error;
    fn try_from(j: &ConfigJson) -> Result<Self> {
        let mut whole_points = Vec::new();
        for w in &j.whole_points {
            let [a, b, c] = &w.bary;
            whole_points.push(WholePoint::new([
                parse_rational(a)?,
                parse_rational(b)?,
                parse_rational(c)?,
            ]));
        }
        let config = OrbifoldConfig {
            c10: j.c10,
            c6: j.c6,
            c4: j.c4,
            half_points: j
                .half_points
                .iter()
                .map(|h| Ok(HalfPoint::new(h.arc, parse_rational(&h.t)?)))
                .collect::<Result<_>>()?,
            whole_points,
        };
        if config.degree() != j.l {
            return Err(Error::Format(format!(
                "config declares l = {} but its points give degree {}",
                j.l,
                config.degree()
            )));
        }
        Ok(config)
    }
}
