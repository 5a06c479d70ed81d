//! Sparse multivariate polynomials over [`Scalar`] in a fixed named chart.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    /// `{x, y, z}`
    Real3,
    /// `{x, y, z, w}`
    Real4,
    /// `{alpha, alpha_bar, beta, beta_bar}`
    Cplx,
}

impl Chart {
    pub fn nvars(self) -> usize {
        match self {
            Chart::Real3 => 3,
            Chart::Real4 | Chart::Cplx => 4,
        }
    }

    pub fn vars(self) -> &'static [Var] {
        match self {
            Chart::Real3 => &[Var::X, Var::Y, Var::Z],
            Chart::Real4 => &[Var::X, Var::Y, Var::Z, Var::W],
            Chart::Cplx => &[Var::Alpha, Var::AlphaBar, Var::Beta, Var::BetaBar],
        }
    }

    pub fn index_of(self, var: Var) -> Result<usize> {
        self.vars()
            .iter()
            .position(|&v| v == var)
            .ok_or(Error::UnknownVariable { var, chart: self })
    }

    pub fn is_real(self) -> bool {
        !matches!(self, Chart::Cplx)
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Chart::Real3 => "real3",
            Chart::Real4 => "real4",
            Chart::Cplx => "cplx",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
    W,
    Alpha,
    AlphaBar,
    Beta,
    BetaBar,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::W => "w",
            Var::Alpha => "a",
            Var::AlphaBar => "A",
            Var::Beta => "b",
            Var::BetaBar => "B",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector, indexed by the chart's variable order. Unused slots are 0.
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared left to right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u8; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, idx: usize) -> u8 {
        self.0[idx]
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = [0u8; 4];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.0[k]
                .checked_add(other.0[k])
                .ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial(out))
    }

    /// The CPLX twist `a - b + c - d` of `alpha^a alpha_bar^b beta^c beta_bar^d`.
    pub fn twist(&self) -> i32 {
        let [a, b, c, d] = self.0.map(i32::from);
        a - b + c - d
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial: chart plus a map from exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    chart: Chart,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(chart: Chart) -> Self {
        Poly {
            chart,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: Chart, c: Scalar) -> Self {
        Self::monomial(chart, Monomial::ONE, c)
    }

    pub fn one(chart: Chart) -> Self {
        Self::constant(chart, Scalar::one())
    }

    pub fn monomial(chart: Chart, mon: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero(chart);
        if !c.is_zero() {
            p.terms.insert(mon, c);
        }
        p
    }

    pub fn var(chart: Chart, var: Var) -> Result<Self> {
        let idx = chart.index_of(var)?;
        let mut e = [0u8; 4];
        e[idx] = 1;
        Ok(Self::monomial(chart, Monomial(e), Scalar::one()))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(chart: Chart, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Poly::zero(chart);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mon: &Monomial) -> Scalar {
        self.terms.get(mon).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial in grlex order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True for the zero polynomial and whenever all terms share one total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Adds `c * mon` in place.
    pub fn add_term(&mut self, mon: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mon) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&mon);
                }
            }
            None => {
                self.terms.insert(mon, c.clone());
            }
        }
    }

    fn check_chart(&self, other: &Poly) -> Result<()> {
        if self.chart == other.chart {
            Ok(())
        } else {
            Err(Error::ChartMismatch(self.chart, other.chart))
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_chart(other)?;
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_chart(other)?;
        let mut out = Poly::zero(self.chart);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.checked_mul(m2)?, &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.chart);
        }
        if c.is_one() {
            return self.clone();
        }
        Poly {
            chart: self.chart,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    fn neg_ref(&self) -> Poly {
        Poly {
            chart: self.chart,
            terms: self.terms.iter().map(|(m, v)| (*m, -v)).collect(),
        }
    }

    pub fn checked_pow(&self, n: u32) -> Result<Poly> {
        let mut acc = Poly::one(self.chart);
        for _ in 0..n {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Formal partial derivative, treating every chart variable as independent
    /// (so `alpha` and `alpha_bar` are differentiated separately).
    pub fn differentiate(&self, var: Var) -> Result<Poly> {
        let idx = self.chart.index_of(var)?;
        Ok(self.differentiate_index(idx))
    }

    pub(crate) fn differentiate_index(&self, idx: usize) -> Poly {
        let mut out = Poly::zero(self.chart);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[idx] -= 1;
            out.terms.insert(dm, c.scale_int(e as i64));
        }
        out
    }

    /// Multiplies by the chart variable with the given index.
    pub(crate) fn mul_var_index(&self, idx: usize) -> Result<Poly> {
        let mut out = Poly::zero(self.chart);
        for (m, c) in &self.terms {
            let mut nm = *m;
            nm.0[idx] = nm.0[idx].checked_add(1).ok_or(Error::ExponentOverflow)?;
            out.terms.insert(nm, c.clone());
        }
        Ok(out)
    }

    /// Complex conjugate. In CPLX also swaps `alpha <-> alpha_bar` and
    /// `beta <-> beta_bar`; in real charts only coefficients are conjugated.
    pub fn conjugate(&self) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let m = match self.chart {
                    Chart::Cplx => {
                        let [a, b, cc, d] = m.0;
                        Monomial([b, a, d, cc])
                    }
                    _ => *m,
                };
                (m, c.conj())
            })
            .collect();
        Poly {
            chart: self.chart,
            terms,
        }
    }

    /// Composition `P(images[0], images[1], ...)`.
    ///
    /// All images must share one target chart; evaluation is nested Horner,
    /// one variable at a time.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        let n = self.chart.nvars();
        if images.len() != n {
            return Err(Error::ImageCount {
                expected: n,
                got: images.len(),
            });
        }
        let target = images[0].chart;
        for img in images {
            if img.chart != target {
                return Err(Error::ChartMismatch(target, img.chart));
            }
        }
        let terms: Vec<(Monomial, Scalar)> =
            self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        horner(&terms, images, 0, target)
    }

    /// Flat Laplacian of the chart's ambient space. CPLX uses
    /// `4 (d_alpha d_alpha_bar + d_beta d_beta_bar)`.
    pub fn laplacian(&self) -> Poly {
        let mut out = Poly::zero(self.chart);
        match self.chart {
            Chart::Real3 | Chart::Real4 => {
                for idx in 0..self.chart.nvars() {
                    let d2 = self.differentiate_index(idx).differentiate_index(idx);
                    out = &out + &d2;
                }
            }
            Chart::Cplx => {
                let a = self.differentiate_index(0).differentiate_index(1);
                let b = self.differentiate_index(2).differentiate_index(3);
                out = (&a + &b).scale(&Scalar::from_int(4));
            }
        }
        out
    }

    pub fn is_harmonic(&self) -> bool {
        self.laplacian().is_zero()
    }

    /// Numerical value at a point given in chart-variable order. In CPLX the
    /// caller supplies `[alpha, conj(alpha), beta, conj(beta)]`.
    pub fn evaluate(&self, point: &[Complex64]) -> Result<Complex64> {
        self.to_float().evaluate(point)
    }

    /// The floating shadow, for evaluating at many points.
    pub fn to_float(&self) -> FloatPoly {
        FloatPoly {
            nvars: self.chart.nvars(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.to_complex()))
                .collect(),
        }
    }

    /// True when `self = c * other` for a single nonzero scalar `c`.
    pub fn proportional_to(&self, other: &Poly) -> bool {
        self.proportionality(other).is_some()
    }

    /// The scalar `c` with `self = c * other`, if one exists and is nonzero.
    pub fn proportionality(&self, other: &Poly) -> Option<Scalar> {
        if self.chart != other.chart || self.terms.len() != other.terms.len() {
            return None;
        }
        let (m, c_self) = self.terms.iter().next()?;
        let c_other = other.terms.get(m)?;
        let ratio = c_self.checked_div(c_other).ok()?;
        (other.scale(&ratio) == *self).then_some(ratio)
    }

    /// Divides by the gcd of all integral coordinates when every coefficient is
    /// integral, returning a smaller representative of the same projective class.
    pub fn primitive_part(&self) -> Poly {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::{One, Zero};
        if self.terms.values().any(|c| !c.is_integral()) {
            return self.clone();
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            for r in c.components() {
                g = g.gcd(r.numer());
                if g.is_one() {
                    return self.clone();
                }
            }
        }
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        let inv = Scalar::from_rational(&crate::scalars::Rational::new(BigInt::one(), g));
        self.scale(&inv)
    }

    /// Clears denominators so that every coefficient is integral.
    pub fn integral_multiple(&self) -> Poly {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::One;
        let l = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denominator()));
        if l.is_one() {
            self.clone()
        } else {
            self.scale(&Scalar::from_bigint(l))
        }
    }
}

fn horner(
    terms: &[(Monomial, Scalar)],
    images: &[Poly],
    var: usize,
    target: Chart,
) -> Result<Poly> {
    if terms.is_empty() {
        return Ok(Poly::zero(target));
    }
    if var == images.len() {
        let mut c = Scalar::zero();
        for (_, v) in terms {
            c += v;
        }
        return Ok(Poly::constant(target, c));
    }
    let mut groups: BTreeMap<u8, Vec<(Monomial, Scalar)>> = BTreeMap::new();
    for (m, c) in terms {
        groups.entry(m.0[var]).or_default().push((*m, c.clone()));
    }
    let img = &images[var];
    let mut acc: Option<(u8, Poly)> = None;
    for (&e, group) in groups.iter().rev() {
        let inner = horner(group, images, var + 1, target)?;
        acc = Some(match acc {
            None => (e, inner),
            Some((prev, p)) => {
                let lifted = mul_by_power(&p, img, prev - e)?;
                (e, lifted.checked_add(&inner)?)
            }
        });
    }
    let (e, p) = acc.expect("nonempty groups");
    mul_by_power(&p, img, e)
}

fn mul_by_power(p: &Poly, img: &Poly, e: u8) -> Result<Poly> {
    let mut out = p.clone();
    for _ in 0..e {
        out = out.checked_mul(img)?;
    }
    Ok(out)
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.chart.vars();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (k, v) in vars.iter().enumerate() {
                match m.0[k] {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    e => write!(f, "*{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// A polynomial with `f64` complex coefficients.
#[derive(Debug, Clone)]
pub struct FloatPoly {
    nvars: usize,
    terms: Vec<(Monomial, Complex64)>,
}

impl FloatPoly {
    pub fn evaluate(&self, point: &[Complex64]) -> Result<Complex64> {
        let n = self.nvars;
        if point.len() != n {
            return Err(Error::ImageCount {
                expected: n,
                got: point.len(),
            });
        }
        let powers: Vec<Vec<Complex64>> = (0..n)
            .map(|k| {
                let maxdeg = self
                    .terms
                    .iter()
                    .map(|(m, _)| m.0[k] as usize)
                    .max()
                    .unwrap_or(0);
                let mut p = Vec::with_capacity(maxdeg + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..=maxdeg {
                    p.push(acc);
                    acc *= point[k];
                }
                p
            })
            .collect();
        let mut sum = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = *c;
            for (k, pk) in powers.iter().enumerate() {
                v *= pk[m.0[k] as usize];
            }
            sum += v;
        }
        Ok(sum)
    }

    /// `sum |c_m| |x^m|`, the scale of rounding error in [`FloatPoly::evaluate`].
    pub fn magnitude(&self, point: &[Complex64]) -> Result<f64> {
        let abs: Vec<Complex64> = point
            .iter()
            .map(|z| Complex64::new(z.norm(), 0.0))
            .collect();
        let shadow = FloatPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, Complex64::new(c.norm(), 0.0)))
                .collect(),
        };
        Ok(shadow.evaluate(&abs)?.re)
    }
}

// Operator forms panic on chart mismatch or exponent overflow; the `checked_*`
// methods report those as errors.
impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

/// Polynomial arithmetic selector.
#[derive(Debug, Clone)]
pub enum PolyOp {
    Add(Poly),
    Sub(Poly),
    Mul(Poly),
    Scale(Scalar),
}

pub fn poly_arith(p: &Poly, op: &PolyOp) -> Result<Poly> {
    match op {
        PolyOp::Add(q) => p.checked_add(q),
        PolyOp::Sub(q) => p.checked_sub(q),
        PolyOp::Mul(q) => p.checked_mul(q),
        PolyOp::Scale(c) => Ok(p.scale(c)),
    }
}

/// All monomials of total degree `d` in the chart, ascending grlex.
pub fn monomials_of_degree(chart: Chart, d: u32) -> Vec<Monomial> {
    let n = chart.nvars();
    let mut out = Vec::new();
    let mut cur = [0u8; 4];
    fn rec(k: usize, n: usize, left: u32, cur: &mut [u8; 4], out: &mut Vec<Monomial>) {
        if k == n - 1 {
            cur[k] = left as u8;
            out.push(Monomial(*cur));
            return;
        }
        for e in 0..=left {
            cur[k] = e as u8;
            rec(k + 1, n, left - e, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, n, d, &mut cur, &mut out);
    out.sort();
    out
}
