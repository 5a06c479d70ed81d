//! Exact unnormalized harmonic bases on `R^3` and the lifted-and-twisted
//! lattice of `k`-modes on `S^3`.
//!
//! For `m >= 0` the degree-`l` basis polynomial is
//!
//! ```text
//! Y(l, m) = (x + i y)^m * sum_j (-1)^j (2l - 2j)! / (j! (l - j)! (l - m - 2j)!) z^(l-m-2j) r^(2j)
//! ```
//!
//! which is `2^l r^l P_l^m(cos theta) e^{i m phi}` up to the sign convention of
//! `P_l^m`. Negative orders are exact conjugates: `Y(l, -m) = conj(Y(l, m))`.
//! All coefficients lie in `Q(i)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::hopf::{lift, twist_lower, twist_raise};
use crate::poly::{Chart, Monomial, Poly, Var};
use crate::scalars::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicBasis2 {
    pub l: u32,
    /// Index `m + l` holds order `m`.
    pub polys: Vec<Poly>,
}

impl HarmonicBasis2 {
    pub fn get(&self, m: i32) -> Option<&Poly> {
        let idx = m + self.l as i32;
        if idx < 0 {
            return None;
        }
        self.polys.get(idx as usize)
    }

    pub fn orders(&self) -> impl Iterator<Item = i32> {
        let l = self.l as i32;
        -l..=l
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn real3_var(v: Var) -> Poly {
    Poly::var(Chart::Real3, v).expect("REAL3 variable")
}

/// Basis polynomial of order `m >= 0`.
fn solid_harmonic_nonneg(l: u32, m: u32) -> Poly {
    let (x, y, z) = (real3_var(Var::X), real3_var(Var::Y), real3_var(Var::Z));
    let r2 = &(&(&x * &x) + &(&y * &y)) + &(&z * &z);
    let xpiy = &x + &y.scale(&Scalar::i());
    let mut sum = Poly::zero(Chart::Real3);
    let mut j = 0;
    while 2 * j + m <= l {
        let num = factorial(2 * l - 2 * j);
        let den = factorial(j) * factorial(l - j) * factorial(l - m - 2 * j);
        let mut c = Scalar::from_rational(&Rational::new(num, den));
        if j % 2 == 1 {
            c = -c;
        }
        let zpow = Poly::monomial(Chart::Real3, Monomial([0, 0, (l - m - 2 * j) as u8, 0]), c);
        let term = &zpow * &r2.checked_pow(j).expect("small degree");
        sum = &sum + &term;
        j += 1;
    }
    &xpiy.checked_pow(m).expect("small degree") * &sum
}

/// The `2l + 1` exact harmonic polynomials of degree `l`, ordered `m = -l..=l`.
pub fn solid_harmonics(l: u32) -> HarmonicBasis2 {
    let nonneg: Vec<Poly> = (0..=l).map(|m| solid_harmonic_nonneg(l, m)).collect();
    let mut polys = Vec::with_capacity(2 * l as usize + 1);
    for m in (1..=l).rev() {
        polys.push(nonneg[m as usize].conjugate());
    }
    polys.extend(nonneg);
    HarmonicBasis2 { l, polys }
}

/// The `(k+1)^2` modes `Y(k, m, n)`: `n`-fold raise (or `|n|`-fold lower) of the
/// lift of `Y(k/2, m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedLattice {
    pub k: u32,
    pub modes: BTreeMap<(i32, i32), Poly>,
}

impl LiftedLattice {
    pub fn get(&self, m: i32, n: i32) -> Option<&Poly> {
        self.modes.get(&(m, n))
    }

    pub fn all(&self) -> Vec<Poly> {
        self.modes.values().cloned().collect()
    }
}

pub fn lifted_lattice(k: u32) -> Result<LiftedLattice> {
    if !k.is_multiple_of(2) {
        return Err(Error::OddK(k as u64));
    }
    let l = k / 2;
    let basis = solid_harmonics(l);
    let half = l as i32;
    let mut modes = BTreeMap::new();
    for m in basis.orders() {
        let vertical = lift(basis.get(m).expect("order in range"))?;
        let mut up = vertical.clone();
        let mut down = vertical.clone();
        modes.insert((m, 0), vertical);
        for n in 1..=half {
            up = twist_raise(&up)?;
            down = twist_lower(&down)?;
            modes.insert((m, n), up.clone());
            modes.insert((m, -n), down.clone());
        }
    }
    Ok(LiftedLattice { k, modes })
}

/// `c P + conj(c) conj(P)`, a real-valued (self-conjugate) combination.
pub fn real_combination(p: &Poly, c: &Scalar) -> Result<Poly> {
    if p.chart() != Chart::Cplx {
        return Err(Error::ChartMismatch(Chart::Cplx, p.chart()));
    }
    p.scale(c).checked_add(&p.conjugate().scale(&c.conj()))
}
