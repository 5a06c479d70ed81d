//! The Hopf map `S^3 -> S^2`, pullback of functions along it, the
//! twist-measuring operator `Z`, and the two twist operators.
//!
//! Operator names follow the verified commutators: with
//! `Z = (a d_a - A d_A + b d_b - B d_B) / 2`,
//! `-beta d_{alpha_bar} + alpha d_{beta_bar}` satisfies `[Z, T] = +T` and is
//! exposed as [`twist_raise`], while `-beta_bar d_alpha + alpha_bar d_beta`
//! satisfies `[Z, T] = -T` and is exposed as [`twist_lower`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{Chart, Monomial, Poly};
use crate::scalars::{Rational, Scalar};

const A: usize = 0;
const AB: usize = 1;
const B: usize = 2;
const BB: usize = 3;

/// The three components of the Hopf map as CPLX polynomials:
/// `(a B + A b, -i (a B - A b), b B - a A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfImages {
    pub x_image: Poly,
    pub y_image: Poly,
    pub z_image: Poly,
}

impl HopfImages {
    pub fn new() -> Self {
        let c = Chart::Cplx;
        let mono = |e: [u8; 4], s: Scalar| (Monomial(e), s);
        let one = Scalar::one;
        let i = Scalar::i();
        let x_image = Poly::from_terms(c, [mono([1, 0, 0, 1], one()), mono([0, 1, 1, 0], one())]);
        let y_image = Poly::from_terms(c, [mono([1, 0, 0, 1], -&i), mono([0, 1, 1, 0], i)]);
        let z_image = Poly::from_terms(
            c,
            [
                mono([0, 0, 1, 1], one()),
                mono([1, 1, 0, 0], -Scalar::one()),
            ],
        );
        HopfImages {
            x_image,
            y_image,
            z_image,
        }
    }

    pub fn as_array(&self) -> [Poly; 3] {
        [
            self.x_image.clone(),
            self.y_image.clone(),
            self.z_image.clone(),
        ]
    }
}

impl Default for HopfImages {
    fn default() -> Self {
        Self::new()
    }
}

/// `|alpha|^2 + |beta|^2` must be 1 within this tolerance.
pub const NORMALIZATION_TOL: f64 = 1e-12;

pub(crate) fn check_normalized(alpha: Complex64, beta: Complex64) -> Result<()> {
    let n = alpha.norm_sqr() + beta.norm_sqr();
    if (n - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized(n));
    }
    Ok(())
}

/// Numerical Hopf map.
pub fn hopf_point(alpha: Complex64, beta: Complex64) -> Result<[f64; 3]> {
    check_normalized(alpha, beta)?;
    let ab = alpha * beta.conj();
    Ok([2.0 * ab.re, 2.0 * ab.im, beta.norm_sqr() - alpha.norm_sqr()])
}

/// Pullback of a homogeneous REAL3 polynomial along the Hopf map.
///
/// The result is homogeneous of twice the degree and vertical.
pub fn lift(f: &Poly) -> Result<Poly> {
    if f.chart() != Chart::Real3 {
        return Err(Error::ChartMismatch(Chart::Real3, f.chart()));
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    f.substitute(&HopfImages::new().as_array())
}

fn require_cplx(p: &Poly) -> Result<()> {
    if p.chart() == Chart::Cplx {
        Ok(())
    } else {
        Err(Error::ChartMismatch(Chart::Cplx, p.chart()))
    }
}

/// `Z = (a d_a - A d_A + b d_b - B d_B) / 2`. Each monomial is scaled by half
/// its twist.
pub fn z_operator(p: &Poly) -> Result<Poly> {
    require_cplx(p)?;
    Ok(Poly::from_terms(
        Chart::Cplx,
        p.terms().map(|(m, c)| {
            let half = Scalar::from_rational(&Rational::new(m.twist().into(), 2.into()));
            (*m, c * &half)
        }),
    ))
}

/// Common twist `a - b + c - d` of all terms, if it is well defined.
pub fn twist_of(p: &Poly) -> Option<i32> {
    if p.chart() != Chart::Cplx {
        return None;
    }
    let mut ts = p.terms().map(|(m, _)| m.twist());
    let first = ts.next()?;
    ts.all(|t| t == first).then_some(first)
}

/// Integer `Z`-eigenvalue (half the twist) when the twist is well defined and
/// even. The zero polynomial has no eigenvalue.
pub fn z_eigenvalue(p: &Poly) -> Option<i32> {
    twist_of(p).filter(|t| t % 2 == 0).map(|t| t / 2)
}

/// True iff `Z p = 0`.
pub fn is_vertical(p: &Poly) -> bool {
    p.chart() == Chart::Cplx && p.terms().all(|(m, _)| m.twist() == 0)
}

/// `-beta d_{alpha_bar} + alpha d_{beta_bar}`: shifts `Z`-eigenvalues by +1.
pub fn twist_raise(p: &Poly) -> Result<Poly> {
    require_cplx(p)?;
    let t1 = p.differentiate_index(AB).mul_var_index(B)?;
    let t2 = p.differentiate_index(BB).mul_var_index(A)?;
    t2.checked_sub(&t1)
}

/// `-beta_bar d_alpha + alpha_bar d_beta`: shifts `Z`-eigenvalues by -1.
pub fn twist_lower(p: &Poly) -> Result<Poly> {
    require_cplx(p)?;
    let t1 = p.differentiate_index(A).mul_var_index(BB)?;
    let t2 = p.differentiate_index(B).mul_var_index(AB)?;
    t2.checked_sub(&t1)
}

/// Applies [`twist_raise`] (`n > 0`) or [`twist_lower`] (`n < 0`) `|n|` times.
pub fn twist_n(p: &Poly, n: i32) -> Result<Poly> {
    let mut out = p.clone();
    for _ in 0..n.unsigned_abs() {
        out = if n > 0 {
            twist_raise(&out)?
        } else {
            twist_lower(&out)?
        };
    }
    Ok(out)
}

/// The variable conventions used here, for callers building CPLX points.
pub fn cplx_point(alpha: Complex64, beta: Complex64) -> [Complex64; 4] {
    [alpha, alpha.conj(), beta, beta.conj()]
}
