//! Exact arithmetic in the number field `Q(sqrt5, i)`.
//!
//! A [`Scalar`] is `(a + b*sqrt5) + i*(c + d*sqrt5)` with rational `a, b, c, d`.
//! Internally the four components share one positive denominator, reduced
//! so that `gcd(a', b', c', d', den) = 1`. Integral scalars (`den == 1`)
//! never pay for a gcd, which is what keeps large exact substitutions cheap.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

const RE_RAT: usize = 0;
const RE_S5: usize = 1;
const IM_RAT: usize = 2;
const IM_S5: usize = 3;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: [BigInt; 4],
    den: BigInt,
}

/// `(p0 + p1 sqrt5) * (q0 + q1 sqrt5)`, skipping zero factors.
fn quad_mul(p0: &BigInt, p1: &BigInt, q0: &BigInt, q1: &BigInt) -> (BigInt, BigInt) {
    let mut r0 = BigInt::zero();
    let mut r1 = BigInt::zero();
    if !p0.is_zero() {
        if !q0.is_zero() {
            r0 += p0 * q0;
        }
        if !q1.is_zero() {
            r1 += p0 * q1;
        }
    }
    if !p1.is_zero() {
        if !q1.is_zero() {
            r0 += p1 * q1 * 5;
        }
        if !q0.is_zero() {
            r1 += p1 * q0;
        }
    }
    (r0, r1)
}

impl Scalar {
    fn from_parts(num: [BigInt; 4], den: BigInt) -> Self {
        let mut s = Scalar { num, den };
        s.reduce();
        s
    }

    fn reduce(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for n in &mut self.num {
                *n = -std::mem::take(n);
            }
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                break;
            }
            if !n.is_zero() {
                g = g.gcd(n);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for n in &mut self.num {
                *n /= &g;
            }
        }
    }

    pub fn zero() -> Self {
        Scalar {
            num: Default::default(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        let mut s = Self::zero();
        s.num[RE_RAT] = BigInt::from(n);
        s
    }

    pub fn from_bigint(n: BigInt) -> Self {
        let mut s = Self::zero();
        s.num[RE_RAT] = n;
        s
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::new(
            r.clone(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        )
    }

    /// `p/q` as a scalar. Panics if `q == 0`.
    pub fn frac(p: i64, q: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `(re_rat + re_s5 sqrt5) + i (im_rat + im_s5 sqrt5)`.
    pub fn new(re_rat: Rational, re_s5: Rational, im_rat: Rational, im_s5: Rational) -> Self {
        let parts = [re_rat, re_s5, im_rat, im_s5];
        let den = parts
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let num = parts.map(|r| r.numer() * (&den / r.denom()));
        Self::from_parts(num, den)
    }

    /// Real element `a + b sqrt5` of `Q(sqrt5)`.
    pub fn real_quadratic(a: Rational, b: Rational) -> Self {
        Self::new(a, b, Rational::zero(), Rational::zero())
    }

    pub fn sqrt5() -> Self {
        let mut s = Self::zero();
        s.num[RE_S5] = BigInt::one();
        s
    }

    pub fn i() -> Self {
        let mut s = Self::zero();
        s.num[IM_RAT] = BigInt::one();
        s
    }

    /// The golden ratio `(1 + sqrt5) / 2`.
    pub fn phi() -> Self {
        Scalar::from_parts(
            [BigInt::one(), BigInt::one(), BigInt::zero(), BigInt::zero()],
            BigInt::from(2),
        )
    }

    fn component(&self, idx: usize) -> Rational {
        Rational::new(self.num[idx].clone(), self.den.clone())
    }

    pub fn re_rat(&self) -> Rational {
        self.component(RE_RAT)
    }

    pub fn re_s5(&self) -> Rational {
        self.component(RE_S5)
    }

    pub fn im_rat(&self) -> Rational {
        self.component(IM_RAT)
    }

    pub fn im_s5(&self) -> Rational {
        self.component(IM_S5)
    }

    pub fn components(&self) -> [Rational; 4] {
        [self.re_rat(), self.re_s5(), self.im_rat(), self.im_s5()]
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[RE_RAT].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.num[IM_RAT].is_zero() && self.num[IM_S5].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.is_real() && self.num[RE_S5].is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Complex conjugation (fixes `sqrt5`).
    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.num;
        Scalar {
            num: [a.clone(), b.clone(), -c, -d],
            den: self.den.clone(),
        }
    }

    pub fn real_part(&self) -> Self {
        let [a, b, _, _] = &self.num;
        Scalar::from_parts(
            [a.clone(), b.clone(), BigInt::zero(), BigInt::zero()],
            self.den.clone(),
        )
    }

    pub fn imag_part(&self) -> Self {
        let [_, _, c, d] = &self.num;
        Scalar::from_parts(
            [c.clone(), d.clone(), BigInt::zero(), BigInt::zero()],
            self.den.clone(),
        )
    }

    pub fn scale_int(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let num = self.num.clone().map(|n| n * k);
        Scalar::from_parts(num, self.den.clone())
    }

    /// Multiplicative inverse; `DivisionByZero` for zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/(P + iQ) = (P - iQ) / N with N = P^2 + Q^2 in Q(sqrt5), N != 0
        // because Q(sqrt5) embeds in the reals. Then 1/N = N' / (n0^2 - 5 n1^2)
        // with N' the Galois conjugate of N.
        let [a, b, c, d] = &self.num;
        let (pp0, pp1) = quad_mul(a, b, a, b);
        let (qq0, qq1) = quad_mul(c, d, c, d);
        let n0 = pp0 + qq0;
        let n1 = pp1 + qq1;
        let norm = &n0 * &n0 - &n1 * &n1 * 5;
        let m1 = -&n1;
        // (P - iQ) * N'
        let (r0, r1) = quad_mul(a, b, &n0, &m1);
        let (i0, i1) = quad_mul(c, d, &n0, &m1);
        // value = den * (P - iQ) N' / norm, since self = (P + iQ)/den.
        let num = [
            r0 * &self.den,
            r1 * &self.den,
            -i0 * &self.den,
            -i1 * &self.den,
        ];
        Ok(Scalar::from_parts(num, norm))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Floating-point shadow of the exact value.
    pub fn to_complex(&self) -> Complex64 {
        let s5 = 5f64.sqrt();
        let f = |idx: usize| -> f64 {
            if self.num[idx].is_zero() {
                0.0
            } else {
                self.component(idx).to_f64().unwrap_or(f64::NAN)
            }
        };
        Complex64::new(f(RE_RAT) + f(RE_S5) * s5, f(IM_RAT) + f(IM_S5) * s5)
    }

    /// Sign of a real scalar: -1, 0 or +1. Panics on non-real input.
    ///
    /// `a + b sqrt5 > 0` is decided exactly by comparing `a^2` with `5 b^2`.
    pub fn real_signum(&self) -> i32 {
        assert!(self.is_real(), "real_signum on a non-real scalar");
        let a = &self.num[RE_RAT];
        let b = &self.num[RE_S5];
        let sa = a.signum().to_i32().unwrap_or(0);
        let sb = b.signum().to_i32().unwrap_or(0);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        let aa = a * a;
        let bb = b * b * 5;
        if aa > bb {
            sa
        } else {
            sb
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let labels = ["", "*sqrt5", "*i", "*sqrt5*i"];
        let mut first = true;
        for (idx, label) in labels.iter().enumerate() {
            if self.num[idx].is_zero() {
                continue;
            }
            let r = self.component(idx);
            if !first && !r.is_negative() {
                write!(f, "+")?;
            }
            write!(f, "{r}{label}")?;
            first = false;
        }
        Ok(())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let num = std::array::from_fn(|k| &self.num[k] + &rhs.num[k]);
            return Scalar::from_parts(num, self.den.clone());
        }
        let num = std::array::from_fn(|k| &self.num[k] * &rhs.den + &rhs.num[k] * &self.den);
        Scalar::from_parts(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let [a, b, c, d] = &self.num;
        let [e, f, g, h] = &rhs.num;
        let (pr0, pr1) = quad_mul(a, b, e, f);
        let (qs0, qs1) = quad_mul(c, d, g, h);
        let (ps0, ps1) = quad_mul(a, b, g, h);
        let (qr0, qr1) = quad_mul(c, d, e, f);
        let num = [pr0 - qs0, pr1 - qs1, ps0 + qr0, ps1 + qr1];
        let den = if self.den.is_one() {
            rhs.den.clone()
        } else if rhs.den.is_one() {
            self.den.clone()
        } else {
            &self.den * &rhs.den
        };
        Scalar::from_parts(num, den)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: std::array::from_fn(|k| -&self.num[k]),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

/// Binary arithmetic selector mirroring the four field operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

/// JSON form: four `"num/den"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub re_rat: String,
    pub re_s5: String,
    pub im_rat: String,
    pub im_s5: String,
}

fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::Format(format!("bad rational numerator in {s:?}")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::Format(format!("bad rational denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Format(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

impl From<&Scalar> for ScalarJson {
    fn from(s: &Scalar) -> Self {
        let [a, b, c, d] = s.components();
        ScalarJson {
            re_rat: rational_to_string(&a),
            re_s5: rational_to_string(&b),
            im_rat: rational_to_string(&c),
            im_s5: rational_to_string(&d),
        }
    }
}

impl TryFrom<&ScalarJson> for Scalar {
    type Error = Error;
    fn try_from(j: &ScalarJson) -> Result<Scalar> {
        Ok(Scalar::new(
            parse_rational(&j.re_rat)?,
            parse_rational(&j.re_s5)?,
            parse_rational(&j.im_rat)?,
            parse_rational(&j.im_s5)?,
        ))
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarJson::from(self).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = ScalarJson::deserialize(de)?;
        Scalar::try_from(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    #[test]
    fn defining_relations() {
        assert_eq!(&Scalar::sqrt5() * &Scalar::sqrt5(), Scalar::from_int(5));
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn golden_ratio_squares_to_phi_plus_one() {
        let phi = Scalar::phi();
        let expect = Scalar::real_quadratic(q(3, 2), q(1, 2));
        assert_eq!(&phi * &phi, expect);
        assert_eq!(&phi * &phi, &phi + &Scalar::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            scalar_arith(&Scalar::one(), &Scalar::zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn float_shadow() {
        let phi = Scalar::phi().to_complex();
        assert!((phi.re - 1.618_033_988_749_895).abs() < 1e-15);
        assert_eq!(phi.im, 0.0);
        assert_eq!(Scalar::zero().to_complex(), Complex64::new(0.0, 0.0));
        assert_eq!(Scalar::i().to_complex(), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn canonical_form_is_reduced() {
        let s = Scalar::new(q(2, 4), q(3, 6), q(0, 1), q(-4, 8));
        assert_eq!(s.denominator(), &BigInt::from(2));
        assert_eq!(s.re_rat(), q(1, 2));
        assert_eq!(s.im_s5(), q(-1, 2));
        let z = &s - &s;
        assert!(z.is_zero());
        assert!(z.denominator().is_one());
    }

    #[test]
    fn real_sign() {
        assert_eq!(Scalar::real_quadratic(q(-2, 1), q(1, 1)).real_signum(), 1);
        assert_eq!(Scalar::real_quadratic(q(3, 1), q(-1, 1)).real_signum(), 1);
        assert_eq!(Scalar::real_quadratic(q(2, 1), q(-1, 1)).real_signum(), -1);
        assert_eq!(Scalar::zero().real_signum(), 0);
    }

    #[test]
    fn json_round_trip() {
        let s = Scalar::new(q(1, 2), q(-3, 7), q(5, 1), q(0, 1));
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("\"re_rat\":\"1/2\""));
        assert!(text.contains("\"im_s5\":\"0/1\""));
        let back: Scalar = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..=50, 1i64..=12).prop_map(|(n, d)| q(n, d))
    }

    pub(crate) fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (
            small_rational(),
            small_rational(),
            small_rational(),
            small_rational(),
        )
            .prop_map(|(a, b, c, d)| Scalar::new(a, b, c, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn division_inverts_multiplication(a in arb_scalar(), b in arb_scalar()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!((&a * &b).checked_div(&a).unwrap(), b);
        }

        #[test]
        fn conjugation_is_multiplicative_involution(a in arb_scalar(), b in arb_scalar()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        }

        #[test]
        fn float_shadow_is_multiplicative(a in arb_scalar(), b in arb_scalar()) {
            let exact = (&a * &b).to_complex();
            let approx = a.to_complex() * b.to_complex();
            let scale = (a.to_complex().norm() * b.to_complex().norm()).max(1.0);
            prop_assert!((exact - approx).norm() <= 1e-12 * scale);
        }
    }

    proptest! {
        #[test]
        fn float_shadow_large_components(
            a in -1_000_000i64..=1_000_000, b in -1_000_000i64..=1_000_000,
            c in -1_000_000i64..=1_000_000, d in -1_000_000i64..=1_000_000,
        ) {
            let x = Scalar::new(q(a, 3), q(b, 7), q(c, 1), q(d, 11));
            let y = Scalar::new(q(d, 1), q(c, 5), q(b, 2), q(a, 9));
            let exact = (&x * &y).to_complex();
            let approx = x.to_complex() * y.to_complex();
            let scale = (x.to_complex().norm() * y.to_complex().norm()).max(1.0);
            prop_assert!((exact - approx).norm() <= 1e-12 * scale);
        }
    }
}
