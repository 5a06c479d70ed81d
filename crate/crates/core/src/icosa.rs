//! Exact icosahedral groups: the rotation group `I` (60), the full group
//! `I_h` (120), and the binary icosahedral group `I*` (120 unit quaternions),
//! with their actions on directions and polynomials.
//!
//! Orientation: icosahedron vertices at the cyclic permutations of
//! `(0, +-1, +-phi)`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::HopfImages;
use crate::maxwell::Direction;
use crate::poly::{Chart, Monomial, Poly, Var};
use crate::scalars::{Rational, Scalar};

fn half() -> Scalar {
    Scalar::frac(1, 2)
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Rotation3 {
    pub m: [[Scalar; 3]; 3],
}

impl Rotation3 {
    pub fn identity() -> Self {
        let mut m: [[Scalar; 3]; 3] = Default::default();
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = Scalar::one();
        }
        Rotation3 { m }
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Rotation3 {
            m: rows.map(|r| r.map(Scalar::from_int)),
        }
    }

    /// Rotation `x -> q x q^-1` of a unit quaternion `(w, x, y, z)`.
    pub fn from_quaternion(q: &Quaternion) -> Self {
        let [a, b, c, d] = &q.q;
        let two = Scalar::from_int(2);
        let one = Scalar::one();
        let sq = |s: &Scalar| s * s;
        let m = [
            [
                &one - &(&two * &(&sq(c) + &sq(d))),
                &two * &(&(b * c) - &(a * d)),
                &two * &(&(b * d) + &(a * c)),
            ],
            [
                &two * &(&(b * c) + &(a * d)),
                &one - &(&two * &(&sq(b) + &sq(d))),
                &two * &(&(c * d) - &(a * b)),
            ],
            [
                &two * &(&(b * d) - &(a * c)),
                &two * &(&(c * d) + &(a * b)),
                &one - &(&two * &(&sq(b) + &sq(c))),
            ],
        ];
        Rotation3 { m }
    }

    pub fn mul(&self, other: &Rotation3) -> Rotation3 {
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(Scalar::zero(), |acc, k| {
                    &acc + &(&self.m[i][k] * &other.m[k][j])
                })
            })
        });
        Rotation3 { m }
    }

    pub fn transpose(&self) -> Rotation3 {
        Rotation3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[j][i].clone())),
        }
    }

    pub fn neg(&self) -> Rotation3 {
        Rotation3 {
            m: self.m.clone().map(|r| r.map(|c| -c)),
        }
    }

    pub fn apply(&self, v: &[Scalar; 3]) -> [Scalar; 3] {
        std::array::from_fn(|i| {
            (0..3).fold(Scalar::zero(), |acc, k| &acc + &(&self.m[i][k] * &v[k]))
        })
    }

    pub fn det(&self) -> Scalar {
        let m = &self.m;
        let minor = |a: usize, b: usize, c: usize, d: usize| {
            &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d])
        };
        &(&(&m[0][0] * &minor(1, 2, 2, 1)) - &(&m[0][1] * &minor(0, 2, 2, 0)))
            + &(&m[0][2] * &minor(0, 1, 1, 0))
    }

    pub fn is_orthogonal(&self) -> bool {
        self.transpose().mul(self) == Rotation3::identity()
    }

    /// Least `n >= 1` with `self^n = 1`, searched up to `limit`.
    pub fn order(&self, limit: u32) -> Option<u32> {
        let id = Rotation3::identity();
        let mut acc = self.clone();
        for n in 1..=limit {
            if acc == id {
                return Some(n);
            }
            acc = acc.mul(self);
        }
        None
    }

    fn common_denominator(&self) -> BigInt {
        self.m
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denominator()))
    }
}

impl fmt::Debug for Rotation3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.m)
    }
}

/// Unit quaternion `q0 + q1 i + q2 j + q3 k` with real `Q(sqrt5)` entries.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Quaternion {
    pub q: [Scalar; 4],
}

impl Quaternion {
    pub fn new(q: [Scalar; 4]) -> Self {
        Quaternion { q }
    }

    pub fn identity() -> Self {
        Quaternion::new([
            Scalar::one(),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::zero(),
        ])
    }

    pub fn mul(&self, o: &Quaternion) -> Quaternion {
        let [a1, b1, c1, d1] = &self.q;
        let [a2, b2, c2, d2] = &o.q;
        let sum = |xs: [Scalar; 4]| xs.into_iter().fold(Scalar::zero(), |acc, x| &acc + &x);
        Quaternion::new([
            sum([a1 * a2, -(b1 * b2), -(c1 * c2), -(d1 * d2)]),
            sum([a1 * b2, b1 * a2, c1 * d2, -(d1 * c2)]),
            sum([a1 * c2, -(b1 * d2), c1 * a2, d1 * b2]),
            sum([a1 * d2, b1 * c2, -(c1 * b2), d1 * a2]),
        ])
    }

    pub fn neg(&self) -> Quaternion {
        Quaternion::new(self.q.clone().map(|c| -c))
    }

    pub fn norm2(&self) -> Scalar {
        self.q.iter().fold(Scalar::zero(), |acc, c| &acc + &(c * c))
    }

    pub fn order(&self, limit: u32) -> Option<u32> {
        let id = Quaternion::identity();
        let mut acc = self.clone();
        for n in 1..=limit {
            if acc == id {
                return Some(n);
            }
            acc = acc.mul(self);
        }
        None
    }

    /// Writes `q = u + v j` with `u = q0 + q1 i`, `v = q2 + q3 i`.
    fn split(&self) -> (Scalar, Scalar) {
        let i = Scalar::i();
        (
            &self.q[0] + &(&self.q[1] * &i),
            &self.q[2] + &(&self.q[3] * &i),
        )
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.q)
    }
}

/// The exact group tables.
#[derive(Debug, Clone)]
pub struct IcosahedralGroups {
    /// `I`: 60 rotations.
    pub rotations: Vec<Rotation3>,
    /// `I_h`: `I` together with `-I`.
    pub full: Vec<Rotation3>,
    /// `I*`: 120 unit quaternions.
    pub binary: Vec<Quaternion>,
}

/// Order-5 rotation about the vertex axis `(0, 1, phi)`.
pub fn vertex_rotation() -> Rotation3 {
    let phi = Scalar::phi();
    let inv_phi = &phi - &Scalar::one();
    let h = half();
    Rotation3::from_quaternion(&Quaternion::new([
        &phi * &h,
        Scalar::zero(),
        &inv_phi * &h,
        h,
    ]))
}

/// Order-2 rotation about the edge-midpoint axis `z`.
pub fn edge_rotation() -> Rotation3 {
    Rotation3::from_ints([[-1, 0, 0], [0, -1, 0], [0, 0, 1]])
}

fn close_rotations(generators: &[Rotation3]) -> Vec<Rotation3> {
    let mut seen: HashSet<Rotation3> = HashSet::new();
    let mut out = vec![Rotation3::identity()];
    seen.insert(Rotation3::identity());
    let mut frontier = 0;
    while frontier < out.len() {
        let g = out[frontier].clone();
        frontier += 1;
        for h in generators {
            let p = g.mul(h);
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
    }
    out
}

fn even_permutations_of_4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    if !distinct {
                        continue;
                    }
                    let inversions = (0..4)
                        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                        .filter(|&(i, j)| p[i] > p[j])
                        .count();
                    if inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// The 120 elements `{+-1, +-i, +-j, +-k}`, `(+-1 +-i +-j +-k)/2`, and the even
/// permutations of `(0, +-1, +-phi^-1, +-phi)/2`.
pub fn standard_binary_icosahedral_elements() -> Vec<Quaternion> {
    let mut out = Vec::with_capacity(120);
    for k in 0..4 {
        for s in [1, -1] {
            let mut q: [Scalar; 4] = Default::default();
            q[k] = Scalar::from_int(s);
            out.push(Quaternion::new(q));
        }
    }
    for signs in 0..16u32 {
        let q = std::array::from_fn(|k| {
            if signs >> k & 1 == 1 {
                Scalar::frac(-1, 2)
            } else {
                half()
            }
        });
        out.push(Quaternion::new(q));
    }
    let phi = Scalar::phi();
    let inv_phi = &phi - &Scalar::one();
    let base = [Scalar::zero(), half(), &inv_phi * &half(), &phi * &half()];
    for perm in even_permutations_of_4() {
        for signs in 0..8u32 {
            let mut vals = base.clone();
            for (bit, slot) in (1..4).enumerate() {
                if signs >> bit & 1 == 1 {
                    vals[slot] = -vals[slot].clone();
                }
            }
            let q = std::array::from_fn(|k| vals[perm[k]].clone());
            out.push(Quaternion::new(q));
        }
    }
    out
}

/// The realization of `I*` used throughout: the standard elements conjugated by
/// `(1 + k)/sqrt2`, so that the rotations they induce through the Hopf map are
/// exactly the 60 elements of `I` in the fixed vertex orientation.
pub fn binary_icosahedral_elements() -> Vec<Quaternion> {
    let c = Quaternion::new([Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()]);
    let c_bar = Quaternion::new([
        Scalar::one(),
        Scalar::zero(),
        Scalar::zero(),
        -Scalar::one(),
    ]);
    let h = half();
    standard_binary_icosahedral_elements()
        .iter()
        .map(|q| Quaternion::new(c.mul(q).mul(&c_bar).q.map(|x| &x * &h)))
        .collect()
}

/// Process-wide group tables, built on first use.
pub fn groups() -> &'static IcosahedralGroups {
    static GROUPS: OnceLock<IcosahedralGroups> = OnceLock::new();
    GROUPS.get_or_init(|| build_icosahedral_groups().expect("icosahedral group construction"))
}

pub fn build_icosahedral_groups() -> Result<IcosahedralGroups> {
    let rotations = close_rotations(&[vertex_rotation(), edge_rotation()]);
    if rotations.len() != 60 {
        return Err(Error::Internal(format!(
            "I closed to {} elements, expected 60",
            rotations.len()
        )));
    }
    let mut full = rotations.clone();
    full.extend(rotations.iter().map(Rotation3::neg));

    let binary = binary_icosahedral_elements();
    let set: HashSet<&Quaternion> = binary.iter().collect();
    if set.len() != 120 {
        return Err(Error::Internal(format!(
            "I* has {} distinct elements, expected 120",
            set.len()
        )));
    }
    for a in &binary {
        if !a.norm2().is_one() {
            return Err(Error::Internal(format!("non-unit quaternion {a:?}")));
        }
        for b in &binary {
            if !set.contains(&a.mul(b)) {
                return Err(Error::Internal(
                    "I* is not closed under multiplication".into(),
                ));
            }
        }
    }
    Ok(IcosahedralGroups {
        rotations,
        full,
        binary,
    })
}

/// Canonical representative of `R v`.
pub fn act_on_direction(r: &Rotation3, d: &Direction) -> Direction {
    Direction::new(r.apply(d.coords())).expect("rotations preserve nonzero real vectors")
}

/// `f(d R x)` with `d` the common denominator of `R`, so that integral input
/// stays integral throughout the substitution.
fn act_on_poly_s2_scaled(r: &Rotation3, f: &Poly) -> Result<(Poly, BigInt)> {
    if f.chart() != Chart::Real3 {
        return Err(Error::ChartMismatch(Chart::Real3, f.chart()));
    }
    let den = r.common_denominator();
    let ds = Scalar::from_bigint(den.clone());
    let vars =
        [Var::X, Var::Y, Var::Z].map(|v| Poly::var(Chart::Real3, v).expect("REAL3 variable"));
    let images: Vec<Poly> = (0..3)
        .map(|i| {
            (0..3).fold(Poly::zero(Chart::Real3), |acc, k| {
                &acc + &vars[k].scale(&(&r.m[i][k] * &ds))
            })
        })
        .collect();
    Ok((f.substitute(&images)?, den))
}

/// Multiplies each homogeneous component of degree `d` by `factor(d)`.
fn scale_by_degree(p: &Poly, mut factor: impl FnMut(u32) -> Scalar) -> Poly {
    let mut cache: HashMap<u32, Scalar> = HashMap::new();
    Poly::from_terms(
        p.chart(),
        p.terms().map(|(m, c)| {
            let s = cache
                .entry(m.degree())
                .or_insert_with(|| factor(m.degree()));
            (*m, c * &*s)
        }),
    )
}

/// `f o R`, i.e. `x -> f(R x)`.
pub fn act_on_poly_s2(r: &Rotation3, f: &Poly) -> Result<Poly> {
    let (g, den) = act_on_poly_s2_scaled(r, f)?;
    if den.is_one() {
        return Ok(g);
    }
    Ok(scale_by_degree(&g, |d| {
        Scalar::from_rational(&Rational::new(BigInt::one(), den.pow(d)))
    }))
}

/// Whether `f o R = f`, compared without dividing out the scaling of `R`.
pub fn is_invariant_s2(r: &Rotation3, f: &Poly) -> Result<bool> {
    let (g, den) = act_on_poly_s2_scaled(r, f)?;
    Ok(g == scale_by_degree(f, |d| Scalar::from_bigint(den.pow(d))))
}

/// `Some(1)` if `f o R = f`, `Some(-1)` if `f o R = -f`, otherwise `None`.
pub fn sign_under_s2(r: &Rotation3, f: &Poly) -> Result<Option<i8>> {
    let (g, den) = act_on_poly_s2_scaled(r, f)?;
    let target = scale_by_degree(f, |d| Scalar::from_bigint(den.pow(d)));
    if g == target {
        Ok(Some(1))
    } else if g == -&target {
        Ok(Some(-1))
    } else {
        Ok(None)
    }
}

/// Right multiplication `(alpha + beta j) -> (alpha + beta j) q` on `S^3`, which
/// commutes with the Hopf flow `(e^{it} alpha, e^{it} beta)`:
/// `alpha -> u alpha - conj(v) beta`, `beta -> v alpha + conj(u) beta`.
#[derive(Debug, Clone)]
pub struct SpinAction {
    /// Coefficients of `alpha` and `beta` in the image of `alpha`.
    a_img: [Scalar; 2],
    /// Coefficients of `alpha` and `beta` in the image of `beta`.
    b_img: [Scalar; 2],
}

fn univariate_mul(p: &[Scalar], q: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            if !b.is_zero() {
                out[i + j] += &(a * b);
            }
        }
    }
    out
}

impl SpinAction {
    pub fn new(q: &Quaternion) -> Self {
        let (u, v) = q.split();
        SpinAction {
            a_img: [u.clone(), -v.conj()],
            b_img: [v, u.conj()],
        }
    }

    /// The action of `d q`, with `d` the least integer making every image
    /// coefficient integral. Returns the scaled action and `d`.
    pub fn integral(q: &Quaternion) -> (Self, BigInt) {
        let base = SpinAction::new(q);
        let den = base
            .a_img
            .iter()
            .chain(base.b_img.iter())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denominator()));
        let ds = Scalar::from_bigint(den.clone());
        let scaled = SpinAction {
            a_img: base.a_img.map(|c| &c * &ds),
            b_img: base.b_img.map(|c| &c * &ds),
        };
        (scaled, den)
    }

    /// Image of `alpha^a beta^c` as coefficients of `alpha^i beta^(a+c-i)`,
    /// `i = 0..=a+c`. With `conj = true` the same for `alpha_bar^a beta_bar^c`.
    fn row(&self, a: u8, c: u8, conj: bool) -> Vec<Scalar> {
        // index = power of alpha; [beta coefficient, alpha coefficient]
        let lin = |img: &[Scalar; 2]| {
            let (ca, cb) = if conj {
                (img[0].conj(), img[1].conj())
            } else {
                (img[0].clone(), img[1].clone())
            };
            vec![cb, ca]
        };
        let a_lin = lin(&self.a_img);
        let b_lin = lin(&self.b_img);
        let mut acc = vec![Scalar::one()];
        for _ in 0..a {
            acc = univariate_mul(&acc, &a_lin);
        }
        for _ in 0..c {
            acc = univariate_mul(&acc, &b_lin);
        }
        acc
    }

    /// `F o R_q`.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        if f.chart() != Chart::Cplx {
            return Err(Error::ChartMismatch(Chart::Cplx, f.chart()));
        }
        let mut hol_rows: HashMap<(u8, u8), Vec<Scalar>> = HashMap::new();
        let mut anti_rows: HashMap<(u8, u8), Vec<Scalar>> = HashMap::new();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, coeff) in f.terms() {
            let [a, b, c, d] = m.0;
            let hol = hol_rows
                .entry((a, c))
                .or_insert_with(|| self.row(a, c, false));
            let anti = anti_rows
                .entry((b, d))
                .or_insert_with(|| self.row(b, d, true));
            let p = a + c;
            let q = b + d;
            for (i, h) in hol.iter().enumerate() {
                if h.is_zero() {
                    continue;
                }
                let ch = coeff * h;
                for (j, g) in anti.iter().enumerate() {
                    if g.is_zero() {
                        continue;
                    }
                    let mon = Monomial([i as u8, j as u8, p - i as u8, q - j as u8]);
                    *acc.entry(mon).or_default() += &(&ch * g);
                }
            }
        }
        Ok(Poly::from_terms(Chart::Cplx, acc))
    }

    /// The point `(alpha, beta) q`, so that `(F o R_q)(p) = F(p q)`.
    pub fn act_on_point(&self, alpha: Complex64, beta: Complex64) -> (Complex64, Complex64) {
        let c = |s: &Scalar| s.to_complex();
        (
            c(&self.a_img[0]) * alpha + c(&self.a_img[1]) * beta,
            c(&self.b_img[0]) * alpha + c(&self.b_img[1]) * beta,
        )
    }

    /// Same action as [`SpinAction::apply`], computed by generic substitution.
    pub fn apply_by_substitution(&self, f: &Poly) -> Result<Poly> {
        let v = |var| Poly::var(Chart::Cplx, var).expect("CPLX variable");
        let (a, ab, b, bb) = (
            v(Var::Alpha),
            v(Var::AlphaBar),
            v(Var::Beta),
            v(Var::BetaBar),
        );
        let lin = |x: &Poly, cx: &Scalar, y: &Poly, cy: &Scalar| &x.scale(cx) + &y.scale(cy);
        let images = [
            lin(&a, &self.a_img[0], &b, &self.a_img[1]),
            lin(&ab, &self.a_img[0].conj(), &bb, &self.a_img[1].conj()),
            lin(&a, &self.b_img[0], &b, &self.b_img[1]),
            lin(&ab, &self.b_img[0].conj(), &bb, &self.b_img[1].conj()),
        ];
        f.substitute(&images)
    }

    /// Coefficient matrix of the action on holomorphic degree-`p` monomials:
    /// row `a` is the image of `alpha^a beta^(p-a)`.
    pub fn holomorphic_matrix(&self, p: u8) -> Vec<Vec<Scalar>> {
        (0..=p).map(|a| self.row(a, p - a, false)).collect()
    }
}

/// `F o R_q` for the right action of a unit quaternion.
pub fn act_on_poly_s3(q: &Quaternion, f: &Poly) -> Result<Poly> {
    SpinAction::new(q).apply(f)
}

/// Whether `F o R_q = F`, evaluated with integral arithmetic.
pub fn is_invariant_s3(q: &Quaternion, f: &Poly) -> Result<bool> {
    let (action, den) = SpinAction::integral(q);
    let g = action.apply(f)?;
    Ok(g == scale_by_degree(f, |d| Scalar::from_bigint(den.pow(d))))
}

/// The rotation `rho(q)` with `p(x q) = rho(q) p(x)` for the Hopf map `p`.
pub fn induced_rotation(q: &Quaternion) -> Result<Rotation3> {
    let hopf = HopfImages::new();
    let action = SpinAction::new(q);
    let half = half();
    let i = Scalar::i();
    let mut m: [[Scalar; 3]; 3] = Default::default();
    for (row, img) in hopf.as_array().iter().enumerate() {
        let moved = action.apply(img)?;
        // moved = a x_img + b y_img + c z_img; read a, b, c off the coefficients
        // of alpha beta_bar (a - i b), alpha_bar beta (a + i b) and beta beta_bar (c).
        let c1 = moved.coeff(&Monomial([1, 0, 0, 1]));
        let c2 = moved.coeff(&Monomial([0, 1, 1, 0]));
        let c3 = moved.coeff(&Monomial([0, 0, 1, 1]));
        let a = &(&c1 + &c2) * &half;
        let b = (&(&c2 - &c1) * &half).checked_div(&i)?;
        let reconstructed =
            &(&hopf.x_image.scale(&a) + &hopf.y_image.scale(&b)) + &hopf.z_image.scale(&c3);
        if reconstructed != moved {
            return Err(Error::Internal(
                "Hopf image left the span of (x, y, z)".into(),
            ));
        }
        m[row] = [a, b, c3];
    }
    Ok(Rotation3 { m })
}

/// Projective orbit of a direction under a group of rotations, in discovery order.
pub fn orbit(d: &Direction, group: &[Rotation3]) -> Vec<Direction> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in group {
        let img = act_on_direction(r, d);
        if seen.insert(img.clone()) {
            out.push(img);
        }
    }
    out
}

/// Group average of a REAL3 polynomial.
pub fn reynolds_s2(f: &Poly, group: &[Rotation3]) -> Result<Poly> {
    let mut acc = Poly::zero(Chart::Real3);
    for r in group {
        acc = acc.checked_add(&act_on_poly_s2(r, f)?)?;
    }
    Ok(acc.scale(&Scalar::frac(1, group.len() as i64)))
}

/// Group average of a CPLX polynomial over quaternions acting on the right.
pub fn reynolds_s3(f: &Poly, group: &[Quaternion]) -> Result<Poly> {
    let mut acc = Poly::zero(Chart::Cplx);
    for q in group {
        acc = acc.checked_add(&act_on_poly_s3(q, f)?)?;
    }
    Ok(acc.scale(&Scalar::frac(1, group.len() as i64)))
}

/// JSON export of the group tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupTablesJson {
    pub rotations: Vec<Rotation3>,
    pub binary: Vec<Quaternion>,
}

impl From<&IcosahedralGroups> for GroupTablesJson {
    fn from(g: &IcosahedralGroups) -> Self {
        GroupTablesJson {
            rotations: g.rotations.clone(),
            binary: g.binary.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{lift, twist_lower, twist_raise, z_operator};
    use crate::poly::monomials_of_degree;

    fn vertex() -> Direction {
        Direction::new([Scalar::zero(), Scalar::one(), Scalar::phi()]).unwrap()
    }

    #[test]
    fn group_sizes_and_orders() {
        let g = groups();
        assert_eq!(g.rotations.len(), 60);
        assert_eq!(g.full.len(), 120);
        assert_eq!(g.binary.len(), 120);
        assert!(g.binary.contains(&Quaternion::identity().neg()));
        let mut orders: Vec<u32> = g.rotations.iter().map(|r| r.order(10).unwrap()).collect();
        orders.sort();
        orders.dedup();
        assert_eq!(orders, vec![1, 2, 3, 5]);
        for r in &g.rotations {
            assert!(r.is_orthogonal());
            assert!(r.det().is_one());
        }
        let mut qorders: Vec<u32> = g.binary.iter().map(|q| q.order(20).unwrap()).collect();
        qorders.sort();
        qorders.dedup();
        assert_eq!(qorders, vec![1, 2, 3, 4, 5, 6, 10]);
    }

    #[test]
    fn binary_group_double_covers_rotations() {
        let g = groups();
        let rot_set: HashSet<&Rotation3> = g.rotations.iter().collect();
        let mut images: HashSet<Rotation3> = HashSet::new();
        for q in &g.binary {
            let r = induced_rotation(q).unwrap();
            assert_eq!(r, induced_rotation(&q.neg()).unwrap());
            assert!(rot_set.contains(&r), "rho({q:?}) not in I");
            images.insert(r);
        }
        assert_eq!(images.len(), 60);
    }

    #[test]
    fn direction_actions() {
        let g = groups();
        let d = Direction::from_ints(1, 2, 3).unwrap();
        assert_eq!(act_on_direction(&Rotation3::identity(), &d), d);
        let x = Direction::from_ints(1, 0, 0).unwrap();
        assert_eq!(act_on_direction(&edge_rotation(), &x), x);
        assert_eq!(act_on_direction(&vertex_rotation(), &vertex()), vertex());
        let vertices = orbit(&vertex(), &g.rotations);
        assert_eq!(vertices.len(), 6);
        let set: HashSet<&Direction> = vertices.iter().collect();
        for r in &g.rotations {
            for v in &vertices {
                assert!(set.contains(&act_on_direction(r, v)));
            }
        }
    }

    #[test]
    fn polynomial_actions_identity_and_antipode() {
        let g = groups();
        let f = lift(&Poly::var(Chart::Real3, Var::Z).unwrap()).unwrap();
        assert_eq!(act_on_poly_s3(&Quaternion::identity(), &f).unwrap(), f);
        assert_eq!(
            act_on_poly_s3(&Quaternion::identity().neg(), &f).unwrap(),
            f
        );
        let odd = Poly::var(Chart::Cplx, Var::Alpha).unwrap();
        assert_eq!(
            act_on_poly_s3(&Quaternion::identity().neg(), &odd).unwrap(),
            -&odd
        );
        let s = Poly::var(Chart::Real3, Var::X).unwrap();
        assert_eq!(act_on_poly_s2(&Rotation3::identity(), &s).unwrap(), s);
        assert_eq!(g.binary.len(), 120);
    }

    #[test]
    fn spin_action_matches_substitution() {
        let g = groups();
        for q in g.binary.iter().step_by(7) {
            let a = SpinAction::new(q);
            for d in 0..=3 {
                for m in monomials_of_degree(Chart::Cplx, d) {
                    let p = Poly::monomial(Chart::Cplx, m, &Scalar::one() + &Scalar::i());
                    assert_eq!(a.apply(&p).unwrap(), a.apply_by_substitution(&p).unwrap());
                }
            }
        }
    }

    #[test]
    fn hopf_equivariance() {
        let g = groups();
        let z = Poly::var(Chart::Real3, Var::Z).unwrap();
        let y = Poly::var(Chart::Real3, Var::Y).unwrap();
        let f = &(&z * &z) - &(&y * &z).scale(&Scalar::from_int(3));
        for q in g.binary.iter().skip(5).step_by(40) {
            let rho = induced_rotation(q).unwrap();
            for h in [&z, &f] {
                let lhs = act_on_poly_s3(q, &lift(h).unwrap()).unwrap();
                let rhs = lift(&act_on_poly_s2(&rho, h).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn spin_action_commutes_with_operators() {
        let g = groups();
        for q in g.binary.iter().step_by(11) {
            for d in 0..=4 {
                for m in monomials_of_degree(Chart::Cplx, d) {
                    let p = Poly::monomial(Chart::Cplx, m, Scalar::one());
                    let act = |x: &Poly| act_on_poly_s3(q, x).unwrap();
                    assert_eq!(act(&z_operator(&p).unwrap()), z_operator(&act(&p)).unwrap());
                    assert_eq!(
                        act(&twist_raise(&p).unwrap()),
                        twist_raise(&act(&p)).unwrap()
                    );
                    assert_eq!(
                        act(&twist_lower(&p).unwrap()),
                        twist_lower(&act(&p)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn reynolds_is_idempotent() {
        let g = groups();
        let samples = [
            Poly::monomial(Chart::Cplx, Monomial([2, 2, 0, 0]), Scalar::one()),
            Poly::monomial(Chart::Cplx, Monomial([3, 1, 0, 2]), Scalar::one()),
            Poly::monomial(Chart::Cplx, Monomial([1, 2, 2, 1]), Scalar::i()),
        ];
        for p in &samples {
            let once = reynolds_s3(p, &g.binary).unwrap();
            assert_eq!(reynolds_s3(&once, &g.binary).unwrap(), once);
        }
        let f = Poly::monomial(Chart::Real3, Monomial([2, 1, 3, 0]), Scalar::one());
        let once = reynolds_s2(&f, &g.rotations).unwrap();
        assert_eq!(reynolds_s2(&once, &g.rotations).unwrap(), once);
    }

    #[test]
    fn standard_binary_set_is_a_group() {
        let std_set = standard_binary_icosahedral_elements();
        let set: HashSet<&Quaternion> = std_set.iter().collect();
        assert_eq!(set.len(), 120);
        for a in std_set.iter().step_by(3) {
            for b in &std_set {
                assert!(set.contains(&a.mul(b)));
            }
        }
    }

    #[test]
    fn invariance_checks_agree_with_actions() {
        let g = groups();
        let f = Poly::monomial(Chart::Real3, Monomial([2, 1, 0, 0]), Scalar::frac(1, 3));
        let p = Poly::monomial(Chart::Cplx, Monomial([2, 1, 0, 1]), Scalar::frac(2, 5));
        for r in g.rotations.iter().take(12) {
            assert_eq!(
                is_invariant_s2(r, &f).unwrap(),
                act_on_poly_s2(r, &f).unwrap() == f
            );
        }
        for q in g.binary.iter().take(12) {
            assert_eq!(
                is_invariant_s3(q, &p).unwrap(),
                act_on_poly_s3(q, &p).unwrap() == p
            );
        }
        assert!(is_invariant_s3(&Quaternion::identity(), &p).unwrap());
        let r2 = Poly::from_terms(
            Chart::Cplx,
            [
                (Monomial([1, 1, 0, 0]), Scalar::one()),
                (Monomial([0, 0, 1, 1]), Scalar::one()),
            ],
        );
        assert!(g.binary.iter().all(|q| is_invariant_s3(q, &r2).unwrap()));
    }

    #[test]
    fn group_tables_serialize() {
        let g = groups();
        let json = serde_json::to_string(&GroupTablesJson::from(g)).unwrap();
        let back: GroupTablesJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.rotations, g.rotations);
        assert_eq!(back.binary, g.binary);
    }
}
