//! The end-to-end pipeline for `S^3 / I*`: orbifold configurations give
//! I-invariant harmonics on `S^2`, their Hopf lifts are the invariant vertical
//! modes, and twisting fills out each k-eigenspace. An independent group-average
//! oracle checks the resulting dimensions.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonics::lifted_lattice;
use crate::hopf::{check_normalized, cplx_point, lift, twist_lower, twist_raise, z_eigenvalue};
use crate::icosa::{groups, is_invariant_s3, sign_under_s2, SpinAction};
use crate::linalg::{complex_matrix_rank, exact_rank, float_rank};
use crate::orbifold::{
    config_mode, dim_v, enumerate_basis_configs, CanonicalPolicy, OrbifoldConfig,
};
use crate::poly::{Chart, FloatPoly, Monomial, Poly};
use crate::scalars::Scalar;

/// Default largest `k` handled by the exact pipeline.
pub const DEFAULT_MAX_EXACT_K: u64 = 24;
/// Environment variable overriding [`DEFAULT_MAX_EXACT_K`].
pub const MAX_EXACT_K_VAR: &str = "PDS_MAX_EXACT_K";
/// Residual allowed by floating invariance checks, relative to the largest
/// value of `sum |c_m| |x^m|` on the sample (the scale of evaluation error,
/// which stays meaningful when the monomial sum cancels heavily).
pub const FLOAT_INVARIANCE_TOL: f64 = 1e-9;
/// Relative singular value cutoff for floating ranks.
pub const FLOAT_RANK_TOL: f64 = 1e-8;
/// Largest `k` for which the group-average oracle stays exact.
pub const ORACLE_MAX_EXACT_K: u64 = 12;

const FLOAT_SAMPLE_POINTS: usize = 48;

pub fn max_exact_k() -> u64 {
    std::env::var(MAX_EXACT_K_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_EXACT_K)
}

/// Number of invariant k-modes: `(k + 1) dim V^(k/2)` for even `k`, else 0.
pub fn dim_k_modes(k: u64) -> u64 {
    if k % 2 == 1 {
        return 0;
    }
    (k + 1) * dim_v(k / 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verification {
    Exact,
    Float,
}

/// What was checked while building a family, and the outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub k: u64,
    pub l: u64,
    pub method: Verification,
    pub harmonic: bool,
    pub homogeneous: bool,
    pub rotations: usize,
    pub binary_elements: usize,
    /// Per S^2 mode, how many rotations fix it.
    pub s2_fixed: Vec<usize>,
    /// Per S^2 mode, how many rotations negate it (must be zero).
    pub s2_negated: Vec<usize>,
    /// Per twisted basis element (in family order), how many elements of `I*` fix it.
    pub s3_fixed: Vec<usize>,
    pub twists_ok: bool,
    pub rank: usize,
    pub expected_rank: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.harmonic
            && self.homogeneous
            && self.twists_ok
            && self.s2_fixed.iter().all(|&c| c == self.rotations)
            && self.s2_negated.iter().all(|&c| c == 0)
            && self.s3_fixed.iter().all(|&c| c == self.binary_elements)
            && self.rank == self.expected_rank
    }
}

/// A basis of the invariant k-modes.
#[derive(Debug, Clone)]
pub struct PdsModeFamily {
    pub k: u64,
    pub configs: Vec<OrbifoldConfig>,
    pub s2_modes: Vec<Poly>,
    pub vertical_modes: Vec<Poly>,
    /// `(config index, n)` for `n = -k/2 ..= k/2`.
    pub twisted_basis: BTreeMap<(usize, i32), Poly>,
    pub report: VerificationReport,
}

impl PdsModeFamily {
    pub fn basis(&self) -> Vec<Poly> {
        self.twisted_basis.values().cloned().collect()
    }

    pub fn dim(&self) -> usize {
        self.twisted_basis.len()
    }
}

/// The twisted siblings `n = -k/2 ..= k/2` of a vertical k-mode.
pub fn twisted_siblings(vertical: &Poly, k: u64) -> Result<Vec<(i32, Poly)>> {
    let half = (k / 2) as i32;
    let mut out = vec![(0, vertical.clone())];
    let mut up = vertical.clone();
    let mut down = vertical.clone();
    for n in 1..=half {
        up = twist_raise(&up)?;
        down = twist_lower(&down)?;
        out.push((n, up.clone()));
        out.push((-n, down.clone()));
    }
    out.sort_by_key(|(n, _)| *n);
    Ok(out)
}

/// Builds and verifies the family of invariant k-modes.
pub fn build_k_modes(k: u64) -> Result<PdsModeFamily> {
    if k % 2 == 1 {
        return Err(Error::OddK(k));
    }
    let l = k / 2;
    if dim_v(l) == 0 {
        return build_family(k, Vec::new(), Vec::new());
    }
    let (configs, modes) = enumerate_basis_configs(l)?.into_iter().unzip();
    build_family(k, configs, modes)
}

/// Builds the family spanned by explicitly given configurations of degree `l`.
pub fn build_from_configs(
    l: u64,
    configs: Vec<OrbifoldConfig>,
    policy: CanonicalPolicy,
) -> Result<PdsModeFamily> {
    let mut modes = Vec::with_capacity(configs.len());
    for c in &configs {
        if c.degree() != l {
            return Err(Error::InvalidConfig(format!(
                "configuration has degree {} but l = {l}",
                c.degree()
            )));
        }
        modes.push(config_mode(c, policy)?);
    }
    build_family(2 * l, configs, modes)
}

fn build_family(
    k: u64,
    configs: Vec<OrbifoldConfig>,
    s2_modes: Vec<Poly>,
) -> Result<PdsModeFamily> {
    let l = k / 2;
    let exact = k <= max_exact_k();
    let g = groups();
    let vertical_modes = s2_modes.iter().map(lift).collect::<Result<Vec<_>>>()?;
    let mut twisted_basis = BTreeMap::new();
    for (i, v) in vertical_modes.iter().enumerate() {
        for (n, p) in twisted_siblings(v, k)? {
            twisted_basis.insert((i, n), p);
        }
    }
    let all_polys = || s2_modes.iter().chain(twisted_basis.values());
    let harmonic = all_polys().all(Poly::is_harmonic);
    let homogeneous = s2_modes
        .iter()
        .all(|f| f.is_homogeneous() && f.degree() == Some(l as u32))
        && twisted_basis
            .values()
            .all(|p| p.is_homogeneous() && p.degree() == Some(k as u32));
    let twists_ok = twisted_basis
        .iter()
        .all(|((_, n), p)| z_eigenvalue(p) == Some(*n));

    let mut s2_fixed = Vec::new();
    let mut s2_negated = Vec::new();
    let mut s3_fixed = Vec::new();
    let rank = if exact {
        for f in &s2_modes {
            let (mut plus, mut minus) = (0, 0);
            for r in &g.rotations {
                match sign_under_s2(r, f)? {
                    Some(1) => plus += 1,
                    Some(_) => minus += 1,
                    None => {}
                }
            }
            s2_fixed.push(plus);
            s2_negated.push(minus);
        }
        for p in twisted_basis.values() {
            let mut fixed = 0;
            for q in &g.binary {
                if is_invariant_s3(q, p)? {
                    fixed += 1;
                }
            }
            s3_fixed.push(fixed);
        }
        exact_rank(&twisted_basis.values().cloned().collect::<Vec<_>>())?.rank
    } else {
        let s2_points = sample_s2_points(FLOAT_SAMPLE_POINTS);
        for f in &s2_modes {
            let (plus, minus) = float_s2_signs(f, &s2_points)?;
            s2_fixed.push(plus);
            s2_negated.push(minus);
        }
        let s3_points = sample_s3_points(FLOAT_SAMPLE_POINTS);
        for p in twisted_basis.values() {
            s3_fixed.push(float_s3_fixed(p, &s3_points)?);
        }
        float_rank(
            &twisted_basis.values().cloned().collect::<Vec<_>>(),
            FLOAT_RANK_TOL,
        )
    };
    let report = VerificationReport {
        k,
        l,
        method: if exact {
            Verification::Exact
        } else {
            Verification::Float
        },
        harmonic,
        homogeneous,
        rotations: g.rotations.len(),
        binary_elements: g.binary.len(),
        s2_fixed,
        s2_negated,
        s3_fixed,
        twists_ok,
        rank,
        expected_rank: (k as usize + 1) * configs.len(),
    };
    if configs.len() as u64 == dim_v(l) && !report.passed() {
        return Err(Error::Internal(format!(
            "verification failed for k = {k}: {report:?}"
        )));
    }
    Ok(PdsModeFamily {
        k,
        configs,
        s2_modes,
        vertical_modes,
        twisted_basis,
        report,
    })
}

/// Deterministic quasi-uniform points on `S^2` (a Fibonacci spiral).
pub fn sample_s2_points(n: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let t = golden * i as f64;
            [r * t.cos(), r * t.sin(), z]
        })
        .collect()
}

/// Deterministic quasi-uniform points on `S^3` from a Kronecker sequence in
/// Hopf coordinates.
pub fn sample_s3_points(n: usize) -> Vec<(Complex64, Complex64)> {
    let steps = [0.5545497435, 0.3079785283, 0.8254878465];
    (0..n)
        .map(|i| {
            let u = (0..3)
                .map(|j| ((i as f64 + 0.5) * steps[j]).fract())
                .collect::<Vec<_>>();
            let tau = std::f64::consts::TAU;
            let s = u[0].sqrt();
            let c = (1.0 - u[0]).sqrt();
            (
                Complex64::from_polar(c, tau * u[1]),
                Complex64::from_polar(s, tau * u[2]),
            )
        })
        .collect()
}

fn rotation_f64(m: &[[Scalar; 3]; 3]) -> [[f64; 3]; 3] {
    m.clone().map(|row| row.map(|c| c.to_complex().re))
}

fn float_s2_signs(f: &Poly, points: &[[f64; 3]]) -> Result<(usize, usize)> {
    let shadow = f.to_float();
    let eval = |x: &[f64; 3]| shadow.evaluate(&x.map(|c| Complex64::new(c, 0.0)));
    let base = points.iter().map(eval).collect::<Result<Vec<_>>>()?;
    let scale = residual_scale(
        &shadow,
        points
            .iter()
            .map(|x| x.map(|c| Complex64::new(c, 0.0)).to_vec()),
    )?;
    let (mut plus, mut minus) = (0, 0);
    for r in &groups().rotations {
        let m = rotation_f64(&r.m);
        let mut same = true;
        let mut negated = true;
        for (x, fx) in points.iter().zip(&base) {
            let y = [0, 1, 2].map(|i| (0..3).map(|j| m[i][j] * x[j]).sum::<f64>());
            let fy = eval(&y)?;
            same &= (fy - fx).norm() <= FLOAT_INVARIANCE_TOL * scale;
            negated &= (fy + fx).norm() <= FLOAT_INVARIANCE_TOL * scale;
        }
        if same {
            plus += 1;
        } else if negated {
            minus += 1;
        }
    }
    Ok((plus, minus))
}

fn residual_scale(shadow: &FloatPoly, points: impl Iterator<Item = Vec<Complex64>>) -> Result<f64> {
    let mut scale = f64::MIN_POSITIVE;
    for p in points {
        scale = scale.max(shadow.magnitude(&p)?);
    }
    Ok(scale)
}

fn float_s3_fixed(f: &Poly, points: &[(Complex64, Complex64)]) -> Result<usize> {
    let shadow = f.to_float();
    let base = evaluate_shadow(&shadow, points)?;
    let scale = residual_scale(
        &shadow,
        points.iter().map(|&(a, b)| cplx_point(a, b).to_vec()),
    )?;
    let mut fixed = 0;
    for q in &groups().binary {
        let action = SpinAction::new(q);
        let moved: Vec<_> = points
            .iter()
            .map(|&(a, b)| action.act_on_point(a, b))
            .collect();
        let vals = evaluate_shadow(&shadow, &moved)?;
        if vals
            .iter()
            .zip(&base)
            .all(|(v, w)| (v - w).norm() <= FLOAT_INVARIANCE_TOL * scale)
        {
            fixed += 1;
        }
    }
    Ok(fixed)
}

/// Values of a CPLX polynomial at points of `S^3`.
pub fn evaluate_mode(f: &Poly, points: &[(Complex64, Complex64)]) -> Result<Vec<Complex64>> {
    if f.chart() != Chart::Cplx {
        return Err(Error::ChartMismatch(Chart::Cplx, f.chart()));
    }
    evaluate_shadow(&f.to_float(), points)
}

fn evaluate_shadow(
    shadow: &FloatPoly,
    points: &[(Complex64, Complex64)],
) -> Result<Vec<Complex64>> {
    points
        .iter()
        .map(|&(a, b)| {
            check_normalized(a, b)?;
            shadow.evaluate(&cplx_point(a, b))
        })
        .collect()
}

/// Values of a REAL3 polynomial at unit vectors.
pub fn evaluate_mode_s2(f: &Poly, points: &[[f64; 3]]) -> Result<Vec<Complex64>> {
    if f.chart() != Chart::Real3 {
        return Err(Error::ChartMismatch(Chart::Real3, f.chart()));
    }
    let shadow = f.to_float();
    points
        .iter()
        .map(|x| {
            let n: f64 = x.iter().map(|c| c * c).sum();
            if (n - 1.0).abs() > crate::hopf::NORMALIZATION_TOL {
                return Err(Error::NotNormalized(n));
            }
            shadow.evaluate(&x.map(|c| Complex64::new(c, 0.0)))
        })
        .collect()
}

/// Coefficient matrix of the action of `d q` on bihomogeneous polynomials of
/// bidegree `(p, r)`, indexed by `a * (r + 1) + b` for `alpha^a beta^(p-a)
/// alpha_bar^b beta_bar^(r-b)`; row = source monomial, column = image monomial.
fn bidegree_action(action: &SpinAction, p: u8, r: u8) -> Vec<Vec<Scalar>> {
    let hol = action.holomorphic_matrix(p);
    let anti: Vec<Vec<Scalar>> = action
        .holomorphic_matrix(r)
        .into_iter()
        .map(|row| row.into_iter().map(|c| c.conj()).collect())
        .collect();
    let w = r as usize + 1;
    let size = (p as usize + 1) * w;
    let mut out = vec![vec![Scalar::zero(); size]; size];
    for a in 0..=p as usize {
        for b in 0..w {
            let row = &mut out[a * w + b];
            for (i, h) in hol[a].iter().enumerate() {
                if h.is_zero() {
                    continue;
                }
                for (j, g) in anti[b].iter().enumerate() {
                    if !g.is_zero() {
                        row[i * w + j] += &(h * g);
                    }
                }
            }
        }
    }
    out
}

fn bidegree_index(m: &Monomial, r: u8) -> usize {
    m.0[0] as usize * (r as usize + 1) + m.0[1] as usize
}

fn bidegree_monomial(idx: usize, p: u8, r: u8) -> Monomial {
    let w = r as usize + 1;
    let (a, b) = ((idx / w) as u8, (idx % w) as u8);
    Monomial([a, b, p - a, r - b])
}

/// `sum_g (D/d_g)^k M(d_g g)` with `D` the lcm of the `d_g`: the group sum of
/// the bidegree action, scaled to stay integral.
fn bidegree_projector(p: u8, r: u8) -> Result<Vec<Vec<Scalar>>> {
    let k = p as u32 + r as u32;
    let size = (p as usize + 1) * (r as usize + 1);
    let actions: Vec<(SpinAction, BigInt)> =
        groups().binary.iter().map(SpinAction::integral).collect();
    let lcm = actions
        .iter()
        .fold(BigInt::from(1), |acc, (_, d)| acc.lcm(d));
    let mut sum = vec![vec![Scalar::zero(); size]; size];
    for (action, den) in &actions {
        let factor = Scalar::from_bigint((&lcm / den).pow(k));
        let m = bidegree_action(action, p, r);
        for (srow, mrow) in sum.iter_mut().zip(m) {
            for (s, c) in srow.iter_mut().zip(mrow) {
                if !c.is_zero() {
                    *s += &(&c * &factor);
                }
            }
        }
    }
    Ok(sum)
}

/// Rank of the group average of the full harmonic lattice of degree `k`,
/// computed one bidegree at a time. Exact for `k <= 12`, floating beyond.
pub fn reynolds_rank_oracle(k: u64) -> Result<usize> {
    reynolds_rank_oracle_with(k, k <= ORACLE_MAX_EXACT_K)
}

pub fn reynolds_rank_oracle_with(k: u64, exact: bool) -> Result<usize> {
    if k % 2 == 1 {
        return Err(Error::OddK(k));
    }
    let lattice = lifted_lattice(k as u32)?;
    let half = (k / 2) as i32;
    let mut total = 0;
    for n in -half..=half {
        let p = (half + n) as u8;
        let r = (half - n) as u8;
        let proj = bidegree_projector(p, r)?;
        let rows: Vec<&Poly> = lattice
            .modes
            .iter()
            .filter(|((_, m), _)| *m == n)
            .map(|(_, f)| f)
            .collect();
        let size = proj.len();
        let averaged: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|f| {
                let mut out = vec![Scalar::zero(); size];
                for (mon, c) in f.terms() {
                    for (o, pc) in out.iter_mut().zip(&proj[bidegree_index(mon, r)]) {
                        if !pc.is_zero() {
                            *o += &(c * pc);
                        }
                    }
                }
                out
            })
            .collect();
        total += if exact {
            let polys: Vec<Poly> = averaged
                .into_iter()
                .map(|v| {
                    Poly::from_terms(
                        Chart::Cplx,
                        v.into_iter()
                            .enumerate()
                            .map(|(i, c)| (bidegree_monomial(i, p, r), c)),
                    )
                })
                .collect();
            exact_rank(&polys)?.rank
        } else {
            let mut mat = DMatrix::<Complex64>::zeros(averaged.len(), size);
            for (i, v) in averaged.iter().enumerate() {
                let norm = v.iter().map(|c| c.to_complex().norm()).fold(0.0, f64::max);
                if norm == 0.0 {
                    continue;
                }
                for (j, c) in v.iter().enumerate() {
                    mat[(i, j)] = c.to_complex() / norm;
                }
            }
            complex_matrix_rank(mat, FLOAT_RANK_TOL)
        };
    }
    Ok(total)
}

/// The same oracle computed the slow way: average every lattice element with
/// [`crate::icosa::reynolds_s3`] and take the exact rank.
pub fn reynolds_rank_direct(k: u64) -> Result<usize> {
    let lattice = lifted_lattice(k as u32)?;
    let averaged = lattice
        .modes
        .values()
        .map(|f| crate::icosa::reynolds_s3(f, &groups().binary))
        .collect::<Result<Vec<_>>>()?;
    Ok(exact_rank(&averaged)?.rank)
}

/// Root mean square of sampled values, used to normalize exported samples.
pub fn sample_rms(values: &[Complex64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    (values.iter().map(|v| v.norm_sqr()).sum::<f64>() / values.len() as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::is_vertical;

    #[test]
    fn dimension_formula() {
        assert_eq!(dim_k_modes(0), 1);
        assert_eq!(dim_k_modes(12), 13);
        assert_eq!(dim_k_modes(14), 0);
        assert_eq!(dim_k_modes(7), 0);
        for k in [2, 4, 6, 8, 10] {
            assert_eq!(dim_k_modes(k), 0);
        }
    }

    #[test]
    fn trivial_families() {
        let f0 = build_k_modes(0).unwrap();
        assert_eq!(f0.basis(), vec![Poly::one(Chart::Cplx)]);
        assert!(f0.report.passed());
        let f2 = build_k_modes(2).unwrap();
        assert_eq!(f2.dim(), 0);
        assert!(f2.report.passed());
        assert_eq!(build_k_modes(3).unwrap_err(), Error::OddK(3));
    }

    #[test]
    fn degree_twelve_family() {
        let fam = build_k_modes(12).unwrap();
        assert_eq!(fam.dim(), 13);
        assert_eq!(fam.vertical_modes.len(), 1);
        assert!(is_vertical(&fam.vertical_modes[0]));
        let r = &fam.report;
        assert_eq!(r.method, Verification::Exact);
        assert_eq!(r.s2_fixed, vec![60]);
        assert_eq!(r.s2_negated, vec![0]);
        assert_eq!(r.s3_fixed, vec![120; 13]);
        assert_eq!(r.rank, 13);
        assert!(r.passed());
    }

    #[test]
    fn projector_oracle_matches_direct_average() {
        for k in [0u64, 2, 4] {
            assert_eq!(
                reynolds_rank_oracle(k).unwrap(),
                reynolds_rank_direct(k).unwrap(),
                "k = {k}"
            );
        }
        assert_eq!(reynolds_rank_oracle(4).unwrap(), 0);
        assert_eq!(reynolds_rank_oracle_with(0, false).unwrap(), 1);
    }

    #[test]
    fn evaluation() {
        let one = Poly::one(Chart::Cplx);
        let pts = sample_s3_points(5);
        assert!(evaluate_mode(&one, &pts)
            .unwrap()
            .iter()
            .all(|v| (v - Complex64::new(1.0, 0.0)).norm() < 1e-15));
        let bad = [(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))];
        assert!(matches!(
            evaluate_mode(&one, &bad),
            Err(Error::NotNormalized(_))
        ));
        // lift of z is beta beta_bar - alpha alpha_bar
        let z = Poly::var(Chart::Real3, crate::poly::Var::Z).unwrap();
        let lz = lift(&z).unwrap();
        let v =
            evaluate_mode(&lz, &[(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))]).unwrap();
        assert!((v[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn vertical_modes_are_constant_on_fibres_and_invariant_numerically() {
        let fam = build_k_modes(12).unwrap();
        let f = &fam.vertical_modes[0];
        let phase = Complex64::from_polar(1.0, 0.7);
        for (a, b) in sample_s3_points(20) {
            let v = evaluate_mode(f, &[(a, b), (a * phase, b * phase)]).unwrap();
            assert!((v[0] - v[1]).norm() <= 1e-10 * v[0].norm().max(1.0));
        }
        let pts = sample_s3_points(1000);
        for p in fam.twisted_basis.values() {
            let base = evaluate_mode(p, &pts).unwrap();
            let fmax = base.iter().map(|v| v.norm()).fold(0.0, f64::max);
            for q in &groups().binary {
                let action = SpinAction::new(q);
                let moved: Vec<_> = pts
                    .iter()
                    .map(|&(a, b)| action.act_on_point(a, b))
                    .collect();
                let vals = evaluate_mode(p, &moved).unwrap();
                assert!(vals
                    .iter()
                    .zip(&base)
                    .all(|(v, w)| (v - w).norm() <= 1e-9 * fmax));
            }
            assert_eq!(float_s3_fixed(p, &pts[..100]).unwrap(), 120);
        }
        assert_eq!(
            float_s2_signs(&fam.s2_modes[0], &sample_s2_points(50)).unwrap(),
            (60, 0)
        );
    }

    #[test]
    fn sample_points_are_normalized() {
        for (a, b) in sample_s3_points(100) {
            assert!((a.norm_sqr() + b.norm_sqr() - 1.0).abs() < 1e-12);
        }
        for x in sample_s2_points(100) {
            assert!((x.iter().map(|c| c * c).sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}
