use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use pds_core::hopf::{self, twist_n, z_eigenvalue};
use pds_core::icosa::{groups, is_invariant_s3, sign_under_s2};
use pds_core::io::{
    poly_to_json, read_poly, write_bundle, write_poly, write_samples_csv, write_samples_csv_s2,
};
use pds_core::orbifold::{
    dim_v, forced_corner_counts, CanonicalPolicy, ConfigJson, OrbifoldConfig,
};
use pds_core::pds::{
    build_from_configs, build_k_modes, dim_k_modes, evaluate_mode, evaluate_mode_s2,
    reynolds_rank_oracle_with, sample_rms, ORACLE_MAX_EXACT_K,
};
use pds_core::{Chart, Error, Poly};

use crate::Group;

#[derive(Debug)]
pub enum CliError {
    /// A mathematically impossible request.
    Domain(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Core(e) if e.is_domain() => 1,
            CliError::Core(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Core(e.into())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn non_negative(name: &str, v: i64) -> Result<u64> {
    u64::try_from(v)
        .map_err(|_| CliError::Domain(format!("--{name} must be non-negative, got {v}")))
}

pub fn dim(k: Option<i64>, l: Option<i64>, table: Option<i64>) -> Result<()> {
    if let Some(max) = table {
        let max = non_negative("table", max)?;
        println!("k,l,dimV,dimK");
        for l in 0..=max {
            println!("{},{l},{},{}", 2 * l, dim_v(l), dim_k_modes(2 * l));
        }
        return Ok(());
    }
    match (k, l) {
        (Some(k), _) => {
            let k = non_negative("k", k)?;
            if k % 2 == 1 {
                println!("0 (odd k: I* contains the antipodal map)");
            } else {
                println!("{}", dim_k_modes(k));
            }
        }
        (None, Some(l)) => println!("{}", dim_v(non_negative("l", l)?)),
        (None, None) => {
            return Err(CliError::Core(Error::InvalidConfig(
                "give one of --k, --l or --table".into(),
            )))
        }
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn construct(
    l: Option<i64>,
    config: Option<&Path>,
    keep_overfull: bool,
    out: &Path,
) -> Result<()> {
    let l = l.map(|v| non_negative("l", v)).transpose()?;
    let family = match config {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            let j: ConfigJson = serde_json::from_str(&text).map_err(Error::from)?;
            if let Some(l) = l {
                if l != j.l {
                    return Err(CliError::Core(Error::InvalidConfig(format!(
                        "--l {l} disagrees with the configuration's l = {}",
                        j.l
                    ))));
                }
            }
            let c = OrbifoldConfig::try_from(&j)?;
            let policy = if keep_overfull {
                CanonicalPolicy::Keep
            } else {
                CanonicalPolicy::Reject
            };
            build_from_configs(j.l, vec![c], policy)?
        }
        None => {
            let l = l.ok_or_else(|| {
                CliError::Core(Error::InvalidConfig("give --l or --config".into()))
            })?;
            forced_corner_counts(l)?;
            build_k_modes(2 * l)?
        }
    };
    let manifest = write_bundle(out, &family)?;
    let r = &family.report;
    println!(
        "l = {}, k = {}: {} S^2 mode(s), {} invariant k-mode(s)",
        r.l,
        r.k,
        family.s2_modes.len(),
        family.dim()
    );
    println!("verification: {:?}", r.method);
    println!("harmonic: {}", yes_no(r.harmonic));
    for (i, (plus, minus)) in r.s2_fixed.iter().zip(&r.s2_negated).enumerate() {
        println!(
            "S^2 mode {i}: invariant under {plus}/{} rotations ({minus} negate it)",
            r.rotations
        );
    }
    let min_fixed = r
        .s3_fixed
        .iter()
        .min()
        .copied()
        .unwrap_or(r.binary_elements);
    println!(
        "S^3 modes: each invariant under at least {min_fixed}/{} elements of I*",
        r.binary_elements
    );
    println!("rank: {} (expected {})", r.rank, r.expected_rank);
    println!(
        "wrote {} files to {}",
        manifest.twisted_basis.len() + 2 * manifest.s2_modes.len() + 1,
        out.display()
    );
    if !r.passed() {
        return Err(CliError::Core(Error::Internal(
            "verification failed".into(),
        )));
    }
    Ok(())
}

fn emit(p: &Poly, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => write_poly(path, p)?,
        None => println!("{}", poly_to_json(p)?),
    }
    Ok(())
}

pub fn lift(mode: &Path, out: Option<&Path>) -> Result<()> {
    let f = read_poly(mode)?;
    emit(&hopf::lift(&f)?, out)
}

pub fn twist(mode: &Path, n: i32, out: Option<&Path>) -> Result<()> {
    let f = read_poly(mode)?;
    emit(&twist_n(&f, n)?, out)
}

fn show_laplacian(p: &Poly) -> String {
    let lap = p.laplacian();
    match (lap.num_terms(), lap.degree()) {
        (1, Some(0)) => lap.coeff(&pds_core::Monomial::ONE).to_string(),
        _ => lap.to_string(),
    }
}

pub fn verify(mode: &Path, group: Option<Group>) -> Result<()> {
    let f = read_poly(mode)?;
    println!("chart: {}", f.chart());
    match f.degree() {
        Some(d) if f.is_homogeneous() => println!("degree: {d}"),
        Some(d) => println!("degree: inhomogeneous (max {d})"),
        None => println!("degree: zero polynomial"),
    }
    if f.is_harmonic() {
        println!("harmonic: yes");
    } else {
        println!("harmonic: no (Δ = {})", show_laplacian(&f));
    }
    if f.chart() == Chart::Cplx {
        match z_eigenvalue(&f) {
            Some(n) => println!("twist: {n}"),
            None => println!("twist: mixed"),
        }
    }
    let group = group.or(match f.chart() {
        Chart::Real3 => Some(Group::I),
        Chart::Cplx => Some(Group::Istar),
        Chart::Real4 => None,
    });
    match group {
        Some(Group::I) => {
            if f.chart() != Chart::Real3 {
                return Err(CliError::Core(Error::ChartMismatch(
                    Chart::Real3,
                    f.chart(),
                )));
            }
            let (mut plus, mut minus) = (0, 0);
            for r in &groups().rotations {
                match sign_under_s2(r, &f)? {
                    Some(1) => plus += 1,
                    Some(_) => minus += 1,
                    None => {}
                }
            }
            println!("invariant: {plus}/{}", groups().rotations.len());
            println!("negated: {minus}/{}", groups().rotations.len());
        }
        Some(Group::Istar) => {
            if f.chart() != Chart::Cplx {
                return Err(CliError::Core(Error::ChartMismatch(Chart::Cplx, f.chart())));
            }
            let mut fixed = 0;
            for q in &groups().binary {
                if is_invariant_s3(q, &f)? {
                    fixed += 1;
                }
            }
            println!("invariant: {fixed}/{}", groups().binary.len());
        }
        None => {}
    }
    Ok(())
}

fn parse_circle(arg: &str) -> Result<(Complex64, Complex64)> {
    let bad = || {
        CliError::Core(Error::Format(format!(
            "--circle expects ALPHA0,BETA0 such as 0.6,0.8i; got {arg:?}"
        )))
    };
    let (a, b) = arg.split_once(',').ok_or_else(bad)?;
    let a: Complex64 = a.trim().parse().map_err(|_| bad())?;
    let b: Complex64 = b.trim().parse().map_err(|_| bad())?;
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if norm == 0.0 {
        return Err(bad());
    }
    Ok((a / norm, b / norm))
}

fn random_unit<const N: usize>(rng: &mut ChaCha8Rng) -> [f64; N] {
    loop {
        let v: [f64; N] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 1e-6 {
            return v.map(|c| c / n);
        }
    }
}

fn s3_point(v: [f64; 4]) -> (Complex64, Complex64) {
    let (a, b) = (Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]));
    // renormalize so the sphere test holds to full precision
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    (a / n, b / n)
}

pub fn sample(
    mode: &Path,
    n: usize,
    seed: u64,
    out: Option<&Path>,
    circle: Option<&str>,
    normalize: bool,
) -> Result<()> {
    if n == 0 {
        return Err(CliError::Core(Error::InvalidConfig(
            "--n must be at least 1".into(),
        )));
    }
    let f = read_poly(mode)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut buf = Vec::new();
    match f.chart() {
        Chart::Cplx => {
            let points: Vec<(Complex64, Complex64)> = match circle {
                Some(arg) => {
                    let (a, b) = parse_circle(arg)?;
                    (0..n)
                        .map(|j| {
                            let phase = Complex64::from_polar(
                                1.0,
                                std::f64::consts::TAU * j as f64 / n as f64,
                            );
                            (a * phase, b * phase)
                        })
                        .collect()
                }
                None => (0..n)
                    .map(|_| s3_point(random_unit::<4>(&mut rng)))
                    .collect(),
            };
            let mut values = evaluate_mode(&f, &points)?;
            if normalize {
                normalize_values(&mut values);
            }
            write_samples_csv(&mut buf, &points, &values)?;
        }
        Chart::Real3 => {
            if circle.is_some() {
                return Err(CliError::Core(Error::ChartMismatch(
                    Chart::Cplx,
                    Chart::Real3,
                )));
            }
            let points: Vec<[f64; 3]> = (0..n).map(|_| random_unit::<3>(&mut rng)).collect();
            let mut values = evaluate_mode_s2(&f, &points)?;
            if normalize {
                normalize_values(&mut values);
            }
            write_samples_csv_s2(&mut buf, &points, &values)?;
        }
        Chart::Real4 => {
            return Err(CliError::Core(Error::ChartMismatch(
                Chart::Cplx,
                Chart::Real4,
            )))
        }
    }
    match out {
        Some(path) => fs::write(path, buf)?,
        None => io::stdout().write_all(&buf)?,
    }
    Ok(())
}

fn normalize_values(values: &mut [Complex64]) {
    let rms = sample_rms(values);
    if rms > 0.0 {
        for v in values.iter_mut() {
            *v /= rms;
        }
    }
}

pub fn oracle(k: i64, float: bool) -> Result<()> {
    let k = non_negative("k", k)?;
    if k % 2 == 1 {
        println!("k = {k}: 0 (odd k: I* contains the antipodal map)");
        return Ok(());
    }
    let exact = !float && k <= ORACLE_MAX_EXACT_K;
    let rank = reynolds_rank_oracle_with(k, exact)?;
    let formula = dim_k_modes(k);
    println!(
        "k = {k}: group-average rank {rank} ({}), formula {formula}: {}",
        if exact { "exact" } else { "floating" },
        if rank as u64 == formula {
            "agree"
        } else {
            "DISAGREE"
        }
    );
    if rank as u64 != formula {
        return Err(CliError::Core(Error::Internal(
            "oracle disagrees with the dimension formula".into(),
        )));
    }
    Ok(())
}
