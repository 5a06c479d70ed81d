//! The eight acceptance criteria, one pass/fail line each.
//!
//! Runs without the libtest harness so the summary always prints:
//! `cargo test -p pds-core --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pds_core::harmonics::{lifted_lattice, solid_harmonics};
use pds_core::hopf::{lift, twist_lower, twist_n, twist_raise, z_eigenvalue, z_operator};
use pds_core::icosa::{
    groups, is_invariant_s2, is_invariant_s3, orbit, reynolds_s2, sign_under_s2,
};
use pds_core::linalg::exact_rank;
use pds_core::maxwell::{directions_scale_invariance_check, maxwell_from_vectors, Direction};
use pds_core::orbifold::{
    config_mode, corner_e2, corner_f3, corner_v5, dim_v, enumerate_basis_configs,
    forced_corner_counts, Arc, CanonicalPolicy, HalfPoint, OrbifoldConfig, WholePoint,
};
use pds_core::pds::{build_k_modes, dim_k_modes, reynolds_rank_oracle};
use pds_core::poly::monomials_of_degree;
use pds_core::{Chart, Monomial, Poly, Rational, Scalar, Var};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn real3(var: Var) -> Poly {
    Poly::var(Chart::Real3, var).unwrap()
}

fn cplx_mono(e: [u8; 4], c: i64) -> Poly {
    Poly::monomial(Chart::Cplx, Monomial(e), Scalar::from_int(c))
}

fn dimension_agreement() -> Outcome {
    let mut summary = Vec::new();
    for k in [0u64, 2, 4, 6, 8, 10, 12] {
        let family = build_k_modes(k).map_err(err)?;
        let formula = dim_k_modes(k) as usize;
        let oracle = reynolds_rank_oracle(k).map_err(err)?;
        check(family.report.passed(), || {
            format!("k={k}: family verification failed")
        })?;
        check(
            family.report.rank == formula && oracle == formula && family.dim() == formula,
            || {
                format!(
                    "k={k}: built {} formula {formula} oracle {oracle}",
                    family.report.rank
                )
            },
        )?;
        summary.push(format!("k={k}:{formula}"));
    }
    check(dim_k_modes(12) == 13 && dim_k_modes(0) == 1, || {
        "anchor values".into()
    })?;
    for k in [2, 4, 8] {
        check(dim_k_modes(k) == 0, || format!("k={k} should be empty"))?;
    }
    Ok(summary.join(" "))
}

fn dimension_table() -> Outcome {
    for (l, d) in [(6, 1), (10, 1), (15, 1), (30, 2), (60, 3), (14, 0)] {
        check(dim_v(l) == d, || {
            format!("dim V^{l} = {} expected {d}", dim_v(l))
        })?;
    }
    let mut feasible = 0;
    for l in 0..=60u64 {
        match forced_corner_counts(l) {
            Ok(f) => {
                feasible += 1;
                check(dim_v(l) == 1 + f.budget, || {
                    format!("l={l}: dim {} vs 1 + B = {}", dim_v(l), 1 + f.budget)
                })?;
                let degree = 6 * f.c10 as u64 + 10 * f.c6 as u64 + 15 * f.c4 as u64 + 30 * f.budget;
                check(degree == l, || {
                    format!("l={l}: fractional points give degree {degree}")
                })?;
            }
            Err(_) => check(dim_v(l) == 0, || {
                format!("l={l}: infeasible but dim {}", dim_v(l))
            })?,
        }
    }
    Ok(format!("{feasible} feasible degrees in 0..=60"))
}

fn worked_examples() -> Outcome {
    let (x, y, z) = (real3(Var::X), real3(Var::Y), real3(Var::Z));
    let lifted = lift(&(&(&x * &x) - &(&y * &y))).map_err(err)?;
    let expected = &cplx_mono([2, 0, 0, 2], 2) + &cplx_mono([0, 2, 2, 0], 2);
    check(lifted == expected, || format!("lift(x^2 - y^2) = {lifted}"))?;

    let zonal = &(&(&x * &x) + &(&y * &y)) - &(&z * &z).scale(&Scalar::from_int(2));
    let lifted = lift(&zonal).map_err(err)?;
    let target =
        &(&cplx_mono([2, 2, 0, 0], 1) + &cplx_mono([1, 1, 1, 1], -4)) + &cplx_mono([0, 0, 2, 2], 1);
    let ratio = lifted
        .proportionality(&target)
        .ok_or_else(|| format!("lift(x^2 + y^2 - 2z^2) = {lifted} is not proportional"))?;
    Ok(format!("zonal ratio {ratio}"))
}

fn operator_algebra() -> Outcome {
    let mut checked = 0;
    for d in 0..=6 {
        for m in monomials_of_degree(Chart::Cplx, d) {
            let p = Poly::monomial(Chart::Cplx, m, Scalar::one());
            let raise = twist_raise(&p).map_err(err)?;
            let lower = twist_lower(&p).map_err(err)?;
            let zr = &z_operator(&raise).map_err(err)?
                - &twist_raise(&z_operator(&p).map_err(err)?).map_err(err)?;
            let zl = &z_operator(&lower).map_err(err)?
                - &twist_lower(&z_operator(&p).map_err(err)?).map_err(err)?;
            check(zr == raise, || format!("[Z, raise] on {p}"))?;
            check(zl == -&lower, || format!("[Z, lower] on {p}"))?;
            check(
                raise.laplacian() == twist_raise(&p.laplacian()).map_err(err)?,
                || format!("[Lap, raise] on {p}"),
            )?;
            check(
                lower.laplacian() == twist_lower(&p.laplacian()).map_err(err)?,
                || format!("[Lap, lower] on {p}"),
            )?;
            checked += 1;
        }
    }
    for k in [0u32, 2, 4, 6] {
        let lattice = lifted_lattice(k).map_err(err)?;
        let half = (k / 2) as i32;
        for m in -half..=half {
            let vertical = lattice.get(m, 0).unwrap();
            check(twist_n(vertical, half + 1).map_err(err)?.is_zero(), || {
                format!("k={k} m={m}: raise^(k/2+1) != 0")
            })?;
            check(twist_n(vertical, -half - 1).map_err(err)?.is_zero(), || {
                format!("k={k} m={m}: lower^(k/2+1) != 0")
            })?;
            let partner = lattice.get(-m, 0).unwrap();
            for n in 0..=half {
                let lhs = lattice.get(m, n).unwrap().conjugate();
                let rhs = twist_n(partner, -n).map_err(err)?;
                check(lhs == rhs, || {
                    format!("k={k}: conj(Y(m,{n})) != Y(-m,{}) ", -n)
                })?;
                check(z_eigenvalue(lattice.get(m, n).unwrap()) == Some(n), || {
                    format!("k={k}: twist of ({m},{n})")
                })?;
            }
        }
    }
    Ok(format!("{checked} monomials, lattices k <= 6"))
}

fn random_vectors(rng: &mut ChaCha8Rng) -> Vec<[Scalar; 3]> {
    let l = rng.gen_range(0..=8);
    (0..l)
        .map(|_| loop {
            let v: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-4..=4));
            if v != [0, 0, 0] {
                let phi = rng.gen_bool(0.3);
                return v.map(|c| {
                    let s = Scalar::from_int(c);
                    if phi {
                        &s * &Scalar::phi()
                    } else {
                        s
                    }
                });
            }
        })
        .collect()
}

fn maxwell_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..50 {
        let vs = random_vectors(&mut rng);
        let l = vs.len();
        let q = maxwell_from_vectors(&vs);
        check(q.is_harmonic(), || format!("case {case}: not harmonic"))?;
        check(q.is_homogeneous() && q.degree() == Some(l as u32), || {
            format!("case {case}: degree")
        })?;
        let mut shuffled = vs.clone();
        shuffled.shuffle(&mut rng);
        check(maxwell_from_vectors(&shuffled) == q, || {
            format!("case {case}: order dependence")
        })?;
        if l >= 2 {
            let mut flipped = vs.clone();
            for i in [0, 1] {
                flipped[i] = flipped[i].clone().map(|c| -c);
            }
            check(maxwell_from_vectors(&flipped) == q, || {
                format!("case {case}: two flips")
            })?;
            flipped[0] = flipped[0].clone().map(|c| -c);
            check(maxwell_from_vectors(&flipped) == -&q, || {
                format!("case {case}: one flip")
            })?;
        }
        let scales: Vec<Scalar> = (0..l)
            .map(|_| Scalar::frac(rng.gen_range(1..=5), rng.gen_range(1..=5)))
            .collect();
        check(
            directions_scale_invariance_check(&vs, &scales).map_err(err)?,
            || format!("case {case}: scale law"),
        )?;
    }
    Ok("50 seeded multisets with l <= 8".into())
}

fn orbit_sizes() -> Outcome {
    let g = &groups().rotations;
    let third = Rational::new(1.into(), 3.into());
    let cases = [
        ("vertex", corner_v5(), 6),
        ("face", corner_f3(), 10),
        ("edge", corner_e2(), 15),
        (
            "boundary",
            HalfPoint::new(Arc::E2V5, third.clone()).vector(),
            30,
        ),
        (
            "generic",
            WholePoint::new([
                third.clone(),
                Rational::new(1.into(), 2.into()),
                Rational::from_integer(1.into()),
            ])
            .vector(),
            60,
        ),
    ];
    let mut sizes = Vec::new();
    for (name, v, expected) in cases {
        let n = orbit(&Direction::new(v).map_err(err)?, g).len();
        check(n == expected, || {
            format!("{name} orbit has {n} directions, expected {expected}")
        })?;
        sizes.push(n.to_string());
    }
    Ok(sizes.join("/"))
}

fn invariance_with_plus_sign() -> Outcome {
    let mut count = 0;
    for l in [6u64, 10, 12, 15, 16, 18, 30] {
        for (c, f) in enumerate_basis_configs(l).map_err(err)? {
            check(f.is_harmonic() && f.degree() == Some(l as u32), || {
                format!("l={l}: mode not harmonic of degree l")
            })?;
            for (i, r) in groups().rotations.iter().enumerate() {
                let sign = sign_under_s2(r, &f).map_err(err)?;
                check(sign == Some(1), || {
                    format!("l={l} config {c:?}: rotation {i} gives sign {sign:?}")
                })?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} modes fixed by all 60 rotations"))
}

fn flagship_degree_six() -> Outcome {
    let config = OrbifoldConfig::corners(1, 0, 0);
    let f = config_mode(&config, CanonicalPolicy::Reject).map_err(err)?;
    check(f.is_harmonic() && f.degree() == Some(6), || {
        "degree-6 mode not harmonic".into()
    })?;
    for r in &groups().rotations {
        check(is_invariant_s2(r, &f).map_err(err)?, || {
            "degree-6 mode not I-invariant".into()
        })?;
    }
    // uniqueness: averaging every degree-6 harmonic over I leaves a line, spanned by f
    let averaged = solid_harmonics(6)
        .polys
        .iter()
        .map(|p| reynolds_s2(p, &groups().rotations))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    check(exact_rank(&averaged).map_err(err)?.rank == 1, || {
        "invariant degree-6 space is not a line".into()
    })?;
    let mut with_f = averaged.clone();
    with_f.push(f.clone());
    check(exact_rank(&with_f).map_err(err)?.rank == 1, || {
        "f is not in the invariant line".into()
    })?;

    let family = build_k_modes(12).map_err(err)?;
    check(
        family.s2_modes.len() == 1 && family.s2_modes[0].proportional_to(&f),
        || "k=12 family uses another mode".into(),
    )?;
    check(
        family.vertical_modes[0] == lift(&family.s2_modes[0]).map_err(err)?,
        || "vertical mode is not the lift".into(),
    )?;
    let basis = family.basis();
    check(
        basis.len() == 13 && exact_rank(&basis).map_err(err)?.rank == 13,
        || "twisted family rank".into(),
    )?;
    for p in &basis {
        check(p.is_harmonic() && p.degree() == Some(12), || {
            "twisted mode not harmonic of degree 12".into()
        })?;
        for q in &groups().binary {
            check(is_invariant_s3(q, p).map_err(err)?, || {
                "twisted mode not I*-invariant".into()
            })?;
        }
    }
    Ok("unique V^6 line, 13 invariant k=12 modes".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("dimension three-way agreement", dimension_agreement),
        ("dimension table", dimension_table),
        ("worked examples", worked_examples),
        ("operator algebra", operator_algebra),
        ("Maxwell suite", maxwell_suite),
        ("orbit-size law", orbit_sizes),
        ("I-invariance with sign +1", invariance_with_plus_sign),
        ("degree-6 flagship mode", flagship_degree_six),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {} {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {}/8 passed", 8 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
