//! File formats: polynomial JSON, mode-family bundles, and CSV samples.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbifold::ConfigJson;
use crate::pds::{PdsModeFamily, VerificationReport};
use crate::poly::{Chart, Monomial, Poly};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u8>,
    pub coeff: Scalar,
}

/// `{"chart": ..., "terms": [{"exp": [...], "coeff": {...}}]}`, terms in
/// ascending graded lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub chart: Chart,
    pub terms: Vec<TermJson>,
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        let n = p.chart().nvars();
        PolyJson {
            chart: p.chart(),
            terms: p
                .terms()
                .map(|(m, c)| TermJson {
                    exp: m.0[..n].to_vec(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolyJson> for Poly {
    type Error = Error;
    fn try_from(j: &PolyJson) -> Result<Poly> {
        let n = j.chart.nvars();
        let mut p = Poly::zero(j.chart);
        for t in &j.terms {
            if t.exp.len() != n {
                return Err(Error::Format(format!(
                    "term has {} exponents, chart {} needs {n}",
                    t.exp.len(),
                    j.chart
                )));
            }
            let mut e = [0u8; 4];
            e[..n].copy_from_slice(&t.exp);
            p.add_term(Monomial(e), &t.coeff);
        }
        Ok(p)
    }
}

pub fn poly_to_json(p: &Poly) -> Result<String> {
    Ok(serde_json::to_string_pretty(&PolyJson::from(p))?)
}

pub fn poly_from_json(text: &str) -> Result<Poly> {
    let j: PolyJson = serde_json::from_str(text)?;
    Poly::try_from(&j)
}

pub fn read_poly(path: &Path) -> Result<Poly> {
    poly_from_json(&fs::read_to_string(path)?)
}

pub fn write_poly(path: &Path, p: &Poly) -> Result<()> {
    fs::write(path, poly_to_json(p)? + "\n")?;
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwistedEntry {
    pub config: usize,
    pub n: i32,
    pub file: String,
}

/// Index of a written mode family.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub k: u64,
    pub l: u64,
    pub dimension: usize,
    pub configs: Vec<ConfigJson>,
    pub s2_modes: Vec<String>,
    pub vertical_modes: Vec<String>,
    pub twisted_basis: Vec<TwistedEntry>,
    pub report: VerificationReport,
}

pub const MANIFEST_FILE: &str = "manifest.json";

fn twist_label(n: i32) -> String {
    if n < 0 {
        format!("m{}", -n)
    } else {
        format!("p{n}")
    }
}

/// Writes `manifest.json` and one polynomial file per mode into `dir`.
pub fn write_bundle(dir: &Path, family: &PdsModeFamily) -> Result<Manifest> {
    fs::create_dir_all(dir)?;
    let mut s2_modes = Vec::new();
    let mut vertical_modes = Vec::new();
    for (i, (f, v)) in family
        .s2_modes
        .iter()
        .zip(&family.vertical_modes)
        .enumerate()
    {
        let s2 = format!("s2_{i}.json");
        let vert = format!("vertical_{i}.json");
        write_poly(&dir.join(&s2), f)?;
        write_poly(&dir.join(&vert), v)?;
        s2_modes.push(s2);
        vertical_modes.push(vert);
    }
    let mut twisted_basis = Vec::new();
    for ((config, n), p) in &family.twisted_basis {
        let file = format!("mode_{config}_{}.json", twist_label(*n));
        write_poly(&dir.join(&file), p)?;
        twisted_basis.push(TwistedEntry {
            config: *config,
            n: *n,
            file,
        });
    }
    let manifest = Manifest {
        k: family.k,
        l: family.k / 2,
        dimension: family.dim(),
        configs: family.configs.iter().map(ConfigJson::from).collect(),
        s2_modes,
        vertical_modes,
        twisted_basis,
        report: family.report.clone(),
    };
    fs::write(
        dir.join(MANIFEST_FILE),
        serde_json::to_string_pretty(&manifest)? + "\n",
    )?;
    Ok(manifest)
}

pub fn read_manifest(dir: &Path) -> Result<Manifest> {
    Ok(serde_json::from_str(&fs::read_to_string(
        dir.join(MANIFEST_FILE),
    )?)?)
}

/// Reads every twisted basis polynomial listed in a manifest.
pub fn read_bundle_modes(dir: &Path) -> Result<Vec<((usize, i32), Poly)>> {
    read_manifest(dir)?
        .twisted_basis
        .iter()
        .map(|e| {
            Ok((
                (e.config, e.n),
                read_poly(&PathBuf::from(dir).join(&e.file))?,
            ))
        })
        .collect()
}

pub const SAMPLE_HEADER: &str = "alpha_re,alpha_im,beta_re,beta_im,F_re,F_im";

/// CSV of sampled values on `S^3`.
pub fn write_samples_csv<W: Write>(
    mut out: W,
    points: &[(Complex64, Complex64)],
    values: &[Complex64],
) -> Result<()> {
    if points.len() != values.len() {
        return Err(Error::Internal("point and value counts differ".into()));
    }
    writeln!(out, "{SAMPLE_HEADER}")?;
    for ((a, b), v) in points.iter().zip(values) {
        writeln!(out, "{},{},{},{},{},{}", a.re, a.im, b.re, b.im, v.re, v.im)?;
    }
    Ok(())
}

pub const SAMPLE_HEADER_S2: &str = "x,y,z,F_re,F_im";

/// CSV of sampled values on `S^2`.
pub fn write_samples_csv_s2<W: Write>(
    mut out: W,
    points: &[[f64; 3]],
    values: &[Complex64],
) -> Result<()> {
    if points.len() != values.len() {
        return Err(Error::Internal("point and value counts differ".into()));
    }
    writeln!(out, "{SAMPLE_HEADER_S2}")?;
    for (x, v) in points.iter().zip(values) {
        writeln!(out, "{},{},{},{},{}", x[0], x[1], x[2], v.re, v.im)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::tests::arb_scalar;
    use proptest::prelude::*;

    #[test]
    fn json_shape() {
        let p = Poly::from_terms(
            Chart::Real3,
            [
                (Monomial([0, 0, 2, 0]), Scalar::from_int(-2)),
                (Monomial([2, 0, 0, 0]), Scalar::one()),
                (Monomial([0, 0, 0, 0]), Scalar::frac(1, 3)),
            ],
        );
        let text = poly_to_json(&p).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["chart"], "real3");
        let exps: Vec<_> = v["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t["exp"].clone())
            .collect();
        assert_eq!(
            exps,
            vec![
                serde_json::json!([0, 0, 0]),
                serde_json::json!([0, 0, 2]),
                serde_json::json!([2, 0, 0])
            ]
        );
        assert_eq!(v["terms"][0]["coeff"]["re_rat"], "1/3");
        assert!(poly_from_json(r#"{"chart":"cplx","terms":[{"exp":[1,2],"coeff":{"re_rat":"1/1","re_s5":"0/1","im_rat":"0/1","im_s5":"0/1"}}]}"#).is_err());
        assert!(poly_from_json("not json").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        let chart = prop_oneof![Just(Chart::Real3), Just(Chart::Real4), Just(Chart::Cplx)];
        (
            chart,
            proptest::collection::vec((proptest::array::uniform4(0u8..5), arb_scalar()), 0..12),
        )
            .prop_map(|(chart, terms)| {
                let n = chart.nvars();
                Poly::from_terms(
                    chart,
                    terms.into_iter().map(|(mut e, c)| {
                        for x in e.iter_mut().skip(n) {
                            *x = 0;
                        }
                        (Monomial(e), c)
                    }),
                )
            })
    }

    proptest! {
        #[test]
        fn json_round_trip(p in arb_poly()) {
            let text = poly_to_json(&p).unwrap();
            let back = poly_from_json(&text).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(poly_to_json(&back).unwrap(), text);
        }
    }
}
