//! Plain-text key-value config files for the group catalog.
//!
//! Recognised keys: `group`, `b_scale`, `sigma` with values `identity`,
//! `theta`, `conj_by:<matrix>`, `complex_conj`; matrices are row-major
//! comma-separated decimals.

use num_complex::Complex64;

use super::algebra::{build_catalog, ReductiveAlgebra};
use super::group::{Automorphism, GroupMap};
use crate::error::{Error, Result};
use crate::numerics::matfun::CMat;

/// Parsed group configuration: the algebra together with σ.
#[derive(Debug, Clone)]
pub struct GroupConfig {
    pub algebra: ReductiveAlgebra,
    pub sigma: Automorphism,
}

/// Parse a matrix literal `a,b,c,d` (row-major, square).
pub fn parse_matrix(text: &str, line: usize) -> Result<CMat> {
    let vals: Vec<f64> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::parse(line, format!("bad matrix entry '{}'", t.trim())))
        })
        .collect::<Result<_>>()?;
    let n = (vals.len() as f64).sqrt().round() as usize;
    if n * n != vals.len() || n == 0 {
        return Err(Error::parse(line, "matrix literal is not square"));
    }
    Ok(CMat::from_fn(n, n, |i, j| Complex64::new(vals[i * n + j], 0.0)))
}

/// Parse a group catalog config from text.
pub fn parse_group_config(text: &str) -> Result<GroupConfig> {
    let mut group: Option<String> = None;
    let mut b_scale = 1.0_f64;
    let mut sigma_spec: Option<(String, usize)> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let n = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(n, "expected key = value"))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "group" => group = Some(value.to_string()),
            "b_scale" => {
                b_scale = value
                    .parse()
                    .map_err(|_| Error::parse(n, format!("bad b_scale '{value}'")))?
            }
            "sigma" => sigma_spec = Some((value.to_string(), n)),
            other => return Err(Error::parse(n, format!("unknown key '{other}'"))),
        }
    }

    let group = group.ok_or_else(|| Error::parse(0, "missing 'group' key"))?;
    let algebra = build_catalog(&group, b_scale)?;
    let sigma = match sigma_spec {
        None => Automorphism::identity(&algebra),
        Some((spec, line)) => {
            let map = if spec == "identity" {
                GroupMap::Identity
            } else if spec == "theta" {
                GroupMap::Theta
            } else if spec == "complex_conj" {
                GroupMap::ComplexConj
            } else if let Some(rest) = spec.strip_prefix("conj_by:") {
                GroupMap::ConjBy(parse_matrix(rest, line)?)
            } else {
                return Err(Error::parse(line, format!("unknown sigma spec '{spec}'")));
            };
            Automorphism::new(&algebra, map)?
        }
    };

    Ok(GroupConfig { algebra, sigma })
}
