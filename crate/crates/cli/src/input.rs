//! Reading the file formats accepted on the command line.

use crate::CliError;
use serde::Deserialize;
use std::path::Path;
use troprbm::exact::{parse_rational, Rational};
use troprbm::stats::{ExpParams, MixtureParams};
use troprbm::tropical::TropParams;

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn rationals(values: &[String], what: &str) -> Result<Vec<Rational>, CliError> {
    values
        .iter()
        .map(|s| parse_rational(s).map_err(|e| CliError::Invalid(format!("{what}: {e}"))))
        .collect()
}

fn matrix(rows: &[Vec<String>], what: &str) -> Result<Vec<Vec<Rational>>, CliError> {
    rows.iter().map(|r| rationals(r, what)).collect()
}

fn json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TropParamsFile {
    #[serde(rename = "W")]
    w: Vec<Vec<String>>,
    b: Vec<String>,
    c: Vec<String>,
}

/// `{"W": [[..]], "b": [..], "c": [..]}` with rationals as strings.
pub fn trop_params(path: &Path) -> Result<TropParams, CliError> {
    let f: TropParamsFile = json(path)?;
    TropParams::new(matrix(&f.w, "W")?, rationals(&f.b, "b")?, rationals(&f.c, "c")?)
        .map_err(|e| CliError::Invalid(e.to_string()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpParamsFile {
    beta: Vec<String>,
    gamma: Vec<String>,
    omega: Vec<Vec<String>>,
}

/// `{"beta": [..], "gamma": [..], "omega": [[..]]}`.
pub fn exp_params(path: &Path) -> Result<ExpParams, CliError> {
    let f: ExpParamsFile = json(path)?;
    ExpParams::new(
        rationals(&f.beta, "beta")?,
        rationals(&f.gamma, "gamma")?,
        matrix(&f.omega, "omega")?,
    )
    .map_err(|e| CliError::Invalid(e.to_string()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MixtureFile {
    lambda: String,
    delta: Vec<String>,
    epsilon: Vec<String>,
}

/// `{"lambda": "1/3", "delta": [..], "epsilon": [..]}`.
pub fn mixture_params(path: &Path) -> Result<MixtureParams, CliError> {
    let f: MixtureFile = json(path)?;
    let lambda = parse_rational(&f.lambda).map_err(|e| CliError::Invalid(format!("lambda: {e}")))?;
    MixtureParams::new(lambda, rationals(&f.delta, "delta")?, rationals(&f.epsilon, "epsilon")?)
        .map_err(|e| CliError::Invalid(e.to_string()))
}

/// `1,2` or `12` style list of 1-based coordinates.
pub fn split(text: &str) -> Result<Vec<usize>, CliError> {
    let parts: Vec<&str> = if text.contains(',') {
        text.split(',').map(str::trim).collect()
    } else {
        text.split("").filter(|s| !s.is_empty()).collect()
    };
    parts
        .iter()
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| CliError::Invalid(format!("bad coordinate {p:?} in split {text:?}")))
        })
        .collect()
}
