//! Resolving map, matrix and function arguments: built-in names first,
//! then JSON files.

use std::fs;
use std::path::Path;

use koopman_forge::{AnyMap, DoublyStochasticMatrix, Error, Interval, PiecewiseAffineMap, PiecewiseTranslation, Rat, StepFunction};

use crate::CliError;

pub fn builtin_map(name: &str) -> Option<Result<AnyMap, CliError>> {
    let map: AnyMap = match name {
        "identity" => PiecewiseTranslation::identity().into(),
        "halfswap" => PiecewiseTranslation::half_swap().into(),
        "doubling" => PiecewiseAffineMap::doubling().into(),
        "tent" => PiecewiseAffineMap::tent().into(),
        _ => {
            let r = name.strip_prefix("rotation:")?;
            return Some(r.parse::<Rat>().map(|r| PiecewiseTranslation::rotation(&r).into()).map_err(CliError::from));
        }
    };
    Some(Ok(map))
}

pub fn load_map(arg: &str) -> Result<AnyMap, CliError> {
    if let Some(map) = builtin_map(arg) {
        return map;
    }
    let text = read(arg)?;
    Ok(AnyMap::from_json(&text)?)
}

pub fn load_matrix(arg: &str) -> Result<DoublyStochasticMatrix, CliError> {
    let text = read(arg)?;
    // validate through the raw rows first so size errors read naturally
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("{arg}: {e}")))?;
    let rows: Vec<Vec<Rat>> = serde_json::from_value(value.get("entries").cloned().unwrap_or_default())
        .map_err(|e| CliError::invalid(format!("{arg}: entries: {e}")))?;
    DoublyStochasticMatrix::new(rows)?;
    serde_json::from_value(value).map_err(|e| CliError::invalid(format!("{arg}: {e}")))
}

/// A single function or a family of labelled functions.
pub enum FunctionArg {
    Single(String, StepFunction),
    Family(Vec<(String, StepFunction)>),
}

pub fn indicator_label(n: u32, j: u64) -> String {
    format!("1_I({n},{j})")
}

pub fn load_function(arg: &str) -> Result<FunctionArg, CliError> {
    match arg {
        "rademacher" => return Ok(FunctionArg::Single(arg.into(), StepFunction::rademacher())),
        "one" => return Ok(FunctionArg::Single(arg.into(), StepFunction::one())),
        _ => {}
    }
    if let Some(rest) = arg.strip_prefix("dyadic:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let num = |s: &str| {
            s.parse::<u32>()
                .map_err(|_| CliError::invalid(format!("bad number {s:?} in {arg:?}")))
        };
        return match parts.as_slice() {
            [level] => {
                let level = num(level)?;
                let family = (0..=level)
                    .flat_map(|n| (1..=1u64 << n).map(move |j| (n, j)))
                    .map(|(n, j)| Ok((indicator_label(n, j), indicator(n, j)?)))
                    .collect::<Result<_, CliError>>()?;
                Ok(FunctionArg::Family(family))
            }
            [j, n] => {
                let (j, n) = (num(j)?, num(n)?);
                Ok(FunctionArg::Single(indicator_label(n, j.into()), indicator(n, j.into())?))
            }
            _ => Err(CliError::invalid(format!("expected dyadic:L or dyadic:j:n, got {arg:?}"))),
        };
    }
    let text = read(arg)?;
    let f: StepFunction = serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("{arg}: {e}")))?;
    Ok(FunctionArg::Single(arg.into(), f))
}

fn indicator(n: u32, j: u64) -> Result<StepFunction, CliError> {
    if n > 30 {
        return Err(Error::ResourceLimit { what: "level", requested: n as usize, limit: 30 }.into());
    }
    Ok(StepFunction::indicator(&Interval::dyadic(n, j)?))
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(Path::new(path)).map_err(|e| CliError::invalid(format!("{path}: {e}")))
}
