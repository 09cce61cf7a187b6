//! Experiment plan files: flat `key = value` text.
//!
//! ```text
//! # theorem-regime biregular run
//! family = biregular
//! a = 3
//! c1 = 1
//! c2 = 1
//! e = 0
//! kappa_grid = 1000,3000,10000,30000
//! replicates = 200
//! lambda11 = 1.0
//! lambda12 = 1.0
//! base_seed = 42
//! discard_unreachable = true
//! max_attempts = 1000
//! erased = false
//! ```
//!
//! `family` selects the preset: `biregular` takes `a`, `c1`, `c2` and
//! optional `e`; `powerlaw` takes `exponent`, `c1`, `c2` and optional
//! `jmax`, `e`. Unknown keys are rejected, as are keys that do not belong
//! to the chosen family.

use std::collections::BTreeMap;

use super::ExperimentPlan;
use crate::degree::Family;
use crate::error::ParseError;

/// Default base seed when a plan omits `base_seed`.
pub const DEFAULT_BASE_SEED: u64 = 0xF100D;
pub const DEFAULT_MAX_ATTEMPTS: u32 = 1000;

struct KeyTable {
    entries: BTreeMap<String, (usize, String)>,
}

impl KeyTable {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.entries.remove(key)
    }

    fn require(&mut self, key: &str) -> Result<(usize, String), ParseError> {
        self.take(key)
            .ok_or_else(|| ParseError::new(0, format!("missing required key '{key}'")))
    }
}

fn parse_value<T: std::str::FromStr>(
    key: &str,
    (line, raw): (usize, String),
) -> Result<T, ParseError> {
    raw.parse()
        .map_err(|_| ParseError::new(line, format!("bad value '{raw}' for key '{key}'")))
}

/// Parses a plan file. Errors name the offending key and line.
pub fn parse_plan(text: &str) -> Result<ExperimentPlan, ParseError> {
    let mut entries = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ParseError::new(line_no, "expected 'key = value'"));
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if entries
            .insert(key.clone(), (line_no, value))
            .is_some()
        {
            return Err(ParseError::new(line_no, format!("duplicate key '{key}'")));
        }
    }
    let mut table = KeyTable { entries };

    let family = build_family(&mut table)?;

    let (grid_line, grid_raw) = table.require("kappa_grid")?;
    let mut kappa_grid = Vec::new();
    for tok in grid_raw.split(',') {
        let tok = tok.trim();
        let v: u64 = tok
            .parse()
            .map_err(|_| ParseError::new(grid_line, format!("bad kappa '{tok}'")))?;
        kappa_grid.push(v);
    }
    if kappa_grid.is_empty() {
        return Err(ParseError::new(grid_line, "kappa_grid is empty"));
    }
    if !kappa_grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(ParseError::new(
            grid_line,
            "kappa_grid must be strictly increasing",
        ));
    }

    let replicates: u32 = parse_value("replicates", table.require("replicates")?)?;
    if replicates == 0 {
        return Err(ParseError::new(0, "replicates must be >= 1"));
    }

    let lambda11 = match table.take("lambda11") {
        Some(v) => parse_value("lambda11", v)?,
        None => 1.0,
    };
    let lambda12 = match table.take("lambda12") {
        Some(v) => parse_value("lambda12", v)?,
        None => 1.0,
    };
    if !(lambda11 > 0.0 && lambda12 > 0.0) {
        return Err(ParseError::new(0, "rates must be strictly positive"));
    }

    let base_seed = match table.take("base_seed") {
        Some(v) => parse_value("base_seed", v)?,
        None => DEFAULT_BASE_SEED,
    };
    let discard_unreachable = match table.take("discard_unreachable") {
        Some(v) => parse_value("discard_unreachable", v)?,
        None => true,
    };
    let max_attempts = match table.take("max_attempts") {
        Some(v) => parse_value("max_attempts", v)?,
        None => DEFAULT_MAX_ATTEMPTS,
    };
    let erased = match table.take("erased") {
        Some(v) => parse_value("erased", v)?,
        None => false,
    };

    if let Some((line, _)) = table.entries.values().next() {
        let key = table.entries.keys().next().unwrap().clone();
        return Err(ParseError::new(*line, format!("unknown key '{key}'")));
    }

    Ok(ExperimentPlan {
        family,
        kappa_grid,
        replicates,
        lambda11,
        lambda12,
        base_seed,
        discard_unreachable,
        max_attempts,
        erased,
    })
}

fn build_family(table: &mut KeyTable) -> Result<Family, ParseError> {
    let (fam_line, fam) = table.require("family")?;
    match fam.as_str() {
        "biregular" => {
            let a = parse_value("a", table.require("a")?)?;
            let c1 = parse_value("c1", table.require("c1")?)?;
            let c2 = parse_value("c2", table.require("c2")?)?;
            let e = match table.take("e") {
                Some(v) => parse_value("e", v)?,
                None => 0,
            };
            Ok(Family::Biregular {
                active_degree: a,
                cross_active: c1,
                cross_passive: c2,
                passive_degree: e,
            })
        }
        "powerlaw" => {
            let exponent = parse_value("exponent", table.require("exponent")?)?;
            let j_max = match table.take("jmax") {
                Some(v) => Some(parse_value("jmax", v)?),
                None => None,
            };
            let c1 = parse_value("c1", table.require("c1")?)?;
            let c2 = parse_value("c2", table.require("c2")?)?;
            let e = match table.take("e") {
                Some(v) => parse_value("e", v)?,
                None => 0,
            };
            Ok(Family::TruncatedPowerlaw {
                exponent,
                j_max,
                cross_active: c1,
                cross_passive: c2,
                passive_degree: e,
            })
        }
        other => Err(ParseError::new(
            fam_line,
            format!("unknown family '{other}' (expected 'biregular' or 'powerlaw')"),
        )),
    }
}

/// Serializes a plan in the format accepted by [`parse_plan`].
pub fn write_plan(plan: &ExperimentPlan) -> String {
    let mut out = String::new();
    match &plan.family {
        Family::Biregular {
            active_degree,
            cross_active,
            cross_passive,
            passive_degree,
        } => {
            out.push_str("family = biregular\n");
            out.push_str(&format!("a = {active_degree}\n"));
            out.push_str(&format!("c1 = {cross_active}\n"));
            out.push_str(&format!("c2 = {cross_passive}\n"));
            out.push_str(&format!("e = {passive_degree}\n"));
        }
        Family::TruncatedPowerlaw {
            exponent,
            j_max,
            cross_active,
            cross_passive,
            passive_degree,
        } => {
            out.push_str("family = powerlaw\n");
            out.push_str(&format!("exponent = {exponent}\n"));
            if let Some(j) = j_max {
                out.push_str(&format!("jmax = {j}\n"));
            }
            out.push_str(&format!("c1 = {cross_active}\n"));
            out.push_str(&format!("c2 = {cross_passive}\n"));
            out.push_str(&format!("e = {passive_degree}\n"));
        }
    }
    let grid: Vec<String> = plan.kappa_grid.iter().map(u64::to_string).collect();
    out.push_str(&format!("kappa_grid = {}\n", grid.join(",")));
    out.push_str(&format!("replicates = {}\n", plan.replicates));
    out.push_str(&format!("lambda11 = {}\n", plan.lambda11));
    out.push_str(&format!("lambda12 = {}\n", plan.lambda12));
    out.push_str(&format!("base_seed = {}\n", plan.base_seed));
    out.push_str(&format!(
        "discard_unreachable = {}\n",
        plan.discard_unreachable
    ));
    out.push_str(&format!("max_attempts = {}\n", plan.max_attempts));
    out.push_str(&format!("erased = {}\n", plan.erased));
    out
}
