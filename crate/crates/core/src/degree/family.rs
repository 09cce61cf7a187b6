//! Reproducible degree-sequence families for experiments.
//!
//! The presets produce specs that satisfy the generator preconditions at any
//! scale: parity and balance are enforced by deterministic repair steps that
//! bump or trim a minimal number of entries while preserving minimum degrees.

use rand::{Rng, RngExt};

use super::{validate_spec, DegreeSpec};
use crate::error::DegreeError;

/// A parametric spec family indexed by the scale `kappa`.
///
/// `Biregular` gives constant sequences: every active node has `active_degree`
/// links to active nodes and `cross_active` links to passive ones; every
/// passive node has `cross_passive` links to active nodes and `passive_degree`
/// to passive ones. `n1 = kappa` and `n2` is chosen so the bipartite margins
/// balance. Setting `cross_active = cross_passive = 0` yields the classical
/// single-type graph with no passive nodes.
///
/// `TruncatedPowerlaw` draws each active-to-active degree i.i.d. from
/// `P(j) ∝ j^-exponent` on `[3, j_max]` (default `j_max = max(3, kappa^(1/3))`)
/// and keeps the cross/passive parts biregular.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Biregular {
        active_degree: u32,
        cross_active: u32,
        cross_passive: u32,
        passive_degree: u32,
    },
    TruncatedPowerlaw {
        exponent: f64,
        j_max: Option<u32>,
        cross_active: u32,
        cross_passive: u32,
        passive_degree: u32,
    },
}

const MIN_KAPPA: u64 = 10;

/// Builds a concrete [`DegreeSpec`] from a family at scale `kappa`.
///
/// Randomness is consumed only by the power-law preset (one draw per active
/// node, in node order); biregular construction and all repair steps are
/// deterministic, so a fixed `rng` seed fixes the output.
pub fn make_family<R: Rng>(
    family: &Family,
    kappa: u64,
    rng: &mut R,
) -> Result<DegreeSpec, DegreeError> {
    if kappa < MIN_KAPPA {
        return Err(DegreeError::Family(format!(
            "kappa = {kappa} is below the minimum scale {MIN_KAPPA}"
        )));
    }
    let spec = match family {
        Family::Biregular {
            active_degree,
            cross_active,
            cross_passive,
            passive_degree,
        } => {
            if *active_degree < 3 {
                return Err(DegreeError::Family(format!(
                    "active degree {active_degree} is below the required minimum 3"
                )));
            }
            let n1 = usize::try_from(kappa).expect("kappa fits usize");
            let d11 = repaired_constant(n1, *active_degree);
            let (d12, d21) = cross_sequences(n1, *cross_active, *cross_passive)?;
            let n2 = d21.len();
            if *passive_degree > 0 && n2 == 0 {
                return Err(DegreeError::Family(
                    "passive_degree > 0 requires passive nodes".into(),
                ));
            }
            let d22 = repaired_constant(n2, *passive_degree);
            DegreeSpec::new(d11, d12, d21, d22)
        }
        Family::TruncatedPowerlaw {
            exponent,
            j_max,
            cross_active,
            cross_passive,
            passive_degree,
        } => {
            if exponent.is_nan() || *exponent <= 1.0 {
                return Err(DegreeError::Family(format!(
                    "power-law exponent must exceed 1, got {exponent}"
                )));
            }
            let n1 = usize::try_from(kappa).expect("kappa fits usize");
            let jm = match j_max {
                Some(j) => *j,
                None => ((kappa as f64).cbrt().floor() as u32).max(3),
            };
            if jm < 3 {
                return Err(DegreeError::Family(format!(
                    "j_max = {jm} leaves no room above the minimum degree 3"
                )));
            }
            if usize::try_from(jm).unwrap() >= n1 {
                return Err(DegreeError::Family(format!(
                    "j_max = {jm} is not realizable on {n1} nodes"
                )));
            }
            let mut d11 = sample_powerlaw(n1, 3, jm, *exponent, rng);
            if !d11.iter().map(|&x| u64::from(x)).sum::<u64>().is_multiple_of(2) {
                d11[0] += 1;
            }
            let (d12, d21) = cross_sequences(n1, *cross_active, *cross_passive)?;
            let n2 = d21.len();
            if *passive_degree > 0 && n2 == 0 {
                return Err(DegreeError::Family(
                    "passive_degree > 0 requires passive nodes".into(),
                ));
            }
            let d22 = repaired_constant(n2, *passive_degree);
            DegreeSpec::new(d11, d12, d21, d22)
        }
    };

    let report = validate_spec(&spec)?;
    if !report.all_passed() {
        return Err(DegreeError::Family(format!(
            "constructed spec fails validation: {}",
            report.failures(false).join(", ")
        )));
    }
    Ok(spec)
}

/// Constant sequence with the minimal parity repair: if `n * value` is odd,
/// the first entry is incremented (minima preserved).
fn repaired_constant(n: usize, value: u32) -> Vec<u32> {
    let mut seq = vec![value; n];
    if !(n as u64 * u64::from(value)).is_multiple_of(2) {
        seq[0] += 1;
    }
    seq
}

/// Crossing sequences d12 = const `c1` on n1 nodes and d21 = const `c2` on
/// `n2 = round(n1*c1/c2)` nodes, with the margin balance repaired by bumping
/// or trimming the leading d21 entries (never below 1).
fn cross_sequences(n1: usize, c1: u32, c2: u32) -> Result<(Vec<u32>, Vec<u32>), DegreeError> {
    let d12 = vec![c1; n1];
    if c1 == 0 {
        if c2 != 0 {
            return Err(DegreeError::Family(
                "cross_passive > 0 needs active-to-passive links to balance".into(),
            ));
        }
        return Ok((d12, Vec::new()));
    }
    if c2 == 0 {
        return Err(DegreeError::Family(
            "cross_active > 0 needs cross_passive >= 1 to balance".into(),
        ));
    }
    let total12 = n1 as u64 * u64::from(c1);
    let n2 = ((total12 as f64 / f64::from(c2)).round() as u64).max(1);
    let n2 = usize::try_from(n2).expect("n2 fits usize");
    let mut d21 = vec![c2; n2];
    let mut total21 = n2 as u64 * u64::from(c2);

    let mut i = 0;
    while total21 < total12 {
        d21[i % n2] += 1;
        total21 += 1;
        i += 1;
    }
    let mut i = 0;
    while total21 > total12 {
        if i >= n2 {
            return Err(DegreeError::Family(
                "cannot balance bipartite margins without dropping below degree 1".into(),
            ));
        }
        if d21[i] > 1 {
            d21[i] -= 1;
            total21 -= 1;
        } else {
            i += 1;
        }
    }
    Ok((d12, d21))
}

/// i.i.d. draws from the discrete truncated power law `P(j) ∝ j^-exponent`
/// on `[j_min, j_max]`, via inverse CDF on a precomputed table.
fn sample_powerlaw<R: Rng>(n: usize, j_min: u32, j_max: u32, exponent: f64, rng: &mut R) -> Vec<u32> {
    let weights: Vec<f64> = (j_min..=j_max)
        .map(|j| f64::from(j).powf(-exponent))
        .collect();
    let total: f64 = weights.iter().sum();
    let mut cdf = Vec::with_capacity(weights.len());
    let mut acc = 0.0;
    for w in &weights {
        acc += w / total;
        cdf.push(acc);
    }
    *cdf.last_mut().expect("nonempty support") = 1.0;

    (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            let idx = cdf.partition_point(|&c| c <= u);
            j_min + idx as u32
        })
        .collect()
}
