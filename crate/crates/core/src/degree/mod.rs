//! Two-type degree sequences: validation, empirical statistics, the
//! asymptotic flooding-time limit, and finite-size condition diagnostics.
//!
//! A [`DegreeSpec`] prescribes, for `n1` active and `n2` passive nodes, four
//! sequences: `d11` (active→active), `d12` (active→passive), `d21`
//! (passive→active), and `d22` (passive→passive). The pair `(d12, d21)` are
//! the two margins of a bipartite graph and must balance.

mod family;
pub mod graphical;
mod io;

pub use family::{make_family, Family};
pub use io::{parse_degree_spec, write_degree_spec};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::DegreeError;

/// Strictly positive and not NaN.
fn positive(x: f64) -> bool {
    x > 0.0
}

/// Entries are capped so that per-type sums fit comfortably in u64/f64.
const MAX_ENTRY: u32 = i32::MAX as u32;
/// Cap on the bipartite half-edge count N.
const MAX_TOTAL: u64 = 1 << 40;

/// Degree sequences for a two-type graph.
///
/// `d11`/`d12` are indexed by active node (`n1 = d11.len()`), `d21`/`d22` by
/// passive node (`n2 = d21.len()`). The struct is plain data; structural
/// coherence and graphicality are checked by [`validate_spec`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSpec {
    pub d11: Vec<u32>,
    pub d12: Vec<u32>,
    pub d21: Vec<u32>,
    pub d22: Vec<u32>,
}

impl DegreeSpec {
    pub fn new(d11: Vec<u32>, d12: Vec<u32>, d21: Vec<u32>, d22: Vec<u32>) -> Self {
        Self { d11, d12, d21, d22 }
    }

    /// Number of active nodes.
    pub fn n1(&self) -> usize {
        self.d11.len()
    }

    /// Number of passive nodes.
    pub fn n2(&self) -> usize {
        self.d21.len()
    }

    /// Errors unless the four sequences have coherent lengths and entries
    /// within the supported range. This is a structural check, distinct from
    /// the validation rules reported by [`validate_spec`].
    pub fn check_shape(&self) -> Result<(), DegreeError> {
        if self.d12.len() != self.d11.len() {
            return Err(DegreeError::Shape {
                name: "d12",
                expected: self.d11.len(),
                got: self.d12.len(),
            });
        }
        if self.d22.len() != self.d21.len() {
            return Err(DegreeError::Shape {
                name: "d22",
                expected: self.d21.len(),
                got: self.d22.len(),
            });
        }
        for (name, seq) in [
            ("d11", &self.d11),
            ("d12", &self.d12),
            ("d21", &self.d21),
            ("d22", &self.d22),
        ] {
            if seq.iter().any(|&x| x > MAX_ENTRY) {
                return Err(DegreeError::Overflow(format!(
                    "{name} has an entry above {MAX_ENTRY}"
                )));
            }
            let total: u64 = seq.iter().map(|&x| u64::from(x)).sum();
            if total > MAX_TOTAL {
                return Err(DegreeError::Overflow(format!(
                    "sum({name}) = {total} exceeds {MAX_TOTAL}"
                )));
            }
        }
        Ok(())
    }

    pub fn sum_d11(&self) -> u64 {
        self.d11.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn sum_d12(&self) -> u64 {
        self.d12.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn sum_d21(&self) -> u64 {
        self.d21.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn sum_d22(&self) -> u64 {
        self.d22.iter().map(|&x| u64::from(x)).sum()
    }
}

/// Identifies one validation rule in a [`ValidationReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// sum(d11) must be even (active-active stubs pair up).
    EvenSum11,
    /// sum(d22) must be even (passive-passive stubs pair up).
    EvenSum22,
    /// sum(d12) == sum(d21): the bipartite margins balance.
    BipartiteBalance,
    /// d11 is realizable by a simple graph (Erdős–Gallai).
    Graphical11,
    /// d22 is realizable by a simple graph (Erdős–Gallai).
    Graphical22,
    /// (d12, d21) are realizable as bipartite margins (Gale–Ryser).
    Bigraphical12,
    /// min(d11) >= 3 and min(d21) >= 1: minimum degrees required by the
    /// asymptotic regime. Advisory unless the caller opts into it.
    TheoremMinima,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::EvenSum11 => "even sum(d11)",
            Rule::EvenSum22 => "even sum(d22)",
            Rule::BipartiteBalance => "bipartite balance sum(d12) == sum(d21)",
            Rule::Graphical11 => "Erdos-Gallai graphicality of d11",
            Rule::Graphical22 => "Erdos-Gallai graphicality of d22",
            Rule::Bigraphical12 => "Gale-Ryser bigraphicality of (d12, d21)",
            Rule::TheoremMinima => "theorem-regime minima (min d11 >= 3, min d21 >= 1)",
        }
    }
}

/// Outcome of one rule.
#[derive(Debug, Clone, Serialize)]
pub struct RuleResult {
    pub rule: Rule,
    pub passed: bool,
    pub detail: String,
}

/// Per-rule validation results for a [`DegreeSpec`].
///
/// The theorem-regime minima are always reported but are advisory: a spec can
/// be perfectly generatable without them. [`ValidationReport::all_passed`]
/// covers the structural and graphicality rules; callers targeting the
/// asymptotic regime should also require [`ValidationReport::theorem_regime_ok`].
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub rules: Vec<RuleResult>,
}

impl ValidationReport {
    /// True when every rule except [`Rule::TheoremMinima`] passed.
    pub fn all_passed(&self) -> bool {
        self.rules
            .iter()
            .filter(|r| r.rule != Rule::TheoremMinima)
            .all(|r| r.passed)
    }

    /// True when every rule including the minima passed.
    pub fn theorem_regime_ok(&self) -> bool {
        self.rules.iter().all(|r| r.passed)
    }

    pub fn get(&self, rule: Rule) -> Option<&RuleResult> {
        self.rules.iter().find(|r| r.rule == rule)
    }

    /// Names of failed rules, excluding advisory ones unless requested.
    pub fn failures(&self, include_advisory: bool) -> Vec<&'static str> {
        self.rules
            .iter()
            .filter(|r| !r.passed && (include_advisory || r.rule != Rule::TheoremMinima))
            .map(|r| r.rule.name())
            .collect()
    }
}

/// Runs every validation rule against `spec`.
///
/// Pure and deterministic. Sequence order does not matter: every rule depends
/// only on sums, minima, or sorted copies. Length mismatches are structural
/// errors, not rule failures.
pub fn validate_spec(spec: &DegreeSpec) -> Result<ValidationReport, DegreeError> {
    spec.check_shape()?;

    let mut rules = Vec::with_capacity(7);
    let push = |rules: &mut Vec<RuleResult>, rule: Rule, passed: bool, detail: String| {
        rules.push(RuleResult {
            rule,
            passed,
            detail,
        });
    };

    let s11 = spec.sum_d11();
    push(
        &mut rules,
        Rule::EvenSum11,
        s11.is_multiple_of(2),
        format!("sum(d11) = {s11}"),
    );
    let s22 = spec.sum_d22();
    push(
        &mut rules,
        Rule::EvenSum22,
        s22.is_multiple_of(2),
        format!("sum(d22) = {s22}"),
    );
    let (s12, s21) = (spec.sum_d12(), spec.sum_d21());
    push(
        &mut rules,
        Rule::BipartiteBalance,
        s12 == s21,
        format!("sum(d12) = {s12}, sum(d21) = {s21}"),
    );

    match graphical::erdos_gallai(&spec.d11) {
        Ok(()) => push(&mut rules, Rule::Graphical11, true, "graphical".into()),
        Err(e) => push(&mut rules, Rule::Graphical11, false, e),
    }
    match graphical::erdos_gallai(&spec.d22) {
        Ok(()) => push(&mut rules, Rule::Graphical22, true, "graphical".into()),
        Err(e) => push(&mut rules, Rule::Graphical22, false, e),
    }
    match graphical::gale_ryser(&spec.d12, &spec.d21) {
        Ok(()) => push(&mut rules, Rule::Bigraphical12, true, "bigraphical".into()),
        Err(e) => push(&mut rules, Rule::Bigraphical12, false, e),
    }

    // Minima are vacuous over empty sequences (e.g. no passive nodes).
    let min11 = spec.d11.iter().copied().min();
    let min21 = spec.d21.iter().copied().min();
    let minima_ok = min11.is_none_or(|m| m >= 3) && min21.is_none_or(|m| m >= 1);
    let show = |m: Option<u32>| m.map_or_else(|| "-".to_string(), |m| m.to_string());
    push(
        &mut rules,
        Rule::TheoremMinima,
        minima_ok,
        format!("min(d11) = {}, min(d21) = {}", show(min11), show(min21)),
    );

    Ok(ValidationReport { rules })
}

/// Empirical degree statistics of a [`DegreeSpec`].
#[derive(Debug, Clone, Serialize)]
pub struct DegreeStats {
    /// Empirical distribution of d11: fraction of active nodes with each value.
    pub p11: BTreeMap<u32, f64>,
    /// Empirical distribution of d21 over passive nodes. Empty when n2 = 0.
    pub p21: BTreeMap<u32, f64>,
    /// Mean of p11.
    pub mu11: f64,
    /// Mean of the downshifted size-biased p11: sum_j j(j-1) p11(j) / mu11.
    pub nu11: f64,
    /// Minimum active-to-active degree.
    pub delta11: u32,
    /// Minimum passive-to-active degree; `None` when there are no passive nodes.
    pub delta21: Option<u32>,
    /// Total bipartite half-edge count N = sum(d12).
    pub bipartite_halfedges: u64,
}

/// Computes [`DegreeStats`] from a spec. Deterministic; errors when there are
/// no active nodes or every active-to-active degree is zero (mu11 = 0).
pub fn compute_stats(spec: &DegreeSpec) -> Result<DegreeStats, DegreeError> {
    spec.check_shape()?;
    let n1 = spec.n1();
    if n1 == 0 {
        return Err(DegreeError::Degenerate("no active nodes".into()));
    }

    let p11 = empirical(&spec.d11);
    let p21 = empirical(&spec.d21);

    let mut mu11 = 0.0;
    let mut second_factorial = 0.0;
    for (&j, &p) in &p11 {
        let jf = f64::from(j);
        mu11 += jf * p;
        second_factorial += jf * (jf - 1.0) * p;
    }
    if mu11 == 0.0 {
        return Err(DegreeError::Degenerate(
            "all active-to-active degrees are zero (mu11 = 0)".into(),
        ));
    }
    let nu11 = second_factorial / mu11;

    Ok(DegreeStats {
        p11,
        p21,
        mu11,
        nu11,
        delta11: spec.d11.iter().copied().min().unwrap_or(0),
        delta21: spec.d21.iter().copied().min(),
        bipartite_halfedges: spec.sum_d12(),
    })
}

fn empirical(seq: &[u32]) -> BTreeMap<u32, f64> {
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for &d in seq {
        *counts.entry(d).or_insert(0) += 1;
    }
    let n = seq.len() as f64;
    counts
        .into_iter()
        .map(|(j, c)| (j, c as f64 / n))
        .collect()
}

/// The asymptotic normalized flooding time for a uniformly chosen active
/// source:
///
/// `1/(lambda11*(nu11 - 1)) + 1/min(lambda11*delta11, lambda12*delta21)`.
///
/// With no passive nodes (`delta21` absent) the minimum reduces to
/// `lambda11*delta11`, recovering the classical single-type value
/// `1/(nu - 1) + 1/dmin` at unit rate.
pub fn theoretical_limit(
    stats: &DegreeStats,
    lambda11: f64,
    lambda12: f64,
) -> Result<f64, DegreeError> {
    if !positive(lambda11) {
        return Err(DegreeError::InvalidRate {
            name: "lambda11",
            value: lambda11,
        });
    }
    if !positive(lambda12) {
        return Err(DegreeError::InvalidRate {
            name: "lambda12",
            value: lambda12,
        });
    }
    if stats.nu11 <= 1.0 {
        return Err(DegreeError::Subcritical { nu11: stats.nu11 });
    }
    let rate11 = lambda11 * f64::from(stats.delta11);
    let min_rate = match stats.delta21 {
        Some(d21) => rate11.min(lambda12 * f64::from(d21)),
        None => rate11,
    };
    if min_rate <= 0.0 {
        return Err(DegreeError::ZeroMinDegree);
    }
    Ok(1.0 / (lambda11 * (stats.nu11 - 1.0)) + 1.0 / min_rate)
}

/// One tail fraction probe of the bipartite margins.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TailFraction {
    pub m: u64,
    /// (sum of s after skipping the min(max(t), m) largest entries) / N.
    pub s_tail: f64,
    /// (sum of t after skipping the min(max(s), m) largest entries) / N.
    pub t_tail: f64,
}

/// Finite-size diagnostics for the asymptotic bipartite-margin conditions.
///
/// These conditions constrain *families* of specs as kappa grows, so a single
/// spec cannot pass or fail them; the numbers are reported for judgment at
/// the experiment layer. Only numeric health (NaN/overflow) is flagged.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionDiagnostics {
    /// sum_i sum_j s_i(s_i - 1) t_j(t_j - 1) / N^2, with s = d12 and t = d21
    /// sorted in decreasing order.
    pub bs_ratio1: f64,
    pub tail_fractions: Vec<TailFraction>,
    /// sum_j j^(2+epsilon) p11(j).
    pub second_moment_11: f64,
    /// sum_j j^(2+epsilon) p21(j). Zero when there are no passive nodes.
    pub second_moment_21: f64,
    /// False if any reported value is NaN or infinite.
    pub all_finite: bool,
}

/// Computes [`ConditionDiagnostics`] for `spec`.
///
/// Tail-sum convention: the sum written `sum_{i = t∧m}^{n1} s_i` is read as
/// "skip the min(t, m) largest entries of s", i.e. a 0-based start index of
/// `min(max(t), m)`; an exhausted range contributes an empty sum. Sums are
/// accumulated in f64 to avoid overflow at large kappa.
pub fn condition_diagnostics(
    spec: &DegreeSpec,
    epsilon: f64,
    m_grid: &[u64],
) -> Result<ConditionDiagnostics, DegreeError> {
    spec.check_shape()?;
    if !positive(epsilon) {
        return Err(DegreeError::InvalidRate {
            name: "epsilon",
            value: epsilon,
        });
    }
    let n = spec.sum_d12();
    if n == 0 || spec.sum_d21() == 0 {
        return Err(DegreeError::EmptyBipartite);
    }
    let n = n as f64;

    let mut s: Vec<u32> = spec.d12.clone();
    let mut t: Vec<u32> = spec.d21.clone();
    s.sort_unstable_by(|a, b| b.cmp(a));
    t.sort_unstable_by(|a, b| b.cmp(a));

    let pair_sum = |seq: &[u32]| -> f64 {
        seq.iter()
            .map(|&x| {
                let x = f64::from(x);
                x * (x - 1.0)
            })
            .sum()
    };
    let bs_ratio1 = pair_sum(&s) * pair_sum(&t) / (n * n);

    let s_max = u64::from(s[0]);
    let t_max = u64::from(t[0]);
    let tail = |seq: &[u32], skip: u64| -> f64 {
        let skip = usize::try_from(skip).unwrap_or(usize::MAX).min(seq.len());
        seq[skip..].iter().map(|&x| f64::from(x)).sum::<f64>() / n
    };
    let tail_fractions: Vec<TailFraction> = m_grid
        .iter()
        .map(|&m| TailFraction {
            m,
            s_tail: tail(&s, t_max.min(m)),
            t_tail: tail(&t, s_max.min(m)),
        })
        .collect();

    let stats = compute_stats(spec)?;
    let proxy = |p: &BTreeMap<u32, f64>| -> f64 {
        p.iter()
            .map(|(&j, &prob)| f64::from(j).powf(2.0 + epsilon) * prob)
            .sum()
    };
    let second_moment_11 = proxy(&stats.p11);
    let second_moment_21 = proxy(&stats.p21);

    let all_finite = bs_ratio1.is_finite()
        && second_moment_11.is_finite()
        && second_moment_21.is_finite()
        && tail_fractions
            .iter()
            .all(|f| f.s_tail.is_finite() && f.t_tail.is_finite());

    Ok(ConditionDiagnostics {
        bs_ratio1,
        tail_fractions,
        second_moment_11,
        second_moment_21,
        all_finite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_spec() -> DegreeSpec {
        DegreeSpec::new(vec![3, 3, 3, 3], vec![0, 0, 0, 0], vec![0, 0], vec![0, 0])
    }

    #[test]
    fn k4_spec_passes_all_structural_rules() {
        let report = validate_spec(&k4_spec()).unwrap();
        assert!(report.all_passed());
        // d21 contains zeros, so the advisory minima rule fails.
        assert!(!report.theorem_regime_ok());
    }

    #[test]
    fn non_graphical_d11_reported() {
        let spec = DegreeSpec::new(vec![3, 3, 1, 1], vec![0; 4], vec![], vec![]);
        let report = validate_spec(&spec).unwrap();
        assert!(!report.all_passed());
        let rule = report.get(Rule::Graphical11).unwrap();
        assert!(!rule.passed);
        assert!(rule.detail.contains("k=2"), "{}", rule.detail);
    }

    #[test]
    fn bigraphical_margins_pass() {
        let spec = DegreeSpec::new(vec![3, 3], vec![2, 2], vec![2, 1, 1], vec![0, 0, 0]);
        let report = validate_spec(&spec).unwrap();
        assert!(report.get(Rule::Bigraphical12).unwrap().passed);
    }

    #[test]
    fn shape_mismatch_is_structural_error() {
        let spec = DegreeSpec::new(vec![3, 3], vec![1], vec![], vec![]);
        assert!(matches!(
            validate_spec(&spec),
            Err(DegreeError::Shape { name: "d12", .. })
        ));
    }

    #[test]
    fn unbalanced_margins_fail_balance_rule() {
        let spec = DegreeSpec::new(vec![3, 3], vec![2, 1], vec![1, 1], vec![0, 0]);
        let report = validate_spec(&spec).unwrap();
        assert!(!report.get(Rule::BipartiteBalance).unwrap().passed);
    }

    #[test]
    fn stats_regular_three() {
        let spec = DegreeSpec::new(vec![3; 10], vec![1; 10], vec![1; 10], vec![0; 10]);
        let stats = compute_stats(&spec).unwrap();
        assert_eq!(stats.mu11, 3.0);
        assert_eq!(stats.nu11, 2.0);
        assert_eq!(stats.delta11, 3);
        assert_eq!(stats.delta21, Some(1));
        assert_eq!(stats.bipartite_halfedges, 10);
        assert_eq!(stats.p21.get(&1), Some(&1.0));
    }

    #[test]
    fn stats_mixed_degrees() {
        let spec = DegreeSpec::new(vec![3, 4], vec![0, 0], vec![], vec![]);
        let stats = compute_stats(&spec).unwrap();
        assert_eq!(stats.p11.get(&3), Some(&0.5));
        assert_eq!(stats.p11.get(&4), Some(&0.5));
        assert!((stats.mu11 - 3.5).abs() < 1e-12);
        assert!((stats.nu11 - 9.0 / 3.5).abs() < 1e-12);
        assert_eq!(stats.delta21, None);
    }

    #[test]
    fn stats_degenerate_when_all_zero() {
        let spec = DegreeSpec::new(vec![0, 0], vec![0, 0], vec![], vec![]);
        assert!(matches!(
            compute_stats(&spec),
            Err(DegreeError::Degenerate(_))
        ));
    }

    #[test]
    fn limit_direct_evaluations() {
        // nu11 = 2, delta11 = 3, delta21 = 1, unit rates -> 1 + 1/1 = 2.
        let spec = DegreeSpec::new(vec![3; 4], vec![1; 4], vec![1; 4], vec![0; 4]);
        let stats = compute_stats(&spec).unwrap();
        let limit = theoretical_limit(&stats, 1.0, 1.0).unwrap();
        assert!((limit - 2.0).abs() < 1e-12);

        // delta21 = 3 mimics the classical value 1 + 1/3.
        let spec = DegreeSpec::new(vec![3; 4], vec![3; 4], vec![3; 4], vec![0; 4]);
        let stats = compute_stats(&spec).unwrap();
        let limit = theoretical_limit(&stats, 1.0, 1.0).unwrap();
        assert!((limit - (1.0 + 1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn limit_with_scaled_rates() {
        // lambda11=2, nu11=3, delta11=4, lambda12=1, delta21=1:
        // 1/(2*2) + 1/min(8, 1) = 1.25.
        let stats = DegreeStats {
            p11: BTreeMap::new(),
            p21: BTreeMap::new(),
            mu11: 1.0,
            nu11: 3.0,
            delta11: 4,
            delta21: Some(1),
            bipartite_halfedges: 1,
        };
        let limit = theoretical_limit(&stats, 2.0, 1.0).unwrap();
        assert!((limit - 1.25).abs() < 1e-12);
    }

    #[test]
    fn limit_subcritical_rejected() {
        let spec = DegreeSpec::new(vec![1; 4], vec![0; 4], vec![], vec![]);
        let stats = compute_stats(&spec).unwrap();
        assert!(matches!(
            theoretical_limit(&stats, 1.0, 1.0),
            Err(DegreeError::Subcritical { .. })
        ));
    }

    #[test]
    fn diagnostics_all_ones_margins() {
        let spec = DegreeSpec::new(vec![3; 4], vec![1; 4], vec![1; 4], vec![0; 4]);
        let diag = condition_diagnostics(&spec, 0.1, &[1, 2]).unwrap();
        assert_eq!(diag.bs_ratio1, 0.0);
        assert!(diag.all_finite);
    }

    #[test]
    fn diagnostics_direct_summation_case() {
        // s = [2,2], t = [2,1,1], N = 4. Double sum = (2+2)*(2+0+0) = 8,
        // ratio 0.5; skipping min(max,1)=1 entry leaves 2/4 = 0.5 per side.
        let spec = DegreeSpec::new(vec![3, 3], vec![2, 2], vec![2, 1, 1], vec![0, 0, 0]);
        let diag = condition_diagnostics(&spec, 0.1, &[1]).unwrap();
        assert!((diag.bs_ratio1 - 0.5).abs() < 1e-12);
        let tf = &diag.tail_fractions[0];
        assert!((tf.s_tail - 0.5).abs() < 1e-12);
        assert!((tf.t_tail - 0.5).abs() < 1e-12);
    }

    #[test]
    fn diagnostics_empty_bipartite_rejected() {
        let spec = k4_spec();
        assert!(matches!(
            condition_diagnostics(&spec, 0.1, &[1]),
            Err(DegreeError::EmptyBipartite)
        ));
    }
}
