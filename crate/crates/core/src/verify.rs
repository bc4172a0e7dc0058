//! Cross-checking the three evaluations of W_J against each other and against
//! the coefficient identities, one diagram at a time or over whole families.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chord::{enumerate_diagrams, four_term_quadruples, ChordDiagram};
use crate::permanent::{
    wj_via_permanent_with, wjj_via_permanent_with, PermanentConfig, PermanentError,
};
use crate::poly::{IntPoly, Variable};
use crate::recursion::wj_via_recursion;
use crate::statesum::{build_lid, j_from_counts, signed_counts};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Permanent,
    StateSum,
    Recursion,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Permanent, Method::StateSum, Method::Recursion];

    pub fn name(self) -> &'static str {
        match self {
            Method::Permanent => "permanent",
            Method::StateSum => "statesum",
            Method::Recursion => "recursion",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// Largest chord count each method will attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarnessConfig {
    pub permanent_max_chords: usize,
    pub statesum_max_chords: usize,
    pub recursion_max_chords: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            permanent_max_chords: 8,
            statesum_max_chords: 6,
            recursion_max_chords: 10,
        }
    }
}

impl HarnessConfig {
    pub fn cap(&self, method: Method) -> usize {
        match method {
            Method::Permanent => self.permanent_max_chords,
            Method::StateSum => self.statesum_max_chords,
            Method::Recursion => self.recursion_max_chords,
        }
    }

    fn permanent(&self) -> PermanentConfig {
        PermanentConfig {
            ryser_max_size: 3 * self.permanent_max_chords,
            ..PermanentConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MethodError {
    #[error("{method} is capped at {cap} chords, diagram has {n}")]
    CapExceeded {
        method: Method,
        n: usize,
        cap: usize,
    },
    #[error(transparent)]
    Permanent(#[from] PermanentError),
}

#[derive(Debug, Clone)]
pub struct MethodOutcome {
    pub method: Method,
    pub result: Result<IntPoly, MethodError>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub diagram: String,
    pub n: usize,
    pub outcomes: Vec<MethodOutcome>,
    /// All successfully computed values are identical.
    pub agreement: bool,
    /// `[λ^n] W_J = Per(IM)`; `None` when not checked.
    pub top_coefficient: Option<bool>,
    /// `2^k Σ_{deg4=k} (-1)^a = [d^(n-k)] W_J` for all k; `None` unless the
    /// state sum ran.
    pub d_basis_counts: Option<bool>,
}

impl VerificationReport {
    /// The agreed value, when at least one method succeeded and all agree.
    pub fn value(&self) -> Option<&IntPoly> {
        if !self.agreement {
            return None;
        }
        self.outcomes.iter().find_map(|o| o.result.as_ref().ok())
    }

    pub fn has_errors(&self) -> bool {
        self.outcomes.iter().any(|o| o.result.is_err())
    }

    /// Every method ran, all agree, and every identity checked holds.
    pub fn passed(&self) -> bool {
        self.agreement
            && !self.has_errors()
            && self.top_coefficient != Some(false)
            && self.d_basis_counts != Some(false)
    }

    pub fn to_json(&self, var: Variable, with_timings: bool) -> Value {
        let methods: Vec<Value> = self
            .outcomes
            .iter()
            .map(|o| {
                let mut entry = match &o.result {
                    Ok(p) => json!({
                        "method": o.method.name(),
                        "status": "ok",
                        "polynomial": p.render(var),
                        "coefficients": p.coefficient_strings(),
                    }),
                    Err(e) => json!({
                        "method": o.method.name(),
                        "status": "error",
                        "error": e.to_string(),
                    }),
                };
                if with_timings {
                    entry["elapsed_ms"] = json!(o.elapsed.as_secs_f64() * 1e3);
                }
                entry
            })
            .collect();
        json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "diagram": self.diagram,
            "n": self.n,
            "methods": methods,
            "agreement": self.agreement,
            "d_basis_counts": self.d_basis_counts,
            "top_coefficient": self.top_coefficient,
        })
    }
}

fn run_method(
    d: &ChordDiagram,
    method: Method,
    config: &HarnessConfig,
    counts: &mut Option<Vec<BigInt>>,
) -> MethodOutcome {
    let start = Instant::now();
    let n = d.n();
    let cap = config.cap(method);
    let result = if n > cap {
        Err(MethodError::CapExceeded { method, n, cap })
    } else {
        match method {
            Method::Permanent => wj_via_permanent_with(d, &config.permanent()).map_err(Into::into),
            Method::StateSum => {
                let c = signed_counts(&build_lid(d));
                let p = j_from_counts(n, &c);
                *counts = Some(c);
                Ok(p)
            }
            Method::Recursion => Ok(wj_via_recursion(d)),
        }
    };
    MethodOutcome {
        method,
        result,
        elapsed: start.elapsed(),
    }
}

/// Runs the selected methods on one diagram and checks them against each
/// other and against the top-coefficient and d-basis identities.
pub fn verify_diagram(
    d: &ChordDiagram,
    methods: &[Method],
    config: &HarnessConfig,
) -> VerificationReport {
    let mut counts = None;
    let mut selected = methods.to_vec();
    selected.sort();
    selected.dedup();
    let outcomes: Vec<MethodOutcome> = selected
        .iter()
        .map(|&m| run_method(d, m, config, &mut counts))
        .collect();

    let values: Vec<&IntPoly> = outcomes
        .iter()
        .filter_map(|o| o.result.as_ref().ok())
        .collect();
    let agreement = values.windows(2).all(|w| w[0] == w[1]);
    let n = d.n();

    let top_coefficient = values.first().and_then(|w| {
        wjj_via_permanent_with(d, &config.permanent())
            .ok()
            .map(|per| w.coefficient(n) == per)
    });

    let d_basis_counts = counts.map(|counts| {
        let statesum_value = outcomes
            .iter()
            .find(|o| o.method == Method::StateSum)
            .and_then(|o| o.result.as_ref().ok())
            .expect("state sum ran");
        let w = if agreement { values[0] } else { statesum_value };
        d_basis_matches(n, w, &counts)
    });

    VerificationReport {
        diagram: d.to_cdp(),
        n,
        outcomes,
        agreement,
        top_coefficient,
        d_basis_counts,
    }
}

/// Checks `2^k c_k = [d^(n-k)] W` for every k, and that W has no d-powers
/// above n.
pub fn d_basis_matches(n: usize, w: &IntPoly, counts: &[BigInt]) -> bool {
    let in_d = w.to_d_basis();
    if in_d.degree().is_some_and(|deg| deg > n) {
        return false;
    }
    counts
        .iter()
        .enumerate()
        .all(|(k, c)| (c << k) == in_d.coefficient(n - k))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustiveSummary {
    pub n: usize,
    pub diagrams: usize,
    pub agreements: usize,
    pub failures: Vec<String>,
    /// Diagrams whose value is the zero polynomial.
    pub zeros: usize,
    pub nonzero: usize,
    pub isolated_chord_zeros: usize,
}

impl fmt::Display for ExhaustiveSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} diagrams={} agreements={} failures={} zeros={} nonzero={}",
            self.n,
            self.diagrams,
            self.agreements,
            self.failures.len(),
            self.zeros,
            self.nonzero
        )
    }
}

/// Verifies every diagram with `n` chords, returning the per-diagram reports
/// in enumeration order along with the tally.
pub fn verify_exhaustive_reports(
    n: usize,
    methods: &[Method],
    config: &HarnessConfig,
) -> (ExhaustiveSummary, Vec<VerificationReport>) {
    let diagrams: Vec<ChordDiagram> = enumerate_diagrams(n).collect();
    let reports: Vec<VerificationReport> = diagrams
        .par_iter()
        .map(|d| verify_diagram(d, methods, config))
        .collect();
    let mut summary = ExhaustiveSummary {
        n,
        diagrams: diagrams.len(),
        agreements: 0,
        failures: Vec::new(),
        zeros: 0,
        nonzero: 0,
        isolated_chord_zeros: 0,
    };
    for (d, r) in diagrams.iter().zip(&reports) {
        if r.agreement {
            summary.agreements += 1;
        }
        if !r.passed() {
            summary.failures.push(r.diagram.clone());
        }
        match r.value() {
            Some(v) if v.is_zero() => {
                summary.zeros += 1;
                if d.has_isolated_chord() {
                    summary.isolated_chord_zeros += 1;
                }
            }
            Some(_) => summary.nonzero += 1,
            None => {}
        }
    }
    (summary, reports)
}

pub fn verify_exhaustive(
    n: usize,
    methods: &[Method],
    config: &HarnessConfig,
) -> ExhaustiveSummary {
    verify_exhaustive_reports(n, methods, config).0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationSummary {
    pub n: usize,
    pub method: Method,
    pub one_term_checked: usize,
    pub one_term_violations: Vec<String>,
    pub four_term_checked: usize,
    pub four_term_violations: Vec<String>,
    /// Diagrams that could not be evaluated.
    pub errors: Vec<String>,
}

impl RelationSummary {
    pub fn holds(&self) -> bool {
        self.one_term_violations.is_empty()
            && self.four_term_violations.is_empty()
            && self.errors.is_empty()
    }
}

impl fmt::Display for RelationSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} method={} 1T checked={} violations={} 4T checked={} violations={}",
            self.n,
            self.method,
            self.one_term_checked,
            self.one_term_violations.len(),
            self.four_term_checked,
            self.four_term_violations.len()
        )
    }
}

/// Evaluates W_J with a single method, honoring the configured caps.
pub fn evaluate(
    d: &ChordDiagram,
    method: Method,
    config: &HarnessConfig,
) -> Result<IntPoly, MethodError> {
    run_method(d, method, config, &mut None).result
}

/// The alternating four-term combination
/// `(after_left - before_left) + (after_right - before_right)`.
pub fn four_term_sum(values: [&IntPoly; 4]) -> IntPoly {
    let [before_left, after_left, before_right, after_right] = values;
    after_left - before_left + after_right - before_right
}

/// Checks the one-term relation on every diagram with `n` chords and the
/// four-term relation on every generated quadruple.
pub fn verify_relations(n: usize, method: Method, config: &HarnessConfig) -> RelationSummary {
    let diagrams: Vec<ChordDiagram> = enumerate_diagrams(n).collect();
    let evaluated: Vec<(ChordDiagram, Result<IntPoly, MethodError>)> = diagrams
        .into_par_iter()
        .map(|d| {
            let v = evaluate(&d, method, config);
            (d, v)
        })
        .collect();

    let mut summary = RelationSummary {
        n,
        method,
        one_term_checked: 0,
        one_term_violations: Vec::new(),
        four_term_checked: 0,
        four_term_violations: Vec::new(),
        errors: Vec::new(),
    };
    let mut values: HashMap<ChordDiagram, IntPoly> = HashMap::new();
    for (d, v) in evaluated {
        match v {
            Ok(v) => {
                if d.has_isolated_chord() {
                    summary.one_term_checked += 1;
                    if !v.is_zero() {
                        summary.one_term_violations.push(d.to_cdp());
                    }
                }
                values.insert(d, v);
            }
            Err(e) => summary.errors.push(format!("{}: {e}", d.to_cdp())),
        }
    }
    if !summary.errors.is_empty() {
        return summary;
    }

    for q in four_term_quadruples(n) {
        summary.four_term_checked += 1;
        let [a, b, c, d] = q.members().map(|m| &values[m]);
        if !four_term_sum([a, b, c, d]).is_zero() {
            summary.four_term_violations.push(format!(
                "anchor={} target={} base={:?}",
                q.anchor, q.target, q.base_chords
            ));
        }
    }
    summary
}
