//! Accuracy, the back-off accuracy identity, binomial intervals, and reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::task::{TsvInstance, TsvSolver, WicInstance, WicSolver};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("{predictions} predictions for {gold} gold labels")]
    LengthMismatch { predictions: usize, gold: usize },
    #[error("no instance was scored")]
    NoScored,
    #[error("proportion {0} is outside [0, 1]")]
    OutOfRange(f64),
    #[error("invalid counts: {successes} successes out of {n}")]
    InvalidCounts { successes: u64, n: u64 },
    #[error("z must be positive and finite, got {0}")]
    InvalidZ(f64),
    #[error("instance {0} has no gold label")]
    MissingGold(String),
}

/// Accuracy over the non-abstained predictions, and the fraction scored.
pub fn accuracy(predictions: &[Option<bool>], gold: &[bool]) -> Result<(f64, f64), EvalError> {
    if predictions.len() != gold.len() {
        return Err(EvalError::LengthMismatch {
            predictions: predictions.len(),
            gold: gold.len(),
        });
    }
    let (scored, correct) = predictions
        .iter()
        .zip(gold)
        .filter_map(|(p, g)| p.map(|p| p == *g))
        .fold((0usize, 0usize), |(s, c), ok| (s + 1, c + ok as usize));
    if scored == 0 {
        return Err(EvalError::NoScored);
    }
    Ok((correct as f64 / scored as f64, scored as f64 / gold.len() as f64))
}

/// Expected accuracy when matched instances are always right and the rest
/// are decided by a fair coin: `p + (1 - p) / 2`.
pub fn expected_accuracy_with_backoff(p_match: f64) -> Result<f64, EvalError> {
    if !(0.0..=1.0).contains(&p_match) {
        return Err(EvalError::OutOfRange(p_match));
    }
    Ok(p_match + (1.0 - p_match) / 2.0)
}

fn check_counts(successes: u64, n: u64, z: f64) -> Result<f64, EvalError> {
    if n == 0 || successes > n {
        return Err(EvalError::InvalidCounts { successes, n });
    }
    if !(z.is_finite() && z > 0.0) {
        return Err(EvalError::InvalidZ(z));
    }
    Ok(successes as f64 / n as f64)
}

/// Normal-approximation (Wald) interval: `p ± z·sqrt(p(1-p)/n)`.
/// Returns `(estimate, margin)`.
pub fn binomial_ci(successes: u64, n: u64, z: f64) -> Result<(f64, f64), EvalError> {
    let p = check_counts(successes, n, z)?;
    Ok((p, z * (p * (1.0 - p) / n as f64).sqrt()))
}

/// Wilson score interval as `(center, half-width)`.
pub fn wilson_ci(successes: u64, n: u64, z: f64) -> Result<(f64, f64), EvalError> {
    let p = check_counts(successes, n, z)?;
    let n = n as f64;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    Ok((center, half))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum CiMethod {
    #[default]
    Wald,
    Wilson,
}

impl CiMethod {
    pub fn interval(self, successes: u64, n: u64, z: f64) -> Result<(f64, f64), EvalError> {
        match self {
            CiMethod::Wald => binomial_ci(successes, n, z),
            CiMethod::Wilson => wilson_ci(successes, n, z),
        }
    }
}

/// Rounds to three decimals, halves away from zero.
pub fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

/// Three-decimal display form.
pub fn fmt3(x: f64) -> String {
    format!("{:.3}", round3(x))
}

/// One instance's outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub id: String,
    /// `None` when the solver failed or abstained on this instance.
    pub prediction: Option<bool>,
    pub gold: bool,
    /// Error class when the solver failed.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub dataset: String,
    pub n: usize,
    pub n_scored: usize,
    pub accuracy: f64,
    pub coverage: f64,
    pub match_fraction: Option<f64>,
    pub expected_accuracy: Option<f64>,
    pub ci_estimate: Option<f64>,
    pub ci_margin: Option<f64>,
    pub errors: BTreeMap<String, usize>,
}

impl EvaluationReport {
    /// Builds a report from per-instance verdicts.
    pub fn from_verdicts(dataset: &str, verdicts: &[Verdict]) -> Result<Self, EvalError> {
        let predictions: Vec<Option<bool>> = verdicts.iter().map(|v| v.prediction).collect();
        let gold: Vec<bool> = verdicts.iter().map(|v| v.gold).collect();
        let (accuracy, coverage) = accuracy(&predictions, &gold)?;
        let mut errors = BTreeMap::new();
        for kind in verdicts.iter().filter_map(|v| v.error.as_ref()) {
            *errors.entry(kind.clone()).or_insert(0) += 1;
        }
        Ok(EvaluationReport {
            dataset: dataset.to_string(),
            n: verdicts.len(),
            n_scored: predictions.iter().filter(|p| p.is_some()).count(),
            accuracy,
            coverage,
            match_fraction: None,
            expected_accuracy: None,
            ci_estimate: None,
            ci_margin: None,
            errors,
        })
    }

    /// Records the match fraction and the expected back-off accuracy it implies.
    pub fn with_match_fraction(mut self, fraction: f64) -> Result<Self, EvalError> {
        self.expected_accuracy = Some(expected_accuracy_with_backoff(fraction)?);
        self.match_fraction = Some(fraction);
        Ok(self)
    }

    /// Attaches an interval for the accuracy over the scored instances.
    pub fn with_accuracy_ci(mut self, method: CiMethod, z: f64) -> Result<Self, EvalError> {
        let successes = (self.accuracy * self.n_scored as f64).round() as u64;
        let (estimate, margin) = method.interval(successes, self.n_scored as u64, z)?;
        self.ci_estimate = Some(estimate);
        self.ci_margin = Some(margin);
        Ok(self)
    }

    /// `key<TAB>value` lines; absent optional values print as `-`.
    pub fn to_text(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".to_string());
        let mut out = String::new();
        let _ = writeln!(out, "dataset\t{}", self.dataset);
        let _ = writeln!(out, "n\t{}", self.n);
        let _ = writeln!(out, "n_scored\t{}", self.n_scored);
        let _ = writeln!(out, "accuracy\t{}", self.accuracy);
        let _ = writeln!(out, "coverage\t{}", self.coverage);
        let _ = writeln!(out, "match_fraction\t{}", opt(self.match_fraction));
        let _ = writeln!(out, "expected_accuracy\t{}", opt(self.expected_accuracy));
        let _ = writeln!(out, "ci_estimate\t{}", opt(self.ci_estimate));
        let _ = writeln!(out, "ci_margin\t{}", opt(self.ci_margin));
        for (kind, count) in &self.errors {
            let _ = writeln!(out, "errors.{kind}\t{count}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn verdict_of(
    id: &str,
    gold: Option<bool>,
    outcome: Result<bool, crate::reductions::ReductionError>,
) -> Result<Verdict, EvalError> {
    let gold = gold.ok_or_else(|| EvalError::MissingGold(id.to_string()))?;
    Ok(match outcome {
        Ok(prediction) => Verdict {
            id: id.to_string(),
            prediction: Some(prediction),
            gold,
            error: None,
        },
        Err(e) => Verdict {
            id: id.to_string(),
            prediction: None,
            gold,
            error: Some(e.kind().to_string()),
        },
    })
}

/// Runs `solver` over a labelled WiC dataset. Solver errors count as
/// unscored instances and are tallied by class.
pub fn evaluate_wic<S: WicSolver + ?Sized>(
    solver: &S,
    dataset_id: &str,
    dataset: &[WicInstance],
) -> Result<(EvaluationReport, Vec<Verdict>), EvalError> {
    let verdicts = dataset
        .iter()
        .map(|i| verdict_of(&i.id, i.gold, solver.same_meaning(i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((EvaluationReport::from_verdicts(dataset_id, &verdicts)?, verdicts))
}

/// Runs `solver` over a labelled TSV dataset.
pub fn evaluate_tsv<S: TsvSolver + ?Sized>(
    solver: &S,
    dataset_id: &str,
    dataset: &[TsvInstance],
) -> Result<(EvaluationReport, Vec<Verdict>), EvalError> {
    let verdicts = dataset
        .iter()
        .map(|i| verdict_of(&i.id, i.gold, solver.verify(i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((EvaluationReport::from_verdicts(dataset_id, &verdicts)?, verdicts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn accuracy_cases() {
        assert_eq!(accuracy(&[Some(true), Some(false)], &[true, false]), Ok((1.0, 1.0)));
        assert_eq!(
            accuracy(&[Some(true), Some(true), Some(false), Some(false)], &[true, false, true, false]),
            Ok((0.5, 1.0))
        );
        assert_eq!(
            accuracy(&[Some(true), None, Some(false), None], &[true, true, false, false]),
            Ok((1.0, 0.5))
        );
        assert_eq!(
            accuracy(&[Some(true)], &[true, false]),
            Err(EvalError::LengthMismatch { predictions: 1, gold: 2 })
        );
        assert_eq!(accuracy(&[None, None], &[true, false]), Err(EvalError::NoScored));
    }

    #[test]
    fn backoff_expectation() {
        assert!(close(expected_accuracy_with_backoff(0.479).unwrap(), 0.7395, 1e-12));
        assert_eq!(fmt3(expected_accuracy_with_backoff(0.479).unwrap()), "0.740");
        assert_eq!(fmt3(expected_accuracy_with_backoff(0.534).unwrap()), "0.767");
        assert_eq!(fmt3(expected_accuracy_with_backoff(0.522).unwrap()), "0.761");
        assert_eq!(expected_accuracy_with_backoff(0.0), Ok(0.5));
        assert_eq!(expected_accuracy_with_backoff(1.0), Ok(1.0));
        assert!(matches!(expected_accuracy_with_backoff(1.2), Err(EvalError::OutOfRange(_))));
        assert!(matches!(expected_accuracy_with_backoff(f64::NAN), Err(EvalError::OutOfRange(_))));
    }

    #[test]
    fn wald_interval() {
        let (p, m) = binomial_ci(59, 60, 1.96).unwrap();
        assert_eq!((fmt3(p), fmt3(m)), ("0.983".to_string(), "0.032".to_string()));
        assert_eq!(binomial_ci(60, 60, 1.96), Ok((1.0, 0.0)));
        let (p, m) = binomial_ci(30, 60, 1.96).unwrap();
        assert_eq!(p, 0.5);
        // 1.96 * sqrt(0.25 / 60)
        assert!(close(m, 0.126_517_455_976_108_94, 1e-12));
        assert_eq!(fmt3(m), "0.127");
        assert!(binomial_ci(61, 60, 1.96).is_err());
        assert!(binomial_ci(0, 0, 1.96).is_err());
        assert!(binomial_ci(1, 2, 0.0).is_err());
    }

    #[test]
    fn wilson_is_inside_unit_interval() {
        let (c, h) = wilson_ci(60, 60, 1.96).unwrap();
        assert!(c + h <= 1.0 + 1e-12);
        assert!(h > 0.0);
        // 59/60 at z = 1.96: centre 0.954, half-width 0.043, lower bound 0.911.
        let (c, h) = wilson_ci(59, 60, 1.96).unwrap();
        assert!(close(c - h, 0.911, 0.001));
    }

    #[test]
    fn display_rounding_is_half_away_from_zero() {
        assert_eq!(fmt3(0.0625), "0.063");
        assert_eq!(fmt3(0.1265), "0.127");
        assert_eq!(fmt3(1.0), "1.000");
        assert_eq!(fmt3(0.0), "0.000");
    }

    #[test]
    fn report_serializations() {
        let verdicts = vec![
            Verdict { id: "a".into(), prediction: Some(true), gold: true, error: None },
            Verdict { id: "b".into(), prediction: None, gold: true, error: Some("NoExample".into()) },
        ];
        let report = EvaluationReport::from_verdicts("toy", &verdicts)
            .unwrap()
            .with_match_fraction(0.5)
            .unwrap();
        assert_eq!(report.n_scored, 1);
        assert_eq!(report.coverage, 0.5);
        assert_eq!(report.expected_accuracy, Some(0.75));
        let text = report.to_text();
        assert!(text.contains("expected_accuracy\t0.75\n"));
        assert!(text.contains("errors.NoExample\t1\n"));
        assert!(text.contains("ci_margin\t-\n"));
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["dataset"], "toy");
        assert_eq!(json["errors"]["NoExample"], 1);
        assert_eq!(json["match_fraction"], 0.5);
    }
}
