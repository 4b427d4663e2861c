use serde::{Deserialize, Serialize};

/// Bound on the number of per-sample diagnostics kept in a report.
pub const MAX_SAMPLE_CASES: usize = 8;

/// How a report's statistic is compared with its threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    /// pass iff `statistic ≤ threshold`
    AtMost,
    /// pass iff `statistic > threshold`
    Exceeds,
}

impl Criterion {
    pub fn evaluate(self, statistic: f64, threshold: f64) -> bool {
        match self {
            Criterion::AtMost => statistic <= threshold,
            Criterion::Exceeds => statistic > threshold,
        }
    }
}

/// A named diagnostic value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub label: String,
    pub value: f64,
}

impl Case {
    pub fn new(label: impl Into<String>, value: f64) -> Self {
        Case {
            label: label.into(),
            value,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub statistic: f64,
    pub threshold: f64,
    pub pass: bool,
    pub cases: Vec<Case>,
}

impl VerificationReport {
    pub fn new(
        suite: &str,
        seed: u64,
        samples: usize,
        statistic: f64,
        threshold: f64,
        criterion: Criterion,
        cases: Vec<Case>,
    ) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            seed,
            samples,
            statistic,
            threshold,
            pass: criterion.evaluate(statistic, threshold),
            cases,
        }
    }

    /// Value of the first case with the given label.
    pub fn case(&self, label: &str) -> Option<f64> {
        self.cases
            .iter()
            .find(|c| c.label == label)
            .map(|c| c.value)
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }
}

/// Keeps the `MAX_SAMPLE_CASES` worst `(index, value)` entries, ties broken
/// by index. `largest` selects the biggest values, otherwise the smallest.
pub(crate) fn worst_cases(
    prefix: &str,
    values: impl IntoIterator<Item = (usize, f64)>,
    largest: bool,
) -> Vec<Case> {
    let mut v: Vec<(usize, f64)> = values.into_iter().collect();
    v.sort_by(|a, b| {
        let ord = a.1.total_cmp(&b.1);
        let ord = if largest { ord.reverse() } else { ord };
        ord.then(a.0.cmp(&b.0))
    });
    v.into_iter()
        .take(MAX_SAMPLE_CASES)
        .map(|(i, val)| Case::new(format!("{prefix}[{i}]"), val))
        .collect()
}
