use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// At most this many failures are kept per report; the total is still counted.
pub const MAX_RECORDED_FAILURES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The semiring does not satisfy the hypothesis of the checked statement.
    Inapplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub case: u64,
    /// Replayable description in the diagram text format.
    pub counterexample: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub parameters: String,
    pub status: Status,
    pub cases: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, parameters: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            parameters: parameters.into(),
            status: Status::Pass,
            cases: 0,
            failure_count: 0,
            failures: Vec::new(),
            seed: None,
            notes: Vec::new(),
            wall_time_ms: 0.0,
        }
    }

    pub fn inapplicable(
        suite: impl Into<String>,
        parameters: impl Into<String>,
        reason: impl Into<String>,
    ) -> Self {
        let mut r = Self::new(suite, parameters);
        r.status = Status::Inapplicable;
        r.notes.push(reason.into());
        r
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn fail(&mut self, case: u64, counterexample: impl Into<String>) {
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(Failure {
                case,
                counterexample: counterexample.into(),
            });
        }
    }

    /// Checks one case; a `Some` message is a failure.
    pub fn check(&mut self, outcome: Option<String>) {
        let case = self.cases;
        self.cases += 1;
        if let Some(msg) = outcome {
            self.fail(case, msg);
        }
    }

    pub fn absorb(&mut self, batch: Batch) {
        let base = self.cases;
        self.cases += batch.cases;
        for (offset, msg) in batch.failures {
            self.fail(base + offset, msg);
        }
        self.failure_count += batch.dropped;
    }

    /// Sets the status from the failures and stamps the elapsed time.
    pub fn finish(mut self, started: Instant) -> Self {
        if self.status != Status::Inapplicable {
            self.status = if self.failure_count == 0 {
                Status::Pass
            } else {
                Status::Fail
            };
        }
        self.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_text(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inapplicable => "INAPPLICABLE",
        };
        let mut out = format!(
            "[{status}] {} ({}): {} cases, {} failures, {:.1} ms",
            self.suite, self.parameters, self.cases, self.failure_count, self.wall_time_ms
        );
        if let Some(seed) = self.seed {
            write!(out, ", seed {seed}").unwrap();
        }
        out.push('\n');
        for n in &self.notes {
            writeln!(out, "  note: {n}").unwrap();
        }
        for f in &self.failures {
            writeln!(out, "  case {}: {}", f.case, f.counterexample).unwrap();
        }
        if self.failure_count > self.failures.len() as u64 {
            writeln!(
                out,
                "  ... {} more failures",
                self.failure_count - self.failures.len() as u64
            )
            .unwrap();
        }
        out
    }
}

/// Outcome of a chunk of cases, with failure offsets relative to the chunk.
#[derive(Clone, Debug, Default)]
pub struct Batch {
    pub cases: u64,
    pub failures: Vec<(u64, String)>,
    /// Failures counted but not kept.
    pub dropped: u64,
}

impl Batch {
    pub fn check(&mut self, outcome: Option<String>) {
        if let Some(msg) = outcome {
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push((self.cases, msg));
            } else {
                self.dropped += 1;
            }
        }
        self.cases += 1;
    }

    fn append(&mut self, other: Batch) {
        let base = self.cases;
        self.cases += other.cases;
        for (offset, msg) in other.failures {
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push((base + offset, msg));
            } else {
                self.dropped += 1;
            }
        }
        self.dropped += other.dropped;
    }
}

/// Runs `f` over `items` on the rayon pool and merges the batches in item
/// order, so case numbering does not depend on scheduling.
pub fn run_batches<T: Sync>(items: &[T], f: impl Fn(&T, &mut Batch) + Sync) -> Batch {
    let parts: Vec<Batch> = items
        .par_iter()
        .map(|item| {
            let mut b = Batch::default();
            f(item, &mut b);
            b
        })
        .collect();
    let mut out = Batch::default();
    for p in parts {
        out.append(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batches_merge_in_order() {
        let items: Vec<u64> = (0..50).collect();
        let batch = run_batches(&items, |&i, b| {
            for j in 0..3 {
                b.check((i == 7 && j == 1).then(|| format!("{i}")));
            }
        });
        assert_eq!(batch.cases, 150);
        assert_eq!(batch.failures, vec![(22, "7".to_string())]);
        let mut r = VerificationReport::new("t", "");
        r.absorb(batch);
        let r = r.finish(Instant::now());
        assert_eq!(r.status, Status::Fail);
        assert!(r.to_text().contains("case 22: 7"));
    }

    #[test]
    fn failure_cap() {
        let mut r = VerificationReport::new("t", "");
        for k in 0..30 {
            r.check(Some(format!("{k}")));
        }
        assert_eq!(r.failure_count, 30);
        assert_eq!(r.failures.len(), MAX_RECORDED_FAILURES);
        assert!(r
            .finish(Instant::now())
            .to_text()
            .contains("10 more failures"));
    }
}
