//! Per-axiom verdicts.

use std::fmt;

use crate::exactmath::Tensor;

/// A basis tuple at which the two sides of an identity differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub tuple: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Witness),
    /// The data did not have the shape the axiom needs; nothing was evaluated.
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub axiom: String,
    pub outcome: Outcome,
}

impl Entry {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Fail(w) => Some(w),
            _ => None,
        }
    }
}

/// Ordered list of axiom verdicts; the overall verdict is their conjunction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(Entry::passed)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, axiom: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.passed())
    }

    pub fn push(&mut self, entry: Entry) {
        self.entries.push(entry);
    }

    pub fn pass(&mut self, axiom: impl Into<String>) {
        self.push(Entry { axiom: axiom.into(), outcome: Outcome::Pass });
    }

    pub fn malformed(&mut self, axiom: impl Into<String>, reason: impl Into<String>) {
        self.push(Entry { axiom: axiom.into(), outcome: Outcome::Malformed(reason.into()) });
    }

    pub fn fail(&mut self, axiom: impl Into<String>, tuple: Vec<usize>, lhs: impl fmt::Display, rhs: impl fmt::Display) {
        let witness = Witness { tuple, lhs: lhs.to_string(), rhs: rhs.to_string() };
        self.push(Entry { axiom: axiom.into(), outcome: Outcome::Fail(witness) });
    }

    /// Records a boolean condition that has no natural witness.
    pub fn condition(&mut self, axiom: impl Into<String>, holds: bool, detail: impl fmt::Display) {
        if holds {
            self.pass(axiom);
        } else {
            self.fail(axiom, Vec::new(), detail, "expected to hold");
        }
    }

    /// Evaluates `sides` on each case in order and records the first one at
    /// which the two sides differ.
    pub fn check<I, F>(&mut self, axiom: &str, cases: I, mut sides: F)
    where
        I: IntoIterator<Item = Vec<usize>>,
        F: FnMut(&[usize]) -> (Tensor, Tensor),
    {
        for tuple in cases {
            let (lhs, rhs) = sides(&tuple);
            if lhs != rhs {
                self.fail(axiom, tuple, lhs, rhs);
                return;
            }
        }
        self.pass(axiom);
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    /// Copy of this report with every axiom name prefixed.
    pub fn prefixed(self, prefix: &str) -> Report {
        Report {
            entries: self
                .entries
                .into_iter()
                .map(|e| Entry { axiom: format!("{prefix}{}", e.axiom), outcome: e.outcome })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Scalar;

    #[test]
    fn verdict_is_conjunction() {
        let mut r = Report::new();
        assert!(r.passed());
        r.pass("a");
        assert!(r.passed());
        r.check("b", vec![vec![0], vec![1], vec![2]], |t| {
            let v = Scalar::from_int(t[0] as i64);
            (Tensor::scalar(v), Tensor::scalar(Scalar::from_int(1)))
        });
        assert!(!r.passed());
        // first failing case in order is 0
        assert_eq!(r.get("b").unwrap().witness().unwrap().tuple, vec![0]);
    }
}
