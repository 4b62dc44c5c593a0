//! Verdict reports: every positive answer is qualified by the search box it
//! was established in; every negative answer carries re-verified witnesses.

use serde::Serialize;

use crate::config::SearchConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    /// The hypotheses of the checked implication are not met.
    Vacuous,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails => write!(f, "fails"),
            Verdict::Vacuous => write!(f, "vacuous"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub property: String,
    pub subject: String,
    pub gamma: String,
    pub verdict: Verdict,
    /// Counterexample literals; nonempty exactly when verdict is `fails`.
    pub witnesses: Vec<String>,
    pub primes: Vec<u64>,
    pub exp_cap: u32,
    pub truncation: u64,
    pub notes: Vec<String>,
}

impl VerdictReport {
    pub fn new(
        property: impl Into<String>,
        subject: impl Into<String>,
        gamma: impl Into<String>,
        config: &SearchConfig,
    ) -> Self {
        VerdictReport {
            property: property.into(),
            subject: subject.into(),
            gamma: gamma.into(),
            verdict: Verdict::Holds,
            witnesses: Vec::new(),
            primes: config.primes.clone(),
            exp_cap: config.exp_cap,
            truncation: config.truncation,
            notes: Vec::new(),
        }
    }

    pub fn holds(mut self, note: impl Into<String>) -> Self {
        self.verdict = Verdict::Holds;
        self.notes.push(note.into());
        self
    }

    pub fn fails(mut self, witnesses: Vec<String>, note: impl Into<String>) -> Self {
        assert!(!witnesses.is_empty(), "a fails verdict needs a witness");
        self.verdict = Verdict::Fails;
        self.witnesses = witnesses;
        self.notes.push(note.into());
        self
    }

    pub fn vacuous(mut self, note: impl Into<String>) -> Self {
        self.verdict = Verdict::Vacuous;
        self.notes.push(note.into());
        self
    }

    pub fn is_holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}
