//! Verdicts returned by the theorem checkers.
//!
//! A verdict records every hypothesis and conclusion atom it evaluated, so a
//! failing instance can be reported and minimized without re-running the
//! checker by hand.

use serde::Serialize;

use crate::ratmat::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Atom {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Some hypothesis failed; the theorem says nothing about the instance.
    NotApplicable,
    Holds,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub hypotheses: Vec<Atom>,
    pub conclusions: Vec<Atom>,
    /// How the conclusion atoms combine. For most theorems this is the
    /// conjunction; biconditionals compare the two sides instead.
    pub conclusion_holds: bool,
    /// Intermediate matrices worth showing next to a failure.
    pub witness: Vec<(String, Matrix)>,
}

impl Default for Verdict {
    fn default() -> Self {
        Verdict {
            hypotheses: Vec::new(),
            conclusions: Vec::new(),
            conclusion_holds: true,
            witness: Vec::new(),
        }
    }
}

impl Verdict {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn hyp(mut self, name: impl Into<String>, holds: bool) -> Self {
        self.hypotheses.push(Atom {
            name: name.into(),
            holds,
        });
        self
    }

    /// Adds a conclusion atom and folds it into the conjunction.
    pub fn concl(mut self, name: impl Into<String>, holds: bool) -> Self {
        self.conclusion_holds &= holds;
        self.conclusions.push(Atom {
            name: name.into(),
            holds,
        });
        self
    }

    /// Adds a conclusion atom without folding it in (used for the sides of a
    /// biconditional, which are combined with [`Verdict::conclude`]).
    pub fn atom(mut self, name: impl Into<String>, holds: bool) -> Self {
        self.conclusions.push(Atom {
            name: name.into(),
            holds,
        });
        self
    }

    pub fn conclude(mut self, holds: bool) -> Self {
        self.conclusion_holds = holds;
        self
    }

    pub fn witness(mut self, name: impl Into<String>, m: &Matrix) -> Self {
        self.witness.push((name.into(), m.clone()));
        self
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|a| a.holds)
    }

    pub fn outcome(&self) -> Outcome {
        if !self.hypotheses_hold() {
            Outcome::NotApplicable
        } else if self.conclusion_holds {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }

    pub fn failing_hypotheses(&self) -> Vec<&str> {
        self.hypotheses
            .iter()
            .filter(|a| !a.holds)
            .map(|a| a.name.as_str())
            .collect()
    }

    pub fn failing_conclusions(&self) -> Vec<&str> {
        self.conclusions
            .iter()
            .filter(|a| !a.holds)
            .map(|a| a.name.as_str())
            .collect()
    }

    pub fn conclusion(&self, name: &str) -> Option<bool> {
        self.conclusions.iter().find(|a| a.name == name).map(|a| a.holds)
    }

    pub fn hypothesis(&self, name: &str) -> Option<bool> {
        self.hypotheses.iter().find(|a| a.name == name).map(|a| a.holds)
    }
}
