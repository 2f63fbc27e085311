//! Named theorem suites.
//!
//! A suite runs its fixtures (small hand-written instances with a known
//! expected outcome) and then `trials` generated instances through one
//! checker, and aggregates the verdicts into a [`TheoremReport`]. Trials are
//! independent: trial `t` draws from the stream `seed ^ t`, runs on the rayon
//! pool, and results are merged in trial order, so a report depends only on
//! the seed and the trial count.
//!
//! Two suites are exploratory and never fail: `Thm5.6-literal` evaluates the
//! sharp transform theorem with its first hypothesis read with mixed
//! subscripts, and `Remark3.4-search` looks for instances where
//! `C#DB# ≠ (BD#C)#` although both sharp complements vanish.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::absorption::{
    group_absorbing, mp_absorbing, relation_g_properties, relation_m_properties, RelationReport,
    SchurSide,
};
use crate::error::{Error, Histogram, Result};
use crate::instgen::{GenConfig, Generator, Inheritance, Vanishing};
use crate::pppt::{Pivot, Reading};
use crate::ratmat::{format_rational, Matrix};
use crate::schur::{
    check_thm_f_implies_g, check_thm_g_implies_f, check_thm_k_implies_l, check_thm_l_implies_k,
    check_thm_revlaw_group, check_thm_revlaw_mp, schur_k, sharp_reverse_order_equalities,
    BlockMatrix,
};
use crate::verdict::{Outcome, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Thm3_1,
    Thm3_2,
    Thm3_3,
    Thm3_4,
    Thm3_5,
    Thm3_6,
    Thm4_1,
    Thm4_3,
    Thm4_4,
    Thm4_5,
    Thm4_6,
    Thm5_1,
    Thm5_2,
    Thm5_3,
    Thm5_4,
    Thm5_5,
    Thm5_6,
    Thm5_6Literal,
    RelM,
    RelG,
    Remark3_4Search,
}

impl TheoremId {
    pub const ALL: [TheoremId; 21] = [
        TheoremId::Thm3_1,
        TheoremId::Thm3_2,
        TheoremId::Thm3_3,
        TheoremId::Thm3_4,
        TheoremId::Thm3_5,
        TheoremId::Thm3_6,
        TheoremId::Thm4_1,
        TheoremId::Thm4_3,
        TheoremId::Thm4_4,
        TheoremId::Thm4_5,
        TheoremId::Thm4_6,
        TheoremId::Thm5_1,
        TheoremId::Thm5_2,
        TheoremId::Thm5_3,
        TheoremId::Thm5_4,
        TheoremId::Thm5_5,
        TheoremId::Thm5_6,
        TheoremId::Thm5_6Literal,
        TheoremId::RelM,
        TheoremId::RelG,
        TheoremId::Remark3_4Search,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Thm3_1 => "Thm3.1",
            TheoremId::Thm3_2 => "Thm3.2",
            TheoremId::Thm3_3 => "Thm3.3",
            TheoremId::Thm3_4 => "Thm3.4",
            TheoremId::Thm3_5 => "Thm3.5",
            TheoremId::Thm3_6 => "Thm3.6",
            TheoremId::Thm4_1 => "Thm4.1",
            TheoremId::Thm4_3 => "Thm4.3",
            TheoremId::Thm4_4 => "Thm4.4",
            TheoremId::Thm4_5 => "Thm4.5",
            TheoremId::Thm4_6 => "Thm4.6",
            TheoremId::Thm5_1 => "Thm5.1",
            TheoremId::Thm5_2 => "Thm5.2",
            TheoremId::Thm5_3 => "Thm5.3",
            TheoremId::Thm5_4 => "Thm5.4",
            TheoremId::Thm5_5 => "Thm5.5",
            TheoremId::Thm5_6 => "Thm5.6",
            TheoremId::Thm5_6Literal => "Thm5.6-literal",
            TheoremId::RelM => "Rel-m",
            TheoremId::RelG => "Rel-g",
            TheoremId::Remark3_4Search => "Remark3.4-search",
        }
    }

    /// Exploratory suites report what they find and never count failures.
    pub fn is_exploratory(self) -> bool {
        matches!(self, TheoremId::Thm5_6Literal | TheoremId::Remark3_4Search)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A named matrix in canonical text form (`"p/q"` entries, rows separated
/// by `;`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedMatrix {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: String,
}

impl NamedMatrix {
    pub fn new(name: impl Into<String>, m: &Matrix) -> Self {
        let entries = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(format_rational)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("; ");
        NamedMatrix {
            name: name.into(),
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Trial index, or `None` for a fixture.
    pub trial: Option<u64>,
    pub instance: Vec<NamedMatrix>,
    pub failing_atoms: Vec<String>,
    pub witness: Vec<NamedMatrix>,
    /// Whether entries were zeroed while the failure persisted.
    pub minimized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub sha256: String,
    pub outcome: Outcome,
    pub expected: Outcome,
    pub as_expected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Tallies of an exploratory suite.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Exploration {
    pub counts: BTreeMap<String, u64>,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem_id: TheoremId,
    /// Fixtures plus generated instances evaluated.
    pub trials: u64,
    pub passes: u64,
    pub vacuous: u64,
    /// Generated candidates rejected for failing a hypothesis.
    pub discards: u64,
    pub failures: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub fixtures: Vec<FixtureOutcome>,
    /// Generated trials whose generator ran out of attempts.
    pub unsampled: u64,
    pub rejections: Histogram,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exploration: Option<Exploration>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TheoremReport {
    fn new(theorem_id: TheoremId, seed: u64) -> Self {
        TheoremReport {
            theorem_id,
            trials: 0,
            passes: 0,
            vacuous: 0,
            discards: 0,
            failures: 0,
            seed,
            counterexample: None,
            fixtures: Vec::new(),
            unsampled: 0,
            rejections: Histogram::new(),
            notes: Vec::new(),
            exploration: None,
            elapsed: Duration::ZERO,
        }
    }

    /// Trials that satisfied the hypotheses.
    pub fn applicable(&self) -> u64 {
        self.passes + self.failures
    }

    fn tally(&mut self, outcome: Outcome) {
        self.trials += 1;
        match outcome {
            Outcome::Holds => self.passes += 1,
            Outcome::NotApplicable => self.vacuous += 1,
            Outcome::Fails => self.failures += 1,
        }
    }
}

/// What a trial or fixture is evaluated on.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Instance {
    Block(BlockMatrix),
    BlockPair(BlockMatrix, BlockMatrix),
    Pair(Matrix, Matrix),
    Sample(Vec<Matrix>),
}

impl Instance {
    fn named(&self) -> Vec<NamedMatrix> {
        match self {
            Instance::Block(m) => vec![NamedMatrix::new(partition_name("M", m), &m.assemble())],
            Instance::BlockPair(u, v) => vec![
                NamedMatrix::new(partition_name("U", u), &u.assemble()),
                NamedMatrix::new(partition_name("V", v), &v.assemble()),
            ],
            Instance::Pair(a, b) => vec![NamedMatrix::new("A", a), NamedMatrix::new("B", b)],
            Instance::Sample(ms) => ms
                .iter()
                .enumerate()
                .map(|(i, m)| NamedMatrix::new(format!("X{i}"), m))
                .collect(),
        }
    }

    /// Flat views of every matrix, for shrinking.
    fn parts(&self) -> Vec<Matrix> {
        match self {
            Instance::Block(m) => vec![m.assemble()],
            Instance::BlockPair(u, v) => vec![u.assemble(), v.assemble()],
            Instance::Pair(a, b) => vec![a.clone(), b.clone()],
            Instance::Sample(ms) => ms.clone(),
        }
    }

    fn rebuild(&self, parts: Vec<Matrix>) -> Instance {
        let split = |m: &Matrix, like: &BlockMatrix| {
            let (m1, _, n1, _) = like.partition();
            BlockMatrix::split(m, m1, n1).expect("shape unchanged")
        };
        match self {
            Instance::Block(m) => Instance::Block(split(&parts[0], m)),
            Instance::BlockPair(u, v) => {
                Instance::BlockPair(split(&parts[0], u), split(&parts[1], v))
            }
            Instance::Pair(..) => Instance::Pair(parts[0].clone(), parts[1].clone()),
            Instance::Sample(_) => Instance::Sample(parts),
        }
    }
}

fn partition_name(base: &str, m: &BlockMatrix) -> String {
    let (m1, m2, n1, n2) = m.partition();
    format!("{base} [{m1}+{m2} x {n1}+{n2}]")
}

fn digest(instance: &Instance) -> String {
    let mut h = Sha256::new();
    for nm in instance.named() {
        h.update(format!("{} {} {}\n{}\n", nm.name, nm.rows, nm.cols, nm.entries));
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Evaluates one instance for a suite. Errors are precondition failures
/// (for instance a missing group inverse) and count as vacuous.
fn evaluate(id: TheoremId, inst: &Instance, t: u64) -> Result<Verdict> {
    match (id, inst) {
        (TheoremId::Thm3_1, Instance::Block(m)) => Ok(check_thm_revlaw_mp(m)),
        (TheoremId::Thm3_2, Instance::Block(m)) => Ok(check_thm_g_implies_f(m)),
        (TheoremId::Thm3_3, Instance::Block(m)) => Ok(check_thm_f_implies_g(m)),
        (TheoremId::Thm3_4, Instance::Block(m)) => check_thm_revlaw_group(m),
        (TheoremId::Thm3_5, Instance::Block(m)) => check_thm_l_implies_k(m),
        (TheoremId::Thm3_6, Instance::Block(m)) => check_thm_k_implies_l(m),
        (TheoremId::Thm4_1, Instance::Pair(a, b)) => {
            let v = mp_absorbing(a, b)?;
            let mut verdict = Verdict::new()
                .atom("law", v.law_holds)
                .atom("range conditions", v.range_conditions_hold)
                .conclude(v.consistent());
            if v.range_conditions_hold {
                verdict = verdict.concl("rank(A) = rank(B)", a.rank() == b.rank());
            }
            Ok(verdict)
        }
        (TheoremId::Thm4_4, Instance::Pair(a, b)) => {
            let v = group_absorbing(a, b)?;
            let mut verdict = Verdict::new()
                .atom("law", v.law_holds)
                .atom("range conditions", v.range_conditions_hold)
                .conclude(v.consistent());
            if v.range_conditions_hold {
                verdict = verdict.concl("rank(A) = rank(B)", a.rank() == b.rank());
            }
            Ok(verdict)
        }
        (TheoremId::RelM | TheoremId::RelG, Instance::Sample(ms)) => {
            let r = if id == TheoremId::RelM {
                relation_m_properties(ms)?
            } else {
                relation_g_properties(ms)?
            };
            Ok(relation_verdict(&r))
        }
        (_, Instance::BlockPair(u, v)) => match inheritance_kind(id, t) {
            Some(kind) => kind.check(u, v),
            None => Err(Error::UnknownTheorem(id.to_string())),
        },
        _ => Err(Error::UnknownTheorem(format!("{id} on this instance"))),
    }
}

fn relation_verdict(r: &RelationReport) -> Verdict {
    Verdict::new()
        .concl("reflexive", r.reflexive.ok())
        .concl("transitive", r.transitive.ok())
        .concl("duality", r.duality.ok())
        .concl("inverse duality", r.inverse_duality.ok())
        .concl("antisymmetric", r.antisymmetric.ok())
}

/// Suites covering both variants of a theorem alternate by trial parity.
fn inheritance_kind(id: TheoremId, t: u64) -> Option<Inheritance> {
    let even = t.is_multiple_of(2);
    let pivot = if even { Pivot::A } else { Pivot::D };
    let side = if even { SchurSide::Pivot } else { SchurSide::Complement };
    Some(match id {
        TheoremId::Thm4_3 => Inheritance::SchurMp(side),
        TheoremId::Thm4_5 => Inheritance::SchurGroup(SchurSide::Pivot),
        TheoremId::Thm4_6 => Inheritance::SchurGroup(SchurSide::Complement),
        TheoremId::Thm5_1 => Inheritance::PrinsubMp(Pivot::A),
        TheoremId::Thm5_2 => Inheritance::PrinsubMp(Pivot::D),
        TheoremId::Thm5_3 => Inheritance::PpptMp(pivot),
        TheoremId::Thm5_4 => Inheritance::PrinsubGroup(Pivot::A),
        TheoremId::Thm5_5 => Inheritance::PrinsubGroup(Pivot::D),
        TheoremId::Thm5_6 => Inheritance::PpptGroup(pivot, Reading::Corrected),
        TheoremId::Thm5_6Literal => Inheritance::PpptGroup(pivot, Reading::Literal),
        _ => return None,
    })
}

fn outcome_of(id: TheoremId, inst: &Instance, t: u64) -> (Outcome, Option<Verdict>) {
    match evaluate(id, inst, t) {
        Ok(v) => (v.outcome(), Some(v)),
        Err(_) => (Outcome::NotApplicable, None),
    }
}

/// Zeroes entries one at a time, keeping each change under which the
/// instance still fails.
fn shrink(id: TheoremId, inst: &Instance, t: u64) -> (Instance, bool) {
    shrink_while(inst, |c| outcome_of(id, c, t).0 == Outcome::Fails)
}

fn shrink_while(inst: &Instance, fails: impl Fn(&Instance) -> bool) -> (Instance, bool) {
    let mut best = inst.clone();
    let mut changed = false;
    let mut progress = true;
    while progress {
        progress = false;
        let parts = best.parts();
        for (p, m) in parts.iter().enumerate() {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    if m[(i, j)] == Default::default() {
                        continue;
                    }
                    let mut trial_parts = best.parts();
                    trial_parts[p].set(i, j, Default::default());
                    let candidate = best.rebuild(trial_parts);
                    if fails(&candidate) {
                        best = candidate;
                        changed = true;
                        progress = true;
                    }
                }
            }
        }
    }
    (best, changed)
}

fn counterexample(id: TheoremId, inst: &Instance, trial: Option<u64>) -> Counterexample {
    let t = trial.unwrap_or(0);
    let (small, minimized) = shrink(id, inst, t);
    let verdict = evaluate(id, &small, t).ok();
    Counterexample {
        trial,
        instance: small.named(),
        failing_atoms: verdict
            .as_ref()
            .map(|v| v.failing_conclusions().iter().map(|s| s.to_string()).collect())
            .unwrap_or_default(),
        witness: verdict
            .map(|v| v.witness.iter().map(|(n, m)| NamedMatrix::new(n, m)).collect())
            .unwrap_or_default(),
        minimized,
    }
}

/// The block matrix with `L = 0` used to show `K = 0` does not follow from
/// the other three conclusions. Its dagger complements give `G = 0 ≠ F`.
pub fn schur_example() -> BlockMatrix {
    BlockMatrix::new(
        Matrix::from_i64_rows(&[[-2, 1], [-2, 1]]),
        Matrix::from_i64_rows(&[[1, 1], [1, 1]]),
        Matrix::from_i64_rows(&[[2, -1], [-1, 2]]),
        Matrix::from_i64_rows(&[[-1, -1], [0, 0]]),
    )
    .expect("blocks tile")
}

/// `L = 0` and the three consequences of `K = 0` all hold, yet `K ≠ 0`.
pub fn converse_blocker() -> BlockMatrix {
    BlockMatrix::new(
        Matrix::from_i64_rows(&[[1, 1], [0, 0]]),
        Matrix::identity(2),
        Matrix::from_i64_rows(&[[1, 1], [0, 1]]),
        Matrix::from_i64_rows(&[[1, 0], [0, 0]]),
    )
    .expect("blocks tile")
}

/// A Moore-Penrose absorbing pair of 3×3 matrices.
pub fn absorbing_pair() -> (Matrix, Matrix) {
    let a = crate::matrix![["1/2", "1/2", 0], [-2, 1, 0], [0, 0, 0]];
    let b = Matrix::from_i64_rows(&[[2, 1, 0], [2, 2, 0], [0, 0, 0]]);
    (a, b)
}

/// The same pair partitioned after row and column two.
pub fn pivot_pair() -> (BlockMatrix, BlockMatrix) {
    let (a, b) = absorbing_pair();
    (
        BlockMatrix::split(&a, 2, 2).expect("fits"),
        BlockMatrix::split(&b, 2, 2).expect("fits"),
    )
}

struct Fixture {
    name: &'static str,
    instance: Instance,
    sha256: &'static str,
    expected: Outcome,
    note: Option<&'static str>,
    /// Extra requirement beyond the outcome.
    extra: Option<fn(&Instance, Option<&Verdict>) -> bool>,
}

const SCHUR_EXAMPLE_SHA: &str = "198c9cee9fe4a707f1142e6e315059eb5f27b4eb1b18089fb0a6c0b4213dd717";
const CONVERSE_BLOCKER_SHA: &str = "c3a0e29b7f39a4d04e6168f3d1ffcdcea76172faeed7089a207df0e5f6b47b81";
const ABSORBING_PAIR_SHA: &str = "8ac4495c6388bdffc746dde8ee3d3581aee70b2683d3e21cfba53c7454085648";
const ABSORBING_SAMPLE_SHA: &str = "3ca311a78036427728ba093351e8d2435ace101f300c1269c7cbc353ec6c4949";
const PIVOT_PAIR_SHA: &str = "bce576343aeec7c7d476e755c8a0997de3fa572921412d9b3a03c5a2af2ada6e";

/// All three conclusion atoms hold while `K ≠ 0`.
fn certifies_converse_failure(inst: &Instance, v: Option<&Verdict>) -> bool {
    let Instance::Block(m) = inst else { return false };
    let k_nonzero = schur_k(m).map(|k| !k.is_zero()).unwrap_or(false);
    k_nonzero && v.is_some_and(|v| v.conclusion_holds && v.hypothesis("L = 0") == Some(true))
}

fn fixtures(id: TheoremId) -> Vec<Fixture> {
    let schur = |expected, note| Fixture {
        name: "schur-example",
        instance: Instance::Block(schur_example()),
        sha256: SCHUR_EXAMPLE_SHA,
        expected,
        note,
        extra: None,
    };
    let (a, b) = absorbing_pair();
    let (u, v) = pivot_pair();
    let pivot = |expected| Fixture {
        name: "pivot-pair",
        instance: Instance::BlockPair(u.clone(), v.clone()),
        sha256: PIVOT_PAIR_SHA,
        expected,
        note: None,
        extra: None,
    };
    match id {
        TheoremId::Thm3_1 => vec![schur(Outcome::NotApplicable, Some("F ≠ 0"))],
        TheoremId::Thm3_2 => vec![schur(
            Outcome::Holds,
            Some("G = 0 and F ≠ 0: both sides of the equivalence are false"),
        )],
        TheoremId::Thm3_3 => vec![schur(Outcome::NotApplicable, Some("F ≠ 0"))],
        TheoremId::Thm3_4 | TheoremId::Thm3_6 => vec![schur(Outcome::NotApplicable, Some("K ≠ 0"))],
        TheoremId::Thm3_5 => vec![
            Fixture {
                name: "schur-example",
                instance: Instance::Block(schur_example()),
                sha256: SCHUR_EXAMPLE_SHA,
                expected: Outcome::NotApplicable,
                note: Some("the three conclusions hold while K ≠ 0 (here L ≠ 0 as well)"),
                extra: Some(|inst, v| {
                    let Instance::Block(m) = inst else { return false };
                    let k_nonzero = schur_k(m).map(|k| !k.is_zero()).unwrap_or(false);
                    k_nonzero && v.is_some_and(|v| v.conclusion_holds)
                }),
            },
            Fixture {
                name: "converse-blocker",
                instance: Instance::Block(converse_blocker()),
                sha256: CONVERSE_BLOCKER_SHA,
                expected: Outcome::NotApplicable,
                note: Some("expected: L = 0 and all three conclusions hold, yet K ≠ 0"),
                extra: Some(certifies_converse_failure),
            },
        ],
        TheoremId::Thm4_1 => vec![Fixture {
            name: "absorbing-pair",
            instance: Instance::Pair(a, b),
            sha256: ABSORBING_PAIR_SHA,
            expected: Outcome::Holds,
            note: Some("law and range conditions both hold"),
            extra: Some(|inst, _| match inst {
                Instance::Pair(a, b) => mp_absorbing(a, b).is_ok_and(|v| v.law_holds),
                _ => false,
            }),
        }],
        TheoremId::Thm4_3
        | TheoremId::Thm4_5
        | TheoremId::Thm4_6
        | TheoremId::Thm5_1
        | TheoremId::Thm5_2
        | TheoremId::Thm5_3
        | TheoremId::Thm5_4
        | TheoremId::Thm5_5
        | TheoremId::Thm5_6 => vec![pivot(Outcome::Holds)],
        TheoremId::RelM => {
            let (a, b) = absorbing_pair();
            vec![Fixture {
                name: "absorbing-pair",
                instance: Instance::Sample(vec![a, b]),
                sha256: ABSORBING_SAMPLE_SHA,
                expected: Outcome::Holds,
                note: Some("the pair is related in the stated order"),
                extra: Some(|inst, _| match inst {
                    Instance::Sample(ms) => crate::absorption::mp_law(&ms[0], &ms[1]),
                    _ => false,
                }),
            }]
        }
        _ => vec![],
    }
}

fn run_fixtures(id: TheoremId, report: &mut TheoremReport) {
    for fx in fixtures(id) {
        let sha = digest(&fx.instance);
        let drifted = !fx.sha256.is_empty() && fx.sha256 != sha;
        let (outcome, verdict) = outcome_of(id, &fx.instance, 0);
        let extra_ok = fx.extra.is_none_or(|f| f(&fx.instance, verdict.as_ref()));
        let as_expected = !drifted && outcome == fx.expected && extra_ok;
        report.tally(if as_expected {
            fx.expected
        } else {
            Outcome::Fails
        });
        if !as_expected && report.counterexample.is_none() {
            report.counterexample = Some(Counterexample {
                trial: None,
                instance: fx.instance.named(),
                failing_atoms: verdict
                    .map(|v| v.failing_conclusions().iter().map(|s| s.to_string()).collect())
                    .unwrap_or_else(|| vec![format!("fixture {}", fx.name)]),
                witness: vec![],
                minimized: false,
            });
        }
        let mut note = fx.note.map(str::to_string);
        if drifted {
            note = Some(format!("fixture content drifted: sha256 {sha}"));
        }
        report.fixtures.push(FixtureOutcome {
            name: fx.name.to_string(),
            sha256: sha,
            outcome,
            expected: fx.expected,
            as_expected,
            note,
        });
    }
}

/// The instance for trial `t`, or `None` if its generator gave up, together
/// with the generator for its rejection statistics.
fn generate(id: TheoremId, cfg: &GenConfig, t: u64) -> Result<(Option<Instance>, Generator)> {
    let mut g = Generator::with_stream(cfg, t)?;
    let produced: Result<Instance> = (|| {
        Ok(match id {
            TheoremId::Thm3_1 => Instance::Block(g.gen_vanishing_schur(Vanishing::G0F0)?),
            TheoremId::Thm3_2 => Instance::Block(g.gen_vanishing_schur(if t.is_multiple_of(2) {
                Vanishing::G0F0
            } else {
                Vanishing::G0Fnz
            })?),
            TheoremId::Thm3_3 => Instance::Block(g.gen_vanishing_schur(if t.is_multiple_of(2) {
                Vanishing::G0F0
            } else {
                Vanishing::F0Gnz
            })?),
            TheoremId::Thm3_4
            | TheoremId::Thm3_5
            | TheoremId::Thm3_6
            | TheoremId::Remark3_4Search => Instance::Block(g.gen_vanishing_schur(Vanishing::L0K0)?),
            TheoremId::Thm4_1 => {
                let (rows, cols) = (g.gen_dim(), g.gen_dim());
                let (a, b) = g.gen_mixed_pair(rows, cols)?;
                Instance::Pair(a, b)
            }
            TheoremId::Thm4_4 => {
                let n = g.gen_dim();
                let (a, b) = g.gen_mixed_group_pair(n)?;
                Instance::Pair(a, b)
            }
            TheoremId::RelM | TheoremId::RelG => {
                let group = id == TheoremId::RelG;
                let (rows, cols) = if group {
                    let n = g.gen_dim();
                    (n, n)
                } else {
                    (g.gen_dim(), g.gen_dim())
                };
                Instance::Sample(g.gen_relation_triple(rows, cols, group)?.to_vec())
            }
            _ => {
                let kind = inheritance_kind(id, t).expect("inheritance suite");
                let (u, v) = g.gen_inheritance_instance(kind)?;
                Instance::BlockPair(u, v)
            }
        })
    })();
    match produced {
        Ok(inst) => Ok((Some(inst), g)),
        Err(Error::GenerationFailed { .. }) => Ok((None, g)),
        Err(e) => Err(e),
    }
}


struct TrialResult {
    outcome: Option<Outcome>,
    verdict: Option<Verdict>,
    instance: Option<Instance>,
    discards: u64,
    histogram: Histogram,
}

fn run_trial(id: TheoremId, cfg: &GenConfig, t: u64) -> Result<TrialResult> {
    let (inst, g) = generate(id, cfg, t)?;
    let (outcome, verdict) = match &inst {
        Some(inst) => {
            let (o, v) = outcome_of(id, inst, t);
            (Some(o), v)
        }
        None => (None, None),
    };
    Ok(TrialResult {
        outcome,
        verdict,
        instance: inst,
        discards: g.discards(),
        histogram: g.histogram().clone(),
    })
}

/// Runs fixtures and then `trials` generated instances for one theorem.
pub fn run_suite(id: TheoremId, cfg: &GenConfig, trials: u64) -> Result<TheoremReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut report = TheoremReport::new(id, cfg.seed);
    if id == TheoremId::Remark3_4Search {
        report = explore_remark_3_4(cfg, trials)?;
        report.elapsed = start.elapsed();
        return Ok(report);
    }
    run_fixtures(id, &mut report);

    let mut results: Vec<TrialResult> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(id, cfg, t))
        .collect::<Result<_>>()?;

    // Antisymmetry is checked on a separate subsample of projectors
    // (dagger) or idempotents (sharp).
    if matches!(id, TheoremId::RelM | TheoremId::RelG) {
        report.notes.push(antisymmetry_note(id, cfg, trials.min(20), &mut report.failures)?);
    }

    let mut literal = Exploration::default();
    let mut absorbing = 0u64;
    for (t, r) in results.drain(..).enumerate() {
        report.discards += r.discards;
        for (k, v) in r.histogram {
            *report.rejections.entry(k).or_insert(0) += v;
        }
        let Some(outcome) = r.outcome else {
            report.unsampled += 1;
            continue;
        };
        if id.is_exploratory() {
            record_literal(&mut literal, outcome, r.verdict.as_ref(), r.instance.as_ref(), t as u64);
            report.tally(Outcome::NotApplicable);
            continue;
        }
        report.tally(outcome);
        if r.verdict.as_ref().is_some_and(|v| v.conclusion("range conditions") == Some(true)) {
            absorbing += 1;
        }
        if outcome == Outcome::Fails && report.counterexample.is_none() {
            let inst = r.instance.expect("evaluated trials keep their instance");
            report.counterexample = Some(counterexample(id, &inst, Some(t as u64)));
        }
    }
    if id.is_exploratory() {
        literal.summary = if literal.counts.get("conclusion failures").copied().unwrap_or(0) == 0 {
            "no instance satisfying the mixed-subscript hypotheses violated a conclusion".into()
        } else {
            "the mixed-subscript reading admits instances violating a conclusion".into()
        };
        report.exploration = Some(literal);
    }
    if matches!(id, TheoremId::Thm4_1 | TheoremId::Thm4_4) {
        let sampled = trials - report.unsampled;
        report.notes.push(format!(
            "{absorbing} absorbing and {} non-absorbing generated pairs",
            sampled - absorbing
        ));
    }
    if trials > 0 && report.unsampled == trials {
        report.notes.push("family not sampled: every generated trial exhausted its rejection budget".into());
    } else if report.unsampled > 0 {
        report.notes.push(format!(
            "{} of {trials} generated trials exhausted their rejection budget",
            report.unsampled
        ));
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

fn record_literal(
    e: &mut Exploration,
    outcome: Outcome,
    verdict: Option<&Verdict>,
    inst: Option<&Instance>,
    t: u64,
) {
    let mut bump = |k: &str| *e.counts.entry(k.to_string()).or_insert(0) += 1;
    bump("instances");
    match outcome {
        Outcome::NotApplicable => bump("hypotheses failed"),
        Outcome::Holds => bump("conclusions held"),
        Outcome::Fails => bump("conclusion failures"),
    }
    if let (Some(v), Some(Instance::BlockPair(_, bv))) = (verdict, inst) {
        if outcome != Outcome::NotApplicable {
            let corrected = crate::subspace::rowspace_included(bv.c(), bv.a()).unwrap_or(false);
            if !corrected {
                bump("R(C_V*) ⊆ R(A_V*) failed");
            }
        }
        if outcome == Outcome::Fails && e.example.is_none() {
            e.example = Some(Counterexample {
                trial: Some(t),
                instance: inst.map(Instance::named).unwrap_or_default(),
                failing_atoms: v.failing_conclusions().iter().map(|s| s.to_string()).collect(),
                witness: vec![],
                minimized: false,
            });
        }
    }
}

fn antisymmetry_note(id: TheoremId, cfg: &GenConfig, n: u64, failures: &mut u64) -> Result<String> {
    let mut g = Generator::with_stream(cfg, u64::MAX)?;
    let dim = cfg.max_dim.min(3);
    let mut sample = Vec::new();
    for _ in 0..n {
        sample.push(if id == TheoremId::RelM {
            g.gen_orthogonal_projector(dim)?
        } else {
            g.gen_idempotent(dim)?
        });
    }
    let r = if id == TheoremId::RelM {
        relation_m_properties(&sample)?
    } else {
        relation_g_properties(&sample)?
    };
    *failures += r.failures();
    Ok(format!(
        "antisymmetry on {} {}: {} related pairs checked, {} failures",
        r.antisymmetry_subsample,
        if id == TheoremId::RelM { "orthogonal projectors" } else { "idempotents" },
        r.antisymmetric.checked,
        r.failures()
    ))
}

/// Searches instances with `K = L = 0` for `C#DB# ≠ (BD#C)#` (and the
/// mirrored identity). Nothing is asserted; every trial counts as vacuous.
pub fn explore_remark_3_4(cfg: &GenConfig, budget: u64) -> Result<TheoremReport> {
    let id = TheoremId::Remark3_4Search;
    let mut report = TheoremReport::new(id, cfg.seed);
    let results: Vec<(Option<BlockMatrix>, u64, Histogram)> = (0..budget)
        .into_par_iter()
        .map(|t| {
            let mut g = Generator::with_stream(cfg, t)?;
            let m = match g.gen_vanishing_schur(Vanishing::L0K0) {
                Ok(m) => Some(m),
                Err(Error::GenerationFailed { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok((m, g.discards(), g.histogram().clone()))
        })
        .collect::<Result<_>>()?;

    let mut e = Exploration::default();
    for (t, (m, discards, hist)) in results.into_iter().enumerate() {
        report.discards += discards;
        for (k, v) in hist {
            *report.rejections.entry(k).or_insert(0) += v;
        }
        let Some(m) = m else {
            report.unsampled += 1;
            continue;
        };
        report.tally(Outcome::NotApplicable);
        let (first, second) = sharp_reverse_order_equalities(&m)?;
        for (label, r) in [("C#DB# = (BD#C)#", first), ("B#AC# = (CA#B)#", second)] {
            let key = match r {
                Some(true) => format!("{label}: confirmed"),
                Some(false) => format!("{label}: violated"),
                None => format!("{label}: right side undefined"),
            };
            *e.counts.entry(key).or_insert(0) += 1;
            if r == Some(false) && e.example.is_none() {
                e.example = Some(Counterexample {
                    trial: Some(t as u64),
                    instance: Instance::Block(m.clone()).named(),
                    failing_atoms: vec![label.to_string()],
                    witness: vec![],
                    minimized: false,
                });
            }
        }
    }
    e.summary = if budget == 0 {
        "empty budget".into()
    } else if e.example.is_none() {
        "no counterexample found in budget".into()
    } else {
        "counterexample found".into()
    };
    report.exploration = Some(e);
    Ok(report)
}

/// Seed for the `index`-th suite of [`run_all`].
pub fn derived_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Every suite in [`TheoremId::ALL`] order, each with its own derived seed.
pub fn run_all(cfg: &GenConfig, trials: u64) -> Result<Vec<TheoremReport>> {
    TheoremId::ALL
        .iter()
        .enumerate()
        .map(|(i, &id)| {
            let sub = GenConfig {
                seed: derived_seed(cfg.seed, i),
                ..cfg.clone()
            };
            run_suite(id, &sub, trials)
        })
        .collect()
}
