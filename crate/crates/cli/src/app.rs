use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use pseudoschur::absorption::{group_absorbing, mp_absorbing, AbsorptionVerdict, Family};
use pseudoschur::harness::{run_all, run_suite, TheoremId, TheoremReport};
use pseudoschur::instgen::GenConfig;
use pseudoschur::pppt::{transform, Pivot};
use pseudoschur::{check_group, check_penrose, ginv, pinv, schur_f, schur_g, schur_k, schur_l};
use pseudoschur::{Error, Outcome};

use crate::format::{parse_block, parse_matrix, print_block, print_matrix};

pub const EXIT_OK: i32 = 0;
/// A suite found a hypothesis-satisfying instance whose conclusion failed.
pub const EXIT_FAILURE: i32 = 1;
/// Bad arguments or a malformed input file.
pub const EXIT_USAGE: i32 = 2;
/// The input violates a mathematical precondition.
pub const EXIT_MATH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "pseudoschur", version, about = "Exact generalized inverses and block-matrix identities over the rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Moore-Penrose inverse of a matrix file.
    Pinv {
        file: PathBuf,
        /// Append the four Penrose equation checks as comment lines.
        #[arg(long)]
        certify: bool,
    },
    /// Group inverse of a square matrix file.
    Ginv {
        file: PathBuf,
        /// Append the three group equation checks as comment lines.
        #[arg(long)]
        certify: bool,
    },
    /// A pseudo Schur complement of a block file.
    Schur {
        #[arg(long, value_enum, ignore_case = true)]
        which: Which,
        file: PathBuf,
    },
    /// A pseudo principal pivot transform of a block file.
    Pppt {
        #[arg(long, value_enum, ignore_case = true)]
        pivot: PivotArg,
        #[arg(long, value_enum, default_value = "mp")]
        family: FamilyArg,
        file: PathBuf,
    },
    /// Evaluate the absorption law and its range characterization.
    Absorb {
        #[arg(long, value_enum, default_value = "mp")]
        family: FamilyArg,
        a: PathBuf,
        b: PathBuf,
    },
    /// Run theorem suites.
    Verify {
        /// A theorem id such as Thm4.1, or `all`.
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, env = "PSEUDOSCHUR_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long)]
        json: bool,
        /// Include wall-clock time (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Check a candidate inverse against its defining equations.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        m: PathBuf,
        x: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    F,
    G,
    K,
    L,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PivotArg {
    A,
    D,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Mp,
    Group,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Mp => Family::Dagger,
            FamilyArg::Group => Family::Sharp,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleKind {
    Penrose,
    Group,
}

enum Failure {
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::UnknownTheorem(_) | Error::Config(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Math(other),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: pseudoschur::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match e {
        Error::Parse { .. } => Failure::Usage(format!("{}: {e}", path.display())),
        other => other.into(),
    })
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Math(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_MATH
        }
    }
}

fn execute(cmd: Command, out: &mut impl Write) -> Result<i32, Failure> {
    let mut text = String::new();
    let mut code = EXIT_OK;
    match cmd {
        Command::Pinv { file, certify } => {
            let m = in_file(&file, parse_matrix(&read(&file)?))?;
            let r = pinv(&m);
            text.push_str(&print_matrix(&r.inverse));
            if certify {
                let c = check_penrose(&m, &r.inverse)?;
                text.push_str(&format!(
                    "# eq1={} eq2={} eq3={} eq4={}\n",
                    c.eq1_holds, c.eq2_holds, c.eq3_holds, c.eq4_holds
                ));
            }
        }
        Command::Ginv { file, certify } => {
            let m = in_file(&file, parse_matrix(&read(&file)?))?;
            let r = ginv(&m)?;
            text.push_str(&print_matrix(&r.inverse));
            if certify {
                let c = check_group(&m, &r.inverse)?;
                text.push_str(&format!(
                    "# eq1={} eq2={} commute={}\n",
                    c.eq1_holds, c.eq2_holds, c.commute_holds
                ));
            }
        }
        Command::Schur { which, file } => {
            let m = in_file(&file, parse_block(&read(&file)?))?;
            let s = match which {
                Which::F => schur_f(&m),
                Which::G => schur_g(&m),
                Which::K => schur_k(&m)?,
                Which::L => schur_l(&m)?,
            };
            text.push_str(&print_matrix(&s));
        }
        Command::Pppt { pivot, family, file } => {
            let m = in_file(&file, parse_block(&read(&file)?))?;
            let pivot = match pivot {
                PivotArg::A => Pivot::A,
                PivotArg::D => Pivot::D,
            };
            let r = transform(&m, family.into(), pivot)?;
            text.push_str(&print_block(&r.transform));
        }
        Command::Absorb { family, a, b } => {
            let ma = in_file(&a, parse_matrix(&read(&a)?))?;
            let mb = in_file(&b, parse_matrix(&read(&b)?))?;
            let v = match family {
                FamilyArg::Mp => mp_absorbing(&ma, &mb)?,
                FamilyArg::Group => group_absorbing(&ma, &mb)?,
            };
            text.push_str(&to_json(&v));
        }
        Command::Oracle { kind, m, x } => {
            let mm = in_file(&m, parse_matrix(&read(&m)?))?;
            let mx = in_file(&x, parse_matrix(&read(&x)?))?;
            match kind {
                OracleKind::Penrose => {
                    let c = check_penrose(&mm, &mx)?;
                    text.push_str(&format!(
                        "eq1={}\neq2={}\neq3={}\neq4={}\n",
                        c.eq1_holds, c.eq2_holds, c.eq3_holds, c.eq4_holds
                    ));
                }
                OracleKind::Group => {
                    let c = check_group(&mm, &mx)?;
                    text.push_str(&format!(
                        "eq1={}\neq2={}\ncommute={}\n",
                        c.eq1_holds, c.eq2_holds, c.commute_holds
                    ));
                }
            }
        }
        Command::Verify {
            theorem,
            trials,
            seed,
            max_dim,
            json,
            timing,
        } => {
            let cfg = GenConfig {
                seed,
                max_dim,
                ..GenConfig::default()
            };
            let reports = if theorem.eq_ignore_ascii_case("all") {
                run_all(&cfg, trials)?
            } else {
                vec![run_suite(theorem.parse::<TheoremId>()?, &cfg, trials)?]
            };
            if reports.iter().any(|r| r.failures > 0) {
                code = EXIT_FAILURE;
            }
            if json {
                let docs: Vec<serde_json::Value> =
                    reports.iter().map(|r| report_json(r, timing)).collect();
                let doc = if docs.len() == 1 {
                    docs.into_iter().next().expect("one report")
                } else {
                    serde_json::Value::Array(docs)
                };
                text.push_str(&serde_json::to_string_pretty(&doc).expect("serializable"));
                text.push('\n');
            } else {
                for r in &reports {
                    text.push_str(&report_text(r, timing));
                }
            }
        }
    }
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Usage(format!("writing output: {e}")))?;
    Ok(code)
}

fn to_json(v: &AbsorptionVerdict) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn report_json(r: &TheoremReport, timing: bool) -> serde_json::Value {
    let mut v = serde_json::to_value(r).expect("serializable");
    if timing {
        v["elapsed_ms"] = serde_json::json!(r.elapsed.as_millis() as u64);
    }
    v
}

fn outcome_word(o: Outcome) -> &'static str {
    match o {
        Outcome::Holds => "holds",
        Outcome::NotApplicable => "vacuous",
        Outcome::Fails => "fails",
    }
}

fn report_text(r: &TheoremReport, timing: bool) -> String {
    let mut s = format!(
        "{}: {} trials, {} passes, {} vacuous, {} failures, {} discards, seed {}",
        r.theorem_id, r.trials, r.passes, r.vacuous, r.failures, r.discards, r.seed
    );
    if timing {
        s.push_str(&format!(", {} ms", r.elapsed.as_millis()));
    }
    s.push('\n');
    for f in &r.fixtures {
        s.push_str(&format!(
            "  fixture {}: {} (expected {}){}\n",
            f.name,
            outcome_word(f.outcome),
            outcome_word(f.expected),
            if f.as_expected { "" } else { " MISMATCH" }
        ));
    }
    for n in &r.notes {
        s.push_str(&format!("  note: {n}\n"));
    }
    if let Some(e) = &r.exploration {
        for (k, v) in &e.counts {
            s.push_str(&format!("  {k}: {v}\n"));
        }
        s.push_str(&format!("  summary: {}\n", e.summary));
    }
    if let Some(c) = &r.counterexample {
        s.push_str(&format!("  counterexample (failing: {}):\n", c.failing_atoms.join(", ")));
        for m in &c.instance {
            s.push_str(&format!("    {} = [{}]\n", m.name, m.entries));
        }
    }
    s
}
