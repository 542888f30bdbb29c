//! Command implementations for the `sl-local` binary.
//!
//! Every command produces a JSON report (stable key order) plus a one-line
//! human summary and an exit code: 0 for a definitive answer, 2 when a
//! search budget ran out, 1 for bad input.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use sl_local::counterexample::{DeltaAlpha, DemoReport};
use sl_local::local::{
    self, certify_on_points, det_preserving_sl2, refute_search, sl2_classify, CertificationReport,
    Refutation, RefuteBudget, ScanTier, Sl2Verdict, Verdict,
};
use sl_local::rational::parse_rational;
use sl_local::simwit::{similarity_witness, SearchBudget, SimilarityWitness, WitnessOutcome};
use sl_local::{LinMap, Mat, Poly, SignedAuto, SlElement};

pub const EXIT_DEFINITIVE: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sl-local",
    version,
    about = "Local automorphism checks for sl_n over the rationals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a map on sl_2 is a local automorphism.
    #[command(name = "classify-sl2")]
    ClassifySl2 {
        #[arg(long)]
        map: PathBuf,
    },
    /// Certify a map pointwise on a set of elements (default: the canonical basis).
    Certify {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        points: Option<PathBuf>,
        /// Random combinations tried per witness search.
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for a point where the map is provably not an automorphism.
    Refute {
        #[arg(long)]
        map: PathBuf,
        /// Random points scanned after the deterministic tiers.
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide similarity of two matrices and produce a conjugating witness.
    Witness {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build the D_alpha counterexample on sl_n and run every check on it.
    Counterexample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1", allow_negative_numbers = true)]
        alpha: String,
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Finished command: report JSON, stderr summary, exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub json: String,
    pub summary: String,
    pub code: i32,
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub verdict: Sl2Verdict,
    pub det_preserving: bool,
    pub witness: Option<SignedAuto>,
}

#[derive(Debug, Serialize)]
pub struct RefuteReport {
    pub verdict: Verdict,
    pub tier: Option<ScanTier>,
    pub refutation: Option<Refutation>,
    pub points_scanned: usize,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct WitnessReport {
    pub similar: bool,
    pub outcome: &'static str,
    pub witness: Option<SimilarityWitness>,
    pub x_invariant_factors: Vec<Poly>,
    pub y_invariant_factors: Vec<Poly>,
    pub seed: u64,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {what} {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {what} {}", path.display()))
}

/// Parses a LinMap document (`{"n": .., "M": [[..]]}`).
pub fn parse_linmap(text: &str) -> Result<LinMap> {
    Ok(serde_json::from_str(text)?)
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::ClassifySl2 { map } => {
            let map: LinMap = read_json(map, "map")?;
            if map.n() != 2 {
                bail!("classify-sl2 needs a map on sl_2, got n = {}", map.n());
            }
            let verdict = sl2_classify(&map)?;
            let report = ClassifyReport {
                verdict,
                det_preserving: det_preserving_sl2(&map)?,
                witness: if verdict.is_local() {
                    map.recognize()
                } else {
                    None
                },
            };
            let summary = match &report.witness {
                Some(w) => format!("{verdict}: {w}"),
                None => verdict.to_string(),
            };
            Ok(Outcome {
                json: to_json(&report)?,
                summary,
                code: EXIT_DEFINITIVE,
            })
        }
        Command::Certify {
            map,
            points,
            budget,
            seed,
        } => {
            let map: LinMap = read_json(map, "map")?;
            let points: Vec<SlElement> = match points {
                Some(p) => read_json(p, "points")?,
                None => local::basis_points(map.n()),
            };
            if let Some(p) = points.iter().find(|p| p.n() != map.n()) {
                bail!("point has n = {} but the map has n = {}", p.n(), map.n());
            }
            let budget = SearchBudget {
                random_draws: *budget,
                seed: *seed,
            };
            let report: CertificationReport = certify_on_points(&map, &points, &budget)?;
            let summary = format!(
                "{}: {} certified, {} refuted, {} budget-exhausted",
                report.verdict,
                report.certificates.len(),
                report.refutations.len(),
                report.budget_exhausted.len()
            );
            Ok(Outcome {
                json: to_json(&report)?,
                summary,
                code: verdict_code(report.verdict),
            })
        }
        Command::Refute { map, budget, seed } => {
            let map: LinMap = read_json(map, "map")?;
            let out = refute_search(
                &map,
                RefuteBudget {
                    random_points: *budget,
                    seed: *seed,
                },
            )?;
            let (tier, refutation) = out
                .refutation
                .map_or((None, None), |(t, r)| (Some(t), Some(r)));
            let verdict = if refutation.is_some() {
                Verdict::NotLocal
            } else {
                Verdict::Inconclusive
            };
            let summary = match &refutation {
                Some(r) => format!("{verdict}: fails at {}", r.point),
                None => format!("{verdict}: no refutation in {} points", out.points_scanned),
            };
            let report = RefuteReport {
                verdict,
                tier,
                refutation,
                points_scanned: out.points_scanned,
                seed: *seed,
            };
            Ok(Outcome {
                json: to_json(&report)?,
                summary,
                code: verdict_code(verdict),
            })
        }
        Command::Witness { x, y, budget, seed } => {
            let x: Mat = read_json(x, "matrix")?;
            let y: Mat = read_json(y, "matrix")?;
            let budget = SearchBudget {
                random_draws: *budget,
                seed: *seed,
            };
            let outcome = similarity_witness(&x, &y, &budget)?;
            let (similar, label, code) = match &outcome {
                WitnessOutcome::Found(_) => (true, "found", EXIT_DEFINITIVE),
                WitnessOutcome::NotSimilar => (false, "not-similar", EXIT_DEFINITIVE),
                WitnessOutcome::BudgetExhausted => (true, "budget-exhausted", EXIT_INCONCLUSIVE),
            };
            let report = WitnessReport {
                similar,
                outcome: label,
                witness: outcome.witness().cloned(),
                x_invariant_factors: x.invariant_factors()?,
                y_invariant_factors: y.invariant_factors()?,
                seed: *seed,
            };
            let summary = match &report.witness {
                Some(w) => format!("similar, X T = T Y with T = {}", w.t),
                None => label.to_string(),
            };
            Ok(Outcome {
                json: to_json(&report)?,
                summary,
                code,
            })
        }
        Command::Counterexample {
            n,
            alpha,
            budget,
            seed,
        } => {
            let alpha = parse_rational(alpha)?;
            let delta = DeltaAlpha::new(*n, alpha)?;
            let report: DemoReport = delta.demo(
                &SearchBudget::default(),
                RefuteBudget {
                    random_points: *budget,
                    seed: *seed,
                },
            )?;
            let summary = format!(
                "D_alpha on sl_{n}: identities {}, basis certified {}, rank of D^2(E_1,n-1) = {}, {}",
                report.identities_verified,
                report.basis_certified,
                report.rank_of_delta_squared_image,
                report.verdict
            );
            Ok(Outcome {
                json: to_json(&report)?,
                summary,
                code: verdict_code(report.verdict),
            })
        }
    }
}

fn verdict_code(v: Verdict) -> i32 {
    if v.is_definitive() {
        EXIT_DEFINITIVE
    } else {
        EXIT_INCONCLUSIVE
    }
}

/// Writes the report to `out` or stdout.
pub fn emit_report(outcome: &Outcome, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, &outcome.json)
            .with_context(|| format!("writing report to {}", path.display())),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(outcome.json.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}
