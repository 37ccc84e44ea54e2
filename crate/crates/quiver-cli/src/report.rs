//! Serializable report shapes shared by the subcommands.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;

use serde::{Deserialize, Serialize};

use quiver_core::factor_seq::{FactorSequence, TableauDiagram};
use quiver_core::partition::Partition;
use quiver_core::tableau::Tableau;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_BAD_DIAGRAM: u8 = 2;
pub const EXIT_BAD_PATH: u8 = 3;
pub const EXIT_BAD_PAIR: u8 = 4;

#[derive(Serialize)]
pub struct CensusEntry {
    pub shapes: Vec<Partition>,
    pub count: u64,
}

pub fn census_entries(census: &BTreeMap<Vec<Partition>, u64>) -> Vec<CensusEntry> {
    census
        .iter()
        .map(|(shapes, &count)| CensusEntry {
            shapes: shapes.clone(),
            count,
        })
        .collect()
}

#[derive(Serialize)]
pub struct CoefficientEntry {
    pub shapes: Vec<Partition>,
    pub coeff: i64,
}

#[derive(Serialize)]
pub struct Conj1Report {
    pub n: usize,
    pub path: String,
    pub filling: String,
    pub coefficients: Vec<CoefficientEntry>,
    pub census: Vec<CensusEntry>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub discrepancies: Vec<Discrepancy>,
}

#[derive(Serialize)]
pub struct Discrepancy {
    pub shapes: Vec<Partition>,
    pub coefficient: i64,
    pub sequences: u64,
}

#[derive(Serialize)]
pub struct FactorSeqReport {
    pub n: usize,
    pub path: String,
    pub filling: String,
    pub sequences: Vec<FactorSequence>,
    pub census: Vec<CensusEntry>,
}

/// One fuzz trial, replayable bit-for-bit from its recorded seed with
/// `--trials 1 --seed <seed>`; the line number in the stream is the trial
/// index. Counterexamples carry a full witness.
#[derive(Serialize)]
pub struct TrialReport {
    pub seed: u64,
    pub n: usize,
    /// Rectangle sizes in reading order of the diagram, `rows x cols`.
    pub dims: String,
    pub boxes: u64,
    pub path: String,
    pub valley: usize,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Serialize)]
pub struct Witness {
    pub diagram: TableauDiagram,
    pub sequence: FactorSequence,
    pub involuted: FactorSequence,
}

#[derive(Serialize)]
pub struct FuzzSummary {
    pub rng: &'static str,
    pub seed: u64,
    pub trials: u64,
    pub ok: u64,
    pub skipped: u64,
    pub counterexamples: u64,
    pub skip_reasons: BTreeMap<String, u64>,
}

#[derive(Serialize)]
pub struct InvolutionReport {
    pub q: Tableau,
    pub p: Tableau,
    pub exchanges: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<Vec<Vec<u32>>>>,
}

#[derive(Deserialize)]
pub struct PairFile {
    pub q: Tableau,
    pub p: Tableau,
    pub a: usize,
}

/// Writes a payload to `--out` or standard output, newline-terminated.
pub fn emit(out: Option<&str>, payload: &str) -> u8 {
    match out {
        None => {
            println!("{payload}");
            EXIT_OK
        }
        Some(path) => match fs::File::create(path).and_then(|mut f| writeln!(f, "{payload}")) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: cannot write {path}: {e}");
                EXIT_BAD_DIAGRAM
            }
        },
    }
}
