//! Seeded fuzzing of the pair involution against the membership criterion.
//!
//! Each trial draws a random generalized rectangle diagram, a random valid
//! filling, and a random path with a valley; samples a factor sequence;
//! and, when the valley labels satisfy the involution's hypotheses, checks
//! that involuting them yields another factor sequence. Trials whose labels
//! miss the hypotheses are counted as skipped, never hidden: the hypotheses
//! are narrow and silent skipping would fake coverage.
//!
//! The trial stream is JSONL, one report per line, then one summary object.
//! Trial `i` of a campaign with seed `s` runs from effective seed `s + i`,
//! so any single report replays bit-for-bit with `--trials 1 --seed <seed>`.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufWriter, Write};

use quiver_core::diagram::{Path, RectDiagram};
use quiver_core::factor_seq::{
    is_factor_sequence, sample_factor_sequence_stratified, FactorSequence, TableauDiagram,
};
use quiver_core::involution::{attach_s, involute_around_rect};
use quiver_core::rng::{SeededRng, RNG_ALGORITHM};
use quiver_core::tableau::fits_around;

use crate::report::*;

pub fn cmd_fuzz_conj2(trials: u64, max_rows: usize, max_dim: u32, seed: u64, out: Option<&str>) -> u8 {
    if trials == 0 || max_rows == 0 {
        eprintln!("error: need at least one trial and one diagram row");
        return EXIT_BAD_DIAGRAM;
    }
    let sink: Box<dyn Write> = match out {
        None => Box::new(io::stdout().lock()),
        Some(path) => match fs::File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot write {path}: {e}");
                return EXIT_BAD_DIAGRAM;
            }
        },
    };
    let mut sink = sink;
    let mut ok = 0u64;
    let mut skipped = 0u64;
    let mut counterexamples = 0u64;
    let mut skip_reasons: BTreeMap<String, u64> = BTreeMap::new();
    for trial in 0..trials {
        let trial_seed = seed.wrapping_add(trial);
        let report = run_trial(trial_seed, max_rows, max_dim);
        match report.verdict {
            "ok" => ok += 1,
            "counterexample" => counterexamples += 1,
            _ => {
                skipped += 1;
                let reason = report.skip_reason.clone().unwrap_or_default();
                *skip_reasons.entry(reason).or_insert(0) += 1;
            }
        }
        let line = serde_json::to_string(&report).expect("serializable");
        if writeln!(sink, "{line}").is_err() {
            eprintln!("error: write failed");
            return EXIT_BAD_DIAGRAM;
        }
    }
    let summary = FuzzSummary {
        rng: RNG_ALGORITHM,
        seed,
        trials,
        ok,
        skipped,
        counterexamples,
        skip_reasons,
    };
    let line = serde_json::to_string(&summary).expect("serializable");
    if writeln!(sink, "{line}").is_err() {
        eprintln!("error: write failed");
        return EXIT_BAD_DIAGRAM;
    }
    if counterexamples == 0 {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

pub fn run_trial(trial_seed: u64, max_rows: usize, max_dim: u32) -> TrialReport {
    let mut rng = SeededRng::new(trial_seed);
    // Max of two draws: larger diagrams carry most of the interesting
    // configurations, small ones still appear.
    let n = rng.range(1, max_rows as u64).max(rng.range(1, max_rows as u64)) as usize;
    let rd = RectDiagram::random(n, max_dim, &mut rng);
    let td = TableauDiagram::random(&rd, 2, &mut rng);
    let path = Path::random_with_valley(n, &mut rng);
    let labels = sample_factor_sequence_stratified(&path, &td, &mut rng);

    // Scan the valleys in a seeded random order and involute at the first
    // one whose labels meet the hypotheses; the trial is skipped only when
    // every valley misses them.
    let mut valleys = path.valleys();
    for k in (1..valleys.len()).rev() {
        valleys.swap(k, rng.below(k as u64 + 1) as usize);
    }

    let dims = rd
        .iter()
        .map(|(_, d)| format!("{}x{}", d.rows, d.cols))
        .collect::<Vec<_>>()
        .join(" ");
    let mut report = TrialReport {
        seed: trial_seed,
        n,
        dims,
        boxes: rd.expected_codim(),
        path: path.to_string(),
        valley: valleys[0],
        verdict: "skipped-precondition",
        skip_reason: None,
        witness: None,
    };

    let mut chosen = None;
    let mut miss = "y-taller-than-rectangle";
    for &valley in &valleys {
        let (i, j) = path.valley_rectangle(valley);
        let rect = td.tableau(i, j);
        let x = &labels[valley];
        let y = &labels[valley + 1];
        if y.row_count() > rect.a as usize {
            continue;
        }
        miss = if miss == "y-taller-than-rectangle" { "fits-around" } else { miss };
        if fits_around(x, y, rect) {
            continue;
        }
        match attach_s(rect, x, y) {
            Ok(s) if s.is_zero() => {
                miss = "attached-s-vanishes";
                continue;
            }
            Ok(_) => {
                chosen = Some((valley, rect));
                break;
            }
            Err(e) => {
                report.skip_reason = Some(format!("attach-error: {e}"));
                return report;
            }
        }
    }
    let Some((valley, rect)) = chosen else {
        report.skip_reason = Some(miss.to_string());
        return report;
    };
    report.valley = valley;
    let x = &labels[valley];
    let y = &labels[valley + 1];

    match involute_around_rect(rect, x, y) {
        Ok((x2, y2)) => {
            let mut new_labels = labels.clone();
            new_labels[valley] = x2;
            new_labels[valley + 1] = y2;
            let still = is_factor_sequence(&path, &new_labels, &td).expect("lengths match");
            if still {
                report.verdict = "ok";
            } else {
                report.verdict = "counterexample";
                report.witness = Some(Witness {
                    diagram: td.clone(),
                    sequence: FactorSequence::new(&path, labels),
                    involuted: FactorSequence::new(&path, new_labels),
                });
            }
        }
        Err(e) => {
            // The hypotheses held but the involution refused the pair; that
            // is itself a finding worth a counterexample report.
            report.verdict = "counterexample";
            report.skip_reason = Some(format!("involution-error: {e}"));
            report.witness = Some(Witness {
                diagram: td.clone(),
                sequence: FactorSequence::new(&path, labels.clone()),
                involuted: FactorSequence::new(&path, labels),
            });
        }
    }
    report
}
