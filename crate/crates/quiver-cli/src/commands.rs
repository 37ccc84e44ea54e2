//! The non-fuzzing subcommands.

use std::collections::BTreeMap;
use std::fs;

use quiver_core::diagram::{compute_p, Path, RankConditions, RectDiagram};
use quiver_core::factor_seq::{
    enumerate_factor_sequences, shape_census, FactorSequence, TableauDiagram,
};
use quiver_core::involution::{pair_involution, InvolutionError};
use quiver_core::rng::SeededRng;

use crate::report::*;
use crate::{DiagramArgs, FillingArgs};

pub fn load_diagram(args: &DiagramArgs) -> Result<RectDiagram, u8> {
    let (path, is_rank) = match (&args.rank_file, &args.rect_file) {
        (Some(p), None) => (p, true),
        (None, Some(p)) => (p, false),
        _ => {
            eprintln!("error: pass exactly one of --rank-file or --rect-file");
            return Err(EXIT_BAD_DIAGRAM);
        }
    };
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {path}: {e}");
        EXIT_BAD_DIAGRAM
    })?;
    if is_rank {
        let rc: RankConditions = serde_json::from_str(&text).map_err(|e| {
            eprintln!("error: bad rank-condition file: {e}");
            EXIT_BAD_DIAGRAM
        })?;
        rc.rect_diagram().map_err(|e| {
            eprintln!("error: {e}");
            EXIT_BAD_DIAGRAM
        })
    } else {
        serde_json::from_str(&text).map_err(|e| {
            eprintln!("error: bad rectangle-diagram file: {e}");
            EXIT_BAD_DIAGRAM
        })
    }
}

fn parse_path(word: &str, n: usize) -> Result<Path, u8> {
    let path: Path = word.parse().map_err(|e| {
        eprintln!("error: {e}");
        EXIT_BAD_PATH
    })?;
    path.check(n).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_BAD_PATH
    })?;
    Ok(path)
}

fn make_filling(rd: &RectDiagram, args: &FillingArgs) -> Result<TableauDiagram, u8> {
    if args.filling == "canonical" {
        Ok(TableauDiagram::canonical(rd))
    } else if args.filling == "random" {
        let mut rng = SeededRng::new(args.seed);
        Ok(TableauDiagram::random(rd, 2, &mut rng))
    } else if let Some(path) = args.filling.strip_prefix("file:") {
        let text = fs::read_to_string(path).map_err(|e| {
            eprintln!("error: cannot read {path}: {e}");
            EXIT_BAD_DIAGRAM
        })?;
        let td: TableauDiagram = serde_json::from_str(&text).map_err(|e| {
            eprintln!("error: bad filling file: {e}");
            EXIT_BAD_DIAGRAM
        })?;
        if td.rect_diagram() != *rd {
            eprintln!("error: filling file does not match the diagram");
            return Err(EXIT_BAD_DIAGRAM);
        }
        Ok(td)
    } else {
        eprintln!("error: --filling must be canonical, random, or file:PATH");
        Err(EXIT_BAD_DIAGRAM)
    }
}

pub fn cmd_coeffs(diagram: &DiagramArgs, path_word: &str, out: Option<&str>) -> u8 {
    let rd = match load_diagram(diagram) {
        Ok(rd) => rd,
        Err(code) => return code,
    };
    let path = match parse_path(path_word, rd.n) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let element = compute_p(&path, &rd).expect("validated inputs");
    emit(out, &serde_json::to_string(&element).expect("serializable"))
}

pub fn cmd_factor_seqs(
    diagram: &DiagramArgs,
    path_word: &str,
    filling: &FillingArgs,
    out: Option<&str>,
) -> u8 {
    let rd = match load_diagram(diagram) {
        Ok(rd) => rd,
        Err(code) => return code,
    };
    let path = match parse_path(path_word, rd.n) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let td = match make_filling(&rd, filling) {
        Ok(td) => td,
        Err(code) => return code,
    };
    let seqs = enumerate_factor_sequences(&path, &td).expect("validated inputs");
    let census = shape_census(seqs.iter());
    let report = FactorSeqReport {
        n: rd.n,
        path: path.to_string(),
        filling: filling.filling.clone(),
        sequences: seqs
            .iter()
            .map(|labels| FactorSequence::new(&path, labels.clone()))
            .collect(),
        census: census_entries(&census),
    };
    emit(out, &serde_json::to_string(&report).expect("serializable"))
}

pub fn cmd_verify_conj1(
    diagram: &DiagramArgs,
    path_word: &str,
    filling: &FillingArgs,
    out: Option<&str>,
) -> u8 {
    let rd = match load_diagram(diagram) {
        Ok(rd) => rd,
        Err(code) => return code,
    };
    let path = match parse_path(path_word, rd.n) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let td = match make_filling(&rd, filling) {
        Ok(td) => td,
        Err(code) => return code,
    };
    let element = compute_p(&path, &rd).expect("validated inputs");
    let seqs = enumerate_factor_sequences(&path, &td).expect("validated inputs");
    let census = shape_census(seqs.iter());

    let mut discrepancies = Vec::new();
    let mut keys: BTreeMap<Vec<_>, ()> = BTreeMap::new();
    for key in element.terms().keys() {
        keys.insert(key.clone(), ());
    }
    for key in census.keys() {
        keys.insert(key.clone(), ());
    }
    for (key, ()) in &keys {
        let coeff = element.coefficient(key);
        let count = census.get(key).copied().unwrap_or(0);
        if coeff != count as i64 {
            discrepancies.push(Discrepancy {
                shapes: key.clone(),
                coefficient: coeff,
                sequences: count,
            });
        }
    }
    let matches = discrepancies.is_empty();
    let report = Conj1Report {
        n: rd.n,
        path: path.to_string(),
        filling: filling.filling.clone(),
        coefficients: element
            .terms()
            .iter()
            .map(|(shapes, &coeff)| CoefficientEntry {
                shapes: shapes.clone(),
                coeff,
            })
            .collect(),
        census: census_entries(&census),
        matches,
        discrepancies,
    };
    let code = emit(out, &serde_json::to_string(&report).expect("serializable"));
    if code != EXIT_OK {
        return code;
    }
    if matches {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

pub fn cmd_involution(pair_file: &str, trace: bool, out: Option<&str>) -> u8 {
    let text = match fs::read_to_string(pair_file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {pair_file}: {e}");
            return EXIT_BAD_DIAGRAM;
        }
    };
    let pair: PairFile = match serde_json::from_str(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: bad pair file: {e}");
            return EXIT_BAD_DIAGRAM;
        }
    };
    if pair.a == 0 {
        eprintln!("error: a must be positive");
        return EXIT_BAD_PAIR;
    }
    match pair_involution(&pair.q, &pair.p, pair.a) {
        Ok(outcome) => {
            let report = InvolutionReport {
                q: outcome.q,
                p: outcome.p,
                exchanges: outcome.exchanges,
                trace: trace.then(|| outcome.trace.iter().map(|d| d.rows.clone()).collect()),
            };
            emit(out, &serde_json::to_string(&report).expect("serializable"))
        }
        Err(e @ (InvolutionError::TooManyRows | InvolutionError::VanishingS | InvolutionError::FitsTogether)) => {
            eprintln!("error: {e}");
            EXIT_BAD_PAIR
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_MISMATCH
        }
    }
}
