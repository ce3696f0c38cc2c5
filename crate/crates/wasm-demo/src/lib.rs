//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each exported function takes plain strings and returns a JSON document.
//! The `*_report` functions hold the logic and are usable natively.

use attractor_queries::gadgets::{
    delta_encode, excess_encode, findclose_encode, slp_delta_transform, slp_excess_transform,
    slp_findclose_transform, verify_reductions,
};
use attractor_queries::psum::StepKind;
use attractor_queries::{
    build_slp, lz77_parse, validate_attractor_capped, attractor_from_lz77, Phrase, PsumIndex, Text,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Texts longer than this are parsed but not validated.
const VALIDATE_LIMIT: usize = 2048;

fn parse_text(input: &str, ints: bool) -> Result<Text, String> {
    let text = if ints { Text::from_ints_str(input).map_err(|e| e.to_string())? } else { Text::from_bytes(input.as_bytes()) };
    if text.is_empty() {
        return Err("empty input".into());
    }
    Ok(text)
}

#[derive(Serialize, Debug)]
pub struct AttractorReport {
    pub n: usize,
    pub phrases: Vec<String>,
    pub attractor: Vec<u64>,
    /// `None` when the text is too long to validate here.
    pub valid: Option<bool>,
}

pub fn attractor_report(input: &str, ints: bool) -> Result<AttractorReport, String> {
    let text = parse_text(input, ints)?;
    let parse = lz77_parse(&text);
    let gamma = attractor_from_lz77(&parse);
    let phrases = parse
        .phrases()
        .iter()
        .map(|p| match *p {
            Phrase::Literal(c) => format!("lit {c}"),
            Phrase::Copy { src, len } => format!("copy {src}+{len}"),
        })
        .collect();
    let valid = if text.len() <= VALIDATE_LIMIT {
        Some(validate_attractor_capped(&text, &gamma, VALIDATE_LIMIT).map_err(|e| e.to_string())?)
    } else {
        None
    };
    Ok(AttractorReport { n: text.len(), phrases, attractor: gamma.positions().to_vec(), valid })
}

#[derive(Serialize, Debug)]
pub struct TraceStep {
    pub level: usize,
    pub block: usize,
    pub prefix: u64,
    pub kind: &'static str,
    pub d: Option<u64>,
    pub rest: Option<u64>,
}

#[derive(Serialize, Debug)]
pub struct TraceReport {
    pub n: usize,
    pub gamma: usize,
    pub tau: u64,
    pub levels: usize,
    pub block_lens: Vec<u64>,
    pub blocks_per_level: Vec<usize>,
    pub v: u64,
    pub sum: u64,
    pub depth: usize,
    pub steps: Vec<TraceStep>,
}

pub fn trace_report(input: &str, ints: bool, tau: u64, v: u64) -> Result<TraceReport, String> {
    let text = parse_text(input, ints)?;
    let gamma = attractor_from_lz77(&lz77_parse(&text));
    let idx = PsumIndex::build(&text, &gamma, tau).map_err(|e| e.to_string())?;
    let (sum, steps) = idx.trace(v).map_err(|e| e.to_string())?;
    let steps: Vec<TraceStep> = steps
        .iter()
        .map(|s| {
            let (kind, d, rest) = match s.kind {
                StepKind::Explicit => ("explicit", None, None),
                StepKind::Right { d, rest } => ("right", Some(d), Some(rest)),
                StepKind::Left { d, rest } => ("left", Some(d), Some(rest)),
            };
            TraceStep { level: s.level, block: s.block, prefix: s.prefix, kind, d, rest }
        })
        .collect();
    Ok(TraceReport {
        n: text.len(),
        gamma: gamma.len(),
        tau,
        levels: idx.params().levels(),
        block_lens: idx.params().block_lens().to_vec(),
        blocks_per_level: idx.space_stats().blocks_per_level,
        v,
        sum,
        depth: steps.len(),
        steps,
    })
}

#[derive(Serialize, Debug)]
pub struct Identity {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
}

#[derive(Serialize, Debug)]
pub struct GrammarSizes {
    pub input: usize,
    pub delta: usize,
    pub excess: usize,
    pub findclose: usize,
}

#[derive(Serialize, Debug)]
pub struct GadgetReport {
    pub n: usize,
    pub delta: String,
    pub excess: String,
    pub findclose: String,
    pub identities: Vec<Identity>,
    pub grammar: GrammarSizes,
}

pub fn gadget_report(bits: &str) -> Result<GadgetReport, String> {
    let s = Text::from_bits_str(bits.trim()).map_err(|e| e.to_string())?;
    if s.is_empty() {
        return Err("empty bitstring".into());
    }
    let err = |e: attractor_queries::Error| e.to_string();
    let report = verify_reductions(&s).map_err(err)?;
    let g = build_slp(&s).map_err(err)?;
    let n = s.len() as u64;
    Ok(GadgetReport {
        n: s.len(),
        delta: delta_encode(&s).map_err(err)?.to_string(),
        excess: excess_encode(&s).map_err(err)?.to_string(),
        findclose: findclose_encode(&s).map_err(err)?.to_string(),
        identities: report
            .checks
            .iter()
            .map(|c| Identity { name: c.name, checked: c.checked, failures: c.failures })
            .collect(),
        grammar: GrammarSizes {
            input: g.size(),
            delta: slp_delta_transform(&g).map_err(err)?.size(),
            excess: slp_excess_transform(&g, n).map_err(err)?.size(),
            findclose: slp_findclose_transform(&g, n).map_err(err)?.size(),
        },
    })
}

fn to_json<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    let value = r.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&value).map_err(|e| JsError::new(&e.to_string()))
}

/// LZ77 phrases of the input and the attractor formed by their last positions.
#[wasm_bindgen]
pub fn lz77_attractor(input: &str, ints: bool) -> Result<String, JsError> {
    to_json(attractor_report(input, ints))
}

/// Level-by-level trace of `psum(v)` over an index built with the LZ77
/// attractor.
#[wasm_bindgen]
pub fn psum_trace(input: &str, ints: bool, tau: u32, v: u32) -> Result<String, JsError> {
    to_json(trace_report(input, ints, u64::from(tau), u64::from(v)))
}

/// The three encodings of a bitstring, the identity checks and grammar sizes.
#[wasm_bindgen]
pub fn gadgets(bits: &str) -> Result<String, JsError> {
    to_json(gadget_report(bits))
}
