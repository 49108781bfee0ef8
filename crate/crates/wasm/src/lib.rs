//! Browser bindings: each export takes plain strings and numbers and returns
//! the same JSON documents the `logfano` CLI prints.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use logfano::report::{to_json, word_report};
use logfano::{
    log_fano_certificate, sweep_certificates, CartanClass, GeneralizedCartanMatrix, MPolicy,
    SweepOptions, Word,
};

/// Longest sweep the page will request for non-finite types.
const MAX_SWEEP_LENGTH: usize = 16;

fn parse(type_name: &str, word: &str) -> Result<(GeneralizedCartanMatrix, Word), String> {
    let gcm = GeneralizedCartanMatrix::builtin(type_name).map_err(|e| e.to_string())?;
    let word: Word = word.parse().map_err(|e: logfano::Error| e.to_string())?;
    word.check(&gcm).map_err(|e| e.to_string())?;
    Ok((gcm, word))
}

#[derive(Serialize)]
struct CartanInfo {
    #[serde(rename = "type")]
    cartan_type: String,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    class: CartanClass,
}

/// Rank, matrix and classification of a builtin type.
#[wasm_bindgen]
pub fn cartan_info(type_name: &str) -> Result<String, String> {
    let gcm = GeneralizedCartanMatrix::builtin(type_name).map_err(|e| e.to_string())?;
    Ok(to_json(&CartanInfo {
        cartan_type: gcm.label().to_string(),
        rank: gcm.rank(),
        cartan: gcm.rows(),
        class: gcm.classify(),
    }))
}

/// Divisor data for any word; the Schubert block appears for reduced words.
/// `m = 0` selects the default `M`.
#[wasm_bindgen]
pub fn report(type_name: &str, word: &str, m: i32) -> Result<String, String> {
    let (gcm, word) = parse(type_name, word)?;
    let m = (m != 0).then_some(i64::from(m));
    word_report(&gcm, &word, m)
        .map(|r| to_json(&r))
        .map_err(|e| e.to_string())
}

/// Log Fano certificate for a reduced word.
#[wasm_bindgen]
pub fn certify(type_name: &str, word: &str, m: i32) -> Result<String, String> {
    let (gcm, word) = parse(type_name, word)?;
    let m = (m != 0).then_some(i64::from(m));
    log_fano_certificate(&gcm, &word, m)
        .map(|c| to_json(&c))
        .map_err(|e| e.to_string())
}

/// Certificate sweep over every element up to `max_length`, with `M` offset
/// `m_offset` above the minimal choice.
#[wasm_bindgen]
pub fn sweep(type_name: &str, max_length: u32, m_offset: u32) -> Result<String, String> {
    let gcm = GeneralizedCartanMatrix::builtin(type_name).map_err(|e| e.to_string())?;
    let max_length = max_length as usize;
    if gcm.classify() != CartanClass::Finite && max_length > MAX_SWEEP_LENGTH {
        return Err(format!(
            "max length is limited to {MAX_SWEEP_LENGTH} for non-finite types"
        ));
    }
    let mut opts = SweepOptions::new(max_length);
    opts.m_policy = MPolicy::Offset(i64::from(m_offset.max(1)));
    sweep_certificates(&gcm, &opts)
        .map(|r| to_json(&r))
        .map_err(|e| e.to_string())
}
