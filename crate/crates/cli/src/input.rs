//! Observation file parsing.
//!
//! Two layouts are accepted. The line format has one observation per line,
//! `r₁ r₂ r₃ b₁ b₂ b₃ [σ]`, separated by whitespace or commas; blank lines
//! and anything after `#` are ignored. Without σ every observation gets unit
//! weight, and σ must then be absent on every line. The document format is a
//! JSON array of records (optionally wrapped as `{"observations": [...]}`)
//! with keys `reference`, `body` and either `sigma` or `weight`.

use serde::Deserialize;
use thiserror::Error;
use wahba::{Observation, ObservationSet, Vec3d};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("record {index}: {message}")]
    Record { index: usize, message: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("no observations found")]
    Empty,
}

#[derive(Debug, Deserialize)]
struct Record {
    reference: [f64; 3],
    body: [f64; 3],
    sigma: Option<f64>,
    weight: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Document {
    List(Vec<Record>),
    Wrapped { observations: Vec<Record> },
}

fn weight_from(sigma: Option<f64>, weight: Option<f64>) -> Result<f64, String> {
    match (sigma, weight) {
        (Some(_), Some(_)) => Err("give either sigma or weight, not both".into()),
        (Some(s), None) if s > 0.0 && s.is_finite() => Ok((s * s).recip()),
        (Some(s), None) => Err(format!("sigma must be positive and finite, got {s}")),
        (None, Some(w)) => Ok(w),
        (None, None) => Ok(1.0),
    }
}

fn observation(r: [f64; 3], b: [f64; 3], weight: f64) -> Result<Observation<f64>, String> {
    Observation::from_raw(Vec3d::from(r), Vec3d::from(b), weight).map_err(|e| match e {
        wahba::Error::InvalidObservation { reason, .. } => reason,
        other => other.to_string(),
    })
}

fn finish(obs: Vec<Observation<f64>>) -> Result<ObservationSet<f64>, InputError> {
    if obs.is_empty() {
        return Err(InputError::Empty);
    }
    Ok(ObservationSet::new(obs).map_err(|e| InputError::Record { index: 0, message: e.to_string() })?.normalized())
}

fn parse_lines(text: &str) -> Result<ObservationSet<f64>, InputError> {
    let mut obs = Vec::new();
    let mut has_sigma = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| InputError::Line { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields = content
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .map(|f| f.parse::<f64>().map_err(|_| err(format!("`{f}` is not a number"))))
            .collect::<Result<Vec<_>, _>>()?;
        let sigma = match fields.len() {
            6 => None,
            7 => Some(fields[6]),
            n => return Err(err(format!("expected 6 or 7 fields, found {n}"))),
        };
        match has_sigma {
            None => has_sigma = Some(sigma.is_some()),
            Some(h) if h != sigma.is_some() => {
                return Err(err("sigma column must be present on every line or on none".into()))
            }
            _ => {}
        }
        let weight = weight_from(sigma, None).map_err(err)?;
        let r = [fields[0], fields[1], fields[2]];
        let b = [fields[3], fields[4], fields[5]];
        obs.push(observation(r, b, weight).map_err(err)?);
    }
    finish(obs)
}

fn parse_document(text: &str) -> Result<ObservationSet<f64>, InputError> {
    let records = match serde_json::from_str::<Document>(text)? {
        Document::List(r) | Document::Wrapped { observations: r } => r,
    };
    let obs = records
        .into_iter()
        .enumerate()
        .map(|(i, rec)| {
            let err = |message: String| InputError::Record { index: i + 1, message };
            let weight = weight_from(rec.sigma, rec.weight).map_err(err)?;
            observation(rec.reference, rec.body, weight).map_err(err)
        })
        .collect::<Result<Vec<_>, _>>()?;
    finish(obs)
}

/// Parses either layout; JSON is recognized by a leading `[` or `{`.
/// Weights are normalized to sum to one.
pub fn parse_observations(text: &str) -> Result<ObservationSet<f64>, InputError> {
    match text.trim_start().chars().next() {
        Some('[') | Some('{') => parse_document(text),
        _ => parse_lines(text),
    }
}
