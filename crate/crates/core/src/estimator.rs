//! Cosine-similarity matching of a normalized chroma against the key profiles.

use crate::chroma::{ChromaVector, NormalizedChroma};
use crate::error::{Error, Result};
use crate::pitch::Key;
use crate::profiles::KeyProfileSet;

/// The winning key and its scores.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyEstimate {
    pub key: Key,
    /// Dot product of the chroma with the winning profile.
    pub correlation: f64,
    /// Winner minus runner-up. Reported alongside `correlation` as a
    /// separation measure; zero on an exact tie.
    pub margin: f64,
    /// All 24 scores in profile-set order.
    pub scores: [f64; 24],
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KeyOutcome {
    Key(KeyEstimate),
    /// Mean chroma was (near) zero; no key was scored.
    NoKey,
}

impl KeyOutcome {
    pub fn estimate(&self) -> Option<&KeyEstimate> {
        match self {
            KeyOutcome::Key(e) => Some(e),
            KeyOutcome::NoKey => None,
        }
    }
}

/// Dot product of a unit chroma with each profile, in set order.
pub fn correlate(chroma: &ChromaVector, profiles: &KeyProfileSet) -> Result<[f64; 24]> {
    if !chroma.is_normalized() {
        return Err(Error::UnnormalizedChroma);
    }
    assert_eq!(profiles.len(), 24, "profile set must hold 24 keys");
    let mut scores = [0.0; 24];
    for (score, profile) in scores.iter_mut().zip(profiles.iter()) {
        *score = chroma
            .values()
            .iter()
            .zip(profile.values())
            .map(|(c, p)| c * p)
            .sum();
    }
    Ok(scores)
}

/// Argmax over the 24 scores. Ties go to the lowest index.
pub fn estimate_key(chroma: &NormalizedChroma, profiles: &KeyProfileSet) -> Result<KeyOutcome> {
    let chroma = match chroma {
        NormalizedChroma::Silence => return Ok(KeyOutcome::NoKey),
        NormalizedChroma::Tonal(c) => c,
    };
    let scores = correlate(chroma, profiles)?;

    let mut best = 0;
    for (j, &s) in scores.iter().enumerate() {
        if s > scores[best] {
            best = j;
        }
    }
    let runner_up = scores
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != best)
        .map(|(_, &s)| s)
        .fold(f64::NEG_INFINITY, f64::max);

    Ok(KeyOutcome::Key(KeyEstimate {
        key: profiles.profiles()[best].key(),
        correlation: scores[best],
        margin: scores[best] - runner_up,
        scores,
    }))
}
