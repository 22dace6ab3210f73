//! Major/minor key profiles and the full set of 24 transposed templates.
//!
//! The two base vectors are the Krumhansl–Kessler probe-tone ratings for
//! C major and C minor. Every other key is a circular shift of its base,
//! normalized to unit length.

use std::path::Path;

use crate::error::{Error, Result};
use crate::pitch::{Key, Mode, PitchClass};

pub const C_MAJOR_PROFILE: [f64; 12] = [
    6.35, 2.23, 3.48, 2.33, 4.38, 4.09, 2.52, 5.19, 2.39, 3.66, 2.29, 2.88,
];

pub const C_MINOR_PROFILE: [f64; 12] = [
    6.33, 2.68, 3.52, 5.38, 2.60, 3.53, 2.54, 4.75, 3.98, 2.69, 3.34, 3.17,
];

/// Squares are summed in ascending order, so the result is bit-identical
/// for any permutation of `v`.
pub fn euclidean_norm(v: &[f64; 12]) -> f64 {
    let mut squares = v.map(|x| x * x);
    squares.sort_by(f64::total_cmp);
    squares.iter().sum::<f64>().sqrt()
}

pub fn normalize_profile(v: &[f64; 12]) -> Result<[f64; 12]> {
    let norm = euclidean_norm(v);
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroVector);
    }
    Ok(v.map(|x| x / norm))
}

/// Rotates `base` up by `s` semitones: `out[k] = base[(k - s) mod 12]`.
pub fn circular_shift(base: &[f64; 12], s: usize) -> [f64; 12] {
    let s = s % 12;
    std::array::from_fn(|k| base[(k + 12 - s) % 12])
}

/// A unit-norm template for one key.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyProfile {
    values: [f64; 12],
    key: Key,
}

impl KeyProfile {
    pub fn values(&self) -> &[f64; 12] {
        &self.values
    }

    pub fn key(&self) -> Key {
        self.key
    }

    pub fn tonic(&self) -> PitchClass {
        self.key.tonic
    }

    pub fn mode(&self) -> Mode {
        self.key.mode
    }
}

/// All 24 profiles: majors with tonic 0..11, then minors with tonic 0..11.
///
/// The order is significant: estimation breaks ties toward the lower index.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyProfileSet {
    profiles: Vec<KeyProfile>,
}

impl KeyProfileSet {
    /// Builds the set from custom base vectors. All values must be positive.
    pub fn from_bases(major: &[f64; 12], minor: &[f64; 12]) -> Result<Self> {
        for (label, base) in [("major", major), ("minor", minor)] {
            if base.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                return Err(Error::ProfileParse(format!(
                    "{label} profile values must be positive and finite"
                )));
            }
        }
        let mut profiles = Vec::with_capacity(24);
        for (mode, base) in [(Mode::Major, major), (Mode::Minor, minor)] {
            for s in 0..12 {
                profiles.push(KeyProfile {
                    values: normalize_profile(&circular_shift(base, s))?,
                    key: Key::new(PitchClass::wrapping(s as i64), mode),
                });
            }
        }
        Ok(KeyProfileSet { profiles })
    }

    pub fn profiles(&self) -> &[KeyProfile] {
        &self.profiles
    }

    pub fn get(&self, key: Key) -> &KeyProfile {
        &self.profiles[key.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = &KeyProfile> {
        self.profiles.iter()
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    /// Reads a profile override file; see [`parse_profile_override`].
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        parse_profile_override(&text)
    }
}

impl Default for KeyProfileSet {
    fn default() -> Self {
        build_profile_set()
    }
}

/// The standard 24-profile set from the built-in base vectors.
pub fn build_profile_set() -> KeyProfileSet {
    KeyProfileSet::from_bases(&C_MAJOR_PROFILE, &C_MINOR_PROFILE)
        .expect("built-in profiles are positive")
}

/// Parses
///
/// ```text
/// major: 6.35, 2.23, ...   (12 values)
/// minor: 6.33, 2.68, ...   (12 values)
/// ```
///
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_profile_override(text: &str) -> Result<KeyProfileSet> {
    let mut major = None;
    let mut minor = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (label, rest) = line.split_once(':').ok_or_else(|| {
            Error::ProfileParse(format!("line {}: expected `label:`", lineno + 1))
        })?;
        let slot = match label.trim().to_ascii_lowercase().as_str() {
            "major" => &mut major,
            "minor" => &mut minor,
            other => {
                return Err(Error::ProfileParse(format!(
                    "line {}: unknown label `{other}`",
                    lineno + 1
                )))
            }
        };
        if slot.is_some() {
            return Err(Error::ProfileParse(format!(
                "line {}: duplicate `{}` entry",
                lineno + 1,
                label.trim()
            )));
        }
        let values = rest
            .split(',')
            .map(|tok| {
                tok.trim().parse::<f64>().map_err(|e| {
                    Error::ProfileParse(format!("line {}: `{}`: {e}", lineno + 1, tok.trim()))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        let arr: [f64; 12] = values.try_into().map_err(|v: Vec<f64>| {
            Error::ProfileParse(format!(
                "line {}: expected 12 values, got {}",
                lineno + 1,
                v.len()
            ))
        })?;
        *slot = Some(arr);
    }
    match (major, minor) {
        (Some(major), Some(minor)) => KeyProfileSet::from_bases(&major, &minor),
        (None, _) => Err(Error::ProfileParse("missing `major:` line".into())),
        (_, None) => Err(Error::ProfileParse("missing `minor:` line".into())),
    }
}
