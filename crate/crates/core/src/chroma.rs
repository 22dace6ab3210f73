//! Folding spectra onto the 12 pitch classes, time averaging and normalization.

use std::io::Write;

use crate::error::{Error, Result};
use crate::pitch::{PitchClass, PITCH_CLASS_NAMES};
use crate::spectral::{format_sig, Spectrogram, StftConfig};

/// Lowest analyzed frequency (A0). Bins below it are dropped.
pub const MIN_FREQUENCY_HZ: f64 = 27.5;

/// Norm below which the mean chroma is treated as silence.
pub const SILENCE_EPSILON: f64 = 1e-9;

const UNIT_NORM_TOLERANCE: f64 = 1e-9;

/// Real-valued MIDI number of a frequency: `69 + 12 log2(f / 440)`.
pub fn freq_to_midi(freq_hz: f64) -> Result<f64> {
    if freq_hz <= 0.0 || freq_hz.is_nan() {
        return Err(Error::NonPositiveFrequency(freq_hz));
    }
    Ok(69.0 + 12.0 * (freq_hz / 440.0).log2())
}

/// Nearest pitch class, rounding half away from zero.
pub fn midi_to_pitch_class(midi: f64) -> PitchClass {
    // f64::round is half-away-from-zero
    PitchClass::wrapping(midi.round() as i64)
}

/// Twelve pitch-class energies, 0 = C.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChromaVector {
    values: [f64; 12],
    normalized: bool,
}

impl ChromaVector {
    /// An unnormalized vector. Values must be finite and nonnegative.
    pub fn new(values: [f64; 12]) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidSample(
                "chroma values must be finite and nonnegative".into(),
            ));
        }
        Ok(ChromaVector {
            values,
            normalized: false,
        })
    }

    /// Wraps values already known to have unit norm.
    pub fn unit(values: [f64; 12]) -> Result<Self> {
        let mut v = Self::new(values)?;
        let norm = euclid(&values);
        if (norm - 1.0).abs() > UNIT_NORM_TOLERANCE {
            return Err(Error::UnnormalizedChroma);
        }
        v.normalized = true;
        Ok(v)
    }

    pub fn zeros() -> Self {
        ChromaVector {
            values: [0.0; 12],
            normalized: false,
        }
    }

    pub fn values(&self) -> &[f64; 12] {
        &self.values
    }

    pub fn get(&self, pc: PitchClass) -> f64 {
        self.values[pc.index()]
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm(&self) -> f64 {
        euclid(&self.values)
    }

    /// Pitch class with the largest value; lowest index on ties.
    pub fn argmax(&self) -> PitchClass {
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if v > self.values[best] {
                best = i;
            }
        }
        PitchClass::wrapping(best as i64)
    }

    /// Rotates the vector up by `s` semitones: `out[k] = in[(k - s) mod 12]`.
    pub fn shifted(&self, s: usize) -> Self {
        let mut values = [0.0; 12];
        for (k, v) in values.iter_mut().enumerate() {
            *v = self.values[(k + 12 - s % 12) % 12];
        }
        ChromaVector {
            values,
            normalized: self.normalized,
        }
    }
}

fn euclid(v: &[f64; 12]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Result of normalizing a mean chroma: either a unit vector or silence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormalizedChroma {
    Tonal(ChromaVector),
    Silence,
}

impl NormalizedChroma {
    pub fn as_tonal(&self) -> Option<&ChromaVector> {
        match self {
            NormalizedChroma::Tonal(c) => Some(c),
            NormalizedChroma::Silence => None,
        }
    }
}

/// `c / ||c||`, or [`NormalizedChroma::Silence`] when `||c|| <= 1e-9`.
pub fn normalize_chroma(c: &ChromaVector) -> NormalizedChroma {
    let norm = c.norm();
    if norm <= SILENCE_EPSILON {
        return NormalizedChroma::Silence;
    }
    let mut values = c.values;
    for v in &mut values {
        *v /= norm;
    }
    NormalizedChroma::Tonal(ChromaVector {
        values,
        normalized: true,
    })
}

/// Sequence of per-frame (unnormalized) chroma vectors.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Chromagram {
    frames: Vec<ChromaVector>,
}

impl Chromagram {
    pub fn new(frames: Vec<ChromaVector>) -> Self {
        Chromagram { frames }
    }

    pub fn frames(&self) -> &[ChromaVector] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn push(&mut self, frame: ChromaVector) {
        self.frames.push(frame);
    }

    /// Header `frame,C,C#,...,B` then one row per frame, 9 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "frame,{}", PITCH_CLASS_NAMES.join(","))?;
        for (m, frame) in self.frames.iter().enumerate() {
            let row: Vec<String> = frame.values.iter().map(|&v| format_sig(v, 9)).collect();
            writeln!(out, "{m},{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Bin-to-pitch-class assignment for one sample rate and frame length.
///
/// Bin `k` has center `k * sr / L`. DC and bins below [`MIN_FREQUENCY_HZ`]
/// or at/above Nyquist are unassigned.
#[derive(Debug, Clone)]
pub struct BinMap {
    classes: Vec<Option<PitchClass>>,
}

impl BinMap {
    pub fn new(sample_rate: u32, config: &StftConfig) -> Self {
        let sr = sample_rate as f64;
        let l = config.frame_length() as f64;
        let nyquist = sr / 2.0;
        let classes = (0..config.num_bins())
            .map(|k| {
                let f = k as f64 * sr / l;
                if k == 0 || f < MIN_FREQUENCY_HZ || f >= nyquist {
                    return None;
                }
                freq_to_midi(f).ok().map(midi_to_pitch_class)
            })
            .collect();
        BinMap { classes }
    }

    pub fn class_of(&self, bin: usize) -> Option<PitchClass> {
        self.classes.get(bin).copied().flatten()
    }

    pub fn num_bins(&self) -> usize {
        self.classes.len()
    }

    /// Sums magnitudes of one frame into a chroma vector.
    pub fn fold(&self, magnitudes: &[f64]) -> ChromaVector {
        let mut values = [0.0; 12];
        for (mag, class) in magnitudes.iter().zip(&self.classes) {
            if let Some(pc) = class {
                values[pc.index()] += mag;
            }
        }
        ChromaVector {
            values,
            normalized: false,
        }
    }
}

pub fn compute_chromagram(spec: &Spectrogram) -> Chromagram {
    let map = BinMap::new(spec.sample_rate(), spec.config());
    Chromagram::new(spec.frames().map(|f| map.fold(f)).collect())
}

/// Element-wise mean over all frames.
pub fn mean_chroma(cg: &Chromagram) -> Result<ChromaVector> {
    if cg.is_empty() {
        return Err(Error::EmptyChromagram);
    }
    let mut values = [0.0; 12];
    for frame in cg.frames() {
        for (acc, v) in values.iter_mut().zip(frame.values()) {
            *acc += v;
        }
    }
    let n = cg.len() as f64;
    for v in &mut values {
        *v /= n;
    }
    ChromaVector::new(values)
}
