//! Deterministic synthetic audio for fixtures: sine tones, scales, chords
//! and silence.

use std::f64::consts::PI;

use crate::audio::AudioBuffer;
use crate::error::{Error, Result};

/// Linear fade applied at both ends of every segment.
pub const FADE_SECS: f64 = 0.010;

pub const MAJOR_SCALE: [i32; 7] = [0, 2, 4, 5, 7, 9, 11];
pub const HARMONIC_MINOR_SCALE: [i32; 7] = [0, 2, 3, 5, 7, 8, 11];

/// Equal-tempered frequency of a MIDI pitch, A4 = 69 = 440 Hz.
pub fn midi_to_freq(midi: f64) -> f64 {
    440.0 * 2f64.powf((midi - 69.0) / 12.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToneSpec {
    pub midi_pitch: i32,
    pub duration: f64,
    pub amplitude: f64,
}

impl ToneSpec {
    pub fn new(midi_pitch: i32, duration: f64, amplitude: f64) -> Self {
        ToneSpec {
            midi_pitch,
            duration,
            amplitude,
        }
    }

    pub fn frequency(&self) -> f64 {
        midi_to_freq(self.midi_pitch as f64)
    }

    fn validate(&self) -> Result<()> {
        if !(self.duration > 0.0 && self.duration.is_finite()) {
            return Err(Error::InvalidTone(format!(
                "duration must be positive, got {}",
                self.duration
            )));
        }
        if !(self.amplitude > 0.0 && self.amplitude <= 1.0) {
            return Err(Error::InvalidTone(format!(
                "amplitude must be in (0, 1], got {}",
                self.amplitude
            )));
        }
        Ok(())
    }
}

fn segment_len(duration: f64, sample_rate: u32) -> usize {
    (duration * sample_rate as f64).round() as usize
}

/// Gain envelope for sample `i` of an `n`-sample segment.
fn fade_gain(i: usize, n: usize, fade: usize) -> f64 {
    if fade == 0 {
        return 1.0;
    }
    let from_edge = i.min(n - 1 - i);
    if from_edge < fade {
        from_edge as f64 / fade as f64
    } else {
        1.0
    }
}

/// Mixes `pitches` (equal weight, summing to `amplitude` peak at most) into one faded segment.
fn render_segment(
    pitches: &[i32],
    duration: f64,
    amplitude: f64,
    sample_rate: u32,
    out: &mut Vec<f64>,
) {
    let n = segment_len(duration, sample_rate);
    let fade = segment_len(FADE_SECS, sample_rate).min(n / 2);
    let sr = sample_rate as f64;
    let per_voice = amplitude / pitches.len() as f64;
    let freqs: Vec<f64> = pitches.iter().map(|&p| midi_to_freq(p as f64)).collect();
    out.extend((0..n).map(|i| {
        let t = i as f64 / sr;
        let s: f64 = freqs.iter().map(|f| (2.0 * PI * f * t).sin()).sum();
        s * per_voice * fade_gain(i, n, fade)
    }));
}

/// Concatenates one faded sine segment per spec. Each segment starts at phase 0.
pub fn synth_tones(specs: &[ToneSpec], sample_rate: u32) -> Result<AudioBuffer> {
    if specs.is_empty() {
        return Err(Error::InvalidTone("no tones given".into()));
    }
    let mut samples = Vec::new();
    for spec in specs {
        spec.validate()?;
        render_segment(
            &[spec.midi_pitch],
            spec.duration,
            spec.amplitude,
            sample_rate,
            &mut samples,
        );
    }
    AudioBuffer::new(samples, sample_rate)
}

/// One segment per chord; voices within a chord share the amplitude equally.
pub fn synth_chords(
    chords: &[Vec<i32>],
    duration: f64,
    amplitude: f64,
    sample_rate: u32,
) -> Result<AudioBuffer> {
    if chords.is_empty() || chords.iter().any(|c| c.is_empty()) {
        return Err(Error::InvalidTone("chords must be nonempty".into()));
    }
    ToneSpec::new(0, duration, amplitude).validate()?;
    let mut samples = Vec::new();
    for chord in chords {
        render_segment(chord, duration, amplitude, sample_rate, &mut samples);
    }
    AudioBuffer::new(samples, sample_rate)
}

/// Ascending scale from `root_midi` using semitone `intervals`.
pub fn scale_tones(
    root_midi: i32,
    intervals: &[i32],
    note_secs: f64,
    amplitude: f64,
) -> Vec<ToneSpec> {
    intervals
        .iter()
        .map(|&i| ToneSpec::new(root_midi + i, note_secs, amplitude))
        .collect()
}

/// Root-position triad on `root_midi`.
pub fn triad(root_midi: i32, minor: bool) -> Vec<i32> {
    let third = if minor { 3 } else { 4 };
    vec![root_midi, root_midi + third, root_midi + 7]
}

pub fn synth_silence(duration: f64, sample_rate: u32) -> Result<AudioBuffer> {
    if !(duration > 0.0 && duration.is_finite()) {
        return Err(Error::InvalidTone(format!(
            "duration must be positive, got {duration}"
        )));
    }
    AudioBuffer::new(vec![0.0; segment_len(duration, sample_rate)], sample_rate)
}
