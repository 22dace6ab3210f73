//! Pitch classes, modes and key identities shared by every stage.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Sharp-spelled names indexed by pitch class.
pub const PITCH_CLASS_NAMES: [&str; 12] = [
    "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B",
];

/// One of the 12 octave-equivalence classes, 0 = C through 11 = B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PitchClass(u8);

impl PitchClass {
    pub const C: PitchClass = PitchClass(0);

    /// Returns `None` when `index` is outside 0..12.
    pub fn new(index: u8) -> Option<Self> {
        (index < 12).then_some(PitchClass(index))
    }

    /// Wraps any integer onto 0..12 with the nonnegative modulo.
    pub fn wrapping(index: i64) -> Self {
        PitchClass(index.rem_euclid(12) as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Transposes up by `semitones` (any sign), wrapping around the octave.
    pub fn transpose(self, semitones: i64) -> Self {
        Self::wrapping(self.0 as i64 + semitones)
    }

    pub fn name(self) -> &'static str {
        PITCH_CLASS_NAMES[self.index()]
    }

    pub fn all() -> impl Iterator<Item = PitchClass> {
        (0..12).map(PitchClass)
    }
}

impl fmt::Display for PitchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Mode {
    Major,
    Minor,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Major => "Major",
            Mode::Minor => "Minor",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A (tonic, mode) pair: one of the 24 major/minor keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Key {
    pub tonic: PitchClass,
    pub mode: Mode,
}

impl Key {
    pub fn new(tonic: PitchClass, mode: Mode) -> Self {
        Key { tonic, mode }
    }

    /// Position in the canonical 24-key order: majors C..B, then minors C..B.
    pub fn index(self) -> usize {
        match self.mode {
            Mode::Major => self.tonic.index(),
            Mode::Minor => 12 + self.tonic.index(),
        }
    }

    /// Inverse of [`Key::index`]. Panics if `index >= 24`.
    pub fn from_index(index: usize) -> Self {
        assert!(index < 24, "key index {index} out of range");
        let mode = if index < 12 { Mode::Major } else { Mode::Minor };
        Key::new(PitchClass((index % 12) as u8), mode)
    }

    pub fn all() -> impl Iterator<Item = Key> {
        (0..24).map(Key::from_index)
    }

    pub fn transpose(self, semitones: i64) -> Self {
        Key::new(self.tonic.transpose(semitones), self.mode)
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.tonic, self.mode)
    }
}
