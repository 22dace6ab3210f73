//! Key names and Camelot wheel codes.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::pitch::{Key, Mode, PitchClass, PITCH_CLASS_NAMES};

/// Canonical sharp-spelled key name such as `"G Major"` or `"C# Minor"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KeyName {
    pub tonic: PitchClass,
    pub mode: Mode,
    pub text: String,
}

impl fmt::Display for KeyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

pub fn key_name(key: Key) -> KeyName {
    KeyName {
        tonic: key.tonic,
        mode: key.mode,
        text: format!("{} {}", key.tonic.name(), key.mode.name()),
    }
}

/// Parses `"<tonic> <mode>"`, tonic in sharp spelling, mode case-insensitive.
impl FromStr for Key {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidConfig(format!("unrecognized key name `{s}`"));
        let mut parts = s.split_whitespace();
        let (tonic, mode) = match (parts.next(), parts.next(), parts.next()) {
            (Some(t), Some(m), None) => (t, m),
            _ => return Err(bad()),
        };
        let tonic = PITCH_CLASS_NAMES
            .iter()
            .position(|n| *n == tonic)
            .ok_or_else(bad)?;
        let mode = match mode.to_ascii_lowercase().as_str() {
            "major" => Mode::Major,
            "minor" => Mode::Minor,
            _ => return Err(bad()),
        };
        Ok(Key::new(PitchClass::wrapping(tonic as i64), mode))
    }
}

/// Inner ring `A` holds minor keys, outer ring `B` major keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CamelotRing {
    A,
    B,
}

/// Wheel position 1..=12 plus ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Camelot {
    pub number: u8,
    pub ring: CamelotRing,
}

impl fmt::Display for Camelot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = match self.ring {
            CamelotRing::A => 'A',
            CamelotRing::B => 'B',
        };
        write!(f, "{}{}", self.number, ring)
    }
}

// Wheel numbers indexed by tonic pitch class.
const MAJOR_NUMBERS: [u8; 12] = [8, 3, 10, 5, 12, 7, 2, 9, 4, 11, 6, 1];
const MINOR_NUMBERS: [u8; 12] = [5, 12, 7, 2, 9, 4, 11, 6, 1, 8, 3, 10];

pub fn to_camelot(key: Key) -> Camelot {
    let i = key.tonic.index();
    match key.mode {
        Mode::Major => Camelot {
            number: MAJOR_NUMBERS[i],
            ring: CamelotRing::B,
        },
        Mode::Minor => Camelot {
            number: MINOR_NUMBERS[i],
            ring: CamelotRing::A,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(t: u8, mode: Mode) -> Key {
        Key::new(PitchClass::new(t).unwrap(), mode)
    }

    #[test]
    fn names() {
        assert_eq!(key_name(key(7, Mode::Major)).text, "G Major");
        assert_eq!(key_name(key(0, Mode::Minor)).text, "C Minor");
        assert_eq!(key_name(key(10, Mode::Major)).text, "A# Major");
    }

    #[test]
    fn names_round_trip() {
        for k in Key::all() {
            let name = key_name(k);
            assert_eq!(name.text.parse::<Key>().unwrap(), k);
            assert_eq!(name.to_string(), k.to_string());
        }
        assert_eq!("D minor".parse::<Key>().unwrap(), key(2, Mode::Minor));
        assert!("H Major".parse::<Key>().is_err());
        assert!("C".parse::<Key>().is_err());
        assert!("C Major extra".parse::<Key>().is_err());
    }

    #[test]
    fn camelot_lookups() {
        assert_eq!(to_camelot(key(0, Mode::Major)).to_string(), "8B");
        assert_eq!(to_camelot(key(9, Mode::Minor)).to_string(), "8A");
        assert_eq!(to_camelot(key(7, Mode::Major)).to_string(), "9B");
        assert_eq!(to_camelot(key(11, Mode::Major)).to_string(), "1B");
        assert_eq!(to_camelot(key(1, Mode::Minor)).to_string(), "12A");
    }
}
