//! Musical key estimation from audio.
//!
//! The pipeline decodes a WAV file to mono, computes a Hann-windowed
//! magnitude STFT, folds every bin onto its nearest pitch class, averages
//! the per-frame chroma over time and matches the unit-normalized result
//! against 24 major/minor key profiles by dot product.
//!
//! ```
//! use keyscope::{signalgen, Analyzer};
//!
//! let tones = signalgen::scale_tones(72, &signalgen::MAJOR_SCALE, 0.5, 0.5);
//! let buf = signalgen::synth_tones(&tones, 44100).unwrap();
//! let analysis = Analyzer::default().analyze(&buf).unwrap();
//! let est = analysis.outcome.estimate().unwrap();
//! assert_eq!(est.key.to_string(), "C Major");
//! ```

pub mod audio;
pub mod chroma;
pub mod error;
pub mod estimator;
pub mod notation;
pub mod pipeline;
pub mod pitch;
pub mod profiles;
pub mod report;
pub mod signalgen;
pub mod spectral;

pub use audio::{check_min_length, load_audio, AudioBuffer};
pub use chroma::{ChromaVector, Chromagram, NormalizedChroma};
pub use error::{Error, Result};
pub use estimator::{estimate_key, KeyEstimate, KeyOutcome};
pub use notation::{key_name, to_camelot, Camelot, KeyName};
pub use pipeline::{analyze, Analysis, Analyzer};
pub use pitch::{Key, Mode, PitchClass};
pub use profiles::{build_profile_set, KeyProfile, KeyProfileSet};
pub use report::AnalysisReport;
pub use spectral::{Spectrogram, StftConfig, Window};
