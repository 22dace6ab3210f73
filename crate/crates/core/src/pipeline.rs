//! End-to-end analysis: guard, STFT, chroma folding, averaging,
//! normalization and key matching.

use crate::audio::{check_min_length, AudioBuffer};
use crate::chroma::{
    mean_chroma, normalize_chroma, BinMap, ChromaVector, Chromagram, NormalizedChroma,
};
use crate::error::{Error, Result};
use crate::estimator::{estimate_key, KeyOutcome};
use crate::profiles::KeyProfileSet;
use crate::spectral::{for_each_frame, stft, Spectrogram, StftConfig};

#[derive(Debug, Clone)]
pub struct Analysis {
    pub chromagram: Chromagram,
    pub mean_chroma: ChromaVector,
    pub normalized: NormalizedChroma,
    pub outcome: KeyOutcome,
    /// Present only when requested; a full-length track can be large.
    pub spectrogram: Option<Spectrogram>,
}

/// Holds a validated configuration and profile set for repeated analysis.
#[derive(Debug, Clone, Default)]
pub struct Analyzer {
    config: StftConfig,
    profiles: KeyProfileSet,
    keep_spectrogram: bool,
}

impl Analyzer {
    pub fn new(config: StftConfig, profiles: KeyProfileSet) -> Self {
        Analyzer {
            config,
            profiles,
            keep_spectrogram: false,
        }
    }

    pub fn keep_spectrogram(mut self, keep: bool) -> Self {
        self.keep_spectrogram = keep;
        self
    }

    pub fn config(&self) -> &StftConfig {
        &self.config
    }

    pub fn profiles(&self) -> &KeyProfileSet {
        &self.profiles
    }

    pub fn analyze(&self, buf: &AudioBuffer) -> Result<Analysis> {
        let l = self.config.frame_length();
        if !check_min_length(buf, l) {
            return Err(Error::InputTooShort {
                samples: buf.len(),
                frame_length: l,
            });
        }

        let map = BinMap::new(buf.sample_rate(), &self.config);
        let (chromagram, spectrogram) = if self.keep_spectrogram {
            let spec = stft(buf, &self.config)?;
            let cg = Chromagram::new(spec.frames().map(|f| map.fold(f)).collect());
            (cg, Some(spec))
        } else {
            let mut cg = Chromagram::default();
            for_each_frame(buf, &self.config, |_, mags| cg.push(map.fold(mags)))?;
            (cg, None)
        };

        let mean = mean_chroma(&chromagram)?;
        let normalized = normalize_chroma(&mean);
        let outcome = estimate_key(&normalized, &self.profiles)?;
        Ok(Analysis {
            chromagram,
            mean_chroma: mean,
            normalized,
            outcome,
            spectrogram,
        })
    }
}

/// One-shot analysis with the given configuration and profiles.
pub fn analyze(
    buf: &AudioBuffer,
    config: &StftConfig,
    profiles: &KeyProfileSet,
) -> Result<Analysis> {
    Analyzer::new(*config, profiles.clone()).analyze(buf)
}
