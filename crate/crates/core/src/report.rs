//! Per-file analysis reports in text and JSON form.

use serde::Serialize;

use crate::estimator::KeyOutcome;
use crate::notation::{key_name, to_camelot};
use crate::pitch::Key;
use crate::spectral::StftConfig;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Parameters {
    pub frame_length: usize,
    pub hop_length: usize,
    pub window: &'static str,
}

impl From<&StftConfig> for Parameters {
    fn from(cfg: &StftConfig) -> Self {
        Parameters {
            frame_length: cfg.frame_length(),
            hop_length: cfg.hop_length(),
            window: cfg.window().name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreEntry {
    pub key: String,
    pub score: f64,
}

/// One report per input file. Absent values serialize as `null`;
/// `scores` is emitted only in verbose mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub file: String,
    pub key: Option<String>,
    pub camelot: Option<String>,
    pub correlation: Option<f64>,
    /// Winner minus runner-up score.
    pub margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scores: Option<Vec<ScoreEntry>>,
    pub parameters: Parameters,
    pub error: Option<String>,
}

impl AnalysisReport {
    pub fn from_outcome(
        file: impl Into<String>,
        outcome: &KeyOutcome,
        config: &StftConfig,
        camelot: bool,
        verbose: bool,
    ) -> Self {
        let parameters = Parameters::from(config);
        match outcome {
            KeyOutcome::NoKey => AnalysisReport {
                file: file.into(),
                key: None,
                camelot: None,
                correlation: None,
                margin: None,
                scores: None,
                parameters,
                error: None,
            },
            KeyOutcome::Key(est) => AnalysisReport {
                file: file.into(),
                key: Some(key_name(est.key).text),
                camelot: camelot.then(|| to_camelot(est.key).to_string()),
                correlation: Some(est.correlation),
                margin: Some(est.margin),
                scores: verbose.then(|| {
                    est.scores
                        .iter()
                        .enumerate()
                        .map(|(j, &score)| ScoreEntry {
                            key: key_name(Key::from_index(j)).text,
                            score,
                        })
                        .collect()
                }),
                parameters,
                error: None,
            },
        }
    }

    pub fn from_error(file: impl Into<String>, error: &crate::Error, config: &StftConfig) -> Self {
        AnalysisReport {
            file: file.into(),
            key: None,
            camelot: None,
            correlation: None,
            margin: None,
            scores: None,
            parameters: Parameters::from(config),
            error: Some(error.to_string()),
        }
    }

    pub fn is_error(&self) -> bool {
        self.error.is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// `file: C Major (camelot 8B, corr 0.8700, margin 0.0500)`, or
    /// `file: none (silence)`. Verbose mode appends one indented line per key.
    pub fn to_text(&self) -> String {
        if let Some(err) = &self.error {
            return format!("{}: error: {err}", self.file);
        }
        let (Some(key), Some(corr), Some(margin)) = (&self.key, self.correlation, self.margin)
        else {
            return format!("{}: none (silence)", self.file);
        };
        let mut out = match &self.camelot {
            Some(code) => format!(
                "{}: {key} (camelot {code}, corr {corr:.4}, margin {margin:.4})",
                self.file
            ),
            None => format!("{}: {key} (corr {corr:.4}, margin {margin:.4})", self.file),
        };
        if let Some(scores) = &self.scores {
            for s in scores {
                out.push_str(&format!("\n    {:<9} {:.4}", s.key, s.score));
            }
        }
        out
    }
}
