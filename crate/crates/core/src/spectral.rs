//! Framing, windowing and the radix-2 FFT behind the magnitude spectrogram.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;

use crate::audio::AudioBuffer;
use crate::error::{Error, Result};

pub const DEFAULT_FRAME_LENGTH: usize = 4096;
pub const DEFAULT_HOP_LENGTH: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Window {
    #[default]
    Hann,
}

impl Window {
    pub fn name(self) -> &'static str {
        match self {
            Window::Hann => "hann",
        }
    }

    pub fn coefficients(self, length: usize) -> Vec<f64> {
        match self {
            Window::Hann => hann_window(length),
        }
    }
}

/// Frame length, hop length and window for the STFT.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StftConfig {
    frame_length: usize,
    hop_length: usize,
    window: Window,
}

impl StftConfig {
    /// `frame_length` must be a power of two and `0 < hop_length <= frame_length`.
    pub fn new(frame_length: usize, hop_length: usize, window: Window) -> Result<Self> {
        if !frame_length.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(frame_length));
        }
        if hop_length == 0 || hop_length > frame_length {
            return Err(Error::InvalidConfig(format!(
                "hop length {hop_length} must be in 1..={frame_length}"
            )));
        }
        Ok(StftConfig {
            frame_length,
            hop_length,
            window,
        })
    }

    pub fn frame_length(&self) -> usize {
        self.frame_length
    }

    pub fn hop_length(&self) -> usize {
        self.hop_length
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Bins kept per frame: 0..=L/2.
    pub fn num_bins(&self) -> usize {
        self.frame_length / 2 + 1
    }

    /// Number of full frames that fit in `num_samples`; zero if none.
    pub fn num_frames(&self, num_samples: usize) -> usize {
        if num_samples < self.frame_length {
            0
        } else {
            (num_samples - self.frame_length) / self.hop_length + 1
        }
    }
}

impl Default for StftConfig {
    fn default() -> Self {
        StftConfig {
            frame_length: DEFAULT_FRAME_LENGTH,
            hop_length: DEFAULT_HOP_LENGTH,
            window: Window::Hann,
        }
    }
}

/// Periodic Hann window, `0.5 - 0.5 cos(2 pi n / L)`.
pub fn hann_window(length: usize) -> Vec<f64> {
    let l = length as f64;
    (0..length)
        .map(|n| 0.5 - 0.5 * (2.0 * PI * n as f64 / l).cos())
        .collect()
}

/// Precomputed twiddles and bit-reversal table for one transform size.
#[derive(Debug, Clone)]
pub struct Radix2Fft {
    len: usize,
    twiddles: Vec<Complex64>,
    bitrev: Vec<usize>,
}

impl Radix2Fft {
    pub fn new(len: usize) -> Result<Self> {
        if !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        let bits = len.trailing_zeros();
        let bitrev = (0..len)
            .map(|i| {
                if bits == 0 {
                    0
                } else {
                    i.reverse_bits() >> (usize::BITS - bits)
                }
            })
            .collect();
        // each twiddle evaluated directly; a running product drifts at large L
        let twiddles = (0..len / 2)
            .map(|k| Complex64::from_polar(1.0, -2.0 * PI * k as f64 / len as f64))
            .collect();
        Ok(Radix2Fft {
            len,
            twiddles,
            bitrev,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Forward transform in place. `data.len()` must equal the planned size.
    pub fn process(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.len, "buffer length does not match plan");
        for i in 0..self.len {
            let j = self.bitrev[i];
            if i < j {
                data.swap(i, j);
            }
        }

        let mut size = 2;
        while size <= self.len {
            let half = size / 2;
            let stride = self.len / size;
            for start in (0..self.len).step_by(size) {
                for k in 0..half {
                    let w = self.twiddles[k * stride];
                    let a = data[start + k];
                    let b = data[start + k + half] * w;
                    data[start + k] = a + b;
                    data[start + k + half] = a - b;
                }
            }
            size *= 2;
        }
    }
}

/// DFT of a power-of-two-length sequence.
pub fn fft(input: &[Complex64]) -> Result<Vec<Complex64>> {
    let plan = Radix2Fft::new(input.len())?;
    let mut data = input.to_vec();
    plan.process(&mut data);
    Ok(data)
}

/// [`fft`] for real input.
pub fn fft_real(input: &[f64]) -> Result<Vec<Complex64>> {
    let data: Vec<Complex64> = input.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fft(&data)
}

/// Per-frame magnitudes `|X_m[k]|` for `k = 0..=L/2`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrogram {
    magnitudes: Vec<f64>,
    num_frames: usize,
    sample_rate: u32,
    config: StftConfig,
}

impl Spectrogram {
    pub fn num_frames(&self) -> usize {
        self.num_frames
    }

    pub fn num_bins(&self) -> usize {
        self.config.num_bins()
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn config(&self) -> &StftConfig {
        &self.config
    }

    pub fn frame(&self, m: usize) -> &[f64] {
        let n = self.num_bins();
        &self.magnitudes[m * n..(m + 1) * n]
    }

    pub fn frames(&self) -> impl Iterator<Item = &[f64]> {
        self.magnitudes.chunks_exact(self.num_bins())
    }

    /// Builds a spectrogram from raw rows, e.g. for synthetic tests.
    pub fn from_frames(
        frames: Vec<Vec<f64>>,
        sample_rate: u32,
        config: StftConfig,
    ) -> Result<Self> {
        let n = config.num_bins();
        if let Some(bad) = frames.iter().position(|f| f.len() != n) {
            return Err(Error::InvalidConfig(format!(
                "frame {bad} has {} bins, expected {n}",
                frames[bad].len()
            )));
        }
        if frames.iter().flatten().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidSample(
                "magnitudes must be finite and nonnegative".into(),
            ));
        }
        Ok(Spectrogram {
            num_frames: frames.len(),
            magnitudes: frames.into_iter().flatten().collect(),
            sample_rate,
            config,
        })
    }

    /// One row per frame, `L/2 + 1` magnitudes, 9 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for frame in self.frames() {
            let row: Vec<String> = frame.iter().map(|&v| format_sig(v, 9)).collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Streams windowed magnitude spectra frame by frame without storing them.
///
/// `visit` receives the frame index and the `L/2 + 1` magnitudes.
pub fn for_each_frame<F>(buf: &AudioBuffer, config: &StftConfig, mut visit: F) -> Result<usize>
where
    F: FnMut(usize, &[f64]),
{
    let l = config.frame_length();
    let samples = buf.samples();
    if samples.len() < l {
        return Err(Error::InputTooShort {
            samples: samples.len(),
            frame_length: l,
        });
    }

    let plan = Radix2Fft::new(l)?;
    let window = config.window().coefficients(l);
    let num_frames = config.num_frames(samples.len());
    let mut scratch = vec![Complex64::new(0.0, 0.0); l];
    let mut mags = vec![0.0; config.num_bins()];

    for m in 0..num_frames {
        let start = m * config.hop_length();
        let frame = &samples[start..start + l];
        for ((slot, &x), &w) in scratch.iter_mut().zip(frame).zip(&window) {
            *slot = Complex64::new(x * w, 0.0);
        }
        plan.process(&mut scratch);
        for (mag, c) in mags.iter_mut().zip(&scratch) {
            *mag = c.norm();
        }
        visit(m, &mags);
    }
    Ok(num_frames)
}

/// Magnitude STFT. Frames start at `m * H` and exist only where all `L`
/// samples fit; there is no centering or padding.
pub fn stft(buf: &AudioBuffer, config: &StftConfig) -> Result<Spectrogram> {
    let mut magnitudes = Vec::with_capacity(config.num_frames(buf.len()) * config.num_bins());
    let num_frames = for_each_frame(buf, config, |_, mags| magnitudes.extend_from_slice(mags))?;
    Ok(Spectrogram {
        magnitudes,
        num_frames,
        sample_rate: buf.sample_rate(),
        config: *config,
    })
}

/// Formats `v` with `digits` significant digits, `%g` style.
pub(crate) fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if exp < -5 || exp >= digits as i32 {
        let s = format!("{:.*e}", digits - 1, v);
        let (mantissa, e) = s.split_once('e').unwrap();
        format!("{}e{}", trim_zeros(mantissa), e)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn hann_values() {
        assert_eq!(hann_window(1), vec![0.0]);
        let w4 = hann_window(4);
        let expected = [0.0, 0.5, 1.0, 0.5];
        for (a, b) in w4.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((hann_window(8)[4] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fft_impulse_and_constant() {
        let out = fft(&[c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap();
        for x in out {
            assert!((x - c(1.0)).norm() < 1e-15);
        }
        let out = fft(&[c(1.0); 4]).unwrap();
        assert!((out[0] - c(4.0)).norm() < 1e-15);
        for x in &out[1..] {
            assert!(x.norm() < 1e-15);
        }
    }

    #[test]
    fn fft_length_one_is_identity() {
        assert_eq!(fft(&[c(3.5)]).unwrap(), vec![c(3.5)]);
    }

    #[test]
    fn fft_rejects_non_power_of_two() {
        assert!(matches!(fft(&[c(0.0); 6]), Err(Error::NotPowerOfTwo(6))));
        assert!(matches!(fft(&[]), Err(Error::NotPowerOfTwo(0))));
    }

    #[test]
    fn config_validation() {
        assert!(matches!(
            StftConfig::new(4095, 512, Window::Hann),
            Err(Error::NotPowerOfTwo(4095))
        ));
        assert!(StftConfig::new(4096, 0, Window::Hann).is_err());
        assert!(StftConfig::new(4096, 4097, Window::Hann).is_err());
        assert!(StftConfig::new(4096, 4096, Window::Hann).is_ok());
    }

    #[test]
    fn frame_counts() {
        let cfg = StftConfig::default();
        let one = AudioBuffer::new(vec![0.1; 4096], 44100).unwrap();
        assert_eq!(stft(&one, &cfg).unwrap().num_frames(), 1);
        let nine = AudioBuffer::new(vec![0.1; 8192], 44100).unwrap();
        let s = stft(&nine, &cfg).unwrap();
        assert_eq!(s.num_frames(), 9);
        assert_eq!(s.frame(8).len(), 2049);
    }

    #[test]
    fn short_input_is_rejected() {
        let buf = AudioBuffer::new(vec![0.0; 2205], 44100).unwrap();
        assert!(matches!(
            stft(&buf, &StftConfig::default()),
            Err(Error::InputTooShort {
                samples: 2205,
                frame_length: 4096
            })
        ));
    }

    #[test]
    fn sine_peaks_at_expected_bin() {
        let sr = 44100;
        let samples: Vec<f64> = (0..sr as usize)
            .map(|n| (2.0 * PI * 440.0 * n as f64 / sr as f64).sin())
            .collect();
        let buf = AudioBuffer::new(samples, sr).unwrap();
        let spec = stft(&buf, &StftConfig::default()).unwrap();
        let expected = (440.0_f64 * 4096.0 / 44100.0).round() as usize;
        assert_eq!(expected, 41);
        for frame in spec.frames() {
            let argmax = frame
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .unwrap()
                .0;
            assert_eq!(argmax, 41);
        }
    }

    #[test]
    fn sig_digit_formatting() {
        assert_eq!(format_sig(0.0, 9), "0");
        assert_eq!(format_sig(1.0, 9), "1");
        assert_eq!(format_sig(123.456789012, 9), "123.456789");
        assert_eq!(format_sig(0.000123456789012, 9), "0.000123456789");
        assert_eq!(format_sig(1.5e-7, 9), "1.5e-7");
        assert_eq!(format_sig(1234567891234.0, 9), "1.23456789e12");
    }

    #[test]
    fn csv_has_one_row_per_frame() {
        let buf = AudioBuffer::new(vec![0.25; 8192], 44100).unwrap();
        let spec = stft(&buf, &StftConfig::default()).unwrap();
        let mut out = Vec::new();
        spec.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows.len(), 9);
        assert!(rows.iter().all(|r| r.split(',').count() == 2049));
    }
}
