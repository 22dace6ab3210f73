//! WAV/RIFF decoding into a mono [`AudioBuffer`], plus a small encoder used
//! for writing fixtures.
//!
//! Accepted encodings: PCM integer at 16, 24 or 32 bits (format code 1) and
//! IEEE float at 32 bits (format code 3), one or two channels. Stereo is
//! averaged down to mono. The sample rate is taken from the header as is.

use std::fs;
use std::io::ErrorKind;
use std::path::Path;

use crate::error::{Error, Result};

const FORMAT_PCM: u16 = 1;
const FORMAT_IEEE_FLOAT: u16 = 3;

/// Decoded mono waveform and its sampling rate.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioBuffer {
    samples: Vec<f64>,
    sample_rate: u32,
}

impl AudioBuffer {
    /// Builds a buffer, rejecting a zero sample rate or non-finite samples.
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Result<Self> {
        if sample_rate == 0 {
            return Err(Error::InvalidConfig("sample rate must be positive".into()));
        }
        if let Some(i) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::InvalidSample(format!(
                "non-finite value at index {i}"
            )));
        }
        Ok(AudioBuffer {
            samples,
            sample_rate,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_secs(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }

    /// Multiplies every sample by `gain` without clipping.
    pub fn scaled(&self, gain: f64) -> Result<AudioBuffer> {
        AudioBuffer::new(
            self.samples.iter().map(|s| s * gain).collect(),
            self.sample_rate,
        )
    }

    /// Serializes as a mono 16-bit PCM WAV file.
    pub fn to_wav_pcm16(&self) -> Vec<u8> {
        encode_wav(&self.samples, 1, self.sample_rate, SampleFormat::Pcm16)
    }
}

/// True iff at least one full analysis frame of `frame_length` fits.
pub fn check_min_length(buf: &AudioBuffer, frame_length: usize) -> bool {
    buf.len() >= frame_length
}

/// Reads and decodes a WAV file.
pub fn load_audio(path: impl AsRef<Path>) -> Result<AudioBuffer> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| match e.kind() {
        ErrorKind::NotFound => Error::FileNotFound(path.to_path_buf()),
        _ => Error::Io {
            path: path.to_path_buf(),
            source: e,
        },
    })?;
    decode_wav(&bytes)
}

/// Writes `buf` to `path` as mono 16-bit PCM.
pub fn write_wav_pcm16(path: impl AsRef<Path>, buf: &AudioBuffer) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, buf.to_wav_pcm16()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleFormat {
    Pcm16,
    Pcm24,
    Pcm32,
    Float32,
}

impl SampleFormat {
    fn bits(self) -> u16 {
        match self {
            SampleFormat::Pcm16 => 16,
            SampleFormat::Pcm24 => 24,
            SampleFormat::Pcm32 => 32,
            SampleFormat::Float32 => 32,
        }
    }

    fn format_code(self) -> u16 {
        match self {
            SampleFormat::Float32 => FORMAT_IEEE_FLOAT,
            _ => FORMAT_PCM,
        }
    }

    /// Full-scale divisor for integer formats.
    fn scale(self) -> f64 {
        match self {
            SampleFormat::Pcm16 => 32_768.0,
            SampleFormat::Pcm24 => 8_388_608.0,
            SampleFormat::Pcm32 => 2_147_483_648.0,
            SampleFormat::Float32 => 1.0,
        }
    }

    fn from_header(format_code: u16, bits: u16) -> Result<Self> {
        match (format_code, bits) {
            (FORMAT_PCM, 16) => Ok(SampleFormat::Pcm16),
            (FORMAT_PCM, 24) => Ok(SampleFormat::Pcm24),
            (FORMAT_PCM, 32) => Ok(SampleFormat::Pcm32),
            (FORMAT_IEEE_FLOAT, 32) => Ok(SampleFormat::Float32),
            (FORMAT_PCM, b) => Err(Error::UnsupportedEncoding(format!("{b}-bit integer PCM"))),
            (FORMAT_IEEE_FLOAT, b) => Err(Error::UnsupportedEncoding(format!("{b}-bit float"))),
            (code, _) => Err(Error::UnsupportedEncoding(format!(
                "format code {code:#06x}"
            ))),
        }
    }

    fn decode(self, bytes: &[u8]) -> f64 {
        match self {
            SampleFormat::Pcm16 => i16::from_le_bytes([bytes[0], bytes[1]]) as f64 / self.scale(),
            SampleFormat::Pcm24 => {
                // sign-extend by placing the 3 bytes in the top of an i32
                let v = i32::from_le_bytes([0, bytes[0], bytes[1], bytes[2]]) >> 8;
                v as f64 / self.scale()
            }
            SampleFormat::Pcm32 => {
                i32::from_le_bytes([bytes[0], bytes[1], bytes[2], bytes[3]]) as f64 / self.scale()
            }
            SampleFormat::Float32 => {
                f32::from_le_bytes([bytes[0], bytes[1], bytes[2], bytes[3]]) as f64
            }
        }
    }

    fn encode(self, sample: f64, out: &mut Vec<u8>) {
        let s = sample.clamp(-1.0, 1.0);
        match self {
            SampleFormat::Pcm16 => {
                let q = (s * self.scale())
                    .round()
                    .clamp(i16::MIN as f64, i16::MAX as f64) as i16;
                out.extend_from_slice(&q.to_le_bytes());
            }
            SampleFormat::Pcm24 => {
                let q = (s * self.scale()).round().clamp(-8_388_608.0, 8_388_607.0) as i32;
                out.extend_from_slice(&q.to_le_bytes()[..3]);
            }
            SampleFormat::Pcm32 => {
                let q = (s * self.scale())
                    .round()
                    .clamp(i32::MIN as f64, i32::MAX as f64) as i32;
                out.extend_from_slice(&q.to_le_bytes());
            }
            SampleFormat::Float32 => out.extend_from_slice(&(s as f32).to_le_bytes()),
        }
    }
}

struct FmtChunk {
    channels: u16,
    sample_rate: u32,
    block_align: u16,
    format: SampleFormat,
}

fn read_u16(b: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([b[at], b[at + 1]])
}

fn read_u32(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([b[at], b[at + 1], b[at + 2], b[at + 3]])
}

fn parse_fmt(body: &[u8]) -> Result<FmtChunk> {
    if body.len() < 16 {
        return Err(Error::MalformedHeader(format!(
            "fmt chunk is {} bytes, need 16",
            body.len()
        )));
    }
    let format_code = read_u16(body, 0);
    let channels = read_u16(body, 2);
    let sample_rate = read_u32(body, 4);
    let block_align = read_u16(body, 12);
    let bits = read_u16(body, 14);

    let format = SampleFormat::from_header(format_code, bits)?;
    if channels == 0 {
        return Err(Error::EmptyStream);
    }
    if channels > 2 {
        return Err(Error::UnsupportedEncoding(format!("{channels} channels")));
    }
    if sample_rate == 0 {
        return Err(Error::MalformedHeader("sample rate is zero".into()));
    }
    let expected_align = channels * bits / 8;
    if block_align != expected_align {
        return Err(Error::MalformedHeader(format!(
            "block align {block_align} does not match {channels} ch x {bits} bits"
        )));
    }
    Ok(FmtChunk {
        channels,
        sample_rate,
        block_align,
        format,
    })
}

/// Decodes an in-memory WAV file.
pub fn decode_wav(bytes: &[u8]) -> Result<AudioBuffer> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(Error::MalformedHeader("missing RIFF/WAVE signature".into()));
    }

    let mut pos = 12;
    let mut fmt: Option<FmtChunk> = None;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = read_u32(bytes, pos + 4) as usize;
        let body_start = pos + 8;
        let body_end = body_start
            .checked_add(size)
            .ok_or_else(|| Error::MalformedHeader("chunk size overflow".into()))?;

        match id {
            b"fmt " => {
                if body_end > bytes.len() {
                    return Err(Error::MalformedHeader("truncated fmt chunk".into()));
                }
                fmt = Some(parse_fmt(&bytes[body_start..body_end])?);
            }
            b"data" => {
                let fmt = fmt.ok_or_else(|| {
                    Error::MalformedHeader("data chunk precedes fmt chunk".into())
                })?;
                if body_end > bytes.len() {
                    return Err(Error::MalformedHeader(format!(
                        "data chunk declares {size} bytes, only {} present",
                        bytes.len() - body_start
                    )));
                }
                return decode_frames(&bytes[body_start..body_end], &fmt);
            }
            _ => {}
        }
        // chunks are padded to even length
        pos = body_end + (size & 1);
    }

    match fmt {
        Some(_) => Err(Error::MalformedHeader("no data chunk".into())),
        None => Err(Error::MalformedHeader("no fmt chunk".into())),
    }
}

fn decode_frames(data: &[u8], fmt: &FmtChunk) -> Result<AudioBuffer> {
    let frame_bytes = fmt.block_align as usize;
    let sample_bytes = frame_bytes / fmt.channels as usize;
    let channels = fmt.channels as usize;

    let mut samples = Vec::with_capacity(data.len() / frame_bytes);
    for frame in data.chunks_exact(frame_bytes) {
        let mut acc = 0.0;
        for ch in frame.chunks_exact(sample_bytes) {
            let mut v = fmt.format.decode(ch);
            if fmt.format == SampleFormat::Float32 {
                if v.is_nan() {
                    return Err(Error::InvalidSample(format!(
                        "NaN at frame {}",
                        samples.len()
                    )));
                }
                v = v.clamp(-1.0, 1.0);
            }
            acc += v;
        }
        samples.push(acc / channels as f64);
    }

    if samples.is_empty() {
        return Err(Error::EmptyStream);
    }
    AudioBuffer::new(samples, fmt.sample_rate)
}

/// Encodes interleaved samples as a canonical 44-byte-header WAV file.
/// Values are clamped to [-1, 1] and, for integer formats, rounded.
pub fn encode_wav(
    interleaved: &[f64],
    channels: u16,
    sample_rate: u32,
    format: SampleFormat,
) -> Vec<u8> {
    let bits = format.bits();
    let block_align = channels * bits / 8;
    let byte_rate = sample_rate * block_align as u32;
    let data_len = (interleaved.len() * (bits as usize / 8)) as u32;

    let mut out = Vec::with_capacity(44 + data_len as usize);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len).to_le_bytes());
    out.extend_from_slice(b"WAVE");

    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&format.format_code().to_le_bytes());
    out.extend_from_slice(&channels.to_le_bytes());
    out.extend_from_slice(&sample_rate.to_le_bytes());
    out.extend_from_slice(&byte_rate.to_le_bytes());
    out.extend_from_slice(&block_align.to_le_bytes());
    out.extend_from_slice(&bits.to_le_bytes());

    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_len.to_le_bytes());
    for &s in interleaved {
        format.encode(s, &mut out);
    }
    out
}
