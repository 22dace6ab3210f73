use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;

use keyscope::{load_audio, AnalysisReport, Analyzer, KeyProfileSet, StftConfig, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn power_of_two(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n.is_power_of_two() {
        Ok(n)
    } else {
        Err(format!("{n} is not a power of two"))
    }
}

/// Estimate the musical key of WAV recordings.
#[derive(Debug, Parser)]
#[command(name = "keyscope", version)]
struct Args {
    /// Input WAV files
    #[arg(required = true)]
    inputs: Vec<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// STFT frame length in samples (power of two)
    #[arg(long, default_value_t = 4096, value_parser = power_of_two)]
    frame_length: usize,

    /// STFT hop length in samples
    #[arg(long, default_value_t = 512)]
    hop_length: usize,

    /// Report the Camelot code (default)
    #[arg(long, overrides_with = "no_camelot")]
    camelot: bool,

    /// Omit the Camelot code
    #[arg(long = "no-camelot", overrides_with = "camelot")]
    no_camelot: bool,

    /// Write the chromagram of the (single) input as CSV
    #[arg(long, value_name = "PATH")]
    dump_chroma: Option<PathBuf>,

    /// Write the magnitude spectrogram of the (single) input as CSV
    #[arg(long, value_name = "PATH")]
    dump_spectrogram: Option<PathBuf>,

    /// Profile override file with `major:` and `minor:` lines
    #[arg(long, value_name = "FILE")]
    profiles: Option<PathBuf>,

    /// Include all 24 key scores
    #[arg(long)]
    verbose: bool,

    /// Number of files analyzed in parallel
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("keyscope: {msg}");
    ExitCode::from(2)
}

fn write_csv(
    path: &Path,
    write: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>,
) -> io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write(&mut out)?;
    out.flush()
}

struct Job<'a> {
    analyzer: &'a Analyzer,
    args: &'a Args,
}

impl Job<'_> {
    fn run(&self, path: &Path) -> AnalysisReport {
        let label = path.display().to_string();
        let config = self.analyzer.config();
        let analysis = match load_audio(path).and_then(|buf| self.analyzer.analyze(&buf)) {
            Ok(a) => a,
            Err(e) => return AnalysisReport::from_error(label, &e, config),
        };

        if let Some(out) = &self.args.dump_chroma {
            if let Err(e) = write_csv(out, |w| analysis.chromagram.write_csv(w)) {
                eprintln!("keyscope: cannot write {}: {e}", out.display());
            }
        }
        if let (Some(out), Some(spec)) = (&self.args.dump_spectrogram, &analysis.spectrogram) {
            if let Err(e) = write_csv(out, |w| spec.write_csv(w)) {
                eprintln!("keyscope: cannot write {}: {e}", out.display());
            }
        }

        AnalysisReport::from_outcome(
            label,
            &analysis.outcome,
            config,
            !self.args.no_camelot,
            self.args.verbose,
        )
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            // help/version go to stdout with status 0; real errors exit 2
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };

    let config = match StftConfig::new(args.frame_length, args.hop_length, Window::Hann) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    if args.jobs == 0 {
        return usage_error("--jobs must be at least 1");
    }
    if (args.dump_chroma.is_some() || args.dump_spectrogram.is_some()) && args.inputs.len() > 1 {
        return usage_error("--dump-chroma/--dump-spectrogram take exactly one input file");
    }
    let profiles = match &args.profiles {
        Some(path) => match KeyProfileSet::from_file(path) {
            Ok(p) => p,
            Err(e) => return usage_error(e),
        },
        None => KeyProfileSet::default(),
    };

    let analyzer =
        Analyzer::new(config, profiles).keep_spectrogram(args.dump_spectrogram.is_some());
    let job = Job {
        analyzer: &analyzer,
        args: &args,
    };

    let reports: Vec<AnalysisReport> = if args.jobs == 1 {
        args.inputs.iter().map(|p| job.run(p)).collect()
    } else {
        let pool = match rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs)
            .build()
        {
            Ok(p) => p,
            Err(e) => return usage_error(e),
        };
        // indexed collect keeps input order
        pool.install(|| args.inputs.par_iter().map(|p| job.run(p)).collect())
    };

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut failed = false;
    for report in &reports {
        failed |= report.is_error();
        let line = match args.format {
            Format::Json => report.to_json(),
            Format::Text => {
                if let Some(err) = &report.error {
                    eprintln!("keyscope: {}: {err}", report.file);
                    continue;
                }
                report.to_text()
            }
        };
        if writeln!(out, "{line}").is_err() {
            return ExitCode::from(1);
        }
    }

    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
