use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use keyscope::audio::write_wav_pcm16;
use keyscope::signalgen::{
    scale_tones, synth_silence, synth_tones, HARMONIC_MINOR_SCALE, MAJOR_SCALE,
};

fn keyscope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_keyscope"))
        .args(args)
        .output()
        .expect("run keyscope")
}

fn write_scale(dir: &Path, name: &str, root: i32, intervals: &[i32]) -> PathBuf {
    let path = dir.join(name);
    let buf = synth_tones(&scale_tones(root, intervals, 0.5, 0.5), 44100).unwrap();
    write_wav_pcm16(&path, &buf).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn text_report_for_c_major() {
    let dir = tempfile::tempdir().unwrap();
    let wav = write_scale(dir.path(), "fixture_cmajor.wav", 72, &MAJOR_SCALE);
    let out = keyscope(&[s(&wav)]);
    assert_eq!(out.status.code(), Some(0));
    let line = String::from_utf8(out.stdout).unwrap();
    let expected_prefix = format!("{}: C Major (camelot 8B, corr ", wav.display());
    assert!(line.starts_with(&expected_prefix), "{line}");
    assert!(line.contains(", margin "));
    // four decimals
    let corr = line
        .split("corr ")
        .nth(1)
        .unwrap()
        .split(',')
        .next()
        .unwrap();
    assert_eq!(corr.split('.').nth(1).unwrap().len(), 4);
}

#[test]
fn no_camelot_flag() {
    let dir = tempfile::tempdir().unwrap();
    let wav = write_scale(dir.path(), "a.wav", 72, &MAJOR_SCALE);
    let out = keyscope(&["--no-camelot", s(&wav)]);
    let line = String::from_utf8(out.stdout).unwrap();
    assert!(!line.contains("camelot"), "{line}");
    let out = keyscope(&["--no-camelot", "--camelot", s(&wav)]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("camelot 8B"));
}

#[test]
fn json_silence_has_null_key() {
    let dir = tempfile::tempdir().unwrap();
    let wav = dir.path().join("silence.wav");
    write_wav_pcm16(&wav, &synth_silence(1.0, 44100).unwrap()).unwrap();
    let out = keyscope(&["--format", "json", s(&wav)]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["key"].is_null());
    assert!(v["camelot"].is_null());
    assert!(v["correlation"].is_null());
    assert!(v["margin"].is_null());
    assert_eq!(v["parameters"]["frame_length"], 4096);

    let text = keyscope(&[s(&wav)]);
    assert!(String::from_utf8(text.stdout)
        .unwrap()
        .ends_with(": none (silence)\n"));
}

#[test]
fn json_minor_key_and_verbose_scores() {
    let dir = tempfile::tempdir().unwrap();
    let wav = write_scale(dir.path(), "e_minor.wav", 76, &HARMONIC_MINOR_SCALE);
    let out = keyscope(&["--format", "json", "--verbose", s(&wav)]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["key"], "E Minor");
    assert_eq!(v["camelot"], "9A");
    let scores = v["scores"].as_array().unwrap();
    assert_eq!(scores.len(), 24);
    let best = scores
        .iter()
        .map(|e| e["score"].as_f64().unwrap())
        .fold(f64::NEG_INFINITY, f64::max);
    assert_eq!(best, v["correlation"].as_f64().unwrap());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        keyscope(&["--frame-length", "4095", "x.wav"]).status.code(),
        Some(2)
    );
    assert_eq!(keyscope(&[]).status.code(), Some(2));
    assert_eq!(
        keyscope(&["--hop-length", "0", "x.wav"]).status.code(),
        Some(2)
    );
    assert_eq!(
        keyscope(&["--hop-length", "8192", "x.wav"]).status.code(),
        Some(2)
    );
    assert_eq!(
        keyscope(&["--format", "xml", "x.wav"]).status.code(),
        Some(2)
    );
    assert_eq!(keyscope(&["--jobs", "0", "x.wav"]).status.code(), Some(2));
    assert_eq!(
        keyscope(&["--dump-chroma", "c.csv", "a.wav", "b.wav"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        keyscope(&["--profiles", "/no/such/profiles.txt", "a.wav"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn failing_inputs_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_scale(dir.path(), "good.wav", 72, &MAJOR_SCALE);
    let short = dir.path().join("short.wav");
    write_wav_pcm16(&short, &synth_silence(0.05, 44100).unwrap()).unwrap();
    let junk = dir.path().join("junk.wav");
    std::fs::write(&junk, b"not a wav file at all").unwrap();

    for bad in [&short, &junk, &dir.path().join("missing.wav")] {
        let out = keyscope(&[s(&good), s(bad)]);
        assert_eq!(out.status.code(), Some(1), "{}", bad.display());
        // the good file is still reported
        assert!(String::from_utf8(out.stdout).unwrap().contains("C Major"));
        assert!(!out.stderr.is_empty());
    }

    let out = keyscope(&["--format", "json", s(&short)]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["error"].as_str().unwrap().contains("too short"));
}

#[test]
fn dumps_write_csv_files() {
    let dir = tempfile::tempdir().unwrap();
    let wav = write_scale(dir.path(), "a.wav", 72, &MAJOR_SCALE);
    let chroma = dir.path().join("chroma.csv");
    let spec = dir.path().join("spec.csv");
    let out = keyscope(&[
        "--frame-length",
        "2048",
        "--hop-length",
        "1024",
        "--dump-chroma",
        s(&chroma),
        "--dump-spectrogram",
        s(&spec),
        s(&wav),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let n = 7 * 22050;
    let frames = (n - 2048) / 1024 + 1;
    let chroma = std::fs::read_to_string(&chroma).unwrap();
    let mut lines = chroma.lines();
    assert_eq!(lines.next().unwrap(), "frame,C,C#,D,D#,E,F,F#,G,G#,A,A#,B");
    assert_eq!(lines.count(), frames);
    let spec = std::fs::read_to_string(&spec).unwrap();
    assert_eq!(spec.lines().count(), frames);
    assert!(spec.lines().all(|l| l.split(',').count() == 1025));
}

#[test]
fn profile_override_changes_result() {
    let dir = tempfile::tempdir().unwrap();
    let wav = write_scale(dir.path(), "a.wav", 72, &MAJOR_SCALE);
    // swap the built-in major and minor bases
    let profiles = dir.path().join("profiles.txt");
    std::fs::write(
        &profiles,
        "major: 6.33, 2.68, 3.52, 5.38, 2.60, 3.53, 2.54, 4.75, 3.98, 2.69, 3.34, 3.17\n\
         minor: 6.35, 2.23, 3.48, 2.33, 4.38, 4.09, 2.52, 5.19, 2.39, 3.66, 2.29, 2.88\n",
    )
    .unwrap();
    let out = keyscope(&["--format", "json", "--profiles", s(&profiles), s(&wav)]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["key"], "C Minor");
}

#[test]
fn parallel_batch_preserves_order() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<PathBuf> = (0..6)
        .map(|t| write_scale(dir.path(), &format!("f{t}.wav"), 72 + t, &MAJOR_SCALE))
        .collect();
    let mut args = vec!["--format", "json", "--jobs", "4"];
    args.extend(paths.iter().map(|p| s(p)));
    let out = keyscope(&args);
    assert_eq!(out.status.code(), Some(0));
    let serial = {
        let mut a = vec!["--format", "json"];
        a.extend(paths.iter().map(|p| s(p)));
        keyscope(&a)
    };
    assert_eq!(out.stdout, serial.stdout);
    let text = String::from_utf8(out.stdout).unwrap();
    let keys: Vec<String> = text
        .lines()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["key"]
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect();
    assert_eq!(
        keys,
        ["C Major", "C# Major", "D Major", "D# Major", "E Major", "F Major"]
    );
}
