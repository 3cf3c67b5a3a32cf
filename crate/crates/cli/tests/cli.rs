use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chaosmark"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn field<'a>(report: &'a str, name: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(name).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {name} in {report}"))
}

fn setup(size: &str) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["keygen", "--out", "k.key"]);
    ok(
        dir.path(),
        &[
            "synth-image",
            "--out",
            "c.pgm",
            "--width",
            size,
            "--height",
            size,
            "--seed",
            "9",
        ],
    );
    dir
}

#[test]
fn spatial_round_trip() {
    let dir = setup("256");
    let d = dir.path();
    ok(
        d,
        &[
            "embed-spatial",
            "--in",
            "c.pgm",
            "--key",
            "k.key",
            "--text",
            "hello",
            "--out",
            "s.pgm",
        ],
    );
    assert_eq!(
        ok(d, &["extract-spatial", "--in", "s.pgm", "--key", "k.key"]),
        "hello\n"
    );
}

#[test]
fn spatial_survives_zeroed_square() {
    let dir = setup("256");
    let d = dir.path();
    let text = "a square of 40x40 pixels is removed";
    ok(
        d,
        &[
            "embed-spatial",
            "--in",
            "c.pgm",
            "--key",
            "k.key",
            "--text",
            text,
            "--out",
            "s.pgm",
        ],
    );
    ok(
        d,
        &[
            "attack",
            "--in",
            "s.pgm",
            "--out",
            "a.pgm",
            "--kind",
            "zero-square",
            "--x",
            "100",
            "--y",
            "100",
            "--size",
            "40",
        ],
    );
    let got = ok(d, &["extract-spatial", "--in", "a.pgm", "--key", "k.key"]);
    assert_eq!(got.trim_end(), text);
}

#[test]
fn wrong_mu_is_rejected() {
    let dir = setup("512");
    let d = dir.path();
    let wm = ["--key", "k.key", "--text", "chaotic watermark"];
    ok(
        d,
        &[&["embed-dwt", "--in", "c.pgm", "--out", "w.pgm"][..], &wm].concat(),
    );
    let detect = |extra: &[&str]| {
        ok(
            d,
            &[
                &["detect-dwt", "--in", "w.pgm", "--original", "c.pgm"][..],
                &wm,
                extra,
            ]
            .concat(),
        )
    };
    let right = detect(&[]);
    let wrong = detect(&["--mu", "3.99987"]);
    assert_eq!(field(&right, "verdict"), "watermarked");
    assert_eq!(field(&wrong, "verdict"), "not-watermarked");
    let rms = |r: &str| field(r, "rms").parse::<f64>().unwrap();
    assert!(rms(&wrong) > rms(&right));
}

#[test]
fn sweep_emits_table() {
    let dir = setup("256");
    let d = dir.path();
    let wm = ["--key", "k.key", "--text", "sweep"];
    ok(
        d,
        &[&["embed-dwt", "--in", "c.pgm", "--out", "w.pgm"][..], &wm].concat(),
    );
    let table = ok(
        d,
        &[
            &["sweep-dwt", "--in", "w.pgm", "--original", "c.pgm"][..],
            &wm,
        ]
        .concat(),
    );
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "parameter\tvalue\trms");
    assert_eq!(lines.len(), 9);
    assert!(lines[1].starts_with("correct\t"));
}

#[test]
fn outputs_are_deterministic() {
    let dir = setup("128");
    let d = dir.path();
    for out in ["s1.pgm", "s2.pgm"] {
        ok(
            d,
            &[
                "embed-spatial",
                "--in",
                "c.pgm",
                "--key",
                "k.key",
                "--text",
                "same",
                "--out",
                out,
            ],
        );
        ok(
            d,
            &[
                "attack",
                "--in",
                out,
                "--out",
                &format!("n{out}"),
                "--kind",
                "gaussian",
                "--sigma",
                "2",
                "--seed",
                "5",
            ],
        );
    }
    let read = |p: &str| std::fs::read(d.join(p)).unwrap();
    assert_eq!(read("s1.pgm"), read("s2.pgm"));
    assert_eq!(read("ns1.pgm"), read("ns2.pgm"));
}

#[test]
fn inputs_are_not_modified() {
    let dir = setup("128");
    let d = dir.path();
    let before = std::fs::read(d.join("c.pgm")).unwrap();
    ok(
        d,
        &[
            "embed-spatial",
            "--in",
            "c.pgm",
            "--key",
            "k.key",
            "--text",
            "x",
            "--out",
            "s.pgm",
        ],
    );
    ok(
        d,
        &[
            "attack", "--in", "c.pgm", "--out", "a.pgm", "--kind", "crop-pad", "--x", "8", "--y",
            "8", "--width", "64", "--height", "32",
        ],
    );
    assert_eq!(std::fs::read(d.join("c.pgm")).unwrap(), before);
}

#[test]
fn metrics_report() {
    let dir = setup("64");
    let d = dir.path();
    let same = ok(d, &["metrics", "--a", "c.pgm", "--b", "c.pgm"]);
    assert_eq!(field(&same, "psnr"), "inf");
    assert_eq!(field(&same, "max_change"), "0");
}

#[test]
fn exit_codes() {
    let dir = setup("64");
    let d = dir.path();
    assert_eq!(run(d, &["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(
            d,
            &["attack", "--in", "c.pgm", "--out", "a.pgm", "--kind", "gaussian"]
        )
        .status
        .code(),
        Some(2)
    );

    let out = run(d, &["extract-spatial", "--in", "c.pgm", "--key", "k.key"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error[E"));

    let out = run(
        d,
        &[
            "attack",
            "--in",
            "c.pgm",
            "--out",
            "a.pgm",
            "--kind",
            "zero-square",
            "--x",
            "60",
            "--size",
            "10",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E701"));

    let out = run(d, &["metrics", "--a", "missing.pgm", "--b", "c.pgm"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn keygen_overrides_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(
        d,
        &[
            "keygen", "--out", "k.key", "--mu", "3.9", "--x0", "0.3", "--u0", "7",
        ],
    );
    let text = std::fs::read_to_string(d.join("k.key")).unwrap();
    assert!(text.contains("mu = 3.9"));
    assert!(text.contains("u0 = 7"));
    assert_eq!(
        run(d, &["keygen", "--out", "bad.key", "--mu", "5"])
            .status
            .code(),
        Some(1)
    );
}
