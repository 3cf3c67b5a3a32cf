use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chaosmark::attacks::Rect;
use chaosmark::watermark::{detect, embed_switch, wrong_parameter_sweep, SwitchParams};
use chaosmark::{
    image_io, metrics, stego, synth_test_image, text_to_bits, AttackSpec, ChaosKey, GrayImage,
    LscSelector,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "chaosmark",
    version,
    about = "Chaotic-iteration data hiding for PGM images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hide ASCII text in the pixel domain.
    EmbedSpatial {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        text: String,
        #[arg(long)]
        out: PathBuf,
        /// Bind the key to the cover's most significant bits.
        #[arg(long)]
        authenticate: bool,
    },
    /// Recover text hidden by embed-spatial.
    ExtractSpatial {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        authenticate: bool,
    },
    /// Switch-mode watermark in a wavelet band.
    EmbedDwt {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        wm: WatermarkArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a candidate image against its original.
    DetectDwt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        original: PathBuf,
        #[command(flatten)]
        wm: WatermarkArgs,
        #[command(flatten)]
        overrides: KeyOverrides,
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Detection RMS under single-parameter perturbations, as TSV.
    SweepDwt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        original: PathBuf,
        #[command(flatten)]
        wm: WatermarkArgs,
    },
    /// Apply a deterministic attack.
    Attack {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        kind: AttackKind,
        /// Left column of the region.
        #[arg(long, default_value_t = 0)]
        x: usize,
        /// Top row of the region.
        #[arg(long, default_value_t = 0)]
        y: usize,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        width: Option<usize>,
        #[arg(long)]
        height: Option<usize>,
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// PSNR and RMS between two images.
    Metrics {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Write a key file.
    Keygen {
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        overrides: KeyOverrides,
    },
    /// Write a seeded synthetic test image.
    SynthImage {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 256)]
        width: usize,
        #[arg(long, default_value_t = 256)]
        height: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct WatermarkArgs {
    #[arg(long)]
    key: PathBuf,
    /// ASCII watermark text.
    #[arg(long)]
    text: String,
    /// Band and level such as HH2 or LL1.
    #[arg(long, default_value = "HH2")]
    band: String,
    /// Coefficient bit, 0 being the least significant.
    #[arg(long, default_value_t = 1)]
    bit: u8,
    /// Comma-separated most significant bits that authenticate the key.
    #[arg(long, value_delimiter = ',')]
    msb: Option<Vec<u8>>,
}

#[derive(Args)]
struct KeyOverrides {
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    x0: Option<f64>,
    #[arg(long)]
    u0: Option<u64>,
    #[arg(long)]
    iterations: Option<u64>,
}

impl KeyOverrides {
    fn apply(&self, key: &mut ChaosKey) {
        if let Some(v) = self.mu {
            key.mu = v;
        }
        if let Some(v) = self.x0 {
            key.x0 = v;
        }
        if let Some(v) = self.u0 {
            key.u0 = Some(v);
        }
        if let Some(v) = self.iterations {
            key.iterations = v;
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AttackKind {
    ZeroSquare,
    Gaussian,
    CropPad,
}

enum Failure {
    Domain(chaosmark::Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl From<chaosmark::Error> for Failure {
    fn from(e: chaosmark::Error) -> Self {
        Failure::Domain(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Domain(e) => write!(f, "error[{}]: {e}", e.code()),
            Failure::Io(p, e) => write!(f, "error[E901]: {}: {e}", p.display()),
            Failure::Usage(m) => write!(f, "usage: {m}"),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_image(path: &Path) -> Result<GrayImage, Failure> {
    image_io::read_pgm_file(path)
        .map_err(|e| Failure::Io(path.into(), e))?
        .map_err(Failure::from)
}

fn write_image(path: &Path, img: &GrayImage) -> Outcome {
    image_io::write_pgm_file(path, img).map_err(|e| Failure::Io(path.into(), e))
}

fn read_key(path: &Path) -> Result<ChaosKey, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.into(), e))?;
    Ok(ChaosKey::from_key_file(&text)?)
}

impl WatermarkArgs {
    fn params(&self, overrides: Option<&KeyOverrides>) -> Result<SwitchParams, Failure> {
        let mut key = read_key(&self.key)?;
        if let Some(o) = overrides {
            o.apply(&mut key);
            key.validate()?;
        }
        let domain = self.band.parse()?;
        let selector = LscSelector::new(domain, self.bit)?;
        let params = SwitchParams::new(key, selector);
        Ok(match &self.msb {
            Some(set) => params.authenticated(set.clone()),
            None => params,
        })
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::EmbedSpatial {
            input,
            key,
            text,
            out,
            authenticate,
        } => {
            let key = read_key(&key)?;
            let cover = read_image(&input)?;
            let marked = stego::embed(&cover, &text, &key, authenticate)?;
            write_image(&out, &marked)?;
            println!("chars={}", text.len());
            println!("psnr={:.4}", metrics::psnr(&cover, &marked)?);
        }
        Command::ExtractSpatial {
            input,
            key,
            authenticate,
        } => {
            let key = read_key(&key)?;
            let img = read_image(&input)?;
            println!("{}", stego::extract(&img, &key, authenticate)?);
        }
        Command::EmbedDwt { input, wm, out } => {
            let params = wm.params(None)?;
            let img = read_image(&input)?;
            let marked = embed_switch(&img, &text_to_bits(&wm.text)?, &params)?;
            write_image(&out, &marked)?;
            println!("selector={}", params.selector);
            println!("psnr={:.4}", metrics::psnr(&img, &marked)?);
            println!("max_change={}", metrics::max_abs_diff(&img, &marked)?);
        }
        Command::DetectDwt {
            input,
            original,
            wm,
            overrides,
            threshold,
        } => {
            let params = wm.params(Some(&overrides))?;
            let candidate = read_image(&input)?;
            let original = read_image(&original)?;
            let report = detect(
                &candidate,
                &original,
                &text_to_bits(&wm.text)?,
                &params,
                threshold,
            )?;
            println!("{report}");
        }
        Command::SweepDwt {
            input,
            original,
            wm,
        } => {
            let params = wm.params(None)?;
            let candidate = read_image(&input)?;
            let original = read_image(&original)?;
            let rows =
                wrong_parameter_sweep(&candidate, &original, &text_to_bits(&wm.text)?, &params)?;
            println!("parameter\tvalue\trms");
            for row in rows {
                println!("{}\t{}\t{:.6}", row.parameter, row.value, row.rms);
            }
        }
        Command::Attack {
            input,
            out,
            kind,
            x,
            y,
            size,
            width,
            height,
            sigma,
            seed,
        } => {
            let spec = match kind {
                AttackKind::ZeroSquare => AttackSpec::ZeroSquare {
                    x,
                    y,
                    size: size.ok_or_else(|| Failure::Usage("zero-square needs --size".into()))?,
                },
                AttackKind::Gaussian => AttackSpec::Gaussian {
                    sigma: sigma.ok_or_else(|| Failure::Usage("gaussian needs --sigma".into()))?,
                    seed,
                },
                AttackKind::CropPad => match (width.or(size), height.or(size)) {
                    (Some(w), Some(h)) => AttackSpec::CropPad(Rect {
                        x,
                        y,
                        width: w,
                        height: h,
                    }),
                    _ => {
                        return Err(Failure::Usage(
                            "crop-pad needs --width and --height, or --size".into(),
                        ))
                    }
                },
            };
            let img = read_image(&input)?;
            let attacked = spec.apply(&img)?;
            write_image(&out, &attacked)?;
            println!("psnr={:.4}", metrics::psnr(&img, &attacked)?);
        }
        Command::Metrics { a, b } => {
            let a = read_image(&a)?;
            let b = read_image(&b)?;
            println!("psnr={:.4}", metrics::psnr(&a, &b)?);
            println!("rms={:.6}", metrics::rms(&a, &b)?);
            println!("max_change={}", metrics::max_abs_diff(&a, &b)?);
        }
        Command::Keygen { out, overrides } => {
            let mut key = ChaosKey::default();
            overrides.apply(&mut key);
            key.validate()?;
            std::fs::write(&out, key.to_key_file()).map_err(|e| Failure::Io(out.clone(), e))?;
            println!("key={:016x}", key.fingerprint());
        }
        Command::SynthImage {
            out,
            width,
            height,
            seed,
        } => {
            let img = synth_test_image(width, height, seed);
            write_image(&out, &img)?;
            println!("width={width}");
            println!("height={height}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(match e {
                Failure::Usage(_) => 2,
                _ => 1,
            })
        }
    }
}
