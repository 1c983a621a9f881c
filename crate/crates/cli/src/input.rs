use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use clap::{ArgGroup, Args, ValueEnum};
use log::info;
use ripsmap::dataset::{
    generate_annulus, generate_square, iris_like_sized, load_table, read_labels_csv, read_points_csv, sample_rows,
    two_circles, two_squares, EncodingSpec,
};
use ripsmap::PointCloud;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult, Kind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// 100 + 100 points in unit squares at (0,0) and (5,5).
    TwoSquares,
    /// 500 points in the annulus 1..2 and 1000 in 5..10.
    TwoCircles,
    /// --n points in the annulus --r-inner..--r-outer.
    Annulus,
    /// --n points in the square at --corner with edge --side.
    Square,
    /// Three labeled 4-feature Gaussian classes, --n per class (default 50).
    IrisLike,
    /// The four corners of the unit square.
    UnitSquare,
}

impl Preset {
    fn name(self) -> &'static str {
        match self {
            Preset::TwoSquares => "two-squares",
            Preset::TwoCircles => "two-circles",
            Preset::Annulus => "annulus",
            Preset::Square => "square",
            Preset::IrisLike => "iris-like",
            Preset::UnitSquare => "unit-square",
        }
    }
}

#[derive(Debug, Args)]
pub struct GeneratorArgs {
    /// Built-in dataset.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Point count for annulus and square; per-class count for iris-like.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub r_inner: f64,
    #[arg(long, default_value_t = 2.0)]
    pub r_outer: f64,
    /// Lower-left corner of the square preset, as `x,y`.
    #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [0.0, 0.0], allow_negative_numbers = true)]
    pub corner: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub side: f64,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "preset"])))]
pub struct InputArgs {
    /// Point CSV (one point per row, optional header).
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub generator: GeneratorArgs,
    /// Header name of a label column in --input.
    #[arg(long, requires = "input", conflicts_with_all = ["labels", "encoding"])]
    pub label_column: Option<String>,
    /// Label CSV (`point_index,label`) matching --input row for row.
    #[arg(long, requires = "input")]
    pub labels: Option<PathBuf>,
    /// TOML encoding spec for a mixed-type table in --input.
    #[arg(long, requires = "input")]
    pub encoding: Option<PathBuf>,
    /// Field delimiter of --input.
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,
    /// Keep a seeded uniform sample of this many points.
    #[arg(long)]
    pub subsample: Option<usize>,
}

/// A synthetic dataset from the generator flags.
pub fn generate(args: &GeneratorArgs, seed: u64) -> CliResult<PointCloud<f64>> {
    let preset = args.preset.ok_or_else(|| CliError::bad_args("--preset is required"))?;
    let cloud = match preset {
        Preset::TwoSquares => two_squares(seed)?,
        Preset::TwoCircles => two_circles(seed)?,
        Preset::Annulus => generate_annulus(args.n.unwrap_or(500), args.r_inner, args.r_outer, seed)?,
        Preset::Square => {
            let corner = [args.corner[0], args.corner[1]];
            generate_square(args.n.unwrap_or(100), corner, args.side, seed)?
        }
        Preset::IrisLike => iris_like_sized(args.n.unwrap_or(50), seed)?,
        Preset::UnitSquare => PointCloud::from_rows(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])?,
    };
    Ok(cloud)
}

/// Generator parameters as recorded in metadata.
pub fn generator_json(args: &GeneratorArgs) -> Value {
    let Some(preset) = args.preset else {
        return Value::Null;
    };
    let mut v = json!({ "preset": preset.name() });
    match preset {
        Preset::Annulus => {
            v["n"] = json!(args.n.unwrap_or(500));
            v["r_inner"] = json!(args.r_inner);
            v["r_outer"] = json!(args.r_outer);
        }
        Preset::Square => {
            v["n"] = json!(args.n.unwrap_or(100));
            v["corner"] = json!(args.corner);
            v["side"] = json!(args.side);
        }
        Preset::IrisLike => v["per_class"] = json!(args.n.unwrap_or(50)),
        _ => {}
    }
    v
}

/// The input cloud of an analysis command, subsampled when requested.
pub fn load(args: &InputArgs, seed: u64) -> CliResult<PointCloud<f64>> {
    let cloud = match &args.input {
        None => generate(&args.generator, seed)?,
        Some(path) => read_file(args, path)?,
    };
    info!("loaded {} points in {} dimensions", cloud.len(), cloud.dim());
    match args.subsample {
        Some(m) if m < cloud.len() => {
            let (sample, _) = sample_rows(&cloud, m, seed);
            info!("subsampled to {m} points");
            Ok(sample)
        }
        _ => Ok(cloud),
    }
}

fn read_file(args: &InputArgs, path: &PathBuf) -> CliResult<PointCloud<f64>> {
    let with_path = |e: CliError| e.context(format!("reading {}", path.display()));
    let cloud = match &args.encoding {
        Some(spec_path) => {
            let spec = EncodingSpec::from_path(spec_path)
                .map_err(|e| CliError::from(e).context(format!("reading {}", spec_path.display())))?;
            load_table(path, &spec).map_err(|e| with_path(e.into()))?
        }
        None => {
            if !args.delimiter.is_ascii() {
                return Err(CliError::bad_args("--delimiter must be a single ASCII character"));
            }
            let file = File::open(path).map_err(|e| with_path(CliError::new(Kind::Io, e)))?;
            read_points_csv(BufReader::new(file), args.delimiter as u8, args.label_column.as_deref())
                .map_err(|e| with_path(e.into()))?
        }
    };
    match &args.labels {
        None => Ok(cloud),
        Some(labels_path) => {
            let context = |e: CliError| e.context(format!("reading {}", labels_path.display()));
            let file = File::open(labels_path).map_err(|e| context(CliError::new(Kind::Io, e)))?;
            let labels = read_labels_csv(BufReader::new(file)).map_err(|e| context(e.into()))?;
            Ok(cloud.with_labels(labels).map_err(|e| context(e.into()))?)
        }
    }
}

/// Input description as recorded in metadata.
pub fn input_json(args: &InputArgs) -> Value {
    json!({
        "input": args.input.as_ref().map(|p| p.display().to_string()),
        "generator": generator_json(&args.generator),
        "label_column": args.label_column,
        "labels": args.labels.as_ref().map(|p| p.display().to_string()),
        "encoding": args.encoding.as_ref().map(|p| p.display().to_string()),
        "delimiter": args.delimiter.to_string(),
        "subsample": args.subsample,
    })
}
