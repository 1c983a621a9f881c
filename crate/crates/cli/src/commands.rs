use std::fs::File;
use std::io::{BufReader, Write};

use log::info;
use ripsmap::cluster::{
    cut_dendrogram, dbscan, inertia, kmeans, purity, single_linkage, write_assignment_csv, ClusterAssignment,
    CutStrategy, KMeansParams,
};
use ripsmap::dataset::{distance_matrix, read_points_csv, write_labels_csv, write_points_csv};
use ripsmap::mapper::{run_mapper, write_dot, write_json, Clusterer, ColorBy, MapperParams};
use ripsmap::persistence::{
    barcode, compute_persistence, write_barcode_csv, write_betti_csv, write_diagram_csv, ReportOptions,
};
use ripsmap::rips::{build_rips_with_budget, default_max_eps, DEFAULT_SIMPLEX_BUDGET};
use ripsmap::{Lens, Metric, PersistenceDiagram, PointCloud};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult, Kind};
use crate::input;
use crate::output::OutDir;
use crate::{ClusterArgs, ClustererArgs, ClustererKind, Format, GenerateArgs, MapperArgs, PersistArgs};

const BUDGET_VAR: &str = "RIPSMAP_SIMPLEX_BUDGET";

/// The requested formats, or `default` when none were given; anything outside
/// `allowed` is rejected.
fn formats(requested: &[Format], allowed: &[Format], default: &[Format], command: &str) -> CliResult<Vec<Format>> {
    if let Some(bad) = requested.iter().find(|f| !allowed.contains(f)) {
        let names: Vec<&str> = allowed.iter().map(|f| f.name()).collect();
        return Err(CliError::bad_args(format!(
            "{command} cannot write {}; supported: {}",
            bad.name(),
            names.join(", ")
        )));
    }
    Ok(if requested.is_empty() {
        default.to_vec()
    } else {
        requested.to_vec()
    })
}

fn parse_metric(s: &str) -> CliResult<Metric> {
    Ok(s.parse::<Metric>()?)
}

fn simplex_budget() -> CliResult<usize> {
    match std::env::var(BUDGET_VAR) {
        Err(_) => Ok(DEFAULT_SIMPLEX_BUDGET),
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|&b: &usize| b > 0)
            .ok_or_else(|| CliError::bad_args(format!("{BUDGET_VAR}={v} is not a positive integer"))),
    }
}

fn write_points(out: &OutDir, cloud: &PointCloud<f64>) -> CliResult<()> {
    let header: Vec<String> = match cloud.dim() {
        2 => vec!["x".into(), "y".into()],
        d => (0..d).map(|i| format!("x{i}")).collect(),
    };
    out.write("points.csv", |w| {
        writeln!(w, "{}", header.join(","))?;
        write_points_csv(cloud, w)
    })?;
    if let Some(labels) = cloud.labels() {
        out.write("labels.csv", |w| write_labels_csv(labels, w))?;
    }
    Ok(())
}

pub fn generate(args: &GenerateArgs, argv: &[String]) -> CliResult<()> {
    let common = &args.common;
    formats(&common.format, &[Format::Csv], &[Format::Csv], "generate")?;
    let cloud = input::generate(&args.input, common.seed)?;
    info!("generated {} points", cloud.len());
    let out = OutDir::create(&common.out_dir)?;
    write_points(&out, &cloud)?;
    let params = json!({
        "generator": input::generator_json(&args.input),
        "n_points": cloud.len(),
    });
    out.write_metadata("generate", common.seed, argv, params)
}

fn diagram_json(diagram: &PersistenceDiagram<f64>, opts: ReportOptions) -> Value {
    let pairs: Vec<Value> = diagram
        .reported(opts)
        .map(|p| {
            json!({
                "dimension": p.dimension,
                "birth": p.birth,
                // JSON has no infinity
                "death": if p.is_infinite() { Value::Null } else { json!(p.death) },
            })
        })
        .collect();
    json!({ "max_dim": diagram.max_dim, "n_points": diagram.n_points, "pairs": pairs })
}

pub fn persist(args: &PersistArgs, argv: &[String]) -> CliResult<()> {
    let common = &args.common;
    let formats = formats(&common.format, &[Format::Csv, Format::Json], &[Format::Csv], "persist")?;
    let metric = parse_metric(&args.metric)?;
    let budget = simplex_budget()?;
    let cloud = input::load(&args.input, common.seed)?;

    let dist = distance_matrix(&cloud, metric);
    let max_eps = match args.max_eps {
        Some(e) => e,
        None => default_max_eps(&dist)?,
    };
    let filtration = build_rips_with_budget(&dist, args.max_dim, max_eps, budget)?;
    info!(
        "filtration: {} simplices, per dimension {:?}",
        filtration.len(),
        filtration.counts()
    );
    let diagram = compute_persistence(&filtration)?;
    info!("diagram: {} pairs", diagram.pairs.len());

    let opts = ReportOptions {
        include_ephemeral: args.include_ephemeral,
        all_dims: args.all_dims,
    };
    let out = OutDir::create(&common.out_dir)?;
    for format in &formats {
        match format {
            Format::Csv => {
                out.write("diagram.csv", |w| write_diagram_csv(&diagram, opts, w))?;
                out.write("barcode.csv", |w| write_barcode_csv(&barcode(&diagram, opts), w))?;
                out.write("betti.csv", |w| {
                    write_betti_csv(&diagram, max_eps, args.betti_samples, opts, w)
                })?;
            }
            Format::Json => out.write_json("diagram.json", &diagram_json(&diagram, opts))?,
            Format::Dot => unreachable!("rejected above"),
        }
    }
    let params = json!({
        "input": input::input_json(&args.input),
        "max_dim": args.max_dim,
        "max_eps": max_eps,
        "metric": metric.to_string(),
        "all_dims": args.all_dims,
        "include_ephemeral": args.include_ephemeral,
        "betti_samples": args.betti_samples,
        "simplex_budget": budget,
        "formats": formats.iter().map(|f| f.name()).collect::<Vec<_>>(),
        "n_points": cloud.len(),
        "n_simplices": filtration.len(),
    });
    out.write_metadata("persist", common.seed, argv, params)
}

fn mapper_clusterer(args: &ClustererArgs, seed: u64) -> Clusterer<f64> {
    match args.clusterer.unwrap_or(ClustererKind::SingleLinkage) {
        ClustererKind::SingleLinkage => Clusterer::SingleLinkage { bins: args.bins },
        ClustererKind::Dbscan => Clusterer::Dbscan {
            eps: args.eps,
            min_pts: args.min_pts,
        },
        ClustererKind::Kmeans => Clusterer::KMeans {
            k: args.k.unwrap_or(2),
            seed,
        },
    }
}

fn clusterer_json(c: &Clusterer<f64>) -> Value {
    match *c {
        Clusterer::SingleLinkage { bins } => json!({ "kind": "single-linkage", "bins": bins }),
        Clusterer::Dbscan { eps, min_pts } => json!({ "kind": "dbscan", "eps": eps, "min_pts": min_pts }),
        Clusterer::KMeans { k, seed } => json!({ "kind": "kmeans", "k": k, "seed": seed }),
    }
}

fn parse_color(s: &str) -> CliResult<ColorBy> {
    let bad = || {
        CliError::bad_args(format!(
            "--color-by: expected size, mean:<axis> or label:<name>, got `{s}`"
        ))
    };
    match s.split_once(':') {
        None if s == "size" => Ok(ColorBy::Size),
        Some(("mean", axis)) => axis.parse().map(ColorBy::Mean).map_err(|_| bad()),
        Some(("label", name)) if !name.is_empty() => Ok(ColorBy::LabelRatio(name.to_string())),
        _ => Err(bad()),
    }
}

pub fn mapper(args: &MapperArgs, argv: &[String]) -> CliResult<()> {
    let common = &args.common;
    let formats = formats(
        &common.format,
        &[Format::Json, Format::Dot],
        &[Format::Json, Format::Dot],
        "mapper",
    )?;
    let metric = parse_metric(&args.metric)?;
    let color_by = parse_color(&args.color_by)?;
    let lens: Lens<f64> = match &args.lens_values {
        None => args.lens.parse()?,
        Some(path) => {
            let context = |e: CliError| e.context(format!("reading {}", path.display()));
            let file = File::open(path).map_err(|e| context(CliError::new(Kind::Io, e)))?;
            Lens::External(read_points_csv(BufReader::new(file), b',', None).map_err(|e| context(e.into()))?)
        }
    };
    if args.input.subsample.is_some() && matches!(lens, Lens::External(_)) {
        return Err(CliError::bad_args("--subsample cannot be combined with --lens-values"));
    }
    let cloud = input::load(&args.input, common.seed)?;

    let clusterer = mapper_clusterer(&args.clustering, common.seed);
    let lens_name = match &lens {
        Lens::External(_) => "external".to_string(),
        other => other.to_string(),
    };
    let params = MapperParams::new(lens)
        .intervals(args.intervals)
        .overlap(args.overlap)
        .clusterer(clusterer)
        .nerve_dim(args.nerve_dim)
        .metric(metric);
    let nerve = run_mapper(&cloud, &params)?;
    info!(
        "nerve: {} nodes, {} edges, {} components",
        nerve.nodes.len(),
        nerve.edges().len(),
        nerve.components().len()
    );

    let out = OutDir::create(&common.out_dir)?;
    for format in &formats {
        match format {
            Format::Json => out.write("nerve.json", |w| write_json(&nerve, w))?,
            Format::Dot => out.write("nerve.dot", |w| write_dot(&nerve, &color_by, w))?,
            Format::Csv => unreachable!("rejected above"),
        }
    }
    let meta = json!({
        "input": input::input_json(&args.input),
        "lens": lens_name,
        "lens_values": args.lens_values.as_ref().map(|p| p.display().to_string()),
        "intervals": args.intervals,
        "overlap": args.overlap,
        "clusterer": clusterer_json(&clusterer),
        "nerve_dim": args.nerve_dim,
        "metric": metric.to_string(),
        "color_by": args.color_by,
        "formats": formats.iter().map(|f| f.name()).collect::<Vec<_>>(),
        "n_points": cloud.len(),
        "n_nodes": nerve.nodes.len(),
        "n_components": nerve.components().len(),
    });
    out.write_metadata("mapper", common.seed, argv, meta)
}

pub fn cluster(args: &ClusterArgs, argv: &[String]) -> CliResult<()> {
    let common = &args.common;
    formats(&common.format, &[Format::Csv], &[Format::Csv], "cluster")?;
    let metric = parse_metric(&args.metric)?;
    let c = &args.clustering;
    let kind = c.clusterer.unwrap_or(ClustererKind::Kmeans);
    if kind == ClustererKind::Kmeans && metric != Metric::Euclidean {
        return Err(CliError::bad_args("kmeans works in the Euclidean metric only"));
    }
    if c.k.is_some() && args.height.is_some() {
        return Err(CliError::bad_args("--k and --height are mutually exclusive"));
    }
    let cloud = input::load(&args.input, common.seed)?;

    let mut summary = json!({ "algorithm": kind.name(), "n_points": cloud.len() });
    let mut params = json!({
        "input": input::input_json(&args.input),
        "clusterer": kind.name(),
        "metric": metric.to_string(),
    });
    let assignment: ClusterAssignment = match kind {
        ClustererKind::Kmeans => {
            let k = c.k.unwrap_or(2);
            let result = kmeans(&cloud, &KMeansParams::new(k).seed(common.seed))?;
            summary["inertia"] = json!(result.inertia);
            summary["iterations"] = json!(result.iterations);
            summary["converged"] = json!(result.converged);
            summary["centers"] = json!(result.centers);
            params["k"] = json!(k);
            result.assignment
        }
        ClustererKind::SingleLinkage => {
            let dendrogram = single_linkage(&distance_matrix(&cloud, metric));
            let strategy = match (c.k, args.height) {
                (Some(k), _) => CutStrategy::FixedCount(k),
                (None, Some(h)) => CutStrategy::Height(h),
                (None, None) => CutStrategy::HistogramGap {
                    bins: c.bins,
                    range: None,
                },
            };
            params["cut"] = match strategy {
                CutStrategy::FixedCount(k) => json!({ "k": k }),
                CutStrategy::Height(h) => json!({ "height": h }),
                CutStrategy::HistogramGap { bins, .. } => json!({ "histogram_bins": bins }),
            };
            cut_dendrogram(&dendrogram, strategy)?
        }
        ClustererKind::Dbscan => {
            params["eps"] = json!(c.eps);
            params["min_pts"] = json!(c.min_pts);
            dbscan(&distance_matrix(&cloud, metric), c.eps, c.min_pts)?
        }
    };
    summary["n_clusters"] = json!(assignment.k());
    summary["sizes"] = json!(assignment.sizes());
    summary["noise"] = json!(assignment.noise_count());
    if kind != ClustererKind::Kmeans && assignment.noise_count() == 0 && !cloud.is_empty() {
        summary["inertia"] = json!(inertia(&cloud, &assignment)?);
    }
    if let Some(labels) = cloud.labels() {
        summary["purity"] = json!(purity(&assignment, labels));
    }
    info!(
        "clusters: sizes {:?}, noise {}",
        assignment.sizes(),
        assignment.noise_count()
    );

    let out = OutDir::create(&common.out_dir)?;
    out.write("assignment.csv", |w| write_assignment_csv(&assignment, w))?;
    out.write_json("summary.json", &summary)?;
    out.write_metadata("cluster", common.seed, argv, params)
}
