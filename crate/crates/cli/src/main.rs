//! Command-line pipelines: edge-list ingestion, feature extraction,
//! graph PCA with structural difference scores, and ensemble dictionary
//! learning with cluster-based classification.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mcgraph::centrality::Measure;
use mcgraph::dictionary;
use mcgraph::error::Error;
use mcgraph::features::{assemble, FeatureSpec};
use mcgraph::generators;
use mcgraph::graph::{Graph, Metric};
use mcgraph::spectral::{self, SdsReducer};

#[derive(Parser)]
#[command(name = "mcgraph", about = "Multi-centrality graph spectral analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract the per-node structural feature matrix of each graph.
    Features(PipelineArgs),
    /// Project features to structural coordinates and emit per-node
    /// difference scores plus a per-graph summary.
    GpcaSds(PipelineArgs),
    /// Learn a dictionary over a graph ensemble and classify the graphs
    /// by clustering their sparse coefficients.
    Gdl(GdlArgs),
    /// Walkthrough of structural sensitivity on built-in symmetric
    /// graphs.
    Demo,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Edge-list file (one `source target [weight]` per line).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Directory of edge-list files; lexicographic name order defines
    /// graph order.
    #[arg(long)]
    input_dir: Option<PathBuf>,
    /// Treat edges as directed.
    #[arg(long)]
    directed: bool,
}

#[derive(Args, Clone)]
struct FeatureArgs {
    /// Walk statistics from 1 to this hop count.
    #[arg(long, default_value_t = 20)]
    max_hops: usize,
    /// Comma-separated centrality list
    /// (degree,betweenness,closeness,eigenvector,ego,lfvc) or "all".
    #[arg(long, default_value = "all")]
    centralities: String,
    /// Number of max-degree reference nodes.
    #[arg(long, default_value_t = 10)]
    refs: usize,
    /// Distance metric for shortest paths: hop | weighted.
    #[arg(long, default_value = "hop")]
    metric: String,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Output format: csv | json.
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args, Clone)]
struct PipelineArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    features: FeatureArgs,
    /// Number of principal components.
    #[arg(long, default_value_t = 2)]
    q: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Clone)]
struct GdlArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    features: FeatureArgs,
    /// Number of principal components.
    #[arg(long, default_value_t = 2)]
    q: usize,
    /// Number of top difference scores kept per graph.
    #[arg(long, default_value_t = 300)]
    z: usize,
    /// Dictionary atoms.
    #[arg(long, default_value_t = 2)]
    atoms: usize,
    /// Per-column sparsity cap.
    #[arg(long, default_value_t = 2)]
    sparsity: usize,
    /// Training sweeps.
    #[arg(long, default_value_t = 20)]
    iters: usize,
    /// RNG seed for dictionary init and clustering.
    #[arg(long, default_value_t = 17)]
    seed: u64,
    /// Number of clusters for classification.
    #[arg(long, default_value_t = 2)]
    clusters: usize,
    #[command(flatten)]
    output: OutputArgs,
}

enum CliError {
    Config(String),
    Data(String),
    Numerical(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Data(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Data(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Dimension(_)
            | Error::TooManyReferences { .. }
            | Error::EmptyInput(_)
            | Error::NodeOutOfRange { .. } => CliError::Config(e.to_string()),
            Error::Parse { .. }
            | Error::Io(_)
            | Error::InvalidWeight { .. }
            | Error::SelfLoopRejected(_) => CliError::Data(e.to_string()),
            Error::CountOverflow { .. }
            | Error::NoConvergence { .. }
            | Error::ZeroMatrix
            | Error::AllEigenvaluesZero
            | Error::NonFiniteFeature { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Features(args) => cmd_features(&args),
        Command::GpcaSds(args) => cmd_gpca_sds(&args),
        Command::Gdl(args) => cmd_gdl(&args),
        Command::Demo => {
            cmd_demo();
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn parse_measures(spec: &str) -> Result<Vec<Measure>, CliError> {
    if spec == "all" {
        return Ok(Measure::ALL.to_vec());
    }
    if spec.is_empty() || spec == "none" {
        return Ok(Vec::new());
    }
    spec.split(',')
        .map(|tok| {
            Measure::parse(tok.trim())
                .ok_or_else(|| CliError::Config(format!("unknown centrality '{tok}'")))
        })
        .collect()
}

fn parse_metric(s: &str) -> Result<Metric, CliError> {
    Metric::parse(s).ok_or_else(|| CliError::Config(format!("unknown metric '{s}', use hop|weighted")))
}

fn feature_spec(args: &FeatureArgs) -> Result<FeatureSpec, CliError> {
    if args.max_hops == 0 {
        return Err(CliError::Config("--max-hops must be positive".into()));
    }
    let mut spec = FeatureSpec::new(args.max_hops, parse_measures(&args.centralities)?, args.refs);
    spec.distance_metric = parse_metric(&args.metric)?;
    Ok(spec)
}

/// Validated list of (name, path) inputs, lexicographic for directories.
fn collect_inputs(input: &InputArgs) -> Result<Vec<(String, PathBuf)>, CliError> {
    let mut paths = Vec::new();
    if let Some(p) = &input.input {
        if !p.is_file() {
            return Err(CliError::Config(format!(
                "input file not found: {}",
                p.display()
            )));
        }
        paths.push((stem_of(p), p.clone()));
    }
    if let Some(dir) = &input.input_dir {
        if !dir.is_dir() {
            return Err(CliError::Config(format!(
                "input directory not found: {}",
                dir.display()
            )));
        }
        let mut entries: Vec<PathBuf> = fs::read_dir(dir)
            .map_err(|e| CliError::Data(format!("{}: {e}", dir.display())))?
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| p.is_file())
            .collect();
        entries.sort();
        for p in entries {
            paths.push((stem_of(&p), p));
        }
    }
    if paths.is_empty() {
        return Err(CliError::Config(
            "no input: pass --input and/or --input-dir".into(),
        ));
    }
    Ok(paths)
}

fn stem_of(p: &Path) -> String {
    p.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "graph".into())
}

fn load_graph(path: &Path, directed: bool) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    Graph::parse_edge_list(&text, directed)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

/// Single-writer file output: write a temp file, then rename into place.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| CliError::Data(e.to_string()))?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents).map_err(|e| CliError::Data(e.to_string()))?;
    fs::rename(&tmp, path).map_err(|e| CliError::Data(e.to_string()))?;
    Ok(())
}

fn check_format(format: &str) -> Result<(), CliError> {
    match format {
        "csv" | "json" => Ok(()),
        other => Err(CliError::Config(format!(
            "unknown format '{other}', use csv|json"
        ))),
    }
}

fn cmd_features(args: &PipelineArgs) -> Result<(), CliError> {
    check_format(&args.output.format)?;
    let spec = feature_spec(&args.features)?;
    let inputs = collect_inputs(&args.input)?;
    for (name, path) in inputs {
        let g = load_graph(&path, args.input.directed)?;
        let x = assemble(&g, &spec)?;
        let out = if args.output.format == "csv" {
            let path = args.output.out.join(format!("{name}.features.csv"));
            write_atomic(&path, &x.to_csv(g.labels()))?;
            path
        } else {
            let rows: Vec<Vec<f64>> = (0..x.node_count())
                .map(|i| (0..x.feature_count()).map(|j| x.matrix[(i, j)]).collect())
                .collect();
            let json = serde_json::json!({
                "columns": x.column_names,
                "nodes": g.labels(),
                "matrix": rows,
            });
            let path = args.output.out.join(format!("{name}.features.json"));
            write_atomic(&path, &serde_json::to_string_pretty(&json).unwrap())?;
            path
        };
        println!("{}: {} nodes, {} features -> {}", name, g.node_count(), x.feature_count(), out.display());
    }
    Ok(())
}

struct GraphScores {
    name: String,
    sds: mcgraph::SdsVector,
    summary: f64,
}

fn run_gpca_sds(
    inputs: &[(String, PathBuf)],
    directed: bool,
    spec: &FeatureSpec,
    q: usize,
    output: Option<&OutputArgs>,
) -> Result<Vec<GraphScores>, CliError> {
    let mut all = Vec::new();
    for (name, path) in inputs {
        let g = load_graph(path, directed)?;
        let x = assemble(&g, spec)?;
        let pca = spectral::mc_gpca(&x, q)?;
        let sds = spectral::sds(&g, &pca);
        let summary = spectral::graph_sds_statistic(&sds, SdsReducer::Mean)?;
        if let Some(out) = output {
            let header: String = (1..=q).map(|k| format!(",coord_{k}")).collect();
            if out.format == "csv" {
                let mut csv = format!("node{header},sds\n");
                for i in 0..g.node_count() {
                    csv.push_str(&g.labels()[i]);
                    for k in 0..q {
                        csv.push_str(&format!(",{}", pca.coordinates[(i, k)]));
                    }
                    csv.push_str(&format!(",{}\n", sds.scores[i]));
                }
                write_atomic(&out.out.join(format!("{name}.coords.csv")), &csv)?;
            } else {
                let coords: Vec<Vec<f64>> = (0..g.node_count())
                    .map(|i| (0..q).map(|k| pca.coordinates[(i, k)]).collect())
                    .collect();
                let json = serde_json::json!({
                    "nodes": g.labels(),
                    "coordinates": coords,
                    "singular_values": pca.singular_values,
                    "explained_variance_ratio": pca.explained_variance_ratio,
                    "sds": sds.scores,
                    "summary_mean_sds": summary,
                });
                write_atomic(
                    &out.out.join(format!("{name}.coords.json")),
                    &serde_json::to_string_pretty(&json).unwrap(),
                )?;
            }
        }
        all.push(GraphScores {
            name: name.clone(),
            sds,
            summary,
        });
    }
    Ok(all)
}

fn cmd_gpca_sds(args: &PipelineArgs) -> Result<(), CliError> {
    check_format(&args.output.format)?;
    let spec = feature_spec(&args.features)?;
    if args.q == 0 {
        return Err(CliError::Config("--q must be positive".into()));
    }
    let inputs = collect_inputs(&args.input)?;
    let scored = run_gpca_sds(
        &inputs,
        args.input.directed,
        &spec,
        args.q,
        Some(&args.output),
    )?;
    let mut summary = String::from("graph,mean_sds\n");
    for s in &scored {
        summary.push_str(&format!("{},{}\n", s.name, s.summary));
        println!("{}: mean SDS {}", s.name, s.summary);
    }
    write_atomic(&args.output.out.join("summary.csv"), &summary)?;
    Ok(())
}

fn cmd_gdl(args: &GdlArgs) -> Result<(), CliError> {
    check_format(&args.output.format)?;
    let spec = feature_spec(&args.features)?;
    if args.z == 0 {
        return Err(CliError::Config("--z must be positive".into()));
    }
    let inputs = collect_inputs(&args.input)?;
    if inputs.len() < args.clusters {
        return Err(CliError::Config(format!(
            "{} graphs cannot form {} clusters",
            inputs.len(),
            args.clusters
        )));
    }
    let scored = run_gpca_sds(&inputs, args.input.directed, &spec, args.q, None)?;
    let sds_list: Vec<mcgraph::SdsVector> = scored.iter().map(|s| s.sds.clone()).collect();
    let ensemble = dictionary::build_ensemble_matrix(&sds_list, args.z)?;
    let model = dictionary::ksvd_train(&ensemble, args.atoms, args.sparsity, args.iters, args.seed)?;
    let labels = dictionary::classify_coefficients(&model.coefficients, args.clusters, args.seed)?;

    let model_json = serde_json::to_string_pretty(&model.to_json()).unwrap();
    write_atomic(&args.output.out.join("model.json"), &model_json)?;

    let mut csv = String::from("graph,cluster");
    for k in 1..=args.atoms {
        csv.push_str(&format!(",coef_{k}"));
    }
    csv.push('\n');
    for (col, s) in scored.iter().enumerate() {
        csv.push_str(&format!("{},{}", s.name, labels[col]));
        for k in 0..args.atoms {
            csv.push_str(&format!(",{}", model.coefficients[(k, col)]));
        }
        csv.push('\n');
        println!("{}: cluster {}", s.name, labels[col]);
    }
    write_atomic(&args.output.out.join("labels.csv"), &csv)?;
    println!(
        "final representation error: {}",
        model.training_log.last().copied().unwrap_or(0.0)
    );
    Ok(())
}

fn demo_coordinates(g: &Graph, refs: usize) -> Vec<(String, f64, f64)> {
    let mut spec = FeatureSpec::new(4, Measure::ALL.to_vec(), refs);
    // The hub is the max-degree node; pick a non-central reference
    // instead so symmetric peers become distinguishable.
    if refs > 0 {
        spec.reference_selection = mcgraph::features::ReferenceSelection::Explicit(vec![1]);
    }
    let x = assemble(g, &spec).expect("demo features");
    let pca = spectral::mc_gpca(&x, 2).expect("demo pca");
    (0..g.node_count())
        .map(|i| {
            (
                g.labels()[i].clone(),
                pca.coordinates[(i, 0)],
                pca.coordinates[(i, 1)],
            )
        })
        .collect()
}

fn print_coords(title: &str, coords: &[(String, f64, f64)]) {
    println!("\n{title}");
    for (label, a, b) in coords {
        println!("  node {label:>3}: ({a:+.6}, {b:+.6})");
    }
}

fn cmd_demo() {
    println!("Structural sensitivity walkthrough on a star of cliques");
    println!("(hub node 0, five 4-node cliques, gateways 1,5,9,13,17).");

    let base = generators::star_of_cliques(5, 4);
    let coords = demo_coordinates(&base, 0);
    print_coords("Base graph, no reference nodes (symmetric peers tie):", &coords);

    let with_ref = demo_coordinates(&base, 1);
    print_coords("Same graph with reference node 1 (ties broken):", &with_ref);

    // Perturbation 1: raise one edge weight inside the first clique.
    let mut edges: Vec<(usize, usize, Option<f64>)> = base
        .edges()
        .iter()
        .map(|e| (e.source, e.target, Some(e.weight)))
        .collect();
    for e in &mut edges {
        if e.0 == 1 && e.1 == 2 {
            e.2 = Some(3.0);
        }
    }
    let heavier = Graph::build(&edges, false, Some(base.node_count())).unwrap();
    print_coords(
        "Weight of edge (1,2) raised to 3.0:",
        &demo_coordinates(&heavier, 0),
    );

    // Perturbation 2: remove one clique-internal edge.
    let removed: Vec<(usize, usize, Option<f64>)> = base
        .edges()
        .iter()
        .filter(|e| !(e.source == 2 && e.target == 3))
        .map(|e| (e.source, e.target, Some(e.weight)))
        .collect();
    let sparser = Graph::build(&removed, false, Some(base.node_count())).unwrap();
    print_coords("Edge (2,3) removed:", &demo_coordinates(&sparser, 0));

    // Perturbation 3: make one clique edge directed.
    let directed_edges: Vec<(usize, usize, Option<f64>)> = base
        .edges()
        .iter()
        .flat_map(|e| {
            if e.source == 2 && e.target == 3 {
                vec![(2usize, 3usize, Some(e.weight))]
            } else {
                vec![
                    (e.source, e.target, Some(e.weight)),
                    (e.target, e.source, Some(e.weight)),
                ]
            }
        })
        .collect();
    let flipped = Graph::build(&directed_edges, true, Some(base.node_count())).unwrap();
    print_coords(
        "Edge (2,3) made one-directional:",
        &demo_coordinates(&flipped, 0),
    );
}
