//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for input or validation errors (one `error:` line
//! on stderr), 2 for usage errors. Every `-o` accepts `-` for standard output.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};

use crate::density::{density_kde, Bandwidth};
use crate::error::Error;
use crate::graph::Graph;
use crate::io::{parse_graph, parse_point_cloud, write_graph, write_pairs};
use crate::mesh::{EdgeTag, Mesh, PointSet, TaggedEdgeSet};
use crate::metrics::{DiameterMode, GraphReport};
use crate::pool::{build_pyramid, PoolStage};
use crate::report::{write_report, Report};
use crate::rewire::{rewire, RewireParams};

/// Graphs above this many nodes default to a sampled diameter.
pub const EXACT_DIAMETER_LIMIT: usize = 10_000;
pub const DEFAULT_DIAMETER_SAMPLES: usize = 32;

#[derive(Debug, Parser)]
#[command(name = "treewire", version, about = "Hierarchical tree-edge rewiring for mesh graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Delaunay-triangulate a 2-D point cloud into an edge list
    Triangulate {
        points: PathBuf,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Add hierarchical tree edges to a mesh
    Rewire {
        points: PathBuf,
        edges: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        levels: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        merge_exponent: u64,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Build a bi-stride pooling pyramid; writes <prefix>.stageN.edges and <prefix>.stageN.map
    Pool {
        points: PathBuf,
        edges: PathBuf,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        stages: u64,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Connectivity, hop diameter and degree report
    Stats {
        points: PathBuf,
        edges: PathBuf,
        /// exact | sampled:N (default: exact up to 10000 nodes, sampled:32 above)
        #[arg(long)]
        diameter: Option<DiameterMode>,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Gaussian kernel density estimate of node positions on a grid
    Density {
        points: PathBuf,
        /// positive bandwidth or "auto" (Scott's rule)
        #[arg(long, default_value = "auto")]
        bandwidth: BandwidthArg,
        /// cells per axis
        #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u64).range(2..))]
        grid: u64,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
}

#[derive(Clone, Debug)]
pub struct BandwidthArg(pub Bandwidth);

impl FromStr for BandwidthArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(BandwidthArg(Bandwidth::Auto));
        }
        match s.parse::<f64>() {
            Ok(h) if h.is_finite() && h > 0.0 => Ok(BandwidthArg(Bandwidth::Uniform(h))),
            _ => Err(format!("expected a positive number or \"auto\", got {s:?}")),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render().ansi());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

fn read_text(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn read_points(path: &Path) -> Result<PointSet, Error> {
    Ok(parse_point_cloud(&read_text(path)?)?)
}

fn read_mesh(points: &Path, edges: &Path) -> Result<Mesh, Error> {
    let p = read_points(points)?;
    Ok(parse_graph(p, &read_text(edges)?)?)
}

fn emit<F>(target: &str, stdout: &mut dyn Write, write: F) -> Result<(), Error>
where
    F: FnOnce(&mut dyn Write) -> io::Result<usize>,
{
    let io_err = |source| Error::Io { path: target.to_string(), source };
    if target == "-" {
        write(stdout).map_err(io_err)?;
        stdout.flush().map_err(io_err)?;
    } else {
        let mut file = BufWriter::new(File::create(target).map_err(io_err)?);
        write(&mut file).map_err(io_err)?;
        file.flush().map_err(io_err)?;
    }
    Ok(())
}

pub fn execute(command: &Command, stdout: &mut dyn Write) -> Result<(), Error> {
    match command {
        Command::Triangulate { points, output } => {
            let points = read_points(points)?;
            let tri = crate::delaunay::delaunay_triangulate(&points)?;
            let set = TaggedEdgeSet::from_pairs(tri.edges(), EdgeTag::Mesh);
            emit(output, stdout, |w| write_graph(&set, w))
        }
        Command::Rewire { points, edges, levels, merge_exponent, output } => {
            let mesh = read_mesh(points, edges)?;
            let params = RewireParams::new(*levels as usize, *merge_exponent as usize)?;
            let set = rewire(&mesh, params)?;
            emit(output, stdout, |w| write_graph(&set, w))
        }
        Command::Pool { points, edges, stages, output } => {
            let mesh = read_mesh(points, edges)?;
            let pyramid = build_pyramid(&Graph::from_mesh(&mesh), mesh.points(), *stages as usize)?;
            for (i, stage) in pyramid.stages.iter().enumerate() {
                let n = i + 1;
                if output == "-" {
                    emit(output, stdout, |w| {
                        let mut bytes = 0;
                        w.write_all(format!("# stage {n} edges\n").as_bytes())?;
                        bytes += write_pairs(&stage.coarse_edges, &mut *w)?;
                        w.write_all(format!("# stage {n} map\n").as_bytes())?;
                        bytes += write_mapping(stage, w)?;
                        Ok(bytes)
                    })?;
                } else {
                    emit(&format!("{output}.stage{n}.edges"), stdout, |w| write_pairs(&stage.coarse_edges, w))?;
                    emit(&format!("{output}.stage{n}.map"), stdout, |w| write_mapping(stage, w))?;
                }
            }
            Ok(())
        }
        Command::Stats { points, edges, diameter, output } => {
            let mesh = read_mesh(points, edges)?;
            let mode = diameter.unwrap_or(if mesh.node_count() > EXACT_DIAMETER_LIMIT {
                DiameterMode::Sampled(DEFAULT_DIAMETER_SAMPLES)
            } else {
                DiameterMode::Exact
            });
            let report = Report::Graph(GraphReport::new(&Graph::from_mesh(&mesh), mode));
            emit(output, stdout, |w| write_report(&report, w))
        }
        Command::Density { points, bandwidth, grid, output } => {
            let points = read_points(points)?;
            let resolution = vec![*grid as usize; points.dim()];
            let report = Report::Density(density_kde(&points, &bandwidth.0, &resolution)?);
            emit(output, stdout, |w| write_report(&report, w))
        }
    }
}

/// `fine coarse kept` per fine node, `kept` being 1 for surviving nodes.
pub fn write_mapping(stage: &PoolStage, sink: &mut dyn Write) -> io::Result<usize> {
    let mut buf = String::new();
    for (v, &c) in stage.fine_to_coarse.iter().enumerate() {
        let kept = u8::from(stage.front_parity(v));
        buf.push_str(&format!("{v} {c} {kept}\n"));
    }
    sink.write_all(buf.as_bytes())?;
    Ok(buf.len())
}
