//! Command-line front end: every computation and identity check on a graph
//! from a file or a built-in family, JSON on standard output.
//!
//! Exit codes: 0 success, 1 input or parse error, 2 size guard exceeded,
//! 3 verification failure.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use coboundary::fourier::{parse_complex, ZqFun};
use coboundary::graph::Family;
use coboundary::graph_poly::{
    coset_coeff, expand, l2_flow_rhs, l2_image_rhs, petersen_kernel, RestrictedKernel,
};
use coboundary::tension_flow::{flows, q1_flows, tensions, ColourVector, EdgeVector};
use coboundary::tutte::{chromatic, potts_partition, tutte_dc, EdgeKernel};
use coboundary::verify::{
    check_alon_tarsi, check_coeff_thm, check_corpus, check_l2_image, check_l2_thm,
    check_macwilliams, check_penrose, check_prop_constant, check_tarsi, seeded_g, seeded_kernel,
    to_canonical_json, Report,
};
use coboundary::{C64, Error, Multigraph, Result};

const TOL_ENV: &str = "COBOUNDARY_TOL";

#[derive(Parser)]
#[command(
    name = "coboundary",
    version,
    about = "Tutte, tension/flow and graph-polynomial computations with verification runs",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Pass/fail tolerance override for single-identity verify runs
    /// (default 1e-6, or the COBOUNDARY_TOL environment variable)
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    /// Write the JSON to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GraphSource {
    /// Graph file: a "vertices N" header, then one "edge U V" line per edge
    #[arg(long, conflicts_with = "family", value_name = "PATH")]
    graph: Option<PathBuf>,

    /// Built-in family: bouquet:m, multiedge:m, oriented-multiedge:m:n,
    /// star:m, cycle:m, complete:m, prism, k4
    #[arg(long, value_name = "NAME[:M[:N]]")]
    family: Option<String>,
}

impl GraphSource {
    fn build(&self) -> Result<Multigraph> {
        match (&self.graph, &self.family) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::InvalidParameter(format!("cannot read {}: {e}", path.display()))
                })?;
                Multigraph::from_text(&text)
            }
            (None, Some(spec)) => Family::parse(spec)?.build(),
            _ => Err(Error::InvalidParameter(
                "exactly one of --graph and --family is required".into(),
            )),
        }
    }
}

fn parse_c64(text: &str) -> std::result::Result<C64, String> {
    parse_complex(text).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Cmd {
    /// Vertex, edge, component, rank and nullity counts
    Stats {
        #[command(flatten)]
        graph: GraphSource,
    },
    /// Tutte polynomial as [x-degree, y-degree, coefficient] triples
    Tutte {
        #[command(flatten)]
        graph: GraphSource,
    },
    /// Potts partition function for the constant-diagonal kernel (w off the
    /// diagonal, y on it)
    Potts {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        #[arg(long, value_parser = parse_c64)]
        w: C64,
        #[arg(long, value_parser = parse_c64)]
        y: C64,
    },
    /// Number of proper colourings with q colours, exactly
    Chromatic {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
    },
    /// All Z_q-tensions of the graph
    Tensions {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
    },
    /// All Z_q-flows of the graph
    Flows {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        /// Keep only flows with entries in {0, 1, q-1}
        #[arg(long)]
        q1: bool,
    },
    /// Coefficients of the edge-kernel product modulo x^q - 1
    Expand {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        /// Kernel values g(0),...,g(q-1), e.g. 1,-1,0 (default: 1,-1,0,...)
        #[arg(long)]
        g: Option<String>,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
    /// Squared l2 norm of the expansion, with the flow- and image-side sums
    L2 {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        g: Option<String>,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
    /// One expansion coefficient through the flow-coset sum
    Coeff {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        g: Option<String>,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Exponent vector a_0,...,a_(|V|-1)
        #[arg(long)]
        exponent: String,
    },
    /// Identity checks; exit 3 when a report fails
    Verify {
        #[command(subcommand)]
        check: VerifyCmd,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Expansion norm against the sin^2 colouring sum
    AlonTarsi {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
    },
    /// Expansion norm against the partial-orientation sum
    Tarsi {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
    },
    /// Constant term against the Tutte closed form
    PropConstant {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        #[arg(long, value_parser = parse_c64)]
        y: C64,
        #[arg(long, value_parser = parse_c64)]
        w: C64,
    },
    /// Every expansion coefficient against its coset sum, seeded kernel
    CoeffThm {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Expansion norm against both the flow- and image-side formulas,
    /// seeded kernel
    L2Thm {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Tension weight enumerator against the transformed flow enumerator,
    /// seeded weights
    Macwilliams {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Signed colouring sum over the line graph of a simple cubic graph
    Penrose {
        #[command(flatten)]
        graph: GraphSource,
    },
    /// Every check over the connected-multigraph corpus
    Corpus {
        /// Moduli to sweep, e.g. 2,3
        #[arg(long, default_value = "2,3")]
        q_list: String,
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let output = cli.output.clone();
    match run(cli) {
        Ok((json, ok)) => {
            if let Some(path) = output {
                if let Err(e) = std::fs::write(&path, json + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                println!("{json}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::SizeGuard(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn c(z: C64) -> serde_json::Value {
    serde_json::json!({"re": z.re, "im": z.im})
}

fn vectors_json(vs: &[EdgeVector]) -> serde_json::Value {
    serde_json::Value::Array(
        vs.iter()
            .map(|v| serde_json::json!(v.entries()))
            .collect(),
    )
}

fn kernel_from_flags(q: usize, g: &Option<String>, s: usize, t: usize) -> Result<RestrictedKernel> {
    match g {
        Some(text) => {
            let g = ZqFun::parse_text(text)?;
            if g.q() != q {
                return Err(Error::ModulusMismatch(q, g.q()));
            }
            Ok(RestrictedKernel::new(g, s, t))
        }
        None => {
            let base = petersen_kernel(q)?;
            Ok(RestrictedKernel::new(base.g().clone(), s, t))
        }
    }
}

fn parse_usize_list(text: &str, what: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("bad {what} entry {tok:?}")))
        })
        .collect()
}

fn resolve_tolerance(flag: Option<f64>) -> Result<f64> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var(TOL_ENV) {
        Ok(text) => text
            .trim()
            .parse::<f64>()
            .map_err(|_| Error::InvalidParameter(format!("bad {TOL_ENV} value {text:?}"))),
        Err(_) => Ok(coboundary::tol::REL_TOL),
    }
}

fn finish_reports(mut reports: Vec<Report>, tolerance: f64) -> (String, bool) {
    for rep in &mut reports {
        rep.pass = rep.rel_err <= tolerance;
    }
    let ok = reports.iter().all(|r| r.pass);
    let mut envelope = BTreeMap::new();
    envelope.insert("reports", &reports);
    (to_canonical_json(&envelope), ok)
}

fn run(cli: Cli) -> Result<(String, bool)> {
    let tolerance = resolve_tolerance(cli.tolerance)?;
    match cli.command {
        Cmd::Stats { graph } => {
            let g = graph.build()?;
            let stats = g.stats();
            let json = to_canonical_json(&serde_json::json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "components": stats.components,
                "rank": stats.rank,
                "nullity": stats.nullity,
            }));
            Ok((json, true))
        }
        Cmd::Tutte { graph } => {
            let g = graph.build()?;
            let poly = tutte_dc(&g);
            let json = to_canonical_json(&serde_json::json!({
                "coeffs": poly.coeff_triples(),
            }));
            Ok((json, true))
        }
        Cmd::Potts { graph, q, w, y } => {
            let g = graph.build()?;
            let kernel = EdgeKernel::constant_diagonal(q, w, y)?;
            let value = potts_partition(&g, &kernel)?;
            let json = to_canonical_json(&serde_json::json!({
                "q": q, "w": c(w), "y": c(y), "value": c(value),
            }));
            Ok((json, true))
        }
        Cmd::Chromatic { graph, q } => {
            let g = graph.build()?;
            let json = to_canonical_json(&serde_json::json!({
                "q": q,
                "value": chromatic(&g, q).to_string(),
            }));
            Ok((json, true))
        }
        Cmd::Tensions { graph, q } => {
            let g = graph.build()?;
            let set = tensions(&g, q)?;
            let json = to_canonical_json(&serde_json::json!({
                "q": q, "count": set.len(), "vectors": vectors_json(&set),
            }));
            Ok((json, true))
        }
        Cmd::Flows { graph, q, q1 } => {
            let g = graph.build()?;
            let set = if q1 { q1_flows(&g, q)? } else { flows(&g, q)? };
            let json = to_canonical_json(&serde_json::json!({
                "q": q, "q1": q1, "count": set.len(), "vectors": vectors_json(&set),
            }));
            Ok((json, true))
        }
        Cmd::Expand { graph, q, g, s, t } => {
            let gr = graph.build()?;
            let kernel = kernel_from_flags(q, &g, s, t)?;
            let coeffs = expand(&gr, &kernel.to_edge_kernel())?;
            let terms: Vec<serde_json::Value> = coeffs
                .terms()
                .map(|(exps, z)| serde_json::json!([exps, c(z)]))
                .collect();
            let json = to_canonical_json(&serde_json::json!({
                "q": q, "s": kernel.s(), "t": kernel.t(), "terms": terms,
            }));
            Ok((json, true))
        }
        Cmd::L2 { graph, q, g, s, t } => {
            let gr = graph.build()?;
            let kernel = kernel_from_flags(q, &g, s, t)?;
            let norm = expand(&gr, &kernel.to_edge_kernel())?.l2_norm_sq();
            let flow_side = l2_flow_rhs(&gr, q, &kernel)?;
            let image_side = l2_image_rhs(&gr, q, &kernel)?;
            let json = to_canonical_json(&serde_json::json!({
                "q": q, "s": kernel.s(), "t": kernel.t(),
                "norm": norm,
                "flow_side": c(flow_side),
                "image_side": c(image_side),
            }));
            Ok((json, true))
        }
        Cmd::Coeff {
            graph,
            q,
            g,
            s,
            t,
            exponent,
        } => {
            let gr = graph.build()?;
            let kernel = kernel_from_flags(q, &g, s, t)?;
            let a = ColourVector::new(q, parse_usize_list(&exponent, "exponent")?)?;
            let value = coset_coeff(&gr, q, &kernel, &a)?;
            let json = to_canonical_json(&serde_json::json!({
                "q": q, "s": kernel.s(), "t": kernel.t(),
                "exponent": a.entries(),
                "value": c(value),
            }));
            Ok((json, true))
        }
        Cmd::Verify { check } => run_verify(check, tolerance),
    }
}

fn run_verify(check: VerifyCmd, tolerance: f64) -> Result<(String, bool)> {
    match check {
        VerifyCmd::AlonTarsi { graph, q } => {
            let g = graph.build()?;
            Ok(finish_reports(vec![check_alon_tarsi(&g, q)?], tolerance))
        }
        VerifyCmd::Tarsi { graph, q } => {
            let g = graph.build()?;
            Ok(finish_reports(vec![check_tarsi(&g, q)?], tolerance))
        }
        VerifyCmd::PropConstant { graph, q, y, w } => {
            let g = graph.build()?;
            Ok(finish_reports(
                vec![check_prop_constant(&g, q, y, w)?],
                tolerance,
            ))
        }
        VerifyCmd::CoeffThm { graph, q, seed } => {
            let g = graph.build()?;
            let kernel = seeded_kernel(q, seed);
            Ok(finish_reports(
                vec![check_coeff_thm(&g, &kernel, Some(seed))?],
                tolerance,
            ))
        }
        VerifyCmd::L2Thm { graph, q, seed } => {
            let g = graph.build()?;
            let kernel = seeded_kernel(q, seed);
            Ok(finish_reports(
                vec![
                    check_l2_thm(&g, &kernel, Some(seed))?,
                    check_l2_image(&g, &kernel, Some(seed))?,
                ],
                tolerance,
            ))
        }
        VerifyCmd::Macwilliams { graph, q, seed } => {
            let g = graph.build()?;
            let weights = seeded_g(q, seed);
            Ok(finish_reports(
                vec![check_macwilliams(&g, q, &weights, Some(seed))?],
                tolerance,
            ))
        }
        VerifyCmd::Penrose { graph } => {
            let g = graph.build()?;
            Ok(finish_reports(vec![check_penrose(&g)?], tolerance))
        }
        VerifyCmd::Corpus {
            q_list,
            max_vertices,
            max_edges,
            seed,
        } => {
            let qs = parse_usize_list(&q_list, "q-list")?;
            let summary = check_corpus(&qs, max_vertices, max_edges, seed)?;
            let ok = summary.failures == 0;
            Ok((to_canonical_json(&summary), ok))
        }
    }
}
