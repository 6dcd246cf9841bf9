//! The `hypergiant` command-line front end.
//!
//! A run is described by a [`RunConfig`]: a command, its parameters, a seed
//! and an output format. Parameters come from flags and/or a JSON config
//! file (`--config`); flags win. Every artifact embeds the resolved config.

mod config;
mod selftest;
mod svg;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use serde_json::{json, Value};

pub use config::{Command, Format, RunConfig};
pub use selftest::{run_all as selftest_checks, Check};

use crate::continuum::ContinuumParams;
use crate::coupling::{edge_agreement, intensity_tv_proxy};
use crate::error::{Error, Result};
use crate::estimators::{bracket_lambda_c, c_of, estimate_theta, lln_experiment, McConfig};
use crate::fmt_sig;
use crate::geometry::KpkvbParams;
use crate::graph::components;
use crate::kpkvb::{build_graph, sample_vertices, sample_vertices_poissonized, VertexSet};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "HYPERGIANT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "hypergiant", version, about = "Hyperbolic random graphs and their continuum limit")]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    replicas: Option<u64>,
    /// Output file (default: standard output).
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// JSON object of parameters; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Height of the planted point (theta).
    #[arg(long)]
    y: Option<f64>,
    /// Event window height.
    #[arg(long)]
    h: Option<f64>,
    /// Event window half-width factor.
    #[arg(long)]
    w: Option<f64>,
    /// Component size threshold of the event U.
    #[arg(long)]
    u_size: Option<f64>,
    /// Quadrature nodes (cvalue).
    #[arg(long)]
    nodes: Option<u64>,
    /// Total error budget (cvalue).
    #[arg(long)]
    budget: Option<f64>,
    /// Bracket width (lambdac).
    #[arg(long)]
    tol: Option<f64>,
    /// Comma-separated, increasing vertex counts (lln).
    #[arg(long)]
    nlist: Option<String>,
    /// Also write the edge list here (generate).
    #[arg(long)]
    edges_out: Option<String>,
    /// Use a Poisson(N) number of vertices.
    #[arg(long)]
    poissonized: bool,
}

impl Cli {
    fn flags(&self) -> BTreeMap<String, Value> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: Option<Value>| {
            if let Some(v) = v {
                m.insert(k.to_string(), v);
            }
        };
        put("alpha", self.alpha.map(Value::from));
        put("nu", self.nu.map(Value::from));
        put("n", self.n.map(Value::from));
        put("lambda", self.lambda.map(Value::from));
        put("seed", self.seed.map(Value::from));
        put("replicas", self.replicas.map(Value::from));
        put("y", self.y.map(Value::from));
        put("h", self.h.map(Value::from));
        put("w", self.w.map(Value::from));
        put("u_size", self.u_size.map(Value::from));
        put("nodes", self.nodes.map(Value::from));
        put("budget", self.budget.map(Value::from));
        put("tol", self.tol.map(Value::from));
        put("nlist", self.nlist.clone().map(Value::from));
        put("edges_out", self.edges_out.clone().map(Value::from));
        put("poissonized", self.poissonized.then_some(Value::Bool(true)));
        m
    }
}

/// Artifact bytes of one run, before anything is written.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub body: Vec<u8>,
    /// Secondary file `(path, bytes)`, e.g. the edge list of `generate`.
    pub side: Option<(String, Vec<u8>)>,
    /// False when a self-test check failed.
    pub ok: bool,
}

/// Parses command-line arguments into a resolved config.
pub fn parse_args<I, T>(args: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Usage(e.to_string()))?;
    RunConfig::resolve(cli.command, cli.config.as_deref(), cli.flags(), cli.out.clone(), cli.format)
}

fn config_line(cfg: &RunConfig) -> String {
    format!("# config: {}\n", cfg.to_json())
}

fn csv(cfg: &RunConfig, header: &str, rows: &[Vec<String>]) -> Vec<u8> {
    let mut s = config_line(cfg);
    s.push_str(header);
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s.into_bytes()
}

fn json_doc(cfg: &RunConfig, result: Value) -> Vec<u8> {
    let doc = json!({ "config": cfg.to_json(), "result": result });
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialise");
    s.push('\n');
    s.into_bytes()
}

fn no_svg(cfg: &RunConfig) -> Result<()> {
    if cfg.format == Format::Svg {
        return Err(Error::Usage(format!("svg output is only available for generate, not {}", cfg.command)));
    }
    Ok(())
}

fn kpkvb_params(cfg: &RunConfig) -> Result<KpkvbParams> {
    KpkvbParams::new(cfg.usize("n")?, cfg.f64("alpha")?, cfg.f64("nu")?)
}

fn vertices(cfg: &RunConfig) -> Result<VertexSet> {
    let params = kpkvb_params(cfg)?;
    Ok(if cfg.bool("poissonized")? {
        sample_vertices_poissonized(params, cfg.seed)
    } else {
        sample_vertices(params, cfg.seed)
    })
}

fn generate(cfg: &RunConfig) -> Result<Output> {
    let edges_out = cfg.str("edges_out")?.to_string();
    let vs = vertices(cfg)?;
    let graph = build_graph(&vs);
    let body = match cfg.format {
        Format::Svg => svg::render(&vs, &graph, &cfg.to_json()).into_bytes(),
        Format::Csv => {
            let mut out = config_line(cfg).into_bytes();
            vs.write_csv(&mut out)?;
            out
        }
        Format::Json => {
            let pts: Vec<Value> = vs.points.iter().map(|p| json!([p.r, p.theta])).collect();
            json_doc(
                cfg,
                json!({
                    "radius": vs.radius(),
                    "vertex_count": vs.len(),
                    "edge_count": graph.edge_count(),
                    "vertices": pts,
                    "edges": graph.edges(),
                }),
            )
        }
    };
    let side = (!edges_out.is_empty()).then(|| {
        let rows: Vec<Vec<String>> = graph.edges().iter().map(|&(a, b)| vec![a.to_string(), b.to_string()]).collect();
        (edges_out, csv(cfg, "source,target", &rows))
    });
    Ok(Output { body, side, ok: true })
}

fn components_cmd(cfg: &RunConfig) -> Result<Output> {
    no_svg(cfg)?;
    let vs = vertices(cfg)?;
    let graph = build_graph(&vs);
    let summary = components(&graph);
    let body = match cfg.format {
        Format::Csv => csv(
            cfg,
            "n,vertex_count,edge_count,mean_degree,c1_frac,c2_frac,c1_size,c2_size,component_count",
            &[vec![
                cfg.usize("n")?.to_string(),
                vs.len().to_string(),
                graph.edge_count().to_string(),
                fmt_sig(graph.mean_degree()),
                fmt_sig(summary.c1_frac),
                fmt_sig(summary.c2_frac),
                summary.largest().to_string(),
                summary.second().to_string(),
                summary.sizes.len().to_string(),
            ]],
        ),
        _ => json_doc(
            cfg,
            json!({
                "vertex_count": vs.len(),
                "edge_count": graph.edge_count(),
                "mean_degree": graph.mean_degree(),
                "c1_frac": summary.c1_frac,
                "c2_frac": summary.c2_frac,
                "c1_size": summary.largest(),
                "c2_size": summary.second(),
                "component_count": summary.sizes.len(),
            }),
        ),
    };
    Ok(Output { body, side: None, ok: true })
}

fn theta(cfg: &RunConfig) -> Result<Output> {
    no_svg(cfg)?;
    let params = ContinuumParams::new(cfg.f64("alpha")?, cfg.f64("lambda")?)?;
    let est = estimate_theta(
        cfg.f64("y")?,
        params,
        cfg.f64("h")?,
        cfg.f64("w")?,
        cfg.f64("u_size")?,
        cfg.usize("replicas")?,
        cfg.seed,
    )?;
    let body = match cfg.format {
        Format::Csv => csv(
            cfg,
            "y,alpha,lambda,lower,upper,lower_ci_lo,lower_ci_hi,upper_ci_lo,upper_ci_hi,replicas,exact",
            &[vec![
                fmt_sig(est.y),
                fmt_sig(params.alpha()),
                fmt_sig(params.lambda()),
                fmt_sig(est.lower),
                fmt_sig(est.upper),
                fmt_sig(est.lower_ci[0]),
                fmt_sig(est.lower_ci[1]),
                fmt_sig(est.upper_ci[0]),
                fmt_sig(est.upper_ci[1]),
                est.replicas.to_string(),
                est.exact.to_string(),
            ]],
        ),
        _ => json_doc(cfg, serde_json::to_value(&est)?),
    };
    Ok(Output { body, side: None, ok: true })
}

fn cvalue(cfg: &RunConfig) -> Result<Output> {
    no_svg(cfg)?;
    let mc = McConfig {
        replicas: cfg.usize("replicas")?,
        h: cfg.f64("h")?,
        w: cfg.f64("w")?,
        n: cfg.f64("u_size")?,
        error_budget: cfg.f64("budget")?,
        envelope: None,
    };
    let est = c_of(cfg.f64("alpha")?, cfg.f64("nu")?, cfg.usize("nodes")?, &mc, cfg.seed)?;
    let body = match cfg.format {
        Format::Csv => csv(
            cfg,
            "alpha,nu,lambda,value,lower_value,upper_value,uncertainty,mc_half_width,tail_mass,tail_cutoff,replicas,exact",
            &[vec![
                fmt_sig(est.alpha),
                fmt_sig(est.nu),
                fmt_sig(est.lambda),
                fmt_sig(est.value),
                fmt_sig(est.lower_value),
                fmt_sig(est.upper_value),
                fmt_sig(est.uncertainty),
                fmt_sig(est.mc_half_width),
                fmt_sig(est.tail_mass),
                fmt_sig(est.tail_cutoff),
                est.replicas.to_string(),
                est.exact.to_string(),
            ]],
        ),
        _ => json_doc(cfg, serde_json::to_value(&est)?),
    };
    Ok(Output { body, side: None, ok: true })
}

fn lambdac(cfg: &RunConfig) -> Result<Output> {
    no_svg(cfg)?;
    let b = bracket_lambda_c(cfg.f64("h")?, cfg.f64("w")?, cfg.usize("replicas")?, cfg.f64("tol")?, cfg.seed)?;
    if let Some(w) = &b.warning {
        eprintln!("warning: {w}");
    }
    let body = match cfg.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = b
                .crossing_probs
                .iter()
                .map(|(l, p, ci)| vec![fmt_sig(*l), fmt_sig(*p), fmt_sig(ci[0]), fmt_sig(ci[1])])
                .collect();
            let mut out = csv(cfg, "lambda,p_hat,ci_lo,ci_hi", &rows);
            let tail = format!(
                "# bracket: lo={} hi={} nu_c={} monotone_violations={}\n",
                fmt_sig(b.lo),
                fmt_sig(b.hi),
                fmt_sig(b.nu_c),
                b.monotone_violations
            );
            out.extend_from_slice(tail.as_bytes());
            out
        }
        _ => json_doc(cfg, serde_json::to_value(&b)?),
    };
    Ok(Output { body, side: None, ok: true })
}

fn lln(cfg: &RunConfig) -> Result<Output> {
    no_svg(cfg)?;
    let table = lln_experiment(
        cfg.f64("alpha")?,
        cfg.f64("nu")?,
        &cfg.usize_list("nlist")?,
        cfg.usize("replicas")?,
        cfg.seed,
    )?;
    let body = match cfg.format {
        Format::Csv => {
            let mut out = config_line(cfg).into_bytes();
            table.write_csv(&mut out)?;
            out
        }
        _ => json_doc(cfg, serde_json::to_value(&table)?),
    };
    Ok(Output { body, side: None, ok: true })
}

fn couple_check(cfg: &RunConfig) -> Result<Output> {
    no_svg(cfg)?;
    let params = kpkvb_params(cfg)?;
    let vs = sample_vertices(params, cfg.seed);
    let rep = edge_agreement(&vs);
    let tv = intensity_tv_proxy(params.alpha(), params.nu(), params.radius());
    let body = match cfg.format {
        Format::Csv => csv(
            cfg,
            "n,total_pairs,agreements,gamma_only,g_only_outer,g_only_inner,gamma_only_rate,intensity_tv",
            &[vec![
                params.n().to_string(),
                rep.total_pairs.to_string(),
                rep.agreements.to_string(),
                rep.gamma_only.to_string(),
                rep.g_only_outer.to_string(),
                rep.g_only_inner.to_string(),
                fmt_sig(rep.gamma_only_rate()),
                fmt_sig(tv),
            ]],
        ),
        _ => json_doc(
            cfg,
            json!({ "agreement": rep, "gamma_only_rate": rep.gamma_only_rate(), "intensity_tv": tv }),
        ),
    };
    Ok(Output { body, side: None, ok: true })
}

fn selftest_cmd(cfg: &RunConfig) -> Result<Output> {
    no_svg(cfg)?;
    let checks = selftest::run_all(cfg.seed)?;
    let ok = checks.iter().all(|c| c.passed);
    let body = match cfg.format {
        Format::Json => {
            let items: Vec<Value> =
                checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect();
            json_doc(cfg, json!({ "passed": ok, "checks": items }))
        }
        _ => {
            let mut s = config_line(cfg);
            for c in &checks {
                s.push_str(&format!("{} {} ({})\n", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail));
            }
            s.into_bytes()
        }
    };
    Ok(Output { body, side: None, ok })
}

/// Computes the artifact of a run without writing it.
pub fn render(cfg: &RunConfig) -> Result<Output> {
    match cfg.command {
        Command::Generate => generate(cfg),
        Command::Components => components_cmd(cfg),
        Command::Theta => theta(cfg),
        Command::Cvalue => cvalue(cfg),
        Command::Lambdac => lambdac(cfg),
        Command::Lln => lln(cfg),
        Command::CoupleCheck => couple_check(cfg),
        Command::Selftest => selftest_cmd(cfg),
    }
}

fn write_all(cfg: &RunConfig, out: &Output) -> Result<()> {
    match &cfg.output_path {
        Some(path) => std::fs::write(path, &out.body)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(&out.body)?;
            stdout.flush()?;
        }
    }
    if let Some((path, bytes)) = &out.side {
        std::fs::write(path, bytes)?;
    }
    Ok(())
}

/// Exit code for an error: 2 for usage errors, 1 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) => 2,
        _ => 1,
    }
}

/// Runs a resolved config, writing its artifact. Returns the exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    match render(cfg).and_then(|out| write_all(cfg, &out).map(|_| out.ok)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Usage(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
    // a pool may already exist when called twice in one process
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Entry point of the binary: parses `args` (including the program name)
/// and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    match Cli::try_parse_from(&args) {
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let _ = e.print();
            return 2;
        }
        Ok(_) => {}
    }
    let prepared = configure_threads().and_then(|_| parse_args(&args));
    match prepared {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
