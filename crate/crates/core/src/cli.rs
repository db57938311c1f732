use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use uppertail::exponents::{m_density, ExponentContext};
use uppertail::families::{self, GlueSpec};
use uppertail::graph::graph_from_edge_list;
use uppertail::primal::primal_family;
use uppertail::rational::to_f64;
use uppertail::report::{self, EvalPoint, GraphSummary, SweepPlans, SCHEMA_VERSION};
use uppertail::tail::{self, GeneralConstants, PlanDetail};
use uppertail::{Error, Graph, Result, VertexSet};

#[derive(Parser, Debug)]
#[command(name = "uppertail", version, about = "Upper-tail exponents, primal lattices and planted constructions for subgraph counts in G(n,p)")]
pub struct Cli {
    /// Print progress and timings to standard error.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural report (densities, primal family, ζ, verdict) and optional exponents.
    Analyze(AnalyzeArgs),
    /// Print a generated graph as an edge list.
    Generate(GenerateArgs),
    /// Exponent terms over a log-spaced grid, as CSV.
    Sweep(SweepArgs),
    /// Monte Carlo estimate of the upper-tail probability.
    Simulate(SimulateArgs),
    /// Plan and run a planted construction.
    Plant(PlantArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Edge,
    Triangle,
    Complete,
    Cycle,
    CyclePendant,
    Snail,
    Badnews,
    Fig2,
    Glue,
}

#[derive(Args, Debug, Clone)]
struct GraphSource {
    /// Edge-list file (one "u v" pair per line, 1-based labels, '#' comments).
    file: Option<PathBuf>,
    /// Named family instead of a file.
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Cycle length.
    #[arg(long)]
    l: Option<usize>,
    /// Number of pendant edges, or the index of H_r.
    #[arg(long)]
    r: Option<usize>,
    /// Order of a complete graph.
    #[arg(long)]
    k: Option<usize>,
    /// Edge-list file of J (glue).
    #[arg(long)]
    j: Option<PathBuf>,
    /// Vertex labels of G inside J (glue), e.g. "12345" or "1,2,10".
    #[arg(long)]
    g: Option<String>,
    /// Number of glued copies.
    #[arg(long)]
    copies: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct ProbabilitySpec {
    /// Number of vertices; accepts forms like 1e9.
    #[arg(long)]
    n: Option<String>,
    /// Edge probability.
    #[arg(long, conflicts_with_all = ["np", "omega"])]
    p: Option<String>,
    /// n·p; accepts products of numbers and "(log n)^x".
    #[arg(long, conflicts_with = "omega")]
    np: Option<String>,
    /// n·p^m; accepts the same forms as --np.
    #[arg(long)]
    omega: Option<String>,
    #[arg(long, default_value = "1")]
    eps: f64,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    at: ProbabilitySpec,
    /// Exit with status 3 unless the graph is a counterexample.
    #[arg(long)]
    assert_counterexample: bool,
    /// Include the structural claim checks.
    #[arg(long)]
    claims: bool,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Print a JSON summary instead of the edge list.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long)]
    n: String,
    /// start:stop:points over n·p, log-spaced.
    #[arg(long, conflicts_with = "omega_grid")]
    np_grid: Option<String>,
    /// start:stop:points over n·p^m, log-spaced.
    #[arg(long)]
    omega_grid: Option<String>,
    #[arg(long, default_value = "1")]
    eps: f64,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    at: ProbabilitySpec,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include one record per trial.
    #[arg(long)]
    records: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PlantKind {
    Pendant,
    General,
    Mixed,
}

#[derive(Args, Debug)]
struct PlantArgs {
    #[arg(long, value_enum)]
    kind: PlantKind,
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    at: ProbabilitySpec,
    /// Primal G of the witness (general); defaults to the ζ witness.
    #[arg(long, requires = "covers")]
    witness_g: Option<String>,
    /// Covers of G, e.g. "12345,12346"; separate with ';' when labels contain commas.
    #[arg(long, requires = "witness_g")]
    covers: Option<String>,
    #[arg(long, default_value_t = 4.0)]
    c_big: f64,
    #[arg(long, default_value_t = 0.25)]
    c_small: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of consecutive seeds to execute.
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    /// Print the plan without executing it.
    #[arg(long)]
    dry_run: bool,
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidInput(format!("--family {family} needs --{flag}")))
}

impl GraphSource {
    fn load(&self) -> Result<Graph> {
        match (&self.file, self.family) {
            (Some(_), Some(_)) => Err(Error::InvalidInput("give either an edge-list file or --family, not both".into())),
            (None, None) => Err(Error::InvalidInput("no graph given: pass an edge-list file or --family".into())),
            (Some(path), None) => graph_from_edge_list(&read(path)?),
            (None, Some(f)) => match f {
                Family::Edge => Ok(families::edge()),
                Family::Triangle => Ok(families::triangle()),
                Family::Complete => families::complete(need(self.k, "k", "complete")?),
                Family::Cycle => families::cycle(need(self.l, "l", "cycle")?),
                Family::CyclePendant => {
                    families::cycle_pendant(need(self.l, "l", "cycle-pendant")?, need(self.r, "r", "cycle-pendant")?)
                }
                Family::Snail => Ok(families::snail()),
                Family::Badnews => families::badnews(need(self.r, "r", "badnews")?),
                Family::Fig2 => Ok(families::fig2_example()),
                Family::Glue => {
                    let j = graph_from_edge_list(&read(&need(self.j.clone(), "j", "glue")?)?)?;
                    let g = VertexSet::parse_labels(&need(self.g.clone(), "g", "glue")?)?;
                    let spec = GlueSpec::new(j, g, need(self.copies, "copies", "glue")?)?;
                    families::glue(&spec)
                }
            },
        }
    }

    /// Planted-construction families recognised for sweep columns.
    fn sweep_plans(&self) -> SweepPlans {
        match self.family {
            Some(Family::CyclePendant) => SweepPlans { pendant: self.l.zip(self.r), mixed: None },
            Some(Family::Badnews) => SweepPlans { pendant: None, mixed: self.r.filter(|&r| r >= 7) },
            _ => SweepPlans::default(),
        }
    }
}

/// Positive integer written as an integer or in floating notation such as 1e9.
fn parse_count(text: &str) -> Result<u64> {
    let t = text.trim();
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    match t.parse::<f64>() {
        Ok(x) if x >= 1.0 && x.fract() == 0.0 && x < 1.8e19 => Ok(x as u64),
        _ => Err(Error::InvalidInput(format!("expected a positive integer, got {text:?}"))),
    }
}

/// A product of factors, each a number or a power of log n: "(log n)^2", "3*log(n)^0.4", "ln(n)".
fn parse_scaled(text: &str, n: u64) -> Result<f64> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    let bad = || Error::InvalidInput(format!("cannot read {text:?}: use a number, (log n)^x, or a product with *"));
    let mut value = 1.0;
    for factor in compact.split('*') {
        if let Ok(x) = factor.parse::<f64>() {
            value *= x;
            continue;
        }
        let rest = ["(logn)", "log(n)", "(lnn)", "ln(n)", "logn", "lnn"]
            .iter()
            .find_map(|head| factor.strip_prefix(head))
            .ok_or_else(bad)?;
        let power = match rest {
            "" => 1.0,
            _ => rest.strip_prefix('^').and_then(|e| e.trim_matches(|c| c == '(' || c == ')').parse().ok()).ok_or_else(bad)?,
        };
        value *= (n as f64).ln().powf(power);
    }
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

impl ProbabilitySpec {
    fn point(&self, h: &Graph) -> Result<Option<EvalPoint>> {
        let Some(n_text) = &self.n else {
            if self.p.is_some() || self.np.is_some() || self.omega.is_some() {
                return Err(Error::InvalidInput("--p, --np and --omega need --n".into()));
            }
            return Ok(None);
        };
        let n = parse_count(n_text)?;
        let nf = n as f64;
        let p = match (&self.p, &self.np, &self.omega) {
            (Some(p), None, None) => parse_scaled(p, n)?,
            (None, Some(np), None) => parse_scaled(np, n)? / nf,
            (None, None, Some(w)) => omega_to_p(parse_scaled(w, n)?, n, h)?,
            _ => return Err(Error::InvalidInput("--n needs exactly one of --p, --np, --omega".into())),
        };
        Ok(Some(EvalPoint { n, p, eps: self.eps }))
    }

    fn require(&self, h: &Graph) -> Result<EvalPoint> {
        self.point(h)?.ok_or_else(|| Error::InvalidInput("this command needs --n and one of --p, --np, --omega".into()))
    }
}

fn omega_to_p(omega: f64, n: u64, h: &Graph) -> Result<f64> {
    if h.edge_count() == 0 {
        return Err(Error::InvalidInput("--omega needs a graph with edges".into()));
    }
    let m = to_f64(&m_density(h).density.value());
    Ok((omega / n as f64).powf(1.0 / m))
}

fn parse_grid(text: &str, n: u64) -> Result<(f64, f64, usize)> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidInput(format!("grid {text:?} is not start:stop:points")));
    }
    let points = parts[2]
        .trim()
        .parse::<usize>()
        .map_err(|_| Error::InvalidInput(format!("grid point count {:?} is not an integer", parts[2])))?;
    Ok((parse_scaled(parts[0], n)?, parse_scaled(parts[1], n)?, points))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(format!("json: {e}")))?;
    emit(&format!("{text}\n"))
}

/// Writes to stdout; a closed pipe on the reading side is not an error.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Internal(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

struct Timer {
    on: bool,
    start: Instant,
}

impl Timer {
    fn note(&self, what: &str) {
        if self.on {
            eprintln!("[{:>8.3}s] {what}", self.start.elapsed().as_secs_f64());
        }
    }
}

/// Runs the parsed command; the returned value is the process exit status.
pub fn run(cli: Cli) -> Result<i32> {
    let timer = Timer { on: cli.verbose, start: Instant::now() };
    match cli.command {
        Command::Analyze(a) => {
            let h = a.source.load()?;
            timer.note("graph loaded");
            let points: Vec<EvalPoint> = a.at.point(&h)?.into_iter().collect();
            let rep = report::analyze(&h, &points, a.claims || cli.verbose)?;
            timer.note("analysis done");
            print_json(&rep)?;
            if a.assert_counterexample && !rep.verdict.as_ref().is_some_and(|v| v.is_counterexample) {
                eprintln!("assertion failed: the graph is not a counterexample");
                return Ok(3);
            }
        }
        Command::Generate(a) => {
            let h = a.source.load()?;
            if a.json {
                print_json(&json!({ "schema": SCHEMA_VERSION, "graph": GraphSummary::of(&h) }))?;
            } else {
                emit(&h.to_edge_list())?;
            }
        }
        Command::Sweep(a) => {
            let h = a.source.load()?;
            let n = parse_count(&a.n)?;
            let nps = match (&a.np_grid, &a.omega_grid) {
                (Some(g), None) => {
                    let (s, t, k) = parse_grid(g, n)?;
                    report::log_grid(s, t, k)?
                }
                (None, Some(g)) => {
                    let (s, t, k) = parse_grid(g, n)?;
                    report::log_grid(s, t, k)?
                        .into_iter()
                        .map(|w| omega_to_p(w, n, &h).map(|p| p * n as f64))
                        .collect::<Result<Vec<_>>>()?
                }
                _ => return Err(Error::InvalidInput("sweep needs --np-grid or --omega-grid".into())),
            };
            let ctx = ExponentContext::new(&h)?;
            timer.note("exponent context built");
            let rows = report::sweep(&ctx, n, &nps, a.eps, a.source.sweep_plans())?;
            timer.note("grid evaluated");
            let csv = report::sweep_csv(&rows)?;
            match &a.out {
                Some(path) => std::fs::write(path, csv).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?,
                None => emit(&csv)?,
            }
        }
        Command::Simulate(a) => {
            let h = a.source.load()?;
            let pt = a.at.require(&h)?;
            let est = tail::tail_estimate(&h, pt.n, pt.p, pt.eps, a.trials, a.seed, a.records)?;
            timer.note("trials done");
            print_json(&json!({ "schema": SCHEMA_VERSION, "graph": GraphSummary::of(&h), "estimate": est }))?;
        }
        Command::Plant(a) => return plant(a, &timer),
    }
    Ok(0)
}

fn plant(a: PlantArgs, timer: &Timer) -> Result<i32> {
    let plan = match a.kind {
        PlantKind::Pendant => {
            let l = need(a.source.l, "l", "cycle-pendant")?;
            let r = need(a.source.r, "r", "cycle-pendant")?;
            let h = families::cycle_pendant(l, r)?;
            let pt = a.at.require(&h)?;
            tail::plan_pendant(l, r, pt.n, pt.p, pt.eps)?
        }
        PlantKind::Mixed => {
            if !a.dry_run {
                return Err(Error::InvalidInput("mixed plans are analytic only; pass --dry-run".into()));
            }
            let r = need(a.source.r, "r", "badnews")?;
            let h = families::badnews(r)?;
            let pt = a.at.require(&h)?;
            tail::plan_mixed(r, pt.n, pt.p, pt.eps)?
        }
        PlantKind::General => {
            let h = a.source.load()?;
            let pt = a.at.require(&h)?;
            let (g, covers) = match (&a.witness_g, &a.covers) {
                (Some(g), Some(c)) => (
                    VertexSet::parse_labels(g)?,
                    c.split(if c.contains(';') { ';' } else { ',' }).map(VertexSet::parse_labels).collect::<Result<Vec<_>>>()?,
                ),
                _ => {
                    let z = primal_family(&h)?
                        .zeta()
                        .ok_or_else(|| Error::InvalidInput("the graph has no cover configuration".into()))?;
                    (z.witness_g, z.witness_covers)
                }
            };
            let constants = GeneralConstants { c_big: a.c_big, c_small: a.c_small };
            tail::plan_general(&h, g, &covers, pt.n, pt.p, pt.eps, constants)?
        }
    };
    timer.note("plan ready");
    if a.dry_run {
        print_json(&json!({ "schema": SCHEMA_VERSION, "plan": plan }))?;
        return Ok(0);
    }
    let seeds: Vec<u64> = (0..a.seeds).map(|i| a.seed.wrapping_add(i)).collect();
    let (outcomes, planted, hits) = match &plan.detail {
        PlanDetail::Pendant(_) => {
            let outs = seeds.iter().map(|&s| tail::execute_pendant(&plan, s)).collect::<Result<Vec<_>>>()?;
            let planted = outs.iter().filter(|o| o.planted).count();
            let hits = outs.iter().filter(|o| o.hit).count();
            (serde_json::to_value(outs), planted, hits)
        }
        PlanDetail::General(_) => {
            let outs = seeds.iter().map(|&s| tail::execute_general(&plan, s)).collect::<Result<Vec<_>>>()?;
            let planted = outs.iter().filter(|o| o.planted).count();
            let hits = outs.iter().filter(|o| o.hit).count();
            (serde_json::to_value(outs), planted, hits)
        }
        PlanDetail::Mixed(_) => unreachable!("mixed plans stop at the dry run"),
    };
    timer.note("execution done");
    let outcomes = outcomes.map_err(|e| Error::Internal(format!("json: {e}")))?;
    print_json(&json!({
        "schema": SCHEMA_VERSION,
        "plan": plan,
        "outcomes": outcomes,
        "summary": { "runs": seeds.len(), "planted": planted, "hits": hits },
    }))?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e9").unwrap(), 1_000_000_000);
        assert_eq!(parse_count("300").unwrap(), 300);
        assert!(parse_count("2.5").is_err());
    }

    #[test]
    fn scaled_values() {
        let n = 1_000_000_000u64;
        let ln = (n as f64).ln();
        assert!((parse_scaled("(log n)^2", n).unwrap() - ln * ln).abs() < 1e-9);
        assert!((parse_scaled("3 * log(n)^0.5", n).unwrap() - 3.0 * ln.sqrt()).abs() < 1e-9);
        assert_eq!(parse_scaled("8", n).unwrap(), 8.0);
        assert!(parse_scaled("log m", n).is_err());
    }
}
