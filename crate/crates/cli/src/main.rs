use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use endgraph::extract2::{self, Budgets, IntroOutcome};
use endgraph::generators::{self, branching_tree, theorem3};
use endgraph::graph::parse_rational;
use endgraph::nested::{self, EndSchedule, NestedFamily};
use endgraph::regions::{self, OracleKind};
use endgraph::report::ExtractionReport;
use endgraph::verify;
use endgraph::window::Window;
use endgraph::{Budget, Error, FamilyKind, FamilySpec, GraphHandle, Mode, Region, VertexId};

#[derive(Parser)]
#[command(name = "endgraph", version, about = "Regions, ends and finite-subgraph extraction for infinite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GraphArgs {
    /// branching_tree | leveled_tree_cycles | theorem3 | clique_ray
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value_t = 3)]
    k: u32,
    #[arg(long, default_value_t = 8)]
    depth: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// clique_ray: number of rays glued at the first clique.
    #[arg(long, default_value_t = 1)]
    rays: u32,
    /// clique_ray: level of the extra edges between consecutive rays.
    #[arg(long, default_value_t = 0)]
    bridge: u32,
    /// TOML descriptor; replaces the flags above.
    #[arg(long)]
    descriptor: Option<PathBuf>,
}

impl GraphArgs {
    fn spec(&self) -> Result<FamilySpec, Error> {
        if let Some(path) = &self.descriptor {
            return FamilySpec::from_toml(&fs::read_to_string(path)?);
        }
        let name = self
            .family
            .as_deref()
            .ok_or_else(|| Error::Descriptor("--family or --descriptor is required".into()))?;
        let spec = FamilySpec::new(name.parse::<FamilyKind>()?, self.k)
            .with_depth(self.depth)
            .with_seed(self.seed)
            .with_rays(self.rays)
            .with_bridge(self.bridge);
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Args, Clone)]
struct BudgetArgs {
    #[arg(long, default_value_t = 5_000_000)]
    budget_oracle: u64,
    #[arg(long, default_value_t = 50)]
    budget_iter: usize,
}

#[derive(Args, Clone)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: &str) -> Result<(), Error> {
        match &self.out {
            Some(p) => fs::write(p, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }

    fn json<T: Serialize>(&self, value: &T) -> Result<(), Error> {
        let mut s = serde_json::to_string_pretty(value)?;
        s.push('\n');
        self.emit(&s)
    }
}

#[derive(Args, Clone)]
struct WindowArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Ball `center,radius`; `root` names the family root.
    #[arg(long)]
    ball: Option<String>,
    /// Read the window from a DOT file instead.
    #[arg(long)]
    dot: Option<PathBuf>,
}

impl WindowArgs {
    fn load(&self) -> Result<(Option<GraphHandle>, Window), Error> {
        if let Some(path) = &self.dot {
            let w = Window::from_dot(&fs::read_to_string(path)?)?;
            let g = self.graph.spec().ok().map(|s| generators::make_graph(&s)).transpose()?;
            return Ok((g, w));
        }
        let spec = self.graph.spec()?;
        let g = generators::make_graph(&spec)?;
        let (center, radius) = match &self.ball {
            Some(b) => parse_ball(&g, b)?,
            None => (g.root(), spec.depth as usize),
        };
        let w = g.ball(&center, radius)?;
        Ok((Some(g), w))
    }
}

fn parse_ball(g: &GraphHandle, s: &str) -> Result<(VertexId, usize), Error> {
    let (c, r) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("ball {s:?} is not center,radius")))?;
    let center = if c == "root" { g.root() } else { VertexId::new(c) };
    g.neighbors(&center)?;
    let radius = r.parse().map_err(|_| Error::Parse(format!("bad radius {r:?}")))?;
    Ok((center, radius))
}

#[derive(Subcommand)]
enum Command {
    /// Print the family descriptor, or a ball of the graph as JSON.
    Gen {
        #[command(flatten)]
        window: WindowArgs,
        /// Print the descriptor instead of a window.
        #[arg(long)]
        descriptor_only: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Root, a vertex's neighborhood, and the first ends.
    Inspect {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        v: Option<String>,
        #[arg(long, default_value_t = 5)]
        prefix: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Out-degree statistics of one region.
    Degrees {
        #[command(flatten)]
        graph: GraphArgs,
        /// `s=<addr>` (theorem3 C_s), `t=<addr>` (branching_tree parent
        /// pair region) or `cone=<addr>`.
        #[arg(long)]
        region: Option<String>,
        /// Comma-separated separator, with --seed-vertex.
        #[arg(long)]
        separator: Option<String>,
        #[arg(long)]
        seed_vertex: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Grow a separator until every component is good; print the report.
    Extract2 {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long, default_value_t = 64)]
        scan: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Cover the ends by disjoint regions of the nested family.
    Extract4 {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        mode: ModeArgs,
        /// Base vertex (default: root).
        #[arg(long)]
        v: Option<String>,
        /// Family regions considered.
        #[arg(long, default_value_t = 256)]
        prefix: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: Output,
    },
    /// A nested family prefix.
    Nest {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 20)]
        prefix: usize,
        #[arg(long, value_enum, default_value_t = NestSource::Sequences)]
        source: NestSource,
        #[arg(long, default_value_t = 64)]
        scan: usize,
        /// Check every pair before printing.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Look for a separator with only good components, or a chain of bad ones.
    Intro {
        #[command(flatten)]
        graph: GraphArgs,
        /// Threshold (default: --k).
        #[arg(long)]
        threshold: Option<u32>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Independent checks.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// A window as DOT.
    Dot {
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NestSource {
    /// The generator's own nested family.
    Generator,
    /// Built from the ends' defining sequences.
    Sequences,
}

#[derive(Args, Clone)]
struct ModeArgs {
    /// Average-degree mode: extract a subgraph of average degree > q.
    #[arg(long)]
    q: Option<String>,
    /// Comma-separated initial set for the average-degree mode.
    #[arg(long)]
    s0: Option<String>,
}

impl ModeArgs {
    fn mode(&self, g: &GraphHandle, k: u32) -> Result<Mode, Error> {
        match &self.q {
            None => Ok(Mode::MinDegree { k }),
            Some(q) => {
                let s0 = match &self.s0 {
                    Some(s) => split_vertices(s),
                    None => vec![g.root()],
                };
                Ok(Mode::AvgDegree {
                    q: parse_rational(q)?,
                    s0,
                })
            }
        }
    }
}

fn split_vertices(s: &str) -> Vec<VertexId> {
    s.split(',').filter(|x| !x.is_empty()).map(VertexId::new).collect()
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Prints "empty" or the core's size and vertices.
    Kcore {
        #[command(flatten)]
        window: WindowArgs,
        /// Core order (default: --k).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Exact densest sub-window.
    Densest {
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Exhaustive search for a sub-window of minimum degree >= order.
    Brute {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Highest-vertex check on a window of a family with heights.
    Highest {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Re-check an extraction report against the graph.
    Certificate {
        #[arg(long)]
        report: PathBuf,
    },
}

fn region_arg(g: &GraphHandle, spec: &FamilySpec, s: &str) -> Result<Region, Error> {
    let (kind, addr) = s
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("region {s:?} is not kind=address")))?;
    let v = VertexId::new(addr);
    g.neighbors(&v)?;
    match (kind, spec.family) {
        ("s", FamilyKind::Theorem3) => theorem3::c_s(spec.k, &v),
        ("t", FamilyKind::BranchingTree) => Ok(branching_tree::parent_pair_region(spec.k, &v)),
        ("cone", FamilyKind::BranchingTree) => Ok(branching_tree::cone_region(&v)),
        ("cone", FamilyKind::Theorem3) => theorem3::cone_region(g, &v),
        _ => Err(Error::Parse(format!("region kind {kind:?} does not apply to {}", spec.family))),
    }
}

#[derive(Serialize)]
struct DegreesOut {
    region: Region,
    #[serde(flatten)]
    stats: regions::OutStats,
    complement_components: Option<usize>,
}

#[derive(Serialize)]
struct InspectOut {
    family: FamilySpec,
    root: VertexId,
    vertex: VertexId,
    degree: usize,
    height: Option<usize>,
    neighbors: Vec<VertexId>,
    ends: Vec<String>,
}

fn run(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Gen {
            window,
            descriptor_only,
            out,
        } => {
            if descriptor_only {
                return out.emit(&window.graph.spec()?.to_toml());
            }
            let (_, w) = window.load()?;
            out.json(&w.to_data())
        }
        Command::Inspect { graph, v, prefix, out } => {
            let spec = graph.spec()?;
            let oracle = generators::canonical_end_oracle(&spec)?;
            let g = oracle.graph();
            let vertex = v.map(VertexId::new).unwrap_or_else(|| g.root());
            let neighbors = g.neighbors(&vertex)?.to_vec();
            out.json(&InspectOut {
                family: spec,
                root: g.root(),
                degree: neighbors.len(),
                height: g.height(&vertex),
                vertex,
                neighbors,
                ends: oracle.ends().take(prefix).map(|e| e.to_string()).collect(),
            })
        }
        Command::Degrees {
            graph,
            region,
            separator,
            seed_vertex,
            budget,
            out,
        } => {
            let spec = graph.spec()?;
            let g = generators::make_graph(&spec)?;
            let r = match (region, separator, seed_vertex) {
                (Some(s), None, None) => region_arg(&g, &spec, &s)?,
                (None, Some(sep), Some(seed)) => Region::new(split_vertices(&sep), VertexId::new(seed), OracleKind::Exact)?,
                _ => return Err(Error::Parse("give --region, or --separator with --seed-vertex".into())),
            };
            let b = Budget::new(budget.budget_oracle);
            let stats = regions::out_stats(&g, &r, &b)?;
            let complement_components = regions::complement_component_count(&g, &r, &b)?;
            out.json(&DegreesOut {
                region: r,
                stats,
                complement_components,
            })
        }
        Command::Extract2 {
            graph,
            mode,
            scan,
            budget,
            out,
        } => {
            let spec = graph.spec()?;
            let oracle = generators::canonical_end_oracle(&spec)?;
            let mode = mode.mode(oracle.graph(), spec.k)?;
            let budgets = Budgets {
                oracle: budget.budget_oracle,
                iterations: budget.budget_iter,
                scan,
            };
            match extract2::extract(oracle.as_ref(), &mode, &budgets) {
                Ok(report) => out.json(&report),
                Err(Error::IterationBudget(partial)) => {
                    out.json(&partial)?;
                    Err(Error::IterationBudget(partial))
                }
                Err(e) => Err(e),
            }
        }
        Command::Extract4 {
            graph,
            mode,
            v,
            prefix,
            budget,
            out,
        } => {
            let spec = graph.spec()?;
            let oracle = generators::canonical_end_oracle(&spec)?;
            let g = oracle.graph();
            let mode = mode.mode(g, spec.k)?;
            let v = v.map(VertexId::new).unwrap_or_else(|| g.root());
            g.neighbors(&v)?;
            let family = NestedFamily::generator(&spec, prefix)?;
            let b = Budget::new(budget.budget_oracle);
            let report = nested::extract4(oracle.as_ref(), &family, &v, &mode, budget.budget_iter, &b)?;
            out.json(&report)
        }
        Command::Nest {
            graph,
            prefix,
            source,
            scan,
            check,
            budget,
            out,
        } => {
            let spec = graph.spec()?;
            let oracle = generators::canonical_end_oracle(&spec)?;
            let b = Budget::new(budget.budget_oracle);
            let family = match source {
                NestSource::Generator => NestedFamily::generator(&spec, prefix)?,
                NestSource::Sequences => {
                    let schedule = if oracle.finite_ends().is_some() {
                        EndSchedule::RoundRobin
                    } else {
                        EndSchedule::Triangular
                    };
                    nested::corollary5_nest(oracle.as_ref(), schedule, prefix, scan, &b)?
                }
            };
            if check {
                if let Some((i, j, rel)) = nested::first_unnested_pair(oracle.graph(), &family.regions, &b)? {
                    return Err(Error::NotNested(format!("regions {i} and {j}: {rel:?}")));
                }
            }
            out.json(&family)
        }
        Command::Intro {
            graph,
            threshold,
            budget,
            out,
        } => {
            let spec = graph.spec()?;
            let g = generators::make_graph(&spec)?;
            let b = Budget::new(budget.budget_oracle);
            let outcome: IntroOutcome = extract2::intro_search(&g, threshold.unwrap_or(spec.k), budget.budget_iter, &b)?;
            out.json(&outcome)
        }
        Command::Verify { what } => verify_cmd(what),
        Command::Dot { window, out } => {
            let (g, w) = window.load()?;
            let name = g.map_or_else(|| "window".to_string(), |g| g.name().to_string());
            out.emit(&w.to_dot(&name))
        }
    }
}

fn verify_cmd(what: VerifyCommand) -> Result<(), Error> {
    match what {
        VerifyCommand::Kcore { window, order } => {
            let (_, w) = window.load()?;
            let core = verify::k_core(&w, order.unwrap_or(window.graph.k as usize));
            if core.is_empty() {
                println!("empty");
            } else {
                println!("{} vertices", core.len());
                for v in core.vertices() {
                    println!("{v}");
                }
            }
            Ok(())
        }
        VerifyCommand::Densest { window } => {
            let (_, w) = window.load()?;
            let d = verify::densest_subgraph(&w)?;
            println!("average degree {} on {} vertices", d.avg_degree, d.window.len());
            Ok(())
        }
        VerifyCommand::Brute { window, order } => {
            let (_, w) = window.load()?;
            let found = verify::brute_min_degree(&w, order.unwrap_or(window.graph.k as usize))?;
            println!("{}", if found { "exists" } else { "none" });
            Ok(())
        }
        VerifyCommand::Highest { window, samples } => {
            let (g, w) = window.load()?;
            let g = g.ok_or_else(|| Error::Descriptor("highest needs a family".into()))?;
            let seed = window.graph.seed;
            let c = verify::highest_vertex_check(&g, &w, samples, seed)?;
            println!(
                "{} on {} vertex sets, {} failures",
                if c.ok() { "holds" } else { "fails" },
                c.checked,
                c.failures.len()
            );
            if c.ok() {
                Ok(())
            } else {
                Err(Error::Domain("highest-vertex property fails".into()))
            }
        }
        VerifyCommand::Certificate { report } => {
            let report: ExtractionReport = serde_json::from_str(&fs::read_to_string(report)?)?;
            let spec = report
                .family
                .clone()
                .ok_or_else(|| Error::Descriptor("report names no built-in family".into()))?;
            let g = generators::make_graph(&spec)?;
            let c = verify::check_certificate(&g, &report, &Budget::unlimited())?;
            if c.ok {
                println!("valid");
                Ok(())
            } else {
                for p in &c.problems {
                    println!("{p}");
                }
                Err(Error::Domain("certificate rejected".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(4),
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let code = if e.is_premise_failure() {
                3
            } else if e.is_budget() {
                2
            } else if matches!(e, Error::Parse(_) | Error::Descriptor(_) | Error::Address { .. }) {
                4
            } else {
                1
            };
            ExitCode::from(code)
        }
    }
}
