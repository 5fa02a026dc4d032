//! The `rvd` command line. [`run`] parses arguments, dispatches to
//! `rvd-core` and returns the report text with an exit code.
//!
//! Exit codes: 0 success, 1 a verification or check failed, 2 input error,
//! 3 desk-scale cap exceeded.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use rvd_core::acceptance::{run_all, AcceptanceConfig};
use rvd_core::blocks::block_decomposition;
use rvd_core::colorer::{color_k4mf_with, ColorerConfig};
use rvd_core::exact::{bounds, rvd_exact_with, ExactConfig, DEFAULT_CAP};
use rvd_core::gadgets::{build_gadget, chain_check, roundtrip_check, Family};
use rvd_core::recognize::{find_structure, is_k4_minor_free, StructureLocator};
use rvd_core::verify::{verify_coloring_with, VerifyOptions};
use rvd_core::{Error, Graph, VertexColoring};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub report: String,
}

#[derive(Parser)]
#[command(name = "rvd", version, about = "Rainbow vertex-disconnection colorings: verify, solve, construct")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Common {
    /// Largest block (exact) or gadget handled exhaustively.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Worker threads; 1 keeps runs sequential.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Bipartite,
    Split,
}

impl From<Kind> for Family {
    fn from(k: Kind) -> Family {
        match k {
            Kind::Bipartite => Family::Bipartite,
            Kind::Split => Family::Split,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide K4-minor-freeness and show the block structure.
    Recognize { graph: PathBuf },
    /// Lower and upper bounds on rvd.
    Bounds { graph: PathBuf },
    /// Exact rvd with a witness coloring.
    Exact {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Solve the whole graph instead of block by block.
        #[arg(long)]
        no_blocks: bool,
        /// Also print the witness as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Check a coloring file against a graph.
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Print a rainbow cut for every pair.
        #[arg(long)]
        witnesses: bool,
    },
    /// Color a K4-minor-free graph with at most Δ colors.
    #[command(name = "color-k4mf")]
    ColorK4mf {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Print the construction trace.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Build a reduction gadget.
    Gadget {
        graph: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Use k copies of the source vertices.
        #[arg(long, value_name = "K")]
        replicate: Option<usize>,
        /// Write the edge list here and the role map to `<out>.roles`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare χ(G) ≤ k with the gadget threshold.
    Roundtrip {
        graph: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(short, long)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the bound chain on a replicated gadget.
    Chain {
        graph: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(short, long)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run the acceptance checks.
    Selftest {
        #[arg(long, default_value_t = AcceptanceConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return CommandOutcome { exit_code: code, report: e.render().to_string() };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => CommandOutcome { exit_code: exit_code(&e), report: format!("error: {e}\nstatus=error\n") },
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded(_) => EXIT_CAP,
        Error::NotRainbowDisconnected(..) => EXIT_FAILED,
        _ => EXIT_INPUT,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", path.display()) })
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    Graph::parse_edge_list(&read(path)?)
}

fn ok(report: String) -> Result<CommandOutcome, Error> {
    Ok(CommandOutcome { exit_code: EXIT_OK, report })
}

fn dispatch(cmd: Command) -> Result<CommandOutcome, Error> {
    match cmd {
        Command::Recognize { graph } => recognize(&load_graph(&graph)?),
        Command::Bounds { graph } => {
            let g = load_graph(&graph)?;
            let b = bounds(&g)?;
            let mut r = String::new();
            let _ = writeln!(r, "min_degree={}", b.min_degree);
            let _ = writeln!(r, "conflict_chromatic={}", b.conflict_chromatic);
            let _ = writeln!(r, "injective_chromatic={}", b.injective_chromatic);
            if let Some(h) = b.block_max_hint {
                let _ = writeln!(r, "block_lower={h}");
            }
            let _ = writeln!(r, "lower={}\nupper={}", b.lower, b.upper);
            ok(r)
        }
        Command::Exact { graph, common, no_blocks, dot } => {
            let g = load_graph(&graph)?;
            let cfg = ExactConfig { cap: common.cap, use_blocks: !no_blocks, jobs: common.jobs };
            let res = rvd_exact_with(&g, &cfg)?;
            let mut r = String::from("# witness\n");
            r.push_str(&res.witness.to_text());
            if dot {
                r.push_str("# dot\n");
                r.push_str(&g.to_dot(Some(&res.witness)));
            }
            let _ = writeln!(r, "certificate={:?}", res.certificate);
            let _ = writeln!(r, "blocks={}\nnodes={}", res.stats.blocks, res.stats.nodes);
            let _ = writeln!(r, "rvd={}", res.value);
            ok(r)
        }
        Command::Verify { graph, coloring, common, witnesses } => {
            let g = load_graph(&graph)?;
            let c = VertexColoring::parse(&read(&coloring)?, g.n())?;
            let rep = verify_coloring_with(&g, &c, VerifyOptions { jobs: common.jobs })?;
            let mut r = String::new();
            if let Some((x, y)) = rep.failing_pair {
                let _ = writeln!(r, "no rainbow vertex-cut separates {} and {}", x + 1, y + 1);
                let _ = writeln!(r, "failing_pair={} {}", x + 1, y + 1);
            }
            if witnesses {
                for ((x, y), w) in &rep.witnesses {
                    let cut: Vec<String> = w.cut.iter().map(|v| (v + 1).to_string()).collect();
                    let _ = writeln!(r, "{} {}: {{{}}} {:?}", x + 1, y + 1, cut.join(" "), w.rainbow_side);
                }
            }
            let _ = writeln!(r, "palette={}", c.palette_size());
            let _ = writeln!(r, "verdict={}", if rep.verdict { "accepted" } else { "rejected" });
            Ok(CommandOutcome { exit_code: if rep.verdict { EXIT_OK } else { EXIT_FAILED }, report: r })
        }
        Command::ColorK4mf { graph, common, trace, dot } => {
            let g = load_graph(&graph)?;
            let (c, t) = color_k4mf_with(&g, &ColorerConfig { fallback_cap: common.cap })?;
            let mut r = String::from("# coloring\n");
            r.push_str(&c.to_text());
            if trace {
                r.push_str("# trace\n");
                r.push_str(&t.to_string());
            }
            if dot {
                r.push_str("# dot\n");
                r.push_str(&g.to_dot(Some(&c)));
            }
            let _ = writeln!(r, "fallbacks={}", t.fallbacks());
            let _ = writeln!(r, "delta={}\npalette={}", g.max_degree(), c.palette_size());
            ok(r)
        }
        Command::Gadget { graph, kind, replicate, out } => {
            let g = load_graph(&graph)?;
            let family = Family::from(kind);
            let copies = replicate.unwrap_or(1);
            if copies == 0 {
                return Err(Error::Precondition("--replicate must be positive".into()));
            }
            let gadget = build_gadget(&g, family.kind(copies))?;
            let edges = gadget.graph.to_edge_list();
            let roles = gadget.role_map_text();
            let mut r = String::new();
            match out {
                Some(path) => {
                    let roles_path = PathBuf::from(format!("{}.roles", path.display()));
                    write_file(&path, &edges)?;
                    write_file(&roles_path, &roles)?;
                    let _ = writeln!(r, "edges_file={}\nroles_file={}", path.display(), roles_path.display());
                }
                None => {
                    r.push_str("# edges\n");
                    r.push_str(&edges);
                    r.push_str("# roles\n");
                    r.push_str(&roles);
                }
            }
            let _ = writeln!(r, "kind={family}\ncopies={copies}");
            let _ = writeln!(r, "vertices={}\nedges={}", gadget.graph.n(), gadget.graph.m());
            ok(r)
        }
        Command::Roundtrip { graph, kind, k, common } => {
            let g = load_graph(&graph)?;
            let rep = roundtrip_check(&g, k, kind.into(), common.cap)?;
            let mut r = String::new();
            let _ = writeln!(r, "chi={} threshold={}", rep.chromatic, rep.threshold);
            let _ = writeln!(r, "chi_le_k={}", rep.chi_at_most_k);
            let _ = writeln!(r, "rvd_le_threshold={}", rep.rvd_at_most_threshold);
            let _ = writeln!(r, "gadget_rvd={}", rep.gadget.lower);
            let _ = writeln!(r, "gadget_exact={}", rep.gadget.exact);
            let pass = rep.agrees();
            let _ = writeln!(r, "status={}", if pass { "pass" } else { "fail" });
            Ok(CommandOutcome { exit_code: if pass { EXIT_OK } else { EXIT_FAILED }, report: r })
        }
        Command::Chain { graph, kind, k, common } => {
            let g = load_graph(&graph)?;
            let rep = chain_check(&g, k, kind.into(), common.cap)?;
            let mut r = String::new();
            for l in &rep.links {
                let mark = if !l.holds {
                    "FAILS"
                } else if l.tight {
                    "tight"
                } else {
                    "holds"
                };
                let _ = writeln!(r, "{} ≤ {}  {mark}", l.lhs, l.rhs);
            }
            let _ = writeln!(r, "independence_bound={}", rep.independence_bound);
            let _ = writeln!(r, "kfold_bound={}", rep.kfold_bound);
            let _ = writeln!(r, "gadget_lower={}\ngadget_upper={}", rep.gadget.lower, rep.gadget.upper);
            let _ = writeln!(r, "gadget_exact={}", rep.gadget.exact);
            let _ = writeln!(r, "coloring_bound={}", rep.coloring_bound);
            let pass = rep.passes();
            let _ = writeln!(r, "status={}", if pass { "pass" } else { "fail" });
            Ok(CommandOutcome { exit_code: if pass { EXIT_OK } else { EXIT_FAILED }, report: r })
        }
        Command::Selftest { seed, jobs } => {
            let reports = run_all(&AcceptanceConfig { seed, jobs });
            let mut r = String::new();
            for rep in &reports {
                let _ = writeln!(r, "{} {} {}", rep.id, if rep.passed { "pass" } else { "fail" }, rep.name);
                let _ = writeln!(r, "   {}", rep.detail);
            }
            let failed = reports.iter().filter(|c| !c.passed).count();
            let _ = writeln!(r, "failed={failed}\nstatus={}", if failed == 0 { "pass" } else { "fail" });
            Ok(CommandOutcome { exit_code: if failed == 0 { EXIT_OK } else { EXIT_FAILED }, report: r })
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", path.display()) })
}

fn recognize(g: &Graph) -> Result<CommandOutcome, Error> {
    let free = is_k4_minor_free(g);
    let mut r = String::new();
    if g.n() >= 1 && g.is_connected() {
        let d = block_decomposition(g)?;
        let cuts: Vec<String> = d.cut_vertices.iter().map(|v| (v + 1).to_string()).collect();
        let _ = writeln!(r, "blocks={}", d.blocks.len());
        let _ = writeln!(r, "cut_vertices={}", cuts.join(" "));
        if free && g.n() >= 2 {
            let s = match find_structure(g)? {
                StructureLocator::MinDegreeLeqOne(v) => format!("low-degree {}", v + 1),
                StructureLocator::AdjacentTwoVertices(u, v) => format!("adjacent-2-vertices {} {}", u + 1, v + 1),
                StructureLocator::HubVertex(h) => format!("hub {}", h.u + 1),
            };
            let _ = writeln!(r, "structure={s}");
        }
    } else {
        let _ = writeln!(r, "connected=false");
    }
    let _ = writeln!(r, "n={}\nm={}\ndelta={}", g.n(), g.m(), g.max_degree());
    let _ = writeln!(r, "k4_minor_free={free}");
    ok(r)
}
