//! Command-line driver, file formats and drawings.
//!
//! Exit codes: 0 on success, 1 on a domain error, 2 on a usage or parse error.

mod rot;
mod svg;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use rot::{parse_rot, serialize_rot, ParseError, RotError};
pub use svg::{emit_svg, layout, render, LayoutError};

use crate::bounds::BoundReport;
use crate::cover_solver::{brute_min_cfc, brute_osn_by_splits, min_fvs, solve_osn, SPLIT_FACE_CAP};
use crate::generators::{named, FamilySpec};
use crate::plane_graph::{DualGraph, PlaneGraph};
use crate::reductions::{brute_min_vc, build_cfc_instance, VcInstance};
use crate::split_engine::SplitSequence;

#[derive(Parser, Debug)]
#[command(name = "outersplit", version, about = "Split plane graphs into outerplane ones")]
struct Cli {
    /// Print `key=value` lines instead of aligned text.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the splitting number, a minimum cover and a split sequence.
    Osn {
        file: PathBuf,
        /// Write the split sequence to this file.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Draw the graph before and after splitting.
        #[arg(long, num_args = 2, value_names = ["BEFORE", "AFTER"])]
        svg: Option<Vec<PathBuf>>,
    },
    /// Replay a split sequence and print the resulting graph.
    Split {
        #[arg(long)]
        apply: bool,
        file: PathBuf,
        seqfile: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Report counts, biconnectivity and outerplanarity.
    Verify { file: PathBuf },
    /// Generate a graph family, e.g. `gen complete_3tree 2`.
    Gen {
        family: String,
        params: Vec<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate the closed-form bounds.
    Bounds {
        file: PathBuf,
        /// Treat the input as the complete planar 3-tree of this depth.
        #[arg(long)]
        depth: Option<u32>,
        /// Skip the exact solver.
        #[arg(long)]
        no_solve: bool,
    },
    /// Build the face cover instance for a cubic vertex cover instance.
    Reduce {
        vcfile: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the exhaustive oracles and compare them with the solver.
    Oracle { file: PathBuf },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn domain(e: impl Display) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let mut report = Report {
        porcelain: cli.porcelain,
        out,
    };
    match dispatch(cli.command, &mut report) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

struct Report<'a> {
    porcelain: bool,
    out: &'a mut dyn Write,
}

impl Report<'_> {
    fn field(&mut self, key: &str, value: impl Display) {
        let _ = if self.porcelain {
            writeln!(self.out, "{key}={value}")
        } else {
            writeln!(self.out, "{key:<12} {value}")
        };
    }

    fn raw(&mut self, text: &str) {
        let _ = write!(self.out, "{text}");
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<PlaneGraph, Failure> {
    parse_rot(&read(path)?).map_err(|e| match e {
        RotError::Parse(p) => Failure::Usage(format!("{}: {p}", path.display())),
        RotError::Graph(g) => Failure::domain(g),
    })
}

fn join(items: impl IntoIterator<Item = impl Display>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dispatch(command: Command, r: &mut Report<'_>) -> Outcome {
    match command {
        Command::Osn { file, output, svg } => run_osn(&file, output.as_deref(), svg.as_deref(), r),
        Command::Split {
            apply,
            file,
            seqfile,
            output,
            svg,
        } => {
            if !apply {
                return Err(Failure::Usage("`split` requires --apply".into()));
            }
            run_split(&file, &seqfile, output.as_deref(), svg.as_deref(), r)
        }
        Command::Verify { file } => run_verify(&file, r),
        Command::Gen { family, params, output } => {
            let spec = FamilySpec::parse(&family, &params).map_err(Failure::domain)?;
            let g = named(spec).map_err(Failure::domain)?;
            let text = serialize_rot(&g);
            match output {
                Some(path) => write_file(&path, &text),
                None => {
                    r.raw(&text);
                    Ok(())
                }
            }
        }
        Command::Bounds { file, depth, no_solve } => {
            let g = load(&file)?;
            let osn = if no_solve {
                None
            } else {
                Some(solve_osn(&g).map_err(Failure::domain)?.osn)
            };
            let report = BoundReport::new(&g, depth, osn);
            let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
            r.field("n", report.n);
            r.field("min_degree", report.min_degree);
            r.field("lower", report.lower_generic);
            r.field("lower_3tree", opt(report.lower_family.map(|x| x.to_string())));
            r.field("upper", opt(report.upper.map(|x| x.to_string())));
            r.field("osn", opt(report.osn.map(|x| x.to_string())));
            for check in report.check() {
                let verdict = match (check.holds, check.advisory) {
                    (true, _) => "holds",
                    (false, true) => "violated (advisory below n=8)",
                    (false, false) => "VIOLATED",
                };
                r.field(&format!("check.{}", check.name), verdict);
            }
            if report.consistent() {
                Ok(())
            } else {
                Err(Failure::Domain("BoundViolation: a non-advisory bound fails".into()))
            }
        }
        Command::Reduce { vcfile, output } => {
            let g = load(&vcfile)?;
            let k = g.vertex_count();
            let inst = VcInstance::new(g, k).map_err(Failure::domain)?;
            let d = build_cfc_instance(&inst).map_err(Failure::domain)?;
            let mut text = String::new();
            for (f, &v) in d.correspondence() {
                text.push_str(&format!("# face {f} <-> vertex {}\n", inst.graph().name(v)));
            }
            text.push_str(&serialize_rot(d.graph()));
            match output {
                Some(path) => write_file(&path, &text),
                None => {
                    r.raw(&text);
                    Ok(())
                }
            }
        }
        Command::Oracle { file } => run_oracle(&file, r),
    }
}

fn run_osn(file: &Path, output: Option<&Path>, svg: Option<&[PathBuf]>, r: &mut Report<'_>) -> Outcome {
    let g = load(file)?;
    let res = solve_osn(&g).map_err(Failure::domain)?;
    r.field("osn", res.osn);
    r.field("cover", join(res.cover.faces(), if r.porcelain { "," } else { " " }));
    r.field("splits", res.splits.len());
    for op in res.splits.ops() {
        if r.porcelain {
            r.field("split", op);
        } else {
            r.raw(&format!("{op}\n"));
        }
    }
    if let Some(path) = output {
        write_file(path, &format!("# osn {}\n{}", res.osn, res.splits))?;
    }
    if let Some([before, after]) = svg {
        let after_graph = res.splits.replay(&g).map_err(Failure::domain)?.to_plane_graph();
        write_file(before, &emit_svg(&g, None).map_err(Failure::domain)?)?;
        write_file(after, &emit_svg(&after_graph, None).map_err(Failure::domain)?)?;
    }
    Ok(())
}

fn run_split(file: &Path, seqfile: &Path, output: Option<&Path>, svg: Option<&Path>, r: &mut Report<'_>) -> Outcome {
    let g = load(file)?;
    let seq = SplitSequence::parse(&read(seqfile)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", seqfile.display())))?;
    let h = seq.replay(&g).map_err(Failure::domain)?.to_plane_graph();
    let text = serialize_rot(&h);
    match output {
        Some(path) => write_file(path, &text)?,
        None => r.raw(&text),
    }
    if let Some(path) = svg {
        write_file(path, &emit_svg(&h, None).map_err(Failure::domain)?)?;
    }
    Ok(())
}

fn run_verify(file: &Path, r: &mut Report<'_>) -> Outcome {
    let g = load(file)?;
    let status = g.is_outerplane();
    r.field("vertices", g.vertex_count());
    r.field("edges", g.edge_count());
    r.field("faces", g.face_count());
    r.field("biconnected", yes(g.is_biconnected()));
    r.field("outerplane", yes(status.is_outerplane()));
    if let Some(f) = status.face {
        r.field("outer_face", f);
    }
    Ok(())
}

fn run_oracle(file: &Path, r: &mut Report<'_>) -> Outcome {
    let g = load(file)?;
    let cfc = brute_min_cfc(&g).map_err(Failure::domain)?.len();
    let fvs = min_fvs(&DualGraph::new(&g, &g.faces(), None)).map_err(Failure::domain)?.len();
    let by_splits = if g.face_count() <= SPLIT_FACE_CAP {
        brute_osn_by_splits(&g, g.face_count() - 1).map_err(Failure::domain)?
    } else {
        None
    };
    let solver = solve_osn(&g).ok().map(|res| res.osn);

    let mut agree = cfc == fvs && by_splits.is_none_or(|k| k + 1 == cfc) && solver.is_none_or(|k| k + 1 == cfc);
    let show = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    r.field("faces", g.face_count());
    r.field("cfc", cfc);
    r.field("fvs", fvs);
    r.field("osn", show(by_splits));
    r.field("solver", show(solver));

    if let Ok(inst) = VcInstance::new(g.clone(), g.vertex_count()) {
        let vc = brute_min_vc(inst.graph()).map_err(Failure::domain)?;
        let d = build_cfc_instance(&inst).map_err(Failure::domain)?;
        let dstar = brute_min_cfc(d.graph()).map_err(Failure::domain)?.len();
        agree &= vc.len() == dstar;
        r.field("vc", vc.len());
        r.field("cfc_dstar", dstar);
        let vc_names: BTreeSet<&str> = vc.iter().map(|&v| inst.graph().name(v)).collect();
        r.field("vc_set", join(vc_names, if r.porcelain { "," } else { " " }));
    }
    r.field("agree", yes(agree));
    if agree {
        Ok(())
    } else {
        Err(Failure::Domain("OracleDisagreement: oracle values differ".into()))
    }
}
