//! The `parwall` command line.
//!
//! Every subcommand prints one deterministic document, JSON by default,
//! and maps library errors onto a fixed set of exit codes.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arith::{fmt_rational, ModuliSetup, Weight};
use crate::chambers::Arrangement;
use crate::error::Error;
use crate::json;
use crate::picard::{
    boundary_contraction, canonical_class, canonical_class_one_point, det_dual_theta_exponent, effective_cone,
    heuristic_nef_cone, hecke_pullback_identity, nef_cone_one_point, weight_to_divisor, DivisorClass, Edge, Side,
};
use crate::svg::{render_svg, RenderSpec};
use crate::vanishing::{
    acm_coverage, acm_verdict, acm_wrt_power_gaps, embed_coverage, flip_region, kodaira_region, lepotier_region,
    serre_reduce, step3_region, Cell,
};
use crate::walls::first_wall;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SETUP: i32 = 2;
pub const EXIT_GENERICITY: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

const EXIT_CODES: &str = "\
Exit codes:
  0   success
  2   invalid setup or out-of-domain input
  3   weight on a wall, or path through a wall intersection
  64  usage error (unknown subcommand, flag or malformed value)";

#[derive(Debug, Parser)]
#[command(name = "parwall", version, about = "Walls, chambers, cones and vanishing ranges for parabolic moduli")]
#[command(after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    X,
    Y,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::X => Side::X,
            SideArg::Y => Side::Y,
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    /// Rank r ≥ 2.
    #[arg(short = 'r', long = "rank")]
    rank: i64,
    /// Degree d, coprime to r with 0 < d < r.
    #[arg(short = 'd', long = "degree")]
    degree: i64,
    /// Genus g ≥ 2.
    #[arg(short = 'g', long = "genus", default_value_t = 2)]
    genus: i64,
    /// Number of marked points: 1 (flag type r−1) or 2 (r−1 and 1).
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    points: u8,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the document here instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

impl Common {
    fn setup(&self) -> Result<ModuliSetup, Error> {
        ModuliSetup::with_points(self.rank, self.degree, self.genus, self.points as usize)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normalization and dimension counts.
    Info(Common),
    /// Enumerate the walls of the weight cube.
    Walls(Common),
    /// Smallest one-point wall value.
    FirstWall(Common),
    /// Chamber decomposition, or the chamber of one weight.
    Chambers {
        #[command(flatten)]
        common: Common,
        /// Locate this weight, e.g. "1/3,1/5".
        #[arg(long)]
        weight: Option<String>,
    },
    /// Walls crossed by the segment between two generic weights.
    Path {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// SVG picture of the two-point arrangement.
    Diagram {
        #[command(flatten)]
        common: Common,
        /// Annotate each wall with its triple.
        #[arg(long)]
        labels: bool,
    },
    /// Effective, nef and canonical classes.
    Cones {
        #[command(flatten)]
        common: Common,
        /// Side of the one-point model.
        #[arg(long, value_enum, default_value_t = SideArg::X)]
        side: SideArg,
    },
    /// Divisor class of a weight.
    Divisor {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        weight: String,
    },
    /// Boundary contractions of the weight square.
    Boundary {
        #[command(flatten)]
        common: Common,
        /// One of a_x=0, a_x=1, a_y=0, a_y=1.
        #[arg(long)]
        edge: Option<String>,
    },
    /// Vanishing regions and the coverage table.
    Vanishing {
        #[command(flatten)]
        common: Common,
        /// Query one cell "i,j".
        #[arg(long)]
        cell: Option<String>,
        /// Include every row of the coverage table.
        #[arg(long)]
        table: bool,
    },
    /// ACM verdict for E_x.
    Acm {
        #[command(flatten)]
        common: Common,
        /// Check E_x ⊗ Θ^{-1} against Θ^k instead.
        #[arg(long, value_name = "K")]
        power: Option<i64>,
    },
    /// Coverage of H^i(E_x ⊗ E_y^*) for the embedding criterion.
    Embed(Common),
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Info(c) | Command::Walls(c) | Command::FirstWall(c) | Command::Embed(c) => c,
            Command::Chambers { common, .. }
            | Command::Path { common, .. }
            | Command::Diagram { common, .. }
            | Command::Cones { common, .. }
            | Command::Divisor { common, .. }
            | Command::Boundary { common, .. }
            | Command::Vanishing { common, .. }
            | Command::Acm { common, .. } => common,
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NonGeneric(_) | Error::DegeneratePath(_) => EXIT_GENERICITY,
        Error::Parse(_) => EXIT_USAGE,
        Error::InvalidSetup(_)
        | Error::Domain(_)
        | Error::Precondition(_)
        | Error::UnsupportedCone(_) => EXIT_SETUP,
    }
}

enum Output {
    Json(Value),
    Text(String),
    /// Emitted as is whatever `--format` says.
    Svg(String),
}

/// Parses `args` (program name first), writes the document to `out` or the
/// requested file, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let rendered = e.render().to_string();
            if informational {
                let _ = out.write_all(rendered.as_bytes());
                return EXIT_OK;
            }
            let _ = err.write_all(rendered.as_bytes());
            return EXIT_USAGE;
        }
    };
    let common = cli.command.common();
    let result = execute(&cli.command).map(|o| match o {
        Output::Json(v) => json::render(&v),
        Output::Text(t) | Output::Svg(t) => t,
    });
    let document = match result {
        Ok(doc) => doc,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, document) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return EXIT_SETUP;
            }
        }
        None => {
            let _ = out.write_all(document.as_bytes());
        }
    }
    EXIT_OK
}

fn weight(text: &str, setup: &ModuliSetup) -> Result<Weight, Error> {
    let w: Weight = text.parse()?;
    if w.dim() != setup.k() {
        return Err(Error::Domain(format!("weight {w} has {} coordinates, setup has {} points", w.dim(), setup.k())));
    }
    Ok(w)
}

fn emit(format: Format, value: Value, text: impl FnOnce(&Value) -> String) -> Output {
    match format {
        Format::Json => Output::Json(value),
        Format::Text => Output::Text(text(&value)),
    }
}

fn lines(items: impl IntoIterator<Item = String>) -> String {
    let mut s: String = items.into_iter().collect::<Vec<_>>().join("\n");
    s.push('\n');
    s
}

fn class_text(c: &DivisorClass) -> String {
    format!("({}, {}, {})", fmt_rational(&c.c_x), fmt_rational(&c.c_y), fmt_rational(&c.t))
}

fn execute(cmd: &Command) -> Result<Output, Error> {
    let common = cmd.common();
    let fmt = common.format;
    match cmd {
        Command::Info(c) => {
            let s = c.setup()?;
            let det = det_dual_theta_exponent(s.rank(), s.degree(), s.genus())?;
            Ok(emit(fmt, json::info(&s, det), |v| {
                lines([
                    format!("r={} d={} g={} points={}", s.rank(), s.degree(), s.genus(), s.k()),
                    format!("ell={} e={}", s.ell(), s.e()),
                    format!("dim={} dim_fixed_determinant={}", v["dim"], v["dim_fixed_determinant"]),
                    format!("codim_bound={} genus_bound_embedding={}", v["codim_bound"], v["genus_bound_embedding"]),
                    format!("det_dual_theta_exponent={det}"),
                ])
            }))
        }
        Command::Walls(c) => {
            let s = c.setup()?;
            let arr = Arrangement::new(&s);
            let names: &[&str] = if s.k() == 1 { &["a"] } else { &["a_x", "a_y"] };
            Ok(emit(fmt, json::walls(&s, arr.walls()), |_| {
                lines(arr.walls().iter().map(|w| {
                    let kind = if w.is_multiple() { "multiple" } else { "simple" };
                    format!("{}  {}  {kind}", w.canonical().label(), w.hyperplane().equation(names))
                }))
            }))
        }
        Command::FirstWall(c) => {
            let fw = first_wall(c.rank, c.degree)?;
            Ok(emit(fmt, json::first_wall(&fw), |_| {
                lines([format!(
                    "first wall a={} (destabilizer rank {}k, degree {}k){}",
                    fmt_rational(&fw.value),
                    fw.destabilizer_rank_unit,
                    fw.destabilizer_degree_unit,
                    if fw.hecke_boundary { ", Hecke boundary" } else { "" }
                )])
            }))
        }
        Command::Chambers { weight: Some(w), .. } => {
            let s = common.setup()?;
            let a = weight(w, &s)?;
            let arr = Arrangement::new(&s);
            let signs = arr.locate(&a)?;
            if !signs.is_generic() {
                return Err(Error::NonGeneric(format!("weight {a} lies on a wall")));
            }
            let dec = arr.decompose();
            let id = dec.chamber_of(&signs);
            Ok(emit(fmt, json::located(&a, &signs, id), |_| {
                lines([format!("{a}  {signs}  chamber {}", id.map_or("?".to_string(), |i| i.to_string()))])
            }))
        }
        Command::Chambers { weight: None, .. } => {
            let s = common.setup()?;
            let dec = Arrangement::new(&s).decompose();
            Ok(emit(fmt, json::chambers(&dec), |_| {
                let mut out = vec![format!(
                    "{} chambers, {} adjacencies, euler characteristic {}",
                    dec.chambers.len(),
                    dec.adjacency.len(),
                    dec.euler_characteristic()
                )];
                out.extend(dec.chambers.iter().map(|c| format!("{:>3}  {}  {}", c.id, c.signs, c.sample)));
                lines(out)
            }))
        }
        Command::Path { from, to, .. } => {
            let s = common.setup()?;
            let (a, b) = (weight(from, &s)?, weight(to, &s)?);
            let arr = Arrangement::new(&s);
            let p = arr.path(&a, &b)?;
            let (sa, sb) = (arr.locate(&a)?, arr.locate(&b)?);
            Ok(emit(fmt, json::path(&p, &sa, &sb), |_| {
                let mut out = vec![format!("{a} [{sa}] -> {b} [{sb}]")];
                out.extend(
                    p.crossings
                        .iter()
                        .map(|c| format!("  t={}  {}  at {}", fmt_rational(&c.t), c.triple.label(), c.point)),
                );
                lines(out)
            }))
        }
        Command::Diagram { labels, .. } => {
            let s = common.setup()?;
            let dec = Arrangement::new(&s).decompose();
            let spec = RenderSpec { labels: *labels, ..RenderSpec::default() };
            Ok(Output::Svg(render_svg(&dec, &spec)?))
        }
        Command::Cones { side, .. } => {
            let s = common.setup()?;
            let side: Side = (*side).into();
            let (r, d) = (s.rank(), s.degree());
            let mut doc = serde_json::Map::new();
            let hecke = |sd: Side| -> Result<Value, Error> {
                let (k, cls) = hecke_pullback_identity(sd, r, d)?;
                Ok(json!({ "gcd": k, "class": json::class(&cls) }))
            };
            doc.insert("hecke_pullback".into(), json!({ "x": hecke(Side::X)?, "y": hecke(Side::Y)? }));
            if s.k() == 2 {
                let eff = effective_cone(&s)?;
                let anti = DivisorClass::from_ints(r, r, 2);
                let dec = Arrangement::new(&s).decompose();
                let heuristic = dec
                    .chambers
                    .iter()
                    .map(|c| {
                        heuristic_nef_cone(&dec, c.id)
                            .map(|cone| json!({ "chamber": c.id, "signs": c.signs.to_string(), "cone": json::cone(&cone) }))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                doc.insert("effective".into(), json::cone(&eff));
                doc.insert("canonical".into(), json::class(&canonical_class(&s)));
                doc.insert("anticanonical_interior".into(), json!(eff.contains(&anti, true)?));
                doc.insert("chamber_nef".into(), Value::Array(heuristic));
            } else {
                doc.insert("side".into(), json!(if side == Side::X { "x" } else { "y" }));
                doc.insert("nef".into(), json::cone(&nef_cone_one_point(side, &s)?));
                doc.insert("canonical".into(), json::class(&canonical_class_one_point(side, r, s.ell())));
            }
            let doc = Value::Object(doc);
            Ok(emit(fmt, doc, |v| {
                let mut out = Vec::new();
                for key in ["effective", "nef"] {
                    if let Some(rays) = v[key]["rays"].as_array() {
                        let rs: Vec<String> = rays.iter().map(ray_text).collect();
                        out.push(format!("{key}: {}", rs.join(" ")));
                    }
                }
                out.push(format!("canonical: {}", ray_text(&v["canonical"])));
                if let Some(b) = v["anticanonical_interior"].as_bool() {
                    out.push(format!("anticanonical interior: {b}"));
                }
                lines(out)
            }))
        }
        Command::Divisor { weight: w, .. } => {
            let s = common.setup()?;
            let a = weight(w, &s)?;
            let cls = weight_to_divisor(&a, &s)?;
            let mut doc = json!({ "weight": json::weight(&a), "class": json::class(&cls) });
            if s.k() == 2 {
                let eff = effective_cone(&s)?;
                doc["effective"] = json!(eff.contains(&cls, false)?);
                doc["effective_interior"] = json!(eff.contains(&cls, true)?);
            }
            Ok(emit(fmt, doc, |_| lines([format!("{a} -> {}", class_text(&cls))])))
        }
        Command::Boundary { edge, .. } => {
            let s = common.setup()?;
            let edges: Vec<Edge> = match edge {
                Some(e) => vec![Edge::parse(e)?],
                None => Edge::ALL.iter().copied().filter(|e| boundary_contraction(*e, &s).is_ok()).collect(),
            };
            let descs = edges.iter().map(|e| boundary_contraction(*e, &s)).collect::<Result<Vec<_>, _>>()?;
            let doc = json!({ "contractions": descs.iter().map(json::contraction).collect::<Vec<_>>() });
            Ok(emit(fmt, doc, |_| {
                lines(descs.iter().map(|c| {
                    let kind = json::contraction(c)["kind"].as_str().unwrap_or_default().to_string();
                    format!("{}: {kind} -> {}", c.edge.name(), c.target)
                }))
            }))
        }
        Command::Vanishing { cell, table, .. } => {
            let (r, d, g) = (common.rank, common.degree, common.genus);
            let mut regions = vec![kodaira_region(r, d)?, lepotier_region(r, d)?, flip_region(r, d, g)?];
            regions.extend(step3_region(r, d)?);
            let cov = acm_coverage(r, d, g)?;
            let mut doc = json!({
                "regions": regions.iter().map(json::region).collect::<Vec<_>>(),
                "coverage": json::coverage(&cov, *table),
            });
            if let Some(text) = cell {
                let c: Cell = text.parse()?;
                let image = serre_reduce(c, r, d, g)?;
                let row = if (1..cov.n).contains(&c.i) { cov.row(normalize_cell(c, &cov)) } else { None };
                doc["cell"] = json!({
                    "cell": json::cell(c),
                    "covered_by": row.map(|rw| rw.covered_by.iter().map(|n| n.as_str()).collect::<Vec<_>>()),
                    "serre_image": { "cell": json::cell(image.cell), "ell": image.ell },
                });
            }
            Ok(emit(fmt, doc, |v| {
                let mut out: Vec<String> =
                    regions.iter().map(|rg| format!("{}: {}", rg.name.as_str(), rg.describe())).collect();
                out.push(format!("uncovered (j >= -1): {}", cells_text(&cov.uncovered())));
                out.push(format!("uncovered (j <= -2): {}", cells_text(&cov.uncovered_serre())));
                if !v["cell"].is_null() {
                    out.push(format!("cell {}: {}", v["cell"]["cell"], v["cell"]["covered_by"]));
                }
                lines(out)
            }))
        }
        Command::Acm { power: Some(k), .. } => {
            let (r, d, g) = (common.rank, common.degree, common.genus);
            let gaps = acm_wrt_power_gaps(r, d, g, *k)?;
            let doc = json!({ "power": k, "acm": gaps.is_empty(), "cells": json::cells(&gaps) });
            Ok(emit(fmt, doc, |_| lines([format!("power {k}: acm={} gaps {}", gaps.is_empty(), cells_text(&gaps))])))
        }
        Command::Acm { power: None, .. } => {
            let (r, d, g) = (common.rank, common.degree, common.genus);
            let cov = acm_coverage(r, d, g)?;
            let verdict = acm_verdict(r, d, g)?;
            Ok(emit(fmt, json::acm(&verdict, &cov), |v| {
                lines([format!("{}: {}", v["verdict"].as_str().unwrap_or(""), v["cells"])])
            }))
        }
        Command::Embed(c) => {
            let e = embed_coverage(c.rank, c.degree, c.genus)?;
            Ok(emit(fmt, json::embed(&e), |_| {
                let uncovered: Vec<String> = e.uncovered.iter().map(|i| i.to_string()).collect();
                lines([format!("fully faithful: {}  uncovered i: [{}]", e.fully_faithful, uncovered.join(", "))])
            }))
        }
    }
}

/// Coverage rows are stored up to the window edges; clamp the twist so a
/// query beyond them finds its representative row.
fn normalize_cell(c: Cell, cov: &crate::vanishing::CoverageTable) -> Cell {
    let j = if c.j >= -1 { c.j.min(cov.j_max) } else { c.j.max(-3 - cov.dual_j_max) };
    Cell::new(c.i, j)
}

fn cells_text(cs: &[Cell]) -> String {
    let items: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn ray_text(v: &Value) -> String {
    let parts: Vec<&str> = v.as_array().map(|a| a.iter().filter_map(Value::as_str).collect()).unwrap_or_default();
    format!("({})", parts.join(", "))
}
