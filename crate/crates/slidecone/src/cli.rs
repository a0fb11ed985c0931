//! Command-line front end.
//!
//! Every subcommand writes JSON (or CSV) to stdout or to `--out`. Floats are
//! printed with 17 significant digits so repeated runs are byte-identical.
//! Angles are given in degrees on the command line.
//!
//! Exit codes: 0 success, 1 domain error, 2 I/O error, 64 usage error.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::calibration::{calibration_for, verify_certificate};
use crate::cones::{build_mesh, ConeSpec, Window};
use crate::energy::{j_alpha_exact, j_alpha_mesh};
use crate::error::{Error, Result};
use crate::evolver::mesh::{fmt17, TaggedMesh};
use crate::evolver::{evolve, pinch, trace_csv, EvolveConfig, PinchPreset, PinchRecipe};
use crate::onedim::{is_minimal_1d, Branch1D};
use crate::{competitor, geom, spherical};

/// Exit code for usage errors and unknown subcommands.
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "slidecone", version, about = "Sliding minimal cones with weighted boundary energy")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Write the result to this file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Debug, Args)]
struct Family {
    /// Cone family: t-plus, y-beta, ybar-beta, w-beta, delta-plus, c-plus, custom.
    family: String,
    /// Tilt angle of the Y families, in degrees.
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    /// Dimension of delta-plus.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Mesh file of a custom cone.
    #[arg(long)]
    mesh: Option<String>,
}

impl Family {
    fn spec(&self) -> Result<ConeSpec> {
        let beta = self.beta.to_radians();
        let spec = match self.family.as_str() {
            "t-plus" => ConeSpec::TPlus,
            "y-beta" => ConeSpec::YBeta { beta },
            "ybar-beta" => ConeSpec::YbarBeta { beta },
            "w-beta" => ConeSpec::WBeta { beta },
            "delta-plus" => ConeSpec::DeltaPlus { n: self.n },
            "c-plus" => ConeSpec::CPlus,
            "custom" => ConeSpec::Custom {
                path: self.mesh.clone().ok_or_else(|| Error::Configuration("custom cones need --mesh".into()))?,
            },
            other => return Err(Error::Configuration(format!("unknown cone family `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vertices and edge length of the canonical regular simplex in ℝⁿ.
    Simplex {
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Build and verify the paired-calibration certificate of a cone.
    Calibrate {
        #[command(flatten)]
        family: Family,
        /// Weight α; defaults to the family's threshold.
        #[arg(long)]
        alpha: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// Exact and mesh energies of a cone in a window.
    Energy {
        #[command(flatten)]
        family: Family,
        #[arg(long)]
        alpha: f64,
        /// Window: `simplex`, `prism` or `ball:R`; defaults to `simplex` for
        /// T+, C+ and the half tetrahedral cone and to `ball:1` otherwise.
        #[arg(long)]
        window: Option<String>,
        /// Mesh refinement per polygon.
        #[arg(long, default_value_t = 8)]
        res: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Search the push-down competitor family of the half tetrahedral cone.
    Compete {
        #[arg(long)]
        alpha: f64,
        /// Print a CSV sweep over x₀ instead of the search result.
        #[arg(long)]
        sweep: bool,
        /// Number of sweep points.
        #[arg(long, default_value_t = 41)]
        points: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Classify a one-dimensional cone given as `angle:g|f,...` (degrees;
    /// `g` marks branches in Γ).
    Classify1d {
        spec: String,
        #[arg(long)]
        alpha: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate a spherical-network formula: `triangle`, `rect A`,
    /// `rect-half A`, `pentagon A B` (degrees).
    Taylor {
        formula: String,
        args: Vec<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// The symmetric single-pentagon network (degrees).
    Pentagon {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        gamma: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Write the cone (or pinched competitor) mesh of a preset.
    Mesh {
        preset: String,
        /// Family parameter (sin φ or aspect ratio); defaults per preset.
        #[arg(long)]
        param: Option<f64>,
        /// Write the pinched competitor instead of the cone.
        #[arg(long)]
        competitor: bool,
        /// Size of the inserted structure.
        #[arg(long)]
        size: Option<f64>,
        #[arg(long, default_value_t = 3)]
        res: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Evolve a mesh by projected gradient descent; prints the energy trace.
    Evolve {
        #[arg(long)]
        mesh: String,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 500)]
        steps: usize,
        /// Pinch the mesh with this preset before evolving.
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        param: Option<f64>,
        #[arg(long)]
        size: Option<f64>,
        #[arg(long, default_value_t = 3)]
        res: usize,
        #[arg(long, default_value_t = 0.05)]
        step_size: f64,
        /// Also write the final mesh to this file.
        #[arg(long)]
        mesh_out: Option<String>,
        #[command(flatten)]
        out: Output,
    },
}

/// JSON formatter printing every float with 17 significant digits.
struct Fixed17;

impl serde_json::ser::Formatter for Fixed17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> std::io::Result<()> {
        if v.is_finite() {
            w.write_all(fmt17(v).as_bytes())
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, v: f32) -> std::io::Result<()> {
        self.write_f64(w, v as f64)
    }
}

/// Serialise `value` as JSON with fixed 17-digit floats.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Fixed17);
    value.serialize(&mut ser).map_err(|e| Error::Structural(e.to_string()))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| Error::Structural(e.to_string()))
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn read_mesh(path: &str) -> Result<TaggedMesh> {
    TaggedMesh::from_text(&std::fs::read_to_string(path)?)
}

fn default_window(spec: &ConeSpec) -> Window {
    match spec {
        ConeSpec::TPlus | ConeSpec::CPlus | ConeSpec::DeltaPlus { n: 3 } => Window::Simplex,
        _ => Window::Ball(1.0),
    }
}

fn parse_window(s: &str) -> Result<Window> {
    match s {
        "simplex" => Ok(Window::Simplex),
        "prism" => Ok(Window::Prism),
        _ => match s.strip_prefix("ball:").map(str::parse::<f64>) {
            Some(Ok(r)) if r > 0.0 => Ok(Window::Ball(r)),
            _ => Err(Error::Configuration(format!("unknown window `{s}`"))),
        },
    }
}

fn parse_branches(spec: &str) -> Result<Vec<Branch1D>> {
    spec.split(',')
        .map(|item| {
            let (angle, kind) = item.split_once(':').unwrap_or((item, "f"));
            let angle: f64 = angle.trim().parse().map_err(|_| Error::Domain(format!("bad branch angle `{angle}`")))?;
            let in_gamma = match kind.trim() {
                "g" => true,
                "f" => false,
                k => return Err(Error::Domain(format!("bad branch kind `{k}` (use g or f)"))),
            };
            Branch1D::new(angle.to_radians(), in_gamma)
        })
        .collect()
}

fn preset_named(name: &str) -> Result<PinchPreset> {
    PinchPreset::from_name(name).ok_or_else(|| {
        let names: Vec<&str> = PinchPreset::ALL.iter().map(|p| p.name()).collect();
        Error::Configuration(format!("unknown preset `{name}`; expected one of {}", names.join(", ")))
    })
}

#[derive(Serialize)]
struct SimplexOut {
    n: usize,
    vertices: Vec<Vec<f64>>,
    edge_length: f64,
    max_edge_orthogonality_defect: f64,
}

#[derive(Serialize)]
struct EnergyOut {
    family: ConeSpec,
    window: Window,
    alpha: f64,
    exact: Option<crate::energy::EnergyReport>,
    mesh: crate::energy::EnergyReport,
    triangles: usize,
}

#[derive(Serialize)]
struct CompeteOut {
    alpha: f64,
    x0: Option<f64>,
    c: Option<f64>,
    gap: Option<f64>,
    cone_energy: f64,
}

#[derive(Serialize)]
struct TaylorOut {
    formula: String,
    args_deg: Vec<f64>,
    value_rad: f64,
    value_deg: f64,
    cos_value: f64,
}

#[derive(Serialize)]
struct ClassifyOut {
    alpha: f64,
    branches_deg: Vec<(f64, bool)>,
    #[serde(flatten)]
    verdict: crate::onedim::Verdict,
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Simplex { n, out } => {
            let s = geom::simplex_vertices(n)?;
            let mut defect = 0.0f64;
            for i in 1..=n + 1 {
                for j in i + 1..=n + 1 {
                    defect = defect.max(geom::simplex_edge_defect(&s, i, j)?);
                }
            }
            let vertices = s.vertices.iter().map(|v| v.coords.clone()).collect();
            emit(&out, &to_json(&SimplexOut { n, vertices, edge_length: geom::edge_length(n)?, max_edge_orthogonality_defect: defect })?)
        }
        Command::Calibrate { family, alpha, out } => {
            let fam = calibration_for(&family.spec()?)?;
            let report = verify_certificate(&fam, alpha.unwrap_or(fam.alpha_required))?;
            emit(&out, &to_json(&report)?)
        }
        Command::Energy { family, alpha, window, res, out } => {
            let spec = family.spec()?;
            let window = match window {
                Some(w) => parse_window(&w)?,
                None => default_window(&spec),
            };
            let (exact, mesh) = match &spec {
                ConeSpec::Custom { path } => (None, read_mesh(path)?),
                _ => (Some(j_alpha_exact(&spec, window, alpha)?), build_mesh(&spec, window, res)?),
            };
            let report = j_alpha_mesh(&mesh, alpha)?;
            emit(&out, &to_json(&EnergyOut { family: spec, window, alpha, exact, mesh: report, triangles: mesh.num_triangles() })?)
        }
        Command::Compete { alpha, sweep, points, out } => {
            if sweep {
                let rows = competitor::sweep(alpha, points)?;
                let mut s = String::from("x0,c,alpha,gap_closed_form,j_quadrature\n");
                for r in rows {
                    s.push_str(&[r.x0, r.c, r.alpha, r.gap_closed_form, r.j_quadrature].map(fmt17).join(","));
                    s.push('\n');
                }
                return emit(&out, &s);
            }
            let found = competitor::find_beating_competitor(alpha)?;
            let (c, gap) = match found {
                Some(x0) => (Some(competitor::c_from_x0(x0)?), Some(competitor::energy_gap(x0, alpha)?)),
                None => (None, None),
            };
            emit(&out, &to_json(&CompeteOut { alpha, x0: found, c, gap, cone_energy: competitor::cone_energy() })?)
        }
        Command::Classify1d { spec, alpha, out } => {
            let branches = parse_branches(&spec)?;
            let verdict = is_minimal_1d(&branches, alpha)?;
            let branches_deg = branches.iter().map(|b| (b.angle.to_degrees(), b.in_gamma)).collect();
            emit(&out, &to_json(&ClassifyOut { alpha, branches_deg, verdict })?)
        }
        Command::Taylor { formula, args, out } => {
            let rad: Vec<f64> = args.iter().map(|a| a.to_radians()).collect();
            let need = |k: usize| {
                if rad.len() == k {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("formula `{formula}` takes {k} angle(s)")))
                }
            };
            let value = match formula.as_str() {
                "triangle" => {
                    need(0)?;
                    spherical::triangle_side()
                }
                "rect" => {
                    need(1)?;
                    spherical::rect_side(rad[0])?
                }
                "rect-half" => {
                    need(1)?;
                    spherical::rect_side_half_angle(rad[0])?
                }
                "pentagon" => {
                    need(2)?;
                    spherical::pentagon_side(rad[0], rad[1])?
                }
                other => return Err(Error::Configuration(format!("unknown formula `{other}`"))),
            };
            let o = TaylorOut { formula: formula.clone(), args_deg: args, value_rad: value, value_deg: value.to_degrees(), cos_value: value.cos() };
            emit(&out, &to_json(&o)?)
        }
        Command::Pentagon { beta, gamma, out } => {
            let net = spherical::pentagon_family(beta.to_radians(), gamma.to_radians())?;
            emit(&out, &to_json(&net)?)
        }
        Command::Mesh { preset, param, competitor, size, res, out } => {
            let p = preset_named(&preset)?;
            let param = param.unwrap_or(p.default_param());
            let m = if competitor {
                p.competitor_mesh(param, size.unwrap_or(p.default_size()), res)?
            } else {
                p.cone_mesh(param, res)?
            };
            emit(&out, &m.to_text())
        }
        Command::Evolve { mesh, alpha, steps, preset, param, size, res, step_size, mesh_out, out } => {
            let input = read_mesh(&mesh)?;
            let recipe = match preset {
                Some(name) => {
                    let p = preset_named(&name)?;
                    PinchRecipe::Preset {
                        preset: p,
                        param: param.unwrap_or(p.default_param()),
                        size: size.unwrap_or(p.default_size()),
                        resolution: res,
                    }
                }
                None => PinchRecipe::Identity,
            };
            let seeded = pinch(&input, &recipe)?;
            let config = EvolveConfig { alpha, step_size, max_steps: steps, ..Default::default() };
            let (fin, trace) = evolve(&seeded, &config)?;
            if let Some(path) = mesh_out {
                std::fs::write(path, fin.to_text())?;
            }
            emit(&out, &trace_csv(&trace))
        }
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => 2,
        _ => 1,
    }
}

/// Parse `argv` (including the program name), run the command and return
/// the process exit code.
pub fn dispatch(argv: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
        }
    };
    let started = Instant::now();
    match run(cli.command) {
        Ok(()) => {
            if std::env::var_os("SLIDECONE_TIMING").is_some() {
                eprintln!("elapsed {:.3} s", started.elapsed().as_secs_f64());
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
