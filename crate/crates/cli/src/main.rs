//! `hxz`: batch front end over the core library. Every subcommand reads
//! a spec file, runs one pipeline stage, and writes deterministic JSON,
//! CSV, or SVG artifacts into the output directory.

mod artifacts;
mod svg;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hxz_core::asympt::{self, CellKind, Rectangle};
use hxz_core::derivseq::{b_sequence, DerivSeq};
use hxz_core::hyperfunc::{analyze, normalize, spec_from_json, StructureData};
use hxz_core::localmodels;
use hxz_core::num::big::BigComplex;
use hxz_core::num::poly::poly_from_json;
use hxz_core::num::ratfun::RationalFunction;
use hxz_core::roots::{empirical_measure, find_roots};
use hxz_core::voronoi::{build_diagram, compare_measures, limit_measure, CompareOptions};
use hxz_core::Error as CoreError;

#[derive(Parser)]
#[command(name = "hxz", version, about = "Derivative zero asymptotics of hyperexponential functions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Working precision in bits (64..=4096).
    #[arg(long, global = true, env = "HXZ_PRECISION_BITS")]
    precision_bits: Option<u32>,

    /// Output directory for artifacts.
    #[arg(long, global = true, default_value = "out")]
    output_dir: PathBuf,

    /// Also render an SVG figure where the subcommand supports it.
    #[arg(long, global = true)]
    svg: bool,

    /// Tolerance overrides as key=value (e.g. --tol atom_radius=0.5).
    #[arg(long = "tol", global = true, value_parser = parse_tol)]
    tol: Vec<(String, f64)>,

    /// Lift the soft n <= 500 guard.
    #[arg(long, global = true)]
    force: bool,
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| "expected key=value".to_string())?;
    Ok((k.to_string(), v.parse::<f64>().map_err(|e| e.to_string())?))
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate and normalize a spec, emit all structural data.
    Analyze { spec: PathBuf },
    /// Compute B_0..B_n and emit one JSON line per index.
    Derive {
        spec: PathBuf,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Locate all zeros of B_n and emit them as CSV.
    Zeros {
        spec: PathBuf,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Voronoi diagram of the singular set and the limit measure.
    Voronoi { spec: PathBuf },
    /// Predicted vs exact C_n(z)/n! on the cell of one site.
    Predict {
        spec: PathBuf,
        #[arg(long)]
        site: usize,
        /// Evaluation point as "re,im".
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        n: usize,
    },
    /// L1 discrepancy between the zero potential and its limit on a
    /// rectangle, with the fitted decay exponent.
    L1rate {
        spec: PathBuf,
        #[arg(long)]
        site: usize,
        /// Rectangle as "x0,x1,y0,y1".
        #[arg(long, allow_hyphen_values = true)]
        rect: String,
        /// Indices, e.g. "16,32,64,128".
        #[arg(long, default_value = "16,32,64,128")]
        n_list: String,
        #[arg(long, default_value_t = 40)]
        grid: usize,
    },
    /// Empirical zero measure of B_n against the limit measure.
    Compare {
        spec: PathBuf,
        #[arg(long, default_value_t = 30)]
        n: usize,
    },
    /// Sheffer local model: polynomials, zeros, KS against the
    /// microscopic limit.
    Localmodel {
        #[arg(long, allow_negative_numbers = true)]
        alpha: i64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: usize,
        /// Optional leading Laurent coefficient "re,im" for the z-scale
        /// pushforward.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Rebuild (R, H) with f = c R e^H from a rational logarithmic
    /// derivative.
    Reconstruct { spec: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = config_json(&cli);
    // Precision policy: re-run at doubled precision when a computation
    // reports that the current precision cannot resolve it.
    let result = {
        let mut prec = cli.precision_bits;
        loop {
            match run(&cli, &config, prec) {
                Err(RunError::Core(CoreError::Precision(msg))) => {
                    let cur = prec.unwrap_or(0).max(256);
                    if cur >= 4096 {
                        break Err(RunError::Core(CoreError::Precision(msg)));
                    }
                    let next = (cur * 2).min(4096);
                    eprintln!("note: {msg}; retrying at {next} bits");
                    prec = Some(next);
                }
                other => break other,
            }
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (kind, code) = match &e {
                RunError::Core(c) if c.is_validation() => ("validation", 2),
                RunError::Core(c) if c.is_precision() => ("precision", 3),
                RunError::Core(_) => ("numerical", 4),
                RunError::Io(_) | RunError::Config(_) => ("validation", 2),
            };
            eprintln!("error ({kind}): {e}");
            artifacts::write_error(&cli.output_dir, &config, kind, &e.to_string());
            ExitCode::from(code)
        }
    }
}

#[derive(Debug)]
enum RunError {
    Core(CoreError),
    Io(std::io::Error),
    Config(String),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Core(e) => write!(f, "{e}"),
            RunError::Io(e) => write!(f, "{e}"),
            RunError::Config(s) => write!(f, "{s}"),
        }
    }
}

impl From<CoreError> for RunError {
    fn from(e: CoreError) -> Self {
        RunError::Core(e)
    }
}
impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

fn config_json(cli: &Cli) -> serde_json::Value {
    let (name, spec, extra): (&str, Option<&PathBuf>, serde_json::Value) = match &cli.cmd {
        Cmd::Analyze { spec } => ("analyze", Some(spec), serde_json::json!({})),
        Cmd::Derive { spec, n } => ("derive", Some(spec), serde_json::json!({ "n": n })),
        Cmd::Zeros { spec, n } => ("zeros", Some(spec), serde_json::json!({ "n": n })),
        Cmd::Voronoi { spec } => ("voronoi", Some(spec), serde_json::json!({})),
        Cmd::Predict { spec, site, z, n } => (
            "predict",
            Some(spec),
            serde_json::json!({ "site": site, "z": z, "n": n }),
        ),
        Cmd::L1rate { spec, site, rect, n_list, grid } => (
            "l1rate",
            Some(spec),
            serde_json::json!({ "site": site, "rect": rect, "n_list": n_list, "grid": grid }),
        ),
        Cmd::Compare { spec, n } => ("compare", Some(spec), serde_json::json!({ "n": n })),
        Cmd::Localmodel { alpha, m, n, lambda } => (
            "localmodel",
            None,
            serde_json::json!({ "alpha": alpha, "m": m, "n": n, "lambda": lambda }),
        ),
        Cmd::Reconstruct { spec } => ("reconstruct", Some(spec), serde_json::json!({})),
    };
    let tols: BTreeMap<&str, f64> = cli.tol.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    serde_json::json!({
        "command": name,
        "spec_path": spec.map(|p| p.display().to_string()),
        "precision_bits": cli.precision_bits,
        "svg": cli.svg,
        "tolerances": tols,
        "args": extra,
    })
}

fn load_spec(prec_override: Option<u32>, path: &Path) -> Result<(StructureData, u32), RunError> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| RunError::Config(format!("bad JSON in {}: {e}", path.display())))?;
    if let Some(p) = prec_override {
        if !(64..=4096).contains(&p) {
            return Err(RunError::Config(format!("precision_bits {p} outside [64, 4096]")));
        }
    }
    let spec = spec_from_json(&value, prec_override)?;
    let prec = spec.prec();
    let sd = analyze(&normalize(&spec)?)?;
    Ok((sd, prec))
}

fn guard_n(cli: &Cli, n: usize) -> Result<(), RunError> {
    if n > 500 && !cli.force {
        return Err(RunError::Config(format!(
            "n = {n} exceeds the soft limit 500; pass --force to override"
        )));
    }
    Ok(())
}

fn parse_point(prec: u32, s: &str) -> Result<BigComplex, RunError> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| RunError::Config("point must be \"re,im\"".into()))?;
    Ok(BigComplex::parse_decimal(prec, re, im)?)
}

fn tol_of(cli: &Cli, key: &str) -> Option<f64> {
    cli.tol.iter().rev().find(|(k, _)| k == key).map(|(_, v)| *v)
}

fn cplx_json(z: &BigComplex) -> serde_json::Value {
    serde_json::to_value(z).expect("serializable")
}

fn run(cli: &Cli, config: &serde_json::Value, prec_override: Option<u32>) -> Result<(), RunError> {
    std::fs::create_dir_all(&cli.output_dir)?;
    let out = cli.output_dir.as_path();
    match &cli.cmd {
        Cmd::Analyze { spec } => {
            let (sd, _) = load_spec(prec_override, spec)?;
            let payload = serde_json::to_value(&sd).expect("serializable");
            artifacts::write_json(out, "analyze.json", config, payload)?;
        }

        Cmd::Derive { spec, n } => {
            guard_n(cli, *n)?;
            let (sd, _) = load_spec(prec_override, spec)?;
            let seq = b_sequence(&sd, *n)?;
            let rows: Vec<serde_json::Value> = (0..=*n)
                .map(|k| {
                    serde_json::json!({
                        "n": k,
                        "deg": seq.degs[k],
                        "gamma": cplx_json(&seq.gamma[k]),
                        "coeffs": serde_json::to_value(&seq.b[k]).expect("serializable"),
                    })
                })
                .collect();
            artifacts::write_jsonl(out, "derive.jsonl", config, &rows)?;
        }

        Cmd::Zeros { spec, n } => {
            guard_n(cli, *n)?;
            let (sd, _) = load_spec(prec_override, spec)?;
            let seq = b_sequence(&sd, *n)?;
            let rs = find_roots(&seq.b[*n])?;
            let rows = zeros_csv_rows(&seq, *n, &rs);
            artifacts::write_csv(out, "zeros.csv", config, "n,re,im,multiplicity,residual", &rows)?;
        }

        Cmd::Voronoi { spec } => {
            let (sd, _) = load_spec(prec_override, spec)?;
            let diagram = build_diagram(&sd.site_locations())?;
            let lim = limit_measure(&sd, &diagram);
            let payload = serde_json::json!({
                "sites": sd.sites.iter().map(|s| serde_json::json!({
                    "location": cplx_json(&s.location),
                    "kind": format!("{:?}", s.kind),
                    "m": s.m,
                })).collect::<Vec<_>>(),
                "edges": diagram.edges.iter().enumerate().map(|(k, e)| serde_json::json!({
                    "i": e.i, "j": e.j,
                    "midpoint": cplx_json(&e.midpoint),
                    "direction": cplx_json(&e.direction),
                    "delta": e.delta,
                    "t_lo": clip_json(e.t_lo), "t_hi": clip_json(e.t_hi),
                    "mass": lim.edges[k].mass,
                })).collect::<Vec<_>>(),
                "atoms": lim.atoms,
                "total_finite_mass": lim.total,
                "point_at_infinity_mass": lim.point_at_infinity_mass,
                "d": sd.d, "kappa": sd.kappa, "h": sd.h,
            });
            artifacts::write_json(out, "voronoi.json", config, payload)?;
            if cli.svg {
                let frame = svg::Frame::around(
                    sd.sites.iter().map(|s| s.location.to_f64s()),
                    0.6,
                );
                let mut scene = svg::Scene::new(frame);
                scene.edges(&sd, &diagram);
                scene.sites(sd.sites.iter().map(|s| s.location.to_f64s()));
                artifacts::write_svg(out, "voronoi.svg", config, &scene.finish())?;
            }
        }

        Cmd::Predict { spec, site, z, n } => {
            guard_n(cli, *n)?;
            let (sd, prec) = load_spec(prec_override, spec)?;
            if *site >= sd.sites.len() {
                return Err(RunError::Config(format!(
                    "site index {site} out of range ({} sites)",
                    sd.sites.len()
                )));
            }
            let zp = parse_point(prec, z)?;
            let seq = b_sequence(&sd, *n)?;
            let class = asympt::classify(&sd, *site);
            let report = match class.kind {
                CellKind::Algebraic => asympt::darboux_predict(&seq, *site, &zp, *n)?,
                CellKind::Essential => asympt::wright_predict(&seq, *site, &zp, *n)?,
            };
            let payload = serde_json::to_value(&report).expect("serializable");
            artifacts::write_json(out, "predict.json", config, payload)?;
        }

        Cmd::L1rate { spec, site, rect, n_list, grid } => {
            let (sd, _) = load_spec(prec_override, spec)?;
            let parts: Vec<f64> = rect
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| RunError::Config(format!("bad rectangle: {e}")))?;
            if parts.len() != 4 {
                return Err(RunError::Config("rectangle must be x0,x1,y0,y1".into()));
            }
            let ns: Vec<usize> = n_list
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| RunError::Config(format!("bad n list: {e}")))?;
            let n_max = ns.iter().copied().max().unwrap_or(0);
            guard_n(cli, n_max)?;
            let seq = b_sequence(&sd, n_max)?;
            let rep = asympt::l1_rate_experiment(
                &seq,
                *site,
                Rectangle { x0: parts[0], x1: parts[1], y0: parts[2], y1: parts[3] },
                &ns,
                *grid,
            )?;
            let rows: Vec<String> = rep
                .rows
                .iter()
                .map(|(n, e)| format!("{n},{e:.12e}"))
                .collect();
            artifacts::write_csv(out, "l1rate.csv", config, "n,estimate", &rows)?;
            artifacts::write_json(
                out,
                "l1rate.json",
                config,
                serde_json::json!({
                    "rows": rep.rows,
                    "fitted_exponent": rep.fitted_exponent,
                    "grid": rep.grid,
                }),
            )?;
        }

        Cmd::Compare { spec, n } => {
            guard_n(cli, *n)?;
            let (sd, _) = load_spec(prec_override, spec)?;
            let seq = b_sequence(&sd, *n)?;
            let rs = find_roots(&seq.b[*n])?;
            let emp = empirical_measure(&rs, seq.degs[*n] as f64)?;
            let diagram = build_diagram(&sd.site_locations())?;
            let lim = limit_measure(&sd, &diagram);
            let opts = CompareOptions {
                atom_radius: tol_of(cli, "atom_radius"),
                corridor_width: tol_of(cli, "corridor_width"),
                n: *n,
            };
            let rep = compare_measures(&emp, &lim, &sd, &diagram, &opts);
            let payload = serde_json::json!({
                "n": n,
                "deg": seq.degs[*n],
                "report": serde_json::to_value(&rep).expect("serializable"),
                "total_finite_mass": lim.total,
            });
            artifacts::write_json(out, "compare.json", config, payload)?;
            if cli.svg {
                let frame = svg::Frame::around(
                    sd.sites
                        .iter()
                        .map(|s| s.location.to_f64s())
                        .chain(emp.atoms.iter().map(|(z, _)| z.to_f64s())),
                    0.15,
                );
                let mut scene = svg::Scene::new(frame);
                scene.edges(&sd, &diagram);
                scene.dots(emp.atoms.iter().map(|(z, _)| z.to_f64s()), "#1f4fa0", 2.0);
                scene.sites(sd.sites.iter().map(|s| s.location.to_f64s()));
                artifacts::write_svg(out, "compare.svg", config, &scene.finish())?;
            }
        }

        Cmd::Localmodel { alpha, m, n, lambda } => {
            guard_n(cli, *n)?;
            if *m == 0 {
                return Err(RunError::Config("m must be >= 1".into()));
            }
            let fam = localmodels::sheffer_seq(*alpha, *m, *n);
            let coeffs: Vec<String> = fam.polys[*n]
                .coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect();
            let (emp, rs) = localmodels::rescaled_empirical(*alpha, *m, *n)?;
            let ml = localmodels::micro_limit(*m, 20_000)?;
            let xs: Vec<f64> = emp.atoms.iter().map(|(z, _)| z.re().to_f64()).collect();
            let ks = localmodels::ks_statistic(&xs, |x| ml.cdf_at(x));
            let ks_mp = if *m == 1 {
                Some(localmodels::ks_statistic(&xs, localmodels::mp_cdf))
            } else {
                None
            };

            let mut payload = serde_json::json!({
                "alpha": alpha, "m": m, "n": n,
                "pi_n_coeffs": coeffs,
                "lc": fam.polys[*n].lc().map(|c| c.to_string()),
                "c_m": localmodels::c_m(*m).to_string(),
                "ks_against_mu_m": ks,
                "ks_against_mp": ks_mp,
                "zeros": rs.total_multiplicity(),
            });
            if let Some(lam_str) = lambda {
                let lam = parse_point(256, lam_str)?;
                let push = localmodels::pushforward_micro(&emp, *m, &lam);
                payload["pushforward_atoms"] = serde_json::Value::Array(
                    push.atoms
                        .iter()
                        .map(|(z, w)| serde_json::json!({ "z": cplx_json(z), "w": w }))
                        .collect(),
                );
            }
            artifacts::write_json(out, "localmodel.json", config, payload)?;

            let rows: Vec<String> = emp
                .atoms
                .iter()
                .map(|(z, w)| {
                    let (x, y) = z.to_f64s();
                    format!("{x:.17e},{y:.17e},{w:.17e}")
                })
                .collect();
            artifacts::write_csv(out, "localmodel_zeros.csv", config, "zeta_re,zeta_im,weight", &rows)?;

            if cli.svg {
                let cm: f64 = ml.c_m.to_f64();
                let dmax = ml
                    .samples
                    .iter()
                    .map(|(_, _, d)| *d)
                    .fold(0.0f64, f64::max)
                    .min(2.0);
                let frame = svg::Frame::around(
                    [(-0.1 * cm, -0.1 * dmax), (1.1 * cm, 1.1 * dmax)].into_iter(),
                    0.05,
                );
                let mut scene = svg::Scene::new(frame);
                let curve: Vec<(f64, f64)> = ml
                    .samples
                    .iter()
                    .rev()
                    .map(|(_, z, d)| (*z, d.min(2.0)))
                    .collect();
                scene.polyline(&curve, "#e2620f");
                scene.dots(xs.iter().map(|&x| (x, 0.0)), "#1f4fa0", 2.0);
                artifacts::write_svg(out, "localmodel.svg", config, &scene.finish())?;
            }
        }

        Cmd::Reconstruct { spec } => {
            let text = std::fs::read_to_string(spec)?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| RunError::Config(format!("bad JSON in {}: {e}", spec.display())))?;
            let prec = prec_override
                .or_else(|| value.get("precision_bits").and_then(|v| v.as_u64()).map(|v| v as u32))
                .unwrap_or(256);
            let num = poly_from_json(
                prec,
                value
                    .get("num")
                    .ok_or_else(|| RunError::Config("missing \"num\"".into()))?,
            )?;
            let den = poly_from_json(
                prec,
                value
                    .get("den")
                    .ok_or_else(|| RunError::Config("missing \"den\"".into()))?,
            )?;
            let r = RationalFunction::new(num, den)?.reduce()?;
            let (exponents, h) = hxz_core::hyperfunc::reconstruct_from_log_derivative(&r)?;
            let payload = serde_json::json!({
                "exponents": exponents.iter().map(|(a, k)| serde_json::json!({
                    "location": cplx_json(a),
                    "order": k,
                })).collect::<Vec<_>>(),
                "H": { "num": serde_json::to_value(&h.num).expect("serializable"),
                        "den": serde_json::to_value(&h.den).expect("serializable") },
            });
            artifacts::write_json(out, "reconstruct.json", config, payload)?;
        }
    }
    Ok(())
}

fn clip_json(t: f64) -> serde_json::Value {
    if t == f64::INFINITY {
        serde_json::Value::String("inf".into())
    } else if t == f64::NEG_INFINITY {
        serde_json::Value::String("-inf".into())
    } else {
        serde_json::json!(t)
    }
}

fn zeros_csv_rows(seq: &DerivSeq, n: usize, rs: &hxz_core::roots::RootSet) -> Vec<String> {
    let p = &seq.b[n];
    rs.roots
        .iter()
        .map(|(root, mult)| {
            let resid = hxz_core::roots::scaled_residual(p, root);
            let (x, y) = root.to_f64s();
            format!("{n},{x:.17e},{y:.17e},{mult},{resid:.3e}")
        })
        .collect()
}
