//! The five subcommands. Each returns the rendered document and an exit code.

use std::path::PathBuf;
use std::sync::Arc;

use serde_json::{json, Value};

use canon4::canonize::{canonize_transform, CanonicalReport, Convention, ScaleConstants};
use canon4::catalog;
use canon4::geomfun::{basic_system_residual_jets, sample_functions, FUNCTION_NAMES};
use canon4::lattice::{Lattice, Rect};
use canon4::reconstruct::{align_rigid, reconstruct, DeterminingData, ReconstructOptions};
use canon4::surface::{fundamental_forms, invariants, is_principal, par_nodes, Chart, Surface};
use canon4::tolerance::Tolerances;
use canon4::{Error, Result, Vec4};

use crate::defs::{DataDefinition, SurfaceDefinition, SCHEMA};
use crate::output::{json_f64, render_report, Format, GridOutput};

/// Rendered output and process exit code.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ConventionArg {
    Separate,
    Coupled,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Separate => Convention::Separate,
            ConventionArg::Coupled => Convention::Coupled,
        }
    }
}

/// Options shared by the commands that read a surface or data.
#[derive(Clone, Debug, Default)]
pub struct SourceOpts {
    pub surface: Option<PathBuf>,
    pub catalog: Option<String>,
    pub data: Option<PathBuf>,
    pub grid: Option<(usize, usize)>,
    pub bounds: Option<Rect<f64>>,
    pub base: Option<(f64, f64)>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub c: Option<f64>,
    pub normalize: bool,
    pub force: bool,
    pub perturb: Vec<(String, f64)>,
    pub convention: Option<Convention>,
}

pub fn parse_grid(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidInput(format!("grid `{s}` is not NUxNV"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let (nu, nv) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if nu == 0 || nv == 0 {
        return Err(bad());
    }
    Ok((nu, nv))
}

pub fn parse_reals<const N: usize>(s: &str, what: &str) -> Result<[f64; N]> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidInput(format!("{what} `{s}` is not a list of numbers")))?;
    v.try_into().map_err(|_| Error::InvalidInput(format!("{what} needs {N} comma-separated numbers")))
}

pub fn parse_assignment(s: &str) -> Result<(String, f64)> {
    let (k, v) = s.split_once('=').ok_or_else(|| Error::InvalidInput(format!("`{s}` is not NAME=VALUE")))?;
    let v: f64 = v.trim().parse().map_err(|_| Error::InvalidInput(format!("`{v}` is not a number")))?;
    Ok((k.trim().to_string(), v))
}

pub fn tolerances(overrides: &[String]) -> Result<Tolerances> {
    let mut t = Tolerances::default();
    for o in overrides {
        let (k, v) = parse_assignment(o)?;
        t.set(&k, v)?;
    }
    Ok(t)
}

impl SourceOpts {
    fn surface_definition(&self) -> Result<SurfaceDefinition> {
        match (&self.surface, &self.catalog) {
            (Some(p), None) => SurfaceDefinition::load(p),
            (None, Some(n)) => Ok(SurfaceDefinition::from_catalog(catalog::surface(n)?)),
            _ => Err(Error::InvalidInput("give exactly one of --surface FILE or --catalog NAME".into())),
        }
    }

    fn lattice(&self, def: &SurfaceDefinition) -> Result<Lattice<f64>> {
        let (nu, nv) = self.grid.unwrap_or((21, 21));
        let b = self.bounds.unwrap_or(def.bounds());
        b.validate()?;
        Lattice::new(nu, nv, b)
    }

    fn base_of(&self, def: &SurfaceDefinition) -> (f64, f64) {
        self.base.unwrap_or((def.base_point[0], def.base_point[1]))
    }

    fn no_perturb(&self, cmd: &str) -> Result<()> {
        if self.perturb.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("--perturb is not supported by {cmd}")))
        }
    }
}

fn lattice_json(l: &Lattice<f64>) -> Value {
    let b = l.bounds;
    json!({"nu": l.nu, "nv": l.nv, "bounds": [b.u_min, b.u_max, b.v_min, b.v_max]})
}

fn push_vec4(g: &mut GridOutput, prefix: &str, v: &[Vec4<f64>]) {
    for a in 0..4 {
        g.push(&format!("{prefix}{}", a + 1), v.iter().map(|p| p[a]).collect());
    }
}

fn push_uv(g: &mut GridOutput, l: &Lattice<f64>) {
    let pts = l.points();
    g.push("u", pts.iter().map(|p| p.0).collect());
    g.push("v", pts.iter().map(|p| p.1).collect());
}

pub fn invariants_cmd(src: &SourceOpts, tol: &Tolerances, format: Format) -> Result<Outcome> {
    src.no_perturb("invariants")?;
    let def = src.surface_definition()?;
    let chart = def.chart()?;
    let lattice = src.lattice(&def)?;
    let rows = par_nodes(&lattice, |u, v| {
        let f = fundamental_forms(&chart, u, v, tol)?;
        let i = invariants(&f);
        Ok((chart.eval(u, v)?, [f.e, f.f, f.g, f.l, f.m, f.n, i.k, i.varkappa, i.gauss, i.h_norm]))
    })?;
    let principal = is_principal(&chart, &lattice, tol)?;
    let mut g = GridOutput::new("invariants", &lattice);
    push_uv(&mut g, &lattice);
    push_vec4(&mut g, "z", &rows.iter().map(|r| r.0).collect::<Vec<_>>());
    for (k, name) in ["E", "F", "G", "L", "M", "N", "k", "varkappa", "K", "H_norm"].iter().enumerate() {
        g.push(name, rows.iter().map(|r| r.1[k]).collect());
    }
    let mut minimal = 0;
    let mut with_functions = false;
    if principal.principal {
        let gf = sample_functions(&chart, &lattice, tol)?;
        minimal = gf.iter().filter(|x| x.is_none()).count();
        if minimal == 0 {
            with_functions = true;
            for (k, name) in FUNCTION_NAMES.iter().enumerate() {
                g.push(name, gf.iter().map(|x| x.as_ref().map_or(f64::NAN, |f| f.eight()[k].re)).collect());
            }
        }
    }
    g.meta = json!({
        "surface": def.name,
        "principal": principal.principal,
        "principal_residual": json_f64(principal.max_residual),
        "geometric_functions": with_functions,
        "minimal_nodes": minimal,
    });
    Ok(Outcome { text: g.render(format), code: 0 })
}

pub fn check_cmd(src: &SourceOpts, tol: &Tolerances, format: Format) -> Result<Outcome> {
    let def = src.surface_definition()?;
    let chart = def.chart()?;
    let lattice = src.lattice(&def)?;
    let mut gf = sample_functions(&chart, &lattice, tol)?;
    for (name, factor) in &src.perturb {
        for g in gf.iter_mut().flatten() {
            *g = g.perturbed(name, *factor)?;
        }
    }
    let res = basic_system_residual_jets(&gf);
    let live: Vec<_> = res.iter().flatten().collect();
    let mut max = [0.0f64; 6];
    let mut mean = [0.0f64; 6];
    for r in &live {
        for k in 0..6 {
            max[k] = max[k].max(r.r[k].abs());
            mean[k] += r.r[k].abs() / live.len() as f64;
        }
    }
    let worst = max.iter().cloned().fold(0.0, f64::max);
    let passed = !live.is_empty() && worst < tol.tol_system;
    let report = json!({
        "schema": SCHEMA,
        "command": "check",
        "surface": def.name,
        "lattice": lattice_json(&lattice),
        "perturb": src.perturb.iter().map(|(k, v)| json!({"field": k, "factor": v})).collect::<Vec<_>>(),
        "max": max.map(json_f64),
        "mean": mean.map(json_f64),
        "max_residual": json_f64(worst),
        "tolerance": tol.tol_system,
        "masked_nodes": res.len() - live.len(),
        "passed": passed,
    });
    Ok(Outcome { text: render_report(&report, format), code: if passed { 0 } else { 1 } })
}

fn report_json(r: &CanonicalReport<f64>) -> Value {
    json!({
        "is_canonical": r.is_canonical,
        "max_deviation": json_f64(r.max_deviation),
        "phi_spread": json_f64(r.phi_spread),
        "psi_spread": json_f64(r.psi_spread),
        "c1": json_f64(r.c1),
        "c2": json_f64(r.c2),
        "base_point": [r.base_point.0, r.base_point.1],
        "convention": format!("{:?}", r.convention).to_lowercase(),
        "u_samples": r.u_samples.iter().map(|&x| json_f64(x)).collect::<Vec<_>>(),
        "phi": r.phi.iter().map(|&x| json_f64(x)).collect::<Vec<_>>(),
        "v_samples": r.v_samples.iter().map(|&x| json_f64(x)).collect::<Vec<_>>(),
        "psi": r.psi.iter().map(|&x| json_f64(x)).collect::<Vec<_>>(),
    })
}

pub fn canonize_cmd(src: &SourceOpts, tol: &Tolerances, format: Format) -> Result<Outcome> {
    src.no_perturb("canonize")?;
    let def = src.surface_definition()?;
    let chart = Arc::new(def.chart()?);
    let lattice = src.lattice(&def)?;
    let base = src.base_of(&def);
    let constants = if src.normalize {
        ScaleConstants::NormalizeAtBase
    } else {
        ScaleConstants::Fixed { c1: src.c1.unwrap_or(def.c1), c2: src.c2.unwrap_or(def.c2) }
    };
    let convention = src.convention.unwrap_or_default();
    let c = canonize_transform(chart.clone(), &lattice, base, constants, convention, tol)?;
    let new = c.lattice;
    let pts = new.points();
    let us: Vec<f64> = (0..new.nu).map(|i| c.chart.u_map.inverse(new.u(i))).collect::<Result<_>>()?;
    let vs: Vec<f64> = (0..new.nv).map(|j| c.chart.v_map.inverse(new.v(j))).collect::<Result<_>>()?;
    let orig: Vec<(f64, f64)> = pts.iter().enumerate().map(|(k, _)| (us[k % new.nu], vs[k / new.nu])).collect();
    let z: Vec<Vec4<f64>> = orig.iter().map(|&(u, v)| chart.eval(u, v)).collect::<Result<_>>()?;
    let mut g = GridOutput::new("canonize", &new);
    push_uv(&mut g, &new);
    g.push("u_orig", orig.iter().map(|p| p.0).collect());
    g.push("v_orig", orig.iter().map(|p| p.1).collect());
    push_vec4(&mut g, "z", &z);
    let (lo_u, hi_u) = c.chart.u_map.range();
    let (lo_v, hi_v) = c.chart.v_map.range();
    let identity = pts.iter().zip(&orig).fold(0.0f64, |m, (a, b)| m.max((a.0 - b.0).abs()).max((a.1 - b.1).abs()));
    g.meta = json!({
        "surface": def.name,
        "input_lattice": lattice_json(&lattice),
        "image": [lo_u, hi_u, lo_v, hi_v],
        "max_map_displacement": json_f64(identity),
        "before": report_json(&c.before),
        "after": report_json(&c.after),
    });
    Ok(Outcome { text: g.render(format), code: if c.after.is_canonical { 0 } else { 1 } })
}

fn determining_data(src: &SourceOpts, tol: &Tolerances) -> Result<(DeterminingData<f64>, DataDefinition)> {
    let from_surface = |def: SurfaceDefinition| -> Result<(DeterminingData<f64>, DataDefinition)> {
        let chart: Arc<Chart<f64>> = Arc::new(def.chart()?);
        let (nu, nv) = src.grid.unwrap_or((41, 41));
        let lattice = Lattice::new(nu, nv, src.bounds.unwrap_or(def.bounds()))?;
        let base = src.base_of(&def);
        let d = DeterminingData::from_surface(chart, lattice, base, tol)?;
        let stub = DataDefinition::from_catalog(&catalog::DATA[0]);
        Ok((d, DataDefinition { name: def.name, initial: None, ..stub }))
    };
    let (mut data, def) = match (&src.data, &src.surface, &src.catalog) {
        (Some(p), None, None) => {
            let def = DataDefinition::load(p)?;
            (def.data(src.grid, src.bounds)?, def)
        }
        (None, None, Some(name)) => match catalog::data(name) {
            Ok(entry) => {
                let def = DataDefinition::from_catalog(entry);
                (def.data(src.grid, src.bounds)?, def)
            }
            Err(_) => from_surface(SurfaceDefinition::from_catalog(catalog::surface(name)?))?,
        },
        (None, Some(p), None) => from_surface(SurfaceDefinition::load(p)?)?,
        _ => return Err(Error::InvalidInput("give exactly one of --data FILE, --surface FILE or --catalog NAME".into())),
    };
    if let Some(b) = src.base {
        data.base = b;
    }
    if let Some(c1) = src.c1 {
        data.c1 = c1;
    }
    if let Some(c2) = src.c2 {
        data.c2 = c2;
    }
    if src.c.is_some() {
        data.c = src.c;
    }
    if let Some(conv) = src.convention {
        data.convention = conv;
    }
    for (name, factor) in &src.perturb {
        let k = ["nu1", "nu2", "lambda", "mu"]
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::InvalidInput(format!("cannot perturb `{name}`; use nu1, nu2, lambda or mu")))?;
        data = data.scaled_field(k, *factor);
    }
    Ok((data, def))
}

pub fn reconstruct_cmd(src: &SourceOpts, tol: &Tolerances, format: Format) -> Result<Outcome> {
    let (data, def) = determining_data(src, tol)?;
    let opts = ReconstructOptions { initial: def.initial_frame()?, force: src.force };
    let r = reconstruct(&data, &opts, tol)?;
    let l = r.grid.lattice;
    let mut g = GridOutput::new("reconstruct", &l);
    push_uv(&mut g, &l);
    push_vec4(&mut g, "z", &r.grid.positions);
    for (name, pick) in [("x", 0usize), ("y", 1), ("b", 2), ("l", 3)] {
        let rows: Vec<Vec4<f64>> = r.grid.frames.iter().map(|f| f.rows()[pick]).collect();
        push_vec4(&mut g, name, &rows);
    }
    g.push("phi", r.grid.phi.clone());
    g.push("psi", r.grid.psi.clone());
    g.push("beta1", r.grid.beta1.clone());
    g.push("beta2", r.grid.beta2.clone());
    g.push("compat_r1", r.compat.r1.clone());
    g.push("compat_r2", r.compat.r2.clone());
    let v = r.valid_region;
    g.meta = json!({
        "data": def.name,
        "base_point": [data.base.0, data.base.1],
        "c1": data.c1,
        "c2": data.c2,
        "c": data.ratio(),
        "compat_max": json_f64(r.compat_max),
        "pde_residual": json_f64(r.pde_residual),
        "commutation": json_f64(r.grid.commutation),
        "max_projection": json_f64(r.grid.max_projection),
        "max_gram_deviation": json_f64(r.grid.max_gram_deviation),
        "forced": r.forced,
        "valid_region": {
            "i": [v.i.0, v.i.1],
            "j": [v.j.0, v.j.1],
            "bounds": [v.bounds.u_min, v.bounds.u_max, v.bounds.v_min, v.bounds.v_max],
            "full": v.full,
        },
    });
    Ok(Outcome { text: g.render(format), code: 0 })
}

fn positions(g: &GridOutput, path: &std::path::Path) -> Result<Vec<Vec4<f64>>> {
    let cols: Vec<&[f64]> = ["z1", "z2", "z3", "z4"]
        .iter()
        .map(|n| g.column(n).ok_or_else(|| Error::InvalidInput(format!("{}: missing column {n}", path.display()))))
        .collect::<Result<_>>()?;
    Ok((0..cols[0].len()).map(|k| Vec4::new(cols[0][k], cols[1][k], cols[2][k], cols[3][k])).collect())
}

pub fn compare_cmd(a: &std::path::Path, b: &std::path::Path, format: Format) -> Result<Outcome> {
    let (ga, gb) = (GridOutput::read(a)?, GridOutput::read(b)?);
    if (ga.lattice.nu, ga.lattice.nv) != (gb.lattice.nu, gb.lattice.nv) {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} against {}x{}",
            ga.lattice.nu, ga.lattice.nv, gb.lattice.nu, gb.lattice.nv
        )));
    }
    let m = align_rigid(&positions(&ga, a)?, &positions(&gb, b)?)?;
    let report = json!({
        "schema": SCHEMA,
        "command": "compare",
        "q": m.q.map(|r| r.map(json_f64)),
        "t": m.t.0.map(json_f64),
        "rms": json_f64(m.rms),
        "det": json_f64(m.det),
        "reflection": m.reflection,
        "points": ga.column("z1").map_or(0, |c| c.len()),
    });
    Ok(Outcome { text: render_report(&report, format), code: 0 })
}
