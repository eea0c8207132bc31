//! Figure data. Each figure writes one or more CSV files plus
//! `figN_manifest.json` into the output directory.
//!
//! 1. Condensation of the `m = 0` potentials onto the saturation curve, and
//!    the `|m|` dependence at `𝓑 = 1e8` with saturation, unscreened and
//!    Coulomb curves.
//! 2. Right-hand side of the spectrum equation against `ω`, with the
//!    `ln 𝓑` levels it is matched to.
//! 3. Deepest binding `ω²` (Rydberg) against `𝓑`, screened and unscreened.
//! 4. As 3, plus the saturation asymptotes.

use std::path::{Path, PathBuf};

use magsat_core::output::{csv_row, format_f64};
use magsat_core::potential::{coulomb_asymptote, LllPotential};
use magsat_core::spectrum::{kp_rhs, kp_solve, saturation_solve};
use magsat_core::{
    field_from, permittivity, Charge, FieldUnit, PermittivityModel, SpectrumRequest,
};
use serde::{Deserialize, Serialize};

use crate::args::FiguresArgs;
use crate::emit::{to_json, write_atomic, RunManifest};
use crate::error::{CliError, CliResult};
use crate::settings::Settings;

pub const FIG1_FIELDS: [f64; 4] = [1e5, 1e6, 1e7, 1e8];
pub const FIG1_M_FIELD: f64 = 1e8;
pub const FIG1_ZETA_MAX: f64 = 1.0;
pub const FIG2_FIELDS: [f64; 2] = [1e5, 1e9];
pub const FIG2_M: [u32; 2] = [0, 3];
pub const FIG2_OMEGA: (f64, f64) = (0.05, 15.0);
pub const FIG3_FIELDS: (f64, f64) = (1e5, 1e10);

const H: Charge = Charge::HYDROGEN;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiguresOutput {
    pub which: u8,
    pub dir: PathBuf,
    pub files: Vec<String>,
}

fn field_label(cal_b: f64) -> String {
    format!("{cal_b:e}")
}

struct Writer<'a> {
    dir: &'a Path,
    files: Vec<String>,
}

impl Writer<'_> {
    fn write(&mut self, name: String, contents: &str) -> CliResult<()> {
        write_atomic(&self.dir.join(&name), contents)?;
        self.files.push(name);
        Ok(())
    }
}

fn table(header: &[String], rows: &[Vec<f64>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&csv_row(r));
        s.push('\n');
    }
    s
}

pub fn run(
    args: &FiguresArgs,
    dir: &Path,
    settings: &Settings,
    manifest: &RunManifest,
) -> CliResult<FiguresOutput> {
    if args.b.iter().any(|b| !(*b > 0.0 && b.is_finite())) {
        return Err(CliError::Usage("--B values must be positive".into()));
    }
    if matches!(args.points, Some(p) if p < 2) {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut w = Writer {
        dir,
        files: Vec::new(),
    };
    match args.which {
        1 => figure1(args, settings, &mut w)?,
        2 => figure2(args, settings, &mut w)?,
        3 | 4 => figure3(args, settings, &mut w, args.which == 4)?,
        n => return Err(CliError::Usage(format!("no figure {n}"))),
    }
    w.write(
        format!("fig{}_manifest.json", args.which),
        &to_json(manifest),
    )?;
    Ok(FiguresOutput {
        which: args.which,
        dir: dir.to_path_buf(),
        files: w.files,
    })
}

fn figure1(args: &FiguresArgs, settings: &Settings, w: &mut Writer) -> CliResult<()> {
    let c = &settings.constants;
    let units = settings.units;
    let k = units.factor(c.alpha);
    let u = if k == 1.0 { "mc2" } else { "ry" };
    let n = args.points.unwrap_or(401);
    let grid: Vec<f64> = (0..n)
        .map(|i| FIG1_ZETA_MAX * i as f64 / (n - 1) as f64)
        .collect();
    let fields = if args.b.is_empty() {
        FIG1_FIELDS.to_vec()
    } else {
        args.b.clone()
    };

    let mut pots = Vec::new();
    let mut header = vec!["zeta".to_string()];
    for &cb in &fields {
        let f = field_from(cb, FieldUnit::CalB, c)?;
        let eps = permittivity(&f, PermittivityModel::Full)?;
        pots.push(LllPotential::new(0, &f, &eps, H)?);
        header.push(format!("U_calB_{}_{u}", field_label(cb)));
    }
    pots.push(LllPotential::saturation(0, H, c)?);
    header.push(format!("U_sat_{u}"));
    let rows: Vec<Vec<f64>> = grid
        .iter()
        .map(|&z| {
            std::iter::once(z)
                .chain(pots.iter().map(|p| p.eval(z) * k))
                .collect()
        })
        .collect();
    w.write("fig1_condensation.csv".into(), &table(&header, &rows))?;

    let f = field_from(FIG1_M_FIELD, FieldUnit::CalB, c)?;
    let eps = permittivity(&f, PermittivityModel::Full)?;
    let mut header = vec!["zeta".to_string()];
    let mut pots = Vec::new();
    for (tag, make) in [("", 0), ("sat_", 1), ("novp_", 2)] {
        for m in 0..=3 {
            pots.push(match make {
                0 => LllPotential::new(m, &f, &eps, H)?,
                1 => LllPotential::saturation(m, H, c)?,
                _ => LllPotential::new(m, &f, &magsat_core::Permittivities::UNITY, H)?,
            });
            header.push(format!("U_{tag}m{m}_{u}"));
        }
    }
    header.push(format!("U_coulomb_{u}"));
    let mut rows = Vec::new();
    for &z in &grid {
        let mut row = vec![z];
        row.extend(pots.iter().map(|p| p.eval(z) * k));
        // The Coulomb tail diverges at the origin.
        let coulomb = if z == 0.0 {
            f64::NEG_INFINITY
        } else {
            coulomb_asymptote(z, &eps, H, c)?
        };
        row.push(coulomb * k);
        rows.push(row);
    }
    w.write(
        format!("fig1_m_dependence_calB_{}.csv", field_label(FIG1_M_FIELD)),
        &table(&header, &rows),
    )?;
    Ok(())
}

fn figure2(args: &FiguresArgs, settings: &Settings, w: &mut Writer) -> CliResult<()> {
    let c = &settings.constants;
    let fields = if args.b.is_empty() {
        FIG2_FIELDS.to_vec()
    } else {
        args.b.clone()
    };
    let n = args.points.unwrap_or(2000);
    let (lo, hi) = FIG2_OMEGA;
    let grid: Vec<f64> = (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect();
    let mut levels = String::from("cal_b,ln_cal_b\n");
    for &cb in &fields {
        let f = field_from(cb, FieldUnit::CalB, c)?;
        levels.push_str(&format!("{},{}\n", format_f64(cb), format_f64(cb.ln())));
        for m in FIG2_M {
            let req = SpectrumRequest::new(f, m, H, PermittivityModel::Full, 1)?;
            let mut s = String::from("omega,rhs\n");
            for &om in &grid {
                // Points landing on a digamma pole are skipped.
                if let Ok(v) = kp_rhs(om, &req) {
                    s.push_str(&csv_row(&[om, v]));
                    s.push('\n');
                }
            }
            w.write(format!("fig2_rhs_calB_{}_m{m}.csv", field_label(cb)), &s)?;
        }
    }
    w.write("fig2_levels.csv".into(), &levels)?;
    Ok(())
}

fn figure3(
    args: &FiguresArgs,
    settings: &Settings,
    w: &mut Writer,
    asymptotes: bool,
) -> CliResult<()> {
    let c = &settings.constants;
    let n = args.points.unwrap_or(51);
    let fields: Vec<f64> = if args.b.is_empty() {
        let (a, b) = (FIG3_FIELDS.0.log10(), FIG3_FIELDS.1.log10());
        (0..n)
            .map(|i| 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64))
            .collect()
    } else {
        args.b.clone()
    };
    let mut header = vec!["cal_b".to_string()];
    for model in [PermittivityModel::Full, PermittivityModel::Unity] {
        for m in 0..=3 {
            header.push(format!("omega2_{model}_m{m}"));
        }
    }
    let mut rows = Vec::new();
    for &cb in &fields {
        let f = field_from(cb, FieldUnit::CalB, c)?;
        let mut row = vec![cb];
        for model in [PermittivityModel::Full, PermittivityModel::Unity] {
            for m in 0..=3 {
                let req = SpectrumRequest::new(f, m, H, model, 1)?;
                let w0 = kp_solve(&req)?[0].omega;
                row.push(w0 * w0);
            }
        }
        rows.push(row);
    }
    let tag = if asymptotes { 4 } else { 3 };
    w.write(
        format!("fig{tag}_deepest_levels.csv"),
        &table(&header, &rows),
    )?;
    if asymptotes {
        let mut s = String::from("m,omega_sat,omega2_sat\n");
        for m in 0..=3 {
            let r = saturation_solve(m, H, f64::INFINITY, c)?;
            s.push_str(&format!("{m},{}\n", csv_row(&[r.omega, r.omega * r.omega])));
        }
        w.write("fig4_saturation.csv".into(), &s)?;
    }
    Ok(())
}
