use magsat_core::oracle::{shoot_level, ShootingConfig};
use magsat_core::output::{csv_row, format_f64};
use magsat_core::potential::{emit_curve, CurveOptions};
use magsat_core::specfun::MAX_TRICOMI_ORDER;
use magsat_core::spectrum::{kp_solve, saturation_solve};
use magsat_core::validity::validity_report;
use magsat_core::{
    field_from, permittivity, Charge, FieldStrength, PermittivityModel, RangeFlag, SpectrumRequest,
    SpectrumRoot, ValidityReport,
};
use serde::{Deserialize, Serialize};

use crate::args::{
    FieldArgs, LevelArgs, OracleArgs, PermArgs, PotentialArgs, SaturationArgs, SpectrumArgs,
    ValidityArgs,
};
use crate::error::{CliError, CliResult};
use crate::settings::Settings;

/// What a subcommand produced, before formatting.
pub struct Report {
    pub csv: String,
    pub result: serde_json::Value,
    /// Human-readable summary for stderr.
    pub table: Option<String>,
    pub warnings: Vec<String>,
}

fn json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("output types serialize")
}

fn flag_name(flag: RangeFlag) -> &'static str {
    match flag {
        RangeFlag::BelowRange => "below_range",
        RangeFlag::InRange => "in_range",
        RangeFlag::AboveRange => "above_range",
    }
}

pub fn resolve_field(
    args: &FieldArgs,
    settings: &Settings,
    warnings: &mut Vec<String>,
) -> CliResult<FieldStrength> {
    if !(args.b > 0.0 && args.b.is_finite()) {
        return Err(CliError::Usage(format!(
            "--B must be positive, got {}",
            args.b
        )));
    }
    let field = field_from(args.b, args.unit, &settings.constants)?;
    if field.range_flag != RangeFlag::InRange {
        warnings.push(format!(
            "b = {} is outside the working range 1 <= b < 1e5 ({})",
            format_f64(field.b),
            flag_name(field.range_flag)
        ));
    }
    Ok(field)
}

pub fn check_m(m: u32) -> CliResult<()> {
    if m > MAX_TRICOMI_ORDER {
        return Err(CliError::Usage(format!(
            "|m| = {m} above the supported maximum {MAX_TRICOMI_ORDER}"
        )));
    }
    Ok(())
}

fn charge(z: u32) -> CliResult<Charge> {
    Ok(Charge::new(z)?)
}

fn request(field: FieldStrength, level: &LevelArgs, n_roots: usize) -> CliResult<SpectrumRequest> {
    check_m(level.m)?;
    Ok(SpectrumRequest::new(
        field,
        level.m,
        charge(level.z)?,
        level.model,
        n_roots,
    )?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PermOutput {
    pub b: f64,
    pub cal_b: f64,
    pub gauss: f64,
    pub range_flag: RangeFlag,
    pub model: PermittivityModel,
    pub eps_perp: f64,
    pub eps_par: f64,
}

pub fn perm(args: &PermArgs, settings: &Settings) -> CliResult<Report> {
    let mut warnings = Vec::new();
    let field = resolve_field(&args.field, settings, &mut warnings)?;
    let eps = permittivity(&field, args.model)?;
    let out = PermOutput {
        b: field.b,
        cal_b: field.cal_b,
        gauss: field.gauss,
        range_flag: field.range_flag,
        model: args.model,
        eps_perp: eps.eps_perp,
        eps_par: eps.eps_par,
    };
    let csv = format!(
        "b,cal_b,gauss,model,eps_perp,eps_par,range_flag\n{},{},{},{},{},{},{}\n",
        format_f64(out.b),
        format_f64(out.cal_b),
        format_f64(out.gauss),
        out.model,
        format_f64(out.eps_perp),
        format_f64(out.eps_par),
        flag_name(out.range_flag)
    );
    Ok(Report {
        csv,
        result: json(&out),
        table: None,
        warnings,
    })
}

pub fn potential(args: &PotentialArgs, settings: &Settings) -> CliResult<Report> {
    let mut warnings = Vec::new();
    let field = resolve_field(&args.field, settings, &mut warnings)?;
    check_m(args.level.m)?;
    if !(args.zeta_max > 0.0 && args.zeta_max.is_finite()) || args.points < 2 {
        return Err(CliError::Usage(
            "need --zeta-max > 0 and --points >= 2".into(),
        ));
    }
    let grid: Vec<f64> = (0..args.points)
        .map(|i| args.zeta_max * i as f64 / (args.points - 1) as f64)
        .collect();
    let options = CurveOptions {
        saturation: args.saturation,
        no_vp: args.no_vp,
    };
    let table = emit_curve(
        &field,
        args.level.m,
        charge(args.level.z)?,
        args.level.model,
        &grid,
        options,
    )?
    .to_units(settings.units);
    Ok(Report {
        csv: table.to_csv(),
        result: json(&table),
        table: None,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityOutput {
    pub cal_b: f64,
    pub b: f64,
    pub abs_m: u32,
    pub charge: Charge,
    pub model: PermittivityModel,
    pub report: ValidityReport,
}

pub fn validity(args: &ValidityArgs, settings: &Settings) -> CliResult<Report> {
    let mut warnings = Vec::new();
    let field = resolve_field(&args.field, settings, &mut warnings)?;
    check_m(args.level.m)?;
    if !(args.k > 0.0 && args.k.is_finite()) {
        return Err(CliError::Usage(format!(
            "--K must be positive, got {}",
            args.k
        )));
    }
    let z = charge(args.level.z)?;
    let report = validity_report(
        &field,
        args.level.m,
        z,
        args.k,
        args.level.model,
        &settings.thresholds,
    )?;
    let verdict = serde_json::to_value(report.verdict).expect("verdict serializes");
    let verdict = verdict.as_str().unwrap_or_default().to_string();
    let csv = format!(
        "cal_b,m,K,xi_min,xi_max,ratio_at_probe,adiabatic_param,probe_zeta,verdict\n{},{},{},{},{},{},{},{},{}\n",
        format_f64(field.cal_b),
        args.level.m,
        format_f64(args.k),
        format_f64(report.xi_min),
        format_f64(report.xi_max),
        format_f64(report.ratio_at_probe),
        format_f64(report.adiabatic_param),
        format_f64(report.probe_zeta),
        verdict
    );
    let table = format!(
        "calB = {:.4e}  |m| = {}  K = {}  model = {}\n  Xi over [0, K]      {:.4e} .. {:.4e}\n  R at zeta = {:<7} {:.6}\n  adiabatic param     {:.4e}\n  verdict             {}\n",
        field.cal_b,
        args.level.m,
        args.k,
        args.level.model,
        report.xi_min,
        report.xi_max,
        report.probe_zeta,
        report.ratio_at_probe,
        report.adiabatic_param,
        verdict
    );
    let out = ValidityOutput {
        cal_b: field.cal_b,
        b: field.b,
        abs_m: args.level.m,
        charge: z,
        model: args.level.model,
        report,
    };
    Ok(Report {
        csv,
        result: json(&out),
        table: Some(table),
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumOutput {
    pub cal_b: f64,
    pub b: f64,
    pub abs_m: u32,
    pub charge: Charge,
    pub model: PermittivityModel,
    pub eps_perp: f64,
    pub eps_par: f64,
    pub roots: Vec<SpectrumRoot>,
}

pub const SPECTRUM_HEADER: &str = "nu,omega,kappa,energy_ry,energy_ev,residual";

pub fn spectrum(args: &SpectrumArgs, settings: &Settings) -> CliResult<Report> {
    let mut warnings = Vec::new();
    let field = resolve_field(&args.field, settings, &mut warnings)?;
    if args.roots == 0 {
        return Err(CliError::Usage("--roots must be at least 1".into()));
    }
    let req = request(field, &args.level, args.roots)?;
    let eps = req.permittivities()?;
    let roots = kp_solve(&req)?;
    let mut csv = format!("{SPECTRUM_HEADER}\n");
    for r in &roots {
        csv.push_str(&format!(
            "{},{}\n",
            r.nu,
            csv_row(&[r.omega, r.kappa, r.energy_ry, r.energy_ev, r.residual])
        ));
    }
    let out = SpectrumOutput {
        cal_b: field.cal_b,
        b: field.b,
        abs_m: req.abs_m,
        charge: req.charge,
        model: req.model,
        eps_perp: eps.eps_perp,
        eps_par: eps.eps_par,
        roots,
    };
    Ok(Report {
        csv,
        result: json(&out),
        table: None,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaturationRow {
    pub m: u32,
    pub omega: f64,
    pub kappa: f64,
    pub energy_ry: f64,
    pub energy_kev: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaturationOutput {
    /// `None` for the infinite-field limit.
    pub cal_b: Option<f64>,
    pub charge: Charge,
    pub rows: Vec<SaturationRow>,
}

pub fn saturation(args: &SaturationArgs, settings: &Settings) -> CliResult<Report> {
    let z = charge(args.z)?;
    let cal_b = match args.b {
        Some(b) if !(b > 0.0 && b.is_finite()) => {
            return Err(CliError::Usage(format!("--B must be positive, got {b}")));
        }
        Some(b) => b,
        None => f64::INFINITY,
    };
    if args.m.is_empty() {
        return Err(CliError::Usage("--m needs at least one value".into()));
    }
    let mut rows = Vec::new();
    for &m in &args.m {
        check_m(m)?;
        let r = saturation_solve(m, z, cal_b, &settings.constants)?;
        rows.push(SaturationRow {
            m,
            omega: r.omega,
            kappa: r.kappa,
            energy_ry: r.energy_ry,
            energy_kev: r.energy_ev / 1e3,
            residual: r.residual,
        });
    }
    let mut csv = String::from("m,omega_sat,kappa,energy_ry,energy_kev,residual\n");
    let mut table = String::from("  |m|   omega_sat      E (keV)\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{}\n",
            r.m,
            csv_row(&[r.omega, r.kappa, r.energy_ry, r.energy_kev, r.residual])
        ));
        table.push_str(&format!(
            "  {:>3}   {:<12.5} {:.4}\n",
            r.m, r.omega, r.energy_kev
        ));
    }
    let out = SaturationOutput {
        cal_b: args.b,
        charge: z,
        rows,
    };
    Ok(Report {
        csv,
        result: json(&out),
        table: Some(table),
        warnings: Vec::new(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleOutput {
    pub cal_b: f64,
    pub abs_m: u32,
    pub charge: Charge,
    pub model: PermittivityModel,
    pub nu: u32,
    pub omega_kp: f64,
    pub omega_shooting: f64,
    pub rel_diff: f64,
    pub shooting_bracket: (f64, f64),
}

pub fn oracle(args: &OracleArgs, settings: &Settings) -> CliResult<Report> {
    let mut warnings = Vec::new();
    let field = resolve_field(&args.field, settings, &mut warnings)?;
    let req = request(field, &args.level, args.nu as usize + 1)?;
    let kp = kp_solve(&req)?[args.nu as usize];
    let cfg = ShootingConfig {
        xi_max: args.xi_max,
        step_tol: args.step_tol.unwrap_or(settings.step_tol),
        ..ShootingConfig::default()
    };
    let shot = shoot_level(&req, args.nu, &cfg)?;
    let rel = shot.omega / kp.omega - 1.0;
    let csv = format!(
        "nu,omega_kp,omega_shooting,rel_diff\n{},{}\n",
        args.nu,
        csv_row(&[kp.omega, shot.omega, rel])
    );
    let table = format!(
        "calB = {:.4e}  |m| = {}  nu = {}  model = {}\n  matched equation  {:.8}\n  shooting          {:.8}\n  relative diff     {:+.3e}\n",
        field.cal_b, args.level.m, args.nu, args.level.model, kp.omega, shot.omega, rel
    );
    let out = OracleOutput {
        cal_b: field.cal_b,
        abs_m: req.abs_m,
        charge: req.charge,
        model: req.model,
        nu: args.nu,
        omega_kp: kp.omega,
        omega_shooting: shot.omega,
        rel_diff: rel,
        shooting_bracket: shot.bracket,
    };
    Ok(Report {
        csv,
        result: json(&out),
        table: Some(table),
        warnings,
    })
}
