use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use phi4_standing::elliptic::{
    closed_form_from_nome, closed_form_params, d_sequence, solve_nome_with_terms, ClosedForm, ParamsRecord,
};
use phi4_standing::galerkin::{comparison_table, galerkin_solve_with, ComparisonTable, GalerkinConfig, SolveReport};
use phi4_standing::perturbation::{write_field_csv, AsymptoticSolution, BuildOptions};
use phi4_standing::Exec;
use serde::Serialize;

use crate::config::RunConfig;

/// Significant digits in the printed tables, as in the published layout.
pub const TABLE_DIGITS: usize = 12;

pub const GALERKIN_REPORT: &str = "galerkin-report.json";
pub const GALERKIN_TABLE_CSV: &str = "galerkin-table.csv";
pub const GALERKIN_TABLE_TXT: &str = "galerkin-table.txt";
pub const PARAMS_FILE: &str = "params.json";
pub const SOLUTION_FILE: &str = "solution.json";
pub const FIELD_FILE: &str = "field.csv";

pub fn write_artifact(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
    eprintln!("wrote {}", path.display());
    Ok(path)
}

fn solve_with_table(cfg: &RunConfig) -> Result<(SolveReport, ComparisonTable)> {
    let gc = GalerkinConfig {
        root_pick: cfg.root_pick,
        ..GalerkinConfig::new(cfg.n, cfg.delta.clone())
    };
    let report = galerkin_solve_with(&gc)?;
    eprintln!(
        "galerkin: N = {}, {} sweeps, max solved |R| = {}, max tail |R| = {}",
        cfg.n,
        report.iterations,
        report.max_solved_residual().to_sci(3),
        report.max_tail_residual().to_sci(3)
    );
    // closed-form column over the same harmonics as the unknowns' cube
    let q = closed_form_params(cfg.precision)?.params.q;
    let d = d_sequence(&q, 3 * cfg.n - 1)?;
    let table = comparison_table(&report, &d)?;
    Ok((report, table))
}

pub fn galerkin(cfg: &RunConfig) -> Result<()> {
    let (report, table) = solve_with_table(cfg)?;
    let text = table.render(TABLE_DIGITS);
    let mut csv = Vec::new();
    table.write_csv(&mut csv, TABLE_DIGITS)?;
    write_artifact(&cfg.output_dir, GALERKIN_REPORT, report.to_json()?.as_bytes())?;
    write_artifact(&cfg.output_dir, GALERKIN_TABLE_CSV, &csv)?;
    write_artifact(&cfg.output_dir, GALERKIN_TABLE_TXT, text.as_bytes())?;
    print!("{text}");
    Ok(())
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum TableFormat {
    Csv,
    Text,
}

/// Table only, to stdout; nothing is written to disk.
pub fn export_table(cfg: &RunConfig, format: TableFormat) -> Result<()> {
    let (_, table) = solve_with_table(cfg)?;
    let stdout = std::io::stdout();
    match format {
        TableFormat::Csv => table.write_csv(stdout.lock(), TABLE_DIGITS)?,
        TableFormat::Text => stdout.lock().write_all(table.render(TABLE_DIGITS).as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct ParamsSidecar {
    precision_digits: u32,
    series_terms: Option<usize>,
    params: ParamsRecord,
    nome_residual: String,
    omega1_coeff: String,
    omega2_coeff: String,
    amplitude_ratio: String,
    sum_f_squared: String,
    sum_f_squared_target: String,
}

pub fn solve_nome(cfg: &RunConfig, series_terms: Option<usize>) -> Result<()> {
    let p = cfg.precision;
    let cf: ClosedForm = match series_terms {
        None => closed_form_params(p)?,
        Some(t) => closed_form_from_nome(solve_nome_with_terms(p, &p.epsilon(5), Some(t))?)?,
    };
    let digits = p.digits() as usize;
    let pr = &cf.params;
    let rows = [
        ("q", &pr.q),
        ("k", &pr.k),
        ("kprime", &pr.kprime),
        ("K", &pr.big_k),
        ("Kprime", &pr.big_kprime),
        ("gamma", &pr.gamma),
        ("alpha", &pr.alpha),
        ("omega1_coeff", &cf.omega1_coeff),
        ("omega2_coeff", &cf.omega2_coeff),
        ("amplitude_ratio", &cf.amplitude_ratio),
        ("sum_f_squared", &cf.sum_f_squared),
        ("sum_f_squared_target", &cf.sum_f_squared_target),
    ];
    let mut out = String::new();
    for (name, v) in rows {
        out.push_str(&format!("{name} = {}\n", v.to_sci(digits)));
    }
    out.push_str(&format!("sum_f_squared_defect = {}\n", cf.sum_f_squared_defect().to_sci(3)));
    out.push_str(&format!("nome_residual = {}\n", cf.nome.residual.abs().to_sci(3)));

    let sidecar = ParamsSidecar {
        precision_digits: p.digits(),
        series_terms,
        params: pr.to_record(),
        nome_residual: cf.nome.residual.to_decimal(),
        omega1_coeff: cf.omega1_coeff.to_decimal(),
        omega2_coeff: cf.omega2_coeff.to_decimal(),
        amplitude_ratio: cf.amplitude_ratio.to_decimal(),
        sum_f_squared: cf.sum_f_squared.to_decimal(),
        sum_f_squared_target: cf.sum_f_squared_target.to_decimal(),
    };
    write_artifact(&cfg.output_dir, PARAMS_FILE, serde_json::to_string_pretty(&sidecar)?.as_bytes())?;
    print!("{out}");
    Ok(())
}

pub fn build(cfg: &RunConfig, field_grid: Option<(usize, usize)>) -> Result<()> {
    let params = closed_form_params(cfg.precision)?.params;
    let opts = BuildOptions {
        modes: cfg.phi0_modes,
        cap: cfg.harmonic_cap,
        exec: Exec::default(),
    };
    let sol = AsymptoticSolution::build_with(&params, &cfg.amplitude, &cfg.epsilon, opts)?;
    write_artifact(&cfg.output_dir, SOLUTION_FILE, sol.to_json()?.as_bytes())?;
    if let Some((nx, nt)) = field_grid {
        let mut buf = Vec::new();
        write_field_csv(&sol, &mut buf, nx, nt, TABLE_DIGITS)?;
        write_artifact(&cfg.output_dir, FIELD_FILE, &buf)?;
    }
    let digits = cfg.precision.digits() as usize;
    println!("amplitude = {}", sol.amplitude.to_sci(digits));
    println!("epsilon = {}", sol.epsilon.to_sci(digits));
    println!("omega1 = {}", sol.omega1.to_sci(digits));
    println!("omega2 = {}", sol.omega2.to_sci(digits));
    println!("omega = {}", sol.omega().to_sci(digits));
    Ok(())
}

/// `NXxNT`, e.g. `64x32`.
pub fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NXxNT, got {s:?}"))?;
    let nx: usize = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let nt: usize = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if nx == 0 || nt == 0 {
        return Err("grid dimensions must be positive".into());
    }
    Ok((nx, nt))
}
