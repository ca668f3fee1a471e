use std::f64::consts::PI;
use std::path::PathBuf;

use num_complex::Complex64;

use super::config::{RunConfig, FIGURE_TRUNCATION};
use super::output::{write_atomic, Table};
use super::verify::{run_suite, Fault, VerifyReport};
use crate::coherent::{build_cs, energy_moments, evolve, xp_uncertainty, CoherentState, EvolvedState};
use crate::oscillator::Eigenstate;
use crate::Result;

/// Density at either end of a figure grid above which a warning is printed.
pub const EDGE_DENSITY_WARN: f64 = 1e-6;

/// Extra basis states beyond the truncation used for uncertainty matrices.
const UNCERTAINTY_PADDING: usize = 8;

/// Times of the second figure: 0 to 4π/ω₀ in 65 steps.
const FIG2_TIME_STEPS: usize = 64;

fn build(config: &RunConfig, alpha: Complex64, figure: bool) -> Result<CoherentState> {
    let params = config.physical_params()?;
    let profile = config.deformation()?;
    let cs = if figure {
        CoherentState::with_truncation(alpha, &params, &profile, FIGURE_TRUNCATION)?
    } else {
        let cs = build_cs(alpha, &params, &profile, config.truncation.tol)?;
        if cs.n_trunc() > config.truncation.cap {
            return Err(crate::Error::CapExceeded { what: "coherent-state truncation".into(), limit: config.truncation.cap });
        }
        cs
    };
    if let Some(w) = cs.truncation_warning() {
        eprintln!("warning: {w}");
    }
    Ok(cs)
}

fn edge_warning(label: &str, rho: &[f64]) {
    let edge = rho.first().copied().unwrap_or(0.0).max(rho.last().copied().unwrap_or(0.0));
    if edge > EDGE_DENSITY_WARN {
        eprintln!("warning: {label}: density {edge:.3e} at the grid edge exceeds {EDGE_DENSITY_WARN:e}");
    }
}

/// Eigenfunctions ψₙ(x) and densities on the verification grid.
pub fn cmd_eigen(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let params = config.physical_params()?;
    let profile = config.deformation()?;
    let xs = config.verification_grid()?.points();
    let mut paths = Vec::new();
    for &n in &config.n {
        let state = Eigenstate::new(n, &params, &profile)?;
        let mut table = Table::new(vec!["x", "psi", "density"]);
        table.notes.push(format!("n = {n}, energy = {:.16e}, normalization = {:?}", state.energy(), state.norm_source()));
        for (x, psi) in xs.iter().zip(state.eval_many(&xs)) {
            table.rows.push(vec![*x, psi, psi * psi]);
        }
        paths.push(table.write(config, &format!("eigen_n{n}"))?);
    }
    Ok(paths)
}

/// Coherent-state densities for every requested label and time, plus the
/// expansion coefficients.
pub fn cmd_cs(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let grid = if config.figure_mode { config.plot_grid()? } else { config.verification_grid()? };
    let xs = grid.points();
    let mut density = Table::new(vec!["alpha_re", "alpha_im", "t", "x", "density"]);
    let mut coeffs = Table::new(vec!["alpha_re", "alpha_im", "n", "c_re", "c_im", "probability"]);
    for alpha in config.alphas()? {
        let cs = build(config, alpha, config.figure_mode)?;
        density.notes.push(format!(
            "alpha = {}{:+}i: N = {}, discarded tail = {:.3e}",
            alpha.re,
            alpha.im,
            cs.n_trunc(),
            cs.tail()
        ));
        for (n, c) in cs.coeffs().iter().enumerate() {
            coeffs.rows.push(vec![alpha.re, alpha.im, n as f64, c.re, c.im, c.norm_sqr()]);
        }
        for &t in &config.t {
            let rho = evolve(&cs, t).density(&xs);
            edge_warning(&format!("alpha = {alpha}, t = {t}"), &rho);
            for (x, r) in xs.iter().zip(rho) {
                density.rows.push(vec![alpha.re, alpha.im, t, *x, r]);
            }
        }
    }
    Ok(vec![density.write(config, "cs_density")?, coeffs.write(config, "cs_coefficients")?])
}

/// Energy moments and position-momentum uncertainties for each label.
pub fn cmd_observables(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let mut table = Table::new(vec![
        "alpha_re",
        "alpha_im",
        "meanH",
        "meanH2",
        "varH",
        "dX",
        "dP",
        "product",
        "bound",
        "sum_identity_residual",
    ]);
    for alpha in config.alphas()? {
        let cs = build(config, alpha, false)?;
        let m = energy_moments(&cs);
        let u = xp_uncertainty(&cs, cs.n_trunc() + UNCERTAINTY_PADDING)?;
        table
            .rows
            .push(vec![alpha.re, alpha.im, m.mean_h, m.mean_h2, m.var_h, u.dx, u.dp, u.product, u.bound, u.sum_check]);
    }
    Ok(vec![table.write(config, "observables")?])
}

fn density_rows(table: &mut Table, state: &EvolvedState, xs: &[f64], label: &str) {
    let rho = state.density(xs);
    edge_warning(label, &rho);
    let a = state.base().alpha();
    for (x, r) in xs.iter().zip(rho) {
        table.rows.push(vec![a.re, a.im, state.t(), *x, r]);
    }
}

const PLOT_SCRIPT: &str = r##"import csv
import sys
from collections import defaultdict

import matplotlib.pyplot as plt


def load(path):
    data = defaultdict(lambda: ([], []))
    with open(path) as f:
        rows = csv.DictReader(line for line in f if not line.startswith("#"))
        for r in rows:
            key = (float(r["alpha_re"]), float(r["alpha_im"]), float(r["t"]))
            data[key][0].append(float(r["x"]))
            data[key][1].append(float(r["density"]))
    return data


def fig1(path, out):
    data = load(path)
    alphas = sorted({k[:2] for k in data})
    fig, axes = plt.subplots(1, len(alphas), figsize=(5 * len(alphas), 4), squeeze=False)
    for ax, a in zip(axes[0], alphas):
        for key in sorted(k for k in data if k[:2] == a):
            xs, ys = data[key]
            ax.plot(xs, ys, label=f"t = {key[2]:g}")
        ax.set_title(f"alpha = {a[0]:g}{a[1]:+g}i")
        ax.set_xlabel("x")
        ax.legend()
    axes[0][0].set_ylabel("density")
    fig.tight_layout()
    fig.savefig(out)


def fig2(path, out):
    data = load(path)
    alphas = sorted({k[:2] for k in data})
    fig, axes = plt.subplots(1, len(alphas), figsize=(5 * len(alphas), 4), squeeze=False)
    for ax, a in zip(axes[0], alphas):
        keys = sorted(k for k in data if k[:2] == a)
        xs = data[keys[0]][0]
        ts = [k[2] for k in keys]
        grid = [data[k][1] for k in keys]
        ax.pcolormesh(xs, ts, grid, shading="auto")
        ax.set_title(f"alpha = {a[0]:g}{a[1]:+g}i")
        ax.set_xlabel("x")
    axes[0][0].set_ylabel("t")
    fig.tight_layout()
    fig.savefig(out)


if __name__ == "__main__":
    d = sys.argv[1] if len(sys.argv) > 1 else "."
    fig1(f"{d}/fig1.csv", f"{d}/fig1.png")
    fig2(f"{d}/fig2.csv", f"{d}/fig2.png")
"##;

/// Data for both figures, in long format, plus a matplotlib script.
pub fn cmd_figures(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let params = config.physical_params()?;
    let xs = config.plot_grid()?.points();

    let mut fig1 = Table::new(vec!["alpha_re", "alpha_im", "t", "x", "density"]);
    fig1.notes.push(format!("truncated at N = {FIGURE_TRUNCATION}"));
    for a in [0.5, 1.0, 2.0] {
        let cs = build(config, Complex64::new(a, 0.0), true)?;
        for t in [3.0, 5.0, 7.0] {
            density_rows(&mut fig1, &evolve(&cs, t), &xs, &format!("fig1 alpha = {a}, t = {t}"));
        }
    }

    let mut fig2 = Table::new(vec!["alpha_re", "alpha_im", "t", "x", "density"]);
    let period = 4.0 * PI / params.omega0;
    for a in [2.0, 3.0, 4.0] {
        let cs = build(config, Complex64::new(a, 0.0), false)?;
        fig2.notes.push(format!("alpha = {a}: N = {}, discarded tail = {:.3e}", cs.n_trunc(), cs.tail()));
        for k in 0..=FIG2_TIME_STEPS {
            let t = period * k as f64 / FIG2_TIME_STEPS as f64;
            density_rows(&mut fig2, &evolve(&cs, t), &xs, &format!("fig2 alpha = {a}, t = {t:.4}"));
        }
    }

    let script = config.out.join("plot_figures.py");
    write_atomic(&script, PLOT_SCRIPT.as_bytes())?;
    Ok(vec![fig1.write(config, "fig1")?, fig2.write(config, "fig2")?, script])
}

/// Run the verification suite and write `verify_report.json`.
pub fn cmd_verify(config: &RunConfig, fault: Option<Fault>) -> Result<(VerifyReport, PathBuf)> {
    let report = run_suite(
        &config.physical_params()?,
        &config.deformation()?,
        &config.verification_grid()?,
        fault,
    )?;
    let mut body = serde_json::to_string_pretty(&serde_json::json!({
        "config": config,
        "pass": report.pass,
        "checks": report.checks,
    }))?;
    body.push('\n');
    let path = config.out.join("verify_report.json");
    write_atomic(&path, body.as_bytes())?;
    Ok((report, path))
}
