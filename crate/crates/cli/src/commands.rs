//! One function per subcommand, each producing a [`Table`] and an
//! optional tolerance-miss diagnostic.

use std::f64::consts::PI;

use tridiag_spectra::basis::PotentialParams;
use tridiag_spectra::resonances::{complex_spectrum, PointKind, RotationConfig};
use tridiag_spectra::scattering::{
    locate_resonance, phase_shift, phase_shift_curve, CurveSample, PhaseShiftCurve, PhaseShiftConfig, STEP_TOLERANCE,
};
use tridiag_spectra::spectra::{
    c_spectrum, critical_strengths, energy_spectrum, gamma_spectrum, recover_parameters, Branch,
    EnergySpectrumConfig, RecoverySearch,
};
use tridiag_spectra::wavefunction::bound_state;
use tridiag_spectra::Error;

use crate::args::{Command, PotentialArgs, Sweep};
use crate::curve_io::read_phase_curve;
use crate::error::{CliError, Result};
use crate::output::{format_number, rounded, Cell, Table};

/// Critical strengths at `N` and `N/2` must agree to this, relative.
pub const TRUNCATION_TOLERANCE: f64 = 1e-9;
/// Largest accepted `|C_n(ε) - C|/|C|` for a reported level.
pub const SPECTRUM_RESIDUAL: f64 = 1e-8;
/// Largest accepted `|λ∫ψ² dr - 1|`.
pub const NORM_TOLERANCE: f64 = 1e-6;
/// Gauss-Jacobi nodes for the norm check.
const NORM_NODES: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    /// Set when the run finished but missed a tolerance target.
    pub miss: Option<String>,
}

impl Outcome {
    fn ok(table: Table) -> Self {
        Self { table, miss: None }
    }
}

#[derive(Debug, Clone, Copy)]
struct Units {
    physical: bool,
    lambda: f64,
}

impl Units {
    fn energy(self, eps: f64) -> f64 {
        if self.physical {
            eps * self.lambda * self.lambda / 2.0
        } else {
            eps
        }
    }

    fn label(self) -> &'static str {
        if self.physical {
            "physical"
        } else {
            "eps"
        }
    }

    fn describe(self, table: &mut Table) {
        table.meta("energy_units", self.label());
        table.meta(
            "energy_definition",
            if self.physical { "E = eps * lambda^2 / 2" } else { "eps = 2E / lambda^2" },
        );
    }
}

fn header(table: &mut Table, command: &str) {
    table.meta("command", command);
    table.meta("cli_version", env!("CARGO_PKG_VERSION"));
    table.meta("core_version", tridiag_spectra::VERSION);
}

fn potential_meta(table: &mut Table, p: &PotentialArgs) {
    table.meta_num("lambda", p.lambda);
    table.meta_num("C", p.strength);
    table.meta_num("gamma", p.gamma);
}

fn params_of(p: &PotentialArgs) -> Result<PotentialParams> {
    Ok(PotentialParams::new(p.lambda, p.strength, p.gamma)?)
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn run(command: &Command, physical_units: bool) -> Result<Outcome> {
    match command {
        Command::Potential {
            potential,
            r_range,
            points,
        } => potential_table(potential, r_range.grid(*points)),
        Command::Critical {
            eps,
            gamma,
            n_max,
            size,
        } => critical(*eps, *gamma, *n_max, *size),
        Command::Spectrum {
            potential,
            orders,
            size,
            seed_grid,
        } => spectrum(potential, orders, *size, *seed_grid, Units { physical: physical_units, lambda: potential.lambda }),
        Command::Resonances {
            potential,
            l,
            theta,
            eta,
            size,
        } => resonances(potential, *l, *theta, *eta, *size, Units { physical: physical_units, lambda: potential.lambda }),
        Command::Phaseshift {
            lambda,
            strength,
            gamma,
            l,
            eps,
            eps_min,
            eps_max,
            samples,
            find_resonance,
            from_csv,
        } => {
            if let Some(path) = from_csv {
                let text = std::fs::read_to_string(path)?;
                let curve = read_phase_curve(&text)?;
                let units = Units { physical: physical_units, lambda: curve.params.lambda() };
                return Ok(curve_table(&curve, *find_resonance, units));
            }
            let p = PotentialArgs {
                lambda: *lambda,
                strength: strength.ok_or_else(|| usage("--C is required"))?,
                gamma: gamma.ok_or_else(|| usage("--gamma is required"))?,
            };
            let params = params_of(&p)?;
            let units = Units { physical: physical_units, lambda: *lambda };
            match eps {
                Some(e) => single_phase(&params, *l, *e, units),
                None => {
                    let curve = phase_shift_curve(&params, *l, (*eps_min, *eps_max), *samples)?;
                    let mut outcome = curve_table(&round_curve(&curve)?, *find_resonance, units);
                    outcome.table.meta_num("eps_min", *eps_min);
                    outcome.table.meta_num("eps_max", *eps_max);
                    outcome.table.meta("initial_samples", samples);
                    Ok(outcome)
                }
            }
        }
        Command::Wavefunction {
            potential,
            level,
            r_range,
            points,
            size,
        } => wavefunction(
            potential,
            level.levels().collect(),
            r_range.grid(*points),
            *size,
            Units { physical: physical_units, lambda: potential.lambda },
        ),
        Command::ParamSpectrum {
            sweep,
            eps,
            strength,
            gamma,
            size,
        } => param_spectrum(*sweep, *eps, *strength, *gamma, *size),
        Command::RecoverParams {
            energies,
            gamma_min,
            gamma_max,
            steps,
            size,
        } => recover(
            energies,
            RecoverySearch {
                gamma_min: *gamma_min,
                gamma_max: *gamma_max,
                steps: *steps,
                size: *size,
            },
        ),
    }
}

fn potential_table(p: &PotentialArgs, radii: Vec<f64>) -> Result<Outcome> {
    let params = params_of(p)?;
    let mut table = Table::new(&["r", "V"]);
    header(&mut table, "potential");
    potential_meta(&mut table, p);
    table.meta_num("V0", params.v0());
    table.meta_num("Z_eff", params.z_eff());
    match params.landmarks() {
        Ok(marks) => {
            table.meta_num("r0", marks.r0);
            table.meta_num("r1", marks.r1);
            table.meta_num("V_r1", marks.v_extremum);
        }
        Err(e) => {
            table.note(format!("no landmarks: {e}"));
        }
    }
    for r in radii {
        table.push(vec![r.into(), params.value(r)?.into()]);
    }
    Ok(Outcome::ok(table))
}

fn critical(eps: f64, gamma: Option<f64>, n_max: usize, size: usize) -> Result<Outcome> {
    let (plus, minus, coarse) = match gamma {
        None => {
            let c = critical_strengths(eps, size)?;
            let coarse = critical_strengths(eps, size / 2)?;
            (c.plus, c.minus, (coarse.plus, coarse.minus))
        }
        Some(g) => {
            let c = c_spectrum(eps, g, size)?;
            let coarse = c_spectrum(eps, g, size / 2)?;
            (c.positive(), c.negative(), (coarse.positive(), coarse.negative()))
        }
    };
    let mut table = Table::new(&["n", "C_plus", "C_minus"]);
    header(&mut table, "critical");
    table.meta_num("eps", eps);
    match gamma {
        Some(g) => table.meta_num("gamma", g),
        None => table.meta("gamma", "extremes over 0 <= gamma <= 1"),
    };
    table.meta("n_max", n_max);
    table.meta("N", size);
    table.meta_num("truncation_tolerance", TRUNCATION_TOLERANCE);

    let mut worst: f64 = 0.0;
    for n in 0..=n_max {
        let (p, m) = (plus.get(n).copied(), minus.get(n).copied());
        for (fine, rough) in [(p, coarse.0.get(n)), (m, coarse.1.get(n))] {
            if let (Some(f), Some(r)) = (fine, rough) {
                worst = worst.max((f - r).abs() / f.abs().max(1.0));
            }
        }
        table.push(vec![n.into(), p.into(), m.into()]);
    }
    table.meta_num("truncation_change", worst);
    let miss = (worst > TRUNCATION_TOLERANCE).then(|| {
        format!(
            "values changed by {} between N = {} and N = {size}; increase --N",
            format_number(worst),
            size / 2
        )
    });
    Ok(Outcome { table, miss })
}

fn spectrum(p: &PotentialArgs, orders: &[usize], size: usize, grid: Option<usize>, units: Units) -> Result<Outcome> {
    if orders.is_empty() {
        return Err(usage("--M needs at least one order"));
    }
    let mut orders = orders.to_vec();
    orders.sort_unstable();
    orders.dedup();
    let config_for = |m: usize| {
        let mut c = EnergySpectrumConfig::with_order(m);
        c.size = size;
        if let Some(g) = grid {
            c.grid_points = g;
        }
        c
    };
    let runs = orders
        .iter()
        .map(|&m| energy_spectrum(p.gamma, p.strength, &config_for(m)))
        .collect::<std::result::Result<Vec<_>, Error>>()?;
    let last = runs.last().expect("at least one order");

    let mut columns: Vec<String> = ["level", "energy", "mu", "residual", "trace_samples"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    columns.extend(orders.iter().map(|m| format!("fitted_M{m}")));
    let mut table = Table {
        columns,
        ..Table::default()
    };
    header(&mut table, "spectrum");
    potential_meta(&mut table, p);
    units.describe(&mut table);
    table.meta("M", orders.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","));
    table.meta("N", size);
    table.meta("grid_points", last.config.grid_points);
    table.meta_num("shallowest_grid_energy", -last.config.shallowest);
    table.meta_num("residual_tolerance", SPECTRUM_RESIDUAL);
    table.meta("bound_states", last.levels.len());
    if last.levels.is_empty() {
        table.note("0 bound states");
    }
    if let Some(deepest) = last.traces.first().and_then(|t| t.samples.last()) {
        table.meta_num("deepest_grid_energy", units.energy(deepest.energy));
    }

    let mut worst: f64 = 0.0;
    for (i, level) in last.levels.iter().enumerate() {
        worst = worst.max(level.residual);
        let mut row: Vec<Cell> = vec![
            level.index.into(),
            units.energy(level.energy).into(),
            level.mu.into(),
            level.residual.into(),
            last.traces[i].samples.len().into(),
        ];
        row.extend(runs.iter().map(|r| Cell::from(r.levels.get(i).map(|l| units.energy(l.fitted)))));
        table.rows.push(row);
    }
    let miss = (worst > SPECTRUM_RESIDUAL)
        .then(|| format!("strength residual {} exceeds {SPECTRUM_RESIDUAL:e}", format_number(worst)));
    Ok(Outcome { table, miss })
}

fn resonances(
    p: &PotentialArgs,
    l: u32,
    theta: Option<f64>,
    eta: Option<f64>,
    size: Option<usize>,
    units: Units,
) -> Result<Outcome> {
    let params = params_of(p)?;
    let mut config = RotationConfig::for_potential(&params, l);
    if let Some(t) = theta {
        config = config.with_theta(t)?;
    }
    if let Some(e) = eta {
        config = config.with_eta(e)?;
    }
    if let Some(n) = size {
        config = config.with_size(n)?;
    }
    let spectrum = complex_spectrum(&params, &config.with_quadrature_check(true))?;

    let mut table = Table::new(&["index", "re", "im", "kind"]);
    header(&mut table, "resonances");
    potential_meta(&mut table, p);
    units.describe(&mut table);
    table.meta("l", l);
    table.meta_num("theta", config.theta);
    table.meta_num("eta", config.eta);
    table.meta("N", config.size);
    table.meta("K", config.quad_nodes);
    for kind in [PointKind::Bound, PointKind::Resonance, PointKind::Cut, PointKind::Unclassified] {
        let count = spectrum.points.iter().filter(|q| q.kind == kind).count();
        table.meta(&format!("count_{}", kind.label()), count);
    }
    table.note("resonances are only physical if stable under changes of theta");
    for (i, q) in spectrum.points.iter().enumerate() {
        table.push(vec![
            i.into(),
            units.energy(q.energy.re).into(),
            units.energy(q.energy.im).into(),
            q.kind.label().into(),
        ]);
    }
    Ok(Outcome::ok(table))
}

fn single_phase(params: &PotentialParams, l: u32, eps: f64, units: Units) -> Result<Outcome> {
    let d = phase_shift(params, l, eps)?;
    let mut table = Table::new(&["energy", "delta", "branch", "total", "step_error", "radius_drift"]);
    phase_header(&mut table, params, l, units);
    table.meta_num("step", d.step);
    table.meta_num("rho_match", d.rho_match);
    table.push(vec![
        units.energy(eps).into(),
        d.delta.into(),
        d.branch.into(),
        d.total.into(),
        d.step_error.into(),
        d.radius_drift.into(),
    ]);
    Ok(Outcome::ok(table))
}

fn phase_header(table: &mut Table, params: &PotentialParams, l: u32, units: Units) {
    header(table, "phaseshift");
    table.meta_num("lambda", params.lambda());
    table.meta_num("C", params.strength());
    table.meta_num("gamma", params.gamma());
    table.meta("l", l);
    units.describe(table);
    let defaults = PhaseShiftConfig::default();
    table.meta_num("initial_step", defaults.step);
    table.meta_num("step_tolerance", STEP_TOLERANCE);
    table.meta("delta_units", "radians, unwrapped along the curve");
}

/// The curve exactly as it will be written, so a fit of the re-read file
/// reproduces the reported one.
pub fn round_curve(curve: &PhaseShiftCurve) -> Result<PhaseShiftCurve> {
    let samples = curve
        .samples()
        .iter()
        .map(|s| CurveSample {
            energy: rounded(s.energy),
            delta: rounded(s.delta),
        })
        .collect();
    Ok(PhaseShiftCurve::from_samples(curve.l, curve.params, samples)?)
}

fn curve_table(curve: &PhaseShiftCurve, find_resonance: bool, units: Units) -> Outcome {
    let mut table = Table::new(&["energy", "delta"]);
    phase_header(&mut table, &curve.params, curve.l, units);
    table.meta("samples", curve.len());
    table.meta_num("max_jump", curve.max_jump());
    if find_resonance {
        match locate_resonance(curve) {
            Ok(fit) => {
                table.meta_num("resonance_energy", units.energy(fit.energy));
                table.meta_num("resonance_width", units.energy(fit.width));
                table.meta_num("background_offset", fit.offset);
                table.meta_num("background_slope", fit.slope);
                table.meta_num("fit_rms", fit.rms);
                table.meta(
                    "fit_window",
                    format!("{}..{}", format_number(units.energy(fit.window.0)), format_number(units.energy(fit.window.1))),
                );
            }
            Err(e) => {
                table.meta("resonance_energy", "none");
                table.note(e.to_string());
            }
        }
    }
    for s in curve.samples() {
        table.push(vec![units.energy(s.energy).into(), s.delta.into()]);
    }
    if curve.max_jump() >= PI / 2.0 {
        return Outcome {
            miss: Some(format!("curve has a jump of {} rad", format_number(curve.max_jump()))),
            table,
        };
    }
    Outcome::ok(table)
}

fn wavefunction(p: &PotentialArgs, levels: Vec<usize>, radii: Vec<f64>, size: usize, units: Units) -> Result<Outcome> {
    let params = params_of(p)?;
    let mut table = Table::new(&["level", "energy", "norm", "nodes", "r", "psi"]);
    header(&mut table, "wavefunction");
    potential_meta(&mut table, p);
    units.describe(&mut table);
    table.meta("N", size);
    table.meta("normalization", "lambda * integral psi^2 dr = 1");
    table.meta_num("norm_tolerance", NORM_TOLERANCE);
    let mut worst: f64 = 0.0;
    for level in levels {
        let state = bound_state(params, level, size)?;
        let norm = state.radial_norm(NORM_NODES)?;
        worst = worst.max((norm - 1.0).abs());
        let nodes = state.node_count();
        let energy = units.energy(state.energy);
        for (&r, psi) in radii.iter().zip(state.sample(&radii)) {
            table.push(vec![level.into(), energy.into(), norm.into(), nodes.into(), r.into(), psi.into()]);
        }
    }
    let miss = (worst > NORM_TOLERANCE)
        .then(|| format!("norm off by {}; adjust --N", format_number(worst)));
    Ok(Outcome { table, miss })
}

fn param_spectrum(sweep: Sweep, eps: f64, strength: Option<f64>, gamma: Option<f64>, size: usize) -> Result<Outcome> {
    let mut table = Table::new(&["index", "value", "branch", "in_main_class"]);
    header(&mut table, "param-spectrum");
    table.meta_num("eps", eps);
    table.meta("N", size);
    let spectrum = match sweep {
        Sweep::Gamma => {
            let c = strength.ok_or_else(|| usage("--sweep gamma needs --C"))?;
            table.meta("sweep", "gamma");
            table.meta_num("C", c);
            gamma_spectrum(eps, c, size)?
        }
        Sweep::Strength => {
            let g = gamma.ok_or_else(|| usage("--sweep C needs --gamma"))?;
            table.meta("sweep", "C");
            table.meta_num("gamma", g);
            c_spectrum(eps, g, size)?
        }
    };
    if spectrum.levels.iter().any(|l| !l.admissible) {
        table.note("values with in_main_class = false lie outside the main solvability class 0 < gamma < 1");
    }
    for l in &spectrum.levels {
        let branch = match l.branch {
            Some(Branch::Positive) => "+",
            Some(Branch::Negative) => "-",
            None => "",
        };
        table.push(vec![
            l.index.into(),
            l.value.into(),
            branch.into(),
            if l.admissible { "true" } else { "false" }.into(),
        ]);
    }
    Ok(Outcome::ok(table))
}

fn recover(energies: &[f64], search: RecoverySearch) -> Result<Outcome> {
    let candidates = recover_parameters(energies, &search)?;
    let mut table = Table::new(&["rank", "gamma", "C", "branch", "spread"]);
    header(&mut table, "recover-params");
    table.meta(
        "energies",
        energies.iter().map(|e| format_number(*e)).collect::<Vec<_>>().join(","),
    );
    table.meta_num("gamma_min", search.gamma_min);
    table.meta_num("gamma_max", search.gamma_max);
    table.meta("steps", search.steps);
    table.meta("N", search.size);
    for (rank, c) in candidates.iter().enumerate() {
        let branch = match c.branch {
            Branch::Positive => "+",
            Branch::Negative => "-",
        };
        table.push(vec![rank.into(), c.gamma.into(), c.strength.into(), branch.into(), c.spread.into()]);
    }
    Ok(Outcome::ok(table))
}
