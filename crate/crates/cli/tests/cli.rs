use std::path::Path;
use std::process::{Command, Output};

use tridiag_spectra_cli::curve_io::{read_phase_curve, split_header};
use tridiag_spectra::scattering::locate_resonance;

const CRITICAL_PLUS: [f64; 11] = [
    1.2956609331, 5.0184325653, 11.1997215264, 19.8446859831, 30.9550078158, 44.5314400641,
    60.5743842474, 79.0840796714, 100.0606804461, 123.5042916444, 149.4149881179,
];
const CRITICAL_MINUS: [f64; 11] = [
    -0.7228982454, -3.8089077930, -9.3608758488, -17.3800355533, -27.8665379522, -40.8204191165,
    -56.2416910648, -74.1303587070, -94.4864243480, -117.3098891845, -142.6007538875,
];
const THRESHOLD_PLUS_06: [f64; 6] = [11.0749939486, 44.4781677038, 100.1462183676, 178.0810805327, 278.2829383518, 400.7518350936];
const THRESHOLD_MINUS_06: [f64; 6] = [-1.5789834905, -10.7688457640, -29.1082728662, -56.6289478043, -93.3253687332, -139.1965109280];
const BOUND_05_80: [f64; 3] = [-1406.11040577, -223.29635015, -27.18320883];

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tridiag-spectra"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let Output { status, stdout, stderr } = cmd.output().expect("binary runs");
    Run {
        code: status.code().unwrap_or(-1),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_env(args, &[])
}

struct Parsed {
    meta: Vec<(String, String)>,
    notes: Vec<String>,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Parsed {
    fn meta(&self, key: &str) -> &str {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str()).unwrap_or_else(|| panic!("no {key}"))
    }

    fn num(&self, key: &str) -> f64 {
        self.meta(key).parse().unwrap()
    }

    fn column(&self, name: &str) -> Vec<String> {
        let i = self.columns.iter().position(|c| c == name).unwrap_or_else(|| panic!("no column {name}"));
        self.rows.iter().map(|r| r[i].clone()).collect()
    }

    fn numbers(&self, name: &str) -> Vec<f64> {
        self.column(name).iter().map(|v| v.parse().unwrap()).collect()
    }
}

fn parse(text: &str) -> Parsed {
    let (meta, body) = split_header(text);
    let notes = text
        .lines()
        .filter_map(|l| l.strip_prefix("# note: ").map(str::to_string))
        .collect();
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    let columns = reader.headers().unwrap().iter().map(str::to_string).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect();
    Parsed { meta, notes, columns, rows }
}

fn ok(args: &[&str]) -> Parsed {
    let r = run(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    parse(&r.stdout)
}

/// Reduced-unit potential written out independently of the library.
fn potential(c: f64, gamma: f64, r: f64) -> f64 {
    -c * ((-r).exp() - gamma) / r.exp_m1()
}

#[test]
fn potential_zero_crossing_at_ln2() {
    let out = ok(&["potential", "--gamma", "0.5", "--C", "-1", "--lambda", "1"]);
    let v = out.numbers("V");
    let r = out.numbers("r");
    let crossings: Vec<usize> = (1..v.len()).filter(|&i| v[i - 1].signum() != v[i].signum()).collect();
    assert_eq!(crossings.len(), 1);
    let i = crossings[0];
    let ln2 = std::f64::consts::LN_2;
    assert!(r[i - 1] < ln2 && ln2 <= r[i]);
    assert!((out.num("r0") - ln2).abs() < 1e-12);
}

#[test]
fn potential_extremum_matches_direct_minimization() {
    let (c, gamma) = (-10.0, 0.2);
    let out = ok(&["potential", "--gamma", "0.2", "--C", "-10"]);
    // golden-section search on the formula itself
    let (mut a, mut b) = (0.01, 10.0);
    let g = (5.0_f64.sqrt() - 1.0) / 2.0;
    let f = |r: f64| potential(c, gamma, r);
    // V > 0 inside r0 for this sign, so the extremum is a minimum beyond it
    let sign = if f(5.0) < 0.0 { 1.0 } else { -1.0 };
    for _ in 0..200 {
        let (x1, x2) = (b - g * (b - a), a + g * (b - a));
        if sign * f(x1) < sign * f(x2) {
            b = x2;
        } else {
            a = x1;
        }
    }
    let r1 = 0.5 * (a + b);
    assert!((out.num("r1") - r1).abs() < 1e-7, "{} vs {r1}", out.num("r1"));
    assert!((out.num("V_r1") - f(r1)).abs() < 1e-12 * f(r1).abs().max(1.0));
}

#[test]
fn potential_rejects_unsolvable_shape() {
    let r = run(&["potential", "--gamma", "1.5", "--C", "1"]);
    assert_ne!(r.code, 0);
    assert!(r.stderr.contains("solvability class"), "{}", r.stderr);
}

#[test]
fn critical_reproduces_zero_energy_strengths() {
    let out = ok(&["critical", "--eps", "0", "--n-max", "10"]);
    let (plus, minus) = (out.numbers("C_plus"), out.numbers("C_minus"));
    assert_eq!(plus.len(), 11);
    for n in 0..11 {
        assert!((plus[n] - CRITICAL_PLUS[n]).abs() < 1e-9);
        assert!((minus[n] - CRITICAL_MINUS[n]).abs() < 1e-9);
    }
    assert_eq!(out.meta("N"), "200");
}

#[test]
fn critical_reproduces_threshold_column() {
    let out = ok(&["critical", "--eps", "0", "--gamma", "0.6", "--n-max", "5"]);
    let (plus, minus) = (out.numbers("C_plus"), out.numbers("C_minus"));
    for n in 0..6 {
        assert!(((plus[n] - THRESHOLD_PLUS_06[n]) / THRESHOLD_PLUS_06[n]).abs() < 1e-7);
        assert!(((minus[n] - THRESHOLD_MINUS_06[n]) / THRESHOLD_MINUS_06[n]).abs() < 1e-7);
    }
}

#[test]
fn critical_strengths_grow_with_binding() {
    let deep = ok(&["critical", "--eps", "-20", "--n-max", "5"]);
    let (plus, minus) = (deep.numbers("C_plus"), deep.numbers("C_minus"));
    for n in 0..6 {
        assert!(plus[n] > CRITICAL_PLUS[n] && minus[n] < CRITICAL_MINUS[n], "n={n}");
    }
}

#[test]
fn truncation_miss_exits_with_two() {
    let r = run(&["critical", "--N", "12", "--n-max", "5"]);
    assert_eq!(r.code, 2, "{}", r.stderr);
    assert!(r.stderr.contains("increase --N"));
    // the table is still written
    assert_eq!(parse(&r.stdout).rows.len(), 6);
}

#[test]
fn spectrum_matches_the_tabulated_column() {
    let out = ok(&["spectrum", "--gamma", "0.5", "--C", "80", "--M", "50"]);
    let e = out.numbers("energy");
    assert_eq!(e.len(), 3);
    for (got, want) in e.iter().zip(BOUND_05_80) {
        assert!(((got - want) / want).abs() < 1e-6, "{got}");
    }
    assert_eq!(out.meta("bound_states"), "3");
}

#[test]
fn spectrum_order_report() {
    let out = ok(&["spectrum", "--gamma", "0.5", "--C", "80", "--M", "10,20,50"]);
    let energy = out.numbers("energy");
    let gap = |m: &str| {
        out.numbers(m)
            .iter()
            .zip(&energy)
            .map(|(f, e)| ((f - e) / e).abs())
            .fold(0.0, f64::max)
    };
    let (g10, g20, g50) = (gap("fitted_M10"), gap("fitted_M20"), gap("fitted_M50"));
    assert!(g10 > g20 && g20 >= g50 && g50 < 1e-9, "{g10} {g20} {g50}");
}

#[test]
fn spectrum_without_bound_states() {
    let out = ok(&["spectrum", "--gamma", "0.4", "--C", "3"]);
    assert!(out.rows.is_empty());
    assert!(out.notes.iter().any(|n| n == "0 bound states"));
}

#[test]
fn resonances_reproduce_the_s_wave_column() {
    let out = ok(&["resonances", "--gamma", "0.5", "--C", "80", "--l", "0"]);
    let (re, im, kind) = (out.numbers("re"), out.numbers("im"), out.column("kind"));
    let bound: Vec<f64> = (0..re.len()).filter(|&i| kind[i] == "bound").map(|i| re[i]).collect();
    assert_eq!(bound.len(), 3);
    for (got, want) in bound.iter().zip(BOUND_05_80) {
        assert!(((got - want) / want).abs() < 1e-6);
    }
    let pole: (f64, f64) = (14.78518500, -1.61589438);
    let hit = (0..re.len()).any(|i| {
        kind[i] == "resonance" && ((re[i] - pole.0).powi(2) + (im[i] - pole.1).powi(2)).sqrt() < 1e-3 * 14.87
    });
    assert!(hit);
    assert!(kind.iter().filter(|k| *k == "cut").count() > 50);
}

#[test]
fn resonances_d_wave() {
    let out = ok(&["resonances", "--l", "2", "--gamma", "0.7", "--C", "100"]);
    let (re, im, kind) = (out.numbers("re"), out.numbers("im"), out.column("kind"));
    let pole: (f64, f64) = (58.38580965, -6.72074273);
    let scale = (pole.0 * pole.0 + pole.1 * pole.1).sqrt();
    assert!((0..re.len()).any(|i| kind[i] == "resonance"
        && ((re[i] - pole.0).powi(2) + (im[i] - pole.1).powi(2)).sqrt() < 1e-3 * scale));
}

#[test]
fn phase_shift_resonance_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let p = path.to_str().unwrap();
    let r = run(&["phaseshift", "--gamma", "0.4", "--C", "70", "--l", "1", "--find-resonance", "--out", p]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = std::fs::read_to_string(&path).unwrap();
    let first = parse(&text);
    let (energy, width) = (first.num("resonance_energy"), first.num("resonance_width"));
    assert!((energy - 4.035).abs() < 0.01, "{energy}");
    assert!((width - 0.029).abs() < 0.005, "{width}");

    // the library refit of the re-read file is the reported fit
    let fit = locate_resonance(&read_phase_curve(&text).unwrap()).unwrap();
    assert_eq!(tridiag_spectra_cli::output::format_number(fit.energy), first.meta("resonance_energy"));
    assert_eq!(tridiag_spectra_cli::output::format_number(fit.width), first.meta("resonance_width"));

    // and so is the CLI refit
    let again = path.with_file_name("again.csv");
    let r = run(&["phaseshift", "--from-csv", p, "--find-resonance", "--out", again.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let second = parse(&std::fs::read_to_string(&again).unwrap());
    for key in ["resonance_energy", "resonance_width", "background_offset", "background_slope", "fit_rms", "fit_window"] {
        assert_eq!(first.meta(key), second.meta(key), "{key}");
    }
    assert_eq!(first.rows, second.rows);
}

#[test]
fn free_phase_shift_is_zero() {
    let out = ok(&["phaseshift", "--gamma", "0.4", "--C", "0", "--l", "1", "--samples", "20", "--find-resonance"]);
    assert!(out.numbers("delta").iter().all(|d| d.abs() < 1e-10));
    assert_eq!(out.meta("resonance_energy"), "none");
}

#[test]
fn single_energy_phase() {
    let out = ok(&["phaseshift", "--gamma", "0.4", "--C", "70", "--l", "1", "--eps", "3"]);
    assert_eq!(out.rows.len(), 1);
    let (delta, total, branch) = (out.numbers("delta")[0], out.numbers("total")[0], out.numbers("branch")[0]);
    assert!((total - delta - branch * std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn wavefunctions_for_four_levels() {
    let out = ok(&["wavefunction", "--gamma", "0.7", "--C", "-70", "--level", "0..3"]);
    let (levels, nodes, norms) = (out.numbers("level"), out.numbers("nodes"), out.numbers("norm"));
    let mut seen: Vec<f64> = levels.clone();
    seen.dedup();
    assert_eq!(seen, vec![0.0, 1.0, 2.0, 3.0]);
    for i in 0..levels.len() {
        assert_eq!(nodes[i], levels[i]);
        assert!((norms[i] - 1.0).abs() < 1e-6);
    }
}

#[test]
fn unbound_level_is_reported() {
    let r = run(&["wavefunction", "--gamma", "0.7", "--C", "-70", "--level", "9"]);
    assert_ne!(r.code, 0);
    assert!(r.stderr.contains("not bound"), "{}", r.stderr);
}

#[test]
fn gamma_sweep_flags_values_outside_the_main_class() {
    let out = ok(&["param-spectrum", "--sweep", "gamma", "--C", "200"]);
    let flags = out.column("in_main_class");
    assert!(flags.iter().any(|f| f == "false"));
    assert!(out.notes.iter().any(|n| n.contains("outside the main solvability class")));
}

#[test]
fn recovers_parameters_from_levels() {
    let out = ok(&[
        "recover-params",
        "--energies=-70.014054905331,-50.181498523546,-34.317359873422",
        "--gamma-min",
        "0.5",
        "--gamma-max",
        "0.9",
        "--steps",
        "41",
    ]);
    let (gamma, c) = (out.numbers("gamma")[0], out.numbers("C")[0]);
    assert!((gamma - 0.7).abs() < 1e-4 && (c + 200.0).abs() < 1e-2, "{gamma} {c}");
}

#[test]
fn json_and_physical_units() {
    let r = run(&["--format", "json", "--physical-units", "spectrum", "--gamma", "0.5", "--C", "80", "--lambda", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc["metadata"]["energy_units"], "physical");
    let column = doc["columns"].as_array().unwrap().iter().position(|c| c == "energy").unwrap();
    let e = doc["rows"][0][column].as_f64().unwrap();
    // E = ελ²/2 with λ = 2
    assert!(((e - 2.0 * BOUND_05_80[0]) / e).abs() < 1e-6, "{e}");
}

#[test]
fn thread_cap() {
    let r = run_env(&["critical", "--n-max", "2"], &[("TRIDIAG_SPECTRA_THREADS", "1")]);
    assert_eq!(r.code, 0);
    let r = run_env(&["critical", "--n-max", "2"], &[("TRIDIAG_SPECTRA_THREADS", "zero")]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("TRIDIAG_SPECTRA_THREADS"));
}

#[test]
fn output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let files: Vec<_> = ["a.csv", "b.csv"].iter().map(|n| dir.path().join(n)).collect();
    for f in &files {
        let r = run(&["--out", f.to_str().unwrap(), "resonances", "--gamma", "0.3", "--C", "50", "--l", "1"]);
        assert_eq!(r.code, 0);
    }
    let read = |p: &Path| std::fs::read(p).unwrap();
    assert_eq!(read(&files[0]), read(&files[1]));
}

#[test]
fn bad_flags_are_invalid_input() {
    assert_eq!(run(&["critical", "--nope"]).code, 1);
    assert_eq!(run(&["wavefunction", "--gamma", "0.7", "--C", "-70", "--level", "3..1"]).code, 1);
    assert_eq!(run(&["phaseshift", "--gamma", "0.4", "--C", "70", "--eps", "-1"]).code, 1);
    assert_eq!(run(&["--help"]).code, 0);
}
