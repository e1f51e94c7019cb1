//! Reading phase-shift curves back from the CSV the `phaseshift` command
//! writes.

use tridiag_spectra::basis::PotentialParams;
use tridiag_spectra::scattering::{CurveSample, PhaseShiftCurve};

use crate::error::{CliError, Result};

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Curve(msg.into())
}

/// Splits `# key = value` header lines from the CSV body.
pub fn split_header(text: &str) -> (Vec<(String, String)>, String) {
    let mut meta = Vec::new();
    let mut body = String::new();
    for line in text.lines() {
        match line.strip_prefix('#') {
            Some(rest) => {
                if let Some((k, v)) = rest.split_once('=') {
                    meta.push((k.trim().to_string(), v.trim().to_string()));
                }
            }
            None => {
                body.push_str(line);
                body.push('\n');
            }
        }
    }
    (meta, body)
}

fn field<'a>(meta: &'a [(String, String)], key: &str) -> Result<&'a str> {
    meta.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| bad(format!("header lacks `{key}`")))
}

fn number(meta: &[(String, String)], key: &str) -> Result<f64> {
    let raw = field(meta, key)?;
    raw.parse().map_err(|_| bad(format!("`{key}` is not a number: {raw}")))
}

/// Parses a curve written by `phaseshift`: the header supplies `ℓ` and the
/// potential, the `energy` and `delta` columns the samples.
pub fn read_phase_curve(text: &str) -> Result<PhaseShiftCurve> {
    let (meta, body) = split_header(text);
    if field(&meta, "command")? != "phaseshift" {
        return Err(bad("not a phaseshift output"));
    }
    let lambda = number(&meta, "lambda")?;
    let params = PotentialParams::new(lambda, number(&meta, "C")?, number(&meta, "gamma")?)?;
    let l_raw = field(&meta, "l")?;
    let l: u32 = l_raw.parse().map_err(|_| bad(format!("`l` is not an integer: {l_raw}")))?;
    // energies written in physical units are converted back to ε
    let to_eps = match field(&meta, "energy_units")? {
        "eps" => 1.0,
        "physical" => 2.0 / (lambda * lambda),
        other => return Err(bad(format!("unknown energy units `{other}`"))),
    };

    let mut reader = csv::Reader::from_reader(body.as_bytes());
    let headers = reader.headers()?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| bad(format!("missing `{name}` column")))
    };
    let (ie, id) = (column("energy")?, column("delta")?);
    let mut samples = Vec::new();
    for record in reader.records() {
        let record = record?;
        let get = |i: usize| -> Result<f64> {
            let raw = record.get(i).ok_or_else(|| bad("short row"))?;
            raw.parse().map_err(|_| bad(format!("not a number: {raw}")))
        };
        samples.push(CurveSample {
            energy: get(ie)? * to_eps,
            delta: get(id)?,
        });
    }
    Ok(PhaseShiftCurve::from_samples(l, params, samples)?)
}
