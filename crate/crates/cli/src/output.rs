use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;

use qubit_monogamy::states::{load_state, named_state, NAMED_STATES};
use qubit_monogamy::PureState;

use crate::manifest::RunManifest;

/// Twelve significant digits, locale-free.
pub fn num(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// An existing file wins over a state name of the same spelling.
pub fn load_state_arg(arg: &str) -> anyhow::Result<PureState> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(load_state(path)?);
    }
    if NAMED_STATES.contains(&arg) {
        return Ok(named_state(arg)?);
    }
    anyhow::bail!(
        "{arg}: no such file, and not a named state ({})",
        NAMED_STATES.join(", ")
    )
}

pub fn emit(bytes: &[u8], out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn csv_bytes(
    manifest: &RunManifest,
    header: &[&str],
    rows: &[Vec<String>],
) -> anyhow::Result<Vec<u8>> {
    let mut buf = manifest.comment_lines().into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(header)?;
        for row in rows {
            w.write_record(row)?;
        }
        w.flush()?;
    }
    Ok(buf)
}

#[derive(Serialize)]
struct WithManifest<'a, T: Serialize> {
    manifest: &'a RunManifest,
    #[serde(flatten)]
    body: &'a T,
}

pub fn json_bytes<T: Serialize>(manifest: &RunManifest, body: &T) -> anyhow::Result<Vec<u8>> {
    let mut buf = serde_json::to_vec_pretty(&WithManifest { manifest, body })?;
    buf.push(b'\n');
    Ok(buf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(num(0.623045), "6.23045000000e-1");
        assert_eq!(num(-2.0), "-2.00000000000e0");
        assert_eq!(opt_num(None), "");
    }

    #[test]
    fn unknown_state_argument() {
        let e = load_state_arg("definitely_not_here")
            .unwrap_err()
            .to_string();
        assert!(e.contains("ghz3"));
        assert_eq!(load_state_arg("w3").unwrap().n_qubits(), 3);
    }
}
