//! JSON state files: `{"n_qubits": n, "amplitudes": [[re, im], …]}` with
//! amplitudes ordered by basis index.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::Value;

use super::PureState;
use crate::linalg::{vec_norm, C64};
use crate::tolerance::FILE_NORM;
use crate::{Error, Result};

/// Renormalization is skipped when the stored norm is already this close to
/// one, so freshly written files reload bit-for-bit.
const EXACT_NORM: f64 = 1e-14;

pub fn load_state(path: impl AsRef<Path>) -> Result<PureState> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_state(&text, path)
}

/// Parses state JSON; `origin` is only used in error messages.
pub fn parse_state(text: &str, origin: &Path) -> Result<PureState> {
    let schema = |field: &str, detail: String| Error::Schema {
        path: origin.to_path_buf(),
        field: field.to_string(),
        detail,
    };
    let root: Value =
        serde_json::from_str(text).map_err(|e| schema("<root>", format!("malformed JSON: {e}")))?;
    let n_qubits = root
        .get("n_qubits")
        .ok_or_else(|| schema("n_qubits", "missing".into()))?
        .as_u64()
        .ok_or_else(|| schema("n_qubits", "expected a non-negative integer".into()))?
        as usize;
    if !(1..=super::MAX_QUBITS).contains(&n_qubits) {
        return Err(schema(
            "n_qubits",
            format!("{n_qubits} outside 1..={}", super::MAX_QUBITS),
        ));
    }
    let raw = root
        .get("amplitudes")
        .ok_or_else(|| schema("amplitudes", "missing".into()))?
        .as_array()
        .ok_or_else(|| schema("amplitudes", "expected an array".into()))?;
    let expected = 1usize << n_qubits;
    if raw.len() != expected {
        return Err(schema(
            "amplitudes",
            format!(
                "{} entries for n_qubits = {n_qubits}, expected {expected}",
                raw.len()
            ),
        ));
    }
    let mut amps = Vec::with_capacity(expected);
    for (i, entry) in raw.iter().enumerate() {
        let field = format!("amplitudes[{i}]");
        let pair = entry
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| schema(&field, "expected [re, im]".into()))?;
        let re = pair[0]
            .as_f64()
            .ok_or_else(|| schema(&field, "real part is not a number".into()))?;
        let im = pair[1]
            .as_f64()
            .ok_or_else(|| schema(&field, "imaginary part is not a number".into()))?;
        amps.push(C64::new(re, im));
    }
    let norm = vec_norm(&amps);
    if (norm - 1.0).abs() > FILE_NORM {
        return Err(schema(
            "amplitudes",
            format!("norm {norm} deviates from 1 by more than {FILE_NORM:e}"),
        ));
    }
    if (norm - 1.0).abs() > EXACT_NORM {
        amps.iter_mut().for_each(|z| *z /= norm);
    }
    PureState::new(amps)
}

/// Serializes with 17 significant digits per component.
pub fn state_to_json(psi: &PureState) -> String {
    let mut out = format!(
        "{{\n  \"n_qubits\": {},\n  \"amplitudes\": [\n",
        psi.n_qubits()
    );
    let last = psi.dim() - 1;
    for (i, z) in psi.amplitudes().iter().enumerate() {
        let sep = if i == last { "" } else { "," };
        let _ = writeln!(out, "    [{:.16e}, {:.16e}]{sep}", z.re, z.im);
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn save_state(psi: &PureState, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, state_to_json(psi)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RngSeed;

    fn parse(text: &str) -> Result<PureState> {
        parse_state(text, Path::new("test.json"))
    }

    #[test]
    fn hand_written_w_state() {
        let text = r#"{"n_qubits": 3, "amplitudes": [[0,0],[0.57735027,0],[0.57735027,0],[0,0],
                      [0.57735027,0],[0,0],[0,0],[0,0]]}"#;
        let psi = parse(text).unwrap();
        let a = 1.0 / 3f64.sqrt();
        for i in [1, 2, 4] {
            assert!((psi.amplitudes()[i].re - a).abs() < 1e-15);
        }
        assert!((vec_norm(psi.amplitudes()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn count_mismatch_is_schema_error() {
        let err = parse(r#"{"n_qubits": 2, "amplitudes": [[1,0],[0,0],[0,0]]}"#).unwrap_err();
        match err {
            Error::Schema { field, .. } => assert_eq!(field, "amplitudes"),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse("{"), Err(Error::Schema { .. })));
        assert!(matches!(
            parse(r#"{"amplitudes": []}"#),
            Err(Error::Schema { .. })
        ));
        let bad_pair = r#"{"n_qubits": 1, "amplitudes": [[1,0],[0]]}"#;
        match parse(bad_pair).unwrap_err() {
            Error::Schema { field, .. } => assert_eq!(field, "amplitudes[1]"),
            other => panic!("unexpected {other}"),
        }
        let bad_norm = r#"{"n_qubits": 1, "amplitudes": [[1,0],[0.01,0]]}"#;
        assert!(matches!(parse(bad_norm), Err(Error::Schema { .. })));
    }

    #[test]
    fn file_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("psi.json");
        for seed in 0..20 {
            let psi = PureState::haar_random(4, RngSeed(seed)).unwrap();
            save_state(&psi, &path).unwrap();
            let back = load_state(&path).unwrap();
            assert_eq!(back, psi);
        }
    }

    #[test]
    fn missing_file_names_path() {
        let err = load_state("/nonexistent/state.json")
            .unwrap_err()
            .to_string();
        assert!(err.contains("/nonexistent/state.json"));
    }
}
