use chrono::{DateTime, SecondsFormat, Utc};
use serde::Serialize;

use qubit_monogamy::tolerance::TABLE_VERSION;

/// Provenance block embedded in every output.
///
/// The timestamp is left out unless `--stamp` is given or
/// `SOURCE_DATE_EPOCH` is set, so that reruns are byte-identical.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command_line: String,
    pub seed: Option<u64>,
    pub tolerance_table: &'static str,
    pub tool_version: &'static str,
    pub timestamp: Option<String>,
}

fn quote(arg: &str) -> String {
    let plain = !arg.is_empty()
        && arg
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "-_.,/=:+√".contains(c));
    if plain {
        arg.to_string()
    } else {
        format!("'{}'", arg.replace('\'', r"'\''"))
    }
}

fn source_date_epoch() -> Option<DateTime<Utc>> {
    let secs: i64 = std::env::var("SOURCE_DATE_EPOCH")
        .ok()?
        .trim()
        .parse()
        .ok()?;
    DateTime::from_timestamp(secs, 0)
}

impl RunManifest {
    pub fn capture(stamp: bool, seed: Option<u64>) -> Self {
        let args = std::env::args().skip(1).map(|a| quote(&a));
        let command_line = std::iter::once("monogamy".to_string())
            .chain(args)
            .collect::<Vec<_>>()
            .join(" ");
        let time = if stamp {
            Some(Utc::now())
        } else {
            source_date_epoch()
        };
        Self {
            command_line,
            seed,
            tolerance_table: TABLE_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            timestamp: time.map(|t| t.to_rfc3339_opts(SecondsFormat::Secs, true)),
        }
    }

    /// `# key: value` lines for CSV and text outputs.
    pub fn comment_lines(&self) -> String {
        let seed = self.seed.map_or("none".to_string(), |s| s.to_string());
        let timestamp = self.timestamp.as_deref().unwrap_or("none");
        format!(
            "# command: {}\n# seed: {seed}\n# tolerance_table: {}\n# tool_version: {}\n# timestamp: {timestamp}\n",
            self.command_line, self.tolerance_table, self.tool_version
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting() {
        assert_eq!(quote("--alphas"), "--alphas");
        assert_eq!(quote("-2,-1,0"), "-2,-1,0");
        assert_eq!(quote("my file.json"), "'my file.json'");
        assert_eq!(quote(""), "''");
    }

    #[test]
    fn comment_block() {
        let m = RunManifest {
            command_line: "monogamy fuzz".into(),
            seed: Some(7),
            tolerance_table: "tol-1",
            tool_version: "0.1.0",
            timestamp: None,
        };
        let text = m.comment_lines();
        assert!(text.lines().all(|l| l.starts_with("# ")));
        assert!(text.contains("# seed: 7\n") && text.contains("# timestamp: none\n"));
    }
}
