//! Machine-readable experiment reports. Reports are JSON with sorted
//! object keys; two runs with identical inputs produce byte-identical
//! output except for the `generated_at` field.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::WindowParams;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub experiment: String,
    /// SHA-256 of the spec file contents.
    pub spec_hash: String,
    pub window: WindowParams,
    pub seed: u64,
    /// Seconds since the epoch; the only field excluded from
    /// reproducibility comparisons.
    pub generated_at: u64,
    pub verdict: Verdict,
    /// Experiment-specific results; every numeric claim carries the
    /// window parameters it was computed under.
    pub results: Value,
    /// Certificate files written alongside the report, relative paths.
    pub certificates: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    BudgetExceeded,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::BudgetExceeded => 2,
        }
    }
}

impl Report {
    pub fn new(experiment: &str, spec_text: &str, window: WindowParams, seed: u64) -> Report {
        Report {
            tool: "fdclab",
            version: env!("CARGO_PKG_VERSION"),
            experiment: experiment.to_string(),
            spec_hash: sha256_hex(spec_text.as_bytes()),
            window,
            seed,
            generated_at: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            verdict: Verdict::Pass,
            results: Value::Null,
            certificates: Vec::new(),
        }
    }

    /// Pretty JSON with a trailing newline. serde_json maps are
    /// BTree-backed, so object keys are sorted and the output is
    /// deterministic.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_deterministic_apart_from_timestamp() {
        let mut a = Report::new("balls", "spec", WindowParams::default(), 7);
        let mut b = Report::new("balls", "spec", WindowParams::default(), 7);
        a.generated_at = 0;
        b.generated_at = 0;
        a.results = serde_json::json!({"z": 1, "a": 2});
        b.results = serde_json::json!({"a": 2, "z": 1});
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn hash_is_stable() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Verdict::Pass.exit_code(), 0);
        assert_eq!(Verdict::Fail.exit_code(), 1);
        assert_eq!(Verdict::BudgetExceeded.exit_code(), 2);
    }
}
