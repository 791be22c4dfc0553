use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subcase {
    pub label: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Subcase {
    pub fn new(label: impl Into<String>, ok: bool, detail: Option<String>) -> Self {
        Self { label: label.into(), verdict: Verdict::from_bool(ok), detail }
    }
}

/// Machine-checkable verdict on one claim.
///
/// The verdict is `pass` exactly when every subcase passed, and a failed
/// certificate always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub claim_id: String,
    pub inputs_digest: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub subcases: Vec<Subcase>,
}

impl Certificate {
    /// Assembles a certificate. If it fails and no witness is given, the first
    /// failing subcase becomes the witness.
    pub fn assemble(
        claim_id: impl Into<String>,
        inputs: &[String],
        subcases: Vec<Subcase>,
        witness: Option<String>,
    ) -> Self {
        let claim_id = claim_id.into();
        let verdict = Verdict::from_bool(subcases.iter().all(|s| s.verdict.passed()));
        let witness = match verdict {
            Verdict::Pass => None,
            Verdict::Fail => witness.or_else(|| {
                subcases.iter().find(|s| !s.verdict.passed()).map(|s| match &s.detail {
                    Some(d) => format!("{}: {d}", s.label),
                    None => s.label.clone(),
                })
            }),
        };
        Self {
            inputs_digest: inputs_digest(&claim_id, inputs),
            claim_id,
            verdict,
            witness,
            subcases,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}

/// SHA-256 over the claim id and the canonical text of every input.
pub fn inputs_digest(claim_id: &str, inputs: &[String]) -> String {
    let mut h = Sha256::new();
    h.update(claim_id.as_bytes());
    for input in inputs {
        h.update([0u8]);
        h.update(input.as_bytes());
    }
    format!("sha256:{}", hex::encode(h.finalize()))
}
