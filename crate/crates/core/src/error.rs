use thiserror::Error;

/// Error type shared by all modules.
///
/// `InvariantBreach` carries a serialized witness so that callers (notably the
/// CLI, which maps it to exit code 4) can always emit the failing object.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("internal invariant breached: {what}")]
    InvariantBreach { what: String, witness: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("format error: {0}")]
    Format(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invariant<W: serde::Serialize>(what: impl Into<String>, witness: &W) -> Error {
        Error::InvariantBreach {
            what: what.into(),
            witness: serde_json::to_string(witness).unwrap_or_else(|_| "<unserializable>".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_breach_carries_witness() {
        let err = Error::invariant("chi mismatch", &serde_json::json!({"chi": 1, "betti_chi": 0}));
        match err {
            Error::InvariantBreach { witness, .. } => {
                assert!(witness.contains("chi"));
            }
            _ => panic!("wrong variant"),
        }
    }
}
