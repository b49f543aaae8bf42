//! The on-disk strategy interchange format (`.wwjson`): a single JSON
//! document with the canonical text encodings, `=<>` for outcomes and `LRO`
//! for itineraries. Parsing rebuilds the in-memory [`Strategy`] and
//! validates the shape, so the document round-trips losslessly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coin::{CoinKind, CoinState, Itinerary, Scenario, StartInfo, Strategy};

pub const FORMAT_VERSION: &str = "1";

/// Scenario as stored in the document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ScenarioDoc {
    Known { state: String },
    /// Suspect counts as "l:h:r"; coins are ordered light block, heavy
    /// block, real block, then genuine ballast up to `num_coins`.
    Mixed { counts: String },
    Unknown,
}

/// A serialized oblivious strategy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyDocument {
    pub version: String,
    pub coin_kind: String,
    pub scenario: ScenarioDoc,
    pub num_coins: usize,
    pub weighings: usize,
    pub itineraries: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// Errors reading a strategy document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DocumentError {
    Json(String),
    UnsupportedVersion(String),
    Malformed(String),
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocumentError::Json(e) => write!(f, "invalid JSON: {e}"),
            DocumentError::UnsupportedVersion(v) => write!(f, "unsupported format version `{v}`"),
            DocumentError::Malformed(e) => write!(f, "malformed strategy document: {e}"),
        }
    }
}

impl std::error::Error for DocumentError {}

impl StrategyDocument {
    pub fn from_strategy(strategy: &Strategy, provenance: Option<String>) -> StrategyDocument {
        let scenario = match &strategy.scenario.start {
            StartInfo::Known(s) => ScenarioDoc::Known { state: s.to_string() },
            StartInfo::Mixed { light, heavy, real } => {
                ScenarioDoc::Mixed { counts: format!("{light}:{heavy}:{real}") }
            }
            StartInfo::Unknown => ScenarioDoc::Unknown,
        };
        StrategyDocument {
            version: FORMAT_VERSION.to_string(),
            coin_kind: strategy.scenario.kind.to_string(),
            scenario,
            num_coins: strategy.scenario.num_coins,
            weighings: strategy.weighings(),
            itineraries: strategy.itineraries.iter().map(|it| it.to_string()).collect(),
            provenance,
        }
    }

    pub fn to_strategy(&self) -> Result<Strategy, DocumentError> {
        if self.version != FORMAT_VERSION {
            return Err(DocumentError::UnsupportedVersion(self.version.clone()));
        }
        let malformed = |msg: String| DocumentError::Malformed(msg);
        let kind: CoinKind =
            self.coin_kind.parse().map_err(|e| malformed(format!("coin_kind: {e}")))?;
        let scenario = match &self.scenario {
            ScenarioDoc::Known { state } => {
                let state: CoinState =
                    state.parse().map_err(|e| malformed(format!("scenario state: {e}")))?;
                Scenario::known(kind, state, self.num_coins)
                    .map_err(|e| malformed(e.to_string()))?
            }
            ScenarioDoc::Mixed { counts } => {
                let (l, h, r) = parse_mixed_counts(counts).map_err(malformed)?;
                let suspects = l + h + r;
                let genuine = self.num_coins.checked_sub(suspects).ok_or_else(|| {
                    malformed(format!("counts `{counts}` exceed num_coins = {}", self.num_coins))
                })?;
                Scenario::mixed(kind, l, h, r, genuine).map_err(|e| malformed(e.to_string()))?
            }
            ScenarioDoc::Unknown => Scenario::unknown(kind, self.num_coins),
        };
        let itineraries: Vec<Itinerary> = self
            .itineraries
            .iter()
            .map(|s| s.parse().map_err(|e| malformed(format!("itinerary `{s}`: {e}"))))
            .collect::<Result<_, _>>()?;
        if itineraries.iter().any(|it| it.len() != self.weighings) {
            return Err(malformed(format!(
                "every itinerary must have length {} (the weighings field)",
                self.weighings
            )));
        }
        Strategy::new(scenario, itineraries).map_err(|e| malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn parse(json: &str) -> Result<StrategyDocument, DocumentError> {
        serde_json::from_str(json).map_err(|e| DocumentError::Json(e.to_string()))
    }
}

/// Parse an `l:h:r` counts string (or `l:h` for two-state kinds, meaning
/// light and the kind's second state).
pub fn parse_mixed_counts(counts: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = counts.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("counts `{counts}` must be l:h:r"));
    }
    let mut nums = parts.iter().map(|p| p.trim().parse::<usize>());
    match (nums.next(), nums.next(), nums.next()) {
        (Some(Ok(l)), Some(Ok(h)), Some(Ok(r))) => Ok((l, h, r)),
        _ => Err(format!("counts `{counts}` must be three non-negative integers")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthesis::{builtin_strategy, BuiltinId};

    #[test]
    fn builtin_documents_round_trip() {
        for id in [BuiltinId::LrUnknownW4C11, BuiltinId::LhrUnknownW3C6] {
            let strategy = builtin_strategy(id);
            let doc = StrategyDocument::from_strategy(&strategy, Some(id.name().to_string()));
            let parsed = StrategyDocument::parse(&doc.to_json()).unwrap();
            assert_eq!(parsed, doc);
            assert_eq!(parsed.to_strategy().unwrap(), strategy);
        }
    }

    #[test]
    fn mixed_documents_carry_the_block_convention() {
        let strategy = crate::synthesis::synth_lhr_mixed(0, 11, 1, 3, 1).unwrap();
        let doc = StrategyDocument::from_strategy(&strategy, None);
        assert_eq!(doc.scenario, ScenarioDoc::Mixed { counts: "0:11:1".into() });
        assert_eq!(doc.num_coins, 13);
        let back = doc.to_strategy().unwrap();
        assert_eq!(back, strategy);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(matches!(StrategyDocument::parse("{"), Err(DocumentError::Json(_))));
        let doc = StrategyDocument {
            version: "99".into(),
            coin_kind: "lhr".into(),
            scenario: ScenarioDoc::Unknown,
            num_coins: 1,
            weighings: 1,
            itineraries: vec!["O".into()],
            provenance: None,
        };
        assert!(matches!(doc.to_strategy(), Err(DocumentError::UnsupportedVersion(_))));
        let doc = StrategyDocument {
            version: "1".into(),
            coin_kind: "lhr".into(),
            scenario: ScenarioDoc::Unknown,
            num_coins: 2,
            weighings: 2,
            itineraries: vec!["LR".into(), "RLX".into()],
            provenance: None,
        };
        assert!(matches!(doc.to_strategy(), Err(DocumentError::Malformed(_))));
    }
}
