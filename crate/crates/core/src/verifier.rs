//! Deterministic simulation of a strategy against every fake-coin hypothesis,
//! plus legitimacy and decodability checking.
//!
//! Pan weights are integers: a genuine coin contributes 0, a light fake -1,
//! a heavy fake +1. With a single fake coin this means each weighing's symbol
//! is decided entirely by where the fake sits and which state it is in.
//!
//! Verification is exhaustive, never sampled: every admissible hypothesis is
//! simulated and the outcome map is checked coin by coin.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::coin::{
    step_state, CoinState, Hypothesis, Outcome, Placement, Strategy, Symbol,
};

/// Errors from simulation, decodability checking, and decoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifierError {
    /// The hypothesis names a coin or state the scenario does not admit.
    InconsistentHypothesis(Hypothesis),
    /// The strategy puts unequal numbers of coins on the pans somewhere.
    IllegitimateStrategy { weighing: usize, left: usize, right: usize },
    /// Decoding was asked for an outcome no hypothesis produces.
    OutcomeNotProducible(Outcome),
    /// Decoding was asked against a strategy that is not decodable.
    NotDecodable,
}

impl fmt::Display for VerifierError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifierError::InconsistentHypothesis(h) => write!(
                f,
                "hypothesis (coin {}, {}) is not admitted by the scenario",
                h.coin, h.start
            ),
            VerifierError::IllegitimateStrategy { weighing, left, right } => write!(
                f,
                "weighing {weighing} puts {left} coins on the left pan and {right} on the right"
            ),
            VerifierError::OutcomeNotProducible(x) => {
                write!(f, "outcome `{x}` is not producible under any hypothesis")
            }
            VerifierError::NotDecodable => f.write_str("strategy is not decodable"),
        }
    }
}

impl std::error::Error for VerifierError {}

/// Per-weighing pan sizes together with the overall verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LegitimacyReport {
    pub legitimate: bool,
    /// `(left, right)` coin counts for each weighing.
    pub pan_counts: Vec<(usize, usize)>,
}

/// Everything the exhaustive check learned about a strategy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub legitimate: bool,
    pub decodable: bool,
    /// Every producible outcome with the hypotheses that produce it.
    pub outcome_map: BTreeMap<Outcome, Vec<Hypothesis>>,
    pub violations: Vec<String>,
}

/// The verdict [`decode`] returns: which coin is fake, and its starting
/// state when the outcome pins it down. The all-balanced outcome of an
/// unknown-state scenario points at a never-weighed coin without revealing
/// its state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub coin: usize,
    /// `None` means the state is ambiguous.
    pub state: Option<CoinState>,
}

/// Run the weighings for one hypothesis and report the scale's responses.
pub fn simulate(strategy: &Strategy, hyp: Hypothesis) -> Result<Outcome, VerifierError> {
    if !strategy.scenario.admits(hyp.coin, hyp.start) {
        return Err(VerifierError::InconsistentHypothesis(hyp));
    }
    let kind = strategy.scenario.kind;
    let itinerary = &strategy.itineraries[hyp.coin];
    let mut state = hyp.start;
    let mut symbols = Vec::with_capacity(itinerary.len());
    for &placement in itinerary.letters() {
        let symbol = match (placement, state) {
            (Placement::Out, _) | (_, CoinState::Real) => Symbol::Eq,
            (Placement::Left, CoinState::Light) => Symbol::Lt,
            (Placement::Left, CoinState::Heavy) => Symbol::Gt,
            (Placement::Right, CoinState::Light) => Symbol::Gt,
            (Placement::Right, CoinState::Heavy) => Symbol::Lt,
        };
        symbols.push(symbol);
        state = step_state(kind, state, placement.on_scale())
            .expect("scenario admitted the state, so the kind occupies it");
    }
    Ok(Outcome::new(symbols))
}

/// Equal pan sizes in every weighing.
pub fn check_legitimate(strategy: &Strategy) -> LegitimacyReport {
    let pan_counts: Vec<_> = (0..strategy.weighings()).map(|i| strategy.pan_counts(i)).collect();
    let legitimate = pan_counts.iter().all(|&(l, r)| l == r);
    LegitimacyReport { legitimate, pan_counts }
}

/// Simulate every admissible hypothesis and decide decodability: each
/// producible outcome must name at most one coin. The same coin may show up
/// under several states only on the all-balanced outcome of a never-weighed
/// coin, which is the one ambiguity the scenario semantics allow.
pub fn verify_decodable(strategy: &Strategy) -> Result<VerificationReport, VerifierError> {
    let legitimacy = check_legitimate(strategy);
    if !legitimacy.legitimate {
        let (weighing, &(left, right)) = legitimacy
            .pan_counts
            .iter()
            .enumerate()
            .find(|(_, &(l, r))| l != r)
            .expect("an illegitimate strategy has an uneven weighing");
        return Err(VerifierError::IllegitimateStrategy { weighing, left, right });
    }

    let mut outcome_map: BTreeMap<Outcome, Vec<Hypothesis>> = BTreeMap::new();
    for coin in 0..strategy.scenario.num_coins {
        for start in strategy.scenario.admissible_states(coin) {
            let hyp = Hypothesis { coin, start };
            let outcome = simulate(strategy, hyp)?;
            outcome_map.entry(outcome).or_default().push(hyp);
        }
    }

    let mut violations = Vec::new();
    for (outcome, hyps) in &outcome_map {
        let mut coins: Vec<usize> = hyps.iter().map(|h| h.coin).collect();
        coins.dedup();
        if coins.len() > 1 {
            violations.push(format!(
                "outcome `{outcome}` points at {} different coins: {:?}",
                coins.len(),
                coins
            ));
        }
    }

    Ok(VerificationReport {
        legitimate: true,
        decodable: violations.is_empty(),
        outcome_map,
        violations,
    })
}

/// Invert the outcome map: name the fake coin an observed outcome convicts.
pub fn decode(strategy: &Strategy, observed: &Outcome) -> Result<Decoded, VerifierError> {
    let report = verify_decodable(strategy)?;
    if !report.decodable {
        return Err(VerifierError::NotDecodable);
    }
    let hyps = report
        .outcome_map
        .get(observed)
        .ok_or_else(|| VerifierError::OutcomeNotProducible(observed.clone()))?;
    let coin = hyps[0].coin;
    let state = if hyps.len() == 1 { Some(hyps[0].start) } else { None };
    Ok(Decoded { coin, state })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::{CoinKind, Itinerary, Scenario};

    fn strategy(kind: CoinKind, itineraries: &[&str]) -> Strategy {
        let its: Vec<Itinerary> = itineraries.iter().map(|s| s.parse().unwrap()).collect();
        Strategy::new(Scenario::unknown(kind, its.len()), its).unwrap()
    }

    #[test]
    fn all_out_coin_always_balances() {
        let s = strategy(CoinKind::Lhr, &["LL", "RR", "OO"]);
        for start in CoinKind::Lhr.cycle() {
            let x = simulate(&s, Hypothesis { coin: 2, start: *start }).unwrap();
            assert_eq!(x, Outcome::all_balanced(2));
        }
    }

    #[test]
    fn simulation_follows_the_cycle() {
        let s = strategy(CoinKind::Lhr, &["LLL", "RRR", "OOO"]);
        let x = simulate(&s, Hypothesis { coin: 0, start: CoinState::Light }).unwrap();
        assert_eq!(x.to_string(), "<>=");
        let x = simulate(&s, Hypothesis { coin: 0, start: CoinState::Heavy }).unwrap();
        assert_eq!(x.to_string(), ">=<");
        let x = simulate(&s, Hypothesis { coin: 0, start: CoinState::Real }).unwrap();
        assert_eq!(x.to_string(), "=<>");
    }

    #[test]
    fn inconsistent_hypothesis_is_rejected() {
        let s = strategy(CoinKind::Lr, &["LL", "RR"]);
        let err = simulate(&s, Hypothesis { coin: 0, start: CoinState::Heavy });
        assert!(matches!(err, Err(VerifierError::InconsistentHypothesis(_))));
        let err = simulate(&s, Hypothesis { coin: 5, start: CoinState::Light });
        assert!(matches!(err, Err(VerifierError::InconsistentHypothesis(_))));
    }

    #[test]
    fn uneven_pans_are_illegitimate() {
        let s = strategy(CoinKind::Lh, &["L", "L"]);
        let report = check_legitimate(&s);
        assert!(!report.legitimate);
        assert_eq!(report.pan_counts, vec![(2, 0)]);
        assert!(matches!(
            verify_decodable(&s),
            Err(VerifierError::IllegitimateStrategy { weighing: 0, left: 2, right: 0 })
        ));
    }

    #[test]
    fn duplicate_itineraries_are_not_decodable() {
        let s = Strategy::new(
            Scenario::known(CoinKind::Lh, CoinState::Light, 4).unwrap(),
            vec![
                "LO".parse().unwrap(),
                "LO".parse().unwrap(),
                "RO".parse().unwrap(),
                "RO".parse().unwrap(),
            ],
        )
        .unwrap();
        let report = verify_decodable(&s).unwrap();
        assert!(report.legitimate);
        assert!(!report.decodable);
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn decode_round_trip_on_a_small_strategy() {
        let s = strategy(CoinKind::Lr, &["LL", "OO", "RR"]);
        let report = verify_decodable(&s).unwrap();
        assert!(report.decodable);
        let d = decode(&s, &"<=".parse().unwrap()).unwrap();
        assert_eq!((d.coin, d.state), (0, Some(CoinState::Light)));
        let d = decode(&s, &"==".parse().unwrap()).unwrap();
        assert_eq!((d.coin, d.state), (1, None));
        assert!(matches!(
            decode(&s, &"<<".parse().unwrap()),
            Err(VerifierError::OutcomeNotProducible(_))
        ));
    }
}
