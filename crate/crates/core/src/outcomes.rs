//! Which outcome strings a given coin can produce, and the exclusive-group
//! partition of the LHR-valid outcomes.
//!
//! Validity is implemented twice on purpose: [`is_valid_outcome`] applies the
//! pattern rules over imbalance parities, while [`is_reachable_outcome`]
//! searches for an itinerary whose simulation produces the string. The test
//! suite asserts the two agree; the enumeration feeds off the pattern rules.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coin::{step_state, CoinKind, CoinState, InvalidStateForKind, Outcome, Symbol};

/// Which starting states can produce an LHR outcome: exactly light (`Lx`),
/// exactly heavy (`Hx`), light-or-real (`Lrx`), light-or-heavy (`Lhx`), or
/// all three (`Lhrx`). The remaining combinations are empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum XGroup {
    Lx,
    Hx,
    Lrx,
    Lhx,
    Lhrx,
}

/// Error for a string no LHR starting state can produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotAValidLhrOutcome(pub Outcome);

impl fmt::Display for NotAValidLhrOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}` is not producible by an LHR coin in any starting state", self.0)
    }
}

impl std::error::Error for NotAValidLhrOutcome {}

/// Alternator pattern: imbalances cannot follow each other.
fn no_adjacent_imbalances(x: &Outcome) -> bool {
    x.symbols().windows(2).all(|p| !(p[0].is_imbalance() && p[1].is_imbalance()))
}

/// Imbalance-parity rule shared by the LHR cases: every imbalance of the
/// banned parity that is not at the end must be followed by `=`.
/// `banned_even` selects even imbalances (light/real start) vs odd (heavy).
fn parity_rule(x: &Outcome, banned_even: bool) -> bool {
    let mut ordinal = 0usize;
    let symbols = x.symbols();
    for (i, s) in symbols.iter().enumerate() {
        if s.is_imbalance() {
            ordinal += 1;
            let banned = if banned_even { ordinal % 2 == 0 } else { ordinal % 2 == 1 };
            if banned && i + 1 < symbols.len() && symbols[i + 1].is_imbalance() {
                return false;
            }
        }
    }
    true
}

fn starts_balanced(x: &Outcome) -> bool {
    x.is_empty() || x.get(0) == Symbol::Eq
}

/// Pattern-rule validity: can some itinerary of the fake coin, starting in
/// `start`, produce `x`?
pub fn is_valid_outcome(
    kind: CoinKind,
    start: CoinState,
    x: &Outcome,
) -> Result<bool, InvalidStateForKind> {
    if !kind.occupies(start) {
        return Err(InvalidStateForKind { kind, state: start });
    }
    Ok(match (kind, start) {
        (CoinKind::Lh, _) => true,
        (CoinKind::Lr, CoinState::Light) => no_adjacent_imbalances(x),
        (CoinKind::Lr, CoinState::Real) => no_adjacent_imbalances(x) && starts_balanced(x),
        (CoinKind::Lhr, CoinState::Light) => parity_rule(x, true),
        (CoinKind::Lhr, CoinState::Heavy) => parity_rule(x, false),
        (CoinKind::Lhr, CoinState::Real) => parity_rule(x, true) && starts_balanced(x),
        _ => unreachable!("occupies() filtered impossible pairs"),
    })
}

/// Simulation-oracle validity: is there an itinerary whose per-weighing
/// simulation from `start` emits exactly `x`? Searches placements position by
/// position, pruning on the emitted symbol.
pub fn is_reachable_outcome(
    kind: CoinKind,
    start: CoinState,
    x: &Outcome,
) -> Result<bool, InvalidStateForKind> {
    if !kind.occupies(start) {
        return Err(InvalidStateForKind { kind, state: start });
    }

    fn search(kind: CoinKind, state: CoinState, x: &Outcome, i: usize) -> bool {
        if i == x.len() {
            return true;
        }
        match x.get(i) {
            Symbol::Eq => {
                // Off the scale, or on a pan while real (either pan works the
                // same, so trying one suffices).
                if search(kind, state, x, i + 1) {
                    return true;
                }
                state == CoinState::Real
                    && search(kind, step_state(kind, state, true).unwrap(), x, i + 1)
            }
            // The fake alone tips the scale: a light coin shows up on the
            // lighter pan, a heavy coin on the heavier one.
            Symbol::Lt | Symbol::Gt => {
                (state == CoinState::Light || state == CoinState::Heavy)
                    && search(kind, step_state(kind, state, true).unwrap(), x, i + 1)
            }
        }
    }

    Ok(search(kind, start, x, 0))
}

/// All outcomes of length `w` valid for at least one of `starts`, in
/// lexicographic order over `=<>`.
pub fn enumerate_outcomes(kind: CoinKind, starts: &[CoinState], w: usize) -> Vec<Outcome> {
    let mut result = Vec::new();
    let mut buf = Vec::with_capacity(w);
    generate(kind, starts, w, &mut buf, &mut result);
    result
}

fn generate(
    kind: CoinKind,
    starts: &[CoinState],
    w: usize,
    buf: &mut Vec<Symbol>,
    out: &mut Vec<Outcome>,
) {
    if buf.len() == w {
        let x = Outcome::new(buf.clone());
        if starts
            .iter()
            .any(|&s| is_valid_outcome(kind, s, &x).unwrap_or(false))
        {
            out.push(x);
        }
        return;
    }
    for s in Symbol::ALL {
        buf.push(s);
        generate(kind, starts, w, buf, out);
        buf.pop();
    }
}

/// The unique exclusive group of an LHR-valid outcome.
pub fn classify_xgroup(x: &Outcome) -> Result<XGroup, NotAValidLhrOutcome> {
    let in_l = is_valid_outcome(CoinKind::Lhr, CoinState::Light, x).unwrap();
    let in_h = is_valid_outcome(CoinKind::Lhr, CoinState::Heavy, x).unwrap();
    let in_r = is_valid_outcome(CoinKind::Lhr, CoinState::Real, x).unwrap();
    match (in_l, in_h, in_r) {
        (true, true, true) => Ok(XGroup::Lhrx),
        (true, true, false) => Ok(XGroup::Lhx),
        (true, false, true) => Ok(XGroup::Lrx),
        (true, false, false) => Ok(XGroup::Lx),
        (false, true, false) => Ok(XGroup::Hx),
        (false, false, false) => Err(NotAValidLhrOutcome(x.clone())),
        // R-valid outcomes start with `=` and satisfy the light rule, so the
        // R set sits inside the L set and these cases cannot occur.
        (false, _, true) => unreachable!("R-valid outcome outside the L set"),
    }
}
