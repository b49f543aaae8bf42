//! Domain vocabulary: coins, states, outcomes, itineraries, and scenarios.
//!
//! Everything here is an immutable value type. An [`Outcome`] is what the
//! scale reports over a whole strategy (one symbol per weighing), an
//! [`Itinerary`] is where one coin sits in each weighing, and a [`Scenario`]
//! says which automaton the fake coin follows and what is known about its
//! starting state.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Which weight-cycling automaton the fake coin follows.
///
/// The coin advances one step in its cycle each time it is placed on a pan,
/// never otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoinKind {
    /// Cycles light → heavy → light.
    Lh,
    /// Cycles light → real → light (the alternator).
    Lr,
    /// Cycles light → heavy → real → light.
    Lhr,
}

impl CoinKind {
    /// The states this kind can occupy, in cycle order starting from light.
    pub fn cycle(self) -> &'static [CoinState] {
        match self {
            CoinKind::Lh => &[CoinState::Light, CoinState::Heavy],
            CoinKind::Lr => &[CoinState::Light, CoinState::Real],
            CoinKind::Lhr => &[CoinState::Light, CoinState::Heavy, CoinState::Real],
        }
    }

    pub fn occupies(self, state: CoinState) -> bool {
        self.cycle().contains(&state)
    }

    pub fn name(self) -> &'static str {
        match self {
            CoinKind::Lh => "lh",
            CoinKind::Lr => "lr",
            CoinKind::Lhr => "lhr",
        }
    }
}

impl fmt::Display for CoinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoinKind {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s.to_ascii_lowercase().as_str() {
            "lh" => Ok(CoinKind::Lh),
            "lr" => Ok(CoinKind::Lr),
            "lhr" => Ok(CoinKind::Lhr),
            _ => Err(ParseError::new(format!("unknown coin kind `{s}`"))),
        }
    }
}

/// The phase a weight-changing coin is in while off the scale.
///
/// A light coin makes its pan lighter by one unit the next time it is
/// weighed, a heavy coin makes it heavier by one unit, and a real-state coin
/// weighs the reference weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoinState {
    Light,
    Heavy,
    Real,
}

impl CoinState {
    pub fn name(self) -> &'static str {
        match self {
            CoinState::Light => "light",
            CoinState::Heavy => "heavy",
            CoinState::Real => "real",
        }
    }
}

impl fmt::Display for CoinState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoinState {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s.to_ascii_lowercase().as_str() {
            "light" | "l" => Ok(CoinState::Light),
            "heavy" | "h" => Ok(CoinState::Heavy),
            "real" | "r" => Ok(CoinState::Real),
            _ => Err(ParseError::new(format!("unknown coin state `{s}`"))),
        }
    }
}

/// Error for a state the given coin kind can never occupy (an LH coin is
/// never real, an LR coin is never heavy).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvalidStateForKind {
    pub kind: CoinKind,
    pub state: CoinState,
}

impl fmt::Display for InvalidStateForKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "state `{}` is unreachable for {} coins", self.state, self.kind)
    }
}

impl std::error::Error for InvalidStateForKind {}

/// Advance a coin one step: identity off the scale, next state in the kind's
/// cycle when it was on a pan.
pub fn step_state(
    kind: CoinKind,
    state: CoinState,
    on_scale: bool,
) -> Result<CoinState, InvalidStateForKind> {
    let cycle = kind.cycle();
    let pos = cycle
        .iter()
        .position(|&s| s == state)
        .ok_or(InvalidStateForKind { kind, state })?;
    Ok(if on_scale {
        cycle[(pos + 1) % cycle.len()]
    } else {
        state
    })
}

/// One weighing's result. `Lt` means the left pan was lighter, `Gt` means
/// the right pan was lighter. The variant order gives the canonical
/// lexicographic order `=` < `<` < `>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Eq,
    Lt,
    Gt,
}

impl Symbol {
    pub fn conjugate(self) -> Symbol {
        match self {
            Symbol::Eq => Symbol::Eq,
            Symbol::Lt => Symbol::Gt,
            Symbol::Gt => Symbol::Lt,
        }
    }

    pub fn is_imbalance(self) -> bool {
        self != Symbol::Eq
    }

    pub fn ch(self) -> char {
        match self {
            Symbol::Eq => '=',
            Symbol::Lt => '<',
            Symbol::Gt => '>',
        }
    }

    pub fn from_ch(c: char) -> Result<Symbol, ParseError> {
        match c {
            '=' => Ok(Symbol::Eq),
            '<' => Ok(Symbol::Lt),
            '>' => Ok(Symbol::Gt),
            _ => Err(ParseError::new(format!("invalid outcome symbol `{c}`"))),
        }
    }

    pub const ALL: [Symbol; 3] = [Symbol::Eq, Symbol::Lt, Symbol::Gt];
}

/// A coin's position in one weighing: left pan, right pan, or off the scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Placement {
    Left,
    Right,
    Out,
}

impl Placement {
    pub fn conjugate(self) -> Placement {
        match self {
            Placement::Left => Placement::Right,
            Placement::Right => Placement::Left,
            Placement::Out => Placement::Out,
        }
    }

    pub fn on_scale(self) -> bool {
        self != Placement::Out
    }

    pub fn ch(self) -> char {
        match self {
            Placement::Left => 'L',
            Placement::Right => 'R',
            Placement::Out => 'O',
        }
    }

    pub fn from_ch(c: char) -> Result<Placement, ParseError> {
        match c {
            'L' => Ok(Placement::Left),
            'R' => Ok(Placement::Right),
            'O' => Ok(Placement::Out),
            _ => Err(ParseError::new(format!("invalid itinerary letter `{c}`"))),
        }
    }
}

/// The scale's responses over a whole strategy, canonically written over
/// the alphabet `=<>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Outcome(Vec<Symbol>);

impl Outcome {
    pub fn new(symbols: Vec<Symbol>) -> Outcome {
        Outcome(symbols)
    }

    /// The all-`=` outcome of the given length, the unique self-conjugate one.
    pub fn all_balanced(w: usize) -> Outcome {
        Outcome(vec![Symbol::Eq; w])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Symbol {
        self.0[i]
    }

    /// Swap `<` ↔ `>` pointwise; `=` is fixed.
    pub fn conjugate(&self) -> Outcome {
        Outcome(self.0.iter().map(|s| s.conjugate()).collect())
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.0.iter().all(|s| !s.is_imbalance())
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.ch())?;
        }
        Ok(())
    }
}

impl FromStr for Outcome {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        s.chars().map(Symbol::from_ch).collect::<Result<_, _>>().map(Outcome)
    }
}

impl Serialize for Outcome {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Outcome {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One coin's placement schedule, canonically written over the alphabet `LRO`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Itinerary(Vec<Placement>);

impl Itinerary {
    pub fn new(letters: Vec<Placement>) -> Itinerary {
        Itinerary(letters)
    }

    /// The all-`O` itinerary of the given length, the unique self-conjugate one.
    pub fn all_out(w: usize) -> Itinerary {
        Itinerary(vec![Placement::Out; w])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Placement] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Placement {
        self.0[i]
    }

    /// Swap `L` ↔ `R` pointwise; `O` is fixed.
    pub fn conjugate(&self) -> Itinerary {
        Itinerary(self.0.iter().map(|p| p.conjugate()).collect())
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.0.iter().all(|p| !p.on_scale())
    }
}

impl fmt::Display for Itinerary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.ch())?;
        }
        Ok(())
    }
}

impl FromStr for Itinerary {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        s.chars().map(Placement::from_ch).collect::<Result<_, _>>().map(Itinerary)
    }
}

impl Serialize for Itinerary {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Itinerary {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// What is known about the fake coin's starting state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StartInfo {
    /// Every coin, if fake, starts in this one state.
    Known(CoinState),
    /// Coins are assigned states in blocks: the first `light` coins start
    /// light if fake, the next `heavy` start heavy, the next `real` start
    /// real, and any remaining coins are proven genuine ballast.
    Mixed { light: usize, heavy: usize, real: usize },
    /// Any starting state the kind occupies is possible for every coin.
    Unknown,
}

/// The full problem statement an oblivious strategy answers: which automaton,
/// what is known of the start, and how many coins there are.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub kind: CoinKind,
    pub start: StartInfo,
    pub num_coins: usize,
}

impl Scenario {
    pub fn known(
        kind: CoinKind,
        start: CoinState,
        num_coins: usize,
    ) -> Result<Scenario, InvalidStateForKind> {
        if !kind.occupies(start) {
            return Err(InvalidStateForKind { kind, state: start });
        }
        Ok(Scenario { kind, start: StartInfo::Known(start), num_coins })
    }

    /// Mixed scenario over `light + heavy + real` suspect coins plus
    /// `genuine` ballast coins.
    pub fn mixed(
        kind: CoinKind,
        light: usize,
        heavy: usize,
        real: usize,
        genuine: usize,
    ) -> Result<Scenario, InvalidStateForKind> {
        if heavy > 0 && !kind.occupies(CoinState::Heavy) {
            return Err(InvalidStateForKind { kind, state: CoinState::Heavy });
        }
        if real > 0 && !kind.occupies(CoinState::Real) {
            return Err(InvalidStateForKind { kind, state: CoinState::Real });
        }
        Ok(Scenario {
            kind,
            start: StartInfo::Mixed { light, heavy, real },
            num_coins: light + heavy + real + genuine,
        })
    }

    pub fn unknown(kind: CoinKind, num_coins: usize) -> Scenario {
        Scenario { kind, start: StartInfo::Unknown, num_coins }
    }

    /// The assigned starting state of one coin, `None` for genuine ballast.
    /// For unknown scenarios there is no single assignment; use
    /// [`Scenario::admissible_states`].
    pub fn assigned_state(&self, coin: usize) -> Option<CoinState> {
        match &self.start {
            StartInfo::Known(s) => Some(*s),
            StartInfo::Mixed { light, heavy, real } => {
                if coin < *light {
                    Some(CoinState::Light)
                } else if coin < light + heavy {
                    Some(CoinState::Heavy)
                } else if coin < light + heavy + real {
                    Some(CoinState::Real)
                } else {
                    None
                }
            }
            StartInfo::Unknown => None,
        }
    }

    /// All starting states under which `coin` may turn out to be the fake.
    /// Empty for genuine ballast coins in mixed scenarios.
    pub fn admissible_states(&self, coin: usize) -> Vec<CoinState> {
        match &self.start {
            StartInfo::Known(s) => vec![*s],
            StartInfo::Mixed { .. } => self.assigned_state(coin).into_iter().collect(),
            StartInfo::Unknown => self.kind.cycle().to_vec(),
        }
    }

    pub fn admits(&self, coin: usize, state: CoinState) -> bool {
        coin < self.num_coins && self.admissible_states(coin).contains(&state)
    }

    /// Number of coins that could turn out fake (excludes genuine ballast).
    pub fn suspects(&self) -> usize {
        match &self.start {
            StartInfo::Mixed { light, heavy, real } => light + heavy + real,
            _ => self.num_coins,
        }
    }
}

/// One "the fake is coin `coin` and started in `start`" case the verifier
/// simulates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypothesis {
    pub coin: usize,
    pub start: CoinState,
}

/// Errors building a [`Strategy`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyError {
    CoinCountMismatch { coins: usize, itineraries: usize },
    UnevenItineraryLength,
}

impl fmt::Display for StrategyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyError::CoinCountMismatch { coins, itineraries } => write!(
                f,
                "scenario names {coins} coins but {itineraries} itineraries were given"
            ),
            StrategyError::UnevenItineraryLength => {
                f.write_str("itineraries must all have the same length")
            }
        }
    }
}

impl std::error::Error for StrategyError {}

/// An oblivious weighing plan: one itinerary per coin, plus the scenario the
/// plan answers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strategy {
    pub scenario: Scenario,
    pub itineraries: Vec<Itinerary>,
}

impl Strategy {
    pub fn new(scenario: Scenario, itineraries: Vec<Itinerary>) -> Result<Strategy, StrategyError> {
        if itineraries.len() != scenario.num_coins {
            return Err(StrategyError::CoinCountMismatch {
                coins: scenario.num_coins,
                itineraries: itineraries.len(),
            });
        }
        let w = itineraries.first().map_or(0, Itinerary::len);
        if itineraries.iter().any(|it| it.len() != w) {
            return Err(StrategyError::UnevenItineraryLength);
        }
        Ok(Strategy { scenario, itineraries })
    }

    /// Number of weighings the plan prescribes.
    pub fn weighings(&self) -> usize {
        self.itineraries.first().map_or(0, Itinerary::len)
    }

    /// How many coins sit on each pan in weighing `i`.
    pub fn pan_counts(&self, i: usize) -> (usize, usize) {
        let mut left = 0;
        let mut right = 0;
        for it in &self.itineraries {
            match it.get(i) {
                Placement::Left => left += 1,
                Placement::Right => right += 1,
                Placement::Out => {}
            }
        }
        (left, right)
    }
}

/// Error for malformed textual encodings of outcomes, itineraries, kinds,
/// and states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError(String);

impl ParseError {
    pub fn new(msg: String) -> ParseError {
        ParseError(msg)
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}
