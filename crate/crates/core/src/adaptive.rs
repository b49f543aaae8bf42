//! Adversarial game-tree search over coin-count states, scripted adaptive
//! strategies, and small-scale impossibility verification.
//!
//! The solver abstracts a position to how many coins sit in each hypothesis
//! class: light, heavy, real, unknown, genuine. A weighing splits classes
//! across the pans; the scale result filters the hypotheses and advances the
//! survivors one step in the coin's cycle, so classes are relabeled rather
//! than tracked per coin. Coins inside a class are exchangeable; the test
//! suite checks that against a solver tracking individual coins.
//!
//! A state is solvable in `w` weighings iff at most one suspect remains, or
//! some weighing choice leaves all three scale results solvable in `w - 1`.
//! Results no surviving hypothesis can produce are the adversary's dead ends
//! and are skipped.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::coin::{CoinKind, CoinState, Itinerary, Outcome, Placement, Strategy, Symbol};
use crate::sequences::{self, as_usize};
use crate::synthesis;

/// Coins per hypothesis class. Used both for whole positions and for the
/// contents of one pan.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ScenarioCounts {
    pub light: usize,
    pub heavy: usize,
    pub real: usize,
    pub unknown: usize,
    pub genuine: usize,
}

impl ScenarioCounts {
    pub fn new(light: usize, heavy: usize, real: usize, unknown: usize, genuine: usize) -> Self {
        ScenarioCounts { light, heavy, real, unknown, genuine }
    }

    pub fn unknown_only(unknown: usize) -> Self {
        ScenarioCounts { unknown, ..Default::default() }
    }

    pub fn total(&self) -> usize {
        self.light + self.heavy + self.real + self.unknown + self.genuine
    }

    pub fn suspects(&self) -> usize {
        self.light + self.heavy + self.real + self.unknown
    }

    fn as_array(&self) -> [usize; 5] {
        [self.light, self.heavy, self.real, self.unknown, self.genuine]
    }

    fn from_array(a: [usize; 5]) -> Self {
        ScenarioCounts { light: a[0], heavy: a[1], real: a[2], unknown: a[3], genuine: a[4] }
    }

    fn fits_within(&self, other: &ScenarioCounts) -> bool {
        self.as_array().iter().zip(other.as_array()).all(|(a, b)| *a <= b)
    }
}

impl fmt::Display for ScenarioCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}:{}(+{}g)",
            self.light, self.heavy, self.real, self.unknown, self.genuine
        )
    }
}

/// One weighing at the count level: which class members go on which pan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeighingChoice {
    pub left: ScenarioCounts,
    pub right: ScenarioCounts,
}

/// Errors from the adaptive solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdaptiveError {
    InfeasibleChoice { detail: String },
    SearchCeilingExceeded { ceiling: SearchCeiling, total: usize, w: usize },
    UnknownExampleId(String),
    InvalidCounts { detail: String },
}

impl fmt::Display for AdaptiveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdaptiveError::InfeasibleChoice { detail } => write!(f, "InfeasibleChoice: {detail}"),
            AdaptiveError::SearchCeilingExceeded { ceiling, total, w } => write!(
                f,
                "SearchCeilingExceeded: {total} coins / {w} weighings exceed the ceiling of \
                 {} coins / {} weighings",
                ceiling.max_total, ceiling.max_weighings
            ),
            AdaptiveError::UnknownExampleId(id) => write!(f, "UnknownExampleId: `{id}`"),
            AdaptiveError::InvalidCounts { detail } => write!(f, "invalid counts: {detail}"),
        }
    }
}

impl std::error::Error for AdaptiveError {}

fn light_advances_to(kind: CoinKind) -> CoinState {
    match kind {
        CoinKind::Lh | CoinKind::Lhr => CoinState::Heavy,
        CoinKind::Lr => CoinState::Real,
    }
}

/// Successor of a count state under one weighing choice and scale result.
///
/// On a balance, on-scale light and heavy hypotheses die, on-scale real ones
/// advance to light, and off-scale hypotheses persist. On an imbalance the
/// fake must be a light-state coin on the lighter pan or a heavy-state coin
/// on the heavier pan, with unknown-class coins splitting accordingly; the
/// survivors advance. Eliminated coins turn into genuine ballast.
pub fn transition(
    kind: CoinKind,
    state: &ScenarioCounts,
    choice: &WeighingChoice,
    result: Symbol,
) -> Result<ScenarioCounts, AdaptiveError> {
    let on_scale = ScenarioCounts::from_array(
        choice
            .left
            .as_array()
            .iter()
            .zip(choice.right.as_array())
            .map(|(l, r)| l + r)
            .collect::<Vec<_>>()
            .try_into()
            .unwrap(),
    );
    if !on_scale.fits_within(state) {
        return Err(AdaptiveError::InfeasibleChoice {
            detail: format!("choice takes {on_scale} from {state}"),
        });
    }
    if choice.left.total() != choice.right.total() || choice.left.total() == 0 {
        return Err(AdaptiveError::InfeasibleChoice {
            detail: format!(
                "pans hold {} and {} coins",
                choice.left.total(),
                choice.right.total()
            ),
        });
    }

    let total = state.total();
    let mut next = ScenarioCounts::default();
    match result {
        Symbol::Eq => {
            // Off-scale suspects keep their class.
            next.light = state.light - on_scale.light;
            next.heavy = state.heavy - on_scale.heavy;
            next.real = state.real - on_scale.real;
            next.unknown = state.unknown - on_scale.unknown;
            // On-scale real hypotheses (including the real reading of an
            // unknown coin) come off the pan in the light state.
            if kind.occupies(CoinState::Real) {
                next.light += on_scale.real + on_scale.unknown;
            }
        }
        Symbol::Lt | Symbol::Gt => {
            let (lighter, heavier) = if result == Symbol::Lt {
                (&choice.left, &choice.right)
            } else {
                (&choice.right, &choice.left)
            };
            let from_light = lighter.light + lighter.unknown;
            match light_advances_to(kind) {
                CoinState::Heavy => next.heavy += from_light,
                CoinState::Real => next.real += from_light,
                CoinState::Light => unreachable!(),
            }
            if kind.occupies(CoinState::Heavy) {
                let from_heavy = heavier.heavy + heavier.unknown;
                // Heavy advances to light (two-state) or real (three-state).
                match kind {
                    CoinKind::Lh => next.light += from_heavy,
                    CoinKind::Lhr => next.real += from_heavy,
                    CoinKind::Lr => unreachable!(),
                }
            }
        }
    }
    next.genuine = total - next.suspects();
    Ok(next)
}

/// Limits on the exhaustive search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchCeiling {
    pub max_total: usize,
    pub max_weighings: usize,
}

impl Default for SearchCeiling {
    fn default() -> Self {
        SearchCeiling { max_total: 40, max_weighings: 5 }
    }
}

/// Name of the environment variable overriding the coin-count ceiling.
pub const SEARCH_CEILING_ENV: &str = "WEIGHWRIGHT_SEARCH_CEILING";

/// The default ceiling, with the coin-count limit taken from
/// `WEIGHWRIGHT_SEARCH_CEILING` when set.
pub fn ceiling_from_env() -> SearchCeiling {
    let mut ceiling = SearchCeiling::default();
    if let Ok(raw) = std::env::var(SEARCH_CEILING_ENV) {
        if let Ok(max_total) = raw.trim().parse::<usize>() {
            ceiling.max_total = max_total;
        }
    }
    ceiling
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SearchResult {
    /// One suspect or none is left; no weighing needed.
    Terminal,
    Via(WeighingChoice),
    Unsolvable,
}

/// Outcome-count caps used as necessary conditions: distinct suspects need
/// distinct transcripts, and each transcript is an outcome valid for the
/// suspect's class.
struct PruneCaps {
    light: Vec<usize>,
    heavy: Vec<usize>,
    real: Vec<usize>,
    hr: Vec<usize>,
    all: Vec<usize>,
}

impl PruneCaps {
    fn for_kind(kind: CoinKind, max_w: usize) -> PruneCaps {
        let mut caps = PruneCaps {
            light: Vec::new(),
            heavy: Vec::new(),
            real: Vec::new(),
            hr: Vec::new(),
            all: Vec::new(),
        };
        for w in 0..=max_w {
            match kind {
                CoinKind::Lh => {
                    let p = 3usize.pow(w as u32);
                    caps.light.push(p);
                    caps.heavy.push(p);
                    caps.real.push(0);
                    caps.hr.push(p);
                    caps.all.push(p);
                }
                CoinKind::Lr => {
                    let j1 = as_usize(&sequences::jacobsthal(w + 1));
                    let j2 = as_usize(&sequences::jacobsthal(w + 2));
                    caps.light.push(j2);
                    caps.heavy.push(0);
                    caps.real.push(j1);
                    caps.hr.push(j1);
                    caps.all.push(j2);
                }
                CoinKind::Lhr => {
                    let (l, h, r) = sequences::lhr_counts(w);
                    let (hr, lhr) = sequences::hr_lhr_counts(w);
                    caps.light.push(as_usize(&l));
                    caps.heavy.push(as_usize(&h));
                    caps.real.push(as_usize(&r));
                    caps.hr.push(as_usize(&hr));
                    caps.all.push(as_usize(&lhr));
                }
            }
        }
        caps
    }

    /// True when the transcript-counting argument already rules the state
    /// out. An unknown coin consumes one valid outcome per admissible state;
    /// only a single never-weighed coin can collapse its transcripts into
    /// the all-balanced one.
    fn unsolvable(&self, kind: CoinKind, c: &ScenarioCounts, w: usize) -> bool {
        let u = c.unknown;
        let merge = usize::from(u > 0);
        let states = kind.cycle().len();
        if c.light + u > self.light[w] {
            return true;
        }
        if kind.occupies(CoinState::Heavy) && c.heavy + u > self.heavy[w] {
            return true;
        }
        if kind.occupies(CoinState::Real) && c.real + u > self.real[w] {
            return true;
        }
        if c.heavy + c.real + 2 * u > self.hr[w] + merge {
            return true;
        }
        if c.light + c.real + 2 * u > self.light[w] + merge {
            return true;
        }
        if c.light + c.heavy + 2 * u > self.all[w] + merge {
            return true;
        }
        c.suspects() + (states - 1) * u > self.all[w] + (states - 1) * merge
    }
}

/// Solver verdict; solvable states come with a full decision tree.
#[derive(Clone, Debug, Serialize)]
pub enum Verdict {
    Solvable(DecisionTree),
    Unsolvable,
}

impl Verdict {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Verdict::Solvable(_))
    }
}

/// Memoized adversarial-search solver for one coin kind.
pub struct Solver {
    kind: CoinKind,
    ceiling: SearchCeiling,
    counting_prunes: bool,
    memo_enabled: bool,
    memo: HashMap<([usize; 5], usize), SearchResult>,
    caps: PruneCaps,
}

impl Solver {
    pub fn new(kind: CoinKind) -> Solver {
        Solver::with_ceiling(kind, ceiling_from_env())
    }

    pub fn with_ceiling(kind: CoinKind, ceiling: SearchCeiling) -> Solver {
        Solver {
            kind,
            ceiling,
            counting_prunes: true,
            memo_enabled: true,
            memo: HashMap::new(),
            caps: PruneCaps::for_kind(kind, ceiling.max_weighings),
        }
    }

    /// Disable the transcript-counting cutoffs: every refutation then comes
    /// from exhausting the weighing choices.
    pub fn without_counting_prunes(mut self) -> Solver {
        self.counting_prunes = false;
        self
    }

    /// Disable memoization (for transparency spot checks).
    pub fn without_memo(mut self) -> Solver {
        self.memo_enabled = false;
        self
    }

    fn validate(&self, state: &ScenarioCounts, w: usize) -> Result<(), AdaptiveError> {
        if state.heavy > 0 && !self.kind.occupies(CoinState::Heavy) {
            return Err(AdaptiveError::InvalidCounts {
                detail: format!("{} coins have no heavy class", self.kind),
            });
        }
        if state.real > 0 && !self.kind.occupies(CoinState::Real) {
            return Err(AdaptiveError::InvalidCounts {
                detail: format!("{} coins have no real class", self.kind),
            });
        }
        if state.total() > self.ceiling.max_total || w > self.ceiling.max_weighings {
            return Err(AdaptiveError::SearchCeilingExceeded {
                ceiling: self.ceiling,
                total: state.total(),
                w,
            });
        }
        Ok(())
    }

    /// Decide solvability and, when solvable, return the decision tree over
    /// coin indices `0..state.total()` (classes in block order light, heavy,
    /// real, unknown, genuine).
    pub fn solve(&mut self, state: &ScenarioCounts, w: usize) -> Result<Verdict, AdaptiveError> {
        self.validate(state, w)?;
        if !matches!(self.search(state, w), SearchResult::Unsolvable) {
            let mut labels = Vec::with_capacity(state.total());
            for (class, count) in [
                (Class::Light, state.light),
                (Class::Heavy, state.heavy),
                (Class::Real, state.real),
                (Class::Unknown, state.unknown),
                (Class::Genuine, state.genuine),
            ] {
                labels.extend(std::iter::repeat(class).take(count));
            }
            let tree = self.materialize(&labels, w);
            Ok(Verdict::Solvable(tree))
        } else {
            Ok(Verdict::Unsolvable)
        }
    }

    /// Verdict only, without building a tree.
    pub fn solvable(&mut self, state: &ScenarioCounts, w: usize) -> Result<bool, AdaptiveError> {
        self.validate(state, w)?;
        Ok(!matches!(self.search(state, w), SearchResult::Unsolvable))
    }

    fn search(&mut self, state: &ScenarioCounts, w: usize) -> SearchResult {
        if state.suspects() <= 1 {
            return SearchResult::Terminal;
        }
        if w == 0 {
            return SearchResult::Unsolvable;
        }
        let key = (state.as_array(), w);
        if self.memo_enabled {
            if let Some(hit) = self.memo.get(&key) {
                return *hit;
            }
        }
        let result = self.search_uncached(state, w);
        if self.memo_enabled {
            self.memo.insert(key, result);
        }
        result
    }

    fn search_uncached(&mut self, state: &ScenarioCounts, w: usize) -> SearchResult {
        if self.counting_prunes && self.caps.unsolvable(self.kind, state, w) {
            return SearchResult::Unsolvable;
        }
        for choice in enumerate_choices(state) {
            let mut all_ok = true;
            for result in [Symbol::Eq, Symbol::Lt, Symbol::Gt] {
                let next = transition(self.kind, state, &choice, result)
                    .expect("enumerated choices are feasible");
                if next.suspects() == 0 {
                    // No hypothesis produces this result; the adversary
                    // cannot pick it.
                    continue;
                }
                if matches!(self.search(&next, w - 1), SearchResult::Unsolvable) {
                    all_ok = false;
                    break;
                }
            }
            if all_ok {
                return SearchResult::Via(choice);
            }
        }
        SearchResult::Unsolvable
    }

    fn materialize(&mut self, labels: &[Class], w: usize) -> DecisionTree {
        let counts = count_classes(labels);
        if counts.suspects() <= 1 {
            let coin = labels.iter().position(|c| c.is_suspect());
            return DecisionTree::Identify { coin };
        }
        let choice = match self.search(&counts, w) {
            SearchResult::Via(choice) => choice,
            SearchResult::Terminal => unreachable!("terminal handled above"),
            SearchResult::Unsolvable => unreachable!("materialize runs on solvable states"),
        };
        let (left, right) = instantiate(labels, &choice);
        let mut children: Vec<Option<Box<DecisionTree>>> = Vec::with_capacity(3);
        for result in [Symbol::Eq, Symbol::Lt, Symbol::Gt] {
            let next = transition(self.kind, &counts, &choice, result).unwrap();
            if next.suspects() == 0 {
                children.push(None);
                continue;
            }
            let next_labels = relabel(self.kind, labels, &left, &right, result);
            debug_assert_eq!(count_classes(&next_labels), next);
            children.push(Some(Box::new(self.materialize(&next_labels, w - 1))));
        }
        let mut it = children.into_iter();
        DecisionTree::Weigh {
            left,
            right,
            on_balance: it.next().unwrap(),
            on_left_lighter: it.next().unwrap(),
            on_right_lighter: it.next().unwrap(),
        }
    }
}

/// Convenience front end with the environment-derived ceiling.
pub fn solve_adaptive(
    kind: CoinKind,
    state: &ScenarioCounts,
    w: usize,
) -> Result<Verdict, AdaptiveError> {
    Solver::new(kind).solve(state, w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    Light,
    Heavy,
    Real,
    Unknown,
    Genuine,
}

impl Class {
    fn is_suspect(self) -> bool {
        self != Class::Genuine
    }
}

fn count_classes(labels: &[Class]) -> ScenarioCounts {
    let mut c = ScenarioCounts::default();
    for label in labels {
        match label {
            Class::Light => c.light += 1,
            Class::Heavy => c.heavy += 1,
            Class::Real => c.real += 1,
            Class::Unknown => c.unknown += 1,
            Class::Genuine => c.genuine += 1,
        }
    }
    c
}

/// Pick concrete coins for a count-level choice: lowest indices first within
/// each class, left pan before right.
fn instantiate(labels: &[Class], choice: &WeighingChoice) -> (Vec<usize>, Vec<usize>) {
    let mut left = Vec::with_capacity(choice.left.total());
    let mut right = Vec::with_capacity(choice.right.total());
    for (class, want_left, want_right) in [
        (Class::Light, choice.left.light, choice.right.light),
        (Class::Heavy, choice.left.heavy, choice.right.heavy),
        (Class::Real, choice.left.real, choice.right.real),
        (Class::Unknown, choice.left.unknown, choice.right.unknown),
        (Class::Genuine, choice.left.genuine, choice.right.genuine),
    ] {
        let mut members = labels.iter().enumerate().filter(|(_, &c)| c == class).map(|(i, _)| i);
        left.extend(members.by_ref().take(want_left));
        right.extend(members.by_ref().take(want_right));
    }
    left.sort_unstable();
    right.sort_unstable();
    (left, right)
}

/// Apply one observed result to per-coin class labels.
fn relabel(
    kind: CoinKind,
    labels: &[Class],
    left: &[usize],
    right: &[usize],
    result: Symbol,
) -> Vec<Class> {
    let placement = |i: usize| {
        if left.contains(&i) {
            Placement::Left
        } else if right.contains(&i) {
            Placement::Right
        } else {
            Placement::Out
        }
    };
    labels
        .iter()
        .enumerate()
        .map(|(i, &class)| {
            if class == Class::Genuine {
                return Class::Genuine;
            }
            let p = placement(i);
            match result {
                Symbol::Eq => match (p, class) {
                    (Placement::Out, c) => c,
                    (_, Class::Real) => Class::Light,
                    (_, Class::Unknown) if kind.occupies(CoinState::Real) => Class::Light,
                    _ => Class::Genuine,
                },
                Symbol::Lt | Symbol::Gt => {
                    let lighter = if result == Symbol::Lt { Placement::Left } else { Placement::Right };
                    let heavier = lighter.conjugate();
                    if p == lighter && matches!(class, Class::Light | Class::Unknown) {
                        match light_advances_to(kind) {
                            CoinState::Heavy => Class::Heavy,
                            CoinState::Real => Class::Real,
                            CoinState::Light => unreachable!(),
                        }
                    } else if p == heavier
                        && matches!(class, Class::Heavy | Class::Unknown)
                        && kind.occupies(CoinState::Heavy)
                    {
                        match kind {
                            CoinKind::Lh => Class::Light,
                            CoinKind::Lhr => Class::Real,
                            CoinKind::Lr => unreachable!(),
                        }
                    } else {
                        Class::Genuine
                    }
                }
            }
        })
        .collect()
}

/// Enumerate feasible weighings: pan sizes descending, class counts in the
/// order unknown, light, heavy, real, genuine. Mirrored pairs are emitted
/// once, and shared ballast is trimmed off both pans.
fn enumerate_choices(state: &ScenarioCounts) -> Vec<WeighingChoice> {
    let avail = state.as_array();
    let mut choices = Vec::new();
    for t in (1..=state.total() / 2).rev() {
        for left_arr in compositions(avail, t) {
            let mut rest = avail;
            for (r, l) in rest.iter_mut().zip(left_arr) {
                *r -= l;
            }
            for right_arr in compositions(rest, t) {
                if left_arr > right_arr {
                    continue;
                }
                // Genuine coins on both pans cancel out.
                if left_arr[4] > 0 && right_arr[4] > 0 {
                    continue;
                }
                choices.push(WeighingChoice {
                    left: ScenarioCounts::from_array(left_arr),
                    right: ScenarioCounts::from_array(right_arr),
                });
            }
        }
    }
    choices
}

/// All per-class splits of `t` coins within `avail`, filling the unknown
/// class first.
fn compositions(avail: [usize; 5], t: usize) -> Vec<[usize; 5]> {
    // Enumeration order over the array indices (light, heavy, real, unknown,
    // genuine): unknown first, genuine last.
    const ORDER: [usize; 5] = [3, 0, 1, 2, 4];
    let mut out = Vec::new();
    let mut current = [0usize; 5];
    fn rec(
        avail: &[usize; 5],
        pos: usize,
        left: usize,
        current: &mut [usize; 5],
        out: &mut Vec<[usize; 5]>,
    ) {
        if pos == ORDER.len() {
            if left == 0 {
                out.push(*current);
            }
            return;
        }
        let idx = ORDER[pos];
        let remaining_cap: usize = ORDER[pos + 1..].iter().map(|&i| avail[i]).sum();
        let lo = left.saturating_sub(remaining_cap);
        let hi = avail[idx].min(left);
        for take in (lo..=hi).rev() {
            current[idx] = take;
            rec(avail, pos + 1, left - take, current, out);
        }
        current[idx] = 0;
    }
    rec(&avail, 0, t, &mut current, &mut out);
    out
}

/// An adaptive strategy as an explicit tree over coin indices. Oblivious
/// sub-strategies are embedded as single nodes carrying their itineraries
/// and per-slot admissible states.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum DecisionTree {
    /// At most one suspect remains; `coin` names it.
    Identify { coin: Option<usize> },
    Weigh {
        left: Vec<usize>,
        right: Vec<usize>,
        on_balance: Option<Box<DecisionTree>>,
        on_left_lighter: Option<Box<DecisionTree>>,
        on_right_lighter: Option<Box<DecisionTree>>,
    },
    Oblivious(ObliviousNode),
}

/// A fixed itinerary plan finishing a branch: slot `i` is global coin
/// `coins[i]`, plays `itineraries[i]`, and may currently be in any state in
/// `states[i]` (empty for cleared ballast).
#[derive(Clone, Debug, Serialize)]
pub struct ObliviousNode {
    pub coins: Vec<usize>,
    pub itineraries: Vec<Itinerary>,
    pub states: Vec<Vec<CoinState>>,
}

impl DecisionTree {
    /// Longest weighing count along any branch.
    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Identify { .. } => 0,
            DecisionTree::Weigh { on_balance, on_left_lighter, on_right_lighter, .. } => {
                1 + [on_balance, on_left_lighter, on_right_lighter]
                    .iter()
                    .filter_map(|c| c.as_deref())
                    .map(DecisionTree::depth)
                    .max()
                    .unwrap_or(0)
            }
            DecisionTree::Oblivious(node) => {
                node.itineraries.first().map_or(0, Itinerary::len)
            }
        }
    }
}

/// Replay failures: any of these means the tree does not actually find the
/// fake coin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplayError {
    DeadBranch { hypothesis: (usize, CoinState) },
    WrongCoin { hypothesis: (usize, CoinState), named: Option<usize> },
    FakeNotCovered { hypothesis: (usize, CoinState) },
    AmbiguousDecode { outcome: Outcome },
    BudgetExceeded { used: usize, budget: usize },
}

impl fmt::Display for ReplayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplayError::DeadBranch { hypothesis } => write!(
                f,
                "hypothesis (coin {}, {}) reaches a result the tree has no branch for",
                hypothesis.0, hypothesis.1
            ),
            ReplayError::WrongCoin { hypothesis, named } => write!(
                f,
                "hypothesis (coin {}, {}) ends at a leaf naming {:?}",
                hypothesis.0, hypothesis.1, named
            ),
            ReplayError::FakeNotCovered { hypothesis } => write!(
                f,
                "hypothesis (coin {}, {}) reaches an oblivious node that dropped the coin",
                hypothesis.0, hypothesis.1
            ),
            ReplayError::AmbiguousDecode { outcome } => {
                write!(f, "embedded table maps `{outcome}` to several coins")
            }
            ReplayError::BudgetExceeded { used, budget } => {
                write!(f, "branch used {used} weighings of a budget of {budget}")
            }
        }
    }
}

impl std::error::Error for ReplayError {}

fn emitted(state: CoinState, placement: Placement) -> Symbol {
    match (placement, state) {
        (Placement::Out, _) | (_, CoinState::Real) => Symbol::Eq,
        (Placement::Left, CoinState::Light) => Symbol::Lt,
        (Placement::Left, CoinState::Heavy) => Symbol::Gt,
        (Placement::Right, CoinState::Light) => Symbol::Gt,
        (Placement::Right, CoinState::Heavy) => Symbol::Lt,
    }
}

/// Walk the tree once per hypothesis, driving every weighing with the true
/// physics of that hypothesis, and demand the reached leaf names the fake.
/// `initial_states[i]` lists the possible starting states of coin `i` (empty
/// marks ballast known genuine from the outset).
pub fn replay_decision_tree(
    kind: CoinKind,
    initial_states: &[Vec<CoinState>],
    tree: &DecisionTree,
    budget: usize,
) -> Result<(), ReplayError> {
    for (coin, states) in initial_states.iter().enumerate() {
        for &start in states {
            let hypothesis = (coin, start);
            walk(kind, hypothesis, tree, 0, budget)?;
        }
    }
    Ok(())
}

fn walk(
    kind: CoinKind,
    hypothesis: (usize, CoinState),
    node: &DecisionTree,
    used: usize,
    budget: usize,
) -> Result<(), ReplayError> {
    let (fake, state) = hypothesis;
    match node {
        DecisionTree::Identify { coin } => {
            if *coin == Some(fake) {
                Ok(())
            } else {
                Err(ReplayError::WrongCoin { hypothesis, named: *coin })
            }
        }
        DecisionTree::Weigh { left, right, on_balance, on_left_lighter, on_right_lighter } => {
            if used + 1 > budget {
                return Err(ReplayError::BudgetExceeded { used: used + 1, budget });
            }
            let placement = if left.contains(&fake) {
                Placement::Left
            } else if right.contains(&fake) {
                Placement::Right
            } else {
                Placement::Out
            };
            let result = emitted(state, placement);
            let next_state = crate::coin::step_state(kind, state, placement.on_scale())
                .expect("replay states stay within the kind");
            let child = match result {
                Symbol::Eq => on_balance,
                Symbol::Lt => on_left_lighter,
                Symbol::Gt => on_right_lighter,
            };
            match child {
                Some(child) => walk(kind, (fake, next_state), child, used + 1, budget),
                None => Err(ReplayError::DeadBranch { hypothesis }),
            }
        }
        DecisionTree::Oblivious(ob) => {
            let w = ob.itineraries.first().map_or(0, Itinerary::len);
            if used + w > budget {
                return Err(ReplayError::BudgetExceeded { used: used + w, budget });
            }
            let slot = ob
                .coins
                .iter()
                .position(|&c| c == fake)
                .ok_or(ReplayError::FakeNotCovered { hypothesis })?;
            let sim = |slot: usize, start: CoinState| -> Outcome {
                let mut s = start;
                let symbols = ob.itineraries[slot]
                    .letters()
                    .iter()
                    .map(|&p| {
                        let sym = emitted(s, p);
                        s = crate::coin::step_state(kind, s, p.on_scale()).unwrap();
                        sym
                    })
                    .collect();
                Outcome::new(symbols)
            };
            let observed = sim(slot, state);
            // Decode: the observed outcome must identify our slot uniquely.
            let mut named: Option<usize> = None;
            for other in 0..ob.coins.len() {
                for &s0 in &ob.states[other] {
                    if sim(other, s0) == observed {
                        match named {
                            None => named = Some(other),
                            Some(prev) if prev == other => {}
                            Some(_) => {
                                return Err(ReplayError::AmbiguousDecode { outcome: observed })
                            }
                        }
                    }
                }
            }
            if named == Some(slot) {
                Ok(())
            } else {
                Err(ReplayError::WrongCoin { hypothesis, named: named.map(|s| ob.coins[s]) })
            }
        }
    }
}

/// Identifiers of the scripted adaptive strategies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScriptedId {
    LhrUnknownW4C16,
    LhrUnknownW5C39,
}

impl ScriptedId {
    pub fn name(self) -> &'static str {
        match self {
            ScriptedId::LhrUnknownW4C16 => "lhr-unknown-w4-16c",
            ScriptedId::LhrUnknownW5C39 => "lhr-unknown-w5-39c",
        }
    }
}

impl FromStr for ScriptedId {
    type Err = AdaptiveError;

    fn from_str(s: &str) -> Result<Self, AdaptiveError> {
        match s {
            "lhr-unknown-w4-16c" => Ok(ScriptedId::LhrUnknownW4C16),
            "lhr-unknown-w5-39c" => Ok(ScriptedId::LhrUnknownW5C39),
            _ => Err(AdaptiveError::UnknownExampleId(s.to_string())),
        }
    }
}

/// A scripted adaptive strategy: explicit first weighings whose branches
/// finish in oblivious sub-strategies.
#[derive(Clone, Debug, Serialize)]
pub struct ScriptedStrategy {
    pub num_coins: usize,
    pub weighings: usize,
    pub tree: DecisionTree,
}

/// Embed a mixed-scenario oblivious strategy over the given global coins:
/// `light`/`heavy`/`real` list the coins currently in those classes, in slot
/// order, and `genuine` supplies ballast for any trailing ballast slots.
fn embed_mixed(strategy: &Strategy, light: &[usize], heavy: &[usize], real: &[usize], genuine: &[usize]) -> DecisionTree {
    let scenario = &strategy.scenario;
    let (l, h, r) = match scenario.start {
        crate::coin::StartInfo::Mixed { light, heavy, real } => (light, heavy, real),
        _ => unreachable!("embed_mixed takes mixed strategies"),
    };
    assert_eq!((light.len(), heavy.len(), real.len()), (l, h, r));
    let ballast = scenario.num_coins - l - h - r;
    let mut coins = Vec::with_capacity(scenario.num_coins);
    coins.extend_from_slice(light);
    coins.extend_from_slice(heavy);
    coins.extend_from_slice(real);
    coins.extend_from_slice(&genuine[..ballast]);
    let mut states = Vec::with_capacity(scenario.num_coins);
    states.extend(std::iter::repeat(vec![CoinState::Light]).take(l));
    states.extend(std::iter::repeat(vec![CoinState::Heavy]).take(h));
    states.extend(std::iter::repeat(vec![CoinState::Real]).take(r));
    states.extend(std::iter::repeat(Vec::new()).take(ballast));
    DecisionTree::Oblivious(ObliviousNode {
        coins,
        itineraries: strategy.itineraries.clone(),
        states,
    })
}

fn boxed(t: DecisionTree) -> Option<Box<DecisionTree>> {
    Some(Box::new(t))
}

/// The scripted 16-coin four-weighing strategy for the unknown-state LHR
/// coin: seven coins per pan, an imbalance resolving as a 0:7:7 mixed state,
/// and a balanced cascade ending on the two never-weighed coins.
fn scripted_w4_16c() -> ScriptedStrategy {
    let ids = |range: std::ops::Range<usize>| range.collect::<Vec<_>>();

    let mixed_077 = synthesis::synth_lhr_mixed(0, 7, 7, 3, 0).expect("0:7:7 fits three weighings");
    let heavy_5 = synthesis::synth_known(CoinKind::Lhr, CoinState::Heavy, 5, 2)
        .expect("five heavy coins fit two weighings");
    let embed_heavy5 = |coins: Vec<usize>| {
        DecisionTree::Oblivious(ObliviousNode {
            coins,
            itineraries: heavy_5.itineraries.clone(),
            states: vec![vec![CoinState::Heavy]; 5],
        })
    };

    // After <, =, =: suspects are two heavy coins (a, b) and one coin `other`
    // off the scale in a known class; compare a against b.
    let pair_then_third = |a: usize, b: usize, other: usize| DecisionTree::Weigh {
        left: vec![a],
        right: vec![b],
        on_balance: boxed(DecisionTree::Identify { coin: Some(other) }),
        on_left_lighter: boxed(DecisionTree::Identify { coin: Some(b) }),
        on_right_lighter: boxed(DecisionTree::Identify { coin: Some(a) }),
    };

    // Third weighing of the balanced branch: two light coins and the first
    // unknown against two light coins and a cleared coin.
    let third = DecisionTree::Weigh {
        left: vec![10, 11, 14],
        right: vec![0, 12, 13],
        on_left_lighter: boxed(pair_then_third(10, 11, 14)),
        on_right_lighter: boxed(pair_then_third(12, 13, 14)),
        on_balance: boxed(DecisionTree::Weigh {
            left: vec![14],
            right: vec![0],
            on_left_lighter: boxed(DecisionTree::Identify { coin: Some(14) }),
            on_right_lighter: None,
            on_balance: boxed(DecisionTree::Identify { coin: Some(15) }),
        }),
    };

    let second = DecisionTree::Weigh {
        left: ids(0..5),
        right: ids(5..10),
        on_left_lighter: boxed(embed_heavy5(ids(0..5))),
        on_right_lighter: boxed(embed_heavy5(ids(5..10))),
        on_balance: boxed(third),
    };

    let tree = DecisionTree::Weigh {
        left: ids(0..7),
        right: ids(7..14),
        on_left_lighter: boxed(embed_mixed(&mixed_077, &[], &ids(0..7), &ids(7..14), &[])),
        on_right_lighter: boxed(embed_mixed(&mixed_077, &[], &ids(7..14), &ids(0..7), &[])),
        on_balance: boxed(second),
    };
    ScriptedStrategy { num_coins: 16, weighings: 4, tree }
}

/// The scripted 39-coin five-weighing strategy: 18 per pan, an imbalance
/// resolving as 0:18:18 in four oblivious weighings, then ten light coins
/// plus one unknown per pan, with the balanced tail handled by a known-light
/// table whose self-conjugate row is the last unknown coin.
fn scripted_w5_39c() -> ScriptedStrategy {
    let ids = |range: std::ops::Range<usize>| range.collect::<Vec<_>>();

    let mixed_18 = synthesis::synth_lhr_mixed(0, 18, 18, 4, 0).expect("0:18:18 fits four weighings");
    let mixed_0_11_1 =
        synthesis::synth_lhr_mixed(0, 11, 1, 3, 1).expect("0:11:1 fits three weighings with ballast");

    // Balanced tail: 18 light-class coins plus the never-weighed unknown.
    // The 19-coin known-light table exactly fills the light capacity; its
    // first slot holds the all-balanced outcome, which is the unknown coin.
    let light_19 = synthesis::synth_known(CoinKind::Lhr, CoinState::Light, 19, 3)
        .expect("nineteen light coins fit three weighings");
    assert!(light_19.itineraries[0].is_self_conjugate());
    let mut tail_coins = vec![38];
    tail_coins.extend(20..38);
    let mut tail_states = vec![CoinKind::Lhr.cycle().to_vec()];
    tail_states.extend(std::iter::repeat(vec![CoinState::Light]).take(18));
    let tail = DecisionTree::Oblivious(ObliviousNode {
        coins: tail_coins,
        itineraries: light_19.itineraries.clone(),
        states: tail_states,
    });

    let mut left2 = ids(0..10);
    left2.push(36);
    let mut right2 = ids(10..20);
    right2.push(37);
    let mut heavy_left: Vec<usize> = ids(0..10);
    heavy_left.push(36);
    let mut heavy_right: Vec<usize> = ids(10..20);
    heavy_right.push(37);

    let second = DecisionTree::Weigh {
        left: left2,
        right: right2,
        on_left_lighter: boxed(embed_mixed(&mixed_0_11_1, &[], &heavy_left, &[37], &[10])),
        on_right_lighter: boxed(embed_mixed(&mixed_0_11_1, &[], &heavy_right, &[36], &[0])),
        on_balance: boxed(tail),
    };

    let tree = DecisionTree::Weigh {
        left: ids(0..18),
        right: ids(18..36),
        on_left_lighter: boxed(embed_mixed(&mixed_18, &[], &ids(0..18), &ids(18..36), &[])),
        on_right_lighter: boxed(embed_mixed(&mixed_18, &[], &ids(18..36), &ids(0..18), &[])),
        on_balance: boxed(second),
    };
    ScriptedStrategy { num_coins: 39, weighings: 5, tree }
}

/// The explicit adaptive strategies worked out move by move.
pub fn scripted_strategy(id: ScriptedId) -> ScriptedStrategy {
    match id {
        ScriptedId::LhrUnknownW4C16 => scripted_w4_16c(),
        ScriptedId::LhrUnknownW5C39 => scripted_w5_39c(),
    }
}

/// One impossibility case with the verdict the search returned.
#[derive(Clone, Debug, Serialize)]
pub struct ImpossibilityCase {
    pub label: String,
    pub confirmed_unsolvable: bool,
}

/// Report of the exhaustive impossibility sweep.
#[derive(Clone, Debug, Serialize)]
pub struct ImpossibilityReport {
    pub cases: Vec<ImpossibilityCase>,
}

impl ImpossibilityReport {
    pub fn all_confirmed(&self) -> bool {
        self.cases.iter().all(|c| c.confirmed_unsolvable)
    }
}

/// Confirm the known-impossible families by exhausting the weighing choices,
/// with the transcript-counting cutoffs switched off so every verdict comes
/// from the search itself. `w_max` is capped at 4.
pub fn check_impossibilities(w_max: usize) -> Result<ImpossibilityReport, AdaptiveError> {
    if w_max > 4 {
        return Err(AdaptiveError::SearchCeilingExceeded {
            ceiling: SearchCeiling::default(),
            total: 0,
            w: w_max,
        });
    }
    let mut cases = Vec::new();
    let mut lh = Solver::new(CoinKind::Lh).without_counting_prunes();
    let mut lhr = Solver::new(CoinKind::Lhr).without_counting_prunes();

    // (a) The light-heavy 1:1 mix loops back into itself forever.
    for w in 0..=w_max {
        let state = ScenarioCounts::new(1, 1, 0, 0, 0);
        cases.push(ImpossibilityCase {
            label: format!("lh mixed 1:1 at w={w}"),
            confirmed_unsolvable: !lh.solvable(&state, w)?,
        });
    }

    // (b) Both groups odd at l + h = 3^w - 1.
    let odd_odd: &[(usize, usize, usize)] =
        &[(1, 1, 1), (1, 7, 2), (3, 5, 2), (5, 3, 2), (7, 1, 2)];
    for &(l, h, w) in odd_odd {
        if w > w_max {
            continue;
        }
        let state = ScenarioCounts::new(l, h, 0, 0, 0);
        cases.push(ImpossibilityCase {
            label: format!("lh mixed {l}:{h} at w={w}"),
            confirmed_unsolvable: !lh.solvable(&state, w)?,
        });
    }

    // (c) Light-plus-unknown states past l + 2u - 1 <= L_w.
    let l00u: &[(usize, usize, usize)] =
        &[(0, 3, 1), (1, 2, 1), (2, 2, 1), (3, 1, 1), (9, 1, 2), (17, 2, 3)];
    for &(l, u, w) in l00u {
        if w > w_max {
            continue;
        }
        let state = ScenarioCounts::new(l, 0, 0, u, 0);
        cases.push(ImpossibilityCase {
            label: format!("lhr {l}:0:0:{u} at w={w}"),
            confirmed_unsolvable: !lhr.solvable(&state, w)?,
        });
    }

    // (d) One past the unknown-state cap.
    let over_cap = [0usize, 2, 4, 7, 17];
    for w in 1..=w_max {
        let state = ScenarioCounts::unknown_only(over_cap[w]);
        cases.push(ImpossibilityCase {
            label: format!("lhr unknown {} coins at w={w}", over_cap[w]),
            confirmed_unsolvable: !lhr.solvable(&state, w)?,
        });
    }

    Ok(ImpossibilityReport { cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transition_unknowns_split_on_imbalance() {
        let state = ScenarioCounts::unknown_only(16);
        let choice = WeighingChoice {
            left: ScenarioCounts::new(0, 0, 0, 7, 0),
            right: ScenarioCounts::new(0, 0, 0, 7, 0),
        };
        let next = transition(CoinKind::Lhr, &state, &choice, Symbol::Lt).unwrap();
        assert_eq!(next, ScenarioCounts::new(0, 7, 7, 0, 2));
        let next = transition(CoinKind::Lhr, &state, &choice, Symbol::Eq).unwrap();
        assert_eq!(next, ScenarioCounts::new(14, 0, 0, 2, 0));
    }

    #[test]
    fn transition_balanced_lights_become_heavy_on_imbalance() {
        let state = ScenarioCounts::new(4, 0, 0, 1, 0);
        let choice = WeighingChoice {
            left: ScenarioCounts::new(2, 0, 0, 0, 0),
            right: ScenarioCounts::new(2, 0, 0, 0, 0),
        };
        let next = transition(CoinKind::Lhr, &state, &choice, Symbol::Gt).unwrap();
        assert_eq!(next, ScenarioCounts::new(0, 2, 0, 0, 3));
    }

    #[test]
    fn transition_rejects_uneven_pans() {
        let state = ScenarioCounts::unknown_only(3);
        let choice = WeighingChoice {
            left: ScenarioCounts::new(0, 0, 0, 2, 0),
            right: ScenarioCounts::new(0, 0, 0, 1, 0),
        };
        assert!(matches!(
            transition(CoinKind::Lhr, &state, &choice, Symbol::Eq),
            Err(AdaptiveError::InfeasibleChoice { .. })
        ));
    }

    #[test]
    fn transition_lh_has_no_real_phase() {
        let state = ScenarioCounts::new(0, 0, 0, 4, 0);
        let choice = WeighingChoice {
            left: ScenarioCounts::new(0, 0, 0, 2, 0),
            right: ScenarioCounts::new(0, 0, 0, 2, 0),
        };
        let next = transition(CoinKind::Lh, &state, &choice, Symbol::Eq).unwrap();
        assert_eq!(next, ScenarioCounts::new(0, 0, 0, 0, 4));
        let next = transition(CoinKind::Lh, &state, &choice, Symbol::Lt).unwrap();
        assert_eq!(next, ScenarioCounts::new(2, 2, 0, 0, 0));
    }

    #[test]
    fn small_unknown_boundaries() {
        let mut solver = Solver::new(CoinKind::Lhr);
        assert!(solver.solvable(&ScenarioCounts::unknown_only(3), 2).unwrap());
        assert!(!solver.solvable(&ScenarioCounts::unknown_only(4), 2).unwrap());
        assert!(solver.solvable(&ScenarioCounts::unknown_only(1), 0).unwrap());
        assert!(!solver.solvable(&ScenarioCounts::unknown_only(2), 1).unwrap());
    }

    #[test]
    fn one_one_state_is_unsolvable_at_small_w() {
        let mut solver = Solver::new(CoinKind::Lh);
        for w in 0..=4 {
            assert!(!solver.solvable(&ScenarioCounts::new(1, 1, 0, 0, 0), w).unwrap());
        }
        // With ballast available the same counts fall in one weighing.
        assert!(solver.solvable(&ScenarioCounts::new(1, 1, 0, 0, 1), 1).unwrap());
    }

    #[test]
    fn ceiling_is_enforced() {
        let mut solver =
            Solver::with_ceiling(CoinKind::Lhr, SearchCeiling { max_total: 5, max_weighings: 2 });
        assert!(matches!(
            solver.solvable(&ScenarioCounts::unknown_only(6), 2),
            Err(AdaptiveError::SearchCeilingExceeded { .. })
        ));
        assert!(matches!(
            solver.solvable(&ScenarioCounts::unknown_only(3), 3),
            Err(AdaptiveError::SearchCeilingExceeded { .. })
        ));
    }

    #[test]
    fn solver_rejects_classes_off_the_kind() {
        let mut solver = Solver::new(CoinKind::Lr);
        assert!(matches!(
            solver.solvable(&ScenarioCounts::new(0, 1, 0, 0, 0), 1),
            Err(AdaptiveError::InvalidCounts { .. })
        ));
    }

    #[test]
    fn solvable_trees_replay_clean() {
        let state = ScenarioCounts::unknown_only(3);
        let verdict = solve_adaptive(CoinKind::Lhr, &state, 2).unwrap();
        let Verdict::Solvable(tree) = verdict else { panic!("3 coins solve in 2 weighings") };
        let initial: Vec<Vec<CoinState>> =
            (0..3).map(|_| CoinKind::Lhr.cycle().to_vec()).collect();
        replay_decision_tree(CoinKind::Lhr, &initial, &tree, 2).unwrap();
    }

    #[test]
    fn memoization_is_transparent_on_small_states() {
        for kind in [CoinKind::Lh, CoinKind::Lr, CoinKind::Lhr] {
            let mut with = Solver::new(kind);
            let mut without = Solver::new(kind).without_memo();
            for u in 0..=4 {
                for g in 0..=1 {
                    for w in 0..=2 {
                        let state = ScenarioCounts::new(0, 0, 0, u, g);
                        assert_eq!(
                            with.solvable(&state, w).unwrap(),
                            without.solvable(&state, w).unwrap(),
                            "{kind} {state} w={w}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn scripted_ids_parse() {
        assert_eq!(
            "lhr-unknown-w4-16c".parse::<ScriptedId>().unwrap(),
            ScriptedId::LhrUnknownW4C16
        );
        assert!(matches!(
            "lhr-unknown-w9-99c".parse::<ScriptedId>(),
            Err(AdaptiveError::UnknownExampleId(_))
        ));
    }

    #[test]
    fn scripted_16_coin_tree_replays() {
        let scripted = scripted_strategy(ScriptedId::LhrUnknownW4C16);
        assert_eq!(scripted.tree.depth(), 4);
        let initial: Vec<Vec<CoinState>> =
            (0..scripted.num_coins).map(|_| CoinKind::Lhr.cycle().to_vec()).collect();
        replay_decision_tree(CoinKind::Lhr, &initial, &scripted.tree, scripted.weighings).unwrap();
    }
}
