//! Construction of oblivious strategies: outcome-to-itinerary translation per
//! coin kind and starting state, conjugate-pair assignment of outcomes to
//! coins, mixed-state assignment over the exclusive groups, and the built-in
//! strategy tables.
//!
//! The translation rules hinge on imbalance parity. For a coin that starts
//! light, the imbalances it causes alternate light, heavy, light, ... (an
//! on-scale visit in the real state reads `=` and is not an imbalance), so an
//! odd imbalance puts the coin on the pan matching the sign and an even one
//! on the opposite pan. Conjugate outcomes translate to conjugate
//! itineraries under every rule set, which is what makes pair-assignment
//! produce balanced weighings.

mod builtin;

pub use builtin::{builtin_strategy, BuiltinId, BUILTIN_IDS};

use std::collections::HashSet;
use std::fmt;

use crate::coin::{
    CoinKind, CoinState, InvalidStateForKind, Itinerary, Outcome, Placement, Scenario, Strategy,
    Symbol,
};
use crate::outcomes::{classify_xgroup, enumerate_outcomes, is_valid_outcome, XGroup};
use crate::sequences::{self, as_usize};

/// Errors from strategy construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SynthesisError {
    /// More coins than the bound for this kind/state/weighing budget.
    TooManyCoins { coins: usize, cap: usize },
    /// The outcome is not producible for the requested kind and start.
    InvalidOutcome { outcome: Outcome, kind: CoinKind, start: CoinState },
    InvalidStateForKind(InvalidStateForKind),
    /// No strategy exists at all (1:1, or the odd-odd parity wall).
    Unsolvable { reason: &'static str },
    /// A mixed-count inequality fails.
    InequalityViolated { detail: String },
    /// The construction needs more genuine ballast coins than were offered.
    InsufficientGenuineCoins { needed: usize, offered: usize },
    /// A case the analysis shows has no oblivious strategy even though the
    /// counting inequalities hold (the 7:1:1 two-weighing mix).
    KnownImpossible { detail: &'static str },
    /// No builtin table under that identifier.
    UnknownTableId(String),
    /// The requested builtin contains derived rows, excluded in verbatim-only
    /// mode.
    DerivedRowsForbidden(String),
}

impl fmt::Display for SynthesisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynthesisError::TooManyCoins { coins, cap } => {
                write!(f, "TooManyCoins: {coins} coins exceed the cap of {cap}")
            }
            SynthesisError::InvalidOutcome { outcome, kind, start } => {
                write!(f, "outcome `{outcome}` is not valid for a {kind} coin starting {start}")
            }
            SynthesisError::InvalidStateForKind(e) => e.fmt(f),
            SynthesisError::Unsolvable { reason } => write!(f, "Unsolvable: {reason}"),
            SynthesisError::InequalityViolated { detail } => {
                write!(f, "InequalityViolated: {detail}")
            }
            SynthesisError::InsufficientGenuineCoins { needed, offered } => write!(
                f,
                "InsufficientGenuineCoins: construction needs {needed}, got {offered}"
            ),
            SynthesisError::KnownImpossible { detail } => {
                write!(f, "KnownImpossible: {detail}")
            }
            SynthesisError::UnknownTableId(id) => write!(f, "UnknownTableId: `{id}`"),
            SynthesisError::DerivedRowsForbidden(id) => write!(
                f,
                "builtin `{id}` contains rows completed by derivation, unavailable in verbatim-only mode"
            ),
        }
    }
}

impl std::error::Error for SynthesisError {}

impl From<InvalidStateForKind> for SynthesisError {
    fn from(e: InvalidStateForKind) -> Self {
        SynthesisError::InvalidStateForKind(e)
    }
}

/// Ordinal of each imbalance (1-based), 0 at balanced positions.
fn imbalance_ordinals(x: &Outcome) -> Vec<usize> {
    let mut ordinal = 0;
    x.symbols()
        .iter()
        .map(|s| {
            if s.is_imbalance() {
                ordinal += 1;
                ordinal
            } else {
                0
            }
        })
        .collect()
}

fn pan_for(sign: Symbol, lighter_pan: bool) -> Placement {
    match (sign, lighter_pan) {
        (Symbol::Lt, true) | (Symbol::Gt, false) => Placement::Left,
        (Symbol::Gt, true) | (Symbol::Lt, false) => Placement::Right,
        (Symbol::Eq, _) => unreachable!("pan_for is only called on imbalances"),
    }
}

/// The unique itinerary on which a light-heavy coin starting light produces
/// `x`: odd imbalances put the coin on the pan the sign names as lighter,
/// even ones on the opposite pan, and `=` leaves it off the scale.
pub fn lh_itinerary(x: &Outcome) -> Itinerary {
    let ordinals = imbalance_ordinals(x);
    let letters = x
        .symbols()
        .iter()
        .zip(&ordinals)
        .map(|(&s, &ord)| {
            if ord == 0 {
                Placement::Out
            } else {
                pan_for(s, ord % 2 == 1)
            }
        })
        .collect();
    Itinerary::new(letters)
}

/// An itinerary realizing `x` for a light-real coin starting in `start`
/// (light or real). A light-start coin rides along on the pan of the
/// previous imbalance to pass through its real phase; a real-start coin is
/// weighed once, on the matching pan, just before each imbalance.
pub fn lr_itinerary(start: CoinState, x: &Outcome) -> Result<Itinerary, SynthesisError> {
    if !is_valid_outcome(CoinKind::Lr, start, x)? {
        return Err(SynthesisError::InvalidOutcome { outcome: x.clone(), kind: CoinKind::Lr, start });
    }
    let w = x.len();
    let symbols = x.symbols();
    let letters = (0..w)
        .map(|i| match symbols[i] {
            Symbol::Lt => Placement::Left,
            Symbol::Gt => Placement::Right,
            Symbol::Eq => {
                let neighbor = match start {
                    CoinState::Light => i.checked_sub(1).map(|j| symbols[j]),
                    CoinState::Real => symbols.get(i + 1).copied(),
                    CoinState::Heavy => unreachable!("validity check rejected heavy"),
                };
                match neighbor {
                    Some(Symbol::Lt) => Placement::Left,
                    Some(Symbol::Gt) => Placement::Right,
                    _ => Placement::Out,
                }
            }
        })
        .collect();
    Ok(Itinerary::new(letters))
}

/// An itinerary realizing `x` for a light-heavy-real coin starting in
/// `start`. Light and heavy starts put the coin back on the same pan right
/// after it turns real; a real start weighs the coin just before each odd
/// imbalance.
pub fn lhr_itinerary(start: CoinState, x: &Outcome) -> Result<Itinerary, SynthesisError> {
    if !is_valid_outcome(CoinKind::Lhr, start, x)? {
        return Err(SynthesisError::InvalidOutcome {
            outcome: x.clone(),
            kind: CoinKind::Lhr,
            start,
        });
    }
    let w = x.len();
    let symbols = x.symbols();
    let ordinals = imbalance_ordinals(x);
    // Which imbalance parity corresponds to the coin being light.
    let light_is_odd = start != CoinState::Heavy;
    let letters = (0..w)
        .map(|i| {
            let s = symbols[i];
            if s.is_imbalance() {
                let light_now = (ordinals[i] % 2 == 1) == light_is_odd;
                return pan_for(s, light_now);
            }
            // A balanced position hosts the coin's real-phase weighing when
            // the rules call for it; otherwise the coin stays off.
            match start {
                CoinState::Light | CoinState::Heavy => {
                    // On the same pan as the preceding imbalance, when that
                    // imbalance just turned the coin real.
                    let turned_real = if start == CoinState::Light {
                        |ord: usize| ord > 0 && ord % 2 == 0
                    } else {
                        |ord: usize| ord % 2 == 1
                    };
                    match i.checked_sub(1) {
                        Some(j) if turned_real(ordinals[j]) => {
                            let light_then = (ordinals[j] % 2 == 1) == light_is_odd;
                            pan_for(symbols[j], light_then)
                        }
                        _ => Placement::Out,
                    }
                }
                CoinState::Real => {
                    // On the pan of the next imbalance, when that imbalance
                    // needs the coin freshly turned light.
                    match symbols.get(i + 1) {
                        Some(&next) if next.is_imbalance() && ordinals[i + 1] % 2 == 1 => {
                            pan_for(next, true)
                        }
                        _ => Placement::Out,
                    }
                }
            }
        })
        .collect();
    Ok(Itinerary::new(letters))
}

/// Translate an outcome for any kind and start.
fn translate(kind: CoinKind, start: CoinState, x: &Outcome) -> Result<Itinerary, SynthesisError> {
    match kind {
        CoinKind::Lh => match start {
            CoinState::Light => Ok(lh_itinerary(x)),
            // A heavy coin on the mirrored pans behaves exactly like a light
            // coin on the originals.
            CoinState::Heavy => Ok(lh_itinerary(x).conjugate()),
            CoinState::Real => Err(InvalidStateForKind { kind, state: start }.into()),
        },
        CoinKind::Lr => lr_itinerary(start, x),
        CoinKind::Lhr => lhr_itinerary(start, x),
    }
}

/// Consume a lexicographically ordered outcome pool in conjugate pairs, with
/// the self-conjugate all-`=` outcome reserved for odd counts.
fn assign_conjugate_pairs(pool: &[Outcome], n: usize) -> Vec<Outcome> {
    let mut assigned = Vec::with_capacity(n);
    let mut used: HashSet<&Outcome> = HashSet::new();
    if n % 2 == 1 {
        let all_eq = pool
            .iter()
            .find(|x| x.is_self_conjugate())
            .expect("every validity class contains the all-balanced outcome");
        assigned.push(all_eq.clone());
        used.insert(all_eq);
    }
    let mut conj_index: std::collections::HashMap<&Outcome, &Outcome> = Default::default();
    let owned: Vec<Outcome> = pool.iter().map(|x| x.conjugate()).collect();
    for (x, c) in pool.iter().zip(&owned) {
        conj_index.insert(x, c);
    }
    for x in pool {
        if assigned.len() >= n {
            break;
        }
        let c = conj_index[x];
        if used.contains(x) || used.contains(c) || x == c {
            continue;
        }
        assigned.push(x.clone());
        assigned.push(c.clone());
        used.insert(x);
        used.insert(c);
    }
    assert!(assigned.len() >= n, "outcome pool exhausted before {n} coins were served");
    assigned.truncate(n);
    assigned
}

/// Oblivious strategy for `n` coins and a known starting state, at full
/// strength up to the exact bound for the kind.
pub fn synth_known(
    kind: CoinKind,
    start: CoinState,
    n: usize,
    w: usize,
) -> Result<Strategy, SynthesisError> {
    let cap_big = sequences::bound(kind, sequences::ScenarioClass::Known(start), w).map_err(
        |e| match e {
            sequences::BoundError::InvalidClassForKind { kind, state } => {
                SynthesisError::from(InvalidStateForKind { kind, state })
            }
            sequences::BoundError::UnsupportedBound { .. } => {
                unreachable!("known-state bounds are total")
            }
        },
    )?;
    let cap = as_usize(&cap_big);
    if n > cap {
        return Err(SynthesisError::TooManyCoins { coins: n, cap });
    }
    let enum_start = if kind == CoinKind::Lh { CoinState::Light } else { start };
    let pool = enumerate_outcomes(kind, &[enum_start], w);
    let outcomes = assign_conjugate_pairs(&pool, n);
    let itineraries = outcomes
        .iter()
        .map(|x| translate(kind, start, x))
        .collect::<Result<Vec<_>, _>>()?;
    let scenario = Scenario::known(kind, start, n)?;
    Ok(Strategy::new(scenario, itineraries).expect("one itinerary per coin, uniform length"))
}

/// All itineraries of length `w` in lexicographic order over `LRO`.
fn all_itineraries(w: usize) -> Vec<Itinerary> {
    let mut out = Vec::with_capacity(3usize.pow(w as u32));
    let mut buf = Vec::with_capacity(w);
    fn rec(w: usize, buf: &mut Vec<Placement>, out: &mut Vec<Itinerary>) {
        if buf.len() == w {
            out.push(Itinerary::new(buf.clone()));
            return;
        }
        for p in [Placement::Left, Placement::Right, Placement::Out] {
            buf.push(p);
            rec(w, buf, out);
            buf.pop();
        }
    }
    rec(w, &mut buf, &mut out);
    out
}

fn repeat_out(prefix: &str, w: usize) -> Itinerary {
    let mut s = String::from(prefix);
    while s.len() < w {
        s.push('O');
    }
    s.parse().expect("prefix uses only LRO letters")
}

/// Oblivious strategy for the light-heavy coin in the mixed l:h state.
///
/// Coins of the same group take conjugate itinerary pairs; a lone odd coin
/// takes the all-`O` itinerary. When both counts are odd the four-coin seed
/// (`LO..`, shared, plus `RL..`/`RR..`) starts the assignment, which is why
/// the odd-odd case needs `l + h <= 3^w - 3`. The odd-odd boundary
/// `l + h = 3^w - 1` and the 1:1 state admit no strategy at all.
pub fn synth_lh_mixed(l: usize, h: usize, w: usize) -> Result<Strategy, SynthesisError> {
    if l == 1 && h == 1 {
        return Err(SynthesisError::Unsolvable { reason: "the 1:1 state is unsolvable" });
    }
    let cap = 3usize.pow(w as u32);
    if l + h > cap {
        return Err(SynthesisError::TooManyCoins { coins: l + h, cap });
    }
    let both_odd = l % 2 == 1 && h % 2 == 1;
    if both_odd && l + h == cap - 1 {
        return Err(SynthesisError::Unsolvable {
            reason: "both groups odd with l + h = 3^w - 1 admits no strategy",
        });
    }

    let mut light_coins: Vec<Itinerary> = Vec::with_capacity(l);
    let mut heavy_coins: Vec<Itinerary> = Vec::with_capacity(h);
    let mut used: HashSet<Itinerary> = HashSet::new();

    if both_odd {
        let base = repeat_out("L", w);
        let rl = repeat_out("RL", w);
        let rr = repeat_out("RR", w);
        for it in [&base, &rl, &rr] {
            used.insert(it.clone());
            used.insert(it.conjugate());
        }
        light_coins.push(base.clone());
        heavy_coins.push(base);
        // The seed's two extra coins go to whichever group has three to give.
        if h >= 3 {
            heavy_coins.push(rl);
            heavy_coins.push(rr);
        } else {
            light_coins.push(rl);
            light_coins.push(rr);
        }
    } else {
        if l % 2 == 1 {
            light_coins.push(Itinerary::all_out(w));
        }
        if h % 2 == 1 {
            heavy_coins.push(Itinerary::all_out(w));
        }
    }

    let mut pairs = Vec::new();
    for d in all_itineraries(w) {
        let c = d.conjugate();
        if d.is_self_conjugate() || used.contains(&d) || used.contains(&c) {
            continue;
        }
        used.insert(d.clone());
        used.insert(c.clone());
        pairs.push((d, c));
    }
    let mut pairs = pairs.into_iter();
    let mut take_pair = || pairs.next().expect("itinerary pool exhausted");
    while light_coins.len() + 2 <= l {
        let (a, b) = take_pair();
        light_coins.push(a);
        light_coins.push(b);
    }
    while heavy_coins.len() + 2 <= h {
        let (a, b) = take_pair();
        heavy_coins.push(a);
        heavy_coins.push(b);
    }
    debug_assert_eq!(light_coins.len(), l);
    debug_assert_eq!(heavy_coins.len(), h);

    let mut itineraries = light_coins;
    itineraries.extend(heavy_coins);
    let scenario = Scenario::mixed(CoinKind::Lh, l, h, 0, 0)?;
    Ok(Strategy::new(scenario, itineraries).expect("block counts match"))
}

/// Oblivious strategy for the light-real coin in the mixed l:r state, with
/// `r <= J_{w+1}` and `l + r <= J_{w+2}`.
///
/// Balance-initial outcomes go to the real group first. When both counts are
/// odd, the extra real coin takes the all-`=` outcome on itinerary `RO..`,
/// and the extra light coin takes `<==..` on the conjugate itinerary `LO..`.
pub fn synth_lr_mixed(l: usize, r: usize, w: usize) -> Result<Strategy, SynthesisError> {
    let j1 = as_usize(&sequences::jacobsthal(w + 1));
    let j2 = as_usize(&sequences::jacobsthal(w + 2));
    if r > j1 {
        return Err(SynthesisError::TooManyCoins { coins: r, cap: j1 });
    }
    if l + r > j2 {
        return Err(SynthesisError::TooManyCoins { coins: l + r, cap: j2 });
    }

    let eq_pool = enumerate_outcomes(CoinKind::Lr, &[CoinState::Real], w);
    let all_pool = enumerate_outcomes(CoinKind::Lr, &[CoinState::Light], w);
    let mut used: HashSet<Outcome> = HashSet::new();
    let all_eq = Outcome::all_balanced(w);
    let both_odd = l % 2 == 1 && r % 2 == 1;

    // (outcome, itinerary override) per coin, blocks assembled at the end.
    let mut light_block: Vec<(Outcome, Option<Itinerary>)> = Vec::new();
    let mut real_block: Vec<(Outcome, Option<Itinerary>)> = Vec::new();

    if both_odd {
        let mut lt_first = vec![Symbol::Lt];
        lt_first.extend(vec![Symbol::Eq; w - 1]);
        let lt_outcome = Outcome::new(lt_first);
        used.insert(all_eq.clone());
        used.insert(lt_outcome.clone());
        real_block.push((all_eq.clone(), Some(repeat_out("R", w))));
        light_block.push((lt_outcome, Some(repeat_out("L", w))));
    } else if r % 2 == 1 {
        used.insert(all_eq.clone());
        real_block.push((all_eq.clone(), None));
    } else if l % 2 == 1 {
        used.insert(all_eq.clone());
        light_block.push((all_eq.clone(), None));
    }

    let take_pairs =
        |pool: &[Outcome], block: &mut Vec<(Outcome, Option<Itinerary>)>, target: usize,
         used: &mut HashSet<Outcome>| {
            for x in pool {
                if block.len() + 2 > target {
                    break;
                }
                let c = x.conjugate();
                if *x == c || used.contains(x) || used.contains(&c) {
                    continue;
                }
                used.insert(x.clone());
                used.insert(c.clone());
                block.push((x.clone(), None));
                block.push((c, None));
            }
            assert_eq!(block.len(), target, "outcome pool exhausted");
        };
    take_pairs(&eq_pool, &mut real_block, r, &mut used);
    take_pairs(&all_pool, &mut light_block, l, &mut used);

    let mut itineraries = Vec::with_capacity(l + r);
    for (x, over) in &light_block {
        itineraries.push(match over {
            Some(it) => it.clone(),
            None => lr_itinerary(CoinState::Light, x)?,
        });
    }
    for (x, over) in &real_block {
        itineraries.push(match over {
            Some(it) => it.clone(),
            None => lr_itinerary(CoinState::Real, x)?,
        });
    }
    let scenario = Scenario::mixed(CoinKind::Lr, l, 0, r, 0)?;
    Ok(Strategy::new(scenario, itineraries).expect("block counts match"))
}

const GROUPS: [XGroup; 5] = [XGroup::Lx, XGroup::Hx, XGroup::Lhx, XGroup::Lrx, XGroup::Lhrx];

fn group_index(g: XGroup) -> usize {
    GROUPS.iter().position(|&x| x == g).unwrap()
}

fn type_index(t: CoinState) -> usize {
    match t {
        CoinState::Light => 0,
        CoinState::Heavy => 1,
        CoinState::Real => 2,
    }
}

fn allowed_groups(t: CoinState) -> &'static [XGroup] {
    match t {
        CoinState::Light => &[XGroup::Lx, XGroup::Lhx, XGroup::Lrx, XGroup::Lhrx],
        CoinState::Heavy => &[XGroup::Hx, XGroup::Lhx, XGroup::Lhrx],
        CoinState::Real => &[XGroup::Lrx, XGroup::Lhrx],
    }
}

/// Per-type, per-group coin placement for the mixed LHR construction.
struct CellTable {
    cells: [[usize; 5]; 3],
    caps: [usize; 5],
}

impl CellTable {
    fn occupancy(&self, g: XGroup) -> usize {
        (0..3).map(|t| self.cells[t][group_index(g)]).sum()
    }

    fn get(&self, t: CoinState, g: XGroup) -> usize {
        self.cells[type_index(t)][group_index(g)]
    }

    fn add(&mut self, t: CoinState, g: XGroup, delta: isize) {
        let cell = &mut self.cells[type_index(t)][group_index(g)];
        *cell = cell.checked_add_signed(delta).expect("cell count stays non-negative");
    }

    fn odd_groups(&self, t: CoinState) -> Vec<XGroup> {
        allowed_groups(t).iter().copied().filter(|&g| self.get(t, g) % 2 == 1).collect()
    }

    fn free(&self, g: XGroup) -> usize {
        self.caps[group_index(g)] - self.occupancy(g)
    }

    /// Greedy fill in the order the matching lemma uses, heavy coins first
    /// toward the most exclusive groups.
    fn fill(&mut self, t: CoinState, mut count: usize, order: &[XGroup]) {
        for &g in order {
            let take = count.min(self.free(g));
            self.add(t, g, take as isize);
            count -= take;
            if count == 0 {
                return;
            }
        }
        assert_eq!(count, 0, "inequalities guarantee the groups can host every coin");
    }

    /// Collapse to at most one odd cell for `t`. Moves go into an odd group
    /// with free outcomes; a swap with a coin of another type happens only
    /// when every odd group is full, and must not break a type in `settled`.
    fn normalize(&mut self, t: CoinState, settled: &[CoinState]) -> Result<(), SynthesisError> {
        loop {
            let odd = self.odd_groups(t);
            if odd.len() <= 1 {
                return Ok(());
            }
            if let Some(&dst) = odd.iter().find(|&&g| self.free(g) > 0) {
                let src = *odd.iter().find(|&&g| g != dst).unwrap();
                self.add(t, src, -1);
                self.add(t, dst, 1);
                continue;
            }
            let mut swapped = false;
            'candidates: for &g1 in &odd {
                for &g2 in &odd {
                    if g1 == g2 {
                        continue;
                    }
                    for t2 in [CoinState::Light, CoinState::Heavy, CoinState::Real] {
                        if t2 == t
                            || self.get(t2, g1) == 0
                            || !allowed_groups(t2).contains(&g2)
                            || !allowed_groups(t2).contains(&g1)
                        {
                            continue;
                        }
                        // Trial swap: t leaves g2 for g1, t2 leaves g1 for g2.
                        self.add(t, g2, -1);
                        self.add(t, g1, 1);
                        self.add(t2, g1, -1);
                        self.add(t2, g2, 1);
                        let safe = settled.iter().all(|&s| self.odd_groups(s).len() <= 1);
                        if safe {
                            swapped = true;
                            break 'candidates;
                        }
                        self.add(t, g2, 1);
                        self.add(t, g1, -1);
                        self.add(t2, g1, 1);
                        self.add(t2, g2, -1);
                    }
                }
            }
            if !swapped {
                return Err(SynthesisError::InequalityViolated {
                    detail: "could not rebalance odd groups; counts admit no assignment".into(),
                });
            }
        }
    }
}

/// Oblivious strategy for the light-heavy-real coin in the mixed l:h:r state
/// with `extra_genuine` ballast coins. Needs `m - 1` genuine coins when `m`
/// of the three counts are odd, except for the 0:h:r case with both counts
/// odd and `h < H_w`, which needs none.
pub fn synth_lhr_mixed(
    l: usize,
    h: usize,
    r: usize,
    w: usize,
    extra_genuine: usize,
) -> Result<Strategy, SynthesisError> {
    let (l_w, h_w, r_w) = {
        let (a, b, c) = sequences::lhr_counts(w);
        (as_usize(&a), as_usize(&b), as_usize(&c))
    };
    let (hr_w, lhr_w) = {
        let (a, b) = sequences::hr_lhr_counts(w);
        (as_usize(&a), as_usize(&b))
    };
    let fail = |detail: String| Err(SynthesisError::InequalityViolated { detail });
    if r > r_w {
        return fail(format!("r = {r} exceeds R_w = {r_w}"));
    }
    if h > h_w {
        return fail(format!("h = {h} exceeds H_w = {h_w}"));
    }
    if h + r > hr_w {
        return fail(format!("h + r = {} exceeds HR_w = {hr_w}", h + r));
    }
    if l + r > l_w {
        return fail(format!("l + r = {} exceeds LR_w = L_w = {l_w}", l + r));
    }
    if l + h + r > lhr_w {
        return fail(format!("l + h + r = {} exceeds LHR_w = {lhr_w}", l + h + r));
    }

    if (l, h, r, w) == (7, 1, 1, 2) && extra_genuine < 2 {
        return Err(SynthesisError::KnownImpossible {
            detail: "the 7:1:1 state has no two-weighing oblivious strategy",
        });
    }

    let m = [l, h, r].iter().filter(|&&c| c % 2 == 1).count();
    let needed = m.saturating_sub(1);
    let zero_hr_special = l == 0 && h % 2 == 1 && r % 2 == 1 && h < h_w;
    if extra_genuine < needed && !zero_hr_special {
        return Err(SynthesisError::InsufficientGenuineCoins { needed, offered: extra_genuine });
    }

    if w == 0 {
        // At most one suspect by the inequalities; nothing to weigh.
        let scenario = Scenario::mixed(CoinKind::Lhr, l, h, r, extra_genuine)?;
        let its = vec![Itinerary::all_out(0); scenario.num_coins];
        return Ok(Strategy::new(scenario, its).expect("empty itineraries"));
    }

    if zero_hr_special && extra_genuine < needed {
        return synth_lhr_zero_hr(h, r, w, extra_genuine);
    }
    synth_lhr_generic(l, h, r, w, extra_genuine, m)
}

/// Lexicographic outcome pools per exclusive group, consumed in conjugate
/// pairs or as reserved singles.
struct GroupPools {
    pools: [Vec<Outcome>; 5],
    used: HashSet<Outcome>,
}

impl GroupPools {
    fn new(w: usize) -> GroupPools {
        let mut pools: [Vec<Outcome>; 5] = Default::default();
        for x in enumerate_outcomes(CoinKind::Lhr, CoinKind::Lhr.cycle(), w) {
            let g = classify_xgroup(&x).expect("enumerated outcomes are valid");
            pools[group_index(g)].push(x);
        }
        GroupPools { pools, used: HashSet::new() }
    }

    fn reserve(&mut self, x: &Outcome) {
        let fresh = self.used.insert(x.clone());
        assert!(fresh, "outcome `{x}` reserved twice");
    }

    fn take_pair(&mut self, g: XGroup) -> (Outcome, Outcome) {
        let pool = &self.pools[group_index(g)];
        for x in pool {
            let c = x.conjugate();
            if *x == c || self.used.contains(x) || self.used.contains(&c) {
                continue;
            }
            self.used.insert(x.clone());
            self.used.insert(c.clone());
            return (x.clone(), c);
        }
        panic!("conjugate pairs exhausted in group {g:?}");
    }

    fn take_single(&mut self, g: XGroup) -> Outcome {
        let pool = &self.pools[group_index(g)];
        for x in pool {
            if !self.used.contains(x) {
                self.used.insert(x.clone());
                return x.clone();
            }
        }
        panic!("group {g:?} exhausted");
    }
}

fn xgroup_caps(w: usize) -> [usize; 5] {
    let x = sequences::xgroup_counts(w);
    [as_usize(&x.lx), as_usize(&x.hx), as_usize(&x.lhx), as_usize(&x.lrx), as_usize(&x.lhrx)]
}

fn synth_lhr_generic(
    l: usize,
    h: usize,
    r: usize,
    w: usize,
    extra_genuine: usize,
    m: usize,
) -> Result<Strategy, SynthesisError> {
    let mut table = CellTable { cells: [[0; 5]; 3], caps: xgroup_caps(w) };
    table.fill(CoinState::Heavy, h, allowed_groups(CoinState::Heavy));
    table.fill(CoinState::Light, l, allowed_groups(CoinState::Light));
    table.fill(CoinState::Real, r, allowed_groups(CoinState::Real));

    table.normalize(CoinState::Heavy, &[])?;
    table.normalize(CoinState::Light, &[CoinState::Heavy])?;
    table.normalize(CoinState::Real, &[CoinState::Heavy, CoinState::Light])?;

    // Park one odd cell in the all-states group so its extra coin can take
    // the self-conjugate outcome.
    let types = [CoinState::Real, CoinState::Heavy, CoinState::Light];
    let lhrx_odd = types.iter().any(|&t| table.get(t, XGroup::Lhrx) % 2 == 1);
    if m >= 1 && !lhrx_odd {
        let (t, g) = types
            .iter()
            .find_map(|&t| table.odd_groups(t).first().map(|&g| (t, g)))
            .expect("m >= 1 means some type has an odd cell");
        assert!(table.free(XGroup::Lhrx) > 0, "all-states group has even occupancy, odd size");
        table.add(t, g, -1);
        table.add(t, XGroup::Lhrx, 1);
    }

    let mut pools = GroupPools::new(w);
    let all_eq = Outcome::all_balanced(w);

    // Pairs first so singles cannot strand a conjugate a pair still needs.
    let mut coin_outcomes: [Vec<Outcome>; 3] = Default::default();
    let mut extras: Vec<(CoinState, XGroup)> = Vec::new();
    for &t in &[CoinState::Light, CoinState::Heavy, CoinState::Real] {
        for &g in allowed_groups(t) {
            let c = table.get(t, g);
            for _ in 0..c / 2 {
                let (x, conj) = pools.take_pair(g);
                coin_outcomes[type_index(t)].push(x);
                coin_outcomes[type_index(t)].push(conj);
            }
            if c % 2 == 1 {
                extras.push((t, g));
            }
        }
    }

    // The extra in the all-states group takes all-`=`; every other extra is
    // balanced by a genuine coin on the conjugate itinerary.
    extras.sort_by_key(|&(t, g)| (g != XGroup::Lhrx, type_index(t)));
    let mut genuine_partners: Vec<Itinerary> = Vec::new();
    let mut all_eq_used = false;
    for (t, g) in extras {
        let x = if g == XGroup::Lhrx && !all_eq_used {
            all_eq_used = true;
            pools.reserve(&all_eq);
            all_eq.clone()
        } else {
            let x = pools.take_single(g);
            let partner = lhr_itinerary(t, &x)?.conjugate();
            genuine_partners.push(partner);
            x
        };
        coin_outcomes[type_index(t)].push(x);
    }
    assert!(
        genuine_partners.len() <= extra_genuine,
        "normalization used more ballast than the theorem allows"
    );

    let mut itineraries = Vec::with_capacity(l + h + r + extra_genuine);
    for &t in &[CoinState::Light, CoinState::Heavy, CoinState::Real] {
        for x in &coin_outcomes[type_index(t)] {
            itineraries.push(lhr_itinerary(t, x)?);
        }
    }
    let idle = extra_genuine - genuine_partners.len();
    itineraries.extend(genuine_partners);
    itineraries.extend(std::iter::repeat(Itinerary::all_out(w)).take(idle));

    let scenario = Scenario::mixed(CoinKind::Lhr, l, h, r, extra_genuine)?;
    Ok(Strategy::new(scenario, itineraries).expect("block counts match"))
}

/// The 0:h:r construction for both counts odd and `h < H_w`: the extra heavy
/// coin is weighed exactly once, on the pan matching its imbalance, and the
/// extra real coin balances it on the conjugate itinerary, reading all-`=`.
fn synth_lhr_zero_hr(
    h: usize,
    r: usize,
    w: usize,
    extra_genuine: usize,
) -> Result<Strategy, SynthesisError> {
    let caps = xgroup_caps(w);
    let hx_cap = caps[group_index(XGroup::Hx)];
    let lhx_cap = caps[group_index(XGroup::Lhx)];

    // Heavy cells with the odd one pushed out of the heavy-exclusive group.
    let mut h_hx = h.min(hx_cap);
    let mut h_lhx = (h - h_hx).min(lhx_cap);
    let h_lhrx;
    if h_hx % 2 == 1 {
        h_hx -= 1;
        h_lhx += 1;
    }
    h_lhrx = h - h_hx - h_lhx;
    let odd_in_lhx = h_lhx % 2 == 1;
    debug_assert!(odd_in_lhx != (h_lhrx % 2 == 1));

    let mut pools = GroupPools::new(w);
    let all_eq = Outcome::all_balanced(w);

    // Reserved outcomes: `<==..` (light-heavy group) or `=<=..` (all-states
    // group) for the heavy extra, all-`=` for the real extra.
    let (extra_h_outcome, extra_h_itinerary) = if odd_in_lhx {
        let mut sym = vec![Symbol::Lt];
        sym.extend(vec![Symbol::Eq; w - 1]);
        (Outcome::new(sym), repeat_out("R", w))
    } else {
        let mut sym = vec![Symbol::Eq, Symbol::Lt];
        sym.extend(vec![Symbol::Eq; w - 2]);
        (Outcome::new(sym), repeat_out("OR", w))
    };
    pools.reserve(&extra_h_outcome);
    pools.reserve(&all_eq);
    let extra_r_itinerary = extra_h_itinerary.conjugate();

    let mut heavy_outcomes = Vec::with_capacity(h - 1);
    for (g, c) in [(XGroup::Hx, h_hx), (XGroup::Lhx, h_lhx), (XGroup::Lhrx, h_lhrx)] {
        let pairs = if c % 2 == 1 { (c - 1) / 2 } else { c / 2 };
        for _ in 0..pairs {
            let (x, conj) = pools.take_pair(g);
            heavy_outcomes.push(x);
            heavy_outcomes.push(conj);
        }
    }

    let r_lrx = (r - 1).min(caps[group_index(XGroup::Lrx)]);
    let r_lhrx_pairs = (r - 1 - r_lrx) / 2;
    let mut real_outcomes = Vec::with_capacity(r - 1);
    for _ in 0..r_lrx / 2 {
        let (x, conj) = pools.take_pair(XGroup::Lrx);
        real_outcomes.push(x);
        real_outcomes.push(conj);
    }
    for _ in 0..r_lhrx_pairs {
        let (x, conj) = pools.take_pair(XGroup::Lhrx);
        real_outcomes.push(x);
        real_outcomes.push(conj);
    }

    let mut itineraries = Vec::with_capacity(h + r + extra_genuine);
    for x in &heavy_outcomes {
        itineraries.push(lhr_itinerary(CoinState::Heavy, x)?);
    }
    itineraries.push(extra_h_itinerary);
    for x in &real_outcomes {
        itineraries.push(lhr_itinerary(CoinState::Real, x)?);
    }
    itineraries.push(extra_r_itinerary);
    itineraries.extend(std::iter::repeat(Itinerary::all_out(w)).take(extra_genuine));

    let scenario = Scenario::mixed(CoinKind::Lhr, 0, h, r, extra_genuine)?;
    Ok(Strategy::new(scenario, itineraries).expect("block counts match"))
}
