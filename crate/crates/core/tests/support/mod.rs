//! Shared test oracles: an identity-tracking adaptive solver that abstracts
//! nothing, used as ground truth for the count-level search.

use std::collections::HashMap;

use weighwright::adaptive::ScenarioCounts;
use weighwright::{step_state, CoinKind, CoinState, Placement};

const LIGHT: u8 = 1;
const HEAVY: u8 = 2;
const REAL: u8 = 4;

fn mask_of(state: CoinState) -> u8 {
    match state {
        CoinState::Light => LIGHT,
        CoinState::Heavy => HEAVY,
        CoinState::Real => REAL,
    }
}

fn kind_mask(kind: CoinKind) -> u8 {
    kind.cycle().iter().fold(0, |m, &s| m | mask_of(s))
}

/// Adaptive solver over explicit per-coin hypothesis sets. Coin `i` carries a
/// bitmask of the states it might currently be in if it is the fake; zero
/// means proven genuine. No class abstraction, no relabeling: every weighing
/// assigns each individual coin to a pan or leaves it out.
pub struct BruteSolver {
    kind: CoinKind,
    memo: HashMap<(Vec<u8>, usize), bool>,
}

impl BruteSolver {
    pub fn new(kind: CoinKind) -> BruteSolver {
        BruteSolver { kind, memo: HashMap::new() }
    }

    /// Hypothesis masks for a count state, in block order.
    pub fn masks_for(kind: CoinKind, counts: &ScenarioCounts) -> Vec<u8> {
        let mut masks = Vec::with_capacity(counts.total());
        masks.extend(std::iter::repeat(LIGHT).take(counts.light));
        masks.extend(std::iter::repeat(HEAVY).take(counts.heavy));
        masks.extend(std::iter::repeat(REAL).take(counts.real));
        masks.extend(std::iter::repeat(kind_mask(kind)).take(counts.unknown));
        masks.extend(std::iter::repeat(0).take(counts.genuine));
        masks
    }

    pub fn solvable(&mut self, masks: &[u8], w: usize) -> bool {
        let suspects = masks.iter().filter(|&&m| m != 0).count();
        if suspects <= 1 {
            return true;
        }
        if w == 0 {
            return false;
        }
        // Solvability is invariant under coin relabeling, so the memo keys
        // on the sorted mask vector.
        let mut key = masks.to_vec();
        key.sort_unstable();
        if let Some(&hit) = self.memo.get(&(key.clone(), w)) {
            return hit;
        }
        let result = self.search(masks, w);
        self.memo.insert((key, w), result);
        result
    }

    fn search(&mut self, masks: &[u8], w: usize) -> bool {
        let n = masks.len();
        let mut placement = vec![Placement::Out; n];
        self.try_placements(masks, w, &mut placement, 0, 0, 0)
    }

    fn try_placements(
        &mut self,
        masks: &[u8],
        w: usize,
        placement: &mut Vec<Placement>,
        i: usize,
        left: usize,
        right: usize,
    ) -> bool {
        if i == masks.len() {
            return left == right && left > 0 && self.weighing_works(masks, w, placement);
        }
        for p in [Placement::Out, Placement::Left, Placement::Right] {
            placement[i] = p;
            let (l, r) = match p {
                Placement::Left => (left + 1, right),
                Placement::Right => (left, right + 1),
                Placement::Out => (left, right),
            };
            if self.try_placements(masks, w, placement, i + 1, l, r) {
                placement[i] = Placement::Out;
                return true;
            }
        }
        placement[i] = Placement::Out;
        false
    }

    fn weighing_works(&mut self, masks: &[u8], w: usize, placement: &[Placement]) -> bool {
        for result in [Symbolish::Eq, Symbolish::Lt, Symbolish::Gt] {
            let next = successor(self.kind, masks, placement, result);
            let survivors = next.iter().filter(|&&m| m != 0).count();
            if survivors == 0 {
                continue;
            }
            if !self.solvable(&next, w - 1) {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Symbolish {
    Eq,
    Lt,
    Gt,
}

/// Filter each coin's hypothesis states against one observed result, then
/// advance the survivors of on-scale coins one step.
fn successor(kind: CoinKind, masks: &[u8], placement: &[Placement], result: Symbolish) -> Vec<u8> {
    masks
        .iter()
        .zip(placement)
        .map(|(&mask, &p)| {
            let mut next = 0u8;
            for &state in kind.cycle() {
                if mask & mask_of(state) == 0 {
                    continue;
                }
                let consistent = match (result, p) {
                    (Symbolish::Eq, Placement::Out) => true,
                    (Symbolish::Eq, _) => state == CoinState::Real,
                    (_, Placement::Out) => false,
                    (Symbolish::Lt, Placement::Left) | (Symbolish::Gt, Placement::Right) => {
                        state == CoinState::Light
                    }
                    (Symbolish::Lt, Placement::Right) | (Symbolish::Gt, Placement::Left) => {
                        state == CoinState::Heavy
                    }
                };
                if consistent {
                    let advanced = step_state(kind, state, p.on_scale()).unwrap();
                    next |= mask_of(advanced);
                }
            }
            next
        })
        .collect()
}
