//! Integer sequences and solvability bounds, each computable two ways so the
//! routes can cross-check each other.
//!
//! All values are arbitrary precision: `3^w` and the weighted-Tribonacci
//! family overflow machine words well within the range the CLI accepts.
//! The dominant root of `x^3 = 2x^2 - x + 4` is about 2.3146, so the outcome
//! counts grow between the alternator's 2^w and the classic 3^w.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::coin::{CoinKind, CoinState};

/// Jacobsthal numbers: `J_0 = 0`, `J_1 = 1`, `J_{n+1} = J_n + 2 J_{n-1}`.
pub fn jacobsthal(n: usize) -> BigUint {
    let mut prev = BigUint::zero();
    let mut cur = BigUint::one();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &cur + 2u32 * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Closed form `J_n = (2^n - (-1)^n) / 3`.
pub fn jacobsthal_closed(n: usize) -> BigUint {
    let two_n = BigInt::one() << n;
    let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    ((two_n - sign) / BigInt::from(3)).to_biguint().expect("non-negative by construction")
}

/// Outcome counts `(L_n, H_n, R_n)` for one LHR coin starting light, heavy, or
/// real, via the first-order system
/// `L_n = L_{n-1} + 2 H_{n-1}`, `H_n = H_{n-1} + 2 R_{n-1}`, `R_n = L_{n-1}`,
/// with `L_0 = H_0 = R_0 = 1`.
pub fn lhr_counts(n: usize) -> (BigUint, BigUint, BigUint) {
    let mut l = BigUint::one();
    let mut h = BigUint::one();
    let mut r = BigUint::one();
    for _ in 0..n {
        let l_next = &l + 2u32 * &h;
        let h_next = &h + 2u32 * &r;
        let r_next = l.clone();
        l = l_next;
        h = h_next;
        r = r_next;
    }
    (l, h, r)
}

/// The same three sequences via the third-order recurrence
/// `s_{n+1} = 2 s_n - s_{n-1} + 4 s_{n-2}` (the weighted Tribonacci with
/// weights (2, -1, 4)), seeded from the first-order system.
pub fn lhr_counts_third_order(n: usize) -> (BigUint, BigUint, BigUint) {
    fn run(seed: [BigUint; 3], n: usize) -> BigUint {
        if n < 3 {
            return seed[n].clone();
        }
        let mut window: [BigInt; 3] = seed.map(BigInt::from);
        let mut value = window[2].clone();
        for _ in 3..=n {
            value = 2 * &window[2] - &window[1] + 4 * &window[0];
            window = [window[1].clone(), window[2].clone(), value.clone()];
        }
        value.to_biguint().expect("sequence is non-negative")
    }

    let seeds = |pick: fn(&(BigUint, BigUint, BigUint)) -> BigUint| {
        [pick(&lhr_counts(0)), pick(&lhr_counts(1)), pick(&lhr_counts(2))]
    };
    (
        run(seeds(|t| t.0.clone()), n),
        run(seeds(|t| t.1.clone()), n),
        run(seeds(|t| t.2.clone()), n),
    )
}

/// Union counts `(HR_n, LHR_n)` via the recurrences
/// `HR_n = LHR_{n-1} + 2 R_{n-1}` and `LHR_n = LHR_{n-1} + 2 HR_{n-1}`,
/// with both equal to 1 at `n = 0`.
pub fn hr_lhr_counts(n: usize) -> (BigUint, BigUint) {
    let mut hr = BigUint::one();
    let mut lhr = BigUint::one();
    let mut r = BigUint::one();
    let mut l = BigUint::one();
    let mut h = BigUint::one();
    for _ in 0..n {
        let hr_next = &lhr + 2u32 * &r;
        let lhr_next = &lhr + 2u32 * &hr;
        let l_next = &l + 2u32 * &h;
        let h_next = &h + 2u32 * &r;
        r = l.clone();
        l = l_next;
        h = h_next;
        hr = hr_next;
        lhr = lhr_next;
    }
    (hr, lhr)
}

/// The same pair via the closed forms `HR_n = H_n + L_{n-1} - J_{n+1}` and
/// `LHR_n = L_n + H_n - J_{n+2}` (for `n >= 1`).
pub fn hr_lhr_closed(n: usize) -> (BigUint, BigUint) {
    if n == 0 {
        return (BigUint::one(), BigUint::one());
    }
    let (l_n, h_n, _) = lhr_counts(n);
    let (l_prev, _, _) = lhr_counts(n - 1);
    let hr = &h_n + &l_prev - jacobsthal(n + 1);
    let lhr = &l_n + &h_n - jacobsthal(n + 2);
    (hr, lhr)
}

/// The same pair via the fifth-order recurrence
/// `s_n = 3 s_{n-1} - s_{n-2} + s_{n-3} - 2 s_{n-4} - 8 s_{n-5}`.
pub fn hr_lhr_fifth_order(n: usize) -> (BigUint, BigUint) {
    fn run(pick: fn(&(BigUint, BigUint)) -> BigUint, n: usize) -> BigUint {
        if n < 5 {
            return pick(&hr_lhr_counts(n));
        }
        let mut window: Vec<BigInt> =
            (0..5).map(|i| BigInt::from(pick(&hr_lhr_counts(i)))).collect();
        let mut value = window[4].clone();
        for _ in 5..=n {
            value = 3 * &window[4] - &window[3] + &window[2] - 2 * &window[1] - 8 * &window[0];
            window.remove(0);
            window.push(value.clone());
        }
        value.to_biguint().expect("sequence is non-negative")
    }
    (run(|t| t.0.clone(), n), run(|t| t.1.clone(), n))
}

/// Sizes of the five disjoint X-groups partitioning the LHR-valid outcomes of
/// length `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XGroupCounts {
    pub lx: BigUint,
    pub hx: BigUint,
    pub lrx: BigUint,
    pub lhx: BigUint,
    pub lhrx: BigUint,
}

impl XGroupCounts {
    pub fn total(&self) -> BigUint {
        &self.lx + &self.hx + &self.lrx + &self.lhx + &self.lhrx
    }
}

/// `LX_n = L_n - L_{n-1} - 2 J_n`, `HX_n = H_n - J_{n+2}`,
/// `LRX_n = L_{n-1} - J_{n+1}`, `LHX_n = 2 J_n`, `LHRX_n = J_{n+1}`.
///
/// Requires `n >= 1`; the partition is over non-empty outcome strings.
pub fn xgroup_counts(n: usize) -> XGroupCounts {
    assert!(n >= 1, "xgroup_counts requires n >= 1");
    let (l_n, h_n, _) = lhr_counts(n);
    let (l_prev, _, _) = lhr_counts(n - 1);
    XGroupCounts {
        lx: &l_n - &l_prev - 2u32 * jacobsthal(n),
        hx: &h_n - jacobsthal(n + 2),
        lrx: &l_prev - jacobsthal(n + 1),
        lhx: 2u32 * jacobsthal(n),
        lhrx: jacobsthal(n + 1),
    }
}

/// `k_w = min((HR_w - 1)/2, R_w)`, the exact cap for the 0:k:k mixed state.
/// From `w >= 5` on this equals `R_w`.
pub fn k_sequence(w: usize) -> BigUint {
    let (hr, _) = hr_lhr_counts(w);
    let (_, _, r) = lhr_counts(w);
    let half = (hr - BigUint::one()) / 2u32;
    half.min(r)
}

/// Scenario classes the bound catalog distinguishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScenarioClass {
    Known(CoinState),
    Mixed,
    UnknownAdaptive,
    UnknownOblivious,
}

/// Errors from the bound catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundError {
    /// The catalog has no proven value for this combination; the LHR
    /// unknown-state oblivious cap is only established through `w = 4`.
    UnsupportedBound { kind: CoinKind, class: String, w: usize },
    /// The class names a state the kind never occupies.
    InvalidClassForKind { kind: CoinKind, state: CoinState },
}

impl fmt::Display for BoundError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundError::UnsupportedBound { kind, class, w } => write!(
                f,
                "UnsupportedBound: no established bound for {kind} {class} at w = {w}"
            ),
            BoundError::InvalidClassForKind { kind, state } => {
                write!(f, "state `{state}` is unreachable for {kind} coins")
            }
        }
    }
}

impl std::error::Error for BoundError {}

fn pow3(w: usize) -> BigUint {
    BigUint::from(3u32).pow(w as u32)
}

/// Maximal number of coins processable in `w` weighings, per kind and
/// scenario class.
pub fn bound(kind: CoinKind, class: ScenarioClass, w: usize) -> Result<BigUint, BoundError> {
    match (kind, class) {
        (CoinKind::Lh, ScenarioClass::Known(s)) => {
            if !kind.occupies(s) {
                return Err(BoundError::InvalidClassForKind { kind, state: s });
            }
            Ok(pow3(w))
        }
        (CoinKind::Lh, ScenarioClass::Mixed) => Ok(pow3(w)),
        (CoinKind::Lh, ScenarioClass::UnknownAdaptive)
        | (CoinKind::Lh, ScenarioClass::UnknownOblivious) => {
            Ok((pow3(w) - BigUint::one()) / 2u32)
        }
        (CoinKind::Lr, ScenarioClass::Known(CoinState::Light)) => Ok(jacobsthal(w + 2)),
        (CoinKind::Lr, ScenarioClass::Known(CoinState::Real)) => Ok(jacobsthal(w + 1)),
        (CoinKind::Lr, ScenarioClass::Known(s)) => {
            Err(BoundError::InvalidClassForKind { kind, state: s })
        }
        (CoinKind::Lr, ScenarioClass::Mixed) => Ok(jacobsthal(w + 2)),
        (CoinKind::Lr, ScenarioClass::UnknownAdaptive) => Ok(jacobsthal(w + 1)),
        (CoinKind::Lr, ScenarioClass::UnknownOblivious) => Ok(lr_unknown_oblivious(w)),
        (CoinKind::Lhr, ScenarioClass::Known(s)) => {
            let (l, h, r) = lhr_counts(w);
            Ok(match s {
                CoinState::Light => l,
                CoinState::Heavy => h,
                CoinState::Real => r,
            })
        }
        (CoinKind::Lhr, ScenarioClass::Mixed) => Ok(hr_lhr_counts(w).1),
        (CoinKind::Lhr, ScenarioClass::UnknownAdaptive) => Ok(lhr_unknown_adaptive(w)),
        (CoinKind::Lhr, ScenarioClass::UnknownOblivious) => match w {
            0 | 1 => Ok(BigUint::one()),
            2 => Ok(BigUint::from(3u32)),
            3 => Ok(BigUint::from(6u32)),
            4 => Ok(BigUint::from(14u32)),
            _ => Err(BoundError::UnsupportedBound {
                kind,
                class: "unknown-oblivious".into(),
                w,
            }),
        },
    }
}

/// Oblivious cap for the alternator with unknown start: 1, 1, 3 for w <= 2,
/// then `(J_{2k+3} - 2^k + 1)/2` at odd `w = 2k+1` and
/// `(J_{2k+2} - (k-2) 2^{k-1} + 1)/2` at even `w = 2k >= 4`.
fn lr_unknown_oblivious(w: usize) -> BigUint {
    match w {
        0 | 1 => BigUint::one(),
        2 => BigUint::from(3u32),
        _ if w % 2 == 1 => {
            let k = (w - 1) / 2;
            (jacobsthal(2 * k + 3) - (BigUint::one() << k) + BigUint::one()) / 2u32
        }
        _ => {
            let k = w / 2;
            let j = BigInt::from(jacobsthal(2 * k + 2));
            let adjust = BigInt::from(k as i64 - 2) * (BigInt::one() << (k - 1));
            ((j - adjust + BigInt::one()) / BigInt::from(2))
                .to_biguint()
                .expect("cap is non-negative")
        }
    }
}

/// Adaptive cap for the LHR coin with unknown start: the listed small values
/// through `w = 4`, then `k_{w-1} + (L_{w-1} + 1)/2`.
fn lhr_unknown_adaptive(w: usize) -> BigUint {
    match w {
        0 | 1 => BigUint::one(),
        2 => BigUint::from(3u32),
        3 => BigUint::from(6u32),
        4 => BigUint::from(16u32),
        _ => {
            let (l_prev, _, _) = lhr_counts(w - 1);
            k_sequence(w - 1) + (l_prev + BigUint::one()) / 2u32
        }
    }
}

/// One inequality family checked by [`check_comparison_lemmas`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonCheck {
    pub name: &'static str,
    pub pass: bool,
}

/// Result of sweeping the ordering lemmas up to `n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub checks: Vec<ComparisonCheck>,
    /// First index with `HR_n > L_n`.
    pub crossover_index: usize,
}

impl ComparisonReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Error for a sweep too short to witness the HR/L crossover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepTooShort {
    pub n_max: usize,
}

impl fmt::Display for SweepTooShort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "comparison sweep needs n_max >= 11 to witness the HR/L crossover, got {}",
            self.n_max
        )
    }
}

impl std::error::Error for SweepTooShort {}

/// Check the ordering lemmas over their stated ranges up to `n_max`:
/// `R_n < H_n < L_n` (n > 1), `2L_{n-1} < L_n` and `2H_{n-1} < H_n` (n > 2),
/// `3L_{n-1} > L_n` and `3H_{n-1} > H_n` (n > 3), `L_n > J_{n+3}` (n > 4),
/// and the HR/L order switch: `HR_n = L_n` at n <= 1, then `HR_n < L_n`
/// until the crossover, after which `HR_n > L_n` stays. The crossover lands
/// at n = 11 (HR_10 = 6493 < 6601 = L_10, HR_11 = 15263 > 15251 = L_11).
pub fn check_comparison_lemmas(n_max: usize) -> Result<ComparisonReport, SweepTooShort> {
    if n_max < 11 {
        return Err(SweepTooShort { n_max });
    }
    let series: Vec<_> = (0..=n_max)
        .map(|n| {
            let (l, h, r) = lhr_counts(n);
            let (hr, _) = hr_lhr_counts(n);
            (l, h, r, hr, jacobsthal(n + 3))
        })
        .collect();

    let mut checks = Vec::new();
    let mut push = |name, pass| checks.push(ComparisonCheck { name, pass });

    push(
        "R_n < H_n < L_n for n > 1",
        (2..=n_max).all(|n| series[n].2 < series[n].1 && series[n].1 < series[n].0),
    );
    push(
        "2L_{n-1} < L_n and 2H_{n-1} < H_n for n > 2",
        (3..=n_max).all(|n| {
            2u32 * &series[n - 1].0 < series[n].0 && 2u32 * &series[n - 1].1 < series[n].1
        }),
    );
    push(
        "3L_{n-1} > L_n and 3H_{n-1} > H_n for n > 3",
        (4..=n_max).all(|n| {
            3u32 * &series[n - 1].0 > series[n].0 && 3u32 * &series[n - 1].1 > series[n].1
        }),
    );
    push("L_n > J_{n+3} for n > 4", (5..=n_max).all(|n| series[n].0 > series[n].4));
    let crossover_index = (0..=n_max)
        .find(|&n| series[n].3 > series[n].0)
        .unwrap_or(n_max + 1);
    push(
        "HR_n <= L_n below the crossover, HR_n > L_n from it on",
        (0..=n_max).all(|n| {
            if n < crossover_index {
                series[n].3 <= series[n].0 && (n < 2 || series[n].3 < series[n].0)
            } else {
                series[n].3 > series[n].0
            }
        }),
    );
    Ok(ComparisonReport { checks, crossover_index })
}

/// Downcast helper for desk-scale callers of the BigUint sequences.
pub fn as_usize(value: &BigUint) -> usize {
    value.to_usize().expect("value exceeds usize on this platform")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobsthal_golden_and_closed_form() {
        let expect = [0u32, 1, 1, 3, 5, 11, 21, 43, 85, 171, 341];
        for (n, &v) in expect.iter().enumerate() {
            assert_eq!(jacobsthal(n), BigUint::from(v), "J_{n}");
            assert_eq!(jacobsthal_closed(n), BigUint::from(v), "closed J_{n}");
        }
    }

    #[test]
    fn jacobsthal_doubling_identity() {
        // J_{n+1} = 2 J_n + (-1)^n
        for n in 1..40 {
            let lhs = BigInt::from(jacobsthal(n + 1));
            let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            assert_eq!(lhs, 2 * BigInt::from(jacobsthal(n)) + sign);
        }
    }

    #[test]
    fn first_order_system_matches_third_order_recurrence() {
        for n in 0..=20 {
            assert_eq!(lhr_counts(n), lhr_counts_third_order(n), "n = {n}");
        }
    }

    #[test]
    fn hr_lhr_routes_agree() {
        for n in 0..=20 {
            let rec = hr_lhr_counts(n);
            assert_eq!(rec, hr_lhr_closed(n), "closed form at n = {n}");
            assert_eq!(rec, hr_lhr_fifth_order(n), "fifth-order at n = {n}");
        }
    }

    #[test]
    fn xgroups_partition_and_parity() {
        for n in 1..=15 {
            let x = xgroup_counts(n);
            let (_, lhr) = hr_lhr_counts(n);
            assert_eq!(x.total(), lhr, "partition sums to LHR_{n}");
            for (name, v) in [("lx", &x.lx), ("hx", &x.hx), ("lrx", &x.lrx), ("lhx", &x.lhx)] {
                assert!((v % 2u32).is_zero(), "{name} must be even at n = {n}");
            }
            assert!(!(&x.lhrx % 2u32).is_zero(), "lhrx must be odd at n = {n}");
        }
    }

    #[test]
    fn xgroup_counts_smallest_indices() {
        let x1 = xgroup_counts(1);
        assert_eq!(
            (x1.lx, x1.hx, x1.lrx, x1.lhx, x1.lhrx),
            (0u32.into(), 0u32.into(), 0u32.into(), 2u32.into(), 1u32.into())
        );
        let x2 = xgroup_counts(2);
        assert_eq!(
            (x2.lx, x2.hx, x2.lrx, x2.lhx, x2.lhrx),
            (4u32.into(), 0u32.into(), 0u32.into(), 2u32.into(), 3u32.into())
        );
    }

    #[test]
    fn k_sequence_golden() {
        let expect = [0u32, 1, 2, 7, 18, 41, 99, 233];
        for (w, &v) in expect.iter().enumerate() {
            assert_eq!(k_sequence(w), BigUint::from(v), "k_{w}");
        }
        // From w = 5 on, 2 R_w < HR_w, so the min settles on R_w.
        for w in 5..=20 {
            let (_, _, r) = lhr_counts(w);
            let (hr, _) = hr_lhr_counts(w);
            assert!(2u32 * &r < hr, "2R < HR at w = {w}");
            assert_eq!(k_sequence(w), r);
        }
    }

    #[test]
    fn lhr_mod_four_alternates() {
        for n in 0..=20 {
            let (_, lhr) = hr_lhr_counts(n);
            let expected = if n % 2 == 0 { 1u32 } else { 3u32 };
            assert_eq!(lhr % 4u32, BigUint::from(expected), "LHR_{n} mod 4");
        }
    }

    #[test]
    fn bound_catalog_spot_values() {
        use CoinKind::*;
        use ScenarioClass::*;
        let v = |b: Result<BigUint, BoundError>| as_usize(&b.unwrap());
        assert_eq!(v(bound(Lh, UnknownAdaptive, 3)), 13);
        assert_eq!(v(bound(Lh, UnknownOblivious, 3)), 13);
        assert_eq!(v(bound(Lh, Known(CoinState::Light), 3)), 27);
        assert_eq!(v(bound(Lr, Known(CoinState::Light), 4)), 21);
        assert_eq!(v(bound(Lr, Known(CoinState::Real), 4)), 11);
        assert_eq!(v(bound(Lr, UnknownAdaptive, 5)), 21);
        assert_eq!(v(bound(Lhr, Known(CoinState::Light), 5)), 99);
        assert_eq!(v(bound(Lhr, Known(CoinState::Heavy), 4)), 29);
        assert_eq!(v(bound(Lhr, Mixed, 4)), 49);
        assert_eq!(v(bound(Lhr, UnknownAdaptive, 4)), 16);
        assert_eq!(v(bound(Lhr, UnknownAdaptive, 5)), 39);
        assert_eq!(v(bound(Lhr, UnknownOblivious, 4)), 14);
        assert!(matches!(
            bound(Lhr, UnknownOblivious, 6),
            Err(BoundError::UnsupportedBound { .. })
        ));
        assert!(matches!(
            bound(Lr, Known(CoinState::Heavy), 3),
            Err(BoundError::InvalidClassForKind { .. })
        ));
    }

    #[test]
    fn lr_unknown_oblivious_matches_listed_values() {
        // 1, 1, 3, 5, 11, 20, 41, 82, 163: the even-w formula at k = 4
        // evaluates to (341 - 16 + 1)/2 = 163, agreeing with the listing.
        let expect = [1u32, 1, 3, 5, 11, 20, 41, 82, 163];
        for (w, &v) in expect.iter().enumerate() {
            assert_eq!(
                bound(CoinKind::Lr, ScenarioClass::UnknownOblivious, w).unwrap(),
                BigUint::from(v),
                "w = {w}"
            );
        }
    }

    #[test]
    fn lhr_unknown_adaptive_sequence() {
        let expect = [1u32, 1, 3, 6, 16, 39, 91, 216, 499, 1144, 2651];
        for (w, &v) in expect.iter().enumerate() {
            assert_eq!(
                bound(CoinKind::Lhr, ScenarioClass::UnknownAdaptive, w).unwrap(),
                BigUint::from(v),
                "w = {w}"
            );
        }
    }

    #[test]
    fn comparison_sweep_passes_and_finds_crossover() {
        let report = check_comparison_lemmas(12).unwrap();
        assert!(report.all_pass(), "{:?}", report.checks);
        assert_eq!(report.crossover_index, 11);
        assert!(check_comparison_lemmas(20).unwrap().all_pass());
        assert!(check_comparison_lemmas(5).is_err());
    }
}
