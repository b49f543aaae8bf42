mod support;

use support::BruteSolver;
use weighwright::adaptive::ScenarioCounts;
use weighwright::CoinKind;

#[test]
fn odd_odd_boundary_states_with_freed_ballast_are_solvable() {
    // Two heavy-class triples on the pans leave either 1:1 plus six freed
    // ballast coins (balance) or three now-light suspects (imbalance), and
    // both finish in one weighing. The 1:1 trap needs an empty table.
    let mut brute = BruteSolver::new(CoinKind::Lh);
    for (l, h) in [(1, 7), (7, 1), (3, 5), (5, 3)] {
        let masks = BruteSolver::masks_for(CoinKind::Lh, &ScenarioCounts::new(l, h, 0, 0, 0));
        assert!(brute.solvable(&masks, 2), "{l}:{h} at w=2");
    }
    // Without ballast the 1:1 state never resolves.
    let masks = BruteSolver::masks_for(CoinKind::Lh, &ScenarioCounts::new(1, 1, 0, 0, 0));
    for w in 0..=3 {
        assert!(!brute.solvable(&masks, w), "1:1 at w={w}");
    }
    let masks = BruteSolver::masks_for(CoinKind::Lh, &ScenarioCounts::new(1, 1, 0, 0, 1));
    assert!(brute.solvable(&masks, 1), "1:1 with ballast");
}
