use std::time::Instant;
use weighwright::adaptive::{ScenarioCounts, Solver};
use weighwright::CoinKind;

fn main() {
    let t0 = Instant::now();
    let mut solver = Solver::new(CoinKind::Lhr);
    let v16 = solver.solvable(&ScenarioCounts::unknown_only(16), 4).unwrap();
    println!("16@4 -> {v16} in {:?}", t0.elapsed());
    let t0 = Instant::now();
    let v17 = solver.solvable(&ScenarioCounts::unknown_only(17), 4).unwrap();
    println!("17@4 -> {v17} in {:?}", t0.elapsed());
    let t0 = Instant::now();
    let mut lh = Solver::new(CoinKind::Lh);
    let v = lh.solvable(&ScenarioCounts::new(13, 13, 0, 0, 0), 3).unwrap();
    println!("lh 13:13@3 -> {v} in {:?}", t0.elapsed());
    let t0 = Instant::now();
    let v = solver.solvable(&ScenarioCounts::new(0, 7, 7, 0, 0), 3).unwrap();
    let v2 = solver.solvable(&ScenarioCounts::new(0, 8, 8, 0, 0), 3).unwrap();
    println!("0:7:7@3 -> {v}, 0:8:8@3 -> {v2} in {:?}", t0.elapsed());
    let t0 = Instant::now();
    let mut noprune = Solver::new(CoinKind::Lhr).without_counting_prunes();
    let v = noprune.solvable(&ScenarioCounts::unknown_only(17), 4).unwrap();
    println!("17@4 pruneless -> {v} in {:?}", t0.elapsed());
}
