use fockforge_core::fock::FockSpaceParams;
use fockforge_core::grading::GradingEngine;
use fockforge_core::partitions::Charge;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let pr = FockSpaceParams::new(2, 3, Charge::zero(3), 8);
    let mut eng = GradingEngine::new(pr);
    for n in 0..=8u32 {
        let t = Instant::now();
        let table = eng.graded_dims(n);
        println!("n={n}: total={} in {:?}", table.total(), t.elapsed());
    }
    println!("tables to degree 8: {:?}", t0.elapsed());
    let t1 = Instant::now();
    for n in 0..=8u32 { assert!(eng.casimir_diagonalizable(n)); }
    println!("diagonalizability check: {:?}", t1.elapsed());
}
