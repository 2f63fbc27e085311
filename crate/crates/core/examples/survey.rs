//! Runs every suite once and prints a one-line summary per suite.
//!
//! ```text
//! cargo run --release -p pseudoschur --example survey -- 200
//! ```

use pseudoschur::harness::{run_suite, TheoremId};
use pseudoschur::instgen::GenConfig;

fn main() {
    let trials: u64 = std::env::args().nth(1).map_or(50, |s| s.parse().unwrap());
    let cfg = GenConfig::with_seed(7);
    for id in TheoremId::ALL {
        let r = run_suite(id, &cfg, trials).unwrap();
        println!(
            "{:<18} trials={:<4} pass={:<4} vac={:<4} fail={:<3} disc={:<6} unsampled={} {:?} {:?}",
            id.to_string(), r.trials, r.passes, r.vacuous, r.failures, r.discards, r.unsampled, r.elapsed,
            r.exploration.as_ref().map(|e| &e.counts)
        );
        if let Some(c) = &r.counterexample { println!("   CE {c:?}"); }
        for n in &r.notes { println!("   note: {n}"); }
    }
}
