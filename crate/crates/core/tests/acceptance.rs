//! Full theorem suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails, misses its case count, or overruns its
//! time budget.

use std::process::ExitCode;

use braidforms::selfcheck::{run_all, Level, DEFAULT_SEED};

/// Case counts each criterion must reach at full level.
const EXPECTED_CASES: [(u32, usize); 11] = [
    (1, 4 + 36 + 576),
    (2, 4 + 36 + 576),
    (3, 200),
    (4, 200),
    (5, 511 + 5_461 + 100),
    (6, 101),
    (7, 63 + 1_365 + 100 + 2),
    (8, 100),
    (9, 1 + 4 + 36 + 576),
    (10, 7 * 2 + 127 * 6),
    (11, (1 + 1 + 1 + 1) + (1 + 2 + 6 + 24) + (1 + 4 + 36 + 576) + 100),
];

fn main() -> ExitCode {
    let seed = std::env::var("BRAIDFORMS_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    println!("acceptance suite, seed {seed}");
    let reports = run_all(Level::Full, seed);
    let mut ok = true;
    for r in &reports {
        let expected = EXPECTED_CASES.iter().find(|(id, _)| *id == r.id).map(|&(_, c)| c);
        let count_ok = expected == Some(r.cases);
        let pass = r.passed && r.within_budget() && count_ok;
        ok &= pass;
        print!("{r} ({})", r.timing());
        if !count_ok {
            print!(" [expected {} cases]", expected.map_or("?".into(), |c| c.to_string()));
        }
        println!();
    }
    ok &= reports.len() == EXPECTED_CASES.len();
    let total: u128 = reports.iter().map(|r| r.elapsed_ms).sum();
    println!("{} of {} criteria passed in {total} ms", reports.iter().filter(|r| r.passed && r.within_budget()).count(), reports.len());
    if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
