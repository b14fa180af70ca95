//! Differential fuzzing campaign.
//!
//!     cargo run --release --example fuzz -- [seed] [count]

use smalite::difftest::{run_campaign, GenConfig};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("numeric argument"));
    let seed = args.next().unwrap_or(0);
    let count = args.next().unwrap_or(1000);
    let report = run_campaign(seed, count, &GenConfig::default());
    print!("{}", report.summary());
    for o in report.failures() {
        println!("pair {}:\n{}", o.index, o.failure.as_deref().unwrap_or(""));
    }
    if report.passes() != report.pairs() {
        std::process::exit(1);
    }
}
