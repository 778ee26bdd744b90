//! Run every check over the default corpus and print the table report.
//! This is the library-level equivalent of `pgroup verify --corpus default`.
//!
//! ```bash
//! cargo run --release --example verify_corpus
//! ```

use pgroup::config::Caps;
use pgroup::corpus;
use pgroup::harness::{self, RunOptions};

fn main() {
    let caps = Caps::default();
    let specs = corpus::default_corpus(caps.max_order);
    println!("running {} checks over {} groups...", harness::CHECK_IDS.len(), specs.len());

    let (reports, summary) = harness::run_corpus(&specs, &RunOptions::all(caps));
    print!("{}", harness::to_table(&reports, &summary));

    std::process::exit(if summary.fail > 0 { 1 } else { 0 });
}
