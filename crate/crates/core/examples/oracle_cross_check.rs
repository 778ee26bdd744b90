//! Compare the fast algorithms against the brute-force oracles on every
//! corpus group small enough for the oracles to run.
//!
//! ```bash
//! cargo run --release --example oracle_cross_check
//! ```

use pgroup::charsub;
use pgroup::config::Caps;
use pgroup::corpus;
use pgroup::oracle;

fn main() -> pgroup::Result<()> {
    let caps = Caps::default();
    for spec in corpus::default_corpus(caps.normal_lattice_cap) {
        let g = corpus::build(&spec, &caps)?;
        let (x, _) = charsub::oliver_x(&g)?;
        let adm = oracle::oracle_x(&g, caps.normal_lattice_cap)?;
        let x_ok = adm.maximal.members() == x.members();

        let j_report = if g.order() <= caps.subgroup_lattice_cap {
            let j = charsub::thompson_j(&g, caps.search_budget)?;
            let oj = oracle::oracle_j(&g, caps.subgroup_lattice_cap)?;
            if oj.members() == j.members() {
                format!("J order {:>3} agree", j.order())
            } else {
                format!("J MISMATCH: fast {} oracle {}", j.order(), oj.order())
            }
        } else {
            "J oracle capped".to_string()
        };

        println!(
            "{:<10} order {:>4}: X order {:>4} {} ({} admissible), {}",
            g.name(),
            g.order(),
            x.order(),
            if x_ok { "agree" } else { "MISMATCH" },
            adm.members.len(),
            j_report
        );
        assert!(x_ok, "oracle disagreement is an implementation bug");
    }
    Ok(())
}
