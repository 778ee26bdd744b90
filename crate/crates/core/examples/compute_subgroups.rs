//! Compute J(S), X(S) and X1(S) for a corpus group and print the chain
//! certificate that witnesses X.
//!
//! ```bash
//! cargo run --example compute_subgroups
//! ```

use pgroup::charsub;
use pgroup::config::Caps;
use pgroup::corpus;

fn main() -> pgroup::Result<()> {
    let caps = Caps::default();
    for name in ["c9", "heis27", "m27", "wr3"] {
        let spec = corpus::manifest_spec(name).expect("corpus name");
        let g = corpus::build(&spec, &caps)?;
        println!("== {} (order {}, p = {}) ==", g.name(), g.order(), g.p());

        let j = charsub::thompson_j(&g, caps.search_budget)?;
        println!("  J(S):  order {:>3}, index {}", j.order(), g.order() / j.order());

        let (x, cert) = charsub::oliver_x(&g)?;
        println!("  X(S):  order {:>3}, index {}", x.order(), g.order() / x.order());
        let orders: Vec<usize> = cert.chain().iter().map(|q| q.order()).collect();
        println!("         certificate chain orders: {orders:?}");
        for (i, q) in cert.chain().iter().enumerate().skip(1) {
            let words: Vec<String> = q.gens().iter().map(|&e| g.word_string(e)).collect();
            println!("         step {i}: <{}>", words.join(", "));
        }

        let x1 = charsub::x1_with(&g, &x)?;
        println!("  X1(S): order {:>3}", x1.order());
        println!(
            "  J <= X: {}   J <= X1: {}",
            j.is_subgroup_of(&x),
            j.is_subgroup_of(&x1)
        );
        println!();
    }
    Ok(())
}
