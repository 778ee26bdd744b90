//! Construct one group from each corpus family and print structural facts:
//! order, degree, exponent, center, derived subgroup, p-rank.
//!
//! ```bash
//! cargo run --release --example build_families
//! ```

use pgroup::charsub;
use pgroup::config::Caps;
use pgroup::corpus::{self, Family, GroupSpec};
use pgroup::subgroup::{center, iterated_commutator};

fn main() -> pgroup::Result<()> {
    let caps = Caps::default();
    let specs = [
        GroupSpec::new("c27", Family::Cyclic { p: 3, n: 3 }),
        GroupSpec::new("ea5_2", Family::ElemAbelian { p: 5, rank: 2 }),
        GroupSpec::new("heis27", Family::ExtraspecialExpP { p: 3 }),
        GroupSpec::new("m27", Family::ExtraspecialExpP2 { p: 3 }),
        GroupSpec::new("wr3", Family::WreathCpCp { p: 3 }),
        GroupSpec::new("ut4_3", Family::Unitriangular { p: 3, n: 4 }),
        GroupSpec::new(
            "c9xc3",
            Family::DirectProduct {
                left: Box::new(GroupSpec::new("c9", Family::Cyclic { p: 3, n: 2 })),
                right: Box::new(GroupSpec::new("c3", Family::Cyclic { p: 3, n: 1 })),
            },
        ),
    ];
    println!(
        "{:<8} {:>6} {:>6} {:>8} {:>7} {:>8} {:>6}",
        "name", "order", "degree", "exponent", "center", "derived", "rank"
    );
    for spec in specs {
        let g = corpus::build(&spec, &caps)?;
        let exponent = (0..g.order() as u32)
            .map(|e| g.element_order(e))
            .max()
            .unwrap();
        let z = center(&g);
        let full = g.full_subgroup();
        let derived = iterated_commutator(&g, &full, &full, 1);
        let rank = charsub::p_rank(&g, caps.search_budget)?;
        println!(
            "{:<8} {:>6} {:>6} {:>8} {:>7} {:>8} {:>6}",
            g.name(),
            g.order(),
            g.degree(),
            exponent,
            z.order(),
            derived.order(),
            rank
        );
    }
    Ok(())
}
