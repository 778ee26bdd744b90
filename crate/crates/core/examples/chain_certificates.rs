//! Chain certificates: the explicit witness that a subgroup sits inside the
//! Oliver subgroup, and how verification catches tampered chains.
//!
//! ```bash
//! cargo run --example chain_certificates
//! ```

use pgroup::charsub::{self, ChainCertificate};
use pgroup::config::Caps;
use pgroup::corpus;
use pgroup::subgroup::generated_subgroup;

fn main() -> pgroup::Result<()> {
    let caps = Caps::default();
    let spec = corpus::manifest_spec("wr3").expect("corpus name");
    let g = corpus::build(&spec, &caps)?;

    let (x, cert) = charsub::oliver_x(&g)?;
    let orders: Vec<usize> = cert.chain().iter().map(|q| q.order()).collect();
    println!("X({}) has order {}, certificate chain {orders:?}", g.name(), x.order());
    println!("verify: {:?}\n", charsub::verify_chain(&g, &cert).ok);

    // A chain ending at the whole group violates the commutator condition.
    let bad = ChainCertificate::new(vec![g.trivial_subgroup(), g.full_subgroup()]);
    let check = charsub::verify_chain(&g, &bad);
    println!("chain (1, S): ok = {}, failure = {:?}", check.ok, check.failure);

    // A chain through a non-normal subgroup is caught by the normality clause.
    let m_spec = corpus::manifest_spec("m27").expect("corpus name");
    let m = corpus::build(&m_spec, &caps)?;
    let b = *m
        .gens()
        .iter()
        .find(|&&e| m.element_order(e) == 3)
        .expect("m27 has an order-3 generator");
    let bad = ChainCertificate::new(vec![m.trivial_subgroup(), generated_subgroup(&m, &[b])]);
    let check = charsub::verify_chain(&m, &bad);
    println!("chain (1, <b>) in m27: ok = {}, failure = {:?}", check.ok, check.failure);

    // A non-increasing chain is caught by the containment clause.
    let ea_spec = corpus::manifest_spec("ea3_2").expect("corpus name");
    let ea = corpus::build(&ea_spec, &caps)?;
    let first = generated_subgroup(&ea, &[ea.gens()[0]]);
    let second = generated_subgroup(&ea, &[ea.gens()[1]]);
    let bad = ChainCertificate::new(vec![ea.trivial_subgroup(), first, second]);
    let check = charsub::verify_chain(&ea, &bad);
    println!("incomparable chain in ea3_2: ok = {}, failure = {:?}", check.ok, check.failure);
    Ok(())
}
