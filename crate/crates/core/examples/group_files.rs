//! The group definition file format: write a corpus group out, load it back,
//! and show what a parse error looks like.
//!
//! ```bash
//! cargo run --example group_files
//! ```

use pgroup::config::Caps;
use pgroup::corpus;
use pgroup::groupfile;

fn main() -> pgroup::Result<()> {
    let caps = Caps::default();
    let spec = corpus::manifest_spec("heis27").expect("corpus name");
    let g = corpus::build(&spec, &caps)?;

    let text = groupfile::group_to_text(&g);
    println!("--- serialized {} ---\n{text}", g.name());

    let reloaded = groupfile::parse_group_text(&text, &caps)?;
    println!(
        "reloaded: order {}, identical element table: {}",
        reloaded.order(),
        reloaded.elements() == g.elements()
    );
    // The writer is canonical, so a second write is byte-identical.
    assert_eq!(groupfile::group_to_text(&reloaded), text);

    let broken = "name broken\np 3\ndegree 3\ngen (0 1\n";
    match groupfile::parse_group_text(broken, &caps) {
        Err(e) => println!("\nunbalanced cycle rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
