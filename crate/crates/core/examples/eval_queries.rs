//! Parse and evaluate expressions against a group: the scripting surface
//! behind `pgroup eval`.
//!
//! ```bash
//! cargo run --example eval_queries
//! ```

use pgroup::config::Caps;
use pgroup::corpus;
use pgroup::dsl::{self, EvalCtx};

fn main() -> pgroup::Result<()> {
    let caps = Caps::default();
    let spec = corpus::manifest_spec("heis27").expect("corpus name");
    let g = corpus::build(&spec, &caps)?;
    let ctx = EvalCtx::new(&g, caps);

    let queries = [
        "Ord(Z(S))",
        "Ord([S,S])",
        "Ord([S,S;2])",
        "Omega1(C(S,Z(S)))",
        "derived(S)",
        "meet(J(S),X(S))",
        "Idx(join(J(S),X(S)),X(S))",
        "ncl(Z(S))",
    ];
    println!("group {}, order {}:", g.name(), g.order());
    for q in queries {
        let expr = dsl::parse_expr(q)?;
        let value = dsl::eval_expr(&expr, &ctx)?;
        println!("  {}", dsl::render_result(&expr, &value, &ctx));
    }

    // Errors are typed: offsets for parse errors, ambient restriction for C.
    for bad in ["Z(S", "C(Z(S),S)", "Ord(Ord(S))"] {
        let outcome = dsl::parse_expr(bad).and_then(|e| dsl::eval_expr(&e, &ctx).map(|_| e));
        if let Err(e) = outcome {
            println!("  {bad:<12} -> error: {e}");
        }
    }
    Ok(())
}
