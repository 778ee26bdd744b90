//! Command-line entry point. Exit codes: 0 = all checks pass, 1 = at least
//! one check failed, 2 = usage/parse/input error, 3 = resource cap exceeded.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::charsub;
use crate::config::Caps;
use crate::corpus::{self, Family, GroupSpec};
use crate::dsl;
use crate::error::Error;
use crate::group::Group;
use crate::harness::{self, GroupCtx, RunOptions, Status};
use crate::subgroup::{is_elementary_abelian, is_normal, Subgroup};

#[derive(Parser)]
#[command(name = "pgroup", version, disable_help_subcommand = true)]
#[command(about = "Thompson and Oliver subgroups of odd p-groups, with a verification harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Cap on group enumeration (number of elements).
    #[arg(long, global = true)]
    max_order: Option<usize>,

    /// Cap on normal-subgroup enumeration and the admissibility oracle.
    #[arg(long, global = true)]
    oracle_cap: Option<usize>,

    /// Cap on full subgroup enumeration.
    #[arg(long, global = true)]
    subgroup_cap: Option<usize>,

    /// Node budget for the elementary abelian search.
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Corpus manifest operations.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Compute J, X and X1 for one group and print the chain certificate.
    Compute {
        /// Group selector: corpus name first, then file path.
        #[arg(short = 'g', long = "group")]
        group: String,
        /// Comma-separated subset of J,X,X1.
        #[arg(long, default_value = "J,X,X1")]
        show: String,
    },
    /// Evaluate an expression against a group.
    Eval {
        #[arg(short = 'g', long = "group")]
        group: String,
        expr: String,
    },
    /// Run checks over the corpus or a single group.
    Verify {
        /// Corpus selector (currently only "default").
        #[arg(long, default_value = "default", conflicts_with = "group")]
        corpus: String,
        /// Run against a single group instead of the corpus.
        #[arg(short = 'g', long = "group")]
        group: Option<String>,
        /// "all" or a comma-separated list of check ids.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value = "json", value_parser = ["json", "csv", "table"])]
        format: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Omit per-check timing so output is byte-reproducible.
        #[arg(long)]
        no_timing: bool,
    },
    /// Compare the fast J and X against the brute-force oracles.
    OracleCheck {
        #[arg(short = 'g', long = "group")]
        group: String,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Print the default manifest.
    List {
        /// Only list groups of order at most this.
        #[arg(long)]
        limit: Option<usize>,
    },
}

pub fn run<I: IntoIterator<Item = String>>(args: I) -> i32 {
    let argv = std::iter::once("pgroup".to_string()).chain(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders help/version itself; only real usage errors are 2.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };

    let mut caps = Caps::default();
    if let Some(m) = cli.max_order {
        if m > u16::MAX as usize {
            eprintln!("error: --max-order cannot exceed {}", u16::MAX);
            return 2;
        }
        caps.max_order = m;
    }
    if let Some(c) = cli.oracle_cap {
        caps.normal_lattice_cap = c;
    }
    if let Some(c) = cli.subgroup_cap {
        caps.subgroup_lattice_cap = c;
    }
    if let Some(b) = cli.budget {
        caps.search_budget = b;
    }

    match cli.command {
        Command::Corpus { action } => match action {
            CorpusAction::List { limit } => {
                let limit = limit.unwrap_or(caps.max_order);
                for spec in corpus::default_corpus(limit) {
                    println!(
                        "{:<12} order {:<6} {}",
                        spec.name(),
                        spec.predicted_order().unwrap_or(0),
                        spec.describe()
                    );
                }
                0
            }
        },
        Command::Compute { group, show } => cmd_compute(&group, &show, &caps),
        Command::Eval { group, expr } => cmd_eval(&group, &expr, &caps),
        Command::Verify {
            corpus,
            group,
            checks,
            format,
            out,
            no_timing,
        } => cmd_verify(&corpus, group.as_deref(), &checks, &format, out, no_timing, caps),
        Command::OracleCheck { group } => cmd_oracle_check(&group, caps),
    }
}

fn exit_for(e: &Error) -> i32 {
    if e.is_resource_limit() {
        3
    } else {
        2
    }
}

fn load(selector: &str, caps: &Caps) -> Result<Group, i32> {
    corpus::resolve_group(selector, caps).map_err(|e| {
        eprintln!("error: {e}");
        exit_for(&e)
    })
}

fn flags_line(g: &Group, h: &Subgroup) -> String {
    let mut flags = Vec::new();
    if is_normal(g, h) {
        flags.push("normal".to_string());
    }
    if let (true, Some(r)) = is_elementary_abelian(g, h) {
        flags.push(format!("elementary abelian of rank {r}"));
    }
    if flags.is_empty() {
        "-".into()
    } else {
        flags.join(", ")
    }
}

fn print_subgroup(g: &Group, label: &str, h: &Subgroup) {
    println!(
        "{label}: order {}, index {}",
        h.order(),
        g.order() / h.order()
    );
    let words: Vec<String> = h.gens().iter().map(|&x| g.word_string(x)).collect();
    println!("  gens: [{}]", words.join(", "));
    println!("  flags: {}", flags_line(g, h));
}

fn cmd_compute(selector: &str, show: &str, caps: &Caps) -> i32 {
    let g = match load(selector, caps) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let mut wanted = Vec::new();
    for item in show.split(',') {
        match item.trim() {
            "J" => wanted.push("J"),
            "X" => wanted.push("X"),
            "X1" => wanted.push("X1"),
            other => {
                eprintln!("error: unknown --show item '{other}' (expected J, X, X1)");
                return 2;
            }
        }
    }
    println!(
        "group {}: order {}, p {}, degree {}",
        g.name(),
        g.order(),
        g.p(),
        g.degree()
    );
    let need_x = wanted.iter().any(|&w| w == "X" || w == "X1");
    let x_and_cert = if need_x {
        match charsub::oliver_x(&g) {
            Ok(v) => Some(v),
            Err(e) => {
                eprintln!("error: {e}");
                return exit_for(&e);
            }
        }
    } else {
        None
    };
    for item in wanted {
        match item {
            "J" => match charsub::thompson_j(&g, caps.search_budget) {
                Ok(j) => print_subgroup(&g, "J(S)", &j),
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit_for(&e);
                }
            },
            "X" => {
                let (x, cert) = x_and_cert.as_ref().unwrap();
                print_subgroup(&g, "X(S)", x);
                let orders: Vec<usize> = cert.chain().iter().map(|q| q.order()).collect();
                println!("  certificate: chain orders {orders:?}");
                for (i, q) in cert.chain().iter().enumerate().skip(1) {
                    let words: Vec<String> =
                        q.gens().iter().map(|&x| g.word_string(x)).collect();
                    println!(
                        "    step {i}: order {}, gens [{}]",
                        q.order(),
                        words.join(", ")
                    );
                }
            }
            "X1" => {
                let (x, _) = x_and_cert.as_ref().unwrap();
                match charsub::x1_with(&g, x) {
                    Ok(x1) => print_subgroup(&g, "X1(S)", &x1),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return exit_for(&e);
                    }
                }
            }
            _ => unreachable!(),
        }
    }
    0
}

fn cmd_eval(selector: &str, expr_src: &str, caps: &Caps) -> i32 {
    let g = match load(selector, caps) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let expr = match dsl::parse_expr(expr_src) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let ctx = dsl::EvalCtx::new(&g, *caps);
    match dsl::eval_expr(&expr, &ctx) {
        Ok(value) => {
            println!("{}", dsl::render_result(&expr, &value, &ctx));
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}

fn resolve_specs(
    corpus_sel: &str,
    group_sel: Option<&str>,
    caps: &Caps,
) -> Result<Vec<GroupSpec>, i32> {
    if let Some(sel) = group_sel {
        if let Some(spec) = corpus::manifest_spec(sel) {
            return Ok(vec![spec]);
        }
        if std::path::Path::new(sel).is_file() {
            return Ok(vec![GroupSpec::new(
                sel,
                Family::FromFile { path: sel.into() },
            )]);
        }
        let e = Error::UnknownGroup(sel.to_string());
        eprintln!("error: {e}");
        return Err(2);
    }
    if corpus_sel != "default" {
        eprintln!("error: unknown corpus '{corpus_sel}' (only 'default' exists)");
        return Err(2);
    }
    Ok(corpus::default_corpus(caps.max_order))
}

pub(crate) fn exit_code_for(summary: &harness::Summary) -> i32 {
    if summary.fail > 0 {
        1
    } else {
        0
    }
}

fn cmd_verify(
    corpus_sel: &str,
    group_sel: Option<&str>,
    checks: &str,
    format: &str,
    out: Option<PathBuf>,
    no_timing: bool,
    caps: Caps,
) -> i32 {
    let specs = match resolve_specs(corpus_sel, group_sel, &caps) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let check_ids: Vec<String> = if checks == "all" {
        harness::CHECK_IDS.iter().map(|s| s.to_string()).collect()
    } else {
        let mut ids = Vec::new();
        for item in checks.split(',') {
            let item = item.trim();
            if !harness::CHECK_IDS.contains(&item) {
                eprintln!(
                    "error: unknown check '{item}' (known: {})",
                    harness::CHECK_IDS.join(", ")
                );
                return 2;
            }
            if !ids.iter().any(|i| i == item) {
                ids.push(item.to_string());
            }
        }
        ids
    };
    let opts = RunOptions {
        checks: check_ids,
        caps,
        timing: !no_timing,
    };
    let (reports, summary) = harness::run_corpus(&specs, &opts);
    let rendered = match format {
        "json" => harness::to_json_lines(&reports, &summary),
        "csv" => harness::to_csv(&reports),
        "table" => harness::to_table(&reports, &summary),
        _ => unreachable!("clap validates format"),
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
            println!(
                "wrote {} records to {} ({} pass, {} fail, {} skipped)",
                summary.total,
                path.display(),
                summary.pass,
                summary.fail,
                summary.skipped
            );
        }
        None => print!("{rendered}"),
    }
    exit_code_for(&summary)
}

fn cmd_oracle_check(selector: &str, caps: Caps) -> i32 {
    let g = match load(selector, &caps) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let ctx = match GroupCtx::new(&g, caps) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_for(&e);
        }
    };
    let reports: Vec<_> = ["oracle-x", "oracle-j"]
        .iter()
        .map(|check| harness::run_check(&ctx, check))
        .collect();
    let mut summary = harness::Summary {
        summary: true,
        ..Default::default()
    };
    for r in &reports {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Skipped => summary.skipped += 1,
        }
        summary.total += 1;
    }
    print!("{}", harness::to_table(&reports, &summary));
    if summary.fail > 0 {
        1
    } else if summary.pass == 0 {
        // Both comparisons skipped: the group exceeds the oracle caps.
        3
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_summary() {
        let mut s = harness::Summary {
            summary: true,
            ..Default::default()
        };
        assert_eq!(exit_code_for(&s), 0);
        s.pass = 5;
        assert_eq!(exit_code_for(&s), 0);
        s.fail = 1;
        assert_eq!(exit_code_for(&s), 1);
    }

    #[test]
    fn error_exit_mapping() {
        assert_eq!(
            exit_for(&Error::OrderCapExceeded { kind: "x", cap: 10 }),
            3
        );
        assert_eq!(exit_for(&Error::SearchBudgetExceeded(5)), 3);
        assert_eq!(exit_for(&Error::UnknownGroup("zzz".into())), 2);
        assert_eq!(
            exit_for(&Error::GroupFileParse {
                line: 1,
                msg: "x".into()
            }),
            2
        );
    }
}
