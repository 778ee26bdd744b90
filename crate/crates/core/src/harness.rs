//! Runs every structural check as a named, reportable unit against a group
//! or a whole corpus, and renders machine-readable reports.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::charsub::{self, ChainCertificate, ElemAbelianFamily};
use crate::config::Caps;
use crate::corpus::{self, GroupSpec};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::oracle;
use crate::subgroup::{
    centralizer, center_of, is_normal, iterated_commutator, join, list_normal_subgroups,
    list_subgroups, map_back, omega1, preimage, quotient, subgroup_as_group, Subgroup,
};

/// Canonical check ids, in report order.
pub const CHECK_IDS: &[&str] = &[
    "conjecture",
    "max-elab-in-x1",
    "j-x1-biconditional",
    "jx-index-not-p",
    "cx-equals-zx",
    "normal-q-below-x",
    "x-monotone",
    "x-stable",
    "normal-interval",
    "abelian-quotient",
    "oracle-x",
    "oracle-j",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One report record. Field names and order are part of the output contract.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub group: String,
    pub check: String,
    pub status: Status,
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Summary {
    pub summary: bool,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub total: usize,
}

impl Summary {
    fn absorb(&mut self, status: Status) {
        match status {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Skipped => self.skipped += 1,
        }
        self.total += 1;
    }
}

enum Outcome {
    Pass(Value),
    Fail(Value),
    Skip(String),
}

/// Everything the checks share for one group, computed once. Immutable.
pub struct GroupCtx<'g> {
    pub group: &'g Group,
    pub caps: Caps,
    pub x: Subgroup,
    pub cert: ChainCertificate,
    pub x1: Subgroup,
    pub family: Result<ElemAbelianFamily>,
    pub j: Result<Subgroup>,
}

impl<'g> GroupCtx<'g> {
    pub fn new(group: &'g Group, caps: Caps) -> Result<GroupCtx<'g>> {
        let (x, cert) = charsub::oliver_x(group)?;
        let x1 = charsub::x1_with(group, &x)?;
        let family = charsub::max_rank_elem_abelians(group, caps.search_budget);
        let j = charsub::thompson_j(group, caps.search_budget);
        Ok(GroupCtx {
            group,
            caps,
            x,
            cert,
            x1,
            family,
            j,
        })
    }

    fn j_or_skip(&self) -> std::result::Result<&Subgroup, Outcome> {
        self.j
            .as_ref()
            .map_err(|e| Outcome::Skip(format!("thompson subgroup unavailable: {e}")))
    }
}

/// Compact JSON description of a subgroup: order plus generator words.
pub fn describe_subgroup(g: &Group, h: &Subgroup) -> Value {
    let gens: Vec<String> = h.gens().iter().map(|&x| g.word_string(x)).collect();
    json!({ "order": h.order(), "gens": gens })
}

/// Chain certificate as a list of subgroup descriptions.
pub fn describe_chain(g: &Group, cert: &ChainCertificate) -> Value {
    Value::Array(
        cert.chain()
            .iter()
            .map(|q| describe_subgroup(g, q))
            .collect(),
    )
}

/// Runs one check by id against a prepared context.
pub fn run_check(ctx: &GroupCtx, check: &str) -> CheckReport {
    let started = Instant::now();
    let outcome = match check {
        "conjecture" => check_conjecture(ctx),
        "max-elab-in-x1" => check_max_elab_in_x1(ctx),
        "j-x1-biconditional" => check_j_x1_biconditional(ctx),
        "jx-index-not-p" => check_jx_index_not_p(ctx),
        "cx-equals-zx" => check_cx_equals_zx(ctx),
        "normal-q-below-x" => check_normal_q_below_x(ctx),
        "x-monotone" => check_x_monotone(ctx),
        "x-stable" => check_x_stable(ctx),
        "normal-interval" => check_normal_interval(ctx),
        "abelian-quotient" => check_abelian_quotient(ctx),
        "oracle-x" => check_oracle_x(ctx),
        "oracle-j" => check_oracle_j(ctx),
        other => Outcome::Skip(format!("unknown check id '{other}'")),
    };
    let ms = started.elapsed().as_millis() as u64;
    let (status, witness) = match outcome {
        Outcome::Pass(w) => (Status::Pass, w),
        Outcome::Fail(w) => (Status::Fail, w),
        Outcome::Skip(reason) => (Status::Skipped, json!({ "reason": reason })),
    };
    CheckReport {
        group: ctx.group.name().to_string(),
        check: check.to_string(),
        status,
        witness,
        ms: Some(ms),
    }
}

/// J(S) ≤ 𝔛(S). A failure would contradict an open conjecture, so it is
/// double-checked against both oracles before being reported.
fn check_conjecture(ctx: &GroupCtx) -> Outcome {
    let g = ctx.group;
    let j = match ctx.j_or_skip() {
        Ok(j) => j,
        Err(skip) => return skip,
    };
    if j.is_subgroup_of(&ctx.x) {
        return Outcome::Pass(json!({ "j_order": j.order(), "x_order": ctx.x.order() }));
    }
    let mut witness = json!({
        "j": describe_subgroup(g, j),
        "x": describe_subgroup(g, &ctx.x),
    });
    let obj = witness.as_object_mut().unwrap();
    if g.order() <= ctx.caps.normal_lattice_cap {
        match oracle::oracle_x(g, ctx.caps.normal_lattice_cap) {
            Ok(adm) => {
                obj.insert(
                    "oracle_x_agrees".into(),
                    json!(adm.maximal.members() == ctx.x.members()),
                );
            }
            Err(e) => {
                obj.insert("oracle_x_error".into(), json!(e.to_string()));
            }
        }
    }
    if g.order() <= ctx.caps.subgroup_lattice_cap {
        match oracle::oracle_j(g, ctx.caps.subgroup_lattice_cap) {
            Ok(oj) => {
                obj.insert("oracle_j_agrees".into(), json!(oj.members() == j.members()));
            }
            Err(e) => {
                obj.insert("oracle_j_error".into(), json!(e.to_string()));
            }
        }
    }
    Outcome::Fail(witness)
}

/// Every maximal-rank elementary abelian subgroup inside 𝔛₁(S) lies in 𝔛(S).
fn check_max_elab_in_x1(ctx: &GroupCtx) -> Outcome {
    let g = ctx.group;
    let family = match &ctx.family {
        Ok(f) => f,
        Err(e) => return Outcome::Skip(format!("family unavailable: {e}")),
    };
    let inside: Vec<&Subgroup> = family
        .members
        .iter()
        .filter(|e| e.is_subgroup_of(&ctx.x1))
        .collect();
    if inside.is_empty() {
        return Outcome::Skip("no maximal-rank elementary abelian lies inside X1".into());
    }
    for e in &inside {
        if !e.is_subgroup_of(&ctx.x) {
            return Outcome::Fail(json!({
                "e": describe_subgroup(g, e),
                "x": describe_subgroup(g, &ctx.x),
            }));
        }
    }
    Outcome::Pass(json!({ "instances": inside.len(), "rank": family.rank }))
}

/// J(S) ≤ 𝔛(S) if and only if J(S) ≤ 𝔛₁(S); both sides computed directly.
fn check_j_x1_biconditional(ctx: &GroupCtx) -> Outcome {
    let j = match ctx.j_or_skip() {
        Ok(j) => j,
        Err(skip) => return skip,
    };
    let in_x = j.is_subgroup_of(&ctx.x);
    let in_x1 = j.is_subgroup_of(&ctx.x1);
    let witness = json!({ "j_in_x": in_x, "j_in_x1": in_x1 });
    if in_x == in_x1 {
        Outcome::Pass(witness)
    } else {
        Outcome::Fail(witness)
    }
}

/// The index |J𝔛 : 𝔛| is never exactly p.
fn check_jx_index_not_p(ctx: &GroupCtx) -> Outcome {
    let g = ctx.group;
    let j = match ctx.j_or_skip() {
        Ok(j) => j,
        Err(skip) => return skip,
    };
    let jx = join(g, j, &ctx.x);
    let index = jx.order() / ctx.x.order();
    let witness = json!({ "index": index });
    if index == g.p() as usize {
        Outcome::Fail(witness)
    } else {
        Outcome::Pass(witness)
    }
}

/// C_S(𝔛(S)) = Z(𝔛(S)), as sets.
fn check_cx_equals_zx(ctx: &GroupCtx) -> Outcome {
    let g = ctx.group;
    let cs = centralizer(g, &ctx.x);
    let zx = center_of(g, &ctx.x);
    if cs.members() == zx.members() {
        Outcome::Pass(json!({ "order": zx.order() }))
    } else {
        Outcome::Fail(json!({
            "centralizer": describe_subgroup(g, &cs),
            "center_of_x": describe_subgroup(g, &zx),
        }))
    }
}

/// Any normal Q with [Ω₁(Z(𝔛(S))), Q; p−1] = 1 lies in 𝔛(S).
fn check_normal_q_below_x(ctx: &GroupCtx) -> Outcome {
    let g = ctx.group;
    if g.order() > ctx.caps.normal_lattice_cap {
        return Outcome::Skip(format!(
            "order {} exceeds the normal lattice cap {}",
            g.order(),
            ctx.caps.normal_lattice_cap
        ));
    }
    let normals = match list_normal_subgroups(g, ctx.caps.normal_lattice_cap) {
        Ok(n) => n,
        Err(e) => return Outcome::Skip(e.to_string()),
    };
    let w = omega1(g, &center_of(g, &ctx.x));
    let k = g.p() - 1;
    let mut instances = 0usize;
    for q in &normals {
        if iterated_commutator(g, &w, q, k).is_trivial() {
            instances += 1;
            if !q.is_subgroup_of(&ctx.x) {
                return Outcome::Fail(json!({
                    "q": describe_subgroup(g, q),
                    "x": describe_subgroup(g, &ctx.x),
                }));
            }
        }
    }
    Outcome::Pass(json!({ "normals": normals.len(), "hypothesis_instances": instances }))
}

/// Enumerates the subgroups L with 𝔛(S) ≤ L ≤ S as preimages of subgroups of
/// S/𝔛(S), re-rooted as standalone groups.
fn intermediates_above_x(
    ctx: &GroupCtx,
    within_jx: bool,
) -> std::result::Result<Vec<Subgroup>, Outcome> {
    let g = ctx.group;
    let (q, qm) = quotient(g, &ctx.x).map_err(|e| Outcome::Skip(e.to_string()))?;
    if q.order() > ctx.caps.subgroup_lattice_cap {
        return Err(Outcome::Skip(format!(
            "quotient order {} exceeds the subgroup enumeration cap {}",
            q.order(),
            ctx.caps.subgroup_lattice_cap
        )));
    }
    let bound = if within_jx {
        let j = match ctx.j_or_skip() {
            Ok(j) => j,
            Err(skip) => return Err(skip),
        };
        let jx = join(g, j, &ctx.x);
        let mut image = crate::elemset::ElemSet::new(q.order());
        for e in jx.members().iter() {
            image.insert(qm.apply(e));
        }
        Some(image)
    } else {
        None
    };
    let subs = list_subgroups(&q, ctx.caps.subgroup_lattice_cap)
        .map_err(|e| Outcome::Skip(e.to_string()))?;
    Ok(subs
        .into_iter()
        .filter(|k| match &bound {
            Some(image) => k.members().is_subset_of(image),
            None => true,
        })
        .map(|k| preimage(g, &qm, &k))
        .collect())
}

/// 𝔛(S) ≤ 𝔛(L) for every L with 𝔛(S) ≤ L ≤ S.
fn check_x_monotone(ctx: &GroupCtx) -> Outcome {
    let g = ctx.group;
    let intermediates = match intermediates_above_x(ctx, false) {
        Ok(v) => v,
        Err(skip) => return skip,
    };
    for l in &intermediates {
        let standalone = subgroup_as_group(g, l, format!("{}_sub{}", g.name(), l.order()));
        let (xl, _) = match charsub::oliver_x(&standalone) {
            Ok(v) => v,
            Err(e) => return Outcome::Skip(e.to_string()),
        };
        let xl_in_g = map_back(g, &standalone, &xl);
        if !ctx.x.is_subgroup_of(&xl_in_g) {
            return Outcome::Fail(json!({
                "l": describe_subgroup(g, l),
                "x_of_l": describe_subgroup(g, &xl_in_g),
                "x": describe_subgroup(g, &ctx.x),
            }));
        }
    }
    Outcome::Pass(json!({ "intermediates": intermediates.len() }))
}

/// J(S) ≤ 𝔛(S) holds if and only if 𝔛(L) = 𝔛(S) for every subgroup L with
/// 𝔛(S) ≤ L ≤ J(S)𝔛(S). Both sides are computed independently.
fn check_x_stable(ctx: &GroupCtx) -> Outcome {
    let g = ctx.group;
    let j = match ctx.j_or_skip() {
        Ok(j) => j,
        Err(skip) => return skip,
    };
    let lhs = j.is_subgroup_of(&ctx.x);
    let intermediates = match intermediates_above_x(ctx, true) {
        Ok(v) => v,
        Err(skip) => return skip,
    };
    let mut rhs = true;
    let mut failing: Option<(Subgroup, Subgroup)> = None;
    for l in &intermediates {
        let standalone = subgroup_as_group(g, l, format!("{}_sub{}", g.name(), l.order()));
        let (xl, _) = match charsub::oliver_x(&standalone) {
            Ok(v) => v,
            Err(e) => return Outcome::Skip(e.to_string()),
        };
        let xl_in_g = map_back(g, &standalone, &xl);
        if xl_in_g.members() != ctx.x.members() {
            rhs = false;
            failing = Some((l.clone(), xl_in_g));
            break;
        }
    }
    let mut witness = json!({
        "j_in_x": lhs,
        "x_stable_below_jx": rhs,
        "intermediates": intermediates.len(),
    });
    if let Some((l, xl)) = failing {
        let obj = witness.as_object_mut().unwrap();
        obj.insert("l".into(), describe_subgroup(g, &l));
        obj.insert("x_of_l".into(), describe_subgroup(g, &xl));
    }
    if lhs == rhs {
        Outcome::Pass(witness)
    } else {
        Outcome::Fail(witness)
    }
}

/// If every L with 𝔛(S) ≤ L ≤ J(S)𝔛(S) is normal in S, then J(S) ≤ 𝔛(S).
fn check_normal_interval(ctx: &GroupCtx) -> Outcome {
    let g = ctx.group;
    let j = match ctx.j_or_skip() {
        Ok(j) => j,
        Err(skip) => return skip,
    };
    let intermediates = match intermediates_above_x(ctx, true) {
        Ok(v) => v,
        Err(skip) => return skip,
    };
    for l in &intermediates {
        if !is_normal(g, l) {
            return Outcome::Skip(format!(
                "an intermediate subgroup of order {} is not normal in S",
                l.order()
            ));
        }
    }
    if j.is_subgroup_of(&ctx.x) {
        Outcome::Pass(json!({ "intermediates": intermediates.len() }))
    } else {
        Outcome::Fail(json!({
            "j": describe_subgroup(g, j),
            "x": describe_subgroup(g, &ctx.x),
        }))
    }
}

/// If S/𝔛(S) is abelian then J(S) ≤ 𝔛(S).
fn check_abelian_quotient(ctx: &GroupCtx) -> Outcome {
    let g = ctx.group;
    let j = match ctx.j_or_skip() {
        Ok(j) => j,
        Err(skip) => return skip,
    };
    let (q, _) = match quotient(g, &ctx.x) {
        Ok(v) => v,
        Err(e) => return Outcome::Skip(e.to_string()),
    };
    let abelian = {
        let gens = q.gens();
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| q.commutes(a, b)))
    };
    if !abelian {
        return Outcome::Skip("quotient by X is nonabelian".into());
    }
    if j.is_subgroup_of(&ctx.x) {
        Outcome::Pass(json!({ "quotient_order": q.order() }))
    } else {
        Outcome::Fail(json!({
            "j": describe_subgroup(g, j),
            "x": describe_subgroup(g, &ctx.x),
        }))
    }
}

/// The greedy 𝔛 equals the brute-force admissible-set maximum.
fn check_oracle_x(ctx: &GroupCtx) -> Outcome {
    let g = ctx.group;
    if g.order() > ctx.caps.normal_lattice_cap {
        return Outcome::Skip(format!(
            "order {} exceeds the oracle cap {}",
            g.order(),
            ctx.caps.normal_lattice_cap
        ));
    }
    match oracle::oracle_x(g, ctx.caps.normal_lattice_cap) {
        Ok(adm) => {
            if adm.maximal.members() == ctx.x.members() {
                Outcome::Pass(json!({
                    "order": ctx.x.order(),
                    "admissible": adm.members.len(),
                }))
            } else {
                Outcome::Fail(json!({
                    "fast": describe_subgroup(g, &ctx.x),
                    "oracle": describe_subgroup(g, &adm.maximal),
                }))
            }
        }
        Err(e @ Error::NonUniqueMaximal { .. }) => Outcome::Fail(json!({
            "anomaly": e.to_string(),
        })),
        Err(e) => Outcome::Skip(e.to_string()),
    }
}

/// The clique-search J equals the exhaustive-scan J.
fn check_oracle_j(ctx: &GroupCtx) -> Outcome {
    let g = ctx.group;
    if g.order() > ctx.caps.subgroup_lattice_cap {
        return Outcome::Skip(format!(
            "order {} exceeds the subgroup enumeration cap {}",
            g.order(),
            ctx.caps.subgroup_lattice_cap
        ));
    }
    let j = match ctx.j_or_skip() {
        Ok(j) => j,
        Err(skip) => return skip,
    };
    match oracle::oracle_j(g, ctx.caps.subgroup_lattice_cap) {
        Ok(oj) => {
            if oj.members() == j.members() {
                Outcome::Pass(json!({ "order": j.order() }))
            } else {
                Outcome::Fail(json!({
                    "fast": describe_subgroup(g, j),
                    "oracle": describe_subgroup(g, &oj),
                }))
            }
        }
        Err(e) => Outcome::Skip(e.to_string()),
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub checks: Vec<String>,
    pub caps: Caps,
    pub timing: bool,
}

impl RunOptions {
    pub fn all(caps: Caps) -> RunOptions {
        RunOptions {
            checks: CHECK_IDS.iter().map(|s| s.to_string()).collect(),
            caps,
            timing: true,
        }
    }
}

/// Builds each spec and runs the requested checks, in corpus order then
/// canonical check order. The oracle cross-checks always run on top of the
/// requested list, guarding the fast algorithms. Build failures become
/// per-group skipped records; internal certificate failures become fail
/// records.
pub fn run_corpus(specs: &[GroupSpec], opts: &RunOptions) -> (Vec<CheckReport>, Summary) {
    let mut reports = Vec::new();
    let mut summary = Summary {
        summary: true,
        ..Summary::default()
    };
    let requested: Vec<&str> = CHECK_IDS
        .iter()
        .copied()
        .filter(|id| {
            opts.checks.iter().any(|c| c == id) || *id == "oracle-x" || *id == "oracle-j"
        })
        .collect();

    for spec in specs {
        let group = match corpus::build(spec, &opts.caps) {
            Ok(g) => g,
            Err(e) => {
                let report = CheckReport {
                    group: spec.name().to_string(),
                    check: "build".into(),
                    status: Status::Skipped,
                    witness: json!({ "reason": e.to_string() }),
                    ms: None,
                };
                summary.absorb(report.status);
                reports.push(report);
                continue;
            }
        };
        let ctx = match GroupCtx::new(&group, opts.caps) {
            Ok(ctx) => ctx,
            Err(e) => {
                let report = CheckReport {
                    group: spec.name().to_string(),
                    check: "compute".into(),
                    status: Status::Fail,
                    witness: json!({ "reason": e.to_string() }),
                    ms: None,
                };
                summary.absorb(report.status);
                reports.push(report);
                continue;
            }
        };
        for check in &requested {
            let mut report = run_check(&ctx, check);
            if !opts.timing {
                report.ms = None;
            }
            summary.absorb(report.status);
            reports.push(report);
        }
    }
    (reports, summary)
}

/// One JSON object per line, summary record last.
pub fn to_json_lines(reports: &[CheckReport], summary: &Summary) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("reports serialize"));
        out.push('\n');
    }
    out.push_str(&serde_json::to_string(summary).expect("summary serializes"));
    out.push('\n');
    out
}

/// CSV with a fixed header; the witness column carries the JSON witness.
pub fn to_csv(reports: &[CheckReport]) -> String {
    fn quote(s: &str) -> String {
        format!("\"{}\"", s.replace('"', "\"\""))
    }
    let mut out = String::from("group,check,status,witness,ms\n");
    for r in reports {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        };
        let ms = r.ms.map(|m| m.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.group,
            r.check,
            status,
            quote(&r.witness.to_string()),
            ms
        ));
    }
    out
}

/// Aligned human-readable table with a trailing summary line.
pub fn to_table(reports: &[CheckReport], summary: &Summary) -> String {
    let mut rows: Vec<[String; 4]> = vec![[
        "group".into(),
        "check".into(),
        "status".into(),
        "note".into(),
    ]];
    for r in reports {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        };
        let note = match r.status {
            Status::Pass => r
                .ms
                .map(|m| format!("{m} ms"))
                .unwrap_or_default(),
            _ => r.witness.to_string(),
        };
        rows.push([r.group.clone(), r.check.clone(), status.into(), note]);
    }
    let mut widths = [0usize; 4];
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in &rows {
        let line = format!(
            "{:<w0$}  {:<w1$}  {:<w2$}  {}",
            row[0],
            row[1],
            row[2],
            row[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
        );
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push_str(&format!(
        "summary: {} pass, {} fail, {} skipped ({} total)\n",
        summary.pass, summary.fail, summary.skipped, summary.total
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx_for<'g>(g: &'g Group, caps: Caps) -> GroupCtx<'g> {
        GroupCtx::new(g, caps).unwrap()
    }

    fn build(name: &str) -> Group {
        let caps = Caps::default();
        let spec = corpus::default_corpus(caps.max_order)
            .into_iter()
            .find(|s| s.name() == name)
            .unwrap();
        corpus::build(&spec, &caps).unwrap()
    }

    fn status_of(ctx: &GroupCtx, check: &str) -> (Status, Value) {
        let r = run_check(ctx, check);
        (r.status, r.witness)
    }

    #[test]
    fn conjecture_passes_on_sample_groups() {
        for name in ["heis27", "c9", "wr3"] {
            let g = build(name);
            let ctx = ctx_for(&g, Caps::default());
            let (status, _) = status_of(&ctx, "conjecture");
            assert_eq!(status, Status::Pass, "conjecture on {name}");
        }
    }

    #[test]
    fn lemma_and_theorem_checks_pass_on_heisenberg() {
        let g = build("heis27");
        let ctx = ctx_for(&g, Caps::default());
        for check in CHECK_IDS {
            let (status, witness) = status_of(&ctx, check);
            assert_eq!(status, Status::Pass, "{check} on heis27: {witness}");
        }
    }

    #[test]
    fn wreath_statuses() {
        let g = build("wr3");
        let ctx = ctx_for(&g, Caps::default());
        for check in CHECK_IDS {
            let (status, witness) = status_of(&ctx, check);
            assert_eq!(status, Status::Pass, "{check} on wr3: {witness}");
        }
        // X is the base, the quotient has order 3, so X1 = S and the
        // abelian-quotient hypothesis is non-vacuous.
        assert_eq!(ctx.x.order(), 27);
        assert_eq!(ctx.x1.order(), 81);
    }

    #[test]
    fn index_witness_is_recorded() {
        let g = build("c9");
        let ctx = ctx_for(&g, Caps::default());
        let (status, witness) = status_of(&ctx, "jx-index-not-p");
        assert_eq!(status, Status::Pass);
        assert_eq!(witness["index"], json!(1));
    }

    #[test]
    fn caps_cause_skips_not_failures() {
        let g = build("wr3");
        let mut caps = Caps::default();
        caps.normal_lattice_cap = 27;
        caps.subgroup_lattice_cap = 27;
        let ctx = ctx_for(&g, caps);
        for check in ["normal-q-below-x", "oracle-x", "oracle-j"] {
            let (status, _) = status_of(&ctx, check);
            assert_eq!(status, Status::Skipped, "{check} under tiny caps");
        }
    }

    #[test]
    fn run_corpus_empty_is_empty() {
        let (reports, summary) = run_corpus(&[], &RunOptions::all(Caps::default()));
        assert!(reports.is_empty());
        assert_eq!(summary.total, 0);
        assert_eq!(summary.pass, 0);
    }

    #[test]
    fn over_cap_group_is_reported_and_others_run() {
        let mut caps = Caps::default();
        caps.max_order = 30;
        let specs = corpus::default_corpus(100);
        let (reports, summary) = run_corpus(&specs, &RunOptions::all(caps));
        let build_skips: Vec<_> = reports.iter().filter(|r| r.check == "build").collect();
        assert!(!build_skips.is_empty());
        assert!(summary.pass > 0);
        assert_eq!(summary.fail, 0);
    }

    #[test]
    fn json_lines_have_contract_fields_in_order() {
        let g = build("c9");
        let ctx = ctx_for(&g, Caps::default());
        let report = run_check(&ctx, "conjecture");
        let line = serde_json::to_string(&report).unwrap();
        let group_pos = line.find("\"group\"").unwrap();
        let check_pos = line.find("\"check\"").unwrap();
        let status_pos = line.find("\"status\"").unwrap();
        let witness_pos = line.find("\"witness\"").unwrap();
        let ms_pos = line.find("\"ms\"").unwrap();
        assert!(group_pos < check_pos);
        assert!(check_pos < status_pos);
        assert!(status_pos < witness_pos);
        assert!(witness_pos < ms_pos);
    }

    #[test]
    fn reports_are_deterministic_without_timing() {
        let specs: Vec<_> = corpus::default_corpus(30);
        let mut opts = RunOptions::all(Caps::default());
        opts.timing = false;
        let (r1, s1) = run_corpus(&specs, &opts);
        let (r2, s2) = run_corpus(&specs, &opts);
        assert_eq!(to_json_lines(&r1, &s1), to_json_lines(&r2, &s2));
    }
}
