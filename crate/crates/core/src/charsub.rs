//! The characteristic subgroups at the heart of the toolkit: the Thompson
//! subgroup J(S), the Oliver subgroup 𝔛(S) with an explicit chain
//! certificate, and the intermediate subgroup 𝔛₁(S).

use std::collections::HashSet;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::subgroup::{
    centralizer, close, cosets, from_member_set, is_elementary_abelian, iterated_commutator,
    is_normal, omega1, preimage, quotient, MulCtx, Subgroup,
};

/// An increasing chain `1 = Q₀ ≤ Q₁ ≤ … ≤ Q_n` of normal subgroups in which
/// every step satisfies `[Ω₁(C_S(Q_{i−1})), Q_i; p−1] = 1`. The chain
/// witnesses that its endpoint lies inside the Oliver subgroup.
#[derive(Clone)]
pub struct ChainCertificate {
    chain: Vec<Subgroup>,
}

impl ChainCertificate {
    pub fn new(chain: Vec<Subgroup>) -> ChainCertificate {
        ChainCertificate { chain }
    }

    pub fn chain(&self) -> &[Subgroup] {
        &self.chain
    }

    pub fn endpoint(&self) -> &Subgroup {
        self.chain.last().expect("chains are never empty")
    }
}

/// Which clause of the chain invariant failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainClause {
    StartNotTrivial,
    Containment,
    Normality,
    Condition,
}

impl std::fmt::Display for ChainClause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ChainClause::StartNotTrivial => "chain must start at the trivial subgroup",
            ChainClause::Containment => "containment",
            ChainClause::Normality => "normality",
            ChainClause::Condition => "commutator condition",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainCheck {
    pub ok: bool,
    pub failure: Option<(usize, ChainClause)>,
}

/// Checks every invariant of a chain certificate, reporting the first failing
/// step and clause.
pub fn verify_chain(g: &Group, cert: &ChainCertificate) -> ChainCheck {
    let invalid = |index, clause| ChainCheck {
        ok: false,
        failure: Some((index, clause)),
    };
    let chain = cert.chain();
    if chain.is_empty() || !chain[0].is_trivial() {
        return invalid(0, ChainClause::StartNotTrivial);
    }
    let k = g.p() - 1;
    for i in 1..chain.len() {
        if !chain[i - 1].is_subgroup_of(&chain[i]) {
            return invalid(i, ChainClause::Containment);
        }
        if !is_normal(g, &chain[i]) {
            return invalid(i, ChainClause::Normality);
        }
        let ambient = omega1(g, &centralizer(g, &chain[i - 1]));
        if !iterated_commutator(g, &ambient, &chain[i], k).is_trivial() {
            return invalid(i, ChainClause::Condition);
        }
    }
    ChainCheck {
        ok: true,
        failure: None,
    }
}

/// The complete family of elementary abelian subgroups of maximal rank.
pub struct ElemAbelianFamily {
    pub rank: u32,
    pub members: Vec<Subgroup>,
}

/// Coset space of a normal subgroup, multiplied through representatives.
struct CosetCtx<'a> {
    g: &'a Group,
    coset_of: &'a [u32],
    reps: &'a [u32],
}

impl MulCtx for CosetCtx<'_> {
    fn size(&self) -> usize {
        self.reps.len()
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.coset_of[self.g.mul(self.reps[a as usize], self.reps[b as usize]) as usize]
    }
    fn inv(&self, a: u32) -> u32 {
        self.coset_of[self.g.inv(self.reps[a as usize]) as usize]
    }
}

/// Maximal cliques of the commuting graph on the order-p elements. Together
/// with the identity, a maximal clique is exactly a maximal elementary
/// abelian subgroup: a pairwise-commuting set of order-p elements generates
/// an elementary abelian subgroup whose nonidentity elements extend the
/// clique, so a maximal clique is closed under products.
struct CliqueSearch<'g> {
    g: &'g Group,
    verts: Vec<u32>,
    adj: Vec<ElemSet>,
    budget: u64,
    cliques: Vec<Vec<u32>>,
}

impl<'g> CliqueSearch<'g> {
    fn new(g: &'g Group, budget: u64) -> CliqueSearch<'g> {
        let p = g.p();
        let verts: Vec<u32> = (1..g.order() as u32)
            .filter(|&e| g.element_order(e) == p)
            .collect();
        let m = verts.len();
        let mut adj = vec![ElemSet::new(m); m];
        for i in 0..m {
            for j in i + 1..m {
                if g.commutes(verts[i], verts[j]) {
                    adj[i].insert(j as u32);
                    adj[j].insert(i as u32);
                }
            }
        }
        CliqueSearch {
            g,
            verts,
            adj,
            budget,
            cliques: Vec::new(),
        }
    }

    fn run(mut self) -> Result<Vec<Subgroup>> {
        let m = self.verts.len();
        let p = ElemSet::full(m);
        let x = ElemSet::new(m);
        let mut r = Vec::new();
        self.bron_kerbosch(&mut r, p, x)?;
        let mut subgroups: Vec<Subgroup> = self
            .cliques
            .iter()
            .map(|clique| {
                let mut members = ElemSet::new(self.g.order());
                members.insert(0);
                for &v in clique {
                    members.insert(self.verts[v as usize]);
                }
                from_member_set(self.g, members)
            })
            .collect();
        subgroups.sort_by(|a, b| a.cmp_canonical(b));
        Ok(subgroups)
    }

    fn bron_kerbosch(&mut self, r: &mut Vec<u32>, mut p: ElemSet, mut x: ElemSet) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::SearchBudgetExceeded(0));
        }
        self.budget -= 1;
        if p.is_empty() && x.is_empty() {
            self.cliques.push(r.clone());
            return Ok(());
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| {
                let mut n = p.clone();
                n.intersect_with(&self.adj[u as usize]);
                n.len()
            })
            .expect("p or x is nonempty");
        let candidates: Vec<u32> = p
            .iter()
            .filter(|&v| !self.adj[pivot as usize].contains(v))
            .collect();
        for v in candidates {
            let mut p2 = p.clone();
            p2.intersect_with(&self.adj[v as usize]);
            let mut x2 = x.clone();
            x2.intersect_with(&self.adj[v as usize]);
            r.push(v);
            self.bron_kerbosch(r, p2, x2)?;
            r.pop();
            p.remove(v);
            x.insert(v);
        }
        Ok(())
    }
}

/// All maximal elementary abelian subgroups, sorted canonically.
pub fn maximal_elem_abelians(g: &Group, budget: u64) -> Result<Vec<Subgroup>> {
    CliqueSearch::new(g, budget).run()
}

/// The p-rank: the largest r with an elementary abelian subgroup of order pʳ.
pub fn p_rank(g: &Group, budget: u64) -> Result<u32> {
    Ok(max_rank_elem_abelians(g, budget)?.rank)
}

/// The complete family of elementary abelian subgroups whose rank is the
/// p-rank. Every such subgroup is inextensible, hence a maximal clique of the
/// commuting graph, so filtering the maximal-clique list by rank is complete.
pub fn max_rank_elem_abelians(g: &Group, budget: u64) -> Result<ElemAbelianFamily> {
    let maximal = maximal_elem_abelians(g, budget)?;
    let mut rank = 0;
    let mut ranks = Vec::with_capacity(maximal.len());
    for h in &maximal {
        let (ea, r) = is_elementary_abelian(g, h);
        debug_assert!(ea);
        let r = r.unwrap_or(0);
        ranks.push(r);
        rank = rank.max(r);
    }
    let members: Vec<Subgroup> = maximal
        .into_iter()
        .zip(ranks)
        .filter(|(_, r)| *r == rank)
        .map(|(h, _)| h)
        .collect();
    Ok(ElemAbelianFamily { rank, members })
}

/// The Thompson subgroup: the join of all elementary abelian subgroups of
/// maximal rank.
pub fn thompson_j(g: &Group, budget: u64) -> Result<Subgroup> {
    let family = max_rank_elem_abelians(g, budget)?;
    let seed: Vec<u32> = family
        .members
        .iter()
        .flat_map(|h| h.gens().iter().copied())
        .collect();
    let (members, gens) = close(g, seed, &[]);
    Ok(Subgroup::from_closure(members, gens))
}

/// The Oliver subgroup, computed by greedy saturation, together with a chain
/// certificate.
///
/// Starting from the trivial subgroup K, each pass scans the elements in
/// ascending index order; for g ∉ K it forms Q = ⟨K, g⟩-normal-closure (the
/// preimage of the normal closure of gK in G/K) and accepts K := Q whenever
/// `[Ω₁(C_S(K)), Q; p−1] = 1`, restarting the scan. Distinct elements of one
/// coset of K produce the same Q, and elements with the same rejected Q are
/// skipped through a memo, which leaves the accepted sequence unchanged. The
/// final certificate is re-verified before returning.
pub fn oliver_x(g: &Group) -> Result<(Subgroup, ChainCertificate)> {
    let k_steps = g.p() - 1;
    let mut k = g.trivial_subgroup();
    let mut chain = vec![k.clone()];
    loop {
        let ambient = omega1(g, &centralizer(g, &k));
        let (coset_of, reps) = cosets(g, &k);
        let ctx = CosetCtx {
            g,
            coset_of: &coset_of,
            reps: &reps,
        };
        let conj: Vec<u32> = g.gens().iter().map(|&c| coset_of[c as usize]).collect();
        let mut rejected: HashSet<ElemSet> = HashSet::new();
        let mut accepted: Option<Subgroup> = None;

        for e in 1..g.order() as u32 {
            if k.contains(e) {
                continue;
            }
            let (in_quotient, _) = close(&ctx, [coset_of[e as usize]], &conj);
            if rejected.contains(&in_quotient) {
                continue;
            }
            let mut members = ElemSet::new(g.order());
            for (el, &c) in coset_of.iter().enumerate() {
                if in_quotient.contains(c) {
                    members.insert(el as u32);
                }
            }
            let q = from_member_set(g, members);
            if iterated_commutator(g, &ambient, &q, k_steps).is_trivial() {
                accepted = Some(q);
                break;
            }
            rejected.insert(in_quotient);
        }

        match accepted {
            Some(q) => {
                k = q;
                chain.push(k.clone());
            }
            None => break,
        }
    }

    let cert = ChainCertificate::new(chain);
    let check = verify_chain(g, &cert);
    match check.failure {
        None => Ok((k, cert)),
        Some((index, clause)) => Err(Error::CertificateInvalid {
            index,
            clause: clause.to_string(),
        }),
    }
}

/// 𝔛₁(S): the preimage of the center of S/𝔛(S).
pub fn x1_with(g: &Group, x: &Subgroup) -> Result<Subgroup> {
    let (q, qm) = quotient(g, x)?;
    let z = crate::subgroup::center(&q);
    Ok(preimage(g, &qm, &z))
}

pub fn x1(g: &Group) -> Result<Subgroup> {
    let (x, _) = oliver_x(g)?;
    x1_with(g, &x)
}
