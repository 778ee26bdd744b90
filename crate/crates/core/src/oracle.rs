//! Brute-force reference implementations used to validate the fast
//! computations. Slower, simpler, and trusted.

use crate::error::{Error, Result};
use crate::group::Group;
use crate::subgroup::{
    centralizer, close, is_elementary_abelian, iterated_commutator, list_normal_subgroups,
    list_subgroups, omega1, Subgroup,
};

/// The set of admissible normal subgroups, computed by fixpoint over the
/// whole normal-subgroup lattice, and its unique maximal member.
pub struct AdmissibleSet {
    pub members: Vec<Subgroup>,
    pub maximal: Subgroup,
}

/// Marks normal subgroups admissible until no more can be marked: the
/// trivial subgroup is admissible, and N becomes admissible when some
/// already-admissible K ≤ N satisfies `[Ω₁(C_S(K)), N; p−1] = 1`. The
/// maximal admissible member is the Oliver subgroup.
///
/// A maximal member that fails to contain every other admissible subgroup
/// would contradict uniqueness of the largest admissible subgroup; that is
/// an implementation bug and surfaces as [`Error::NonUniqueMaximal`].
pub fn oracle_x(g: &Group, cap: usize) -> Result<AdmissibleSet> {
    let normals = list_normal_subgroups(g, cap)?;
    let k_steps = g.p() - 1;

    let mut admissible = vec![false; normals.len()];
    let mut ambient: Vec<Option<Subgroup>> = vec![None; normals.len()];
    // normals is sorted by order, so index 0 is the trivial subgroup.
    admissible[0] = true;

    loop {
        let mut changed = false;
        for n in 0..normals.len() {
            if admissible[n] {
                continue;
            }
            let marked = (0..normals.len()).any(|k| {
                if !admissible[k] || !normals[k].is_subgroup_of(&normals[n]) {
                    return false;
                }
                let amb = ambient[k]
                    .get_or_insert_with(|| omega1(g, &centralizer(g, &normals[k])))
                    .clone();
                iterated_commutator(g, &amb, &normals[n], k_steps).is_trivial()
            });
            if marked {
                admissible[n] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let members: Vec<Subgroup> = normals
        .into_iter()
        .zip(&admissible)
        .filter(|(_, &a)| a)
        .map(|(n, _)| n)
        .collect();
    let maximal = members
        .iter()
        .max_by_key(|m| m.order())
        .expect("trivial subgroup is always admissible")
        .clone();
    for m in &members {
        if !m.is_subgroup_of(&maximal) {
            return Err(Error::NonUniqueMaximal {
                order_a: maximal.order(),
                order_b: m.order(),
            });
        }
    }
    Ok(AdmissibleSet { members, maximal })
}

/// Thompson subgroup by exhaustive subgroup enumeration: scan every subgroup
/// for elementary-abelian-ness, find the maximal rank, join all of that rank.
/// No search pruning.
pub fn oracle_j(g: &Group, cap: usize) -> Result<Subgroup> {
    let subs = list_subgroups(g, cap)?;
    let mut best_rank = 0;
    let mut ranked: Vec<(u32, &Subgroup)> = Vec::new();
    for h in &subs {
        if let (true, Some(r)) = is_elementary_abelian(g, h) {
            best_rank = best_rank.max(r);
            ranked.push((r, h));
        }
    }
    let seed: Vec<u32> = ranked
        .iter()
        .filter(|(r, _)| *r == best_rank)
        .flat_map(|(_, h)| h.gens().iter().copied())
        .collect();
    let (members, gens) = close(g, seed, &[]);
    Ok(Subgroup::from_closure(members, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charsub;
    use crate::config::Caps;
    use crate::corpus;

    fn build(name: &str) -> Group {
        let caps = Caps::default();
        let spec = corpus::default_corpus(caps.max_order)
            .into_iter()
            .find(|s| s.name() == name)
            .unwrap();
        corpus::build(&spec, &caps).unwrap()
    }

    #[test]
    fn abelian_groups_have_everything_admissible() {
        let g = build("c27");
        let adm = oracle_x(&g, 729).unwrap();
        assert_eq!(adm.members.len(), 4); // 1, C3, C9, C27
        assert_eq!(adm.maximal.order(), 27);
    }

    #[test]
    fn heisenberg_maximal_is_whole_group() {
        let g = build("heis27");
        let adm = oracle_x(&g, 729).unwrap();
        assert_eq!(adm.maximal.order(), 27);
    }

    #[test]
    fn wreath_maximal_is_base() {
        let g = build("wr3");
        let adm = oracle_x(&g, 729).unwrap();
        assert_eq!(adm.maximal.order(), 27);
        let (x, _) = charsub::oliver_x(&g).unwrap();
        assert_eq!(adm.maximal.members(), x.members());
    }

    #[test]
    fn fixpoint_is_idempotent() {
        let g = build("m27");
        let a = oracle_x(&g, 729).unwrap();
        let b = oracle_x(&g, 729).unwrap();
        assert_eq!(a.members.len(), b.members.len());
        for (x, y) in a.members.iter().zip(&b.members) {
            assert_eq!(x.members(), y.members());
        }
    }

    #[test]
    fn oracle_j_examples() {
        let c9 = build("c9");
        assert_eq!(oracle_j(&c9, 243).unwrap().order(), 3);

        let ea = build("ea3_2");
        assert_eq!(oracle_j(&ea, 243).unwrap().order(), 9);

        let heis = build("heis27");
        assert_eq!(oracle_j(&heis, 243).unwrap().order(), 27);
    }

    #[test]
    fn caps_are_enforced() {
        let g = build("wr3");
        assert!(matches!(
            oracle_x(&g, 27),
            Err(Error::OrderCapExceeded { .. })
        ));
        assert!(matches!(
            oracle_j(&g, 27),
            Err(Error::OrderCapExceeded { .. })
        ));
    }
}
