use std::collections::{HashMap, HashSet, VecDeque};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;

/// A subgroup of a parent [`Group`], held as a membership bit-vector plus a
/// witness generator list whose closure equals `members`.
#[derive(Clone)]
pub struct Subgroup {
    members: ElemSet,
    gens: Vec<u32>,
    order: usize,
}

impl Subgroup {
    fn new(members: ElemSet, gens: Vec<u32>) -> Subgroup {
        let order = members.len();
        Subgroup { members, gens, order }
    }

    /// Wraps a closure-engine result (members plus an accepted generator
    /// list) as a subgroup.
    pub(crate) fn from_closure(members: ElemSet, gens: Vec<u32>) -> Subgroup {
        Subgroup::new(members, gens)
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, e: u32) -> bool {
        self.members.contains(e)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset_of(&other.members)
    }

    /// Sort key used everywhere a list of subgroups is emitted.
    pub fn cmp_canonical(&self, other: &Subgroup) -> std::cmp::Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members.cmp_indexwise(&other.members))
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}
impl Eq for Subgroup {}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order={}, gens={:?})", self.order, self.gens)
    }
}

/// Anything with an associative multiplication, inverses and identity 0.
/// Implemented by [`Group`] and by the coset space used inside the greedy
/// Oliver computation.
pub(crate) trait MulCtx {
    fn size(&self) -> usize;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> u32;
}

impl MulCtx for Group {
    fn size(&self) -> usize {
        self.order()
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        Group::mul(self, a, b)
    }
    fn inv(&self, a: u32) -> u32 {
        Group::inv(self, a)
    }
}

/// Closure engine shared by every subgroup constructor.
///
/// Grows the subgroup generated by the seed, taking each seed element that is
/// not already inside as a new generator. When `conjugators` is nonempty,
/// every accepted generator's conjugates under them are queued as well, which
/// yields the normal closure. Returns the member set and the accepted
/// generator list (a generating set of size at most log_p of the order plus
/// the queued conjugates that were new).
pub(crate) fn close<C: MulCtx>(
    ctx: &C,
    seed: impl IntoIterator<Item = u32>,
    conjugators: &[u32],
) -> (ElemSet, Vec<u32>) {
    let mut members = ElemSet::new(ctx.size());
    members.insert(0);
    let mut all: Vec<u32> = vec![0];
    let mut gens: Vec<u32> = Vec::new();
    let mut work: VecDeque<u32> = seed.into_iter().collect();

    while let Some(x) = work.pop_front() {
        if members.contains(x) {
            continue;
        }
        gens.push(x);
        // Sweep existing members against the new generator, then scan the
        // appended region against all generators; each (member, generator)
        // product is formed exactly once.
        let prev_len = all.len();
        for k in 0..prev_len {
            let y = ctx.mul(all[k], x);
            if members.insert(y) {
                all.push(y);
            }
        }
        let mut scan = prev_len;
        while scan < all.len() {
            let e = all[scan];
            for &t in &gens {
                let y = ctx.mul(e, t);
                if members.insert(y) {
                    all.push(y);
                }
            }
            scan += 1;
        }
        for &c in conjugators {
            work.push_back(ctx.mul(ctx.mul(ctx.inv(c), x), c));
        }
    }
    (members, gens)
}

impl Group {
    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut members = ElemSet::new(self.order());
        members.insert(0);
        Subgroup::new(members, Vec::new())
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup::new(ElemSet::full(self.order()), self.gens().to_vec())
    }
}

/// Rebuilds a subgroup from a bare member set, extracting a small generator
/// witness.
pub fn from_member_set(g: &Group, members: ElemSet) -> Subgroup {
    let (closure, gens) = close(g, members.iter(), &[]);
    debug_assert_eq!(closure, members, "member set must be closed");
    Subgroup::new(closure, gens)
}

/// Smallest subgroup containing the seed; the seed itself is recorded as the
/// generator witness.
pub fn generated_subgroup(g: &Group, seed: &[u32]) -> Subgroup {
    let (members, _) = close(g, seed.iter().copied(), &[]);
    let mut gens: Vec<u32> = Vec::new();
    for &s in seed {
        if s != 0 && !gens.contains(&s) {
            gens.push(s);
        }
    }
    Subgroup::new(members, gens)
}

/// Smallest normal subgroup of `g` containing the seed.
pub fn normal_closure(g: &Group, seed: &[u32]) -> Subgroup {
    let (members, gens) = close(g, seed.iter().copied(), g.gens());
    Subgroup::new(members, gens)
}

/// `{x ∈ G : xh = hx for all h ∈ H}`. Commutation is tested against the
/// generators of `H` only, which suffices because centralizing the generators
/// centralizes their closure.
pub fn centralizer(g: &Group, h: &Subgroup) -> Subgroup {
    let mut members = ElemSet::new(g.order());
    'outer: for e in 0..g.order() as u32 {
        for &x in h.gens() {
            if !g.commutes(e, x) {
                continue 'outer;
            }
        }
        members.insert(e);
    }
    from_member_set(g, members)
}

/// Center of the whole group.
pub fn center(g: &Group) -> Subgroup {
    centralizer(g, &g.full_subgroup())
}

/// Center of a subgroup: its members commuting with all of it.
pub fn center_of(g: &Group, h: &Subgroup) -> Subgroup {
    let mut members = ElemSet::new(g.order());
    'outer: for e in h.members().iter() {
        for &x in h.gens() {
            if !g.commutes(e, x) {
                continue 'outer;
            }
        }
        members.insert(e);
    }
    from_member_set(g, members)
}

/// True iff conjugation by every generator of `g` maps `h` into itself.
pub fn is_normal(g: &Group, h: &Subgroup) -> bool {
    for &c in g.gens() {
        for &x in h.gens() {
            if !h.contains(g.conj(x, c)) {
                return false;
            }
        }
    }
    true
}

/// Subgroup generated by both arguments.
pub fn join(g: &Group, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let seed: Vec<u32> = a.gens().iter().chain(b.gens()).copied().collect();
    let (members, gens) = close(g, seed, &[]);
    Subgroup::new(members, gens)
}

/// Intersection of both arguments.
pub fn meet(g: &Group, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut members = a.members().clone();
    members.intersect_with(b.members());
    from_member_set(g, members)
}

/// Left-normed iterated commutator subgroup `[A, B; k]`.
///
/// `[A, B; 1]` is the subgroup generated by all `[a, b]` with `a ∈ A`,
/// `b ∈ B`, and `[A, B; k] = [[A, B; k−1], B]`, the closure being taken at
/// every stage. Each stage is computed from generator commutators as the
/// normal closure inside the join: `[X, B]` is normalized by `⟨X, B⟩`, so
/// closing the generator commutators under conjugation by the generators of
/// `X` and `B` yields exactly the all-pairs subgroup.
pub fn iterated_commutator(g: &Group, a: &Subgroup, b: &Subgroup, k: u32) -> Subgroup {
    assert!(k >= 1, "iterated commutator needs k >= 1");
    let mut cur_gens: Vec<u32> = a.gens().to_vec();
    let mut cur: Option<Subgroup> = None;
    for _ in 0..k {
        let mut seed: Vec<u32> = Vec::new();
        for &x in &cur_gens {
            for &y in b.gens() {
                let c = g.comm(x, y);
                if c != 0 && !seed.contains(&c) {
                    seed.push(c);
                }
            }
        }
        let conjugators: Vec<u32> = cur_gens.iter().chain(b.gens()).copied().collect();
        let (members, gens) = close(g, seed, &conjugators);
        let next = Subgroup::new(members, gens);
        if next.is_trivial() {
            return next;
        }
        if let Some(prev) = &cur {
            if prev == &next {
                return next;
            }
        }
        cur_gens = next.gens().to_vec();
        cur = Some(next);
    }
    cur.unwrap_or_else(|| g.trivial_subgroup())
}

/// Subgroup of `H` generated by its elements of order dividing p. For
/// nonabelian `H` this may properly contain the set of such elements.
pub fn omega1(g: &Group, h: &Subgroup) -> Subgroup {
    let p = g.p();
    let seed: Vec<u32> = h
        .members()
        .iter()
        .filter(|&e| e != 0 && g.element_order(e) == p)
        .collect();
    let (members, gens) = close(g, seed, &[]);
    debug_assert!(members.is_subset_of(h.members()));
    Subgroup::new(members, gens)
}

/// Elementary abelian test. Returns the rank (log_p of the order) when true.
pub fn is_elementary_abelian(g: &Group, h: &Subgroup) -> (bool, Option<u32>) {
    let p = g.p();
    for e in h.members().iter() {
        if e != 0 && g.element_order(e) != p {
            return (false, None);
        }
    }
    let gens = h.gens();
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            if !g.commutes(x, y) {
                return (false, None);
            }
        }
    }
    let mut rank = 0;
    let mut q = h.order();
    while q > 1 {
        q /= p as usize;
        rank += 1;
    }
    (true, Some(rank))
}

/// Right-coset decomposition of `g` modulo `n`: returns `(coset_of, reps)`
/// where `coset_of[e]` is the coset index of element `e` and `reps[i]` is the
/// minimal element of coset `i`. Coset 0 is `n` itself.
pub(crate) fn cosets(g: &Group, n: &Subgroup) -> (Vec<u32>, Vec<u32>) {
    let unset = u32::MAX;
    let mut coset_of = vec![unset; g.order()];
    let mut reps = Vec::with_capacity(g.order() / n.order());
    for e in 0..g.order() as u32 {
        if coset_of[e as usize] != unset {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(e);
        for m in n.members().iter() {
            coset_of[g.mul(m, e) as usize] = id;
        }
    }
    (coset_of, reps)
}

/// Projection map attached to a quotient group.
pub struct QuotientMap {
    map: Vec<u32>,
    first_preimage: Vec<u32>,
    kernel_gens: Vec<u32>,
}

impl QuotientMap {
    pub fn apply(&self, e: u32) -> u32 {
        self.map[e as usize]
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    /// Smallest parent element mapping onto the given quotient element.
    pub fn first_preimage(&self, q: u32) -> u32 {
        self.first_preimage[q as usize]
    }
}

/// Quotient of `g` by a normal subgroup, realized as permutations of the
/// right-coset space, together with the projection homomorphism.
pub fn quotient(g: &Group, n: &Subgroup) -> Result<(Group, QuotientMap)> {
    if !is_normal(g, n) {
        return Err(Error::NotNormal(n.order()));
    }
    let (coset_of, reps) = cosets(g, n);
    let degree = reps.len();

    let mut qelems: Vec<Perm> = Vec::new();
    let mut qindex: HashMap<Perm, u32> = HashMap::new();
    let mut map = Vec::with_capacity(g.order());
    for h in 0..g.order() as u32 {
        let images: Vec<u16> = reps
            .iter()
            .map(|&r| coset_of[g.mul(r, h) as usize] as u16)
            .collect();
        let perm = Perm::from_images(images).expect("coset action is a permutation");
        let qi = *qindex.entry(perm.clone()).or_insert_with(|| {
            qelems.push(perm);
            (qelems.len() - 1) as u32
        });
        map.push(qi);
    }
    debug_assert_eq!(qelems.len() * n.order(), g.order());

    let gen_perms: Vec<Perm> = g
        .gens()
        .iter()
        .map(|&x| qelems[map[x as usize] as usize].clone())
        .collect();
    let qgroup = Group::from_elements(
        format!("{}/n{}", g.name(), n.order()),
        g.p(),
        degree,
        qelems,
        &gen_perms,
    );

    let mut first_preimage = vec![u32::MAX; qgroup.order()];
    for (e, &qi) in map.iter().enumerate() {
        if first_preimage[qi as usize] == u32::MAX {
            first_preimage[qi as usize] = e as u32;
        }
    }
    Ok((
        qgroup,
        QuotientMap {
            map,
            first_preimage,
            kernel_gens: n.gens().to_vec(),
        },
    ))
}

/// `{g : projection(g) ∈ K}` for a subgroup `K` of the quotient.
pub fn preimage(g: &Group, qm: &QuotientMap, k: &Subgroup) -> Subgroup {
    let mut members = ElemSet::new(g.order());
    for (e, &qi) in qm.map.iter().enumerate() {
        if k.contains(qi) {
            members.insert(e as u32);
        }
    }
    let mut gens = qm.kernel_gens.clone();
    for &kg in k.gens() {
        let rep = qm.first_preimage[kg as usize];
        if rep != 0 && !gens.contains(&rep) {
            gens.push(rep);
        }
    }
    Subgroup::new(members, gens)
}

fn join_closure_of_atoms(g: &Group, atoms: Vec<Subgroup>) -> Vec<Subgroup> {
    let mut list: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for atom in atoms {
        if seen.insert(atom.members().clone()) {
            list.push(atom);
            queue.push_back(list.len() - 1);
        }
    }
    while let Some(i) = queue.pop_front() {
        for j in 0..i {
            let joined = join(g, &list[i], &list[j]);
            if seen.insert(joined.members().clone()) {
                list.push(joined);
                queue.push_back(list.len() - 1);
            }
        }
    }
    list.sort_by(|a, b| a.cmp_canonical(b));
    list
}

/// All normal subgroups of `g`, as the join-closure of single-element normal
/// closures, sorted by (order, membership).
pub fn list_normal_subgroups(g: &Group, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::OrderCapExceeded {
            kind: "normal subgroup enumeration",
            cap,
        });
    }
    let mut atoms = vec![g.trivial_subgroup()];
    for e in 1..g.order() as u32 {
        atoms.push(normal_closure(g, &[e]));
    }
    Ok(join_closure_of_atoms(g, atoms))
}

/// All subgroups of `g`, as the join-closure of cyclic subgroups, sorted by
/// (order, membership).
pub fn list_subgroups(g: &Group, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::OrderCapExceeded {
            kind: "subgroup enumeration",
            cap,
        });
    }
    let mut atoms = vec![g.trivial_subgroup()];
    for e in 1..g.order() as u32 {
        atoms.push(generated_subgroup(g, &[e]));
    }
    Ok(join_closure_of_atoms(g, atoms))
}

/// Re-roots a subgroup as a standalone [`Group`] on the same points. The
/// element order follows the parent's indexing, so the construction is
/// deterministic.
pub fn subgroup_as_group(g: &Group, h: &Subgroup, name: impl Into<String>) -> Group {
    let elems: Vec<Perm> = h.members().iter().map(|e| g.element(e).clone()).collect();
    let gen_perms: Vec<Perm> = h.gens().iter().map(|&x| g.element(x).clone()).collect();
    Group::from_elements(name, g.p(), g.degree(), elems, &gen_perms)
}

/// Maps a subgroup of a standalone re-rooted group back into the parent.
pub fn map_back(parent: &Group, standalone: &Group, h: &Subgroup) -> Subgroup {
    let mut members = ElemSet::new(parent.order());
    for e in h.members().iter() {
        let idx = parent
            .index_of(standalone.element(e))
            .expect("standalone elements live in the parent");
        members.insert(idx);
    }
    let gens = h
        .gens()
        .iter()
        .map(|&x| parent.index_of(standalone.element(x)).unwrap())
        .collect();
    Subgroup::new(members, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
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

    fn c9() -> Group {
        build("c9")
    }

    fn heis27() -> Group {
        build("heis27")
    }

    fn wr3() -> Group {
        build("wr3")
    }

    fn m27() -> Group {
        build("m27")
    }

    /// The base subgroup of C3 wr C3: elements preserving every block of 3.
    fn wreath_base(g: &Group) -> Subgroup {
        let mut members = ElemSet::new(g.order());
        'outer: for (i, e) in g.elements().iter().enumerate() {
            for pt in 0..9u16 {
                if e.apply(pt) / 3 != pt / 3 {
                    continue 'outer;
                }
            }
            members.insert(i as u32);
        }
        from_member_set(g, members)
    }

    #[test]
    fn centralizer_of_trivial_is_whole_group() {
        let g = c9();
        let c = centralizer(&g, &g.trivial_subgroup());
        assert_eq!(c.order(), g.order());
    }

    #[test]
    fn centralizer_of_center_is_whole_group() {
        let g = heis27();
        let z = center(&g);
        assert_eq!(centralizer(&g, &z).order(), g.order());
    }

    #[test]
    fn wreath_base_is_self_centralizing() {
        // Oracle: brute-force commutation over all 81 elements.
        let g = wr3();
        let base = wreath_base(&g);
        assert_eq!(base.order(), 27);
        let fast = centralizer(&g, &base);
        let mut brute = ElemSet::new(g.order());
        'outer: for e in 0..g.order() as u32 {
            for h in base.members().iter() {
                if !g.commutes(e, h) {
                    continue 'outer;
                }
            }
            brute.insert(e);
        }
        assert_eq!(fast.members(), &brute);
        assert_eq!(fast.members(), base.members());
    }

    #[test]
    fn center_of_heisenberg_has_order_three() {
        // Oracle: brute force over all 27 elements.
        let g = heis27();
        let z = center(&g);
        let mut brute = ElemSet::new(g.order());
        'outer: for e in 0..g.order() as u32 {
            for h in 0..g.order() as u32 {
                if !g.commutes(e, h) {
                    continue 'outer;
                }
            }
            brute.insert(e);
        }
        assert_eq!(z.members(), &brute);
        assert_eq!(z.order(), 3);
    }

    #[test]
    fn center_of_abelian_group_is_everything() {
        let g = c9();
        assert_eq!(center(&g).order(), 9);
        let t = Group::enumerate("triv", 3, vec![], &Caps::default()).unwrap();
        assert_eq!(center(&t).order(), 1);
    }

    #[test]
    fn normality_examples() {
        let g = heis27();
        assert!(is_normal(&g, &center(&g)));

        let w = wr3();
        assert!(is_normal(&w, &wreath_base(&w)));

        // <b> in the exponent-9 extraspecial group: conjugating the order-3
        // generator by the order-9 generator leaves the subgroup.
        let m = m27();
        let b = *m
            .gens()
            .iter()
            .find(|&&x| m.element_order(x) == 3)
            .expect("m27 has an order-3 generator");
        let hb = generated_subgroup(&m, &[b]);
        assert_eq!(hb.order(), 3);
        assert!(!is_normal(&m, &hb));
        let a = *m.gens().iter().find(|&&x| m.element_order(x) == 9).unwrap();
        assert!(!hb.contains(m.conj(b, a)));
    }

    #[test]
    fn normal_closure_examples() {
        let g = heis27();
        let z = center(&g);
        let zgen = z.members().iter().find(|&e| e != 0).unwrap();
        assert_eq!(normal_closure(&g, &[zgen]).order(), 3);

        let noncentral = (1..g.order() as u32).find(|&e| !z.contains(e)).unwrap();
        let n = normal_closure(&g, &[noncentral]);
        assert_eq!(n.order(), 9);
        assert!(z.members().is_subset_of(n.members()));

        let c = c9();
        assert_eq!(normal_closure(&c, &[1]).order(), generated_subgroup(&c, &[1]).order());
    }

    #[test]
    fn iterated_commutator_matches_all_pairs_definition() {
        // Oracle: closure of the full set {[a,b]} at every stage.
        fn brute(g: &Group, a: &Subgroup, b: &Subgroup, k: u32) -> Subgroup {
            let mut cur = a.clone();
            for _ in 0..k {
                let mut seed = Vec::new();
                for x in cur.members().iter() {
                    for y in b.members().iter() {
                        seed.push(g.comm(x, y));
                    }
                }
                let (members, gens) = close(g, seed, &[]);
                cur = Subgroup::new(members, gens);
            }
            cur
        }
        for g in [heis27(), m27(), wr3()] {
            let full = g.full_subgroup();
            let z = center(&g);
            for k in 1..=3 {
                assert_eq!(
                    iterated_commutator(&g, &full, &full, k).members(),
                    brute(&g, &full, &full, k).members(),
                    "[G,G;{k}] on {}",
                    g.name()
                );
            }
            assert_eq!(
                iterated_commutator(&g, &z, &full, 2).members(),
                brute(&g, &z, &full, 2).members()
            );
        }
    }

    #[test]
    fn heisenberg_commutator_series() {
        let g = heis27();
        let full = g.full_subgroup();
        let d1 = iterated_commutator(&g, &full, &full, 1);
        assert_eq!(d1.members(), center(&g).members());
        let d2 = iterated_commutator(&g, &full, &full, 2);
        assert!(d2.is_trivial());
        let triv = g.trivial_subgroup();
        assert!(iterated_commutator(&g, &full, &triv, 5).is_trivial());
    }

    #[test]
    fn omega1_examples() {
        let c = c9();
        let o = omega1(&c, &c.full_subgroup());
        assert_eq!(o.order(), 3);

        let h = heis27();
        assert_eq!(omega1(&h, &h.full_subgroup()).order(), 27);

        let t = Group::enumerate("triv", 3, vec![], &Caps::default()).unwrap();
        assert!(omega1(&t, &t.full_subgroup()).is_trivial());
    }

    #[test]
    fn omega1_stays_inside_and_is_idempotent_on_elem_abelian_output() {
        for g in [c9(), heis27(), m27(), wr3()] {
            let o = omega1(&g, &g.full_subgroup());
            assert!(o.members().is_subset_of(g.full_subgroup().members()));
            if is_elementary_abelian(&g, &o).0 {
                let oo = omega1(&g, &o);
                assert_eq!(oo.members(), o.members(), "on {}", g.name());
            }
        }
    }

    #[test]
    fn groups_and_subgroups_are_shareable() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Group>();
        assert_send_sync::<Subgroup>();
    }

    #[test]
    fn quotient_examples() {
        let g = heis27();
        let (q, _) = quotient(&g, &g.full_subgroup()).unwrap();
        assert_eq!(q.order(), 1);

        let c = c9();
        let c3 = omega1(&c, &c.full_subgroup());
        let (q, _) = quotient(&c, &c3).unwrap();
        assert_eq!(q.order(), 3);

        let z = center(&g);
        let (q, qm) = quotient(&g, &z).unwrap();
        assert_eq!(q.order() * z.order(), g.order());
        let (ea, rank) = is_elementary_abelian(&q, &q.full_subgroup());
        assert!(ea);
        assert_eq!(rank, Some(2));

        // Projection is a homomorphism.
        for a in 0..g.order() as u32 {
            for b in [0u32, 1, 5, 11] {
                assert_eq!(qm.apply(g.mul(a, b)), q.mul(qm.apply(a), qm.apply(b)));
            }
        }

        // Round trip: the preimage of the image contains the subgroup.
        for h in list_subgroups(&g, 243).unwrap() {
            let mut image = ElemSet::new(q.order());
            for e in h.members().iter() {
                image.insert(qm.apply(e));
            }
            let image_sub = from_member_set(&q, {
                let (closure, _) = close(&q, image.iter(), &[]);
                closure
            });
            let back = preimage(&g, &qm, &image_sub);
            assert!(h.members().is_subset_of(back.members()));
        }
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let m = m27();
        let b = *m.gens().iter().find(|&&x| m.element_order(x) == 3).unwrap();
        let hb = generated_subgroup(&m, &[b]);
        assert!(matches!(quotient(&m, &hb), Err(Error::NotNormal(3))));
    }

    #[test]
    fn preimage_examples() {
        let g = heis27();
        let z = center(&g);
        let (q, qm) = quotient(&g, &z).unwrap();

        let back = preimage(&g, &qm, &q.trivial_subgroup());
        assert_eq!(back.members(), z.members());

        let all = preimage(&g, &qm, &q.full_subgroup());
        assert_eq!(all.order(), g.order());

        // Preimage orders multiply, and the witness generators close to the
        // full preimage.
        for k in list_subgroups(&q, 243).unwrap() {
            let pre = preimage(&g, &qm, &k);
            assert_eq!(pre.order(), k.order() * z.order());
            let (closure, _) = close(&g, pre.gens().iter().copied(), &[]);
            assert_eq!(&closure, pre.members());
        }
    }

    #[test]
    fn normal_subgroup_lattices() {
        let c = c9();
        assert_eq!(list_normal_subgroups(&c, 729).unwrap().len(), 3);

        let t = Group::enumerate("triv", 3, vec![], &Caps::default()).unwrap();
        assert_eq!(list_normal_subgroups(&t, 729).unwrap().len(), 1);

        // Heisenberg-27: 1, Z, four maximals, G. Cross-checked against the
        // all-subgroups list filtered by normality.
        let g = heis27();
        let normals = list_normal_subgroups(&g, 729).unwrap();
        assert_eq!(normals.len(), 7);
        let by_brute: Vec<_> = list_subgroups(&g, 243)
            .unwrap()
            .into_iter()
            .filter(|h| is_normal(&g, h))
            .collect();
        assert_eq!(normals.len(), by_brute.len());
        for (a, b) in normals.iter().zip(&by_brute) {
            assert_eq!(a.members(), b.members());
        }
        assert!(matches!(
            list_normal_subgroups(&g, 10),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn subgroup_lattices() {
        let c = c9();
        assert_eq!(list_subgroups(&c, 243).unwrap().len(), 3);

        let ea = build("ea3_2");
        assert_eq!(list_subgroups(&ea, 243).unwrap().len(), 6);

        let t = Group::enumerate("triv", 3, vec![], &Caps::default()).unwrap();
        assert_eq!(list_subgroups(&t, 243).unwrap().len(), 1);
    }

    #[test]
    fn elementary_abelian_classifier() {
        let c = c9();
        assert_eq!(is_elementary_abelian(&c, &c.full_subgroup()), (false, None));
        assert_eq!(is_elementary_abelian(&c, &c.trivial_subgroup()), (true, Some(0)));

        let ea = build("ea3_2");
        assert_eq!(is_elementary_abelian(&ea, &ea.full_subgroup()), (true, Some(2)));
    }

    #[test]
    fn standalone_round_trip() {
        let g = wr3();
        let base = wreath_base(&g);
        let standalone = subgroup_as_group(&g, &base, "base");
        assert_eq!(standalone.order(), 27);
        let z = center(&standalone);
        let back = map_back(&g, &standalone, &z);
        assert_eq!(back.order(), z.order());
        assert!(back.members().is_subset_of(base.members()));
    }

    #[test]
    fn lagrange_for_derived_subgroups() {
        for g in [c9(), heis27(), m27(), wr3()] {
            let full = g.full_subgroup();
            for h in [
                center(&g),
                omega1(&g, &full),
                iterated_commutator(&g, &full, &full, 1),
            ] {
                assert_eq!(g.order() % h.order(), 0, "Lagrange on {}", g.name());
            }
        }
    }
}
