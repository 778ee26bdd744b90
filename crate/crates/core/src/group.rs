use std::collections::HashMap;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Groups up to this order get a dense multiplication table; larger groups
/// multiply by composing permutations and hashing.
const MUL_TABLE_LIMIT: usize = 1024;

/// A fully enumerated finite p-group of permutations.
///
/// Element 0 is always the identity. The element table, generator indices,
/// inverse table and element orders are fixed at construction; a `Group` is
/// immutable afterwards and safe to share across threads.
pub struct Group {
    name: String,
    p: u32,
    degree: usize,
    elems: Vec<Perm>,
    index: HashMap<Perm, u32>,
    gens: Vec<u32>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    /// Discovery edge per element: (parent element, generator position),
    /// used to reconstruct generator words. Identity has no edge.
    discovery: Vec<Option<(u32, u32)>>,
    mul_table: Option<Vec<u32>>,
}

impl Group {
    /// Enumerates the closure of `generators` under composition.
    ///
    /// The identity lands at index 0 and elements are numbered in BFS
    /// discovery order, so identical inputs yield identical tables. An empty
    /// generator list yields the trivial group on one point.
    pub fn enumerate(
        name: impl Into<String>,
        p: u32,
        generators: Vec<Perm>,
        caps: &Caps,
    ) -> Result<Group> {
        validate_prime(p)?;
        let degree = match generators.first() {
            Some(g) => g.degree(),
            None => 1,
        };
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut gen_perms: Vec<Perm> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gen_perms.contains(&g) {
                gen_perms.push(g);
            }
        }

        let mut elems = vec![Perm::identity(degree)];
        let mut index = HashMap::new();
        index.insert(elems[0].clone(), 0u32);
        let mut discovery: Vec<Option<(u32, u32)>> = vec![None];

        let mut i = 0usize;
        while i < elems.len() {
            for (gi, g) in gen_perms.iter().enumerate() {
                let prod = elems[i].compose(g);
                if !index.contains_key(&prod) {
                    if elems.len() >= caps.max_order {
                        return Err(Error::OrderCapExceeded {
                            kind: "group enumeration",
                            cap: caps.max_order,
                        });
                    }
                    index.insert(prod.clone(), elems.len() as u32);
                    elems.push(prod);
                    discovery.push(Some((i as u32, gi as u32)));
                }
            }
            i += 1;
        }

        let order = elems.len();
        let mut q = order;
        while q % p as usize == 0 {
            q /= p as usize;
        }
        if q != 1 {
            return Err(Error::NotAPGroup { order, p });
        }

        let gens = gen_perms.iter().map(|g| index[g]).collect();
        Ok(Group::assemble(name.into(), p, degree, elems, index, gens, discovery))
    }

    /// Builds a group from an explicit element table (identity first). Used
    /// for quotients and for re-rooting a subgroup as a standalone group.
    /// Generator words are recomputed by BFS over `gens` within the table.
    pub(crate) fn from_elements(
        name: impl Into<String>,
        p: u32,
        degree: usize,
        elems: Vec<Perm>,
        gens_perms: &[Perm],
    ) -> Group {
        debug_assert!(elems[0].is_identity());
        let mut index = HashMap::new();
        for (i, e) in elems.iter().enumerate() {
            index.insert(e.clone(), i as u32);
        }
        let gens: Vec<u32> = {
            let mut out = Vec::new();
            for g in gens_perms {
                let gi = index[g];
                if gi != 0 && !out.contains(&gi) {
                    out.push(gi);
                }
            }
            out
        };
        // BFS over the fixed table to assign discovery words.
        let mut discovery: Vec<Option<(u32, u32)>> = vec![None; elems.len()];
        let mut reached = vec![false; elems.len()];
        reached[0] = true;
        let mut frontier = vec![0u32];
        while let Some(&_) = frontier.first() {
            let mut next = Vec::new();
            for &e in &frontier {
                for (gi, &g) in gens.iter().enumerate() {
                    let prod = elems[e as usize].compose(&elems[g as usize]);
                    let pi = index[&prod];
                    if !reached[pi as usize] {
                        reached[pi as usize] = true;
                        discovery[pi as usize] = Some((e, gi as u32));
                        next.push(pi);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        debug_assert!(reached.iter().all(|&r| r), "generators must span the table");
        Group::assemble(name.into(), p, degree, elems, index, gens, discovery)
    }

    fn assemble(
        name: String,
        p: u32,
        degree: usize,
        elems: Vec<Perm>,
        index: HashMap<Perm, u32>,
        gens: Vec<u32>,
        discovery: Vec<Option<(u32, u32)>>,
    ) -> Group {
        let inverses = elems.iter().map(|e| index[&e.inverse()]).collect();
        let orders = elems.iter().map(|e| e.order() as u32).collect();
        let order = elems.len();
        let mul_table = if order <= MUL_TABLE_LIMIT {
            let mut t = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    t[a * order + b] = index[&elems[a].compose(&elems[b])];
                }
            }
            Some(t)
        } else {
            None
        };
        Group {
            name,
            p,
            degree,
            elems,
            index,
            gens,
            inverses,
            orders,
            discovery,
            mul_table,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elems[i as usize]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elems
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    /// Generator indices into the element table.
    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.mul_table {
            Some(t) => t[a as usize * self.elems.len() + b as usize],
            None => self.index[&self.elems[a as usize].compose(&self.elems[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// Least k ≥ 1 with g^k = identity; always a power of p.
    pub fn element_order(&self, g: u32) -> u32 {
        self.orders[g as usize]
    }

    /// `g⁻¹ h g`.
    #[inline]
    pub fn conj(&self, h: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), h), g)
    }

    /// `a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn comm(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// Whether two elements commute; compares images pointwise on the
    /// no-table path to avoid hashing and allocation.
    pub fn commutes(&self, a: u32, b: u32) -> bool {
        match &self.mul_table {
            Some(_) => self.mul(a, b) == self.mul(b, a),
            None => {
                let pa = &self.elems[a as usize];
                let pb = &self.elems[b as usize];
                (0..self.degree as u16).all(|x| pb.apply(pa.apply(x)) == pa.apply(pb.apply(x)))
            }
        }
    }

    /// The generator word discovered for element `g`, as positions into
    /// `gens()`. Identity gives the empty word.
    pub fn word(&self, g: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut cur = g;
        while let Some((parent, gi)) = self.discovery[cur as usize] {
            out.push(gi);
            cur = parent;
        }
        out.reverse();
        out
    }

    /// Renders a generator word like `a^2*b`; identity renders as `1`.
    pub fn word_string(&self, g: u32) -> String {
        let word = self.word(g);
        if word.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<(u32, usize)> = Vec::new();
        for gi in word {
            match parts.last_mut() {
                Some((last, count)) if *last == gi => *count += 1,
                _ => parts.push((gi, 1)),
            }
        }
        parts
            .into_iter()
            .map(|(gi, count)| {
                let name = gen_name(gi as usize);
                if count == 1 {
                    name
                } else {
                    format!("{name}^{count}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Single letters a, b, c, … for the first generators, then g26, g27, …
pub fn gen_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("g{i}")
    }
}

fn validate_prime(p: u32) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Group({}, p={}, order={}, degree={})",
            self.name,
            self.p,
            self.order(),
            self.degree
        )
    }
}
