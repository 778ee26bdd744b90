use std::cmp::Ordering;

/// Dense bit set over element indices `0..universe`. This is the carrier for
/// subgroup membership; equality and hashing are exact set equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    universe: u32,
    words: Vec<u64>,
}

impl ElemSet {
    pub fn new(universe: usize) -> Self {
        ElemSet {
            universe: universe as u32,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = ElemSet::new(universe);
        for i in 0..universe {
            s.insert(i as u32);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    /// Inserts and reports whether the element was new.
    pub fn insert(&mut self, i: u32) -> bool {
        debug_assert!(i < self.universe);
        let w = &mut self.words[(i / 64) as usize];
        let bit = 1u64 << (i % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn contains(&self, i: u32) -> bool {
        if i >= self.universe {
            return false;
        }
        self.words[(i / 64) as usize] & (1u64 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &ElemSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn remove(&mut self, i: u32) {
        debug_assert!(i < self.universe);
        self.words[(i / 64) as usize] &= !(1u64 << (i % 64));
    }

    pub fn is_subset_of(&self, other: &ElemSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Ascending iterator over members.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros();
                    bits &= bits - 1;
                    Some(wi as u32 * 64 + b)
                }
            })
        })
    }

    /// Total order: by the smallest index on which the sets differ, the set
    /// containing it comes first. Combined with an order-first sort key this
    /// is lexicographic order on sorted member lists.
    pub fn cmp_indexwise(&self, other: &ElemSet) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let bit = 1u64 << diff.trailing_zeros();
                return if a & bit != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl std::fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
