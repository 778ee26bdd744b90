use crate::error::{Error, Result};

/// A permutation of `{0, …, degree−1}`, stored as its image table.
///
/// Products are written left to right: `(a * b)` means "apply `a`, then `b`",
/// i.e. `(a * b)(x) = b(a(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from an image table, validating bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(Error::InvalidSpec(format!(
                    "image table of length {n} is not a bijection"
                )));
            }
            seen[i as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation from disjoint cycles. Points absent from every
    /// cycle are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u16>]) -> Result<Perm> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt as usize >= degree {
                    return Err(Error::InvalidSpec(format!(
                        "point {pt} out of range for degree {degree}"
                    )));
                }
                if moved[pt as usize] {
                    return Err(Error::InvalidSpec(format!("point {pt} repeated in cycles")));
                }
                moved[pt as usize] = true;
                images[pt as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u16 == x)
    }

    /// `self * other`: apply `self` first, then `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Perm { images }
    }

    /// Order of the permutation: the lcm of its cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles_including_fixed()
            .into_iter()
            .map(|c| c.len() as u64)
            .fold(1, lcm)
    }

    /// Cycle decomposition with fixed points omitted. Each cycle starts at its
    /// minimal point; cycles are sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        self.cycles_including_fixed()
            .into_iter()
            .filter(|c| c.len() >= 2)
            .collect()
    }

    fn cycles_including_fixed(&self) -> Vec<Vec<u16>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u16];
            seen[start] = true;
            let mut p = self.images[start] as usize;
            while p != start {
                seen[p] = true;
                cycle.push(p as u16);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl std::fmt::Display for Perm {
    /// Cycle notation, e.g. `(0 1 2)(3 4 5)`; the identity prints as `()`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, pt) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{pt}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn compose_and_inverse() {
        let a = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(a.compose(&a.inverse()), Perm::identity(3));
        assert_eq!(a.compose(&a).compose(&a), Perm::identity(3));
    }

    #[test]
    fn order_is_lcm_of_cycle_lengths() {
        let p = Perm::from_cycles(9, &[vec![0, 1, 2], vec![3, 4, 5, 6, 7, 8]]).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::identity(5).order(), 1);
    }

    #[test]
    fn display_sorted_cycles_min_first() {
        let p = Perm::from_cycles(6, &[vec![4, 5], vec![1, 0, 2]]).unwrap();
        assert_eq!(p.to_string(), "(0 2 1)(4 5)");
        assert_eq!(Perm::identity(4).to_string(), "()");
    }

    #[test]
    fn rejects_bad_cycles() {
        assert!(Perm::from_cycles(3, &[vec![0, 7]]).is_err());
        assert!(Perm::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }

    fn arb_perm(degree: usize) -> impl Strategy<Value = Perm> {
        Just(()).prop_perturb(move |_, mut rng| {
            let mut v: Vec<u16> = (0..degree as u16).collect();
            for i in (1..v.len()).rev() {
                let j = (rng.next_u32() as usize) % (i + 1);
                v.swap(i, j);
            }
            Perm { images: v }
        })
    }

    proptest! {
        #[test]
        fn composition_is_associative(a in arb_perm(8), b in arb_perm(8), c in arb_perm(8)) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }

        #[test]
        fn identity_and_inverse_laws(a in arb_perm(8)) {
            let e = Perm::identity(8);
            prop_assert_eq!(a.compose(&e.clone()), a.clone());
            prop_assert_eq!(e.compose(&a), a.clone());
            prop_assert_eq!(a.compose(&a.inverse()), Perm::identity(8));
        }

        #[test]
        fn cycles_round_trip(a in arb_perm(11)) {
            let back = Perm::from_cycles(11, &a.cycles()).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
