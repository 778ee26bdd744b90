use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;

/// Recipe for one test group.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    name: String,
    family: Family,
}

#[derive(Debug, Clone)]
pub enum Family {
    /// C_{p^n} as a single p^n-cycle.
    Cyclic { p: u32, n: u32 },
    /// (C_p)^rank as disjoint p-cycles.
    ElemAbelian { p: u32, rank: u32 },
    /// C_p wr C_p on p² points (imprimitive action).
    WreathCpCp { p: u32 },
    /// Extraspecial of order p³ and exponent p: upper unitriangular 3×3
    /// matrices over F_p acting on the p³ column vectors.
    ExtraspecialExpP { p: u32 },
    /// Extraspecial of order p³ with an element of order p²: on the residues
    /// mod p², generated by x ↦ x+1 and x ↦ (1+p)·x.
    ExtraspecialExpP2 { p: u32 },
    /// All upper unitriangular n×n matrices over F_p acting on pⁿ vectors.
    Unitriangular { p: u32, n: u32 },
    /// Direct product on the disjoint union of the factors' point sets.
    DirectProduct {
        left: Box<GroupSpec>,
        right: Box<GroupSpec>,
    },
    /// Load from a group definition file.
    FromFile { path: String },
}

impl GroupSpec {
    pub fn new(name: impl Into<String>, family: Family) -> GroupSpec {
        GroupSpec {
            name: name.into(),
            family,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// The group order this spec will realize, when known without building.
    pub fn predicted_order(&self) -> Option<u128> {
        match &self.family {
            Family::Cyclic { p, n } => Some((*p as u128).pow(*n)),
            Family::ElemAbelian { p, rank } => Some((*p as u128).pow(*rank)),
            Family::WreathCpCp { p } => Some((*p as u128).pow(p + 1)),
            Family::ExtraspecialExpP { p } | Family::ExtraspecialExpP2 { p } => {
                Some((*p as u128).pow(3))
            }
            Family::Unitriangular { p, n } => Some((*p as u128).pow(n * (n - 1) / 2)),
            Family::DirectProduct { left, right } => {
                Some(left.predicted_order()? * right.predicted_order()?)
            }
            Family::FromFile { .. } => None,
        }
    }

    pub fn describe(&self) -> String {
        match &self.family {
            Family::Cyclic { p, n } => format!("cyclic({p}^{n})"),
            Family::ElemAbelian { p, rank } => format!("elem_abelian({p}, rank {rank})"),
            Family::WreathCpCp { p } => format!("wreath(C{p} wr C{p})"),
            Family::ExtraspecialExpP { p } => format!("extraspecial(p={p}, exponent p)"),
            Family::ExtraspecialExpP2 { p } => format!("extraspecial(p={p}, exponent p^2)"),
            Family::Unitriangular { p, n } => format!("unitriangular({n}, {p})"),
            Family::DirectProduct { left, right } => {
                format!("{} x {}", left.describe(), right.describe())
            }
            Family::FromFile { path } => format!("file({path})"),
        }
    }
}

fn check_odd_prime(p: u32) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if p < 3 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Builds the explicit permutation group for a spec. File-backed specs keep
/// the name declared in the file.
pub fn build(spec: &GroupSpec, caps: &Caps) -> Result<Group> {
    if let Family::FromFile { path } = &spec.family {
        return crate::groupfile::load_group_file(path, caps);
    }
    let (p, gens) = generators_for(spec, caps)?;
    Group::enumerate(spec.name.clone(), p, gens, caps)
}

fn generators_for(spec: &GroupSpec, caps: &Caps) -> Result<(u32, Vec<Perm>)> {
    match &spec.family {
        Family::Cyclic { p, n } => {
            check_odd_prime(*p)?;
            if *n < 1 {
                return Err(Error::InvalidSpec("cyclic needs n >= 1".into()));
            }
            let len = (*p as usize).pow(*n);
            let cycle: Vec<u16> = (0..len as u16).collect();
            Ok((*p, vec![Perm::from_cycles(len, &[cycle])?]))
        }
        Family::ElemAbelian { p, rank } => {
            check_odd_prime(*p)?;
            if *rank < 1 {
                return Err(Error::InvalidSpec("elem_abelian needs rank >= 1".into()));
            }
            let degree = (*p as usize) * (*rank as usize);
            let gens = (0..*rank)
                .map(|k| {
                    let start = k * p;
                    let cycle: Vec<u16> = (start as u16..(start + p) as u16).collect();
                    Perm::from_cycles(degree, &[cycle])
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((*p, gens))
        }
        Family::WreathCpCp { p } => {
            check_odd_prime(*p)?;
            let pu = *p as usize;
            let degree = pu * pu;
            let base: Vec<u16> = (0..*p as u16).collect();
            let shift_images: Vec<u16> = (0..degree as u16)
                .map(|i| (i + *p as u16) % degree as u16)
                .collect();
            Ok((
                *p,
                vec![
                    Perm::from_cycles(degree, &[base])?,
                    Perm::from_images(shift_images)?,
                ],
            ))
        }
        Family::ExtraspecialExpP { p } => {
            check_odd_prime(*p)?;
            Ok((*p, unitriangular_gens(*p, 3)))
        }
        Family::ExtraspecialExpP2 { p } => {
            check_odd_prime(*p)?;
            let m = (*p as usize) * (*p as usize);
            let translate: Vec<u16> = (0..m).map(|x| ((x + 1) % m) as u16).collect();
            let u = 1 + *p as usize;
            let scale: Vec<u16> = (0..m).map(|x| ((x * u) % m) as u16).collect();
            Ok((
                *p,
                vec![Perm::from_images(translate)?, Perm::from_images(scale)?],
            ))
        }
        Family::Unitriangular { p, n } => {
            check_odd_prime(*p)?;
            if *n < 2 {
                return Err(Error::InvalidSpec("unitriangular needs n >= 2".into()));
            }
            if (*p as u128).pow(*n) > u16::MAX as u128 {
                return Err(Error::InvalidSpec(format!(
                    "unitriangular({n}, {p}) acts on too many vectors"
                )));
            }
            Ok((*p, unitriangular_gens(*p, *n)))
        }
        Family::DirectProduct { left, right } => {
            let (pl, lgens) = generators_for(left, caps)?;
            let (pr, rgens) = generators_for(right, caps)?;
            if pl != pr {
                return Err(Error::InvalidSpec(
                    "direct product factors must share p".into(),
                ));
            }
            let dl = lgens.first().map_or(1, |g| g.degree());
            let dr = rgens.first().map_or(1, |g| g.degree());
            let degree = dl + dr;
            let mut gens = Vec::new();
            for g in &lgens {
                let images: Vec<u16> = (0..degree as u16)
                    .map(|i| {
                        if (i as usize) < dl {
                            g.apply(i)
                        } else {
                            i
                        }
                    })
                    .collect();
                gens.push(Perm::from_images(images)?);
            }
            for g in &rgens {
                let images: Vec<u16> = (0..degree as u16)
                    .map(|i| {
                        if (i as usize) < dl {
                            i
                        } else {
                            g.apply(i - dl as u16) + dl as u16
                        }
                    })
                    .collect();
                gens.push(Perm::from_images(images)?);
            }
            Ok((pl, gens))
        }
        Family::FromFile { path } => {
            let g = crate::groupfile::load_group_file(path, caps)?;
            let gens = g.gens().iter().map(|&i| g.element(i).clone()).collect();
            Ok((g.p(), gens))
        }
    }
}

/// Generators I + E_{i,i+1} of UT(n, p) as permutations of the pⁿ column
/// vectors, indexed little-endian (coordinate 0 is the lowest digit).
fn unitriangular_gens(p: u32, n: u32) -> Vec<Perm> {
    let pu = p as usize;
    let nu = n as usize;
    let count = pu.pow(n);
    let mut gens = Vec::new();
    for row in 0..nu - 1 {
        let images: Vec<u16> = (0..count)
            .map(|idx| {
                let mut digits = to_digits(idx, pu, nu);
                digits[row] = (digits[row] + digits[row + 1]) % pu;
                from_digits(&digits, pu) as u16
            })
            .collect();
        gens.push(Perm::from_images(images).expect("matrix action is a permutation"));
    }
    gens
}

fn to_digits(mut x: usize, p: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

fn from_digits(digits: &[usize], p: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// The fixed corpus manifest, filtered to groups of order at most `limit`.
pub fn default_corpus(limit: usize) -> Vec<GroupSpec> {
    let mut specs = Vec::new();
    for p in [3u32, 5] {
        for n in 1..=3 {
            specs.push(GroupSpec::new(
                format!("c{}", (p as u64).pow(n)),
                Family::Cyclic { p, n },
            ));
        }
        for rank in 1..=3 {
            specs.push(GroupSpec::new(
                format!("ea{p}_{rank}"),
                Family::ElemAbelian { p, rank },
            ));
        }
        specs.push(GroupSpec::new(
            format!("heis{}", (p as u64).pow(3)),
            Family::ExtraspecialExpP { p },
        ));
        specs.push(GroupSpec::new(
            format!("m{}", (p as u64).pow(3)),
            Family::ExtraspecialExpP2 { p },
        ));
        specs.push(GroupSpec::new(format!("wr{p}"), Family::WreathCpCp { p }));
        specs.push(GroupSpec::new(
            format!("ut3_{p}"),
            Family::Unitriangular { p, n: 3 },
        ));
        if p == 3 {
            specs.push(GroupSpec::new(
                "ut4_3",
                Family::Unitriangular { p: 3, n: 4 },
            ));
            specs.push(GroupSpec::new(
                "heis27xc3",
                Family::DirectProduct {
                    left: Box::new(GroupSpec::new("heis27", Family::ExtraspecialExpP { p: 3 })),
                    right: Box::new(GroupSpec::new("c3", Family::Cyclic { p: 3, n: 1 })),
                },
            ));
            specs.push(GroupSpec::new(
                "c9xc3",
                Family::DirectProduct {
                    left: Box::new(GroupSpec::new("c9", Family::Cyclic { p: 3, n: 2 })),
                    right: Box::new(GroupSpec::new("c3", Family::Cyclic { p: 3, n: 1 })),
                },
            ));
        }
    }
    specs
        .into_iter()
        .filter(|s| s.predicted_order().is_some_and(|o| o <= limit as u128))
        .collect()
}

/// Looks a selector up in the unfiltered manifest; caps apply at build time,
/// not at name resolution.
pub fn manifest_spec(selector: &str) -> Option<GroupSpec> {
    default_corpus(usize::MAX)
        .into_iter()
        .find(|s| s.name() == selector)
}

/// Resolves a CLI group selector: corpus name first, then file path.
pub fn resolve_group(selector: &str, caps: &Caps) -> Result<Group> {
    if let Some(spec) = manifest_spec(selector) {
        return build(&spec, caps);
    }
    if std::path::Path::new(selector).is_file() {
        return crate::groupfile::load_group_file(selector, caps);
    }
    Err(Error::UnknownGroup(selector.to_string()))
}
