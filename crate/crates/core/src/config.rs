/// Resource caps. Exceeding any of them yields a typed error, never silent
/// truncation.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Largest group the element enumerator will materialize.
    pub max_order: usize,
    /// Largest group for full normal-subgroup enumeration (also the oracle
    /// cap for the admissible-set fixpoint).
    pub normal_lattice_cap: usize,
    /// Largest group for full subgroup enumeration.
    pub subgroup_lattice_cap: usize,
    /// Node budget for the maximal elementary-abelian search.
    pub search_budget: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: 20_000,
            normal_lattice_cap: 729,
            subgroup_lattice_cap: 243,
            search_budget: 10_000_000,
        }
    }
}
