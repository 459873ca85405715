//! Exact arithmetic for the supported carriers: elements, lattices,
//! subgroups, cosets and deterministic enumeration.

mod coset;
mod element;
mod enumerate;
pub mod lattice;
mod subgroup;

pub use coset::Coset;
pub use element::{eval_term, Carrier, GroupElement, Sign, WordItem};
pub use enumerate::{enumerate_ball, SubgroupWalk};
pub(crate) use enumerate::shell_elements;
pub use lattice::{IVec, Lattice};
pub use subgroup::{Index, Subgroup};

/// `[h : k]`, free-function form.
pub fn subgroup_index(h: &Subgroup, k: &Subgroup) -> crate::Result<Index> {
    h.index_of(k)
}

pub fn subgroup_membership(g: &GroupElement, h: &Subgroup) -> crate::Result<bool> {
    h.try_contains(g)
}

pub fn subgroup_intersect(h: &Subgroup, k: &Subgroup) -> crate::Result<Subgroup> {
    h.intersect(k)
}

pub fn conjugate_subgroup(s: &GroupElement, h: &Subgroup) -> crate::Result<Subgroup> {
    h.conjugate_by(s)
}

pub fn coset_canonical(c: &Coset) -> Coset {
    c.canonical()
}

pub fn coset_transversal(h: &Subgroup, k: &Subgroup) -> crate::Result<Vec<GroupElement>> {
    h.transversal(k)
}
