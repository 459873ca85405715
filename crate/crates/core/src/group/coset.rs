use std::fmt;

use super::element::{Carrier, GroupElement, Sign};
use super::lattice::{self, IVec, Lattice};
use super::subgroup::{Index, Subgroup};
use crate::error::{Error, Result};

/// A left coset `rep · subgroup` with a canonical representative, so that
/// value equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coset {
    subgroup: Subgroup,
    rep: GroupElement,
}

/// Canonical representative of `rep · subgroup`.
fn canonical_rep(h: &Subgroup, rep: &GroupElement) -> GroupElement {
    let c = h.carrier();
    match (h.reflection(), rep.sign()) {
        (None, Sign::Plus) => {
            GroupElement::raw(c, h.lattice().reduce(rep.translation()), Sign::Plus)
        }
        (None, Sign::Minus) => {
            // translations of this coset form v + σ(L); reduce σ(v) modulo L
            let folded = h.lattice().reduce(&c.reflect(rep.translation()));
            GroupElement::raw(c, c.reflect(&folded), Sign::Minus)
        }
        (Some(_), Sign::Plus) => {
            GroupElement::raw(c, h.lattice().reduce(rep.translation()), Sign::Plus)
        }
        (Some(r), Sign::Minus) => {
            // fold by the reflection: (v,-)(r,-) = (v + σ(r), +)
            let v = lattice::add(rep.translation(), &c.reflect(r));
            GroupElement::raw(c, h.lattice().reduce(&v), Sign::Plus)
        }
    }
}

impl Coset {
    pub fn new(subgroup: Subgroup, rep: GroupElement) -> Result<Self> {
        if subgroup.carrier() != rep.carrier() {
            return Err(Error::MixedCarriers);
        }
        let rep = canonical_rep(&subgroup, &rep);
        Ok(Coset { subgroup, rep })
    }

    /// The subgroup itself, as a coset at the identity.
    pub fn of_subgroup(subgroup: Subgroup) -> Self {
        let rep = subgroup.carrier().identity();
        Coset { subgroup, rep }
    }

    pub fn point(g: GroupElement) -> Self {
        let h = Subgroup::trivial(g.carrier());
        Coset { subgroup: h, rep: g }
    }

    pub fn full(carrier: Carrier) -> Self {
        Self::of_subgroup(Subgroup::full(carrier))
    }

    /// Accepts stored fields only when the representative is already canonical.
    pub fn from_parts(subgroup: Subgroup, rep: GroupElement) -> Result<Self> {
        let c = Coset::new(subgroup, rep.clone())?;
        if c.rep != rep {
            return Err(Error::Invalid("coset representative is not canonical".into()));
        }
        Ok(c)
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn rep(&self) -> &GroupElement {
        &self.rep
    }

    pub fn carrier(&self) -> Carrier {
        self.subgroup.carrier()
    }

    /// Re-canonicalises; idempotent on values built through [`Coset::new`].
    pub fn canonical(&self) -> Coset {
        Coset { subgroup: self.subgroup.clone(), rep: canonical_rep(&self.subgroup, &self.rep) }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        debug_assert_eq!(g.carrier(), self.carrier());
        let c = self.carrier();
        let d = lattice::sub(g.translation(), self.rep.translation());
        let l = self.subgroup.lattice();
        match (self.subgroup.reflection(), self.rep.sign(), g.sign()) {
            (None, s, t) if s == t => match s {
                Sign::Plus => l.contains(&d),
                Sign::Minus => l.contains(&c.reflect(&d)),
            },
            (None, _, _) => false,
            (Some(_), _, Sign::Plus) => l.contains(&d),
            (Some(r), _, Sign::Minus) => l.contains(&lattice::sub(&d, r)),
        }
    }

    pub fn try_contains(&self, g: &GroupElement) -> Result<bool> {
        if g.carrier() != self.carrier() {
            return Err(Error::MixedCarriers);
        }
        Ok(self.contains(g))
    }

    /// Translation parts of the points with sign `+1` and `-1`, each as an
    /// affine lattice `base + L`.
    fn sign_parts(&self) -> [Option<(IVec, Lattice)>; 2] {
        let c = self.carrier();
        let l = self.subgroup.lattice();
        let v = self.rep.translation();
        let same = Some((v.to_vec(), if self.rep.sign() == Sign::Plus { l.clone() } else { l.map(|x| c.reflect(x)) }));
        let other = self.subgroup.reflection().map(|r| {
            // rep sign is +1 whenever a reflection is present
            (lattice::add(v, r), l.clone())
        });
        match self.rep.sign() {
            Sign::Plus => [same, other],
            Sign::Minus => [other, same],
        }
    }

    /// `self ∩ other`: empty or a coset of the intersection subgroup.
    pub fn intersect(&self, other: &Coset) -> Result<Option<Coset>> {
        if self.carrier() != other.carrier() {
            return Err(Error::MixedCarriers);
        }
        let h = self.subgroup.intersect(&other.subgroup)?;
        let (p, q) = (self.sign_parts(), other.sign_parts());
        for (i, sign) in [Sign::Plus, Sign::Minus].into_iter().enumerate() {
            if let (Some((a, la)), Some((b, lb))) = (&p[i], &q[i]) {
                if let Some(x) = lattice::affine_meet(a, la, b, lb) {
                    let g = GroupElement::raw(self.carrier(), x, sign);
                    return Ok(Some(Coset::new(h, g)?));
                }
            }
        }
        Ok(None)
    }

    /// `s · self`.
    pub fn left_translate(&self, s: &GroupElement) -> Result<Coset> {
        Coset::new(self.subgroup.clone(), s.try_mul(&self.rep)?)
    }

    /// `self · t = (rep·t) (t⁻¹ H t)`.
    pub fn right_translate(&self, t: &GroupElement) -> Result<Coset> {
        let conj = self.subgroup.conjugate_by(&t.inverse())?;
        Coset::new(conj, self.rep.try_mul(t)?)
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Coset) -> bool {
        other.subgroup.contains_subgroup(&self.subgroup) && other.contains(&self.rep)
    }

    /// Index of `self`'s subgroup inside `other`'s, for `self ⊆ other`.
    pub fn index_in(&self, other: &Coset) -> Result<Index> {
        if !self.is_subset_of(other) {
            return Err(Error::NotASubgroup);
        }
        other.subgroup.index_of(&self.subgroup)
    }
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}", self.subgroup, self.rep)
    }
}
