use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::element::{Carrier, GroupElement, Sign};
use super::lattice::{self, IVec, Lattice};
use crate::error::{Error, Result};

/// A subgroup of a [`Carrier`].
///
/// The translation part `L = H ∩ (Z^n, +1)` is a lattice; when the subgroup
/// contains sign `-1` elements it is `L ∪ (r + L, -1)` and `reflection`
/// holds `r` reduced modulo `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    carrier: Carrier,
    lattice: Lattice,
    reflection: Option<IVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl Index {
    pub fn is_finite(&self) -> bool {
        matches!(self, Index::Finite(_))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Index::Finite(m) if m.is_one())
    }

    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Index::Finite(m) => Some(m),
            Index::Infinite => None,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(m) => write!(f, "{m}"),
            Index::Infinite => write!(f, "inf"),
        }
    }
}

impl Subgroup {
    pub fn trivial(carrier: Carrier) -> Self {
        Subgroup { carrier, lattice: Lattice::zero(carrier.dim()), reflection: None }
    }

    /// The whole carrier.
    pub fn full(carrier: Carrier) -> Self {
        let reflection = carrier.has_sign().then(|| vec![BigInt::default(); carrier.dim()]);
        Subgroup { carrier, lattice: Lattice::full(carrier.dim()), reflection }
    }

    /// Pure translation subgroup `{(l, +1) : l ∈ lattice}`.
    pub fn from_lattice(carrier: Carrier, lattice: Lattice) -> Result<Self> {
        if lattice.dim() != carrier.dim() {
            return Err(Error::DimensionMismatch { expected: carrier.dim(), got: lattice.dim() });
        }
        Ok(Subgroup { carrier, lattice, reflection: None })
    }

    /// `span` of translation vectors.
    pub fn span(carrier: Carrier, rows: &[&[i64]]) -> Result<Self> {
        let gens: Vec<IVec> = rows.iter().map(|r| lattice::ivec(r)).collect();
        if let Some(bad) = gens.iter().find(|g| g.len() != carrier.dim()) {
            return Err(Error::DimensionMismatch { expected: carrier.dim(), got: bad.len() });
        }
        Self::from_lattice(carrier, Lattice::span(carrier.dim(), &gens))
    }

    /// Subgroup generated by arbitrary elements.
    pub fn generated(carrier: Carrier, gens: &[GroupElement]) -> Result<Self> {
        if gens.iter().any(|g| g.carrier() != carrier) {
            return Err(Error::MixedCarriers);
        }
        let mut lat_gens: Vec<IVec> = Vec::new();
        let mut refl: Option<IVec> = None;
        for g in gens {
            match g.sign() {
                Sign::Plus => lat_gens.push(g.translation().to_vec()),
                Sign::Minus => match &refl {
                    None => refl = Some(g.translation().to_vec()),
                    Some(r) => lat_gens.push(lattice::sub(g.translation(), r)),
                },
            }
        }
        if let Some(r) = &refl {
            // (r,-1)^2 and closure under conjugation by the reflection
            lat_gens.push(lattice::add(r, &carrier.reflect(r)));
            let flipped: Vec<IVec> = lat_gens.iter().map(|v| carrier.reflect(v)).collect();
            lat_gens.extend(flipped);
        }
        let lattice = Lattice::span(carrier.dim(), &lat_gens);
        let reflection = refl.map(|r| lattice.reduce(&r));
        Ok(Subgroup { carrier, lattice, reflection })
    }

    /// Builds a subgroup from stored fields, rejecting non-canonical or
    /// non-closed data.
    pub fn from_parts(carrier: Carrier, lattice: Lattice, reflection: Option<IVec>) -> Result<Self> {
        if lattice.dim() != carrier.dim() {
            return Err(Error::DimensionMismatch { expected: carrier.dim(), got: lattice.dim() });
        }
        let s = Subgroup { carrier, lattice, reflection };
        s.validate()?;
        Ok(s)
    }

    /// Checks the subgroup axioms on the representation.
    pub fn validate(&self) -> Result<()> {
        let Some(r) = &self.reflection else { return Ok(()) };
        if !self.carrier.has_sign() {
            return Err(Error::Invalid("reflection part on an abelian carrier".into()));
        }
        if r.len() != self.carrier.dim() {
            return Err(Error::DimensionMismatch { expected: self.carrier.dim(), got: r.len() });
        }
        if self.lattice.reduce(r) != *r {
            return Err(Error::Invalid("reflection vector is not reduced".into()));
        }
        let sigma = self.lattice.map(|v| self.carrier.reflect(v));
        if sigma != self.lattice {
            return Err(Error::Invalid("lattice is not invariant under the reflection".into()));
        }
        if !self.lattice.contains(&lattice::add(r, &self.carrier.reflect(r))) {
            return Err(Error::Invalid("square of the reflection leaves the lattice".into()));
        }
        Ok(())
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn reflection(&self) -> Option<&IVec> {
        self.reflection.as_ref()
    }

    pub fn reflection_element(&self) -> Option<GroupElement> {
        self.reflection
            .as_ref()
            .map(|r| GroupElement::raw(self.carrier, r.clone(), Sign::Minus))
    }

    pub fn is_full(&self) -> bool {
        *self == Subgroup::full(self.carrier)
    }

    pub fn is_trivial(&self) -> bool {
        self.lattice.rank() == 0 && self.reflection.is_none()
    }

    /// Generators: the HNF rows, then the reflection element.
    pub fn generators(&self) -> Vec<GroupElement> {
        self.lattice
            .basis()
            .iter()
            .map(|b| GroupElement::raw(self.carrier, b.clone(), Sign::Plus))
            .chain(self.reflection_element())
            .collect()
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.carrier() != self.carrier {
            return Err(Error::MixedCarriers);
        }
        Ok(())
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        debug_assert_eq!(g.carrier(), self.carrier);
        match (g.sign(), &self.reflection) {
            (Sign::Plus, _) => self.lattice.contains(g.translation()),
            (Sign::Minus, None) => false,
            (Sign::Minus, Some(r)) => self.lattice.contains(&lattice::sub(g.translation(), r)),
        }
    }

    pub fn try_contains(&self, g: &GroupElement) -> Result<bool> {
        self.check(g)?;
        Ok(self.contains(g))
    }

    /// `other ⊆ self`.
    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.carrier != other.carrier {
            return Err(Error::MixedCarriers);
        }
        let lattice = self.lattice.intersect(&other.lattice);
        let reflection = match (&self.reflection, &other.reflection) {
            (Some(r1), Some(r2)) => {
                lattice::affine_meet(r1, &self.lattice, r2, &other.lattice).map(|x| lattice.reduce(&x))
            }
            _ => None,
        };
        Ok(Subgroup { carrier: self.carrier, lattice, reflection })
    }

    /// `[self : sub]`.
    pub fn index_of(&self, sub: &Subgroup) -> Result<Index> {
        if self.carrier != sub.carrier {
            return Err(Error::MixedCarriers);
        }
        if !self.contains_subgroup(sub) {
            return Err(Error::NotASubgroup);
        }
        let Some(m) = self.lattice.index_of(&sub.lattice) else { return Ok(Index::Infinite) };
        let factor = match (&self.reflection, &sub.reflection) {
            (Some(_), None) => 2,
            _ => 1,
        };
        Ok(Index::Finite(m * factor))
    }

    /// `s H s⁻¹`.
    pub fn conjugate_by(&self, s: &GroupElement) -> Result<Subgroup> {
        self.check(s)?;
        let c = self.carrier;
        if c.is_abelian() {
            return Ok(self.clone());
        }
        let lattice = match s.sign() {
            Sign::Plus => self.lattice.clone(),
            Sign::Minus => self.lattice.map(|v| c.reflect(v)),
        };
        let reflection = self.reflection.as_ref().map(|r| {
            // (a,δ)(r,-)(a,δ)⁻¹ = (a - σ(a) + σ_δ(r), -)
            let a = s.translation();
            let shifted = lattice::add(&lattice::sub(a, &c.reflect(a)), &c.act(s.sign(), r));
            lattice.reduce(&shifted)
        });
        Ok(Subgroup { carrier: c, lattice, reflection })
    }

    /// Elements of `self` hitting each left `sub`-coset exactly once, as
    /// canonical coset representatives in enumeration order.
    pub fn transversal(&self, sub: &Subgroup) -> Result<Vec<GroupElement>> {
        let idx = self.index_of(sub)?;
        if !idx.is_finite() {
            return Err(Error::InfiniteIndex);
        }
        let lat_reps = self
            .lattice
            .transversal(&sub.lattice)
            .ok_or(Error::InfiniteIndex)?;
        let mut reps: Vec<GroupElement> = lat_reps
            .iter()
            .map(|v| GroupElement::raw(self.carrier, v.clone(), Sign::Plus))
            .collect();
        if let (Some(r), None) = (&self.reflection, &sub.reflection) {
            let refl = GroupElement::raw(self.carrier, r.clone(), Sign::Minus);
            let extra: Vec<GroupElement> = reps.iter().map(|t| refl.mul(t)).collect();
            reps.extend(extra);
        }
        let mut out: Vec<GroupElement> = reps
            .into_iter()
            .map(|t| super::coset::Coset::new(sub.clone(), t).expect("same carrier").rep().clone())
            .collect();
        out.sort_by(|a, b| a.ball_key().cmp(&b.ball_key()));
        debug_assert_eq!(idx.finite().and_then(|m| m.to_usize()), Some(out.len()));
        Ok(out)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span [")?;
        for (i, row) in self.lattice.basis().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")?;
        if let Some(r) = &self.reflection {
            write!(f, " refl (")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
