use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{Coset, GroupElement, Index, Subgroup};

use super::expr::SetExpr;
use super::relring::to_relring_normal_form;

/// `e0 \ ∪ removals`, each removal a subcoset of infinite index in `e0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OmegaPiece {
    pub e0: Coset,
    pub removals: Vec<Coset>,
}

impl OmegaPiece {
    pub fn to_expr(&self) -> SetExpr {
        let e0 = SetExpr::Atom(self.e0.clone());
        if self.removals.is_empty() {
            e0
        } else {
            SetExpr::diff(e0, SetExpr::Union(self.removals.iter().cloned().map(SetExpr::Atom).collect()))
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.e0.contains(g) && !self.removals.iter().any(|r| r.contains(g))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OmegaNormalForm {
    pub pieces: Vec<OmegaPiece>,
    /// Refined generating family; every piece subgroup is a member.
    pub family: Vec<Subgroup>,
}

impl OmegaNormalForm {
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn to_expr(&self) -> SetExpr {
        SetExpr::union(self.pieces.iter().map(OmegaPiece::to_expr).collect())
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.pieces.iter().any(|p| p.contains(g))
    }

    /// Subgroups occurring in pieces, in order of first use.
    pub fn used_subgroups(&self) -> Vec<Subgroup> {
        let mut out = Vec::new();
        for p in &self.pieces {
            for c in std::iter::once(&p.e0).chain(&p.removals) {
                push_unique(&mut out, c.subgroup().clone());
            }
        }
        out
    }
}

fn push_unique<T: PartialEq>(v: &mut Vec<T>, x: T) {
    if !v.contains(&x) {
        v.push(x);
    }
}

/// Smallest intersection-closed family containing `family`, original members first.
pub fn intersection_closure(family: &[Subgroup]) -> Result<Vec<Subgroup>> {
    let mut out: Vec<Subgroup> = Vec::new();
    for h in family {
        push_unique(&mut out, h.clone());
    }
    let mut i = 0;
    while i < out.len() {
        for j in 0..i {
            let m = out[i].intersect(&out[j])?;
            push_unique(&mut out, m);
        }
        i += 1;
    }
    Ok(out)
}

/// `[h : h ∩ k]` is finite.
fn finite_in(h: &Subgroup, k: &Subgroup) -> Result<bool> {
    Ok(h.index_of(&h.intersect(k)?)?.is_finite())
}

/// Intersection of every member of `family` that meets `h` with finite index.
fn commensurable_core(h: &Subgroup, family: &[Subgroup]) -> Result<Subgroup> {
    let mut k = h.clone();
    for f in family {
        if finite_in(h, f)? {
            k = k.intersect(f)?;
        }
    }
    Ok(k)
}

/// Covering of each input subgroup by cosets of refined members.
pub type Coverings = Vec<(Subgroup, Vec<Coset>)>;

/// Refines `family` until `[K_i : K_i ∩ K_j] ∈ {1, ∞}` for every pair, and
/// covers each input member by cosets of the refined members.
pub fn refine_family(family: &[Subgroup]) -> Result<(Vec<Subgroup>, Coverings)> {
    let (refined, target) = refine_map(family)?;
    let mut coverings = Vec::new();
    for h in family {
        let k = &target[h];
        let cosets = h
            .transversal(k)?
            .into_iter()
            .map(|t| Coset::new(k.clone(), t))
            .collect::<Result<Vec<_>>>()?;
        coverings.push((h.clone(), cosets));
    }
    Ok((refined, coverings))
}

fn refine_map(family: &[Subgroup]) -> Result<(Vec<Subgroup>, HashMap<Subgroup, Subgroup>)> {
    let mut target: HashMap<Subgroup, Subgroup> = family.iter().map(|h| (h.clone(), h.clone())).collect();
    let mut current: Vec<Subgroup> = Vec::new();
    for h in family {
        push_unique(&mut current, h.clone());
    }
    for _ in 0..=family.len() + 1 {
        let mut next = Vec::new();
        let mut step = HashMap::new();
        for k in &current {
            let core = commensurable_core(k, &current)?;
            step.insert(k.clone(), core.clone());
            push_unique(&mut next, core);
        }
        for v in target.values_mut() {
            *v = step[v].clone();
        }
        if next == current {
            check_refined(&current)?;
            return Ok((current, target));
        }
        current = next;
    }
    Err(Error::Internal("family refinement did not stabilise".into()))
}

fn check_refined(family: &[Subgroup]) -> Result<()> {
    for a in family {
        for b in family {
            let idx = a.index_of(&a.intersect(b)?)?;
            if !(idx.is_one() || idx == Index::Infinite) {
                return Err(Error::Internal("refined family has a finite index > 1".into()));
            }
        }
    }
    Ok(())
}

struct Refiner {
    family: Vec<Subgroup>,
    target: HashMap<Subgroup, Subgroup>,
    extra: Vec<Subgroup>,
}

impl Refiner {
    fn target_of(&mut self, h: &Subgroup) -> Result<Subgroup> {
        if let Some(k) = self.target.get(h) {
            return Ok(k.clone());
        }
        let k = commensurable_core(h, &self.family)?;
        self.target.insert(h.clone(), k.clone());
        Ok(k)
    }

    /// Splits `c` into cosets of its refined subgroup.
    fn cover(&mut self, c: &Coset) -> Result<Vec<Coset>> {
        let k = self.target_of(c.subgroup())?;
        if !self.family.contains(&k) {
            push_unique(&mut self.extra, k.clone());
        }
        c.subgroup()
            .transversal(&k)?
            .into_iter()
            .map(|t| Coset::new(k.clone(), c.rep().mul(&t)))
            .collect()
    }

    /// Appends the pieces of `e0 \ ∪ negs` to `out`.
    fn emit(&mut self, e0: Coset, negs: &[Coset], out: &mut Vec<OmegaPiece>, depth: usize) -> Result<()> {
        if depth > 64 {
            return Err(Error::Internal("normal form splitting did not terminate".into()));
        }
        let mut removals: Vec<Coset> = Vec::new();
        for n in negs {
            let Some(m) = e0.intersect(n)? else { continue };
            for r in self.cover(&m)? {
                if r.subgroup() == e0.subgroup() {
                    // r is a coset of the same subgroup inside e0, hence e0 itself
                    return Ok(());
                }
                push_unique(&mut removals, r);
            }
        }
        let finite = removals
            .iter()
            .position(|r| e0.subgroup().index_of(r.subgroup()).map(|i| i.is_finite()).unwrap_or(false));
        if let Some(i) = finite {
            let sub = removals[i].subgroup().clone();
            push_unique(&mut self.extra, sub.clone());
            for t in e0.subgroup().transversal(&sub)? {
                let part = Coset::new(sub.clone(), e0.rep().mul(&t))?;
                self.emit(part, &removals, out, depth + 1)?;
            }
            return Ok(());
        }
        let mut kept: Vec<Coset> = Vec::new();
        for r in removals {
            if kept.iter().any(|k| r.is_subset_of(k)) {
                continue;
            }
            kept.retain(|k| !k.is_subset_of(&r));
            kept.push(r);
        }
        out.push(OmegaPiece { e0, removals: kept });
        Ok(())
    }
}

/// Disjoint pieces `E0 \ ∪ E_j` with every `E_j` of infinite index in `E0`.
pub fn to_omega_normal_form(expr: &SetExpr) -> Result<OmegaNormalForm> {
    let terms = to_relring_normal_form(expr)?;
    let mut base = Vec::new();
    for t in &terms {
        for c in t.positives.iter().chain(&t.negatives) {
            push_unique(&mut base, c.subgroup().clone());
        }
    }
    let closed = intersection_closure(&base)?;
    let (family, target) = refine_map(&closed)?;
    let mut r = Refiner { family, target, extra: Vec::new() };
    let mut pieces = Vec::new();
    for t in &terms {
        for e0 in r.cover(t.positive())? {
            r.emit(e0, &t.negatives, &mut pieces, 0)?;
        }
    }
    let mut family = r.family;
    for e in r.extra {
        push_unique(&mut family, e);
    }
    Ok(OmegaNormalForm { pieces, family })
}

pub fn is_empty(expr: &SetExpr) -> Result<bool> {
    Ok(to_omega_normal_form(expr)?.is_empty())
}

pub fn sets_equal(a: &SetExpr, b: &SetExpr) -> Result<bool> {
    if let (Some(x), Some(y)) = (a.carrier(), b.carrier()) {
        if x != y {
            return Err(Error::MixedCarriers);
        }
    }
    Ok(is_empty(&SetExpr::diff(a.clone(), b.clone()))? && is_empty(&SetExpr::diff(b.clone(), a.clone()))?)
}

/// Smallest coset containing the set.
pub fn affine_hull(expr: &SetExpr) -> Result<Coset> {
    let nf = to_omega_normal_form(expr)?;
    let first = nf.pieces.first().ok_or(Error::EmptySet)?;
    let p = first.e0.rep().clone();
    let pinv = p.inverse();
    let mut gens = Vec::new();
    for piece in &nf.pieces {
        gens.push(pinv.mul(piece.e0.rep()));
        gens.extend(piece.e0.subgroup().generators());
    }
    let h = Subgroup::generated(p.carrier(), &gens)?;
    Coset::new(h, p)
}
