//! Affine and piecewise-affine maps `Y ⊆ H → G` and their graphs in `H × G`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::lattice::{echelon, IVec, Lattice};
use crate::group::{Carrier, Coset, GroupElement, Sign, Subgroup};
use crate::setalg::{is_empty, to_omega_normal_form, OmegaPiece, SetExpr};

/// `(h, g) ↦` the corresponding element of `H × G`.
fn pair(p: Carrier, h: &GroupElement, g: &GroupElement) -> GroupElement {
    let mut v: IVec = h.translation().to_vec();
    v.extend_from_slice(g.translation());
    let sign = if h.sign() == Sign::Minus { Sign::Minus } else { g.sign() };
    GroupElement::new(p, v, sign).expect("product element")
}

/// Splits an element of `H × G` into its two coordinates.
fn split(h: Carrier, g: Carrier, x: &GroupElement) -> (GroupElement, GroupElement) {
    let a = h.dim();
    let t = x.translation();
    let (hs, gs) = if h.has_sign() { (x.sign(), Sign::Plus) } else { (Sign::Plus, x.sign()) };
    (
        GroupElement::new(h, t[..a].to_vec(), hs).expect("source part"),
        GroupElement::new(g, t[a..].to_vec(), gs).expect("target part"),
    )
}

/// `α(s0·k) = g0·φ(k)` on the coset `domain = s0·K`, with `φ` given on the
/// HNF basis of `K` (and on its reflection, when `K` has one).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffinePiece {
    domain: Coset,
    target: Carrier,
    s0: GroupElement,
    g0: GroupElement,
    images: Vec<GroupElement>,
    reflection_image: Option<GroupElement>,
}

impl AffinePiece {
    pub fn new(
        domain: Coset,
        target: Carrier,
        s0: GroupElement,
        g0: GroupElement,
        images: Vec<GroupElement>,
        reflection_image: Option<GroupElement>,
    ) -> Result<Self> {
        let piece = AffinePiece { domain, target, s0, g0, images, reflection_image };
        piece.validate()?;
        Ok(piece)
    }

    /// `α(x) = offset · (x·A, +)`, where row `i` of `A` is the image of the
    /// `i`-th source coordinate.
    pub fn from_linear(domain: Coset, target: Carrier, matrix: &[IVec], offset: GroupElement) -> Result<Self> {
        let a = domain.carrier().dim();
        if matrix.len() != a || matrix.iter().any(|r| r.len() != target.dim()) {
            return Err(Error::DimensionMismatch { expected: a, got: matrix.len() });
        }
        if offset.carrier() != target {
            return Err(Error::MixedCarriers);
        }
        let lin = |x: &[BigInt]| -> GroupElement {
            let mut v = vec![BigInt::from(0); target.dim()];
            for (xi, row) in x.iter().zip(matrix) {
                for (o, r) in v.iter_mut().zip(row) {
                    *o += xi * r;
                }
            }
            GroupElement::new(target, v, Sign::Plus).expect("image")
        };
        let alpha = |h: &GroupElement| offset.mul(&lin(h.translation()));
        let s0 = domain.rep().clone();
        let g0 = alpha(&s0);
        let g0inv = g0.inverse();
        let k = domain.subgroup();
        let images = k
            .lattice()
            .basis()
            .iter()
            .map(|b| g0inv.mul(&alpha(&s0.mul(&GroupElement::new(k.carrier(), b.clone(), Sign::Plus).unwrap()))))
            .collect();
        let reflection_image = k.reflection_element().map(|r| g0inv.mul(&alpha(&s0.mul(&r))));
        Self::new(domain, target, s0, g0, images, reflection_image)
    }

    pub fn domain(&self) -> &Coset {
        &self.domain
    }

    pub fn target(&self) -> Carrier {
        self.target
    }

    pub fn base(&self) -> (&GroupElement, &GroupElement) {
        (&self.s0, &self.g0)
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn reflection_image(&self) -> Option<&GroupElement> {
        self.reflection_image.as_ref()
    }

    fn validate(&self) -> Result<()> {
        let k = self.domain.subgroup();
        if !self.domain.contains(&self.s0) {
            return Err(Error::Invalid("base point outside the domain".into()));
        }
        if self.images.len() != k.lattice().rank() || k.reflection().is_some() != self.reflection_image.is_some() {
            return Err(Error::Invalid("homomorphism data does not match the domain subgroup".into()));
        }
        let imgs = self.images.iter().chain(self.reflection_image.iter());
        if std::iter::once(&self.g0).chain(imgs).any(|g| g.carrier() != self.target) {
            return Err(Error::MixedCarriers);
        }
        for (i, x) in self.images.iter().enumerate() {
            for y in &self.images[..i] {
                if x.mul(y) != y.mul(x) {
                    return Err(Error::Invalid("images of lattice generators do not commute".into()));
                }
            }
        }
        if let (Some(r), Some(rho)) = (k.reflection_element(), &self.reflection_image) {
            // (r,-)^2 ∈ L and (r,-)(l,+)(r,-)^{-1} = (σl,+)
            if self.hom(&r.mul(&r))? != rho.mul(rho) {
                return Err(Error::Invalid("reflection image does not square correctly".into()));
            }
            for b in k.lattice().basis() {
                let l = GroupElement::new(k.carrier(), b.clone(), Sign::Plus)?;
                let conj = r.mul(&l).mul(&r.inverse());
                if self.hom(&conj)? != rho.mul(&self.hom(&l)?).mul(&rho.inverse()) {
                    return Err(Error::Invalid("reflection image does not normalise the lattice images".into()));
                }
            }
        }
        Ok(())
    }

    /// `φ(k)` for `k` in the domain subgroup.
    pub fn hom(&self, k: &GroupElement) -> Result<GroupElement> {
        let sub = self.domain.subgroup();
        let (lattice_part, refl) = match k.sign() {
            Sign::Plus => (k.translation().to_vec(), None),
            Sign::Minus => {
                let r = sub.reflection().ok_or(Error::NotASubgroup)?;
                // (r + l, -) = (l, +)(r, -)
                (crate::group::lattice::sub(k.translation(), r), self.reflection_image.clone())
            }
        };
        let coords = sub.lattice().coords(&lattice_part).ok_or(Error::NotASubgroup)?;
        let mut out = self.target.identity();
        for (c, img) in coords.iter().zip(&self.images) {
            out = out.mul(&img.pow(c));
        }
        Ok(match refl {
            Some(rho) => out.mul(&rho),
            None => out,
        })
    }

    /// `α(h)`, or `None` off the domain.
    pub fn apply(&self, h: &GroupElement) -> Option<GroupElement> {
        if h.carrier() != self.domain.carrier() || !self.domain.contains(h) {
            return None;
        }
        Some(self.g0.mul(&self.hom(&self.s0.inverse().mul(h)).ok()?))
    }

    /// Product carrier `H × G` holding the graph.
    pub fn graph_carrier(&self) -> Result<Carrier> {
        self.domain.carrier().product(&self.target)
    }

    /// `{(k, φ(k)) : k ∈ sub}` for `sub` inside the domain subgroup.
    fn graph_subgroup(&self, sub: &Subgroup) -> Result<Subgroup> {
        let p = self.graph_carrier()?;
        let gens = sub
            .generators()
            .iter()
            .map(|k| Ok(pair(p, k, &self.hom(k)?)))
            .collect::<Result<Vec<_>>>()?;
        Subgroup::generated(p, &gens)
    }

    /// Graph of `α` restricted to a subcoset of the domain.
    pub fn graph_coset(&self, c: &Coset) -> Result<Coset> {
        if !c.is_subset_of(&self.domain) {
            return Err(Error::Invalid(format!("{c} is not inside the domain {}", self.domain)));
        }
        let p = self.graph_carrier()?;
        let rep = pair(p, c.rep(), &self.apply(c.rep()).expect("rep in domain"));
        Coset::new(self.graph_subgroup(c.subgroup())?, rep)
    }
}

/// Disjoint pieces `Y_i ⊆ domain_i` with an affine rule on each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseAffineMap {
    source: Carrier,
    target: Carrier,
    pieces: Vec<(OmegaPiece, AffinePiece)>,
}

impl PiecewiseAffineMap {
    pub fn new(source: Carrier, target: Carrier, pieces: Vec<(OmegaPiece, AffinePiece)>) -> Result<Self> {
        for (set, map) in &pieces {
            if map.domain.carrier() != source || map.target != target || set.e0.carrier() != source {
                return Err(Error::MixedCarriers);
            }
            if !set.e0.is_subset_of(&map.domain) {
                return Err(Error::Invalid("piece set is not inside its affine domain".into()));
            }
            if set.removals.iter().any(|r| !r.is_subset_of(&set.e0)) {
                return Err(Error::Invalid("removal is not a subcoset of the piece".into()));
            }
        }
        for (i, (a, _)) in pieces.iter().enumerate() {
            for (b, _) in &pieces[..i] {
                if !is_empty(&SetExpr::Intersect(vec![a.to_expr(), b.to_expr()]))? {
                    return Err(Error::Invalid("piece sets overlap".into()));
                }
            }
        }
        source.product(&target)?;
        Ok(PiecewiseAffineMap { source, target, pieces })
    }

    pub fn source(&self) -> Carrier {
        self.source
    }

    pub fn target(&self) -> Carrier {
        self.target
    }

    pub fn pieces(&self) -> &[(OmegaPiece, AffinePiece)] {
        &self.pieces
    }

    /// The set `Y` on which the map is defined.
    pub fn domain_expr(&self) -> SetExpr {
        SetExpr::Union(self.pieces.iter().map(|(s, _)| s.to_expr()).collect())
    }
}

/// Value at `h`, or `None` outside the domain.
pub fn eval_pw_affine(m: &PiecewiseAffineMap, h: &GroupElement) -> Option<GroupElement> {
    m.pieces.iter().find(|(set, _)| set.contains(h)).and_then(|(_, map)| map.apply(h))
}

/// `{(y, α(y)) : y ∈ Y}` as an expression over `H × G`.
pub fn graph_of(m: &PiecewiseAffineMap) -> Result<SetExpr> {
    let mut parts = Vec::new();
    for (set, map) in &m.pieces {
        let e0 = SetExpr::Atom(map.graph_coset(&set.e0)?);
        if set.removals.is_empty() {
            parts.push(e0);
        } else {
            let removals = set
                .removals
                .iter()
                .map(|r| Ok(SetExpr::Atom(map.graph_coset(r)?)))
                .collect::<Result<Vec<_>>>()?;
            parts.push(SetExpr::diff(e0, SetExpr::Union(removals)));
        }
    }
    Ok(SetExpr::union(parts))
}

/// `{e_H} × G` inside `H × G`.
fn vertical(p: Carrier, source: Carrier, target: Carrier) -> Result<Subgroup> {
    let mut gens = Vec::new();
    for i in 0..target.dim() {
        let mut v = vec![BigInt::from(0); p.dim()];
        v[source.dim() + i] = BigInt::from(1);
        gens.push(GroupElement::new(p, v, Sign::Plus)?);
    }
    if target.has_sign() {
        gens.push(GroupElement::new(p, vec![BigInt::from(0); p.dim()], Sign::Minus)?);
    }
    Subgroup::generated(p, &gens)
}

/// Element of the graph lattice whose source coordinates are `b`, if any.
fn lift(l: &Lattice, a: usize, b: &[BigInt]) -> Option<IVec> {
    let rows = l.basis();
    let projected: Vec<IVec> = rows.iter().map(|r| r[..a].to_vec()).collect();
    let ech = echelon(&projected, a);
    let image = Lattice::from_hnf(a, ech.rows.clone())?;
    let y = image.coords(b)?;
    let mut out = vec![BigInt::from(0); l.dim()];
    for (yj, u) in y.iter().zip(&ech.transform) {
        for (ui, row) in u.iter().zip(rows) {
            let c = yj * ui;
            for (o, x) in out.iter_mut().zip(row) {
                *o += &c * x;
            }
        }
    }
    Some(out)
}

/// The affine piece whose graph is exactly `f`.
pub fn affine_from_graph_coset(f: &Coset, source: Carrier, target: Carrier) -> Result<AffinePiece> {
    let p = source.product(&target)?;
    if f.carrier() != p {
        return Err(Error::MixedCarriers);
    }
    let lam = f.subgroup();
    if !lam.intersect(&vertical(p, source, target)?)?.is_trivial() {
        return Err(Error::NotAGraph(format!("{lam} contains a vertical direction")));
    }
    let a = source.dim();
    let proj: Vec<GroupElement> = lam.generators().iter().map(|g| split(source, target, g).0).collect();
    let dom = Subgroup::generated(source, &proj)?;
    let (s0, g0) = split(source, target, f.rep());
    let domain = Coset::new(dom.clone(), s0.clone())?;

    let preimage = |k: &GroupElement| -> Result<GroupElement> {
        // graph elements over a translation of H: (l,+) or, when G carries
        // the sign, (r + l, -)
        let mut candidates = vec![(k.translation().to_vec(), Sign::Plus, None)];
        if let (Some(r), true) = (lam.reflection(), target.has_sign() && k.sign() == Sign::Plus) {
            candidates.push((crate::group::lattice::sub(k.translation(), &r[..a]), Sign::Minus, Some(r)));
        }
        if source.has_sign() && k.sign() == Sign::Minus {
            let r = lam.reflection().ok_or_else(|| Error::NotAGraph("reflection has no lift".into()))?;
            candidates = vec![(crate::group::lattice::sub(k.translation(), &r[..a]), Sign::Minus, Some(r))];
        }
        for (want, sign, r) in candidates {
            if let Some(l) = lift(lam.lattice(), a, &want) {
                let t = match r {
                    Some(r) => crate::group::lattice::add(&l, r),
                    None => l,
                };
                let x = GroupElement::new(p, t, sign)?;
                return Ok(split(source, target, &x).1);
            }
        }
        Err(Error::Internal("graph projection has no preimage".into()))
    };
    let images = dom
        .lattice()
        .basis()
        .iter()
        .map(|b| preimage(&GroupElement::new(source, b.clone(), Sign::Plus)?))
        .collect::<Result<Vec<_>>>()?;
    let reflection_image = dom.reflection_element().map(|r| preimage(&r)).transpose()?;
    AffinePiece::new(domain, target, s0, g0, images, reflection_image)
}

/// Recovers a piecewise-affine map from an expression for its graph.
pub fn pw_affine_from_graph(gamma: &SetExpr, source: Carrier, target: Carrier) -> Result<PiecewiseAffineMap> {
    let p = source.product(&target)?;
    gamma.check_carrier(p)?;
    let nf = to_omega_normal_form(gamma)?;
    let mut pieces = Vec::new();
    for piece in &nf.pieces {
        let map = affine_from_graph_coset(&piece.e0, source, target)?;
        let removals = piece
            .removals
            .iter()
            .map(|r| Ok(affine_from_graph_coset(r, source, target)?.domain.clone()))
            .collect::<Result<Vec<_>>>()?;
        pieces.push((OmegaPiece { e0: map.domain.clone(), removals }, map));
    }
    for (i, (a, _)) in pieces.iter().enumerate() {
        for (b, _) in &pieces[..i] {
            if !is_empty(&SetExpr::Intersect(vec![a.to_expr(), b.to_expr()]))? {
                return Err(Error::NotAGraph("two pieces share a source point".into()));
            }
        }
    }
    PiecewiseAffineMap::new(source, target, pieces)
}
