//! Covering arguments made constructive: points outside finitely many cosets
//! of infinite index, and translate lists whose intersections vanish.

use crate::error::{Error, Result};
use crate::group::{shell_elements, Coset, GroupElement, Subgroup, SubgroupWalk};
use crate::setalg::{is_empty, right_translate, OmegaPiece, SetExpr};

/// Cosets inside an ambient subgroup, each of infinite index there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetList {
    cosets: Vec<Coset>,
    ambient: Subgroup,
}

impl CosetList {
    pub fn new(cosets: Vec<Coset>, ambient: Subgroup) -> Result<Self> {
        if cosets.is_empty() {
            return Err(Error::Invalid("coset list is empty".into()));
        }
        Self::unchecked_len(cosets, ambient)
    }

    fn unchecked_len(cosets: Vec<Coset>, ambient: Subgroup) -> Result<Self> {
        for c in &cosets {
            if c.carrier() != ambient.carrier() {
                return Err(Error::MixedCarriers);
            }
            let meet = ambient.intersect(c.subgroup())?;
            if ambient.index_of(&meet)?.is_finite() {
                return Err(Error::Invalid(format!("coset {c} has finite index in the ambient subgroup")));
            }
        }
        Ok(CosetList { cosets, ambient })
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn ambient(&self) -> &Subgroup {
        &self.ambient
    }

    pub fn to_expr(&self) -> SetExpr {
        SetExpr::Union(self.cosets.iter().cloned().map(SetExpr::Atom).collect())
    }
}

fn first_outside(ambient: &Subgroup, cosets: &[Coset]) -> GroupElement {
    SubgroupWalk::new(ambient.clone())
        .find(|g| !cosets.iter().any(|c| c.contains(g)))
        .expect("a finite union of cosets of infinite index cannot cover the ambient subgroup")
}

/// First element of the ambient subgroup, in its coordinate order, outside
/// every listed coset.
pub fn witness_outside(list: &CosetList) -> GroupElement {
    first_outside(&list.ambient, &list.cosets)
}

/// First point of a piece in the coordinate order of its coset.
pub fn piece_witness(piece: &OmegaPiece) -> Result<GroupElement> {
    let rep = piece.e0.rep();
    let shifted = piece
        .removals
        .iter()
        .map(|r| r.left_translate(&rep.inverse()))
        .collect::<Result<Vec<_>>>()?;
    let list = CosetList::unchecked_len(shifted, piece.e0.subgroup().clone())?;
    Ok(rep.mul(&witness_outside(&list)))
}

fn intersection_of_translates(list: &CosetList, ts: &[GroupElement], left: bool) -> Result<SetExpr> {
    let c = list.to_expr();
    let parts = ts
        .iter()
        .map(|t| {
            if left {
                SetExpr::LTranslate(t.clone(), Box::new(c.clone())).push_translates()
            } else {
                right_translate(&c, t)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SetExpr::Intersect(parts))
}

/// `t_1 = e, t_2, …` in the ambient subgroup with `∩ t_i C` empty, where `C`
/// is the union of the list. The cosets must lie inside the ambient subgroup.
pub fn separate_left(list: &CosetList) -> Result<Vec<GroupElement>> {
    if list.cosets.iter().any(|c| !list.ambient.contains(c.rep()) || !list.ambient.contains_subgroup(c.subgroup())) {
        return Err(Error::Invalid("left separation needs cosets inside the ambient subgroup".into()));
    }
    // s_j H s_j⁻¹ for every coset s_j H
    let conj = list
        .cosets
        .iter()
        .map(|c| c.subgroup().conjugate_by(c.rep()))
        .collect::<Result<Vec<_>>>()?;
    let mut ts = vec![list.ambient.carrier().identity()];
    let limit = list.cosets.len() + 1;
    while !is_empty(&intersection_of_translates(list, &ts, true)?)? {
        if ts.len() >= limit {
            return Err(Error::Internal("left separation exceeded its bound".into()));
        }
        let mut obstructions = Vec::new();
        for t in &ts {
            for h in &conj {
                obstructions.push(Coset::new(h.clone(), t.clone())?);
            }
        }
        ts.push(first_outside(&list.ambient, &obstructions));
    }
    Ok(ts)
}

/// `t_i` in the ambient subgroup `H` with `∩ C t_i` empty.
pub fn separate_right(list: &CosetList) -> Result<Vec<GroupElement>> {
    let h = &list.ambient;
    let meets = list
        .cosets
        .iter()
        .map(|c| h.intersect(c.subgroup()))
        .collect::<Result<Vec<_>>>()?;
    let mut ts = vec![h.carrier().identity()];
    let limit = list.cosets.len() + 1;
    while !is_empty(&intersection_of_translates(list, &ts, false)?)? {
        if ts.len() >= limit {
            return Err(Error::Internal("right separation exceeded its bound".into()));
        }
        // (H ∩ H_k) t_i = t_i (t_i⁻¹ (H ∩ H_k) t_i)
        let mut obstructions = Vec::new();
        for t in &ts {
            let tinv = t.inverse();
            for m in &meets {
                obstructions.push(Coset::new(m.conjugate_by(&tinv)?, t.clone())?);
            }
        }
        ts.push(first_outside(h, &obstructions));
    }
    Ok(ts)
}

/// `N` points of the piece, greedily in ball order, with no difference
/// `a_i⁻¹ a_j` in a removal subgroup. Finite pieces (a point, or a point
/// and its reflection) are repeated cyclically.
pub fn separated_points(piece: &OmegaPiece, n: usize) -> Result<Vec<GroupElement>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let k = piece.e0.subgroup();
    if k.lattice().rank() == 0 {
        let mut pts: Vec<GroupElement> = SubgroupWalk::new(k.clone())
            .map(|g| piece.e0.rep().mul(&g))
            .filter(|g| piece.contains(g))
            .collect();
        pts.sort_by(|a, b| a.ball_key().cmp(&b.ball_key()));
        if pts.is_empty() {
            return Err(Error::EmptySet);
        }
        return Ok(pts.iter().cycle().take(n).cloned().collect());
    }
    let subs: Vec<&Subgroup> = piece.removals.iter().map(|r| r.subgroup()).collect();
    let mut chosen: Vec<GroupElement> = Vec::new();
    let mut radius = 0i64;
    while chosen.len() < n {
        for g in shell_elements(piece.e0.carrier(), radius) {
            if chosen.len() == n {
                break;
            }
            if !piece.contains(&g) {
                continue;
            }
            let ok = chosen.iter().all(|a| {
                let d = a.inverse().mul(&g);
                !d.is_identity() && !subs.iter().any(|s| s.contains(&d))
            });
            if ok {
                chosen.push(g);
            }
        }
        radius += 1;
    }
    Ok(chosen)
}
