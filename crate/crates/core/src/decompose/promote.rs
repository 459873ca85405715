use crate::covering::{separate_left, separate_right, CosetList};
use crate::error::{Error, Result};
use crate::group::{Coset, Index, Subgroup};
use crate::setalg::{sets_equal, to_omega_normal_form, OmegaNormalForm, OmegaPiece, SetExpr};

use super::big::{big_cosets, minimal_subgroup};

/// Result of promoting a top-level subgroup `H1` to `H ⊇ H1`.
#[derive(Clone, Debug)]
pub struct Promotion {
    pub from: Subgroup,
    pub subgroup: Subgroup,
    /// `[H : H1]`.
    pub index: Index,
    /// Expression in `Y` equal to `H` once `Y` is bound.
    pub witness: SetExpr,
    /// The input normal form with its `H1`-pieces merged into `H`-pieces.
    pub rewritten: OmegaNormalForm,
}

fn distinct_e0s(nf: &OmegaNormalForm) -> Vec<Coset> {
    let mut out: Vec<Coset> = Vec::new();
    for p in &nf.pieces {
        if !out.contains(&p.e0) {
            out.push(p.e0.clone());
        }
    }
    out
}

/// Promotes `h1`, which must not lie strictly inside another subgroup used
/// by the normal form.
pub fn promote_top_level(nf: &OmegaNormalForm, h1: &Subgroup) -> Result<Promotion> {
    let big = big_cosets(nf, h1)?;
    let used = nf.used_subgroups();
    if used.iter().any(|k| k != h1 && k.contains_subgroup(h1)) {
        return Err(Error::NotTopLevel);
    }
    if big.is_empty() {
        return Err(Error::Invalid("subgroup has no big cosets in the set".into()));
    }
    let y = nf.to_expr();
    let (h, witness_a) = minimal_subgroup(&big)?;
    let h_atom = SetExpr::Atom(Coset::of_subgroup(h.clone()));
    let a0 = witness_a.bind_y(&y)?;

    // B0 = ∪ t_i A0 ⊇ H, with t_i ∈ H separating the part of H that A0 misses
    let rest = to_omega_normal_form(&SetExpr::diff(h_atom.clone(), a0))?;
    let lefts = if rest.is_empty() {
        vec![h.carrier().identity()]
    } else {
        separate_left(&CosetList::new(distinct_e0s(&rest), h.clone())?)?
    };
    let b0_w = SetExpr::union(lefts.into_iter().map(|t| SetExpr::ltranslate(t, witness_a.clone())).collect());
    let b0 = b0_w.bind_y(&y)?;

    // H = ∩ B0 t_i, with t_i ∈ H separating what B0 has outside H
    let spill = to_omega_normal_form(&SetExpr::diff(b0, h_atom.clone()))?;
    let rights = if spill.is_empty() {
        vec![h.carrier().identity()]
    } else {
        separate_right(&CosetList::new(distinct_e0s(&spill), h.clone())?)?
    };
    let witness = SetExpr::intersect(rights.into_iter().map(|t| SetExpr::rtranslate(b0_w.clone(), t)).collect());
    if !sets_equal(&witness.bind_y(&y)?, &h_atom)? {
        return Err(Error::Internal(format!("promotion witness for {h} does not evaluate to it")));
    }

    let index = h.index_of(h1)?;
    let rewritten = merge_pieces(nf, h1, &h, &index)?;
    Ok(Promotion { from: h1.clone(), subgroup: h, index, witness, rewritten })
}

/// Replaces the `H1`-pieces by `H`-pieces: `⊔ (s_k H1 \ R_k) = sH \ ∪ R_k`.
fn merge_pieces(nf: &OmegaNormalForm, h1: &Subgroup, h: &Subgroup, index: &Index) -> Result<OmegaNormalForm> {
    let mut pieces: Vec<OmegaPiece> = Vec::new();
    let mut counts: Vec<(Coset, usize)> = Vec::new();
    for p in &nf.pieces {
        if p.e0.subgroup() != h1 {
            pieces.push(p.clone());
            continue;
        }
        let big = Coset::new(h.clone(), p.e0.rep().clone())?;
        match pieces.iter_mut().find(|q| q.e0 == big) {
            Some(q) => {
                for r in &p.removals {
                    if !q.removals.contains(r) {
                        q.removals.push(r.clone());
                    }
                }
                counts.iter_mut().find(|c| c.0 == big).unwrap().1 += 1;
            }
            None => {
                counts.push((big.clone(), 1));
                pieces.push(OmegaPiece { e0: big, removals: p.removals.clone() });
            }
        }
    }
    let per_coset = index.finite().cloned().ok_or(Error::InfiniteIndex)?;
    if counts.iter().any(|(_, n)| num_bigint::BigInt::from(*n) != per_coset) {
        return Err(Error::Internal("big cosets do not fill whole cosets of the promoted subgroup".into()));
    }
    let family = nf.family.iter().map(|k| if k == h1 { h.clone() } else { k.clone() }).collect();
    Ok(OmegaNormalForm { pieces, family })
}
