use crate::error::{Error, Result};
use crate::group::Coset;

use super::expr::SetExpr;

/// `(∩ positives) \ (∪ negatives)`.
///
/// Terms built here keep a single positive coset, with every negative already
/// intersected into it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelTerm {
    pub positives: Vec<Coset>,
    pub negatives: Vec<Coset>,
}

impl RelTerm {
    fn single(pos: Coset) -> Self {
        RelTerm { positives: vec![pos], negatives: Vec::new() }
    }

    pub(crate) fn positive(&self) -> &Coset {
        &self.positives[0]
    }

    pub fn to_expr(&self) -> SetExpr {
        let pos = SetExpr::intersect(self.positives.iter().cloned().map(SetExpr::Atom).collect());
        if self.negatives.is_empty() {
            pos
        } else {
            let negs = self.negatives.iter().cloned().map(SetExpr::Atom).collect();
            SetExpr::diff(pos, SetExpr::Union(negs))
        }
    }
}

/// Builds `pos \ ∪ negs`, dropping negatives that miss `pos` and returning
/// `None` when a negative swallows it.
fn make_term(pos: Coset, negs: impl IntoIterator<Item = Coset>) -> Result<Option<RelTerm>> {
    let mut kept: Vec<Coset> = Vec::new();
    for n in negs {
        let Some(m) = pos.intersect(&n)? else { continue };
        if m == pos {
            return Ok(None);
        }
        if kept.iter().any(|k| m.is_subset_of(k)) {
            continue;
        }
        kept.retain(|k| !k.is_subset_of(&m));
        kept.push(m);
    }
    Ok(Some(RelTerm { positives: vec![pos], negatives: kept }))
}

/// `r \ q` as disjoint terms:
/// `r \ (c \ ∪ n_j) = (r \ c) ⊔ ⨆_j (r ∩ c ∩ n_j) \ (n_1 ∪ … ∪ n_{j-1})`.
fn term_minus(r: &RelTerm, q: &RelTerm) -> Result<Vec<RelTerm>> {
    let c = q.positive();
    let Some(rc) = r.positive().intersect(c)? else {
        return Ok(vec![r.clone()]);
    };
    let mut out = Vec::new();
    let mut negs = r.negatives.clone();
    negs.push(c.clone());
    out.extend(make_term(r.positive().clone(), negs)?);
    for (j, n) in q.negatives.iter().enumerate() {
        let Some(pos) = rc.intersect(n)? else { continue };
        let negs = r.negatives.iter().chain(&q.negatives[..j]).cloned();
        out.extend(make_term(pos, negs)?);
    }
    Ok(out)
}

fn terms_minus(p: Vec<RelTerm>, q: &[RelTerm]) -> Result<Vec<RelTerm>> {
    let mut cur = p;
    for qt in q {
        let mut next = Vec::new();
        for r in &cur {
            next.extend(term_minus(r, qt)?);
        }
        cur = next;
    }
    Ok(cur)
}

fn terms_intersect(p: &[RelTerm], q: &[RelTerm]) -> Result<Vec<RelTerm>> {
    let mut out = Vec::new();
    for a in p {
        for b in q {
            let Some(pos) = a.positive().intersect(b.positive())? else { continue };
            let negs = a.negatives.iter().chain(&b.negatives).cloned();
            out.extend(make_term(pos, negs)?);
        }
    }
    Ok(out)
}

fn nf(e: &SetExpr) -> Result<Vec<RelTerm>> {
    match e {
        SetExpr::Atom(c) => Ok(vec![RelTerm::single(c.clone())]),
        SetExpr::Empty(_) => Ok(Vec::new()),
        SetExpr::Full(c) => Ok(vec![RelTerm::single(Coset::full(*c))]),
        SetExpr::Union(xs) => {
            // A1 ⊔ (A2 \ A1) ⊔ (A3 \ (A1 ∪ A2)) ⊔ …
            let mut acc: Vec<RelTerm> = Vec::new();
            for x in xs {
                let fresh = terms_minus(nf(x)?, &acc)?;
                acc.extend(fresh);
            }
            Ok(acc)
        }
        SetExpr::Intersect(xs) => {
            let Some((first, rest)) = xs.split_first() else { return Ok(Vec::new()) };
            let mut acc = nf(first)?;
            for x in rest {
                if acc.is_empty() {
                    break;
                }
                acc = terms_intersect(&acc, &nf(x)?)?;
            }
            Ok(acc)
        }
        SetExpr::Diff(a, b) => {
            let p = nf(a)?;
            if p.is_empty() {
                return Ok(p);
            }
            terms_minus(p, &nf(b)?)
        }
        SetExpr::LTranslate(..) | SetExpr::RTranslate(..) => nf(&e.push_translates()?),
        SetExpr::Symbol(s) => Err(Error::UnboundSymbol(s.clone())),
    }
}

/// Disjoint terms whose union is `expr`; translates are absorbed into atoms.
pub fn to_relring_normal_form(expr: &SetExpr) -> Result<Vec<RelTerm>> {
    if let Some(c) = expr.carrier() {
        expr.check_carrier(c)?;
    }
    nf(expr)
}
