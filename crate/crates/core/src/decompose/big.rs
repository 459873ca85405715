use crate::covering::piece_witness;
use crate::error::{Error, Result};
use crate::group::{Coset, GroupElement, Subgroup};
use crate::setalg::{to_omega_normal_form, OmegaNormalForm, SetExpr};

/// Cosets of `h` that are big in the set: exactly the `h`-cosets occurring
/// as some piece's `E0`.
pub fn big_cosets(nf: &OmegaNormalForm, h: &Subgroup) -> Result<Vec<Coset>> {
    if !nf.family.contains(h) {
        return Err(Error::SubgroupNotInFamily);
    }
    let mut out: Vec<Coset> = Vec::new();
    for p in &nf.pieces {
        if p.e0.subgroup() == h && !out.contains(&p.e0) {
            out.push(p.e0.clone());
        }
    }
    Ok(out)
}

/// `{s : s·c_j H1 = c_m H1}` for every `j`, as one expression.
fn landing_set(reps: &[GroupElement], h1: &Subgroup, m: usize) -> Result<SetExpr> {
    let mut parts = Vec::new();
    for cj in reps {
        let conj = h1.conjugate_by(cj)?;
        parts.push(SetExpr::Atom(Coset::new(conj, reps[m].mul(&cj.inverse()))?));
    }
    Ok(SetExpr::Union(parts))
}

/// A translate pattern that actually occurs, with one translate realizing it.
struct Pattern {
    hits: Vec<bool>,
    witness: GroupElement,
}

/// Splits the carrier by which of the listed cosets `s·C` contains.
fn realized_patterns(reps: &[GroupElement], h1: &Subgroup) -> Result<Vec<Pattern>> {
    let carrier = h1.carrier();
    let mut regions: Vec<(SetExpr, Vec<bool>)> = vec![(SetExpr::Full(carrier), Vec::new())];
    for m in 0..reps.len() {
        let u = landing_set(reps, h1, m)?;
        let mut next = Vec::new();
        for (region, hits) in regions {
            for (inside, e) in [
                (true, SetExpr::Intersect(vec![region.clone(), u.clone()])),
                (false, SetExpr::diff(region.clone(), u.clone())),
            ] {
                let nf = to_omega_normal_form(&e)?;
                if !nf.is_empty() {
                    let mut h = hits.clone();
                    h.push(inside);
                    next.push((nf.to_expr(), h));
                }
            }
        }
        regions = next;
    }
    regions
        .into_iter()
        .map(|(region, hits)| {
            let nf = to_omega_normal_form(&region)?;
            Ok(Pattern { hits, witness: piece_witness(&nf.pieces[0])? })
        })
        .collect()
}

/// Smallest union of `H1`-cosets that is a member of the ring generated by
/// the listed big cosets, translated to contain the identity, together with
/// an expression in `Y` whose big `H1`-cosets are exactly that subgroup.
pub fn minimal_subgroup(cosets: &[Coset]) -> Result<(Subgroup, SetExpr)> {
    let first = cosets.first().ok_or_else(|| Error::Invalid("no cosets given".into()))?;
    let h1 = first.subgroup().clone();
    if cosets.iter().any(|c| c.subgroup() != &h1) {
        return Err(Error::Invalid("cosets of different subgroups".into()));
    }
    let reps: Vec<GroupElement> = cosets.iter().map(|c| c.rep().clone()).collect();
    let patterns = realized_patterns(&reps, &h1)?;

    // cosets no translate can separate from the first one
    let class: Vec<usize> = (0..reps.len())
        .filter(|&m| patterns.iter().all(|p| p.hits[m] == p.hits[0]))
        .collect();

    let y = SetExpr::symbol("Y");
    let mut keep = Vec::new();
    let mut drop = Vec::new();
    for p in &patterns {
        let t = SetExpr::ltranslate(p.witness.clone(), y.clone());
        if p.hits[0] {
            keep.push(t);
        } else if p.hits.iter().any(|&b| b) {
            drop.push(t);
        }
    }
    let mut a0 = SetExpr::intersect(keep);
    if !drop.is_empty() {
        a0 = SetExpr::diff(a0, SetExpr::union(drop));
    }
    let c1inv = reps[0].inverse();
    let witness = SetExpr::ltranslate(c1inv.clone(), a0);

    let mut gens = h1.generators();
    gens.extend(class.iter().map(|&m| c1inv.mul(&reps[m])));
    let h = Subgroup::generated(h1.carrier(), &gens)?;
    let expected = num_bigint::BigInt::from(class.len());
    if h.index_of(&h1)?.finite() != Some(&expected) {
        return Err(Error::Internal("coset class does not form a subgroup".into()));
    }
    Ok((h, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Carrier;
    use crate::setalg::sets_equal;

    fn z2() -> Carrier {
        Carrier::zn(2)
    }
    fn cs(rows: &[&[i64]], rep: &[i64]) -> Coset {
        Coset::new(Subgroup::span(z2(), rows).unwrap(), GroupElement::translation_of(z2(), rep)).unwrap()
    }

    #[test]
    fn big_coset_examples() {
        let y = SetExpr::Union(vec![SetExpr::Atom(cs(&[&[1, 0]], &[0, 0])), SetExpr::Atom(cs(&[&[0, 1]], &[1, 0]))]);
        let nf = to_omega_normal_form(&y).unwrap();
        let a = Subgroup::span(z2(), &[&[1, 0]]).unwrap();
        let b = Subgroup::span(z2(), &[&[0, 1]]).unwrap();
        assert_eq!(big_cosets(&nf, &a).unwrap(), vec![cs(&[&[1, 0]], &[0, 0])]);
        assert_eq!(big_cosets(&nf, &b).unwrap(), vec![cs(&[&[0, 1]], &[1, 0])]);
        let d = Subgroup::span(z2(), &[&[1, 1]]).unwrap();
        assert_eq!(big_cosets(&nf, &d), Err(Error::SubgroupNotInFamily));

        let y = SetExpr::diff(SetExpr::Full(z2()), SetExpr::Atom(Coset::of_subgroup(d)));
        let nf = to_omega_normal_form(&y).unwrap();
        assert_eq!(big_cosets(&nf, &Subgroup::full(z2())).unwrap(), vec![Coset::full(z2())]);
    }

    #[test]
    fn minimal_subgroup_examples() {
        let a = Subgroup::span(z2(), &[&[1, 0]]).unwrap();
        let (h, w) = minimal_subgroup(&[cs(&[&[1, 0]], &[0, 0])]).unwrap();
        assert_eq!(h, a);
        assert_eq!(w, SetExpr::symbol("Y"));

        let l2 = &[&[2, 0][..], &[0, 1]];
        let c = [cs(l2, &[0, 0]), cs(l2, &[1, 0])];
        let (h, w) = minimal_subgroup(&c).unwrap();
        assert_eq!(h, Subgroup::full(z2()));
        let y = SetExpr::Union(c.iter().cloned().map(SetExpr::Atom).collect());
        assert!(sets_equal(&w.bind_y(&y).unwrap(), &SetExpr::Full(z2())).unwrap());

        let (h, w) = minimal_subgroup(&[cs(&[&[1, 0]], &[0, 1])]).unwrap();
        assert_eq!(h, a);
        let y = SetExpr::Atom(cs(&[&[1, 0]], &[0, 1]));
        assert!(sets_equal(&w.bind_y(&y).unwrap(), &SetExpr::Atom(Coset::of_subgroup(a))).unwrap());
    }

    #[test]
    fn separable_cosets_give_a_proper_subgroup() {
        // translating by (1,0) separates the first coset from the other two
        let l4 = &[&[4, 0][..], &[0, 1]];
        let c = [cs(l4, &[0, 0]), cs(l4, &[1, 0]), cs(l4, &[2, 0])];
        let (h, _) = minimal_subgroup(&c).unwrap();
        assert_eq!(h, Subgroup::span(z2(), l4).unwrap());
        let c = [cs(l4, &[0, 0]), cs(l4, &[2, 0])];
        let (h, _) = minimal_subgroup(&c).unwrap();
        assert_eq!(h, Subgroup::span(z2(), &[&[2, 0], &[0, 1]]).unwrap());
    }
}
