use crate::error::{Error, Result};
use crate::group::{Carrier, Coset, Subgroup};
use crate::setalg::{sets_equal, to_omega_normal_form, SetExpr};

use super::big::big_cosets;
use super::cert::DecompositionCertificate;
use super::dag::ContainmentDag;
use super::promote::{promote_top_level, Promotion};

const MAX_DEPTH: usize = 48;

pub fn engine_version() -> String {
    format!("cosetkit {}", env!("CARGO_PKG_VERSION"))
}

/// Subgroups found for one set, with witnesses over the original `Y`.
struct Partial {
    subgroups: Vec<Subgroup>,
    witnesses: Vec<SetExpr>,
    reconstruction: SetExpr,
    promotions: Vec<Promotion>,
}

impl Partial {
    fn empty(carrier: Carrier) -> Self {
        Partial { subgroups: vec![], witnesses: vec![], reconstruction: SetExpr::Empty(carrier), promotions: vec![] }
    }

    fn add(&mut self, h: Subgroup, w: SetExpr) {
        if !self.subgroups.contains(&h) {
            self.subgroups.push(h);
            self.witnesses.push(w);
        }
    }

    fn absorb(&mut self, other: Partial) {
        for (h, w) in other.subgroups.into_iter().zip(other.witnesses) {
            self.add(h, w);
        }
        self.promotions.extend(other.promotions);
    }
}

/// Subgroups `H_i`, each given by an expression in two-sided translates of
/// `Y`, and a reconstruction of `Y` from cosets of the `H_i`.
pub fn decompose(y: &SetExpr) -> Result<DecompositionCertificate> {
    if !y.is_closed() {
        return Err(Error::UnboundSymbol(y.symbols().remove(0)));
    }
    let carrier = y.carrier().ok_or(Error::EmptyInput)?;
    y.check_carrier(carrier)?;
    if to_omega_normal_form(y)?.is_empty() {
        return Err(Error::EmptyInput);
    }
    let part = recurse(carrier, y, &SetExpr::symbol("Y"), 0)?;
    Ok(DecompositionCertificate {
        input: y.clone(),
        subgroups: part.subgroups,
        witnesses: part.witnesses,
        reconstruction: part.reconstruction,
        engine_version: engine_version(),
        promotions: part.promotions,
    })
}

/// `z` is the set itself, `zw` the same set as an expression over `Y`.
fn recurse(carrier: Carrier, z: &SetExpr, zw: &SetExpr, depth: usize) -> Result<Partial> {
    if depth > MAX_DEPTH {
        return Err(Error::Internal("decomposition recursion too deep".into()));
    }
    let nf = to_omega_normal_form(z)?;
    if nf.is_empty() {
        return Ok(Partial::empty(carrier));
    }
    let z = nf.to_expr();
    let dag = ContainmentDag::new(&nf.used_subgroups());
    let mut tops: Vec<Subgroup> = dag.top_level().into_iter().map(|i| dag.nodes()[i].clone()).collect();
    tops.sort();

    let mut out = Partial::empty(carrier);
    let mut blocks = Vec::new();
    for h1 in &tops {
        let p = promote_top_level(&nf, h1)?;
        let hw = p.witness.bind_y(zw)?;
        let mut cosets: Vec<Coset> = Vec::new();
        for c in big_cosets(&nf, h1)? {
            let big = Coset::new(p.subgroup.clone(), c.rep().clone())?;
            if !cosets.contains(&big) {
                cosets.push(big);
            }
        }
        let a = SetExpr::union(cosets.iter().cloned().map(SetExpr::Atom).collect());
        let big_h1 = SetExpr::union(big_cosets(&nf, h1)?.into_iter().map(SetExpr::Atom).collect());
        if !sets_equal(&a, &big_h1)? {
            return Err(Error::Internal("big cosets are not a union of promoted cosets".into()));
        }
        let aw = SetExpr::union(cosets.iter().map(|c| SetExpr::ltranslate(c.rep().clone(), hw.clone())).collect());
        out.add(p.subgroup.clone(), hw);
        out.promotions.push(p);
        blocks.push((a, aw));
    }

    let mut recon = Vec::new();
    let all_a = SetExpr::union(blocks.iter().map(|b| b.0.clone()).collect());
    let all_aw = SetExpr::union(blocks.iter().map(|b| b.1.clone()).collect());
    let c = recurse(
        carrier,
        &SetExpr::diff(z.clone(), all_a),
        &SetExpr::diff(zw.clone(), all_aw),
        depth + 1,
    )?;
    if !matches!(c.reconstruction, SetExpr::Empty(_)) {
        recon.push(c.reconstruction.clone());
    }
    out.absorb(c);
    for (a, aw) in blocks {
        let b = recurse(carrier, &SetExpr::diff(a.clone(), z.clone()), &SetExpr::diff(aw, zw.clone()), depth + 1)?;
        if matches!(b.reconstruction, SetExpr::Empty(_)) {
            recon.push(a);
        } else {
            recon.push(SetExpr::diff(a, b.reconstruction.clone()));
        }
        out.absorb(b);
    }
    out.reconstruction = if recon.is_empty() { SetExpr::Empty(carrier) } else { SetExpr::union(recon) };
    Ok(out)
}
