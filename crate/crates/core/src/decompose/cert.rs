use crate::group::{Coset, Subgroup};
use crate::setalg::{sets_equal, SetExpr};

use super::promote::Promotion;

#[derive(Clone, Debug)]
pub struct DecompositionCertificate {
    pub input: SetExpr,
    pub subgroups: Vec<Subgroup>,
    /// One expression per subgroup, over the symbol `Y` only.
    pub witnesses: Vec<SetExpr>,
    /// Expression over cosets of `subgroups` equal to `input`.
    pub reconstruction: SetExpr,
    pub engine_version: String,
    /// Promotions performed, with `[H : H1]`. Not serialized.
    pub promotions: Vec<Promotion>,
}

impl PartialEq for DecompositionCertificate {
    fn eq(&self, other: &Self) -> bool {
        self.input == other.input
            && self.subgroups == other.subgroups
            && self.witnesses == other.witnesses
            && self.reconstruction == other.reconstruction
            && self.engine_version == other.engine_version
    }
}

/// Outcome of [`check_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub accepted: bool,
    pub reason: Option<String>,
}

impl Verdict {
    fn accept() -> Self {
        Verdict { accepted: true, reason: None }
    }

    fn reject(reason: impl Into<String>) -> Self {
        Verdict { accepted: false, reason: Some(reason.into()) }
    }
}

/// Only `Y`, its translates and boolean nodes.
pub fn is_witness_syntax(e: &SetExpr) -> bool {
    match e {
        SetExpr::Symbol(s) => s == "Y",
        SetExpr::Empty(_) | SetExpr::Full(_) => true,
        SetExpr::Atom(_) => false,
        SetExpr::Union(xs) | SetExpr::Intersect(xs) => xs.iter().all(is_witness_syntax),
        SetExpr::Diff(a, b) => is_witness_syntax(a) && is_witness_syntax(b),
        SetExpr::LTranslate(_, x) | SetExpr::RTranslate(x, _) => is_witness_syntax(x),
    }
}

/// Rewrites right translates as left translates where that is sound: always
/// on abelian carriers, and for identity translates otherwise.
pub fn to_left_only(e: &SetExpr) -> Option<SetExpr> {
    Some(match e {
        SetExpr::RTranslate(x, t) => {
            if t.is_identity() {
                to_left_only(x)?
            } else if t.carrier().is_abelian() {
                SetExpr::LTranslate(t.clone(), Box::new(to_left_only(x)?))
            } else {
                return None;
            }
        }
        SetExpr::LTranslate(s, x) => SetExpr::LTranslate(s.clone(), Box::new(to_left_only(x)?)),
        SetExpr::Union(xs) => SetExpr::Union(xs.iter().map(to_left_only).collect::<Option<_>>()?),
        SetExpr::Intersect(xs) => SetExpr::Intersect(xs.iter().map(to_left_only).collect::<Option<_>>()?),
        SetExpr::Diff(a, b) => SetExpr::diff(to_left_only(a)?, to_left_only(b)?),
        other => other.clone(),
    })
}

fn atoms_in(e: &SetExpr) -> Vec<&Coset> {
    let mut out = Vec::new();
    e.visit(&mut |x| {
        if let SetExpr::Atom(c) = x {
            out.push(c);
        }
    });
    out
}

/// Re-derives both conclusions of the certificate from scratch.
pub fn check_certificate(cert: &DecompositionCertificate) -> Verdict {
    match check(cert) {
        Ok(v) => v,
        Err(e) => Verdict::reject(format!("evaluation failed: {e}")),
    }
}

fn check(cert: &DecompositionCertificate) -> crate::Result<Verdict> {
    if !cert.input.is_closed() {
        return Ok(Verdict::reject("input has free symbols"));
    }
    if cert.subgroups.len() != cert.witnesses.len() {
        return Ok(Verdict::reject("subgroup and witness counts differ"));
    }
    let carrier = cert.input.carrier();
    for (i, h) in cert.subgroups.iter().enumerate() {
        if let Err(e) = h.validate() {
            return Ok(Verdict::reject(format!("subgroup {i} is malformed: {e}")));
        }
        if carrier.is_some_and(|c| c != h.carrier()) {
            return Ok(Verdict::reject(format!("subgroup {i} lives in another carrier")));
        }
    }
    for (i, (h, w)) in cert.subgroups.iter().zip(&cert.witnesses).enumerate() {
        if !is_witness_syntax(w) {
            return Ok(Verdict::reject(format!("witness {i} is not built from translates of Y")));
        }
        let bound = w.bind_y(&cert.input)?;
        if !sets_equal(&bound, &SetExpr::Atom(Coset::of_subgroup(h.clone())))? {
            return Ok(Verdict::reject(format!("witness {i} does not evaluate to subgroup {h}")));
        }
    }
    for c in atoms_in(&cert.reconstruction) {
        if !cert.subgroups.contains(c.subgroup()) {
            return Ok(Verdict::reject(format!("reconstruction atom {c} uses a subgroup outside the list")));
        }
    }
    if !cert.reconstruction.is_closed() {
        return Ok(Verdict::reject("reconstruction has free symbols"));
    }
    if !sets_equal(&cert.reconstruction, &cert.input)? {
        return Ok(Verdict::reject("reconstruction differs from the input"));
    }
    Ok(Verdict::accept())
}
