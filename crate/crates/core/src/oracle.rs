//! Brute-force comparison of set expressions over a finite ball.
//!
//! Evaluation walks the raw expression tree and tests atom membership with
//! plain lattice arithmetic; nothing here touches the normal-form code.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{enumerate_ball, lattice, Carrier, Coset, GroupElement, Sign};
use crate::setalg::SetExpr;

/// The max-norm ball of the given radius, in enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub carrier: Carrier,
    pub radius: u64,
}

impl Window {
    pub fn new(carrier: Carrier, radius: u64) -> Self {
        Window { carrier, radius }
    }

    pub fn points(&self) -> Vec<GroupElement> {
        enumerate_ball(self.carrier, self.radius)
    }
}

fn in_coset(c: &Coset, g: &GroupElement) -> bool {
    let x = c.rep().inverse().mul(g);
    let h = c.subgroup();
    match x.sign() {
        Sign::Plus => h.lattice().contains(x.translation()),
        Sign::Minus => match h.reflection() {
            Some(r) => h.lattice().contains(&lattice::sub(x.translation(), r)),
            None => false,
        },
    }
}

/// Membership by direct recursion over the tree.
pub fn eval(e: &SetExpr, g: &GroupElement) -> Result<bool> {
    Ok(match e {
        SetExpr::Atom(c) => in_coset(c, g),
        SetExpr::Empty(_) => false,
        SetExpr::Full(_) => true,
        SetExpr::Union(xs) => {
            let mut any = false;
            for x in xs {
                any |= eval(x, g)?;
            }
            any
        }
        SetExpr::Intersect(xs) => {
            let mut all = !xs.is_empty();
            for x in xs {
                all &= eval(x, g)?;
            }
            all
        }
        SetExpr::Diff(a, b) => eval(a, g)? && !eval(b, g)?,
        SetExpr::LTranslate(s, x) => eval(x, &s.inverse().mul(g))?,
        SetExpr::RTranslate(x, t) => eval(x, &g.mul(&t.inverse()))?,
        SetExpr::Symbol(s) => return Err(Error::UnboundSymbol(s.clone())),
    })
}

fn prepare(a: &SetExpr, b: &SetExpr, w: &Window) -> Result<()> {
    for e in [a, b] {
        if let Some(s) = e.symbols().into_iter().next() {
            return Err(Error::UnboundSymbol(s));
        }
        e.check_carrier(w.carrier)?;
    }
    Ok(())
}

/// First window point where `a` and `b` disagree, if any.
pub fn compare_on_window(a: &SetExpr, b: &SetExpr, w: &Window) -> Result<Option<GroupElement>> {
    prepare(a, b, w)?;
    Ok(w.points()
        .into_par_iter()
        .find_first(|g| eval(a, g).ok() != eval(b, g).ok())
        .map(|g| g.clone()))
}

/// Every disagreeing window point, in enumeration order.
pub fn disagreements_on_window(a: &SetExpr, b: &SetExpr, w: &Window) -> Result<Vec<GroupElement>> {
    prepare(a, b, w)?;
    Ok(w.points()
        .into_par_iter()
        .filter(|g| eval(a, g).ok() != eval(b, g).ok())
        .collect())
}
