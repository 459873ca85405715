use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::{Carrier, Coset, GroupElement};

/// Symbol table used to close witness expressions.
pub type Bindings = BTreeMap<String, SetExpr>;

/// Boolean combinations of cosets with two-sided translation.
///
/// An empty `Union` is the empty set, and so is an empty `Intersect` (there is
/// no ambient set to default to without a carrier).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SetExpr {
    Atom(Coset),
    Empty(Carrier),
    Full(Carrier),
    Union(Vec<SetExpr>),
    Intersect(Vec<SetExpr>),
    Diff(Box<SetExpr>, Box<SetExpr>),
    LTranslate(GroupElement, Box<SetExpr>),
    RTranslate(Box<SetExpr>, GroupElement),
    Symbol(String),
}

impl From<Coset> for SetExpr {
    fn from(c: Coset) -> Self {
        SetExpr::Atom(c)
    }
}

impl SetExpr {
    pub fn atom(c: Coset) -> Self {
        SetExpr::Atom(c)
    }

    pub fn symbol(name: &str) -> Self {
        SetExpr::Symbol(name.to_string())
    }

    /// Flattens a single-element list into the element itself.
    pub fn union(mut items: Vec<SetExpr>) -> Self {
        if items.len() == 1 {
            items.pop().unwrap()
        } else {
            SetExpr::Union(items)
        }
    }

    pub fn intersect(mut items: Vec<SetExpr>) -> Self {
        if items.len() == 1 {
            items.pop().unwrap()
        } else {
            SetExpr::Intersect(items)
        }
    }

    pub fn diff(a: SetExpr, b: SetExpr) -> Self {
        SetExpr::Diff(Box::new(a), Box::new(b))
    }

    /// `s · e`, omitting identity translates.
    pub fn ltranslate(s: GroupElement, e: SetExpr) -> Self {
        if s.is_identity() {
            e
        } else {
            SetExpr::LTranslate(s, Box::new(e))
        }
    }

    /// `e · t`, omitting identity translates.
    pub fn rtranslate(e: SetExpr, t: GroupElement) -> Self {
        if t.is_identity() {
            e
        } else {
            SetExpr::RTranslate(Box::new(e), t)
        }
    }

    /// First carrier found in the tree, if any node carries one.
    pub fn carrier(&self) -> Option<Carrier> {
        match self {
            SetExpr::Atom(c) => Some(c.carrier()),
            SetExpr::Empty(c) | SetExpr::Full(c) => Some(*c),
            SetExpr::Union(xs) | SetExpr::Intersect(xs) => xs.iter().find_map(|x| x.carrier()),
            SetExpr::Diff(a, b) => a.carrier().or_else(|| b.carrier()),
            SetExpr::LTranslate(g, _) | SetExpr::RTranslate(_, g) => Some(g.carrier()),
            SetExpr::Symbol(_) => None,
        }
    }

    /// Fails with `MixedCarriers` unless every node lives in `carrier`.
    pub fn check_carrier(&self, carrier: Carrier) -> Result<()> {
        let ok = |c: Carrier| if c == carrier { Ok(()) } else { Err(Error::MixedCarriers) };
        match self {
            SetExpr::Atom(c) => ok(c.carrier()),
            SetExpr::Empty(c) | SetExpr::Full(c) => ok(*c),
            SetExpr::Union(xs) | SetExpr::Intersect(xs) => {
                xs.iter().try_for_each(|x| x.check_carrier(carrier))
            }
            SetExpr::Diff(a, b) => {
                a.check_carrier(carrier)?;
                b.check_carrier(carrier)
            }
            SetExpr::LTranslate(g, e) | SetExpr::RTranslate(e, g) => {
                ok(g.carrier())?;
                e.check_carrier(carrier)
            }
            SetExpr::Symbol(_) => Ok(()),
        }
    }

    pub fn is_closed(&self) -> bool {
        let mut closed = true;
        self.visit(&mut |e| {
            if matches!(e, SetExpr::Symbol(_)) {
                closed = false;
            }
        });
        closed
    }

    /// Names of all symbols, sorted and deduplicated.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.visit(&mut |e| {
            if let SetExpr::Symbol(s) = e {
                out.push(s.clone());
            }
        });
        out.sort();
        out.dedup();
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a SetExpr)) {
        f(self);
        match self {
            SetExpr::Union(xs) | SetExpr::Intersect(xs) => xs.iter().for_each(|x| x.visit(f)),
            SetExpr::Diff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            SetExpr::LTranslate(_, e) | SetExpr::RTranslate(e, _) => e.visit(f),
            _ => {}
        }
    }

    /// Replaces every bound symbol by its binding.
    pub fn substitute(&self, bindings: &Bindings) -> Result<SetExpr> {
        Ok(match self {
            SetExpr::Symbol(s) => {
                bindings.get(s).cloned().ok_or_else(|| Error::UnboundSymbol(s.clone()))?
            }
            SetExpr::Atom(_) | SetExpr::Empty(_) | SetExpr::Full(_) => self.clone(),
            SetExpr::Union(xs) => {
                SetExpr::Union(xs.iter().map(|x| x.substitute(bindings)).collect::<Result<_>>()?)
            }
            SetExpr::Intersect(xs) => SetExpr::Intersect(
                xs.iter().map(|x| x.substitute(bindings)).collect::<Result<_>>()?,
            ),
            SetExpr::Diff(a, b) => SetExpr::diff(a.substitute(bindings)?, b.substitute(bindings)?),
            SetExpr::LTranslate(g, e) => {
                SetExpr::LTranslate(g.clone(), Box::new(e.substitute(bindings)?))
            }
            SetExpr::RTranslate(e, g) => {
                SetExpr::RTranslate(Box::new(e.substitute(bindings)?), g.clone())
            }
        })
    }

    /// Binds the single symbol `Y`.
    pub fn bind_y(&self, y: &SetExpr) -> Result<SetExpr> {
        let mut b = Bindings::new();
        b.insert("Y".into(), y.clone());
        self.substitute(&b)
    }

    /// Equivalent expression with every translate absorbed into the atoms.
    pub fn push_translates(&self) -> Result<SetExpr> {
        self.push(None, None)
    }

    fn push(&self, left: Option<&GroupElement>, right: Option<&GroupElement>) -> Result<SetExpr> {
        Ok(match self {
            SetExpr::Atom(c) => {
                let mut c = c.clone();
                if let Some(t) = right {
                    c = c.right_translate(t)?;
                }
                if let Some(s) = left {
                    c = c.left_translate(s)?;
                }
                SetExpr::Atom(c)
            }
            SetExpr::Empty(_) | SetExpr::Full(_) => {
                for g in left.iter().chain(right.iter()) {
                    self.check_carrier(g.carrier())?;
                }
                self.clone()
            }
            SetExpr::Union(xs) => {
                SetExpr::Union(xs.iter().map(|x| x.push(left, right)).collect::<Result<_>>()?)
            }
            SetExpr::Intersect(xs) => {
                SetExpr::Intersect(xs.iter().map(|x| x.push(left, right)).collect::<Result<_>>()?)
            }
            SetExpr::Diff(a, b) => SetExpr::diff(a.push(left, right)?, b.push(left, right)?),
            // s·(s'·E) = (s s')·E
            SetExpr::LTranslate(g, e) => {
                let s = match left {
                    Some(s) => s.try_mul(g)?,
                    None => g.clone(),
                };
                e.push(Some(&s), right)?
            }
            // (E·t')·t = E·(t' t)
            SetExpr::RTranslate(e, g) => {
                let t = match right {
                    Some(t) => g.try_mul(t)?,
                    None => g.clone(),
                };
                e.push(left, Some(&t))?
            }
            SetExpr::Symbol(s) => return Err(Error::UnboundSymbol(s.clone())),
        })
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }
}

/// Pointwise membership; symbols are looked up in `bindings`.
pub fn eval_membership(expr: &SetExpr, g: &GroupElement, bindings: Option<&Bindings>) -> Result<bool> {
    Ok(match expr {
        SetExpr::Atom(c) => c.try_contains(g)?,
        SetExpr::Empty(c) => {
            check(*c, g)?;
            false
        }
        SetExpr::Full(c) => {
            check(*c, g)?;
            true
        }
        SetExpr::Union(xs) => {
            for x in xs {
                if eval_membership(x, g, bindings)? {
                    return Ok(true);
                }
            }
            false
        }
        SetExpr::Intersect(xs) => {
            if xs.is_empty() {
                return Ok(false);
            }
            for x in xs {
                if !eval_membership(x, g, bindings)? {
                    return Ok(false);
                }
            }
            true
        }
        SetExpr::Diff(a, b) => eval_membership(a, g, bindings)? && !eval_membership(b, g, bindings)?,
        SetExpr::LTranslate(s, e) => {
            check(s.carrier(), g)?;
            eval_membership(e, &s.inverse().mul(g), bindings)?
        }
        SetExpr::RTranslate(e, t) => {
            check(t.carrier(), g)?;
            eval_membership(e, &g.mul(&t.inverse()), bindings)?
        }
        SetExpr::Symbol(s) => {
            let bound = bindings
                .and_then(|b| b.get(s))
                .ok_or_else(|| Error::UnboundSymbol(s.clone()))?;
            eval_membership(bound, g, bindings)?
        }
    })
}

fn check(c: Carrier, g: &GroupElement) -> Result<()> {
    if c == g.carrier() {
        Ok(())
    } else {
        Err(Error::MixedCarriers)
    }
}

/// `expr · t` with the translation absorbed into the atoms.
pub fn right_translate(expr: &SetExpr, t: &GroupElement) -> Result<SetExpr> {
    if let Some(c) = expr.carrier() {
        check(c, t)?;
    }
    SetExpr::RTranslate(Box::new(expr.clone()), t.clone()).push_translates()
}
