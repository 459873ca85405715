//! Canonical JSON forms. Integers are decimal strings, object keys are
//! sorted, and every reader rejects non-canonical input so that
//! `write(read(s)) == s` for anything this module produced.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::decompose::DecompositionCertificate;
use crate::error::{Error, Result};
use crate::group::{Carrier, Coset, GroupElement, IVec, Lattice, Sign, Subgroup};
use crate::pwaffine::{AffinePiece, PiecewiseAffineMap};
use crate::setalg::{OmegaNormalForm, OmegaPiece, SetExpr};

/// Conversion to and from the canonical JSON value.
pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

/// Pretty-printed canonical text with a trailing newline.
pub fn to_string<T: Json>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(&x.to_json()).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn from_str<T: Json>(s: &str) -> Result<T> {
    let v: Value = serde_json::from_str(s).map_err(|e| bad(format!("malformed JSON: {e}")))?;
    T::from_json(&v)
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn obj<'a>(v: &'a Value, keys: &[&str]) -> Result<&'a Map<String, Value>> {
    let m = v.as_object().ok_or_else(|| bad("expected an object"))?;
    if m.len() != keys.len() || keys.iter().any(|k| !m.contains_key(*k)) {
        let mut got: Vec<_> = m.keys().cloned().collect();
        got.sort();
        return Err(bad(format!("expected keys {keys:?}, found {got:?}")));
    }
    Ok(m)
}

fn field<'a>(m: &'a Map<String, Value>, k: &str) -> &'a Value {
    &m[k]
}

fn str_of<'a>(v: &'a Value) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad("expected a string"))
}

fn arr(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| bad("expected an array"))
}

fn int_to(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

fn int_from(v: &Value) -> Result<BigInt> {
    let s = str_of(v)?;
    let x: BigInt = s.parse().map_err(|_| bad(format!("not an integer: {s:?}")))?;
    if x.to_string() != s {
        return Err(bad(format!("non-canonical integer {s:?}")));
    }
    Ok(x)
}

fn vec_to(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_to).collect())
}

fn vec_from(v: &Value, dim: usize) -> Result<IVec> {
    let xs = arr(v)?.iter().map(int_from).collect::<Result<IVec>>()?;
    if xs.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: xs.len() });
    }
    Ok(xs)
}

fn usize_from(v: &Value) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| bad("expected a nonnegative integer"))
}

fn list_from<T: Json>(v: &Value) -> Result<Vec<T>> {
    arr(v)?.iter().map(T::from_json).collect()
}

fn list_to<T: Json>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(Json::to_json).collect())
}

fn sign_to(s: Sign) -> Value {
    json!(if s == Sign::Plus { "+" } else { "-" })
}

fn sign_from(v: &Value) -> Result<Sign> {
    match str_of(v)? {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        s => Err(bad(format!("bad sign {s:?}"))),
    }
}

impl Json for Carrier {
    fn to_json(&self) -> Value {
        let n = self.dim();
        if !self.has_sign() {
            json!({"kind": "ZN", "n": n})
        } else if self.flipped().len() == n {
            json!({"kind": "ZN_SEMIDIRECT_C2", "n": n})
        } else {
            json!({"kind": "ZN_SEMIDIRECT_C2", "n": n, "flips": self.flipped()})
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        let m = v.as_object().ok_or_else(|| bad("expected a carrier object"))?;
        let kind = m.get("kind").map(str_of).transpose()?;
        let n = usize_from(m.get("n").ok_or_else(|| bad("carrier without n"))?)?;
        if n == 0 || n > Carrier::MAX_DIM {
            return Err(bad(format!("dimension {n} out of range")));
        }
        let c = match (kind, m.len()) {
            (Some("ZN"), 2) => Carrier::zn(n),
            (Some("ZN_SEMIDIRECT_C2"), 2) => Carrier::zn_semidirect_c2(n),
            (Some("ZN_SEMIDIRECT_C2"), 3) => {
                let flips = arr(m.get("flips").ok_or_else(|| bad("unexpected carrier key"))?)?
                    .iter()
                    .map(usize_from)
                    .collect::<Result<Vec<_>>>()?;
                Carrier::with_flips(n, &flips)?
            }
            _ => return Err(bad("unknown carrier")),
        };
        if c.to_json() != *v {
            return Err(bad("non-canonical carrier"));
        }
        Ok(c)
    }
}

impl Json for GroupElement {
    fn to_json(&self) -> Value {
        json!({"carrier": self.carrier().to_json(), "translation": vec_to(self.translation()), "sign": sign_to(self.sign())})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let m = obj(v, &["carrier", "sign", "translation"])?;
        let c = Carrier::from_json(field(m, "carrier"))?;
        GroupElement::new(c, vec_from(field(m, "translation"), c.dim())?, sign_from(field(m, "sign"))?)
    }
}

impl Json for Subgroup {
    fn to_json(&self) -> Value {
        json!({
            "carrier": self.carrier().to_json(),
            "basis": Value::Array(self.lattice().basis().iter().map(|r| vec_to(r)).collect()),
            "reflection": self.reflection().map_or(Value::Null, |r| vec_to(r)),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let m = obj(v, &["basis", "carrier", "reflection"])?;
        let c = Carrier::from_json(field(m, "carrier"))?;
        let rows = arr(field(m, "basis"))?.iter().map(|r| vec_from(r, c.dim())).collect::<Result<Vec<_>>>()?;
        let lattice = Lattice::from_hnf(c.dim(), rows).ok_or_else(|| bad("basis is not in Hermite normal form"))?;
        let refl = match field(m, "reflection") {
            Value::Null => None,
            r => Some(vec_from(r, c.dim())?),
        };
        Subgroup::from_parts(c, lattice, refl)
    }
}

impl Json for Coset {
    fn to_json(&self) -> Value {
        json!({"subgroup": self.subgroup().to_json(), "rep": self.rep().to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let m = obj(v, &["rep", "subgroup"])?;
        Coset::from_parts(Subgroup::from_json(field(m, "subgroup"))?, GroupElement::from_json(field(m, "rep"))?)
    }
}

impl Json for SetExpr {
    fn to_json(&self) -> Value {
        match self {
            SetExpr::Atom(c) => json!({"node": "ATOM", "coset": c.to_json()}),
            SetExpr::Empty(c) => json!({"node": "EMPTY", "carrier": c.to_json()}),
            SetExpr::Full(c) => json!({"node": "FULL", "carrier": c.to_json()}),
            SetExpr::Union(xs) => json!({"node": "UNION", "args": list_to(xs)}),
            SetExpr::Intersect(xs) => json!({"node": "INTERSECT", "args": list_to(xs)}),
            SetExpr::Diff(a, b) => json!({"node": "DIFF", "left": a.to_json(), "right": b.to_json()}),
            SetExpr::LTranslate(s, x) => json!({"node": "LTRANSLATE", "by": s.to_json(), "arg": x.to_json()}),
            SetExpr::RTranslate(x, t) => json!({"node": "RTRANSLATE", "arg": x.to_json(), "by": t.to_json()}),
            SetExpr::Symbol(s) => json!({"node": "SYMBOL", "name": s}),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        let node = v.get("node").map(str_of).transpose()?.ok_or_else(|| bad("expression without node tag"))?;
        let boxed = |x: &Value| SetExpr::from_json(x).map(Box::new);
        Ok(match node {
            "ATOM" => SetExpr::Atom(Coset::from_json(field(obj(v, &["coset", "node"])?, "coset"))?),
            "EMPTY" => SetExpr::Empty(Carrier::from_json(field(obj(v, &["carrier", "node"])?, "carrier"))?),
            "FULL" => SetExpr::Full(Carrier::from_json(field(obj(v, &["carrier", "node"])?, "carrier"))?),
            "UNION" => SetExpr::Union(list_from(field(obj(v, &["args", "node"])?, "args"))?),
            "INTERSECT" => SetExpr::Intersect(list_from(field(obj(v, &["args", "node"])?, "args"))?),
            "DIFF" => {
                let m = obj(v, &["left", "node", "right"])?;
                SetExpr::Diff(boxed(field(m, "left"))?, boxed(field(m, "right"))?)
            }
            "LTRANSLATE" => {
                let m = obj(v, &["arg", "by", "node"])?;
                SetExpr::LTranslate(GroupElement::from_json(field(m, "by"))?, boxed(field(m, "arg"))?)
            }
            "RTRANSLATE" => {
                let m = obj(v, &["arg", "by", "node"])?;
                SetExpr::RTranslate(boxed(field(m, "arg"))?, GroupElement::from_json(field(m, "by"))?)
            }
            "SYMBOL" => SetExpr::Symbol(str_of(field(obj(v, &["name", "node"])?, "name"))?.to_string()),
            other => return Err(bad(format!("unknown node {other:?}"))),
        })
    }
}

impl Json for OmegaPiece {
    fn to_json(&self) -> Value {
        json!({"e0": self.e0.to_json(), "removals": list_to(&self.removals)})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let m = obj(v, &["e0", "removals"])?;
        Ok(OmegaPiece { e0: Coset::from_json(field(m, "e0"))?, removals: list_from(field(m, "removals"))? })
    }
}

impl Json for OmegaNormalForm {
    fn to_json(&self) -> Value {
        json!({"pieces": list_to(&self.pieces), "family": list_to(&self.family)})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let m = obj(v, &["family", "pieces"])?;
        Ok(OmegaNormalForm { pieces: list_from(field(m, "pieces"))?, family: list_from(field(m, "family"))? })
    }
}

impl Json for DecompositionCertificate {
    fn to_json(&self) -> Value {
        json!({
            "input": self.input.to_json(),
            "subgroups": list_to(&self.subgroups),
            "witnesses": list_to(&self.witnesses),
            "reconstruction": self.reconstruction.to_json(),
            "engine_version": self.engine_version,
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let m = obj(v, &["engine_version", "input", "reconstruction", "subgroups", "witnesses"])?;
        Ok(DecompositionCertificate {
            input: SetExpr::from_json(field(m, "input"))?,
            subgroups: list_from(field(m, "subgroups"))?,
            witnesses: list_from(field(m, "witnesses"))?,
            reconstruction: SetExpr::from_json(field(m, "reconstruction"))?,
            engine_version: str_of(field(m, "engine_version"))?.to_string(),
            promotions: vec![],
        })
    }
}

impl Json for AffinePiece {
    fn to_json(&self) -> Value {
        let (s0, g0) = self.base();
        json!({
            "domain": self.domain().to_json(),
            "target": self.target().to_json(),
            "base": {"s0": s0.to_json(), "g0": g0.to_json()},
            "hom": {
                "matrix": Value::Array(self.images().iter().map(|g| vec_to(g.translation())).collect()),
                "signs": Value::Array(self.images().iter().map(|g| sign_to(g.sign())).collect()),
                "reflection_image": self.reflection_image().map_or(Value::Null, Json::to_json),
            },
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let m = obj(v, &["base", "domain", "hom", "target"])?;
        let target = Carrier::from_json(field(m, "target"))?;
        let base = obj(field(m, "base"), &["g0", "s0"])?;
        let hom = obj(field(m, "hom"), &["matrix", "reflection_image", "signs"])?;
        let rows = arr(field(hom, "matrix"))?;
        let signs = arr(field(hom, "signs"))?;
        if rows.len() != signs.len() {
            return Err(bad("matrix and sign lists differ in length"));
        }
        let images = rows
            .iter()
            .zip(signs)
            .map(|(r, s)| GroupElement::new(target, vec_from(r, target.dim())?, sign_from(s)?))
            .collect::<Result<Vec<_>>>()?;
        let refl = match field(hom, "reflection_image") {
            Value::Null => None,
            r => Some(GroupElement::from_json(r)?),
        };
        AffinePiece::new(
            Coset::from_json(field(m, "domain"))?,
            target,
            GroupElement::from_json(field(base, "s0"))?,
            GroupElement::from_json(field(base, "g0"))?,
            images,
            refl,
        )
    }
}

impl Json for PiecewiseAffineMap {
    fn to_json(&self) -> Value {
        let pieces = self.pieces().iter().map(|(s, a)| json!({"set": s.to_json(), "map": a.to_json()})).collect();
        json!({"source": self.source().to_json(), "target": self.target().to_json(), "pieces": Value::Array(pieces)})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let m = obj(v, &["pieces", "source", "target"])?;
        let pieces = arr(field(m, "pieces"))?
            .iter()
            .map(|p| {
                let pm = obj(p, &["map", "set"])?;
                Ok((OmegaPiece::from_json(field(pm, "set"))?, AffinePiece::from_json(field(pm, "map"))?))
            })
            .collect::<Result<Vec<_>>>()?;
        PiecewiseAffineMap::new(Carrier::from_json(field(m, "source"))?, Carrier::from_json(field(m, "target"))?, pieces)
    }
}
