use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::ast::*;
use super::lexer::Diagnostic;
use super::parser::parse;
use crate::decompose::{check_certificate, decompose, DecompositionCertificate, Verdict};
use crate::group::{Carrier, Coset, GroupElement, Sign, Subgroup};
use crate::json::{self, Json};
use crate::oracle::{compare_on_window, Window};
use crate::pwaffine::{graph_of, pw_affine_from_graph, AffinePiece, PiecewiseAffineMap};
use crate::setalg::{eval_membership, is_empty, sets_equal, to_omega_normal_form, OmegaPiece, SetExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub format: Format,
    pub window_radius: u64,
    pub out_dir: PathBuf,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { format: Format::Text, window_radius: 20, out_dir: PathBuf::from(".") }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Clone, Debug)]
enum Item {
    Group(Carrier),
    Subgroup(Subgroup),
    Coset(Coset),
    Set(SetExpr),
    Map(PiecewiseAffineMap),
}

impl Item {
    fn kind(&self) -> &'static str {
        match self {
            Item::Group(_) => "group",
            Item::Subgroup(_) => "subgroup",
            Item::Coset(_) => "coset",
            Item::Set(_) => "set",
            Item::Map(_) => "map",
        }
    }
}

type Step<T> = Result<T, String>;

struct Runner<'a> {
    opts: &'a RunOptions,
    names: BTreeMap<String, Item>,
    out: &'a mut dyn Write,
    failed: bool,
}

fn e2s(e: crate::Error) -> String {
    e.to_string()
}

/// Path of the certificate written by `decompose <name>`.
pub fn certificate_path(out_dir: &Path, name: &str) -> PathBuf {
    out_dir.join(format!("{name}.cert.json"))
}

/// Loads and re-checks a certificate file.
pub fn check_certificate_file(path: &Path) -> crate::Result<Verdict> {
    let text = std::fs::read_to_string(path).map_err(|e| crate::Error::Invalid(format!("{}: {e}", path.display())))?;
    let cert: DecompositionCertificate = json::from_str(&text)?;
    Ok(check_certificate(&cert))
}

impl Runner<'_> {
    fn get(&self, name: &str) -> Step<&Item> {
        self.names.get(name).ok_or_else(|| format!("unknown name '{name}'"))
    }

    fn group(&self, name: &str) -> Step<Carrier> {
        match self.get(name)? {
            Item::Group(c) => Ok(*c),
            other => Err(format!("'{name}' is a {}, not a group", other.kind())),
        }
    }

    fn set(&self, name: &str) -> Step<SetExpr> {
        match self.get(name)? {
            Item::Set(e) => Ok(e.clone()),
            Item::Coset(c) => Ok(SetExpr::Atom(c.clone())),
            Item::Subgroup(h) => Ok(SetExpr::Atom(Coset::of_subgroup(h.clone()))),
            Item::Group(c) => Ok(SetExpr::Full(*c)),
            Item::Map(_) => Err(format!("'{name}' is a map, not a set")),
        }
    }

    fn coset(&self, name: &str) -> Step<Coset> {
        match self.get(name)? {
            Item::Coset(c) => Ok(c.clone()),
            Item::Subgroup(h) => Ok(Coset::of_subgroup(h.clone())),
            other => Err(format!("'{name}' is a {}, not a coset", other.kind())),
        }
    }

    fn bind(&mut self, name: &str, item: Item) -> Step<()> {
        if self.names.contains_key(name) {
            return Err(format!("'{name}' is already declared"));
        }
        self.names.insert(name.to_string(), item);
        Ok(())
    }

    fn element(c: Carrier, v: &Vector) -> Step<GroupElement> {
        if v.coords.len() != c.dim() {
            return Err(format!("{v} has {} coordinates, expected {}", v.coords.len(), c.dim()));
        }
        GroupElement::new(c, v.coords.clone(), v.sign.unwrap_or(Sign::Plus)).map_err(e2s)
    }

    fn carrier_of(e: &SetExpr) -> Step<Carrier> {
        e.carrier().ok_or_else(|| "expression has no group".to_string())
    }

    fn expr(&self, e: &Expr) -> Step<SetExpr> {
        Ok(match e {
            Expr::Name(n) => self.set(n)?,
            Expr::Empty(g) => SetExpr::Empty(self.group(g)?),
            Expr::Full(g) => SetExpr::Full(self.group(g)?),
            Expr::Bin(op, a, b) => {
                let (a, b) = (self.expr(a)?, self.expr(b)?);
                if Self::carrier_of(&a)? != Self::carrier_of(&b)? {
                    return Err("operands live in different groups".into());
                }
                match op {
                    Op::Union => SetExpr::Union(vec![a, b]),
                    Op::Intersect => SetExpr::Intersect(vec![a, b]),
                    Op::Diff => SetExpr::diff(a, b),
                }
            }
            Expr::LTranslate(v, x) => {
                let x = self.expr(x)?;
                SetExpr::LTranslate(Self::element(Self::carrier_of(&x)?, v)?, Box::new(x))
            }
            Expr::RTranslate(x, v) => {
                let x = self.expr(x)?;
                let t = Self::element(Self::carrier_of(&x)?, v)?;
                SetExpr::RTranslate(Box::new(x), t)
            }
        })
    }

    fn emit(&mut self, record: Value, text: String) -> Step<()> {
        let line = match self.opts.format {
            Format::Json => serde_json::to_string(&record).expect("serializable"),
            Format::Text => text,
        };
        writeln!(self.out, "{line}").map_err(|e| e.to_string())
    }

    fn declare(&mut self, kind: &StmtKind) -> Step<()> {
        match kind {
            StmtKind::Group { name, kind, n } => {
                let c = match kind {
                    GroupKind::Z => Carrier::zn(*n),
                    GroupKind::Dinf => Carrier::zn_semidirect_c2(*n),
                };
                self.bind(name, Item::Group(c))
            }
            StmtKind::Subgroup { name, group, rows, refl } => {
                let c = self.group(group)?;
                let mut gens = Vec::new();
                for r in rows {
                    gens.push(Self::element(c, &Vector { coords: r.clone(), sign: None })?);
                }
                if let Some(r) = refl {
                    if r.sign.is_some() {
                        return Err("refl takes a translation; its sign is always -".into());
                    }
                    gens.push(Self::element(c, &Vector { coords: r.coords.clone(), sign: Some(Sign::Minus) })?);
                }
                let h = Subgroup::generated(c, &gens).map_err(e2s)?;
                self.bind(name, Item::Subgroup(h))
            }
            StmtKind::Coset { name, subgroup, rep } => {
                let h = match self.get(subgroup)? {
                    Item::Subgroup(h) => h.clone(),
                    other => return Err(format!("'{subgroup}' is a {}, not a subgroup", other.kind())),
                };
                let g = Self::element(h.carrier(), rep)?;
                self.bind(name, Item::Coset(Coset::new(h, g).map_err(e2s)?))
            }
            StmtKind::Set { name, expr } => {
                let e = self.expr(expr)?;
                self.bind(name, Item::Set(e))
            }
            StmtKind::Map { name, source, target, pieces } => {
                let (h, g) = (self.group(source)?, self.group(target)?);
                let mut out = Vec::new();
                for p in pieces {
                    let on = self.coset(&p.on)?;
                    let removals = p.minus.iter().map(|r| self.coset(r)).collect::<Step<Vec<_>>>()?;
                    if p.matrix.len() != h.dim() || p.matrix.iter().any(|r| r.len() != g.dim()) {
                        return Err(format!("matrix for '{}' must be {} x {}", p.on, h.dim(), g.dim()));
                    }
                    let offset = match &p.offset {
                        Some(v) => Self::element(g, v)?,
                        None => g.identity(),
                    };
                    let a = AffinePiece::from_linear(on.clone(), g, &p.matrix, offset).map_err(e2s)?;
                    out.push((OmegaPiece { e0: on, removals }, a));
                }
                let m = PiecewiseAffineMap::new(h, g, out).map_err(e2s)?;
                self.bind(name, Item::Map(m))
            }
            StmtKind::Command(c) => self.command(c),
        }
    }

    fn command(&mut self, c: &Command) -> Step<()> {
        match c {
            Command::Normalize(s) => {
                let nf = to_omega_normal_form(&self.set(s)?).map_err(e2s)?;
                let mut text = format!("normalize {s}: {} piece(s)", nf.pieces.len());
                for p in &nf.pieces {
                    text.push_str(&format!("\n  {}", p.e0));
                    for r in &p.removals {
                        text.push_str(&format!("\n    minus {r}"));
                    }
                }
                self.emit(json!({"command": "normalize", "set": s, "normal_form": nf.to_json()}), text)
            }
            Command::Decompose(s) => {
                let cert = decompose(&self.set(s)?).map_err(e2s)?;
                let path = certificate_path(&self.opts.out_dir, s);
                std::fs::write(&path, json::to_string(&cert)).map_err(|e| format!("{}: {e}", path.display()))?;
                let verdict = check_certificate(&cert);
                self.failed |= !verdict.accepted;
                let mut text = format!(
                    "decompose {s}: {} subgroup(s), certificate {}, check {}",
                    cert.subgroups.len(),
                    path.display(),
                    if verdict.accepted { "passed" } else { "FAILED" }
                );
                for h in &cert.subgroups {
                    text.push_str(&format!("\n  {h}"));
                }
                let record = json!({
                    "command": "decompose",
                    "set": s,
                    "certificate": path.display().to_string(),
                    "subgroups": Value::Array(cert.subgroups.iter().map(Json::to_json).collect()),
                    "accepted": verdict.accepted,
                });
                self.emit(record, text)
            }
            Command::Check(s) => {
                let path = certificate_path(&self.opts.out_dir, s);
                let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                let cert: DecompositionCertificate = json::from_str(&text).map_err(e2s)?;
                let mut verdict = check_certificate(&cert);
                if verdict.accepted && cert.input != self.set(s)? {
                    verdict = Verdict { accepted: false, reason: Some(format!("certificate is not for the current '{s}'")) };
                }
                self.failed |= !verdict.accepted;
                let text = match &verdict.reason {
                    None => format!("check {s}: passed"),
                    Some(r) => format!("check {s}: FAILED ({r})"),
                };
                self.emit(json!({"command": "check", "set": s, "accepted": verdict.accepted, "reason": verdict.reason}), text)
            }
            Command::Member(s, v) => {
                let e = self.set(s)?;
                let g = Self::element(Self::carrier_of(&e)?, v)?;
                let r = eval_membership(&e, &g, None).map_err(e2s)?;
                self.emit(json!({"command": "member", "set": s, "point": g.to_json(), "result": r}), format!("member {s} {v}: {r}"))
            }
            Command::Equal(a, b) => {
                let r = sets_equal(&self.set(a)?, &self.set(b)?).map_err(e2s)?;
                self.emit(json!({"command": "equal", "left": a, "right": b, "result": r}), format!("equal {a} {b}: {r}"))
            }
            Command::Empty(s) => {
                let r = is_empty(&self.set(s)?).map_err(e2s)?;
                self.emit(json!({"command": "empty", "set": s, "result": r}), format!("empty {s}: {r}"))
            }
            Command::Graph { map, bind } => {
                let m = match self.get(map)? {
                    Item::Map(m) => m.clone(),
                    other => return Err(format!("'{map}' is a {}, not a map", other.kind())),
                };
                let g = graph_of(&m).map_err(e2s)?;
                self.emit(json!({"command": "graph", "map": map, "graph": g.to_json()}), format!("graph {map}: {} piece(s)", m.pieces().len()))?;
                match bind {
                    Some(b) => self.bind(b, Item::Set(g)),
                    None => Ok(()),
                }
            }
            Command::Ungraph { set, source, target, bind } => {
                let (h, g) = (self.group(source)?, self.group(target)?);
                let m = pw_affine_from_graph(&self.set(set)?, h, g).map_err(e2s)?;
                let mut text = format!("ungraph {set}: {} piece(s)", m.pieces().len());
                for (p, a) in m.pieces() {
                    let imgs: Vec<String> = a.images().iter().map(|x| x.to_string()).collect();
                    let (s0, g0) = a.base();
                    text.push_str(&format!("\n  on {} ({} removal(s)): {s0} -> {g0}, basis images [{}]", p.e0, p.removals.len(), imgs.join(", ")));
                }
                self.emit(json!({"command": "ungraph", "set": set, "map": m.to_json()}), text)?;
                match bind {
                    Some(b) => self.bind(b, Item::Map(m)),
                    None => Ok(()),
                }
            }
            Command::Compare { left, right, radius } => {
                let (a, b) = (self.set(left)?, self.set(right)?);
                let r = radius.unwrap_or(self.opts.window_radius);
                let w = Window::new(Self::carrier_of(&a)?, r);
                let hit = compare_on_window(&a, &b, &w).map_err(e2s)?;
                let text = match &hit {
                    None => format!("compare {left} {right} radius {r}: agree"),
                    Some(g) => format!("compare {left} {right} radius {r}: differ at {g}"),
                };
                let record = json!({
                    "command": "compare", "left": left, "right": right, "radius": r,
                    "counterexample": hit.as_ref().map_or(Value::Null, Json::to_json),
                });
                self.emit(record, text)
            }
        }
    }
}

/// Parses and executes `source`, writing one line (or one JSON object) per
/// command to `out` and diagnostics to `err`. Returns the exit status.
pub fn run_script(source: &str, opts: &RunOptions, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let stmts = match parse(source) {
        Ok(s) => s,
        Err(d) => {
            let _ = writeln!(err, "error: {d}");
            return EXIT_ERROR;
        }
    };
    let mut runner = Runner { opts, names: BTreeMap::new(), out, failed: false };
    for s in &stmts {
        if let Err(message) = runner.declare(&s.kind) {
            let _ = writeln!(err, "error: {}", Diagnostic { pos: s.pos, message });
            return EXIT_ERROR;
        }
    }
    if runner.failed {
        EXIT_VERIFY
    } else {
        EXIT_OK
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(src: &str, format: Format, dir: &Path) -> (i32, String, String) {
        let opts = RunOptions { format, window_radius: 6, out_dir: dir.to_path_buf() };
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_script(src, &opts, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    const EXAMPLE: &str = "group G = Z^2
subgroup A < G = span [[1,0]]
subgroup B < G = span [[0,1]]
coset C1 = B + (1,0)
set Y = A | C1
decompose Y
check Y
";

    #[test]
    fn decompose_example_writes_certificate() {
        let dir = tempfile::tempdir().unwrap();
        let (code, out, err) = run(EXAMPLE, Format::Json, dir.path());
        assert_eq!(code, EXIT_OK, "{err}");
        assert_eq!(out.lines().count(), 2);
        let path = certificate_path(dir.path(), "Y");
        assert!(check_certificate_file(&path).unwrap().accepted);
    }

    #[test]
    fn exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let (code, out, err) = run("", Format::Text, dir.path());
        assert_eq!((code, out.as_str(), err.as_str()), (EXIT_OK, "", ""));

        let (code, _, err) = run("group G = Z^2\nsubgroup A < G = span [[1,0]\n", Format::Text, dir.path());
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("2:23"), "{err}");

        let (code, _, err) = run("group G = Z^2\nset Y = Q", Format::Text, dir.path());
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("unknown name 'Q'"));

        run(EXAMPLE, Format::Text, dir.path());
        let tampered = EXAMPLE.replace("decompose Y\n", "").replace("set Y = A | C1", "set Y = A");
        let (code, out, _) = run(&tampered, Format::Text, dir.path());
        assert_eq!(code, EXIT_VERIFY, "{out}");
    }

    #[test]
    fn queries_and_maps() {
        let dir = tempfile::tempdir().unwrap();
        let src = "group G = Z^2
group K = Z^1
subgroup L2 < G = span [[2,0],[0,1]]
coset C = L2 + (1,0)
set Y = C | (1,0) + L2
member C (3,2)
equal Y C
empty Y
compare C Y radius 3
map f : G -> K = C -> [[1],[2]] + (-1)
graph f as F
ungraph F : G -> K as g
normalize F
";
        let (code, out, err) = run(src, Format::Text, dir.path());
        assert_eq!(code, EXIT_OK, "{err}");
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "member C (3,2): true");
        assert_eq!(lines[1], "equal Y C: true");
        assert_eq!(lines[2], "empty Y: false");
        assert_eq!(lines[3], "compare C Y radius 3: agree");
        assert!(lines[5].starts_with("ungraph F: 1 piece(s)"));
    }
}
