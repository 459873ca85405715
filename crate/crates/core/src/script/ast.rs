use std::fmt;

use num_bigint::BigInt;

use super::lexer::Pos;
use crate::group::Sign;

/// Literal `(a,b,..)` with an optional `;+` / `;-` sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    pub coords: Vec<BigInt>,
    pub sign: Option<Sign>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Z,
    Dinf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Union,
    Intersect,
    Diff,
}

impl Op {
    fn level(self) -> u8 {
        match self {
            Op::Intersect => 2,
            Op::Union | Op::Diff => 1,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Op::Union => "|",
            Op::Intersect => "&",
            Op::Diff => "\\",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Name(String),
    Empty(String),
    Full(String),
    Bin(Op, Box<Expr>, Box<Expr>),
    LTranslate(Vector, Box<Expr>),
    RTranslate(Box<Expr>, Vector),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapPiece {
    pub on: String,
    pub minus: Vec<String>,
    /// One row per source coordinate.
    pub matrix: Vec<Vec<BigInt>>,
    pub offset: Option<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Normalize(String),
    Decompose(String),
    Check(String),
    Member(String, Vector),
    Equal(String, String),
    Empty(String),
    Graph { map: String, bind: Option<String> },
    Ungraph { set: String, source: String, target: String, bind: Option<String> },
    Compare { left: String, right: String, radius: Option<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Group { name: String, kind: GroupKind, n: usize },
    Subgroup { name: String, group: String, rows: Vec<Vec<BigInt>>, refl: Option<Vector> },
    Coset { name: String, subgroup: String, rep: Vector },
    Set { name: String, expr: Expr },
    Map { name: String, source: String, target: String, pieces: Vec<MapPiece> },
    Command(Command),
}

#[derive(Clone, Debug)]
pub struct Stmt {
    pub pos: Pos,
    pub kind: StmtKind,
}

fn join<T: fmt::Display>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

struct Rows<'a>(&'a [Vec<BigInt>]);

impl fmt::Display for Rows<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.0.iter().map(|r| format!("[{}]", join(r, ","))).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", join(&self.coords, ","))?;
        match self.sign {
            Some(Sign::Plus) => write!(f, ";+)"),
            Some(Sign::Minus) => write!(f, ";-)"),
            None => write!(f, ")"),
        }
    }
}

impl Expr {
    /// Binding strength: operators 1-2, translates 3-4, atoms 5.
    fn level(&self) -> u8 {
        match self {
            Expr::Bin(op, ..) => op.level(),
            Expr::LTranslate(..) => 3,
            Expr::RTranslate(..) => 4,
            _ => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Name(n) => write!(f, "{n}"),
            Expr::Empty(g) => write!(f, "empty {g}"),
            Expr::Full(g) => write!(f, "full {g}"),
            Expr::Bin(op, a, b) => {
                a.fmt_at(f, op.level())?;
                write!(f, " {} ", op.symbol())?;
                b.fmt_at(f, op.level() + 1)
            }
            Expr::LTranslate(v, x) => {
                write!(f, "{v} + ")?;
                x.fmt_at(f, 3)
            }
            Expr::RTranslate(x, v) => {
                x.fmt_at(f, 4)?;
                write!(f, " + {v}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl fmt::Display for MapPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.on)?;
        if !self.minus.is_empty() {
            write!(f, " minus {}", self.minus.join(", "))?;
        }
        write!(f, " -> {}", Rows(&self.matrix))?;
        if let Some(v) = &self.offset {
            write!(f, " + {v}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bind = |b: &Option<String>| b.as_ref().map(|n| format!(" as {n}")).unwrap_or_default();
        match self {
            Command::Normalize(s) => write!(f, "normalize {s}"),
            Command::Decompose(s) => write!(f, "decompose {s}"),
            Command::Check(s) => write!(f, "check {s}"),
            Command::Member(s, v) => write!(f, "member {s} {v}"),
            Command::Equal(a, b) => write!(f, "equal {a} {b}"),
            Command::Empty(s) => write!(f, "empty {s}"),
            Command::Graph { map, bind: b } => write!(f, "graph {map}{}", bind(b)),
            Command::Ungraph { set, source, target, bind: b } => {
                write!(f, "ungraph {set} : {source} -> {target}{}", bind(b))
            }
            Command::Compare { left, right, radius } => {
                write!(f, "compare {left} {right}")?;
                if let Some(r) = radius {
                    write!(f, " radius {r}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for StmtKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StmtKind::Group { name, kind, n } => {
                let k = if *kind == GroupKind::Z { "Z" } else { "Dinf" };
                write!(f, "group {name} = {k}^{n}")
            }
            StmtKind::Subgroup { name, group, rows, refl } => {
                write!(f, "subgroup {name} < {group} = span {}", Rows(rows))?;
                if let Some(r) = refl {
                    write!(f, " refl {r}")?;
                }
                Ok(())
            }
            StmtKind::Coset { name, subgroup, rep } => write!(f, "coset {name} = {subgroup} + {rep}"),
            StmtKind::Set { name, expr } => write!(f, "set {name} = {expr}"),
            StmtKind::Map { name, source, target, pieces } => {
                write!(f, "map {name} : {source} -> {target} = {}", join(pieces, " | "))
            }
            StmtKind::Command(c) => write!(f, "{c}"),
        }
    }
}

/// One statement per line.
pub fn pretty(stmts: &[Stmt]) -> String {
    stmts.iter().map(|s| format!("{}\n", s.kind)).collect()
}
