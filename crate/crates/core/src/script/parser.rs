use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ast::*;
use super::lexer::{lex, Diagnostic, Pos, Tok, Token};
use crate::group::Sign;

const KEYWORDS: &[&str] = &[
    "group", "subgroup", "coset", "set", "map", "span", "refl", "empty", "full", "minus", "radius", "as",
    "normalize", "decompose", "check", "member", "equal", "graph", "ungraph", "compare",
];

type PResult<T> = Result<T, Diagnostic>;

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, what: &str) -> PResult<T> {
        let t = self.peek();
        Err(Diagnostic { pos: t.pos, message: format!("expected {what}, found {}", t.tok) })
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek().tok, Tok::Punct(q) if q == p)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == w)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        let hit = self.is_punct(p);
        if hit {
            self.next();
        }
        hit
    }

    fn eat_word(&mut self, w: &str) -> bool {
        let hit = self.is_word(w);
        if hit {
            self.next();
        }
        hit
    }

    fn punct(&mut self, p: &str) -> PResult<()> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            self.fail(&format!("'{p}'"))
        }
    }

    fn word(&mut self, w: &str) -> PResult<()> {
        if self.eat_word(w) {
            Ok(())
        } else {
            self.fail(&format!("'{w}'"))
        }
    }

    fn name(&mut self) -> PResult<String> {
        match &self.peek().tok {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.next();
                Ok(s)
            }
            _ => self.fail("a name"),
        }
    }

    fn nat(&mut self) -> PResult<BigInt> {
        match &self.peek().tok {
            Tok::Int(n) => {
                let n = n.clone();
                self.next();
                Ok(n)
            }
            _ => self.fail("an integer"),
        }
    }

    fn small(&mut self) -> PResult<u64> {
        let pos = self.peek().pos;
        self.nat()?.to_u64().ok_or(Diagnostic { pos, message: "integer too large".into() })
    }

    fn int(&mut self) -> PResult<BigInt> {
        if self.eat_punct("-") {
            Ok(-self.nat()?)
        } else {
            self.nat()
        }
    }

    fn ints(&mut self, close: &str) -> PResult<Vec<BigInt>> {
        let mut out = vec![self.int()?];
        while self.eat_punct(",") {
            out.push(self.int()?);
        }
        if !self.is_punct(close) && !self.is_punct(";") {
            return self.fail(&format!("',' or '{close}'"));
        }
        Ok(out)
    }

    fn vector(&mut self) -> PResult<Vector> {
        self.punct("(")?;
        let coords = self.ints(")")?;
        let sign = if self.eat_punct(";") {
            if self.eat_punct("+") {
                Some(Sign::Plus)
            } else if self.eat_punct("-") {
                Some(Sign::Minus)
            } else {
                return self.fail("'+' or '-'");
            }
        } else {
            None
        };
        self.punct(")")?;
        Ok(Vector { coords, sign })
    }

    fn rows(&mut self) -> PResult<Vec<Vec<BigInt>>> {
        self.punct("[")?;
        let mut rows = Vec::new();
        if !self.is_punct("]") {
            loop {
                self.punct("[")?;
                rows.push(self.ints("]")?);
                self.punct("]")?;
                if !self.eat_punct(",") {
                    break;
                }
            }
        }
        self.punct("]")?;
        Ok(rows)
    }

    fn starts_vector(&self) -> bool {
        self.is_punct("(") && matches!(self.peek2(), Tok::Int(_) | Tok::Punct("-"))
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut e = self.term()?;
        loop {
            let op = if self.eat_punct("|") {
                Op::Union
            } else if self.eat_punct("\\") {
                Op::Diff
            } else {
                return Ok(e);
            };
            e = Expr::Bin(op, Box::new(e), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut e = self.unary()?;
        while self.eat_punct("&") {
            e = Expr::Bin(Op::Intersect, Box::new(e), Box::new(self.unary()?));
        }
        Ok(e)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.starts_vector() {
            let v = self.vector()?;
            self.punct("+")?;
            return Ok(Expr::LTranslate(v, Box::new(self.unary()?)));
        }
        let mut e = self.primary()?;
        while self.eat_punct("+") {
            e = Expr::RTranslate(Box::new(e), self.vector()?);
        }
        Ok(e)
    }

    fn primary(&mut self) -> PResult<Expr> {
        if self.eat_word("empty") {
            return Ok(Expr::Empty(self.name()?));
        }
        if self.eat_word("full") {
            return Ok(Expr::Full(self.name()?));
        }
        if self.eat_punct("(") {
            let e = self.expr()?;
            self.punct(")")?;
            return Ok(e);
        }
        if matches!(self.peek().tok, Tok::Ident(_)) {
            return Ok(Expr::Name(self.name()?));
        }
        self.fail("a set expression")
    }

    fn map_piece(&mut self) -> PResult<MapPiece> {
        let on = self.name()?;
        let mut minus = Vec::new();
        if self.eat_word("minus") {
            minus.push(self.name()?);
            while self.eat_punct(",") {
                minus.push(self.name()?);
            }
        }
        self.punct("->")?;
        let matrix = self.rows()?;
        let offset = if self.eat_punct("+") { Some(self.vector()?) } else { None };
        Ok(MapPiece { on, minus, matrix, offset })
    }

    fn bind(&mut self) -> PResult<Option<String>> {
        if self.eat_word("as") {
            Ok(Some(self.name()?))
        } else {
            Ok(None)
        }
    }

    fn statement(&mut self) -> PResult<StmtKind> {
        let Tok::Ident(head) = self.peek().tok.clone() else { return self.fail("a statement") };
        self.next();
        Ok(match head.as_str() {
            "group" => {
                let name = self.name()?;
                self.punct("=")?;
                let kind = if self.eat_word("Z") {
                    GroupKind::Z
                } else if self.eat_word("Dinf") {
                    GroupKind::Dinf
                } else {
                    return self.fail("'Z' or 'Dinf'");
                };
                self.punct("^")?;
                let pos = self.peek().pos;
                let n = self.small()? as usize;
                if n == 0 || n > 32 {
                    return Err(Diagnostic { pos, message: format!("rank {n} out of range 1..=32") });
                }
                StmtKind::Group { name, kind, n }
            }
            "subgroup" => {
                let name = self.name()?;
                self.punct("<")?;
                let group = self.name()?;
                self.punct("=")?;
                self.word("span")?;
                let rows = self.rows()?;
                let refl = if self.eat_word("refl") { Some(self.vector()?) } else { None };
                StmtKind::Subgroup { name, group, rows, refl }
            }
            "coset" => {
                let name = self.name()?;
                self.punct("=")?;
                let subgroup = self.name()?;
                self.punct("+")?;
                StmtKind::Coset { name, subgroup, rep: self.vector()? }
            }
            "set" => {
                let name = self.name()?;
                self.punct("=")?;
                StmtKind::Set { name, expr: self.expr()? }
            }
            "map" => {
                let name = self.name()?;
                self.punct(":")?;
                let source = self.name()?;
                self.punct("->")?;
                let target = self.name()?;
                self.punct("=")?;
                let mut pieces = vec![self.map_piece()?];
                while self.eat_punct("|") {
                    pieces.push(self.map_piece()?);
                }
                StmtKind::Map { name, source, target, pieces }
            }
            "normalize" => StmtKind::Command(Command::Normalize(self.name()?)),
            "decompose" => StmtKind::Command(Command::Decompose(self.name()?)),
            "check" => StmtKind::Command(Command::Check(self.name()?)),
            "member" => {
                let s = self.name()?;
                StmtKind::Command(Command::Member(s, self.vector()?))
            }
            "equal" => {
                let a = self.name()?;
                StmtKind::Command(Command::Equal(a, self.name()?))
            }
            "empty" => StmtKind::Command(Command::Empty(self.name()?)),
            "graph" => {
                let map = self.name()?;
                StmtKind::Command(Command::Graph { map, bind: self.bind()? })
            }
            "ungraph" => {
                let set = self.name()?;
                self.punct(":")?;
                let source = self.name()?;
                self.punct("->")?;
                let target = self.name()?;
                StmtKind::Command(Command::Ungraph { set, source, target, bind: self.bind()? })
            }
            "compare" => {
                let left = self.name()?;
                let right = self.name()?;
                let radius = if self.eat_word("radius") { Some(self.small()?) } else { None };
                StmtKind::Command(Command::Compare { left, right, radius })
            }
            _ => {
                self.at -= 1;
                return self.fail("a statement keyword");
            }
        })
    }
}

/// Parses a whole script; the first error aborts.
pub fn parse(src: &str) -> Result<Vec<Stmt>, Diagnostic> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let mut out = Vec::new();
    loop {
        while p.peek().tok == Tok::End {
            p.next();
        }
        if p.peek().tok == Tok::Eof {
            return Ok(out);
        }
        let pos: Pos = p.peek().pos;
        let kind = p.statement()?;
        if !matches!(p.peek().tok, Tok::End | Tok::Eof) {
            return p.fail("end of statement");
        }
        out.push(Stmt { pos, kind });
    }
}
