use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use crate::field::{Poly, Rational};

/// First syntax or scoping error in a script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: expected {}, found {}",
            self.line, self.column, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

const KEYWORDS: &[&str] = &[
    "point",
    "line",
    "ray",
    "circle",
    "through",
    "from",
    "toward",
    "center",
    "intersect",
    "midpoint",
    "foot",
    "on",
    "erect",
    "side",
    "transport",
    "onto",
    "triangle_copy",
    "bisect",
    "copy_angle",
    "assert",
    "congruent",
    "between",
    "right_angle",
    "collinear",
    "same_side",
    "of",
    "nearest",
    "eps",
];

pub fn is_keyword(w: &str) -> bool {
    KEYWORDS.contains(&w)
}

pub fn parse(src: &str) -> Result<Script, ParseError> {
    let tokens = tokenize(src).map_err(|(pos, c)| ParseError {
        line: pos.line,
        column: pos.column,
        expected: "a statement".into(),
        found: format!("character `{c}`"),
    })?;
    let mut p = Parser {
        tokens,
        at: 0,
        scope: HashMap::new(),
    };
    let mut stmts = Vec::new();
    loop {
        match p.peek().tok {
            Tok::Eof => break,
            Tok::Newline => {
                p.at += 1;
            }
            _ => {
                let stmt = p.statement()?;
                p.expect_tok(Tok::Newline, "end of line")?;
                stmts.push(stmt);
            }
        }
    }
    Ok(Script { stmts })
}

type PResult<T> = Result<T, ParseError>;

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    scope: HashMap<String, Kind>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error_at(&self, t: &Token, expected: &str) -> ParseError {
        ParseError {
            line: t.pos.line,
            column: t.pos.column,
            expected: expected.into(),
            found: t.tok.describe(),
        }
    }

    fn fail<T>(&self, expected: &str) -> PResult<T> {
        Err(self.error_at(self.peek(), expected))
    }

    fn expect_tok(&mut self, tok: Tok, expected: &str) -> PResult<()> {
        if self.peek().tok == tok {
            self.next();
            Ok(())
        } else {
            self.fail(expected)
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        match &self.peek().tok {
            Tok::Word(w) if w == kw => {
                self.next();
                Ok(())
            }
            _ => self.fail(&format!("`{kw}`")),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Word(w) if w == kw)
    }

    fn fresh_name(&mut self) -> PResult<(String, Token)> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Word(w) if !is_keyword(w) => {
                if self.scope.contains_key(w) {
                    return Err(ParseError {
                        line: t.pos.line,
                        column: t.pos.column,
                        expected: "a name not defined earlier".into(),
                        found: format!("`{w}` (already defined)"),
                    });
                }
                self.next();
                Ok((w.clone(), t))
            }
            _ => self.fail("a name"),
        }
    }

    /// A previously declared name of one of `kinds`.
    fn used_name(&mut self, kinds: &[Kind]) -> PResult<String> {
        let t = self.peek().clone();
        let expected = describe_kinds(kinds);
        match &t.tok {
            Tok::Word(w) if !is_keyword(w) => match self.scope.get(w) {
                None => Err(ParseError {
                    line: t.pos.line,
                    column: t.pos.column,
                    expected: format!("a declared {expected}"),
                    found: format!("undeclared `{w}`"),
                }),
                Some(k) if !kinds.contains(k) => Err(ParseError {
                    line: t.pos.line,
                    column: t.pos.column,
                    expected,
                    found: format!("{k} `{w}`"),
                }),
                Some(_) => {
                    self.next();
                    Ok(w.clone())
                }
            },
            _ => self.fail(&expected),
        }
    }

    fn point(&mut self) -> PResult<String> {
        self.used_name(&[Kind::Point])
    }

    fn statement(&mut self) -> PResult<Stmt> {
        let start = self.peek().clone();
        let kind = match &start.tok {
            Tok::Word(w) => match w.as_str() {
                "point" => self.decl_point()?,
                "line" => {
                    self.next();
                    let (name, _) = self.fresh_name()?;
                    self.expect_tok(Tok::Eq, "`=`")?;
                    self.keyword("through")?;
                    let from = self.point()?;
                    let to = self.point()?;
                    StmtKind::Line { name, from, to }
                }
                "ray" => {
                    self.next();
                    let (name, _) = self.fresh_name()?;
                    self.expect_tok(Tok::Eq, "`=`")?;
                    self.keyword("from")?;
                    let from = self.point()?;
                    self.keyword("toward")?;
                    let toward = self.point()?;
                    StmtKind::Ray { name, from, toward }
                }
                "circle" => {
                    self.next();
                    let (name, _) = self.fresh_name()?;
                    self.expect_tok(Tok::Eq, "`=`")?;
                    self.keyword("center")?;
                    let center = self.point()?;
                    self.keyword("through")?;
                    let through = self.point()?;
                    StmtKind::Circle { name, center, through }
                }
                "assert" => {
                    self.next();
                    StmtKind::Assert(self.assertion()?)
                }
                w if is_keyword(w) => return self.fail("a statement"),
                _ => {
                    let (name, _) = self.fresh_name()?;
                    self.expect_tok(Tok::Eq, "`=`")?;
                    let op = self.construction()?;
                    StmtKind::Construct { name, op }
                }
            },
            _ => return self.fail("a statement"),
        };
        if let Some((name, k)) = kind.defines() {
            self.scope.insert(name.to_string(), k);
        }
        Ok(Stmt {
            pos: start.pos,
            kind,
        })
    }

    fn decl_point(&mut self) -> PResult<StmtKind> {
        self.keyword("point")?;
        let (name, _) = self.fresh_name()?;
        self.expect_tok(Tok::Eq, "`=`")?;
        self.expect_tok(Tok::LParen, "`(`")?;
        let x = self.poly()?;
        self.expect_tok(Tok::Comma, "`,`")?;
        let y = self.poly()?;
        self.expect_tok(Tok::RParen, "`)`")?;
        Ok(StmtKind::Point { name, x, y })
    }

    /// `["-"] term {("+" | "-") term}`
    fn poly(&mut self) -> PResult<Poly> {
        let mut negate = false;
        if self.peek().tok == Tok::Minus {
            self.next();
            negate = true;
        } else if self.peek().tok == Tok::Plus {
            self.next();
        }
        let mut acc = Poly::zero();
        loop {
            let t = self.term()?;
            acc = acc.add(&if negate { t.neg() } else { t });
            match self.peek().tok {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => return Ok(acc),
            }
            self.next();
        }
    }

    /// `coeff ["*" monomial] | monomial` where `monomial = "eps" ["^" INT]`.
    fn term(&mut self) -> PResult<Poly> {
        if self.at_keyword("eps") {
            let k = self.monomial()?;
            return Ok(Poly::monomial(Rational::from_integer(1.into()), k));
        }
        let c = self.coeff()?;
        if self.peek().tok == Tok::Star {
            self.next();
            let k = self.monomial()?;
            Ok(Poly::monomial(c, k))
        } else {
            Ok(Poly::constant(c))
        }
    }

    fn monomial(&mut self) -> PResult<usize> {
        self.keyword("eps")?;
        if self.peek().tok != Tok::Caret {
            return Ok(1);
        }
        self.next();
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(n) => match usize::try_from(n) {
                Ok(k) if k <= 64 => {
                    self.next();
                    Ok(k)
                }
                _ => self.fail("an exponent at most 64"),
            },
            _ => self.fail("an exponent"),
        }
    }

    fn int(&mut self, expected: &str) -> PResult<BigInt> {
        match &self.peek().tok {
            Tok::Int(n) => {
                let n = n.clone();
                self.next();
                Ok(n)
            }
            _ => self.fail(expected),
        }
    }

    fn coeff(&mut self) -> PResult<Rational> {
        let n = self.int("a number or `eps`")?;
        if self.peek().tok != Tok::Slash {
            return Ok(Rational::from_integer(n));
        }
        self.next();
        if matches!(&self.peek().tok, Tok::Int(d) if d.is_zero()) {
            return self.fail("a nonzero denominator");
        }
        let d = self.int("a denominator")?;
        Ok(Rational::new(n, d))
    }

    fn sign(&mut self) -> PResult<Side> {
        let side = match self.peek().tok {
            Tok::Minus => {
                self.next();
                Side::Right
            }
            Tok::Plus => {
                self.next();
                Side::Left
            }
            _ => Side::Left,
        };
        match &self.peek().tok {
            Tok::Int(n) if *n == BigInt::from(1) => {
                self.next();
                Ok(side)
            }
            _ => self.fail("`+1` or `-1`"),
        }
    }

    fn angle_ref(&mut self) -> PResult<AngleRef> {
        Ok(AngleRef {
            a: self.point()?,
            vertex: self.point()?,
            b: self.point()?,
        })
    }

    fn seg_ref(&mut self) -> PResult<SegRef> {
        Ok(SegRef {
            a: self.point()?,
            b: self.point()?,
        })
    }

    fn construction(&mut self) -> PResult<Construction> {
        const STRAIGHT: &[Kind] = &[Kind::Line, Kind::Ray];
        const CURVES: &[Kind] = &[Kind::Line, Kind::Ray, Kind::Circle];
        let word = match &self.peek().tok {
            Tok::Word(w) => w.clone(),
            _ => return self.fail("a construction"),
        };
        let op = match word.as_str() {
            "intersect" => {
                self.next();
                let first = self.used_name(CURVES)?;
                let second = self.used_name(CURVES)?;
                let disamb = if self.at_keyword("side") {
                    self.next();
                    let side = self.sign()?;
                    self.keyword("of")?;
                    let line = self.used_name(STRAIGHT)?;
                    Disambiguator::Side { side, line }
                } else if self.at_keyword("nearest") {
                    self.next();
                    Disambiguator::Nearest(self.point()?)
                } else {
                    return self.fail("`side` or `nearest`");
                };
                Construction::Intersect {
                    first,
                    second,
                    disamb,
                }
            }
            "midpoint" => {
                self.next();
                Construction::Midpoint {
                    a: self.point()?,
                    b: self.point()?,
                }
            }
            "foot" => {
                self.next();
                let point = self.point()?;
                self.keyword("on")?;
                let line = self.used_name(STRAIGHT)?;
                Construction::Foot { point, line }
            }
            "erect" => {
                self.next();
                let point = self.point()?;
                self.keyword("on")?;
                let line = self.used_name(STRAIGHT)?;
                self.keyword("side")?;
                let side = self.sign()?;
                Construction::Erect { point, line, side }
            }
            "transport" => {
                self.next();
                let a = self.point()?;
                let b = self.point()?;
                self.keyword("onto")?;
                let ray = self.used_name(&[Kind::Ray])?;
                Construction::Transport { a, b, ray }
            }
            "triangle_copy" => {
                self.next();
                let a = self.point()?;
                let b = self.point()?;
                let c = self.point()?;
                self.keyword("onto")?;
                let a2 = self.point()?;
                let b2 = self.point()?;
                self.keyword("side")?;
                let side = self.sign()?;
                Construction::TriangleCopy {
                    a,
                    b,
                    c,
                    a2,
                    b2,
                    side,
                }
            }
            "bisect" => {
                self.next();
                Construction::Bisect(self.angle_ref()?)
            }
            "copy_angle" => {
                self.next();
                let angle = self.angle_ref()?;
                self.keyword("onto")?;
                let ray = self.used_name(&[Kind::Ray])?;
                self.keyword("side")?;
                let side = self.sign()?;
                Construction::CopyAngle { angle, ray, side }
            }
            _ => return self.fail("a construction"),
        };
        Ok(op)
    }

    fn assertion(&mut self) -> PResult<Assertion> {
        let word = match &self.peek().tok {
            Tok::Word(w) => w.clone(),
            _ => return self.fail("an assertion"),
        };
        let a = match word.as_str() {
            "congruent" => {
                self.next();
                Assertion::Congruent(self.seg_ref()?, self.seg_ref()?)
            }
            "between" => {
                self.next();
                Assertion::Between(self.point()?, self.point()?, self.point()?)
            }
            "right_angle" => {
                self.next();
                Assertion::RightAngle(self.angle_ref()?)
            }
            "collinear" => {
                self.next();
                Assertion::Collinear(self.point()?, self.point()?, self.point()?)
            }
            "same_side" => {
                self.next();
                let p = self.point()?;
                let q = self.point()?;
                self.keyword("of")?;
                let line = self.used_name(&[Kind::Line, Kind::Ray])?;
                Assertion::SameSide { p, q, line }
            }
            _ => return self.fail("an assertion"),
        };
        Ok(a)
    }
}

fn describe_kinds(kinds: &[Kind]) -> String {
    let names: Vec<String> = kinds.iter().map(|k| k.to_string()).collect();
    match names.len() {
        1 => format!("{} name", names[0]),
        _ => format!("{} name", names.join(" or ")),
    }
}
