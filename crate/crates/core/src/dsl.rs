//! Group-description language and word parsing.
//!
//! Grammar:
//!
//! ```text
//! expr := "Z" [ "^" int | "/" int ]
//!       | "BS" "(" "1" "," int ")"
//!       | "product" "(" expr "," expr ")"
//!       | "wr" "(" expr "," expr ")"          bottom, top
//!       | "lwr" "(" expr "," int ")"          left-iterated, depth d
//!       | "rwr" "(" expr "," expr "," int ")" right-iterated, depth d
//!       | "freesolvable" "(" int "," int ")"  degree, rank
//! ```
//!
//! `product` is defined for abelian operands, which is the only place the
//! decision procedures need direct products. Capability constraints are
//! not imposed syntactically: `wr(Z, BS(1,2))` parses and builds, and
//! conjugacy queries on it fail at query time.
//!
//! Words are whitespace-separated generator names with optional integer
//! exponents: `a1 t1^-1 l2.a1^3`.

use std::collections::HashMap;

use crate::abelian::AbelianGroup;
use crate::bs::BaumslagSolitar;
use crate::error::Error;
use crate::group::Group;
use crate::solvable::FreeSolvableGroup;
use crate::word::{Letter, Word};
use crate::wreath::WreathGroup;

/// Abstract syntax of a group description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    Z,
    ZPow(u64),
    ZMod(u64),
    Product(Box<GroupExpr>, Box<GroupExpr>),
    Bs(u64),
    Wr(Box<GroupExpr>, Box<GroupExpr>),
    Lwr(Box<GroupExpr>, u64),
    Rwr(Box<GroupExpr>, Box<GroupExpr>, u64),
    FreeSolvable(u64, u64),
}

/// Syntax error with a byte position into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Number(u64),
    LParen,
    RParen,
    Comma,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            ',' => {
                out.push((i, Token::Comma));
                i += 1;
            }
            '/' => {
                out.push((i, Token::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: u64 = text[start..i].parse().map_err(|_| ParseError {
                    position: start,
                    message: "number out of range".into(),
                })?;
                out.push((start, Token::Number(n)));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
            }
            _ => {
                return Err(ParseError {
                    position: i,
                    message: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Token)> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        let position = self
            .tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end);
        ParseError {
            position,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), ParseError> {
        match self.next() {
            Some((_, t)) if t == want => Ok(()),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err(format!("expected {what}")))
            }
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        match self.next() {
            Some((_, Token::Number(n))) => Ok(n),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err("expected a number"))
            }
        }
    }

    fn expr(&mut self) -> Result<GroupExpr, ParseError> {
        let (_, tok) = self.next().ok_or_else(|| self.err("expected a group expression"))?;
        let name = match tok {
            Token::Ident(s) => s,
            _ => {
                self.pos -= 1;
                return Err(self.err("expected a group expression"));
            }
        };
        match name.as_str() {
            "Z" => match self.peek() {
                Some((_, Token::Caret)) => {
                    self.next();
                    Ok(GroupExpr::ZPow(self.number()?))
                }
                Some((_, Token::Slash)) => {
                    self.next();
                    Ok(GroupExpr::ZMod(self.number()?))
                }
                _ => Ok(GroupExpr::Z),
            },
            "BS" => {
                self.expect(Token::LParen, "`(`")?;
                let one = self.number()?;
                if one != 1 {
                    self.pos -= 1;
                    return Err(self.err("only BS(1, q) is supported"));
                }
                self.expect(Token::Comma, "`,`")?;
                let q = self.number()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(GroupExpr::Bs(q))
            }
            "product" => {
                self.expect(Token::LParen, "`(`")?;
                let a = self.expr()?;
                self.expect(Token::Comma, "`,`")?;
                let b = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(GroupExpr::Product(Box::new(a), Box::new(b)))
            }
            "wr" => {
                self.expect(Token::LParen, "`(`")?;
                let a = self.expr()?;
                self.expect(Token::Comma, "`,`")?;
                let b = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(GroupExpr::Wr(Box::new(a), Box::new(b)))
            }
            "lwr" => {
                self.expect(Token::LParen, "`(`")?;
                let a = self.expr()?;
                self.expect(Token::Comma, "`,`")?;
                let d = self.number()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(GroupExpr::Lwr(Box::new(a), d))
            }
            "rwr" => {
                self.expect(Token::LParen, "`(`")?;
                let a = self.expr()?;
                self.expect(Token::Comma, "`,`")?;
                let b = self.expr()?;
                self.expect(Token::Comma, "`,`")?;
                let d = self.number()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(GroupExpr::Rwr(Box::new(a), Box::new(b), d))
            }
            "freesolvable" => {
                self.expect(Token::LParen, "`(`")?;
                let d = self.number()?;
                self.expect(Token::Comma, "`,`")?;
                let r = self.number()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(GroupExpr::FreeSolvable(d, r))
            }
            other => {
                self.pos -= 1;
                Err(self.err(format!("unknown group constructor `{other}`")))
            }
        }
    }
}

/// Parse a group description into its abstract syntax.
pub fn parse_group_expr(text: &str) -> Result<GroupExpr, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input after group expression"));
    }
    Ok(e)
}

impl GroupExpr {
    /// Build a handle, certifying smoothness of torsion orders under beta.
    pub fn build(&self, beta: u32) -> Result<Group, Error> {
        match self {
            GroupExpr::Z => Ok(Group::Abelian(AbelianGroup::z(beta))),
            GroupExpr::ZPow(r) => {
                if *r < 1 {
                    return Err(Error::InvalidGroup("Z^r requires r >= 1".into()));
                }
                Ok(Group::Abelian(AbelianGroup::new(*r as usize, Vec::new(), beta)?))
            }
            GroupExpr::ZMod(n) => Ok(Group::Abelian(AbelianGroup::z_mod(*n, beta)?)),
            GroupExpr::Product(a, b) => {
                let (ga, gb) = (a.build(beta)?, b.build(beta)?);
                match (ga, gb) {
                    (Group::Abelian(x), Group::Abelian(y)) => {
                        let mut torsion = x.torsion_moduli().to_vec();
                        torsion.extend_from_slice(y.torsion_moduli());
                        Ok(Group::Abelian(AbelianGroup::new(
                            x.free_rank() + y.free_rank(),
                            torsion,
                            beta,
                        )?))
                    }
                    _ => Err(Error::InvalidGroup(
                        "product(...) takes abelian operands".into(),
                    )),
                }
            }
            GroupExpr::Bs(q) => Ok(Group::BaumslagSolitar(BaumslagSolitar::new(*q, beta)?)),
            GroupExpr::Wr(a, b) => Ok(Group::Wreath(Box::new(WreathGroup::new(
                a.build(beta)?,
                b.build(beta)?,
            )))),
            GroupExpr::Lwr(a, d) => {
                if *d < 1 {
                    return Err(Error::InvalidGroup("lwr depth must be >= 1".into()));
                }
                let mut g = a.build(beta)?;
                for _ in 1..*d {
                    g = Group::Wreath(Box::new(WreathGroup::new(a.build(beta)?, g)));
                }
                Ok(g)
            }
            GroupExpr::Rwr(a, b, d) => {
                if *d < 1 {
                    return Err(Error::InvalidGroup("rwr depth must be >= 1".into()));
                }
                let mut g = Group::Wreath(Box::new(WreathGroup::new(
                    a.build(beta)?,
                    b.build(beta)?,
                )));
                for _ in 1..*d {
                    g = Group::Wreath(Box::new(WreathGroup::new(g, b.build(beta)?)));
                }
                Ok(g)
            }
            GroupExpr::FreeSolvable(d, r) => {
                let d = u32::try_from(*d)
                    .map_err(|_| Error::InvalidGroup("degree out of range".into()))?;
                Ok(Group::FreeSolvable(Box::new(FreeSolvableGroup::new(
                    d,
                    *r as usize,
                    beta,
                )?)))
            }
        }
    }
}

/// Parse a word over the group's named generators: whitespace-separated
/// `name` or `name^k` tokens, `k` a possibly negative integer.
pub fn parse_word(group: &Group, text: &str) -> Result<Word, Error> {
    const MAX_EXPONENT: i64 = 1_000_000;
    let names = group.generator_names();
    let index: HashMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        let (name, exp) = match tok.split_once('^') {
            None => (tok, 1i64),
            Some((n, e)) => (
                n,
                e.parse::<i64>().map_err(|_| {
                    Error::WordSyntax(format!("bad exponent `{e}` in `{tok}`"))
                })?,
            ),
        };
        let &gi = index
            .get(name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))?;
        if exp.unsigned_abs() > MAX_EXPONENT as u64 {
            return Err(Error::WordSyntax(format!("exponent too large in `{tok}`")));
        }
        for _ in 0..exp.unsigned_abs() {
            letters.push(Letter::new(gi, exp < 0));
        }
    }
    Ok(Word::from_letters(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(text: &str) -> Group {
        parse_group_expr(text).unwrap().build(64).unwrap()
    }

    #[test]
    fn parses_lamplighter() {
        let g = build("wr(Z/2, Z)");
        assert_eq!(g.describe(), "wr(Z/2, Z)");
        assert_eq!(g.generator_names(), vec!["a1", "t1"]);
    }

    #[test]
    fn parses_free_solvable() {
        let g = build("freesolvable(2, 2)");
        assert_eq!(g.generator_names(), vec!["x1", "x2"]);
        assert!(g.is_torsion_free());
    }

    #[test]
    fn capability_gap_surfaces_at_query_time() {
        let g = build("wr(Z, BS(1,2))");
        let x = g.identity();
        assert!(matches!(g.cp(&x, &x), Err(Error::Unsupported(_))));
    }

    #[test]
    fn nested_names_are_level_qualified() {
        let g = build("wr(Z/2, wr(Z, Z/3))");
        assert_eq!(g.generator_names(), vec!["a1", "l2.a1", "l2.t1"]);
        let g = build("rwr(Z/2, Z, 2)");
        assert_eq!(g.generator_names(), vec!["l2.a1", "l2.t1", "t1"]);
        let g = build("lwr(Z/2, 3)");
        assert_eq!(g.generator_names(), vec!["a1", "l2.a1", "l2.t1"]);
    }

    #[test]
    fn products_merge_abelian_groups() {
        let g = build("product(Z^2, Z/4)");
        assert_eq!(g.num_generators(), 3);
        assert!(!g.is_torsion_free());
        assert!(matches!(
            parse_group_expr("product(Z, BS(1,2))").unwrap().build(64),
            Err(Error::InvalidGroup(_))
        ));
    }

    #[test]
    fn reports_error_positions() {
        let err = parse_group_expr("wr(Z/2 Z)").unwrap_err();
        assert_eq!(err.position, 7);
        let err = parse_group_expr("wr(Z/2, Z) trailing").unwrap_err();
        assert_eq!(err.position, 11);
        assert!(parse_group_expr("BS(2,3)").is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(parse_group_expr("Z/1").unwrap().build(64).is_err());
        assert!(parse_group_expr("BS(1,1)").unwrap().build(64).is_err());
        assert!(parse_group_expr("lwr(Z/2, 0)").unwrap().build(64).is_err());
        // non-smooth torsion is a build error, not a syntax error
        assert!(matches!(
            parse_group_expr("Z/67").unwrap().build(64),
            Err(Error::NotSmooth { .. })
        ));
    }

    #[test]
    fn words_with_exponents() {
        let g = build("wr(Z/2, Z)");
        let w = parse_word(&g, "a1 t1^-1 a1^3").unwrap();
        assert_eq!(w.len(), 5);
        assert!(w.letters[1].inverse);
        assert!(matches!(
            parse_word(&g, "b2"),
            Err(Error::UnknownName(_))
        ));
        assert!(matches!(
            parse_word(&g, "a1^x"),
            Err(Error::WordSyntax(_))
        ));
    }

    #[test]
    fn iterated_wreath_round_trip() {
        // lwr(A, d) is A wr (A wr ... ) with d factors; rwr nests leftward
        let g = build("lwr(Z/2, 2)");
        assert_eq!(g.describe(), "wr(Z/2, Z/2)");
        let g = build("rwr(Z/2, Z/3, 2)");
        assert_eq!(g.describe(), "wr(wr(Z/2, Z/3), Z/3)");
    }
}
