//! The group-expression language.
//!
//! ```text
//! expr    := term (("x" | "×") term)*
//! term    := atom ("^" int)?
//! atom    := primary ("wr" primary)*
//! primary := "C" int | "S" int | "A" int | "D" int
//!          | "G(" int "," int "," int ")" | "(" expr ")"
//! ```
//!
//! Whitespace is ignored. `Dn` is the dihedral group of order `2n`, and
//! wreath products take a cyclic base and a symmetric top.

use std::fmt;

use mudeg_core::{constructors, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(u32),
    Symmetric(u32),
    Alternating(u32),
    Dihedral(u32),
    Reflection(u32, u32, u32),
    Wreath(Box<GroupExpr>, Box<GroupExpr>),
    Product(Vec<GroupExpr>),
    Power(Box<GroupExpr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at position {position}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        position: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    #[error("invalid group at position {position}: {message}")]
    Semantic { position: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Family(char),
    Int(u64),
    Times,
    Wr,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Family(c) => format!("'{c}'"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Times => "'x'".into(),
            Tok::Wr => "'wr'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => {}
            'C' | 'S' | 'A' | 'D' | 'G' => out.push((pos, Tok::Family(c))),
            'x' | '×' => out.push((pos, Tok::Times)),
            '^' => out.push((pos, Tok::Caret)),
            '(' => out.push((pos, Tok::LParen)),
            ')' => out.push((pos, Tok::RParen)),
            ',' => out.push((pos, Tok::Comma)),
            'w' if chars.get(i + 1).map(|x| x.1) == Some('r') => {
                out.push((pos, Tok::Wr));
                i += 1;
            }
            '0'..='9' => {
                let mut value: u64 = 0;
                let mut j = i;
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(chars[j].1 as u64 - '0' as u64))
                        .filter(|&v| v <= u32::MAX as u64)
                        .ok_or(ExprError::Semantic {
                            position: pos,
                            message: "integer too large".into(),
                        })?;
                    j += 1;
                }
                out.push((pos, Tok::Int(value)));
                i = j;
                continue;
            }
            other => {
                return Err(ExprError::Syntax {
                    position: pos,
                    expected: vec!["a group name", "'x'", "'wr'", "'^'", "'('", "')'"],
                    found: format!("{other:?}"),
                })
            }
        }
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: Vec<&'static str>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            position: self.pos(),
            expected,
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, tok: Tok, name: &'static str) -> Result<(), ExprError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(vec![name])
        }
    }

    fn int(&mut self) -> Result<(usize, u32), ExprError> {
        let pos = self.pos();
        match self.peek() {
            Tok::Int(n) => {
                let n = *n as u32;
                self.bump();
                Ok((pos, n))
            }
            _ => self.fail(vec!["an integer"]),
        }
    }

    fn expr(&mut self) -> Result<GroupExpr, ExprError> {
        let mut terms = vec![self.term()?];
        while *self.peek() == Tok::Times {
            self.bump();
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            GroupExpr::Product(terms)
        })
    }

    fn term(&mut self) -> Result<GroupExpr, ExprError> {
        let atom = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let (pos, k) = self.int()?;
            if k == 0 {
                return Err(semantic(pos, "power exponent must be at least 1"));
            }
            return Ok(GroupExpr::Power(Box::new(atom), k));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<GroupExpr, ExprError> {
        let start = self.pos();
        let mut left = self.primary()?;
        while *self.peek() == Tok::Wr {
            self.bump();
            let top_pos = self.pos();
            let top = self.primary()?;
            match (&left, &top) {
                (GroupExpr::Cyclic(m), GroupExpr::Symmetric(n)) => {
                    if *m < 2 || *n < 2 {
                        return Err(semantic(
                            start,
                            "wreath product needs C_m with m ≥ 2 and S_n with n ≥ 2",
                        ));
                    }
                }
                (GroupExpr::Cyclic(_), _) => {
                    return Err(semantic(
                        top_pos,
                        "wreath product top must be a symmetric group S_n",
                    ))
                }
                _ => {
                    return Err(semantic(
                        start,
                        "wreath product base must be a cyclic group C_m",
                    ))
                }
            }
            left = GroupExpr::Wreath(Box::new(left), Box::new(top));
        }
        Ok(left)
    }

    fn primary(&mut self) -> Result<GroupExpr, ExprError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Family('G') => {
                self.bump();
                self.expect(Tok::LParen, "'('")?;
                let (_, m) = self.int()?;
                self.expect(Tok::Comma, "','")?;
                let (_, p) = self.int()?;
                self.expect(Tok::Comma, "','")?;
                let (_, n) = self.int()?;
                self.expect(Tok::RParen, "')'")?;
                if m < 2 {
                    return Err(semantic(pos, "G(m,p,n) needs m ≥ 2"));
                }
                if p == 0 || m % p != 0 {
                    return Err(semantic(
                        pos,
                        &format!("G({m},{p},{n}): p = {p} does not divide m = {m}"),
                    ));
                }
                if n < 2 {
                    return Err(semantic(pos, "G(m,p,n) needs n ≥ 2"));
                }
                Ok(GroupExpr::Reflection(m, p, n))
            }
            Tok::Family(c) => {
                self.bump();
                let (_, n) = self.int()?;
                match c {
                    'C' if n >= 1 => Ok(GroupExpr::Cyclic(n)),
                    'S' if n >= 1 => Ok(GroupExpr::Symmetric(n)),
                    'A' if n >= 3 => Ok(GroupExpr::Alternating(n)),
                    'D' if n >= 3 => Ok(GroupExpr::Dihedral(n)),
                    'C' | 'S' => Err(semantic(
                        pos,
                        &format!("{c}{n}: parameter must be at least 1"),
                    )),
                    _ => Err(semantic(
                        pos,
                        &format!("{c}{n}: parameter must be at least 3"),
                    )),
                }
            }
            _ => self.fail(vec!["C<n>", "S<n>", "A<n>", "D<n>", "G(m,p,n)", "'('"]),
        }
    }
}

fn semantic(position: usize, message: &str) -> ExprError {
    ExprError::Semantic {
        position,
        message: message.to_string(),
    }
}

pub fn parse_group(text: &str) -> Result<GroupExpr, ExprError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(vec!["'x'", "'^'", "'wr'", "end of input"]);
    }
    Ok(e)
}

impl std::str::FromStr for GroupExpr {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group(s)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "C{n}"),
            GroupExpr::Symmetric(n) => write!(f, "S{n}"),
            GroupExpr::Alternating(n) => write!(f, "A{n}"),
            GroupExpr::Dihedral(n) => write!(f, "D{n}"),
            GroupExpr::Reflection(m, p, n) => write!(f, "G({m},{p},{n})"),
            GroupExpr::Wreath(base, top) => write!(f, "{base} wr {top}"),
            GroupExpr::Product(items) => {
                for (k, e) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" x ")?;
                    }
                    match e {
                        GroupExpr::Product(_) => write!(f, "({e})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
            GroupExpr::Power(e, k) => match **e {
                GroupExpr::Product(_) | GroupExpr::Power(..) | GroupExpr::Wreath(..) => {
                    write!(f, "({e})^{k}")
                }
                _ => write!(f, "{e}^{k}"),
            },
        }
    }
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).fold(1u128, |a, b| a.saturating_mul(b))
}

fn pow_sat(base: u128, e: u32) -> u128 {
    (0..e).fold(1u128, |a, _| a.saturating_mul(base))
}

impl GroupExpr {
    /// Group order from the closed forms, saturating.
    pub fn order(&self) -> u128 {
        match self {
            GroupExpr::Cyclic(n) => *n as u128,
            GroupExpr::Symmetric(n) => factorial(*n),
            GroupExpr::Alternating(n) => factorial(*n) / 2,
            GroupExpr::Dihedral(n) => 2 * *n as u128,
            GroupExpr::Reflection(m, p, n) => {
                pow_sat(*m as u128, *n).saturating_mul(factorial(*n)) / *p as u128
            }
            GroupExpr::Wreath(base, top) => {
                let (GroupExpr::Cyclic(m), GroupExpr::Symmetric(n)) = (&**base, &**top) else {
                    unreachable!("validated by the parser")
                };
                pow_sat(*m as u128, *n).saturating_mul(factorial(*n))
            }
            GroupExpr::Product(items) => {
                items.iter().fold(1u128, |a, e| a.saturating_mul(e.order()))
            }
            GroupExpr::Power(e, k) => pow_sat(e.order(), *k),
        }
    }

    /// Builds the permutation realization.
    pub fn build(&self) -> mudeg_core::Result<PermGroup> {
        Ok(match self {
            GroupExpr::Cyclic(n) => constructors::cyclic(*n as usize)?,
            GroupExpr::Symmetric(n) => constructors::symmetric(*n as usize)?,
            GroupExpr::Alternating(n) => constructors::alternating(*n as usize)?,
            GroupExpr::Dihedral(n) => constructors::dihedral(*n as usize)?,
            GroupExpr::Reflection(m, p, n) => {
                constructors::reflection_group(*m as usize, *p as usize, *n as usize)?
            }
            GroupExpr::Wreath(base, top) => {
                let (GroupExpr::Cyclic(m), GroupExpr::Symmetric(n)) = (&**base, &**top) else {
                    unreachable!("validated by the parser")
                };
                constructors::wreath_cyclic(*m as usize, *n as usize)?.into_group()
            }
            GroupExpr::Product(items) => {
                let mut acc = items[0].build()?;
                for e in &items[1..] {
                    acc = constructors::direct_product(&acc, &e.build()?);
                }
                acc
            }
            GroupExpr::Power(e, k) => {
                let g = e.build()?;
                let mut acc = g.clone();
                for _ in 1..*k {
                    acc = constructors::direct_product(&acc, &g);
                }
                acc
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GroupExpr::*;

    #[test]
    fn parses_named_groups() {
        assert_eq!(
            parse_group("C4 x C4").unwrap(),
            Product(vec![Cyclic(4), Cyclic(4)])
        );
        assert_eq!(
            parse_group("C4 wr S3").unwrap(),
            Wreath(Box::new(Cyclic(4)), Box::new(Symmetric(3)))
        );
        assert_eq!(parse_group("G(4,4,3)").unwrap(), Reflection(4, 4, 3));
        assert_eq!(parse_group("C4^3").unwrap(), Power(Box::new(Cyclic(4)), 3));
        assert_eq!(
            parse_group(" C4×C4 ").unwrap(),
            parse_group("C4 x C4").unwrap()
        );
        assert_eq!(parse_group("G ( 4 , 4 , 3 )").unwrap(), Reflection(4, 4, 3));
    }

    #[test]
    fn semantic_errors() {
        let e = parse_group("G(4,3,3)").unwrap_err();
        assert!(matches!(e, ExprError::Semantic { position: 0, .. }), "{e}");
        assert!(e.to_string().contains("does not divide"));
        assert!(matches!(
            parse_group("S3 wr S3"),
            Err(ExprError::Semantic { .. })
        ));
        assert!(matches!(
            parse_group("C3 wr C3"),
            Err(ExprError::Semantic { .. })
        ));
        assert!(matches!(parse_group("D2"), Err(ExprError::Semantic { .. })));
        assert!(matches!(
            parse_group("C4^0"),
            Err(ExprError::Semantic { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_group("C4 x ").unwrap_err() {
            ExprError::Syntax {
                position, found, ..
            } => {
                assert_eq!(position, 5);
                assert_eq!(found, "end of input");
            }
            e => panic!("unexpected {e}"),
        }
        match parse_group("C4 ? C2").unwrap_err() {
            ExprError::Syntax { position, .. } => assert_eq!(position, 3),
            e => panic!("unexpected {e}"),
        }
        assert!(parse_group("(C4").is_err());
        assert!(parse_group("C4 C4").is_err());
    }

    #[test]
    fn printing_is_canonical() {
        for (text, printed) in [
            ("C4xC4", "C4 x C4"),
            ("(C4 x C2) x C3", "(C4 x C2) x C3"),
            ("(C4 x C2)^2", "(C4 x C2)^2"),
            ("C4 wr S3", "C4 wr S3"),
            ("(C2^2)^3", "(C2^2)^3"),
            ("((S3))", "S3"),
        ] {
            let e = parse_group(text).unwrap();
            assert_eq!(e.to_string(), printed);
            assert_eq!(parse_group(printed).unwrap(), e);
        }
    }

    #[test]
    fn orders_match_construction() {
        for text in [
            "C4 x C4", "C4 wr S3", "G(4,4,3)", "D6", "A4 x C2", "C2^3", "S4", "C1",
        ] {
            let e = parse_group(text).unwrap();
            assert_eq!(e.build().unwrap().order(), e.order(), "{text}");
        }
    }
}
