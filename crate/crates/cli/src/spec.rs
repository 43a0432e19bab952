//! The group-spec mini-language.
//!
//! ```text
//! SPEC := TERM ("x" TERM)*
//! TERM := "C" INT | "D(" INT ")" | "Dic(" INT ")" | "S" INT | "A" INT
//!       | "PSL2(" INT ")" | "SL2(" INT ")" | "Sz8"
//!       | "SD(" INT "," INT "," INT ")"
//!       | "ESD(" INT "," INT ";" MATRIX ";" INT ")"
//! MATRIX := "[" ROW ("," ROW)* "]"      ROW := "[" INT ("," INT)* "]"
//! ```
//!
//! Whitespace is ignored everywhere and `x` is a left-associative direct product.

use std::fmt;

use pnclass::constructors::GroupExpr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub source: String,
    pub expr: GroupExpr,
}

impl GroupSpec {
    pub fn canonical(&self) -> String {
        self.expr.to_string()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expr.fmt(f)
    }
}

struct Parser {
    /// Non-whitespace characters with their offsets in the source.
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(o, _)| o)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        let n = kw.chars().count();
        let matches = self.chars.len() >= self.pos + n
            && self.chars[self.pos..self.pos + n]
                .iter()
                .map(|&(_, c)| c)
                .eq(kw.chars());
        if matches {
            self.pos += n;
        }
        matches
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        digits.parse().map_err(|_| ParseError {
            position: self.chars[start].0,
            message: "integer out of range".into(),
        })
    }

    fn paren_int(&mut self) -> Result<u64, ParseError> {
        self.expect('(')?;
        let v = self.int()?;
        self.expect(')')?;
        Ok(v)
    }

    fn int_list(&mut self) -> Result<Vec<u64>, ParseError> {
        self.expect('[')?;
        let mut out = vec![self.int()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            out.push(self.int()?);
        }
        self.expect(']')?;
        Ok(out)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<u64>>, ParseError> {
        self.expect('[')?;
        let mut rows = vec![self.int_list()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            rows.push(self.int_list()?);
        }
        self.expect(']')?;
        Ok(rows)
    }

    fn term(&mut self) -> Result<GroupExpr, ParseError> {
        // longer keywords first so that "Dic" is not read as "D", "SD" not as "S"
        if self.eat_keyword("PSL2") {
            return Ok(GroupExpr::Psl2(self.paren_int()?));
        }
        if self.eat_keyword("SL2") {
            return Ok(GroupExpr::Sl2(self.paren_int()?));
        }
        if self.eat_keyword("Sz8") {
            return Ok(GroupExpr::Suzuki8);
        }
        if self.eat_keyword("ESD") {
            self.expect('(')?;
            let p = self.int()?;
            self.expect(',')?;
            let d = self.int()? as usize;
            self.expect(';')?;
            let action = self.matrix()?;
            self.expect(';')?;
            let k = self.int()?;
            self.expect(')')?;
            return Ok(GroupExpr::ElementarySemidirect { p, d, action, k });
        }
        if self.eat_keyword("SD") {
            self.expect('(')?;
            let m = self.int()?;
            self.expect(',')?;
            let k = self.int()?;
            self.expect(',')?;
            let g = self.int()?;
            self.expect(')')?;
            return Ok(GroupExpr::SemidirectCyclic { m, k, g });
        }
        if self.eat_keyword("Dic") {
            return Ok(GroupExpr::Dicyclic(self.paren_int()?));
        }
        if self.eat_keyword("D") {
            return Ok(GroupExpr::Dihedral(self.paren_int()?));
        }
        if self.eat_keyword("C") {
            return Ok(GroupExpr::Cyclic(self.int()?));
        }
        if self.eat_keyword("S") {
            return Ok(GroupExpr::Symmetric(self.int()?));
        }
        if self.eat_keyword("A") {
            return Ok(GroupExpr::Alternating(self.int()?));
        }
        Err(self.error("unknown group name"))
    }

    fn spec(&mut self) -> Result<GroupExpr, ParseError> {
        let mut expr = self.term()?;
        while self.peek() == Some('x') {
            self.pos += 1;
            let rhs = self.term()?;
            expr = GroupExpr::Product(Box::new(expr), Box::new(rhs));
        }
        if self.pos != self.chars.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(expr)
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec, ParseError> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    if chars.is_empty() {
        return Err(ParseError {
            position: 0,
            message: "empty group spec".into(),
        });
    }
    let mut parser = Parser {
        chars,
        pos: 0,
        end: text.len(),
    };
    let expr = parser.spec()?;
    Ok(GroupSpec {
        source: text.to_string(),
        expr,
    })
}
