//! Text forms: `{e;(t,g);(a1,b1),...}` for Seifert invariants and
//! `gen=bit,...` for homomorphisms to Z/2.

use std::str::FromStr;

use crate::error::Error;
use crate::group::Presentation;
use crate::seifert::{FiberPair, SeifertInvariants, TypeSymbol};
use crate::z2hom::Z2Hom;

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            chars: text.char_indices().collect(),
            i: 0,
            text,
        }
    }

    fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.i)
            .is_some_and(|(_, c)| c.is_whitespace())
        {
            self.i += 1;
        }
    }

    /// Byte offset of the next non-blank character (or the end).
    fn position(&mut self) -> usize {
        self.skip_ws();
        self.chars.get(self.i).map_or(self.text.len(), |(p, _)| *p)
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.i).map(|(_, c)| *c)
    }

    fn error(&mut self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.position(),
            message: message.into(),
        }
    }

    fn expect(&mut self, want: char) -> Result<(), Error> {
        match self.peek() {
            Some(c) if c == want => {
                self.i += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{want}`, found end of input"))),
        }
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    /// Optionally signed decimal integer; blanks between digits are ignored.
    fn integer(&mut self) -> Result<i64, Error> {
        let start = self.position();
        let mut digits = String::new();
        if self.eat('-') {
            digits.push('-');
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.i += 1;
        }
        if digits.trim_start_matches('-').is_empty() {
            let found = self
                .peek()
                .map_or("end of input".to_string(), |c| format!("`{c}`"));
            return Err(self.error(format!("expected an integer, found {found}")));
        }
        digits.parse().map_err(|_| Error::Syntax {
            position: start,
            message: format!("integer `{digits}` out of range"),
        })
    }

    fn type_symbol(&mut self) -> Result<TypeSymbol, Error> {
        let start = self.position();
        let mut name = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_alphanumeric) {
            name.push(c);
            self.i += 1;
        }
        TypeSymbol::from_name(&name).ok_or_else(|| Error::Syntax {
            position: start,
            message: format!("unknown type symbol `{name}`, expected one of o1,o2,n1,n2,n3,n4"),
        })
    }
}

/// Parses a Seifert symbol. Only the grammar is checked here; use
/// [`SeifertInvariants::validate`] for the semantic conditions.
pub fn parse_seifert(text: &str) -> Result<SeifertInvariants, Error> {
    let mut c = Cursor::new(text);
    c.expect('{')?;
    let e = c.integer()?;
    c.expect(';')?;
    c.expect('(')?;
    let kind = c.type_symbol()?;
    c.expect(',')?;
    let genus_at = c.position();
    let genus = c.integer()?;
    let genus = u32::try_from(genus).map_err(|_| Error::Syntax {
        position: genus_at,
        message: format!("genus must be a non-negative integer, found {genus}"),
    })?;
    c.expect(')')?;
    c.expect(';')?;
    let mut fibers = Vec::new();
    if !c.eat('}') {
        loop {
            c.expect('(')?;
            let a = c.integer()?;
            c.expect(',')?;
            let b = c.integer()?;
            c.expect(')')?;
            fibers.push(FiberPair::new(a, b));
            if c.eat('}') {
                break;
            }
            c.expect(',')?;
        }
    }
    if let Some(ch) = c.peek() {
        return Err(c.error(format!("unexpected `{ch}` after the closing brace")));
    }
    Ok(SeifertInvariants::new(e, kind, genus, fibers))
}

impl FromStr for SeifertInvariants {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        parse_seifert(s)
    }
}

/// `gen=bit` list over the generators of `p`; unlisted generators are 0.
pub fn parse_hom(text: &str, p: &Presentation) -> Result<Z2Hom, Error> {
    Z2Hom::parse(text, p)
}
