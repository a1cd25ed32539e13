//! Finite presentations and their exact text format.
//!
//! The text format is
//!
//! ```text
//! gens: a b c; rels: [a,b] a^3 (a*b)^-2
//! ```
//!
//! Identifiers name generators, `*` concatenates, `^` takes integer powers
//! (negative exponents give inverses), `[x,y]` is commutator sugar for
//! `x·y·x⁻¹·y⁻¹`, and `1` is the empty word. Relators are separated by
//! whitespace. Printing emits a canonical power-product form that parses
//! back to the identical presentation.

use super::word::Word;
use super::FpGroupError;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A finitely presented group: named generators plus relator words.
///
/// Relators are freely and cyclically reduced on construction and kept in
/// the order supplied.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    /// Builds a presentation, validating generator names and relator indices.
    pub fn new<S: Into<String>>(
        generator_names: Vec<S>,
        relators: Vec<Word>,
    ) -> Result<Self, FpGroupError> {
        let names: Vec<String> = generator_names.into_iter().map(Into::into).collect();
        for name in &names {
            if !is_identifier(name) {
                return Err(FpGroupError::BadGeneratorName(name.clone()));
            }
        }
        for (i, a) in names.iter().enumerate() {
            if names[i + 1..].contains(a) {
                return Err(FpGroupError::DuplicateGenerator(a.clone()));
            }
        }
        let gen_count = names.len();
        let relators = relators
            .into_iter()
            .map(|r| {
                if let Some(g) = r.max_generator() {
                    if g >= gen_count {
                        return Err(FpGroupError::GeneratorOutOfRange {
                            index: g,
                            count: gen_count,
                        });
                    }
                }
                Ok(r.cyclically_reduce())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Presentation {
            generator_names: names,
            relators,
        })
    }

    pub fn gen_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Index of a generator by name.
    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|g| g == name)
    }

    /// Single-letter word for the named generator.
    pub fn gen_word(&self, name: &str) -> Result<Word, FpGroupError> {
        self.generator_index(name)
            .map(Word::generator)
            .ok_or_else(|| FpGroupError::UnknownGenerator(name.to_string()))
    }

    /// Same generators with relators permuted; used to check that
    /// enumeration verdicts do not depend on relator order.
    pub fn with_relator_order(&self, order: &[usize]) -> Result<Self, FpGroupError> {
        if order.len() != self.relators.len() {
            return Err(FpGroupError::BadRelatorPermutation);
        }
        let mut seen = vec![false; order.len()];
        let mut relators = Vec::with_capacity(order.len());
        for &i in order {
            if i >= self.relators.len() || seen[i] {
                return Err(FpGroupError::BadRelatorPermutation);
            }
            seen[i] = true;
            relators.push(self.relators[i].clone());
        }
        Ok(Presentation {
            generator_names: self.generator_names.clone(),
            relators,
        })
    }

    /// Canonical text form; [`Presentation::parse`] inverts it exactly.
    pub fn print(&self) -> String {
        let mut out = String::from("gens:");
        for g in &self.generator_names {
            out.push(' ');
            out.push_str(g);
        }
        out.push_str("; rels:");
        for r in &self.relators {
            out.push(' ');
            out.push_str(&self.print_word(r));
        }
        out
    }

    /// Renders a single word as a power product over the generator names.
    pub fn print_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut runs: Vec<(usize, i64)> = Vec::new();
        for (g, s) in w.letters() {
            match runs.last_mut() {
                Some((last, e)) if *last == g && (*e > 0) == (s > 0) => *e += s as i64,
                _ => runs.push((g, s as i64)),
            }
        }
        runs.iter()
            .map(|&(g, e)| {
                let name = &self.generator_names[g];
                if e == 1 {
                    name.clone()
                } else {
                    format!("{}^{}", name, e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Parses the presentation text format.
    pub fn parse(text: &str) -> Result<Self, FpGroupError> {
        Parser::new(text).parse_presentation()
    }

    /// Parses a word relative to this presentation's generators, e.g.
    /// `"[a,b]*c^-2"`.
    pub fn parse_word(&self, text: &str) -> Result<Word, FpGroupError> {
        let mut p = Parser::new(text);
        let names: Vec<&str> = self.generator_names.iter().map(String::as_str).collect();
        let w = p.parse_product(&names)?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err("trailing input after word"));
        }
        Ok(w)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> FpGroupError {
        FpGroupError::Parse {
            position: self.pos,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), FpGroupError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.pos += 1,
            _ => return None,
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn keyword(&mut self, kw: &str) -> Result<(), FpGroupError> {
        self.skip_ws();
        let start = self.pos;
        match self.ident() {
            Some(id) if id == kw => Ok(()),
            _ => {
                self.pos = start;
                Err(self.err(&format!("expected keyword '{}'", kw)))
            }
        }
    }

    fn integer(&mut self) -> Result<i32, FpGroupError> {
        let neg = self.eat(b'-');
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let value: i32 = digits
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -value } else { value })
    }

    fn parse_presentation(&mut self) -> Result<Presentation, FpGroupError> {
        self.keyword("gens")?;
        self.skip_ws();
        self.expect(b':')?;
        let mut names: Vec<String> = Vec::new();
        loop {
            self.skip_ws();
            if self.peek() == Some(b';') {
                break;
            }
            match self.ident() {
                Some(id) => names.push(id.to_string()),
                None => return Err(self.err("expected generator name or ';'")),
            }
        }
        self.expect(b';')?;
        self.keyword("rels")?;
        self.skip_ws();
        self.expect(b':')?;
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut relators = Vec::new();
        loop {
            self.skip_ws();
            if self.pos >= self.src.len() {
                break;
            }
            relators.push(self.parse_product(&name_refs)?);
        }
        Presentation::new(names, relators)
    }

    /// product := factor ('*' factor)*
    fn parse_product(&mut self, names: &[&str]) -> Result<Word, FpGroupError> {
        let mut w = self.parse_factor(names)?;
        loop {
            self.skip_ws();
            if self.eat(b'*') {
                let f = self.parse_factor(names)?;
                w = w.concat(&f);
            } else {
                return Ok(w);
            }
        }
    }

    /// factor := atom ('^' integer)?
    fn parse_factor(&mut self, names: &[&str]) -> Result<Word, FpGroupError> {
        let atom = self.parse_atom(names)?;
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.integer()?;
            Ok(atom.pow(e))
        } else {
            Ok(atom)
        }
    }

    /// atom := '1' | ident | '(' product ')' | '[' product ',' product ']'
    fn parse_atom(&mut self, names: &[&str]) -> Result<Word, FpGroupError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.parse_product(names)?;
                self.skip_ws();
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.parse_product(names)?;
                self.skip_ws();
                self.expect(b',')?;
                let b = self.parse_product(names)?;
                self.skip_ws();
                self.expect(b']')?;
                Ok(Word::commutator(&a, &b))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::empty())
            }
            _ => {
                let start = self.pos;
                match self.ident() {
                    Some(id) => match names.iter().position(|&n| n == id) {
                        Some(g) => Ok(Word::generator(g)),
                        None => {
                            self.pos = start;
                            Err(self.err(&format!("unknown generator '{}'", id)))
                        }
                    },
                    None => Err(self.err("expected word")),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic_presentation() {
        let p = Presentation::parse("gens: a b; rels: [a,b] a^3 (a*b)^-2").unwrap();
        assert_eq!(p.gen_count(), 2);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.relators()[0].len(), 4);
        assert_eq!(p.relators()[1].len(), 3);
        // (a*b)^-2 = b⁻¹a⁻¹b⁻¹a⁻¹
        assert_eq!(p.relators()[2].len(), 4);
        assert_eq!(p.print(), "gens: a b; rels: a*b*a^-1*b^-1 a^3 b^-1*a^-1*b^-1*a^-1");
    }

    #[test]
    fn print_parse_round_trip_is_exact() {
        let p = Presentation::parse("gens: s1 t1 mu; rels: [s1^2*mu^-1,t1]*mu^-1 s1*t1 1").unwrap();
        let q = Presentation::parse(&p.print()).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.print(), q.print());
    }

    #[test]
    fn relators_are_stored_cyclically_reduced() {
        let p = Presentation::parse("gens: a b; rels: a*b*a^-1").unwrap();
        assert_eq!(p.relators()[0], Word::generator(1));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = Presentation::parse("gens: a; rels: [").unwrap_err();
        match e {
            FpGroupError::Parse { position, .. } => assert_eq!(position, 16),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(Presentation::parse("gens: a; rels: q").is_err());
        assert!(Presentation::parse("gens: a a; rels:").is_err());
    }

    #[test]
    fn parse_word_in_context() {
        let p = Presentation::parse("gens: a b; rels:").unwrap();
        let w = p.parse_word("[a,b]*a^2").unwrap();
        assert_eq!(w.len(), 6);
        assert!(p.parse_word("c").is_err());
        assert!(p.parse_word("a b").is_err());
    }
}
