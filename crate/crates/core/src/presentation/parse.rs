//! Line-oriented input language:
//!
//! ```text
//! # comment
//! algebra <name> over <Q | F<p>>
//! deg x=1, y=1
//! rel y*x - 2*x*y
//! ```
//!
//! Statements are separated by newlines or `;`. A `filtered algebra` header
//! admits inhomogeneous relations, which are homogenized by [`parse`].

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{homogenize, FilteredPresentation, Presentation, PresentationError};
use crate::exactla::FieldSpec;
use crate::freealg::{FreeElement, GeneratorInfo, Letter, Word};

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Graded(Presentation),
    Filtered(FilteredPresentation),
}

/// Parse a presentation; filtered inputs are returned homogenized.
pub fn parse(text: &str) -> Result<Presentation, PresentationError> {
    parse_with_field(text, None)
}

/// Parse, interpreting coefficients in `field` instead of the declared one.
pub fn parse_with_field(text: &str, field: Option<FieldSpec>) -> Result<Presentation, PresentationError> {
    match parse_document_with_field(text, field)? {
        Document::Graded(p) => Ok(p),
        Document::Filtered(fp) => Ok(homogenize(&fp)),
    }
}

pub fn parse_document(text: &str) -> Result<Document, PresentationError> {
    parse_document_with_field(text, None)
}

struct Statement<'a> {
    text: &'a str,
    offset: usize,
}

fn statements(text: &str) -> Vec<Statement<'_>> {
    let mut out = Vec::new();
    let mut line_start = 0;
    for line in text.split_inclusive('\n') {
        let body = line.split('#').next().unwrap_or("");
        let mut start = 0;
        for piece in body.split(';') {
            let lead = piece.len() - piece.trim_start().len();
            let trimmed = piece.trim();
            if !trimmed.is_empty() {
                out.push(Statement { text: trimmed, offset: line_start + start + lead });
            }
            start += piece.len() + 1;
        }
        line_start += line.len();
    }
    out
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn syntax(text: &str, offset: usize, msg: impl Into<String>) -> PresentationError {
    let (line, col) = line_col(text, offset);
    PresentationError::Syntax { line, col, msg: msg.into() }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() && c != '°'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '°'
}

fn parse_document_with_field(text: &str, field_override: Option<FieldSpec>) -> Result<Document, PresentationError> {
    let stmts = statements(text);
    let mut iter = stmts.iter();
    let head = iter.next().ok_or_else(|| syntax(text, 0, "empty input"))?;
    let (filtered, rest) = if let Some(r) = head.text.strip_prefix("filtered algebra") {
        (true, r)
    } else if let Some(r) = head.text.strip_prefix("algebra") {
        (false, r)
    } else {
        return Err(syntax(text, head.offset, "expected `algebra <name> over <field>`"));
    };
    let mut words = rest.split_whitespace();
    let name = words.next().ok_or_else(|| syntax(text, head.offset, "missing algebra name"))?;
    let declared = match (words.next(), words.next()) {
        (Some("over"), Some(f)) => f.parse::<FieldSpec>()?,
        (None, None) => FieldSpec::Rationals,
        _ => return Err(syntax(text, head.offset, "expected `over <field>` after the algebra name")),
    };
    if words.next().is_some() {
        return Err(syntax(text, head.offset, "trailing text in header"));
    }
    let field = field_override.unwrap_or(declared);

    let mut gens: Vec<GeneratorInfo> = Vec::new();
    let mut raw_rels: Vec<(&Statement, &str, usize)> = Vec::new();
    for st in iter {
        if let Some(body) = st.text.strip_prefix("deg") {
            let base = st.offset + 3;
            let mut pos = 0;
            for item in body.split(',') {
                let off = base + pos + (item.len() - item.trim_start().len());
                pos += item.len() + 1;
                let (n, d) = item
                    .split_once('=')
                    .ok_or_else(|| syntax(text, off, "expected `<gen>=<degree>`"))?;
                let n = n.trim();
                if n.is_empty() || !n.starts_with(is_ident_start) || !n.chars().all(is_ident_char) {
                    return Err(syntax(text, off, format!("bad generator name `{n}`")));
                }
                let d: u32 = d
                    .trim()
                    .parse()
                    .map_err(|_| syntax(text, off, format!("bad degree `{}`", d.trim())))?;
                if d == 0 {
                    return Err(PresentationError::BadDegree(n.to_string()));
                }
                if gens.iter().any(|g| g.name == n) {
                    return Err(PresentationError::DuplicateGenerator(n.to_string()));
                }
                gens.push(GeneratorInfo::new(n, d));
            }
        } else if let Some(body) = st.text.strip_prefix("rel") {
            raw_rels.push((st, body, st.offset + 3));
        } else {
            return Err(syntax(text, st.offset, "expected `deg` or `rel`"));
        }
    }
    if gens.is_empty() {
        return Err(syntax(text, text.len(), "no generators declared"));
    }

    let mut relations = Vec::new();
    for (_, body, off) in raw_rels {
        let mut parser = PolyParser { src: text, body, base: off, pos: 0, gens: &gens, field };
        let r = parser.parse_all()?;
        let (line, _) = line_col(text, off);
        if r.is_zero() {
            return Err(PresentationError::ZeroRelation { line });
        }
        if !filtered {
            match r.homogeneous_degree() {
                None => {
                    let mut degrees: Vec<u32> = r.terms().map(|(w, _)| w.degree()).collect();
                    degrees.dedup();
                    return Err(PresentationError::Inhomogeneous { line, relation: body.trim().to_string(), degrees });
                }
                Some(0) => return Err(PresentationError::DegreeZeroRelation(body.trim().to_string())),
                Some(_) => {}
            }
        }
        relations.push(r);
    }
    if filtered {
        Ok(Document::Filtered(FilteredPresentation::new(name, field, gens, relations)?))
    } else {
        Ok(Document::Graded(Presentation::new(name, field, gens, relations)?))
    }
}

/// Recursive descent over `expr := term (('+'|'-') term)*`,
/// `term := unary ('*' unary | '/' number)*`, `unary := '-' unary | power`,
/// `power := atom ('^' int)?`, `atom := number | ident | '(' expr ')'`.
struct PolyParser<'a> {
    src: &'a str,
    body: &'a str,
    base: usize,
    pos: usize,
    gens: &'a [GeneratorInfo],
    field: FieldSpec,
}

impl PolyParser<'_> {
    fn err(&self, msg: impl Into<String>) -> PresentationError {
        syntax(self.src, self.base + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.body[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.body[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.body[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn parse_all(&mut self) -> Result<FreeElement, PresentationError> {
        let e = self.expr()?;
        if let Some(c) = self.peek() {
            return Err(self.err(format!("unexpected `{c}`")));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<FreeElement, PresentationError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FreeElement, PresentationError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some('/') => {
                    self.bump();
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        self.pos = at;
                        return Err(self.err("division by zero"));
                    }
                    let inv = self.scalar(&BigRational::new(1.into(), d))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<FreeElement, PresentationError> {
        if self.peek() == Some('-') {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<FreeElement, PresentationError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent out of range"))?;
            let mut acc = FreeElement::one(self.field);
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, PresentationError> {
        let start = self.pos;
        while self.body[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(self.body[start..self.pos].parse().expect("digits"))
    }

    fn scalar(&self, v: &BigRational) -> Result<crate::exactla::Scalar, PresentationError> {
        Ok(self.field.from_rational(v)?)
    }

    fn atom(&mut self) -> Result<FreeElement, PresentationError> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let c = self.scalar(&BigRational::from_integer(n))?;
                Ok(FreeElement::monomial(self.field, Word::empty(), c))
            }
            Some(c) if is_ident_start(c) => {
                let start = self.pos;
                while let Some(c) = self.body[self.pos..].chars().next() {
                    if is_ident_char(c) {
                        self.pos += c.len_utf8();
                    } else {
                        break;
                    }
                }
                let name = &self.body[start..self.pos];
                match self.gens.iter().position(|g| g.name == name) {
                    Some(i) => Ok(FreeElement::from_word(self.field, Word::letter(i as Letter, self.gens))),
                    None => {
                        let (line, col) = line_col(self.src, self.base + start);
                        Err(PresentationError::UnknownGenerator { line, col, name: name.to_string() })
                    }
                }
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of relation")),
        }
    }
}
