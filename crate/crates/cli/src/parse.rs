//! Hand-rolled parsers for the two expression grammars.
//!
//! Forms:    form := ['-'] term {('+'|'-') term}
//!           term := [int ['*']] ('<' rat '>' | 'H')
//!           rat  := int ['/' int]
//!
//! Algebras: algebra := ['-'] aterm {('+'|'-') aterm}
//!           aterm   := [int '*'] atom {'*' atom}
//!           atom    := 'k' | 'k(' 'sqrt' rat {',' 'sqrt' rat} ')'
//!                    | 'poly(' intpoly ')'
//!
//! Every error carries the byte offset it was detected at.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use gwitt::field::{class_of, FieldDescriptor};
use gwitt::galois::{spec_subfield, EtalePoly, MqContext, VirtualGaloisSet};
use gwitt::gw::GwElement;

/// A parse failure at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at byte {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

type ParseResult<T> = Result<T, ParseError>;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_space(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_space();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, expected: u8) -> bool {
        if self.peek() == Some(expected) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, expected: u8) -> ParseResult<()> {
        if self.eat(expected) {
            Ok(())
        } else {
            Err(ParseError::new(
                self.pos,
                format!("expected '{}'", expected as char),
            ))
        }
    }

    fn eat_keyword(&mut self, word: &str) -> bool {
        self.skip_space();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_space();
        self.pos >= self.src.len()
    }

    /// An unsigned decimal integer.
    fn uint(&mut self) -> ParseResult<BigInt> {
        self.skip_space();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::new(start, "expected an integer"));
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).expect("digits");
        Ok(text.parse().expect("digits parse"))
    }

    /// A signed integer.
    fn int(&mut self) -> ParseResult<BigInt> {
        let negative = self.eat(b'-');
        let value = self.uint()?;
        Ok(if negative { -value } else { value })
    }

    /// rat := int ['/' int]
    fn rational(&mut self) -> ParseResult<BigRational> {
        let pos = self.pos;
        let numer = self.int()?;
        if self.eat(b'/') {
            let denom = self.int()?;
            if denom.is_zero() {
                return Err(ParseError::new(pos, "zero denominator"));
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }
}

/// Parse the field literal: Q, R, C or Fp. Syntactically valid but
/// unsupported fields (F2, composite moduli) surface the library
/// error so callers can distinguish them from plain syntax errors.
pub fn parse_field(src: &str) -> Result<FieldDescriptor, FieldParseError> {
    match src {
        "Q" => Ok(FieldDescriptor::Rationals),
        "R" => Ok(FieldDescriptor::RealClosed),
        "C" => Ok(FieldDescriptor::ComplexClosed),
        _ => {
            if let Some(rest) = src.strip_prefix('F') {
                if let Ok(p) = rest.parse::<u64>() {
                    return FieldDescriptor::prime_field(p).map_err(FieldParseError::Unsupported);
                }
            }
            Err(FieldParseError::Syntax(ParseError::new(
                0,
                format!("bad field literal {src}; expected Q, R, C or Fp"),
            )))
        }
    }
}

/// A field literal that failed to parse or names an unsupported field.
#[derive(Clone, Debug)]
pub enum FieldParseError {
    Syntax(ParseError),
    Unsupported(gwitt::Error),
}

/// Parse a Grothendieck-Witt form over the given field.
pub fn parse_form(src: &str, field: FieldDescriptor) -> ParseResult<GwElement> {
    let mut cursor = Cursor::new(src);
    let mut acc = GwElement::zero(field);
    let mut sign = if cursor.eat(b'-') {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    loop {
        let term = parse_term(&mut cursor, field)?;
        acc = acc
            .add(&term.scalar_mul(&sign))
            .expect("same field throughout");
        if cursor.at_end() {
            return Ok(acc);
        }
        sign = match cursor.bump() {
            Some(b'+') => BigInt::one(),
            Some(b'-') => -BigInt::one(),
            _ => {
                return Err(ParseError::new(
                    cursor.pos - 1,
                    "expected '+', '-' or end of input",
                ))
            }
        };
    }
}

/// term := [int ['*']] ('<' rat '>' | 'H')
fn parse_term(cursor: &mut Cursor, field: FieldDescriptor) -> ParseResult<GwElement> {
    let mut coeff = BigInt::one();
    if matches!(cursor.peek(), Some(c) if c.is_ascii_digit()) {
        coeff = cursor.uint()?;
        cursor.eat(b'*');
    }
    match cursor.peek() {
        Some(b'<') => {
            cursor.expect(b'<')?;
            let pos = cursor.pos;
            let value = cursor.rational()?;
            cursor.expect(b'>')?;
            if value.is_zero() {
                return Err(ParseError::new(pos, "zero square class"));
            }
            let element = field
                .element_from_rational(value)
                .map_err(|e| ParseError::new(pos, format!("{e}")))?;
            let class = class_of(&element).map_err(|e| ParseError::new(pos, format!("{e}")))?;
            Ok(GwElement::generator(&class).scalar_mul(&coeff))
        }
        Some(b'H') => {
            cursor.bump();
            Ok(gwitt::gw::hyperbolic_scaled(field, &coeff))
        }
        _ => Err(ParseError::new(
            cursor.pos,
            "expected '<rat>' or 'H'",
        )),
    }
}

/// One parsed algebra atom, before context resolution.
#[derive(Clone, Debug)]
enum Atom {
    /// `k` or `k(sqrt a1, ..., sqrt ar)`; the offset points at the atom.
    MultiQuadratic { radicands: Vec<BigRational>, pos: usize },
    /// `poly(f)`.
    Poly { poly: EtalePoly, pos: usize },
}

#[derive(Clone, Debug)]
struct AlgebraTerm {
    coeff: BigInt,
    atoms: Vec<Atom>,
}

/// A parsed algebra expression: a multiquadratic virtual class over a
/// shared auto-extended context, plus trace-only polynomial summands.
#[derive(Clone, Debug)]
pub struct ParsedAlgebra {
    pub multiquadratic: VirtualGaloisSet,
    pub polys: Vec<(EtalePoly, BigInt)>,
}

impl ParsedAlgebra {
    pub fn is_pure_multiquadratic(&self) -> bool {
        self.polys.is_empty()
    }
}

/// Parse an algebra expression over the given field.
pub fn parse_algebra(src: &str, field: FieldDescriptor) -> ParseResult<ParsedAlgebra> {
    let mut cursor = Cursor::new(src);
    let mut terms: Vec<AlgebraTerm> = Vec::new();
    let mut sign = if cursor.eat(b'-') {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    loop {
        let mut term = parse_algebra_term(&mut cursor)?;
        term.coeff *= &sign;
        terms.push(term);
        if cursor.at_end() {
            break;
        }
        sign = match cursor.bump() {
            Some(b'+') => BigInt::one(),
            Some(b'-') => -BigInt::one(),
            _ => {
                return Err(ParseError::new(
                    cursor.pos - 1,
                    "expected '+', '-' or end of input",
                ))
            }
        };
    }
    resolve_algebra(field, &terms)
}

/// aterm := [int '*'] atom {'*' atom}
fn parse_algebra_term(cursor: &mut Cursor) -> ParseResult<AlgebraTerm> {
    let mut coeff = BigInt::one();
    if matches!(cursor.peek(), Some(c) if c.is_ascii_digit()) {
        coeff = cursor.uint()?;
        cursor.expect(b'*')?;
    }
    let mut atoms = vec![parse_atom(cursor)?];
    while cursor.eat(b'*') {
        atoms.push(parse_atom(cursor)?);
    }
    Ok(AlgebraTerm { coeff, atoms })
}

fn parse_atom(cursor: &mut Cursor) -> ParseResult<Atom> {
    cursor.skip_space();
    let pos = cursor.pos;
    if cursor.eat_keyword("poly") {
        cursor.expect(b'(')?;
        let poly = parse_int_poly(cursor)?;
        cursor.expect(b')')?;
        return Ok(Atom::Poly { poly, pos });
    }
    if cursor.eat_keyword("k") {
        if !cursor.eat(b'(') {
            return Ok(Atom::MultiQuadratic {
                radicands: Vec::new(),
                pos,
            });
        }
        let mut radicands = Vec::new();
        loop {
            if !cursor.eat_keyword("sqrt") {
                return Err(ParseError::new(cursor.pos, "expected 'sqrt'"));
            }
            let rat_pos = cursor.pos;
            let value = cursor.rational()?;
            if value.is_zero() {
                return Err(ParseError::new(rat_pos, "zero radicand"));
            }
            radicands.push(value);
            if cursor.eat(b',') {
                continue;
            }
            cursor.expect(b')')?;
            break;
        }
        return Ok(Atom::MultiQuadratic { radicands, pos });
    }
    Err(ParseError::new(pos, "expected 'k', 'k(...)' or 'poly(...)'"))
}

/// intpoly: a sum of monomials c x^e with integer coefficients.
fn parse_int_poly(cursor: &mut Cursor) -> ParseResult<EtalePoly> {
    let start = cursor.pos;
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut sign = if cursor.eat(b'-') {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    loop {
        cursor.skip_space();
        let mono_pos = cursor.pos;
        let mut coeff = BigInt::one();
        let mut saw_digits = false;
        if matches!(cursor.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = cursor.uint()?;
            saw_digits = true;
        }
        let exponent = if cursor.eat(b'x') {
            if cursor.eat(b'^') {
                let e = cursor.uint()?;
                let e = usize::try_from(&e)
                    .map_err(|_| ParseError::new(mono_pos, "exponent too large"))?;
                if e > 64 {
                    return Err(ParseError::new(mono_pos, "exponent too large"));
                }
                e
            } else {
                1
            }
        } else {
            if !saw_digits {
                return Err(ParseError::new(mono_pos, "expected a monomial"));
            }
            0
        };
        if exponent >= coeffs.len() {
            coeffs.resize(exponent + 1, BigInt::zero());
        }
        coeffs[exponent] += &sign * coeff;

        match cursor.peek() {
            Some(b'+') => {
                cursor.bump();
                sign = BigInt::one();
            }
            Some(b'-') => {
                cursor.bump();
                sign = -BigInt::one();
            }
            _ => break,
        }
    }
    let rationals: Vec<BigRational> = coeffs.into_iter().map(BigRational::from_integer).collect();
    EtalePoly::new(rationals).map_err(|e| ParseError::new(start, format!("{e}")))
}

/// Resolve parsed terms against one shared auto-extended context.
fn resolve_algebra(field: FieldDescriptor, terms: &[AlgebraTerm]) -> ParseResult<ParsedAlgebra> {
    // first pass: build the shared context from every radicand, in
    // order of appearance
    let mut context = MqContext::trivial(field);
    for term in terms {
        for atom in &term.atoms {
            if let Atom::MultiQuadratic { radicands, pos } = atom {
                for value in radicands {
                    let element = field
                        .element_from_rational(value.clone())
                        .map_err(|e| ParseError::new(*pos, format!("{e}")))?;
                    let class =
                        class_of(&element).map_err(|e| ParseError::new(*pos, format!("{e}")))?;
                    let (extended, _) = context
                        .extend(&class)
                        .map_err(|e| ParseError::new(*pos, format!("{e}")))?;
                    context = extended;
                }
            }
        }
    }

    // second pass: evaluate each term over the final context
    let mut multiquadratic = VirtualGaloisSet::zero(context.clone());
    let mut polys: Vec<(EtalePoly, BigInt)> = Vec::new();
    for term in terms {
        let mut mq_value: Option<VirtualGaloisSet> = None;
        let mut poly_value: Option<EtalePoly> = None;
        for atom in &term.atoms {
            match atom {
                Atom::Poly { poly, pos } => {
                    if poly_value.is_some() || mq_value.is_some() || term.atoms.len() > 1 {
                        return Err(ParseError::new(
                            *pos,
                            "polynomial atoms cannot appear in products",
                        ));
                    }
                    poly_value = Some(poly.clone());
                }
                Atom::MultiQuadratic { radicands, pos } => {
                    let mut masks = Vec::new();
                    for value in radicands {
                        let element = field
                            .element_from_rational(value.clone())
                            .map_err(|e| ParseError::new(*pos, format!("{e}")))?;
                        let class = class_of(&element)
                            .map_err(|e| ParseError::new(*pos, format!("{e}")))?;
                        masks.push(context.express(&class).expect("class is in the context"));
                    }
                    // within one atom the radicands must span freely
                    let span = gwitt::galois::Subspace::from_members(masks.iter().copied());
                    if span.dim() != masks.len() {
                        return Err(ParseError::new(
                            *pos,
                            "dependent square classes in one field atom",
                        ));
                    }
                    let spectrum = spec_subfield(&context, &masks)
                        .map_err(|e| ParseError::new(*pos, format!("{e}")))?
                        .decompose();
                    mq_value = Some(match mq_value {
                        None => spectrum,
                        Some(acc) => acc
                            .mul(&spectrum)
                            .map_err(|e| ParseError::new(*pos, format!("{e}")))?,
                    });
                }
            }
        }
        if let Some(poly) = poly_value {
            polys.push((poly, term.coeff.clone()));
        } else if let Some(value) = mq_value {
            multiquadratic = multiquadratic
                .add(&value.scalar_mul(&term.coeff))
                .expect("shared context");
        }
    }
    Ok(ParsedAlgebra {
        multiquadratic,
        polys,
    })
}
