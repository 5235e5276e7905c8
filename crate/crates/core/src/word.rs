//! Letter assignment: one letter per chord endpoint, read along the
//! orientation. Two schemes are provided, one with exponents taken from the
//! endpoint position ([`letters_phi2`]) and one with exponents taken from
//! the crossing sign ([`letters_phibar`]). Words are never reduced here.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gauss::{position_parity_of, ChordType, LinearGaussDiagram, PositionParity, Role, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    A,
    B,
    Bp,
    C,
    Cp,
}

impl Symbol {
    pub fn as_str(self) -> &'static str {
        match self {
            Symbol::A => "a",
            Symbol::B => "b",
            Symbol::Bp => "b'",
            Symbol::C => "c",
            Symbol::Cp => "c'",
        }
    }

    fn odd(role: Role, chord_type: ChordType) -> Symbol {
        match (role, chord_type) {
            (Role::Over, ChordType::First) => Symbol::B,
            (Role::Over, ChordType::Second) => Symbol::Bp,
            (Role::Under, ChordType::First) => Symbol::C,
            (Role::Under, ChordType::Second) => Symbol::Cp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub symbol: Symbol,
    pub exponent: Sign,
}

impl Letter {
    pub const fn new(symbol: Symbol, exponent: Sign) -> Self {
        Letter { symbol, exponent }
    }

    pub const fn pos(symbol: Symbol) -> Self {
        Letter::new(symbol, Sign::Plus)
    }

    pub const fn neg(symbol: Symbol) -> Self {
        Letter::new(symbol, Sign::Minus)
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.symbol, self.exponent.flip())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol.as_str())?;
        if self.exponent == Sign::Minus {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The formal inverse: letters reversed and inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed letter `{0}`")]
pub struct LetterParseError(pub String);

impl FromStr for Letter {
    type Err = LetterParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (base, exponent) = match s.strip_suffix("^-1") {
            Some(base) => (base, Sign::Minus),
            None => (s.strip_suffix("^1").unwrap_or(s), Sign::Plus),
        };
        let symbol = match base {
            "a" => Symbol::A,
            "b" => Symbol::B,
            "b'" => Symbol::Bp,
            "c" => Symbol::C,
            "c'" => Symbol::Cp,
            _ => return Err(LetterParseError(s.to_string())),
        };
        Ok(Letter::new(symbol, exponent))
    }
}

impl FromStr for Word {
    type Err = LetterParseError;

    /// Accepts the rendering produced by `Display`; `1` or an empty string
    /// is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::default());
        }
        s.split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map(Word)
    }
}

/// Position-based letters. Even chords always give `a`; odd chords give
/// `b`/`b'` (over) or `c`/`c'` (under) by type, inverted at odd positions.
pub fn letters_phi2(diagram: &LinearGaussDiagram) -> Word {
    let classes = diagram.classify();
    let letters = diagram
        .endpoints()
        .iter()
        .enumerate()
        .map(|(i, e)| match classes[e.chord - 1].chord_type {
            None => Letter::pos(Symbol::A),
            Some(t) => {
                let exponent = match position_parity_of(i + 1) {
                    PositionParity::OddPosition => Sign::Minus,
                    PositionParity::EvenPosition => Sign::Plus,
                };
                Letter::new(Symbol::odd(e.role, t), exponent)
            }
        })
        .collect();
    Word(letters)
}

/// Sign-based letters: an over endpoint carries the chord sign, an under
/// endpoint carries its negative.
pub fn letters_phibar(diagram: &LinearGaussDiagram) -> Word {
    let classes = diagram.classify();
    let letters = diagram
        .endpoints()
        .iter()
        .map(|e| {
            let sign = diagram.chords()[e.chord - 1].sign;
            let exponent = match e.role {
                Role::Over => sign,
                Role::Under => sign.flip(),
            };
            let symbol = match classes[e.chord - 1].chord_type {
                None => Symbol::A,
                Some(t) => Symbol::odd(e.role, t),
            };
            Letter::new(symbol, exponent)
        })
        .collect();
    Word(letters)
}
