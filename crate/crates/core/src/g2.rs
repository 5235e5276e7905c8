//! Exact arithmetic in G'' = <a, d, e | a^2 = 1, de = ed>, the free product
//! of Z/2 (generated by `a`) and the lattice Z^2 (generated by `d`, `e`).
//!
//! An element is stored in free-product normal form
//! `(p0, q0) a (p1, q1) a ... a (pk, qk)` where `(p, q)` stands for
//! `d^p e^q`. Interior lattice blocks are nonzero; the head and the last
//! block may be zero.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::ops::{Add, AddAssign, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::gauss::{LinearGaussDiagram, Sign};
use crate::word::{letters_phi2, Letter, Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdeLetter {
    A,
    D(Sign),
    E(Sign),
}

impl AdeLetter {
    pub fn inverse(self) -> Self {
        match self {
            AdeLetter::A => AdeLetter::A,
            AdeLetter::D(s) => AdeLetter::D(s.flip()),
            AdeLetter::E(s) => AdeLetter::E(s.flip()),
        }
    }
}

impl fmt::Display for AdeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, sign) = match self {
            AdeLetter::A => return f.write_str("a"),
            AdeLetter::D(s) => ("d", *s),
            AdeLetter::E(s) => ("e", *s),
        };
        f.write_str(name)?;
        if sign == Sign::Minus {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AdeWord(pub Vec<AdeLetter>);

impl AdeWord {
    pub fn inverse(&self) -> AdeWord {
        AdeWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &AdeWord) -> AdeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        AdeWord(v)
    }
}

impl fmt::Display for AdeWord {
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
pub enum G2ParseError {
    #[error("malformed letter `{0}`")]
    Letter(String),
    #[error("malformed element: {0}")]
    Element(String),
}

impl FromStr for AdeWord {
    type Err = G2ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(AdeWord::default());
        }
        s.split_whitespace()
            .map(|t| match t {
                "a" | "a^-1" => Ok(AdeLetter::A),
                "d" => Ok(AdeLetter::D(Sign::Plus)),
                "d^-1" => Ok(AdeLetter::D(Sign::Minus)),
                "e" => Ok(AdeLetter::E(Sign::Plus)),
                "e^-1" => Ok(AdeLetter::E(Sign::Minus)),
                _ => Err(G2ParseError::Letter(t.to_string())),
            })
            .collect::<Result<_, _>>()
            .map(AdeWord)
    }
}

fn expand(symbol: Symbol) -> &'static [AdeLetter] {
    use AdeLetter::*;
    use Sign::*;
    match symbol {
        Symbol::A => &[A],
        Symbol::B => &[E(Plus), A],
        Symbol::Bp => &[E(Minus), A],
        Symbol::C => &[D(Minus), E(Plus), A],
        Symbol::Cp => &[E(Minus), D(Plus), A],
    }
}

fn push_letter(out: &mut Vec<AdeLetter>, l: Letter) {
    let image = expand(l.symbol);
    match l.exponent {
        Sign::Plus => out.extend_from_slice(image),
        Sign::Minus => out.extend(image.iter().rev().map(|x| x.inverse())),
    }
}

/// Rewrites a five-letter word over `{a, d, e}`.
pub fn to_ade(word: &Word) -> AdeWord {
    let mut out = Vec::with_capacity(word.len() * 3);
    for &l in word.letters() {
        push_letter(&mut out, l);
    }
    AdeWord(out)
}

/// The lattice element `d^d e^e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Lattice {
    pub d: BigInt,
    pub e: BigInt,
}

impl Lattice {
    pub fn new(d: impl Into<BigInt>, e: impl Into<BigInt>) -> Self {
        Lattice {
            d: d.into(),
            e: e.into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.d.is_zero() && self.e.is_zero()
    }

    fn of(letter: AdeLetter) -> Option<Lattice> {
        match letter {
            AdeLetter::A => None,
            AdeLetter::D(s) => Some(Lattice::new(s.value(), 0)),
            AdeLetter::E(s) => Some(Lattice::new(0, s.value())),
        }
    }
}

impl Ord for Lattice {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.d, &self.e).cmp(&(&other.d, &other.e))
    }
}

impl PartialOrd for Lattice {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl AddAssign<&Lattice> for Lattice {
    fn add_assign(&mut self, rhs: &Lattice) {
        self.d += &rhs.d;
        self.e += &rhs.e;
    }
}

impl Add for Lattice {
    type Output = Lattice;

    fn add(mut self, rhs: Lattice) -> Lattice {
        self += &rhs;
        self
    }
}

impl Neg for Lattice {
    type Output = Lattice;

    fn neg(self) -> Lattice {
        Lattice {
            d: -self.d,
            e: -self.e,
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d^{} e^{}", self.d, self.e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Syllable {
    A,
    L(Lattice),
}

/// Appends a syllable to a reduced syllable list, keeping it reduced.
fn push_syllable(stack: &mut Vec<Syllable>, s: Syllable) {
    match (stack.last_mut(), s) {
        (Some(Syllable::A), Syllable::A) => {
            stack.pop();
        }
        (Some(Syllable::L(top)), Syllable::L(v)) => {
            *top += &v;
            if top.is_zero() {
                stack.pop();
            }
        }
        (_, Syllable::L(v)) if v.is_zero() => {}
        (_, s) => stack.push(s),
    }
}

/// An element of G'' in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct G2Element {
    head: Lattice,
    tail: Vec<Lattice>,
}

impl G2Element {
    pub fn identity() -> Self {
        Self::default()
    }

    /// The involution `a`.
    pub fn involution() -> Self {
        G2Element {
            head: Lattice::default(),
            tail: vec![Lattice::default()],
        }
    }

    pub fn lattice(v: Lattice) -> Self {
        G2Element {
            head: v,
            tail: Vec::new(),
        }
    }

    /// Builds `head a tail[0] a tail[1] ...`, rejecting non-canonical input
    /// (a zero block strictly between two `a`s).
    pub fn from_parts(head: Lattice, tail: Vec<Lattice>) -> Option<Self> {
        let interior = tail.len().saturating_sub(1);
        if tail[..interior].iter().any(Lattice::is_zero) {
            return None;
        }
        Some(G2Element { head, tail })
    }

    pub fn head(&self) -> &Lattice {
        &self.head
    }

    pub fn tail(&self) -> &[Lattice] {
        &self.tail
    }

    pub fn is_identity(&self) -> bool {
        self.tail.is_empty() && self.head.is_zero()
    }

    fn syllables(&self) -> Vec<Syllable> {
        let mut out = Vec::with_capacity(2 * self.tail.len() + 1);
        if !self.head.is_zero() {
            out.push(Syllable::L(self.head.clone()));
        }
        for t in &self.tail {
            out.push(Syllable::A);
            if !t.is_zero() {
                out.push(Syllable::L(t.clone()));
            }
        }
        out
    }

    fn from_syllables(syllables: Vec<Syllable>) -> Self {
        let mut iter = syllables.into_iter().peekable();
        let head = match iter.peek() {
            Some(Syllable::L(_)) => match iter.next() {
                Some(Syllable::L(v)) => v,
                _ => unreachable!(),
            },
            _ => Lattice::default(),
        };
        let mut tail = Vec::new();
        while let Some(s) = iter.next() {
            debug_assert_eq!(s, Syllable::A);
            match iter.peek() {
                Some(Syllable::L(_)) => match iter.next() {
                    Some(Syllable::L(v)) => tail.push(v),
                    _ => unreachable!(),
                },
                _ => tail.push(Lattice::default()),
            }
        }
        G2Element { head, tail }
    }

    pub fn multiply(&self, other: &G2Element) -> G2Element {
        let mut stack = self.syllables();
        for s in other.syllables() {
            push_syllable(&mut stack, s);
        }
        G2Element::from_syllables(stack)
    }

    pub fn inverse(&self) -> G2Element {
        let mut stack = Vec::new();
        for s in self.syllables().into_iter().rev() {
            let s = match s {
                Syllable::A => Syllable::A,
                Syllable::L(v) => Syllable::L(-v),
            };
            push_syllable(&mut stack, s);
        }
        G2Element::from_syllables(stack)
    }

    /// Spells the element back out as a word over `{a, d, e}`.
    pub fn to_ade(&self) -> AdeWord {
        let mut out = Vec::new();
        let block = |v: &Lattice, out: &mut Vec<AdeLetter>| {
            for (n, gen) in [
                (&v.d, AdeLetter::D as fn(Sign) -> AdeLetter),
                (&v.e, AdeLetter::E),
            ] {
                let s = if n.is_negative() {
                    Sign::Minus
                } else {
                    Sign::Plus
                };
                let mut k = n.abs();
                while !k.is_zero() {
                    out.push(gen(s));
                    k -= 1;
                }
            }
        };
        block(&self.head, &mut out);
        for t in &self.tail {
            out.push(AdeLetter::A);
            block(t, &mut out);
        }
        AdeWord(out)
    }

    /// Conjugacy-class representative; see [`CyclicForm`].
    pub fn cyclic_form(&self) -> CyclicForm {
        let mut syl: VecDeque<Syllable> = self.syllables().into();
        while syl.len() >= 2 {
            match (syl.front().unwrap(), syl.back().unwrap()) {
                (Syllable::A, Syllable::A) => {
                    syl.pop_front();
                    syl.pop_back();
                }
                (Syllable::L(_), Syllable::L(_)) => {
                    let Some(Syllable::L(last)) = syl.pop_back() else {
                        unreachable!()
                    };
                    let Some(Syllable::L(first)) = syl.front_mut() else {
                        unreachable!()
                    };
                    *first += &last;
                    if first.is_zero() {
                        syl.pop_front();
                    }
                }
                _ => break,
            }
        }
        match syl.len() {
            0 => CyclicForm::Lattice(Lattice::default()),
            1 => match syl.pop_front().unwrap() {
                Syllable::A => CyclicForm::Involution,
                Syllable::L(v) => CyclicForm::Lattice(v),
            },
            _ => {
                if matches!(syl.front(), Some(Syllable::L(_))) {
                    syl.rotate_left(1);
                }
                let blocks: Vec<Lattice> = syl
                    .into_iter()
                    .filter_map(|s| match s {
                        Syllable::L(v) => Some(v),
                        Syllable::A => None,
                    })
                    .collect();
                CyclicForm::Cyclic(least_rotation(blocks))
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "head": lattice_json(&self.head),
            "tail": self.tail.iter().map(lattice_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self, G2ParseError> {
        let bad = || G2ParseError::Element(value.to_string());
        let head = lattice_from_json(value.get("head").ok_or_else(bad)?).ok_or_else(bad)?;
        let tail = value
            .get("tail")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|v| lattice_from_json(v).ok_or_else(bad))
            .collect::<Result<Vec<_>, _>>()?;
        G2Element::from_parts(head, tail).ok_or_else(bad)
    }
}

fn big_json(n: &BigInt) -> Value {
    Value::Number(
        n.to_string()
            .parse()
            .expect("integers are valid JSON numbers"),
    )
}

fn lattice_json(v: &Lattice) -> Value {
    Value::Array(vec![big_json(&v.d), big_json(&v.e)])
}

fn lattice_from_json(value: &Value) -> Option<Lattice> {
    let arr = value.as_array()?;
    if arr.len() != 2 {
        return None;
    }
    let num = |v: &Value| -> Option<BigInt> { v.as_number()?.to_string().parse().ok() };
    Some(Lattice::new(num(&arr[0])?, num(&arr[1])?))
}

fn least_rotation(blocks: Vec<Lattice>) -> Vec<Lattice> {
    let n = blocks.len();
    (0..n)
        .map(|k| {
            let mut r = blocks.clone();
            r.rotate_left(k);
            r
        })
        .min()
        .unwrap_or(blocks)
}

impl fmt::Display for G2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        write!(f, "{}", self.head)?;
        for t in &self.tail {
            write!(f, " | a | {t}")?;
        }
        Ok(())
    }
}

/// Conjugacy invariant of an element of Z/2 * Z^2.
///
/// Elements conjugate into a factor are represented by that factor element;
/// everything else by its cyclically reduced form
/// `a v1 a v2 ... a vk` with the block list rotated to its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CyclicForm {
    Lattice(Lattice),
    Involution,
    Cyclic(Vec<Lattice>),
}

/// Free-product normal form of an arbitrary word over `{a, d, e}`.
pub fn normalize(word: &AdeWord) -> G2Element {
    let mut stack = Vec::new();
    for &l in &word.0 {
        let s = match Lattice::of(l) {
            None => Syllable::A,
            Some(v) => Syllable::L(v),
        };
        push_syllable(&mut stack, s);
    }
    G2Element::from_syllables(stack)
}

/// The position-scheme invariant: the letter word reduced in G''.
pub fn phi2(diagram: &LinearGaussDiagram) -> G2Element {
    normalize(&to_ade(&letters_phi2(diagram)))
}

pub fn conjugate_equal(x: &G2Element, y: &G2Element) -> bool {
    x.cyclic_form() == y.cyclic_form()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::parse_gauss_code;

    fn ade(s: &str) -> AdeWord {
        s.parse().unwrap()
    }

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn to_ade_examples() {
        assert_eq!(to_ade(&word("b")), ade("e a"));
        assert_eq!(to_ade(&word("b'^-1")), ade("a e"));
        assert_eq!(to_ade(&word("a a")), ade("a a"));
        assert_eq!(to_ade(&word("b^-1")), ade("a e^-1"));
        assert_eq!(to_ade(&word("c^-1")), ade("a e^-1 d"));
        assert_eq!(to_ade(&word("c'")), ade("e^-1 d a"));
    }

    #[test]
    fn normalize_examples() {
        assert!(normalize(&ade("a e^-1 d e d^-1 a")).is_identity());
        assert!(normalize(&ade("a a")).is_identity());
        let x = normalize(&ade("d a e a d"));
        assert_eq!(x.head(), &Lattice::new(1, 0));
        assert_eq!(x.tail(), &[Lattice::new(0, 1), Lattice::new(1, 0)]);
    }

    #[test]
    fn trailing_and_leading_involution() {
        let x = normalize(&ade("a"));
        assert_eq!(x, G2Element::involution());
        assert_eq!(x.to_string(), "d^0 e^0 | a | d^0 e^0");
        let y = normalize(&ade("d d e^-1 a"));
        assert_eq!(y.head(), &Lattice::new(2, -1));
        assert_eq!(y.tail(), &[Lattice::default()]);
        assert_eq!(y.to_string(), "d^2 e^-1 | a | d^0 e^0");
        // a block that cancels brings two a's together
        assert!(normalize(&ade("a d e d^-1 e^-1 a")).is_identity());
    }

    #[test]
    fn group_law_examples() {
        let x = normalize(&ade("d a e a d"));
        assert_eq!(x.multiply(&G2Element::identity()), x);
        assert!(x.multiply(&x.inverse()).is_identity());
        let a = G2Element::involution();
        assert!(a.multiply(&a).is_identity());
        assert!(G2Element::identity().inverse().is_identity());
        let l = G2Element::lattice(Lattice::new(1, 2));
        assert_eq!(l.inverse(), G2Element::lattice(Lattice::new(-1, -2)));
    }

    #[test]
    fn render() {
        assert_eq!(G2Element::identity().to_string(), "1");
        let x = normalize(&ade("d a d^-1 e e"));
        assert_eq!(x.to_string(), "d^1 e^0 | a | d^-1 e^2");
    }

    #[test]
    fn to_ade_round_trip() {
        let x = normalize(&ade("d^-1 a e e a d d e^-1 a"));
        assert_eq!(normalize(&x.to_ade()), x);
    }

    #[test]
    fn json_round_trip() {
        let x = normalize(&ade("d a e a d a"));
        let v = x.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"head":[1,0],"tail":[[0,1],[1,0],[0,0]]}"#
        );
        assert_eq!(G2Element::from_json(&v).unwrap(), x);
        let big = G2Element::lattice(Lattice::new(
            "123456789012345678901234567890".parse::<BigInt>().unwrap(),
            -1,
        ));
        assert_eq!(G2Element::from_json(&big.to_json()).unwrap(), big);
        assert!(
            G2Element::from_json(&serde_json::json!({"head":[0,0],"tail":[[0,0],[1,1]]})).is_err()
        );
    }

    #[test]
    fn phi2_examples() {
        assert!(phi2(&LinearGaussDiagram::empty()).is_identity());
        assert!(phi2(&parse_gauss_code("O1+ U1+").unwrap()).is_identity());
    }

    #[test]
    fn conjugacy_examples() {
        let x = normalize(&ade("d a e a d"));
        assert!(conjugate_equal(&x, &x));
        let d = G2Element::lattice(Lattice::new(1, 0));
        let e = G2Element::lattice(Lattice::new(0, 1));
        assert!(!conjugate_equal(&d, &e));
        assert!(!conjugate_equal(&d, &G2Element::identity()));
        assert!(!conjugate_equal(
            &G2Element::involution(),
            &G2Element::identity()
        ));
        // a d a is conjugate to d
        assert!(conjugate_equal(&normalize(&ade("a d a")), &d));
        // d a e a d is conjugate to a e a d^2 and to a d^2 a e
        assert!(conjugate_equal(&x, &normalize(&ade("a d d a e"))));
        assert!(!conjugate_equal(&x, &normalize(&ade("a d a e"))));
    }
}
