//! Linear Gauss diagrams: the combinatorial model of a long knot diagram on
//! the cylinder.
//!
//! A diagram with `m` chords has `2m` endpoints laid out left to right along
//! the orientation of the knot. Every chord records one self-crossing: the
//! endpoint where the knot passes over, the endpoint where it passes under,
//! and the crossing sign. Positions are 1-based throughout the public API.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("malformed token `{token}` at token {index}")]
    MalformedToken { token: String, index: usize },
    #[error("chord {id} must appear exactly once as O and once as U")]
    ChordRoleViolation { id: u64 },
    #[error("chord {id} carries different signs on its O and U tokens")]
    SignMismatch { id: u64 },
    #[error("unknown chord id {0}")]
    UnknownChordId(usize),
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn opposite(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }

    fn symbol(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Chord {
    pub id: usize,
    pub over_pos: usize,
    pub under_pos: usize,
    pub sign: Sign,
}

impl Chord {
    pub fn pos(&self, role: Role) -> usize {
        match role {
            Role::Over => self.over_pos,
            Role::Under => self.under_pos,
        }
    }

    /// Endpoint positions in increasing order.
    pub fn span(&self) -> (usize, usize) {
        if self.over_pos < self.under_pos {
            (self.over_pos, self.under_pos)
        } else {
            (self.under_pos, self.over_pos)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EndpointRef {
    pub chord: usize,
    pub role: Role,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChordType {
    First,
    Second,
}

impl ChordType {
    pub fn flip(self) -> ChordType {
        match self {
            ChordType::First => ChordType::Second,
            ChordType::Second => ChordType::First,
        }
    }
}

/// Parity of a chord and, for odd chords only, its type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChordClassification {
    pub parity: Parity,
    pub chord_type: Option<ChordType>,
}

impl ChordClassification {
    pub const EVEN: ChordClassification = ChordClassification {
        parity: Parity::Even,
        chord_type: None,
    };

    pub fn odd(chord_type: ChordType) -> Self {
        ChordClassification {
            parity: Parity::Odd,
            chord_type: Some(chord_type),
        }
    }

    pub fn is_odd(&self) -> bool {
        self.parity == Parity::Odd
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositionParity {
    OddPosition,
    EvenPosition,
}

/// One endpoint as it appears in a Gauss code: a chord label, a role and the
/// crossing sign. Labels are arbitrary until the diagram is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawEndpoint {
    pub label: u64,
    pub role: Role,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LinearGaussDiagram {
    chords: Vec<Chord>,
    endpoints: Vec<EndpointRef>,
}

impl LinearGaussDiagram {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a diagram from endpoints listed along the orientation.
    ///
    /// Labels forming exactly `1..=m` are kept; any other labelling is
    /// renumbered in order of first appearance.
    pub fn from_endpoints(raw: &[RawEndpoint]) -> Result<Self, GaussError> {
        let mut seen: HashMap<u64, (Option<usize>, Option<usize>, Sign)> = HashMap::new();
        let mut order = Vec::new();
        for (i, e) in raw.iter().enumerate() {
            let pos = i + 1;
            let entry = seen.entry(e.label).or_insert_with(|| {
                order.push(e.label);
                (None, None, e.sign)
            });
            if entry.2 != e.sign {
                return Err(GaussError::SignMismatch { id: e.label });
            }
            let slot = match e.role {
                Role::Over => &mut entry.0,
                Role::Under => &mut entry.1,
            };
            if slot.is_some() {
                return Err(GaussError::ChordRoleViolation { id: e.label });
            }
            *slot = Some(pos);
        }

        let m = order.len();
        let consecutive = order.iter().all(|&l| l >= 1 && l <= m as u64);
        let id_of = |label: u64, idx: usize| -> usize {
            if consecutive {
                label as usize
            } else {
                idx + 1
            }
        };

        let mut chords = vec![None; m];
        for (idx, &label) in order.iter().enumerate() {
            let (over, under, sign) = seen[&label];
            let (Some(over_pos), Some(under_pos)) = (over, under) else {
                return Err(GaussError::ChordRoleViolation { id: label });
            };
            let id = id_of(label, idx);
            chords[id - 1] = Some(Chord {
                id,
                over_pos,
                under_pos,
                sign,
            });
        }
        let chords: Vec<Chord> = chords
            .into_iter()
            .map(|c| c.expect("ids cover 1..=m"))
            .collect();

        let mut endpoints = vec![
            EndpointRef {
                chord: 0,
                role: Role::Over
            };
            2 * m
        ];
        for c in &chords {
            endpoints[c.over_pos - 1] = EndpointRef {
                chord: c.id,
                role: Role::Over,
            };
            endpoints[c.under_pos - 1] = EndpointRef {
                chord: c.id,
                role: Role::Under,
            };
        }
        Ok(LinearGaussDiagram { chords, endpoints })
    }

    /// The endpoint list in the form accepted by [`from_endpoints`](Self::from_endpoints).
    pub fn raw_endpoints(&self) -> Vec<RawEndpoint> {
        self.endpoints
            .iter()
            .map(|e| RawEndpoint {
                label: e.chord as u64,
                role: e.role,
                sign: self.chords[e.chord - 1].sign,
            })
            .collect()
    }

    pub fn chord_count(&self) -> usize {
        self.chords.len()
    }

    pub fn endpoint_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn endpoints(&self) -> &[EndpointRef] {
        &self.endpoints
    }

    pub fn chord(&self, id: usize) -> Result<&Chord, GaussError> {
        if id == 0 {
            return Err(GaussError::UnknownChordId(id));
        }
        self.chords
            .get(id - 1)
            .ok_or(GaussError::UnknownChordId(id))
    }

    /// The endpoint at 1-based position `pos`.
    pub fn endpoint(&self, pos: usize) -> Result<EndpointRef, GaussError> {
        self.check_index(pos)?;
        Ok(self.endpoints[pos - 1])
    }

    fn check_index(&self, pos: usize) -> Result<(), GaussError> {
        if pos == 0 || pos > self.endpoints.len() {
            Err(GaussError::IndexOutOfRange {
                index: pos,
                len: self.endpoints.len(),
            })
        } else {
            Ok(())
        }
    }

    /// True iff the ends of the two chords alternate along the line.
    pub fn linked(&self, x: usize, y: usize) -> Result<bool, GaussError> {
        let cx = self.chord(x)?;
        let cy = self.chord(y)?;
        Ok(spans_linked(cx.span(), cy.span()))
    }

    /// Number of chords linked with each chord, indexed by `id - 1`.
    pub fn link_degrees(&self) -> Vec<usize> {
        let spans: Vec<_> = self.chords.iter().map(Chord::span).collect();
        let mut degrees = vec![0; spans.len()];
        for i in 0..spans.len() {
            for j in i + 1..spans.len() {
                if spans_linked(spans[i], spans[j]) {
                    degrees[i] += 1;
                    degrees[j] += 1;
                }
            }
        }
        degrees
    }

    /// Classifies every chord, indexed by `id - 1`.
    ///
    /// Parity is settled first from the link degrees; types of odd chords
    /// then count the linked chords that are even.
    pub fn classify(&self) -> Vec<ChordClassification> {
        let spans: Vec<_> = self.chords.iter().map(Chord::span).collect();
        let odd: Vec<bool> = self.link_degrees().iter().map(|d| d % 2 == 1).collect();
        (0..spans.len())
            .map(|i| {
                if !odd[i] {
                    return ChordClassification::EVEN;
                }
                let even_links = (0..spans.len())
                    .filter(|&j| j != i && !odd[j] && spans_linked(spans[i], spans[j]))
                    .count();
                ChordClassification::odd(if even_links % 2 == 0 {
                    ChordType::First
                } else {
                    ChordType::Second
                })
            })
            .collect()
    }

    pub fn classify_chord(&self, id: usize) -> Result<ChordClassification, GaussError> {
        self.chord(id)?;
        Ok(self.classify()[id - 1])
    }

    pub fn position_parity(&self, pos: usize) -> Result<PositionParity, GaussError> {
        self.check_index(pos)?;
        Ok(position_parity_of(pos))
    }

    /// Reverses the orientation: position `k` becomes `2m + 1 - k`. Roles
    /// and signs are kept.
    pub fn reverse(&self) -> LinearGaussDiagram {
        let n = self.endpoints.len();
        let chords = self
            .chords
            .iter()
            .map(|c| Chord {
                over_pos: n + 1 - c.over_pos,
                under_pos: n + 1 - c.under_pos,
                ..*c
            })
            .collect();
        let endpoints = self.endpoints.iter().rev().copied().collect();
        LinearGaussDiagram { chords, endpoints }
    }

    /// Moves the basepoint: the endpoint sequence is rotated left by `k`.
    pub fn rotate_basepoint(&self, k: usize) -> Result<LinearGaussDiagram, GaussError> {
        let n = self.endpoints.len();
        if k > n {
            return Err(GaussError::IndexOutOfRange { index: k, len: n });
        }
        if n == 0 {
            return Ok(self.clone());
        }
        let k = k % n;
        let shift = |p: usize| (p - 1 + n - k) % n + 1;
        let chords = self
            .chords
            .iter()
            .map(|c| Chord {
                over_pos: shift(c.over_pos),
                under_pos: shift(c.under_pos),
                ..*c
            })
            .collect();
        let mut endpoints = self.endpoints.clone();
        endpoints.rotate_left(k);
        Ok(LinearGaussDiagram { chords, endpoints })
    }

    /// Gauss code text, e.g. `O1+ U2- U1+ O2-`.
    pub fn to_code(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn spans_linked(x: (usize, usize), y: (usize, usize)) -> bool {
    let inside = |p: usize| x.0 < p && p < x.1;
    inside(y.0) != inside(y.1)
}

pub fn position_parity_of(pos: usize) -> PositionParity {
    if pos % 2 == 1 {
        PositionParity::OddPosition
    } else {
        PositionParity::EvenPosition
    }
}

fn parse_token(token: &str, index: usize) -> Result<RawEndpoint, GaussError> {
    let malformed = || GaussError::MalformedToken {
        token: token.to_string(),
        index,
    };
    let mut chars = token.chars();
    let role = match chars.next() {
        Some('O') | Some('o') => Role::Over,
        Some('U') | Some('u') => Role::Under,
        _ => return Err(malformed()),
    };
    let sign = match chars.next_back() {
        Some('+') => Sign::Plus,
        Some('-') => Sign::Minus,
        _ => return Err(malformed()),
    };
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let label: u64 = digits.parse().map_err(|_| malformed())?;
    Ok(RawEndpoint { label, role, sign })
}

/// Parses a whitespace separated Gauss code such as `O1+ U2- U1+ O2-`.
/// The empty string and a lone `.` both denote the empty diagram.
pub fn parse_gauss_code(text: &str) -> Result<LinearGaussDiagram, GaussError> {
    let text = text.trim();
    if text == "." {
        return Ok(LinearGaussDiagram::empty());
    }
    let raw = text
        .split_whitespace()
        .enumerate()
        .map(|(i, t)| parse_token(t, i + 1))
        .collect::<Result<Vec<_>, _>>()?;
    LinearGaussDiagram::from_endpoints(&raw)
}

/// Parses corpus text: one diagram per line, `#` starts a comment line and
/// blank lines are skipped. Write `.` for the empty diagram.
pub fn parse_corpus(text: &str) -> Result<Vec<LinearGaussDiagram>, GaussError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_gauss_code)
        .collect()
}

impl FromStr for LinearGaussDiagram {
    type Err = GaussError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss_code(s)
    }
}

impl fmt::Display for LinearGaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.endpoints.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let sign = self.chords[e.chord - 1].sign;
            write!(f, "{}{}{}", e.role.symbol(), e.chord, sign.symbol())?;
        }
        Ok(())
    }
}
