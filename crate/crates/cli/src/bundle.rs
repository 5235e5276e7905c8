use std::fmt;

use serde_json::{json, Value};

use tkw::gauss::ChordType;
use tkw::gbar::{abelianize, AbelianImage};
use tkw::{
    letters_phi2, letters_phibar, phi2, phibar, G2Element, GBarWord, LinearGaussDiagram, Word,
};

use crate::Scheme;

pub fn raw_word(d: &LinearGaussDiagram, scheme: Scheme) -> Word {
    match scheme {
        Scheme::Phi2 => letters_phi2(d),
        Scheme::Phibar => letters_phibar(d),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramStats {
    pub chords: usize,
    pub odd: usize,
    pub first: usize,
    pub second: usize,
}

impl DiagramStats {
    pub fn new(d: &LinearGaussDiagram) -> Self {
        let classes = d.classify();
        let count = |t| classes.iter().filter(|c| c.chord_type == Some(t)).count();
        let (first, second) = (count(ChordType::First), count(ChordType::Second));
        DiagramStats {
            chords: d.chord_count(),
            odd: first + second,
            first,
            second,
        }
    }

    pub fn to_json(self) -> Value {
        json!({
            "m": self.chords,
            "odd": self.odd,
            "first_type": self.first,
            "second_type": self.second,
        })
    }
}

#[derive(Debug, Clone)]
pub enum Reduced {
    G2(G2Element),
    GBar {
        word: GBarWord,
        abelian: AbelianImage,
    },
}

#[derive(Debug, Clone)]
pub struct InvariantBundle {
    pub scheme: Scheme,
    pub raw_word: Word,
    pub reduced: Reduced,
    pub stats: DiagramStats,
}

impl InvariantBundle {
    pub fn new(d: &LinearGaussDiagram, scheme: Scheme) -> Self {
        let reduced = match scheme {
            Scheme::Phi2 => Reduced::G2(phi2(d)),
            Scheme::Phibar => {
                let word = phibar(d);
                let abelian = abelianize(&word);
                Reduced::GBar { word, abelian }
            }
        };
        InvariantBundle {
            scheme,
            raw_word: raw_word(d, scheme),
            reduced,
            stats: DiagramStats::new(d),
        }
    }

    pub fn to_json(&self) -> Value {
        let reduced = match &self.reduced {
            Reduced::G2(g) => json!({
                "element": g.to_json(),
                "text": g.to_string(),
                "identity": g.is_identity(),
            }),
            Reduced::GBar { word, abelian } => json!({
                "word": word.to_string(),
                "abelian": abelian.to_json(),
            }),
        };
        json!({
            "scheme": self.scheme.name(),
            "raw_word": self.raw_word.to_string(),
            "reduced": reduced,
            "diagram_stats": self.stats.to_json(),
        })
    }
}

impl fmt::Display for InvariantBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scheme: {}", self.scheme.name())?;
        writeln!(
            f,
            "chords: {} ({} odd: {} first type, {} second type)",
            self.stats.chords, self.stats.odd, self.stats.first, self.stats.second
        )?;
        writeln!(f, "word: {}", self.raw_word)?;
        match &self.reduced {
            Reduced::G2(g) => writeln!(f, "reduced: {g}"),
            Reduced::GBar { word, abelian } => {
                writeln!(f, "reduced: {word}")?;
                writeln!(f, "abelian: {abelian}")
            }
        }
    }
}
