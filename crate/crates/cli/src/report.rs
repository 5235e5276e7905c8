use std::fmt;

use serde_json::{json, Value};

use tkw::gauss::{ChordClassification, ChordType, Parity, Sign};
use tkw::{letters_phi2, letters_phibar, LinearGaussDiagram, Word};

pub struct ParseReport<'a> {
    diagram: &'a LinearGaussDiagram,
    classes: Vec<ChordClassification>,
    degrees: Vec<usize>,
    phi2: Word,
    phibar: Word,
}

fn class_name(c: &ChordClassification) -> &'static str {
    match (c.parity, c.chord_type) {
        (Parity::Even, _) => "even",
        (Parity::Odd, Some(ChordType::First)) => "odd/first",
        (Parity::Odd, _) => "odd/second",
    }
}

fn sign_str(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "+",
        Sign::Minus => "-",
    }
}

impl<'a> ParseReport<'a> {
    pub fn new(diagram: &'a LinearGaussDiagram) -> Self {
        ParseReport {
            diagram,
            classes: diagram.classify(),
            degrees: diagram.link_degrees(),
            phi2: letters_phi2(diagram),
            phibar: letters_phibar(diagram),
        }
    }

    pub fn to_json(&self) -> Value {
        let chords: Vec<Value> = self
            .diagram
            .chords()
            .iter()
            .zip(&self.classes)
            .zip(&self.degrees)
            .map(|((c, class), deg)| {
                json!({
                    "id": c.id,
                    "over": c.over_pos,
                    "under": c.under_pos,
                    "sign": sign_str(c.sign),
                    "linked": deg,
                    "class": class_name(class),
                })
            })
            .collect();
        json!({
            "code": self.diagram.to_code(),
            "m": self.diagram.chord_count(),
            "chords": chords,
            "phi2_letters": self.phi2.to_string(),
            "phibar_letters": self.phibar.to_string(),
        })
    }

    /// One row per chord, drawn as an arc between its endpoint columns.
    fn sketch(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.diagram.endpoint_count();
        for c in self.diagram.chords() {
            let (lo, hi) = c.span();
            let row: String = (1..=n)
                .map(|p| match p {
                    _ if p == c.over_pos => 'O',
                    _ if p == c.under_pos => 'U',
                    _ if p > lo && p < hi => '-',
                    _ => ' ',
                })
                .collect();
            writeln!(f, "  {:>3} |{}|", c.id, row.trim_end())?;
        }
        Ok(())
    }
}

impl fmt::Display for ParseReport<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "code: {}", self.diagram.to_code())?;
        writeln!(f, "m = {}", self.diagram.chord_count())?;
        writeln!(f, "chord  over  under  sign  linked  class")?;
        for ((c, class), deg) in self
            .diagram
            .chords()
            .iter()
            .zip(&self.classes)
            .zip(&self.degrees)
        {
            writeln!(
                f,
                "{:>5}  {:>4}  {:>5}  {:>4}  {:>6}  {}",
                c.id,
                c.over_pos,
                c.under_pos,
                sign_str(c.sign),
                deg,
                class_name(class)
            )?;
        }
        if !self.diagram.is_empty() {
            self.sketch(f)?;
        }
        writeln!(f, "phi2 letters:   {}", self.phi2)?;
        writeln!(f, "phibar letters: {}", self.phibar)
    }
}
