//! Oriented Reidemeister moves on linear Gauss diagrams.
//!
//! Each move is described by a [`MoveSchema`]: a list of segments (runs of
//! consecutive endpoints along the knot) whose entries name a chord slot and
//! a role, plus the sign of every slot. R1 and R2 create or delete their
//! chords; R3 reverses the order of the endpoints inside each of its three
//! segments. Changing a schema is a change to [`SCHEMAS`] only.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gauss::{LinearGaussDiagram, RawEndpoint, Role, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move does not apply here: {0}")]
    InvalidSite(String),
    #[error("malformed move `{0}`")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    R1a,
    R1b,
    R2a,
    R3a,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::R1a => "R1a",
            MoveKind::R1b => "R1b",
            MoveKind::R2a => "R2a",
            MoveKind::R3a => "R3a",
        }
    }

    pub fn schema(self) -> &'static MoveSchema {
        SCHEMAS
            .iter()
            .find(|s| s.kind == self)
            .expect("every kind has a schema")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Effect {
    /// The pattern's chords are created (insert) or removed (delete).
    Create,
    /// Every segment of the pattern is read backwards afterwards.
    ReverseSegments,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Insert,
    Delete,
    Forward,
    Backward,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Insert => "insert",
            Direction::Delete => "delete",
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        }
    }
}

pub type Segment = &'static [(usize, Role)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSchema {
    pub kind: MoveKind,
    pub segments: &'static [Segment],
    /// Sign of the chord bound to each slot.
    pub signs: &'static [Sign],
    pub effect: Effect,
}

impl MoveSchema {
    pub fn slots(&self) -> usize {
        self.signs.len()
    }

    pub fn directions(&self) -> [Direction; 2] {
        match self.effect {
            Effect::Create => [Direction::Insert, Direction::Delete],
            Effect::ReverseSegments => [Direction::Forward, Direction::Backward],
        }
    }

    /// Chord count change of a move in `direction`.
    pub fn chord_delta(&self, direction: Direction) -> isize {
        match direction {
            Direction::Insert => self.slots() as isize,
            Direction::Delete => -(self.slots() as isize),
            _ => 0,
        }
    }

    fn pattern(&self, direction: Direction) -> Vec<Vec<(usize, Role)>> {
        self.segments
            .iter()
            .map(|seg| {
                let mut s = seg.to_vec();
                if direction == Direction::Backward {
                    s.reverse();
                }
                s
            })
            .collect()
    }
}

use Role::{Over as O, Under as U};
use Sign::{Minus, Plus};

/// The generating set: two kinks of opposite sign, a bigon with parallel
/// strands, and the braid-like triangle move with three positive crossings.
pub const SCHEMAS: [MoveSchema; 4] = [
    MoveSchema {
        kind: MoveKind::R1a,
        segments: &[&[(0, O), (0, U)]],
        signs: &[Plus],
        effect: Effect::Create,
    },
    MoveSchema {
        kind: MoveKind::R1b,
        segments: &[&[(0, U), (0, O)]],
        signs: &[Minus],
        effect: Effect::Create,
    },
    MoveSchema {
        kind: MoveKind::R2a,
        segments: &[&[(0, O), (1, O)], &[(0, U), (1, U)]],
        signs: &[Plus, Minus],
        effect: Effect::Create,
    },
    MoveSchema {
        kind: MoveKind::R3a,
        segments: &[&[(0, O), (1, O)], &[(0, U), (2, O)], &[(1, U), (2, U)]],
        signs: &[Plus, Plus, Plus],
        effect: Effect::ReverseSegments,
    },
];

/// A schema bound to a place in a diagram.
///
/// For insertions `site` holds, per segment, the number of endpoints that
/// precede the segment in the resulting diagram. For every other direction
/// it holds the chord id bound to each slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoveApplication {
    pub kind: MoveKind,
    pub direction: Direction,
    pub site: Vec<usize>,
}

impl MoveApplication {
    pub fn schema(&self) -> &'static MoveSchema {
        self.kind.schema()
    }
}

impl fmt::Display for MoveApplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}@", self.kind.name(), self.direction.name())?;
        for (i, s) in self.site.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if self.direction == Direction::Insert {
                write!(f, "{s}")?;
            } else {
                write!(f, "c{s}")?;
            }
        }
        Ok(())
    }
}

/// A parsed move whose direction may still be open (`R3a@c1,c2,c3`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSpec {
    pub kind: MoveKind,
    pub direction: Option<Direction>,
    pub site: Vec<usize>,
}

impl FromStr for MoveSpec {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MoveError::Malformed(s.to_string());
        let (head, site) = s.trim().split_once('@').ok_or_else(bad)?;
        let (kind, direction) = match head.split_once(':') {
            Some((k, d)) => (k, Some(d)),
            None => (head, None),
        };
        let kind = match kind {
            "R1a" => MoveKind::R1a,
            "R1b" => MoveKind::R1b,
            "R2a" => MoveKind::R2a,
            "R3a" => MoveKind::R3a,
            _ => return Err(bad()),
        };
        let direction = match direction {
            None => None,
            Some("insert") => Some(Direction::Insert),
            Some("delete") => Some(Direction::Delete),
            Some("forward") => Some(Direction::Forward),
            Some("backward") => Some(Direction::Backward),
            Some(_) => return Err(bad()),
        };
        if let Some(d) = direction {
            if !kind.schema().directions().contains(&d) {
                return Err(bad());
            }
        }
        let wants_chords = direction != Some(Direction::Insert);
        let site = site
            .split(',')
            .map(|t| {
                let t = t.trim();
                let digits = if wants_chords {
                    t.strip_prefix('c').unwrap_or(t)
                } else {
                    t
                };
                digits.parse::<usize>().map_err(|_| bad())
            })
            .collect::<Result<Vec<_>, _>>()?;
        let expected = if wants_chords {
            kind.schema().slots()
        } else {
            kind.schema().segments.len()
        };
        if site.len() != expected {
            return Err(bad());
        }
        Ok(MoveSpec {
            kind,
            direction,
            site,
        })
    }
}

impl FromStr for MoveApplication {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let spec: MoveSpec = s.parse()?;
        let direction = spec
            .direction
            .ok_or_else(|| MoveError::Malformed(s.to_string()))?;
        Ok(MoveApplication {
            kind: spec.kind,
            direction,
            site: spec.site,
        })
    }
}

/// Resolves a move spec against a diagram. Without an explicit direction,
/// R3 tries forward then backward; R1/R2 with chord sites mean delete.
pub fn resolve_move(
    diagram: &LinearGaussDiagram,
    spec: &MoveSpec,
) -> Result<MoveApplication, MoveError> {
    let candidates: Vec<Direction> = match spec.direction {
        Some(d) => vec![d],
        None => match spec.kind.schema().effect {
            Effect::ReverseSegments => vec![Direction::Forward, Direction::Backward],
            Effect::Create => vec![Direction::Delete],
        },
    };
    let mut last_err = None;
    for direction in candidates {
        let mv = MoveApplication {
            kind: spec.kind,
            direction,
            site: spec.site.clone(),
        };
        match apply_move(diagram, &mv) {
            Ok(_) => return Ok(mv),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("at least one candidate direction"))
}

/// Positions (1-based) of each segment's first endpoint when the chords in
/// `binding` realise `pattern` with the schema signs.
fn locate(
    diagram: &LinearGaussDiagram,
    schema: &MoveSchema,
    pattern: &[Vec<(usize, Role)>],
    binding: &[usize],
) -> Result<Vec<usize>, String> {
    if binding.len() != schema.slots() {
        return Err(format!("expected {} chords", schema.slots()));
    }
    for (i, &c) in binding.iter().enumerate() {
        let chord = diagram.chord(c).map_err(|e| e.to_string())?;
        if binding[..i].contains(&c) {
            return Err(format!("chord {c} bound twice"));
        }
        if chord.sign != schema.signs[i] {
            return Err(format!("chord {c} has the wrong sign"));
        }
    }
    let mut starts = Vec::with_capacity(pattern.len());
    for seg in pattern {
        let first = diagram.chord(binding[seg[0].0]).unwrap().pos(seg[0].1);
        for (k, &(slot, role)) in seg.iter().enumerate() {
            let pos = diagram.chord(binding[slot]).unwrap().pos(role);
            if pos != first + k {
                return Err("endpoints are not consecutive in the required order".into());
            }
        }
        starts.push(first);
    }
    Ok(starts)
}

/// All chord bindings realising `pattern`.
fn find_matches(
    diagram: &LinearGaussDiagram,
    schema: &MoveSchema,
    pattern: &[Vec<(usize, Role)>],
) -> Vec<Vec<usize>> {
    let flat: Vec<(usize, usize, Role)> = pattern
        .iter()
        .enumerate()
        .flat_map(|(s, seg)| seg.iter().map(move |&(slot, role)| (s, slot, role)))
        .collect();
    let mut out = Vec::new();
    let mut binding = vec![None; schema.slots()];
    search(diagram, schema, &flat, 0, None, &mut binding, &mut out);
    out
}

fn search(
    diagram: &LinearGaussDiagram,
    schema: &MoveSchema,
    flat: &[(usize, usize, Role)],
    at: usize,
    prev: Option<(usize, usize)>,
    binding: &mut Vec<Option<usize>>,
    out: &mut Vec<Vec<usize>>,
) {
    let Some(&(seg, slot, role)) = flat.get(at) else {
        out.push(binding.iter().map(|b| b.unwrap()).collect());
        return;
    };
    let continuing = matches!(prev, Some((s, _)) if s == seg);
    let candidates: Vec<usize> = if continuing {
        vec![prev.unwrap().1 + 1]
    } else if let Some(c) = binding[slot] {
        vec![diagram.chords()[c - 1].pos(role)]
    } else {
        (1..=diagram.endpoint_count()).collect()
    };
    for pos in candidates {
        let Ok(e) = diagram.endpoint(pos) else {
            continue;
        };
        if e.role != role {
            continue;
        }
        let fresh = binding[slot].is_none();
        match binding[slot] {
            Some(c) if c != e.chord => continue,
            Some(_) => {}
            None => {
                if binding.contains(&Some(e.chord))
                    || diagram.chords()[e.chord - 1].sign != schema.signs[slot]
                {
                    continue;
                }
                binding[slot] = Some(e.chord);
            }
        }
        search(
            diagram,
            schema,
            flat,
            at + 1,
            Some((seg, pos)),
            binding,
            out,
        );
        if fresh {
            binding[slot] = None;
        }
    }
}

/// Every way to place the segments of `schema` into a diagram with `n`
/// endpoints, as per-segment start offsets in the result.
fn insertion_sites(schema: &MoveSchema, n: usize) -> Vec<Vec<usize>> {
    let k = schema.segments.len();
    let mut out = Vec::new();
    let mut order: Vec<usize> = (0..k).collect();
    permutations(&mut order, 0, &mut |perm| {
        let mut gaps = vec![0; k];
        loop {
            let mut starts = vec![0; k];
            let mut placed = 0;
            for (j, &s) in perm.iter().enumerate() {
                starts[s] = gaps[j] + placed;
                placed += schema.segments[s].len();
            }
            out.push(starts);
            // next non-decreasing gap tuple
            let mut j = k;
            loop {
                if j == 0 {
                    return;
                }
                j -= 1;
                if gaps[j] < n {
                    let g = gaps[j] + 1;
                    for x in &mut gaps[j..] {
                        *x = g;
                    }
                    break;
                }
            }
        }
    });
    out
}

fn permutations(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Lists every applicable move: all insertion sites and all matches of the
/// delete, forward and backward patterns.
pub fn enumerate_moves(diagram: &LinearGaussDiagram) -> Vec<MoveApplication> {
    let mut out = Vec::new();
    for schema in &SCHEMAS {
        for direction in schema.directions() {
            if direction == Direction::Insert {
                for site in insertion_sites(schema, diagram.endpoint_count()) {
                    out.push(MoveApplication {
                        kind: schema.kind,
                        direction,
                        site,
                    });
                }
            } else {
                for site in find_matches(diagram, schema, &schema.pattern(direction)) {
                    out.push(MoveApplication {
                        kind: schema.kind,
                        direction,
                        site,
                    });
                }
            }
        }
    }
    out
}

fn insert_pattern(
    diagram: &LinearGaussDiagram,
    pattern: &[Vec<(usize, Role)>],
    signs: &[Sign],
    starts: &[usize],
) -> Result<LinearGaussDiagram, MoveError> {
    if starts.len() != pattern.len() {
        return Err(MoveError::InvalidSite(format!(
            "expected {} offsets",
            pattern.len()
        )));
    }
    let added: usize = pattern.iter().map(Vec::len).sum();
    let total = diagram.endpoint_count() + added;
    let mut slots: Vec<Option<(usize, Role)>> = vec![None; total];
    for (seg, &start) in pattern.iter().zip(starts) {
        for (k, &entry) in seg.iter().enumerate() {
            let cell = slots
                .get_mut(start + k)
                .ok_or_else(|| MoveError::InvalidSite(format!("offset {start} past the end")))?;
            if cell.is_some() {
                return Err(MoveError::InvalidSite("segments overlap".into()));
            }
            *cell = Some(entry);
        }
    }
    let m = diagram.chord_count() as u64;
    let mut old = diagram.raw_endpoints().into_iter();
    let raw: Vec<RawEndpoint> = slots
        .into_iter()
        .map(|cell| match cell {
            Some((slot, role)) => RawEndpoint {
                label: m + 1 + slot as u64,
                role,
                sign: signs[slot],
            },
            None => old.next().expect("lengths agree"),
        })
        .collect();
    Ok(LinearGaussDiagram::from_endpoints(&raw).expect("insertion keeps the diagram valid"))
}

pub fn apply_move(
    diagram: &LinearGaussDiagram,
    mv: &MoveApplication,
) -> Result<LinearGaussDiagram, MoveError> {
    let schema = mv.schema();
    if !schema.directions().contains(&mv.direction) {
        return Err(MoveError::InvalidSite(format!(
            "{} has no {} direction",
            schema.kind.name(),
            mv.direction.name()
        )));
    }
    let pattern = schema.pattern(mv.direction);
    if mv.direction == Direction::Insert {
        return insert_pattern(diagram, &pattern, schema.signs, &mv.site);
    }
    let starts = locate(diagram, schema, &pattern, &mv.site).map_err(MoveError::InvalidSite)?;
    let mut raw = diagram.raw_endpoints();
    match mv.direction {
        Direction::Delete => {
            let removed = &mv.site;
            let relabel =
                |id: u64| id - removed.iter().filter(|&&r| (r as u64) < id).count() as u64;
            let raw: Vec<RawEndpoint> = raw
                .into_iter()
                .filter(|e| !removed.contains(&(e.label as usize)))
                .map(|e| RawEndpoint {
                    label: relabel(e.label),
                    ..e
                })
                .collect();
            Ok(LinearGaussDiagram::from_endpoints(&raw).expect("deletion keeps the diagram valid"))
        }
        _ => {
            for (seg, start) in pattern.iter().zip(starts) {
                raw[start - 1..start - 1 + seg.len()].reverse();
            }
            Ok(LinearGaussDiagram::from_endpoints(&raw)
                .expect("reordering keeps the diagram valid"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkConfig {
    /// Probability of choosing an insertion when other moves exist.
    pub insert_bias: f64,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig { insert_bias: 0.7 }
    }
}

/// One random move. Insertions are picked with probability
/// `config.insert_bias` whenever some other move is available.
pub fn random_move<R: Rng>(
    diagram: &LinearGaussDiagram,
    rng: &mut R,
    config: &WalkConfig,
) -> MoveApplication {
    let (inserts, others): (Vec<_>, Vec<_>) = enumerate_moves(diagram)
        .into_iter()
        .partition(|m| m.direction == Direction::Insert);
    let pool = if others.is_empty() || rng.gen_bool(config.insert_bias) {
        inserts
    } else {
        others
    };
    pool.choose(rng).expect("insertions always exist").clone()
}

/// A seeded walk; returns the moves taken and the trajectory, start included.
pub fn random_walk_with<R: Rng>(
    diagram: &LinearGaussDiagram,
    steps: usize,
    rng: &mut R,
    config: &WalkConfig,
) -> (Vec<MoveApplication>, Vec<LinearGaussDiagram>) {
    let mut moves = Vec::with_capacity(steps);
    let mut trajectory = vec![diagram.clone()];
    for _ in 0..steps {
        let current = trajectory.last().unwrap();
        let mv = random_move(current, rng, config);
        let next = apply_move(current, &mv).expect("enumerated moves apply");
        moves.push(mv);
        trajectory.push(next);
    }
    (moves, trajectory)
}

pub fn random_walk(
    diagram: &LinearGaussDiagram,
    steps: usize,
    seed: u64,
) -> Vec<LinearGaussDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_walk_with(diagram, steps, &mut rng, &WalkConfig::default()).1
}

/// A diagram with a uniform number of chords in `0..=max_chords`, endpoints
/// in uniformly random order and random signs.
pub fn random_diagram<R: Rng>(rng: &mut R, max_chords: usize) -> LinearGaussDiagram {
    let m = rng.gen_range(0..=max_chords);
    let mut raw: Vec<RawEndpoint> = Vec::with_capacity(2 * m);
    for id in 1..=m as u64 {
        let sign = if rng.gen_bool(0.5) {
            Sign::Plus
        } else {
            Sign::Minus
        };
        for role in [Role::Over, Role::Under] {
            raw.push(RawEndpoint {
                label: id,
                role,
                sign,
            });
        }
    }
    raw.shuffle(rng);
    LinearGaussDiagram::from_endpoints(&raw).expect("each chord has one O and one U")
}

/// Adds the three chords of an R3a triangle (in either of its two states)
/// at random places, so that an R3a move applies to the result.
pub fn plant_triangle<R: Rng>(rng: &mut R, diagram: &LinearGaussDiagram) -> LinearGaussDiagram {
    let schema = MoveKind::R3a.schema();
    let direction = if rng.gen_bool(0.5) {
        Direction::Forward
    } else {
        Direction::Backward
    };
    let pattern = schema.pattern(direction);
    let sites = insertion_sites(schema, diagram.endpoint_count());
    let starts = sites.choose(rng).expect("at least one site");
    insert_pattern(diagram, &pattern, schema.signs, starts).expect("generated sites are valid")
}

/// A generated test case: a start diagram, the moves of a walk from it and
/// the visited diagrams.
#[derive(Debug, Clone, PartialEq)]
pub struct Trial {
    pub start: LinearGaussDiagram,
    pub moves: Vec<MoveApplication>,
    pub trajectory: Vec<LinearGaussDiagram>,
}

pub const TRIAL_MAX_CHORDS: usize = 8;

/// Trial number `index` of the run seeded with `seed`. Every index gets its
/// own random stream, so trials can be produced in any order or in parallel.
///
/// Odd indices start from a random diagram of at most
/// [`TRIAL_MAX_CHORDS`] chords; even indices start from a smaller random
/// diagram with an R3a triangle planted in it, so R3 steps are common.
pub fn trial(seed: u64, index: u64, max_moves: usize) -> Trial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let start = if index.is_multiple_of(2) {
        let base = random_diagram(&mut rng, TRIAL_MAX_CHORDS - 3);
        plant_triangle(&mut rng, &base)
    } else {
        random_diagram(&mut rng, TRIAL_MAX_CHORDS)
    };
    let steps = rng.gen_range(0..=max_moves);
    let (moves, trajectory) = random_walk_with(&start, steps, &mut rng, &WalkConfig::default());
    Trial {
        start,
        moves,
        trajectory,
    }
}
