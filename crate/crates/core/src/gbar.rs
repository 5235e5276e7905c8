//! Words in the group
//!
//! ```text
//! Gbar = < a, b, c | a^2 b = b a^2, a^2 c = c a^2, b^2 a = a b^2,
//!                    c^2 a = a c^2, abc = cba, cab = bac >
//! ```
//!
//! with `b' = a b a^-1` and `c' = a c a^-1` eliminated on ingestion.
//!
//! No decision procedure for the word problem is known to us, so
//! [`compare`] is a semi-decision: abelian images separate words, and a
//! budgeted bidirectional breadth-first search over relator applications
//! proves equality. Everything else is reported as unknown.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::gauss::{LinearGaussDiagram, Sign};
use crate::word::{letters_phibar, LetterParseError, Symbol, Word};

/// Node budget used when the caller has no opinion.
pub const DEFAULT_BUDGET: usize = 200_000;

/// How much longer than its endpoints an intermediate search word may grow.
pub const LENGTH_SLACK: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GLetter {
    pub gen: Gen,
    pub exponent: Sign,
}

impl GLetter {
    pub const fn new(gen: Gen, exponent: Sign) -> Self {
        GLetter { gen, exponent }
    }

    fn code(self) -> u8 {
        let g = match self.gen {
            Gen::A => 0,
            Gen::B => 2,
            Gen::C => 4,
        };
        g | (self.exponent == Sign::Minus) as u8
    }

    fn from_code(code: u8) -> Self {
        let gen = match code >> 1 {
            0 => Gen::A,
            1 => Gen::B,
            _ => Gen::C,
        };
        let exponent = if code & 1 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        };
        GLetter { gen, exponent }
    }
}

impl fmt::Display for GLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.gen {
            Gen::A => "a",
            Gen::B => "b",
            Gen::C => "c",
        };
        f.write_str(name)?;
        if self.exponent == Sign::Minus {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

type Code = Vec<u8>;

fn free_reduce(word: &[u8]) -> Code {
    let mut out: Code = Vec::with_capacity(word.len());
    for &x in word {
        if out.last() == Some(&(x ^ 1)) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn inverse_code(word: &[u8]) -> Code {
    word.iter().rev().map(|x| x ^ 1).collect()
}

/// A freely reduced word over `{a, b, c}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GBarWord(Code);

impl GBarWord {
    /// Freely reduces the given letters.
    pub fn from_letters(letters: &[GLetter]) -> Self {
        let codes: Code = letters.iter().map(|l| l.code()).collect();
        GBarWord(free_reduce(&codes))
    }

    pub fn letters(&self) -> Vec<GLetter> {
        self.0.iter().map(|&c| GLetter::from_code(c)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> GBarWord {
        GBarWord(inverse_code(&self.0))
    }

    pub fn concat(&self, other: &GBarWord) -> GBarWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GBarWord(free_reduce(&v))
    }

    /// Applies one relator piece substitution at `position` and freely
    /// reduces. `rule` indexes the symmetrized rule list (see
    /// [`rewrite_rule_count`]).
    pub fn rewrite(&self, position: usize, rule: usize) -> Option<GBarWord> {
        let r = rules().all.get(rule)?;
        apply_rule(&self.0, position, r).map(|w| GBarWord(free_reduce(&w)))
    }
}

fn write_codes(f: &mut fmt::Formatter<'_>, codes: &[u8]) -> fmt::Result {
    if codes.is_empty() {
        return f.write_str("1");
    }
    for (i, &c) in codes.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{}", GLetter::from_code(c))?;
    }
    Ok(())
}

impl fmt::Display for GBarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_codes(f, &self.0)
    }
}

impl FromStr for GBarWord {
    type Err = LetterParseError;

    /// Parses a word over `{a, b, b', c, c'}` and ingests it.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(ingest(&s.parse::<Word>()?))
    }
}

/// Eliminates `b'` and `c'` and freely reduces.
pub fn ingest(word: &Word) -> GBarWord {
    const A: u8 = 0;
    const A_INV: u8 = 1;
    let mut out = Vec::with_capacity(word.len() * 3);
    for l in word.letters() {
        let inv = (l.exponent == Sign::Minus) as u8;
        match l.symbol {
            Symbol::A => out.push(inv),
            Symbol::B => out.push(2 | inv),
            Symbol::C => out.push(4 | inv),
            Symbol::Bp => out.extend_from_slice(&[A, 2 | inv, A_INV]),
            Symbol::Cp => out.extend_from_slice(&[A, 4 | inv, A_INV]),
        }
    }
    GBarWord(free_reduce(&out))
}

/// Exponent sums of `a`, `b` and `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AbelianImage {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl AbelianImage {
    fn of_codes(codes: &[u8]) -> Self {
        let mut img = AbelianImage::default();
        for &x in codes {
            let s = if x & 1 == 1 { -1 } else { 1 };
            match x >> 1 {
                0 => img.a += s,
                1 => img.b += s,
                _ => img.c += s,
            }
        }
        img
    }

    pub fn to_json(&self) -> Value {
        json!([self.a, self.b, self.c])
    }
}

impl fmt::Display for AbelianImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

pub fn abelianize(word: &GBarWord) -> AbelianImage {
    AbelianImage::of_codes(&word.0)
}

/// Abelian image of a five-letter word; `b'` counts as `b` and `c'` as `c`.
pub fn abelianize_word(word: &Word) -> AbelianImage {
    abelianize(&ingest(word))
}

/// The sign-scheme invariant, as a reduced word.
pub fn phibar(diagram: &LinearGaussDiagram) -> GBarWord {
    ingest(&letters_phibar(diagram))
}

/// Defining relators, each equal to the identity.
pub const RELATORS: [&str; 6] = [
    "a a b a^-1 a^-1 b^-1",
    "a a c a^-1 a^-1 c^-1",
    "b b a b^-1 b^-1 a^-1",
    "c c a c^-1 c^-1 a^-1",
    "a b c a^-1 b^-1 c^-1",
    "c a b c^-1 a^-1 b^-1",
];

#[derive(Debug, Clone, PartialEq, Eq)]
struct Rule {
    lhs: Code,
    rhs: Code,
}

struct RuleSet {
    all: Vec<Rule>,
    by_first: [Vec<usize>; 6],
}

/// The symmetrized relators as rewrite rules: for every cyclic permutation
/// `u v` of a relator or its inverse, `u -> v^-1`.
fn rules() -> &'static RuleSet {
    static RULES: OnceLock<RuleSet> = OnceLock::new();
    RULES.get_or_init(|| {
        let mut all: Vec<Rule> = Vec::new();
        for text in RELATORS {
            let rel: Code = text.parse::<GBarWord>().expect("relator").0;
            for r in [rel.clone(), inverse_code(&rel)] {
                let n = r.len();
                for shift in 0..n {
                    let mut cyc = r.clone();
                    cyc.rotate_left(shift);
                    for split in 1..=n {
                        let rule = Rule {
                            lhs: cyc[..split].to_vec(),
                            rhs: inverse_code(&cyc[split..]),
                        };
                        if !all.contains(&rule) {
                            all.push(rule);
                        }
                    }
                }
            }
        }
        let mut by_first: [Vec<usize>; 6] = Default::default();
        for (i, r) in all.iter().enumerate() {
            by_first[r.lhs[0] as usize].push(i);
        }
        RuleSet { all, by_first }
    })
}

/// Number of symmetrized rewrite rules.
pub fn rewrite_rule_count() -> usize {
    rules().all.len()
}

fn apply_rule(word: &[u8], position: usize, rule: &Rule) -> Option<Code> {
    let end = position + rule.lhs.len();
    if end > word.len() || word[position..end] != rule.lhs[..] {
        return None;
    }
    let mut out = Vec::with_capacity(word.len() + rule.rhs.len());
    out.extend_from_slice(&word[..position]);
    out.extend_from_slice(&rule.rhs);
    out.extend_from_slice(&word[end..]);
    Some(out)
}

fn neighbours(word: &[u8], cap: usize, mut visit: impl FnMut(Code) -> bool) {
    let rs = rules();
    for i in 0..word.len() {
        for &ri in &rs.by_first[word[i] as usize] {
            if let Some(next) = apply_rule(word, i, &rs.all[ri]) {
                let next = free_reduce(&next);
                if next.len() <= cap && visit(next) {
                    return;
                }
            }
        }
    }
}

/// Consecutive words of a proof of equality. Each step either applies one
/// symmetrized relator piece (in either direction) up to free reduction or
/// leaves the freely reduced word unchanged; intermediate words need not be
/// freely reduced.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RewritePath {
    words: Vec<Code>,
}

impl RewritePath {
    pub fn len(&self) -> usize {
        self.words.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn words(&self) -> Vec<Vec<GLetter>> {
        self.words
            .iter()
            .map(|w| w.iter().map(|&c| GLetter::from_code(c)).collect())
            .collect()
    }

    pub fn rendered(&self) -> Vec<String> {
        self.words
            .iter()
            .map(|w| {
                struct R<'a>(&'a [u8]);
                impl fmt::Display for R<'_> {
                    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                        write_codes(f, self.0)
                    }
                }
                R(w).to_string()
            })
            .collect()
    }

    /// Replays the path and checks that it connects `from` to `to`.
    pub fn verify(&self, from: &GBarWord, to: &GBarWord) -> bool {
        let (Some(first), Some(last)) = (self.words.first(), self.words.last()) else {
            return false;
        };
        if free_reduce(first) != from.0 || free_reduce(last) != to.0 {
            return false;
        }
        self.words.windows(2).all(|w| {
            free_reduce(&w[0]) == free_reduce(&w[1])
                || one_step(&w[0], &w[1])
                || one_step(&w[1], &w[0])
        })
    }
}

fn one_step(x: &[u8], y: &[u8]) -> bool {
    let target = free_reduce(y);
    let rs = rules();
    (0..x.len()).any(|i| {
        rs.all
            .iter()
            .any(|r| apply_rule(x, i, r).is_some_and(|next| free_reduce(&next) == target))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GBarVerdict {
    Equal {
        path: RewritePath,
        budget_spent: usize,
    },
    Distinct {
        left: AbelianImage,
        right: AbelianImage,
    },
    Unknown {
        budget_spent: usize,
    },
}

impl GBarVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            GBarVerdict::Equal { .. } => "equal",
            GBarVerdict::Distinct { .. } => "distinct",
            GBarVerdict::Unknown { .. } => "unknown",
        }
    }

    pub fn is_equal(&self) -> bool {
        matches!(self, GBarVerdict::Equal { .. })
    }

    pub fn budget_spent(&self) -> usize {
        match self {
            GBarVerdict::Equal { budget_spent, .. } | GBarVerdict::Unknown { budget_spent } => {
                *budget_spent
            }
            GBarVerdict::Distinct { .. } => 0,
        }
    }

    pub fn to_json(&self) -> Value {
        let witness = match self {
            GBarVerdict::Equal { path, .. } => json!({ "path": path.rendered() }),
            GBarVerdict::Distinct { left, right } => {
                json!({ "left": left.to_json(), "right": right.to_json() })
            }
            GBarVerdict::Unknown { .. } => Value::Null,
        };
        json!({
            "verdict": self.name(),
            "witness": witness,
            "budget_spent": self.budget_spent(),
        })
    }
}

struct Search {
    budget: usize,
    spent: usize,
}

impl Search {
    fn remaining(&self) -> usize {
        self.budget.saturating_sub(self.spent)
    }

    /// Bidirectional breadth-first search between two freely reduced words.
    fn connect(&mut self, u: &[u8], v: &[u8]) -> Option<Vec<Code>> {
        if u == v {
            return Some(vec![u.to_vec()]);
        }
        if self.remaining() < 2 {
            return None;
        }
        let cap = u.len().max(v.len()) + LENGTH_SLACK;
        let mut seen: [HashMap<Code, Option<Code>>; 2] = [HashMap::new(), HashMap::new()];
        seen[0].insert(u.to_vec(), None);
        seen[1].insert(v.to_vec(), None);
        let mut frontier: [Vec<Code>; 2] = [vec![u.to_vec()], vec![v.to_vec()]];
        self.spent += 2;

        while !frontier[0].is_empty() && !frontier[1].is_empty() {
            let side = if frontier[0].len() <= frontier[1].len() {
                0
            } else {
                1
            };
            let other = 1 - side;
            let mut next_frontier = Vec::new();
            let mut meet = None;
            for word in std::mem::take(&mut frontier[side]) {
                neighbours(&word, cap, |n| {
                    if seen[side].contains_key(&n) {
                        return false;
                    }
                    if self.spent >= self.budget {
                        return true;
                    }
                    self.spent += 1;
                    seen[side].insert(n.clone(), Some(word.clone()));
                    if seen[other].contains_key(&n) {
                        meet = Some(n);
                        return true;
                    }
                    next_frontier.push(n);
                    false
                });
                if meet.is_some() || self.spent >= self.budget {
                    break;
                }
            }
            if let Some(m) = meet {
                let trace = |map: &HashMap<Code, Option<Code>>| {
                    let mut out = vec![m.clone()];
                    let mut cur = &m;
                    while let Some(Some(p)) = map.get(cur) {
                        out.push(p.clone());
                        cur = p;
                    }
                    out
                };
                let mut from_u = trace(&seen[0]);
                from_u.reverse();
                let to_v = trace(&seen[1]);
                from_u.extend(to_v.into_iter().skip(1));
                return Some(from_u);
            }
            if self.spent >= self.budget {
                return None;
            }
            frontier[side] = next_frontier;
        }
        None
    }
}

/// Splits a freely reduced word as `s t s^-1` with `t` cyclically reduced.
fn cyclic_core(word: &[u8]) -> (Code, Code) {
    let mut k = 0;
    while 2 * k + 1 < word.len() && word[k] == word[word.len() - 1 - k] ^ 1 {
        k += 1;
    }
    (word[..k].to_vec(), word[k..word.len() - k].to_vec())
}

fn least_rotation(word: &[u8]) -> usize {
    (0..word.len().max(1))
        .min_by(|&i, &j| {
            let a = word[i..].iter().chain(&word[..i]);
            let b = word[j..].iter().chain(&word[..j]);
            a.cmp(b)
        })
        .unwrap_or(0)
}

/// How a cyclic state was reached: rotate the parent left by `rotate`, apply
/// `rule` at the front, then conjugate by `post`.
struct Edge {
    parent: Code,
    rotate: usize,
    rule: usize,
    post: Code,
}

impl Search {
    /// Best-first search for a proof that `w = 1`, working on cyclic words
    /// (triviality is invariant under conjugation) and preferring short ones.
    /// The proof is returned as words each followed by `tail`.
    fn trivialize(&mut self, w: &[u8], tail: &[u8]) -> Option<Vec<Code>> {
        let rs = rules();
        let normalize = |x: &[u8]| {
            let (s, t) = cyclic_core(&free_reduce(x));
            let j = least_rotation(&t);
            let mut post = s;
            post.extend_from_slice(&t[..j]);
            let mut key = t[j..].to_vec();
            key.extend_from_slice(&t[..j]);
            (post, key)
        };
        if self.remaining() == 0 {
            return None;
        }
        let (pre, start) = normalize(w);
        let mut edges: HashMap<Code, Option<Edge>> = HashMap::new();
        edges.insert(start.clone(), None);
        let mut queue = BinaryHeap::new();
        let mut seq = 0usize;
        queue.push(Reverse((start.len(), seq, start.clone())));
        self.spent += 1;
        let cap = start.len() + LENGTH_SLACK;
        let mut found = start.is_empty();
        'search: while let Some(Reverse((_, _, x))) = queue.pop() {
            if found {
                break;
            }
            for k in 0..x.len() {
                let mut rot = x[k..].to_vec();
                rot.extend_from_slice(&x[..k]);
                for &ri in &rs.by_first[rot[0] as usize] {
                    let rule = &rs.all[ri];
                    if rule.lhs.len() > rot.len() {
                        continue;
                    }
                    let Some(next) = apply_rule(&rot, 0, rule) else {
                        continue;
                    };
                    let (post, key) = normalize(&next);
                    if key.len() > cap || edges.contains_key(&key) {
                        continue;
                    }
                    if self.spent >= self.budget {
                        return None;
                    }
                    self.spent += 1;
                    edges.insert(
                        key.clone(),
                        Some(Edge {
                            parent: x.clone(),
                            rotate: k,
                            rule: ri,
                            post,
                        }),
                    );
                    if key.is_empty() {
                        found = true;
                        break 'search;
                    }
                    seq += 1;
                    queue.push(Reverse((key.len(), seq, key)));
                }
            }
        }
        if !found {
            return None;
        }

        let mut chain = Vec::new();
        let mut cur: Code = Vec::new();
        while let Some(Some(e)) = edges.get(&cur) {
            chain.push(e);
            cur = e.parent.clone();
        }
        chain.reverse();

        // The claim `h x h^-1 = 1` is carried along with the conjugator `h`.
        let wrap = |h: &[u8], x: &[u8]| {
            let mut out = h.to_vec();
            out.extend_from_slice(x);
            out.extend_from_slice(&inverse_code(h));
            out.extend_from_slice(tail);
            out
        };
        let mut h = pre;
        let mut words = vec![wrap(&h, &start)];
        let mut x = start;
        for e in chain {
            h.extend_from_slice(&x[..e.rotate]);
            let mut rot = x[e.rotate..].to_vec();
            rot.extend_from_slice(&x[..e.rotate]);
            words.push(wrap(&h, &rot));
            let next = apply_rule(&rot, 0, &rs.all[e.rule]).expect("recorded rule applies");
            words.push(wrap(&h, &next));
            h.extend_from_slice(&e.post);
            x = normalize(&next).1;
        }
        Some(words)
    }
}

/// Differing stretches of two words after a longest-common-subsequence
/// alignment, as `(u_start, u_end, v_start, v_end)`.
fn diff_hunks(u: &[u8], v: &[u8]) -> Vec<(usize, usize, usize, usize)> {
    let (n, m) = (u.len(), v.len());
    let mut lcs = vec![vec![0u32; m + 1]; n + 1];
    for i in (0..n).rev() {
        for j in (0..m).rev() {
            lcs[i][j] = if u[i] == v[j] {
                lcs[i + 1][j + 1] + 1
            } else {
                lcs[i + 1][j].max(lcs[i][j + 1])
            };
        }
    }
    let mut hunks = Vec::new();
    let (mut i, mut j) = (0, 0);
    let mut open: Option<(usize, usize)> = None;
    while i < n || j < m {
        if i < n && j < m && u[i] == v[j] && lcs[i][j] == lcs[i + 1][j + 1] + 1 {
            if let Some((si, sj)) = open.take() {
                hunks.push((si, i, sj, j));
            }
            i += 1;
            j += 1;
        } else {
            open.get_or_insert((i, j));
            if j < m && (i == n || lcs[i][j + 1] >= lcs[i + 1][j]) {
                j += 1;
            } else {
                i += 1;
            }
        }
    }
    if let Some((si, sj)) = open {
        hunks.push((si, n, sj, m));
    }
    hunks
}

/// Groups consecutive hunks until each group has matching abelian images
/// on both sides, which any window that could be proved equal must have.
fn balanced_windows(u: &[u8], v: &[u8]) -> Vec<(usize, usize, usize, usize)> {
    let mut windows = Vec::new();
    let mut current: Option<(usize, usize, usize, usize)> = None;
    for (us, ue, vs, ve) in diff_hunks(u, v) {
        let w = match current {
            Some((s0, _, t0, _)) => (s0, ue, t0, ve),
            None => (us, ue, vs, ve),
        };
        if AbelianImage::of_codes(&u[w.0..w.1]) == AbelianImage::of_codes(&v[w.2..w.3]) {
            windows.push(w);
            current = None;
        } else {
            current = Some(w);
        }
    }
    if let Some(w) = current {
        windows.push(w);
    }
    windows
}

/// Repeatedly applies the leftmost length-decreasing rule until none
/// applies. Returns every intermediate word, starting with `word`.
fn shorten(word: &[u8]) -> Vec<Code> {
    let rs = rules();
    let mut trail = vec![word.to_vec()];
    'outer: loop {
        let cur = trail.last().unwrap();
        for i in 0..cur.len() {
            for &ri in &rs.by_first[cur[i] as usize] {
                let rule = &rs.all[ri];
                if rule.rhs.len() >= rule.lhs.len() {
                    continue;
                }
                if let Some(next) = apply_rule(cur, i, rule) {
                    trail.push(free_reduce(&next));
                    continue 'outer;
                }
            }
        }
        return trail;
    }
}

impl Search {
    /// Proves `u = v`, first window by window, then on the whole stretch
    /// between the common prefix and suffix.
    fn prove(&mut self, u: &[u8], v: &[u8]) -> Option<Vec<Code>> {
        if u == v {
            return Some(vec![u.to_vec()]);
        }
        let prefix = u.iter().zip(v).take_while(|(x, y)| x == y).count();
        let suffix = u[prefix..]
            .iter()
            .rev()
            .zip(v[prefix..].iter().rev())
            .take_while(|(x, y)| x == y)
            .count();
        let core_u = &u[prefix..u.len() - suffix];
        let core_v = &v[prefix..v.len() - suffix];

        let windows = balanced_windows(core_u, core_v);
        if windows.len() > 1 {
            let mut current = u.to_vec();
            let mut words = vec![current.clone()];
            let mut shift = prefix as isize;
            let mut ok = true;
            for &(us, ue, vs, ve) in &windows {
                let mut local = Search {
                    budget: self.remaining() / 2,
                    spent: 0,
                };
                let found = local.connect(&core_u[us..ue], &core_v[vs..ve]);
                self.spent += local.spent;
                let Some(steps) = found else {
                    ok = false;
                    break;
                };
                let start = (us as isize + shift) as usize;
                let mut old_len = ue - us;
                for step in steps.into_iter().skip(1) {
                    let mut next = current[..start].to_vec();
                    next.extend_from_slice(&step);
                    next.extend_from_slice(&current[start + old_len..]);
                    old_len = step.len();
                    current = next;
                    words.push(current.clone());
                }
                shift += (ve - vs) as isize - (ue - us) as isize;
            }
            if ok {
                debug_assert_eq!(current, v);
                return Some(words);
            }
        }

        let steps = self.connect(core_u, core_v)?;
        Some(
            steps
                .into_iter()
                .map(|s| {
                    let mut w = u[..prefix].to_vec();
                    w.extend_from_slice(&s);
                    w.extend_from_slice(&u[u.len() - suffix..]);
                    w
                })
                .collect(),
        )
    }
}

/// Compares two words with a search budget counted in visited words.
///
/// Returns `Distinct` only when the abelian images differ and `Equal` only
/// together with a replayable [`RewritePath`]. Equality is searched for on
/// the words as given, then after both have been shortened by
/// length-decreasing relator applications, and finally by reducing
/// `w1 w2^-1` to the identity as a cyclic word.
pub fn compare(w1: &GBarWord, w2: &GBarWord, budget: usize) -> GBarVerdict {
    let (left, right) = (abelianize(w1), abelianize(w2));
    if left != right {
        return GBarVerdict::Distinct { left, right };
    }
    let mut search = Search { budget, spent: 0 };
    let equal = |words: Vec<Code>, spent: usize| GBarVerdict::Equal {
        path: RewritePath { words },
        budget_spent: spent,
    };
    if w1 == w2 {
        return equal(vec![w1.0.clone()], 0);
    }

    // Each stage may spend up to a third of the budget plus whatever the
    // earlier stages left over.
    search.budget = budget / 3;
    if let Some(words) = search.prove(&w1.0, &w2.0) {
        return equal(words, search.spent);
    }

    search.budget = budget - budget / 3;
    let down1 = shorten(&w1.0);
    let down2 = shorten(&w2.0);
    if let Some(mut words) = search.prove(down1.last().unwrap(), down2.last().unwrap()) {
        let mut path = down1;
        path.pop();
        path.append(&mut words);
        path.extend(down2.into_iter().rev().skip(1));
        return equal(path, search.spent);
    }

    search.budget = budget;
    let w = free_reduce(&[w1.0.clone(), inverse_code(&w2.0)].concat());
    if let Some(mut words) = search.trivialize(&w, &w2.0) {
        words.insert(0, w1.0.clone());
        words.push(w2.0.clone());
        return equal(words, search.spent);
    }
    GBarVerdict::Unknown {
        budget_spent: search.spent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::parse_gauss_code;

    fn g(s: &str) -> GBarWord {
        s.parse().unwrap()
    }

    #[test]
    fn ingest_examples() {
        assert_eq!(g("b'").to_string(), "a b a^-1");
        assert!(g("a a^-1").is_empty());
        assert_eq!(g("c'^-1").to_string(), "a c^-1 a^-1");
        assert_eq!(g("b' b'^-1"), GBarWord::default());
    }

    #[test]
    fn ingest_is_idempotent() {
        let w = g("b' c a^-1 c'^-1 b");
        let again: GBarWord = w.to_string().parse().unwrap();
        assert_eq!(again, w);
    }

    #[test]
    fn abelianize_examples() {
        assert_eq!(
            abelianize(&g("c b^-1 b^-1 c")),
            AbelianImage { a: 0, b: -2, c: 2 }
        );
        assert_eq!(
            abelianize(&g("b^-1 c b^-1 c c b^-1 c b^-1")),
            AbelianImage { a: 0, b: -4, c: 4 }
        );
        assert_eq!(abelianize(&GBarWord::default()), AbelianImage::default());
        assert_eq!(
            abelianize(&g("b' c'^-1")),
            AbelianImage { a: 0, b: 1, c: -1 }
        );
    }

    #[test]
    fn relators_are_balanced() {
        for r in RELATORS {
            assert_eq!(abelianize(&g(r)), AbelianImage::default(), "{r}");
        }
        let rs = rules();
        for r in &rs.all {
            assert_eq!(
                AbelianImage::of_codes(&r.lhs),
                AbelianImage::of_codes(&r.rhs)
            );
        }
    }

    #[test]
    fn rule_set_is_closed_under_reversal() {
        let rs = rules();
        for r in &rs.all {
            let back = Rule {
                lhs: r.rhs.clone(),
                rhs: r.lhs.clone(),
            };
            if !back.lhs.is_empty() {
                assert!(rs.all.contains(&back));
            }
        }
    }

    #[test]
    fn compare_examples() {
        let w = g("a b c^-1 a");
        assert!(compare(&w, &w, 0).is_equal());
        assert!(compare(&g("b'"), &g("a b a^-1"), 10).is_equal());
        assert!(matches!(
            compare(&g("c b^-1 b^-1 c"), &GBarWord::default(), DEFAULT_BUDGET),
            GBarVerdict::Distinct { .. }
        ));
    }

    #[test]
    fn compare_proves_defining_relations() {
        let pairs = [
            ("a a b", "b a a"),
            ("b b a", "a b b"),
            ("a b c", "c b a"),
            ("c a b", "b a c"),
            ("a b a^-1", "a^-1 b a"),
            ("b b", "b' b'"),
            ("c^-1 b", "b' c'^-1"),
            ("c'^-1 b'", "b c^-1"),
        ];
        for (x, y) in pairs {
            let (x, y) = (g(x), g(y));
            match compare(&x, &y, DEFAULT_BUDGET) {
                GBarVerdict::Equal { path, .. } => assert!(path.verify(&x, &y), "{x} {y}"),
                other => panic!("{x} vs {y}: {other:?}"),
            }
        }
    }

    #[test]
    fn unknown_when_budget_exhausted() {
        let x = g("a b c");
        let y = g("c b a");
        assert_eq!(compare(&x, &y, 0), GBarVerdict::Unknown { budget_spent: 0 });
        // same abelian image, not provably equal with a tiny budget
        let v = compare(&g("b c"), &g("c b"), 50);
        assert!(matches!(v, GBarVerdict::Unknown { .. }), "{v:?}");
    }

    #[test]
    fn verify_rejects_bogus_paths() {
        let x = g("b c");
        let y = g("c b");
        let path = RewritePath {
            words: vec![x.0.clone(), y.0.clone()],
        };
        assert!(!path.verify(&x, &y));
        assert!(!RewritePath::default().verify(&x, &x));
    }

    #[test]
    fn windows_are_lifted_into_context() {
        let x = g("c c b a a c^-1 c^-1 b b a b c a c");
        let y = g("c c a a b c^-1 c^-1 b b c b a a c");
        match compare(&x, &y, DEFAULT_BUDGET) {
            GBarVerdict::Equal { path, .. } => assert!(path.verify(&x, &y)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn phibar_examples() {
        assert!(phibar(&LinearGaussDiagram::empty()).is_empty());
        assert!(phibar(&parse_gauss_code("O1+ U1+").unwrap()).is_empty());
        let k1 = parse_gauss_code("U1- O2- O1- U2-").unwrap();
        assert_eq!(abelianize(&phibar(&k1)), AbelianImage { a: 0, b: -2, c: 2 });
    }

    #[test]
    fn verdict_json() {
        let v = compare(&g("b c"), &GBarWord::default(), 10).to_json();
        assert_eq!(v["verdict"], "distinct");
        assert_eq!(v["witness"]["left"], json!([0, 1, 1]));
        let v = compare(&g("a a b"), &g("b a a"), 1000).to_json();
        assert_eq!(v["verdict"], "equal");
        assert_eq!(v["witness"]["path"][0], "a a b");
    }

    #[test]
    fn trivial_only_as_a_cyclic_word() {
        let w = g("b^-1 c a b c^-1 a b c^-1 a^-1 a^-1 c b^-1");
        let one = GBarWord::default();
        let verdict = compare(&w, &one, DEFAULT_BUDGET);
        let GBarVerdict::Equal { path, .. } = &verdict else {
            panic!("expected a proof, got {}", verdict.name());
        };
        assert!(path.verify(&w, &one));
        let GBarVerdict::Equal { path, .. } = compare(&one, &w, DEFAULT_BUDGET) else {
            panic!("expected a proof");
        };
        assert!(path.verify(&one, &w));
    }

    #[test]
    fn cyclic_core_and_rotation() {
        let w = g("a b c b^-1 a^-1").0;
        let (s, t) = cyclic_core(&w);
        assert_eq!(s, g("a b").0);
        assert_eq!(t, g("c").0);
        assert_eq!(least_rotation(&[4, 2, 0, 2]), 2);
        assert_eq!(least_rotation(&[]), 0);
    }
}
