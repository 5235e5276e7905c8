#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tkw::g2::{AdeLetter, AdeWord};
use tkw::gauss::Sign;
use tkw::moves::random_diagram;
use tkw::LinearGaussDiagram;

pub fn diagram(seed: u64, max_chords: usize) -> LinearGaussDiagram {
    random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), max_chords)
}

/// Letters of Z/2 * Z^2 as small integers: 0 = a, 1 = d, 2 = d^-1,
/// 3 = e, 4 = e^-1.
pub type Oracle = Vec<u8>;

pub fn to_ade(w: &[u8]) -> AdeWord {
    AdeWord(
        w.iter()
            .map(|&x| match x {
                0 => AdeLetter::A,
                1 => AdeLetter::D(Sign::Plus),
                2 => AdeLetter::D(Sign::Minus),
                3 => AdeLetter::E(Sign::Plus),
                _ => AdeLetter::E(Sign::Minus),
            })
            .collect(),
    )
}

fn cancels(x: u8, y: u8) -> bool {
    matches!((x, y), (0, 0) | (1, 2) | (2, 1) | (3, 4) | (4, 3))
}

/// Every word reachable from `w` by deleting `a a`, `x x^-1`, or swapping
/// two adjacent lattice letters. Returns the least shortest such word.
pub fn oracle_key(w: &[u8]) -> Oracle {
    let mut seen: HashSet<Oracle> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    let mut best = w.to_vec();
    while let Some(x) = queue.pop_front() {
        if (x.len(), &x) < (best.len(), &best) {
            best = x.clone();
        }
        for i in 0..x.len().saturating_sub(1) {
            let (p, q) = (x[i], x[i + 1]);
            let mut next = Vec::new();
            if cancels(p, q) {
                next.push([&x[..i], &x[i + 2..]].concat());
            }
            if p != 0 && q != 0 && p != q {
                let mut y = x.clone();
                y.swap(i, i + 1);
                next.push(y);
            }
            for y in next {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    best
}

pub fn all_words(max_len: usize) -> Vec<Oracle> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Oracle| {
                (0..5u8).map(move |x| {
                    let mut y = w.clone();
                    y.push(x);
                    y
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> Oracle {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| rng.gen_range(0..5u8)).collect()
}
