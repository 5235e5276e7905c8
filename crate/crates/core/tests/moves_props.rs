mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tkw::gauss::{Parity, PositionParity};
use tkw::gbar::abelianize;
use tkw::moves::{plant_triangle, random_diagram, Direction, MoveKind};
use tkw::{
    apply_move, enumerate_moves, phi2, phibar, random_walk, LinearGaussDiagram, MoveApplication,
};

use common::diagram;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(500)
}

fn with_triangle(seed: u64) -> LinearGaussDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = random_diagram(&mut rng, 5);
    plant_triangle(&mut rng, &base)
}

fn r3_moves(d: &LinearGaussDiagram) -> Vec<MoveApplication> {
    enumerate_moves(d)
        .into_iter()
        .filter(|m| m.kind == MoveKind::R3a)
        .collect()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn inserts_are_undone_by_deletes(seed in any::<u64>()) {
        let d = diagram(seed, 6);
        let m = d.chord_count();
        for mv in enumerate_moves(&d).into_iter().filter(|m| m.direction == Direction::Insert) {
            let bigger = apply_move(&d, &mv).unwrap();
            let new_ids: Vec<usize> = (m + 1..=bigger.chord_count()).collect();
            let delete = MoveApplication {
                kind: mv.kind,
                direction: Direction::Delete,
                site: new_ids,
            };
            prop_assert!(enumerate_moves(&bigger).contains(&delete), "{} then {}", mv, delete);
            prop_assert_eq!(apply_move(&bigger, &delete).unwrap(), d.clone());
        }
    }

    #[test]
    fn chord_count_deltas(seed in any::<u64>()) {
        let d = with_triangle(seed);
        for mv in enumerate_moves(&d) {
            let next = apply_move(&d, &mv).unwrap();
            let delta = next.chord_count() as isize - d.chord_count() as isize;
            let expected = match (mv.kind, mv.direction) {
                (MoveKind::R1a | MoveKind::R1b, Direction::Insert) => 1,
                (MoveKind::R1a | MoveKind::R1b, Direction::Delete) => -1,
                (MoveKind::R2a, Direction::Insert) => 2,
                (MoveKind::R2a, Direction::Delete) => -2,
                _ => 0,
            };
            prop_assert_eq!(delta, expected, "{}", mv);
            prop_assert_eq!(mv.schema().chord_delta(mv.direction), expected);
        }
    }

    #[test]
    fn r3_flips_positions_and_types(seed in any::<u64>()) {
        let d = with_triangle(seed);
        let moves = r3_moves(&d);
        prop_assert!(!moves.is_empty());
        for mv in moves {
            let e = apply_move(&d, &mv).unwrap();
            let (before, after) = (d.classify(), e.classify());
            let odd_in_triple = mv.site.iter().filter(|&&c| before[c - 1].parity == Parity::Odd).count();
            prop_assert!(odd_in_triple == 0 || odd_in_triple == 2);
            for c in 1..=d.chord_count() {
                let (x, y) = (d.chords()[c - 1], e.chords()[c - 1]);
                prop_assert_eq!(x.sign, y.sign);
                prop_assert_eq!(before[c - 1].parity, after[c - 1].parity);
                if !mv.site.contains(&c) {
                    prop_assert_eq!(x, y);
                    prop_assert_eq!(before[c - 1], after[c - 1]);
                    continue;
                }
                for role in [tkw::gauss::Role::Over, tkw::gauss::Role::Under] {
                    let p = d.position_parity(x.pos(role)).unwrap();
                    let q = e.position_parity(y.pos(role)).unwrap();
                    prop_assert_ne!(p, q);
                }
                if let (Some(s), Some(t)) = (before[c - 1].chord_type, after[c - 1].chord_type) {
                    prop_assert_eq!(s.flip(), t);
                }
            }
            let back = MoveApplication {
                direction: if mv.direction == Direction::Forward { Direction::Backward } else { Direction::Forward },
                ..mv.clone()
            };
            prop_assert_eq!(apply_move(&e, &back).unwrap(), d.clone());
        }
    }

    #[test]
    fn every_move_keeps_phi2(seed in any::<u64>()) {
        let d = with_triangle(seed);
        let g = phi2(&d);
        for mv in enumerate_moves(&d) {
            prop_assert_eq!(phi2(&apply_move(&d, &mv).unwrap()), g.clone(), "{}", mv);
        }
    }

    #[test]
    fn every_move_keeps_abelian_phibar(seed in any::<u64>()) {
        let d = with_triangle(seed);
        let img = abelianize(&phibar(&d));
        for mv in enumerate_moves(&d) {
            prop_assert_eq!(abelianize(&phibar(&apply_move(&d, &mv).unwrap())), img, "{}", mv);
        }
    }
}

#[test]
fn r1_insert_adds_a_squared() {
    let d: LinearGaussDiagram = "O1- U2+ O2+ U1-".parse().unwrap();
    let before = tkw::letters_phi2(&d);
    for mv in enumerate_moves(&d)
        .into_iter()
        .filter(|m| m.kind != MoveKind::R2a && m.direction == Direction::Insert)
    {
        let after = tkw::letters_phi2(&apply_move(&d, &mv).unwrap());
        let at = mv.site[0];
        let mut expected = before.0.clone();
        expected.splice(at..at, after.0[at..at + 2].iter().copied());
        assert_eq!(after.0, expected, "{mv}");
        assert_eq!(after.0[at].symbol, tkw::word::Symbol::A);
        assert_eq!(after.0[at + 1].symbol, tkw::word::Symbol::A);
    }
}

#[test]
fn r2_insert_adds_cancelling_letters() {
    let d: LinearGaussDiagram = "U1- O2- O1- U2-".parse().unwrap();
    let w = phibar(&d);
    for mv in enumerate_moves(&d)
        .into_iter()
        .filter(|m| m.kind == MoveKind::R2a && m.direction == Direction::Insert)
    {
        let e = apply_move(&d, &mv).unwrap();
        let v = tkw::compare(&w, &phibar(&e), tkw::gbar::DEFAULT_BUDGET);
        assert!(v.is_equal(), "{mv}: {}", v.name());
    }
}

#[test]
fn walks_are_deterministic_and_keep_the_unknot_trivial() {
    let empty = LinearGaussDiagram::empty();
    assert_eq!(random_walk(&empty, 0, 3), vec![empty.clone()]);
    for seed in 0..50 {
        let walk = random_walk(&empty, 10, seed);
        assert_eq!(walk, random_walk(&empty, 10, seed));
        assert_eq!(walk.len(), 11);
        assert!(walk.iter().all(|d| phi2(d).is_identity()));
    }
}

#[test]
fn position_parity_of_new_kink() {
    let d = apply_move(
        &LinearGaussDiagram::empty(),
        &"R1a:insert@0".parse().unwrap(),
    )
    .unwrap();
    assert_eq!(d.position_parity(1).unwrap(), PositionParity::OddPosition);
    assert_eq!(d.to_code(), "O1+ U1+");
}
