use std::path::Path;

use tkw::g2::{conjugate_equal, normalize};
use tkw::gauss::{parse_corpus, ChordType, Parity};
use tkw::gbar::{abelianize, AbelianImage, DEFAULT_BUDGET};
use tkw::{
    compare, letters_phi2, letters_phibar, phi2, phibar, GBarVerdict, GBarWord, LinearGaussDiagram,
    Word,
};

fn load(name: &str) -> LinearGaussDiagram {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut all = parse_corpus(&text).unwrap();
    assert_eq!(all.len(), 1, "{name}");
    all.pop().unwrap()
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn img(a: i64, b: i64, c: i64) -> AbelianImage {
    AbelianImage { a, b, c }
}

#[test]
fn l7a1() {
    let d = load("l7a1.gauss");
    let odd: Vec<_> = d
        .classify()
        .into_iter()
        .filter(|c| c.parity == Parity::Odd)
        .collect();
    assert_eq!(odd.len(), 2);
    assert!(odd.iter().all(|c| c.chord_type == Some(ChordType::Second)));
    assert_eq!(letters_phi2(&d), w("a a a c' b'^-1 a c'^-1 b'"));
    assert!(phi2(&d).is_identity());
    assert!(normalize(&"a e^-1 d e d^-1 a".parse().unwrap()).is_identity());
}

#[test]
fn l6a1_first_knot() {
    let d = load("l6a1_k1.gauss");
    assert_eq!(letters_phibar(&d), w("c b^-1 b^-1 c"));
    let x = phibar(&d);
    assert_eq!(abelianize(&x), img(0, -2, 2));
    assert_eq!(
        compare(&x, &GBarWord::default(), DEFAULT_BUDGET).name(),
        "distinct"
    );
}

#[test]
fn l6a1_second_knot() {
    let d = load("l6a1_k2.gauss");
    let x = phibar(&d);
    let expected: GBarWord = "b^-1 c b^-1 c c b^-1 c b^-1".parse().unwrap();
    assert_eq!(x, expected);
    assert_eq!(abelianize(&x), img(0, -4, 4));
    assert_eq!(
        compare(&x, &GBarWord::default(), DEFAULT_BUDGET).name(),
        "distinct"
    );
    assert_eq!(
        compare(&x, &phibar(&load("l6a1_k1.gauss")), DEFAULT_BUDGET).name(),
        "distinct"
    );
}

#[test]
fn l2a1_is_trivial() {
    let d = load("l2a1.gauss");
    assert!(d.is_empty());
    assert!(phi2(&d).is_identity());
    assert!(phibar(&d).is_empty());
}

#[test]
fn asymmetric_entry_and_its_reverse() {
    let d = load("asym5.gauss");
    let r = d.reverse();
    assert_eq!(r.to_code(), "O3+ U5- U4+ O2- U1- U2- U3+ O4+ O1- O5-");
    let (x, y) = (phi2(&d), phi2(&r));
    assert_eq!(x.to_string(), "d^0 e^0 | a | d^4 e^-8 | a | d^0 e^0");
    assert_eq!(y.to_string(), "d^0 e^0 | a | d^-4 e^8 | a | d^0 e^0");
    assert!(!conjugate_equal(&x, &y));
    assert_eq!(abelianize(&phibar(&d)), img(0, -2, 2));
    assert_eq!(abelianize(&phibar(&r)), img(0, -2, 2));
    let (u, v) = (phibar(&d), phibar(&r));
    match compare(&u, &v, DEFAULT_BUDGET) {
        GBarVerdict::Equal { path, .. } => assert!(path.verify(&u, &v)),
        GBarVerdict::Distinct { .. } => panic!("abelian images agree"),
        GBarVerdict::Unknown { budget_spent } => assert!(budget_spent <= DEFAULT_BUDGET),
    }
}
