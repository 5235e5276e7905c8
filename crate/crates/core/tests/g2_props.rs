mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tkw::g2::{conjugate_equal, normalize, AdeWord, Lattice};
use tkw::G2Element;

use common::{random_word, to_ade};

fn word(seed: u64, max_len: usize) -> AdeWord {
    to_ade(&random_word(&mut ChaCha8Rng::seed_from_u64(seed), max_len))
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(500)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn normalize_is_a_homomorphism(s in any::<u64>(), t in any::<u64>()) {
        let (u, v) = (word(s, 12), word(t, 12));
        prop_assert_eq!(normalize(&u.concat(&v)), normalize(&u).multiply(&normalize(&v)));
    }

    #[test]
    fn inverses(s in any::<u64>()) {
        let u = word(s, 12);
        let g = normalize(&u);
        prop_assert_eq!(normalize(&u.inverse()), g.inverse());
        prop_assert!(g.multiply(&g.inverse()).is_identity());
        prop_assert!(g.inverse().multiply(&g).is_identity());
    }

    #[test]
    fn multiplication_is_associative(s in any::<u64>(), t in any::<u64>(), r in any::<u64>()) {
        let (x, y, z) = (normalize(&word(s, 8)), normalize(&word(t, 8)), normalize(&word(r, 8)));
        prop_assert_eq!(x.multiply(&y).multiply(&z), x.multiply(&y.multiply(&z)));
        prop_assert_eq!(x.multiply(&G2Element::identity()), x.clone());
    }

    #[test]
    fn normal_form_is_idempotent(s in any::<u64>()) {
        let g = normalize(&word(s, 12));
        prop_assert_eq!(normalize(&g.to_ade()), g.clone());
        prop_assert_eq!(G2Element::from_json(&g.to_json()).unwrap(), g.clone());
    }

    #[test]
    fn conjugates_are_conjugate(s in any::<u64>(), t in any::<u64>()) {
        let x = normalize(&word(s, 12));
        let g = normalize(&word(t, 12));
        prop_assert!(conjugate_equal(&g.multiply(&x).multiply(&g.inverse()), &x));
        prop_assert!(conjugate_equal(&x, &x));
    }

    #[test]
    fn cyclic_shifts_are_conjugate(s in any::<u64>(), k in 0usize..13) {
        let u = word(s, 12);
        let k = k.min(u.0.len());
        let mut shifted = u.0.clone();
        shifted.rotate_left(k);
        prop_assert!(conjugate_equal(&normalize(&u), &normalize(&AdeWord(shifted))));
    }

    #[test]
    fn lattice_conjugacy_is_equality(p in -5i64..5, q in -5i64..5, r in -5i64..5, t in -5i64..5) {
        let x = G2Element::lattice(Lattice::new(p, q));
        let y = G2Element::lattice(Lattice::new(r, t));
        prop_assert_eq!(conjugate_equal(&x, &y), (p, q) == (r, t));
    }
}

#[test]
fn involution_is_not_conjugate_to_lattice_elements() {
    let a = G2Element::involution();
    assert!(!conjugate_equal(&a, &G2Element::identity()));
    assert!(!conjugate_equal(
        &a,
        &G2Element::lattice(Lattice::new(1, 0))
    ));
    // a d a d^-1 is a product of two involutions, not conjugate to a.
    let x = normalize(&"a d a d^-1".parse().unwrap());
    assert!(!conjugate_equal(&x, &a));
}
