use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use starflock::equiv::{self, Mode, StabElement, Verdict};
use starflock::flock::{self, Flock};
use starflock::{Elem, Field, Error};

fn random_star(k: &Field, rng: &mut StdRng) -> Flock {
    let mut g: Vec<Elem> = k.nonzero().collect();
    for i in (1..g.len()).rev() {
        g.swap(i, rng.gen_range(0..=i));
    }
    g.insert(0, Elem::ZERO);
    Flock::star_form(k, g).unwrap()
}

fn tiny_field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![3u64, 4, 5]).prop_map(|q| Field::of_order(q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn images_are_equivalent_with_a_witness(k in tiny_field(), seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = random_star(&k, &mut rng);
        let b = equiv::apply(&StabElement::random(&k, &mut rng), &a);
        prop_assert_eq!(equiv::are_equivalent(&a, &b, Mode::Exhaustive).unwrap(), Verdict::Equivalent);
        prop_assert_eq!(equiv::canonical_form(&a).unwrap().form, equiv::canonical_form(&b).unwrap().form);
        let w = equiv::find_equivalence(&a, &b).unwrap().expect("witness");
        prop_assert!(equiv::apply(&w, &a).same_planes(&b));
    }

    #[test]
    fn fingerprint_mode_never_contradicts_exhaustive(k in tiny_field(), seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (a, b) = (random_star(&k, &mut rng), random_star(&k, &mut rng));
        let exact = equiv::are_equivalent(&a, &b, Mode::Exhaustive).unwrap();
        let quick = equiv::are_equivalent(&a, &b, Mode::Fingerprint).unwrap();
        if quick == Verdict::Inequivalent {
            prop_assert_eq!(exact, Verdict::Inequivalent);
        }
        prop_assert_ne!(quick, Verdict::Equivalent);
    }

    #[test]
    fn normal_forms_are_equivalent_star_forms(k in tiny_field(), seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let base = random_star(&k, &mut rng);
        let moved = equiv::apply(&StabElement::random(&k, &mut rng), &base);
        let (n, g) = equiv::normalize_star_form(&moved).unwrap();
        prop_assert!(n.is_star_form());
        prop_assert_eq!(n.f().to_vec(), k.elements().collect::<Vec<_>>());
        prop_assert!(equiv::apply(&g, &moved).same_planes(&n));
    }
}

#[test]
fn linear_and_proper_star_flocks_are_inequivalent() {
    let k = Field::of_order(4).unwrap();
    let linear = Flock::star_form(&k, k.elements().collect()).unwrap();
    let squares = Flock::star_form(&k, k.elements().map(|t| k.mul(t, t)).collect()).unwrap();
    assert!(flock::is_linear(&linear).linear);
    assert_eq!(equiv::are_equivalent(&linear, &squares, Mode::Fingerprint).unwrap(), Verdict::Inequivalent);
}

#[test]
fn exhaustive_mode_is_bounded() {
    let k = Field::of_order(9).unwrap();
    let fl = Flock::star_form(&k, k.elements().collect()).unwrap();
    assert_eq!(equiv::canonical_form(&fl).unwrap_err(), Error::ExhaustiveTooLarge(9));
}

#[test]
fn stabilizer_rejects_singular_matrices() {
    let k = Field::of_order(5).unwrap();
    let m = vec![vec![Elem(1), Elem(2), Elem(0)], vec![Elem(2), Elem(4), Elem(0)], vec![Elem(0), Elem(0), Elem(1)]];
    assert!(StabElement::new(&k, m, Elem::ONE, 0).is_err());
}
