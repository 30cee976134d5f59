use proptest::prelude::*;
use starflock::{Elem, Field};

const ORDERS: &[u64] = &[2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 81, 121, 125, 243, 256];

/// Schoolbook product of digit vectors reduced by the monic modulus.
fn naive_mul(k: &Field, a: Elem, b: Elem) -> Elem {
    let (p, n) = (k.p() as u64, k.n() as usize);
    let (x, y) = (k.coefficients(a), k.coefficients(b));
    let mut prod = vec![0u64; 2 * n];
    for i in 0..n {
        for j in 0..n {
            prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
        }
    }
    let m = k.modulus();
    for d in (n..2 * n).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        // x^n = -(c_0 + .. + c_{n-1} x^{n-1})
        for (i, &mi) in m.iter().enumerate() {
            prod[d - n + i] = (prod[d - n + i] + (p - c) * mi as u64) % p;
        }
    }
    Elem(prod[..n].iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32)
}

fn naive_add(k: &Field, a: Elem, b: Elem) -> Elem {
    let p = k.p();
    let s: Vec<u32> = k.coefficients(a).iter().zip(k.coefficients(b)).map(|(x, y)| (x + y) % p).collect();
    Elem(s.iter().rev().fold(0u32, |acc, &c| acc * p + c))
}

fn field_and_elems() -> impl Strategy<Value = (Field, Elem, Elem, Elem)> {
    prop::sample::select(ORDERS).prop_flat_map(|q| {
        let k = Field::of_order(q).unwrap();
        let e = 0..q as u32;
        (Just(k), e.clone(), e.clone(), e).prop_map(|(k, a, b, c)| (k, Elem(a), Elem(b), Elem(c)))
    })
}

proptest! {
    #[test]
    fn arithmetic_matches_polynomial_oracle((k, a, b, _c) in field_and_elems()) {
        prop_assert_eq!(k.mul(a, b), naive_mul(&k, a, b));
        prop_assert_eq!(k.add(a, b), naive_add(&k, a, b));
    }

    #[test]
    fn ring_axioms((k, a, b, c) in field_and_elems()) {
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.add(k.sub(a, b), b), a);
        if !b.is_zero() {
            prop_assert_eq!(k.mul(k.div(a, b), b), a);
        }
    }

    #[test]
    fn frobenius_is_a_field_automorphism((k, a, b, _c) in field_and_elems(), j in 0u32..8) {
        let j = j % k.n();
        prop_assert_eq!(k.frobenius(k.add(a, b), j), k.add(k.frobenius(a, j), k.frobenius(b, j)));
        prop_assert_eq!(k.frobenius(k.mul(a, b), j), k.mul(k.frobenius(a, j), k.frobenius(b, j)));
        prop_assert_eq!(k.frobenius(a, j), k.pow(a, (k.p() as u64).pow(j)));
    }

    #[test]
    fn log_and_exp_invert((k, a, _b, _c) in field_and_elems()) {
        if let Some(l) = k.log(a) {
            prop_assert_eq!(k.exp(l as u64), a);
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn relative_trace_lands_in_the_subfield((k, a, b, _c) in field_and_elems()) {
        for e in (1..=k.n()).filter(|e| k.n() % e == 0) {
            let s = (k.p() as u64).pow(e);
            let t = k.trace(a, e).unwrap();
            prop_assert_eq!(k.pow(t, s), t);
            prop_assert_eq!(k.trace(k.add(a, b), e).unwrap(), k.add(t, k.trace(b, e).unwrap()));
        }
    }
}

#[test]
fn squares_are_half_the_units_in_odd_characteristic() {
    for q in [3u64, 5, 9, 25, 27, 49] {
        let k = Field::of_order(q).unwrap();
        assert_eq!(k.nonzero().filter(|&a| k.is_square(a)).count() as u64, (q - 1) / 2);
    }
}

#[test]
fn primitive_element_has_full_order() {
    for &q in ORDERS {
        let k = Field::of_order(q).unwrap();
        let lam = k.primitive();
        let mut seen: Vec<Elem> = (0..q - 1).map(|i| k.pow(lam, i)).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len() as u64, q - 1);
    }
}

#[test]
fn explicit_modulus_is_honoured() {
    // x^2 + 2x + 2 over GF(3)
    let k = Field::new(3, 2, Some(&[2, 2])).unwrap();
    let x = Elem(3);
    assert_eq!(k.mul(x, x), k.neg(k.add(k.mul(Elem(2), x), Elem(2))));
    assert!(Field::new(3, 2, Some(&[1, 0])).is_ok());
    assert!(Field::new(3, 2, Some(&[0, 0])).is_err());
    assert!(Field::new(3, 2, Some(&[2, 0])).is_err());
}
