//! Seeded property checks over small fields.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::equiv::{self, Mode, StabElement, Verdict};
use crate::error::Result;
use crate::flock::{self, Flock};
use crate::geom::{self, PointSet2, ProjectivePlane};
use crate::gf::{Elem, Field};

use super::{timed, SuiteReport};

const SMALL: &[u64] = &[2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

fn field_axiom_violations(k: &Field) -> u64 {
    let mut bad = 0u64;
    let elems: Vec<Elem> = k.elements().collect();
    for &a in &elems {
        bad += (k.add(a, Elem::ZERO) != a) as u64 + (k.mul(a, Elem::ONE) != a) as u64;
        bad += (k.add(a, k.neg(a)) != Elem::ZERO) as u64;
        if !a.is_zero() {
            bad += (k.mul(a, k.inv(a)) != Elem::ONE) as u64;
        }
        for &b in &elems {
            bad += (k.add(a, b) != k.add(b, a)) as u64 + (k.mul(a, b) != k.mul(b, a)) as u64;
            for &c in &elems {
                bad += (k.add(k.add(a, b), c) != k.add(a, k.add(b, c))) as u64;
                bad += (k.mul(k.mul(a, b), c) != k.mul(a, k.mul(b, c))) as u64;
                bad += (k.mul(a, k.add(b, c)) != k.add(k.mul(a, b), k.mul(a, c))) as u64;
            }
        }
    }
    bad
}

fn duality_violations(k: &Field) -> u64 {
    let pts = geom::points::<4>(k);
    let planes = geom::hyperplanes::<4>(k);
    let mut bad = 0u64;
    for p in &pts {
        bad += (geom::undualize(k, &geom::dualize(k, p)) != *p) as u64;
        for h in &planes {
            let before = geom::incident(k, p, h);
            let after = geom::incident(k, &geom::undualize(k, h), &geom::dualize(k, p));
            bad += (before != after) as u64;
        }
    }
    bad
}

/// A flock with random coordinate functions.
fn random_flock(k: &Field, rng: &mut StdRng) -> Flock {
    let q = k.q();
    let mut triples: Vec<[Elem; 3]> = vec![[Elem::ZERO; 3]];
    while triples.len() < q as usize {
        let v = [0; 3].map(|_| Elem(rng.gen_range(0..q)));
        if !triples.contains(&v) {
            triples.push(v);
        }
    }
    Flock::from_planes(k, &triples).expect("distinct planes")
}

fn random_star_flock(k: &Field, rng: &mut StdRng) -> Flock {
    let mut rest: Vec<Elem> = k.nonzero().collect();
    rest.shuffle(rng);
    let g: Vec<Elem> = std::iter::once(Elem::ZERO).chain(rest).collect();
    let base = Flock::star_form(k, g).expect("permutation");
    equiv::apply(&StabElement::random(k, rng), &base)
}

pub fn properties_suite(seed: u64) -> Result<SuiteReport> {
    timed(|| {
        let mut r = SuiteReport::new("properties");
        let mut rng = StdRng::seed_from_u64(seed);
        for &q in SMALL {
            let k = Field::of_order(q)?;
            r.check(format!("GF({q}): field axiom violations"), 0, field_axiom_violations(&k));
        }
        for q in [2u64, 3, 4] {
            let k = Field::of_order(q)?;
            r.check(format!("PG(3,{q}): duality violations"), 0, duality_violations(&k));
        }
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let k = Field::of_order(q)?;
            let plane = ProjectivePlane::new(&k);
            let (mut fp_bad, mut law_bad, mut cov_bad, mut star_bad) = (0, 0, 0, 0);
            for i in 0..100 {
                let fl = if i % 2 == 0 { random_flock(&k, &mut rng) } else { random_star_flock(&k, &mut rng) };
                let g1 = StabElement::random(&k, &mut rng);
                let g2 = StabElement::random(&k, &mut rng);
                let img = equiv::apply(&g1, &fl);
                fp_bad += (equiv::fingerprint_in(&plane, &img) != equiv::fingerprint_in(&plane, &fl)) as u64;
                let two = equiv::apply(&g2, &img);
                law_bad += !two.same_planes(&equiv::apply(&g2.compose(&k, &g1), &fl)) as u64;
                let s = flock::critical_cone(&fl);
                cov_bad += (flock::critical_cone(&img) != equiv::map_set(&g1, &k, &s)) as u64;
                let sa = flock::star_analysis(&fl);
                star_bad += (flock::is_linear(&fl).linear && !sa.is_star) as u64;
                star_bad += (sa.is_proper && flock::is_linear(&fl).linear) as u64;
            }
            r.check(format!("GF({q}): fingerprint changes under 100 random elements"), 0, fp_bad);
            r.check(format!("GF({q}): composition law failures"), 0, law_bad);
            r.check(format!("GF({q}): carrier covariance failures"), 0, cov_bad);
            r.check(format!("GF({q}): linear/star implication failures"), 0, star_bad);
        }
        for q in [3u64, 4, 5] {
            let k = Field::of_order(q)?;
            let mut bad = 0;
            for _ in 0..10 {
                let fl = random_star_flock(&k, &mut rng);
                let (n, _) = equiv::normalize_star_form(&fl)?;
                let ok = n.is_star_form() && equiv::are_equivalent(&fl, &n, Mode::Exhaustive)? == Verdict::Equivalent;
                bad += !ok as u64;
            }
            r.check(format!("GF({q}): normal forms not equivalent to their input"), 0, bad);
        }
        for q in [4u64, 5, 7] {
            let k = Field::of_order(q)?;
            let mut bad = 0;
            for _ in 0..5 {
                // star-form carriers depend only on (a : b)
                let fl = random_star_flock(&k, &mut rng);
                let (n, _) = equiv::normalize_star_form(&fl)?;
                let s = flock::critical_cone(&n);
                bad += s.iter().any(|p| {
                    let [a, b, _] = *p.coords();
                    k.elements().any(|c| !s.contains(&geom::Point2::new(&k, [a, b, c]).expect("nonzero")))
                }) as u64;
                for ax in flock::linear_flock_axes(&k, &s).iter().take(20) {
                    bad += !(flock::is_linear(&ax.flock).linear && flock::is_flock_of(&ax.flock, &s)) as u64;
                }
            }
            r.check(format!("GF({q}): star-form carrier and axis flock failures"), 0, bad);
            let empty = flock::linear_flock_axes(&k, &PointSet2::new()).len();
            r.check(format!("GF({q}): axes of the empty cone"), (q * q * (q * q + q + 1)) as usize, empty);
        }
        Ok(r)
    })
}
