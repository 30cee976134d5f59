//! Two Lunelli–Sce hyperovals of PG(2,16) and the Kantor–Knuth flock
//! `F(t, t^4, 0)` whose carrier holds their symmetric difference.

use rayon::prelude::*;

use crate::flock::{self, Flock};
use crate::geom::{self, Point2, PointSet2};
use crate::gf::{Elem, Field};
use crate::linalg;

use super::{timed, SuiteReport};
use crate::error::Result;

/// `(coefficient exponent of λ, power of x)`.
const F1: &[(u64, u64)] = &[(13, 14), (3, 12), (6, 10), (0, 8), (6, 6), (3, 4), (13, 2)];
const F2: &[(u64, u64)] = &[(4, 14), (10, 12), (11, 10), (11, 8), (0, 6), (2, 4)];

fn eval(k: &Field, terms: &[(u64, u64)], x: Elem) -> Elem {
    terms.iter().fold(Elem::ZERO, |acc, &(c, e)| k.add(acc, k.mul(k.exp(c), k.pow(x, e))))
}

pub fn lunelli_sce_f1(k: &Field, x: Elem) -> Elem {
    eval(k, F1, x)
}

pub fn lunelli_sce_f2(k: &Field, x: Elem) -> Elem {
    eval(k, F2, x)
}

fn hyperoval(k: &Field, f: impl Fn(Elem) -> Elem) -> PointSet2 {
    k.elements()
        .map(|x| Point2::new(k, [x, f(x), Elem::ONE]).expect("affine"))
        .chain([[0, 1, 0], [1, 0, 0]].map(|c| Point2::from_encodings(k, &c).expect("valid")))
        .collect()
}

/// Nondegenerate conics `a x² + b y² + z² + d xy + e xz + f yz = 0` inside
/// `inside`. A conic missing the star point `(0,0,1)` has nonzero `z²`
/// coefficient, so this covers every conic that avoids it. Forms vanishing on
/// a single point or a line are rejected: only a conic has `q + 1` points and
/// three of them not collinear.
fn conics_avoiding(k: &Field, inside: &[Point2], outside: &[Point2]) -> u64 {
    let q = k.q();
    let monomials = |pts: &[Point2]| -> Vec<[Elem; 6]> {
        pts.iter()
            .map(|p| {
                let [x, y, z] = *p.coords();
                [k.mul(x, x), k.mul(y, y), k.mul(x, y), k.mul(x, z), k.mul(y, z), k.mul(z, z)]
            })
            .collect()
    };
    let (out_m, in_m) = (monomials(outside), monomials(inside));
    let value = |m: &[Elem; 6], coeffs: &[Elem; 6]| m.iter().zip(coeffs).fold(Elem::ZERO, |acc, (&x, &c)| k.add(acc, k.mul(x, c)));
    let is_conic = |coeffs: &[Elem; 6]| {
        let zeros: Vec<Vec<Elem>> =
            inside.iter().zip(&in_m).filter(|(_, m)| value(m, coeffs).is_zero()).map(|(p, _)| p.coords().to_vec()).collect();
        zeros.len() == q as usize + 1 && linalg::rank(k, &zeros) == 3
    };
    (0..q.pow(2))
        .into_par_iter()
        .map(|ab| {
            let (a, b) = (Elem(ab / q), Elem(ab % q));
            let mut found = 0u64;
            for d in 0..q {
                for e in 0..q {
                    for f in 0..q {
                        let coeffs = [a, b, Elem(d), Elem(e), Elem(f), Elem::ONE];
                        let misses = out_m.iter().all(|m| !value(m, &coeffs).is_zero());
                        found += (misses && is_conic(&coeffs)) as u64;
                    }
                }
            }
            found
        })
        .sum()
}

pub fn lunelli_sce_suite() -> Result<SuiteReport> {
    timed(|| {
        let mut r = SuiteReport::new("lunelli-sce");
        let k = Field::new(2, 4, None)?;
        let lam = k.primitive();
        r.check("λ^4 = λ + 1", k.add(lam, Elem::ONE).0, k.pow(lam, 4).0);

        let h1 = hyperoval(&k, |x| lunelli_sce_f1(&k, x));
        let h2 = hyperoval(&k, |x| lunelli_sce_f2(&k, x));
        r.check("|H1|", 18, h1.len());
        r.check("|H2|", 18, h2.len());
        r.check_true("H1 is a hyperoval", geom::is_hyperoval(&k, &h1));
        r.check_true("H2 is a hyperoval", geom::is_hyperoval(&k, &h2));
        let meet = h1.intersection(&h2);
        r.check("|H1 ∩ H2|", 9, meet.len());

        let l = |i: u64| k.exp(i);
        let listed: Vec<Point2> = [
            (Elem::ZERO, Elem::ZERO),
            (Elem::ONE, Elem::ONE),
            (l(10), l(13)),
            (l(8), l(2)),
            (l(14), l(5)),
            (l(13), l(10)),
        ]
        .iter()
        .map(|&(x, y)| Point2::new(&k, [x, y, Elem::ONE]).expect("affine"))
        .collect();
        r.check_true("the six listed points lie in H1 ∩ H2", listed.iter().all(|p| meet.contains(p)));

        // lines through the star point (0,0,1) and (x, y, 1) have slope y/x
        let mut slopes: Vec<u32> = listed[1..]
            .iter()
            .map(|p| {
                let [x, y, _] = *p.coords();
                k.div(y, x).0
            })
            .collect();
        slopes.sort_unstable();
        let mut cubes: Vec<u32> = (0..5).map(|i| k.exp(3 * i).0).collect();
        cubes.sort_unstable();
        r.check("slopes from (0,0,1) are the nonzero cubes", cubes, slopes);

        let sym = h1.symmetric_difference(&h2);
        r.check("|H1 ▽ H2|", 18, sym.len());
        r.check_true("H1 ▽ H2 is a hyperoval", geom::is_hyperoval(&k, &sym));

        let fl = Flock::star_form(&k, k.elements().map(|t| k.pow(t, 4)).collect())?;
        let carrier = flock::critical_cone(&fl);
        r.check_true("H1 ▽ H2 lies in the carrier of F(t,t^4,0)", sym.is_subset(&carrier));
        let star = flock::star_analysis(&fl);
        r.check("star point", vec![[0, 0, 1, 0]], star.star_points.iter().map(|p| p.encodings()).collect::<Vec<_>>());
        let class = flock::classify_cone(&k, &carrier);
        r.check("carrier size", 192, carrier.len());
        r.check("carrier class", flock::ConeTag::Thick, class.tag);

        let (inside, outside): (Vec<Point2>, Vec<Point2>) = geom::points::<3>(&k).into_iter().partition(|p| carrier.contains(p));
        r.check("conics inside the carrier", 0, conics_avoiding(&k, &inside, &outside));
        Ok(r)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conic_search_finds_a_conic_in_a_full_carrier() {
        // outside one line, the conics missing that line are found
        let k = Field::of_order(4).unwrap();
        let line = geom::Line2::from_encodings(&k, &[1, 0, 0]).unwrap();
        let (outside, inside): (Vec<Point2>, Vec<Point2>) =
            geom::points::<3>(&k).into_iter().partition(|p| geom::incident(&k, p, &line));
        assert!(conics_avoiding(&k, &inside, &outside) > 0);
        // two punctured lines hold at most four points of a conic
        let star = Point2::new(&k, [Elem::ZERO, Elem::ZERO, Elem::ONE]).unwrap();
        let (inside, outside): (Vec<Point2>, Vec<Point2>) = geom::points::<3>(&k)
            .into_iter()
            .partition(|p| *p != star && (p.coords()[0].is_zero() || p.coords()[1].is_zero()));
        assert_eq!(conics_avoiding(&k, &inside, &outside), 0);
    }
}
