//! The triangle and triad flocks: proper bilinear star flocks of thin cones.

use crate::blocking::{self, Configuration};
use crate::error::{Error, Result};
use crate::flock::{self, ConeClass, Flock};
use crate::geom::{self, Point2, Point3, PointSet2, ProjectivePlane};
use crate::gf::{Elem, Field};
use crate::linpoly;

use super::{timed, SuiteReport};

fn star_point(k: &Field) -> Point2 {
    Point2::new(k, [Elem::ZERO, Elem::ZERO, Elem::ONE]).expect("nonzero")
}

/// The punctured line through `(0,0,1)` with slope `c` (`None` for `x = 0`).
fn punctured(k: &Field, c: Option<Elem>) -> impl Iterator<Item = Point2> + '_ {
    k.elements().map(move |z| {
        let coords = match c {
            Some(c) => [Elem::ONE, c, z],
            None => [Elem::ZERO, Elem::ONE, z],
        };
        Point2::new(k, coords).expect("nonzero")
    })
}

fn slopes_of(s: &PointSet2) -> (Vec<u32>, bool) {
    let mut slopes: Vec<u32> = s.iter().filter(|p| !p.coords()[0].is_zero()).map(|p| p.coords()[1].0).collect();
    slopes.sort_unstable();
    slopes.dedup();
    let vertical = s.iter().any(|p| p.coords()[0].is_zero());
    (slopes, vertical)
}

fn configuration_checks(r: &mut SuiteReport, plane: &ProjectivePlane, conf: &Configuration, size: usize, side: usize) {
    let b = blocking::is_blocking_set_in(plane, &conf.set.points);
    r.check("set size", size, conf.set.points.len());
    r.check("points per line", vec![side; 3], conf.points_per_line.clone());
    r.check_true("every point lies on one of the lines", conf.covered);
    r.check_true("closure property", conf.closure);
    r.check_true("blocking", b.blocking);
    r.check_true("proper", b.proper);
    r.check_true("Rédei", b.is_redei);
}

fn bilinear_checks(r: &mut SuiteReport, fl: &Flock) {
    let k = fl.field();
    let b = flock::is_bilinear(fl);
    r.check_true("properly bilinear", b.properly_bilinear);
    let star = Point3::new(k, [Elem::ZERO, Elem::ZERO, Elem::ONE, Elem::ZERO]).expect("nonzero");
    r.check("carrier lines meet at the star point", Some(star), b.meet_point);
    r.check("star points", vec![star], flock::star_analysis(fl).star_points);
}

fn n_plus_width(r: &mut SuiteReport, plane: &ProjectivePlane, fl: &Flock, s: &PointSet2) {
    let k = fl.field();
    let w = flock::width_in(plane, s);
    let n = linpoly::direction_count(k, fl.g()).n;
    let wq = w.per_point[plane.point_index(&star_point(k))] as usize;
    r.check_true(format!("N + w_S(star point) = {n} + {wq} <= q + 1"), n + wq <= k.q() as usize + 1);
}

/// `F(t, t^((q+1)/2), 0)` for odd `q` and the projective triangle.
pub fn triangle_flock_suite(q: u32) -> Result<SuiteReport> {
    timed(|| {
        if q.is_multiple_of(2) {
            return Err(Error::Unsupported { q, reason: "the triangle flock needs odd q" });
        }
        let k = Field::of_order(q as u64)?;
        let plane = ProjectivePlane::new(&k);
        let mut r = SuiteReport::new(&format!("triangle q={q}"));
        let fl = Flock::star_form(&k, k.elements().map(|t| k.pow(t, (q as u64).div_ceil(2))).collect())?;
        let s = flock::critical_cone(&fl);

        let one = Elem::ONE;
        let minus_one_square = k.is_square(k.neg(one));
        let good: Vec<Elem> = k
            .elements()
            .filter(|&c| c != k.neg(one))
            .filter(|&c| {
                let v = k.div(k.sub(one, c), k.add(one, c));
                !v.is_zero() && k.is_square(v)
            })
            .collect();
        let mut expected: PointSet2 = good.iter().flat_map(|&c| punctured(&k, Some(c))).collect();
        if minus_one_square {
            expected = expected.union(&punctured(&k, None).collect());
        }
        r.check_true("carrier = punctured lines y = cx with (1-c)/(1+c) a nonzero square", s == expected);
        let (slopes, vertical) = slopes_of(&s);
        let expected_lines = if minus_one_square { (q - 3) / 2 } else { (q - 1) / 2 };
        r.check("lines y = cx in the carrier", expected_lines as usize, slopes.len());
        r.check("(0,1,0) in carrier iff q = 1 mod 4", q % 4 == 1, vertical);
        r.check("(0,1,0) in carrier", minus_one_square, s.contains(&Point2::new(&k, [Elem::ZERO, one, Elem::ZERO])?));

        let w = flock::width_in(&plane, &s);
        let class = ConeClass::from_width(q, w.min, s.len());
        r.check("W_S", (q - 1) / 2, w.min);
        r.check_true("thin", class.is_thin());
        bilinear_checks(&mut r, &fl);
        n_plus_width(&mut r, &plane, &fl, &s);

        // every further punctured line through the star point makes it wide
        let all_dirs: Vec<Option<Elem>> = k.elements().map(Some).chain([None]).collect();
        let mut thin_extensions = 0;
        for d in all_dirs {
            let line: PointSet2 = punctured(&k, d).collect();
            if line.is_subset(&s) {
                continue;
            }
            let bigger = s.union(&line);
            if !flock::classify_cone_in(&plane, &bigger).is_wide() {
                thin_extensions += 1;
            }
        }
        r.check("carrier extensions by one line that stay thin", 0, thin_extensions);

        let tri = blocking::projective_triangle(&k)?;
        let side = (q as usize + 3) / 2;
        configuration_checks(&mut r, &plane, &tri, 3 * (q as usize + 1) / 2, side);
        r.check_true(
            "Rédei set of the flock is the triangle",
            blocking::redei_from_star_flock(&fl)?.points == tri.set.points,
        );
        Ok(r)
    })
}

/// `F(t, tr(t), 0)` for even `q` and the projective triad.
pub fn triad_flock_suite(q: u32) -> Result<SuiteReport> {
    timed(|| {
        let k = Field::of_order(q as u64)?;
        if k.p() != 2 {
            return Err(Error::Unsupported { q, reason: "the triad flock needs even q" });
        }
        let plane = ProjectivePlane::new(&k);
        let mut r = SuiteReport::new(&format!("triad q={q}"));
        let fl = Flock::star_form(&k, k.elements().map(|t| k.abs_trace(t)).collect())?;
        let s = flock::critical_cone(&fl);
        let expected: PointSet2 = k
            .elements()
            .filter(|&c| k.abs_trace(c).is_zero())
            .flat_map(|c| punctured(&k, Some(c)))
            .collect();
        r.check_true("carrier = punctured lines y = cx with tr(c) = 0", s == expected);
        r.check_true("(0,1,0) not in carrier", !s.contains(&Point2::new(&k, [Elem::ZERO, Elem::ONE, Elem::ZERO])?));
        let w = flock::width_in(&plane, &s);
        r.check("W_S", q / 2, w.min);
        r.check_true("thin", ConeClass::from_width(q, w.min, s.len()).is_thin());
        if q >= 4 {
            bilinear_checks(&mut r, &fl);
        }
        n_plus_width(&mut r, &plane, &fl, &s);

        let triad = blocking::projective_triad(&k)?;
        r.check_true("the three lines are concurrent", blocking::concurrent(&k, &triad.lines));
        configuration_checks(&mut r, &plane, &triad, (3 * q as usize + 2) / 2, (q as usize + 2) / 2);
        if q >= 4 {
            r.check_true(
                "Rédei set of the flock is the triad",
                blocking::redei_from_star_flock(&fl)?.points == triad.set.points,
            );
        }
        Ok(r)
    })
}

/// Points of `x^q y = z^(q+1)` in PG(2, q²).
fn hermitian_curve(k: &Field, q: u64) -> Vec<Point2> {
    geom::points::<3>(k)
        .into_iter()
        .filter(|p| {
            let [x, y, z] = *p.coords();
            k.mul(k.pow(x, q), y) == k.pow(z, q + 1)
        })
        .collect()
}

/// `F(t, A t^((q²+1)/2), 0)` over GF(q²) with `A^q = -A`.
pub fn triangle_special_case(q: u32) -> Result<SuiteReport> {
    timed(|| {
        if q.is_multiple_of(2) {
            return Err(Error::Unsupported { q, reason: "the triangle special case needs odd q" });
        }
        let qq = q as u64;
        let k = Field::of_order(qq * qq)?;
        let mut r = SuiteReport::new(&format!("triangle-special q={q}"));
        let a = k.exp(qq.div_ceil(2));
        r.check("A^q = -A for A = λ^((q+1)/2)", k.neg(a).0, k.pow(a, qq).0);
        r.check_true("A not in GF(q)", k.pow(a, qq) != a);

        let curve = hermitian_curve(&k, qq);
        r.check("curve points", (qq * qq + 1) as usize, curve.len());
        let flock_for = |a: Elem| {
            Flock::star_form(&k, k.elements().map(|t| k.mul(a, k.pow(t, (qq * qq).div_ceil(2)))).collect())
        };
        let fl = flock_for(a)?;
        let s = flock::critical_cone(&fl);
        let (affine, infinite): (Vec<&Point2>, Vec<&Point2>) = curve.iter().partition(|p| !p.coords()[2].is_zero());
        r.check("affine curve points", (qq * qq - 1) as usize, affine.len());
        r.check_true("affine curve points in carrier", affine.iter().all(|p| s.contains(p)));
        r.check(
            "curve points at infinity in carrier",
            vec![[0, 1, 0], [1, 0, 0]],
            infinite.iter().filter(|p| s.contains(p)).map(|p| p.encodings()).collect::<Vec<_>>(),
        );
        let curve_set: PointSet2 = curve.iter().copied().collect();
        r.check_true("directions avoid the curve's generator traces", blocking::dual_scene(&fl, &curve_set)?.disjoint);

        // with A in GF(q) the containment must break
        let bad = flock_for(Elem::ONE)?;
        let bad_s = flock::critical_cone(&bad);
        r.check("A = 1: all curve points in carrier", false, curve.iter().all(|p| bad_s.contains(p)));
        r.check("A = 1: directions avoid traces", false, blocking::dual_scene(&bad, &curve_set)?.disjoint);
        Ok(r)
    })
}

/// `F(t, tr(t), 0)` over GF(2^(2e)) against `x^q y = z^(q+1)`, `q = 2^e`.
pub fn triad_special_case(e: u32) -> Result<SuiteReport> {
    timed(|| {
        if e == 0 || e > 4 {
            return Err(Error::InvalidParameter(format!("e = {e} must lie in 1..=4")));
        }
        let q = 1u64 << e;
        let k = Field::new(2, 2 * e, None)?;
        let mut r = SuiteReport::new(&format!("triad-special e={e}"));
        let fl = Flock::star_form(&k, k.elements().map(|t| k.abs_trace(t)).collect())?;
        let s = flock::critical_cone(&fl);
        let curve = hermitian_curve(&k, q);
        let vertical = Point2::new(&k, [Elem::ZERO, Elem::ONE, Elem::ZERO])?;
        r.check("curve points", (q * q + 1) as usize, curve.len());
        let missing: Vec<[u32; 3]> = curve.iter().filter(|p| !s.contains(p)).map(|p| p.encodings()).collect();
        r.check("curve points outside the carrier", vec![vertical.encodings()], missing);
        let slope_ok = curve.iter().filter(|p| !p.coords()[2].is_zero()).all(|p| {
            let [x, y, _] = *p.coords();
            let c = k.div(y, x);
            k.pow(c, q) == c && k.abs_trace(c).is_zero()
        });
        r.check_true("affine curve slopes c lie in GF(q) with tr(c) = 0", slope_ok);
        // the relative trace to GF(q) gives a q-linearized g instead
        let rel: Vec<Elem> = k.elements().map(|t| k.trace(t, e).expect("divisor")).collect();
        r.check("relative trace is GF(q)-linear", Some(e), linpoly::detect_linearized(&k, &rel));
        Ok(r)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass() {
        for q in [3, 5, 7] {
            let r = triangle_flock_suite(q).unwrap();
            assert!(r.pass, "{:?}", r.failures().collect::<Vec<_>>());
        }
        for q in [4, 8] {
            let r = triad_flock_suite(q).unwrap();
            assert!(r.pass, "{:?}", r.failures().collect::<Vec<_>>());
        }
        let r = triangle_special_case(3).unwrap();
        assert!(r.pass, "{:?}", r.failures().collect::<Vec<_>>());
        for e in [1, 2] {
            let r = triad_special_case(e).unwrap();
            assert!(r.pass, "{:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
