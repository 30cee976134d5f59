//! Kantor–Knuth and Holder–Megyesi star flocks.

use crate::blocking;
use crate::equiv;
use crate::error::{Error, Result};
use crate::flock::{self, Flock};
use crate::geom::{Point2, PointSet2, ProjectivePlane};
use crate::gf::{Elem, Field};
use crate::linpoly::{self, BallCase};

use super::{timed, SuiteReport};

fn check_step(field: &Field, e: u32) -> Result<u64> {
    let n = field.n();
    if e == 0 || !n.is_multiple_of(e) {
        return Err(Error::NotADivisor { e, n });
    }
    let s = (field.p() as u64).pow(e);
    if s <= 2 {
        return Err(Error::InvalidParameter(format!("p^e = {s} must exceed 2")));
    }
    Ok(s)
}

fn kk_table(field: &Field, e: u32, k: Elem, c: Elem) -> Vec<Elem> {
    field.elements().map(|t| field.mul(k, field.sub(field.frobenius(t, e), field.mul(c, t)))).collect()
}

/// `F(t, k(t^(p^e) - c t), 0)`; `c` must not be a `(p^e - 1)`-th power.
pub fn kantor_knuth(field: &Field, e: u32, k: Elem, c: Elem) -> Result<Flock> {
    let s = check_step(field, e)?;
    if k.is_zero() {
        return Err(Error::InvalidParameter("k must be nonzero".into()));
    }
    if field.is_nonzero_power(c, s - 1) {
        return Err(Error::NotPermutation);
    }
    Flock::star_form(field, kk_table(field, e, k, c))
}

/// `F(t, g(t), -(a t + b g(t)))` for the Kantor–Knuth `g`.
pub fn kantor_knuth_variant(field: &Field, e: u32, k: Elem, c: Elem, a: Elem, b: Elem) -> Result<Flock> {
    let base = kantor_knuth(field, e, k, c)?;
    let g = base.g().to_vec();
    Flock::from_fn(field, |t| {
        let gt = g[t.0 as usize];
        [t, gt, field.neg(field.add(field.mul(a, t), field.mul(b, gt)))]
    })
}

/// `F(t, k1 (Tr(t / k2) - c t), 0)` with `Tr` the trace onto GF(p^e); `c`
/// must differ from every `Tr(β / k2) / β`.
pub fn holder_megyesi(field: &Field, e: u32, k1: Elem, k2: Elem, c: Elem) -> Result<Flock> {
    check_step(field, e)?;
    if k1.is_zero() || k2.is_zero() {
        return Err(Error::InvalidParameter("k1 and k2 must be nonzero".into()));
    }
    let tr = |x: Elem| field.trace(x, e).expect("divisor");
    if field.nonzero().any(|b| field.div(tr(field.div(b, k2)), b) == c) {
        return Err(Error::NotPermutation);
    }
    let g = field.elements().map(|t| field.mul(k1, field.sub(tr(field.div(t, k2)), field.mul(c, t)))).collect();
    Flock::star_form(field, g)
}

/// Common checks for a proper star flock `F(t, g, 0)` of a wide cone with
/// `N` directions.
fn wide_star_checks(r: &mut SuiteReport, label: &str, fl: &Flock, expected_n: usize) {
    let k = fl.field();
    let q = k.q() as usize;
    let plane = ProjectivePlane::new(k);
    let s = flock::critical_cone(fl);
    let w = flock::width_in(&plane, &s);
    let class = flock::ConeClass::from_width(k.q(), w.min, s.len());
    r.check_true(format!("{label}: g is a permutation"), k.is_permutation(fl.g().iter().copied()));
    r.check(format!("{label}: N"), expected_n, linpoly::direction_count(k, fl.g()).n);
    r.check_true(format!("{label}: proper star flock"), flock::star_analysis(fl).is_proper);
    r.check_true(format!("{label}: critical cone is wide"), class.is_wide());
    let qi = plane.point_index(&Point2::new(k, [Elem::ZERO, Elem::ZERO, Elem::ONE]).expect("nonzero"));
    r.check_true(format!("{label}: N + w_S(star point) <= q + 1"), expected_n + w.per_point[qi] as usize <= q + 1);
    match linpoly::ball_trichotomy(k, fl.g()) {
        Ok(p) => {
            r.check(format!("{label}: trichotomy case"), BallCase::Ii, p.ball_case);
            r.check_true(format!("{label}: trichotomy bound and linearity"), p.holds());
        }
        Err(e) => {
            r.check(format!("{label}: trichotomy"), "profile", e.to_string());
        }
    }
    let b = blocking::redei_from_star_flock(fl).expect("proper star flock in normal form");
    let br = blocking::is_blocking_set_in(&plane, &b.points);
    r.check(format!("{label}: Rédei set size q + N"), q + expected_n, b.points.len());
    r.check_true(format!("{label}: Rédei set is blocking"), br.blocking && br.is_redei);
    let scene = blocking::dual_scene(fl, &s).expect("normal form");
    r.check_true(format!("{label}: directions avoid generator traces"), scene.disjoint);
}

/// Checks the Kantor–Knuth conic `xy = -m` against `F(t, t^σ, 0)`,
/// `σ = p^i`, and the curves `y = -m / x^(2k+1)` for `k` in `k_range`.
pub fn example1_check(field: &Field, i: u32, m: Elem, k_range: std::ops::RangeInclusive<u64>) -> Result<SuiteReport> {
    let q = field.q();
    if field.p() == 2 {
        return Err(Error::Unsupported { q, reason: "the Kantor–Knuth conic check needs odd q" });
    }
    if i == 0 || i >= field.n() {
        return Err(Error::InvalidParameter(format!("σ = p^{i} needs 1 <= i <= {}", field.n() - 1)));
    }
    if m.is_zero() {
        return Err(Error::InvalidParameter("m must be nonzero".into()));
    }
    let k = field;
    let mut r = SuiteReport::new(&format!("GF({q}) σ=p^{i} m={}", m.0));
    let fl = Flock::star_form(k, k.elements().map(|t| k.frobenius(t, i)).collect())?;
    let s = flock::critical_cone(&fl);
    let nonsquare = !k.is_square(m);

    let conic: PointSet2 = k
        .nonzero()
        .map(|x| Point2::new(k, [x, k.neg(k.div(m, x)), Elem::ONE]).expect("affine"))
        .chain([Point2::new(k, [Elem::ONE, Elem::ZERO, Elem::ZERO]).expect("nonzero")])
        .chain([Point2::new(k, [Elem::ZERO, Elem::ONE, Elem::ZERO]).expect("nonzero")])
        .collect();
    r.check("conic xy = -m in carrier", nonsquare, conic.is_subset(&s));

    // f(x) g(t) + x t has no zero with x t != 0  <=>  (x, f(x), 1) passes
    let criterion = |x: Elem, fx: Elem| {
        k.nonzero().all(|t| !k.add(k.mul(fx, fl.g()[t.0 as usize]), k.mul(x, t)).is_zero())
    };
    let qm1 = q as u64 - 1;
    let curve = |kk: u64, x: Elem| k.neg(k.div(m, k.pow(x, (2 * kk + 1) % qm1)));
    let mut disagreements = 0;
    for kk in k_range.clone().chain([0]) {
        for x in k.nonzero() {
            let fx = curve(kk, x);
            if criterion(x, fx) != flock::permutation_test(&fl, x, fx, Elem::ONE) {
                disagreements += 1;
            }
        }
    }
    r.check("criterion agrees with the permutation test", 0, disagreements);

    if nonsquare {
        let failing: Vec<u64> = k_range
            .clone()
            .filter(|&kk| {
                !k.nonzero().all(|x| s.contains(&Point2::new(k, [x, curve(kk, x), Elem::ONE]).expect("affine")))
            })
            .collect();
        r.check("curves y = -m/x^(2k+1) in carrier: failing k", Vec::<u64>::new(), failing);
        let mut exps: Vec<u64> = k_range.clone().map(|kk| (2 * kk + 1) % qm1).collect();
        exps.sort_unstable();
        exps.dedup();
        if exps.len() < k_range.clone().count() {
            r.note(format!("exponents 2k+1 mod {qm1} give {} distinct curves", exps.len()));
        }
    }
    Ok(r)
}

fn example1_all_m(r: &mut SuiteReport, field: &Field, i: u32, itemize: bool) -> Result<()> {
    let q = field.q() as u64;
    let mut failing = Vec::new();
    for m in field.nonzero() {
        let sub = example1_check(field, i, m, 0..=(q - 1) / 2)?;
        if itemize {
            r.absorb(sub);
        } else if !sub.pass {
            failing.push(m.0);
        }
    }
    if !itemize {
        r.check(format!("GF({q}) σ=p^{i}: every m passes"), Vec::<u32>::new(), failing);
    }
    Ok(())
}

pub fn kantor_knuth_suite(only_q: Option<u32>) -> Result<SuiteReport> {
    timed(|| {
        let mut r = SuiteReport::new("kantor-knuth");
        let wanted = |q: u32| only_q.is_none_or(|o| o == q);
        for (q, e) in [(9u64, 1u32), (16, 2), (25, 1), (27, 1), (81, 2)] {
            if !wanted(q as u32) {
                continue;
            }
            let k = Field::of_order(q)?;
            let s = (k.p() as u64).pow(e);
            let n_expected = ((q - 1) / (s - 1)) as usize;
            let c = if q == 27 { k.primitive() } else { Elem::ZERO };
            let fl = kantor_knuth(&k, e, Elem::ONE, c)?;
            wide_star_checks(&mut r, &format!("GF({q}) e={e} c={}", c.0), &fl, n_expected);
            let bad_c = k.pow(k.primitive(), s - 1);
            r.check(
                format!("GF({q}) e={e}: c = λ^(p^e-1) rejected"),
                Error::NotPermutation.to_string(),
                kantor_knuth(&k, e, Elem::ONE, bad_c).map(|_| "accepted".to_string()).unwrap_or_else(|e| e.to_string()),
            );
            if q <= 27 {
                let (a, b) = (k.primitive(), Elem::ONE);
                let v = kantor_knuth_variant(&k, e, Elem::ONE, c, a, b)?;
                let star = flock::star_analysis(&v);
                r.check_true(format!("GF({q}) e={e}: variant is a proper star flock"), star.is_proper);
                let class = flock::classify_cone(&k, &flock::critical_cone(&v));
                r.check_true(format!("GF({q}) e={e}: variant cone is wide"), class.is_wide());
                let (nf, _) = equiv::normalize_star_form(&v)?;
                let step = linpoly::detect_linearized(&k, nf.g());
                r.check_true(
                    format!("GF({q}) e={e}: variant normal form is GF(p^e)-linear"),
                    step.is_some_and(|d| d % e == 0),
                );
                r.check(
                    format!("GF({q}) e={e}: variant normal form N"),
                    n_expected,
                    linpoly::direction_count(&k, nf.g()).n,
                );
            }
        }
        for (q, i, itemize) in [(9u64, 1u32, true), (25, 1, false), (27, 1, false), (27, 2, false)] {
            if wanted(q as u32) {
                example1_all_m(&mut r, &Field::of_order(q)?, i, itemize)?;
            }
        }
        Ok(r)
    })
}

pub fn holder_megyesi_suite(only_q: Option<u32>) -> Result<SuiteReport> {
    timed(|| {
        let mut r = SuiteReport::new("holder-megyesi");
        for (q, e) in [(9u64, 1u32), (27, 1), (81, 2)] {
            if only_q.is_some_and(|o| o != q as u32) {
                continue;
            }
            let k = Field::of_order(q)?;
            let (n, p) = (k.n(), k.p() as u64);
            let tr = |x: Elem| k.trace(x, e).expect("divisor");
            let inadmissible: Vec<Elem> = {
                let mut v: Vec<Elem> = k.nonzero().map(|b| k.div(tr(b), b)).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            let c = k.elements().find(|c| inadmissible.binary_search(c).is_err()).expect("admissible c exists");
            let fl = holder_megyesi(&k, e, Elem::ONE, Elem::ONE, c)?;
            let expected_n = (p.pow(n - e) + 1) as usize;
            wide_star_checks(&mut r, &format!("GF({q}) e={e} c={}", c.0), &fl, expected_n);
            r.check(
                format!("GF({q}) e={e}: inadmissible c rejected"),
                Error::NotPermutation.to_string(),
                holder_megyesi(&k, e, Elem::ONE, Elem::ONE, inadmissible[0])
                    .map(|_| "accepted".to_string())
                    .unwrap_or_else(|e| e.to_string()),
            );
            // scaling k2 moves the inadmissible set but keeps N
            let k2 = k.primitive();
            let c2 = k
                .elements()
                .find(|&c| holder_megyesi(&k, e, Elem::ONE, k2, c).is_ok())
                .expect("admissible c exists");
            let fl2 = holder_megyesi(&k, e, k.primitive(), k2, c2)?;
            r.check(
                format!("GF({q}) e={e}: N with k1 = k2 = λ"),
                expected_n,
                linpoly::direction_count(&k, fl2.g()).n,
            );
        }
        Ok(r)
    })
}
