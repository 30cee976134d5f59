//! Exhaustive surveys of star flocks `F(t, g(t), 0)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flock::{self, ConeClass, Flock};
use crate::geom::{Point2, ProjectivePlane};
use crate::gf::{Elem, Field};
use crate::linpoly::{self, LinearizedPoly};

use super::{timed, SuiteReport};

/// Rearranges `v` into the next permutation in lexicographic order.
fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Calls `visit` on every permutation table of GF(q) fixing 0 whose value
/// at encoding 1 is `first`, in lexicographic order.
fn visit_chunk(q: u32, first: u32, visit: &mut impl FnMut(&[Elem])) {
    let mut rest: Vec<u32> = (1..q).filter(|&v| v != first).collect();
    let mut table = vec![Elem::ZERO; q as usize];
    if q >= 2 {
        table[1] = Elem(first);
    }
    loop {
        for (slot, &v) in table[2..].iter_mut().zip(&rest) {
            *slot = Elem(v);
        }
        visit(&table);
        if !next_permutation(&mut rest) {
            break;
        }
    }
}

/// Maps every permutation of GF(q) fixing 0 and sums the results; work is
/// split by the image of encoding 1.
fn par_over_permutations<T: Send + Default>(
    q: u32,
    map: impl Fn(&[Elem]) -> T + Sync,
    merge: impl Fn(T, T) -> T + Sync + Send + Copy,
) -> T {
    if q == 2 {
        return map(&[Elem(0), Elem(1)]);
    }
    (1..q)
        .into_par_iter()
        .map(|first| {
            let mut acc = T::default();
            visit_chunk(q, first, &mut |g| {
                let v = map(g);
                acc = merge(std::mem::take(&mut acc), v);
            });
            acc
        })
        .reduce(T::default, merge)
}

/// All permutation tables of GF(q) fixing 0, lexicographically.
pub fn permutations_fixing_zero(q: u32) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    if q == 2 {
        return vec![vec![Elem(0), Elem(1)]];
    }
    for first in 1..q {
        visit_chunk(q, first, &mut |g| out.push(g.to_vec()));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurveyMode {
    /// Full for `q <= 9`, linearized otherwise.
    Auto,
    Full,
    Linearized,
}

/// Aggregated observations over a family of `g`.
#[derive(Clone, Debug, Default)]
struct Tally {
    total: u64,
    wide: u64,
    /// Wide, grouped by the largest linearity step (`0` = not additive).
    wide_by_step: BTreeMap<u32, u64>,
    /// Wide and not allowed by the expected classification.
    wide_exceptions: Vec<Vec<u32>>,
    wide_properly_bilinear: u64,
    /// Proper star flocks with `N + w_S(Q) > q + 1`.
    direction_bound_violations: u64,
    direction_bound_equalities: u64,
    proper: u64,
    /// Width differs from the number of carrier lines through the star point.
    width_mismatches: u64,
    ball_checked: u64,
    ball_exceptions: Vec<Vec<u32>>,
    ball_cases: BTreeMap<String, u64>,
    /// Nonlinear g, grouped by (step, N, wide).
    nonlinear_profile: BTreeMap<(u32, usize, bool), u64>,
}

fn merge(mut a: Tally, b: Tally) -> Tally {
    a.total += b.total;
    a.wide += b.wide;
    for (k, v) in b.wide_by_step {
        *a.wide_by_step.entry(k).or_default() += v;
    }
    a.wide_exceptions.extend(b.wide_exceptions);
    a.wide_exceptions.sort();
    a.wide_exceptions.truncate(10);
    a.wide_properly_bilinear += b.wide_properly_bilinear;
    a.direction_bound_violations += b.direction_bound_violations;
    a.direction_bound_equalities += b.direction_bound_equalities;
    a.proper += b.proper;
    a.width_mismatches += b.width_mismatches;
    a.ball_checked += b.ball_checked;
    a.ball_exceptions.extend(b.ball_exceptions);
    a.ball_exceptions.sort();
    a.ball_exceptions.truncate(10);
    for (k, v) in b.ball_cases {
        *a.ball_cases.entry(k).or_default() += v;
    }
    for (k, v) in b.nonlinear_profile {
        *a.nonlinear_profile.entry(k).or_default() += v;
    }
    a
}

/// Which nonlinear additive steps may give wide cones.
fn wide_allowed(field: &Field, step: Option<u32>, n_dirs: usize) -> bool {
    let (p, n, q) = (field.p() as u64, field.n(), field.q() as usize);
    match step {
        Some(s) if s == n => true,
        // Kantor–Knuth: N = (q-1)/(p^e-1); Holder–Megyesi: N = p^(n-e)+1
        Some(s) if p.pow(s) > 2 => {
            let kk = (q - 1) / (p.pow(s) as usize - 1);
            let hm = p.pow(n - s) as usize + 1;
            n_dirs == kk || n_dirs == hm
        }
        _ => false,
    }
}

fn observe(plane: &ProjectivePlane, g: &[Elem], ball: bool) -> Tally {
    let k = plane.field();
    let q = k.q();
    let fl = Flock::star_form(k, g.to_vec()).expect("valid table");
    let s = flock::critical_cone(&fl);
    let w = flock::width_in(plane, &s);
    let class = ConeClass::from_width(q, w.min, s.len());
    let star = plane.point_index(&Point2::new(k, [Elem::ZERO, Elem::ZERO, Elem::ONE]).expect("nonzero"));
    let step = linpoly::detect_linearized(k, g);
    let linear = step == Some(k.n());
    let n_dirs = linpoly::direction_count(k, g).n;
    let mut t = Tally { total: 1, ..Tally::default() };

    let lines = plane.lines_through(star).iter().filter(|&&l| {
        plane.points_on(l as usize).iter().any(|&p| p as usize != star && s.contains(&plane.points()[p as usize]))
    });
    if lines.count() as u32 != w.min {
        t.width_mismatches = 1;
    }
    if !linear {
        t.proper = 1;
        let sum = n_dirs + w.per_point[star] as usize;
        if sum > q as usize + 1 {
            t.direction_bound_violations = 1;
        }
        if sum == q as usize + 1 {
            t.direction_bound_equalities = 1;
        }
        t.nonlinear_profile.insert((step.unwrap_or(0), n_dirs, class.is_wide()), 1);
    }
    if class.is_wide() {
        t.wide = 1;
        t.wide_by_step.insert(step.unwrap_or(0), 1);
        if !wide_allowed(k, step, n_dirs) {
            t.wide_exceptions.push(g.iter().map(|e| e.0).collect());
        }
        if flock::is_bilinear(&fl).properly_bilinear {
            t.wide_properly_bilinear = 1;
        }
    }
    if ball {
        t.ball_checked = 1;
        match linpoly::ball_trichotomy(k, g) {
            Ok(p) => {
                let key = format!("{:?}", p.ball_case).to_lowercase();
                t.ball_cases.insert(key, 1);
                if !p.holds() {
                    t.ball_exceptions.push(g.iter().map(|e| e.0).collect());
                }
            }
            Err(_) => t.ball_exceptions.push(g.iter().map(|e| e.0).collect()),
        }
    }
    t
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn report_tally(r: &mut SuiteReport, field: &Field, t: &Tally, full: bool) {
    let q = field.q();
    let empty: Vec<Vec<u32>> = Vec::new();
    let rule = match (field.n(), field.p()) {
        (1, _) => "wide ⇒ g linear (q prime)",
        (_, 2) if field.n() <= 3 || crate::gf::is_prime(field.n() as u64) => "wide ⇒ g linear (q = 4 or 2^prime)",
        _ => "wide ⇒ g linear, Kantor–Knuth or Holder–Megyesi",
    };
    r.check(format!("q={q}: {rule}; exceptions"), &empty, &t.wide_exceptions);
    r.check(format!("q={q}: wide and properly bilinear"), 0, t.wide_properly_bilinear);
    r.check(format!("q={q}: N + w_S(star point) > q + 1"), 0, t.direction_bound_violations);
    r.check(format!("q={q}: width = carrier lines through the star point, mismatches"), 0, t.width_mismatches);
    if full {
        r.check(format!("q={q}: trichotomy exceptions"), &empty, &t.ball_exceptions);
        r.check(format!("q={q}: trichotomy checked"), t.total, t.ball_checked);
    }
    r.note(format!(
        "q={q}: {} maps, {} wide, wide by step {:?}, {} proper star, N + w_S(Q) = q + 1 in {}",
        t.total, t.wide, t.wide_by_step, t.proper, t.direction_bound_equalities
    ));
    if !t.ball_cases.is_empty() {
        r.note(format!("q={q}: trichotomy cases {:?}", t.ball_cases));
    }
}

/// Surveys star flocks in normal form over GF(q).
pub fn survey_star_flocks(q: u32, mode: SurveyMode) -> Result<SuiteReport> {
    timed(|| {
        let field = Field::of_order(q as u64)?;
        let full = match mode {
            SurveyMode::Auto => q <= 9,
            SurveyMode::Full => true,
            SurveyMode::Linearized => false,
        };
        if full && q > 9 {
            return Err(Error::Unsupported { q, reason: "full permutation surveys stop at q = 9" });
        }
        if !full && q > 81 {
            return Err(Error::Unsupported { q, reason: "linearized surveys stop at q = 81" });
        }
        let plane = ProjectivePlane::new(&field);
        let mut r = SuiteReport::new(&format!("corollaries q={q}"));
        if full {
            let t = par_over_permutations(q, |g| observe(&plane, g, true), merge);
            r.check(format!("q={q}: permutations fixing 0"), factorial(q as u64 - 1), t.total);
            report_tally(&mut r, &field, &t, true);
            if q == 9 {
                let kk: u64 = t.wide_by_step.iter().filter(|(s, _)| **s == 1).map(|(_, v)| v).sum();
                r.check("q=9: wide nonlinear g are GF(3)-linear with N = 4", kk, {
                    t.nonlinear_profile.iter().filter(|((s, n, w), _)| *w && *s == 1 && *n == 4).map(|(_, v)| v).sum::<u64>()
                });
            }
        } else {
            let polys = linpoly::enumerate_linearized_perms(&field, 1, false)?;
            let t = polys
                .par_iter()
                .map(|lp| observe(&plane, &lp.to_table(&field), false))
                .reduce(Tally::default, merge);
            r.check(format!("q={q}: additive permutations"), additive_perm_count(&field), t.total);
            report_tally(&mut r, &field, &t, false);
            if q == 16 {
                let two_linear_wide = t.wide_by_step.get(&1).copied().unwrap_or(0);
                r.check("q=16: wide cones from nonlinear 2-linearized g", 0, two_linear_wide);
                let step2: Vec<(usize, bool)> =
                    t.nonlinear_profile.keys().filter(|(s, _, _)| *s == 2).map(|&(_, n, w)| (n, w)).collect();
                r.check("q=16: 4-linearized nonlinear g are Kantor–Knuth (N, wide)", vec![(5usize, true)], step2);
            }
            if field.n() == 3 && field.p() > 2 {
                let non_wide: u64 = t.nonlinear_profile.iter().filter(|((_, _, w), _)| !*w).map(|(_, v)| v).sum();
                r.check(format!("q={q}: nonlinear additive g with thin cones"), 0, non_wide);
                let p = field.p() as usize;
                let mut ns: Vec<usize> = t.nonlinear_profile.keys().map(|&(_, n, _)| n).collect();
                ns.sort_unstable();
                ns.dedup();
                r.check(format!("q={q}: direction counts of nonlinear g"), vec![p * p + 1, p * p + p + 1], ns);
                let part = monic_partition(&field)?;
                r.absorb(partition_report(&field, &part));
            }
        }
        Ok(r)
    })
}

/// `|GL(n, p)|`.
fn additive_perm_count(field: &Field) -> u64 {
    let (p, n) = (field.p() as u64, field.n());
    (0..n).map(|i| p.pow(n) - p.pow(i)).product()
}

/// Monic `p`-linearized permutations of GF(p^3), grouped by their shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonicPartition {
    pub total: usize,
    /// `t`.
    pub linear: usize,
    /// `t^p - a t`.
    pub kantor_knuth: usize,
    /// `t^(p²) - a t^p - c t` with `N = p² + p + 1`.
    pub kantor_knuth_equivalent: usize,
    /// `N = p² + 1`.
    pub holder_megyesi: usize,
    pub other: usize,
}

pub fn monic_partition(field: &Field) -> Result<MonicPartition> {
    if field.n() != 3 {
        return Err(Error::InvalidParameter("the partition is stated for q = p^3".into()));
    }
    let p = field.p() as usize;
    let polys = linpoly::enumerate_linearized_perms(field, 1, true)?;
    let mut part = MonicPartition {
        total: polys.len(),
        linear: 0,
        kantor_knuth: 0,
        kantor_knuth_equivalent: 0,
        holder_megyesi: 0,
        other: 0,
    };
    for lp in &polys {
        let lead = lp.coeffs().iter().rposition(|c| !c.is_zero()).expect("monic");
        let n = linpoly::direction_count(field, &lp.to_table(field)).n;
        match (lead, n) {
            (0, _) => part.linear += 1,
            (1, _) => part.kantor_knuth += 1,
            (2, n) if n == p * p + p + 1 => part.kantor_knuth_equivalent += 1,
            (2, n) if n == p * p + 1 => part.holder_megyesi += 1,
            _ => part.other += 1,
        }
    }
    Ok(part)
}

fn partition_report(field: &Field, part: &MonicPartition) -> SuiteReport {
    let p = field.p() as usize;
    let q = field.q();
    let mut r = SuiteReport::new(&format!("monic partition q={q}"));
    let kk = p * p * p - p * p - p - 1;
    r.check("linear", 1, part.linear);
    r.check("t^p - a t", kk, part.kantor_knuth);
    r.check("t^(p²) - a t^p - c t equivalent to Kantor–Knuth", kk * kk, part.kantor_knuth_equivalent);
    r.check("Holder–Megyesi type", (p * p + p + 1) * (p * p * p - p * p - 1), part.holder_megyesi);
    r.check("other", 0, part.other);
    let bm = linpoly::betti_mathieu_count(p as u64, 3).map(|v| v as usize).unwrap_or(0);
    r.check("total = Betti–Mathieu count", bm, part.total);
    r
}

pub fn counts_suite() -> Result<SuiteReport> {
    timed(|| {
        let mut r = SuiteReport::new("counts");
        for (q, e) in [(16u64, 2u32), (27, 1), (9, 1), (16, 4), (64, 2), (64, 3)] {
            let k = Field::of_order(q)?;
            let s = (k.p() as u64).pow(e);
            let kk = k.n() / e;
            let expected = linpoly::betti_mathieu_count(s, kk)?;
            let got = linpoly::enumerate_linearized_perms(&k, e, true)?;
            r.check(format!("GF({q}), e={e}: monic count = s^(k(k-1)/2) Π(s^i - 1)"), expected as u64, got.len() as u64);
            r.check_true(
                format!("GF({q}), e={e}: enumeration is sorted and monic"),
                got.windows(2).all(|w| base_q_key(&k, &w[0]) < base_q_key(&k, &w[1])) && got.iter().all(|lp| lp.is_monic()),
            );
        }
        for (s, k, v) in [(4u64, 2u32, 12u128), (3, 3, 432), (9, 2, 72), (5, 1, 1)] {
            r.check(format!("Betti–Mathieu count s={s}, k={k}"), v as u64, linpoly::betti_mathieu_count(s, k)? as u64);
        }
        let k27 = Field::of_order(27)?;
        r.absorb(partition_report(&k27, &monic_partition(&k27)?));
        Ok(r)
    })
}

fn base_q_key(field: &Field, lp: &LinearizedPoly) -> u64 {
    lp.coeffs().iter().rev().fold(0u64, |acc, c| acc * field.q() as u64 + c.0 as u64)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NobiSummary {
    pub q: u32,
    /// Functions `g` with `g(0) = 0`.
    pub functions: u64,
    pub wide: u64,
    pub wide_properly_bilinear: u64,
    /// Wide candidates and sampled others re-run through the general
    /// critical cone and width computation.
    pub rechecked: u64,
    pub width_mismatches: u64,
}

/// Over every `g` with `g(0) = 0`, counts wide cones of `F(t, g, 0)` and
/// those that are properly bilinear.
///
/// The carrier of a star-form flock is a union of punctured lines through
/// `(0,0,1)`, one per direction `(a:b)` with `a t + b g(t)` a permutation,
/// and the width of `k` such lines is `k`. Candidates found this way are
/// re-checked with the general routines, as is every 97th map.
pub fn nobi_survey(q: u32) -> Result<NobiSummary> {
    let field = Field::of_order(q as u64)?;
    if q > 8 {
        return Err(Error::Unsupported { q, reason: "the bilinear survey stops at q = 8" });
    }
    let plane = ProjectivePlane::new(&field);
    let qq = q as u64;
    let total = qq.pow(q - 1);
    let threshold = flock::wide_threshold(q);
    let k = &field;
    let summary = (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut g = vec![Elem::ZERO; q as usize];
            let mut r = idx;
            for slot in g.iter_mut().skip(1) {
                *slot = Elem((r % qq) as u32);
                r /= qq;
            }
            let mut lines = k.is_permutation(g.iter().copied()) as u32;
            for c in k.elements() {
                lines += k.is_permutation(k.elements().map(|t| k.add(t, k.mul(c, g[t.0 as usize])))) as u32;
            }
            let mut s = NobiSummary { q, functions: 1, ..NobiSummary::default() };
            let wide = lines >= threshold;
            if wide || idx % 97 == 0 {
                s.rechecked = 1;
                let fl = Flock::star_form(k, g).expect("valid");
                let carrier = flock::critical_cone(&fl);
                let class = flock::classify_cone_in(&plane, &carrier);
                if class.width != lines || class.is_wide() != wide {
                    s.width_mismatches = 1;
                }
                if wide {
                    s.wide = 1;
                    s.wide_properly_bilinear = flock::is_bilinear(&fl).properly_bilinear as u64;
                }
            }
            s
        })
        .reduce(
            || NobiSummary { q, ..NobiSummary::default() },
            |a, b| NobiSummary {
                q,
                functions: a.functions + b.functions,
                wide: a.wide + b.wide,
                wide_properly_bilinear: a.wide_properly_bilinear + b.wide_properly_bilinear,
                rechecked: a.rechecked + b.rechecked,
                width_mismatches: a.width_mismatches + b.width_mismatches,
            },
        );
    Ok(summary)
}

pub fn nobi_suite(qs: &[u32]) -> Result<SuiteReport> {
    timed(|| {
        let mut r = SuiteReport::new("nobi");
        for &q in qs {
            let s = nobi_survey(q)?;
            r.check(format!("q={q}: maps g with g(0) = 0"), (q as u64).pow(q - 1), s.functions);
            r.check(format!("q={q}: properly bilinear star flocks of wide cones"), 0, s.wide_properly_bilinear);
            r.check(format!("q={q}: fast width disagreements"), 0, s.width_mismatches);
            r.note(format!("q={q}: {} wide, {} rechecked", s.wide, s.rechecked));
        }
        Ok(r)
    })
}
