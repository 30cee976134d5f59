//! Blocking sets of PG(2,q): the dual picture of a star flock, the Rédei
//! set it determines, and the projective triangle and triad.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flock::{self, Flock};
use crate::geom::{self, Line2, Line3, Point2, Point3, PointSet2, ProjectivePlane};
use crate::gf::{Elem, Field};
use crate::linpoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockingSet {
    pub points: PointSet2,
    pub redei_line: Option<Line2>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingReport {
    pub blocking: bool,
    pub proper: bool,
    pub size: usize,
    /// Largest number of collinear points.
    pub max_collinear: u32,
    /// Least line attaining `max_collinear`.
    pub max_line: Option<Line2>,
    /// Blocking of size `q + max_collinear`.
    pub is_redei: bool,
}

pub fn is_blocking_set_in(plane: &ProjectivePlane, s: &PointSet2) -> BlockingReport {
    let q = plane.field().q();
    let counts = plane.line_counts(&plane.mask(s));
    let blocking = counts.iter().all(|&c| c > 0);
    let proper = blocking && counts.iter().all(|&c| c < q + 1);
    let max_collinear = counts.iter().copied().max().unwrap_or(0);
    let max_line = (max_collinear > 0)
        .then(|| plane.lines()[counts.iter().position(|&c| c == max_collinear).expect("max")]);
    BlockingReport {
        blocking,
        proper,
        size: s.len(),
        max_collinear,
        max_line,
        is_redei: blocking && s.len() == (q + max_collinear) as usize,
    }
}

pub fn is_blocking_set(field: &Field, s: &PointSet2) -> BlockingReport {
    is_blocking_set_in(&ProjectivePlane::new(field), s)
}

/// The line `z = 0` of the affine frame used for directions.
pub fn line_at_infinity(field: &Field) -> Line2 {
    Line2::new(field, [Elem::ZERO, Elem::ZERO, Elem::ONE]).expect("nonzero")
}

fn direction_point(field: &Field, m: Elem) -> Point2 {
    Point2::new(field, [Elem::ONE, m, Elem::ZERO]).expect("nonzero")
}

/// Points `(1, m, 0)` where secants of `{(t, g(t), 1)}` meet `z = 0`, with
/// their number `N`.
pub fn directions_of(field: &Field, g: &[Elem]) -> (Vec<Point2>, usize) {
    let d = linpoly::direction_count(field, g);
    (d.slopes.iter().map(|&m| direction_point(field, m)).collect(), d.n)
}

/// The dual of a star flock `F(t, g(t), 0)` and its cone.
///
/// Planes `[t, g(t), 0, -1]` dualize to the points `(t, g(t), 0, 1)` of the
/// plane `Z = 0`; with `Z` suppressed these are `(t, g(t), 1)` in PG(2,q)
/// and `m` becomes `z = 0`. A generator `V P`, `P = (a,b,c,0)`, dualizes to
/// a line of `W = 0` meeting `m` in `(b, -a, 0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualScene {
    pub d_f: Vec<Point2>,
    /// Duals of the generator lines, in `W = 0`.
    pub d_g: Vec<Line3>,
    pub m: Line2,
    /// Traces of `d_g` on `m`.
    pub d_g_trace: PointSet2,
    pub directions: Vec<Point2>,
    #[serde(rename = "N")]
    pub n: usize,
    /// No direction is a trace point.
    pub disjoint: bool,
}

pub fn dual_scene(fl: &Flock, s: &PointSet2) -> Result<DualScene> {
    if !fl.is_star_form() {
        return Err(Error::NotNormalForm);
    }
    let k = fl.field();
    let d_f: Vec<Point2> = fl
        .triples()
        .iter()
        .map(|&[t, g, _]| {
            let plane = geom::Plane3::new(k, [t, g, Elem::ZERO, k.neg(Elem::ONE)]).expect("nonzero");
            let [x, y, _, w] = *geom::undualize(k, &plane).coords();
            Point2::new(k, [x, y, w]).expect("affine")
        })
        .collect();
    let v = flock::vertex(k);
    let d_g: Vec<Line3> = s
        .iter()
        .map(|p| {
            let (a, b) = (geom::dualize(k, &v), geom::dualize(k, &flock::lift(k, p)));
            Line3::meet(k, &a, &b).expect("distinct points")
        })
        .collect();
    let d_g_trace: PointSet2 = s
        .iter()
        .filter_map(|p| {
            let [a, b, _] = *p.coords();
            Point2::new(k, [b, k.neg(a), Elem::ZERO]).ok()
        })
        .collect();
    let (directions, n) = directions_of(k, fl.g());
    let disjoint = directions.iter().all(|d| !d_g_trace.contains(d));
    Ok(DualScene { d_f, d_g, m: line_at_infinity(k), d_g_trace, directions, n, disjoint })
}

/// `D_F ∪ M` for a proper star flock `F(t, g(t), 0)`, with `z = 0` as its
/// Rédei line.
pub fn redei_from_star_flock(fl: &Flock) -> Result<BlockingSet> {
    if !fl.is_star_form() {
        return Err(Error::NotNormalForm);
    }
    if !flock::star_analysis(fl).is_proper {
        return Err(Error::ImproperStar);
    }
    let k = fl.field();
    let (dirs, _) = directions_of(k, fl.g());
    let points: PointSet2 = fl
        .field()
        .elements()
        .map(|t| Point2::new(k, [t, fl.g()[t.0 as usize], Elem::ONE]).expect("affine"))
        .chain(dirs)
        .collect();
    Ok(BlockingSet { points, redei_line: Some(line_at_infinity(k)) })
}

/// A blocking set built from a few distinguished lines, with the check of
/// its closure property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub set: BlockingSet,
    pub lines: Vec<Line2>,
    /// Vertices of the triangle, or the common point of the triad.
    pub special_points: Vec<Point2>,
    pub points_per_line: Vec<usize>,
    /// Every point of the set lies on one of the lines.
    pub covered: bool,
    /// For non-special points `P`, `R` on different lines, `PR` meets the
    /// remaining line in a point of the set.
    pub closure: bool,
}

fn configuration(field: &Field, points: PointSet2, lines: Vec<Line2>, special: Vec<Point2>) -> Configuration {
    let on = |p: &Point2, l: &Line2| geom::incident(field, p, l);
    let points_per_line = lines.iter().map(|l| points.iter().filter(|p| on(p, l)).count()).collect();
    let covered = points.iter().all(|p| lines.iter().any(|l| on(p, l)));
    let ordinary: Vec<(usize, Point2)> = points
        .iter()
        .filter(|p| !special.contains(p))
        .filter_map(|p| lines.iter().position(|l| on(p, l)).map(|i| (i, *p)))
        .collect();
    let mut closure = true;
    'outer: for (i, (li, p)) in ordinary.iter().enumerate() {
        for (lj, r) in &ordinary[i + 1..] {
            if li == lj {
                continue;
            }
            let third = &lines[3 - li - lj];
            let join = Line2::through(field, p, r).expect("distinct");
            let x = Point2::meet(field, &join, third).expect("distinct lines");
            if !points.contains(&x) {
                closure = false;
                break 'outer;
            }
        }
    }
    let redei_line = Some(line_at_infinity(field));
    Configuration { set: BlockingSet { points, redei_line }, lines, special_points: special, points_per_line, covered, closure }
}

/// Affine points `(x, x^((q+1)/2), 1)` with `(1, (1+z)/(1-z), 0)` for
/// non-squares `z` and `(1, ±1, 0)`. The sides are `y = x`, `y = -x` and
/// `z = 0`.
pub fn projective_triangle(field: &Field) -> Result<Configuration> {
    let q = field.q();
    if q.is_multiple_of(2) {
        return Err(Error::Unsupported { q, reason: "the projective triangle needs odd q" });
    }
    let k = field;
    let one = Elem::ONE;
    let minus = k.neg(one);
    let mut points: PointSet2 = k
        .elements()
        .map(|x| Point2::new(k, [x, k.pow(x, (q as u64).div_ceil(2)), one]).expect("affine"))
        .collect();
    for z in k.nonzero().filter(|&z| !k.is_square(z)) {
        points.insert(direction_point(k, k.div(k.add(one, z), k.sub(one, z))));
    }
    points.insert(direction_point(k, one));
    points.insert(direction_point(k, minus));
    let line = |c: [Elem; 3]| Line2::new(k, c).expect("nonzero");
    let lines = vec![line([one, minus, Elem::ZERO]), line([one, one, Elem::ZERO]), line_at_infinity(k)];
    let vertices = vec![
        Point2::new(k, [Elem::ZERO, Elem::ZERO, one]).expect("nonzero"),
        direction_point(k, one),
        direction_point(k, minus),
    ];
    Ok(configuration(k, points, lines, vertices))
}

/// Affine points `(x, tr(x), 1)` with `(1, 1/a, 0)` for `tr(a) = 1` and
/// `(1, 0, 0)`, on the lines `y = 0`, `y = z`, `z = 0` through `(1, 0, 0)`.
pub fn projective_triad(field: &Field) -> Result<Configuration> {
    let q = field.q();
    if field.p() != 2 {
        return Err(Error::Unsupported { q, reason: "the projective triad needs even q" });
    }
    let k = field;
    let one = Elem::ONE;
    let mut points: PointSet2 =
        k.elements().map(|x| Point2::new(k, [x, k.abs_trace(x), one]).expect("affine")).collect();
    for a in k.nonzero().filter(|&a| k.abs_trace(a) == one) {
        points.insert(direction_point(k, k.inv(a)));
    }
    let center = direction_point(k, Elem::ZERO);
    points.insert(center);
    let line = |c: [Elem; 3]| Line2::new(k, c).expect("nonzero");
    let lines = vec![
        line([Elem::ZERO, one, Elem::ZERO]),
        line([Elem::ZERO, one, one]),
        line_at_infinity(k),
    ];
    Ok(configuration(k, points, lines, vec![center]))
}

/// Whether the three lines share a point.
pub fn concurrent(field: &Field, lines: &[Line2]) -> bool {
    match Point2::meet(field, &lines[0], &lines[1]) {
        Ok(p) => lines[2..].iter().all(|l| geom::incident(field, &p, l)),
        Err(_) => true,
    }
}

/// Lifts a point of the plane `Z = 0` back to PG(3,q) as `(x, y, 0, w)`.
pub fn lift_dual(field: &Field, p: &Point2) -> Point3 {
    let [x, y, w] = *p.coords();
    Point3::new(field, [x, y, Elem::ZERO, w]).expect("nonzero")
}
