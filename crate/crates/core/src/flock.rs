//! Flocks of planes, their critical cones, and the linear / star / bilinear
//! taxonomy.
//!
//! A flock is given by coordinate functions `f, g, h` on GF(q); parameter
//! `t` names the plane `f(t) x0 + g(t) x1 + h(t) x2 - x3 = 0`, and `t = 0`
//! is the plane `x3 = 0`. Tables are indexed by element encoding.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, Line3, Plane3, Point2, Point3, PointSet2, ProjectivePlane};
use crate::gf::{Elem, Field, FieldSpec};
use crate::linalg;

/// Carrier points of a cone, as points `(a,b,c)` of the carrier plane
/// `x3 = 0`. The vertex `(0,0,0,1)` is never among them.
pub type Carrier = PointSet2;

/// The cone vertex `(0,0,0,1)`.
pub fn vertex(field: &Field) -> Point3 {
    Point3::new(field, [Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ONE]).expect("nonzero")
}

/// Lifts a carrier-plane point `(a,b,c)` to `(a,b,c,0)`.
pub fn lift(field: &Field, p: &Point2) -> Point3 {
    let [a, b, c] = *p.coords();
    Point3::new(field, [a, b, c, Elem::ZERO]).expect("nonzero")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flock {
    field: Field,
    f: Vec<Elem>,
    g: Vec<Elem>,
    h: Vec<Elem>,
}

/// On-disk form: `{"field":{..},"f":[..],"g":[..],"h":[..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlockFile {
    pub field: FieldSpec,
    pub f: Vec<u32>,
    pub g: Vec<u32>,
    pub h: Vec<u32>,
}

impl Flock {
    pub fn new(field: &Field, f: Vec<Elem>, g: Vec<Elem>, h: Vec<Elem>) -> Result<Flock> {
        let q = field.q();
        for table in [&f, &g, &h] {
            if table.len() != q as usize {
                return Err(Error::TableLength { got: table.len(), q });
            }
            if let Some(&v) = table.iter().find(|v| v.0 >= q) {
                return Err(Error::ElementOutOfRange { enc: v.0 as u64, q });
            }
        }
        if !(f[0].is_zero() && g[0].is_zero() && h[0].is_zero()) {
            return Err(Error::NonzeroAtOrigin);
        }
        let mut seen = BTreeMap::new();
        for t in 0..q as usize {
            if let Some(&s) = seen.get(&(f[t], g[t], h[t])) {
                return Err(Error::DuplicatePlane(s, t as u32));
            }
            seen.insert((f[t], g[t], h[t]), t as u32);
        }
        Ok(Flock { field: field.clone(), f, g, h })
    }

    /// Tabulates `t -> (f(t), g(t), h(t))`.
    pub fn from_fn(field: &Field, mut coords: impl FnMut(Elem) -> [Elem; 3]) -> Result<Flock> {
        let (mut f, mut g, mut h) = (Vec::new(), Vec::new(), Vec::new());
        for t in field.elements() {
            let [a, b, c] = coords(t);
            f.push(a);
            g.push(b);
            h.push(c);
        }
        Flock::new(field, f, g, h)
    }

    /// The flock `F(t, g(t), 0)`.
    pub fn star_form(field: &Field, g: Vec<Elem>) -> Result<Flock> {
        let q = field.q() as usize;
        Flock::new(field, field.elements().collect(), g, vec![Elem::ZERO; q])
    }

    /// Builds a flock from its plane set, each plane `[A,B,C,-1]` given as
    /// `(A,B,C)`. The zero triple (the plane `x3 = 0`) gets `t = 0`; the rest
    /// are assigned `t = 1, 2, ..` in lexicographic order.
    pub fn from_planes(field: &Field, triples: &[[Elem; 3]]) -> Result<Flock> {
        let mut sorted = triples.to_vec();
        sorted.sort();
        if sorted.first() != Some(&[Elem::ZERO; 3]) {
            return Err(Error::NonzeroAtOrigin);
        }
        let q = field.q() as usize;
        if sorted.len() != q {
            return Err(Error::TableLength { got: sorted.len(), q: field.q() });
        }
        Flock::new(
            field,
            sorted.iter().map(|v| v[0]).collect(),
            sorted.iter().map(|v| v[1]).collect(),
            sorted.iter().map(|v| v[2]).collect(),
        )
    }

    pub fn from_file(file: &FlockFile) -> Result<Flock> {
        let field = Field::from_spec(&file.field)?;
        let conv = |v: &[u32]| -> Result<Vec<Elem>> { v.iter().map(|&e| field.elem(e as u64)).collect() };
        Flock::new(&field, conv(&file.f)?, conv(&file.g)?, conv(&file.h)?)
    }

    pub fn to_file(&self) -> FlockFile {
        let enc = |v: &[Elem]| v.iter().map(|e| e.0).collect();
        FlockFile { field: self.field.spec(), f: enc(&self.f), g: enc(&self.g), h: enc(&self.h) }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn f(&self) -> &[Elem] {
        &self.f
    }

    pub fn g(&self) -> &[Elem] {
        &self.g
    }

    pub fn h(&self) -> &[Elem] {
        &self.h
    }

    /// `(f(t), g(t), h(t))` for every parameter, in parameter order.
    pub fn triples(&self) -> Vec<[Elem; 3]> {
        (0..self.f.len()).map(|t| [self.f[t], self.g[t], self.h[t]]).collect()
    }

    /// The plane set as sorted triples; flock identity for set-level
    /// comparisons.
    pub fn plane_set(&self) -> Vec<[Elem; 3]> {
        let mut v = self.triples();
        v.sort();
        v
    }

    /// Planes as `[A, B, C, -1]`, sorted lexicographically.
    pub fn planes(&self) -> Vec<[Elem; 4]> {
        let minus_one = self.field.neg(Elem::ONE);
        self.plane_set().into_iter().map(|[a, b, c]| [a, b, c, minus_one]).collect()
    }

    pub fn plane(&self, t: Elem) -> Plane3 {
        let i = t.0 as usize;
        Plane3::new(&self.field, [self.f[i], self.g[i], self.h[i], self.field.neg(Elem::ONE)])
            .expect("nonzero")
    }

    pub fn same_planes(&self, other: &Flock) -> bool {
        self.field == other.field && self.plane_set() == other.plane_set()
    }

    /// Whether the flock has the shape `F(t, g(t), 0)`.
    pub fn is_star_form(&self) -> bool {
        self.f.iter().enumerate().all(|(i, e)| e.0 == i as u32) && self.h.iter().all(|e| e.is_zero())
    }
}

/// Whether `t -> a f(t) + b g(t) + c h(t)` is a permutation of GF(q).
pub fn permutation_test(fl: &Flock, a: Elem, b: Elem, c: Elem) -> bool {
    let k = &fl.field;
    k.is_permutation(
        (0..fl.f.len()).map(|t| k.add(k.add(k.mul(a, fl.f[t]), k.mul(b, fl.g[t])), k.mul(c, fl.h[t]))),
    )
}

/// The carrier of the critical cone: every carrier-plane point passing the
/// permutation test.
pub fn critical_cone(fl: &Flock) -> Carrier {
    let pts = geom::points::<3>(&fl.field);
    let test = |p: &&Point2| {
        let [a, b, c] = *p.coords();
        permutation_test(fl, a, b, c)
    };
    if pts.len() > 1024 {
        pts.par_iter().filter(test).copied().collect::<Vec<_>>().into_iter().collect()
    } else {
        pts.iter().filter(test).copied().collect()
    }
}

/// Whether `fl` is a flock of the cone with carrier `s`.
pub fn is_flock_of(fl: &Flock, s: &PointSet2) -> bool {
    s.iter().all(|p| {
        let [a, b, c] = *p.coords();
        permutation_test(fl, a, b, c)
    })
}

/// `w_S(P)` for every point of the plane, indexed like
/// [`ProjectivePlane::points`], and the minimum `W_S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Width {
    pub min: u32,
    pub per_point: Vec<u32>,
}

pub fn width_in(plane: &ProjectivePlane, s: &PointSet2) -> Width {
    width_of_mask(plane, &plane.mask(s), !s.is_empty())
}

pub(crate) fn width_of_mask(plane: &ProjectivePlane, mask: &[bool], nonempty: bool) -> Width {
    if !nonempty {
        return Width { min: 0, per_point: vec![0; mask.len()] };
    }
    let meets: Vec<bool> = plane.line_counts(mask).into_iter().map(|c| c > 0).collect();
    let per_point: Vec<u32> = (0..mask.len())
        .map(|p| plane.lines_through(p).iter().filter(|&&l| meets[l as usize]).count() as u32)
        .collect();
    let min = per_point.iter().copied().min().unwrap_or(0);
    Width { min, per_point }
}

pub fn width(field: &Field, s: &PointSet2) -> Width {
    width_in(&ProjectivePlane::new(field), s)
}

/// Smallest width of a wide cone, `floor((q+2)/2)`.
pub fn wide_threshold(q: u32) -> u32 {
    (q + 2) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeTag {
    Empty,
    Flat,
    Thin,
    Wide,
    Thick,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConeClass {
    pub tag: ConeTag,
    pub width: u32,
    pub size: usize,
}

impl ConeClass {
    pub fn from_width(q: u32, width: u32, size: usize) -> ConeClass {
        let tag = if size == 0 {
            ConeTag::Empty
        } else if width == 1 {
            ConeTag::Flat
        } else if width < wide_threshold(q) {
            ConeTag::Thin
        } else if size > q as usize {
            ConeTag::Thick
        } else {
            ConeTag::Wide
        };
        ConeClass { tag, width, size }
    }

    /// Thin in the broad sense (flat included).
    pub fn is_thin(&self) -> bool {
        matches!(self.tag, ConeTag::Flat | ConeTag::Thin)
    }

    /// Wide in the broad sense (thick included).
    pub fn is_wide(&self) -> bool {
        matches!(self.tag, ConeTag::Wide | ConeTag::Thick)
    }
}

pub fn classify_cone_in(plane: &ProjectivePlane, s: &PointSet2) -> ConeClass {
    let w = width_in(plane, s);
    ConeClass::from_width(plane.field().q(), w.min, s.len())
}

pub fn classify_cone(field: &Field, s: &PointSet2) -> ConeClass {
    classify_cone_in(&ProjectivePlane::new(field), s)
}

fn value_rank(fl: &Flock) -> usize {
    let rows = vec![fl.f.clone(), fl.g.clone(), fl.h.clone()];
    linalg::rank(&fl.field, &rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearAnalysis {
    pub linear: bool,
    /// The line common to all planes.
    pub axis: Option<Line3>,
}

/// A flock is linear iff its coordinate functions are pairwise scalar
/// multiples, i.e. the 3 x q value matrix has rank 1.
pub fn is_linear(fl: &Flock) -> LinearAnalysis {
    let linear = value_rank(fl) <= 1;
    let axis = linear.then(|| {
        let rows: Vec<Vec<Elem>> = fl.planes().iter().map(|p| p.to_vec()).collect();
        let ns = linalg::nullspace(&fl.field, &rows, 4);
        Line3::from_basis(
            &fl.field,
            [ns[0].clone().try_into().expect("4"), ns[1].clone().try_into().expect("4")],
        )
        .expect("rank-one flock planes share a line")
    });
    LinearAnalysis { linear, axis }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarAnalysis {
    pub is_star: bool,
    pub is_proper: bool,
    /// Rank of the 3 x q matrix of coordinate-function values.
    pub rank: usize,
    /// All points common to every plane, in lexicographic order.
    pub star_points: Vec<Point3>,
}

pub fn star_analysis(fl: &Flock) -> StarAnalysis {
    let k = &fl.field;
    let rows: Vec<Vec<Elem>> = fl.triples().into_iter().map(|v| v.to_vec()).collect();
    let ns = linalg::nullspace(k, &rows, 3);
    let rank = 3 - ns.len();
    let lift_vec = |v: &[Elem]| Point3::new(k, [v[0], v[1], v[2], Elem::ZERO]).expect("nonzero");
    let star_points = match ns.len() {
        0 => Vec::new(),
        1 => vec![lift_vec(&ns[0])],
        2 => {
            let b = [lift_vec(&ns[0]), lift_vec(&ns[1])];
            Line3::through(k, &b[0], &b[1]).expect("independent").points(k)
        }
        _ => geom::points::<3>(k).iter().map(|p| lift(k, p)).collect(),
    };
    StarAnalysis { is_star: rank <= 2, is_proper: rank == 2, rank, star_points }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BilinearAnalysis {
    /// Every plane contains one of two distinct lines (true for linear
    /// flocks, where one line already suffices).
    pub bilinear: bool,
    /// Bilinear only because the flock is linear.
    pub degenerate: bool,
    pub properly_bilinear: bool,
    pub carrier_lines: Vec<Line3>,
    /// Common point of the two carrier lines, when they meet.
    pub meet_point: Option<Point3>,
}

struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn union_count(&self, other: &Bits) -> usize {
        self.0.iter().zip(&other.0).map(|(a, b)| (a | b).count_ones() as usize).sum()
    }
    fn first_unset(&self, n: usize) -> Option<usize> {
        (0..n).find(|&i| self.0[i / 64] >> (i % 64) & 1 == 0)
    }
}

pub fn is_bilinear(fl: &Flock) -> BilinearAnalysis {
    let k = &fl.field;
    let q = k.q() as usize;
    let lin = is_linear(fl);
    if let Some(axis) = lin.axis {
        return BilinearAnalysis {
            bilinear: true,
            degenerate: true,
            properly_bilinear: false,
            carrier_lines: vec![axis],
            meet_point: None,
        };
    }
    let planes: Vec<Plane3> = fl.plane_set().iter().map(|&[a, b, c]| {
        Plane3::new(k, [a, b, c, k.neg(Elem::ONE)]).expect("nonzero")
    }).collect();

    // Any line lying in two or more planes is the meet of some pair.
    let mut cover: BTreeMap<Line3, Bits> = BTreeMap::new();
    for i in 0..q {
        for j in i + 1..q {
            let l = Line3::meet(k, &planes[i], &planes[j]).expect("distinct planes");
            let bits = cover.entry(l).or_insert_with(|| Bits::new(q));
            bits.set(i);
            bits.set(j);
        }
    }
    let mut cands: Vec<(Line3, Bits)> = cover.into_iter().collect();
    cands.sort_by(|a, b| b.1.count().cmp(&a.1.count()).then(a.0.cmp(&b.0)));

    let found = 'search: {
        for (i, (l1, b1)) in cands.iter().enumerate() {
            let c1 = b1.count();
            if c1 + cands.get(i + 1).map_or(0, |c| c.1.count()) < q && c1 + 1 < q {
                break;
            }
            if c1 + 1 == q {
                // The one remaining plane contains many lines; take the one
                // through its meet with `l1` and a further point of it.
                let rest = &planes[b1.first_unset(q).expect("one plane uncovered")];
                let x = l1.meet_plane(k, rest).expect("plane does not contain l1");
                let y = geom::points::<4>(k)
                    .into_iter()
                    .find(|p| geom::incident(k, p, rest) && *p != x)
                    .expect("a plane has more than one point");
                break 'search Some((*l1, Line3::through(k, &x, &y).expect("distinct")));
            }
            for (l2, b2) in &cands[i + 1..] {
                if c1 + b2.count() < q {
                    break;
                }
                if b1.union_count(b2) == q {
                    break 'search Some((*l1, *l2));
                }
            }
        }
        None
    };

    match found {
        Some((l1, l2)) => BilinearAnalysis {
            bilinear: true,
            degenerate: false,
            properly_bilinear: true,
            meet_point: l1.intersection(k, &l2),
            carrier_lines: vec![l1, l2],
        },
        None => BilinearAnalysis {
            bilinear: false,
            degenerate: false,
            properly_bilinear: false,
            carrier_lines: Vec::new(),
            meet_point: None,
        },
    }
}

/// A line avoiding the vertex and the cone, with the linear flock it
/// carries.
#[derive(Clone, Debug)]
pub struct LinearFlockAxis {
    pub axis: Line3,
    pub flock: Flock,
}

/// All lines `L` of PG(3,q) with `V` not on `L` and `L` disjoint from the
/// cone over `s`, each with the linear flock formed by the planes through `L`
/// other than the one through `V`.
///
/// The returned flock is recoordinatized by `x3 -> x3 - (A x0 + B x1 + C x2)`
/// for its least plane `[A,B,C,-1]`; this fixes `V` and every generator, so
/// the cone is unchanged, and moves that plane to `x3 = 0`.
pub fn linear_flock_axes(field: &Field, s: &PointSet2) -> Vec<LinearFlockAxis> {
    let k = field;
    let plane = ProjectivePlane::new(k);
    let counts = plane.line_counts(&plane.mask(s));
    let external: Vec<&geom::Line2> =
        plane.lines().iter().zip(&counts).filter(|(_, &c)| c == 0).map(|(l, _)| l).collect();

    let mut out = Vec::new();
    for ell in external {
        let pts = ell.points(k);
        let (p1, p2) = (pts[0].coords(), pts[1].coords());
        for u in k.elements() {
            for v in k.elements() {
                let rows = [[p1[0], p1[1], p1[2], u], [p2[0], p2[1], p2[2], v]];
                let axis = Line3::from_basis(k, rows).expect("independent");
                out.push(LinearFlockAxis { axis, flock: pencil_flock(k, &axis) });
            }
        }
    }
    out.sort_by_key(|a| a.axis);
    out
}

fn pencil_flock(k: &Field, axis: &Line3) -> Flock {
    let rows: Vec<Vec<Elem>> = axis.rows().iter().map(|r| r.to_vec()).collect();
    let basis = linalg::nullspace(k, &rows, 4);
    let mut triples: Vec<[Elem; 3]> = std::iter::once(basis[0].clone())
        .chain(k.elements().map(|s| {
            basis[1].iter().zip(&basis[0]).map(|(&b, &a)| k.add(b, k.mul(s, a))).collect()
        }))
        .filter(|v| !v[3].is_zero())
        .map(|v| {
            // scale to last coordinate -1
            let scale = k.neg(k.inv(v[3]));
            [k.mul(v[0], scale), k.mul(v[1], scale), k.mul(v[2], scale)]
        })
        .collect();
    triples.sort();
    let base = triples[0];
    let shifted: Vec<[Elem; 3]> =
        triples.iter().map(|v| [k.sub(v[0], base[0]), k.sub(v[1], base[1]), k.sub(v[2], base[2])]).collect();
    Flock::from_planes(k, &shifted).expect("pencil planes are distinct")
}
