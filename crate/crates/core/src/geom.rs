//! Points, lines and planes of PG(2,q) and PG(3,q).
//!
//! Points and hyperplanes are stored normalized (first nonzero coordinate
//! equal to 1), lines of PG(3,q) as 2x4 reduced row-echelon matrices, so that
//! equality of subspaces is equality of representations. Enumerations are in
//! lexicographic order of the normalized encodings.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg;

fn normalize<const D: usize>(field: &Field, mut v: [Elem; D]) -> Option<[Elem; D]> {
    let lead = *v.iter().find(|x| !x.is_zero())?;
    if lead != Elem::ONE {
        let inv = field.inv(lead);
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
    }
    Some(v)
}

fn to_array<const D: usize>(field: &Field, encs: &[u32]) -> Result<[Elem; D]> {
    if encs.len() != D {
        return Err(Error::Dimension { expected: D, got: encs.len() });
    }
    let mut out = [Elem::ZERO; D];
    for (slot, &e) in out.iter_mut().zip(encs) {
        *slot = field.elem(e as u64)?;
    }
    Ok(out)
}

fn serialize_coords<S: Serializer>(coords: &[Elem], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(coords.iter().map(|e| e.0))
}

fn deserialize_coords<'de, De: Deserializer<'de>, const D: usize>(
    d: De,
) -> std::result::Result<[Elem; D], De::Error> {
    let v: Vec<u32> = Vec::deserialize(d)?;
    let arr: [u32; D] = v
        .try_into()
        .map_err(|v: Vec<u32>| De::Error::custom(format!("expected {D} coordinates, got {}", v.len())))?;
    Ok(arr.map(Elem))
}

macro_rules! projective_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name<const D: usize>([Elem; D]);

        impl<const D: usize> $name<D> {
            /// Normalizes `coords`; fails on the zero vector.
            pub fn new(field: &Field, coords: [Elem; D]) -> Result<Self> {
                normalize(field, coords).map(Self).ok_or(Error::ZeroVector)
            }

            pub fn from_encodings(field: &Field, encs: &[u32]) -> Result<Self> {
                Self::new(field, to_array(field, encs)?)
            }

            pub fn coords(&self) -> &[Elem; D] {
                &self.0
            }

            pub fn encodings(&self) -> [u32; D] {
                self.0.map(|e| e.0)
            }
        }

        impl<const D: usize> fmt::Debug for $name<D> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}{:?}", stringify!($name), self.encodings())
            }
        }

        impl<const D: usize> Serialize for $name<D> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_coords(&self.0, s)
            }
        }

        impl<'de, const D: usize> Deserialize<'de> for $name<D> {
            fn deserialize<De: Deserializer<'de>>(d: De) -> std::result::Result<Self, De::Error> {
                deserialize_coords::<De, D>(d).map(Self)
            }
        }
    };
}

projective_type!(
    /// A point of PG(D-1, q) in homogeneous coordinates.
    Point
);
projective_type!(
    /// A hyperplane of PG(D-1, q): the points `x` with `coeffs . x = 0`.
    Hyperplane
);

pub type Point2 = Point<3>;
pub type Point3 = Point<4>;
/// A line of PG(2,q).
pub type Line2 = Hyperplane<3>;
/// A plane of PG(3,q).
pub type Plane3 = Hyperplane<4>;

pub fn incident<const D: usize>(field: &Field, point: &Point<D>, hyper: &Hyperplane<D>) -> bool {
    linalg::dot(field, &point.0, &hyper.0).is_zero()
}

fn cross(field: &Field, a: &[Elem; 3], b: &[Elem; 3]) -> [Elem; 3] {
    let m = |x, y| field.mul(x, y);
    [
        field.sub(m(a[1], b[2]), m(a[2], b[1])),
        field.sub(m(a[2], b[0]), m(a[0], b[2])),
        field.sub(m(a[0], b[1]), m(a[1], b[0])),
    ]
}

impl Line2 {
    /// The line joining two distinct points.
    pub fn through(field: &Field, a: &Point2, b: &Point2) -> Result<Line2> {
        Line2::new(field, cross(field, &a.0, &b.0)).map_err(|_| Error::Degenerate("points coincide"))
    }

    /// Points on the line, in lexicographic order.
    pub fn points(&self, field: &Field) -> Vec<Point2> {
        let basis = linalg::nullspace(field, &[self.0.to_vec()], 3);
        let mut pts = span_points::<3>(field, &basis);
        pts.sort();
        pts
    }
}

impl Point2 {
    /// Intersection of two distinct lines of PG(2,q).
    pub fn meet(field: &Field, a: &Line2, b: &Line2) -> Result<Point2> {
        Point2::new(field, cross(field, &a.0, &b.0)).map_err(|_| Error::Degenerate("lines coincide"))
    }
}

/// All projective points of the row space spanned by a 2-row basis.
fn span_points<const D: usize>(field: &Field, basis: &[Vec<Elem>]) -> Vec<Point<D>> {
    debug_assert_eq!(basis.len(), 2);
    let to_arr = |v: Vec<Elem>| -> [Elem; D] { v.try_into().expect("dimension") };
    let mut out = vec![Point::new(field, to_arr(basis[0].clone())).expect("basis row")];
    for s in field.elements() {
        let v: Vec<Elem> = basis[1]
            .iter()
            .zip(&basis[0])
            .map(|(&b, &a)| field.add(b, field.mul(s, a)))
            .collect();
        out.push(Point::new(field, to_arr(v)).expect("independent basis"));
    }
    out
}

/// A line of PG(3,q), held as the reduced row-echelon form of any two of
/// its points.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line3 {
    rows: [[Elem; 4]; 2],
}

impl fmt::Debug for Line3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line3{:?}", self.rows.map(|r| r.map(|e| e.0)))
    }
}

impl Serialize for Line3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.rows.iter().map(|r| r.map(|e| e.0)))
    }
}

impl Line3 {
    fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Result<Line3> {
        let mut m = rows;
        linalg::rref(field, &mut m);
        if m.len() != 2 {
            return Err(Error::Degenerate("rows do not span a line"));
        }
        let arr = |v: &Vec<Elem>| -> [Elem; 4] { v.clone().try_into().expect("4 columns") };
        Ok(Line3 { rows: [arr(&m[0]), arr(&m[1])] })
    }

    /// The line joining two distinct points.
    pub fn through(field: &Field, a: &Point3, b: &Point3) -> Result<Line3> {
        Line3::from_rows(field, vec![a.0.to_vec(), b.0.to_vec()])
            .map_err(|_| Error::Degenerate("points coincide"))
    }

    /// Intersection of two distinct planes.
    pub fn meet(field: &Field, a: &Plane3, b: &Plane3) -> Result<Line3> {
        let ns = linalg::nullspace(field, &[a.0.to_vec(), b.0.to_vec()], 4);
        if ns.len() != 2 {
            return Err(Error::Degenerate("planes coincide"));
        }
        Line3::from_rows(field, ns)
    }

    /// Builds a line from an explicit 2x4 basis.
    pub fn from_basis(field: &Field, rows: [[Elem; 4]; 2]) -> Result<Line3> {
        Line3::from_rows(field, rows.iter().map(|r| r.to_vec()).collect())
    }

    pub fn rows(&self) -> &[[Elem; 4]; 2] {
        &self.rows
    }

    pub fn contains(&self, field: &Field, p: &Point3) -> bool {
        let m = vec![self.rows[0].to_vec(), self.rows[1].to_vec(), p.0.to_vec()];
        linalg::rank(field, &m) == 2
    }

    pub fn lies_in(&self, field: &Field, plane: &Plane3) -> bool {
        self.rows.iter().all(|r| linalg::dot(field, r, &plane.0).is_zero())
    }

    /// Points of the line, in lexicographic order.
    pub fn points(&self, field: &Field) -> Vec<Point3> {
        let basis: Vec<Vec<Elem>> = self.rows.iter().map(|r| r.to_vec()).collect();
        let mut pts = span_points::<4>(field, &basis);
        pts.sort();
        pts
    }

    /// The point where the line meets a plane not containing it.
    pub fn meet_plane(&self, field: &Field, plane: &Plane3) -> Result<Point3> {
        let [a, b] = &self.rows;
        let da = linalg::dot(field, a, &plane.0);
        let db = linalg::dot(field, b, &plane.0);
        if da.is_zero() && db.is_zero() {
            return Err(Error::Degenerate("line lies in the plane"));
        }
        let mut v = [Elem::ZERO; 4];
        for i in 0..4 {
            v[i] = field.sub(field.mul(db, a[i]), field.mul(da, b[i]));
        }
        Point3::new(field, v)
    }

    /// The plane spanned by the line and a point off it.
    pub fn join_point(&self, field: &Field, p: &Point3) -> Result<Plane3> {
        let rows = vec![self.rows[0].to_vec(), self.rows[1].to_vec(), p.0.to_vec()];
        let ns = linalg::nullspace(field, &rows, 4);
        if ns.len() != 1 {
            return Err(Error::Degenerate("point lies on the line"));
        }
        Plane3::new(field, ns[0].clone().try_into().expect("4 columns"))
    }

    /// The common point of two distinct coplanar lines, `None` if skew.
    pub fn intersection(&self, field: &Field, other: &Line3) -> Option<Point3> {
        let rows: Vec<Vec<Elem>> = self.rows.iter().chain(&other.rows).map(|r| r.to_vec()).collect();
        if linalg::rank(field, &rows) != 3 {
            return None;
        }
        // Any plane through `other` that misses `self` cuts it in the common point.
        let others = linalg::nullspace(field, &[other.rows[0].to_vec(), other.rows[1].to_vec()], 4);
        others
            .iter()
            .filter_map(|h| Plane3::new(field, h.clone().try_into().ok()?).ok())
            .find_map(|h| self.meet_plane(field, &h).ok())
    }
}

/// The duality `(x, y, z, w) -> [x, y, z, -w]`.
pub fn dualize(field: &Field, p: &Point3) -> Plane3 {
    let [x, y, z, w] = p.0;
    Plane3::new(field, [x, y, z, field.neg(w)]).expect("nonzero point")
}

/// Inverse of [`dualize`]: `[a, b, c, d] -> (a, b, c, -d)`.
pub fn undualize(field: &Field, h: &Plane3) -> Point3 {
    let [a, b, c, d] = h.0;
    Point3::new(field, [a, b, c, field.neg(d)]).expect("nonzero plane")
}

/// Lexicographic rank of a normalized vector among all normalized vectors of
/// the same length.
pub fn index_of(q: u32, coords: &[Elem]) -> usize {
    let d = coords.len();
    let k = coords.iter().position(|x| !x.is_zero()).expect("nonzero vector");
    let r = d - 1 - k;
    let q = q as usize;
    let offset: usize = (0..r).map(|s| q.pow(s as u32)).sum();
    offset + coords[k + 1..].iter().fold(0usize, |acc, e| acc * q + e.0 as usize)
}

/// Number of points of PG(D-1, q).
pub fn count<const D: usize>(q: u32) -> usize {
    (0..D).map(|s| (q as usize).pow(s as u32)).sum()
}

fn normalized_vectors<const D: usize>(field: &Field) -> Vec<[Elem; D]> {
    let q = field.q() as usize;
    let mut out = Vec::with_capacity(count::<D>(field.q()));
    for k in (0..D).rev() {
        let free = D - 1 - k;
        for v in 0..q.pow(free as u32) {
            let mut arr = [Elem::ZERO; D];
            arr[k] = Elem::ONE;
            let mut rest = v;
            for slot in (k + 1..D).rev() {
                arr[slot] = Elem((rest % q) as u32);
                rest /= q;
            }
            out.push(arr);
        }
    }
    out
}

/// All points of PG(D-1, q) in lexicographic order.
pub fn points<const D: usize>(field: &Field) -> Vec<Point<D>> {
    normalized_vectors::<D>(field).into_iter().map(Point).collect()
}

/// All hyperplanes of PG(D-1, q) in lexicographic order.
pub fn hyperplanes<const D: usize>(field: &Field) -> Vec<Hyperplane<D>> {
    normalized_vectors::<D>(field).into_iter().map(Hyperplane).collect()
}

/// All lines of PG(3,q), in lexicographic order of their echelon forms.
pub fn lines3(field: &Field) -> Vec<Line3> {
    let q = field.q() as usize;
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            // Free entries: row 0 after i except column j; row 1 after j.
            let free0: Vec<usize> = (i + 1..4).filter(|&c| c != j).collect();
            let slots: Vec<(usize, usize)> = free0
                .into_iter()
                .map(|c| (0, c))
                .chain((j + 1..4).map(|c| (1, c)))
                .collect();
            for v in 0..q.pow(slots.len() as u32) {
                let mut rows = [[Elem::ZERO; 4]; 2];
                rows[0][i] = Elem::ONE;
                rows[1][j] = Elem::ONE;
                let mut rest = v;
                for &(r, c) in slots.iter().rev() {
                    rows[r][c] = Elem((rest % q) as u32);
                    rest /= q;
                }
                out.push(Line3 { rows });
            }
        }
    }
    out.sort();
    out
}

/// A set of points of PG(2,q), kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PointSet2(Vec<Point2>);

impl<'de> Deserialize<'de> for PointSet2 {
    fn deserialize<De: serde::Deserializer<'de>>(d: De) -> std::result::Result<Self, De::Error> {
        Ok(Vec::<Point2>::deserialize(d)?.into_iter().collect())
    }
}

impl PointSet2 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.0.binary_search(p).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point2> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Point2] {
        &self.0
    }

    pub fn insert(&mut self, p: Point2) -> bool {
        match self.0.binary_search(&p) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, p);
                true
            }
        }
    }

    pub fn union(&self, other: &PointSet2) -> PointSet2 {
        self.iter().chain(other.iter()).copied().collect()
    }

    pub fn intersection(&self, other: &PointSet2) -> PointSet2 {
        self.iter().filter(|p| other.contains(p)).copied().collect()
    }

    pub fn symmetric_difference(&self, other: &PointSet2) -> PointSet2 {
        self.iter()
            .filter(|p| !other.contains(p))
            .chain(other.iter().filter(|p| !self.contains(p)))
            .copied()
            .collect()
    }

    pub fn is_subset(&self, other: &PointSet2) -> bool {
        self.iter().all(|p| other.contains(p))
    }
}

impl FromIterator<Point2> for PointSet2 {
    fn from_iter<I: IntoIterator<Item = Point2>>(iter: I) -> Self {
        let set: BTreeSet<Point2> = iter.into_iter().collect();
        PointSet2(set.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a PointSet2 {
    type Item = &'a Point2;
    type IntoIter = std::slice::Iter<'a, Point2>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// True iff no three points of `s` are collinear.
pub fn is_arc(field: &Field, s: &PointSet2) -> bool {
    let pts = s.as_slice();
    let mut lines = BTreeSet::new();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let l = Line2::through(field, a, b).expect("distinct points");
            if !lines.insert(l) {
                return false;
            }
        }
    }
    true
}

/// An arc of size q+2 in a plane of even order.
pub fn is_hyperoval(field: &Field, s: &PointSet2) -> bool {
    field.p() == 2 && s.len() == field.q() as usize + 2 && is_arc(field, s)
}

/// PG(2,q) with precomputed incidence, for repeated scans over one field.
#[derive(Clone, Debug)]
pub struct ProjectivePlane {
    field: Field,
    points: Vec<Point2>,
    lines: Vec<Line2>,
    points_on_line: Vec<Vec<u32>>,
    lines_through_point: Vec<Vec<u32>>,
}

impl ProjectivePlane {
    pub fn new(field: &Field) -> Self {
        let q = field.q();
        let points = points::<3>(field);
        let lines = hyperplanes::<3>(field);
        let points_on_line: Vec<Vec<u32>> = lines
            .iter()
            .map(|l| l.points(field).iter().map(|p| index_of(q, &p.0) as u32).collect())
            .collect();
        let mut lines_through_point = vec![Vec::with_capacity(q as usize + 1); points.len()];
        for (li, pts) in points_on_line.iter().enumerate() {
            for &pi in pts {
                lines_through_point[pi as usize].push(li as u32);
            }
        }
        ProjectivePlane { field: field.clone(), points, lines, points_on_line, lines_through_point }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn lines(&self) -> &[Line2] {
        &self.lines
    }

    pub fn point_index(&self, p: &Point2) -> usize {
        index_of(self.field.q(), &p.0)
    }

    pub fn line_index(&self, l: &Line2) -> usize {
        index_of(self.field.q(), &l.0)
    }

    pub fn points_on(&self, line: usize) -> &[u32] {
        &self.points_on_line[line]
    }

    pub fn lines_through(&self, point: usize) -> &[u32] {
        &self.lines_through_point[point]
    }

    /// Indicator vector of a point set over the point indices.
    pub fn mask(&self, s: &PointSet2) -> Vec<bool> {
        let mut m = vec![false; self.points.len()];
        for p in s {
            m[self.point_index(p)] = true;
        }
        m
    }

    pub fn set_from_mask(&self, mask: &[bool]) -> PointSet2 {
        PointSet2(
            mask.iter()
                .zip(&self.points)
                .filter_map(|(&m, p)| m.then_some(*p))
                .collect(),
        )
    }

    /// Number of points of the masked set on each line.
    pub fn line_counts(&self, mask: &[bool]) -> Vec<u32> {
        self.points_on_line
            .iter()
            .map(|pts| pts.iter().filter(|&&p| mask[p as usize]).count() as u32)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt3(f: &Field, c: [u32; 4]) -> Point3 {
        Point3::from_encodings(f, &c).unwrap()
    }

    fn det3(f: &Field, a: &[Elem; 3], b: &[Elem; 3], c: &[Elem; 3]) -> Elem {
        linalg::dot(f, a, &cross(f, b, c))
    }

    #[test]
    fn incidence_examples() {
        let f = Field::of_order(5).unwrap();
        let v = pt3(&f, [0, 0, 0, 1]);
        // V has x2 = 0, so it lies on the plane [0,0,1,0].
        assert!(incident(&f, &v, &Plane3::from_encodings(&f, &[0, 0, 1, 0]).unwrap()));
        let w0 = Plane3::from_encodings(&f, &[0, 0, 0, 1]).unwrap();
        assert!(!incident(&f, &v, &w0));
        assert!(incident(&f, &pt3(&f, [1, 0, 0, 0]), &w0));

        let a = Point2::from_encodings(&f, &[1, 0, 1]).unwrap();
        let b = Point2::from_encodings(&f, &[0, 1, 0]).unwrap();
        let c = Point2::from_encodings(&f, &[1, 1, 1]).unwrap();
        let l = Line2::through(&f, &a, &b).unwrap();
        assert!(incident(&f, &c, &l));
        assert!(det3(&f, &a.0, &b.0, &c.0).is_zero());
        assert_eq!(Point2::from_encodings(&f, &[1, 2]).unwrap_err(), Error::Dimension { expected: 3, got: 2 });
    }

    #[test]
    fn join_and_meet() {
        let f = Field::of_order(3).unwrap();
        let w0 = Plane3::from_encodings(&f, &[0, 0, 0, 1]).unwrap();
        let z0 = Plane3::from_encodings(&f, &[0, 0, 1, 0]).unwrap();
        let m = Line3::meet(&f, &w0, &z0).unwrap();
        assert_eq!(m, Line3::through(&f, &pt3(&f, [1, 0, 0, 0]), &pt3(&f, [0, 1, 0, 0])).unwrap());
        for p in m.points(&f) {
            assert!(p.0[2].is_zero() && p.0[3].is_zero());
        }
        let x0 = Plane3::from_encodings(&f, &[1, 0, 0, 0]).unwrap();
        assert_eq!(m.meet_plane(&f, &x0).unwrap(), pt3(&f, [0, 1, 0, 0]));
        assert!(m.join_point(&f, &pt3(&f, [1, 1, 0, 0])).is_err());
        assert!(Line3::meet(&f, &w0, &w0).is_err());
        let plane = m.join_point(&f, &pt3(&f, [0, 0, 1, 0])).unwrap();
        assert_eq!(plane, w0);
    }

    #[test]
    fn line_intersections() {
        let f = Field::of_order(4).unwrap();
        let a = Line3::through(&f, &pt3(&f, [1, 0, 0, 0]), &pt3(&f, [0, 0, 1, 0])).unwrap();
        let b = Line3::through(&f, &pt3(&f, [0, 1, 0, 0]), &pt3(&f, [0, 0, 1, 0])).unwrap();
        let c = Line3::through(&f, &pt3(&f, [0, 1, 0, 0]), &pt3(&f, [0, 0, 0, 1])).unwrap();
        assert_eq!(a.intersection(&f, &b), Some(pt3(&f, [0, 0, 1, 0])));
        assert_eq!(a.intersection(&f, &c), None);
    }

    #[test]
    fn dualize_examples() {
        let f = Field::of_order(7).unwrap();
        let v = pt3(&f, [0, 0, 0, 1]);
        assert_eq!(dualize(&f, &v), Plane3::from_encodings(&f, &[0, 0, 0, 1]).unwrap());
        // plane [t, g, 0, -1] <-> point (t, g, 0, 1)
        let t = Elem(3);
        let g = Elem(5);
        let plane = Plane3::new(&f, [t, g, Elem(0), f.neg(Elem::ONE)]).unwrap();
        assert_eq!(undualize(&f, &plane), Point3::new(&f, [t, g, Elem(0), Elem::ONE]).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        let f4 = Field::of_order(4).unwrap();
        assert_eq!(points::<3>(&f4).len(), 21);
        assert_eq!(hyperplanes::<3>(&f4).len(), 21);
        let f2 = Field::of_order(2).unwrap();
        assert_eq!(hyperplanes::<4>(&f2).len(), 15);
        assert_eq!(lines3(&f2).len(), 35);
        assert_eq!(lines3(&Field::of_order(3).unwrap()).len(), 130);
        assert_eq!(points::<3>(&Field::of_order(16).unwrap()).len(), 273);
    }

    #[test]
    fn enumeration_is_sorted_and_indexed() {
        let f = Field::of_order(5).unwrap();
        let pts = points::<4>(&f);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(index_of(5, &p.0), i);
        }
        let lines = lines3(&f);
        assert!(lines.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn conic_is_arc() {
        let f = Field::of_order(5).unwrap();
        let mut s: PointSet2 = f
            .elements()
            .map(|x| Point2::new(&f, [x, f.mul(x, x), Elem::ONE]).unwrap())
            .collect();
        s.insert(Point2::from_encodings(&f, &[0, 1, 0]).unwrap());
        assert_eq!(s.len(), 6);
        assert!(is_arc(&f, &s));
        // triple-determinant oracle
        let pts = s.as_slice();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    assert!(!det3(&f, &pts[i].0, &pts[j].0, &pts[k].0).is_zero());
                }
            }
        }
        let collinear: PointSet2 = [[1, 0, 0], [0, 1, 0], [1, 1, 0]]
            .iter()
            .map(|c| Point2::from_encodings(&f, c).unwrap())
            .collect();
        assert!(!is_arc(&f, &collinear));
        assert!(!is_hyperoval(&f, &s));
    }
}
