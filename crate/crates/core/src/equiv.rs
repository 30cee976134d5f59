//! The group of collineations fixing `V = (0,0,0,1)` and stabilizing the
//! plane `x3 = 0`, acting on flocks.
//!
//! Such a collineation is `x -> diag(M, d)^-1 x^σ` on points, with `σ` the
//! Frobenius map `a -> a^(p^j)`. Plane coordinate rows transform as
//! `u -> u^σ diag(M, d)`, so a flock plane `[v, -1]` goes to
//! `[v^σ M / d, -1]`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flock::{self, Flock};
use crate::geom::{Point2, Point3, PointSet2, ProjectivePlane};
use crate::gf::{Elem, Field};
use crate::linalg::{self, Matrix};
use crate::linpoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabElement {
    #[serde(rename = "M")]
    pub m: Matrix,
    pub d: Elem,
    pub j: u32,
}

impl StabElement {
    pub fn new(field: &Field, m: Matrix, d: Elem, j: u32) -> Result<StabElement> {
        if m.len() != 3 || m.iter().any(|r| r.len() != 3) {
            return Err(Error::Dimension { expected: 3, got: m.len() });
        }
        if m.iter().flatten().chain([&d]).any(|e| e.0 >= field.q()) {
            return Err(Error::ElementOutOfRange { enc: d.0 as u64, q: field.q() });
        }
        if d.is_zero() || linalg::inverse(field, &m).is_none() {
            return Err(Error::Singular);
        }
        if j >= field.n() {
            return Err(Error::InvalidParameter(format!("automorphism exponent {j} must be below {}", field.n())));
        }
        Ok(StabElement { m, d, j })
    }

    pub fn identity() -> StabElement {
        StabElement { m: linalg::identity(3), d: Elem::ONE, j: 0 }
    }

    pub fn random(field: &Field, rng: &mut impl Rng) -> StabElement {
        let q = field.q();
        loop {
            let m: Matrix = (0..3).map(|_| (0..3).map(|_| Elem(rng.gen_range(0..q))).collect()).collect();
            if linalg::inverse(field, &m).is_some() {
                let d = Elem(rng.gen_range(1..q));
                let j = rng.gen_range(0..field.n());
                return StabElement { m, d, j };
            }
        }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, field: &Field, first: &StabElement) -> StabElement {
        let twisted: Matrix =
            first.m.iter().map(|r| r.iter().map(|&a| field.frobenius(a, self.j)).collect()).collect();
        StabElement {
            m: linalg::mat_mul(field, &twisted, &self.m),
            d: field.mul(field.frobenius(first.d, self.j), self.d),
            j: (first.j + self.j) % field.n(),
        }
    }

    /// Image of a flock triple `v`, i.e. of the plane `[v, -1]`.
    pub fn map_triple(&self, field: &Field, v: [Elem; 3]) -> [Elem; 3] {
        let vs: Vec<Elem> = v.iter().map(|&a| field.frobenius(a, self.j)).collect();
        let w = linalg::vec_mat(field, &vs, &self.m);
        let dinv = field.inv(self.d);
        [field.mul(w[0], dinv), field.mul(w[1], dinv), field.mul(w[2], dinv)]
    }

    pub fn map_point3(&self, field: &Field, p: &Point3) -> Point3 {
        let mut full = vec![vec![Elem::ZERO; 4]; 4];
        for (i, row) in self.m.iter().enumerate() {
            full[i][..3].copy_from_slice(row);
        }
        full[3][3] = self.d;
        let inv = linalg::inverse(field, &full).expect("invertible");
        let xs: Vec<Elem> = p.coords().iter().map(|&a| field.frobenius(a, self.j)).collect();
        let y: Vec<Elem> = inv.iter().map(|row| linalg::dot(field, row, &xs)).collect();
        Point3::new(field, [y[0], y[1], y[2], y[3]]).expect("nonzero")
    }

    /// Action on the carrier plane `x3 = 0`.
    pub fn map_point2(&self, field: &Field, p: &Point2) -> Point2 {
        let inv = linalg::inverse(field, &self.m).expect("invertible");
        let xs: Vec<Elem> = p.coords().iter().map(|&a| field.frobenius(a, self.j)).collect();
        let y: Vec<Elem> = inv.iter().map(|row| linalg::dot(field, row, &xs)).collect();
        Point2::new(field, [y[0], y[1], y[2]]).expect("nonzero")
    }
}

/// Image of a flock; parameters of the result follow
/// [`Flock::from_planes`].
pub fn apply(g: &StabElement, fl: &Flock) -> Flock {
    let k = fl.field();
    let image: Vec<[Elem; 3]> = fl.triples().into_iter().map(|v| g.map_triple(k, v)).collect();
    Flock::from_planes(k, &image).expect("collineations permute planes")
}

pub fn map_set(g: &StabElement, field: &Field, s: &PointSet2) -> PointSet2 {
    s.iter().map(|p| g.map_point2(field, p)).collect()
}

/// Necessary conditions for equivalence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub carrier_size: usize,
    pub width: u32,
    /// Sorted `w_S(P)` over all points of the carrier plane.
    pub width_profile: Vec<u32>,
    /// Sorted `|l ∩ S|` over all lines of the carrier plane.
    pub line_profile: Vec<u32>,
    /// Sorted `w_S(Q)` over the star points.
    pub star_point_widths: Vec<u32>,
    pub is_linear: bool,
    pub is_star: bool,
    pub is_proper: bool,
    pub properly_bilinear: bool,
    /// Direction count of the normal form, for proper star flocks.
    pub directions: Option<usize>,
}

pub fn fingerprint(fl: &Flock) -> Fingerprint {
    fingerprint_in(&ProjectivePlane::new(fl.field()), fl)
}

pub fn fingerprint_in(plane: &ProjectivePlane, fl: &Flock) -> Fingerprint {
    let k = fl.field();
    let s = flock::critical_cone(fl);
    let mask = plane.mask(&s);
    let w = flock::width_of_mask(plane, &mask, !s.is_empty());
    let mut width_profile = w.per_point.clone();
    width_profile.sort_unstable();
    let mut line_profile = plane.line_counts(&mask);
    line_profile.sort_unstable();
    let star = flock::star_analysis(fl);
    let mut star_point_widths: Vec<u32> = star
        .star_points
        .iter()
        .map(|p| {
            let [a, b, c, _] = *p.coords();
            w.per_point[plane.point_index(&Point2::new(k, [a, b, c]).expect("nonzero"))]
        })
        .collect();
    star_point_widths.sort_unstable();
    let directions = if star.is_proper && !s.is_empty() {
        normalize_star_form(fl).ok().map(|(n, _)| linpoly::direction_count(k, n.g()).n)
    } else {
        None
    };
    Fingerprint {
        carrier_size: s.len(),
        width: w.min,
        width_profile,
        line_profile,
        star_point_widths,
        is_linear: flock::is_linear(fl).linear,
        is_star: star.is_star,
        is_proper: star.is_proper,
        properly_bilinear: flock::is_bilinear(fl).properly_bilinear,
        directions,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Fingerprint,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equivalent,
    Inequivalent,
    /// Fingerprints agree; only an orbit search can decide.
    Inconclusive,
}

pub const EXHAUSTIVE_MAX_Q: u32 = 8;

pub fn are_equivalent(a: &Flock, b: &Flock, mode: Mode) -> Result<Verdict> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    match mode {
        Mode::Fingerprint => Ok(if fingerprint(a) == fingerprint(b) {
            Verdict::Inconclusive
        } else {
            Verdict::Inequivalent
        }),
        Mode::Exhaustive => Ok(if find_equivalence(a, b)?.is_some() {
            Verdict::Equivalent
        } else {
            Verdict::Inequivalent
        }),
    }
}

/// The plane set up to the group, with the choice that realizes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub form: Vec<[Elem; 3]>,
    /// Frobenius exponent applied before the linear change of basis.
    pub j: u32,
    /// Invertible `A` with `canonical = sorted(T^σ A)`.
    pub a: Matrix,
}

/// Canonical form of the plane set `T` under `v -> v^σ A` (the scalar `d`
/// is absorbed into `A`).
///
/// For each `σ` and each ordered basis `b_1..b_r` of `span T^σ` drawn from
/// `T^σ`, the set is rewritten in those coordinates; the least sorted
/// result over all choices is a complete invariant.
pub fn canonical_form(fl: &Flock) -> Result<Canonical> {
    let k = fl.field();
    if k.q() > EXHAUSTIVE_MAX_Q {
        return Err(Error::ExhaustiveTooLarge(k.q()));
    }
    let t: Vec<[Elem; 3]> = fl.plane_set();
    let rank = linalg::rank(k, &t.iter().map(|v| v.to_vec()).collect::<Vec<_>>());
    let nonzero: Vec<[Elem; 3]> = t.iter().copied().filter(|v| v.iter().any(|e| !e.is_zero())).collect();

    let mut starts = Vec::new();
    for j in 0..k.n() {
        for first in 0..nonzero.len() {
            starts.push((j, first));
        }
    }
    let best = starts
        .par_iter()
        .filter_map(|&(j, first)| {
            let ts: Vec<[Elem; 3]> =
                nonzero.iter().map(|v| v.map(|a| k.frobenius(a, j))).collect();
            let mut best: Option<Canonical> = None;
            let mut chosen = vec![ts[first].to_vec()];
            extend_bases(k, &ts, rank, &mut chosen, &mut |basis| {
                let full = linalg::complete_basis(k, basis, 3);
                let a = linalg::inverse(k, &full).expect("basis");
                let mut form: Vec<[Elem; 3]> = ts
                    .iter()
                    .map(|v| {
                        let w = linalg::vec_mat(k, v, &a);
                        [w[0], w[1], w[2]]
                    })
                    .chain([[Elem::ZERO; 3]])
                    .collect();
                form.sort_unstable();
                if best.as_ref().is_none_or(|b| form < b.form) {
                    best = Some(Canonical { form, j, a });
                }
            });
            best
        })
        .min_by(|x, y| x.form.cmp(&y.form).then(x.j.cmp(&y.j)).then(x.a.cmp(&y.a)));
    Ok(best.unwrap_or(Canonical { form: t, j: 0, a: linalg::identity(3) }))
}

fn extend_bases(
    k: &Field,
    ts: &[[Elem; 3]],
    rank: usize,
    chosen: &mut Matrix,
    visit: &mut impl FnMut(&Matrix),
) {
    if chosen.len() == rank {
        visit(chosen);
        return;
    }
    for v in ts {
        chosen.push(v.to_vec());
        if linalg::rank(k, chosen) == chosen.len() {
            extend_bases(k, ts, rank, chosen, visit);
        }
        chosen.pop();
    }
}

/// A group element carrying the plane set of `a` onto that of `b`, if any.
pub fn find_equivalence(a: &Flock, b: &Flock) -> Result<Option<StabElement>> {
    let k = a.field();
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let (ca, cb) = (canonical_form(a)?, canonical_form(b)?);
    if ca.form != cb.form {
        return Ok(None);
    }
    // T_a^{σa} A_a = T_b^{σb} A_b, so T_b = T_a^{σa σb^-1} (A_a A_b^-1)^{σb^-1}.
    let n = k.n();
    let back = (n - cb.j) % n;
    let inv_b = linalg::inverse(k, &cb.a).expect("invertible");
    let m: Matrix = linalg::mat_mul(k, &ca.a, &inv_b)
        .into_iter()
        .map(|r| r.into_iter().map(|x| k.frobenius(x, back)).collect())
        .collect();
    let g = StabElement { m, d: Elem::ONE, j: (ca.j + back) % n };
    debug_assert!(apply(&g, a).same_planes(b));
    Ok(Some(g))
}

/// An equivalent flock `F(t, g(t), 0)`, with the element producing it.
///
/// With `P` the least carrier point and `Q` the least star point, `M` has
/// columns `P`, the first standard vector completing a basis, and `Q`; the
/// new coordinate functions are `v·P`, `v·e`, `v·Q = 0`. The first is a
/// permutation, so the flock is reparameterized to make it `t`.
pub fn normalize_star_form(fl: &Flock) -> Result<(Flock, StabElement)> {
    let k = fl.field();
    let star = flock::star_analysis(fl);
    if !star.is_star {
        return Err(Error::NotStar);
    }
    let carrier = flock::critical_cone(fl);
    let p = *carrier.iter().next().ok_or(Error::EmptyCarrier)?.coords();
    let [q0, q1, q2, _] = *star.star_points[0].coords();
    let qv = [q0, q1, q2];
    let cols = linalg::complete_basis(k, &[p.to_vec(), qv.to_vec()], 3);
    let m: Matrix = (0..3).map(|r| vec![p[r], cols[2][r], qv[r]]).collect();
    let g = StabElement::new(k, m, Elem::ONE, 0)?;
    let image: Vec<[Elem; 3]> = fl.triples().into_iter().map(|v| g.map_triple(k, v)).collect();
    let mut table = vec![Elem::ZERO; k.q() as usize];
    for v in &image {
        debug_assert!(v[2].is_zero());
        table[v[0].0 as usize] = v[1];
    }
    Ok((Flock::star_form(k, table)?, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn field(q: u64) -> Field {
        Field::of_order(q).unwrap()
    }

    fn star(k: &Field, g: impl Fn(Elem) -> Elem) -> Flock {
        Flock::star_form(k, k.elements().map(g).collect()).unwrap()
    }

    fn random_flock(k: &Field, rng: &mut StdRng) -> Flock {
        let base = star(k, |t| k.pow(t, 3));
        apply(&StabElement::random(k, rng), &base)
    }

    #[test]
    fn identity_and_scalar() {
        let k = field(9);
        let fl = Flock::from_fn(&k, |t| [t, k.pow(t, 3), k.mul(Elem(5), t)]).unwrap();
        assert!(apply(&StabElement::identity(), &fl).same_planes(&fl));
        let two = StabElement::new(&k, linalg::identity(3), Elem(2), 0).unwrap();
        let half = k.inv(Elem(2));
        let oracle = Flock::from_fn(&k, |t| {
            let i = t.0 as usize;
            [k.mul(fl.f()[i], half), k.mul(fl.g()[i], half), k.mul(fl.h()[i], half)]
        })
        .unwrap();
        assert!(apply(&two, &fl).same_planes(&oracle));
    }

    #[test]
    fn frobenius_fixes_t4_flock() {
        let k = field(16);
        let fl = star(&k, |t| k.pow(t, 4));
        let frob = StabElement::new(&k, linalg::identity(3), Elem::ONE, 1).unwrap();
        assert!(apply(&frob, &fl).same_planes(&fl));
    }

    #[test]
    fn singular_rejected() {
        let k = field(5);
        let m = vec![vec![Elem(1); 3]; 3];
        assert_eq!(StabElement::new(&k, m, Elem(1), 0).unwrap_err(), Error::Singular);
        assert_eq!(StabElement::new(&k, linalg::identity(3), Elem(0), 0).unwrap_err(), Error::Singular);
    }

    #[test]
    fn group_law_and_covariance() {
        let mut rng = StdRng::seed_from_u64(7);
        for q in [4, 5, 8, 9] {
            let k = field(q);
            for _ in 0..10 {
                let fl = random_flock(&k, &mut rng);
                let g1 = StabElement::random(&k, &mut rng);
                let g2 = StabElement::random(&k, &mut rng);
                let two_step = apply(&g2, &apply(&g1, &fl));
                assert!(two_step.same_planes(&apply(&g2.compose(&k, &g1), &fl)));
                let s = flock::critical_cone(&fl);
                assert_eq!(flock::critical_cone(&apply(&g1, &fl)), map_set(&g1, &k, &s));
            }
        }
    }

    #[test]
    fn point_action_preserves_incidence() {
        let mut rng = StdRng::seed_from_u64(3);
        let k = field(4);
        let g = StabElement::random(&k, &mut rng);
        let fl = star(&k, |t| k.pow(t, 2));
        let img = apply(&g, &fl);
        for t in k.elements() {
            let plane = fl.plane(t);
            for p in crate::geom::points::<4>(&k) {
                if crate::geom::incident(&k, &p, &plane) {
                    let gp = g.map_point3(&k, &p);
                    let [a, b, c] = g.map_triple(&k, [fl.f()[t.0 as usize], fl.g()[t.0 as usize], fl.h()[t.0 as usize]]);
                    let image_plane = crate::geom::Plane3::new(&k, [a, b, c, k.neg(Elem::ONE)]).unwrap();
                    assert!(crate::geom::incident(&k, &gp, &image_plane));
                }
            }
        }
        assert_eq!(g.map_point3(&k, &flock::vertex(&k)), flock::vertex(&k));
        let _ = img;
    }

    #[test]
    fn fingerprint_examples() {
        let k = field(9);
        let a = star(&k, |_| Elem::ZERO);
        let b = star(&k, |t| k.pow(t, 3));
        assert_ne!(fingerprint(&a), fingerprint(&b));
        let c = Flock::from_fn(&k, |t| {
            let g = k.pow(t, 3);
            [t, g, k.neg(k.add(t, g))]
        })
        .unwrap();
        assert_eq!(fingerprint(&b), fingerprint(&c));
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..5 {
            let g = StabElement::random(&k, &mut rng);
            assert_eq!(fingerprint(&apply(&g, &b)), fingerprint(&b));
        }
    }

    #[test]
    fn exhaustive_examples() {
        let k = field(5);
        let a = star(&k, |t| k.mul(Elem(2), t));
        let b = star(&k, |_| Elem::ZERO);
        assert_eq!(are_equivalent(&a, &b, Mode::Exhaustive).unwrap(), Verdict::Equivalent);
        let proper = star(&k, |t| k.pow(t, 3));
        assert_eq!(are_equivalent(&a, &proper, Mode::Exhaustive).unwrap(), Verdict::Inequivalent);
        assert_eq!(are_equivalent(&a, &proper, Mode::Fingerprint).unwrap(), Verdict::Inequivalent);

        let k4 = field(4);
        let mut rng = StdRng::seed_from_u64(5);
        let fl = Flock::from_fn(&k4, |t| [t, k4.pow(t, 2), Elem::ZERO]).unwrap();
        for _ in 0..5 {
            let g = StabElement::random(&k4, &mut rng);
            let img = apply(&g, &fl);
            let w = find_equivalence(&fl, &img).unwrap().unwrap();
            assert!(apply(&w, &fl).same_planes(&img));
        }
        let k9 = field(9);
        assert_eq!(canonical_form(&star(&k9, |t| t)).unwrap_err(), Error::ExhaustiveTooLarge(9));
    }

    #[test]
    fn normal_forms() {
        let k = field(9);
        let kk = star(&k, |t| k.pow(t, 3));
        let (n, _) = normalize_star_form(&kk).unwrap();
        assert_eq!(n, kk);

        let variant = Flock::from_fn(&k, |t| {
            let g = k.pow(t, 3);
            [t, g, k.neg(k.add(k.mul(Elem(2), t), k.mul(Elem(5), g)))]
        })
        .unwrap();
        let (n, g) = normalize_star_form(&variant).unwrap();
        assert!(n.is_star_form());
        assert!(apply(&g, &variant).same_planes(&n));
        // g' is additive with kernel {0}, exponents 1 and 3 only
        let lp = linpoly::LinearizedPoly::from_table(&k, 1, n.g()).unwrap();
        assert!(lp.coeffs().iter().any(|c| !c.is_zero()));

        let k5 = field(5);
        let lin = star(&k5, |t| k5.mul(Elem(2), t));
        let (n, _) = normalize_star_form(&lin).unwrap();
        assert!(flock::is_linear(&n).linear);

        let k27 = field(27);
        let non_star = Flock::from_fn(&k27, |t| [t, k27.pow(t, 3), k27.pow(t, 9)]).unwrap();
        assert_eq!(normalize_star_form(&non_star).unwrap_err(), Error::NotStar);
    }

    #[test]
    fn normal_form_is_equivalent_small() {
        let mut rng = StdRng::seed_from_u64(21);
        for q in [3, 4, 5] {
            let k = field(q);
            for _ in 0..5 {
                let fl = random_flock(&k, &mut rng);
                let (n, _) = normalize_star_form(&fl).unwrap();
                assert!(n.is_star_form());
                assert_eq!(are_equivalent(&fl, &n, Mode::Exhaustive).unwrap(), Verdict::Equivalent);
            }
        }
    }

    #[test]
    fn json_shape() {
        let k = field(4);
        let g = StabElement::new(&k, linalg::identity(3), Elem(2), 1).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"M":[[1,0,0],[0,1,0],[0,0,1]],"d":2,"j":1}"#);
    }
}
