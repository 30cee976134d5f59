//! `p^e`-linearized polynomials `Σ α_i t^(p^(ie))`, direction counts of
//! graphs of functions, and the trichotomy for the number of directions
//! determined by a permutation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{gcd, Elem, Field};
use crate::linalg;

/// Coefficients `α_0 .. α_{k-1}` with `k = n / e`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinearizedPoly {
    e: u32,
    coeffs: Vec<Elem>,
}

impl LinearizedPoly {
    pub fn new(field: &Field, e: u32, coeffs: Vec<Elem>) -> Result<LinearizedPoly> {
        let n = field.n();
        if e == 0 || !n.is_multiple_of(e) {
            return Err(Error::NotADivisor { e, n });
        }
        if coeffs.len() != (n / e) as usize {
            return Err(Error::Dimension { expected: (n / e) as usize, got: coeffs.len() });
        }
        if let Some(c) = coeffs.iter().find(|c| c.0 >= field.q()) {
            return Err(Error::ElementOutOfRange { enc: c.0 as u64, q: field.q() });
        }
        Ok(LinearizedPoly { e, coeffs })
    }

    /// Checks a deserialized value against `field`.
    pub fn validate(self, field: &Field) -> Result<LinearizedPoly> {
        LinearizedPoly::new(field, self.e, self.coeffs)
    }

    /// The identity map `t`.
    pub fn identity(field: &Field, e: u32) -> Result<LinearizedPoly> {
        let mut c = vec![Elem::ZERO; (field.n() / e.max(1)) as usize];
        if let Some(first) = c.first_mut() {
            *first = Elem::ONE;
        }
        LinearizedPoly::new(field, e, c)
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Highest nonzero coefficient is 1.
    pub fn is_monic(&self) -> bool {
        self.coeffs.iter().rev().find(|c| !c.is_zero()) == Some(&Elem::ONE)
    }

    pub fn eval(&self, field: &Field, t: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut power = t;
        for &a in &self.coeffs {
            acc = field.add(acc, field.mul(a, power));
            power = field.frobenius(power, self.e);
        }
        acc
    }

    pub fn to_table(&self, field: &Field) -> Vec<Elem> {
        let basis: Vec<Elem> = (0..field.n()).map(|i| Elem(field.p().pow(i))).collect();
        let images: Vec<Elem> = basis.iter().map(|&b| self.eval(field, b)).collect();
        extend_additively(field, &images)
    }

    /// The same map written with a step `e'` dividing `e`.
    pub fn with_step(&self, field: &Field, step: u32) -> Result<LinearizedPoly> {
        if step == 0 || !self.e.is_multiple_of(step) {
            return Err(Error::NotADivisor { e: step, n: self.e });
        }
        let ratio = (self.e / step) as usize;
        let mut c = vec![Elem::ZERO; (field.n() / step) as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            c[i * ratio] = a;
        }
        LinearizedPoly::new(field, step, c)
    }

    /// Interpolates a `GF(p^e)`-linear table. With `b_j = λ^j` a basis over
    /// `GF(s)`, `s = p^e`, the coefficients solve the Moore system
    /// `Σ_i α_i b_j^(s^i) = table(b_j)`.
    pub fn from_table(field: &Field, e: u32, table: &[Elem]) -> Result<LinearizedPoly> {
        let n = field.n();
        if e == 0 || !n.is_multiple_of(e) {
            return Err(Error::NotADivisor { e, n });
        }
        if table.len() != field.q() as usize {
            return Err(Error::TableLength { got: table.len(), q: field.q() });
        }
        let k = (n / e) as usize;
        let basis: Vec<Elem> = (0..k as u64).map(|j| field.exp(j)).collect();
        // rows j: [b_j^(s^0) .. b_j^(s^(k-1)) | table(b_j)]
        let mut aug: linalg::Matrix = basis
            .iter()
            .map(|&b| {
                (0..k as u32)
                    .map(|i| field.frobenius(b, e * i))
                    .chain([table[b.0 as usize]])
                    .collect()
            })
            .collect();
        let pivots = linalg::rref(field, &mut aug);
        if pivots.len() != k || pivots.iter().any(|&c| c >= k) {
            return Err(Error::NotLinearized { e });
        }
        let coeffs: Vec<Elem> = aug.iter().map(|r| r[k]).collect();
        let lp = LinearizedPoly::new(field, e, coeffs)?;
        if lp.to_table(field) != table {
            return Err(Error::NotLinearized { e });
        }
        Ok(lp)
    }
}

/// Table of the `GF(p)`-linear map with the given images of the digit basis
/// `1, x, .., x^(n-1)` (encodings `p^i`).
fn extend_additively(field: &Field, images: &[Elem]) -> Vec<Elem> {
    let p = field.p();
    let q = field.q();
    let mut table = vec![Elem::ZERO; q as usize];
    // table[a] for a with top digit position i: table[a - p^i] + images[i]
    let mut stride = 1u32;
    for &img in images {
        for a in stride..(stride * p) {
            table[a as usize] = field.add(table[(a - stride) as usize], img);
        }
        stride *= p;
    }
    table
}

/// Largest `e` dividing `n` such that the table is `GF(p^e)`-linear, or
/// `None` when it is not additive.
///
/// Additivity is checked by rebuilding the whole table from the images of
/// the digit basis; homogeneity over `GF(p^e)` then only needs
/// `T(μ b) = μ T(b)` on that basis for a generator `μ` of `GF(p^e)`.
pub fn detect_linearized(field: &Field, table: &[Elem]) -> Option<u32> {
    if table.len() != field.q() as usize || !table[0].is_zero() {
        return None;
    }
    let n = field.n();
    let basis: Vec<Elem> = (0..n).map(|i| Elem(field.p().pow(i))).collect();
    let images: Vec<Elem> = basis.iter().map(|b| table[b.0 as usize]).collect();
    if extend_additively(field, &images) != table {
        return None;
    }
    (1..=n).rev().filter(|e| n.is_multiple_of(*e)).find(|&e| {
        let mu = field.subfield_generator(e).expect("divisor");
        basis.iter().all(|&b| table[field.mul(mu, b).0 as usize] == field.mul(mu, table[b.0 as usize]))
    })
}

fn kernel_is_trivial(field: &Field, lp: &LinearizedPoly) -> bool {
    field.nonzero().all(|t| !lp.eval(field, t).is_zero())
}

/// Whether the polynomial permutes the field. The kernel scan and the
/// bijectivity of the full table are both computed and must agree.
pub fn is_permutation_linearized(field: &Field, lp: &LinearizedPoly) -> bool {
    let by_kernel = kernel_is_trivial(field, lp);
    let by_table = field.is_permutation(lp.to_table(field));
    assert_eq!(by_kernel, by_table, "kernel and table tests disagree");
    by_kernel
}

/// Rank test over `GF(p)` of the map's matrix on the digit basis.
fn is_permutation_fast(field: &Field, prime: &Field, lp: &LinearizedPoly) -> bool {
    let rows: Vec<Vec<Elem>> = (0..field.n())
        .map(|i| {
            let img = lp.eval(field, Elem(field.p().pow(i)));
            field.coefficients(img).into_iter().map(Elem).collect()
        })
        .collect();
    linalg::rank(prime, &rows) == field.n() as usize
}

/// `a ∘ b`, written with step `gcd(e_a, e_b)`.
pub fn compose(field: &Field, a: &LinearizedPoly, b: &LinearizedPoly) -> Result<LinearizedPoly> {
    let step = gcd(a.e as u64, b.e as u64) as u32;
    let (a, b) = (a.with_step(field, step)?, b.with_step(field, step)?);
    let k = a.k();
    let mut c = vec![Elem::ZERO; k];
    for (i, &ai) in a.coeffs.iter().enumerate() {
        for (j, &bj) in b.coeffs.iter().enumerate() {
            let term = field.mul(ai, field.frobenius(bj, step * i as u32));
            c[(i + j) % k] = field.add(c[(i + j) % k], term);
        }
    }
    LinearizedPoly::new(field, step, c)
}

/// `s^(k(k-1)/2) Π_{i=1}^{k-1} (s^i - 1)`.
pub fn betti_mathieu_count(s: u64, k: u32) -> Result<u128> {
    let s = s as u128;
    let mut total: u128 = 1;
    for _ in 0..(k as u64 * k.saturating_sub(1) as u64 / 2) {
        total = total.checked_mul(s).ok_or(Error::Overflow)?;
    }
    let mut si: u128 = 1;
    for _ in 1..k {
        si = si.checked_mul(s).ok_or(Error::Overflow)?;
        total = total.checked_mul(si - 1).ok_or(Error::Overflow)?;
    }
    Ok(total)
}

/// All `p^e`-linearized permutation polynomials, ordered by the base-`q`
/// number `Σ α_i q^i`.
pub fn enumerate_linearized_perms(field: &Field, e: u32, monic_only: bool) -> Result<Vec<LinearizedPoly>> {
    let n = field.n();
    if e == 0 || !n.is_multiple_of(e) {
        return Err(Error::NotADivisor { e, n });
    }
    let k = n / e;
    let q = field.q() as u64;
    let total = q.checked_pow(k).ok_or(Error::Overflow)?;
    let prime = Field::new(field.p(), 1, None)?;
    Ok((0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let mut r = idx;
            let coeffs: Vec<Elem> = (0..k)
                .map(|_| {
                    let d = r % q;
                    r /= q;
                    Elem(d as u32)
                })
                .collect();
            let lp = LinearizedPoly { e, coeffs };
            (!monic_only || lp.is_monic()).then_some(lp)
        })
        .filter(|lp| is_permutation_fast(field, &prime, lp))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionSet {
    /// Distinct slopes `(g(t) - g(s)) / (t - s)`, ascending.
    pub slopes: Vec<Elem>,
    pub n: usize,
}

/// Directions determined by the graph `{(t, g(t))}`. Abscissae are
/// distinct, so the vertical direction never occurs.
pub fn direction_count(field: &Field, g: &[Elem]) -> DirectionSet {
    let q = field.q() as usize;
    let mut seen = vec![false; q];
    let elems: Vec<Elem> = field.elements().collect();
    if q <= 1024 {
        for (i, &t) in elems.iter().enumerate() {
            for &s in &elems[i + 1..] {
                let m = field.div(field.sub(g[t.0 as usize], g[s.0 as usize]), field.sub(t, s));
                seen[m.0 as usize] = true;
            }
        }
    } else {
        let rows: Vec<Vec<bool>> = elems
            .par_iter()
            .enumerate()
            .map(|(i, &t)| {
                let mut row = vec![false; q];
                for &s in &elems[i + 1..] {
                    let m = field.div(field.sub(g[t.0 as usize], g[s.0 as usize]), field.sub(t, s));
                    row[m.0 as usize] = true;
                }
                row
            })
            .collect();
        for row in rows {
            for (a, b) in seen.iter_mut().zip(row) {
                *a |= b;
            }
        }
    }
    let slopes: Vec<Elem> = (0..q as u32).filter(|&m| seen[m as usize]).map(Elem).collect();
    DirectionSet { n: slopes.len(), slopes }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BallCase {
    I,
    Ii,
    Iii,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionProfile {
    #[serde(rename = "N")]
    pub n_directions: usize,
    pub e_param: u32,
    pub ball_case: BallCase,
    /// The bound of the matching case holds (and `e` divides `n` in the
    /// middle case).
    pub bound_holds: bool,
    /// For `p^e > 2`: whether the table is `GF(p^e)`-linear.
    pub linearized: Option<bool>,
}

impl DirectionProfile {
    pub fn holds(&self) -> bool {
        self.bound_holds && self.linearized != Some(false)
    }
}

/// Computes `e` from the secant multiplicities of `{(t, g(t), 1)}` (largest
/// `e` with `p^e` dividing every multiplicity of a line meeting the set in
/// at least two points), counts directions, and checks the bound of the
/// matching case.
pub fn ball_trichotomy(field: &Field, g: &[Elem]) -> Result<DirectionProfile> {
    let q = field.q() as usize;
    if g.len() != q {
        return Err(Error::TableLength { got: g.len(), q: field.q() });
    }
    if !g[0].is_zero() {
        return Err(Error::NotFixingZero);
    }
    if !field.is_permutation(g.iter().copied()) {
        return Err(Error::NotPermutation);
    }
    let dirs = direction_count(field, g);
    let mut multiplicity_gcd = 0u64;
    let mut counts = vec![0u32; q];
    for &m in &dirs.slopes {
        counts.iter_mut().for_each(|c| *c = 0);
        for t in field.elements() {
            let b = field.sub(g[t.0 as usize], field.mul(m, t));
            counts[b.0 as usize] += 1;
        }
        for &c in &counts {
            if c >= 2 {
                multiplicity_gcd = gcd(multiplicity_gcd, c as u64);
            }
        }
    }
    let (p, n) = (field.p() as u64, field.n());
    let mut e = 0;
    while e < n && multiplicity_gcd.is_multiple_of(p.pow(e + 1)) {
        e += 1;
    }
    let big_n = dirs.n as u64;
    let qq = q as u64;
    let (ball_case, bound_holds) = if e == 0 {
        (BallCase::I, (qq + 3) / 2 <= big_n && big_n <= qq + 1)
    } else if e == n {
        (BallCase::Iii, big_n == 1)
    } else {
        let s = p.pow(e);
        (BallCase::Ii, n % e == 0 && p.pow(n - e) < big_n && big_n <= (qq - 1) / (s - 1))
    };
    let linearized = (p.pow(e) > 2).then(|| detect_linearized(field, g).is_some_and(|d| d % e == 0));
    Ok(DirectionProfile { n_directions: dirs.n, e_param: e, ball_case, bound_holds, linearized })
}
