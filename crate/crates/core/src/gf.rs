//! Exact arithmetic in GF(p^n).
//!
//! An element is encoded as the integer whose base-p digits are the
//! coefficients of its polynomial representative: digit `i` is the
//! coefficient of `x^i`. The default modulus is the monic irreducible whose
//! lower coefficients `(c_0, .., c_{n-1})`, read the same way, give the
//! smallest integer; the canonical primitive element is the least encoding of
//! multiplicative order `q - 1`. Both choices are deterministic, so element
//! encodings are stable across runs and files.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Odd-characteristic fields up to this order get a full addition table.
const ADD_TABLE_LIMIT: u32 = 1024;

/// A field element, identified by its encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn enc(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serialized description of a field: `{"p":2,"n":4,"modulus":[1,1,0,0]}`.
///
/// `modulus` lists `c_0..c_{n-1}` of `x^n + c_{n-1} x^{n-1} + .. + c_0`; the
/// leading coefficient is implicit. When absent the default modulus is used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

struct Inner {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    /// `exp[i] = primitive^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    /// Discrete logarithm to the base `primitive`; `log[0]` is unused.
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
}

/// The field GF(p^n). Cloning is cheap; all clones share the same tables.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.n == other.0.n && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.0.p, self.0.n, self.0.modulus)
    }
}

pub fn is_prime(v: u64) -> bool {
    if v < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= v {
        if v.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= v {
        if v.is_multiple_of(d) {
            out.push(d);
            while v.is_multiple_of(d) {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// Splits a prime power `q` into `(p, n)`.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let p = factors[0];
    let mut n = 0;
    let mut rest = q;
    while rest > 1 {
        rest /= p;
        n += 1;
    }
    Ok((p as u32, n))
}

// Polynomials over GF(p), lowest coefficient first, no trailing zeros.
mod fp_poly {
    pub type Poly = Vec<u32>;

    pub fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], f: &[u32], p: u32) -> Poly {
        let mut a = trim(a.to_vec());
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p) as u64;
        while a.len() > df {
            let da = a.len() - 1;
            let factor = a[da] as u64 * lead_inv % p as u64;
            for (i, &fc) in f.iter().enumerate() {
                let idx = da - df + i;
                let sub = factor * fc as u64 % p as u64;
                a[idx] = ((a[idx] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            a = trim(a);
        }
        a
    }

    pub fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Poly = prod.into_iter().map(|c| c as u32).collect();
        rem(&prod, f, p)
    }

    pub fn pow_mod(a: &[u32], mut e: u64, f: &[u32], p: u32) -> Poly {
        let mut result = rem(&[1], f, p);
        let mut base = rem(a, f, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &base, f, p);
            }
            base = mul_mod(&base, &base, f, p);
            e >>= 1;
        }
        result
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// `x^(p^k) mod f`.
    pub fn frobenius_x(k: u32, f: &[u32], p: u32) -> Poly {
        let mut h = rem(&[0, 1], f, p);
        for _ in 0..k {
            h = pow_mod(&h, p as u64, f, p);
        }
        h
    }

    /// Rabin's irreducibility test for a monic `f` of degree `n`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = (f.len() - 1) as u32;
        if n == 1 {
            return true;
        }
        let x = vec![0, 1];
        if sub(&frobenius_x(n, f, p), &x, p) != Vec::<u32>::new() {
            return false;
        }
        for r in super::prime_factors(n as u64) {
            let h = sub(&frobenius_x(n / r as u32, f, p), &x, p);
            if gcd(f, &h, p).len() != 1 {
                return false;
            }
        }
        true
    }
}

fn digits(mut enc: u32, p: u32, n: u32) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = enc % p;
            enc /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Multiplication straight from the polynomial representation; used only
/// while the log tables are being built.
fn slow_mul(a: u32, b: u32, p: u32, n: u32, full_modulus: &[u32]) -> u32 {
    let da = digits(a, p, n);
    let db = digits(b, p, n);
    let r = fp_poly::mul_mod(&fp_poly::trim(da), &fp_poly::trim(db), full_modulus, p);
    let mut padded = r;
    padded.resize(n as usize, 0);
    undigits(&padded, p)
}

fn slow_pow(a: u32, mut e: u64, p: u32, n: u32, full_modulus: &[u32]) -> u32 {
    let mut result = 1;
    let mut base = a;
    while e > 0 {
        if e & 1 == 1 {
            result = slow_mul(result, base, p, n, full_modulus);
        }
        base = slow_mul(base, base, p, n, full_modulus);
        e >>= 1;
    }
    result
}

impl Field {
    /// Builds GF(p^n). With `modulus == None` the default modulus is chosen.
    pub fn new(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let q64 = (p as u64).checked_pow(n).filter(|&q| q <= MAX_ORDER);
        let q = q64.ok_or(Error::FieldTooLarge { p, n })? as u32;

        let modulus = match modulus {
            Some(m) => {
                if m.len() != n as usize {
                    return Err(Error::ModulusLength { expected: n as usize, got: m.len() });
                }
                if let Some(&coeff) = m.iter().find(|&&c| c >= p) {
                    return Err(Error::ModulusCoefficient { coeff, p });
                }
                let mut full = m.to_vec();
                full.push(1);
                if !fp_poly::is_irreducible(&full, p) {
                    return Err(Error::ReducibleModulus { p });
                }
                m.to_vec()
            }
            None => (0..q)
                .map(|enc| digits(enc, p, n))
                .find(|c| {
                    let mut full = c.clone();
                    full.push(1);
                    fp_poly::is_irreducible(&full, p)
                })
                .expect("an irreducible polynomial of every degree exists"),
        };
        let mut full = modulus.clone();
        full.push(1);

        let order = q as u64 - 1;
        let factors = prime_factors(order);
        let primitive = (1..q)
            .find(|&g| factors.iter().all(|&r| slow_pow(g, order / r, p, n, &full) != 1))
            .expect("the multiplicative group is cyclic");

        let m = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * m.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..m {
            exp[i] = cur;
            log[cur as usize] = i as u32;
            cur = slow_mul(cur, primitive, p, n, &full);
        }
        for i in m..2 * m {
            exp[i] = exp[i - m];
        }

        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let ds: Vec<u32> = digits(a, p, n).into_iter().map(|d| (p - d) % p).collect();
                undigits(&ds, p)
            })
            .collect();

        let add = (p != 2 && q <= ADD_TABLE_LIMIT).then(|| {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                let da = digits(a, p, n);
                for b in 0..q {
                    let ds: Vec<u32> =
                        digits(b, p, n).iter().zip(&da).map(|(x, y)| (x + y) % p).collect();
                    table[(a * q + b) as usize] = undigits(&ds, p) as u16;
                }
            }
            table
        });

        Ok(Field(Arc::new(Inner {
            p,
            n,
            q,
            modulus,
            primitive: Elem(primitive),
            exp,
            log,
            neg,
            add,
        })))
    }

    /// GF(q) with the default modulus.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, n) = prime_power(q)?;
        Field::new(p, n, None)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        Field::new(spec.p, spec.n, spec.modulus.as_deref())
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.0.p, n: self.0.n, modulus: Some(self.0.modulus.clone()) }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.0.n
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Lower coefficients `c_0..c_{n-1}` of the monic modulus.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The canonical primitive element.
    pub fn primitive(&self) -> Elem {
        self.0.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.q).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.0.q).map(Elem)
    }

    pub fn elem(&self, enc: u64) -> Result<Elem> {
        if enc < self.0.q as u64 {
            Ok(Elem(enc as u32))
        } else {
            Err(Error::ElementOutOfRange { enc, q: self.0.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.0.p as i64) as u32)
    }

    /// Base-p digits of `a`, i.e. its polynomial coefficients.
    pub fn coefficients(&self, a: Elem) -> Vec<u32> {
        digits(a.0, self.0.p, self.0.n)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.0;
        if inner.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if let Some(table) = &inner.add {
            return Elem(table[(a.0 * inner.q + b.0) as usize] as u32);
        }
        let (p, mut x, mut y) = (inner.p, a.0, b.0);
        let (mut out, mut place) = (0, 1);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        Elem(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse. Panics on zero; see [`Field::checked_inv`].
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.checked_inv(a).expect("inverse of zero")
    }

    pub fn checked_inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let inner = &*self.0;
        let m = inner.q - 1;
        Ok(Elem(inner.exp[((m - inner.log[a.0 as usize]) % m) as usize]))
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    /// `a^k` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut result = Elem::ONE;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    /// `a^k` for a possibly negative exponent; panics for `0^k`, `k < 0`.
    pub fn pow_signed(&self, a: Elem, k: i64) -> Elem {
        if k >= 0 {
            self.pow(a, k as u64)
        } else {
            self.pow(self.inv(a), k.unsigned_abs())
        }
    }

    /// Discrete log to the base of the canonical primitive element.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a.0 != 0).then(|| self.0.log[a.0 as usize])
    }

    /// `primitive^i`.
    pub fn exp(&self, i: u64) -> Elem {
        let m = (self.0.q - 1) as u64;
        Elem(self.0.exp[(i % m) as usize])
    }

    /// `a^(p^j)`.
    pub fn frobenius(&self, a: Elem, j: u32) -> Elem {
        if a.0 == 0 {
            return a;
        }
        let inner = &*self.0;
        let m = (inner.q - 1) as u64;
        let mut shift = 1u64;
        for _ in 0..(j % inner.n) {
            shift = shift * inner.p as u64 % m;
        }
        Elem(inner.exp[((inner.log[a.0 as usize] as u64 * shift) % m) as usize])
    }

    fn check_divisor(&self, e: u32) -> Result<()> {
        if e == 0 || !self.0.n.is_multiple_of(e) {
            Err(Error::NotADivisor { e, n: self.0.n })
        } else {
            Ok(())
        }
    }

    /// Relative trace to the subfield GF(p^e): `sum_{i < n/e} a^(p^(e i))`.
    pub fn trace(&self, a: Elem, e: u32) -> Result<Elem> {
        self.check_divisor(e)?;
        Ok((0..self.0.n / e)
            .map(|i| self.frobenius(a, e * i))
            .fold(Elem::ZERO, |acc, x| self.add(acc, x)))
    }

    /// Absolute trace to GF(p).
    pub fn abs_trace(&self, a: Elem) -> Elem {
        self.trace(a, 1).expect("1 divides every degree")
    }

    /// Whether `a` is a square; always true in characteristic 2.
    pub fn is_square(&self, a: Elem) -> bool {
        self.0.p == 2 || a.0 == 0 || self.0.log[a.0 as usize].is_multiple_of(2)
    }

    /// Elements of the subfield GF(p^e), in encoding order.
    pub fn subfield(&self, e: u32) -> Result<Vec<Elem>> {
        self.check_divisor(e)?;
        Ok(self.elements().filter(|&a| self.frobenius(a, e) == a).collect())
    }

    /// A generator of the multiplicative group of GF(p^e).
    pub fn subfield_generator(&self, e: u32) -> Result<Elem> {
        self.check_divisor(e)?;
        let q = self.0.q as u64;
        let s = (self.0.p as u64).pow(e);
        Ok(self.exp((q - 1) / (s - 1)))
    }

    /// Whether `a` is a `k`-th power of a nonzero element.
    pub fn is_nonzero_power(&self, a: Elem, k: u64) -> bool {
        match self.log(a) {
            None => false,
            Some(l) => {
                let m = (self.0.q - 1) as u64;
                let g = gcd(k % m, m);
                (l as u64).is_multiple_of(g)
            }
        }
    }

    /// Whether the listed values (one per field element) are all distinct.
    pub fn is_permutation<I: IntoIterator<Item = Elem>>(&self, values: I) -> bool {
        let q = self.0.q as usize;
        let mut seen = vec![0u64; q.div_ceil(64)];
        let mut count = 0;
        for v in values {
            let (w, b) = (v.0 as usize / 64, v.0 % 64);
            if seen[w] >> b & 1 == 1 {
                return false;
            }
            seen[w] |= 1 << b;
            count += 1;
        }
        count == q
    }

    pub fn wrap(&self, a: Elem) -> FieldElement {
        FieldElement { field: self.clone(), value: a }
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// An element bundled with its field, with operand checks on every
/// operation. The bulk algorithms work on bare [`Elem`]s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl FieldElement {
    pub fn new(field: &Field, enc: u64) -> Result<Self> {
        Ok(field.wrap(field.elem(enc)?))
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.field.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.field.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.field.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let inv = self.field.checked_inv(other.value)?;
        Ok(self.field.wrap(self.field.mul(self.value, inv)))
    }

    pub fn neg(&self) -> Self {
        self.field.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.field.wrap(self.field.checked_inv(self.value)?))
    }

    pub fn pow(&self, k: u64) -> Self {
        self.field.wrap(self.field.pow(self.value, k))
    }

    pub fn frobenius(&self, j: u32) -> Self {
        self.field.wrap(self.field.frobenius(self.value, j))
    }

    pub fn trace(&self, e: u32) -> Result<Self> {
        Ok(self.field.wrap(self.field.trace(self.value, e)?))
    }

    pub fn is_square(&self) -> bool {
        self.field.is_square(self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, n: u32) -> Field {
        Field::new(p, n, None).unwrap()
    }

    /// Multiplication by schoolbook polynomial reduction, independent of the
    /// log tables.
    fn poly_mul_oracle(f: &Field, a: Elem, b: Elem) -> Elem {
        let (p, n) = (f.p() as u64, f.n() as usize);
        let da = f.coefficients(a);
        let db = f.coefficients(b);
        let mut prod = vec![0u64; 2 * n];
        for i in 0..n {
            for j in 0..n {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for deg in (n..2 * n).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            // x^n = -sum c_i x^i
            for (i, &m) in f.modulus().iter().enumerate() {
                let idx = deg - n + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        Elem(prod[..n].iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32)
    }

    #[test]
    fn default_fields() {
        let f16 = gf(2, 4);
        assert_eq!(f16.modulus(), &[1, 1, 0, 0]);
        assert_eq!(f16.primitive(), Elem(2));
        let lam = f16.primitive();
        assert_eq!(f16.pow(lam, 4), f16.add(lam, Elem::ONE));

        let f2 = gf(2, 1);
        assert_eq!(f2.primitive(), Elem(1));

        let f9 = gf(3, 2);
        assert_eq!(f9.modulus(), &[1, 0]);
        assert_eq!(f9.primitive(), Elem(4));
    }

    #[test]
    fn primitive_is_least_full_order_element_gf9() {
        let f9 = gf(3, 2);
        let order = |a: Elem| (1..=8u64).find(|&k| f9.pow(a, k) == Elem::ONE).unwrap();
        let least = f9.nonzero().find(|&a| order(a) == 8).unwrap();
        assert_eq!(least, Elem(4));
    }

    #[test]
    fn arith_examples() {
        let f16 = gf(2, 4);
        assert_eq!(f16.mul(Elem(2), Elem(2)), Elem(4));
        assert_eq!(f16.pow(Elem(2), 4), Elem(3));
        let f9 = gf(3, 2);
        assert_eq!(f9.mul(Elem(3), Elem(3)), Elem(2));
    }

    #[test]
    fn mul_agrees_with_polynomial_oracle() {
        for (p, n) in [(2, 4), (3, 2), (3, 3), (5, 2), (2, 6), (7, 1)] {
            let f = gf(p, n);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), poly_mul_oracle(&f, a, b), "GF({p}^{n}) {a}*{b}");
                }
            }
        }
    }

    #[test]
    fn additive_fallback_matches_table() {
        // GF(3^7) is above the table limit; compare against digit arithmetic.
        let f = gf(3, 7);
        for a in (0..f.q()).step_by(97).map(Elem) {
            for b in (0..f.q()).step_by(89).map(Elem) {
                let s = f.add(a, b);
                let ds: Vec<u32> = f
                    .coefficients(a)
                    .iter()
                    .zip(f.coefficients(b))
                    .map(|(x, y)| (x + y) % 3)
                    .collect();
                assert_eq!(f.coefficients(s), ds);
            }
        }
    }

    #[test]
    fn frobenius_examples() {
        let f16 = gf(2, 4);
        assert_eq!(f16.frobenius(Elem(2), 1), Elem(4));
        assert!(f16.elements().all(|a| f16.frobenius(a, 4) == a));
        let f9 = gf(3, 2);
        assert_eq!(f9.frobenius(Elem(4), 1), f9.pow(Elem(4), 3));
    }

    #[test]
    fn trace_examples() {
        let f4 = gf(2, 2);
        assert_eq!(f4.trace(Elem(2), 1).unwrap(), Elem::ONE);
        let f16 = gf(2, 4);
        let lam = Elem(2);
        let direct = [1, 2, 4, 8]
            .iter()
            .fold(Elem::ZERO, |acc, &k| f16.add(acc, f16.pow(lam, k)));
        assert_eq!(f16.trace(lam, 1).unwrap(), direct);
        assert_eq!(direct, Elem::ZERO);
        for c in f16.subfield(2).unwrap() {
            assert_eq!(f16.trace(c, 2).unwrap(), Elem::ZERO);
        }
        assert_eq!(f16.trace(lam, 3), Err(Error::NotADivisor { e: 3, n: 4 }));
    }

    #[test]
    fn squares() {
        let f9 = gf(3, 2);
        assert!(!f9.is_square(Elem(4)));
        assert!(f9.is_square(Elem::ZERO));
        let f5 = gf(5, 1);
        assert!(!f5.is_square(Elem(2)));
        for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (3, 3)] {
            let f = gf(p, n);
            let squares: std::collections::BTreeSet<Elem> =
                f.nonzero().map(|b| f.mul(b, b)).collect();
            assert_eq!(squares.len() as u32, (f.q() - 1) / 2);
            assert!(f.nonzero().all(|a| f.is_square(a) == squares.contains(&a)));
        }
    }

    #[test]
    fn subfields() {
        let f16 = gf(2, 4);
        let k = f16.subfield(2).unwrap();
        assert_eq!(k.len(), 4);
        for &a in &k {
            for &b in &k {
                assert!(k.contains(&f16.add(a, b)));
                assert!(k.contains(&f16.mul(a, b)));
            }
        }
        assert_eq!(gf(3, 2).subfield(1).unwrap(), vec![Elem(0), Elem(1), Elem(2)]);
        assert_eq!(f16.subfield(1).unwrap(), vec![Elem(0), Elem(1)]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 2, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(2, 0, None).unwrap_err(), Error::ZeroDegree);
        assert_eq!(Field::new(2, 4, Some(&[1, 0, 1, 0])).unwrap_err(), Error::ReducibleModulus { p: 2 });
        assert!(matches!(Field::new(2, 17, None), Err(Error::FieldTooLarge { .. })));
        let alt = Field::new(2, 4, Some(&[1, 0, 0, 1])).unwrap();
        assert_eq!(alt.modulus(), &[1, 0, 0, 1]);
        assert_ne!(alt, gf(2, 4));
    }

    #[test]
    fn checked_elements() {
        let f9 = gf(3, 2);
        let f16 = gf(2, 4);
        let a = FieldElement::new(&f9, 4).unwrap();
        let b = FieldElement::new(&f16, 4).unwrap();
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        let zero = FieldElement::new(&f9, 0).unwrap();
        assert_eq!(zero.inv(), Err(Error::ZeroInverse));
        assert_eq!(a.div(&zero), Err(Error::ZeroInverse));
        assert_eq!(a.mul(&a.inv().unwrap()).unwrap().value(), Elem::ONE);
        assert!(FieldElement::new(&f9, 9).is_err());
    }

    #[test]
    fn deterministic_construction() {
        for (p, n) in [(2, 4), (3, 3), (5, 2), (2, 8)] {
            let a = gf(p, n);
            let b = gf(p, n);
            assert_eq!(a.modulus(), b.modulus());
            assert_eq!(a.primitive(), b.primitive());
            assert!(a.elements().all(|x| a.exp(x.0 as u64) == b.exp(x.0 as u64)));
        }
    }
}
