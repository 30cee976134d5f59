//! Dense linear algebra over a [`Field`], sized for the 3x3 and 4x4 work the
//! geometry needs (and the k x k Moore systems of the linearized module).

use crate::gf::{Elem, Field};

pub type Matrix = Vec<Vec<Elem>>;

/// Brings `rows` to reduced row-echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(field: &Field, rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c];
            for j in 0..ncols {
                let sub = field.mul(factor, rows[r][j]);
                rows[i][j] = field.sub(rows[i][j], sub);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Basis of `{x : rows * x = 0}`, itself returned in reduced row-echelon form.
pub fn nullspace(field: &Field, rows: &[Vec<Elem>], ncols: usize) -> Matrix {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Elem::ZERO; ncols];
        v[free] = Elem::ONE;
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = field.neg(row[free]);
        }
        basis.push(v);
    }
    rref(field, &mut basis);
    basis
}

pub fn dot(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(Elem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

pub fn mat_mul(field: &Field, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(Elem::ZERO, |acc, k| field.add(acc, field.mul(row[k], b[k][j])))
                })
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mat(field: &Field, v: &[Elem], m: &[Vec<Elem>]) -> Vec<Elem> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| v.iter().zip(m).fold(Elem::ZERO, |acc, (&x, row)| field.add(acc, field.mul(x, row[j]))))
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect())
        .collect()
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(field: &Field, m: &[Vec<Elem>]) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().copied().chain(id).collect())
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Extends independent rows to a basis of the whole space using standard
/// basis vectors (lowest index first).
pub fn complete_basis(field: &Field, rows: &[Vec<Elem>], dim: usize) -> Matrix {
    let mut out = rows.to_vec();
    for i in 0..dim {
        if out.len() == dim {
            break;
        }
        let mut e = vec![Elem::ZERO; dim];
        e[i] = Elem::ONE;
        out.push(e);
        if rank(field, &out) < out.len() {
            out.pop();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_and_inverse() {
        let f = Field::new(5, 1, None).unwrap();
        let e = |v: u32| Elem(v);
        let m = vec![vec![e(1), e(2), e(3)], vec![e(0), e(1), e(4)]];
        let ns = nullspace(&f, &m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            assert_eq!(dot(&f, row, &ns[0]), Elem::ZERO);
        }
        let sq = vec![vec![e(1), e(2), e(0)], vec![e(0), e(1), e(4)], vec![e(3), e(0), e(2)]];
        let inv = inverse(&f, &sq).unwrap();
        assert_eq!(mat_mul(&f, &sq, &inv), identity(3));
        let singular = vec![vec![e(1), e(2)], vec![e(2), e(4)]];
        assert!(inverse(&f, &singular).is_none());
        assert_eq!(rank(&f, &singular), 1);
    }

    #[test]
    fn basis_completion() {
        let f = Field::new(3, 1, None).unwrap();
        let rows = vec![vec![Elem(1), Elem(1), Elem(0)]];
        let full = complete_basis(&f, &rows, 3);
        assert_eq!(full.len(), 3);
        assert_eq!(rank(&f, &full), 3);
    }
}
