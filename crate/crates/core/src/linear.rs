//! Square matrices over a [`FiniteField`] and their permutation actions on
//! vectors and projective points.

use std::collections::HashMap;

use crate::galois::{FieldElement, FiniteField};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    dim: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Matrix {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Matrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(field: &FiniteField, dim: usize) -> Matrix {
        let mut entries = vec![field.zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = field.one();
        }
        Matrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.dim + c]
    }

    pub fn mul(&self, field: &FiniteField, other: &Matrix) -> Matrix {
        let n = self.dim;
        let mut entries = vec![field.zero(); n * n];
        for r in 0..n {
            for c in 0..n {
                let mut acc = field.zero();
                for k in 0..n {
                    acc = field.add(acc, field.mul(self.get(r, k), other.get(k, c)));
                }
                entries[r * n + c] = acc;
            }
        }
        Matrix { dim: n, entries }
    }

    pub fn apply(&self, field: &FiniteField, v: &[FieldElement]) -> Vec<FieldElement> {
        (0..self.dim)
            .map(|r| {
                (0..self.dim).fold(field.zero(), |acc, k| {
                    field.add(acc, field.mul(self.get(r, k), v[k]))
                })
            })
            .collect()
    }

    pub fn determinant(&self, field: &FiniteField) -> FieldElement {
        let n = self.dim;
        let mut a: Vec<Vec<FieldElement>> = (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c)).collect())
            .collect();
        let mut det = field.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return field.zero();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = field.neg(det);
            }
            det = field.mul(det, a[col][col]);
            let inv = field.inv(a[col][col]).expect("nonzero pivot");
            let (top, rest) = a.split_at_mut(col + 1);
            let pivot_row = &top[col];
            for row in rest {
                let factor = field.mul(row[col], inv);
                for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = field.sub(*x, field.mul(factor, y));
                }
            }
        }
        det
    }

    pub fn is_identity(&self, field: &FiniteField) -> bool {
        *self == Matrix::identity(field, self.dim)
    }

    /// Multiplicative order, or `None` if it exceeds `limit`.
    pub fn order(&self, field: &FiniteField, limit: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity(field) {
                return Some(k);
            }
            acc = acc.mul(field, self);
        }
        None
    }
}

/// Scales a nonzero vector so its first nonzero coordinate is one.
pub fn normalize(field: &FiniteField, v: &[FieldElement]) -> Vec<FieldElement> {
    let lead = v
        .iter()
        .copied()
        .find(|x| !x.is_zero())
        .expect("nonzero vector");
    let inv = field.inv(lead).expect("nonzero lead");
    v.iter().map(|&x| field.mul(x, inv)).collect()
}

/// All vectors of `field^dim` in encoding order (first coordinate least significant).
pub fn all_vectors(field: &FiniteField, dim: usize) -> Vec<Vec<FieldElement>> {
    let q = field.size() as u64;
    (0..q.pow(dim as u32))
        .map(|mut code| {
            (0..dim)
                .map(|_| {
                    let e = field.element((code % q) as u32);
                    code /= q;
                    e
                })
                .collect()
        })
        .collect()
}

/// Points of the projective space of `field^dim`, as normalized vectors.
pub fn projective_points(field: &FiniteField, dim: usize) -> Vec<Vec<FieldElement>> {
    all_vectors(field, dim)
        .into_iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .filter(|v| normalize(field, v) == *v)
        .collect()
}

/// Orbit of a projective point under the given matrices, in breadth-first order.
pub fn projective_orbit(
    field: &FiniteField,
    mats: &[Matrix],
    start: Vec<FieldElement>,
) -> Vec<Vec<FieldElement>> {
    let start = normalize(field, &start);
    let mut seen: HashMap<Vec<FieldElement>, usize> = HashMap::new();
    seen.insert(start.clone(), 0);
    let mut orbit = vec![start];
    let mut head = 0;
    while head < orbit.len() {
        for m in mats {
            let img = normalize(field, &m.apply(field, &orbit[head]));
            if !seen.contains_key(&img) {
                seen.insert(img.clone(), orbit.len());
                orbit.push(img);
            }
        }
        head += 1;
    }
    orbit
}

/// Permutation induced by `m` on `points`; `projective` selects whether images are normalized.
/// Returns `None` if some image falls outside `points`.
pub fn induced_permutation(
    field: &FiniteField,
    m: &Matrix,
    points: &[Vec<FieldElement>],
    projective: bool,
) -> Option<Permutation> {
    let index: HashMap<&Vec<FieldElement>, u32> = points
        .iter()
        .enumerate()
        .map(|(i, v)| (v, i as u32))
        .collect();
    let images = points
        .iter()
        .map(|v| {
            let mut img = m.apply(field, v);
            if projective {
                img = normalize(field, &img);
            }
            index.get(&img).copied()
        })
        .collect::<Option<Vec<u32>>>()?;
    Permutation::from_images(images).ok()
}
