//! Exact 3x3 linear algebra over a cyclotomic field.

use std::fmt;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclotomic::{FieldElement, FieldRef};
use crate::ring::Rational;

/// A 3x3 matrix with all nine entries in one cyclotomic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix3 {
    entries: [[FieldElement; 3]; 3],
}

pub type Vector3 = [FieldElement; 3];

impl Matrix3 {
    pub fn new(entries: [[FieldElement; 3]; 3]) -> Self {
        let n = entries[0][0].conductor();
        for row in &entries {
            for e in row {
                assert_eq!(e.conductor(), n, "matrix entries in different fields");
            }
        }
        Matrix3 { entries }
    }

    pub fn identity(field: &FieldRef) -> Self {
        Self::scalar(&FieldElement::one(field))
    }

    pub fn scalar(c: &FieldElement) -> Self {
        let z = c.zero_elem();
        Matrix3 {
            entries: [
                [c.clone(), z.clone(), z.clone()],
                [z.clone(), c.clone(), z.clone()],
                [z.clone(), z.clone(), c.clone()],
            ],
        }
    }

    pub fn diagonal(d: [FieldElement; 3]) -> Self {
        let z = d[0].zero_elem();
        let [a, b, c] = d;
        Matrix3::new([
            [a, z.clone(), z.clone()],
            [z.clone(), b, z.clone()],
            [z.clone(), z.clone(), c],
        ])
    }

    pub fn from_rational_rows(field: &FieldRef, rows: [[i64; 3]; 3]) -> Self {
        let mk = |n| FieldElement::from_int(field, n);
        Matrix3::new(rows.map(|r| r.map(mk)))
    }

    pub fn field(&self) -> &FieldRef {
        self.entries[0][0].field()
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[[FieldElement; 3]; 3] {
        &self.entries
    }

    pub fn mul(&self, rhs: &Matrix3) -> Matrix3 {
        let z = self.entries[0][0].zero_elem();
        let mut out: [[FieldElement; 3]; 3] = [
            [z.clone(), z.clone(), z.clone()],
            [z.clone(), z.clone(), z.clone()],
            [z.clone(), z.clone(), z.clone()],
        ];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = z.clone();
                for (k, rrow) in rhs.entries.iter().enumerate() {
                    let a = &self.entries[i][k];
                    if a.is_zero() || rrow[j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(&rrow[j]));
                }
                out[i][j] = acc;
            }
        }
        Matrix3 { entries: out }
    }

    pub fn apply(&self, v: &Vector3) -> Vector3 {
        let z = self.entries[0][0].zero_elem();
        let mut out = [z.clone(), z.clone(), z];
        for i in 0..3 {
            let mut acc = out[i].clone();
            for k in 0..3 {
                if self.entries[i][k].is_zero() || v[k].is_zero() {
                    continue;
                }
                acc = acc.add(&self.entries[i][k].mul(&v[k]));
            }
            out[i] = acc;
        }
        out
    }

    pub fn transpose(&self) -> Matrix3 {
        let e = &self.entries;
        Matrix3 {
            entries: [
                [e[0][0].clone(), e[1][0].clone(), e[2][0].clone()],
                [e[0][1].clone(), e[1][1].clone(), e[2][1].clone()],
                [e[0][2].clone(), e[1][2].clone(), e[2][2].clone()],
            ],
        }
    }

    pub fn det(&self) -> FieldElement {
        let e = &self.entries;
        let m = |a: &FieldElement, b: &FieldElement| a.mul(b);
        let t1 = m(&e[0][0], &m(&e[1][1], &e[2][2]).sub(&m(&e[1][2], &e[2][1])));
        let t2 = m(&e[0][1], &m(&e[1][0], &e[2][2]).sub(&m(&e[1][2], &e[2][0])));
        let t3 = m(&e[0][2], &m(&e[1][0], &e[2][1]).sub(&m(&e[1][1], &e[2][0])));
        t1.sub(&t2).add(&t3)
    }

    /// Adjugate (transpose of the cofactor matrix), so M * adj(M) = det(M) I.
    pub fn adjugate(&self) -> Matrix3 {
        let e = &self.entries;
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
            e[r0][c0].mul(&e[r1][c1]).sub(&e[r0][c1].mul(&e[r1][c0]))
        };
        let mut out = Matrix3::scalar(&self.entries[0][0].zero_elem());
        // cofactor C_ij lands at (j, i)
        let rows = [(1, 2), (0, 2), (0, 1)];
        let cols = [(1, 2), (0, 2), (0, 1)];
        for (i, &(r0, r1)) in rows.iter().enumerate() {
            for (j, &(c0, c1)) in cols.iter().enumerate() {
                let mut cof = minor(r0, r1, c0, c1);
                if (i + j) % 2 == 1 {
                    cof = cof.neg();
                }
                out.entries[j][i] = cof;
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<Matrix3> {
        let d = self.det();
        let dinv = d.inv()?;
        let adj = self.adjugate();
        Some(adj.scale(&dinv))
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix3 {
        Matrix3 {
            entries: self.entries.clone().map(|row| row.map(|e| e.mul(c))),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Matrix3 {
        Matrix3 {
            entries: self.entries.clone().map(|row| row.map(|e| e.scale(r))),
        }
    }

    pub fn add(&self, rhs: &Matrix3) -> Matrix3 {
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.entries[i][j] = self.entries[i][j].add(&rhs.entries[i][j]);
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix3) -> Matrix3 {
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.entries[i][j] = self.entries[i][j].sub(&rhs.entries[i][j]);
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix3::identity(self.field())
    }

    /// Coefficients (c0, c1, c2) of the monic characteristic polynomial
    /// det(x I - M) = x^3 + c2 x^2 + c1 x + c0.
    pub fn char_poly(&self) -> [FieldElement; 3] {
        let tr = self.trace();
        let det = self.det();
        // sum of principal 2x2 minors
        let e = &self.entries;
        let pm = |a: usize, b: usize| e[a][a].mul(&e[b][b]).sub(&e[a][b].mul(&e[b][a]));
        let m2 = pm(0, 1).add(&pm(0, 2)).add(&pm(1, 2));
        [det.neg(), m2, tr.neg()]
    }

    pub fn trace(&self) -> FieldElement {
        self.entries[0][0]
            .add(&self.entries[1][1])
            .add(&self.entries[2][2])
    }

    /// Least k <= bound with M^k = I; None when the bound is exceeded.
    pub fn order(&self, bound: usize) -> Option<usize> {
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    /// Exact basis of the null space; empty when the matrix is invertible.
    pub fn kernel(&self) -> Vec<Vector3> {
        let field = self.field().clone();
        let zero = FieldElement::zero(&field);
        let one = FieldElement::one(&field);
        // Gauss-Jordan to reduced row echelon form (exact field division).
        let mut m: Vec<[FieldElement; 3]> = self.entries.to_vec();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut rank_row = 0usize;
        for col in 0..3 {
            let Some(pr) = (rank_row..3).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank_row, pr);
            let inv = m[rank_row][col].inv().expect("pivot invertible");
            for c in 0..3 {
                m[rank_row][c] = m[rank_row][c].mul(&inv);
            }
            for r in 0..3 {
                if r == rank_row || m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].clone();
                for c in 0..3 {
                    m[r][c] = m[r][c].sub(&factor.mul(&m[rank_row][c]));
                }
            }
            pivot_cols.push(col);
            rank_row += 1;
        }
        // one kernel vector per free column
        let mut basis = Vec::new();
        for fc in (0..3).filter(|c| !pivot_cols.contains(c)) {
            let mut v = [zero.clone(), zero.clone(), zero.clone()];
            v[fc] = one.clone();
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = m[i][fc].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Canonical projective representative: the matrix scaled so its first
    /// nonzero entry in row-major order is 1. Nonzero matrices only.
    pub fn canonical_projective(&self) -> Matrix3 {
        for i in 0..3 {
            for j in 0..3 {
                if !self.entries[i][j].is_zero() {
                    let inv = self.entries[i][j].inv().unwrap();
                    return self.scale(&inv);
                }
            }
        }
        panic!("zero matrix has no projective representative");
    }

    /// Is rhs a scalar multiple of self (both nonzero)?
    pub fn is_scalar_multiple_of(&self, rhs: &Matrix3) -> bool {
        self.canonical_projective() == rhs.canonical_projective()
    }
}

impl fmt::Debug for Matrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in &self.entries {
            writeln!(f, "  [{}, {}, {}]", row[0], row[1], row[2])?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<&FieldElement>> =
            self.entries.iter().map(|r| r.iter().collect()).collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix3 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<FieldElement>> = Vec::deserialize(deserializer)?;
        if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
            return Err(D::Error::custom("matrix must be 3x3"));
        }
        let mut it = rows.into_iter().map(|r| {
            let mut jt = r.into_iter();
            [jt.next().unwrap(), jt.next().unwrap(), jt.next().unwrap()]
        });
        Ok(Matrix3::new([
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        ]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::cyclotomic::CyclotomicField;

    fn q84() -> FieldRef {
        CyclotomicField::new(84).unwrap()
    }

    /// tau = diag(eps, eps^2, eps^4) with eps = zeta_7 = zeta_84^12.
    fn tau() -> Matrix3 {
        let f = q84();
        let eps = |k: i64| FieldElement::root_of_unity(&f, 12 * k);
        Matrix3::diagonal([eps(1), eps(2), eps(4)])
    }

    #[test]
    fn det_of_tau_is_one() {
        // eps * eps^2 * eps^4 = eps^7 = 1
        assert_eq!(tau().det(), FieldElement::one(&q84()));
    }

    #[test]
    fn permutation_determinant() {
        let f = q84();
        let chi = Matrix3::from_rational_rows(&f, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
        // even cycle structure: det = +1
        assert_eq!(chi.det(), FieldElement::one(&f));
        assert_eq!(chi.order(10), Some(3));
    }

    #[test]
    fn identity_facts() {
        let f = q84();
        let id = Matrix3::identity(&f);
        assert_eq!(id.mul(&id), id);
        assert_eq!(id.order(5), Some(1));
        assert!(id.kernel().is_empty());
    }

    #[test]
    fn tau_order_seven() {
        assert_eq!(tau().order(100), Some(7));
    }

    #[test]
    fn inverse_is_exact() {
        let f = q84();
        let chi = Matrix3::from_rational_rows(&f, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
        let m = tau().mul(&chi);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn kernel_of_shifted_tau() {
        // tau - eps I has one-dimensional kernel spanned by (1, 0, 0)
        let f = q84();
        let eps = FieldElement::root_of_unity(&f, 12);
        let shifted = tau().sub(&Matrix3::scalar(&eps));
        let basis = shifted.kernel();
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        assert!(!v[0].is_zero() && v[1].is_zero() && v[2].is_zero());
        // zero matrix: full kernel
        let z = Matrix3::scalar(&FieldElement::zero(&f));
        assert_eq!(z.kernel().len(), 3);
    }

    #[test]
    fn char_poly_of_diagonal() {
        let f = q84();
        let m = tau();
        let [c0, c1, c2] = m.char_poly();
        // x^3 + c2 x^2 + c1 x + c0 must vanish on each eigenvalue
        for k in [1i64, 2, 4] {
            let x = FieldElement::root_of_unity(&f, 12 * k);
            let val = x.pow(3).add(&c2.mul(&x.pow(2))).add(&c1.mul(&x)).add(&c0);
            assert!(val.is_zero());
        }
    }

    #[test]
    fn serde_matrix_round_trip() {
        let m = tau();
        let json = serde_json::to_string(&m).unwrap();
        let back: Matrix3 = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
    }
}
