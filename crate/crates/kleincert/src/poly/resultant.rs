//! Sylvester resultants for eliminating one of the three variables, and
//! fraction-free determinants of polynomial matrices.
//!
//! Sign convention: the Sylvester matrix is laid out with the rows built
//! from p first, then the rows built from q; the resultant is the exact
//! determinant of that matrix. Only vanishing / non-vanishing is consumed
//! downstream.

use crate::poly::MultiPoly;
use crate::ring::Ring;

/// Exact determinant of a square matrix over any integral domain, by
/// fraction-free (Bareiss) elimination. Division-free pivots: each
/// elimination step divides by the previous pivot, which is exact.
pub fn bareiss_det<C: Ring>(mut m: Vec<Vec<C>>) -> C {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix");
    if n == 1 {
        return m[0][0].clone();
    }
    let mut sign_flip = false;
    let mut prev: Option<C> = None;
    for k in 0..n - 1 {
        // pivot search
        if m[k][k].is_zero() {
            let Some(sw) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return m[k][k].zero_like();
            };
            m.swap(k, sw);
            sign_flip = !sign_flip;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let mut v = pivot.mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                if let Some(p) = &prev {
                    v = v
                        .exact_div(p)
                        .expect("Bareiss division is exact over an integral domain");
                }
                m[i][j] = v;
            }
            m[i][k] = m[i][k].zero_like();
        }
        prev = Some(pivot);
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        d.neg()
    } else {
        d
    }
}

/// Exact determinant of a 3x3 or 4x4 matrix of polynomials by cofactor
/// expansion along the first row.
pub fn poly_matrix_det<C: Ring>(m: &[Vec<MultiPoly<C>>]) -> MultiPoly<C> {
    let n = m.len();
    assert!(
        (n == 3 || n == 4) && m.iter().all(|r| r.len() == n),
        "expected a square matrix of size 3 or 4"
    );
    det_rec(m, &(0..n).collect::<Vec<_>>(), 0)
}

fn det_rec<C: Ring>(m: &[Vec<MultiPoly<C>>], cols: &[usize], row: usize) -> MultiPoly<C> {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = MultiPoly::zero();
    for (i, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(m, &rest, row + 1);
        let term = m[row][c].mul(&minor);
        acc = if i % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// Error from `resultant`: both inputs constant in the eliminated variable.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("resultant undefined: both polynomials are constant in the eliminated variable")]
pub struct ResultantUndefined;

/// Sylvester resultant of p and q with respect to y_{var+1}: eliminates
/// that variable, returning a polynomial in the remaining two.
pub fn resultant<C: Ring>(
    p: &MultiPoly<C>,
    q: &MultiPoly<C>,
    var: usize,
) -> Result<MultiPoly<C>, ResultantUndefined> {
    assert!(!p.is_zero() && !q.is_zero(), "resultant of zero polynomial");
    let pc = p.univariate_in(var);
    let qc = q.univariate_in(var);
    let dp = pc.len() - 1;
    let dq = qc.len() - 1;
    if dp == 0 && dq == 0 {
        return Err(ResultantUndefined);
    }
    // degenerate cases: Res(const, q) = const^deg(q)
    if dp == 0 {
        return Ok(pc[0].pow(dq as u32));
    }
    if dq == 0 {
        return Ok(qc[0].pow(dp as u32));
    }
    let n = dp + dq;
    let zero = MultiPoly::zero();
    let mut m: Vec<Vec<MultiPoly<C>>> = vec![vec![zero; n]; n];
    // p-rows first, highest coefficient leading each row
    for r in 0..dq {
        for (k, c) in pc.iter().enumerate() {
            m[r][r + dp - k] = c.clone();
        }
    }
    for r in 0..dp {
        for (k, c) in qc.iter().enumerate() {
            m[dq + r][r + dq - k] = c.clone();
        }
    }
    Ok(bareiss_det(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat_int, Rational};

    fn y(i: usize) -> MultiPoly<Rational> {
        MultiPoly::var(i, rat_int(1))
    }

    #[test]
    fn linear_resultant() {
        // Res_{y2}(y2 - y1, y2 + y1) = 2 y1 under the fixed convention
        // (p-rows first; root formula gives q at the root y2 = y1).
        // Only vanishing / non-vanishing is consumed downstream.
        let r = resultant(&y(1).sub(&y(0)), &y(1).add(&y(0)), 1).unwrap();
        assert_eq!(r, y(0).scale_int(2));
    }

    #[test]
    fn resultant_with_monomial() {
        // Res_{y3}(y3^2 - y1 y2, y3) = -y1 y2 up to the fixed convention
        let p = y(2).pow(2).sub(&y(0).mul(&y(1)));
        let r = resultant(&p, &y(2), 2).unwrap();
        assert_eq!(r, y(0).mul(&y(1)).neg());
    }

    #[test]
    fn resultant_matches_brute_force_sylvester() {
        // two generic ternary quadratics, treated as quadratics in y3:
        // p = a y3^2 + b y3 + c, q = d y3^2 + e y3 + f with polynomial
        // coefficients; compare against the explicit 4x4 determinant
        let a = rat_int(2);
        let b = y(0).add(&y(1));
        let c = y(0).mul(&y(1)).scale_int(3);
        let d = rat_int(5);
        let e = y(0).sub(&y(1).scale_int(2));
        let f = y(1).pow(2);
        let p = y(2).pow(2).scale(&a).add(&y(2).mul(&b)).add(&c);
        let q = y(2).pow(2).scale(&d).add(&y(2).mul(&e)).add(&f);
        let got = resultant(&p, &q, 2).unwrap();

        // independent oracle: cofactor expansion of the 4x4 Sylvester matrix
        let ap = MultiPoly::constant(a);
        let dp = MultiPoly::constant(d);
        let z = MultiPoly::zero();
        let rows = vec![
            vec![ap.clone(), b.clone(), c.clone(), z.clone()],
            vec![z.clone(), ap.clone(), b.clone(), c.clone()],
            vec![dp.clone(), e.clone(), f.clone(), z.clone()],
            vec![z.clone(), dp.clone(), e.clone(), f.clone()],
        ];
        let oracle = poly_matrix_det(&rows);
        assert_eq!(got, oracle);
    }

    #[test]
    fn resultant_vanishes_on_common_root() {
        // p and q share the root locus y3 = y1 (substituted common root)
        let p = y(2).sub(&y(0));
        let q = y(2).pow(2).sub(&y(0).pow(2));
        let r = resultant(&p, &q, 2).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn det_diag_and_zero_row() {
        let rows3 = vec![
            vec![y(0), MultiPoly::zero(), MultiPoly::zero()],
            vec![MultiPoly::zero(), y(1), MultiPoly::zero()],
            vec![MultiPoly::zero(), MultiPoly::zero(), y(2)],
        ];
        assert_eq!(poly_matrix_det(&rows3), y(0).mul(&y(1)).mul(&y(2)));
        let zero_row = vec![
            vec![y(0), y(1), y(2), y(0)],
            vec![MultiPoly::zero(); 4],
            vec![y(2), y(0), y(1), y(1)],
            vec![y(1), y(2), y(0), y(2)],
        ];
        assert!(poly_matrix_det(&zero_row).is_zero());
    }

    #[test]
    fn hessian_of_triple_product() {
        // Hessian determinant of y1 y2 y3 is 2 y1 y2 y3
        let p = y(0).mul(&y(1)).mul(&y(2));
        let h: Vec<Vec<MultiPoly<Rational>>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| p.partial_derivative(i).partial_derivative(j))
                    .collect()
            })
            .collect();
        assert_eq!(poly_matrix_det(&h), p.scale_int(2));
    }

    #[test]
    fn both_constant_in_var_errors() {
        assert_eq!(resultant(&y(0), &y(1), 2).unwrap_err(), ResultantUndefined);
    }
}
