//! Semiinvariant spaces by degree: the twisted Reynolds operator with
//! rank extraction, the exact Molien series cross-check, characters of
//! polynomials, and an exhaustive low-degree semiinvariant scan over all
//! candidate characters.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::arith::{FieldElement, Matrix3};
use crate::group::MatrixGroup;
use crate::poly::{Exponents, MultiPoly};
use crate::ring::{rat_frac, Rational};

/// A character of the group, recorded by its values on the generators
/// (roots of unity). Values on arbitrary elements follow from the
/// recorded generator words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Character {
    pub values: Vec<FieldElement>,
}

impl Character {
    pub fn trivial(group: &MatrixGroup) -> Character {
        let one = FieldElement::one(group.field());
        Character {
            values: vec![one; group.generators().len()],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| {
            v.as_rational()
                .map_or(false, |r| r == Rational::from_integer(1.into()))
        })
    }

    /// chi(g) for every group element, by folding the generator word.
    pub fn element_values(&self, group: &MatrixGroup) -> Vec<FieldElement> {
        let one = FieldElement::one(group.field());
        (0..group.order())
            .map(|i| {
                let mut v = one.clone();
                for &gi in group.word(i) {
                    v = v.mul(&self.values[gi]);
                }
                v
            })
            .collect()
    }

    /// chi(g)^(-1) for every element (generator values are roots of
    /// unity, so the inverses are computed once per generator).
    pub fn inverse_element_values(&self, group: &MatrixGroup) -> Vec<FieldElement> {
        let inv_values: Vec<FieldElement> = self
            .values
            .iter()
            .map(|v| v.inv().expect("character values are units"))
            .collect();
        let one = FieldElement::one(group.field());
        (0..group.order())
            .map(|i| {
                let mut v = one.clone();
                for &gi in group.word(i) {
                    v = v.mul(&inv_values[gi]);
                }
                v
            })
            .collect()
    }

    /// Spot-check multiplicativity on a few random-ish element pairs.
    pub fn spot_check_multiplicative(&self, group: &MatrixGroup) -> bool {
        let vals = self.element_values(group);
        let n = group.order();
        let mut ok = true;
        for step in [1usize, 7, 13] {
            let a = step % n;
            let b = (3 * step + 1) % n;
            let prod = group.elements()[a].mul(&group.elements()[b]);
            let idx = group.element_index(&prod).expect("closed");
            ok &= vals[idx] == vals[a].mul(&vals[b]);
        }
        ok
    }
}

/// Decide whether p is a semiinvariant: for each generator, test
/// p(gamma y) = c * p(y) for a scalar c; returns the character or None.
pub fn character_of(p: &MultiPoly<FieldElement>, group: &MatrixGroup) -> Option<Character> {
    if p.is_zero() {
        return None;
    }
    let mut values = Vec::new();
    for gamma in group.generators() {
        let q = p.linear_substitution(gamma);
        let (le, lc) = p.leading_term().expect("nonzero");
        let qc = q.coeff(le)?;
        let c = qc.div(lc)?;
        if q != p.scale(&c) {
            return None;
        }
        values.push(c);
    }
    Some(Character { values })
}

/// One degree's semiinvariant space.
pub struct SemiinvariantSpace {
    pub degree: u32,
    /// reduced echelon basis, deterministic, leading coefficients 1
    pub basis: Vec<MultiPoly<FieldElement>>,
    /// rank of the twisted Reynolds operator on the degree-d monomials
    pub reynolds_rank: usize,
    /// exact Molien-series coefficient at t^degree
    pub molien_dim: usize,
}

impl SemiinvariantSpace {
    pub fn consistent(&self) -> bool {
        self.basis.len() == self.reynolds_rank && self.reynolds_rank == self.molien_dim
    }

    /// Does p lie in the span of the basis? (exact reduction to zero)
    pub fn contains(&self, p: &MultiPoly<FieldElement>) -> bool {
        let mut r = p.clone();
        for b in &self.basis {
            let (be, _) = b.leading_term().expect("basis nonzero");
            if let Some(c) = r.coeff(be) {
                let c = c.clone();
                r = r.sub(&b.scale(&c));
            }
        }
        r.is_zero()
    }
}

/// The semiinvariant spaces of all degrees 1..=d_max for one character,
/// computed by the twisted Reynolds operator (the group average of
/// chi(g)^(-1) p(g y)) applied to every monomial, followed by rank
/// extraction, with the dimension checked against the exact Molien
/// coefficient at each degree.
///
/// The group average is evaluated through the subgroup H of diagonal
/// elements: averaging over H multiplies each monomial by a computable
/// scalar (killing most monomials), and only the survivors are pushed
/// through the |G|/|H| coset substitutions.
pub fn semiinvariant_table(
    group: &MatrixGroup,
    chi: &Character,
    d_max: u32,
) -> Vec<SemiinvariantSpace> {
    let field = group.field();
    let chi_inv = chi.inverse_element_values(group);
    let molien = molien_dimensions(group, chi, d_max);

    // the diagonal subgroup H
    let diag: Vec<usize> = group
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, m)| (0..3).all(|i| (0..3).all(|j| i == j || m.entry(i, j).is_zero())))
        .map(|(i, _)| i)
        .collect();

    // left coset representatives: G = union of H r
    let mut visited = vec![false; group.order()];
    let mut reps: Vec<usize> = Vec::new();
    for e in 0..group.order() {
        if visited[e] {
            continue;
        }
        reps.push(e);
        for &h in &diag {
            let prod = group.elements()[h].mul(&group.elements()[e]);
            let idx = group.element_index(&prod).expect("closed");
            visited[idx] = true;
        }
    }

    // H-average scalar per monomial: s_e = (1/|H|) sum_h chi(h)^-1 h^e
    let monomials = all_monomials(d_max);
    // per diagonal element, powers of its three diagonal entries
    let diag_powers: Vec<[Vec<FieldElement>; 3]> = diag
        .iter()
        .map(|&h| {
            let m = &group.elements()[h];
            std::array::from_fn(|i| {
                let mut v = Vec::with_capacity(d_max as usize + 1);
                v.push(FieldElement::one(field));
                for k in 1..=d_max as usize {
                    let prev: &FieldElement = &v[k - 1];
                    v.push(prev.mul(m.entry(i, i)));
                }
                v
            })
        })
        .collect();
    let h_frac = rat_frac(1, diag.len() as i64);
    let mut survivors: Vec<(Exponents, FieldElement)> = Vec::new();
    for &e in &monomials {
        let mut s = FieldElement::zero(field);
        for (hi, &h) in diag.iter().enumerate() {
            let theta = diag_powers[hi][0][e.0[0] as usize]
                .mul(&diag_powers[hi][1][e.0[1] as usize])
                .mul(&diag_powers[hi][2][e.0[2] as usize]);
            s = s.add(&chi_inv[h].mul(&theta));
        }
        let s = s.scale(&h_frac);
        if !s.is_zero() {
            survivors.push((e, s));
        }
    }

    // coset substitutions: accumulate sum over reps of chi(r)^-1 m(r y),
    // computed over integer-scaled matrices to keep the inner loop in
    // integer arithmetic, with the denominator restored per degree.
    // Reps are processed in parallel and merged in fixed rep order, so
    // the result is independent of scheduling.
    use rayon::prelude::*;
    let contributions: Vec<Vec<MultiPoly<FieldElement>>> = reps
        .par_iter()
        .map(|&r| {
            let m = &group.elements()[r];
            let (scaled, den) = integer_scaled(m);
            let images: [MultiPoly<FieldElement>; 3] = std::array::from_fn(|i| {
                MultiPoly::from_terms([
                    ([1, 0, 0], scaled.entry(i, 0).clone()),
                    ([0, 1, 0], scaled.entry(i, 1).clone()),
                    ([0, 0, 1], scaled.entry(i, 2).clone()),
                ])
            });
            // chi(r)^-1 / den^d per degree
            let mut den_pow = vec![Rational::from_integer(1.into())];
            for k in 1..=d_max as usize {
                let prev = den_pow[k - 1].clone();
                den_pow.push(prev * Rational::from_integer(den.clone()));
            }
            let mut memo: HashMap<Exponents, MultiPoly<FieldElement>> = HashMap::new();
            survivors
                .iter()
                .map(|(e, _)| {
                    let img = MultiPoly::monomial_image(*e, &images, &mut memo);
                    let corr = chi_inv[r].scale(&den_pow[e.degree() as usize].recip());
                    img.scale(&corr)
                })
                .collect()
        })
        .collect();
    let mut acc: Vec<MultiPoly<FieldElement>> = vec![MultiPoly::zero(); survivors.len()];
    for contrib in contributions {
        for (a, c) in acc.iter_mut().zip(contrib) {
            *a = a.add(&c);
        }
    }
    let acc: HashMap<Exponents, MultiPoly<FieldElement>> =
        survivors.iter().map(|(e, _)| *e).zip(acc).collect();
    let coset_frac = rat_frac(1, reps.len() as i64);

    // assemble per degree: columns in deterministic monomial order
    let mut spaces = Vec::new();
    for d in 1..=d_max {
        let mut columns: Vec<MultiPoly<FieldElement>> = Vec::new();
        for (e, s) in &survivors {
            if e.degree() != d {
                continue;
            }
            let col = acc[e].scale(&s.scale(&coset_frac));
            if !col.is_zero() {
                columns.push(col);
            }
        }
        let basis = echelon_basis(columns);
        let rank = basis.len();
        spaces.push(SemiinvariantSpace {
            degree: d,
            basis,
            reynolds_rank: rank,
            molien_dim: molien[d as usize],
        });
    }
    spaces
}

/// Single-degree convenience wrapper.
pub fn semiinvariant_space(
    group: &MatrixGroup,
    degree: u32,
    chi: &Character,
) -> SemiinvariantSpace {
    semiinvariant_table(group, chi, degree)
        .into_iter()
        .find(|s| s.degree == degree)
        .expect("degree in range")
}

/// Scale a matrix to integer entries; returns (scaled, denominator).
fn integer_scaled(m: &Matrix3) -> (Matrix3, num_bigint::BigInt) {
    let mut den = num_bigint::BigInt::from(1);
    for i in 0..3 {
        for j in 0..3 {
            for c in m.entry(i, j).coords() {
                den = den.lcm(c.denom());
            }
        }
    }
    let scaled = m.scale_rational(&Rational::from_integer(den.clone()));
    (scaled, den)
}

/// Row-reduce polynomial columns to a deterministic reduced echelon
/// basis with unit leading coefficients.
fn echelon_basis(columns: Vec<MultiPoly<FieldElement>>) -> Vec<MultiPoly<FieldElement>> {
    let mut basis: Vec<MultiPoly<FieldElement>> = Vec::new();
    for mut col in columns {
        loop {
            let Some((le, lc)) = col.leading_term() else {
                break;
            };
            let (le, lc) = (*le, lc.clone());
            if let Some(b) = basis
                .iter()
                .find(|b| *b.leading_term().expect("nonzero").0 == le)
            {
                col = col.sub(&b.scale(&lc));
            } else {
                let inv = lc.inv().expect("field");
                basis.push(col.scale(&inv));
                break;
            }
        }
    }
    // full back-reduction for a canonical reduced echelon form
    basis.sort_by(|a, b| {
        b.leading_term()
            .expect("nonzero")
            .0
            .cmp(a.leading_term().expect("nonzero").0)
    });
    let snapshot = basis.clone();
    for i in 0..basis.len() {
        for (j, other) in snapshot.iter().enumerate() {
            if i == j {
                continue;
            }
            let le = *other.leading_term().expect("nonzero").0;
            if let Some(c) = basis[i].coeff(&le) {
                let c = c.clone();
                basis[i] = basis[i].sub(&other.scale(&c));
            }
        }
    }
    basis
}

fn all_monomials(d_max: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for d in 1..=d_max {
        for e1 in (0..=d).rev() {
            for e2 in (0..=d - e1).rev() {
                out.push(Exponents([e1, e2, d - e1 - e2]));
            }
        }
    }
    out
}

/// Exact Molien coefficients: dimension of the chi-semiinvariants in
/// each degree 0..=d_max, as the power-series coefficients of
/// (1/|G|) sum over g of chi(g)^(-1) / det(1 - t g).
pub fn molien_dimensions(group: &MatrixGroup, chi: &Character, d_max: u32) -> Vec<usize> {
    let field = group.field();
    let chi_inv = chi.inverse_element_values(group);
    let n = d_max as usize;
    let mut total = vec![FieldElement::zero(field); n + 1];
    for (gi, g) in group.elements().iter().enumerate() {
        // det(1 - t g) = 1 - c1 t + c2 t^2 - c3 t^3
        let c1 = g.trace();
        let c3 = g.det();
        let pm = |a: usize, b: usize| {
            g.entry(a, a)
                .mul(g.entry(b, b))
                .sub(&g.entry(a, b).mul(g.entry(b, a)))
        };
        let c2 = pm(0, 1).add(&pm(0, 2)).add(&pm(1, 2));
        // series inverse: s_k = c1 s_{k-1} - c2 s_{k-2} + c3 s_{k-3}
        let mut s = vec![FieldElement::one(field)];
        for k in 1..=n {
            let mut v = c1.mul(&s[k - 1]);
            if k >= 2 {
                v = v.sub(&c2.mul(&s[k - 2]));
            }
            if k >= 3 {
                v = v.add(&c3.mul(&s[k - 3]));
            }
            s.push(v);
        }
        for k in 0..=n {
            total[k] = total[k].add(&chi_inv[gi].mul(&s[k]));
        }
    }
    let frac = rat_frac(1, group.order() as i64);
    total
        .into_iter()
        .map(|v| {
            let r = v
                .scale(&frac)
                .as_rational()
                .expect("Molien coefficients are rational");
            assert!(
                r.denom().is_one() && !r.numer().is_negative(),
                "Molien coefficient must be a nonnegative integer, got {r}"
            );
            use num_traits::ToPrimitive;
            r.numer().to_usize().expect("small dimension")
        })
        .collect()
}

/// A semiinvariant family found by the exhaustive low-degree scan.
pub struct ScanHit {
    pub degree: u32,
    pub character: Character,
    pub basis: Vec<MultiPoly<FieldElement>>,
}

/// Exhaustive scan for semiinvariants of degree <= d_max under any
/// character: for every tuple of candidate generator scalars (roots of
/// unity of order dividing each generator's order), compute the joint
/// kernel of the stacked constraints p(gamma y) = c p(y). Any nonzero
/// joint eigenvector is a semiinvariant for the character its scalars
/// generate, so the scan is sound and complete for the given degrees.
pub fn scan_semiinvariants(group: &MatrixGroup, d_max: u32) -> Vec<ScanHit> {
    let field = group.field();
    let n = field.conductor() as i64;
    let mut hits = Vec::new();
    // candidate scalars per generator
    let candidate_sets: Vec<Vec<FieldElement>> = group
        .generators()
        .iter()
        .map(|g| {
            let o = g.order(2 * group.order()).expect("finite order") as i64;
            let g_ord = num_integer::gcd(n, o);
            (0..g_ord)
                .map(|k| FieldElement::root_of_unity(field, (n / g_ord) * k))
                .collect()
        })
        .collect();
    for d in 1..=d_max {
        let monos: Vec<Exponents> = all_monomials(d)
            .into_iter()
            .filter(|e| e.degree() == d)
            .collect();
        let dim = monos.len();
        let col_of: HashMap<Exponents, usize> =
            monos.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        // action matrix per generator: row index = target monomial
        let action: Vec<Vec<Vec<FieldElement>>> = group
            .generators()
            .iter()
            .map(|gamma| {
                let images: [MultiPoly<FieldElement>; 3] = std::array::from_fn(|i| {
                    MultiPoly::from_terms([
                        ([1, 0, 0], gamma.entry(i, 0).clone()),
                        ([0, 1, 0], gamma.entry(i, 1).clone()),
                        ([0, 0, 1], gamma.entry(i, 2).clone()),
                    ])
                });
                let mut m = vec![vec![FieldElement::zero(field); dim]; dim];
                let mut memo = HashMap::new();
                for (j, e) in monos.iter().enumerate() {
                    let img = MultiPoly::monomial_image(*e, &images, &mut memo);
                    for (te, c) in img.terms() {
                        m[col_of[te]][j] = c.clone();
                    }
                }
                m
            })
            .collect();
        // enumerate candidate tuples
        let mut tuple = vec![0usize; candidate_sets.len()];
        loop {
            // stacked system rows: (A_gamma - c I) p = 0 for each gamma
            let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(dim * action.len());
            for (g, a) in action.iter().enumerate() {
                let c = &candidate_sets[g][tuple[g]];
                for i in 0..dim {
                    let mut row = a[i].clone();
                    row[i] = row[i].sub(c);
                    rows.push(row);
                }
            }
            let kernel = field_kernel(rows, dim, field);
            if !kernel.is_empty() {
                let basis = kernel
                    .into_iter()
                    .map(|v| {
                        let mut p = MultiPoly::zero();
                        for (i, c) in v.into_iter().enumerate() {
                            p = p.add(&MultiPoly::monomial(monos[i].0, c));
                        }
                        p
                    })
                    .collect();
                hits.push(ScanHit {
                    degree: d,
                    character: Character {
                        values: tuple
                            .iter()
                            .enumerate()
                            .map(|(g, &k)| candidate_sets[g][k].clone())
                            .collect(),
                    },
                    basis,
                });
            }
            // next tuple
            let mut pos = 0;
            loop {
                if pos == tuple.len() {
                    break;
                }
                tuple[pos] += 1;
                if tuple[pos] < candidate_sets[pos].len() {
                    break;
                }
                tuple[pos] = 0;
                pos += 1;
            }
            if pos == tuple.len() {
                break;
            }
        }
    }
    hits
}

/// Kernel basis of a stacked row system over the field.
fn field_kernel(
    mut rows: Vec<Vec<FieldElement>>,
    ncols: usize,
    field: &crate::arith::FieldRef,
) -> Vec<Vec<FieldElement>> {
    let zero = FieldElement::zero(field);
    let one = FieldElement::one(field);
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = rows[rank][col].inv().expect("pivot invertible");
        for c in 0..ncols {
            rows[rank][c] = rows[rank][c].mul(&inv);
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in 0..ncols {
                let t = factor.mul(&rows[rank][c]);
                rows[r][c] = rows[r][c].sub(&t);
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for fc in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![zero.clone(); ncols];
        v[fc] = one.clone();
        for (i, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = rows[i][fc].neg();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{fixture_diagonal_cyclic, fixture_icosahedral, fixture_j168};
    use crate::invariants::build_invariants;

    #[test]
    fn molien_dimensions_for_klein_group() {
        let g = fixture_j168().unwrap();
        let chi = Character::trivial(&g);
        let dims = molien_dimensions(&g, &chi, 18);
        let expected = [1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 3];
        assert_eq!(dims, expected);
    }

    #[test]
    fn reynolds_matches_molien_low_degrees() {
        let g = fixture_j168().unwrap();
        let chi = Character::trivial(&g);
        let spaces = semiinvariant_table(&g, &chi, 8);
        for s in &spaces {
            assert!(s.consistent(), "degree {}", s.degree);
        }
        assert_eq!(spaces[3].basis.len(), 1); // degree 4: f
        assert_eq!(spaces[5].basis.len(), 1); // degree 6: Delta
                                              // the degree-4 space is spanned by f
        let inv = build_invariants();
        let f = inv.f.lift(g.field());
        assert!(spaces[3].contains(&f));
    }

    #[test]
    fn no_low_degree_semiinvariants_for_klein_group() {
        let g = fixture_j168().unwrap();
        assert!(scan_semiinvariants(&g, 3).is_empty());
    }

    #[test]
    fn diagonal_cyclic_group_has_degree_one_semiinvariant() {
        let g = fixture_diagonal_cyclic().unwrap();
        let hits = scan_semiinvariants(&g, 1);
        assert!(!hits.is_empty());
        assert_eq!(hits[0].degree, 1);
    }

    #[test]
    fn icosahedral_group_has_degree_two_invariant() {
        let g = fixture_icosahedral().unwrap();
        let chi = Character::trivial(&g);
        let s = semiinvariant_space(&g, 2, &chi);
        assert!(s.consistent());
        assert_eq!(s.basis.len(), 1);
    }

    #[test]
    fn character_of_f_is_trivial() {
        let g = fixture_j168().unwrap();
        let inv = build_invariants();
        let f = inv.f.lift(g.field());
        let chi = character_of(&f, &g).expect("f is invariant");
        assert!(chi.is_trivial());
        assert!(chi.spot_check_multiplicative(&g));
        // y1 is not a semiinvariant of the Klein group
        let y1 = MultiPoly::var(0, FieldElement::one(g.field()));
        assert!(character_of(&y1, &g).is_none());
    }
}
