//! Riemann-Roch spaces of two-point divisors a1*P0 + a2*Pinf.
//!
//! The space L(D) is spanned by the monomials y^i z^j x^(-k) whose pole
//! orders at P0 and Pinf are bounded by the divisor coefficients; for every
//! divisor this crate touches that span is verified to be the whole space by
//! dimension count (for deg D > 2g-2 the dimension must equal deg - g + 1,
//! and any shortfall aborts rather than silently under-dimension).
//!
//! Dimensions are computed as evaluation ranks: with `pts` the rational
//! points other than P0 and Pinf, a nonzero function of L(D) with
//! deg D < |pts| cannot vanish on all of `pts`, so the rank of the
//! candidate-evaluation matrix is exactly l(D). Divisors with a single -1
//! coefficient (needed by the membership criterion below) are handled by
//! appending one homogeneous vanishing condition to the rank computation.
//!
//! Membership of (a1, a2) in H(P0, Pinf) is decided by the dimension
//! criterion: the pair lies in the semigroup iff
//! `l(a1, a2) = l(a1 - 1, a2) + 1 = l(a1, a2 - 1) + 1`.

use std::sync::Arc;

use thiserror::Error;

use crate::curve::{CurveError, CurvePoint, GKCurve, Monomial};
use crate::matrix::GfMatrix;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RrError {
    #[error("divisor degree {0} is not below the evaluation set size {1}")]
    DegreeTooLarge(u64, usize),
    #[error("oracle violation: {0}")]
    OracleViolation(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// An effective divisor supported at P0 and Pinf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwoPointDivisor {
    pub a1: u64,
    pub a2: u64,
}

impl TwoPointDivisor {
    pub fn new(a1: u64, a2: u64) -> TwoPointDivisor {
        TwoPointDivisor { a1, a2 }
    }

    pub fn degree(&self) -> u64 {
        self.a1 + self.a2
    }
}

/// A set of monomials whose evaluation vectors are linearly independent.
#[derive(Debug, Clone)]
pub struct FunctionBasis {
    pub monomials: Vec<Monomial>,
    pub dimension: usize,
}

/// All monomials y^i z^j x^(-k) with pole order at most a1 at P0 and at most
/// a2 at Pinf, ordered by (pole at P0, pole at Pinf, i, j, k).
pub fn candidate_monomials(curve: &GKCurve, div: TwoPointDivisor) -> Vec<Monomial> {
    let n = curve.n() as i64;
    let q_plus = n.pow(3) + 1;
    let y_pinf = n.pow(3) - n * n + n;
    let y_p0 = n * n - n + 1;
    let (a1, a2) = (div.a1 as i64, div.a2 as i64);
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=(n * n - n) {
            let k_max = (a1 + i * y_p0 + j).div_euclid(q_plus);
            let k_min = ceil_div(i * y_pinf + j * n.pow(3) - a2, q_plus);
            for k in k_min..=k_max {
                let m = Monomial {
                    i: i as u32,
                    j: j as u32,
                    k,
                };
                let pp = curve.pole_pair(m).expect("exponents in range");
                debug_assert!(pp.at_p0 <= a1 && pp.at_pinf <= a2);
                out.push((pp.at_p0, pp.at_pinf, m));
            }
        }
    }
    out.sort_unstable_by_key(|&(p0, pinf, m)| (p0, pinf, m.i, m.j, m.k));
    out.into_iter().map(|(_, _, m)| m).collect()
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1).div_euclid(b)
}

/// Evaluation matrix of the given monomials at the given points.
pub fn evaluation_matrix(
    curve: &GKCurve,
    monomials: &[Monomial],
    pts: &[CurvePoint],
) -> Result<GfMatrix, RrError> {
    let mut rows = Vec::with_capacity(monomials.len());
    for &m in monomials {
        let mut row = Vec::with_capacity(pts.len());
        for &p in pts {
            row.push(curve.evaluate_monomial(m, p)?.encoding());
        }
        rows.push(row);
    }
    Ok(GfMatrix::from_rows(Arc::clone(curve.field()), rows))
}

/// A maximal subset of the candidate monomials whose evaluation vectors at
/// `pts` are linearly independent, extracted greedily in candidate order.
/// `pts` must be the rational points without P0 and Pinf and the divisor
/// degree must stay below their number.
pub fn basis(
    curve: &GKCurve,
    div: TwoPointDivisor,
    pts: &[CurvePoint],
) -> Result<FunctionBasis, RrError> {
    if div.degree() >= pts.len() as u64 {
        return Err(RrError::DegreeTooLarge(div.degree(), pts.len()));
    }
    let cands = candidate_monomials(curve, div);
    let field = curve.field();
    // incremental reduction against the rows kept so far
    let mut kept: Vec<Monomial> = Vec::new();
    let mut reduced: Vec<(usize, Vec<u32>)> = Vec::new(); // (pivot column, row)
    for m in cands {
        let mut row: Vec<u32> = Vec::with_capacity(pts.len());
        for &p in pts {
            row.push(curve.evaluate_monomial(m, p)?.encoding());
        }
        for (pc, r) in &reduced {
            let factor = row[*pc];
            if factor != 0 {
                for (dst, &src) in row.iter_mut().zip(r) {
                    if src != 0 {
                        *dst = field.raw_sub(*dst, field.raw_mul(factor, src));
                    }
                }
            }
        }
        if let Some(pc) = row.iter().position(|&v| v != 0) {
            let inv = field.raw_inv(row[pc]);
            for v in row.iter_mut() {
                if *v != 0 {
                    *v = field.raw_mul(*v, inv);
                }
            }
            reduced.push((pc, row));
            kept.push(m);
        }
    }
    let dimension = kept.len();
    Ok(FunctionBasis {
        monomials: kept,
        dimension,
    })
}

/// Exact dimension of L(a1*P0 + a2*Pinf) via the evaluation rank. For
/// degrees beyond 2g-2 the Riemann-Roch count deg - g + 1 is enforced; a
/// shortfall means the monomial family failed to span and is an error.
pub fn ell(curve: &GKCurve, div: TwoPointDivisor, pts: &[CurvePoint]) -> Result<usize, RrError> {
    let b = basis(curve, div, pts)?;
    let deg = div.degree();
    let g = curve.genus();
    if deg > 2 * g - 2 {
        let expected = (deg - g + 1) as usize;
        if b.dimension != expected {
            return Err(RrError::OracleViolation(format!(
                "monomials span {} of {} dimensions for divisor ({}, {})",
                b.dimension, expected, div.a1, div.a2
            )));
        }
    }
    Ok(b.dimension)
}

/// l for divisors allowing a single coefficient of -1: the dimension of the
/// subspace of L(clamped divisor) vanishing at the corresponding point,
/// computed by appending one homogeneous condition to the rank computation.
pub fn ell_relaxed(
    curve: &GKCurve,
    a1: i64,
    a2: i64,
    pts: &[CurvePoint],
) -> Result<usize, RrError> {
    assert!(
        a1 >= -1 && a2 >= -1,
        "coefficients below -1 are unsupported"
    );
    if a1 >= 0 && a2 >= 0 {
        return ell(curve, TwoPointDivisor::new(a1 as u64, a2 as u64), pts);
    }
    if a1 < 0 && a2 < 0 {
        return Ok(0); // a function regular everywhere with two forced zeros is zero
    }
    let clamped = TwoPointDivisor::new(a1.max(0) as u64, a2.max(0) as u64);
    if clamped.degree() >= pts.len() as u64 {
        return Err(RrError::DegreeTooLarge(clamped.degree(), pts.len()));
    }
    let cands = candidate_monomials(curve, clamped);
    let field = curve.field();

    // one linear functional per candidate: the value at the point whose
    // coefficient is -1
    let mut v: Vec<u32> = Vec::with_capacity(cands.len());
    if a1 < 0 {
        // candidates of (0, a2) have no pole at P0, so they evaluate there
        for &m in &cands {
            v.push(curve.evaluate_monomial(m, curve.p0())?.encoding());
        }
    } else {
        // Within the exponent box the only monomial with pole order exactly
        // zero at Pinf is the constant; all other candidates of (a1, 0)
        // vanish there, so the value at Pinf is the constant coefficient.
        for &m in &cands {
            let pp = curve.pole_pair(m)?;
            if pp.at_pinf == 0 && (m.i, m.j, m.k) != (0, 0, 0) {
                return Err(RrError::OracleViolation(format!(
                    "unexpected monomial {m} regular and nonvanishing at Pinf"
                )));
            }
            v.push(if (m.i, m.j, m.k) == (0, 0, 0) { 1 } else { 0 });
        }
    }

    let mut rows = Vec::with_capacity(cands.len());
    for &m in &cands {
        let mut row = Vec::with_capacity(pts.len());
        for &p in pts {
            row.push(curve.evaluate_monomial(m, p)?.encoding());
        }
        rows.push(row);
    }
    // eliminate the functional: replace each row having v[i] != 0 by a
    // combination lying in the kernel of v
    match v.iter().position(|&x| x != 0) {
        None => Ok(GfMatrix::from_rows(Arc::clone(field), rows).rank()),
        Some(i0) => {
            let inv = field.raw_inv(v[i0]);
            let pivot_row = rows[i0].clone();
            let mut kernel_rows = Vec::with_capacity(rows.len() - 1);
            for (i, row) in rows.into_iter().enumerate() {
                if i == i0 {
                    continue;
                }
                if v[i] == 0 {
                    kernel_rows.push(row);
                } else {
                    let factor = field.raw_mul(v[i], inv);
                    let combined: Vec<u32> = row
                        .iter()
                        .zip(&pivot_row)
                        .map(|(&r, &p)| field.raw_sub(r, field.raw_mul(factor, p)))
                        .collect();
                    kernel_rows.push(combined);
                }
            }
            Ok(GfMatrix::from_rows(Arc::clone(field), kernel_rows).rank())
        }
    }
}

/// Membership of (alpha1, alpha2) in H(P0, Pinf) by the dimension criterion.
pub fn pair_in_h_by_rank(
    curve: &GKCurve,
    pair: (u64, u64),
    pts: &[CurvePoint],
) -> Result<bool, RrError> {
    let (a1, a2) = pair;
    if (a1, a2) == (0, 0) {
        return Ok(true); // constants realize (0, 0)
    }
    if a1 + a2 >= pts.len() as u64 {
        return Err(RrError::DegreeTooLarge(a1 + a2, pts.len()));
    }
    let e = ell(curve, TwoPointDivisor::new(a1, a2), pts)?;
    let e1 = ell_relaxed(curve, a1 as i64 - 1, a2 as i64, pts)?;
    let e2 = ell_relaxed(curve, a1 as i64, a2 as i64 - 1, pts)?;
    Ok(e == e1 + 1 && e == e2 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{one_point_semigroup, TwoPointSemigroup};

    fn curve2() -> GKCurve {
        GKCurve::new(2).unwrap()
    }

    #[test]
    fn constants_only_for_zero_divisor() {
        let c = curve2();
        let cands = candidate_monomials(&c, TwoPointDivisor::new(0, 0));
        assert_eq!(cands, vec![Monomial { i: 0, j: 0, k: 0 }]);
        let pts = c.code_points();
        assert_eq!(ell(&c, TwoPointDivisor::new(0, 0), &pts).unwrap(), 1);
    }

    #[test]
    fn divisor_22_11_has_dimension_24() {
        let c = curve2();
        let cands = candidate_monomials(&c, TwoPointDivisor::new(22, 11));
        assert_eq!(cands.len(), 24);
        let pts = c.code_points();
        assert_eq!(ell(&c, TwoPointDivisor::new(22, 11), &pts).unwrap(), 24);
    }

    #[test]
    fn divisor_19_1_contains_its_monomial() {
        let c = curve2();
        let cands = candidate_monomials(&c, TwoPointDivisor::new(19, 1));
        assert!(cands.contains(&Monomial { i: 2, j: 2, k: 3 }));
    }

    #[test]
    fn gap_steps_do_not_change_dimension() {
        let c = curve2();
        let pts = c.code_points();
        let gaps = one_point_semigroup(&c).unwrap();
        for &a in gaps.gaps() {
            let with = ell(&c, TwoPointDivisor::new(a, 0), &pts).unwrap();
            let without = ell(&c, TwoPointDivisor::new(a - 1, 0), &pts).unwrap();
            assert_eq!(with, without, "gap {a} must not add a function");
        }
    }

    #[test]
    fn riemann_roch_exactness_sample() {
        let c = curve2();
        let pts = c.code_points();
        let g = c.genus();
        for (a1, a2) in [
            (19u64, 0u64),
            (10, 9),
            (0, 21),
            (22, 11),
            (30, 10),
            (13, 12),
        ] {
            let deg = a1 + a2;
            assert!(deg > 2 * g - 2);
            assert_eq!(
                ell(&c, TwoPointDivisor::new(a1, a2), &pts).unwrap() as u64,
                deg - g + 1
            );
        }
    }

    #[test]
    fn ell_is_monotone_with_unit_steps() {
        let c = curve2();
        let pts = c.code_points();
        let mut prev = ell(&c, TwoPointDivisor::new(0, 0), &pts).unwrap();
        for a1 in 1..=25u64 {
            let cur = ell(&c, TwoPointDivisor::new(a1, 0), &pts).unwrap();
            assert!(cur == prev || cur == prev + 1);
            prev = cur;
        }
    }

    #[test]
    fn dimension_equality_at_13_3() {
        let c = curve2();
        let pts = c.code_points();
        let a = ell(&c, TwoPointDivisor::new(13, 3), &pts).unwrap();
        let b = ell(&c, TwoPointDivisor::new(12, 3), &pts).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn membership_by_rank_examples() {
        let c = curve2();
        let pts = c.code_points();
        assert!(pair_in_h_by_rank(&c, (3, 3), &pts).unwrap());
        assert!(!pair_in_h_by_rank(&c, (13, 3), &pts).unwrap());
        assert!(pair_in_h_by_rank(&c, (0, 0), &pts).unwrap());
        assert!(pair_in_h_by_rank(&c, (6, 0), &pts).unwrap());
        assert!(!pair_in_h_by_rank(&c, (0, 7), &pts).unwrap());
    }

    #[test]
    fn rank_membership_agrees_with_box_on_axis() {
        let c = curve2();
        let pts = c.code_points();
        let t = TwoPointSemigroup::new(&c).unwrap();
        for v in 0..=10u64 {
            assert_eq!(
                pair_in_h_by_rank(&c, (v, 0), &pts).unwrap(),
                t.member(v, 0),
                "axis disagreement at ({v}, 0)"
            );
        }
    }

    #[test]
    fn degree_too_large_rejected() {
        let c = curve2();
        let pts = c.code_points();
        let too_big = TwoPointDivisor::new(223, 0);
        assert!(matches!(
            ell(&c, too_big, &pts),
            Err(RrError::DegreeTooLarge(223, 223))
        ));
    }
}
