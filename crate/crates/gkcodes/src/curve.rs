//! The Giulietti-Korchmaros (GK) maximal curve.
//!
//! For a prime power n, the curve over GF(n^6) is cut out by
//!
//! ```text
//! z^(n^2-n+1) = y * h(x),      h(X) = sum_{i=0}^{n} (-1)^(i+1) X^(i(n-1))
//! x^n + x     = y^(n+1)
//! ```
//!
//! It has genus (n^5 - 2n^3 + n^2)/2, a single point at infinity, and
//! n^8 - n^6 + n^5 + 1 rational points, meeting the Hasse-Weil upper bound.
//! This module enumerates the rational points in a canonical order,
//! classifies them into the two automorphism orbits, and computes the pole
//! orders at P0 = (0,0,0) and Pinf of the monomial functions y^i z^j / x^k.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use thiserror::Error;

use crate::gf::{FieldElement, GaloisField, GfError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("{0} is not a prime power >= 2")]
    NotPrimePower(u64),
    #[error("point does not lie on the curve")]
    PointNotOnCurve,
    #[error("monomial exponents (i={0}, j={1}) outside 0..=n, 0..=n^2-n")]
    ExponentOutOfRange(u32, u32),
    #[error("monomial has a pole at the evaluation point")]
    PoleAtPoint,
    #[error("the point at infinity is not evaluable")]
    InfinityNotEvaluable,
    #[error(transparent)]
    Field(#[from] GfError),
}

/// A rational point: the unique point at infinity, or an affine triple
/// (a, b, c) satisfying both curve equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine {
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
    },
}

impl CurvePoint {
    pub fn is_infinity(self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

/// Orbits of the rational points under the curve's automorphism group:
/// `O1` is the c = 0 points together with infinity (size n^3 + 1), `O2` is
/// everything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orbit {
    O1,
    O2,
}

/// The function y^i z^j x^(-k); `k` may be negative, meaning a positive
/// power of x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
    pub k: i64,
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "y^{} z^{} x^{}", self.i, self.j, -self.k)
    }
}

/// Pole orders of a function at (P0, Pinf); a negative entry is a zero of
/// that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolePair {
    pub at_p0: i64,
    pub at_pinf: i64,
}

#[derive(Debug)]
pub struct GKCurve {
    n: u64,
    field: Arc<GaloisField>,
    genus: u64,
    /// Coefficients of h(X) embedded in the field, low degree first.
    h_coeffs: Vec<FieldElement>,
    points: OnceLock<Vec<CurvePoint>>,
}

impl GKCurve {
    /// Build the curve for a prime power n >= 2. Constructs GF(n^6),
    /// the coefficients of h and the genus; points are enumerated lazily.
    pub fn new(n: u64) -> Result<GKCurve, CurveError> {
        let (p, e) = prime_power(n).ok_or(CurveError::NotPrimePower(n))?;
        let field = Arc::new(GaloisField::new(p, 6 * e)?);
        let deg = (n * (n - 1)) as usize;
        let mut h_coeffs = vec![field.zero(); deg + 1];
        for i in 0..=n {
            let sign: i64 = if i % 2 == 1 { 1 } else { -1 };
            let idx = (i * (n - 1)) as usize;
            h_coeffs[idx] = field.add(h_coeffs[idx], field.from_int(sign));
        }
        let genus = (n.pow(5) - 2 * n.pow(3) + n.pow(2)) / 2;
        Ok(GKCurve {
            n,
            field,
            genus,
            h_coeffs,
            points: OnceLock::new(),
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// q = n^3; the curve is maximal over GF(q^2).
    pub fn q(&self) -> u64 {
        self.n.pow(3)
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn h_coeffs(&self) -> &[FieldElement] {
        &self.h_coeffs
    }

    /// The expected number of rational points, n^8 - n^6 + n^5 + 1.
    pub fn expected_point_count(&self) -> u64 {
        self.n.pow(8) - self.n.pow(6) + self.n.pow(5) + 1
    }

    pub fn p0(&self) -> CurvePoint {
        let z = self.field.zero();
        CurvePoint::Affine { a: z, b: z, c: z }
    }

    pub fn h_at(&self, a: FieldElement) -> FieldElement {
        let f = &self.field;
        let mut acc = f.zero();
        for &c in self.h_coeffs.iter().rev() {
            acc = f.add(f.mul(acc, a), c);
        }
        acc
    }

    /// All rational points, Pinf first, then affine points ordered by the
    /// integer encodings of (a, b, c). The result is cached.
    pub fn points(&self) -> &[CurvePoint] {
        self.points.get_or_init(|| self.enumerate_points())
    }

    fn enumerate_points(&self) -> Vec<CurvePoint> {
        let f = &self.field;
        let n = self.n;
        let order = f.order() as usize;
        let pow_np1 = (n + 1) as i64;
        let pow_z = (n * n - n + 1) as i64;

        // fibers of b -> b^(n+1) and c -> c^(n^2-n+1), sorted by encoding
        let mut fiber_np1: Vec<Vec<FieldElement>> = vec![Vec::new(); order];
        let mut fiber_z: Vec<Vec<FieldElement>> = vec![Vec::new(); order];
        for e in f.elements() {
            let v1 = f.pow(e, pow_np1).expect("nonnegative exponent");
            fiber_np1[v1.encoding() as usize].push(e);
            let v2 = f.pow(e, pow_z).expect("nonnegative exponent");
            fiber_z[v2.encoding() as usize].push(e);
        }

        let all: Vec<FieldElement> = f.elements().collect();
        let mut points = vec![CurvePoint::Infinity];
        let chunks: Vec<Vec<CurvePoint>> = all
            .par_chunks(256)
            .map(|chunk| {
                let mut out = Vec::new();
                for &a in chunk {
                    let lhs = f.add(f.pow(a, n as i64).expect("nonnegative"), a);
                    for &b in &fiber_np1[lhs.encoding() as usize] {
                        let w = f.mul(b, self.h_at(a));
                        for &c in &fiber_z[w.encoding() as usize] {
                            out.push(CurvePoint::Affine { a, b, c });
                        }
                    }
                }
                out
            })
            .collect();
        for chunk in chunks {
            points.extend(chunk);
        }
        points
    }

    /// The canonical evaluation support for codes: every rational point
    /// except P0 and Pinf, in enumeration order.
    pub fn code_points(&self) -> Vec<CurvePoint> {
        let p0 = self.p0();
        self.points()
            .iter()
            .copied()
            .filter(|&p| !p.is_infinity() && p != p0)
            .collect()
    }

    pub fn is_on_curve(&self, pt: CurvePoint) -> bool {
        match pt {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { a, b, c } => {
                let f = &self.field;
                let n = self.n as i64;
                let lhs1 = f.pow(c, n * n - n + 1).expect("nonnegative");
                let rhs1 = f.mul(b, self.h_at(a));
                let lhs2 = f.add(f.pow(a, n).expect("nonnegative"), a);
                let rhs2 = f.pow(b, n + 1).expect("nonnegative");
                lhs1 == rhs1 && lhs2 == rhs2
            }
        }
    }

    /// Orbit of a rational point: `O1` for Pinf and the affine points with
    /// c = 0, `O2` otherwise.
    pub fn classify_orbit(&self, pt: CurvePoint) -> Result<Orbit, CurveError> {
        if !self.is_on_curve(pt) {
            return Err(CurveError::PointNotOnCurve);
        }
        Ok(match pt {
            CurvePoint::Infinity => Orbit::O1,
            CurvePoint::Affine { c, .. } if c.is_zero() => Orbit::O1,
            _ => Orbit::O2,
        })
    }

    /// Pole orders of y^i z^j x^(-k) at (P0, Pinf):
    ///
    /// ```text
    /// at P0:   k(n^3+1) - i(n^2-n+1) - j
    /// at Pinf: i(n^3-n^2+n) + j n^3 - k(n^3+1)
    /// ```
    ///
    /// following x having a zero of order n^3+1 at P0 and a pole of the same
    /// order at Pinf, y a zero of order n^2-n+1 at P0 and pole n^3-n^2+n at
    /// Pinf, z a simple zero at P0 and pole n^3 at Pinf.
    pub fn pole_pair(&self, mono: Monomial) -> Result<PolePair, CurveError> {
        let n = self.n as i64;
        if mono.i as i64 > n || mono.j as i64 > n * n - n {
            return Err(CurveError::ExponentOutOfRange(mono.i, mono.j));
        }
        let (i, j, k) = (mono.i as i64, mono.j as i64, mono.k);
        Ok(PolePair {
            at_p0: k * (n.pow(3) + 1) - i * (n * n - n + 1) - j,
            at_pinf: i * (n.pow(3) - n * n + n) + j * n.pow(3) - k * (n.pow(3) + 1),
        })
    }

    /// Value b^i c^j a^(-k) at an affine point. The only rational point
    /// with a = 0 is P0, so for k > 0 the monomial is evaluable everywhere
    /// else.
    pub fn evaluate_monomial(
        &self,
        mono: Monomial,
        pt: CurvePoint,
    ) -> Result<FieldElement, CurveError> {
        let CurvePoint::Affine { a, b, c } = pt else {
            return Err(CurveError::InfinityNotEvaluable);
        };
        let f = &self.field;
        if mono.k > 0 && a.is_zero() {
            return Err(CurveError::PoleAtPoint);
        }
        let mut acc = f.pow(b, mono.i as i64).expect("nonnegative");
        acc = f.mul(acc, f.pow(c, mono.j as i64).expect("nonnegative"));
        let x_part = f.pow(a, -mono.k).map_err(|_| CurveError::PoleAtPoint)?;
        Ok(f.mul(acc, x_part))
    }

    /// The monomial families T_k, k = 1..n^2-1, whose pole pairs fill out
    /// the gap-pair graph of the two-point semigroup at (P0, Pinf):
    ///
    /// * k <= n-1: { 0 <= i <= k, k-i+1 <= j <= n^2-n } together with
    ///   { k+1 <= i <= n, 0 <= j <= n^2-n };
    /// * k <= n^2-n-2: { 0 <= i <= n, k-i+1 <= j <= n^2-n };
    /// * k >= n^2-n-1: { k-(n^2-1)+n <= i <= n, k-i+1 <= j <= n^2-n }.
    ///
    /// There are genus-many monomials in total.
    pub fn t_family_monomials(&self) -> Vec<Monomial> {
        let n = self.n;
        let jmax = n * n - n;
        let mut out = Vec::new();
        let push_range = |k: u64, i: u64, j_lo: u64, out: &mut Vec<Monomial>| {
            for j in j_lo..=jmax {
                out.push(Monomial {
                    i: i as u32,
                    j: j as u32,
                    k: k as i64,
                });
            }
        };
        for k in 1..=(n * n - 1) {
            if k < n {
                for i in 0..=k {
                    push_range(k, i, k - i + 1, &mut out);
                }
                for i in (k + 1)..=n {
                    push_range(k, i, 0, &mut out);
                }
            } else if k <= n * n - n - 2 {
                for i in 0..=n {
                    push_range(k, i, k - i + 1, &mut out);
                }
            } else {
                let i_lo = k + n + 1 - n * n;
                for i in i_lo..=n {
                    push_range(k, i, k - i + 1, &mut out);
                }
            }
        }
        out
    }
}

fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut m = n;
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            return if m == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((n, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn create_n2() {
        let c = GKCurve::new(2).unwrap();
        assert_eq!(c.genus(), 10);
        assert_eq!(c.field().order(), 64);
        // h(X) = 1 + X + X^2 over GF(2)
        let h: Vec<u32> = c.h_coeffs().iter().map(|e| e.encoding()).collect();
        assert_eq!(h, vec![1, 1, 1]);
    }

    #[test]
    fn create_n3() {
        let c = GKCurve::new(3).unwrap();
        assert_eq!(c.genus(), 99);
        assert_eq!(c.field().order(), 729);
        // h(X) = 2 + X^2 + 2X^4 + X^6 over GF(3)
        let h: Vec<u32> = c.h_coeffs().iter().map(|e| e.encoding()).collect();
        assert_eq!(h, vec![2, 0, 1, 0, 2, 0, 1]);
    }

    #[test]
    fn rejects_non_prime_power() {
        assert_eq!(GKCurve::new(6).unwrap_err(), CurveError::NotPrimePower(6));
        assert_eq!(GKCurve::new(1).unwrap_err(), CurveError::NotPrimePower(1));
        assert!(GKCurve::new(4).is_ok()); // 2^2
    }

    #[test]
    fn point_counts() {
        let c2 = GKCurve::new(2).unwrap();
        assert_eq!(c2.points().len() as u64, 225);
        assert_eq!(c2.expected_point_count(), 225);

        let c3 = GKCurve::new(3).unwrap();
        assert_eq!(c3.points().len() as u64, 6076);
        assert_eq!(c3.expected_point_count(), 6076);
    }

    #[test]
    fn maximality_identity() {
        for n in [2u64, 3] {
            let c = GKCurve::new(n).unwrap();
            let q = c.field().order();
            assert_eq!(c.points().len() as u64, q + 1 + 2 * c.genus() * c.q());
        }
    }

    #[test]
    fn points_are_on_curve_and_ordered() {
        let c = GKCurve::new(2).unwrap();
        let pts = c.points();
        assert_eq!(pts[0], CurvePoint::Infinity);
        assert_eq!(pts[1], c.p0());
        let mut prev: Option<(u32, u32, u32)> = None;
        for &pt in &pts[1..] {
            assert!(c.is_on_curve(pt));
            let CurvePoint::Affine { a, b, c: cc } = pt else {
                panic!()
            };
            let key = (a.encoding(), b.encoding(), cc.encoding());
            if let Some(p) = prev {
                assert!(p < key, "points out of order");
            }
            prev = Some(key);
        }
    }

    #[test]
    fn orbit_sizes() {
        for n in [2u64, 3] {
            let c = GKCurve::new(n).unwrap();
            let mut o1 = 0u64;
            let mut o2 = 0u64;
            for &pt in c.points() {
                match c.classify_orbit(pt).unwrap() {
                    Orbit::O1 => o1 += 1,
                    Orbit::O2 => o2 += 1,
                }
            }
            let q = c.q();
            assert_eq!(o1, q + 1);
            assert_eq!(o2, q * (q + 1) * (n * n - 1));
        }
        let c = GKCurve::new(2).unwrap();
        assert_eq!(c.classify_orbit(c.p0()).unwrap(), Orbit::O1);
        assert_eq!(c.classify_orbit(CurvePoint::Infinity).unwrap(), Orbit::O1);
    }

    #[test]
    fn point_not_on_curve_detected() {
        let c = GKCurve::new(2).unwrap();
        let f = c.field();
        let bogus = CurvePoint::Affine {
            a: f.from_encoding(1).unwrap(),
            b: f.zero(),
            c: f.from_encoding(5).unwrap(),
        };
        assert_eq!(
            c.classify_orbit(bogus).unwrap_err(),
            CurveError::PointNotOnCurve
        );
    }

    #[test]
    fn only_p0_has_a_zero() {
        let c = GKCurve::new(2).unwrap();
        let zeros: Vec<_> = c
            .points()
            .iter()
            .filter(|p| matches!(p, CurvePoint::Affine { a, .. } if a.is_zero()))
            .collect();
        assert_eq!(zeros.len(), 1);
        assert_eq!(*zeros[0], c.p0());
    }

    #[test]
    fn zero_divisor_counts() {
        for n in [2u64, 3] {
            let c = GKCurve::new(n).unwrap();
            let f = c.field();
            // zeros of y: the n points (a, 0, 0) with a^n + a = 0
            let y_zeros = c
                .points()
                .iter()
                .filter(
                    |p| matches!(p, CurvePoint::Affine { b, c, .. } if b.is_zero() && c.is_zero()),
                )
                .count() as u64;
            assert_eq!(y_zeros, n);
            // zeros of z: n^3 affine points with c = 0, coordinates in GF(n^2)
            let subfield_deg = 2 * c.field().degree() / 6;
            let z_zeros: Vec<_> = c
                .points()
                .iter()
                .filter(|p| matches!(p, CurvePoint::Affine { c, .. } if c.is_zero()))
                .collect();
            assert_eq!(z_zeros.len() as u64, n.pow(3));
            for p in z_zeros {
                let CurvePoint::Affine { a, b, .. } = p else {
                    panic!()
                };
                assert!(f.in_subfield(*a, subfield_deg).unwrap());
                assert!(f.in_subfield(*b, subfield_deg).unwrap());
            }
        }
    }

    #[test]
    fn c_zero_count_including_infinity() {
        let c = GKCurve::new(2).unwrap();
        let count = c
            .points()
            .iter()
            .filter(|p| match p {
                CurvePoint::Infinity => true,
                CurvePoint::Affine { c, .. } => c.is_zero(),
            })
            .count() as u64;
        assert_eq!(count, c.q() + 1); // 9 for n = 2
    }

    #[test]
    fn pole_pair_examples() {
        let c = GKCurve::new(2).unwrap();
        let pp = c.pole_pair(Monomial { i: 2, j: 2, k: 3 }).unwrap();
        assert_eq!((pp.at_p0, pp.at_pinf), (19, 1));
        let pp = c.pole_pair(Monomial { i: 2, j: 1, k: 1 }).unwrap();
        assert_eq!((pp.at_p0, pp.at_pinf), (2, 11));
        let pp = c.pole_pair(Monomial { i: 0, j: 0, k: 0 }).unwrap();
        assert_eq!((pp.at_p0, pp.at_pinf), (0, 0));
        assert!(matches!(
            c.pole_pair(Monomial { i: 3, j: 0, k: 1 }),
            Err(CurveError::ExponentOutOfRange(3, 0))
        ));
    }

    #[test]
    fn pole_pair_injectivity_on_t_families() {
        for n in [2u64, 3] {
            let c = GKCurve::new(n).unwrap();
            let monos = c.t_family_monomials();
            assert_eq!(monos.len() as u64, c.genus());
            let mut seen = std::collections::HashSet::new();
            for m in monos {
                let pp = c.pole_pair(m).unwrap();
                assert!(seen.insert((pp.at_p0, pp.at_pinf)), "collision at {m}");
            }
        }
    }

    #[test]
    fn t_family_n2_matches_known_list() {
        let c = GKCurve::new(2).unwrap();
        let monos: std::collections::HashSet<(u32, u32, i64)> = c
            .t_family_monomials()
            .iter()
            .map(|m| (m.i, m.j, m.k))
            .collect();
        let expected = [
            (2, 0, 1),
            (1, 1, 1),
            (0, 2, 1),
            (2, 1, 1),
            (1, 2, 1),
            (2, 2, 1),
            (2, 1, 2),
            (1, 2, 2),
            (2, 2, 2),
            (2, 2, 3),
        ];
        assert_eq!(monos.len(), 10);
        for e in expected {
            assert!(monos.contains(&e), "missing {e:?}");
        }
    }

    #[test]
    fn monomial_evaluation() {
        let c = GKCurve::new(2).unwrap();
        let pts = c.code_points();
        let one = Monomial { i: 0, j: 0, k: 0 };
        assert_eq!(c.evaluate_monomial(one, pts[0]).unwrap(), c.field().one());
        assert!(matches!(
            c.evaluate_monomial(one, CurvePoint::Infinity),
            Err(CurveError::InfinityNotEvaluable)
        ));
        assert!(matches!(
            c.evaluate_monomial(Monomial { i: 0, j: 0, k: 1 }, c.p0()),
            Err(CurveError::PoleAtPoint)
        ));
        // y vanishes where b = 0
        let with_b0 = c
            .code_points()
            .into_iter()
            .find(|p| matches!(p, CurvePoint::Affine { b, .. } if b.is_zero()))
            .unwrap();
        let y = Monomial { i: 1, j: 0, k: 0 };
        assert!(c.evaluate_monomial(y, with_b0).unwrap().is_zero());
    }

    /// Second, deliberately naive evaluator: repeated multiplication and
    /// division, no square-and-multiply.
    fn naive_eval(c: &GKCurve, m: Monomial, pt: CurvePoint) -> FieldElement {
        let CurvePoint::Affine { a, b, c: cc } = pt else {
            panic!()
        };
        let f = c.field();
        let mut acc = f.one();
        for _ in 0..m.i {
            acc = f.mul(acc, b);
        }
        for _ in 0..m.j {
            acc = f.mul(acc, cc);
        }
        if m.k >= 0 {
            let ainv = f.inv(a).unwrap();
            for _ in 0..m.k {
                acc = f.mul(acc, ainv);
            }
        } else {
            for _ in 0..(-m.k) {
                acc = f.mul(acc, a);
            }
        }
        acc
    }

    #[test]
    fn evaluation_matches_naive_oracle() {
        let c = GKCurve::new(2).unwrap();
        let pts = c.code_points();
        let mut rng = StdRng::seed_from_u64(0x6b_c0de);
        for _ in 0..100 {
            let m = Monomial {
                i: rng.random_range(0..=2),
                j: rng.random_range(0..=2),
                k: rng.random_range(-3..=3),
            };
            let pt = pts[rng.random_range(0..pts.len())];
            assert_eq!(c.evaluate_monomial(m, pt).unwrap(), naive_eval(&c, m, pt));
        }
    }
}
