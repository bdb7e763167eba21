//! One-point and two-point Weierstrass semigroups on the GK curve.
//!
//! At every point of the orbit `O1` (so in particular at P0 and Pinf) the
//! one-point semigroup is generated by
//! `{ n^3 - n^2 + n, n^3, n^3 + 1 }` and has genus-many gaps.
//!
//! The two-point semigroup `H(P0, Pinf)` is described by its minimal
//! generating set `Gamma(P0, Pinf)`: the graph of a bijection between the
//! two gap sets. Together with the axes `H(P0) x {0}` and `{0} x H(Pinf)`
//! it generates the full semigroup under `lub`, the componentwise maximum:
//! a pair belongs to `H(P0, Pinf)` iff it is the lub of two generators.
//!
//! `Gamma` is computed two ways: a closed form over four explicit index
//! families (for n >= 3; the n = 2 set is known and returned directly), and
//! a brute force that walks the monomial families `T_k` of the curve module,
//! maps them through their pole pairs and verifies the defining properties
//! of a minimal generating set. The two must agree exactly.

use std::collections::HashMap;

use thiserror::Error;

use crate::curve::GKCurve;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("generators {0:?} have gcd {1} != 1")]
    NotCoprimeGenerators(Vec<u64>, u64),
    #[error("oracle violation: {0}")]
    OracleViolation(String),
}

/// A numerical semigroup given by finitely many generators with gcd 1.
#[derive(Debug, Clone)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    gaps: Vec<u64>,
    conductor: u64,
    member: Vec<bool>,
}

impl NumericalSemigroup {
    pub fn new(generators: &[u64]) -> Result<NumericalSemigroup, SemigroupError> {
        let mut gens: Vec<u64> = generators.iter().copied().filter(|&g| g > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let g = gens.iter().fold(0u64, |acc, &x| gcd(acc, x));
        if g != 1 {
            return Err(SemigroupError::NotCoprimeGenerators(gens, g));
        }
        // Sieve until a run of min-generator consecutive members appears;
        // everything at or beyond such a run is a member, so the conductor
        // is provably inside the window.
        let a_min = gens[0] as usize;
        let mut bound = (gens[0] * gens[gens.len() - 1] + gens[0] + 1) as usize;
        loop {
            let mut member = vec![false; bound + 1];
            member[0] = true;
            for v in 1..=bound {
                member[v] = gens
                    .iter()
                    .any(|&g| (g as usize) <= v && member[v - g as usize]);
            }
            let run_found =
                (0..=bound.saturating_sub(a_min - 1)).any(|v| (v..v + a_min).all(|w| member[w]));
            if !run_found {
                bound *= 2;
                continue;
            }
            let last_gap = (0..=bound).rev().find(|&v| !member[v]);
            let conductor = last_gap.map_or(0, |v| v as u64 + 1);
            let gaps: Vec<u64> = (0..=bound)
                .filter(|&v| !member[v])
                .map(|v| v as u64)
                .collect();
            return Ok(NumericalSemigroup {
                generators: gens,
                gaps,
                conductor,
                member,
            });
        }
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Sorted gap list (finite because the generators are coprime).
    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    /// Smallest c with [c, infinity) contained in the semigroup.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn contains(&self, v: u64) -> bool {
        if v >= self.conductor {
            return true;
        }
        self.member[v as usize]
    }
}

/// Componentwise maximum of two pairs.
pub fn lub(x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
    (x.0.max(y.0), x.1.max(y.1))
}

/// The minimal generating set of a two-point semigroup: the graph of a
/// bijection between the gap sets at the two points.
#[derive(Debug, Clone)]
pub struct GammaSet {
    pairs: Vec<(u64, u64)>,
    by_first: HashMap<u64, u64>,
    by_second: HashMap<u64, u64>,
}

impl GammaSet {
    pub fn from_pairs(mut pairs: Vec<(u64, u64)>) -> GammaSet {
        pairs.sort_unstable();
        pairs.dedup();
        let by_first = pairs.iter().map(|&(a, b)| (a, b)).collect();
        let by_second = pairs.iter().map(|&(a, b)| (b, a)).collect();
        GammaSet {
            pairs,
            by_first,
            by_second,
        }
    }

    /// Pairs sorted by first coordinate.
    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn second_of(&self, alpha: u64) -> Option<u64> {
        self.by_first.get(&alpha).copied()
    }

    pub fn first_of(&self, beta: u64) -> Option<u64> {
        self.by_second.get(&beta).copied()
    }

    pub fn contains(&self, pair: (u64, u64)) -> bool {
        self.by_first.get(&pair.0) == Some(&pair.1)
    }
}

/// The pole-pair formula evaluated on an exponent triple.
fn gamma_value(n: u64, i: u64, j: u64, k: u64) -> (u64, u64) {
    let n = n as i64;
    let (i, j, k) = (i as i64, j as i64, k as i64);
    let a = k * (n.pow(3) + 1) - i * (n * n - n + 1) - j;
    let b = i * (n.pow(3) - n * n + n) + j * n.pow(3) - k * (n.pow(3) + 1);
    debug_assert!(a > 0 && b > 0);
    (a as u64, b as u64)
}

/// The four index families of the closed form for n >= 3, in order.
pub fn gamma_families(curve: &GKCurve) -> Option<[Vec<(u64, u64)>; 4]> {
    let n = curve.n();
    if n < 3 {
        return None;
    }
    let jmax = n * n - n;
    let mut fam: [Vec<(u64, u64)>; 4] = Default::default();
    for k in 1..=(n - 1) {
        for i in 0..=k {
            for j in (k - i + 1)..=jmax {
                fam[0].push(gamma_value(n, i, j, k));
            }
        }
        for i in (k + 1)..=n {
            for j in 0..=jmax {
                fam[1].push(gamma_value(n, i, j, k));
            }
        }
    }
    for k in n..=(n * n - n - 2) {
        for i in 0..=n {
            for j in (k - i + 1).min(jmax + 1)..=jmax {
                fam[2].push(gamma_value(n, i, j, k));
            }
        }
    }
    for k in (n * n - n - 1)..=(n * n - 1) {
        for i in (k + n + 1 - n * n)..=n {
            for j in (k - i + 1).min(jmax + 1)..=jmax {
                fam[3].push(gamma_value(n, i, j, k));
            }
        }
    }
    Some(fam)
}

/// Minimal generating set of H(P0, Pinf) from the closed form. For n = 2
/// the four-family description does not apply and the known ten-pair set is
/// returned directly.
pub fn gamma_closed_form(curve: &GKCurve) -> GammaSet {
    if curve.n() == 2 {
        return GammaSet::from_pairs(vec![
            (1, 19),
            (2, 11),
            (3, 3),
            (4, 13),
            (5, 5),
            (7, 7),
            (10, 10),
            (11, 2),
            (13, 4),
            (19, 1),
        ]);
    }
    let fams = gamma_families(curve).expect("n >= 3");
    GammaSet::from_pairs(fams.into_iter().flatten().collect())
}

/// Independent construction of Gamma: enumerate the monomial families T_k,
/// map each through its pole pair and verify that the result is the graph
/// of a bijection between the gap sets, with genus-many members. Any failed
/// check is reported as an [`SemigroupError::OracleViolation`].
pub fn gamma_brute_force(curve: &GKCurve) -> Result<GammaSet, SemigroupError> {
    let g = curve.genus();
    let one_point = one_point_semigroup(curve)?;
    let monos = curve.t_family_monomials();
    if monos.len() as u64 != g {
        return Err(SemigroupError::OracleViolation(format!(
            "expected {} monomials, found {}",
            g,
            monos.len()
        )));
    }
    let mut pairs = Vec::with_capacity(monos.len());
    for m in monos {
        let pp = curve
            .pole_pair(m)
            .map_err(|e| SemigroupError::OracleViolation(e.to_string()))?;
        if pp.at_p0 <= 0 || pp.at_pinf <= 0 {
            return Err(SemigroupError::OracleViolation(format!(
                "{m} has non-positive pole pair ({}, {})",
                pp.at_p0, pp.at_pinf
            )));
        }
        let pair = (pp.at_p0 as u64, pp.at_pinf as u64);
        if one_point.contains(pair.0) || one_point.contains(pair.1) {
            return Err(SemigroupError::OracleViolation(format!(
                "{m} maps to {pair:?} outside the gap-set product"
            )));
        }
        pairs.push(pair);
    }
    let set = GammaSet::from_pairs(pairs);
    if set.len() as u64 != g {
        return Err(SemigroupError::OracleViolation(format!(
            "pole pairs collide: {} distinct of {}",
            set.len(),
            g
        )));
    }
    let firsts: Vec<u64> = {
        let mut v: Vec<u64> = set.pairs().iter().map(|p| p.0).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let seconds: Vec<u64> = {
        let mut v: Vec<u64> = set.pairs().iter().map(|p| p.1).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    if firsts != one_point.gaps() || seconds != one_point.gaps() {
        return Err(SemigroupError::OracleViolation(
            "pole pairs do not biject the gap sets".into(),
        ));
    }
    Ok(set)
}

/// H at any point of orbit O1: generated by n^3-n^2+n, n^3, n^3+1.
pub fn one_point_semigroup(curve: &GKCurve) -> Result<NumericalSemigroup, SemigroupError> {
    let n = curve.n();
    NumericalSemigroup::new(&[n.pow(3) - n * n + n, n.pow(3), n.pow(3) + 1])
}

/// The two-point semigroup H(P0, Pinf) with a materialized membership grid
/// on the square box [0, bound]^2.
#[derive(Debug, Clone)]
pub struct TwoPointSemigroup {
    gamma: GammaSet,
    h_p0: NumericalSemigroup,
    h_pinf: NumericalSemigroup,
    bound: u64,
    grid: Vec<bool>,
}

impl TwoPointSemigroup {
    /// Build with the default box bound 2g.
    pub fn new(curve: &GKCurve) -> Result<TwoPointSemigroup, SemigroupError> {
        Self::with_bound(curve, 2 * curve.genus())
    }

    pub fn with_bound(curve: &GKCurve, bound: u64) -> Result<TwoPointSemigroup, SemigroupError> {
        let gamma = gamma_closed_form(curve);
        let h = one_point_semigroup(curve)?;
        let mut tps = TwoPointSemigroup {
            gamma,
            h_p0: h.clone(),
            h_pinf: h,
            bound,
            grid: Vec::new(),
        };
        tps.grid = tps.closure_grid(bound);
        Ok(tps)
    }

    /// A new value with the box recomputed at a larger bound.
    pub fn grown(mut self, bound: u64) -> TwoPointSemigroup {
        if bound > self.bound {
            self.grid = self.closure_grid(bound);
            self.bound = bound;
        }
        self
    }

    pub fn gamma(&self) -> &GammaSet {
        &self.gamma
    }

    pub fn h_p0(&self) -> &NumericalSemigroup {
        &self.h_p0
    }

    pub fn h_pinf(&self) -> &NumericalSemigroup {
        &self.h_pinf
    }

    pub fn box_bound(&self) -> u64 {
        self.bound
    }

    /// Membership grid row for `alpha` (length bound+1).
    pub fn grid_row(&self, alpha: u64) -> &[bool] {
        let w = self.bound as usize + 1;
        &self.grid[alpha as usize * w..(alpha as usize + 1) * w]
    }

    /// Least beta with (alpha, beta) in H, i.e. 0 when alpha is a non-gap
    /// at P0 and the Gamma partner of alpha otherwise.
    pub fn min_second(&self, alpha: u64) -> u64 {
        if self.h_p0.contains(alpha) {
            0
        } else {
            self.gamma
                .second_of(alpha)
                .expect("every gap has a partner in Gamma")
        }
    }

    /// Least alpha with (alpha, beta) in H.
    pub fn min_first(&self, beta: u64) -> u64 {
        if self.h_pinf.contains(beta) {
            0
        } else {
            self.gamma
                .first_of(beta)
                .expect("every gap has a partner in Gamma")
        }
    }

    /// Exact membership of (alpha, beta) in H(P0, Pinf). Inside the box this
    /// is a grid lookup; outside it falls back to the lub criterion directly
    /// (a pair is a lub of generators iff some generator realizes each
    /// coordinate within the rectangle it spans).
    pub fn member(&self, alpha: u64, beta: u64) -> bool {
        if alpha <= self.bound && beta <= self.bound {
            let w = self.bound as usize + 1;
            return self.grid[alpha as usize * w + beta as usize];
        }
        self.member_by_rule(alpha, beta)
    }

    fn member_by_rule(&self, alpha: u64, beta: u64) -> bool {
        self.min_second(alpha) <= beta && self.min_first(beta) <= alpha
    }

    pub fn is_gap_pair(&self, alpha: u64, beta: u64) -> bool {
        !self.member(alpha, beta)
    }

    /// Generators Gamma and both axes restricted to [0, bound]^2.
    fn generators_in_box(&self, bound: u64) -> Vec<(u64, u64)> {
        let mut gens: Vec<(u64, u64)> = self
            .gamma
            .pairs()
            .iter()
            .copied()
            .filter(|&(a, b)| a <= bound && b <= bound)
            .collect();
        for v in 0..=bound {
            if self.h_p0.contains(v) {
                gens.push((v, 0));
            }
            if self.h_pinf.contains(v) {
                gens.push((0, v));
            }
        }
        gens
    }

    /// Membership grid by explicit closure: mark lub(x, y) for every pair of
    /// generators inside the box.
    fn closure_grid(&self, bound: u64) -> Vec<bool> {
        let w = bound as usize + 1;
        let mut grid = vec![false; w * w];
        let gens = self.generators_in_box(bound);
        for &x in &gens {
            for &y in &gens {
                let (a, b) = lub(x, y);
                grid[a as usize * w + b as usize] = true;
            }
        }
        grid
    }

    /// The permutation sigma on {1..g} with beta_{alpha_i} = beta_{sigma(i)},
    /// where alpha_i and beta_i are the ascending gap sequences at the two
    /// points. Returned 1-based.
    pub fn sigma(&self) -> Vec<usize> {
        let alphas = self.h_p0.gaps();
        let betas = self.h_pinf.gaps();
        alphas
            .iter()
            .map(|&a| {
                let b = self.gamma.second_of(a).expect("gap has partner");
                betas.binary_search(&b).expect("partner is a gap") + 1
            })
            .collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn curve2() -> GKCurve {
        GKCurve::new(2).unwrap()
    }

    fn curve3() -> GKCurve {
        GKCurve::new(3).unwrap()
    }

    #[test]
    fn gaps_of_6_8_9() {
        let s = NumericalSemigroup::new(&[6, 8, 9]).unwrap();
        assert_eq!(s.gaps(), &[1, 2, 3, 4, 5, 7, 10, 11, 13, 19]);
        assert_eq!(s.conductor(), 20);
    }

    #[test]
    fn gaps_of_21_27_28() {
        let s = NumericalSemigroup::new(&[21, 27, 28]).unwrap();
        assert_eq!(s.gaps().len(), 99);
        assert_eq!(*s.gaps().last().unwrap(), 197);
        assert!(s.contains(196)); // 196 = 7 * 28
    }

    #[test]
    fn trivial_semigroup_has_no_gaps() {
        let s = NumericalSemigroup::new(&[1]).unwrap();
        assert!(s.gaps().is_empty());
        assert_eq!(s.conductor(), 0);
    }

    #[test]
    fn generators_without_a_coprime_pair() {
        // gcd of the whole set is 1 even though no pair is coprime
        let s = NumericalSemigroup::new(&[6, 10, 15]).unwrap();
        assert_eq!(s.gaps().len(), 15);
        assert_eq!(s.conductor(), 30);
        assert!(!s.contains(29) && s.contains(30));
    }

    #[test]
    fn non_coprime_generators_rejected() {
        assert!(matches!(
            NumericalSemigroup::new(&[2, 4]),
            Err(SemigroupError::NotCoprimeGenerators(_, 2))
        ));
    }

    #[test]
    fn lub_basics() {
        assert_eq!(lub((3, 3), (2, 11)), (3, 11));
        assert_eq!(lub((0, 0), (5, 5)), (5, 5));
        let x = (7, 4);
        assert_eq!(lub(x, x), x);
    }

    #[test]
    fn n2_gamma_is_the_known_ten_pairs() {
        let c = curve2();
        let expected = vec![
            (1, 19),
            (2, 11),
            (3, 3),
            (4, 13),
            (5, 5),
            (7, 7),
            (10, 10),
            (11, 2),
            (13, 4),
            (19, 1),
        ];
        assert_eq!(gamma_closed_form(&c).pairs(), &expected[..]);
        assert_eq!(gamma_brute_force(&c).unwrap().pairs(), &expected[..]);
    }

    #[test]
    fn closed_form_equals_brute_force_n3() {
        let c = curve3();
        let cf = gamma_closed_form(&c);
        let bf = gamma_brute_force(&c).unwrap();
        assert_eq!(cf.pairs(), bf.pairs());
        assert_eq!(cf.len() as u64, c.genus());
    }

    #[test]
    fn closed_form_equals_brute_force_n4() {
        let c = GKCurve::new(4).unwrap();
        let cf = gamma_closed_form(&c);
        let bf = gamma_brute_force(&c).unwrap();
        assert_eq!(cf.pairs(), bf.pairs());
        assert_eq!(cf.len(), 456);
    }

    #[test]
    fn n3_family_sizes_match_counting_formulas() {
        let c = curve3();
        let fams = gamma_families(&c).unwrap();
        let sizes: Vec<usize> = fams.iter().map(|f| f.len()).collect();
        assert_eq!(sizes, vec![26, 21, 32, 20]);
        // sums of the per-k counts, evaluated in closed form
        let n = 3u64;
        let s1 = (6 * n.pow(4) - 7 * n.pow(3) - 3 * n * n + 4 * n) / 6;
        let s2 = (n.pow(5) - 2 * n.pow(4) - 5 * n - 2) / 2;
        let s3 = (n.pow(3) + 6 * n * n + 11 * n + 6) / 6;
        assert_eq!((sizes[0] + sizes[1]) as u64, s1);
        assert_eq!(sizes[2] as u64, s2);
        assert_eq!(sizes[3] as u64, s3);
        assert_eq!(s1 + s2 + s3, c.genus());
    }

    #[test]
    fn n3_gamma_contains_expected_pairs() {
        let c = curve3();
        let g = gamma_closed_form(&c);
        for pair in [(26, 26), (1, 197), (197, 1), (134, 22), (9, 149), (8, 176)] {
            assert!(g.contains(pair), "missing {pair:?}");
        }
    }

    #[test]
    fn box_membership_examples() {
        let c = curve2();
        let t = TwoPointSemigroup::new(&c).unwrap();
        assert!(t.member(0, 0));
        assert!(!t.member(13, 3));
        assert!(t.is_gap_pair(10, 8));
        assert!(t.member(13, 4)); // in Gamma, hence in H
        assert!(!t.is_gap_pair(0, 0));
    }

    #[test]
    fn grid_agrees_with_rule_everywhere() {
        for curve in [curve2(), curve3()] {
            let t = TwoPointSemigroup::new(&curve).unwrap();
            let b = t.box_bound();
            for a in 0..=b {
                for bb in 0..=b {
                    assert_eq!(
                        t.grid_row(a)[bb as usize],
                        t.min_second(a) <= bb && t.min_first(bb) <= a,
                        "mismatch at ({a}, {bb})"
                    );
                }
            }
        }
    }

    #[test]
    fn axis_rows_match_one_point_membership() {
        let c = curve2();
        let t = TwoPointSemigroup::new(&c).unwrap();
        for v in 0..=t.box_bound() {
            assert_eq!(t.member(0, v), t.h_pinf().contains(v));
            assert_eq!(t.member(v, 0), t.h_p0().contains(v));
        }
    }

    #[test]
    fn beta_alpha_is_minimal() {
        let c = curve2();
        let t = TwoPointSemigroup::new(&c).unwrap();
        for &(a, b) in t.gamma().pairs().iter() {
            assert!(t.member(a, b));
            for smaller in 0..b {
                assert!(!t.member(a, smaller), "beta not minimal for alpha={a}");
            }
        }
    }

    #[test]
    fn lub_closure_on_random_members() {
        let c = curve2();
        let t = TwoPointSemigroup::new(&c).unwrap();
        let b = t.box_bound();
        let members: Vec<(u64, u64)> = (0..=b)
            .flat_map(|a| (0..=b).map(move |bb| (a, bb)))
            .filter(|&(a, bb)| t.member(a, bb))
            .collect();
        let mut rng = StdRng::seed_from_u64(0x1b5ee);
        for _ in 0..200 {
            let x = members[rng.random_range(0..members.len())];
            let y = members[rng.random_range(0..members.len())];
            let (a, bb) = lub(x, y);
            assert!(t.member(a, bb), "lub of members must be a member");
        }
    }

    #[test]
    fn sigma_n2() {
        let c = curve2();
        let t = TwoPointSemigroup::new(&c).unwrap();
        let sigma = t.sigma();
        assert_eq!(sigma, vec![10, 8, 3, 9, 5, 6, 7, 2, 4, 1]);
        // bijection
        let mut seen = sigma.clone();
        seen.sort_unstable();
        assert_eq!(seen, (1..=10).collect::<Vec<_>>());
        // the n=2 Gamma is swap-symmetric, so sigma is an involution
        for (i, &s) in sigma.iter().enumerate() {
            assert_eq!(sigma[s - 1], i + 1);
        }
    }

    #[test]
    fn growth_extends_the_box() {
        let c = curve2();
        let t = TwoPointSemigroup::with_bound(&c, 5).unwrap();
        assert_eq!(t.box_bound(), 5);
        let t = t.grown(25);
        assert_eq!(t.box_bound(), 25);
        assert!(t.member(20, 20));
        assert!(t.member(25, 25));
    }
}
