//! Cross-check battery reproducing the known parameter families on the
//! n = 2 and n = 3 curves. Each check returns a [`Check`] with what was
//! expected, what was computed, and a pass flag; `gkcodes verify --n N`
//! prints one line per check and exits nonzero if any fails.

use std::collections::HashSet;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::codes;
use crate::curve::GKCurve;
use crate::rrspace::{self, TwoPointDivisor};
use crate::search::{self, SearchSpec};
use crate::semigroup::{
    gamma_brute_force, gamma_closed_form, gamma_families, NumericalSemigroup, TwoPointSemigroup,
};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub n: u64,
    pub checks: Vec<Check>,
    pub overall: bool,
}

fn check(name: &str, expected: String, actual: String, pass: bool, started: Instant) -> Check {
    Check {
        name: name.to_string(),
        expected,
        actual,
        pass,
        millis: started.elapsed().as_millis(),
    }
}

/// Run the full battery for one curve. Supported n: 2 and 3.
pub fn run(n: u64) -> RunReport {
    let checks = match n {
        2 => vec![
            check_point_count(2),
            check_genus_triple(2),
            check_one_point_gaps(),
            check_gamma_equivalence(2),
            check_pole_pair_injectivity(2),
            check_membership_cross_oracle(),
            check_riemann_roch_consistency(),
            check_table1_codes(),
            check_shortening_family(),
            check_figure1_grid(),
        ],
        3 => vec![
            check_point_count(3),
            check_genus_triple(3),
            check_gamma_equivalence(3),
            check_pole_pair_injectivity(3),
            check_example2_family(),
            check_example2_witnesses(),
        ],
        _ => vec![Check {
            name: "supported-n".into(),
            expected: "n in {2, 3}".into(),
            actual: format!("n = {n}"),
            pass: false,
            millis: 0,
        }],
    };
    let overall = checks.iter().all(|c| c.pass);
    RunReport { n, checks, overall }
}

/// Rational point count, with the per-curve time budget.
pub fn check_point_count(n: u64) -> Check {
    let t0 = Instant::now();
    let curve = GKCurve::new(n).expect("supported n");
    let count = curve.points().len() as u64;
    let expected = curve.expected_point_count();
    let budget_ms = if n == 2 { 1_000 } else { 60_000 };
    let elapsed = t0.elapsed().as_millis();
    check(
        "point-count",
        format!("{expected} points in < {budget_ms} ms"),
        format!("{count} points in {elapsed} ms"),
        count == expected && elapsed < budget_ms,
        t0,
    )
}

/// The genus formula agrees with the gap count of the one-point semigroup
/// and with the maximality identity |points| = n^6 + 1 + 2 g n^3.
pub fn check_genus_triple(n: u64) -> Check {
    let t0 = Instant::now();
    let curve = GKCurve::new(n).expect("supported n");
    let g = curve.genus();
    let semi = crate::semigroup::one_point_semigroup(&curve).expect("coprime");
    let gap_count = semi.gaps().len() as u64;
    let points = curve.points().len() as u64;
    let maximal = curve.field().order() + 1 + 2 * g * curve.q();
    let pass = g == gap_count && points == maximal;
    check(
        "genus-triple",
        format!("g = gap count = {g}, points = {maximal}"),
        format!("gap count {gap_count}, points {points}"),
        pass,
        t0,
    )
}

/// Gap set of <6, 8, 9>.
pub fn check_one_point_gaps() -> Check {
    let t0 = Instant::now();
    let expected = vec![1, 2, 3, 4, 5, 7, 10, 11, 13, 19];
    let semi = NumericalSemigroup::new(&[6, 8, 9]).expect("coprime");
    let pass = semi.gaps() == expected.as_slice();
    check(
        "one-point-gaps",
        format!("{expected:?}"),
        format!("{:?}", semi.gaps()),
        pass,
        t0,
    )
}

/// Reference values for the n = 3 minimal generating set, by index family.
/// Two family-2 pairs appear garbled in the reference table; the values
/// (9, 149) and (8, 176) below follow from the index formula and are
/// asserted alongside the clean entries.
#[rustfmt::skip]
const REFERENCE_GAMMA3_FAMILY1: [(u64, u64); 26] = [
    (26, 26), (25, 53), (24, 80), (23, 107), (22, 134), (20, 20), (19, 47), (18, 74),
    (17, 101), (16, 128), (15, 155), (53, 25), (52, 52), (51, 79), (50, 106), (47, 19),
    (46, 46), (45, 73), (44, 100), (43, 127), (41, 13), (40, 40), (39, 67), (38, 94),
    (37, 121), (36, 148),
];
#[rustfmt::skip]
const REFERENCE_GAMMA3_FAMILY2: [(u64, u64); 21] = [
    (14, 14), (13, 41), (12, 68), (11, 95), (10, 122), (9, 149), (8, 176), (7, 35),
    (6, 62), (5, 89), (4, 116), (3, 143), (2, 170), (1, 197), (35, 7), (34, 34),
    (33, 61), (32, 88), (31, 115), (30, 142), (29, 169),
];
#[rustfmt::skip]
const REFERENCE_GAMMA3_FAMILY3: [(u64, u64); 32] = [
    (80, 24), (79, 51), (78, 78), (74, 18), (73, 45), (72, 72), (71, 99), (68, 12),
    (67, 39), (66, 66), (65, 93), (64, 120), (62, 6), (61, 33), (60, 60), (59, 87),
    (58, 114), (57, 141), (107, 23), (106, 50), (101, 17), (100, 44), (99, 71), (95, 11),
    (94, 38), (93, 65), (92, 92), (89, 5), (88, 32), (87, 59), (86, 86), (85, 113),
];
#[rustfmt::skip]
const REFERENCE_GAMMA3_FAMILY4: [(u64, u64); 20] = [
    (134, 22), (128, 16), (127, 43), (122, 10), (121, 37), (120, 64), (116, 4), (115, 31),
    (114, 58), (113, 85), (155, 15), (149, 9), (148, 36), (143, 3), (142, 30), (141, 57),
    (176, 8), (170, 2), (169, 29), (197, 1),
];

/// Closed form equals monomial brute force; reference pairs and family
/// sizes hold.
pub fn check_gamma_equivalence(n: u64) -> Check {
    let t0 = Instant::now();
    let curve = GKCurve::new(n).expect("supported n");
    let cf = gamma_closed_form(&curve);
    let bf = match gamma_brute_force(&curve) {
        Ok(b) => b,
        Err(e) => {
            return check(
                "gamma-oracles",
                "brute force succeeds".into(),
                e.to_string(),
                false,
                t0,
            )
        }
    };
    let mut pass = cf.pairs() == bf.pairs() && cf.len() as u64 == curve.genus();
    let mut detail = format!("closed form == brute force on {} pairs", cf.len());
    if n == 2 {
        let expected = [
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
        pass &= cf.pairs() == expected;
    } else if n == 3 {
        let fams = gamma_families(&curve).expect("n >= 3");
        let sizes: Vec<usize> = fams.iter().map(|f| f.len()).collect();
        pass &= sizes == vec![26, 21, 32, 20];
        let n64 = 3u64;
        let s1 = (6 * n64.pow(4) - 7 * n64.pow(3) - 3 * n64 * n64 + 4 * n64) / 6;
        let s2 = (n64.pow(5) - 2 * n64.pow(4) - 5 * n64 - 2) / 2;
        let s3 = (n64.pow(3) + 6 * n64 * n64 + 11 * n64 + 6) / 6;
        pass &= (sizes[0] + sizes[1]) as u64 == s1
            && sizes[2] as u64 == s2
            && sizes[3] as u64 == s3
            && s1 + s2 + s3 == curve.genus();
        for (idx, reference) in [
            &REFERENCE_GAMMA3_FAMILY1[..],
            &REFERENCE_GAMMA3_FAMILY2[..],
            &REFERENCE_GAMMA3_FAMILY3[..],
            &REFERENCE_GAMMA3_FAMILY4[..],
        ]
        .iter()
        .enumerate()
        {
            let fam: HashSet<(u64, u64)> = fams[idx].iter().copied().collect();
            for pair in reference.iter() {
                if !fam.contains(pair) {
                    pass = false;
                    detail = format!("family {} missing {:?}", idx + 1, pair);
                }
            }
        }
        detail.push_str(&format!("; family sizes {sizes:?}"));
    }
    let elapsed = t0.elapsed().as_millis();
    check(
        "gamma-oracles",
        "closed form == brute force == reference pairs in < 1000 ms".into(),
        format!("{detail} in {elapsed} ms"),
        pass && elapsed < 1_000,
        t0,
    )
}

/// Distinct monomials of the T families have distinct pole pairs, all of
/// them gap pairs.
pub fn check_pole_pair_injectivity(n: u64) -> Check {
    let t0 = Instant::now();
    let curve = GKCurve::new(n).expect("supported n");
    let semi = crate::semigroup::one_point_semigroup(&curve).expect("coprime");
    let monos = curve.t_family_monomials();
    let mut seen = HashSet::new();
    let mut pass = monos.len() as u64 == curve.genus();
    for m in &monos {
        match curve.pole_pair(*m) {
            Ok(pp) => {
                if pp.at_p0 <= 0
                    || pp.at_pinf <= 0
                    || semi.contains(pp.at_p0 as u64)
                    || semi.contains(pp.at_pinf as u64)
                    || !seen.insert((pp.at_p0, pp.at_pinf))
                {
                    pass = false;
                }
            }
            Err(_) => pass = false,
        }
    }
    check(
        "pole-pair-injectivity",
        format!("{} distinct gap pairs", curve.genus()),
        format!(
            "{} distinct pairs from {} monomials",
            seen.len(),
            monos.len()
        ),
        pass,
        t0,
    )
}

/// Fifty random pairs in [0, 2g]^2: lub-closure membership equals the
/// Riemann-Roch rank criterion (n = 2).
pub fn check_membership_cross_oracle() -> Check {
    let t0 = Instant::now();
    let curve = GKCurve::new(2).expect("n = 2");
    let tps = TwoPointSemigroup::new(&curve).expect("coprime");
    let pts = curve.code_points();
    let b = 2 * curve.genus();
    let mut rng = StdRng::seed_from_u64(0x2b0c5);
    let mut disagreements = Vec::new();
    for _ in 0..50 {
        let a = rng.random_range(0..=b);
        let bb = rng.random_range(0..=b);
        let by_box = tps.member(a, bb);
        match rrspace::pair_in_h_by_rank(&curve, (a, bb), &pts) {
            Ok(by_rank) => {
                if by_rank != by_box {
                    disagreements.push((a, bb));
                }
            }
            Err(e) => disagreements.push({
                let _ = e;
                (a, bb)
            }),
        }
    }
    let elapsed = t0.elapsed().as_millis();
    check(
        "membership-cross-oracle",
        "50/50 agreements in < 120000 ms".into(),
        format!(
            "{} disagreements {:?} in {} ms",
            disagreements.len(),
            disagreements,
            elapsed
        ),
        disagreements.is_empty() && elapsed < 120_000,
        t0,
    )
}

/// l(D) = deg D - g + 1 for every two-point divisor with 18 < deg <= 40
/// (n = 2).
pub fn check_riemann_roch_consistency() -> Check {
    let t0 = Instant::now();
    let curve = GKCurve::new(2).expect("n = 2");
    let pts = curve.code_points();
    let g = curve.genus();
    let mut failures = Vec::new();
    let mut total = 0u64;
    for deg in (2 * g - 1)..=40 {
        for a1 in 0..=deg {
            total += 1;
            let div = TwoPointDivisor::new(a1, deg - a1);
            match rrspace::ell(&curve, div, &pts) {
                Ok(dim) if dim as u64 == deg - g + 1 => {}
                _ => failures.push((a1, deg - a1)),
            }
        }
    }
    check(
        "riemann-roch-consistency",
        format!("{total}/{total} divisors exact"),
        format!("{} failures {:?}", failures.len(), failures),
        failures.is_empty(),
        t0,
    )
}

/// The two [223, 199, >=16] and [223, 198, >=17] codes: dimensions by
/// matrix rank, exact duality, certified bounds, and a Monte-Carlo weight
/// smoke test.
pub fn check_table1_codes() -> Check {
    let t0 = Instant::now();
    let curve = GKCurve::new(2).expect("n = 2");
    let tps = TwoPointSemigroup::new(&curve).expect("coprime");
    let mut pass = true;
    let mut notes = Vec::new();
    for (gdiv, a, b, want) in [
        (
            TwoPointDivisor::new(22, 11),
            (13, 3),
            (10, 9),
            (223usize, 199usize, 16u64),
        ),
        (
            TwoPointDivisor::new(22, 12),
            (13, 3),
            (10, 10),
            (223, 198, 17),
        ),
    ] {
        let outcome = (|| -> Result<(usize, usize, u64), codes::CodesError> {
            let cl = codes::build_cl(&curve, gdiv)?;
            let co = codes::build_comega(&curve, gdiv)?;
            let up = codes::apply_matthews(&curve, &tps, &co, a, b, false)?;
            if up.gen_matrix().rank() != up.dimension() {
                return Err(rrspace::RrError::OracleViolation("rank != k".into()).into());
            }
            if !cl
                .gen_matrix()
                .product_with_transpose_is_zero(up.gen_matrix())
            {
                return Err(rrspace::RrError::OracleViolation("duality != 0".into()).into());
            }
            if monte_carlo_min_weight(&up, 10_000) < up.bound().value {
                return Err(rrspace::RrError::OracleViolation("weight below bound".into()).into());
            }
            Ok(up.params())
        })();
        match outcome {
            Ok(params) if params == want => notes.push(format!("{want:?} ok")),
            Ok(params) => {
                pass = false;
                notes.push(format!("expected {want:?}, got {params:?}"));
            }
            Err(e) => {
                pass = false;
                notes.push(format!("{want:?}: {e}"));
            }
        }
    }
    let elapsed = t0.elapsed().as_millis();
    check(
        "table1-codes",
        "[223,199,>=16] and [223,198,>=17], rank-verified, dual, in < 120000 ms".into(),
        format!("{} in {} ms", notes.join("; "), elapsed),
        pass && elapsed < 120_000,
        t0,
    )
}

/// Smallest weight among `samples` random nonzero codewords.
fn monte_carlo_min_weight(code: &codes::LinearCode, samples: u32) -> u64 {
    let field = code.field();
    let q = field.order();
    let mut rng = StdRng::seed_from_u64(0x3a3);
    let mut best = u64::MAX;
    for _ in 0..samples {
        let mut word = vec![0u32; code.length()];
        let mut nonzero = false;
        for r in 0..code.dimension() {
            let m = rng.random_range(0..q) as u32;
            if m == 0 {
                continue;
            }
            nonzero = true;
            for (w, &v) in word.iter_mut().zip(code.gen_matrix().row(r)) {
                if v != 0 {
                    *w = field.raw_add(*w, field.raw_mul(m, v));
                }
            }
        }
        if nonzero {
            best = best.min(word.iter().filter(|&&v| v != 0).count() as u64);
        }
    }
    best
}

/// The 26 shortened codes [223-s, 199-s, >=16] and [223-s, 198-s, >=17]
/// for s = 1..13, each dimension revalidated by matrix rank.
pub fn check_shortening_family() -> Check {
    let t0 = Instant::now();
    let curve = GKCurve::new(2).expect("n = 2");
    let tps = TwoPointSemigroup::new(&curve).expect("coprime");
    let mut pass = true;
    let mut count = 0usize;
    let mut notes = Vec::new();
    for (gdiv, a, b, k0, d) in [
        (
            TwoPointDivisor::new(22, 11),
            (13, 3),
            (10, 9),
            199usize,
            16u64,
        ),
        (TwoPointDivisor::new(22, 12), (13, 3), (10, 10), 198, 17),
    ] {
        let parent = codes::build_comega(&curve, gdiv)
            .and_then(|co| codes::apply_matthews(&curve, &tps, &co, a, b, false));
        let parent = match parent {
            Ok(p) => p,
            Err(e) => {
                pass = false;
                notes.push(e.to_string());
                continue;
            }
        };
        for s in 1..=13u64 {
            match codes::shorten(&parent, s) {
                Ok(sh) => {
                    let want = (223 - s as usize, k0 - s as usize, d);
                    let rank_ok = sh.gen_matrix().rank() == sh.dimension();
                    if sh.params() != want || !rank_ok {
                        pass = false;
                        notes.push(format!("s={s}: got {:?}", sh.params()));
                    } else {
                        count += 1;
                    }
                }
                Err(e) => {
                    pass = false;
                    notes.push(format!("s={s}: {e}"));
                }
            }
        }
    }
    let elapsed = t0.elapsed().as_millis();
    check(
        "shortening-family",
        "26 rank-verified records in < 300000 ms".into(),
        format!(
            "{count} records ok{}{} in {elapsed} ms",
            if notes.is_empty() { "" } else { "; " },
            notes.join("; ")
        ),
        pass && count == 26 && elapsed < 300_000,
        t0,
    )
}

/// The reference 13-code input family on the n = 3 curve, checked for both
/// readings of the b2 sign. The hypothesis checker must validate exactly
/// one sign across l = 0..12 with parameters [6074, 5793-l, >=184+l].
///
/// This check currently fails, and the failure is real: with
/// H(P0) = <21, 27, 28> the value 196 = 7 * 28 is a non-gap, so (196, 0)
/// lies in H(P0, Pinf) and l(196 P0 + 1 Pinf) > l(195 P0 + 1 Pinf) —
/// the dimension-equality hypothesis rejects a = (196, 1) outright, for
/// either sign of the family. See `check_example2_witnesses` for the same
/// parameters certified through different divisor pairs.
pub fn check_example2_family() -> Check {
    let t0 = Instant::now();
    let curve = GKCurve::new(3).expect("n = 3");
    let tps = TwoPointSemigroup::new(&curve).expect("coprime");
    let g = curve.genus();
    let a = (196u64, 1u64);
    let mut per_sign = Vec::new();
    for sign in [1i64, -1i64] {
        let mut passes = 0u32;
        let mut first_failure = None;
        for l in 0..=12i64 {
            let b2 = (92 + sign * l) as u64;
            match codes::matthews_hypotheses(&tps, g, a, (92, b2)) {
                Ok(()) => passes += 1,
                Err(e) => {
                    if first_failure.is_none() {
                        first_failure = Some(format!("l={l}: {e}"));
                    }
                }
            }
        }
        per_sign.push((sign, passes, first_failure));
    }
    let plus_all = per_sign[0].1 == 13;
    let minus_all = per_sign[1].1 == 13;
    // parameters [6074, 5793-l, >=184+l] correspond to b2 = 92 + l
    let pass = plus_all && !minus_all;
    let actual = per_sign
        .iter()
        .map(|(s, p, f)| {
            format!(
                "sign {}: {p}/13{}",
                if *s > 0 { "+" } else { "-" },
                f.as_deref().map(|m| format!(" ({m})")).unwrap_or_default()
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    let elapsed = t0.elapsed().as_millis();
    check(
        "example2-family",
        "(196,1),(92,92+l) passes 13/13, (92,92-l) does not, in < 60000 ms".into(),
        format!("{actual} in {elapsed} ms"),
        pass && elapsed < 60_000,
        t0,
    )
}

/// The parameters [6074, 5793-l, >=184+l], l = 0..12, are achievable: the
/// pairs a = (1, 196), b = (1, 183+l) satisfy every hypothesis, and a
/// degree-windowed search over the default boxes returns exactly these
/// thirteen (length, dimension, bound) records.
pub fn check_example2_witnesses() -> Check {
    let t0 = Instant::now();
    let curve = GKCurve::new(3).expect("n = 3");
    let tps = TwoPointSemigroup::new(&curve).expect("coprime");
    let g = curve.genus();
    let n_len = curve.code_points().len() as u64;
    let mut pass = true;
    let mut notes = Vec::new();
    for l in 0..=12u64 {
        let a = (1u64, 196u64);
        let b = (1u64, 183 + l);
        let deg = a.0 + a.1 + b.0 + b.1 - 2;
        let params = (n_len, n_len + g - 1 - deg, deg + 3 - 2 * g);
        let want = (6074, 5793 - l, 184 + l);
        if params != want {
            pass = false;
            notes.push(format!("l={l}: arithmetic gives {params:?}"));
        }
        if let Err(e) = codes::matthews_hypotheses(&tps, g, a, b) {
            pass = false;
            notes.push(format!("l={l}: {e}"));
        }
    }
    // the search also reaches all thirteen parameter sets
    let spec = SearchSpec::new(&curve, 379, 391);
    match search::search_matthews(&curve, &tps, &spec) {
        Ok(records) => {
            for l in 0..=12u64 {
                let want = (6074, 5793 - l, 184 + l);
                if !records.iter().any(|r| (r.n, r.k, r.d_bound) == want) {
                    pass = false;
                    notes.push(format!("search missed {want:?}"));
                }
            }
        }
        Err(e) => {
            pass = false;
            notes.push(e.to_string());
        }
    }
    let elapsed = t0.elapsed().as_millis();
    check(
        "example2-witnesses",
        "13 parameter sets certified and found by search in < 60000 ms".into(),
        format!(
            "{}{} in {elapsed} ms",
            if notes.is_empty() {
                "all certified"
            } else {
                ""
            },
            notes.join("; ")
        ),
        pass && elapsed < 60_000,
        t0,
    )
}

/// The n = 2 membership grid on [0, 20]^2 is symmetric under coordinate
/// swap and its axis rows equal one-point membership of <6, 8, 9>.
pub fn check_figure1_grid() -> Check {
    let t0 = Instant::now();
    let curve = GKCurve::new(2).expect("n = 2");
    let tps = TwoPointSemigroup::new(&curve).expect("coprime");
    let b = tps.box_bound();
    let mut pass = b == 20;
    for alpha in 0..=b {
        for beta in 0..=b {
            if tps.member(alpha, beta) != tps.member(beta, alpha) {
                pass = false;
            }
        }
    }
    let semi = NumericalSemigroup::new(&[6, 8, 9]).expect("coprime");
    for v in 0..=b {
        if tps.member(0, v) != semi.contains(v) || tps.member(v, 0) != semi.contains(v) {
            pass = false;
        }
    }
    check(
        "figure1-grid",
        "swap-symmetric 21x21 grid with one-point axes".into(),
        format!("box bound {b}, symmetric: {pass}"),
        pass,
        t0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_battery_is_green() {
        let report = run(2);
        for c in &report.checks {
            assert!(
                c.pass,
                "{}: expected {}, got {}",
                c.name, c.expected, c.actual
            );
        }
        assert!(report.overall);
    }

    #[test]
    fn unsupported_n_reports_failure() {
        let report = run(5);
        assert!(!report.overall);
    }
}
