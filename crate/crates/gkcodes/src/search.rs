//! Systematic search for dual two-point codes whose certified minimum
//! distance beats the designed bound, plus one-point baselines and batch
//! shortening.
//!
//! The search enumerates quadruples (a1, a2, b1, b2): the pair (a1, a2)
//! first, since the dimension-equality hypothesis prunes hardest (it caps
//! a2 below the Gamma partner of a1), then (b1, b2) within the requested
//! degree window. All hypothesis checks run against the precomputed
//! membership box; records are deduplicated by (length, dimension) keeping
//! the largest bound, with lexicographic quadruple order as the tie break,
//! so the output is deterministic.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::codes::{self, CodesError};
use crate::curve::GKCurve;
use crate::semigroup::TwoPointSemigroup;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("degree window [{0}, {1}] must satisfy 2g-2 < min <= max < {2}")]
    DegreeOutOfRange(u64, u64, u64),
    #[error("shortening range {0} must stay below the smallest dimension {1}")]
    SRangeTooLarge(u64, u64),
    #[error(transparent)]
    Codes(#[from] CodesError),
}

/// Search parameters; boxes are inclusive (lo, hi) ranges per coordinate.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub deg_min: u64,
    pub deg_max: u64,
    pub a1_range: (u64, u64),
    pub a2_range: (u64, u64),
    pub b1_range: (u64, u64),
    pub b2_range: (u64, u64),
    /// Re-certify every emitted record by rebuilding the code and running
    /// the full distance upgrade, rank oracle included.
    pub cross_check: bool,
}

impl SearchSpec {
    /// Default boxes [1, 2g] on every coordinate.
    pub fn new(curve: &GKCurve, deg_min: u64, deg_max: u64) -> SearchSpec {
        let b = 2 * curve.genus();
        SearchSpec {
            deg_min,
            deg_max,
            a1_range: (1, b),
            a2_range: (1, b),
            b1_range: (1, b),
            b2_range: (1, b),
            cross_check: false,
        }
    }

    fn validate(&self, curve: &GKCurve) -> Result<(), SearchError> {
        let g = curve.genus();
        let n_len = curve.code_points().len() as u64;
        if self.deg_min <= 2 * g - 2 || self.deg_min > self.deg_max || self.deg_max >= n_len {
            return Err(SearchError::DegreeOutOfRange(
                self.deg_min,
                self.deg_max,
                n_len,
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordKind {
    Matthews,
    Goppa,
    Shortened,
}

/// One code in a search result. `comparator_d` is the designed distance of
/// the best one-point construction on the same curve shortened to the same
/// length and dimension, for side-by-side comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeRecord {
    pub n: u64,
    pub k: u64,
    pub d_bound: u64,
    pub kind: RecordKind,
    pub a1: u64,
    pub b1: u64,
    pub a2: u64,
    pub b2: u64,
    pub s: u64,
    #[serde(skip)]
    pub comparator_d: u64,
}

impl CodeRecord {
    fn quad(&self) -> (u64, u64, u64, u64) {
        (self.a1, self.b1, self.a2, self.b2)
    }
}

/// All quadruples in the requested boxes and degree window whose hypotheses
/// hold, reported one record per (length, dimension), sorted by dimension
/// then bound, both descending.
pub fn search_matthews(
    curve: &GKCurve,
    tps: &TwoPointSemigroup,
    spec: &SearchSpec,
) -> Result<Vec<CodeRecord>, SearchError> {
    spec.validate(curve)?;
    let g = curve.genus();
    let n_len = curve.code_points().len() as u64;

    // (a1, a2) pairs surviving the dimension-equality filter
    let mut a_pairs: Vec<(u64, u64)> = Vec::new();
    for &a1 in tps.h_p0().gaps() {
        if a1 < spec.a1_range.0 || a1 > spec.a1_range.1 {
            continue;
        }
        let cap = tps.min_second(a1).saturating_sub(1).min(spec.a2_range.1);
        for a2 in spec.a2_range.0..=cap {
            a_pairs.push((a1, a2));
        }
    }

    let found: Vec<CodeRecord> = a_pairs
        .par_iter()
        .map(|&(a1, a2)| {
            let mut local = Vec::new();
            for b1 in spec.b1_range.0..=spec.b1_range.1 {
                // b2 from the degree window: deg = a1+a2+b1+b2-2
                let base = a1 + a2 + b1;
                if base + spec.b2_range.0 > spec.deg_max + 2 {
                    continue;
                }
                let lo = spec.b2_range.0.max((spec.deg_min + 2).saturating_sub(base));
                let hi = spec.b2_range.1.min(spec.deg_max + 2 - base);
                for b2 in lo..=hi {
                    if codes::matthews_hypotheses(tps, g, (a1, a2), (b1, b2)).is_ok() {
                        let deg = base + b2 - 2;
                        let k = n_len + g - 1 - deg;
                        local.push(CodeRecord {
                            n: n_len,
                            k,
                            d_bound: deg + 3 - 2 * g,
                            kind: RecordKind::Matthews,
                            a1,
                            b1,
                            a2,
                            b2,
                            s: 0,
                            comparator_d: n_len - k - g + 1,
                        });
                    }
                }
            }
            local
        })
        .reduce(Vec::new, |mut acc, mut v| {
            acc.append(&mut v);
            acc
        });

    // one record per (n, k): largest bound, then lexicographically smallest
    // quadruple
    let mut best: std::collections::HashMap<(u64, u64), CodeRecord> = Default::default();
    let mut ordered = found;
    ordered.sort_unstable_by_key(|r| (r.n, r.k, std::cmp::Reverse(r.d_bound), r.quad()));
    for r in ordered {
        best.entry((r.n, r.k)).or_insert(r);
    }
    let mut records: Vec<CodeRecord> = best.into_values().collect();
    records.sort_unstable_by(|x, y| {
        y.k.cmp(&x.k)
            .then(y.d_bound.cmp(&x.d_bound))
            .then(x.quad().cmp(&y.quad()))
    });

    if spec.cross_check {
        for r in &records {
            recertify(curve, tps, r)?;
        }
    }
    Ok(records)
}

/// Rebuild a record's code from scratch and re-run the full certification.
pub fn recertify(
    curve: &GKCurve,
    tps: &TwoPointSemigroup,
    rec: &CodeRecord,
) -> Result<(), SearchError> {
    let g_div = crate::rrspace::TwoPointDivisor::new(rec.a1 + rec.b1 - 1, rec.a2 + rec.b2 - 1);
    let co = codes::build_comega(curve, g_div)?;
    let up = codes::apply_matthews(curve, tps, &co, (rec.a1, rec.a2), (rec.b1, rec.b2), false)?;
    let sh = codes::shorten(&up, rec.s)?;
    let (n, k, d) = sh.params();
    if (n as u64, k as u64, d) != (rec.n, rec.k, rec.d_bound) {
        return Err(CodesError::DimensionDropMismatch {
            expected: rec.k as usize,
            actual: k,
        }
        .into());
    }
    Ok(())
}

/// The Goppa-bound one-point benchmark C_Omega(D, deg * Pinf), where D sums
/// every rational point except Pinf (length n_len + 1).
pub fn one_point_baseline(curve: &GKCurve, deg: u64) -> Result<CodeRecord, SearchError> {
    let g = curve.genus();
    let n_one = curve.code_points().len() as u64 + 1;
    if deg <= 2 * g - 2 || deg >= n_one {
        return Err(SearchError::DegreeOutOfRange(deg, deg, n_one));
    }
    let k = n_one - deg + g - 1;
    let d = deg + 2 - 2 * g;
    Ok(CodeRecord {
        n: n_one,
        k,
        d_bound: d.max(1),
        kind: RecordKind::Goppa,
        a1: 0,
        b1: 0,
        a2: 0,
        b2: 0,
        s: 0,
        comparator_d: d.max(1),
    })
}

/// Derived records for every 1 <= s <= s_max applied to every input record.
pub fn expand_by_shortening(
    records: &[CodeRecord],
    s_max: u64,
) -> Result<Vec<CodeRecord>, SearchError> {
    let min_k = records.iter().map(|r| r.k).min().unwrap_or(0);
    if s_max >= min_k {
        return Err(SearchError::SRangeTooLarge(s_max, min_k));
    }
    let mut out = Vec::new();
    for r in records {
        for s in 1..=s_max {
            out.push(CodeRecord {
                n: r.n - s,
                k: r.k - s,
                d_bound: r.d_bound,
                kind: RecordKind::Shortened,
                s,
                ..*r
            });
        }
    }
    Ok(out)
}
