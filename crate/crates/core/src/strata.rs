//! The stratification of the space of quasimaps of degree `alpha`.
//!
//! Strata are keyed by `(beta, Gamma)` with `0 <= beta <= alpha` and
//! `Gamma` a vector partition of `alpha - beta`. The stratum has dimension
//! `2|beta| + dim B + m` where `m` is the number of parts, and the fiber of the
//! resolution over any of its points has Poincare polynomial `K_Gamma(t)`.


use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partition::{enumerate_gamma_partitions, GammaPartition};
use crate::poly::{IntPolynomial, KostantCache};
use crate::roots::{GammaVec, Rank};

/// `dim M^alpha = 2|alpha| + dim B`.
pub fn moduli_dim(alpha: &GammaVec) -> u64 {
    2 * alpha.length() + alpha.rank().flag_dim()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub beta: GammaVec,
    pub gamma: GammaPartition,
    pub m: usize,
    pub stratum_dim: u64,
    pub codim: u64,
    /// Exact fiber dimension, the degree of `K_Gamma`.
    pub fiber_dim: u64,
    /// The a priori bound `|alpha - beta| - m`.
    pub fiber_dim_bound: u64,
    pub fiber_poincare: IntPolynomial,
}

impl StratumRecord {
    fn build(rank: Rank, alpha: &GammaVec, beta: GammaVec, gamma: GammaPartition, cache: &mut KostantCache) -> Result<Self> {
        let defect = alpha
            .checked_sub(&beta)
            .ok_or_else(|| Error::InvalidStratum(format!("beta = {beta} is not <= alpha = {alpha}")))?;
        if gamma.total(rank)? != defect {
            return Err(Error::InvalidStratum(format!(
                "parts {gamma} do not sum to alpha - beta = {defect}"
            )));
        }
        let m = gamma.len();
        let fiber_poincare = cache.fiber_poincare(&gamma)?;
        let fiber_dim = fiber_poincare.degree().unwrap_or(0) as u64;
        Ok(StratumRecord {
            stratum_dim: 2 * beta.length() + rank.flag_dim() + m as u64,
            codim: 2 * defect.length() - m as u64,
            fiber_dim,
            fiber_dim_bound: defect.length() - m as u64,
            fiber_poincare,
            beta,
            gamma,
            m,
        })
    }

    /// True when every part of `Gamma` is a positive coroot.
    pub fn all_parts_coroots(&self) -> bool {
        self.gamma.parts().iter().all(|p| p.as_coroot().is_some())
    }
}

/// One record per `(beta, Gamma)`: `beta` in decreasing lexicographic order
/// (the open stratum `beta = alpha` first), then `Gamma` in the order of
/// [`enumerate_gamma_partitions`].
pub fn enumerate_strata(alpha: &GammaVec, limits: &Limits) -> Result<Vec<StratumRecord>> {
    let rank = alpha.rank();
    limits.check_rank(rank.n())?;
    limits.check_length(alpha.length())?;
    let mut cache = KostantCache::new(*limits);
    let mut out = Vec::new();
    for beta in alpha.lower_box() {
        let defect = alpha.checked_sub(&beta).expect("beta lies in the box");
        for gamma in enumerate_gamma_partitions(&defect, limits)? {
            out.push(StratumRecord::build(rank, alpha, beta.clone(), gamma, &mut cache)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumCheck {
    pub beta: GammaVec,
    pub gamma: GammaPartition,
    pub codim: u64,
    pub fiber_dim: u64,
    /// `codim - 2 * fiber_dim`, only for positive-dimensional fibers.
    pub margin: Option<i64>,
    pub ok: bool,
}

/// The union of strata with fiber dimension at least `level`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCheck {
    pub level: u64,
    pub min_codim: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Some fiber is positive-dimensional and every inequality holds.
    Pass { margin: i64 },
    /// All fibers are points.
    VacuousPass,
    Fail,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        !matches!(self, Verdict::Fail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallnessReport {
    pub verdict: Verdict,
    pub min_margin: Option<i64>,
    pub witness: Option<StratumCheck>,
    pub levels: Vec<LevelCheck>,
    pub strata: Vec<StratumCheck>,
}

/// Checks `codim > 2 * fiber_dim` stratum by stratum and for each level set
/// `{fiber_dim >= f}`, `f > 0`.
pub fn smallness_report(alpha: &GammaVec, limits: &Limits) -> Result<SmallnessReport> {
    let records = enumerate_strata(alpha, limits)?;
    Ok(smallness_from_records(&records))
}

pub fn smallness_from_records(records: &[StratumRecord]) -> SmallnessReport {
    let strata: Vec<StratumCheck> = records
        .iter()
        .map(|r| {
            let margin = (r.fiber_dim > 0).then(|| r.codim as i64 - 2 * r.fiber_dim as i64);
            StratumCheck {
                beta: r.beta.clone(),
                gamma: r.gamma.clone(),
                codim: r.codim,
                fiber_dim: r.fiber_dim,
                margin,
                ok: margin.is_none_or(|m| m > 0),
            }
        })
        .collect();

    let max_fiber = records.iter().map(|r| r.fiber_dim).max().unwrap_or(0);
    let levels: Vec<LevelCheck> = (1..=max_fiber)
        .map(|level| {
            let min_codim = records
                .iter()
                .filter(|r| r.fiber_dim >= level)
                .map(|r| r.codim)
                .min()
                .expect("level does not exceed the maximum fiber dimension");
            LevelCheck {
                level,
                min_codim,
                ok: min_codim > 2 * level,
            }
        })
        .collect();

    // first stratum attaining the minimal margin
    let witness = strata
        .iter()
        .filter(|s| s.margin.is_some())
        .min_by_key(|s| s.margin)
        .cloned();
    let min_margin = witness.as_ref().and_then(|w| w.margin);
    let all_ok = strata.iter().all(|s| s.ok) && levels.iter().all(|l| l.ok);
    let verdict = match (all_ok, min_margin) {
        (false, _) => Verdict::Fail,
        (true, Some(margin)) => Verdict::Pass { margin },
        (true, None) => Verdict::VacuousPass,
    };
    SmallnessReport {
        verdict,
        min_margin,
        witness,
        levels,
        strata,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StalkEntry {
    pub degree: i64,
    pub twist: u64,
    pub multiplicity: u64,
}

/// Tate multiplicities of the IC stalk at a point of one stratum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ICStalkTable {
    pub flag_dim: u64,
    pub entries: Vec<StalkEntry>,
}

/// Entries `(-2|alpha| - dim B + 2j, j, [t^j] K_Gamma)` for each nonzero
/// coefficient.
pub fn ic_stalk_table(
    alpha: &GammaVec,
    beta: &GammaVec,
    gamma: &GammaPartition,
    limits: &Limits,
) -> Result<ICStalkTable> {
    let rank = alpha.rank();
    limits.check_rank(rank.n())?;
    limits.check_length(alpha.length())?;
    if beta.rank() != rank {
        return Err(Error::InvalidStratum(format!(
            "beta = {beta} has the wrong number of coefficients"
        )));
    }
    let mut cache = KostantCache::new(*limits);
    let record = StratumRecord::build(rank, alpha, beta.clone(), gamma.clone(), &mut cache)?;
    let base = -(moduli_dim(alpha) as i64);
    let entries = record
        .fiber_poincare
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(j, &c)| StalkEntry {
            degree: base + 2 * j as i64,
            twist: j as u64,
            multiplicity: c,
        })
        .collect();
    Ok(ICStalkTable {
        flag_dim: rank.flag_dim(),
        entries,
    })
}

/// Stalk cohomology vanishes in degrees `d` with `d - dim B` odd.
pub fn parity_check(table: &ICStalkTable) -> bool {
    let parity = (table.flag_dim % 2) as i64;
    table.entries.iter().all(|e| e.degree.rem_euclid(2) == parity)
}
