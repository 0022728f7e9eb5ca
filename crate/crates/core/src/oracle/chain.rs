//! Brute-force point counts of simple fibers over `F_q`.
//!
//! Locally at the defect point, a point of the simple fiber over a quasimap
//! with defect `gamma x` is a chain `L_1 ⊂ L_2 ⊂ ... ⊂ L_{n-1}` where `L_k` is
//! a full-rank submodule of the `k`-th flag module of colength `c_k`. With the
//! standard coordinate flag the `k`-th flag module is the span of the first
//! `k` coordinates.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::oracle::field::PrimeField;
use crate::oracle::lattice::{enumerate_lattices, ConstMatrix, Lattice};
use crate::partition::{enumerate_mu, TriangleArray, TriangleKind};
use crate::poly::kostant_poly;
use crate::roots::{GammaVec, Rank};

/// Caps for the exponential enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_rank: usize,
    pub max_length: u64,
    pub max_q: u32,
    /// Bound on the number of lattices enumerated at any one level.
    pub max_lattices: u64,
    /// Added to the minimal truncation `max c_k + 1`.
    pub extra_truncation: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_rank: 4,
            max_length: 4,
            max_q: 3,
            max_lattices: 200_000,
            extra_truncation: 0,
        }
    }
}

impl OracleConfig {
    fn check(&self, gamma: &GammaVec, q: u32) -> Result<PrimeField> {
        let field = PrimeField::new(q)?;
        if q > self.max_q {
            return Err(Error::CapExceeded {
                what: "field size q",
                value: u64::from(q),
                cap: u64::from(self.max_q),
            });
        }
        if gamma.rank().n() > self.max_rank {
            return Err(Error::CapExceeded {
                what: "rank n",
                value: gamma.rank().n() as u64,
                cap: self.max_rank as u64,
            });
        }
        if gamma.length() > self.max_length {
            return Err(Error::CapExceeded {
                what: "length |gamma|",
                value: gamma.length(),
                cap: self.max_length,
            });
        }
        Ok(field)
    }

    /// Working precision `z^N` for chains of defect `gamma`.
    pub fn truncation(&self, gamma: &GammaVec) -> usize {
        gamma.coeffs().iter().copied().max().unwrap_or(0) as usize + 1 + self.extra_truncation
    }

    /// Limits for the combinatorial side of a comparison.
    fn limits(&self) -> Limits {
        Limits {
            max_rank: self.max_rank,
            max_length: self.max_length,
        }
    }
}

/// One `F_q`-point of a simple fiber.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagChain {
    lattices: Vec<Lattice>,
}

impl FlagChain {
    /// `L_1, ..., L_{n-1}`, `L_k` of rank `k`, in flag coordinates.
    pub fn lattices(&self) -> &[Lattice] {
        &self.lattices
    }

    pub fn rank(&self) -> Rank {
        Rank::new(self.lattices.len() + 1).expect("chains have at least one level")
    }

    /// Colengths `c_k` as a weight.
    pub fn gamma(&self) -> GammaVec {
        let coeffs = self.lattices.iter().map(|l| l.colength() as u32).collect();
        GammaVec::new(self.rank(), coeffs).expect("one colength per level")
    }

    /// `mu_{pq}`, the colength of `L_p ∩ E_q` inside `E_q`.
    pub fn mu_invariants(&self, truncation: usize) -> Result<TriangleArray> {
        let rank = self.rank();
        let l = rank.simple_count();
        let mut flat = Vec::with_capacity(l * (l + 1) / 2);
        for p in 1..=l {
            for q in 1..=p {
                flat.push(self.lattices[p - 1].intersect_coordinates(q, truncation)?.colength() as u32);
            }
        }
        TriangleArray::from_flat(TriangleKind::Mu, rank, flat)
    }
}

/// All chains with `colength(L_k) = c_k`, each once, ordered by the top
/// lattice first.
pub fn enumerate_fiber_chains(gamma: &GammaVec, q: u32, config: &OracleConfig) -> Result<Vec<FlagChain>> {
    let field = config.check(gamma, q)?;
    let identity = ConstMatrix::identity(field, gamma.rank().simple_count());
    chains_in_flag(gamma, field, &identity, config)
}

/// Same fiber, relative to the flag `E_k = span(g e_1, ..., g e_k)`.
///
/// Top lattices are enumerated in ambient coordinates and moved into flag
/// coordinates by `g^{-1}`, so the count exercises the generator-to-canonical
/// reduction on every top lattice.
pub fn enumerate_fiber_chains_in_flag(
    gamma: &GammaVec,
    q: u32,
    flag: &ConstMatrix,
    config: &OracleConfig,
) -> Result<Vec<FlagChain>> {
    let field = config.check(gamma, q)?;
    if flag.size() != gamma.rank().simple_count() {
        return Err(Error::RankMismatch(format!(
            "flag matrix of size {} for n = {}",
            flag.size(),
            gamma.rank().n()
        )));
    }
    chains_in_flag(gamma, field, flag, config)
}

fn chains_in_flag(gamma: &GammaVec, field: PrimeField, flag: &ConstMatrix, config: &OracleConfig) -> Result<Vec<FlagChain>> {
    let l = gamma.rank().simple_count();
    let truncation = config.truncation(gamma);
    let levels: Vec<Vec<Lattice>> = (1..=l)
        .map(|k| enumerate_lattices(field, k, gamma.coeff(k), config.max_lattices))
        .collect::<Result<_>>()?;

    let tops: Vec<Lattice> = if flag.is_identity() {
        levels[l - 1].clone()
    } else {
        let back = flag.inverse()?;
        levels[l - 1]
            .iter()
            .map(|top| back.image(top, truncation))
            .collect::<Result<_>>()?
    };

    let mut out = Vec::new();
    let mut stack: Vec<Lattice> = Vec::with_capacity(l);
    for top in tops {
        stack.push(top);
        extend_down(&levels, l - 1, &mut stack, &mut out)?;
        stack.pop();
    }
    Ok(out)
}

fn extend_down(levels: &[Vec<Lattice>], level: usize, stack: &mut Vec<Lattice>, out: &mut Vec<FlagChain>) -> Result<()> {
    if level == 0 {
        let mut lattices = stack.clone();
        lattices.reverse();
        out.push(FlagChain { lattices });
        return Ok(());
    }
    let outer = stack.last().expect("stack holds the level above").clone();
    for cand in &levels[level - 1] {
        if outer.contains(cand)? {
            stack.push(cand.clone());
            extend_down(levels, level - 1, stack, out)?;
            stack.pop();
        }
    }
    Ok(())
}

/// Point count of a simple fiber, bucketed by `mu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberCount {
    pub total: u64,
    pub buckets: BTreeMap<TriangleArray, u64>,
}

impl FiberCount {
    fn tally(chains: &[FlagChain], truncation: usize) -> Result<Self> {
        let mut buckets = BTreeMap::new();
        for chain in chains {
            *buckets.entry(chain.mu_invariants(truncation)?).or_insert(0) += 1;
        }
        Ok(FiberCount {
            total: chains.len() as u64,
            buckets,
        })
    }
}

pub fn fiber_point_count(gamma: &GammaVec, q: u32, config: &OracleConfig) -> Result<FiberCount> {
    let chains = enumerate_fiber_chains(gamma, q, config)?;
    FiberCount::tally(&chains, config.truncation(gamma))
}

pub fn fiber_point_count_in_flag(
    gamma: &GammaVec,
    q: u32,
    flag: &ConstMatrix,
    config: &OracleConfig,
) -> Result<FiberCount> {
    let chains = enumerate_fiber_chains_in_flag(gamma, q, flag, config)?;
    FiberCount::tally(&chains, config.truncation(gamma))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BucketCheck {
    pub mu: TriangleArray,
    pub stratum_dim: u64,
    pub count: u64,
    pub expected: u64,
    pub ok: bool,
}

/// Brute-force counts against `K_gamma(q)` and `q^{dim S_mu}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub q: u32,
    pub total: u64,
    pub expected_total: u64,
    pub total_ok: bool,
    /// Strata of `M(gamma)` with no points.
    pub missing: Vec<TriangleArray>,
    /// Observed `mu` outside `M(gamma)`.
    pub unexpected: Vec<TriangleArray>,
    pub keys_ok: bool,
    pub buckets: Vec<BucketCheck>,
    pub buckets_ok: bool,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.total_ok && self.keys_ok && self.buckets_ok
    }
}

pub fn verify_against_kostant(gamma: &GammaVec, q: u32, config: &OracleConfig) -> Result<OracleReport> {
    let count = fiber_point_count(gamma, q, config)?;
    compare(gamma, q, &count, config)
}

/// Compares an already computed count with the combinatorial predictions.
pub fn compare(gamma: &GammaVec, q: u32, count: &FiberCount, config: &OracleConfig) -> Result<OracleReport> {
    let limits = config.limits();
    let expected_total = kostant_poly(gamma, &limits)?.eval(u64::from(q))?;
    let predicted: BTreeSet<TriangleArray> = enumerate_mu(gamma, &limits)?.into_iter().collect();
    let observed: BTreeSet<TriangleArray> = count.buckets.keys().cloned().collect();
    let missing: Vec<TriangleArray> = predicted.difference(&observed).cloned().collect();
    let unexpected: Vec<TriangleArray> = observed.difference(&predicted).cloned().collect();

    let mut buckets = Vec::with_capacity(count.buckets.len());
    for (mu, &n) in &count.buckets {
        let dim = mu.stratum_dim()?;
        let expected = u64::from(q)
            .checked_pow(u32::try_from(dim).map_err(|_| Error::Overflow("q^dim"))?)
            .ok_or(Error::Overflow("q^dim"))?;
        buckets.push(BucketCheck {
            mu: mu.clone(),
            stratum_dim: dim,
            count: n,
            expected,
            ok: n == expected,
        });
    }
    let buckets_ok = buckets.iter().all(|b| b.ok);
    Ok(OracleReport {
        q,
        total: count.total,
        expected_total,
        total_ok: count.total == expected_total,
        keys_ok: missing.is_empty() && unexpected.is_empty(),
        missing,
        unexpected,
        buckets,
        buckets_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(c: &[u32]) -> GammaVec {
        GammaVec::from_coeffs(c.to_vec()).unwrap()
    }

    fn mu(rows: &[&[u32]]) -> TriangleArray {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        TriangleArray::from_rows(TriangleKind::Mu, &rows).unwrap()
    }

    #[test]
    fn rank_two_fibers_are_points() {
        let cfg = OracleConfig::default();
        for c in 0..=3 {
            for q in [2, 3] {
                assert_eq!(enumerate_fiber_chains(&g(&[c]), q, &cfg).unwrap().len(), 1);
            }
        }
        let cfg5 = OracleConfig { max_q: 5, ..cfg };
        assert_eq!(fiber_point_count(&g(&[3]), 5, &cfg5).unwrap().total, 1);
    }

    #[test]
    fn rank_three_small_fibers() {
        let cfg = OracleConfig::default();
        assert_eq!(enumerate_fiber_chains(&g(&[1, 1]), 2, &cfg).unwrap().len(), 3);
        assert_eq!(enumerate_fiber_chains(&g(&[1, 1]), 3, &cfg).unwrap().len(), 4);

        let count = fiber_point_count(&g(&[1, 1]), 2, &cfg).unwrap();
        assert_eq!(count.total, 3);
        let expected: BTreeMap<TriangleArray, u64> =
            [(mu(&[&[1], &[0, 1]]), 1), (mu(&[&[1], &[1, 1]]), 2)].into_iter().collect();
        assert_eq!(count.buckets, expected);

        assert_eq!(fiber_point_count(&g(&[2, 2]), 2, &cfg).unwrap().total, 7);
    }

    #[test]
    fn degenerate_point_has_mu_101() {
        // the chain whose L_2 contains the first coordinate line
        let cfg = OracleConfig::default();
        let chains = enumerate_fiber_chains(&g(&[1, 1]), 2, &cfg).unwrap();
        let special: Vec<_> = chains
            .iter()
            .filter(|c| c.lattices()[1].contains_vector(&[vec![1], vec![]]))
            .collect();
        assert_eq!(special.len(), 1);
        assert_eq!(special[0].mu_invariants(2).unwrap(), mu(&[&[1], &[0, 1]]));
    }

    #[test]
    fn zero_defect() {
        let cfg = OracleConfig::default();
        let chains = enumerate_fiber_chains(&g(&[0, 0, 0]), 3, &cfg).unwrap();
        assert_eq!(chains.len(), 1);
        let m = chains[0].mu_invariants(1).unwrap();
        assert_eq!(m, TriangleArray::zero(TriangleKind::Mu, Rank::new(4).unwrap()));
    }

    #[test]
    fn reports() {
        let cfg = OracleConfig::default();
        let rep = verify_against_kostant(&g(&[1, 1]), 2, &cfg).unwrap();
        assert!(rep.passed());
        let rep = verify_against_kostant(&g(&[2, 1]), 2, &cfg).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.total, 3);
        let rep = verify_against_kostant(&g(&[2]), 3, &cfg).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.total, 1);
    }

    #[test]
    fn report_flags_tampered_counts() {
        let cfg = OracleConfig::default();
        let mut count = fiber_point_count(&g(&[1, 1]), 2, &cfg).unwrap();
        count.buckets.remove(&mu(&[&[1], &[0, 1]]));
        count.total -= 1;
        let rep = compare(&g(&[1, 1]), 2, &count, &cfg).unwrap();
        assert!(!rep.passed());
        assert!(!rep.total_ok);
        assert_eq!(rep.missing, vec![mu(&[&[1], &[0, 1]])]);
    }

    #[test]
    fn config_errors() {
        let cfg = OracleConfig::default();
        assert!(matches!(enumerate_fiber_chains(&g(&[1, 1]), 4, &cfg), Err(Error::NotPrime(4))));
        assert!(enumerate_fiber_chains(&g(&[1, 1]), 5, &cfg).unwrap_err().is_cap());
        assert!(enumerate_fiber_chains(&g(&[1, 1, 1, 1]), 2, &cfg).unwrap_err().is_cap());
        assert!(enumerate_fiber_chains(&g(&[3, 2]), 2, &cfg).unwrap_err().is_cap());
    }
}
