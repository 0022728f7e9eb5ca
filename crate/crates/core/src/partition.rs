//! Coroot partitions `K(gamma)`, vector partitions `Gamma(alpha)`, and the
//! invertible `kappa <-> nu <-> mu` triangle transforms.
//!
//! Triangles are indexed by pairs `1 <= q <= p <= n-1` and stored row-major:
//! `(1,1), (2,1), (2,2), (3,1), ...`.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::roots::{GammaVec, Interval, Rank};

/// A partition of `gamma` into positive coroots, given by multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KappaPartition {
    rank: Rank,
    mult: BTreeMap<Interval, u32>,
}

impl KappaPartition {
    /// Builds a partition and checks that it sums to `gamma`.
    pub fn new(gamma: &GammaVec, mult: BTreeMap<Interval, u32>) -> Result<Self> {
        let rank = gamma.rank();
        let kappa = KappaPartition::from_multiplicities(rank, mult)?;
        if kappa.gamma() != *gamma {
            return Err(Error::InvalidPartition(format!(
                "sum is {} but expected {}",
                kappa.gamma(),
                gamma
            )));
        }
        Ok(kappa)
    }

    /// Builds a partition of whatever weight the multiplicities sum to.
    pub fn from_multiplicities(rank: Rank, mut mult: BTreeMap<Interval, u32>) -> Result<Self> {
        mult.retain(|_, m| *m > 0);
        for c in mult.keys() {
            rank.interval(c.p, c.q)?;
        }
        Ok(KappaPartition { rank, mult })
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn multiplicity(&self, c: Interval) -> u32 {
        self.mult.get(&c).copied().unwrap_or(0)
    }

    /// Nonzero multiplicities in canonical coroot order.
    pub fn iter(&self) -> impl Iterator<Item = (Interval, u32)> + '_ {
        self.mult.iter().map(|(c, m)| (*c, *m))
    }

    /// `K(kappa)`, the number of summands.
    pub fn parts(&self) -> u64 {
        self.mult.values().map(|&m| u64::from(m)).sum()
    }

    /// `sum kappa_{pq} [p,q]`.
    pub fn gamma(&self) -> GammaVec {
        let mut coeffs = vec![0u32; self.rank.simple_count()];
        for (c, m) in &self.mult {
            for slot in &mut coeffs[c.q - 1..c.p] {
                *slot += m;
            }
        }
        GammaVec::new(self.rank, coeffs).expect("arity matches rank")
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }
}

impl fmt::Display for KappaPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult.is_empty() {
            return write!(f, "{{}}");
        }
        write!(f, "{{")?;
        for (i, (c, m)) in self.mult.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m > 1 {
                write!(f, "{m}*")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangleKind {
    Mu,
    Nu,
}

impl TriangleKind {
    fn name(self) -> &'static str {
        match self {
            TriangleKind::Mu => "MU",
            TriangleKind::Nu => "NU",
        }
    }
}

/// A lower-triangular array `a_{pq}`, `1 <= q <= p <= n-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleArray {
    kind: TriangleKind,
    rank: Rank,
    entries: Vec<u32>,
}

fn tri_index(p: usize, q: usize) -> usize {
    p * (p - 1) / 2 + (q - 1)
}

impl TriangleArray {
    pub fn zero(kind: TriangleKind, rank: Rank) -> Self {
        let l = rank.simple_count();
        TriangleArray {
            kind,
            rank,
            entries: vec![0; l * (l + 1) / 2],
        }
    }

    /// `rows[p-1]` holds `a_{p1}, ..., a_{pp}`.
    pub fn from_rows(kind: TriangleKind, rows: &[Vec<u32>]) -> Result<Self> {
        let rank = Rank::new(rows.len() + 1)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::ArityMismatch {
                    expected: i + 1,
                    got: row.len(),
                });
            }
        }
        Ok(TriangleArray {
            kind,
            rank,
            entries: rows.concat(),
        })
    }

    /// Row-major entries, `(1,1), (2,1), (2,2), ...`.
    pub fn from_flat(kind: TriangleKind, rank: Rank, entries: Vec<u32>) -> Result<Self> {
        let l = rank.simple_count();
        if entries.len() != l * (l + 1) / 2 {
            return Err(Error::ArityMismatch {
                expected: l * (l + 1) / 2,
                got: entries.len(),
            });
        }
        Ok(TriangleArray {
            kind,
            rank,
            entries,
        })
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn get(&self, p: usize, q: usize) -> u32 {
        debug_assert!(1 <= q && q <= p && p <= self.rank.simple_count());
        self.entries[tri_index(p, q)]
    }

    fn set(&mut self, p: usize, q: usize, v: u32) {
        self.entries[tri_index(p, q)] = v;
    }

    pub fn flat(&self) -> &[u32] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (1..=self.rank.simple_count())
            .map(|p| self.entries[tri_index(p, 1)..=tri_index(p, p)].to_vec())
            .collect()
    }

    fn expect_kind(&self, kind: TriangleKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::KindMismatch {
                expected: kind.name(),
                got: self.kind.name(),
            });
        }
        Ok(())
    }

    /// `dim S_mu = sum_{k=1}^{n-2} mu_{k+1,k}`.
    pub fn stratum_dim(&self) -> Result<u64> {
        self.expect_kind(TriangleKind::Mu)?;
        let l = self.rank.simple_count();
        Ok((1..l).map(|k| u64::from(self.get(k + 1, k))).sum())
    }

    /// The diagonal `mu_{qq}` as a weight, `sum_q mu_{qq} i_q`.
    pub fn diagonal(&self) -> GammaVec {
        let l = self.rank.simple_count();
        GammaVec::new(self.rank, (1..=l).map(|q| self.get(q, q)).collect())
            .expect("arity matches rank")
    }
}

impl Serialize for TriangleArray {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = self.rows();
        let mut seq = serializer.serialize_seq(Some(rows.len()))?;
        for row in &rows {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}

impl fmt::Display for TriangleArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows();
        for (i, row) in rows.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `nu_{pq} = sum_{r <= q} kappa_{pr}`.
pub fn kappa_to_nu(kappa: &KappaPartition) -> TriangleArray {
    let rank = kappa.rank();
    let l = rank.simple_count();
    let mut nu = TriangleArray::zero(TriangleKind::Nu, rank);
    for p in 1..=l {
        let mut acc = 0;
        for q in 1..=p {
            acc += kappa.multiplicity(Interval { p, q });
            nu.set(p, q, acc);
        }
    }
    nu
}

/// `mu_{pq} = sum_{s >= p} nu_{sq}`.
pub fn nu_to_mu(nu: &TriangleArray) -> Result<TriangleArray> {
    nu.expect_kind(TriangleKind::Nu)?;
    let rank = nu.rank();
    let l = rank.simple_count();
    let mut mu = TriangleArray::zero(TriangleKind::Mu, rank);
    for q in 1..=l {
        let mut acc = 0;
        for p in (q..=l).rev() {
            acc += nu.get(p, q);
            mu.set(p, q, acc);
        }
    }
    Ok(mu)
}

pub fn kappa_to_mu(kappa: &KappaPartition) -> TriangleArray {
    nu_to_mu(&kappa_to_nu(kappa)).expect("kappa_to_nu yields a NU triangle")
}

/// Inverts the two difference steps. Fails with [`Error::NotInM`] unless the
/// result is a genuine partition of `gamma`.
pub fn mu_to_kappa(mu: &TriangleArray, gamma: &GammaVec) -> Result<KappaPartition> {
    mu.expect_kind(TriangleKind::Mu)?;
    let rank = mu.rank();
    if gamma.rank() != rank {
        return Err(Error::RankMismatch(format!(
            "triangle has n = {}, gamma has n = {}",
            rank.n(),
            gamma.rank().n()
        )));
    }
    let l = rank.simple_count();
    for q in 1..=l {
        if mu.get(q, q) != gamma.coeff(q) {
            return Err(Error::NotInM(format!(
                "mu_{q}{q} = {} but c_{q} = {}",
                mu.get(q, q),
                gamma.coeff(q)
            )));
        }
    }
    let nu = |p: usize, q: usize| -> i64 {
        let below = if p < l { i64::from(mu.get(p + 1, q)) } else { 0 };
        i64::from(mu.get(p, q)) - below
    };
    let mut mult = BTreeMap::new();
    for p in 1..=l {
        for q in 1..=p {
            let left = if q > 1 { nu(p, q - 1) } else { 0 };
            let k = nu(p, q) - left;
            if k < 0 {
                return Err(Error::NotInM(format!("kappa_{p}{q} = {k} is negative")));
            }
            if k > 0 {
                mult.insert(Interval { p, q }, k as u32);
            }
        }
    }
    // nonnegative kappa with mu_qq = c_q already sums to gamma
    KappaPartition::new(gamma, mult)
}

/// All of `K(gamma)`, by recursive descent over coroots in canonical order.
pub fn enumerate_kappa(gamma: &GammaVec, limits: &Limits) -> Result<Vec<KappaPartition>> {
    let rank = gamma.rank();
    limits.check_rank(rank.n())?;
    limits.check_length(gamma.length())?;
    let roots = rank.positive_coroots();
    let mut remaining = gamma.coeffs().to_vec();
    let mut chosen = vec![0u32; roots.len()];
    let mut out = Vec::new();
    descend_kappa(rank, &roots, 0, &mut remaining, &mut chosen, &mut out);
    Ok(out)
}

fn descend_kappa(
    rank: Rank,
    roots: &[Interval],
    idx: usize,
    remaining: &mut [u32],
    chosen: &mut [u32],
    out: &mut Vec<KappaPartition>,
) {
    if idx == roots.len() {
        debug_assert!(remaining.iter().all(|&c| c == 0));
        let mult = roots
            .iter()
            .zip(chosen.iter())
            .filter(|(_, &m)| m > 0)
            .map(|(c, &m)| (*c, m))
            .collect();
        out.push(KappaPartition { rank, mult });
        return;
    }
    let c = roots[idx];
    let span = c.q - 1..c.p;
    let cap = remaining[span.clone()].iter().copied().min().unwrap_or(0);
    // [n-1, q] is the last coroot still touching i_q, so it must use up c_q
    let range = if c.p == rank.simple_count() {
        let need = remaining[c.q - 1];
        if need > cap {
            return;
        }
        need..=need
    } else {
        0..=cap
    };
    for m in range {
        for slot in &mut remaining[span.clone()] {
            *slot -= m;
        }
        chosen[idx] = m;
        descend_kappa(rank, roots, idx + 1, remaining, chosen, out);
        for slot in &mut remaining[span.clone()] {
            *slot += m;
        }
    }
    chosen[idx] = 0;
}

/// `M(gamma)`: the image of `K(gamma)` under `kappa -> nu -> mu`, in the same
/// order as [`enumerate_kappa`].
pub fn enumerate_mu(gamma: &GammaVec, limits: &Limits) -> Result<Vec<TriangleArray>> {
    Ok(enumerate_kappa(gamma, limits)?
        .iter()
        .map(kappa_to_mu)
        .collect())
}

/// A multiset of nonzero vectors, parts kept in non-increasing lexicographic
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GammaPartition {
    parts: Vec<GammaVec>,
}

impl GammaPartition {
    pub fn empty() -> Self {
        GammaPartition { parts: Vec::new() }
    }

    pub fn new(rank: Rank, mut parts: Vec<GammaVec>) -> Result<Self> {
        for part in &parts {
            if part.rank() != rank {
                return Err(Error::ArityMismatch {
                    expected: rank.simple_count(),
                    got: part.coeffs().len(),
                });
            }
            if part.is_zero() {
                return Err(Error::InvalidPartition("zero part".into()));
            }
        }
        parts.sort_by(|a, b| b.cmp(a));
        Ok(GammaPartition { parts })
    }

    pub fn parts(&self) -> &[GammaVec] {
        &self.parts
    }

    /// Number of parts `m`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self, rank: Rank) -> Result<GammaVec> {
        self.parts.iter().try_fold(rank.zero(), |acc, p| acc.add(p))
    }
}

impl fmt::Display for GammaPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// `Gamma(alpha)`: every multiset of nonzero vectors summing to `alpha`.
///
/// Partitions come out in decreasing lexicographic order of their part
/// sequences, so `{alpha}` is first and the all-simple partition is last.
pub fn enumerate_gamma_partitions(alpha: &GammaVec, limits: &Limits) -> Result<Vec<GammaPartition>> {
    let rank = alpha.rank();
    limits.check_rank(rank.n())?;
    limits.check_length(alpha.length())?;
    let mut out = Vec::new();
    let mut stack = Vec::new();
    descend_gamma(alpha, alpha, &mut stack, &mut out);
    Ok(out)
}

fn descend_gamma(
    remaining: &GammaVec,
    max_part: &GammaVec,
    stack: &mut Vec<GammaVec>,
    out: &mut Vec<GammaPartition>,
) {
    if remaining.is_zero() {
        out.push(GammaPartition {
            parts: stack.clone(),
        });
        return;
    }
    for part in remaining.lower_box() {
        if part.is_zero() || part > *max_part {
            continue;
        }
        let rest = remaining.checked_sub(&part).expect("part lies in the box");
        stack.push(part.clone());
        descend_gamma(&rest, &part, stack, out);
        stack.pop();
    }
}
