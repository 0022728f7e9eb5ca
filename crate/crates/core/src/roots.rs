//! Coroot and weight combinatorics for type `A_{n-1}`.
//!
//! Simple coroots are `i_1, ..., i_{n-1}`; the positive coroots are the
//! intervals `[p,q] = i_q + ... + i_p` with `1 <= q <= p <= n-1`. Elements of
//! the lattice `N[I]` are stored densely as [`GammaVec`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `G = SL_n`, carrying `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Rank(usize);

impl Rank {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall { n });
        }
        Ok(Rank(n))
    }

    pub fn n(self) -> usize {
        self.0
    }

    /// Number of simple coroots, `n - 1`.
    pub fn simple_count(self) -> usize {
        self.0 - 1
    }

    /// Complex dimension of the flag variety of `SL_n`.
    pub fn flag_dim(self) -> u64 {
        let n = self.0 as u64;
        n * (n - 1) / 2
    }

    /// All positive coroots, ordered lexicographically by `(q, p)`.
    pub fn positive_coroots(self) -> Vec<Interval> {
        let l = self.simple_count();
        let mut out = Vec::with_capacity(l * (l + 1) / 2);
        for q in 1..=l {
            for p in q..=l {
                out.push(Interval { p, q });
            }
        }
        out
    }

    pub fn interval(self, p: usize, q: usize) -> Result<Interval> {
        if q < 1 || q > p || p > self.simple_count() {
            return Err(Error::InvalidInterval { p, q, n: self.0 });
        }
        Ok(Interval { p, q })
    }

    /// `<omega_k, [p,q]>`, which is 1 when `q <= k <= p` and 0 otherwise.
    pub fn pairing(self, k: usize, c: Interval) -> Result<u32> {
        if k < 1 || k > self.simple_count() {
            return Err(Error::IndexOutOfRange {
                index: k,
                max: self.simple_count(),
            });
        }
        if c.p > self.simple_count() {
            return Err(Error::InvalidInterval {
                p: c.p,
                q: c.q,
                n: self.0,
            });
        }
        Ok(u32::from(c.contains(k)))
    }

    pub fn zero(self) -> GammaVec {
        GammaVec {
            coeffs: vec![0; self.simple_count()],
        }
    }
}

impl TryFrom<usize> for Rank {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        Rank::new(n)
    }
}

impl From<Rank> for usize {
    fn from(r: Rank) -> usize {
        r.0
    }
}

/// A positive coroot `[p,q]`, `1 <= q <= p`.
///
/// Ordered by `(q, p)`, the canonical coroot order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub p: usize,
    pub q: usize,
}

impl Interval {
    pub fn contains(self, k: usize) -> bool {
        self.q <= k && k <= self.p
    }

    pub fn len(self) -> u64 {
        (self.p - self.q + 1) as u64
    }

    pub fn is_simple(self) -> bool {
        self.p == self.q
    }

    pub fn to_gamma(self, rank: Rank) -> Result<GammaVec> {
        let c = rank.interval(self.p, self.q)?;
        let mut coeffs = vec![0; rank.simple_count()];
        for slot in &mut coeffs[c.q - 1..c.p] {
            *slot = 1;
        }
        Ok(GammaVec { coeffs })
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.q, self.p).cmp(&(other.q, other.p))
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.p, self.q)
    }
}

/// An element `sum c_k i_k` of `N[I]`.
///
/// The rank is implicit: a vector of `n - 1` coefficients lives in type
/// `A_{n-1}`. The derived order is lexicographic on the coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct GammaVec {
    coeffs: Vec<u32>,
}

impl GammaVec {
    pub fn new(rank: Rank, coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.len() != rank.simple_count() {
            return Err(Error::ArityMismatch {
                expected: rank.simple_count(),
                got: coeffs.len(),
            });
        }
        Ok(GammaVec { coeffs })
    }

    /// Rank inferred from the number of coefficients.
    pub fn from_coeffs(coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::RankTooSmall { n: 1 });
        }
        Ok(GammaVec { coeffs })
    }

    pub fn rank(&self) -> Rank {
        Rank(self.coeffs.len() + 1)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// `c_k`, 1-based.
    pub fn coeff(&self, k: usize) -> u32 {
        self.coeffs[k - 1]
    }

    /// `|gamma| = sum c_k`.
    pub fn length(&self) -> u64 {
        self.coeffs.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Componentwise order on `N[I]`.
    pub fn le(&self, other: &GammaVec) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &GammaVec) -> Option<GammaVec> {
        if !other.le(self) {
            return None;
        }
        Some(GammaVec {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn add(&self, other: &GammaVec) -> Result<GammaVec> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::ArityMismatch {
                expected: self.coeffs.len(),
                got: other.coeffs.len(),
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("gamma sum")))
            .collect::<Result<Vec<_>>>()?;
        Ok(GammaVec { coeffs })
    }

    /// Returns the interval when `self` is a single positive coroot.
    pub fn as_coroot(&self) -> Option<Interval> {
        let first = self.coeffs.iter().position(|&c| c != 0)?;
        let last = self.coeffs.iter().rposition(|&c| c != 0)?;
        if self.coeffs[first..=last].iter().all(|&c| c == 1) {
            Some(Interval {
                p: last + 1,
                q: first + 1,
            })
        } else {
            None
        }
    }

    /// Every vector `beta` with `0 <= beta <= self`, in decreasing
    /// lexicographic order (so `self` first and zero last).
    pub fn lower_box(&self) -> Vec<GammaVec> {
        let mut out = Vec::new();
        let mut cur = self.coeffs.clone();
        loop {
            out.push(GammaVec { coeffs: cur.clone() });
            // decrement as an odometer with the last digit fastest
            let mut k = cur.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] > 0 {
                    cur[k] -= 1;
                    for (slot, &top) in cur[k + 1..].iter_mut().zip(&self.coeffs[k + 1..]) {
                        *slot = top;
                    }
                    break;
                }
            }
        }
    }
}

impl TryFrom<Vec<u32>> for GammaVec {
    type Error = Error;

    fn try_from(coeffs: Vec<u32>) -> Result<Self> {
        GammaVec::from_coeffs(coeffs)
    }
}

impl From<GammaVec> for Vec<u32> {
    fn from(g: GammaVec) -> Vec<u32> {
        g.coeffs
    }
}

impl fmt::Display for GammaVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
