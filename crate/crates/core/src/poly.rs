//! Exact polynomials in `t` with nonnegative integer coefficients, and the
//! `t`-analogue of the Kostant partition function.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partition::{enumerate_kappa, enumerate_mu, GammaPartition};
use crate::roots::GammaVec;

/// Dense coefficients, index = exponent. Trailing zeros are always trimmed,
/// so the zero polynomial has no coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<u64>", into = "Vec<u64>")]
pub struct IntPolynomial {
    coeffs: Vec<u64>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![1] }
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> u64 {
        self.coeffs.get(j).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `1` to the coefficient of `t^j`.
    pub fn bump(&mut self, j: usize) -> Result<()> {
        if self.coeffs.len() <= j {
            self.coeffs.resize(j + 1, 0);
        }
        self.coeffs[j] = self.coeffs[j]
            .checked_add(1)
            .ok_or(Error::Overflow("polynomial coefficient"))?;
        Ok(())
    }

    pub fn checked_add(&self, other: &IntPolynomial) -> Result<IntPolynomial> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|j| {
                self.coeff(j)
                    .checked_add(other.coeff(j))
                    .ok_or(Error::Overflow("polynomial sum"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPolynomial::from_coeffs(coeffs))
    }

    pub fn checked_mul(&self, other: &IntPolynomial) -> Result<IntPolynomial> {
        if self.is_zero() || other.is_zero() {
            return Ok(IntPolynomial::zero());
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or(Error::Overflow("polynomial product"))?;
                coeffs[i + j] = coeffs[i + j]
                    .checked_add(term)
                    .ok_or(Error::Overflow("polynomial product"))?;
            }
        }
        Ok(IntPolynomial::from_coeffs(coeffs))
    }

    /// Exact value at `x`, by Horner's rule.
    pub fn eval(&self, x: u64) -> Result<u64> {
        self.coeffs.iter().rev().try_fold(0u64, |acc, &c| {
            acc.checked_mul(x)
                .and_then(|v| v.checked_add(c))
                .ok_or(Error::Overflow("polynomial evaluation"))
        })
    }
}

impl From<Vec<u64>> for IntPolynomial {
    fn from(coeffs: Vec<u64>) -> Self {
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl From<IntPolynomial> for Vec<u64> {
    fn from(p: IntPolynomial) -> Vec<u64> {
        p.coeffs
    }
}

/// Renders as `c0 + c1*t + c2*t^2`, omitting zero terms and unit
/// coefficients on nonconstant terms.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (j, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (j, 1) => write!(f, "t^{j}")?,
                (j, c) => write!(f, "{c}*t^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `K_gamma(t) = t^{|gamma|} sum_{kappa} t^{-K(kappa)}`.
pub fn kostant_poly(gamma: &GammaVec, limits: &Limits) -> Result<IntPolynomial> {
    let length = gamma.length();
    let mut out = IntPolynomial::zero();
    for kappa in enumerate_kappa(gamma, limits)? {
        out.bump((length - kappa.parts()) as usize)?;
    }
    Ok(out)
}

/// The same polynomial, read off as `sum_{mu in M(gamma)} t^{dim S_mu}`.
pub fn kostant_poly_via_strata(gamma: &GammaVec, limits: &Limits) -> Result<IntPolynomial> {
    let mut out = IntPolynomial::zero();
    for mu in enumerate_mu(gamma, limits)? {
        out.bump(mu.stratum_dim()? as usize)?;
    }
    Ok(out)
}

/// `K_Gamma(t) = prod_r K_{gamma_r}(t)`; the empty product is `1`.
pub fn fiber_poincare(parts: &GammaPartition, limits: &Limits) -> Result<IntPolynomial> {
    parts.parts().iter().try_fold(IntPolynomial::one(), |acc, part| {
        acc.checked_mul(&kostant_poly(part, limits)?)
    })
}

/// Memoizes `K_gamma` across many partitions sharing parts.
#[derive(Debug, Default)]
pub struct KostantCache {
    limits: Limits,
    table: HashMap<GammaVec, IntPolynomial>,
}

impl KostantCache {
    pub fn new(limits: Limits) -> Self {
        KostantCache {
            limits,
            table: HashMap::new(),
        }
    }

    pub fn get(&mut self, gamma: &GammaVec) -> Result<&IntPolynomial> {
        if !self.table.contains_key(gamma) {
            let p = kostant_poly(gamma, &self.limits)?;
            self.table.insert(gamma.clone(), p);
        }
        Ok(&self.table[gamma])
    }

    pub fn fiber_poincare(&mut self, parts: &GammaPartition) -> Result<IntPolynomial> {
        let mut acc = IntPolynomial::one();
        for part in parts.parts() {
            acc = acc.checked_mul(self.get(part)?)?;
        }
        Ok(acc)
    }
}
