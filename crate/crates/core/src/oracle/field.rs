//! Arithmetic in `F_q` and in `F_q[z]`, optionally truncated modulo `z^N`.
//!
//! Polynomials are coefficient vectors, lowest degree first, with trailing
//! zeros trimmed.

use crate::error::{Error, Result};

pub type Poly = Vec<u32>;

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(u64::from(q)) {
            return Err(Error::NotPrime(u64::from(q)));
        }
        Ok(PrimeField { q })
    }

    pub fn order(self) -> u32 {
        self.q
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.q - b) % self.q
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.q)) as u32
    }

    pub fn neg(self, a: u32) -> u32 {
        (self.q - a) % self.q
    }

    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.q));
        // Fermat
        let mut base = a % self.q;
        let mut e = self.q - 2;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn trim(self, mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn poly_add(self, a: &[u32], b: &[u32]) -> Poly {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(out)
    }

    pub fn poly_sub(self, a: &[u32], b: &[u32]) -> Poly {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(out)
    }

    pub fn poly_mul(self, a: &[u32], b: &[u32]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        self.trim(out)
    }

    /// Product reduced modulo `z^n`.
    pub fn poly_mul_trunc(self, a: &[u32], b: &[u32], n: usize) -> Poly {
        let mut p = self.poly_mul(a, b);
        p.truncate(n);
        self.trim(p)
    }

    pub fn poly_scale(self, a: &[u32], c: u32) -> Poly {
        self.trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    /// Inverse of a unit of `F_q[[z]]` modulo `z^n`.
    pub fn series_inv(self, u: &[u32], n: usize) -> Poly {
        debug_assert!(!u.is_empty() && u[0] != 0);
        let c0 = self.inv(u[0]);
        let mut out = vec![0u32; n];
        for k in 0..n {
            // sum_{i<=k} u_i out_{k-i} = [k == 0]
            let mut acc = if k == 0 { 1 } else { 0 };
            for i in 1..=k.min(u.len().saturating_sub(1)) {
                acc = self.sub(acc, self.mul(u[i], out[k - i]));
            }
            out[k] = self.mul(acc, c0);
        }
        self.trim(out)
    }
}

/// `z`-adic valuation; `None` for zero.
pub fn valuation(a: &[u32]) -> Option<usize> {
    a.iter().position(|&c| c != 0)
}

/// `a / z^d`, dropping the terms below `z^d`.
pub fn shift_down(a: &[u32], d: usize) -> Poly {
    a.get(d..).map(<[u32]>::to_vec).unwrap_or_default()
}

pub fn shift_up(a: &[u32], d: usize) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; d];
    out.extend_from_slice(a);
    out
}

pub fn monomial(d: usize) -> Poly {
    shift_up(&[1], d)
}
