//! Independent reference implementations shared by the integration tests.
//!
//! Nothing here calls into the library's enumeration code; the only overlap
//! is the coordinate convention for coroots `[p,q] = i_q + ... + i_p`.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// All coroots `(p, q)` with `1 <= q <= p <= r`.
pub fn coroots(r: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for q in 1..=r {
        for p in q..=r {
            out.push((p, q));
        }
    }
    out
}

fn coroot_vec(r: usize, (p, q): (usize, usize)) -> Vec<u32> {
    (1..=r).map(|k| u32::from(q <= k && k <= p)).collect()
}

fn index(gamma: &[u32], v: &[u32]) -> usize {
    let mut idx = 0;
    for (k, &c) in v.iter().enumerate() {
        idx = idx * (gamma[k] as usize + 1) + c as usize;
    }
    idx
}

fn box_points(gamma: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &c in gamma {
        let mut next = Vec::new();
        for v in &out {
            for x in 0..=c {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Coin-change table over the box below `gamma`: entry `[v][s]` counts
/// coroot partitions of `v` with exactly `s` parts.
fn kostant_table(gamma: &[u32]) -> Vec<Vec<u64>> {
    let r = gamma.len();
    let total: u32 = gamma.iter().sum();
    let points = box_points(gamma);
    let mut table = vec![vec![0u64; total as usize + 1]; points.len()];
    table[0][0] = 1;
    for c in coroots(r) {
        let cv = coroot_vec(r, c);
        // points are in lex order, so v - cv is visited before v
        for v in &points {
            if v.iter().zip(&cv).any(|(a, b)| a < b) {
                continue;
            }
            let w: Vec<u32> = v.iter().zip(&cv).map(|(a, b)| a - b).collect();
            let (iv, iw) = (index(gamma, v), index(gamma, &w));
            for s in 1..=total as usize {
                table[iv][s] += table[iw][s - 1];
            }
        }
    }
    table
}

/// Coefficients of the `t`-analogue: `t^j` counts partitions with
/// `|gamma| - j` parts.
pub fn kostant_dp(gamma: &[u32]) -> Vec<u64> {
    let total: usize = gamma.iter().map(|&c| c as usize).sum();
    let table = kostant_table(gamma);
    let row = &table[index(gamma, gamma)];
    let mut out: Vec<u64> = (0..=total).map(|j| row[total - j]).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

pub fn partition_count_dp(gamma: &[u32]) -> u64 {
    kostant_dp(gamma).iter().sum()
}

/// Every multiplicity vector with `kappa_{pq} <= min c_k` over `[p,q]`,
/// filtered by the weight condition.
pub fn brute_kappas(gamma: &[u32]) -> BTreeSet<BTreeMap<(usize, usize), u32>> {
    let r = gamma.len();
    let roots = coroots(r);
    let bounds: Vec<u32> = roots
        .iter()
        .map(|&(p, q)| (q..=p).map(|k| gamma[k - 1]).min().unwrap())
        .collect();
    let mut out = BTreeSet::new();
    let mut m = vec![0u32; roots.len()];
    loop {
        let mut sum = vec![0u32; r];
        for (i, &(p, q)) in roots.iter().enumerate() {
            for k in q..=p {
                sum[k - 1] += m[i];
            }
        }
        if sum == gamma {
            out.insert(
                roots
                    .iter()
                    .zip(&m)
                    .filter(|(_, &x)| x > 0)
                    .map(|(&c, &x)| (c, x))
                    .collect(),
            );
        }
        let mut i = 0;
        loop {
            if i == m.len() {
                return out;
            }
            if m[i] < bounds[i] {
                m[i] += 1;
                break;
            }
            m[i] = 0;
            i += 1;
        }
    }
}

/// Number of multisets of nonzero vectors summing to `alpha`, by coin change
/// over all nonzero vectors of the box.
pub fn vector_partition_count(alpha: &[u32]) -> u64 {
    let points = box_points(alpha);
    let mut table = vec![0u64; points.len()];
    table[0] = 1;
    for part in points.iter().skip(1) {
        for v in &points {
            if v.iter().zip(part).any(|(a, b)| a < b) {
                continue;
            }
            let w: Vec<u32> = v.iter().zip(part).map(|(a, b)| a - b).collect();
            table[index(alpha, v)] += table[index(alpha, &w)];
        }
    }
    table[index(alpha, alpha)]
}

/// Number of integer partitions of `c`.
pub fn integer_partitions(c: u32) -> u64 {
    vector_partition_count(&[c])
}

/// Linear algebra over `F_q`, rows as `Vec<u32>`.
pub mod fq {
    fn inv(a: u32, q: u32) -> u32 {
        (1..q).find(|&b| a * b % q == 1).expect("nonzero element of a field")
    }

    /// Reduced row echelon form with zero rows removed.
    pub fn rref(mut rows: Vec<Vec<u32>>, q: u32) -> Vec<Vec<u32>> {
        let width = rows.first().map_or(0, Vec::len);
        let mut lead = 0;
        for col in 0..width {
            let Some(pr) = (lead..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(lead, pr);
            let s = inv(rows[lead][col], q);
            for x in rows[lead].iter_mut() {
                *x = *x * s % q;
            }
            for i in 0..rows.len() {
                if i != lead && rows[i][col] != 0 {
                    let f = rows[i][col];
                    for j in 0..width {
                        rows[i][j] = (rows[i][j] + q * q - f * rows[lead][j]) % q;
                    }
                }
            }
            lead += 1;
        }
        rows.truncate(lead);
        rows
    }

    pub fn rank(rows: &[Vec<u32>], q: u32) -> usize {
        rref(rows.to_vec(), q).len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn kernel(a: &[Vec<u32>], width: usize, q: u32) -> Vec<Vec<u32>> {
        let r = rref(a.to_vec(), q);
        let pivots: Vec<usize> = r.iter().map(|row| row.iter().position(|&x| x != 0).unwrap()).collect();
        let mut out = Vec::new();
        for free in (0..width).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u32; width];
            v[free] = 1;
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = (q - row[free]) % q;
            }
            out.push(v);
        }
        out
    }

    /// Is every row of `b` in the row space of `a`?
    pub fn rows_in_span(a: &[Vec<u32>], b: &[Vec<u32>], q: u32) -> bool {
        let base = rank(a, q);
        let mut all = a.to_vec();
        all.extend_from_slice(b);
        rank(&all, q) == base
    }

    /// Every `c x width` matrix in reduced row echelon form of rank `c`.
    pub fn all_rref(c: usize, width: usize, q: u32) -> Vec<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        let mut pivots: Vec<usize> = (0..c).collect();
        if c > width {
            return out;
        }
        loop {
            let free: Vec<(usize, usize)> = (0..c)
                .flat_map(|r| {
                    let pivots = &pivots;
                    (pivots[r] + 1..width).filter(move |j| !pivots.contains(j)).map(move |j| (r, j))
                })
                .collect();
            let mut vals = vec![0u32; free.len()];
            loop {
                let mut m = vec![vec![0u32; width]; c];
                for (r, &p) in pivots.iter().enumerate() {
                    m[r][p] = 1;
                }
                for (&(r, j), &v) in free.iter().zip(&vals) {
                    m[r][j] = v;
                }
                out.push(m);
                let mut i = 0;
                while i < vals.len() && vals[i] == q - 1 {
                    vals[i] = 0;
                    i += 1;
                }
                if i == vals.len() {
                    break;
                }
                vals[i] += 1;
            }
            // next combination of pivot columns
            let mut i = c;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if pivots[i] < width - c + i {
                    pivots[i] += 1;
                    for j in i + 1..c {
                        pivots[j] = pivots[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

/// The space `F_q^k (x) F_q[z]/z^depth`, coordinate `i * depth + j` for
/// `e_i z^j`.
#[derive(Debug, Clone, Copy)]
pub struct Truncated {
    pub k: usize,
    pub depth: usize,
}

impl Truncated {
    pub fn dim(self) -> usize {
        self.k * self.depth
    }

    /// Rows of `A * Z` where `Z` is multiplication by `z`.
    fn shift_rows(self, a: &[Vec<u32>]) -> Vec<Vec<u32>> {
        a.iter()
            .map(|row| {
                let mut out = vec![0u32; self.dim()];
                for i in 0..self.k {
                    for j in 0..self.depth - 1 {
                        // (A Z)[., i*d + j] = A[., i*d + j + 1]
                        out[i * self.depth + j] = row[i * self.depth + j + 1];
                    }
                }
                out
            })
            .collect()
    }

    /// Annihilators `A` (in RREF) of the `z`-stable subspaces of codimension `c`.
    pub fn stable_annihilators(self, c: usize, q: u32) -> Vec<Vec<Vec<u32>>> {
        fq::all_rref(c, self.dim(), q)
            .into_iter()
            .filter(|a| fq::rows_in_span(a, &self.shift_rows(a), q))
            .collect()
    }
}

/// Colength data of a simple fiber computed with plain linear algebra:
/// a chain is a tuple of annihilators `A_k` of `z`-stable subspaces
/// `W_k` of codimension `c_k` in `F_q^k (x) F_q[z]/z^N` with
/// `W_{k-1} <= W_k`.
pub struct SubspaceFiber {
    pub total: u64,
    /// `mu` as rows `[mu_{p1}, ..., mu_{pp}]`.
    pub buckets: BTreeMap<Vec<Vec<u32>>, u64>,
}

pub fn subspace_fiber(gamma: &[u32], q: u32) -> SubspaceFiber {
    let r = gamma.len();
    let depth = *gamma.iter().max().unwrap_or(&0) as usize + 1;
    let levels: Vec<Vec<Vec<Vec<u32>>>> = (1..=r)
        .map(|k| {
            Truncated { k, depth }.stable_annihilators(gamma[k - 1] as usize, q)
        })
        .collect();
    let mut out = SubspaceFiber {
        total: 0,
        buckets: BTreeMap::new(),
    };
    let mut chain: Vec<&Vec<Vec<u32>>> = Vec::new();
    extend_chain(&levels, depth, q, &mut chain, &mut out);
    out
}

fn restrict(a: &[Vec<u32>], width: usize) -> Vec<Vec<u32>> {
    a.iter().map(|row| row[..width].to_vec()).collect()
}

fn extend_chain<'a>(
    levels: &'a [Vec<Vec<Vec<u32>>>],
    depth: usize,
    q: u32,
    chain: &mut Vec<&'a Vec<Vec<u32>>>,
    out: &mut SubspaceFiber,
) {
    let k = chain.len() + 1;
    if k > levels.len() {
        let mu: Vec<Vec<u32>> = chain
            .iter()
            .enumerate()
            .map(|(i, a)| (1..=i + 1).map(|qq| fq::rank(&restrict(a, qq * depth), q) as u32).collect())
            .collect();
        out.total += 1;
        *out.buckets.entry(mu).or_insert(0) += 1;
        return;
    }
    for a in &levels[k - 1] {
        if let Some(prev) = chain.last() {
            // W_{k-1} <= W_k iff A_k restricted to the first k-1 blocks
            // annihilates W_{k-1}
            let inner = restrict(a, (k - 1) * depth);
            if !fq::rows_in_span(prev, &inner, q) {
                continue;
            }
        }
        chain.push(a);
        extend_chain(levels, depth, q, chain, out);
        chain.pop();
    }
}

/// Annihilator, in RREF, of the image of `lattice` in `F_q^k (x) F_q[z]/z^depth`.
pub fn lattice_annihilator(lattice: &quasiflag::oracle::Lattice, depth: usize) -> Vec<Vec<u32>> {
    let q = lattice.q();
    let k = lattice.rank();
    let space = Truncated { k, depth };
    let mut span = Vec::new();
    for col in lattice.columns() {
        for shift in 0..depth {
            let mut v = vec![0u32; space.dim()];
            for (i, entry) in col.iter().enumerate() {
                for (j, &a) in entry.iter().enumerate() {
                    if j + shift < depth {
                        v[i * depth + j + shift] = a;
                    }
                }
            }
            span.push(v);
        }
    }
    let ann = fq::kernel(&span, space.dim(), q);
    fq::rref(ann, q)
}
