//! Full-rank submodules of `F_q[z]^k` whose quotient is supported at `z = 0`.
//!
//! # Canonical form
//!
//! Every such submodule has exactly one basis `b_1, ..., b_k` (columns of an
//! upper-triangular matrix) with
//!
//! * `b_j` zero in rows `j+1..k`,
//! * the pivot entry of `b_j` in row `j` equal to `z^{d_j}`,
//! * every entry of `b_j` above the pivot, in row `i < j`, a polynomial of
//!   degree `< d_i` (reduced modulo the pivot of row `i`).
//!
//! The colength is `d_1 + ... + d_k`. With this convention the intersection
//! with the first `r` coordinates is spanned by `b_1, ..., b_r`.
//!
//! Submodules of colength `c` contain `z^c F_q[z]^k`, so elimination may be
//! carried out modulo any `z^N` with `N > c` without losing information.

use std::fmt;

use crate::error::{Error, Result};
use crate::oracle::field::{monomial, shift_down, valuation, Poly, PrimeField};

/// A column of polynomials, row 0 first.
pub type Column = Vec<Poly>;

/// An eliminated row and the generator whose pivot sits there.
type Pivot = (usize, Column);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    q: u32,
    degrees: Vec<u32>,
    columns: Vec<Column>,
}

impl Lattice {
    /// The whole module `F_q[z]^k`.
    pub fn full(field: PrimeField, k: usize) -> Self {
        let columns = (0..k)
            .map(|j| (0..k).map(|i| if i == j { vec![1] } else { Vec::new() }).collect())
            .collect();
        Lattice {
            q: field.order(),
            degrees: vec![0; k],
            columns,
        }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    fn field(&self) -> PrimeField {
        PrimeField::new(self.q).expect("lattices are built over prime fields")
    }

    /// Pivot exponents `d_1, ..., d_k`.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn colength(&self) -> u64 {
        self.degrees.iter().map(|&d| u64::from(d)).sum()
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    /// Canonical basis of the submodule generated by `gens` together with
    /// `z^truncation F_q[z]^k`.
    ///
    /// The result equals the submodule generated by `gens` whenever that
    /// submodule is full rank with colength below `truncation`; otherwise an
    /// error is returned when this can be detected.
    pub fn from_generators(field: PrimeField, k: usize, gens: &[Column], truncation: usize) -> Result<Self> {
        let work: Vec<Column> = gens
            .iter()
            .map(|g| {
                debug_assert_eq!(g.len(), k);
                g.iter().map(|e| truncate(field, e, truncation)).collect()
            })
            .collect();
        let (mut pivots, _) = eliminate(field, k, 0, work, truncation)?;
        let degrees: Vec<u32> = pivots.iter().map(|(d, _)| *d as u32).collect();
        if degrees.iter().map(|&d| d as usize).sum::<usize>() >= truncation {
            return Err(Error::Truncation { truncation });
        }
        // reduce entries above each pivot, bottom row first
        for j in 0..k {
            for i in (0..j).rev() {
                let d = pivots[i].0;
                let entry = pivots[j].1[i].clone();
                if entry.len() <= d {
                    continue;
                }
                let quot = shift_down(&entry, d);
                let (head, tail) = pivots.split_at_mut(j);
                let col_i = &head[i].1;
                let col_j = &mut tail[0].1;
                for r in 0..=i {
                    let prod = field.poly_mul_trunc(&quot, &col_i[r], truncation);
                    col_j[r] = field.poly_sub(&col_j[r], &prod);
                }
            }
        }
        let columns: Vec<Column> = pivots
            .into_iter()
            .enumerate()
            .map(|(j, (d, mut col))| {
                col[j] = monomial(d);
                for entry in col.iter_mut().skip(j + 1) {
                    entry.clear();
                }
                col
            })
            .collect();
        Ok(Lattice {
            q: field.order(),
            degrees,
            columns,
        })
    }

    /// Recomputes the canonical form from the current basis.
    pub fn canonicalize(&self, truncation: usize) -> Result<Self> {
        Lattice::from_generators(self.field(), self.rank(), &self.columns, truncation)
    }

    /// `self ∩ F_q[z]^r`, where `F_q[z]^r` is the span of the first `r`
    /// coordinates: the kernel of the projection onto the last `k - r`
    /// coordinates, found by elimination on those rows.
    pub fn intersect_coordinates(&self, r: usize, truncation: usize) -> Result<Self> {
        let k = self.rank();
        if r > k {
            return Err(Error::RankMismatch(format!(
                "cannot intersect a rank {k} lattice with {r} coordinates"
            )));
        }
        let field = self.field();
        let work: Vec<Column> = self
            .columns
            .iter()
            .map(|c| c.iter().map(|e| truncate(field, e, truncation)).collect())
            .collect();
        let (_, kernel) = eliminate(field, k, r, work, truncation)?;
        let kernel: Vec<Column> = kernel.into_iter().map(|mut c| {
            c.truncate(r);
            c
        }).collect();
        Lattice::from_generators(field, r, &kernel, truncation)
    }

    /// Whether every basis vector of `inner`, padded with zeros, lies in
    /// `self`. Exact back substitution over `F_q[z]`.
    pub fn contains(&self, inner: &Lattice) -> Result<bool> {
        if inner.rank() > self.rank() || inner.q != self.q {
            return Err(Error::RankMismatch(format!(
                "rank {} over F_{} cannot sit inside rank {} over F_{}",
                inner.rank(),
                inner.q,
                self.rank(),
                self.q
            )));
        }
        let field = self.field();
        let k = self.rank();
        for col in &inner.columns {
            let mut v: Column = col.clone();
            v.resize(k, Vec::new());
            if !self.reduce_vector(field, &mut v) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether a single vector of length `rank()` lies in `self`.
    pub fn contains_vector(&self, v: &[Poly]) -> bool {
        let mut v = v.to_vec();
        self.reduce_vector(self.field(), &mut v)
    }

    fn reduce_vector(&self, field: PrimeField, v: &mut Column) -> bool {
        for i in (0..self.rank()).rev() {
            if v[i].is_empty() {
                continue;
            }
            let d = self.degrees[i] as usize;
            if valuation(&v[i]).expect("nonzero entry") < d {
                return false;
            }
            let a = shift_down(&v[i], d);
            for r in 0..=i {
                let prod = field.poly_mul(&a, &self.columns[i][r]);
                v[r] = field.poly_sub(&v[r], &prod);
            }
            debug_assert!(v[i].is_empty());
        }
        true
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (j, col) in self.columns.iter().enumerate() {
            if j > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = col.iter().map(|p| fmt_poly(p)).collect();
            write!(f, "{}", cells.join(","))?;
        }
        write!(f, ">")
    }
}

fn fmt_poly(p: &[u32]) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(e, &c)| match (e, c) {
            (0, c) => c.to_string(),
            (e, 1) => format!("z^{e}"),
            (e, c) => format!("{c}z^{e}"),
        })
        .collect();
    terms.join("+")
}

fn truncate(field: PrimeField, p: &[u32], n: usize) -> Poly {
    let mut p = p.to_vec();
    p.truncate(n);
    field.trim(p)
}

fn is_zero_column(c: &Column) -> bool {
    c.iter().all(Vec::is_empty)
}

/// Echelon elimination over `F_q[z]/z^N` on rows `k-1` down to `stop`.
///
/// Returns the pivot columns for those rows (index `i - stop`, each with
/// pivot exactly `z^{d_i}` in row `i` and zeros below) and the remaining
/// generators, which vanish on every eliminated row. The remaining set
/// includes the multiples `z^{N-d_i} b_i` that become zero in row `i`, so it
/// generates the full kernel of the projection onto the eliminated rows.
fn eliminate(
    field: PrimeField,
    k: usize,
    stop: usize,
    mut work: Vec<Column>,
    truncation: usize,
) -> Result<(Vec<Pivot>, Vec<Column>)> {
    let mut pivots = Vec::with_capacity(k - stop);
    work.retain(|c| !is_zero_column(c));
    for i in (stop..k).rev() {
        let best = work
            .iter()
            .enumerate()
            .filter_map(|(idx, c)| valuation(&c[i]).map(|v| (v, idx)))
            .min();
        let Some((v, idx)) = best else {
            return Err(Error::Truncation { truncation });
        };
        let mut pivot = work.swap_remove(idx);
        let unit = shift_down(&pivot[i], v);
        let unit_inv = field.series_inv(&unit, truncation);
        for e in pivot.iter_mut() {
            *e = field.poly_mul_trunc(e, &unit_inv, truncation);
        }
        debug_assert_eq!(pivot[i], monomial(v));
        for col in work.iter_mut() {
            if col[i].is_empty() {
                continue;
            }
            let factor = shift_down(&col[i], v);
            for r in 0..=i {
                let prod = field.poly_mul_trunc(&factor, &pivot[r], truncation);
                col[r] = field.poly_sub(&col[r], &prod);
            }
            debug_assert!(col[i].is_empty());
        }
        // z^{N-v} * pivot is zero in row i but not necessarily above it
        let ann = monomial(truncation - v);
        let killed: Column = pivot
            .iter()
            .map(|e| field.poly_mul_trunc(e, &ann, truncation))
            .collect();
        work.push(killed);
        work.retain(|c| !is_zero_column(c));
        pivots.push((v, pivot));
    }
    pivots.reverse();
    Ok((pivots, work))
}

/// Number of canonical bases of rank `k` and colength `c` over `F_q`:
/// `sum_d prod_i q^{d_i (k - i)}` over compositions `d` of `c`.
pub fn lattice_count(k: usize, c: u32, q: u32) -> Option<u64> {
    let mut total: u64 = 0;
    for d in compositions(c, k) {
        let mut exp: u64 = 0;
        for (i, &di) in d.iter().enumerate() {
            exp = exp.checked_add(u64::from(di) * (k - 1 - i) as u64)?;
        }
        let term = u64::from(q).checked_pow(u32::try_from(exp).ok()?)?;
        total = total.checked_add(term)?;
    }
    Some(total)
}

/// All compositions of `c` into `k` nonnegative parts, lexicographic.
pub fn compositions(c: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(c: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 1 {
            cur.push(c);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=c {
            cur.push(first);
            go(c - first, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if c == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(c, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Every full-rank submodule of `F_q[z]^k` of colength `c` at `z = 0`, each
/// exactly once, as its canonical basis.
pub fn enumerate_lattices(field: PrimeField, k: usize, c: u32, max_count: u64) -> Result<Vec<Lattice>> {
    if k == 0 {
        return Err(Error::RankMismatch("lattices need rank at least 1".into()));
    }
    let q = field.order();
    let count = lattice_count(k, c, q).ok_or(Error::CapExceeded {
        what: "lattice count",
        value: u64::MAX,
        cap: max_count,
    })?;
    if count > max_count {
        return Err(Error::CapExceeded {
            what: "lattice count",
            value: count,
            cap: max_count,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    for d in compositions(c, k) {
        // free coefficients: entry (i, j), i < j, has d_i of them
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .collect();
        let digits: usize = slots.iter().map(|&(i, _)| d[i] as usize).sum();
        let mut odometer = vec![0u32; digits];
        loop {
            let mut columns: Vec<Column> = (0..k)
                .map(|j| {
                    (0..k)
                        .map(|i| if i == j { monomial(d[j] as usize) } else { Vec::new() })
                        .collect()
                })
                .collect();
            let mut pos = 0;
            for &(i, j) in &slots {
                let len = d[i] as usize;
                columns[j][i] = field.trim(odometer[pos..pos + len].to_vec());
                pos += len;
            }
            out.push(Lattice {
                q,
                degrees: d.clone(),
                columns,
            });
            if !advance(&mut odometer, q) {
                break;
            }
        }
    }
    debug_assert_eq!(out.len() as u64, count);
    Ok(out)
}

fn advance(digits: &mut [u32], base: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// An invertible constant matrix over `F_q`, acting on coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstMatrix {
    field: PrimeField,
    /// `rows[i][j]` is the entry in row `i`, column `j`.
    rows: Vec<Vec<u32>>,
}

impl ConstMatrix {
    pub fn new(field: PrimeField, rows: Vec<Vec<u32>>) -> Result<Self> {
        let k = rows.len();
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::RankMismatch("matrix must be square".into()));
        }
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x % field.order()).collect())
            .collect();
        let m = ConstMatrix { field, rows };
        m.inverse()?;
        Ok(m)
    }

    pub fn identity(field: PrimeField, k: usize) -> Self {
        let rows = (0..k).map(|i| (0..k).map(|j| u32::from(i == j)).collect()).collect();
        ConstMatrix { field, rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn is_identity(&self) -> bool {
        *self == ConstMatrix::identity(self.field, self.size())
    }

    pub fn inverse(&self) -> Result<ConstMatrix> {
        let f = self.field;
        let k = self.size();
        let mut a: Vec<Vec<u32>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..k).map(|j| u32::from(i == j)));
                row
            })
            .collect();
        for col in 0..k {
            let pivot = (col..k)
                .find(|&r| a[r][col] != 0)
                .ok_or(Error::SingularMatrix(f.order()))?;
            a.swap(col, pivot);
            let inv = f.inv(a[col][col]);
            for x in a[col].iter_mut() {
                *x = f.mul(*x, inv);
            }
            for r in 0..k {
                if r != col && a[r][col] != 0 {
                    let factor = a[r][col];
                    for c in 0..2 * k {
                        let sub = f.mul(factor, a[col][c]);
                        a[r][c] = f.sub(a[r][c], sub);
                    }
                }
            }
        }
        Ok(ConstMatrix {
            field: f,
            rows: a.into_iter().map(|r| r[k..].to_vec()).collect(),
        })
    }

    pub fn apply(&self, v: &[Poly]) -> Column {
        let f = self.field;
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Vec::new(), |acc, (&g, e)| f.poly_add(&acc, &f.poly_scale(e, g)))
            })
            .collect()
    }

    /// Canonical form of the image `g L`.
    pub fn image(&self, lattice: &Lattice, truncation: usize) -> Result<Lattice> {
        if lattice.rank() != self.size() {
            return Err(Error::RankMismatch(format!(
                "matrix of size {} applied to rank {} lattice",
                self.size(),
                lattice.rank()
            )));
        }
        let gens: Vec<Column> = lattice.columns.iter().map(|c| self.apply(c)).collect();
        Lattice::from_generators(self.field, self.size(), &gens, truncation)
    }
}
