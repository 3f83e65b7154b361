//! Exact integer linear algebra: Smith normal form over ℤ and echelon forms
//! of subgroups of ⊕ ℤ/dᵢ.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("matrix rows differ in length".into()));
        }
        Ok(Self { rows: rows.len(), cols, entries: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape("matrix product dimensions".into()));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a
                        .checked_mul(other.get(k, j))
                        .and_then(|p| p.checked_add(out.get(i, j)))
                        .ok_or(Error::Overflow)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// The product modulo 2⁶⁴; exact whenever the true product fits.
    pub fn mul_wrapping(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                for j in 0..other.cols {
                    out.set(i, j, out.get(i, j).wrapping_add(self.get(i, k).wrapping_mul(other.get(k, j))));
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0i64, |acc, (&a, &b)| {
                    a.checked_mul(b).and_then(|p| p.checked_add(acc)).ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        for j in 0..self.cols {
            let v = q
                .checked_mul(self.get(src, j))
                .and_then(|p| p.checked_add(self.get(dst, j)))
                .ok_or(Error::Overflow)?;
            self.set(dst, j, v);
        }
        Ok(())
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        for i in 0..self.rows {
            let v = q
                .checked_mul(self.get(i, src))
                .and_then(|p| p.checked_add(self.get(i, dst)))
                .ok_or(Error::Overflow)?;
            self.set(i, dst, v);
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        for j in 0..self.cols {
            let v = self.get(i, j).checked_neg().ok_or(Error::Overflow)?;
            self.set(i, j, v);
        }
        Ok(())
    }
}

/// Smith normal form: returns (U, S, V) with U·m·V = S, U and V unimodular,
/// S diagonal with nonnegative entries each dividing the next.
pub fn smith_normal_form(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix, IntMatrix)> {
    let (r, c) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        let Some((pi, pj)) = min_abs_entry(&s, t..r, t..c) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let p = s.get(t, t);
            let mut clean = true;
            for i in t + 1..r {
                let q = s.get(i, t).div_euclid(p);
                if q != 0 {
                    s.add_row(i, t, -q)?;
                    u.add_row(i, t, -q)?;
                }
                clean &= s.get(i, t) == 0;
            }
            for j in t + 1..c {
                let q = s.get(t, j).div_euclid(p);
                if q != 0 {
                    s.add_col(j, t, -q)?;
                    v.add_col(j, t, -q)?;
                }
                clean &= s.get(t, j) == 0;
            }
            if !clean {
                // a smaller remainder sits in row or column t: move it to the pivot
                let best = (t..r)
                    .map(|i| (i, t))
                    .chain((t..c).map(|j| (t, j)))
                    .filter(|&(i, j)| s.get(i, j) != 0)
                    .min_by_key(|&(i, j)| s.get(i, j).unsigned_abs())
                    .unwrap_or((t, t));
                s.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                s.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            let p = s.get(t, t);
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| s.get(i, j) % p != 0));
            match bad {
                Some(i) => {
                    s.add_row(t, i, 1)?;
                    u.add_row(t, i, 1)?;
                }
                None => break,
            }
        }
        if s.get(t, t) < 0 {
            s.negate_row(t)?;
            u.negate_row(t)?;
        }
    }
    debug_assert_eq!(u.mul_wrapping(m).mul_wrapping(&v), s);
    Ok((u, s, v))
}

fn min_abs_entry(
    s: &IntMatrix,
    rows: core::ops::Range<usize>,
    cols: core::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, u64)> = None;
    for i in rows {
        for j in cols.clone() {
            let a = s.get(i, j).unsigned_abs();
            if a != 0 && best.map_or(true, |(_, _, b)| a < b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Invariant factors (> 1) of ℤ^cols / rowspan(m).
pub fn cokernel_factors(m: &IntMatrix) -> Result<(Vec<u64>, usize)> {
    let (_, s, _) = smith_normal_form(m)?;
    let diag = s.diagonal();
    let free = m.cols - diag.iter().filter(|&&d| d != 0).count();
    let factors = diag.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect();
    Ok((factors, free))
}

pub fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// A subgroup of M = ⊕ ℤ/dᵢ in echelon form: at most one generator leads
/// at each coordinate, with leading entry gᵢ | dᵢ, and every element of the
/// subgroup whose first nonzero coordinate is i has a multiple of gᵢ there.
#[derive(Debug, Clone)]
pub struct Echelon {
    moduli: Vec<i64>,
    pivots: Vec<Option<Vec<i64>>>,
}

impl Echelon {
    /// Subgroup generated by `gens`, each of length `moduli.len()`.
    pub fn new(moduli: &[u64], gens: impl IntoIterator<Item = Vec<i64>>) -> Self {
        let moduli: Vec<i64> = moduli.iter().map(|&d| d as i64).collect();
        let len = moduli.len();
        let reduce = |v: &mut Vec<i64>| {
            for (x, &d) in v.iter_mut().zip(&moduli) {
                *x = x.rem_euclid(d);
            }
        };
        let mut active: Vec<Vec<i64>> = gens
            .into_iter()
            .map(|mut v| {
                reduce(&mut v);
                v
            })
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect();
        let mut pivots = vec![None; len];
        for i in 0..len {
            let d = moduli[i];
            let mut pivot: Option<Vec<i64>> = None;
            let mut rest = Vec::with_capacity(active.len() + 1);
            for v in active {
                if v[i] == 0 {
                    rest.push(v);
                    continue;
                }
                match pivot.take() {
                    None => pivot = Some(v),
                    Some(p) => {
                        let (g, s, t) = xgcd(p[i], v[i]);
                        let (pa, va) = (p[i] / g, v[i] / g);
                        let mut np: Vec<i64> = p.iter().zip(&v).map(|(&x, &y)| s * x + t * y).collect();
                        let mut other: Vec<i64> = p.iter().zip(&v).map(|(&x, &y)| va * x - pa * y).collect();
                        reduce(&mut np);
                        reduce(&mut other);
                        if other.iter().any(|&x| x != 0) {
                            rest.push(other);
                        }
                        if np[i] == 0 {
                            // s·p[i] + t·v[i] = g ≡ 0 (mod d) only if g is a multiple of d
                            if np.iter().any(|&x| x != 0) {
                                rest.push(np);
                            }
                        } else {
                            pivot = Some(np);
                        }
                    }
                }
            }
            if let Some(p) = pivot {
                let (g, s, _) = xgcd(p[i], d);
                let mut np: Vec<i64> = p.iter().map(|&x| s * x).collect();
                reduce(&mut np);
                let mut ann: Vec<i64> = p.iter().map(|&x| (d / g) * x).collect();
                reduce(&mut ann);
                if ann.iter().any(|&x| x != 0) {
                    rest.push(ann);
                }
                debug_assert_eq!(np[i], g);
                pivots[i] = Some(np);
            }
            active = rest;
        }
        debug_assert!(active.is_empty());
        Self { moduli, pivots }
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.moduli.iter().map(|&d| d as u64).collect()
    }

    /// Leading entry at coordinate i, or dᵢ when nothing leads there.
    pub fn leading(&self, i: usize) -> u64 {
        self.pivots[i].as_ref().map_or(self.moduli[i], |p| p[i]) as u64
    }

    /// Generators leading at coordinates in `range`.
    pub fn generators_in(&self, range: core::ops::Range<usize>) -> impl Iterator<Item = &Vec<i64>> {
        self.pivots[range].iter().flatten()
    }

    pub fn generators(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.pivots.iter().flatten()
    }

    /// Order of the subgroup, ∏ dᵢ/gᵢ over coordinates in `range`
    /// (the whole vector for the full subgroup).
    pub fn order_in(&self, range: core::ops::Range<usize>) -> u128 {
        range.map(|i| (self.moduli[i] as u64 / self.leading(i)) as u128).product()
    }

    pub fn order(&self) -> u128 {
        self.order_in(0..self.len())
    }

    /// Reduce `v` by the generators leading at coordinates `< upto`. Returns
    /// the reduced vector and the coefficient used for each pivot.
    fn reduce_upto(&self, v: &[i64], upto: usize) -> (Vec<i64>, Vec<(usize, i64)>) {
        let mut v: Vec<i64> = v.iter().zip(&self.moduli).map(|(&x, &d)| x.rem_euclid(d)).collect();
        let mut used = Vec::new();
        for i in 0..upto {
            if v[i] == 0 {
                continue;
            }
            if let Some(p) = &self.pivots[i] {
                let q = v[i] / p[i];
                if q != 0 {
                    for ((x, &y), &d) in v.iter_mut().zip(p).zip(&self.moduli) {
                        *x = (*x - q * y).rem_euclid(d);
                    }
                    used.push((i, q));
                }
            }
        }
        (v, used)
    }

    /// Canonical representative of the coset v + H: the lexicographically
    /// smallest element when coordinates are read in 0..dᵢ.
    pub fn canonical(&self, v: &[i64]) -> Vec<i64> {
        self.reduce_upto(v, self.len()).0
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.canonical(v).iter().all(|&x| x == 0)
    }

    /// Reduce by the pivots leading in `0..upto` only; `None` unless the
    /// first `upto` coordinates become zero.
    pub fn eliminate_prefix(&self, v: &[i64], upto: usize) -> Option<Vec<i64>> {
        let (r, _) = self.reduce_upto(v, upto);
        r[..upto].iter().all(|&x| x == 0).then_some(r)
    }
}
