//! Exact linear algebra over Q.
//!
//! Large systems are eliminated modulo word-size primes; every result is lifted
//! by rational reconstruction and then checked exactly over Q before it is
//! returned. The checks make the answer independent of the primes chosen:
//! a rank found mod p is a lower bound for the rational rank, and the verified
//! column relations supply the matching upper bound. Dense fraction-free
//! elimination is kept for small matrices and as a fallback.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::Scalar;
use crate::error::{Error, Result};

/// Sparse vector: (index, nonzero value) sorted by index.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Column-major sparse matrix with exact entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    /// Columns given as (row, value) lists; zeros dropped, rows sorted.
    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        let ncols = cols.len();
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.retain(|(_, v)| !v.is_zero());
                c.sort_by_key(|(r, _)| *r);
                assert!(c.iter().all(|(r, _)| *r < nrows), "row out of range");
                c
            })
            .collect();
        SparseMatrix { nrows, ncols, cols }
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| {
                (0..nrows)
                    .filter(|&i| !rows[i][j].is_zero())
                    .map(|i| (i, rows[i][j].clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { nrows, ncols, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.cols[c].binary_search_by_key(&r, |(i, _)| *i) {
            Ok(k) => self.cols[c][k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.ncols]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut acc: HashMap<usize, Scalar> = HashMap::new();
        for (j, x) in v {
            for (i, a) in &self.cols[*j] {
                *acc.entry(*i).or_insert_with(Scalar::zero) += a * x;
            }
        }
        let mut out: SparseVec = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// self · rhs
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.ncols != rhs.nrows {
            return Err(Error::CoordinateMismatch { left: self.ncols, right: rhs.nrows });
        }
        let cols = rhs.cols.iter().map(|c| self.mul_vec(c)).collect();
        Ok(SparseMatrix { nrows: self.nrows, ncols: rhs.ncols, cols })
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.nrows, other.nrows);
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        SparseMatrix { nrows: self.nrows, ncols: cols.len(), cols }
    }
}

// ---------------------------------------------------------------- modular

const MERSENNE61: u64 = (1 << 61) - 1;

/// Primes used for modular elimination, largest first after 2^61-1.
pub const PRIMES: [u64; 8] = [
    MERSENNE61,
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
    4611686018427387733,
];

#[derive(Clone, Copy, Debug)]
struct Zp {
    p: u64,
}

impl Zp {
    #[inline]
    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mul(self, a: u64, b: u64) -> u64 {
        let z = (a as u128) * (b as u128);
        if self.p == MERSENNE61 {
            let s = ((z as u64) & MERSENNE61) + ((z >> 61) as u64);
            let s = (s & MERSENNE61) + (s >> 61);
            if s >= MERSENNE61 {
                s - MERSENNE61
            } else {
                s
            }
        } else {
            (z % self.p as u128) as u64
        }
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    fn from_bigint(self, x: &BigInt) -> u64 {
        let r = x.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("reduced residue fits")
    }

    /// None when the denominator vanishes mod p.
    fn from_scalar(self, x: &Scalar) -> Option<u64> {
        let d = self.from_bigint(x.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(self.from_bigint(x.numer()), self.inv(d)))
    }
}

/// Reduced row echelon form mod p of a dense row-major matrix.
/// Returns pivot columns; `rows` is truncated to the nonzero rows.
fn rref_mod(rows: &mut Vec<Vec<u64>>, ncols: usize, f: Zp) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = f.inv(rows[r][c]);
        if inv != 1 {
            for x in rows[r][c..].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            let lead = row[c];
            if lead == 0 {
                continue;
            }
            for (x, &y) in row[c..].iter_mut().zip(&prow[c..]) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(lead, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    for k in (0..r).rev() {
        let c = pivots[k];
        let (head, tail) = rows.split_at_mut(k);
        let prow = &tail[0];
        for row in head.iter_mut() {
            let lead = row[c];
            if lead == 0 {
                continue;
            }
            for (x, &y) in row[c..].iter_mut().zip(&prow[c..]) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(lead, y));
                }
            }
        }
    }
    pivots
}

/// Wang reconstruction for a single word-size modulus.
fn ratrecon_small(u: u64, p: u64) -> Option<Scalar> {
    if u == 0 {
        return Some(Scalar::zero());
    }
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p as i128, u as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound || r1.gcd(&t1) != 1 {
        return None;
    }
    Some(Scalar::new(BigInt::from(r1), BigInt::from(t1)))
}

fn ratrecon_big(u: &BigInt, m: &BigInt) -> Option<Scalar> {
    if u.is_zero() {
        return Some(Scalar::zero());
    }
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Scalar::new(r1, t1))
}

/// Residues accumulated over several primes by CRT.
struct Crt {
    modulus: BigInt,
    primes: Vec<u64>,
    first: Vec<u64>,
    values: Option<Vec<BigInt>>,
}

impl Crt {
    fn new() -> Self {
        Crt { modulus: BigInt::one(), primes: Vec::new(), first: Vec::new(), values: None }
    }

    fn push(&mut self, p: u64, residues: Vec<u64>) {
        if self.primes.is_empty() {
            self.first = residues;
            self.modulus = BigInt::from(p);
            self.primes.push(p);
            return;
        }
        let values = self
            .values
            .take()
            .unwrap_or_else(|| self.first.iter().map(|&x| BigInt::from(x)).collect());
        let pb = BigInt::from(p);
        let f = Zp { p };
        let m_inv = f.inv(f.from_bigint(&self.modulus));
        let combined = values
            .into_iter()
            .zip(residues)
            .map(|(v, r)| {
                let diff = f.sub(r, f.from_bigint(&v));
                let k = f.mul(diff, m_inv);
                v + &self.modulus * BigInt::from(k)
            })
            .collect();
        self.modulus *= pb;
        self.primes.push(p);
        self.values = Some(combined);
    }

    fn reconstruct(&self) -> Option<Vec<Scalar>> {
        match &self.values {
            None => {
                let p = self.primes[0];
                self.first.iter().map(|&u| ratrecon_small(u, p)).collect()
            }
            Some(vals) => vals.iter().map(|u| ratrecon_big(u, &self.modulus)).collect(),
        }
    }
}

/// Integer column scaling: returns integer columns and per-column factors s_j
/// with A'[:,j] = s_j·A[:,j].
fn integerize(a: &SparseMatrix) -> (Vec<Vec<(usize, BigInt)>>, Vec<BigInt>) {
    let mut cols = Vec::with_capacity(a.ncols);
    let mut scales = Vec::with_capacity(a.ncols);
    for col in &a.cols {
        let mut s = BigInt::one();
        for (_, v) in col {
            s = s.lcm(v.denom());
        }
        cols.push(col.iter().map(|(i, v)| (*i, (v * Scalar::from_integer(s.clone())).to_integer())).collect());
        scales.push(s);
    }
    (cols, scales)
}

/// Column-space description of A: a set of independent pivot columns and, for
/// every other column, its exact expression in terms of them.
#[derive(Clone, Debug)]
pub struct ColumnRelations {
    nrows: usize,
    ncols: usize,
    pivots: Vec<usize>,
    pivot_slot: Vec<Option<usize>>,
    /// For each non-pivot column f: (pivot column j, c) with A[:,f] = Σ c·A[:,j].
    relations: Vec<SparseVec>,
}

impl ColumnRelations {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.pivots.len()
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_slot[c].is_some()
    }

    pub fn relation(&self, c: usize) -> &SparseVec {
        &self.relations[c]
    }

    /// One kernel vector per free column f: e_f − Σ c_j e_j.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        (0..self.ncols)
            .filter(|&c| !self.is_pivot(c))
            .map(|f| {
                let mut v: SparseVec = self.relations[f].iter().map(|(j, c)| (*j, -c.clone())).collect();
                v.push((f, Scalar::one()));
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect()
    }
}

fn verify_relations(cols: &[Vec<(usize, BigInt)>], nrows: usize, f: usize, rel: &[(usize, Scalar)]) -> bool {
    let mut den = BigInt::one();
    for (_, c) in rel {
        den = den.lcm(c.denom());
    }
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); nrows];
    let mut touched = Vec::new();
    for (j, c) in rel {
        let w = c.numer() * (&den / c.denom());
        for (i, a) in &cols[*j] {
            if acc[*i].is_zero() {
                touched.push(*i);
            }
            acc[*i] += &w * a;
        }
    }
    for (i, a) in &cols[f] {
        if acc[*i].is_zero() {
            touched.push(*i);
        }
        acc[*i] -= &den * a;
    }
    touched.iter().all(|&i| acc[i].is_zero())
}

/// Certified column relations of A.
pub fn column_relations(a: &SparseMatrix) -> ColumnRelations {
    let (icols, scales) = integerize(a);
    let (m, n) = (a.nrows, a.ncols);
    let mut best: Option<(Vec<usize>, Crt)> = None;
    for &p in PRIMES.iter() {
        let f = Zp { p };
        let mut rows = vec![vec![0u64; n]; m];
        for (j, col) in icols.iter().enumerate() {
            for (i, v) in col {
                rows[*i][j] = f.from_bigint(v);
            }
        }
        let pivots = rref_mod(&mut rows, n, f);
        let free: Vec<usize> = {
            let mut is_piv = vec![false; n];
            pivots.iter().for_each(|&c| is_piv[c] = true);
            (0..n).filter(|&c| !is_piv[c]).collect()
        };
        let residues: Vec<u64> = free
            .iter()
            .flat_map(|&c| rows.iter().map(move |row| row[c]))
            .collect();
        let replace = match &best {
            None => true,
            Some((bp, _)) => pivots.len() > bp.len() || (pivots.len() == bp.len() && pivots < *bp),
        };
        if replace {
            best = Some((pivots.clone(), Crt::new()));
        } else if best.as_ref().map(|(bp, _)| *bp != pivots).unwrap_or(false) {
            continue;
        }
        let (bp, crt) = best.as_mut().expect("set above");
        crt.push(p, residues);
        let Some(values) = crt.reconstruct() else { continue };
        if let Some(rel) = assemble_relations(bp, &free, &values, &icols, &scales, m, n) {
            return rel;
        }
    }
    exact_relations(a)
}

fn assemble_relations(
    pivots: &[usize],
    free: &[usize],
    values: &[Scalar],
    icols: &[Vec<(usize, BigInt)>],
    scales: &[BigInt],
    m: usize,
    n: usize,
) -> Option<ColumnRelations> {
    let r = pivots.len();
    let mut relations = vec![Vec::new(); n];
    for (k, &fc) in free.iter().enumerate() {
        let rel: SparseVec = (0..r)
            .filter(|&row| !values[k * r + row].is_zero())
            .map(|row| (pivots[row], values[k * r + row].clone()))
            .collect();
        if !verify_relations(icols, m, fc, &rel) {
            return None;
        }
        // back to the unscaled columns: A[:,f] = Σ c·s_j/s_f A[:,j]
        relations[fc] = rel
            .into_iter()
            .map(|(j, c)| {
                let s = Scalar::new(scales[j].clone(), scales[fc].clone());
                (j, c * s)
            })
            .collect();
    }
    let mut pivot_slot = vec![None; n];
    for (k, &c) in pivots.iter().enumerate() {
        pivot_slot[c] = Some(k);
    }
    Some(ColumnRelations { nrows: m, ncols: n, pivots: pivots.to_vec(), pivot_slot, relations })
}

/// Gauss–Jordan over Q; slow reference path.
fn exact_relations(a: &SparseMatrix) -> ColumnRelations {
    let mut rows = a.to_dense();
    let (m, n) = (a.nrows, a.ncols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(found) = (r..m).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, found);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let lead = rows[i][c].clone();
                for j in c..n {
                    let d = &lead * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut pivot_slot = vec![None; n];
    for (k, &c) in pivots.iter().enumerate() {
        pivot_slot[c] = Some(k);
    }
    let relations = (0..n)
        .map(|c| {
            if pivot_slot[c].is_some() {
                Vec::new()
            } else {
                (0..pivots.len())
                    .filter(|&k| !rows[k][c].is_zero())
                    .map(|k| (pivots[k], rows[k][c].clone()))
                    .collect()
            }
        })
        .collect();
    ColumnRelations { nrows: m, ncols: n, pivots, pivot_slot, relations }
}

/// Certified rank.
pub fn rank(a: &SparseMatrix) -> usize {
    column_relations(a).rank()
}

/// Certified kernel basis (one vector per non-pivot column).
pub fn kernel_basis(a: &SparseMatrix) -> Vec<SparseVec> {
    column_relations(a).kernel_basis()
}

/// Some x with A·x = b, or None when the system is inconsistent.
pub fn solve(a: &SparseMatrix, b: &SparseVec) -> Option<SparseVec> {
    let aug = a.hstack(&SparseMatrix::from_columns(a.nrows, vec![b.clone()]));
    let rel = column_relations(&aug);
    let last = a.ncols;
    if rel.is_pivot(last) {
        return None;
    }
    let x: SparseVec = rel.relation(last).clone();
    debug_assert_eq!(a.mul_vec(&x), *b);
    Some(x)
}

/// Complement of im(B) inside the span of `kernel`, in canonical form.
///
/// Coordinates are compared from the last one backwards: each returned vector
/// has its last nonzero entry equal to 1 at a position that is not the last
/// nonzero position of any image vector or of another returned vector. The
/// result is verified to lie in ker(A) exactly; independence modulo im(B) is
/// implied by the modular echelon structure.
pub fn quotient_representatives(
    a: &SparseMatrix,
    kernel: &[SparseVec],
    image: &SparseMatrix,
    image_rank: usize,
) -> Result<Vec<SparseVec>> {
    let n = image.nrows;
    let expected = kernel.len().saturating_sub(image_rank);
    if expected == 0 {
        return Ok(Vec::new());
    }
    let rev = |i: usize| n - 1 - i;
    let mut crt: Option<(Vec<usize>, Crt)> = None;
    'primes: for &p in PRIMES.iter() {
        let f = Zp { p };
        let mut img_rows = Vec::with_capacity(image.ncols);
        for col in &image.cols {
            let mut row = vec![0u64; n];
            for (i, v) in col {
                match f.from_scalar(v) {
                    Some(x) => row[rev(*i)] = x,
                    None => continue 'primes,
                }
            }
            img_rows.push(row);
        }
        let img_piv = rref_mod(&mut img_rows, n, f);
        if img_piv.len() != image_rank {
            continue;
        }
        let mut ker_rows = Vec::with_capacity(kernel.len());
        for v in kernel {
            let mut row = vec![0u64; n];
            for (i, x) in v {
                match f.from_scalar(x) {
                    Some(y) => row[rev(*i)] = y,
                    None => continue 'primes,
                }
            }
            for (k, &c) in img_piv.iter().enumerate() {
                let lead = row[c];
                if lead != 0 {
                    for (x, &y) in row[c..].iter_mut().zip(&img_rows[k][c..]) {
                        *x = f.sub(*x, f.mul(lead, y));
                    }
                }
            }
            ker_rows.push(row);
        }
        let piv = rref_mod(&mut ker_rows, n, f);
        if piv.len() != expected {
            continue;
        }
        let residues: Vec<u64> = ker_rows.iter().flat_map(|r| r.iter().copied()).collect();
        match &mut crt {
            Some((bp, c)) if *bp == piv => c.push(p, residues),
            _ => {
                let mut c = Crt::new();
                c.push(p, residues);
                crt = Some((piv.clone(), c));
            }
        }
        let Some(values) = crt.as_ref().expect("set").1.reconstruct() else { continue };
        let reps: Vec<SparseVec> = values
            .chunks(n)
            .map(|chunk| {
                let mut v: SparseVec = chunk
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (rev(j), x.clone()))
                    .collect();
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect();
        if reps.iter().all(|v| a.mul_vec(v).is_empty()) {
            return Ok(reps);
        }
    }
    Err(Error::Reconstruction)
}

// ------------------------------------------------------------ small dense

/// Rank by fraction-free (Bareiss) elimination.
pub fn rank_bareiss(rows: &[Vec<Scalar>]) -> usize {
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let n = rows[0].len();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let mut den = BigInt::one();
            for x in row {
                den = den.lcm(x.denom());
            }
            row.iter()
                .map(|x| (x * Scalar::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(found) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, found);
        for i in r + 1..m {
            for j in c + 1..n {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant by fraction-free elimination.
pub fn determinant(rows: &[Vec<Scalar>]) -> Scalar {
    let n = rows.len();
    if n == 0 {
        return Scalar::one();
    }
    let mut den = BigInt::one();
    for row in rows {
        for x in row {
            den = den.lcm(x.denom());
        }
    }
    let dscale = Scalar::from_integer(den.clone());
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| row.iter().map(|x| (x * &dscale).to_integer()).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..n {
        let Some(found) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if found != c {
            a.swap(c, found);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let v = (&a[c][c] * &a[i][j] - &a[i][c] * &a[c][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[c][c].clone();
    }
    let d = sign * &a[n - 1][n - 1];
    Scalar::new(d, num_traits::pow(den, n))
}

/// Inverse over Q, None when singular.
pub fn inverse(rows: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = rows.len();
    let mut a: Vec<Vec<Scalar>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let found = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, found);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let lead = a[i][c].clone();
                for j in 0..2 * n {
                    let d = &lead * &a[c][j];
                    a[i][j] -= d;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
