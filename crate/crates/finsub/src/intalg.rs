//! Exact integer linear algebra: Smith normal form, kernels, cokernels,
//! homology of a pair of boundary maps, and orders of classes in quotients.
//!
//! All arithmetic is arbitrary precision; intermediate entry growth during
//! Smith reduction is real even for modest boundary matrices and torsion must
//! come out exactly.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A sparse matrix over the integers. Only nonzero entries are stored; row
/// and column indices are zero-based and bounds-checked on insertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigInt) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(r, c) + v;
        self.set(r, c, cur);
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntegerMatrix::zero(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            for (&(_, j), b) in other.entries.range((k, 0)..=(k, usize::MAX)) {
                out.add_to(i, j, &(a * b));
            }
        }
        Ok(out)
    }

    /// Apply the matrix to an integer vector.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::InvalidArgument(format!(
                "vector length {} does not match column count {}",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![BigInt::zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            out[r] += a * &v[c];
        }
        Ok(out)
    }

    /// Plain-text integer grid, one row per line (debug aid).
    pub fn dump_text(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    s.push(' ');
                }
                s.push_str(&self.get(r, c).to_string());
            }
            s.push('\n');
        }
        s
    }

    fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut a = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            a[r][c] = v.clone();
        }
        a
    }
}

/// The diagonal of a Smith normal form: nonzero invariant factors in
/// divisibility order. Zero invariants are omitted; `rank` is their count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub invariants: Vec<BigInt>,
    pub rank: usize,
}

/// A finitely generated abelian group in canonical form: free rank plus
/// torsion invariant factors (> 1, each dividing the next).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn with_torsion(free_rank: usize, torsion: Vec<u64>) -> Self {
        for w in torsion.windows(2) {
            assert!(w[1] % w[0] == 0, "torsion not in divisibility order");
        }
        assert!(torsion.iter().all(|&d| d > 1));
        AbelianGroup { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    /// Canonical rendering: `0`, `Z`, `Z^3`, `Z + Z/4`, `Z/3 + Z/3`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Result of `order_in_quotient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

struct SnfDecomposition {
    diag: Vec<BigInt>,
    rank: usize,
    /// U with U * A * V = D (row operations applied to the identity).
    left: Option<Vec<Vec<BigInt>>>,
    /// V (column operations applied to the identity).
    right: Option<Vec<Vec<BigInt>>>,
}

fn row_axpy(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src_row = a[src].clone();
    for (d, s) in a[dst].iter_mut().zip(src_row.iter()) {
        *d -= q * s;
    }
}

fn col_axpy(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * s;
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Smith reduction with deterministic minimal-absolute-value pivoting
/// (row-major scan; first minimal entry wins).
fn snf_decompose(m: &IntegerMatrix, want_left: bool, want_right: bool) -> SnfDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.to_dense();
    let mut left = want_left.then(|| {
        let mut u = vec![vec![BigInt::zero(); rows]; rows];
        for (i, row) in u.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        u
    });
    let mut right = want_right.then(|| {
        let mut v = vec![vec![BigInt::zero(); cols]; cols];
        for (i, row) in v.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        v
    });

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // deterministic pivot: minimal |entry| in the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => a[i][j].abs() < a[pi][pj].abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        if let Some(u) = left.as_mut() {
            u.swap(t, pi);
        }
        swap_cols(&mut a, t, pj);
        if let Some(v) = right.as_mut() {
            swap_cols(v, t, pj);
        }

        'reduce: loop {
            // clear the pivot column
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].div_rem(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                if let Some(u) = left.as_mut() {
                    row_axpy(u, i, t, &q);
                }
                if !r.is_zero() {
                    a.swap(t, i);
                    if let Some(u) = left.as_mut() {
                        u.swap(t, i);
                    }
                    continue 'reduce;
                }
            }
            // clear the pivot row
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].div_rem(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                if let Some(v) = right.as_mut() {
                    col_axpy(v, j, t, &q);
                }
                if !r.is_zero() {
                    swap_cols(&mut a, t, j);
                    if let Some(v) = right.as_mut() {
                        swap_cols(v, t, j);
                    }
                    continue 'reduce;
                }
            }
            // enforce divisibility of the trailing submatrix by the pivot
            let mut fixed = true;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        // fold the offending row into the pivot row
                        let minus_one = -BigInt::one();
                        row_axpy(&mut a, t, i, &minus_one);
                        if let Some(u) = left.as_mut() {
                            row_axpy(u, t, i, &minus_one);
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            if let Some(u) = left.as_mut() {
                for x in u[t].iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        t += 1;
    }

    let mut diag = Vec::new();
    for i in 0..n {
        if a[i][i].is_zero() {
            break;
        }
        diag.push(a[i][i].clone());
    }
    let rank = diag.len();
    SnfDecomposition { diag, rank, left, right }
}

/// Smith normal form: nonzero invariant factors in divisibility order.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let d = snf_decompose(m, false, false);
    SmithForm { invariants: d.diag, rank: d.rank }
}

/// Rank over the rationals (= number of nonzero invariant factors).
pub fn rank(m: &IntegerMatrix) -> usize {
    smith_normal_form(m).rank
}

/// Homology at C_n of the pair `d_n: C_n -> C_{n-1}`, `d_succ: C_{n+1} -> C_n`.
///
/// Checks d_n ∘ d_succ = 0 and returns ker d_n / im d_succ in canonical form:
/// free rank = nullity(d_n) - rank(d_succ), torsion = invariant factors of
/// d_succ exceeding one.
pub fn homology_at(d_n: &IntegerMatrix, d_succ: &IntegerMatrix) -> Result<AbelianGroup> {
    if d_n.cols() != d_succ.rows() {
        return Err(Error::InvalidArgument(format!(
            "chain group mismatch: d_n has {} columns, d_succ has {} rows",
            d_n.cols(),
            d_succ.rows()
        )));
    }
    if !d_n.mul(d_succ)?.is_zero() {
        return Err(Error::CompositionNotZero);
    }
    let nullity = d_n.cols() - rank(d_n);
    let snf_succ = smith_normal_form(d_succ);
    let torsion: Vec<u64> = snf_succ
        .invariants
        .iter()
        .filter(|d| **d > BigInt::one())
        .map(|d| {
            d.to_string()
                .parse::<u64>()
                .expect("torsion invariant exceeds u64; not expected at desk scale")
        })
        .collect();
    Ok(AbelianGroup { free_rank: nullity - snf_succ.rank, torsion })
}

/// A free basis of the integer kernel lattice, in Hermite-reduced canonical
/// form (pivot entries positive, entries above a pivot reduced into
/// [0, pivot), rows ordered by pivot column).
pub fn kernel_basis(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let d = snf_decompose(m, false, true);
    let v = d.right.expect("right transform requested");
    let n = m.cols();
    let gens: Vec<Vec<BigInt>> = (d.rank..n).map(|j| (0..n).map(|i| v[i][j].clone()).collect()).collect();
    hermite_reduce(gens)
}

/// Row-style Hermite normal form of a full-rank lattice basis.
fn hermite_reduce(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    let ncols = rows[0].len();
    let nrows = rows.len();
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == nrows {
            break;
        }
        // gcd out the column below pivot_row
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in rows.iter().enumerate().skip(pivot_row) {
                if !row[col].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if row[col].abs() < rows[b][col].abs() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let mut any = false;
            for i in pivot_row + 1..nrows {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_rem(&rows[pivot_row][col]).0;
                let src = rows[pivot_row].clone();
                for (d, s) in rows[i].iter_mut().zip(src.iter()) {
                    *d -= &q * s;
                }
                if !rows[i][col].is_zero() {
                    any = true;
                }
            }
            if !any {
                break;
            }
        }
        if rows[pivot_row][col].is_zero() {
            continue;
        }
        if rows[pivot_row][col].is_negative() {
            for x in rows[pivot_row].iter_mut() {
                *x = -x.clone();
            }
        }
        // reduce entries above the pivot into [0, pivot)
        let pivot = rows[pivot_row][col].clone();
        for i in 0..pivot_row {
            let q = rows[i][col].div_mod_floor(&pivot).0;
            if q.is_zero() {
                continue;
            }
            let src = rows[pivot_row].clone();
            for (d, s) in rows[i].iter_mut().zip(src.iter()) {
                *d -= &q * s;
            }
        }
        pivot_row += 1;
    }
    rows
}

/// The quotient of the target lattice Z^rows by the column span of `m`.
pub fn cokernel(m: &IntegerMatrix) -> AbelianGroup {
    let snf = smith_normal_form(m);
    let torsion: Vec<u64> = snf
        .invariants
        .iter()
        .filter(|d| **d > BigInt::one())
        .map(|d| d.to_string().parse::<u64>().expect("torsion fits u64"))
        .collect();
    AbelianGroup { free_rank: m.rows() - snf.rank, torsion }
}

/// Least n >= 1 with n*v in the column span of `m`, or `Infinite`.
pub fn order_in_quotient(m: &IntegerMatrix, v: &[BigInt]) -> Result<Order> {
    if v.len() != m.rows() {
        return Err(Error::InvalidArgument(format!(
            "vector length {} does not match row count {}",
            v.len(),
            m.rows()
        )));
    }
    let d = snf_decompose(m, true, false);
    let u = d.left.expect("left transform requested");
    // w = U v; n v lies in im(m) iff d_i | n w_i for i < rank and w_i = 0 after
    let mut order = BigInt::one();
    for (i, urow) in u.iter().enumerate() {
        let mut w = BigInt::zero();
        for (uc, vc) in urow.iter().zip(v.iter()) {
            w += uc * vc;
        }
        if i < d.rank {
            let g = w.gcd(&d.diag[i]);
            let need = &d.diag[i] / g;
            order = order.lcm(&need);
        } else if !w.is_zero() {
            return Ok(Order::Infinite);
        }
    }
    Ok(Order::Finite(order))
}

/// Universal coefficients: H^i = Z^{rank H_i} ⊕ torsion(H_{i-1}).
pub fn uct_cohomology(homology: &[AbelianGroup]) -> Vec<AbelianGroup> {
    (0..homology.len())
        .map(|i| {
            let free = homology[i].free_rank;
            let torsion = if i > 0 { homology[i - 1].torsion.clone() } else { Vec::new() };
            AbelianGroup { free_rank: free, torsion }
        })
        .collect()
}
