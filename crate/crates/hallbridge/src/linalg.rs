//! Dense linear algebra over the prime field F_p for small p.
//!
//! Matrices are tiny throughout the crate (dimensions rarely above ten), so
//! everything is a straightforward row-major `Vec<u8>` with explicit Gaussian
//! elimination.  The prime is passed to each operation rather than stored per
//! matrix; all callers work inside a context that fixes p.

use crate::{Error, Result};

/// Row-major matrix over F_p with entries in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<u8>,
}

/// Inverse of `a` modulo the prime `p` (small p: linear search is fine).
pub fn mod_inv(a: u8, p: u32) -> u8 {
    debug_assert!(a != 0);
    for x in 1..p {
        if (a as u32 * x) % p == 1 {
            return x as u8;
        }
    }
    unreachable!("{} is not invertible mod {}", a, p)
}

impl FpMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FpMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FpMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u8>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        FpMat {
            rows: r,
            cols,
            data,
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &FpMat, p: u32) -> FpMat {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch in mul");
        let mut out = FpMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k) as u32;
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cur = out.entry(i, j) as u32;
                    out.set(i, j, ((cur + a * rhs.entry(k, j) as u32) % p) as u8);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &FpMat, p: u32) -> FpMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| ((a as u32 + b as u32) % p) as u8)
            .collect();
        FpMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &FpMat, p: u32) -> FpMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| ((a as u32 + p - b as u32) % p) as u8)
            .collect();
        FpMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self, p: u32) -> FpMat {
        let data = self
            .data
            .iter()
            .map(|&a| ((p - a as u32) % p) as u8)
            .collect();
        FpMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: u8, p: u32) -> FpMat {
        let data = self
            .data
            .iter()
            .map(|&a| ((a as u32 * c as u32) % p) as u8)
            .collect();
        FpMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> FpMat {
        let mut out = FpMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.entry(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self, p: u32) -> (FpMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // find pivot
            let mut piv = None;
            for i in r..m.rows {
                if m.entry(i, c) != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let Some(piv) = piv else { continue };
            // swap rows
            if piv != r {
                for j in 0..m.cols {
                    let (a, b) = (m.entry(r, j), m.entry(piv, j));
                    m.set(r, j, b);
                    m.set(piv, j, a);
                }
            }
            // normalize
            let inv = mod_inv(m.entry(r, c), p);
            for j in 0..m.cols {
                m.set(r, j, ((m.entry(r, j) as u32 * inv as u32) % p) as u8);
            }
            // eliminate everywhere else
            for i in 0..m.rows {
                if i != r && m.entry(i, c) != 0 {
                    let f = m.entry(i, c) as u32;
                    for j in 0..m.cols {
                        let val = (m.entry(i, j) as u32 + (p - f % p) * m.entry(r, j) as u32) % p;
                        m.set(i, j, val as u8);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, p: u32) -> usize {
        self.rref(p).1.len()
    }

    /// Row-reduce and drop the zero rows: an independent basis of the row
    /// space, in reduced echelon form.
    pub fn row_basis(&self, p: u32) -> FpMat {
        let (r, pivots) = self.rref(p);
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        FpMat::from_rows(rows, self.cols)
    }

    /// Basis of the right kernel `{x : A x = 0}`, one basis vector per row.
    pub fn kernel_basis(&self, p: u32) -> FpMat {
        let (r, pivots) = self.rref(p);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::new();
        for &f in &free {
            let mut v = vec![0u8; self.cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                // pivot variable = -sum of free contributions
                let coeff = r.entry(i, f) as u32;
                v[pc] = ((p - coeff % p) % p) as u8;
            }
            rows.push(v);
        }
        FpMat::from_rows(rows, self.cols)
    }

    /// One solution `x` of `A x = b` (column vector), if any.
    pub fn solve(&self, b: &[u8], p: u32) -> Option<Vec<u8>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FpMat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.entry(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref(p);
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![0u8; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.entry(i, self.cols);
        }
        Some(x)
    }

    pub fn is_invertible(&self, p: u32) -> bool {
        self.rows == self.cols && self.rank(p) == self.rows
    }

    pub fn inverse(&self, p: u32) -> Option<FpMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.entry(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref(p);
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut inv = FpMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.entry(i, n + j));
            }
        }
        Some(inv)
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &FpMat) -> FpMat {
        let mut out = FpMat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.entry(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.entry(i, j));
            }
        }
        out
    }

    /// 2x2 block matrix [[a, b], [0, d]] with compatible shapes.
    pub fn upper_block(a: &FpMat, b: &FpMat, d: &FpMat) -> FpMat {
        assert_eq!(a.rows, b.rows);
        assert_eq!(d.cols, b.cols);
        let mut out = FpMat::zeros(a.rows + d.rows, a.cols + d.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.set(i, j, a.entry(i, j));
            }
            for j in 0..b.cols {
                out.set(i, a.cols + j, b.entry(i, j));
            }
        }
        for i in 0..d.rows {
            for j in 0..d.cols {
                out.set(a.rows + i, a.cols + j, d.entry(i, j));
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[u8], p: u32) -> Vec<u8> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = 0u32;
                for j in 0..self.cols {
                    s = (s + self.entry(i, j) as u32 * x[j] as u32) % p;
                }
                s as u8
            })
            .collect()
    }
}

/// All `rows x cols` matrices over F_p, in lexicographic order of their
/// row-major data.  The caller is responsible for keeping `p^(rows*cols)`
/// within budget.
pub fn all_matrices(rows: usize, cols: usize, p: u32) -> Vec<FpMat> {
    let n = rows * cols;
    let total = (p as u64)
        .checked_pow(n as u32)
        .expect("matrix enumeration overflow");
    let mut out = Vec::with_capacity(total as usize);
    let mut data = vec![0u8; n];
    loop {
        out.push(FpMat {
            rows,
            cols,
            data: data.clone(),
        });
        // increment base-p counter (big-endian so the order is lexicographic)
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (data[i] as u32) + 1 < p {
                data[i] += 1;
                break;
            }
            data[i] = 0;
        }
    }
}

/// All invertible `n x n` matrices with their inverses.  Guarded: the raw
/// enumeration `p^(n^2)` must stay below 2^20.
pub fn general_linear_group(n: usize, p: u32) -> Result<Vec<(FpMat, FpMat)>> {
    let size = (p as f64).powi((n * n) as i32);
    if size > (1u64 << 20) as f64 {
        return Err(Error::Resource(format!(
            "GL({n}, F_{p}) enumeration needs {size:.0} matrix candidates"
        )));
    }
    Ok(all_matrices(n, n, p)
        .into_iter()
        .filter_map(|m| m.inverse(p).map(|inv| (m, inv)))
        .collect())
}

/// All k-dimensional subspaces of F_p^n, each given by its reduced row
/// echelon basis (k rows of length n).
pub fn subspaces_of_dim(n: usize, k: usize, p: u32) -> Vec<FpMat> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![FpMat::zeros(0, n)];
    }
    let mut out = Vec::new();
    // choose pivot columns p_1 < ... < p_k, then fill the free entries:
    // row i may be nonzero only right of pivot i, at non-pivot columns.
    let mut pivots = (0..k).collect::<Vec<usize>>();
    loop {
        let mut free_positions = Vec::new();
        for (i, &pi) in pivots.iter().enumerate() {
            for c in pi + 1..n {
                if !pivots.contains(&c) {
                    free_positions.push((i, c));
                }
            }
        }
        let nfree = free_positions.len();
        let total = (p as u64).pow(nfree as u32);
        for mut code in 0..total {
            let mut m = FpMat::zeros(k, n);
            for (i, &pi) in pivots.iter().enumerate() {
                m.set(i, pi, 1);
            }
            for &(i, c) in &free_positions {
                m.set(i, c, (code % p as u64) as u8);
                code /= p as u64;
            }
            out.push(m);
        }
        // next combination of pivot columns
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] + 1 <= n - (k - i) {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Coordinates of `v` in the span of the rref `basis` rows, if it lies there.
pub fn coordinates_in_rref(basis: &FpMat, v: &[u8], p: u32) -> Option<Vec<u8>> {
    // Solve basis^T c = v.
    basis.transpose().solve(v, p)
}
