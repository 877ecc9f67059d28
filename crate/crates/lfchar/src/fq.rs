//! Dense linear algebra over prime fields F_q, sized for the small matrices
//! that arise here (dimensions stay well below 200).

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Arithmetic context for F_q, q prime, with a cached inverse table.
#[derive(Debug, Clone)]
pub struct Fp {
    pub q: u64,
    inv: Vec<u64>,
}

impl Fp {
    pub fn new(q: u64) -> Result<Fp, FieldError> {
        if q < 2 || (2..q).take_while(|d| d * d <= q).any(|d| q % d == 0) {
            return Err(FieldError::NotPrime(q));
        }
        let mut inv = vec![0u64; q as usize];
        if q > 1 {
            inv[1] = 1;
            for a in 2..q {
                // inv[a] = -(q/a) * inv[q % a] mod q
                inv[a as usize] = (q - (q / a) * inv[(q % a) as usize] % q) % q;
            }
        }
        Ok(Fp { q, inv })
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.q as i64) as u64
    }
}

/// Dense row-major matrix over F_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<u64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            a: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Mat {
            rows: r,
            cols: c,
            a: rows.iter().flatten().copied().collect(),
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Mat, fp: &Fp) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.at(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = fp.add(out.at(i, j), fp.mul(x, other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Mat, fp: &Fp) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, &y) in out.a.iter_mut().zip(other.a.iter()) {
            *x = fp.sub(*x, y);
        }
        out
    }

    pub fn add(&self, other: &Mat, fp: &Fp) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, &y) in out.a.iter_mut().zip(other.a.iter()) {
            *x = fp.add(*x, y);
        }
        out
    }

    pub fn pow(&self, e: usize, fp: &Fp) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut out = Mat::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self, fp);
        }
        out
    }

    /// Reduces in place to row echelon form; returns pivot column indices.
    pub fn row_echelon(&mut self, fp: &Fp) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let piv = (r..self.rows).find(|&i| self.at(i, c) != 0);
            let Some(piv) = piv else { continue };
            self.swap_rows(r, piv);
            let inv = fp.inv(self.at(r, c));
            for j in c..self.cols {
                let v = fp.mul(self.at(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && self.at(i, c) != 0 {
                    let f = self.at(i, c);
                    for j in c..self.cols {
                        let v = fp.sub(self.at(i, j), fp.mul(f, self.at(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn rank(&self, fp: &Fp) -> usize {
        let mut m = self.clone();
        m.row_echelon(fp).len()
    }

    /// Basis of the right kernel {x : self * x = 0}, one basis vector per row.
    pub fn kernel_basis(&self, fp: &Fp) -> Mat {
        let mut m = self.clone();
        let pivots = m.row_echelon(fp);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, fp.neg(m.at(r, fc)));
            }
        }
        out
    }

    /// Determinant (square matrices).
    pub fn det(&self, fp: &Fp) -> u64 {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = 1u64;
        for c in 0..m.cols {
            let piv = (c..m.rows).find(|&i| m.at(i, c) != 0);
            let Some(piv) = piv else { return 0 };
            if piv != c {
                m.swap_rows(c, piv);
                det = fp.neg(det);
            }
            det = fp.mul(det, m.at(c, c));
            let inv = fp.inv(m.at(c, c));
            for i in (c + 1)..m.rows {
                if m.at(i, c) != 0 {
                    let f = fp.mul(m.at(i, c), inv);
                    for j in c..m.cols {
                        let v = fp.sub(m.at(i, j), fp.mul(f, m.at(c, j)));
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    /// Inverse of a square matrix, or None if singular.
    pub fn inverse(&self, fp: &Fp) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.row_echelon(fp);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.at(i, n + j));
            }
        }
        Some(out)
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }
}

/// Canonical nilpotent action of ε on a free rank-r module over F_q[ε]/(ε^c):
/// basis e_{s,t} (block s, power t) with ε e_{s,t} = e_{s,t+1}.
pub fn canonical_eps(c: usize, r: usize) -> Mat {
    let d = c * r;
    let mut m = Mat::zeros(d, d);
    for s in 0..r {
        for t in 0..(c - 1) {
            m.set(s * c + t + 1, s * c + t, 1);
        }
    }
    m
}

/// Reduces `v` against echelonized `rows` (unit at `unit_cols[k]` for row k,
/// zero at the other unit columns). Returns true iff v reduces to zero.
pub fn reduces_to_zero(v: &mut [u64], rows: &Mat, unit_cols: &[usize], fp: &Fp) -> bool {
    for (k, &uc) in unit_cols.iter().enumerate() {
        let coef = v[uc];
        if coef != 0 {
            for (x, &r) in v.iter_mut().zip(rows.row(k).iter()) {
                *x = fp.sub(*x, fp.mul(coef, r));
            }
        }
    }
    v.iter().all(|&x| x == 0)
}
