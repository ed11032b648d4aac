//! Minimum-norm linear least squares.
//!
//! `A P = Q R` by Householder QR with column pivoting, numerical rank from
//! the diagonal of `R`, then a complete orthogonal decomposition of the
//! leading `rank` rows (`[R11 R12] = [T 0] Z`) so that rank-deficient systems
//! return the minimum-norm solution. One factorization serves any number of
//! right-hand sides.

use alloc::vec::Vec;

use crate::matrix::Matrix;

/// Relative threshold on `|R_jj| / |R_00|` below which a pivot is treated
/// as zero.
pub const DEFAULT_RCOND: f64 = 1e-10;

#[derive(Debug, Clone)]
struct Reflector {
    tau: f64,
    /// Tail of the Householder vector (the head is an implicit 1).
    tail: Vec<f64>,
}

/// Reusable factorization of an `m × d` design matrix.
#[derive(Debug, Clone)]
pub struct LeastSquares {
    m: usize,
    d: usize,
    /// Column-major `m × d`; after factoring, the upper triangle holds `R`.
    a: Vec<f64>,
    qr_taus: Vec<f64>,
    perm: Vec<usize>,
    rank: usize,
    rz: Vec<Reflector>,
}

impl LeastSquares {
    pub fn new(design: &Matrix) -> Self {
        Self::with_rcond(design, DEFAULT_RCOND)
    }

    pub fn with_rcond(design: &Matrix, rcond: f64) -> Self {
        let (m, d) = (design.rows(), design.cols());
        let mut a = alloc::vec![0.0; m * d];
        for i in 0..m {
            for j in 0..d {
                a[j * m + i] = design.get(i, j);
            }
        }
        let mut ls = Self {
            m,
            d,
            a,
            qr_taus: Vec::new(),
            perm: (0..d).collect(),
            rank: 0,
            rz: Vec::new(),
        };
        ls.factor_qrp();
        ls.rank = ls.numerical_rank(rcond);
        ls.factor_rz();
        ls
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cols(&self) -> usize {
        self.d
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[j * self.m + i]
    }

    fn factor_qrp(&mut self) {
        let (m, d) = (self.m, self.d);
        let steps = m.min(d);
        for k in 0..steps {
            // Pivot: remaining column with the largest trailing norm.
            let mut best = k;
            let mut best_norm = -1.0;
            for j in k..d {
                let col = &self.a[j * m + k..(j + 1) * m];
                let norm: f64 = col.iter().map(|v| v * v).sum();
                if norm > best_norm {
                    best_norm = norm;
                    best = j;
                }
            }
            if best != k {
                for i in 0..m {
                    self.a.swap(k * m + i, best * m + i);
                }
                self.perm.swap(k, best);
            }

            let (tau, beta) = {
                let col = &mut self.a[k * m + k..(k + 1) * m];
                householder(col)
            };
            self.qr_taus.push(tau);
            if tau != 0.0 {
                for j in k + 1..d {
                    // w = v^T a_j over rows k..m
                    let mut w = self.a[j * m + k];
                    for i in k + 1..m {
                        w += self.a[k * m + i] * self.a[j * m + i];
                    }
                    w *= tau;
                    self.a[j * m + k] -= w;
                    for i in k + 1..m {
                        self.a[j * m + i] -= w * self.a[k * m + i];
                    }
                }
            }
            self.a[k * m + k] = beta;
        }
    }

    fn numerical_rank(&self, rcond: f64) -> usize {
        let steps = self.m.min(self.d);
        if steps == 0 {
            return 0;
        }
        let r00 = libm::fabs(self.at(0, 0));
        if !(r00 > 0.0) {
            return 0;
        }
        (0..steps)
            .take_while(|&j| libm::fabs(self.at(j, j)) > rcond * r00)
            .count()
    }

    /// Zeros `R[0..rank, rank..d]` with reflectors applied from the right.
    fn factor_rz(&mut self) {
        let (r, d, m) = (self.rank, self.d, self.m);
        if r == d {
            return;
        }
        let mut rz = alloc::vec![Reflector { tau: 0.0, tail: Vec::new() }; r];
        for i in (0..r).rev() {
            let mut x = Vec::with_capacity(1 + d - r);
            x.push(self.at(i, i));
            for j in r..d {
                x.push(self.at(i, j));
            }
            let (tau, beta) = householder(&mut x);
            let tail = x[1..].to_vec();
            self.a[i * m + i] = beta;
            for j in r..d {
                self.a[j * m + i] = 0.0;
            }
            if tau != 0.0 {
                for k in 0..i {
                    let mut w = self.at(k, i);
                    for (jj, j) in (r..d).enumerate() {
                        w += tail[jj] * self.at(k, j);
                    }
                    w *= tau;
                    self.a[i * m + k] -= w;
                    for (jj, j) in (r..d).enumerate() {
                        self.a[j * m + k] -= w * tail[jj];
                    }
                }
            }
            rz[i] = Reflector { tau, tail };
        }
        self.rz = rz;
    }

    /// Minimum-norm `x` minimizing `‖A x − b‖₂`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.m, "right-hand side length");
        let (m, d, r) = (self.m, self.d, self.rank);
        let mut y = b.to_vec();
        // y <- Q^T b
        for (k, &tau) in self.qr_taus.iter().enumerate().take(r) {
            if tau == 0.0 {
                continue;
            }
            let mut w = y[k];
            for i in k + 1..m {
                w += self.a[k * m + i] * y[i];
            }
            w *= tau;
            y[k] -= w;
            for i in k + 1..m {
                y[i] -= w * self.a[k * m + i];
            }
        }
        // T z = y[0..r]
        let mut v = alloc::vec![0.0; d];
        for i in (0..r).rev() {
            let mut s = y[i];
            for j in i + 1..r {
                s -= self.at(i, j) * v[j];
            }
            v[i] = s / self.at(i, i);
        }
        // v <- Z [z; 0]
        if r < d {
            for (i, h) in self.rz.iter().enumerate() {
                if h.tau == 0.0 {
                    continue;
                }
                let mut w = v[i];
                for (jj, j) in (r..d).enumerate() {
                    w += h.tail[jj] * v[j];
                }
                w *= h.tau;
                v[i] -= w;
                for (jj, j) in (r..d).enumerate() {
                    v[j] -= w * h.tail[jj];
                }
            }
        }
        let mut x = alloc::vec![0.0; d];
        for (k, &p) in self.perm.iter().enumerate() {
            x[p] = v[k];
        }
        x
    }
}

/// Householder reflector `H = I − τ v vᵀ`, `v = [1; tail]`, with
/// `H x = β e₁`. On return `x[1..]` holds the tail. Returns `(τ, β)`.
fn householder(x: &mut [f64]) -> (f64, f64) {
    let alpha = x[0];
    let tail_norm = norm2(&x[1..]);
    if tail_norm == 0.0 {
        return (0.0, alpha);
    }
    let mut beta = libm::hypot(alpha, tail_norm);
    if alpha >= 0.0 {
        beta = -beta;
    }
    let tau = (beta - alpha) / beta;
    let scale = 1.0 / (alpha - beta);
    for v in &mut x[1..] {
        *v *= scale;
    }
    (tau, beta)
}

/// Euclidean norm with scaling against overflow.
fn norm2(x: &[f64]) -> f64 {
    let scale = x.iter().fold(0.0f64, |s, v| s.max(libm::fabs(*v)));
    if scale == 0.0 {
        return 0.0;
    }
    let ss: f64 = x.iter().map(|v| (v / scale) * (v / scale)).sum();
    scale * libm::sqrt(ss)
}
