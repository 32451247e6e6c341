//! Symmetric banded matrices, banded Cholesky and inverse iteration for the
//! smallest eigenpair of a symmetric-definite pencil.

use crate::error::{Error, Result};
use crate::real::{lit, Real};

/// Symmetric matrix storing the lower band: entry (i, j) with `i - bw <= j <= i`.
#[derive(Debug, Clone)]
pub struct SymBand<T> {
    n: usize,
    bw: usize,
    data: Vec<T>,
}

impl<T: Real> SymBand<T> {
    pub fn zeros(n: usize, bw: usize) -> Self {
        Self { n, bw, data: vec![T::zero(); n * (bw + 1)] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize) -> Option<usize> {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        (i - j <= self.bw).then(|| i * (self.bw + 1) + (i - j))
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.idx(i, j).map_or(T::zero(), |k| self.data[k])
    }

    /// Adds `v` to entry (i, j) (and implicitly (j, i)).
    pub fn add(&mut self, i: usize, j: usize, v: T) {
        let k = self.idx(i, j).expect("entry outside band");
        self.data[k] += v;
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.n];
        for i in 0..self.n {
            let lo = i.saturating_sub(self.bw);
            for j in lo..=i {
                let a = self.data[i * (self.bw + 1) + (i - j)];
                y[i] += a * x[j];
                if j != i {
                    y[j] += a * x[i];
                }
            }
        }
        y
    }

    pub fn quad(&self, x: &[T], y: &[T]) -> T {
        dot(&self.matvec(x), y)
    }

    /// `self - c * other` on the common band.
    pub fn sub_scaled(&self, other: &SymBand<T>, c: T) -> SymBand<T> {
        assert_eq!(self.n, other.n);
        let bw = self.bw.max(other.bw);
        let mut out = SymBand::zeros(self.n, bw);
        for i in 0..self.n {
            for j in i.saturating_sub(bw)..=i {
                let v = self.get(i, j) - c * other.get(i, j);
                out.data[i * (bw + 1) + (i - j)] = v;
            }
        }
        out
    }

    /// Drops the listed rows/columns (Dirichlet constraints).
    pub fn restrict(&self, keep: &[usize]) -> SymBand<T> {
        let m = keep.len();
        let mut out = SymBand::zeros(m, self.bw);
        for a in 0..m {
            for b in a.saturating_sub(self.bw)..=a {
                let (i, j) = (keep[a], keep[b]);
                if i - j <= self.bw && a - b <= self.bw {
                    out.data[a * (self.bw + 1) + (a - b)] = self.get(i, j);
                }
            }
        }
        out
    }

    pub fn cholesky(&self) -> Result<BandCholesky<T>> {
        let (n, bw) = (self.n, self.bw);
        let mut l = self.data.clone();
        let at = |i: usize, j: usize| i * (bw + 1) + (i - j);
        for j in 0..n {
            let mut d = l[at(j, j)];
            for k in j.saturating_sub(bw)..j {
                let v = l[at(j, k)];
                d -= v * v;
            }
            if !(d > T::zero()) {
                return Err(Error::SingularForm(format!("pivot {j} is {d:e}")));
            }
            let d = d.sqrt();
            l[at(j, j)] = d;
            for i in j + 1..(j + bw + 1).min(n) {
                let mut v = l[at(i, j)];
                for k in i.saturating_sub(bw)..j {
                    v -= l[at(i, k)] * l[at(j, k)];
                }
                l[at(i, j)] = v / d;
            }
        }
        Ok(BandCholesky { n, bw, l })
    }
}

#[derive(Debug, Clone)]
pub struct BandCholesky<T> {
    n: usize,
    bw: usize,
    l: Vec<T>,
}

impl<T: Real> BandCholesky<T> {
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let (n, bw) = (self.n, self.bw);
        let at = |i: usize, j: usize| i * (bw + 1) + (i - j);
        let mut y = b.to_vec();
        for i in 0..n {
            let mut v = y[i];
            for k in i.saturating_sub(bw)..i {
                v -= self.l[at(i, k)] * y[k];
            }
            y[i] = v / self.l[at(i, i)];
        }
        for i in (0..n).rev() {
            let mut v = y[i];
            for k in i + 1..(i + bw + 1).min(n) {
                v -= self.l[at(k, i)] * y[k];
            }
            y[i] = v / self.l[at(i, i)];
        }
        y
    }
}

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

const STALL_ITERATIONS: usize = 40;

/// Smallest eigenpair of `K w = mu M w`, optionally restricted to `c^T w = 0`.
#[derive(Debug, Clone)]
pub struct EigenPair<T> {
    pub value: T,
    pub vector: Vec<T>,
    pub iterations: usize,
    /// ||K w - mu M w|| / ||K w|| at exit.
    pub residual: T,
}

/// Action of a symmetric operator, used when a matrix-free product is more accurate
/// than the assembled band.
pub trait LinearOperator<T> {
    fn apply(&self, x: &[T]) -> Vec<T>;
}

impl<T: Real> LinearOperator<T> for SymBand<T> {
    fn apply(&self, x: &[T]) -> Vec<T> {
        self.matvec(x)
    }
}

pub fn smallest_eigenpair<T: Real>(
    k: &SymBand<T>,
    m: &SymBand<T>,
    constraint: Option<&[T]>,
    tol: T,
    max_iter: usize,
) -> Result<EigenPair<T>> {
    smallest_eigenpair_with(k, k, m, constraint, tol, max_iter, 0)
}

/// Inverse iteration preconditioned by the Cholesky factor of `k_band`, with `refine`
/// steps of iterative refinement against the operator `k_op` in every solve.
pub fn smallest_eigenpair_with<T: Real>(
    k_band: &SymBand<T>,
    k_op: &dyn LinearOperator<T>,
    m_op: &dyn LinearOperator<T>,
    constraint: Option<&[T]>,
    tol: T,
    max_iter: usize,
    refine: usize,
) -> Result<EigenPair<T>> {
    let n = k_band.dim();
    let chol = k_band.cholesky()?;
    let solve = |b: &[T]| -> Vec<T> {
        let mut x = chol.solve(b);
        for _ in 0..refine {
            let kx = k_op.apply(&x);
            let r: Vec<T> = b.iter().zip(&kx).map(|(&bi, &ki)| bi - ki).collect();
            let dx = chol.solve(&r);
            x.iter_mut().zip(&dx).for_each(|(xi, &d)| *xi += d);
        }
        x
    };
    let z = constraint.map(|c| (solve(c), c));
    let project = |y: Vec<T>| -> Vec<T> {
        match &z {
            Some((zc, c)) => {
                let t = dot(c, &y) / dot(c, zc);
                y.iter().zip(zc).map(|(&a, &b)| a - t * b).collect()
            }
            None => y,
        }
    };
    // deterministic start vector with components along every smooth mode
    let mut w: Vec<T> = (0..n)
        .map(|i| {
            let t = (i as f64 + 0.5) / n as f64;
            lit::<T>(1.0 + 0.3 * (7.0 * t).sin() + 0.1 * ((i * 7919) % 101) as f64 / 101.0)
        })
        .collect();
    if z.is_some() {
        w = project(solve(&m_op.apply(&w)));
    }
    let mut mu = T::infinity();
    let mut residual = T::infinity();
    let mut best = T::infinity();
    let mut since_best = 0usize;
    let mut mw = m_op.apply(&w);
    for it in 1..=max_iter {
        let y = project(solve(&mw));
        let norm = dot(&y, &m_op.apply(&y)).sqrt();
        if !(norm > T::zero()) {
            return Err(Error::SingularForm("inverse iteration collapsed".into()));
        }
        w = y.iter().map(|&v| v / norm).collect();
        let kw = k_op.apply(&w);
        mw = m_op.apply(&w);
        let new_mu = dot(&kw, &w) / dot(&mw, &w);
        let r: Vec<T> = kw.iter().zip(&mw).map(|(&a, &b)| a - new_mu * b).collect();
        let r = match constraint {
            // the residual of a constrained problem lives in the orthogonal complement of c
            Some(c) => {
                let t = dot(c, &r) / dot(c, c);
                r.iter().zip(c).map(|(&a, &b)| a - t * b).collect()
            }
            None => r,
        };
        residual = dot(&r, &r).sqrt() / dot(&kw, &kw).sqrt();
        let change = (new_mu - mu).abs();
        mu = new_mu;
        if change <= tol * mu.abs() && residual <= tol.sqrt() {
            return Ok(EigenPair { value: mu, vector: w, iterations: it, residual });
        }
        // ill-conditioned K: the residual reaches a rounding floor before the tolerance
        if residual < best * lit(0.99) {
            best = residual;
            since_best = 0;
        } else {
            since_best += 1;
            if since_best >= STALL_ITERATIONS {
                return Ok(EigenPair { value: mu, vector: w, iterations: it, residual });
            }
        }
    }
    Ok(EigenPair { value: mu, vector: w, iterations: max_iter, residual })
}

/// Determinant of a small dense matrix by Gaussian elimination with partial pivoting.
pub fn det_dense<T: Real, const N: usize>(mut a: [[T; N]; N]) -> T {
    let mut det = T::one();
    for col in 0..N {
        let piv = (col..N)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if a[piv][col] == T::zero() {
            return T::zero();
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..N {
            let f = a[r][col] / a[col][col];
            for c in col..N {
                let v = a[col][c];
                a[r][c] -= f * v;
            }
        }
    }
    det
}
