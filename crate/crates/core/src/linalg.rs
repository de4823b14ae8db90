//! Small dense complex matrices (dimension 2 or 4) without heap allocation.

use core::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_traits::Float;

pub use num_complex::Complex64 as C64;

/// Largest supported dimension.
pub const MAX_DIM: usize = 4;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Row-major complex matrix stored inline; only the leading `dim × dim`
/// block is meaningful.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: [C64; MAX_DIM * MAX_DIM],
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "unsupported dimension {dim}");
        CMatrix {
            dim,
            data: [ZERO; MAX_DIM * MAX_DIM],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Builds a matrix from real rows; `rows.len()` is the dimension.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        Self::from_fn(dim, |r, c| C64::new(rows[r][c], 0.0))
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(*v, 0.0);
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = *self;
        for r in 0..self.dim {
            for c in 0..self.dim {
                out[(r, c)] *= k;
            }
        }
        out
    }

    pub fn scale_c(&self, k: C64) -> Self {
        let mut out = *self;
        for r in 0..self.dim {
            for c in 0..self.dim {
                out[(r, c)] *= k;
            }
        }
        out
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        let mut acc = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                acc += self[(r, c)].norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        let mut m: f64 = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                m = m.max(self[(r, c)].norm());
            }
        }
        m
    }

    /// `‖A − A†‖` (Frobenius).
    pub fn hermitian_deviation(&self) -> f64 {
        (*self - self.adjoint()).norm()
    }

    /// `‖A + A†‖` (Frobenius).
    pub fn anti_hermitian_deviation(&self) -> f64 {
        (*self + self.adjoint()).norm()
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale(0.5)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Kronecker product of two square matrices; the result must fit in `MAX_DIM`.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        Self::from_fn(a * b, |r, c| self[(r / b, c / b)] * other[(r % b, c % b)])
    }

    pub fn column(&self, c: usize) -> [C64; MAX_DIM] {
        let mut v = [ZERO; MAX_DIM];
        for (r, slot) in v.iter_mut().enumerate().take(self.dim) {
            *slot = self[(r, c)];
        }
        v
    }

    pub fn set_column(&mut self, c: usize, v: &[C64]) {
        for r in 0..self.dim {
            self[(r, c)] = v[r];
        }
    }

    /// Real part of the diagonal.
    pub fn real_diagonal(&self) -> [f64; MAX_DIM] {
        let mut d = [0.0; MAX_DIM];
        for (i, slot) in d.iter_mut().enumerate().take(self.dim) {
            *slot = self[(i, i)].re;
        }
        d
    }

    /// Determinant (dimension ≤ 4) by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> C64 {
        let n = self.dim;
        let mut a = *self;
        let mut det = ONE;
        for col in 0..n {
            let mut pivot = col;
            for r in col + 1..n {
                if a[(r, col)].norm() > a[(pivot, col)].norm() {
                    pivot = r;
                }
            }
            if a[(pivot, col)].norm() == 0.0 {
                return ZERO;
            }
            if pivot != col {
                for c in 0..n {
                    let tmp = a[(col, c)];
                    a[(col, c)] = a[(pivot, c)];
                    a[(pivot, c)] = tmp;
                }
                det = -det;
            }
            let p = a[(col, col)];
            det *= p;
            for r in col + 1..n {
                let f = a[(r, col)] / p;
                for c in col..n {
                    let v = a[(col, c)];
                    a[(r, c)] -= f * v;
                }
            }
        }
        det
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * MAX_DIM + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * MAX_DIM + c]
    }
}

impl Add for CMatrix {
    type Output = CMatrix;
    fn add(mut self, rhs: CMatrix) -> CMatrix {
        self += rhs;
        self
    }
}

impl AddAssign for CMatrix {
    fn add_assign(&mut self, rhs: CMatrix) {
        debug_assert_eq!(self.dim, rhs.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                self[(r, c)] += rhs[(r, c)];
            }
        }
    }
}

impl Sub for CMatrix {
    type Output = CMatrix;
    fn sub(mut self, rhs: CMatrix) -> CMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                self[(r, c)] -= rhs[(r, c)];
            }
        }
        self
    }
}

impl Neg for CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale(-1.0)
    }
}

impl Mul for CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: CMatrix) -> CMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        out
    }
}

/// Pauli σx.
pub fn sigma_x() -> CMatrix {
    CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

/// Pauli σz in the (|↑⟩, |↓⟩) ordering.
pub fn sigma_z() -> CMatrix {
    CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
}

/// Eigen-decomposition of a Hermitian matrix: eigenvalues ascending, columns of
/// `vectors` the corresponding orthonormal eigenvectors. No gauge is imposed.
#[derive(Clone, Copy, Debug)]
pub struct HermitianEigen {
    pub values: [f64; MAX_DIM],
    pub vectors: CMatrix,
}

/// Cyclic complex Jacobi iteration. The input is assumed Hermitian; only its
/// Hermitian part is used.
pub fn jacobi_eigh(a: &CMatrix) -> HermitianEigen {
    let n = a.dim();
    let mut m = a.hermitian_part();
    let mut v = CMatrix::identity(n);
    let scale = m.norm().max(f64::MIN_POSITIVE);

    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let b = apq.norm();
                if b <= 1e-300 {
                    continue;
                }
                let phase = apq / b;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * b);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G = [[c, s·e^{iφ}], [−s·e^{−iφ}, c]] on (p, q); M ← G†MG, V ← VG.
                let gpq = phase * s;
                let gqp = -phase.conj() * s;
                for r in 0..n {
                    let mp = m[(r, p)];
                    let mq = m[(r, q)];
                    m[(r, p)] = mp * c + mq * gqp;
                    m[(r, q)] = mp * gpq + mq * c;
                    let vp = v[(r, p)];
                    let vq = v[(r, q)];
                    v[(r, p)] = vp * c + vq * gqp;
                    v[(r, q)] = vp * gpq + vq * c;
                }
                for col in 0..n {
                    let mp = m[(p, col)];
                    let mq = m[(q, col)];
                    m[(p, col)] = mp * c + mq * gqp.conj();
                    m[(q, col)] = mp * gpq.conj() + mq * c;
                }
                m[(p, q)] = ZERO;
                m[(q, p)] = ZERO;
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    let diag = m.real_diagonal();
    order[..n].sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let mut values = [0.0; MAX_DIM];
    let mut vectors = CMatrix::zeros(n);
    for (k, &src) in order[..n].iter().enumerate() {
        values[k] = diag[src];
        vectors.set_column(k, &v.column(src)[..n]);
    }
    HermitianEigen { values, vectors }
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(a: &CMatrix) -> f64 {
    if a.dim() == 2 {
        let p = a[(0, 0)].re;
        let q = a[(1, 1)].re;
        let b = (a[(0, 1)] + a[(1, 0)].conj()) * 0.5;
        let half = 0.5 * (p - q);
        0.5 * (p + q) - (half * half + b.norm_sqr()).sqrt()
    } else {
        jacobi_eigh(a).values[0]
    }
}
