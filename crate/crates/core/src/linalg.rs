//! Dense linear algebra for 4×4 complex Hermitian operators and real 3×3
//! matrices.
//!
//! Both sizes are fixed, so eigen-decompositions use cyclic Jacobi with a
//! bounded sweep count and are fully deterministic.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerances::{HERMITIAN_TOL, JACOBI_MAX_SWEEPS, JACOBI_OFF_DIAG_TOL};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 4×4 complex matrix in the two-qubit computational basis
/// `|00>, |01>, |10>, |11>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix4(pub [[Complex64; 4]; 4]);

impl ComplexMatrix4 {
    pub fn zeros() -> Self {
        Self([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::from_real_diagonal([1.0; 4])
    }

    pub fn from_real_diagonal(d: [f64; 4]) -> Self {
        let mut m = Self::zeros();
        for (i, &v) in d.iter().enumerate() {
            m.0[i][i] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Kronecker product `a ⊗ b` of two 2×2 matrices.
    pub fn kron(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> Self {
        let mut m = Self::zeros();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        m.0[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                    }
                }
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z = z.conj());
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `max_ij |M_ij - conj(M_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev = 0.0_f64;
        for i in 0..4 {
            for j in i..4 {
                dev = dev.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation() <= HERMITIAN_TOL * self.max_abs()
    }

    /// Column `k` as a vector.
    pub fn column(&self, k: usize) -> [Complex64; 4] {
        [self.0[0][k], self.0[1][k], self.0[2][k], self.0[3][k]]
    }

    pub fn mul_vec(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }
}

impl Index<(usize, usize)> for ComplexMatrix4 {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..4 {
                    m.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        m
    }
}

impl Add for ComplexMatrix4 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *a += b;
        }
        self
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *a -= b;
        }
        self
    }
}

/// A real 3×3 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealMatrix3(pub [[f64; 3]; 3]);

impl RealMatrix3 {
    pub fn zeros() -> Self {
        Self([[0.0; 3]; 3])
    }

    pub fn identity() -> Self {
        Self::from_diagonal([1.0; 3])
    }

    pub fn from_diagonal(d: [f64; 3]) -> Self {
        let mut m = Self::zeros();
        for i in 0..3 {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn det(&self) -> f64 {
        let a = &self.0;
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    pub fn mul_vec(&self, v: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }
}

impl Index<(usize, usize)> for RealMatrix3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl Mul for RealMatrix3 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        m
    }
}

/// Eigen-decomposition of a Hermitian 4×4 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigen4 {
    /// Eigenvalues, ascending.
    pub values: [f64; 4],
    /// Orthonormal eigenvectors stored as columns, matching `values`.
    pub vectors: ComplexMatrix4,
}

impl Eigen4 {
    /// `V f(Λ) V†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix4 {
        let v = &self.vectors;
        let d = self.values.map(f);
        let mut m = ComplexMatrix4::zeros();
        for i in 0..4 {
            for j in i..4 {
                let s: Complex64 = (0..4).map(|k| v.0[i][k] * d[k] * v.0[j][k].conj()).sum();
                m.0[i][j] = s;
                m.0[j][i] = s.conj();
            }
            m.0[i][i].im = 0.0;
        }
        m
    }
}

/// Cyclic complex Jacobi on an `N×N` Hermitian matrix.
///
/// Returns eigenvalues in ascending order with eigenvectors as columns.
pub(crate) fn jacobi_hermitian<const N: usize>(
    mut a: [[Complex64; N]; N],
) -> Result<([f64; N], [[Complex64; N]; N])> {
    let mut v = [[ZERO; N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = ONE;
    }
    for (i, row) in a.iter_mut().enumerate() {
        row[i].im = 0.0;
    }
    let norm: f64 = a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let off = |a: &[[Complex64; N]; N]| -> f64 {
        let mut s = 0.0;
        for i in 0..N {
            for j in 0..N {
                if i != j {
                    s += a[i][j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = norm == 0.0;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if converged || off(&a) <= JACOBI_OFF_DIAG_TOL * norm {
            converged = true;
            break;
        }
        for p in 0..N - 1 {
            for q in p + 1..N {
                let apq = a[p][q];
                let g = apq.norm();
                if g == 0.0 || g <= f64::EPSILON * 1e-3 * norm {
                    a[p][q] = ZERO;
                    a[q][p] = ZERO;
                    continue;
                }
                let phase = apq / g;
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let theta = (aqq - app) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // Unitary acting on (p, q): [[c, s], [-s·conj(phase), c·conj(phase)]].
                let vpp = Complex64::new(c, 0.0);
                let vpq = Complex64::new(s, 0.0);
                let vqp = -phase.conj() * s;
                let vqq = phase.conj() * c;
                for k in 0..N {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = akp * vpp + akq * vqp;
                    a[k][q] = akp * vpq + akq * vqq;
                }
                for k in 0..N {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = vpp.conj() * apk + vqp.conj() * aqk;
                    a[q][k] = vpq.conj() * apk + vqq.conj() * aqk;
                }
                a[p][q] = ZERO;
                a[q][p] = ZERO;
                a[p][p].im = 0.0;
                a[q][q].im = 0.0;
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = vkp * vpp + vkq * vqp;
                    row[q] = vkp * vpq + vkq * vqq;
                }
            }
        }
    }
    if !converged && off(&a) > JACOBI_OFF_DIAG_TOL * norm {
        return Err(Error::NotConverged {
            what: "Jacobi eigensolver",
            iterations: JACOBI_MAX_SWEEPS,
        });
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| a[i][i].re.total_cmp(&a[j][j].re));
    let values = order.map(|k| a[k][k].re);
    let mut vectors = [[ZERO; N]; N];
    for (col, &k) in order.iter().enumerate() {
        for row in 0..N {
            vectors[row][col] = v[row][k];
        }
    }
    Ok((values, vectors))
}

/// Eigen-decomposition of a Hermitian 4×4 matrix.
///
/// Rejects inputs whose Hermiticity defect exceeds the relative tolerance.
pub fn hermitian_eigen(m: &ComplexMatrix4) -> Result<Eigen4> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL * m.max_abs() {
        return Err(Error::NotHermitian { deviation });
    }
    let (values, vectors) = jacobi_hermitian(m.0)?;
    Ok(Eigen4 {
        values,
        vectors: ComplexMatrix4(vectors),
    })
}

/// Matrix exponential `e^M` of a Hermitian 4×4 matrix.
pub fn hermitian_expm(m: &ComplexMatrix4) -> Result<ComplexMatrix4> {
    Ok(hermitian_eigen(m)?.reconstruct_with(f64::exp))
}

/// Singular value decomposition of a real 3×3 matrix in the form
/// `u * J * w = diag(sigma)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Svd3 {
    pub u: RealMatrix3,
    pub sigma: [f64; 3],
    pub w: RealMatrix3,
}

/// One-sided (Hestenes) Jacobi SVD of a 3×3 real matrix.
///
/// Singular values come out non-negative and sorted descending; equal values
/// keep their original column order.
pub fn svd3(j: &RealMatrix3) -> Svd3 {
    // Columns of `a` converge to J·W with mutually orthogonal columns.
    let mut a = j.0;
    let mut w = RealMatrix3::identity().0;
    for _ in 0..60 {
        let mut rotated = false;
        for p in 0..2 {
            for q in p + 1..3 {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for row in &a {
                    alpha += row[p] * row[p];
                    beta += row[q] * row[q];
                    gamma += row[p] * row[q];
                }
                if gamma == 0.0 || gamma.abs() <= 1e-17 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for row in a.iter_mut().chain(w.iter_mut()) {
                    let xp = row[p];
                    let xq = row[q];
                    row[p] = c * xp - s * xq;
                    row[q] = s * xp + c * xq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let col_norm = |k: usize| (0..3).map(|i| a[i][k] * a[i][k]).sum::<f64>().sqrt();
    let norms = [col_norm(0), col_norm(1), col_norm(2)];
    let mut order = [0usize, 1, 2];
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));
    let sigma = order.map(|k| norms[k]);

    let mut w_sorted = [[0.0; 3]; 3];
    let mut u_rows = [[0.0; 3]; 3];
    for (col, &k) in order.iter().enumerate() {
        for row in 0..3 {
            w_sorted[row][col] = w[row][k];
        }
    }
    let cutoff = 1e-15 * sigma[0].max(f64::MIN_POSITIVE);
    let rank = sigma.iter().filter(|&&s| s > cutoff).count();
    for (i, &k) in order.iter().enumerate().take(rank) {
        for row in 0..3 {
            u_rows[i][row] = a[row][k] / sigma[i];
        }
    }
    complete_orthonormal_rows(&mut u_rows, rank);

    Svd3 {
        u: RealMatrix3(u_rows),
        sigma,
        w: RealMatrix3(w_sorted),
    }
}

/// Fills rows `rank..3` so that the rows form an orthonormal basis.
fn complete_orthonormal_rows(rows: &mut [[f64; 3]; 3], rank: usize) {
    let cross = |a: [f64; 3], b: [f64; 3]| {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    };
    match rank {
        0 => *rows = RealMatrix3::identity().0,
        1 => {
            let r0 = rows[0];
            // Pick the canonical axis least aligned with r0.
            let k = (0..3)
                .min_by(|&x, &y| r0[x].abs().total_cmp(&r0[y].abs()))
                .unwrap_or(0);
            let mut e = [0.0; 3];
            e[k] = 1.0;
            let r1 = cross(r0, e);
            let n = r1.iter().map(|x| x * x).sum::<f64>().sqrt();
            rows[1] = r1.map(|x| x / n);
            rows[2] = cross(r0, rows[1]);
        }
        2 => rows[2] = cross(rows[0], rows[1]),
        _ => {}
    }
}
