//! Exact-size complex linear algebra for two-qubit work: Hermitian
//! eigendecomposition, Kronecker products, partial traces, and
//! spectrum-based matrix functions. Everything is dense and fixed-size
//! (2x2 and 4x4); no general linear algebra is attempted.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Hermiticity check tolerance for inputs.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Eigenvalues in [-EIG_CLIP_TOL, 0] are round-off and get clipped to 0
/// before logarithms; anything more negative is an invalid state.
pub const EIG_CLIP_TOL: f64 = 1e-10;

/// Dense 2x2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

/// Dense 4x4 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat4(pub [[C64; 4]; 4]);

/// Which tensor factor an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Eigendecomposition of a 4x4 Hermitian matrix: real eigenvalues sorted
/// descending, with `vectors[k]` the orthonormal eigenvector of `values[k]`.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: [f64; 4],
    pub vectors: [[C64; 4]; 4],
}

impl Spectrum {
    /// Rebuilds sum_k values[k] |v_k><v_k|.
    pub fn reconstruct(&self) -> Mat4 {
        let mut m = Mat4::zero();
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    m.0[i][j] += self.vectors[k][i] * self.vectors[k][j].conj() * self.values[k];
                }
            }
        }
        m
    }
}

impl Mat2 {
    pub fn zero() -> Self {
        Mat2([[C64::new(0.0, 0.0); 2]; 2])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        m.0[0][0] = C64::new(1.0, 0.0);
        m.0[1][1] = C64::new(1.0, 0.0);
        m
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for x in row.iter_mut() {
                *x *= s;
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    /// Outer product |a><a| of a 2-vector.
    pub fn projector(ket: &[C64; 2]) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = ket[i] * ket[j].conj();
            }
        }
        m
    }

    pub fn smallest_eigenvalue(&self) -> f64 {
        let a = self.0[0][0].re;
        let c = self.0[1][1].re;
        let b = self.0[0][1];
        let mid = 0.5 * (a + c);
        let rad = (0.25 * (a - c) * (a - c) + b.norm_sqr()).sqrt();
        mid - rad
    }
}

impl Mat4 {
    pub fn new(entries: [[C64; 4]; 4]) -> Self {
        Mat4(entries)
    }

    pub fn zero() -> Self {
        Mat4([[C64::new(0.0, 0.0); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn diag(values: [f64; 4]) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = C64::new(values[i], 0.0);
        }
        m
    }

    pub fn add(&self, other: &Mat4) -> Self {
        let mut m = *self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] += other.0[i][j];
            }
        }
        m
    }

    pub fn sub(&self, other: &Mat4) -> Self {
        let mut m = *self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] -= other.0[i][j];
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for x in row.iter_mut() {
                *x *= s;
            }
        }
        m
    }

    pub fn mul(&self, other: &Mat4) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.0[i][k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..4 {
                    m.0[i][j] += a * other.0[k][j];
                }
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2] + self.0[3][3]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|x| x.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        for i in 0..4 {
            for j in 0..4 {
                if (self.0[i][j] - self.0[j][i].conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// <v|M|v>.
    pub fn quadratic_form(&self, v: &[C64; 4]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                acc += v[i].conj() * self.0[i][j] * v[j];
            }
        }
        acc
    }

    /// Outer product |v><v| of a 4-vector.
    pub fn projector(ket: &[C64; 4]) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = ket[i] * ket[j].conj();
            }
        }
        m
    }
}

/// Pauli matrix sigma_j for j in 1..=3.
pub fn pauli(j: usize) -> Mat2 {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    match j {
        1 => Mat2([[z, one], [one, z]]),
        2 => Mat2([[z, C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), z]]),
        3 => Mat2([[one, z], [z, -one]]),
        _ => panic!("pauli index must be 1, 2 or 3"),
    }
}

/// Kronecker product: (a (x) b)[2i+k][2j+l] = a[i][j] * b[k][l].
pub fn tensor_product(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    m
}

/// Kronecker product of two single-qubit kets.
pub fn kron_ket(a: &[C64; 2], b: &[C64; 2]) -> [C64; 4] {
    [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

/// Traces out the indicated factor; the result has the same trace.
pub fn partial_trace(m: &Mat4, subsystem: Subsystem) -> Mat2 {
    let mut out = Mat2::zero();
    match subsystem {
        Subsystem::A => {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[k][l] = m.0[k][l] + m.0[2 + k][2 + l];
                }
            }
        }
        Subsystem::B => {
            for i in 0..2 {
                for j in 0..2 {
                    out.0[i][j] = m.0[2 * i][2 * j] + m.0[2 * i + 1][2 * j + 1];
                }
            }
        }
    }
    out
}

/// Cyclic Jacobi eigensolver for an n x n complex Hermitian matrix.
/// Returns (eigenvalues descending, row-per-eigenvector matrix).
fn jacobi_hermitian(mut a: Vec<Vec<C64>>) -> (Vec<f64>, Vec<Vec<C64>>) {
    let n = a.len();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();

    for _sweep in 0..120 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p][q].norm_sqr();
            }
        }
        if off.sqrt() < 1e-15 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                let r = apq.norm();
                if r < 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let theta = (a[q][q].re - a[p][p].re) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let gc = phase.conj() * s; // s e^{-i beta}
                let gr = phase * s; // s e^{+i beta}

                // columns: M <- M U
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = akp * c - akq * gc;
                    a[k][q] = akp * s + akq * phase.conj() * c;
                }
                // rows: M <- U^dagger M
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = apk * c - aqk * gr;
                    a[q][k] = apk * s + aqk * phase * c;
                }
                // accumulate eigenvectors: V <- V U
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = vkp * c - vkq * gc;
                    v[k][q] = vkp * s + vkq * phase.conj() * c;
                }
                a[p][q] = C64::new(0.0, 0.0);
                a[q][p] = C64::new(0.0, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[j][j]
            .re
            .partial_cmp(&a[i][i].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&k| a[k][k].re).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[i][k]).collect())
        .collect();
    (values, vectors)
}

/// Full eigendecomposition of a 4x4 Hermitian matrix.
///
/// Errors with [`Error::NonHermitianInput`] if the symmetry check fails;
/// otherwise the matrix is symmetrized before decomposition so the result
/// is exactly Hermitian-consistent and deterministic for identical input.
pub fn hermitian_eigen(m: &Mat4) -> Result<Spectrum> {
    if m.0.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonHermitianInput);
    }
    if !m.is_hermitian(HERMITICITY_TOL) {
        return Err(Error::NonHermitianInput);
    }
    let mut a = vec![vec![C64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            a[i][j] = 0.5 * (m.0[i][j] + m.0[j][i].conj());
        }
    }
    let (vals, vecs) = jacobi_hermitian(a);
    let mut values = [0.0; 4];
    let mut vectors = [[C64::new(0.0, 0.0); 4]; 4];
    for k in 0..4 {
        values[k] = vals[k];
        for i in 0..4 {
            vectors[k][i] = vecs[k][i];
        }
    }
    Ok(Spectrum { values, vectors })
}

/// Eigenvalues (descending) of a 3x3 real symmetric matrix.
pub fn symmetric_eigenvalues3(m: [[f64; 3]; 3]) -> [f64; 3] {
    let a: Vec<Vec<C64>> = (0..3)
        .map(|i| (0..3).map(|j| C64::new(0.5 * (m[i][j] + m[j][i]), 0.0)).collect())
        .collect();
    let (vals, _) = jacobi_hermitian(a);
    [vals[0], vals[1], vals[2]]
}

/// Applies a scalar function to the clipped spectrum of a Hermitian matrix.
/// Eigenvalues in [-EIG_CLIP_TOL, 0] are clipped to 0 first.
pub fn matrix_function(m: &Mat4, f: impl Fn(f64) -> f64) -> Result<Mat4> {
    let spec = hermitian_eigen(m)?;
    let mut out = Mat4::zero();
    for k in 0..4 {
        let lam = if spec.values[k] < 0.0 { 0.0 } else { spec.values[k] };
        let fv = f(lam);
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] += spec.vectors[k][i] * spec.vectors[k][j].conj() * fv;
            }
        }
    }
    Ok(out)
}
