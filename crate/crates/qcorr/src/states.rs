//! Two-qubit state construction, validation and sampling: general density
//! matrices, the Bell-diagonal family, Schmidt-form pure states, and the
//! simple channels used by the monotonicity checks.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    self, hermitian_eigen, partial_trace, pauli, tensor_product, Mat2, Mat4, Spectrum, Subsystem,
    C64, EIG_CLIP_TOL,
};
use crate::util::shannon_bits;

/// Trace tolerance for density-matrix validation.
pub const TRACE_TOL: f64 = 1e-10;
/// Bell-basis eigenvalues above this (negative) floor are clipped to 0;
/// grid sweeps touch the tetrahedron boundary, so exact-zero inputs with
/// round-off must be accepted.
pub const TETRAHEDRON_TOL: f64 = 1e-12;

/// Validated two-qubit density matrix: Hermitian, unit trace, PSD.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: Mat4,
}

impl DensityMatrix {
    pub fn new(mat: Mat4) -> Result<Self> {
        if !mat.is_hermitian(linalg::HERMITICITY_TOL) {
            return Err(Error::InvalidState("matrix is not Hermitian".into()));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "trace is {:.12}, expected 1",
                tr.re
            )));
        }
        let spec = hermitian_eigen(&mat)?;
        if spec.values[3] < -EIG_CLIP_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {:.3e}",
                spec.values[3]
            )));
        }
        Ok(DensityMatrix { mat })
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.mat
    }

    /// Eigendecomposition; cannot fail after validation.
    pub fn spectrum(&self) -> Spectrum {
        hermitian_eigen(&self.mat).expect("validated density matrix")
    }

    /// Clipped eigenvalues, descending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let mut v = self.spectrum().values;
        for x in v.iter_mut() {
            if *x < 0.0 {
                *x = 0.0;
            }
        }
        v
    }

    /// Von Neumann entropy in bits, -sum lambda log2 lambda. Always in [0, 2].
    pub fn entropy(&self) -> f64 {
        shannon_bits(&self.eigenvalues()).min(2.0)
    }

    /// Re(tr(rho * op)).
    pub fn expectation(&self, op: &Mat4) -> f64 {
        self.mat.mul(op).trace().re
    }
}

/// Von Neumann entropy in bits of a validated state.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.entropy()
}

/// Bell-diagonal state: the correlation triple (c1, c2, c3) together with
/// its Bell-basis spectrum (lambda_00, lambda_01, lambda_10, lambda_11).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellDiagonalState {
    c: [f64; 3],
    lambdas: [f64; 4],
}

/// lambda_ab = (1 + (-1)^a c1 - (-1)^(a+b) c2 + (-1)^b c3) / 4,
/// ordered (00, 01, 10, 11).
pub fn lambdas_from_c(c: [f64; 3]) -> [f64; 4] {
    let [c1, c2, c3] = c;
    [
        0.25 * (1.0 + c1 - c2 + c3),
        0.25 * (1.0 + c1 + c2 - c3),
        0.25 * (1.0 - c1 + c2 + c3),
        0.25 * (1.0 - c1 - c2 - c3),
    ]
}

/// Inverse of [`lambdas_from_c`]; the map is linear and invertible.
pub fn c_from_lambdas(l: [f64; 4]) -> [f64; 3] {
    [
        l[0] + l[1] - l[2] - l[3],
        -l[0] + l[1] + l[2] - l[3],
        l[0] - l[1] + l[2] - l[3],
    ]
}

impl BellDiagonalState {
    /// Builds a state from its correlation triple, validating tetrahedron
    /// membership. Eigenvalues in [-TETRAHEDRON_TOL, 0] are clipped to 0.
    pub fn from_c(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let mut lambdas = lambdas_from_c([c1, c2, c3]);
        for l in lambdas.iter_mut() {
            if *l < -TETRAHEDRON_TOL {
                return Err(Error::InvalidState(format!(
                    "({c1}, {c2}, {c3}) lies outside the Bell-diagonal tetrahedron \
                     (eigenvalue {l:.3e})"
                )));
            }
            if *l < 0.0 {
                *l = 0.0;
            }
        }
        Ok(BellDiagonalState {
            c: [c1, c2, c3],
            lambdas,
        })
    }

    /// Builds the formal (c1, c2, c3) family member without tetrahedron
    /// validation. Spectral quantities are undefined when an eigenvalue is
    /// negative; only quantities that depend on c and the largest eigenvalue
    /// (entanglement, steering and CHSH criteria) remain meaningful.
    pub fn from_c_unchecked(c1: f64, c2: f64, c3: f64) -> Self {
        BellDiagonalState {
            c: [c1, c2, c3],
            lambdas: lambdas_from_c([c1, c2, c3]),
        }
    }

    /// Builds a state from a Bell-basis spectrum on the 3-simplex.
    pub fn from_lambdas(lambdas: [f64; 4]) -> Result<Self> {
        let sum: f64 = lambdas.iter().sum();
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "spectrum sums to {sum:.12}, expected 1"
            )));
        }
        let mut lambdas = lambdas;
        for l in lambdas.iter_mut() {
            if *l < -TETRAHEDRON_TOL {
                return Err(Error::InvalidState(format!("negative weight {l:.3e}")));
            }
            if *l < 0.0 {
                *l = 0.0;
            }
        }
        Ok(BellDiagonalState {
            c: c_from_lambdas(lambdas),
            lambdas,
        })
    }

    pub fn c(&self) -> [f64; 3] {
        self.c
    }

    pub fn lambdas(&self) -> [f64; 4] {
        self.lambdas
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambdas.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// True when every Bell-basis eigenvalue is nonnegative (within clip).
    pub fn is_physical(&self) -> bool {
        self.lambdas.iter().all(|&l| l >= 0.0)
    }
}

/// Bell basis kets |beta_ab> = (|0,b> + (-1)^a |1, 1+b mod 2>) / sqrt(2),
/// ordered (beta_00, beta_01, beta_10, beta_11) in the computational basis.
pub fn bell_basis() -> [[C64; 4]; 4] {
    let h = C64::new(1.0 / 2f64.sqrt(), 0.0);
    let z = C64::new(0.0, 0.0);
    [
        [h, z, z, h],
        [z, h, h, z],
        [h, z, z, -h],
        [z, h, -h, z],
    ]
}

/// rho = (I + sum_j c_j sigma_j (x) sigma_j) / 4.
pub fn density_matrix_of(bd: &BellDiagonalState) -> DensityMatrix {
    let mut m = Mat4::identity();
    for j in 1..=3 {
        let s = pauli(j);
        m = m.add(&tensor_product(&s, &s).scale(bd.c[j - 1]));
    }
    DensityMatrix::new(m.scale(0.25)).expect("valid Bell-diagonal state")
}

/// Schmidt-form two-qubit pure state alpha|00> + sqrt(1-alpha^2)|11>,
/// with 0 <= alpha <= 1 and the global phase fixed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureSchmidtState {
    alpha: f64,
}

impl PureSchmidtState {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) || !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha = {alpha} outside [0, 1]")));
        }
        Ok(PureSchmidtState { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        (1.0 - self.alpha * self.alpha).max(0.0).sqrt()
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        let ket = [
            C64::new(self.alpha, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(self.beta(), 0.0),
        ];
        DensityMatrix::new(Mat4::projector(&ket)).expect("valid pure state")
    }
}

/// Draws a Bell-diagonal state with spectrum uniform on the 3-simplex
/// (four exponential draws, normalized). Every sample is a valid state.
pub fn sample_bell_diagonal(rng: &mut impl Rng) -> BellDiagonalState {
    let mut draws = [0.0; 4];
    for d in draws.iter_mut() {
        let u: f64 = rng.gen::<f64>();
        *d = -(1.0 - u).ln();
    }
    let sum: f64 = draws.iter().sum();
    for d in draws.iter_mut() {
        *d /= sum;
    }
    BellDiagonalState::from_lambdas(draws).expect("simplex sample is valid")
}

/// Rejection-samples a Bell-diagonal state with lambda_max > 1/2.
pub fn sample_entangled_bell_diagonal(rng: &mut impl Rng) -> BellDiagonalState {
    loop {
        let bd = sample_bell_diagonal(rng);
        if bd.lambda_max() > 0.5 {
            return bd;
        }
    }
}

/// Rejection-samples a Bell-diagonal state whose two largest c_i^2 sum
/// above 1 (steerable by two projective measurements).
pub fn sample_steerable_bell_diagonal(rng: &mut impl Rng) -> BellDiagonalState {
    loop {
        let bd = sample_bell_diagonal(rng);
        let mut sq: Vec<f64> = bd.c().iter().map(|x| x * x).collect();
        sq.sort_by(|a, b| b.partial_cmp(a).unwrap());
        if sq[0] + sq[1] > 1.0 + 1e-9 {
            return bd;
        }
    }
}

/// Ginibre-random full-rank density matrix (G G^dagger, normalized).
pub fn random_density_matrix(rng: &mut impl Rng) -> DensityMatrix {
    let mut g = Mat4::zero();
    for i in 0..4 {
        for j in 0..4 {
            g.0[i][j] = C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        }
    }
    let m = g.mul(&g.adjoint());
    DensityMatrix::new(m.scale(1.0 / m.trace().re)).expect("Ginibre state is valid")
}

/// Haar-random single-qubit unitary.
pub fn random_unitary2(rng: &mut impl Rng) -> Mat2 {
    loop {
        let a = C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        let b = C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if n < 1e-3 {
            continue;
        }
        let (a, b) = (a / n, b / n);
        return Mat2([[a, -b.conj()], [b, a.conj()]]);
    }
}

/// Depolarizing channel (1 - p) rho + p I/4.
pub fn depolarize(rho: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("p = {p} outside [0, 1]")));
    }
    let m = rho
        .matrix()
        .scale(1.0 - p)
        .add(&Mat4::identity().scale(p / 4.0));
    DensityMatrix::new(m)
}

/// CPTP map that discards subsystem A and reattaches I/2:
/// rho -> I/2 (x) tr_A(rho).
pub fn reattach_maximally_mixed(rho: &DensityMatrix) -> DensityMatrix {
    let rb = partial_trace(rho.matrix(), Subsystem::A);
    let m = tensor_product(&Mat2::identity().scale(0.5), &rb);
    DensityMatrix::new(m).expect("CPTP output is valid")
}

/// Computational-basis dephasing: zero all off-diagonal entries.
pub fn dephase_computational(rho: &DensityMatrix) -> DensityMatrix {
    let mut m = Mat4::zero();
    for i in 0..4 {
        m.0[i][i] = C64::new(rho.matrix().0[i][i].re, 0.0);
    }
    DensityMatrix::new(m).expect("dephased state is valid")
}

/// Correlation matrix T_ij = tr(rho sigma_i (x) sigma_j).
pub fn correlation_matrix(rho: &DensityMatrix) -> [[f64; 3]; 3] {
    let mut t = [[0.0; 3]; 3];
    for i in 1..=3 {
        for j in 1..=3 {
            t[i - 1][j - 1] = rho.expectation(&tensor_product(&pauli(i), &pauli(j)));
        }
    }
    t
}

/// Recognizes a Bell-diagonal density matrix: all off-diagonal Bell-basis
/// elements below tolerance. Returns the recovered (c1, c2, c3) state.
pub fn as_bell_diagonal(rho: &DensityMatrix) -> Option<BellDiagonalState> {
    let basis = bell_basis();
    for k in 0..4 {
        for l in 0..4 {
            if k == l {
                continue;
            }
            let mut elem = C64::new(0.0, 0.0);
            for i in 0..4 {
                for j in 0..4 {
                    elem += basis[k][i].conj() * rho.matrix().0[i][j] * basis[l][j];
                }
            }
            if elem.norm() > 1e-10 {
                return None;
            }
        }
    }
    let t = correlation_matrix(rho);
    BellDiagonalState::from_c(t[0][0], t[1][1], t[2][2]).ok()
}
