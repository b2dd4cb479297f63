//! Distinguishability functionals: von Neumann relative entropy (the
//! backbone of every quantifier here), classical KL on spectra for
//! commuting states, fidelity, and the Bures distance.
//!
//! All logarithms are base 2; every value is in bits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, matrix_function, Mat4};
use crate::states::DensityMatrix;
use crate::util::xlog2;

/// A zero eigenvalue of sigma whose eigenvector overlaps rho's support by
/// more than this makes the relative entropy infinite; smaller overlaps
/// are treated as round-off.
pub const SUPPORT_OVERLAP_TOL: f64 = 1e-8;
/// Eigenvalues below this are treated as exact zeros of sigma.
const ZERO_EIG_TOL: f64 = 1e-12;

/// Nonnegative divergence in bits; `finite = false` encodes +infinity
/// (support violation), in which case `value` is meaningless.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DivergenceValue {
    pub value: f64,
    pub finite: bool,
}

impl DivergenceValue {
    pub fn finite(value: f64) -> Self {
        DivergenceValue {
            value: value.max(0.0),
            finite: true,
        }
    }

    pub fn infinite() -> Self {
        DivergenceValue {
            value: f64::INFINITY,
            finite: false,
        }
    }

    /// The value as a plain f64, +inf when not finite.
    pub fn as_f64(&self) -> f64 {
        if self.finite {
            self.value
        } else {
            f64::INFINITY
        }
    }
}

/// Relative entropy S(rho || sigma) = tr(rho log2 rho - rho log2 sigma).
///
/// Infinity (finite = false) when the support of rho is not contained in
/// the support of sigma.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> DivergenceValue {
    let tr_rho_log_rho: f64 = rho.eigenvalues().iter().map(|&l| xlog2(l)).sum();

    let spec = hermitian_eigen(sigma.matrix()).expect("validated density matrix");
    let mut tr_rho_log_sigma = 0.0;
    for k in 0..4 {
        let mu = spec.values[k].max(0.0);
        let overlap = rho
            .matrix()
            .quadratic_form(&spec.vectors[k])
            .re
            .max(0.0);
        if mu <= ZERO_EIG_TOL {
            if overlap > SUPPORT_OVERLAP_TOL {
                return DivergenceValue::infinite();
            }
            // round-off overlap on a null direction contributes nothing
        } else {
            tr_rho_log_sigma += overlap * mu.log2();
        }
    }
    DivergenceValue::finite(tr_rho_log_rho - tr_rho_log_sigma)
}

/// Classical KL divergence sum p_i log2(p_i / q_i) between 4-point
/// distributions, with the usual 0 log 0 conventions.
pub fn kl_spectrum(p: &[f64; 4], q: &[f64; 4]) -> Result<DivergenceValue> {
    for (name, v) in [("p", p), ("q", q)] {
        let sum: f64 = v.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::Domain(format!("{name} sums to {sum:.12}, expected 1")));
        }
        if v.iter().any(|&x| x < -1e-12) {
            return Err(Error::Domain(format!("{name} has a negative entry")));
        }
    }
    Ok(kl_bits(p, q))
}

/// Unvalidated KL kernel shared with the optimizers; entries are clipped
/// at zero, support violations return the infinite value.
pub(crate) fn kl_bits(p: &[f64; 4], q: &[f64; 4]) -> DivergenceValue {
    let mut acc = 0.0;
    for i in 0..4 {
        let pi = p[i].max(0.0);
        let qi = q[i].max(0.0);
        if pi <= 1e-12 {
            continue;
        }
        if qi < 1e-15 {
            return DivergenceValue::infinite();
        }
        acc += pi * (pi / qi).log2();
    }
    DivergenceValue::finite(acc)
}

/// Uhlmann fidelity [tr sqrt(sqrt(sigma) rho sqrt(sigma))]^2, in [0, 1].
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    let sqrt_sigma = matrix_function(sigma.matrix(), f64::sqrt).expect("validated state");
    let inner: Mat4 = sqrt_sigma.mul(rho.matrix()).mul(&sqrt_sigma);
    let spec = hermitian_eigen(&inner).expect("product of Hermitian PSD factors");
    let tr_sqrt: f64 = spec.values.iter().map(|&v| v.max(0.0).sqrt()).sum();
    (tr_sqrt * tr_sqrt).clamp(0.0, 1.0)
}

/// Bures distance 2 - 2 sqrt(F(rho, sigma)), in [0, 2].
pub fn bures_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    2.0 - 2.0 * fidelity(rho, sigma).sqrt()
}
