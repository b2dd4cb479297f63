//! Closed-form correlation quantifiers and membership criteria on the
//! Bell-diagonal family and Schmidt-form pure states: discord, relative
//! entropy of entanglement, coherence, the two-projective-measurement
//! steering criterion, CHSH nonlocality, and the nearest-separable
//! projection.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{pauli, symmetric_eigenvalues3, tensor_product, Mat4};
use crate::states::{BellDiagonalState, PureSchmidtState};
use crate::util::{binary_entropy, shannon_bits, xlog2};
use crate::variational::{steering_bound_bd, OptimizerConfig};

/// Strict criteria compare against 1 with this slack so that exact
/// boundary points (lambda_1 + lambda_2 = 1) classify as NOT steerable /
/// NOT violating under f64 round-off.
pub const CRITERION_TOL: f64 = 1e-12;

/// All quantifiers and criteria for one state. Real fields are in bits.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MeasureReport {
    pub discord: f64,
    pub entanglement: f64,
    pub coherence: f64,
    pub steerable_2pm: bool,
    pub chsh_violating: bool,
    /// lambda_1 + lambda_2, the two largest eigenvalues of T T^t.
    pub chsh_parameter: f64,
    pub steering_bound: f64,
    pub nonlocality_bound: f64,
}

/// The classical-correlation term (1+c)/2 log2(1+c) + (1-c)/2 log2(1-c)
/// with c = max |c_j|. (The literature overloads the letter C for this
/// and for coherence; they are distinct quantities here.)
pub fn classical_correlation_term(bd: &BellDiagonalState) -> f64 {
    let c = bd.c().iter().cloned().map(f64::abs).fold(0.0, f64::max);
    half_split_entropy_defect(c)
}

/// (1+x)/2 log2(1+x) + (1-x)/2 log2(1-x) = 1 - H2((1+x)/2), for |x| <= 1.
fn half_split_entropy_defect(x: f64) -> f64 {
    let x = x.clamp(-1.0, 1.0);
    0.5 * (xlog2(1.0 + x) + xlog2(1.0 - x))
}

/// Relative entropy of discord, D = 2 - S(rho) - C with C the
/// classical-correlation term. Zero for classically correlated states.
pub fn discord_bd(bd: &BellDiagonalState) -> f64 {
    let s = shannon_bits(&bd.lambdas());
    (2.0 - s - classical_correlation_term(bd)).max(0.0)
}

/// Relative entropy of entanglement: 0 when every eigenvalue is <= 1/2,
/// otherwise 1 - H2(lambda_max). Continuous at lambda_max = 1/2.
pub fn entanglement_bd(bd: &BellDiagonalState) -> f64 {
    let lmax = bd.lambda_max();
    if lmax <= 0.5 {
        0.0
    } else {
        (1.0 - binary_entropy(lmax)).max(0.0)
    }
}

/// Relative entropy of coherence, S(rho_diag) - S(rho). The dephased
/// state is (I + c3 sigma_3 (x) sigma_3)/4 with spectrum (1 +- c3)/4,
/// each twice.
pub fn coherence_bd(bd: &BellDiagonalState) -> f64 {
    let c3 = bd.c()[2];
    let diag = [
        0.25 * (1.0 + c3),
        0.25 * (1.0 + c3),
        0.25 * (1.0 - c3),
        0.25 * (1.0 - c3),
    ];
    (shannon_bits(&diag) - shannon_bits(&bd.lambdas())).max(0.0)
}

/// Closed form for coherence minus discord: the classical-correlation
/// term at c = max |c_j| minus the same expression at c3. Nonnegative.
pub fn coherence_minus_discord_bd(bd: &BellDiagonalState) -> f64 {
    classical_correlation_term(bd) - half_split_entropy_defect(bd.c()[2])
}

/// Steerability by two projective measurements: (steerable, lambda_1 +
/// lambda_2) where the sum runs over the two largest of {c_1^2, c_2^2,
/// c_3^2}. Steerable iff the sum exceeds 1 (strict).
pub fn steerable_two_pm(bd: &BellDiagonalState) -> (bool, f64) {
    let mut sq: Vec<f64> = bd.c().iter().map(|x| x * x).collect();
    sq.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let sum = sq[0] + sq[1];
    (sum > 1.0 + CRITERION_TOL, sum)
}

/// CHSH criterion, implemented independently of [`steerable_two_pm`]:
/// builds the density matrix, extracts the full correlation matrix T,
/// and compares the maximal CHSH value 2 sqrt(lambda_1 + lambda_2 of
/// T T^t) against 2. Returns (violating, maximal CHSH value).
pub fn chsh_violating(bd: &BellDiagonalState) -> (bool, f64) {
    // raw matrix on purpose: the formal (out-of-tetrahedron) families are
    // still well-defined for this criterion, which only sees T
    let mut rho = Mat4::identity();
    for j in 1..=3 {
        let s = pauli(j);
        rho = rho.add(&tensor_product(&s, &s).scale(bd.c()[j - 1]));
    }
    let rho = rho.scale(0.25);
    let mut t = [[0.0; 3]; 3];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let obs = tensor_product(&pauli(i + 1), &pauli(j + 1));
            *entry = rho.mul(&obs).trace().re;
        }
    }
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                m[i][j] += t[i][k] * t[j][k];
            }
        }
    }
    let eigs = symmetric_eigenvalues3(m);
    let sum = (eigs[0] + eigs[1]).max(0.0);
    let value = 2.0 * sum.sqrt();
    (sum > 1.0 + CRITERION_TOL, value)
}

/// KL projection of an entangled Bell-diagonal spectrum onto the
/// separable cap {lambda_max <= 1/2}: the largest weight drops to 1/2
/// and the rest rescale by 1/(2 (1 - lambda_max)).
///
/// At lambda_max = 1 the residual rescaling is 0/0; the remaining half
/// is spread uniformly over the other three Bell states (the limit under
/// symmetric perturbation), and the KL distance still reproduces E = 1.
pub fn nearest_separable_bd(bd: &BellDiagonalState) -> Result<BellDiagonalState> {
    let lambdas = bd.lambdas();
    let (argmax, &lmax) = lambdas
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    if lmax <= 0.5 {
        return Err(Error::NotEntangled);
    }
    let rest = 1.0 - lmax;
    let mut out = [0.0; 4];
    for k in 0..4 {
        if k == argmax {
            out[k] = 0.5;
        } else if rest > 1e-12 {
            out[k] = lambdas[k] / (2.0 * rest);
        } else {
            out[k] = 1.0 / 6.0;
        }
    }
    BellDiagonalState::from_lambdas(out)
}

/// Measures for alpha|00> + beta|11>: discord and entanglement both equal
/// H2(alpha^2); the state is steerable and CHSH-violating exactly when
/// entangled (0 < alpha < 1 strictly).
///
/// Steering and nonlocality bounds are reported as the entanglement value:
/// the unsteerable and LHV sets contain the separable set, so the relative
/// entropy of entanglement upper-bounds both measures, and it is positive
/// exactly on the entangled (steerable) pure states.
pub fn pure_state_measures(ps: &PureSchmidtState) -> MeasureReport {
    let a2 = ps.alpha() * ps.alpha();
    let h = binary_entropy(a2);
    let entangled = ps.alpha() > 0.0 && ps.alpha() < 1.0;
    let ab = ps.alpha() * ps.beta();
    MeasureReport {
        discord: h,
        entanglement: h,
        coherence: h,
        steerable_2pm: entangled,
        chsh_violating: entangled,
        chsh_parameter: 1.0 + 4.0 * ab * ab,
        steering_bound: h,
        nonlocality_bound: h,
    }
}

/// Aggregated report for a Bell-diagonal state. The steering and
/// nonlocality bounds come from the variational module: exactly 0 when
/// the state is unsteerable, otherwise a positive upper bound.
pub fn measure_report(bd: &BellDiagonalState, cfg: &OptimizerConfig) -> Result<MeasureReport> {
    let (steerable, _) = steerable_two_pm(bd);
    let (violating, chsh_value) = chsh_violating(bd);
    let steering_bound = steering_bound_bd(bd, cfg)?;
    Ok(MeasureReport {
        discord: discord_bd(bd),
        entanglement: entanglement_bd(bd),
        coherence: coherence_bd(bd),
        steerable_2pm: steerable,
        chsh_violating: violating,
        chsh_parameter: 0.25 * chsh_value * chsh_value,
        steering_bound,
        nonlocality_bound: steering_bound,
    })
}
