//! Independent numerical minimizers of relative entropy over structured
//! state sets. These are the operational counterparts of the closed
//! forms: a 4-angle search for discord, a product-state-ansatz
//! minimization for the relative entropy of entanglement, and a
//! constrained spectrum search for the steering / nonlocality bounds
//! (two-projective-measurement scenario, Bell-diagonal targets).
//!
//! Restarts are independent and run through the parallel shim; results
//! merge by a min-reduce in restart order, so concurrency never changes
//! the reported value.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::divergences::kl_bits;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, kron_ket, Mat2, Mat4, C64};
use crate::states::{c_from_lambdas, lambdas_from_c, BellDiagonalState, DensityMatrix};
use crate::util::{map_indexed, mix_seed, shannon_bits, xlog2};

const LN2: f64 = std::f64::consts::LN_2;

/// Multi-start derivative-free search settings.
#[derive(Clone, Copy, Debug)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    /// Function-value convergence tolerance (simplex spread).
    pub tolerance: f64,
    pub seed: u64,
}

impl OptimizerConfig {
    /// Defaults (32 restarts, 2000 iterations, 1e-10 tolerance) with an
    /// explicit seed; there is no seedless constructor on purpose.
    pub fn with_seed(seed: u64) -> Self {
        OptimizerConfig {
            restarts: 32,
            max_iterations: 2000,
            tolerance: 1e-10,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(Error::Domain("restarts must be >= 1".into()));
        }
        if self.tolerance <= 0.0 {
            return Err(Error::Domain("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Local product-basis angles (theta_a, phi_a, theta_b, phi_b).
#[derive(Clone, Copy, Debug)]
pub struct ProductBasisParams {
    pub theta_a: f64,
    pub phi_a: f64,
    pub theta_b: f64,
    pub phi_b: f64,
}

impl ProductBasisParams {
    /// Orthonormal basis {|v0>, |v1>} of one qubit from Bloch angles.
    pub fn basis(theta: f64, phi: f64) -> [[C64; 2]; 2] {
        let (s, c) = (0.5 * theta).sin_cos();
        let phase = C64::new(phi.cos(), phi.sin());
        [
            [C64::new(c, 0.0), phase * s],
            [C64::new(-s, 0.0), phase * c],
        ]
    }
}

/// Convex combination of pure product states: sum_i w_i |a_i b_i><a_i b_i|.
#[derive(Clone, Debug)]
pub struct SeparableAnsatz {
    pub weights: Vec<f64>,
    pub kets_a: Vec<[C64; 2]>,
    pub kets_b: Vec<[C64; 2]>,
}

impl SeparableAnsatz {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn density(&self) -> Mat4 {
        let mut m = Mat4::zero();
        for i in 0..self.len() {
            let ket = kron_ket(&self.kets_a[i], &self.kets_b[i]);
            let p = Mat4::projector(&ket);
            m = m.add(&p.scale(self.weights[i]));
        }
        m
    }
}

/// Derivative-free Nelder-Mead simplex descent. Deterministic: the
/// simplex construction uses no randomness, so identical inputs give a
/// bit-identical trajectory.
///
/// `cfg.restarts` rounds are run, each re-initializing the simplex at the
/// best point so far with a shrinking edge length; `cfg.max_iterations`
/// bounds each round. Errors with [`Error::OptimizerFailure`] when no
/// round brings the simplex function-value spread under `cfg.tolerance`.
pub fn nelder_mead<F>(objective: F, initial_point: &[f64], cfg: &OptimizerConfig) -> Result<(Vec<f64>, f64)>
where
    F: Fn(&[f64]) -> f64,
{
    cfg.validate()?;
    let n = initial_point.len();
    if n == 0 {
        return Err(Error::Domain("empty initial point".into()));
    }
    let f0 = objective(initial_point);
    if !f0.is_finite() {
        return Err(Error::Domain("objective not finite at initial point".into()));
    }

    let mut best = (initial_point.to_vec(), f0);
    let mut converged = false;

    for round in 0..cfg.restarts {
        let scale = 0.5 / (1.0 + round as f64);
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push(best.clone());
        for i in 0..n {
            let mut x = best.0.clone();
            x[i] += scale * (1.0 + x[i].abs());
            let fx = objective(&x);
            simplex.push((x, fx));
        }

        for _ in 0..cfg.max_iterations {
            simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
            let spread = simplex[n].1 - simplex[0].1;
            if spread.abs() < cfg.tolerance {
                converged = true;
                break;
            }

            let mut centroid = vec![0.0; n];
            for point in &simplex[..n] {
                for (c, &x) in centroid.iter_mut().zip(point.0.iter()) {
                    *c += x / n as f64;
                }
            }
            let worst = simplex[n].clone();
            let lerp = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(worst.0.iter())
                    .map(|(&c, &w)| c + t * (c - w))
                    .collect()
            };

            let reflected = lerp(1.0);
            let fr = objective(&reflected);
            if fr < simplex[0].1 {
                let expanded = lerp(2.0);
                let fe = objective(&expanded);
                simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            } else if fr < simplex[n - 1].1 {
                simplex[n] = (reflected, fr);
            } else {
                let contracted = if fr < worst.1 { lerp(0.5) } else { lerp(-0.5) };
                let fc = objective(&contracted);
                if fc < worst.1.min(fr) {
                    simplex[n] = (contracted, fc);
                } else {
                    // shrink toward the best vertex
                    let anchor = simplex[0].0.clone();
                    for point in simplex.iter_mut().skip(1) {
                        for (x, &a) in point.0.iter_mut().zip(anchor.iter()) {
                            *x = a + 0.5 * (*x - a);
                        }
                        point.1 = objective(&point.0);
                    }
                }
            }
        }

        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
        if simplex[0].1 <= best.1 {
            best = simplex[0].clone();
        }
    }

    if converged {
        Ok(best)
    } else {
        Err(Error::OptimizerFailure(format!(
            "simplex spread above {} after {} rounds of {} iterations",
            cfg.tolerance, cfg.restarts, cfg.max_iterations
        )))
    }
}

fn inner_cfg(cfg: &OptimizerConfig) -> OptimizerConfig {
    OptimizerConfig {
        restarts: 2,
        ..*cfg
    }
}

/// Runs seeded random multi-starts and min-reduces the converged results
/// in restart order. Errors when every restart fails.
fn multistart<F, G>(cfg: &OptimizerConfig, init: G, objective: F) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
    G: Fn(&mut ChaCha8Rng) -> Vec<f64> + Sync + Send,
{
    cfg.validate()?;
    let inner = inner_cfg(cfg);
    let runs = map_indexed(cfg.restarts, |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(cfg.seed, r as u64));
        let x0 = init(&mut rng);
        nelder_mead(&objective, &x0, &inner).ok().map(|(_, v)| v)
    });
    runs.into_iter()
        .flatten()
        .fold(None, |acc: Option<f64>, v| {
            Some(acc.map_or(v, |a| a.min(v)))
        })
        .ok_or_else(|| Error::OptimizerFailure("no restart converged".into()))
}

/// Variational discord: minimum over local product bases of the measured
/// diagonal entropy minus S(rho).
///
/// The inner probability table is eliminated analytically (the optimal
/// joint distribution equals the measured diagonal, which minimizes the
/// cross-entropy term for a fixed basis), leaving a 4-angle outer search.
pub fn discord_variational(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<f64> {
    let s_rho = rho.entropy();
    let mat = *rho.matrix();
    let objective = move |x: &[f64]| -> f64 {
        let basis_a = ProductBasisParams::basis(x[0], x[1]);
        let basis_b = ProductBasisParams::basis(x[2], x[3]);
        let mut probs = [0.0; 4];
        for i in 0..2 {
            for j in 0..2 {
                let ket = kron_ket(&basis_a[i], &basis_b[j]);
                probs[2 * i + j] = mat.quadratic_form(&ket).re.max(0.0);
            }
        }
        shannon_bits(&probs) - s_rho
    };
    let value = multistart(
        cfg,
        |rng| {
            vec![
                rng.gen::<f64>() * std::f64::consts::PI,
                rng.gen::<f64>() * std::f64::consts::TAU,
                rng.gen::<f64>() * std::f64::consts::PI,
                rng.gen::<f64>() * std::f64::consts::TAU,
            ]
        },
        objective,
    )?;
    Ok(value.max(0.0))
}

// --- relative entropy of entanglement -----------------------------------

struct ReeContext {
    rho: Mat4,
    tr_rho_log_rho: f64,
}

impl ReeContext {
    /// S(rho || sigma) in bits for a PSD sigma; +inf on support violation.
    fn objective(&self, sigma: &Mat4) -> f64 {
        let spec = match hermitian_eigen(sigma) {
            Ok(s) => s,
            Err(_) => return f64::INFINITY,
        };
        let mut tr_rho_log_sigma = 0.0;
        for k in 0..4 {
            let mu = spec.values[k].max(0.0);
            let overlap = self.rho.quadratic_form(&spec.vectors[k]).re.max(0.0);
            if mu < 1e-15 {
                if overlap > 1e-12 {
                    return f64::INFINITY;
                }
            } else {
                tr_rho_log_sigma += overlap * mu.log2();
            }
        }
        (self.tr_rho_log_rho - tr_rho_log_sigma).max(0.0)
    }

    /// Gradient of the objective with respect to sigma (Hermitian matrix),
    /// via the Daletskii-Krein formula for the matrix logarithm.
    fn gradient(&self, sigma: &Mat4) -> Mat4 {
        let spec = hermitian_eigen(sigma).expect("PSD iterate");
        // floor keeps the log-derivative kernel bounded so a nearly
        // rank-deficient iterate cannot overflow the gradient entries
        let mu: Vec<f64> = spec.values.iter().map(|&v| v.max(1e-18)).collect();
        // rho in sigma's eigenbasis
        let mut rho_t = [[C64::new(0.0, 0.0); 4]; 4];
        for k in 0..4 {
            for l in 0..4 {
                let mut acc = C64::new(0.0, 0.0);
                for i in 0..4 {
                    for j in 0..4 {
                        acc += spec.vectors[k][i].conj() * self.rho.0[i][j] * spec.vectors[l][j];
                    }
                }
                rho_t[k][l] = acc;
            }
        }
        let mut grad = Mat4::zero();
        for k in 0..4 {
            for l in 0..4 {
                let kernel = if (mu[k] - mu[l]).abs() < 1e-14 * mu[k].max(mu[l]) {
                    1.0 / mu[k]
                } else {
                    (mu[k].ln() - mu[l].ln()) / (mu[k] - mu[l])
                };
                let w = -rho_t[k][l] * (kernel / LN2);
                for i in 0..4 {
                    for j in 0..4 {
                        grad.0[i][j] += spec.vectors[k][i] * spec.vectors[l][j].conj() * w;
                    }
                }
            }
        }
        grad
    }
}

fn min_eigvec2(m: &Mat2) -> [C64; 2] {
    let a = m.0[0][0].re;
    let c = m.0[1][1].re;
    let b = m.0[0][1];
    if b.norm() < 1e-15 {
        return if a <= c {
            [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]
        } else {
            [C64::new(0.0, 0.0), C64::new(1.0, 0.0)]
        };
    }
    let lam = m.smallest_eigenvalue();
    let v = [b, C64::new(lam - a, 0.0)];
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / n, v[1] / n]
}

/// Best product state for a linear objective: minimizes <a b|G|a b> by
/// alternating 2x2 minimal-eigenvector updates from several starts.
fn product_lmo(grad: &Mat4, rng: &mut ChaCha8Rng) -> ([C64; 2], [C64; 2], f64) {
    let mut starts: Vec<[C64; 2]> = vec![
        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        {
            let h = 1.0 / 2f64.sqrt();
            [C64::new(h, 0.0), C64::new(h, 0.0)]
        },
        {
            let h = 1.0 / 2f64.sqrt();
            [C64::new(h, 0.0), C64::new(0.0, h)]
        },
    ];
    for _ in 0..4 {
        let v = [
            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
        ];
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt().max(1e-9);
        starts.push([v[0] / n, v[1] / n]);
    }

    let mut best: Option<([C64; 2], [C64; 2], f64)> = None;
    for b0 in starts {
        let mut ket_b = b0;
        let mut ket_a = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let mut value = f64::INFINITY;
        for _ in 0..25 {
            // M_a[i][j] = sum_{k,l} conj(b_k) G[2i+k][2j+l] b_l
            let mut ma = Mat2::zero();
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        for l in 0..2 {
                            ma.0[i][j] += ket_b[k].conj() * grad.0[2 * i + k][2 * j + l] * ket_b[l];
                        }
                    }
                }
            }
            ket_a = min_eigvec2(&ma);
            let mut mb = Mat2::zero();
            for k in 0..2 {
                for l in 0..2 {
                    for i in 0..2 {
                        for j in 0..2 {
                            mb.0[k][l] += ket_a[i].conj() * grad.0[2 * i + k][2 * j + l] * ket_a[j];
                        }
                    }
                }
            }
            ket_b = min_eigvec2(&mb);
            let new_value = grad.quadratic_form(&kron_ket(&ket_a, &ket_b)).re;
            if (value - new_value).abs() < 1e-14 {
                value = new_value;
                break;
            }
            value = new_value;
        }
        if best.as_ref().is_none_or(|(_, _, v)| value < *v) {
            best = Some((ket_a, ket_b, value));
        }
    }
    best.unwrap()
}

/// Exponentiated-gradient reweighting over the current atoms; returns the
/// achieved objective value.
fn optimize_weights(ctx: &ReeContext, ansatz: &mut SeparableAnsatz) -> f64 {
    let atoms: Vec<[C64; 4]> = (0..ansatz.len())
        .map(|i| kron_ket(&ansatz.kets_a[i], &ansatz.kets_b[i]))
        .collect();
    let sigma_of = |w: &[f64]| -> Mat4 {
        let mut m = Mat4::zero();
        for (i, atom) in atoms.iter().enumerate() {
            m = m.add(&Mat4::projector(atom).scale(w[i]));
        }
        m
    };

    let mut w = ansatz.weights.clone();
    let mut f = ctx.objective(&sigma_of(&w));
    let mut eta = 1.0;
    for _ in 0..200 {
        let sigma = sigma_of(&w);
        let grad = ctx.gradient(&sigma);
        let g: Vec<f64> = atoms.iter().map(|a| grad.quadratic_form(a).re).collect();
        let g_min = g.iter().cloned().fold(f64::INFINITY, f64::min);
        let directional: f64 = w.iter().zip(g.iter()).map(|(&wi, &gi)| wi * gi).sum();
        if directional - g_min < 1e-10 {
            break; // restricted duality gap closed
        }
        let mut accepted = false;
        for _ in 0..40 {
            let mut trial: Vec<f64> = w
                .iter()
                .zip(g.iter())
                .map(|(&wi, &gi)| wi.max(1e-300) * (-eta * (gi - g_min)).exp())
                .collect();
            let z: f64 = trial.iter().sum();
            for t in trial.iter_mut() {
                *t /= z;
            }
            let f_trial = ctx.objective(&sigma_of(&trial));
            if f_trial < f - 1e-14 {
                w = trial;
                f = f_trial;
                eta *= 1.3;
                accepted = true;
                break;
            }
            eta *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    ansatz.weights = w;
    f
}

/// Golden-section line search for the mixing weight of a new atom.
fn line_search(ctx: &ReeContext, sigma: &Mat4, atom: &Mat4) -> f64 {
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let eval = |t: f64| ctx.objective(&sigma.scale(1.0 - t).add(&atom.scale(t)));
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut m1 = hi - phi * (hi - lo);
    let mut m2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (eval(m1), eval(m2));
    for _ in 0..60 {
        if f1 <= f2 {
            hi = m2;
            m2 = m1;
            f2 = f1;
            m1 = hi - phi * (hi - lo);
            f1 = eval(m1);
        } else {
            lo = m1;
            m1 = m2;
            f1 = f2;
            m2 = lo + phi * (hi - lo);
            f2 = eval(m2);
        }
    }
    0.5 * (lo + hi)
}

/// Upper bound on the relative entropy of entanglement: minimizes
/// S(rho || sigma) over mixtures of at most `ansatz_k` pure product
/// states by fully-corrective conditional-gradient descent (new atoms
/// from a product-state linear minimization, weights re-optimized by
/// exponentiated gradient). The returned value is always a true upper
/// bound because every iterate is exactly separable.
pub fn ree_upper_bound(rho: &DensityMatrix, ansatz_k: usize, cfg: &OptimizerConfig) -> Result<f64> {
    cfg.validate()?;
    if ansatz_k < 4 {
        return Err(Error::Domain("ansatz size must be at least 4".into()));
    }
    let ctx = ReeContext {
        rho: *rho.matrix(),
        tr_rho_log_rho: rho.eigenvalues().iter().map(|&l| xlog2(l)).sum(),
    };

    // start from I/4 = uniform mixture of the computational product basis
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let e0 = [one, z];
    let e1 = [z, one];
    let mut ansatz = SeparableAnsatz {
        weights: vec![0.25; 4],
        kets_a: vec![e0, e0, e1, e1],
        kets_b: vec![e0, e1, e0, e1],
    };

    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(cfg.seed, 0x5eea));
    let gap_tol = cfg.tolerance.max(1e-7);
    let mut best = ctx.objective(&ansatz.density());
    let mut converged = false;
    let mut last_gap = f64::INFINITY;

    for _ in 0..cfg.max_iterations {
        let sigma = ansatz.density();
        let grad = ctx.gradient(&sigma);
        let (ket_a, ket_b, lmo_value) = product_lmo(&grad, &mut rng);
        let current: f64 = {
            let mut acc = 0.0;
            for i in 0..ansatz.len() {
                let atom = kron_ket(&ansatz.kets_a[i], &ansatz.kets_b[i]);
                acc += ansatz.weights[i] * grad.quadratic_form(&atom).re;
            }
            acc
        };
        last_gap = current - lmo_value;
        if last_gap < gap_tol {
            converged = true;
            break;
        }

        let atom = Mat4::projector(&kron_ket(&ket_a, &ket_b));
        let t = line_search(&ctx, &sigma, &atom);
        for w in ansatz.weights.iter_mut() {
            *w *= 1.0 - t;
        }
        ansatz.weights.push(t.max(1e-12));
        ansatz.kets_a.push(ket_a);
        ansatz.kets_b.push(ket_b);

        let mut f = optimize_weights(&ctx, &mut ansatz);

        // prune negligible atoms, then enforce the ansatz size cap
        let mut keep: Vec<usize> = (0..ansatz.len())
            .filter(|&i| ansatz.weights[i] > 1e-12)
            .collect();
        if keep.len() > ansatz_k {
            keep.sort_by(|&i, &j| ansatz.weights[j].partial_cmp(&ansatz.weights[i]).unwrap());
            keep.truncate(ansatz_k);
        }
        if keep.len() < ansatz.len() {
            let total: f64 = keep.iter().map(|&i| ansatz.weights[i]).sum();
            ansatz = SeparableAnsatz {
                weights: keep.iter().map(|&i| ansatz.weights[i] / total).collect(),
                kets_a: keep.iter().map(|&i| ansatz.kets_a[i]).collect(),
                kets_b: keep.iter().map(|&i| ansatz.kets_b[i]).collect(),
            };
            f = optimize_weights(&ctx, &mut ansatz);
        }
        if f < best {
            best = f;
        }
    }

    if converged || last_gap < 1e-4 {
        Ok(best.max(0.0))
    } else {
        Err(Error::OptimizerFailure(format!(
            "conditional-gradient gap {last_gap:.3e} after {} iterations",
            cfg.max_iterations
        )))
    }
}

// --- steering / nonlocality bounds ---------------------------------------

fn top_two_c_squared(c: [f64; 3]) -> f64 {
    let mut sq = [c[0] * c[0], c[1] * c[1], c[2] * c[2]];
    sq.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sq[0] + sq[1]
}

fn weights_from_unconstrained(x: &[f64]) -> [f64; 4] {
    let mut w = [0.0; 4];
    let mut sum = 0.0;
    for k in 0..4 {
        w[k] = x[k] * x[k];
        sum += w[k];
    }
    if sum < 1e-12 {
        return [0.25; 4];
    }
    for wk in w.iter_mut() {
        *wk /= sum;
    }
    w
}

/// Upper bound on the relative-entropy steering measure for a
/// Bell-diagonal state, in the two-projective-measurement scenario and
/// restricted to Bell-diagonal comparison states: minimizes the spectrum
/// KL over the tetrahedron subject to the two largest c'^2 summing to at
/// most 1. Returns exactly 0 when the state already satisfies the
/// criterion.
///
/// The constraint is enforced by an exterior quadratic penalty whose
/// weight escalates across restarts, followed by a feasibility
/// post-projection (radial scaling of c' toward the tetrahedron center).
pub fn steering_bound_bd(bd: &BellDiagonalState, cfg: &OptimizerConfig) -> Result<f64> {
    cfg.validate()?;
    let s0 = top_two_c_squared(bd.c());
    if s0 <= 1.0 + crate::bell::CRITERION_TOL {
        return Ok(0.0);
    }

    let mut target = bd.lambdas();
    for t in target.iter_mut() {
        *t = t.max(0.0);
    }
    let inner = inner_cfg(cfg);

    // deterministic warm start: the input scaled back to the criterion boundary
    let scale = (1.0 / s0).sqrt();
    let c_scaled = [bd.c()[0] * scale, bd.c()[1] * scale, bd.c()[2] * scale];
    let warm: Vec<f64> = lambdas_from_c(c_scaled)
        .iter()
        .map(|&l| l.max(1e-6).sqrt())
        .collect();

    let feasible_value = |w: &[f64; 4]| -> f64 {
        let c = c_from_lambdas(*w);
        let s = top_two_c_squared(c);
        let w_feas = if s > 1.0 {
            let t = ((1.0 - 1e-12) / s).sqrt();
            lambdas_from_c([c[0] * t, c[1] * t, c[2] * t])
        } else {
            *w
        };
        kl_bits(&target, &w_feas).as_f64()
    };

    let results = map_indexed(cfg.restarts, |r| {
        let penalty_weight = 10f64.powi(2 + (r % 5) as i32);
        let objective = |x: &[f64]| -> f64 {
            let w = weights_from_unconstrained(x);
            let kl = kl_bits(&target, &w);
            let base = if kl.finite { kl.value } else { 1e9 };
            let excess = (top_two_c_squared(c_from_lambdas(w)) - 1.0).max(0.0);
            base + penalty_weight * excess * excess
        };
        let x0 = if r == 0 {
            warm.clone()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(cfg.seed, r as u64));
            (0..4).map(|_| 0.05 + 0.95 * rng.gen::<f64>()).collect()
        };
        nelder_mead(objective, &x0, &inner)
            .ok()
            .map(|(x, _)| feasible_value(&weights_from_unconstrained(&x)))
            .filter(|v| v.is_finite())
    });

    results
        .into_iter()
        .flatten()
        .fold(None, |acc: Option<f64>, v| {
            Some(acc.map_or(v, |a| a.min(v)))
        })
        .map(|v| v.max(0.0))
        .ok_or_else(|| Error::OptimizerFailure("no steering restart converged".into()))
}

/// Upper bound on the relative-entropy nonlocality measure. For
/// Bell-diagonal states with two projective measurements the unsteerable
/// and CHSH-local sets coincide, so this is the same optimization problem
/// as [`steering_bound_bd`].
pub fn nonlocality_bound_bd(bd: &BellDiagonalState, cfg: &OptimizerConfig) -> Result<f64> {
    steering_bound_bd(bd, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bell::{discord_bd, entanglement_bd};
    use crate::states::{
        density_matrix_of, sample_bell_diagonal, sample_entangled_bell_diagonal, PureSchmidtState,
    };
    use crate::util::binary_entropy;

    fn cfg(seed: u64) -> OptimizerConfig {
        OptimizerConfig::with_seed(seed)
    }

    #[test]
    fn nelder_mead_quadratic() {
        let (x, v) = nelder_mead(|x| (x[0] - 1.0) * (x[0] - 1.0), &[5.0], &cfg(0)).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-4);
        assert!(v < 1e-8);
    }

    #[test]
    fn nelder_mead_is_deterministic() {
        let f = |x: &[f64]| (x[0] - 2.0).powi(2) + (x[1] + 1.0).powi(2) + 0.1 * x[0] * x[1];
        let a = nelder_mead(f, &[3.0, 3.0], &cfg(9)).unwrap();
        let b = nelder_mead(f, &[3.0, 3.0], &cfg(9)).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn nelder_mead_rosenbrock() {
        let rosenbrock =
            |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let mut c = cfg(0);
        c.restarts = 20;
        let (x, v) = nelder_mead(rosenbrock, &[-1.0, 1.0], &c).unwrap();
        assert!(v < 1e-8, "value {v} at {x:?}");
    }

    #[test]
    fn nelder_mead_value_never_worse_than_start() {
        let f = |x: &[f64]| x[0].sin() + 0.1 * x[0] * x[0];
        let (_, v) = nelder_mead(f, &[2.0], &cfg(0)).unwrap();
        assert!(v <= f(&[2.0]));
    }

    #[test]
    fn discord_variational_trivial_states() {
        let mixed = density_matrix_of(&BellDiagonalState::from_c(0.0, 0.0, 0.0).unwrap());
        assert!(discord_variational(&mixed, &cfg(7)).unwrap() < 1e-6);
        let cc = density_matrix_of(&BellDiagonalState::from_c(0.5, 0.0, 0.0).unwrap());
        assert!(discord_variational(&cc, &cfg(7)).unwrap() < 1e-6);
    }

    #[test]
    fn discord_variational_matches_closed_form() {
        let bd = BellDiagonalState::from_c(-0.8, -0.8, -0.8).unwrap();
        let rho = density_matrix_of(&bd);
        let var = discord_variational(&rho, &cfg(7)).unwrap();
        assert!((var - discord_bd(&bd)).abs() < 1e-4, "var {var}");
    }

    #[test]
    fn discord_variational_pure_state() {
        let ps = PureSchmidtState::new(0.3f64.sqrt()).unwrap();
        let var = discord_variational(&ps.density_matrix(), &cfg(11)).unwrap();
        assert!((var - binary_entropy(0.3)).abs() < 1e-4);
    }

    #[test]
    fn discord_monotone_in_restarts() {
        let bd = BellDiagonalState::from_c(0.6, -0.5, 0.3).unwrap();
        let rho = density_matrix_of(&bd);
        let mut prev = f64::INFINITY;
        for restarts in [1, 2, 4, 8] {
            let mut c = cfg(5);
            c.restarts = restarts;
            let v = discord_variational(&rho, &c).unwrap();
            assert!(v <= prev + 1e-15);
            prev = v;
        }
    }

    #[test]
    fn ree_on_separable_state_is_negligible() {
        let bd = BellDiagonalState::from_c(0.5, 0.0, 0.0).unwrap();
        let v = ree_upper_bound(&density_matrix_of(&bd), 16, &cfg(7)).unwrap();
        assert!(v <= 1e-4, "got {v}");
    }

    #[test]
    fn ree_matches_closed_form_on_bell_state() {
        let bd = BellDiagonalState::from_c(1.0, -1.0, 1.0).unwrap();
        let v = ree_upper_bound(&density_matrix_of(&bd), 16, &cfg(7)).unwrap();
        assert!((v - 1.0).abs() < 1e-3, "got {v}");
    }

    #[test]
    fn ree_matches_closed_form_on_mixed_entangled_state() {
        let bd = BellDiagonalState::from_lambdas([0.85, 0.05, 0.05, 0.05]).unwrap();
        let v = ree_upper_bound(&density_matrix_of(&bd), 16, &cfg(7)).unwrap();
        let e = entanglement_bd(&bd);
        assert!(v - e >= -1e-6 && v - e <= 1e-3, "gap {}", v - e);
    }

    #[test]
    fn ree_rejects_small_ansatz() {
        let bd = BellDiagonalState::from_c(0.0, 0.0, 0.0).unwrap();
        assert!(ree_upper_bound(&density_matrix_of(&bd), 3, &cfg(7)).is_err());
    }

    #[test]
    fn steering_bound_zero_cases() {
        assert_eq!(
            steering_bound_bd(&BellDiagonalState::from_c(0.0, 0.0, 0.0).unwrap(), &cfg(7)).unwrap(),
            0.0
        );
        // boundary family, exactly unsteerable
        let s = 2f64.sqrt() / 2.0;
        let fam = BellDiagonalState::from_c_unchecked(s, s, 0.2);
        assert_eq!(steering_bound_bd(&fam, &cfg(7)).unwrap(), 0.0);
    }

    #[test]
    fn steering_bound_positive_and_below_entanglement() {
        let bd = BellDiagonalState::from_c(-0.8, -0.8, -0.8).unwrap();
        let v = steering_bound_bd(&bd, &cfg(7)).unwrap();
        assert!(v > 0.0);
        assert!(v <= entanglement_bd(&bd) + 1e-6);
        let n = nonlocality_bound_bd(&bd, &cfg(7)).unwrap();
        assert!((v - n).abs() < 1e-6);
    }

    #[test]
    fn steering_bound_zero_iff_unsteerable_on_samples() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let c = cfg(19);
        for _ in 0..200 {
            let bd = sample_bell_diagonal(&mut rng);
            let steerable = top_two_c_squared(bd.c()) > 1.0 + crate::bell::CRITERION_TOL;
            let v = steering_bound_bd(&bd, &c).unwrap();
            if steerable {
                assert!(v > 0.0);
            } else {
                assert_eq!(v, 0.0);
            }
        }
    }

    #[test]
    fn ree_gap_on_sampled_entangled_states() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let c = cfg(23);
        for _ in 0..10 {
            let bd = sample_entangled_bell_diagonal(&mut rng);
            let v = ree_upper_bound(&density_matrix_of(&bd), 16, &c).unwrap();
            let e = entanglement_bd(&bd);
            assert!(v - e >= -1e-6 && v - e <= 1e-3, "gap {}", v - e);
        }
    }
}
