//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line. Tolerances and sample counts are pinned here and
//! should not be loosened without a matching change in the README.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcorr::bell::{
    coherence_bd, coherence_minus_discord_bd, discord_bd, entanglement_bd, nearest_separable_bd,
    steerable_two_pm,
};
use qcorr::divergences::kl_spectrum;
use qcorr::states::{
    density_matrix_of, sample_bell_diagonal, sample_entangled_bell_diagonal,
    sample_steerable_bell_diagonal, BellDiagonalState, PureSchmidtState,
};
use qcorr::suites::{steering_grid_oracle, suite_convexity, suite_criteria, suite_monotonicity};
use qcorr::sweep::{sweep_grid_serial, SweepQuantity, SweepSpec};
use qcorr::util::binary_entropy;
use qcorr::variational::{
    discord_variational, nonlocality_bound_bd, ree_upper_bound, steering_bound_bd, OptimizerConfig,
};
use qcorr::{chsh_violating, sweep_grid};

struct Criterion {
    label: &'static str,
    failed: Vec<String>,
}

impl Criterion {
    fn new(label: &'static str) -> Self {
        Criterion { label, failed: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failed.push(detail());
        }
    }

    fn finish(self) {
        if self.failed.is_empty() {
            println!("PASS: {}", self.label);
        } else {
            println!("FAIL: {} ({})", self.label, self.failed[0]);
            panic!("{}: {:?}", self.label, &self.failed[..self.failed.len().min(5)]);
        }
    }
}

#[test]
fn criterion_1_discord_entanglement_surface() {
    let mut c = Criterion::new(
        "criterion 1: D - E surface at c3 = 0.4, 201x201, nonnegative, < 10 s single-threaded",
    );
    let spec = SweepSpec::new(SweepQuantity::DMinusE, 0.4, 201).unwrap();
    let start = Instant::now();
    let points = sweep_grid_serial(&spec);
    let elapsed = start.elapsed().as_secs_f64();
    c.check(points.len() == 201 * 201, || "wrong row count".into());
    let mut valid = 0usize;
    for p in &points {
        if let Some(v) = p.value {
            valid += 1;
            c.check(v >= -1e-9, || format!("D-E = {v} at ({}, {})", p.c1, p.c2));
        }
    }
    c.check(valid > 0, || "no valid lattice points".into());
    c.check(elapsed < 10.0, || format!("took {elapsed:.2} s"));
    c.finish();
}

#[test]
fn criterion_2_coherence_discord_surface() {
    let mut c = Criterion::new(
        "criterion 2: Coh - D surface at c3 = 0.5, nonnegative, closed difference within 1e-10",
    );
    let spec = SweepSpec::new(SweepQuantity::CMinusD, 0.5, 201).unwrap();
    let points = sweep_grid(&spec);
    for p in &points {
        let Some(v) = p.value else { continue };
        c.check(v >= -1e-9, || format!("Coh-D = {v} at ({}, {})", p.c1, p.c2));
        let bd = BellDiagonalState::from_c(p.c1, p.c2, 0.5).unwrap();
        let direct = coherence_bd(&bd) - discord_bd(&bd);
        c.check(
            (coherence_minus_discord_bd(&bd) - direct).abs() <= 1e-10,
            || format!("difference formula off by {:e}", (coherence_minus_discord_bd(&bd) - direct).abs()),
        );
    }
    c.finish();
}

#[test]
fn criterion_3_entangled_but_unsteerable_family() {
    let mut c = Criterion::new(
        "criterion 3: c1 = c2 = sqrt(2)/2 family, 81 points of c3 in (-0.4, 0.4): E > 0, never steerable",
    );
    let s = 2f64.sqrt() / 2.0;
    for i in 1..=81usize {
        // 81 strictly interior points of a 83-point linspace over [-0.4, 0.4]
        let c3 = -0.4 + 0.8 * i as f64 / 82.0;
        let fam = BellDiagonalState::from_c_unchecked(s, s, c3);
        let e = entanglement_bd(&fam);
        c.check(e > 0.0, || format!("E = {e} at c3 = {c3}"));
        c.check(!steerable_two_pm(&fam).0, || format!("steerable at c3 = {c3}"));
        c.check(!chsh_violating(&fam).0, || format!("CHSH-violating at c3 = {c3}"));
    }
    let center = BellDiagonalState::from_c_unchecked(s, s, 0.0);
    let oracle = 1.0 - binary_entropy((1.0 + 2f64.sqrt()) / 4.0);
    c.check(
        (entanglement_bd(&center) - oracle).abs() <= 1e-9,
        || format!("E(c3=0) = {} vs {oracle}", entanglement_bd(&center)),
    );
    c.finish();
}

#[test]
fn criterion_4_ree_oracle() {
    let mut c = Criterion::new(
        "criterion 4: REE bound gap in [-1e-6, 1e-3] on 100 samples; projection KL within 1e-8 on 1000; < 60 s",
    );
    let start = Instant::now();
    let cfg = OptimizerConfig::with_seed(41);
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..100 {
        let bd = sample_entangled_bell_diagonal(&mut rng);
        let bound = ree_upper_bound(&density_matrix_of(&bd), 16, &cfg).unwrap();
        let gap = bound - entanglement_bd(&bd);
        c.check((-1e-6..=1e-3).contains(&gap), || format!("REE gap {gap:e} at c = {:?}", bd.c()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut found = 0usize;
    while found < 1000 {
        let bd = sample_bell_diagonal(&mut rng);
        if bd.lambda_max() <= 0.5 {
            continue;
        }
        found += 1;
        let proj = nearest_separable_bd(&bd).unwrap();
        let kl = kl_spectrum(&bd.lambdas(), &proj.lambdas()).unwrap().value;
        c.check(
            (kl - entanglement_bd(&bd)).abs() <= 1e-8,
            || format!("projection KL off by {:e}", (kl - entanglement_bd(&bd)).abs()),
        );
    }
    let elapsed = start.elapsed().as_secs_f64();
    c.check(elapsed < 60.0, || format!("took {elapsed:.1} s"));
    c.finish();
}

#[test]
fn criterion_5_discord_oracle() {
    let mut c = Criterion::new(
        "criterion 5: variational discord within 1e-4 of closed form on 200 + 50 states; < 60 s",
    );
    let start = Instant::now();
    let cfg = OptimizerConfig::with_seed(53);
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..200 {
        let bd = sample_bell_diagonal(&mut rng);
        let var = discord_variational(&density_matrix_of(&bd), &cfg).unwrap();
        let gap = (var - discord_bd(&bd)).abs();
        c.check(gap <= 1e-4, || format!("discord gap {gap:e} at c = {:?}", bd.c()));
    }
    for i in 0..50usize {
        let alpha = ((i as f64 + 0.5) / 50.0).sqrt();
        let ps = PureSchmidtState::new(alpha).unwrap();
        let var = discord_variational(&ps.density_matrix(), &cfg).unwrap();
        let gap = (var - binary_entropy(alpha * alpha)).abs();
        c.check(gap <= 1e-4, || format!("pure-state discord gap {gap:e} at alpha = {alpha}"));
    }
    let elapsed = start.elapsed().as_secs_f64();
    c.check(elapsed < 60.0, || format!("took {elapsed:.1} s"));
    c.finish();
}

#[test]
fn criterion_6_criterion_equivalence() {
    let mut c = Criterion::new(
        "criterion 6: spectrum and correlation-matrix criteria agree exactly on 100000 samples",
    );
    let result = suite_criteria(100_000, 7);
    c.check(result.failures == 0, || format!("{} disagreements", result.failures));
    c.finish();
}

#[test]
fn criterion_7_divergence_properties() {
    let mut c = Criterion::new(
        "criterion 7: joint convexity and CPTP monotonicity within 1e-9 on 1000 tuples each",
    );
    let convexity = suite_convexity(1000, 7);
    c.check(
        convexity.failures == 0 && convexity.worst_violation <= 1e-9,
        || format!("convexity worst violation {:e}", convexity.worst_violation),
    );
    let monotonicity = suite_monotonicity(1000, 7);
    c.check(
        monotonicity.failures == 0 && monotonicity.worst_violation <= 1e-9,
        || format!("monotonicity worst violation {:e}", monotonicity.worst_violation),
    );
    c.finish();
}

#[test]
fn criterion_8_hierarchy_and_steering_bounds() {
    let mut c = Criterion::new(
        "criterion 8: D >= E >= 0, Coh >= D on 10000 samples; zero bounds when unsteerable; grid agreement within 1e-3 on 50",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = OptimizerConfig::with_seed(7);
    for _ in 0..10_000 {
        let bd = sample_bell_diagonal(&mut rng);
        let d = discord_bd(&bd);
        let e = entanglement_bd(&bd);
        let coh = coherence_bd(&bd);
        c.check(d >= e - 1e-9, || format!("D < E by {:e}", e - d));
        c.check(e >= -1e-9, || format!("E = {e}"));
        c.check(coh >= d - 1e-9, || format!("Coh < D by {:e}", d - coh));
        if !steerable_two_pm(&bd).0 {
            let s = steering_bound_bd(&bd, &cfg).unwrap();
            let n = nonlocality_bound_bd(&bd, &cfg).unwrap();
            c.check(s == 0.0 && n == 0.0, || format!("nonzero bound {s} / {n} on unsteerable state"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let bd = sample_steerable_bell_diagonal(&mut rng);
        let bound = steering_bound_bd(&bd, &cfg).unwrap();
        let grid = steering_grid_oracle(&bd, 61);
        c.check(
            (bound - grid).abs() <= 1e-3,
            || format!("bound {bound} vs grid {grid} at c = {:?}", bd.c()),
        );
    }
    c.finish();
}
