//! Self-checks run by `ghzshare verify`.

use std::f64::consts::{FRAC_PI_4, SQRT_2};

use ghzshare_core::bell::{self, Inequality};
use ghzshare_core::feasibility::{self, p_samples, phi_samples};
use ghzshare_core::lhvbound;
use ghzshare_core::luders::{chain, luders_update};
use ghzshare_core::qstate::{self, ghz, identity_measurement, to_density};
use ghzshare_core::scenario::{self, genuine_sequence, standard_sequence, CharlieCase};
use ghzshare_core::{CharlieStrategy, Complex, ComplexMatrix, DensityOperator, InputDistribution, ScenarioKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Agreement required between simulated and closed-form values.
    pub tol: f64,
    /// Grid resolution for the scan checks.
    pub grid: usize,
    /// Perturbs one closed-form value so that its check must fail.
    pub inject_fault: bool,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            grid: 500,
            inject_fault: false,
            seed: 0x5eed,
        }
    }
}

pub struct Check {
    pub name: &'static str,
    /// The property being established, in words or as a formula.
    pub anchor: &'static str,
    run: fn(&VerifyOptions) -> Result<String, String>,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub anchor: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {} ({}): {}", self.name, self.anchor, self.detail)
    }
}

pub const CHECKS: &[Check] = &[
    Check {
        name: "matrix algebra identities",
        anchor: "Kronecker associativity, trace cyclicity, (A⊗B)† = A†⊗B†",
        run: matrix_identities,
    },
    Check {
        name: "GHZ density invariants",
        anchor: "Hermitian, unit trace, PSD, pure",
        run: ghz_invariants,
    },
    Check {
        name: "scenario measurements are projective",
        anchor: "E² = E, E† = E, E₀ + E₁ = I",
        run: projective_settings,
    },
    Check {
        name: "Lüders update preserves states",
        anchor: "trace and positivity after random updates",
        run: luders_preserves_states,
    },
    Check {
        name: "identity measurement is a fixed point",
        anchor: "ρ unchanged by (I, I)",
        run: identity_fixed_point,
    },
    Check {
        name: "Mermin strategy values",
        anchor: "values 4, 2 (case i) and 2, 3 (case ii) at φ = π/4",
        run: mermin_strategy_values,
    },
    Check {
        name: "Svetlichny strategy values",
        anchor: "values 4√2, 2√2 (case i) and 2√2, 2√2(1 + v) (case ii) at φ = π/4",
        run: svetlichny_strategy_values,
    },
    Check {
        name: "standard mixture closed-form match",
        anchor: "M1 = (2p + 2) sin 2φ, M2 = (3 − p) sin 2φ",
        run: standard_closed_form,
    },
    Check {
        name: "genuine mixture closed-form match",
        anchor: "S1 = 2√2 (p + 1) sin 2φ, S2 = 2√2 [1 + v(1 − p)] sin 2φ",
        run: genuine_closed_form,
    },
    Check {
        name: "classical bounds by enumeration",
        anchor: "64 local strategies reach 2, 3072 hybrid strategies reach 4",
        run: classical_bounds,
    },
    Check {
        name: "threshold values",
        anchor: "½ asin(3/4), 1/√2, ½ asin(√2(1 + v)/(1 + 2v))",
        run: thresholds,
    },
    Check {
        name: "genuine window is empty at half bias",
        anchor: "no double violation for v = 1/2",
        run: unbiased_genuine_scan,
    },
    Check {
        name: "scan agrees with closed-form windows",
        anchor: "flagged cells match the windows away from their edges",
        run: scan_windows,
    },
];

pub fn run_all(opts: &VerifyOptions) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|c| {
            let (passed, detail) = match (c.run)(opts) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckOutcome {
                name: c.name,
                anchor: c.anchor,
                passed,
                detail,
            }
        })
        .collect()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> ComplexMatrix {
    let data = (0..r * c)
        .map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::new(r, c, data).expect("sized data")
}

fn random_state(rng: &mut ChaCha8Rng) -> DensityOperator {
    let g = random_matrix(rng, 8, 8);
    let m = g.matmul(&g.adjoint()).expect("square");
    let t = m.trace().expect("square").re;
    let m = m.scale_real(1.0 / t);
    let m = m.add(&m.adjoint()).expect("square").scale_real(0.5);
    DensityOperator::new(m).expect("Gram matrices are states")
}

fn random_projective(rng: &mut ChaCha8Rng) -> ghzshare_core::DichotomicMeasurement {
    if rng.random_bool(0.2) {
        return identity_measurement();
    }
    let t: f64 = rng.random_range(0.0..std::f64::consts::PI);
    let a: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let o = qstate::bloch_obs(t.sin() * a.cos(), t.sin() * a.sin(), t.cos()).expect("unit vector");
    qstate::projective_from_observable(&o).expect("traceless observable")
}

fn matrix_identities(opts: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let trials = 200;
    for _ in 0..trials {
        let (a, b, c) = (
            random_matrix(&mut rng, 2, 2),
            random_matrix(&mut rng, 2, 2),
            random_matrix(&mut rng, 2, 2),
        );
        let d = a.kron(&b).kron(&c).max_abs_diff(&a.kron(&b.kron(&c))).map_err(err)?;
        ensure(d <= 1e-15, || format!("kron associativity off by {d:e}"))?;

        let (x, y) = (random_matrix(&mut rng, 4, 4), random_matrix(&mut rng, 4, 4));
        let d = (x.matmul(&y).map_err(err)?.trace().map_err(err)? - y.matmul(&x).map_err(err)?.trace().map_err(err)?)
            .norm();
        ensure(d <= 1e-12, || format!("trace cyclicity off by {d:e}"))?;

        let d = a
            .kron(&b)
            .adjoint()
            .max_abs_diff(&a.adjoint().kron(&b.adjoint()))
            .map_err(err)?;
        ensure(d == 0.0, || format!("adjoint of kron off by {d:e}"))?;
    }
    Ok(format!("{trials} random triples"))
}

fn ghz_invariants(_: &VerifyOptions) -> Result<String, String> {
    let n = 101;
    for k in 0..n {
        let phi = FRAC_PI_4 * k as f64 / (n - 1) as f64;
        let rho = to_density(&ghz(phi).map_err(err)?);
        rho.check().map_err(|e| format!("φ = {phi}: {e}"))?;
        let purity = rho.purity();
        ensure((purity - 1.0).abs() <= 1e-12, || format!("φ = {phi}: purity {purity}"))?;
    }
    Ok(format!("{n} values of φ in [0, π/4]"))
}

fn projective_settings(_: &VerifyOptions) -> Result<String, String> {
    let mut seqs = vec![
        standard_sequence(CharlieCase::BothProjective),
        standard_sequence(CharlieCase::OneIdentity),
    ];
    for v in [0.5, 0.8, 0.9] {
        seqs.push(genuine_sequence(CharlieCase::BothProjective, v).map_err(err)?);
        seqs.push(genuine_sequence(CharlieCase::OneIdentity, v).map_err(err)?);
    }
    let mut count = 0;
    for s in &seqs {
        for charlie in &s.charlies {
            for m in [&charlie.meas_z0, &charlie.meas_z1] {
                let sum = m.effect0().add(m.effect1()).map_err(err)?;
                ensure(
                    sum.max_abs_diff(&ComplexMatrix::identity(2)).map_err(err)? <= 1e-15,
                    || "effects do not sum to I".into(),
                )?;
                for e in m.effects() {
                    ensure(e.is_idempotent(1e-12).map_err(err)?, || {
                        "effect is not idempotent".into()
                    })?;
                    ensure(e.is_hermitian(1e-12).map_err(err)?, || "effect is not Hermitian".into())?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} effects"))
}

fn luders_preserves_states(opts: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let trials = 1000;
    for _ in 0..trials {
        let rho = random_state(&mut rng);
        let q = rng.random_range(0.0..=1.0);
        let s = CharlieStrategy::new(
            random_projective(&mut rng),
            random_projective(&mut rng),
            InputDistribution::new(q).map_err(err)?,
        );
        let out = luders_update(&rho, &s);
        let dt = (out.trace() - rho.trace()).abs();
        ensure(dt <= 1e-12, || format!("trace drift {dt:e}"))?;
        ensure(out.matrix().is_psd(1e-10).map_err(err)?, || {
            "update left the PSD cone".into()
        })?;
    }
    Ok(format!("{trials} random updates"))
}

fn identity_fixed_point(opts: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let id = CharlieStrategy::new(
        identity_measurement(),
        identity_measurement(),
        InputDistribution::uniform(),
    );
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let rho = random_state(&mut rng);
        let states = chain(&rho, std::slice::from_ref(&id));
        worst = worst.max(states[1].matrix().max_abs_diff(rho.matrix()).map_err(err)?);
    }
    ensure(worst <= 1e-14, || format!("state moved by {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn compare(label: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure((got - want).abs() <= tol, || {
        format!("{label}: got {got}, expected {want}")
    })
}

fn mermin_strategy_values(opts: &VerifyOptions) -> Result<String, String> {
    let c = scenario::standard_case_values(FRAC_PI_4).map_err(err)?;
    compare("case i, first", c.both_projective.first, 4.0, opts.tol)?;
    compare("case i, second", c.both_projective.second, 2.0, opts.tol)?;
    compare("case ii, first", c.one_identity.first, 2.0, opts.tol)?;
    compare("case ii, second", c.one_identity.second, 3.0, opts.tol)?;
    Ok("(4, 2) and (2, 3)".into())
}

fn svetlichny_strategy_values(opts: &VerifyOptions) -> Result<String, String> {
    let r = 2.0 * SQRT_2;
    for v in [0.5, 0.8, 0.9] {
        let c = scenario::genuine_case_values(FRAC_PI_4, v).map_err(err)?;
        compare("case i, first", c.both_projective.first, 2.0 * r, opts.tol)?;
        compare("case i, second", c.both_projective.second, r, opts.tol)?;
        compare("case ii, first", c.one_identity.first, r, opts.tol)?;
        compare("case ii, second", c.one_identity.second, r * (1.0 + v), opts.tol)?;
    }
    Ok("v ∈ {0.5, 0.8, 0.9}".into())
}

fn standard_closed_form(opts: &VerifyOptions) -> Result<String, String> {
    let n = 41;
    let mut worst: f64 = 0.0;
    for &phi in &phi_samples(n) {
        let case = scenario::standard_case_values(phi).map_err(err)?;
        for &p in &p_samples(n) {
            let sim = case.mix(p);
            let (mut m1, m2) = scenario::standard_pair_closed(phi, p).map_err(err)?;
            if opts.inject_fault {
                m1 += 1e-6;
            }
            worst = worst.max((sim.first - m1).abs()).max((sim.second - m2).abs());
        }
    }
    ensure(worst <= opts.tol, || {
        format!("max deviation {worst:e} exceeds {:e}", opts.tol)
    })?;
    Ok(format!("{} points, max deviation {worst:.1e}", n * n))
}

fn genuine_closed_form(opts: &VerifyOptions) -> Result<String, String> {
    let n = 21;
    let mut worst: f64 = 0.0;
    for v in [0.5, 0.8, 0.9] {
        for &phi in &phi_samples(n) {
            let case = scenario::genuine_case_values(phi, v).map_err(err)?;
            for &p in &p_samples(n) {
                let sim = case.mix(p);
                let (s1, s2) = scenario::genuine_pair_closed(phi, p, v).map_err(err)?;
                worst = worst.max((sim.first - s1).abs()).max((sim.second - s2).abs());
            }
        }
    }
    ensure(worst <= opts.tol, || {
        format!("max deviation {worst:e} exceeds {:e}", opts.tol)
    })?;
    Ok(format!("{} points, max deviation {worst:.1e}", 3 * n * n))
}

fn classical_bounds(_: &VerifyOptions) -> Result<String, String> {
    let local = lhvbound::enumerate_local(Inequality::Mermin);
    ensure(local.count == 64 && local.max == 2, || {
        format!("local: {} strategies, max {}", local.count, local.max)
    })?;
    let hybrid = lhvbound::enumerate_hybrid(None);
    ensure(hybrid.count == 3072 && hybrid.max == 4, || {
        format!("hybrid: {} strategies, max {}", hybrid.count, hybrid.max)
    })?;
    for kind in [Inequality::Mermin, Inequality::Svetlichny] {
        let q = lhvbound::quantum_witness_max(kind).map_err(err)?;
        ensure(q > kind.bound(), || {
            format!("{kind:?} witness {q} does not exceed {}", kind.bound())
        })?;
    }
    ensure(
        bell::MERMIN_TERMS.len() == 4 && bell::SVETLICHNY_TERMS.len() == 8,
        || "term tables".into(),
    )?;
    Ok(format!(
        "{} local max {}, {} hybrid max {}",
        local.count, local.max, hybrid.count, hybrid.max
    ))
}

fn thresholds(_: &VerifyOptions) -> Result<String, String> {
    let t = feasibility::phi_threshold_standard();
    compare("standard φ threshold", (2.0 * t).sin(), 0.75, 1e-15)?;
    compare("standard φ threshold", t, 0.42403, 5e-5)?;
    compare(
        "bias threshold",
        feasibility::v_threshold_genuine(),
        0.5f64.sqrt(),
        1e-15,
    )?;
    compare(
        "genuine φ threshold at 0.8",
        feasibility::phi_threshold_genuine(0.8).map_err(err)?,
        0.68292,
        5e-5,
    )?;
    compare(
        "genuine φ threshold at 0.9",
        feasibility::phi_threshold_genuine(0.9).map_err(err)?,
        0.64287,
        5e-5,
    )?;
    ensure(feasibility::phi_threshold_genuine(0.7).is_err(), || {
        "threshold reported below the bias threshold".into()
    })?;
    Ok(format!("φ* = {t:.5}"))
}

fn unbiased_genuine_scan(opts: &VerifyOptions) -> Result<String, String> {
    let g = feasibility::scan(
        ScenarioKind::Genuine,
        &phi_samples(opts.grid),
        &p_samples(opts.grid),
        Some(0.5),
    )
    .map_err(err)?;
    let flagged = g.flagged_count();
    ensure(flagged == 0, || format!("{flagged} cells flagged"))?;
    Ok(format!("{} cells, none flagged", g.cells().len()))
}

fn scan_windows(opts: &VerifyOptions) -> Result<String, String> {
    let phi = phi_samples(opts.grid);
    let p = p_samples(opts.grid);
    let mut total = 0;
    for (kind, v) in [
        (ScenarioKind::Standard, None),
        (ScenarioKind::Genuine, Some(0.8)),
        (ScenarioKind::Genuine, Some(0.9)),
    ] {
        let g = feasibility::scan(kind, &phi, &p, v).map_err(err)?;
        let bad = g.window_inconsistencies();
        ensure(bad.is_empty(), || {
            format!("{} inconsistent cells in {} scan", bad.len(), kind.name())
        })?;
        total += g.flagged_count();
    }
    Ok(format!("3 scans, {total} flagged cells, all consistent"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyOptions {
        VerifyOptions {
            grid: 60,
            ..Default::default()
        }
    }

    #[test]
    fn all_checks_pass() {
        for o in run_all(&quick()) {
            assert!(o.passed, "{o}");
        }
    }

    #[test]
    fn fault_is_caught_by_name() {
        let opts = VerifyOptions {
            inject_fault: true,
            ..quick()
        };
        let failed: Vec<_> = run_all(&opts)
            .into_iter()
            .filter(|o| !o.passed)
            .map(|o| o.name)
            .collect();
        assert_eq!(failed, vec!["standard mixture closed-form match"]);
    }
}
