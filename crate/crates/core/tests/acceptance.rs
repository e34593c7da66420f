//! Acceptance suite: one PASS/FAIL line per criterion, with the measured
//! values on indented lines. Runs every reference scenario at full
//! resolution, so it takes several minutes on one core.

use std::time::Instant;

use qevap::analytic::{coefficients, overlap_oracle, Orientation, StepEigenParams};
use qevap::domain::{classical_supra_barrier_probability, monochromatic_barrier_transmission, ParticleSpec};
use qevap::experiments::figures::{
    default_kick_times, fig1_configs, kick_time_spec, quadratic_law, sign_ratios, Fig3Case,
};
use qevap::experiments::properties::{default_ramp_widths, electron_wavelength};
use qevap::experiments::scenarios::*;
use qevap::experiments::*;
use qevap::io::table::{Format, Table};
use qevap::observables::supra_barrier_population;
use qevap::propagator::apply_kick_instant;
use qevap::units::{ev, to_ev};
use rand::{Rng, SeedableRng};

struct Suite {
    failed: Vec<u32>,
    drifts: Vec<(String, f64)>,
}

/// One sub-check of a criterion.
struct Check {
    ok: bool,
    line: String,
}

fn check(ok: bool, line: String) -> Check {
    Check { ok, line }
}

impl Suite {
    fn criterion(&mut self, id: u32, title: &str, checks: Vec<Check>) {
        let ok = checks.iter().all(|c| c.ok);
        println!("{} criterion {id}: {title}", if ok { "PASS" } else { "FAIL" });
        for c in checks {
            println!("    [{}] {}", if c.ok { "ok" } else { "x" }, c.line);
        }
        if !ok {
            self.failed.push(id);
        }
    }

    fn drift(&mut self, label: impl Into<String>, d: f64) {
        self.drifts.push((label.into(), d));
    }

    fn runs(&mut self, runs: &[ScenarioRun]) {
        for r in runs {
            self.drift(r.label.clone(), r.norm_drift);
        }
    }

    fn points(&mut self, label: &str, points: &[SweepPoint]) {
        for p in points {
            self.drift(format!("{label} {:e}", p.value), p.norm_drift);
        }
    }
}

fn within(value: f64, target: f64, rel: f64) -> bool {
    (value / target - 1.0).abs() <= rel
}

fn within_factor(value: f64, target: f64, factor: f64) -> bool {
    value >= target / factor && value <= target * factor
}

fn series(points: &[SweepPoint]) -> Vec<(f64, f64)> {
    points.iter().map(|p| (p.value, p.result.transmission)).collect()
}

fn lookup(series: &[(f64, f64)], q: f64) -> f64 {
    series
        .iter()
        .find(|p| (p.0 - q).abs() <= 1e-9 * q.abs().max(1.0))
        .map(|p| p.1)
        .expect("value is in the sweep")
}

fn main() {
    let start = Instant::now();
    let mut suite = Suite {
        failed: Vec::new(),
        drifts: Vec::new(),
    };
    let electron = ParticleSpec::electron();
    let packet = electron_packet();
    let k_bar = packet.k_bar;
    let t0 = electron_arrival_time();

    // 1 and 2: the four reference runs
    let fig1 = run_fig1_scenarios(1).expect("reference runs");
    suite.runs(&fig1.runs);
    let t = |label: &str| fig1.get(label).unwrap().transmission();
    let mono = monochromatic_barrier_transmission(ev(ELECTRON_ENERGY_EV), ev(ELECTRON_V0_EV), BARRIER_WIDTH, &electron)
        .unwrap();
    let classical = classical_supra_barrier_probability(k_bar, packet.delta_k(), ev(ELECTRON_V0_EV), &electron).unwrap();
    suite.criterion(
        1,
        "barrier baselines",
        vec![
            check(
                within(t("barrier_no_kick"), 1.2e-9, 0.10),
                format!("no-kick T = {:.4e} (1.2e-9 +- 10%)", t("barrier_no_kick")),
            ),
            check(within(mono, 4.5e-10, 0.05), format!("monochromatic T = {mono:.4e} (4.5e-10 +- 5%)")),
            check(
                within(classical, 0.7e-15, 0.05),
                format!("classical erfc = {classical:.4e} (0.7e-15 +- 5%)"),
            ),
        ],
    );
    suite.criterion(
        2,
        "kick before and during the interaction",
        vec![
            check(
                within(t("barrier_kick_0"), 1.5e-9, 0.15),
                format!("barrier kick at 0: T = {:.4e} (1.5e-9 +- 15%)", t("barrier_kick_0")),
            ),
            check(
                within_factor(t("barrier_kick_t0"), 1.1e-6, 1.5),
                format!("barrier kick at t0: T = {:.4e} (1.1e-6 within x1.5)", t("barrier_kick_t0")),
            ),
            check(
                within_factor(t("step_kick_t0"), 1.4e-6, 1.5),
                format!("step kick at t0: T = {:.4e} (1.4e-6 within x1.5)", t("step_kick_t0")),
            ),
        ],
    );

    // 3: kick-time dependence
    let sweep = sweep_kick_time(&kick_time_spec(default_kick_times(), 1));
    let checks = match &sweep {
        Ok(s) => {
            suite.points("kick time", &s.points);
            let fit = s.fit;
            let duration = packet.interaction_duration(&electron);
            let t_at_zero = s.series()[0].1;
            let core = fit.residual_within(&s.series(), 1.5);
            vec![
                check(
                    (fit.t0 - 4.5e-15).abs() <= 0.3e-15,
                    format!("fitted t0 = {:.3} fs (4.5 +- 0.3 fs)", fit.t0 * 1e15),
                ),
                check(
                    within(2.0 * fit.delta_t, 1.2e-15, 0.25),
                    format!("2 dt = {:.3} fs (1.2 fs +- 25%)", 2.0 * fit.delta_t * 1e15),
                ),
                check(
                    within(2.0 * fit.delta_t, duration, 0.25),
                    format!("2 dt / (2 m sigma / hbar k_bar) = {:.3} (1 +- 25%)", 2.0 * fit.delta_t / duration),
                ),
                check(
                    within_factor(fit.peak, 1.4e-6, 1.5),
                    format!("T_max = {:.4e} (1.4e-6 within x1.5)", fit.peak),
                ),
                check(core < 0.3, format!("log10 residual over t0 +- 1.5 dt = {core:.3} (< 0.3)")),
                check(
                    t_at_zero / fit.peak < 1e-2,
                    format!("T(t_k = 0) / T_max = {:.2e} (< 1e-2)", t_at_zero / fit.peak),
                ),
            ]
        }
        Err(e) => vec![check(false, format!("sweep or fit failed: {e}"))],
    };
    suite.criterion(3, "Gaussian dependence on the kick time", checks);

    // 4 and 6b: kick-strength curves
    let magnitudes = [0.0025, 0.005, 0.01, 0.015, 0.02];
    let q_values: Vec<f64> = magnitudes
        .iter()
        .rev()
        .map(|m| -m * k_bar)
        .chain(magnitudes.iter().map(|m| m * k_bar))
        .collect();
    let b = sweep_q(Fig3Case::B, q_values.clone(), 1).expect("curve b");
    let c = sweep_q(Fig3Case::C, q_values.clone(), 1).expect("curve c");
    let a = sweep_q(Fig3Case::A, vec![-ELECTRON_Q, ELECTRON_Q], 1).expect("curve a");
    suite.points("curve b", &b);
    suite.points("curve c", &c);
    suite.points("curve a", &a);
    let (sb, sc, sa) = (series(&b), series(&c), series(&a));
    let mut checks = Vec::new();
    for (name, s) in [("b", &sb), ("c", &sc)] {
        for (q, ratio) in sign_ratios(s) {
            if q <= 0.01 * k_bar * (1.0 + 1e-9) {
                checks.push(check(
                    within(ratio, 1.0, 0.05),
                    format!("({name}) T(q)/T(-q) at |q| = {:.4} k_bar: {ratio:.4} (1 +- 5%)", q / k_bar),
                ));
            }
        }
        for sign in [1.0, -1.0] {
            let ratio = lookup(s, sign * 0.005 * k_bar) / lookup(s, sign * 0.0025 * k_bar);
            checks.push(check(
                within(ratio, 4.0, 0.10),
                format!("({name}) T(2q)/T(q) at q = {:+.4} k_bar: {ratio:.4} (4 +- 10%)", sign * 0.0025),
            ));
        }
        match quadratic_law(s, 0.02 * k_bar) {
            Ok(fit) => checks.push(check(
                fit.max_deviation < 0.10,
                format!(
                    "({name}) T = alpha q^2 up to 0.02 k_bar: worst deviation {:.1}% (< 10%)",
                    100.0 * fit.max_deviation
                ),
            )),
            Err(e) => checks.push(check(false, format!("({name}) quadratic fit failed: {e}"))),
        }
    }
    let (t_minus, t_plus, t_zero) = (sa[0].1, sa[1].1, t("barrier_no_kick"));
    checks.push(check(
        t_plus > t_zero && t_zero > t_minus,
        format!("(a) T(+q) = {t_plus:.4e} > T(0) = {t_zero:.4e} > T(-q) = {t_minus:.4e} at q = 1e8 1/m"),
    ));
    let bc: Vec<f64> = sb.iter().zip(&sc).map(|(x, y)| y.1 / x.1).collect();
    let (lo, hi) = bc.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &r| (l.min(r), h.max(r)));
    checks.push(check(
        lo >= 1.0 / 1.5 && hi <= 1.5,
        format!("T_c / T_b over the curve in [{lo:.3}, {hi:.3}] (within x1.5)"),
    ));
    suite.criterion(4, "kick-strength curves", checks);

    // 5: energy
    let free = free_space_kick(ELECTRON_Q).expect("free kick");
    let step = turning_point_transfer(&electron_config(Geometry::Step), ELECTRON_Q).expect("turning point");
    suite.criterion(
        5,
        "energy transfer laws",
        vec![
            check(
                within(to_ev(free.kicked), 5.09, 0.005),
                format!("free-space kick: E_f = {:.4} eV (5.09 eV +- 0.5%)", to_ev(free.kicked)),
            ),
            check(
                step.relative_error() <= 0.10,
                format!(
                    "at the step (t = {:.3} fs): E_f - E_i = {:.4e} eV, hbar^2 q^2/2m = {:.4e} eV (+- 10%)",
                    step.t_turning * 1e15,
                    to_ev(step.transfer),
                    to_ev(step.quadratic)
                ),
            ),
        ],
    );

    // 6: closed forms against the oracle, model against the simulator
    let unit = StepEigenParams::new(0.5, ParticleSpec::with_hbar(1.0, 1.0).unwrap()).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    while samples < 10 {
        let k: f64 = rng.gen_range(0.05..0.95);
        let kp: f64 = rng.gen_range(1.05..3.0);
        let q: f64 = rng.gen_range(-0.1..0.1);
        let p = (kp * kp - 1.0).sqrt();
        let gaps = [kp - (k + q).abs(), kp - (k - q).abs(), (kp + q).abs() - k, p - q.abs(), q.abs()];
        if gaps.iter().any(|g| g.abs() < 0.02) {
            continue;
        }
        samples += 1;
        let closed = coefficients(k, kp, q, &unit).expect("off-pole sample");
        for (orientation, exact) in [(Orientation::LeftIncident, closed.c_plus), (Orientation::RightIncident, closed.c_minus)] {
            let rel = match overlap_oracle(k, kp, orientation, q, &unit) {
                Ok(v) => (v - exact).norm() / exact.norm(),
                Err(_) => f64::INFINITY,
            };
            worst = worst.max(rel);
        }
    }
    let mut checks = vec![check(
        worst < 1e-3,
        format!("closed forms vs oracle on 10 random samples: worst relative error {worst:.2e} (< 1e-3)"),
    )];
    for p in &c {
        if p.value.abs() <= 0.02 * k_bar * (1.0 + 1e-9) {
            match analytic_for_config(&p.config) {
                Ok(model) => {
                    let ratio = model.transmission / p.result.transmission;
                    checks.push(check(
                        within(ratio, 1.0, 0.25),
                        format!(
                            "curve c q = {:+.4} k_bar: model {:.4e}, simulation {:.4e}, ratio {ratio:.4} (1 +- 25%)",
                            p.value / k_bar,
                            model.transmission,
                            p.result.transmission
                        ),
                    ))
                }
                Err(e) => checks.push(check(false, format!("model failed at q = {:e}: {e}", p.value))),
            }
        }
    }
    suite.criterion(6, "analytic and numerical cross-validation", checks);

    // 7: gradual kick
    let gradual = gradual_kick_study(ELECTRON_Q, 1e-16).expect("gradual kick");
    let longer = gradual_kick_study(ELECTRON_Q, 2e-16).expect("gradual kick");
    suite.criterion(
        7,
        "gradual kick",
        vec![check(
            gradual.relative_difference() <= 0.10,
            format!(
                "duration 1e-16 s: T = {:.4e} against {:.4e} instantaneous, {:.1}% apart (<= 10%); at 2e-16 s {:.1}%",
                gradual.gradual,
                gradual.instantaneous,
                100.0 * gradual.relative_difference(),
                100.0 * longer.relative_difference()
            ),
        )],
    );

    // 9: helium (before 8 so that its drift is included)
    let helium = helium_scenario().expect("helium");
    suite.drift("helium", helium.max_norm_drift);
    let helium_checks = vec![
        check(helium.baseline < 1e-10, format!("baseline T = {:.3e} (< 1e-10)", helium.baseline)),
        check(
            (1e-4..=2e-3).contains(&helium.kicked),
            format!(
                "kicked T = {:.3e} in [1e-4, 2e-3] (model {:.3e}, delta_k / k_bar = {:.4})",
                helium.kicked, helium.analytic, helium.rel_delta_k
            ),
        ),
        check(
            within(to_ev(helium.energy_transfer).abs(), 1.3e-12, 0.05),
            format!("energy transfer {:.4e} eV (1.3e-12 +- 5%)", to_ev(helium.energy_transfer)),
        ),
    ];

    // 10: properties
    let ramps = ramp_width_sweep(default_ramp_widths(), 1).expect("ramp sweep");
    suite.points("ramp", &ramps);
    let lambda = electron_wavelength();
    let main_ramps: Vec<&SweepPoint> = ramps.iter().filter(|p| p.value <= lambda * (1.0 + 1e-9)).collect();
    let decreasing = main_ramps.windows(2).all(|w| w[1].result.transmission < w[0].result.transmission);
    let sharp = t("step_kick_t0");
    let wide = ramps.last().unwrap();
    let g_plus = moving_potential_equivalence(ELECTRON_Q).expect("moving step");
    let g_minus = moving_potential_equivalence(-ELECTRON_Q).expect("moving step");
    let serial: Vec<SweepPoint> = [0, 4, 9].iter().map(|&i| b[i].clone()).collect();
    let spec = SweepSpec::new(Fig3Case::B.base(), SweepAxis::KickQ, serial.iter().map(|p| p.value).collect());
    let parallel = run_sweep(&spec.clone().with_parallelism(3)).expect("parallel sweep");
    let render = |points: &[SweepPoint]| {
        let mut table = Table::new(&["q_per_m", "T", "plateau_residual", "norm_drift"]);
        for p in points {
            table.push(vec![
                p.value.into(),
                p.result.transmission.into(),
                p.result.plateau_residual.into(),
                p.norm_drift.into(),
            ]);
        }
        table.render(Format::Csv)
    };
    let identical = render(&serial) == render(&parallel)
        && serial.iter().zip(&parallel).all(|(x, y)| x.result == y.result && x.config == y.config);

    // 8: numerics
    let refinement = refinement_study(fig1_configs(), 1).expect("refinement");
    for r in &refinement {
        suite.drift(format!("{} refined", r.label), r.fine_norm_drift);
    }
    let (worst_label, worst_drift) = suite
        .drifts
        .iter()
        .cloned()
        .fold((String::new(), 0.0), |acc, (l, d)| if d > acc.1 { (l, d) } else { acc });
    let mut checks = vec![check(
        worst_drift < 1e-6,
        format!(
            "largest norm drift over {} runs: {worst_drift:.2e} ({worst_label}) (< 1e-6)",
            suite.drifts.len()
        ),
    )];
    for r in &refinement {
        checks.push(check(
            r.relative_shift() < 0.03,
            format!(
                "{}: T = {:.5e} -> {:.5e} with dt/2 and dx/2, shift {:.2}% (< 3%)",
                r.label,
                r.coarse,
                r.fine,
                100.0 * r.relative_shift()
            ),
        ));
    }
    suite.criterion(8, "numerical quality", checks);
    suite.criterion(9, "cold helium prediction", helium_checks);
    suite.criterion(
        10,
        "property suites",
        vec![
            check(
                decreasing,
                format!(
                    "T decreasing over w = {{0, 1/8, 1/4, 1/2, 1}} lambda: {}",
                    main_ramps
                        .iter()
                        .map(|p| format!("{:.3e}", p.result.transmission))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            ),
            check(
                within(ramps[0].result.transmission, sharp, 0.01),
                format!("w = 0 reproduces the sharp step: {:.4e} vs {sharp:.4e}", ramps[0].result.transmission),
            ),
            check(
                wide.result.transmission < 1e-2 * sharp,
                format!(
                    "w = {:.0} lambda: T = {:.3e} (< 1e-2 of the sharp step)",
                    wide.value / lambda,
                    wide.result.transmission
                ),
            ),
            check(
                within_factor(g_plus.ratio(), 1.0, 2.0),
                format!("moving step / kick at q = 1e8 1/m: {:.4} (within x2)", g_plus.ratio()),
            ),
            check(
                within(g_minus.moving, g_plus.moving, 0.10),
                format!(
                    "velocity reversed: T_moving {:.4e} vs {:.4e} (+- 10%)",
                    g_minus.moving, g_plus.moving
                ),
            ),
            check(identical, "sweep at parallelism 3 is byte-identical to parallelism 1".to_string()),
        ],
    );

    // informational
    let mut config = electron_config(Geometry::Step);
    config.snapshot_times = vec![t0];
    let traj = qevap::propagator::propagate(&config).expect("step run");
    let kicked = apply_kick_instant(&traj.snapshots[0].psi, ELECTRON_Q).unwrap();
    let kappa0 = electron.wave_number(ev(ELECTRON_V0_EV));
    let projection = supra_barrier_population(&kicked, kappa0, 0.0).expect("projection");
    println!(
        "INFO supra-barrier population after the t0 kick {:.4e}, transmitted part {:.4e}, simulated T {:.4e} (population / T = {:.2})",
        projection.population,
        projection.transmitted,
        sharp,
        projection.population / sharp
    );
    for w in &helium.warnings {
        println!("INFO helium warning: {w}");
    }
    match helium_sensitivity(&qevap::experiments::helium::HELIUM_SENSITIVITY) {
        Ok(points) => {
            for p in points {
                println!(
                    "INFO helium delta_k / k_bar = {:.2}: kicked T = {:.3e}, model {}",
                    p.rel_delta_k,
                    p.kicked,
                    p.analytic.map_or("n/a (packet partly above V0)".to_string(), |a| format!("{a:.3e}"))
                );
            }
        }
        Err(e) => println!("INFO helium sensitivity failed: {e}"),
    }

    println!("acceptance finished in {:.0} s", start.elapsed().as_secs_f64());
    if suite.failed.is_empty() {
        println!("all 10 criteria pass");
    } else {
        println!("failing criteria: {:?}", suite.failed);
        std::process::exit(1);
    }
}
