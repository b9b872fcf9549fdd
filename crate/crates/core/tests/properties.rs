//! Property tests over the public API of all four modules.

use std::sync::OnceLock;

use proptest::prelude::*;

use qsd_core::discriminator::{
    build_U, build_U_decomposed, make_data_state, probability, programme_for, run_protocol,
    InputState, QubitStateSpec,
};
use qsd_core::harness::{parse_angle_list, to_csv, EngineChoice, Runner, SweepConfig};
use qsd_core::nmrsim::{
    compile_protocol, evolve_traced, prepare_pseudopure, program_unitary, CompileOptions,
    PulseEngine, SpinSystem, ZMode,
};
use qsd_core::numfmt::sig12;
use qsd_core::qalgebra::{kron, Ket2, Matrix2};
use qsd_core::Degrees;

fn pulse_engine() -> &'static PulseEngine {
    static ENGINE: OnceLock<PulseEngine> = OnceLock::new();
    ENGINE
        .get_or_init(|| PulseEngine::new(SpinSystem::default(), CompileOptions::default()).unwrap())
}

/// α away from the sin α = 0 poles.
fn regular_alpha() -> impl Strategy<Value = f64> {
    prop_oneof![5.0..175.0f64, 185.0..355.0f64]
}

fn spec_params() -> impl Strategy<Value = (f64, f64, f64)> {
    (regular_alpha(), 0.0..179.0f64, 0.0..44.0f64)
}

fn bloch(theta: f64, phi: f64) -> Ket2 {
    use num_complex::Complex64;
    Ket2::new(
        Complex64::new((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phi),
    )
}

proptest! {
    #[test]
    fn u_is_unitary(alpha in 0.0..360.0f64) {
        prop_assert!(build_U(Degrees(alpha)).is_unitary(1e-12));
    }

    #[test]
    fn decomposition_matches_target(alpha in -360.0..360.0f64) {
        let d = build_U_decomposed(Degrees(alpha)).unwrap();
        prop_assert!(d.max_abs_diff(&build_U(Degrees(alpha))) <= 1e-12);
    }

    #[test]
    fn kron_acts_factorwise(
        (t1, p1, t2, p2) in (0.0..3.2f64, 0.0..6.3f64, 0.0..3.2f64, 0.0..6.3f64),
        (f1, g1, f2, g2) in (0.0..6.3f64, 0.0..6.3f64, 0.0..6.3f64, 0.0..6.3f64),
    ) {
        let rot = |f: f64, g: f64| {
            let (s, c) = (f / 2.0).sin_cos();
            Matrix2::from_real([[c, -s], [s, c]]).scale(num_complex::Complex64::from_polar(1.0, g))
        };
        let (a, b) = (rot(f1, g1), rot(f2, g2));
        let (k1, k2) = (bloch(t1, p1), bloch(t2, p2));
        let joint = kron(&a, &b).apply(&k1.kron(&k2));
        let split = a.apply(&k1).kron(&b.apply(&k2));
        prop_assert!(joint.max_abs_diff(&split) <= 1e-12);
    }

    #[test]
    fn verdicts_never_cross_and_lines_cancel((alpha, t, e) in spec_params()) {
        let s1 = QubitStateSpec::new(Degrees(t), Degrees(e), InputState::Psi1).unwrap();
        let prog = programme_for(&s1, Degrees(alpha)).unwrap();
        let r1 = run_protocol(&s1, &prog, Degrees(alpha)).unwrap();
        let r2 = run_protocol(&s1.with_state(InputState::Psi2), &prog, Degrees(alpha)).unwrap();
        prop_assert!(r1.line_00_10() >= -1e-12);
        prop_assert!((r1.line_00_10() + r2.line_00_10()).abs() <= 1e-12);
        prop_assert!(r1.line_01_11().abs() <= 1e-12);
        prop_assert!(r2.line_01_11().abs() <= 1e-12);
        prop_assert!(r1.verdict.is_consistent_with(InputState::Psi1));
        prop_assert!(r2.verdict.is_consistent_with(InputState::Psi2));
        prop_assert!((r1.probability - probability(&s1, &prog)).abs() <= 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&r1.probability));
    }

    #[test]
    fn right_angle_programme_is_the_partner_state((t, e) in (0.0..179.0f64, 0.0..44.0f64)) {
        let s1 = QubitStateSpec::new(Degrees(t), Degrees(e), InputState::Psi1).unwrap();
        let prog = programme_for(&s1, Degrees(90.0)).unwrap();
        let psi2 = make_data_state(&s1.with_state(InputState::Psi2));
        prop_assert!(prog.ket().global_phase_equal(&psi2, 1e-12));
    }

    #[test]
    fn pulse_programs_stay_unitary_and_physical(
        (alpha, t, e) in spec_params(),
        psi2 in any::<bool>(),
        sigma_zc in any::<bool>(),
    ) {
        let sys = SpinSystem::default();
        let which = if psi2 { InputState::Psi2 } else { InputState::Psi1 };
        let spec = QubitStateSpec::new(Degrees(t), Degrees(e), which).unwrap();
        let prog = programme_for(&spec.with_state(InputState::Psi1), Degrees(alpha)).unwrap();
        let events = compile_protocol(&sys, &spec, &prog, Degrees(alpha), sigma_zc);
        let u = program_unitary(&events, &sys).unwrap();
        prop_assert!(u.is_unitary(1e-10));
        let start = prepare_pseudopure(&sys).unwrap();
        for rho in evolve_traced(&start, &events, &sys) {
            prop_assert!(rho.is_hermitian(1e-10));
            prop_assert!(rho.trace_abs() <= 1e-10);
        }
    }

    #[test]
    fn engines_agree_off_grid((alpha, t, e) in spec_params(), psi2 in any::<bool>()) {
        let which = if psi2 { InputState::Psi2 } else { InputState::Psi1 };
        let spec = QubitStateSpec::new(Degrees(t), Degrees(e), which).unwrap();
        let prog = programme_for(&spec.with_state(InputState::Psi1), Degrees(alpha)).unwrap();
        let g = run_protocol(&spec, &prog, Degrees(alpha)).unwrap();
        let p = pulse_engine().run(&spec, &prog, Degrees(alpha)).unwrap();
        prop_assert!((g.probability - p.probability).abs() <= 1e-9);
        prop_assert!(p.line_01_11().abs() <= 1e-9);
        if g.probability > 1e-9 {
            prop_assert_eq!(g.verdict, p.verdict);
        }
    }

    #[test]
    fn exact_and_composite_z_compile_to_the_same_physics((alpha, t, e) in spec_params()) {
        let sys = SpinSystem::default();
        let spec = QubitStateSpec::new(Degrees(t), Degrees(e), InputState::Psi1).unwrap();
        let prog = programme_for(&spec, Degrees(alpha)).unwrap();
        let exact = PulseEngine::new(sys, CompileOptions { z_mode: ZMode::Exact, ..Default::default() }).unwrap();
        let a = exact.run(&spec, &prog, Degrees(alpha)).unwrap();
        let b = pulse_engine().run(&spec, &prog, Degrees(alpha)).unwrap();
        prop_assert!((a.probability - b.probability).abs() <= 1e-10);
    }

    #[test]
    fn angle_lists_survive_formatting(values in prop::collection::vec(-360.0..360.0f64, 1..8)) {
        let text: Vec<String> = values.iter().map(|v| sig12(*v)).collect();
        let parsed = parse_angle_list(&text.join(",")).unwrap();
        prop_assert_eq!(parsed.len(), values.len());
        for (p, v) in parsed.iter().zip(&values) {
            prop_assert!((p.value() - v).abs() <= 1e-9 * v.abs().max(1.0));
        }
    }
}

fn sweep_config() -> impl Strategy<Value = SweepConfig> {
    let degs = |r: std::ops::Range<f64>, n: usize| prop::collection::vec(r, 1..n);
    (
        degs(-360.0..360.0, 4),
        degs(0.0..180.0, 4),
        degs(0.0..45.0, 3),
        prop::sample::subsequence(InputState::ALL.to_vec(), 1..=2),
    )
        .prop_map(|(a, t, e, states)| {
            let d = |v: Vec<f64>| v.into_iter().map(Degrees).collect();
            SweepConfig {
                alphas: d(a),
                two_theta1s: d(t),
                ellipticities: d(e),
                states,
                engine: EngineChoice::Both,
                output: None,
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sweep_rows_match_grid_and_closed_form(cfg in sweep_config()) {
        prop_assert!(cfg.validate().is_ok());
        let runner = Runner::new(cfg.engine).unwrap();
        let records = runner.run(&cfg.points());
        prop_assert_eq!(records.len(), cfg.point_count() * 2);
        prop_assert_eq!(records.len(), cfg.row_count());
        for r in &records {
            let p = r.point;
            let spec = QubitStateSpec::new(p.two_theta1, p.ellipticity, p.state).unwrap();
            match (programme_for(&spec.with_state(InputState::Psi1), p.alpha), &r.outcome) {
                (Ok(prog), Ok(o)) => {
                    let tol = if r.engine.as_str() == "gate" { 1e-12 } else { 1e-9 };
                    prop_assert!((o.probability - probability(&spec, &prog)).abs() <= tol);
                    prop_assert!((0.0..=1.0 + 1e-9).contains(&o.probability));
                    prop_assert!(o.verdict.is_consistent_with(p.state) || o.probability <= 1e-9);
                }
                (Err(_), Err(_)) => {}
                (prog, out) => prop_assert!(false, "{:?} vs {:?}", prog.is_ok(), out),
            }
        }
        let again = to_csv(&runner.run(&cfg.points()));
        prop_assert_eq!(to_csv(&records), again);
    }
}
