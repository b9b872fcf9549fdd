//! Gate-level discrimination protocol.
//!
//! The data qubit is one of ψ₁ = a₁|0⟩ + b₁|1⟩ or ψ₂ = a₁|0⟩ − b₁|1⟩ with
//! a₁ = x·cosθ₁ + i·y·sinθ₁, b₁ = x·sinθ₁ − i·y·cosθ₁ and tan ε = y/x.
//! A programme qubit a₂|0⟩ + b₂|1⟩ is chosen so that after the fixed
//! rotation U(α) the |0_D0_A⟩ amplitude equals b₁a₂. The sign of the
//! |0_D0_A⟩ ↔ |1_D0_A⟩ coherence then names the input without error.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::qalgebra::{
    arg_or_zero, kron, re, Amplitude, Ket2, Ket4, Matrix2, Matrix4, ONE, STRUCTURAL_TOL,
};
use crate::{Degrees, Error, Result};

/// Below this magnitude a summed line is reported as inconclusive.
pub const VERDICT_THRESHOLD: f64 = 1e-12;

/// Largest tolerated residual of the programming condition.
pub const PROGRAMME_RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InputState {
    Psi1,
    Psi2,
}

impl InputState {
    pub const ALL: [InputState; 2] = [InputState::Psi1, InputState::Psi2];

    pub fn sign(self) -> f64 {
        match self {
            InputState::Psi1 => 1.0,
            InputState::Psi2 => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            InputState::Psi1 => "psi1",
            InputState::Psi2 => "psi2",
        }
    }
}

impl fmt::Display for InputState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InputState {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "psi1" | "1" => Ok(InputState::Psi1),
            "psi2" | "2" => Ok(InputState::Psi2),
            other => Err(format!(
                "unknown input state '{other}' (expected psi1 or psi2)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Psi1,
    Psi2,
    Inconclusive,
}

impl Verdict {
    pub fn from_line(amplitude: f64) -> Self {
        if amplitude.abs() < VERDICT_THRESHOLD {
            Verdict::Inconclusive
        } else if amplitude > 0.0 {
            Verdict::Psi1
        } else {
            Verdict::Psi2
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Psi1 => "psi1",
            Verdict::Psi2 => "psi2",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// True unless the verdict names the wrong state.
    pub fn is_consistent_with(self, input: InputState) -> bool {
        !matches!(
            (self, input),
            (Verdict::Psi1, InputState::Psi2) | (Verdict::Psi2, InputState::Psi1)
        )
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One member of a symmetric pair of polarized data-qubit states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitStateSpec {
    two_theta1: Degrees,
    ellipticity: Degrees,
    which: InputState,
}

impl QubitStateSpec {
    /// `two_theta1` in [0°, 180°], `ellipticity` in [0°, 45°).
    pub fn new(two_theta1: Degrees, ellipticity: Degrees, which: InputState) -> Result<Self> {
        let t = two_theta1.value();
        let e = ellipticity.value();
        if !t.is_finite() || !(0.0..=180.0).contains(&t) {
            return Err(Error::InvalidSpec(format!("2θ₁ = {t}° outside [0°, 180°]")));
        }
        if !e.is_finite() || !(0.0..45.0).contains(&e) {
            return Err(Error::InvalidSpec(format!("ε = {e}° outside [0°, 45°)")));
        }
        Ok(QubitStateSpec {
            two_theta1,
            ellipticity,
            which,
        })
    }

    pub fn two_theta1(&self) -> Degrees {
        self.two_theta1
    }

    pub fn ellipticity(&self) -> Degrees {
        self.ellipticity
    }

    pub fn which(&self) -> InputState {
        self.which
    }

    /// The same pair, other member.
    pub fn with_state(&self, which: InputState) -> Self {
        QubitStateSpec { which, ..*self }
    }

    /// (a₁, b₁) of the pair; ψ₁ = a₁|0⟩ + b₁|1⟩ regardless of `which`.
    pub fn pair_amplitudes(&self) -> (Amplitude, Amplitude) {
        let theta = self.two_theta1.radians() / 2.0;
        let (y, x) = self.ellipticity.radians().sin_cos();
        let (s, c) = theta.sin_cos();
        (Amplitude::new(x * c, y * s), Amplitude::new(x * s, -y * c))
    }
}

/// Bloch-sphere form of the data state, a₁ = e^{iφ₁}cos η, b₁ = e^{iφ₂}sin η.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarForm {
    pub eta: f64,
    /// φ₂ − φ₁ reduced to (−π, π].
    pub phi: f64,
    pub phi1: f64,
    pub phi2: f64,
}

/// Programme-qubit amplitudes and the RF pulse that prepares them from |0⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AncillaProgramme {
    pub a2: Amplitude,
    pub b2: Amplitude,
    /// Flip angle 2·atan(|b₂|/|a₂|), radians.
    pub prep_angle_2eta: f64,
    /// Pulse phase π/2 + arg b₂ − arg a₂, reduced to [0, 2π).
    pub prep_phase: f64,
}

impl AncillaProgramme {
    pub fn ket(&self) -> Ket2 {
        Ket2::new(self.a2, self.b2)
    }

    /// Signed ancilla flip angle in degrees.
    ///
    /// The sign folds the pulse phase onto the +y half-plane, so a
    /// (−2θ₂)_y pulse and a (2θ₂)_{−y} pulse both report −2θ₂. For linearly
    /// polarized pairs this is exactly 2θ₂ with a₂ = cos θ₂, b₂ = sin θ₂.
    pub fn signed_prep_angle(&self) -> Degrees {
        let relative = wrap_pi(self.prep_phase - FRAC_PI_2);
        let angle = Degrees::from_radians(self.prep_angle_2eta);
        if relative.abs() > FRAC_PI_2 + 1e-12 {
            Degrees(-angle.value())
        } else {
            angle
        }
    }
}

/// Two data-qubit line amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Lines {
    /// |0_D0_A⟩ ↔ |1_D0_A⟩
    pub line_00_10: f64,
    /// |0_D1_A⟩ ↔ |1_D1_A⟩
    pub line_01_11: f64,
}

impl Lines {
    /// Line amplitudes 2·Re(cᵢ·cⱼ*) of a pure two-qubit state.
    pub fn of_ket(k: &Ket4) -> Self {
        let c = &k.0;
        Lines {
            line_00_10: 2.0 * (c[0] * c[2].conj()).re,
            line_01_11: 2.0 * (c[1] * c[3].conj()).re,
        }
    }

    /// Average of the runs without and with controlled-σz.
    pub fn combine(without: Lines, with: Lines) -> Lines {
        Lines {
            line_00_10: 0.5 * (without.line_00_10 + with.line_00_10),
            line_01_11: 0.5 * (without.line_01_11 + with.line_01_11),
        }
    }

    pub fn scaled(self, s: f64) -> Lines {
        Lines {
            line_00_10: s * self.line_00_10,
            line_01_11: s * self.line_01_11,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolResult {
    pub verdict: Verdict,
    pub probability: f64,
    /// Summed (averaged) lines of both experiments.
    pub lines: Lines,
    pub without_sigma_zc: Lines,
    pub with_sigma_zc: Lines,
}

impl ProtocolResult {
    pub fn from_experiments(without: Lines, with: Lines) -> Self {
        let lines = Lines::combine(without, with);
        ProtocolResult {
            verdict: Verdict::from_line(lines.line_00_10),
            probability: lines.line_00_10.abs(),
            lines,
            without_sigma_zc: without,
            with_sigma_zc: with,
        }
    }

    pub fn line_00_10(&self) -> f64 {
        self.lines.line_00_10
    }

    pub fn line_01_11(&self) -> f64 {
        self.lines.line_01_11
    }
}

/// ψ₁ or ψ₂ as a normalized ket.
pub fn make_data_state(spec: &QubitStateSpec) -> Ket2 {
    let (a1, b1) = spec.pair_amplitudes();
    Ket2::new(a1, b1 * spec.which().sign())
}

pub fn polar_form(a1: Amplitude, b1: Amplitude) -> PolarForm {
    let eta = b1.norm().atan2(a1.norm());
    let phi1 = arg_or_zero(a1);
    let phi2 = arg_or_zero(b1);
    PolarForm {
        eta,
        phi: wrap_pi(phi2 - phi1),
        phi1,
        phi2,
    }
}

/// Programme qubit for a given U(α) and data pair.
///
/// Solves (a₁a₂cosα − a₁b₂sinα) = b₁a₂ for the ψ₁ amplitudes:
/// b₂/a₂ = (a₁cosα − b₁)/(a₁sinα).
pub fn solve_ancilla(alpha: Degrees, a1: Amplitude, b1: Amplitude) -> Result<AncillaProgramme> {
    let (s, c) = alpha.radians().sin_cos();
    if s.abs() < 1e-12 {
        return Err(Error::DegenerateAlpha {
            alpha_deg: alpha.value(),
        });
    }
    if a1.norm() < 1e-12 {
        return Err(Error::DataStateAtPole);
    }
    let ratio = (a1 * c - b1) / (a1 * s);
    let a2 = 1.0 / (1.0 + ratio.norm_sqr()).sqrt();
    let b2 = ratio * a2;
    let a2 = re(a2);
    Ok(AncillaProgramme {
        a2,
        b2,
        prep_angle_2eta: 2.0 * b2.norm().atan2(a2.norm()),
        prep_phase: wrap_two_pi(FRAC_PI_2 + arg_or_zero(b2) - arg_or_zero(a2)),
    })
}

/// Convenience: programme for the pair that `spec` belongs to.
pub fn programme_for(spec: &QubitStateSpec, alpha: Degrees) -> Result<AncillaProgramme> {
    let (a1, b1) = spec.pair_amplitudes();
    solve_ancilla(alpha, a1, b1)
}

/// X on a single qubit.
pub fn not_gate() -> Matrix2 {
    Matrix2::pauli_x()
}

pub fn u1_gate(alpha: Degrees) -> Matrix2 {
    let (s, c) = (alpha.radians() / 2.0).sin_cos();
    Matrix2::from_real([[c, s], [-s, c]])
}

pub fn u2_gate(alpha: Degrees) -> Matrix2 {
    let (s, c) = (alpha.radians() / 2.0).sin_cos();
    Matrix2::from_real([[c, -s], [s, c]])
}

/// CNOT with the data qubit as control.
pub fn cnot() -> Matrix4 {
    Matrix4::from_real([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ])
}

/// Controlled-σz: flips the sign of |1_D1_A⟩.
pub fn controlled_sigma_z() -> Matrix4 {
    Matrix4::diagonal([ONE, ONE, ONE, -ONE])
}

/// Rotation by α in the {|0_D0_A⟩, |0_D1_A⟩} subspace, identity elsewhere.
#[allow(non_snake_case)]
pub fn build_U(alpha: Degrees) -> Matrix4 {
    let (s, c) = alpha.radians().sin_cos();
    Matrix4::from_real([
        [c, -s, 0.0, 0.0],
        [s, c, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
}

/// The six gates realizing U(α), in time order.
pub fn u_gate_sequence(alpha: Degrees) -> [Matrix4; 6] {
    let id = Matrix2::identity();
    let not_data = kron(&not_gate(), &id);
    [
        not_data,
        cnot(),
        kron(&id, &u1_gate(alpha)),
        cnot(),
        kron(&id, &u2_gate(alpha)),
        not_data,
    ]
}

/// Product of [`u_gate_sequence`], checked against [`build_U`].
///
/// With the data qubit in |1⟩ the ancilla sees u₂·X·u₁·X = rotation by α;
/// with it in |0⟩ it sees u₂·u₁ = I. The outer NOTs move the active branch
/// to data = |0⟩.
#[allow(non_snake_case)]
pub fn build_U_decomposed(alpha: Degrees) -> Result<Matrix4> {
    let product = u_gate_sequence(alpha)
        .into_iter()
        .fold(Matrix4::identity(), |acc, gate| gate * acc);
    let deviation = product.max_abs_diff(&build_U(alpha));
    if deviation > STRUCTURAL_TOL {
        return Err(Error::DecompositionMismatch { deviation });
    }
    Ok(product)
}

/// Residual of the programming condition for the ψ₁ amplitudes.
pub fn programme_residual(
    a1: Amplitude,
    b1: Amplitude,
    prog: &AncillaProgramme,
    alpha: Degrees,
) -> f64 {
    let (s, c) = alpha.radians().sin_cos();
    (a1 * prog.a2 * c - a1 * prog.b2 * s - b1 * prog.a2).norm()
}

/// Final kets of the two experiments: U|ψ_DA⟩ and σz^c·U|ψ_DA⟩.
pub fn final_states(spec: &QubitStateSpec, prog: &AncillaProgramme, alpha: Degrees) -> [Ket4; 2] {
    let joint = make_data_state(spec).kron(&prog.ket());
    let after_u = build_U(alpha).apply(&joint);
    [after_u, controlled_sigma_z().apply(&after_u)]
}

/// Runs both experiments on pure states and reads out the data lines.
pub fn run_protocol(
    spec: &QubitStateSpec,
    prog: &AncillaProgramme,
    alpha: Degrees,
) -> Result<ProtocolResult> {
    let (a1, b1) = spec.pair_amplitudes();
    let residual = programme_residual(a1, b1, prog, alpha);
    if residual > PROGRAMME_RESIDUAL_TOL {
        return Err(Error::ProgrammeMismatch { residual });
    }
    let [without, with] = final_states(spec, prog, alpha);
    Ok(ProtocolResult::from_experiments(
        Lines::of_ket(&without),
        Lines::of_ket(&with),
    ))
}

/// Closed-form success probability 2|b₁|²|a₂|².
pub fn probability(spec: &QubitStateSpec, prog: &AncillaProgramme) -> f64 {
    let (_, b1) = spec.pair_amplitudes();
    2.0 * b1.norm_sqr() * prog.a2.norm_sqr()
}

/// Reduces an angle to (−π, π].
pub(crate) fn wrap_pi(x: f64) -> f64 {
    let mut r = x.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    r
}

/// Reduces an angle to [0, 2π).
pub(crate) fn wrap_two_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0 * PI);
    if r >= 2.0 * PI {
        0.0
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::{expi, I};

    fn spec(t: f64, e: f64, w: InputState) -> QubitStateSpec {
        QubitStateSpec::new(Degrees(t), Degrees(e), w).unwrap()
    }

    #[test]
    fn spec_bounds() {
        assert!(QubitStateSpec::new(Degrees(181.0), Degrees(0.0), InputState::Psi1).is_err());
        assert!(QubitStateSpec::new(Degrees(-1.0), Degrees(0.0), InputState::Psi1).is_err());
        assert!(QubitStateSpec::new(Degrees(90.0), Degrees(45.0), InputState::Psi1).is_err());
        assert!(QubitStateSpec::new(Degrees(90.0), Degrees(f64::NAN), InputState::Psi1).is_err());
        assert!(QubitStateSpec::new(Degrees(180.0), Degrees(44.9), InputState::Psi2).is_ok());
    }

    #[test]
    fn data_state_at_zero_separation_is_ground() {
        let k = make_data_state(&spec(0.0, 0.0, InputState::Psi1));
        assert!((k.0[0] - ONE).norm() < 1e-15 && k.0[1].norm() < 1e-15);
    }

    #[test]
    fn linear_data_state_at_quarter_turn() {
        let k = make_data_state(&spec(90.0, 0.0, InputState::Psi1));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((k.0[0] - re(h)).norm() < 1e-15);
        assert!((k.0[1] - re(h)).norm() < 1e-15);
    }

    #[test]
    fn elliptical_data_state_matches_literal_formula() {
        // Literal evaluation: θ₁ = 45°, x = cos30°, y = sin30°, minus branch.
        let (th, x, y) = (
            45f64.to_radians(),
            30f64.to_radians().cos(),
            30f64.to_radians().sin(),
        );
        let a = re(x * th.cos()) + I * (y * th.sin());
        let b = re(x * th.sin()) - I * (y * th.cos());
        let k = make_data_state(&spec(90.0, 30.0, InputState::Psi2));
        assert!((k.0[0] - a).norm() < 1e-15);
        assert!((k.0[1] + b).norm() < 1e-15);
        assert!((k.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn polar_form_cases() {
        let p = polar_form(ONE, re(0.0));
        assert_eq!((p.eta, p.phi), (0.0, 0.0));

        let (a1, b1) = spec(90.0, 0.0, InputState::Psi1).pair_amplitudes();
        let p = polar_form(a1, b1);
        assert!((p.eta - 45f64.to_radians()).abs() < 1e-15);
        assert!(p.phi.abs() < 1e-15);
    }

    #[test]
    fn polar_form_recomposes_elliptical_state() {
        let s = spec(20.0, 30.0, InputState::Psi1);
        let (a1, b1) = s.pair_amplitudes();
        let p = polar_form(a1, b1);
        assert!((p.eta.tan() - b1.norm() / a1.norm()).abs() < 1e-12);
        // tan φ₂ = −y cosθ₁ / (x sinθ₁); b₁ has positive real part here.
        let (th, x, y) = (
            10f64.to_radians(),
            30f64.to_radians().cos(),
            30f64.to_radians().sin(),
        );
        assert!((p.phi2 - (-y * th.cos() / (x * th.sin())).atan()).abs() < 1e-12);
        let recomposed = Ket2::new(re(p.eta.cos()), expi(p.phi) * p.eta.sin());
        assert!(recomposed.global_phase_equal(&make_data_state(&s), 1e-12));
    }

    #[test]
    fn ancilla_table_entry_at_sixty_degrees() {
        let (a1, b1) = spec(20.0, 0.0, InputState::Psi1).pair_amplitudes();
        let prog = solve_ancilla(Degrees(60.0), a1, b1).unwrap();
        assert!((prog.signed_prep_angle().value() - 41.0).abs() < 0.5);

        let (a1, b1) = spec(90.0, 0.0, InputState::Psi1).pair_amplitudes();
        let prog = solve_ancilla(Degrees(60.0), a1, b1).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let tan_theta2 = (h * 0.5 - h) / (h * 60f64.to_radians().sin());
        assert!(
            (prog.signed_prep_angle().value() - 2.0 * tan_theta2.atan().to_degrees()).abs() < 1e-12
        );
        assert!((prog.signed_prep_angle().value() + 60.0).abs() < 1e-9);
    }

    #[test]
    fn ancilla_at_right_angle_is_psi2() {
        for (t, e) in [(20.0, 0.0), (90.0, 15.0), (140.0, 30.0)] {
            let s = spec(t, e, InputState::Psi1);
            let prog = programme_for(&s, Degrees(90.0)).unwrap();
            let psi2 = make_data_state(&s.with_state(InputState::Psi2));
            assert!(prog.ket().global_phase_equal(&psi2, 1e-12));
            assert!((prog.a2.norm_sqr() + prog.b2.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ancilla_errors() {
        let (a1, b1) = spec(40.0, 0.0, InputState::Psi1).pair_amplitudes();
        assert!(matches!(
            solve_ancilla(Degrees(0.0), a1, b1),
            Err(Error::DegenerateAlpha { .. })
        ));
        assert!(matches!(
            solve_ancilla(Degrees(180.0), a1, b1),
            Err(Error::DegenerateAlpha { .. })
        ));
        let (a1, b1) = spec(180.0, 0.0, InputState::Psi1).pair_amplitudes();
        assert_eq!(
            solve_ancilla(Degrees(60.0), a1, b1),
            Err(Error::DataStateAtPole)
        );
    }

    #[test]
    fn build_u_cases() {
        assert!(build_U(Degrees(0.0)).max_abs_diff(&Matrix4::identity()) < 1e-15);
        let u = build_U(Degrees(90.0));
        let expected = Matrix4::from_real([
            [0.0, -1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert!(u.max_abs_diff(&expected) < 1e-15);
        let u = build_U(Degrees(45.0));
        let c = 45f64.to_radians().cos();
        assert!((u.0[0][0] - re(c)).norm() < 1e-15);
        assert!((u.0[0][1] + re(c)).norm() < 1e-15);
        assert!((u.0[1][0] - re(c)).norm() < 1e-15);
    }

    #[test]
    fn decomposition_matches_on_degree_grid() {
        let at_zero = build_U_decomposed(Degrees(0.0)).unwrap();
        assert!(at_zero.max_abs_diff(&Matrix4::identity()) < 1e-15);
        for deg in 0..360 {
            let alpha = Degrees(f64::from(deg));
            let d = build_U_decomposed(alpha).unwrap();
            assert!(d.max_abs_diff(&build_U(alpha)) < 1e-12, "α = {deg}°");
        }
    }

    #[test]
    fn anchor_point_and_its_mirror() {
        let s1 = spec(90.0, 0.0, InputState::Psi1);
        let prog = programme_for(&s1, Degrees(90.0)).unwrap();
        let r1 = run_protocol(&s1, &prog, Degrees(90.0)).unwrap();
        assert_eq!(r1.verdict, Verdict::Psi1);
        assert!((r1.probability - 0.5).abs() < 1e-12);
        assert!(r1.line_01_11().abs() < 1e-12);

        let r2 = run_protocol(&s1.with_state(InputState::Psi2), &prog, Degrees(90.0)).unwrap();
        assert_eq!(r2.verdict, Verdict::Psi2);
        assert!((r2.probability - 0.5).abs() < 1e-12);
    }

    #[test]
    fn sixty_degree_probability() {
        let s = spec(90.0, 0.0, InputState::Psi1);
        let prog = programme_for(&s, Degrees(60.0)).unwrap();
        let r = run_protocol(&s, &prog, Degrees(60.0)).unwrap();
        // Programme at α = 60°: 2θ₂ = −60°, so |a₂|² = cos²30°.
        let oracle = 2.0 * 45f64.to_radians().sin().powi(2) * 30f64.to_radians().cos().powi(2);
        assert!((oracle - 0.75).abs() < 1e-15);
        assert!((r.probability - oracle).abs() < 1e-12);
        assert!((probability(&s, &prog) - oracle).abs() < 1e-12);
    }

    #[test]
    fn closed_form_probability_examples() {
        let s = spec(0.0, 0.0, InputState::Psi1);
        let prog = programme_for(&s, Degrees(60.0)).unwrap();
        assert_eq!(probability(&s, &prog), 0.0);
        let r = run_protocol(&s, &prog, Degrees(60.0)).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);

        for e in [0.0, 15.0, 30.0, 44.0] {
            let s = spec(90.0, e, InputState::Psi1);
            let prog = programme_for(&s, Degrees(90.0)).unwrap();
            assert!((probability(&s, &prog) - 0.5).abs() < 1e-12, "ε = {e}");
        }

        // |b₁|² = x²sin²θ₁ + y²cos²θ₁, |a₂|² = |a₁|² at α = 90°.
        let (th, x, y) = (
            10f64.to_radians(),
            30f64.to_radians().cos(),
            30f64.to_radians().sin(),
        );
        let b1_sq = x * x * th.sin().powi(2) + y * y * th.cos().powi(2);
        let oracle = 2.0 * b1_sq * (1.0 - b1_sq);
        assert!((oracle - 0.389622).abs() < 1e-6);
        let s = spec(20.0, 30.0, InputState::Psi1);
        let prog = programme_for(&s, Degrees(90.0)).unwrap();
        assert!((probability(&s, &prog) - oracle).abs() < 1e-12);
    }

    #[test]
    fn mismatched_programme_is_rejected() {
        let s = spec(40.0, 0.0, InputState::Psi1);
        let prog = programme_for(&s, Degrees(60.0)).unwrap();
        let err = run_protocol(&s, &prog, Degrees(45.0)).unwrap_err();
        assert!(matches!(err, Error::ProgrammeMismatch { .. }));
    }

    #[test]
    fn verdict_thresholds() {
        assert_eq!(Verdict::from_line(1e-13), Verdict::Inconclusive);
        assert_eq!(Verdict::from_line(-1e-13), Verdict::Inconclusive);
        assert_eq!(Verdict::from_line(1e-6), Verdict::Psi1);
        assert_eq!(Verdict::from_line(-1e-6), Verdict::Psi2);
        assert!(Verdict::Inconclusive.is_consistent_with(InputState::Psi2));
        assert!(!Verdict::Psi1.is_consistent_with(InputState::Psi2));
    }

    fn grid() -> impl Iterator<Item = (f64, f64, f64)> {
        let alphas = [30.0, 45.0, 60.0, 90.0];
        let thetas = [20.0, 40.0, 60.0, 80.0, 90.0, 100.0, 120.0, 140.0, 160.0];
        let eps = [0.0, 15.0, 30.0];
        alphas.into_iter().flat_map(move |a| {
            thetas
                .into_iter()
                .flat_map(move |t| eps.into_iter().map(move |e| (a, t, e)))
        })
    }

    #[test]
    fn unambiguity_cancellation_and_consistency_on_grid() {
        for (a, t, e) in grid() {
            let s1 = spec(t, e, InputState::Psi1);
            let prog = programme_for(&s1, Degrees(a)).unwrap();
            let r1 = run_protocol(&s1, &prog, Degrees(a)).unwrap();
            let r2 = run_protocol(&s1.with_state(InputState::Psi2), &prog, Degrees(a)).unwrap();
            assert!(r1.line_00_10() >= 0.0);
            assert!((r1.line_00_10() + r2.line_00_10()).abs() < 1e-12);
            assert!(r1.line_01_11().abs() < 1e-12 && r2.line_01_11().abs() < 1e-12);
            assert!((r1.probability - probability(&s1, &prog)).abs() < 1e-12);
            assert!(r1.verdict.is_consistent_with(InputState::Psi1));
            assert!(r2.verdict.is_consistent_with(InputState::Psi2));
        }
    }

    #[test]
    fn maximum_sits_at_orthogonal_pair() {
        let thetas = [20.0, 40.0, 60.0, 80.0, 90.0, 100.0, 120.0, 140.0, 160.0];
        for a in [30.0, 45.0, 60.0, 90.0] {
            let best = thetas
                .iter()
                .map(|&t| {
                    let s = spec(t, 0.0, InputState::Psi1);
                    (t, probability(&s, &programme_for(&s, Degrees(a)).unwrap()))
                })
                .fold((0.0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            assert_eq!(best.0, 90.0, "α = {a}");
        }
    }

    #[test]
    fn angle_wrapping() {
        assert!((wrap_pi(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_pi(-PI) - PI).abs() < 1e-12);
        assert!((wrap_two_pi(-FRAC_PI_2) - 1.5 * PI).abs() < 1e-12);
    }
}
