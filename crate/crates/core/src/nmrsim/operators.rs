use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::qalgebra::{expi, kron, Matrix2, Matrix4};
use crate::{Degrees, Error, Result};

/// Default ¹³C–¹H scalar coupling, Hz.
pub const DEFAULT_J_HZ: f64 = 209.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    /// Proton, spin 1.
    Data,
    /// Carbon-13, spin 2.
    Ancilla,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Targets {
    Data,
    Ancilla,
    Both,
}

impl Targets {
    pub fn includes(self, spin: Spin) -> bool {
        matches!(
            (self, spin),
            (Targets::Both, _) | (Targets::Data, Spin::Data) | (Targets::Ancilla, Spin::Ancilla)
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Targets::Data => "data",
            Targets::Ancilla => "ancilla",
            Targets::Both => "both",
        }
    }
}

impl From<Spin> for Targets {
    fn from(s: Spin) -> Self {
        match s {
            Spin::Data => Targets::Data,
            Spin::Ancilla => Targets::Ancilla,
        }
    }
}

/// Weakly coupled heteronuclear pair, observed on resonance.
///
/// Both rotating-frame offsets are zero, so the only free-evolution term
/// is 2πJ·I₁zI₂z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinSystem {
    j_coupling_hz: f64,
}

impl SpinSystem {
    pub fn new(j_coupling_hz: f64) -> Result<Self> {
        if !(j_coupling_hz.is_finite() && j_coupling_hz > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "J coupling must be positive, got {j_coupling_hz} Hz"
            )));
        }
        Ok(SpinSystem { j_coupling_hz })
    }

    pub fn j_coupling_hz(&self) -> f64 {
        self.j_coupling_hz
    }

    /// 1/(2J), the delay that produces e^{−iπI₁zI₂z}.
    pub fn half_j_delay(&self) -> f64 {
        0.5 / self.j_coupling_hz
    }
}

impl Default for SpinSystem {
    fn default() -> Self {
        SpinSystem {
            j_coupling_hz: DEFAULT_J_HZ,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    fn pauli(self) -> Matrix2 {
        match self {
            Axis::X => Matrix2::pauli_x(),
            Axis::Y => Matrix2::pauli_y(),
            Axis::Z => Matrix2::pauli_z(),
        }
    }

    fn letter(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }
}

/// I₁ₐ or I₂ₐ as a 4×4 matrix.
pub fn spin_operator(spin: Spin, axis: Axis) -> Matrix4 {
    let half = axis.pauli().scale(0.5.into());
    match spin {
        Spin::Data => kron(&half, &Matrix2::identity()),
        Spin::Ancilla => kron(&Matrix2::identity(), &half),
    }
}

/// A Cartesian product-operator basis element: I₁ₐ, I₂ᵦ or 2I₁ₐI₂ᵦ.
///
/// The fifteen elements are orthonormal under Tr(A†B) on the 4×4 space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductOperator {
    pub data: Option<Axis>,
    pub ancilla: Option<Axis>,
}

impl ProductOperator {
    pub const fn data(axis: Axis) -> Self {
        ProductOperator {
            data: Some(axis),
            ancilla: None,
        }
    }

    pub const fn ancilla(axis: Axis) -> Self {
        ProductOperator {
            data: None,
            ancilla: Some(axis),
        }
    }

    pub const fn bilinear(data: Axis, ancilla: Axis) -> Self {
        ProductOperator {
            data: Some(data),
            ancilla: Some(ancilla),
        }
    }

    /// All fifteen basis elements: I₁ₐ, I₂ᵦ, then 2I₁ₐI₂ᵦ.
    pub fn basis() -> Vec<ProductOperator> {
        let mut out: Vec<_> = Axis::ALL.into_iter().map(Self::data).collect();
        out.extend(Axis::ALL.into_iter().map(Self::ancilla));
        for a in Axis::ALL {
            out.extend(Axis::ALL.into_iter().map(|b| Self::bilinear(a, b)));
        }
        out
    }

    pub fn matrix(&self) -> Matrix4 {
        match (self.data, self.ancilla) {
            (Some(a), None) => spin_operator(Spin::Data, a),
            (None, Some(b)) => spin_operator(Spin::Ancilla, b),
            (Some(a), Some(b)) => kron(&a.pauli(), &b.pauli()).scale(0.5.into()),
            (None, None) => Matrix4::zero(),
        }
    }
}

impl fmt::Display for ProductOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.data, self.ancilla) {
            (Some(a), None) => write!(f, "I1{}", a.letter()),
            (None, Some(b)) => write!(f, "I2{}", b.letter()),
            (Some(a), Some(b)) => write!(f, "2I1{}I2{}", a.letter(), b.letter()),
            (None, None) => f.write_str("0"),
        }
    }
}

impl FromStr for ProductOperator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ProductOperator::basis()
            .into_iter()
            .find(|op| op.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown product operator '{s}'"))
    }
}

/// Unitary of a hard pulse (flip)_phase on one spin.
///
/// R = [[cos(β/2), −e^{−iφ'}sin(β/2)], [e^{iφ'}sin(β/2), cos(β/2)]] with
/// φ' = phase − 90°; phase 0° is x, 90° is y, 180° is −x, 270° is −y.
pub fn rf_unitary(flip: Degrees, phase: Degrees) -> Matrix2 {
    rf_unitary_rad(flip.radians(), phase.radians())
}

pub(crate) fn rf_unitary_rad(flip: f64, phase: f64) -> Matrix2 {
    let (s, c) = (flip / 2.0).sin_cos();
    let shifted = phase - FRAC_PI_2;
    Matrix2([
        [c.into(), -expi(-shifted) * s],
        [expi(shifted) * s, c.into()],
    ])
}

/// e^{−iθI_z}
pub fn z_rotation(angle: Degrees) -> Matrix2 {
    z_rotation_rad(angle.radians())
}

pub(crate) fn z_rotation_rad(angle: f64) -> Matrix2 {
    let mut m = Matrix2::identity();
    m.0[0][0] = expi(-angle / 2.0);
    m.0[1][1] = expi(angle / 2.0);
    m
}

/// Lifts a one-spin rotation to the pair; `Both` applies it to each spin.
pub fn on_targets(m: &Matrix2, targets: Targets) -> Matrix4 {
    let id = Matrix2::identity();
    match targets {
        Targets::Data => kron(m, &id),
        Targets::Ancilla => kron(&id, m),
        Targets::Both => kron(m, m),
    }
}

/// Free evolution e^{−i·2πJt·I₁zI₂z} for `seconds` (≥ 0).
pub fn j_evolution(sys: &SpinSystem, seconds: f64) -> Matrix4 {
    let phase = 2.0 * PI * sys.j_coupling_hz() * seconds;
    let m = [0.25, -0.25, -0.25, 0.25];
    Matrix4::diagonal(m.map(|zz| expi(-phase * zz)))
}
