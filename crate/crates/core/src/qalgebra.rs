//! Fixed-size complex linear algebra for one and two qubits.
//!
//! Two-qubit objects use the basis order |0_D0_A⟩, |0_D1_A⟩, |1_D0_A⟩,
//! |1_D1_A⟩: the data qubit is the most significant (left) tensor factor.

use std::ops::{Add, Mul, Neg, Sub};

pub use num_complex::Complex64;

/// A probability amplitude.
pub type Amplitude = Complex64;

/// Tolerance for structural predicates (unitarity, Hermiticity, equality).
pub const STRUCTURAL_TOL: f64 = 1e-12;

pub const ZERO: Amplitude = Complex64::new(0.0, 0.0);
pub const ONE: Amplitude = Complex64::new(1.0, 0.0);
pub const I: Amplitude = Complex64::new(0.0, 1.0);

/// `e^{iθ}`
pub fn expi(theta: f64) -> Amplitude {
    Complex64::from_polar(1.0, theta)
}

pub fn re(x: f64) -> Amplitude {
    Complex64::new(x, 0.0)
}

/// Argument of `z`, with arg(0) taken as 0.
pub fn arg_or_zero(z: Amplitude) -> f64 {
    if z.norm() < 1e-300 {
        0.0
    } else {
        z.arg()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ket2(pub [Amplitude; 2]);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ket4(pub [Amplitude; 4]);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Amplitude; 2]; 2]);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4(pub [[Amplitude; 4]; 4]);

impl Ket2 {
    pub const ZERO_STATE: Ket2 = Ket2([ONE, ZERO]);
    pub const ONE_STATE: Ket2 = Ket2([ZERO, ONE]);

    pub fn new(a: Amplitude, b: Amplitude) -> Self {
        Ket2([a, b])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &Ket2) -> Amplitude {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Product state `self ⊗ other`, with `self` as the data (left) factor.
    pub fn kron(&self, other: &Ket2) -> Ket4 {
        let mut out = [ZERO; 4];
        for i in 0..2 {
            for j in 0..2 {
                out[2 * i + j] = self.0[i] * other.0[j];
            }
        }
        Ket4(out)
    }

    /// True iff `self = e^{iγ}·other` for some real γ, within `tol`.
    pub fn global_phase_equal(&self, other: &Ket2, tol: f64) -> bool {
        phase_aligned_deviation(&self.0, &other.0) <= tol
    }
}

impl Ket4 {
    pub fn basis(index: usize) -> Self {
        let mut out = [ZERO; 4];
        out[index] = ONE;
        Ket4(out)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &Ket4) -> Amplitude {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn max_abs_diff(&self, other: &Ket4) -> f64 {
        max_abs_diff(&self.0, &other.0)
    }

    pub fn global_phase_equal(&self, other: &Ket4, tol: f64) -> bool {
        phase_aligned_deviation(&self.0, &other.0) <= tol
    }

    /// `|self⟩⟨self|`
    pub fn outer(&self) -> Matrix4 {
        let mut m = Matrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[i] * self.0[j].conj();
            }
        }
        m
    }
}

impl Matrix2 {
    pub fn identity() -> Self {
        Matrix2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn from_real(rows: [[f64; 2]; 2]) -> Self {
        Matrix2(rows.map(|r| r.map(re)))
    }

    pub fn pauli_x() -> Self {
        Matrix2::from_real([[0.0, 1.0], [1.0, 0.0]])
    }

    pub fn pauli_y() -> Self {
        Matrix2([[ZERO, -I], [I, ZERO]])
    }

    pub fn pauli_z() -> Self {
        Matrix2::from_real([[1.0, 0.0], [0.0, -1.0]])
    }

    pub fn scale(&self, s: Amplitude) -> Self {
        Matrix2(self.0.map(|r| r.map(|c| c * s)))
    }

    pub fn conjugate_transpose(&self) -> Self {
        let m = &self.0;
        Matrix2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn apply(&self, k: &Ket2) -> Ket2 {
        let m = &self.0;
        Ket2([
            m[0][0] * k.0[0] + m[0][1] * k.0[1],
            m[1][0] * k.0[0] + m[1][1] * k.0[1],
        ])
    }

    pub fn max_abs_diff(&self, other: &Matrix2) -> f64 {
        max_abs_diff(self.0.as_flattened(), other.0.as_flattened())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (*self * self.conjugate_transpose()).max_abs_diff(&Matrix2::identity()) <= tol
    }

    pub fn global_phase_equal(&self, other: &Matrix2, tol: f64) -> bool {
        phase_aligned_deviation(self.0.as_flattened(), other.0.as_flattened()) <= tol
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..2).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Matrix2(out)
    }
}

impl Matrix4 {
    pub fn zero() -> Self {
        Matrix4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Matrix4::diagonal([ONE; 4])
    }

    pub fn diagonal(d: [Amplitude; 4]) -> Self {
        let mut m = Matrix4::zero();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        Matrix4(rows.map(|r| r.map(re)))
    }

    pub fn scale(&self, s: Amplitude) -> Self {
        Matrix4(self.0.map(|r| r.map(|c| c * s)))
    }

    pub fn conjugate_transpose(&self) -> Self {
        let mut out = Matrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Amplitude {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn apply(&self, k: &Ket4) -> Ket4 {
        let mut out = [ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.0[i][j] * k.0[j]).sum();
        }
        Ket4(out)
    }

    pub fn max_abs_diff(&self, other: &Matrix4) -> f64 {
        max_abs_diff(self.0.as_flattened(), other.0.as_flattened())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (*self * self.conjugate_transpose()).max_abs_diff(&Matrix4::identity()) <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.conjugate_transpose()) <= tol
    }

    pub fn global_phase_equal(&self, other: &Matrix4, tol: f64) -> bool {
        self.global_phase_deviation(other) <= tol
    }

    /// Smallest max-entry deviation `|self − e^{iγ}·other|` over the phase
    /// that best aligns the two matrices.
    pub fn global_phase_deviation(&self, other: &Matrix4) -> f64 {
        phase_aligned_deviation(self.0.as_flattened(), other.0.as_flattened())
    }

    /// `U · self · U†`
    pub fn conjugate_by(&self, u: &Matrix4) -> Matrix4 {
        *u * *self * u.conjugate_transpose()
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;

    fn mul(self, rhs: Matrix4) -> Matrix4 {
        let mut out = Matrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        out
    }
}

impl Add for Matrix4 {
    type Output = Matrix4;

    fn add(self, rhs: Matrix4) -> Matrix4 {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }
}

impl Sub for Matrix4 {
    type Output = Matrix4;

    fn sub(self, rhs: Matrix4) -> Matrix4 {
        self + (-rhs)
    }
}

impl Neg for Matrix4 {
    type Output = Matrix4;

    fn neg(self) -> Matrix4 {
        Matrix4(self.0.map(|r| r.map(|c| -c)))
    }
}

/// `a ⊗ b` with `a` acting on the data qubit.
pub fn kron(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    let mut out = Matrix4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + j][2 * k + l] = a.0[i][k] * b.0[j][l];
                }
            }
        }
    }
    out
}

pub fn apply(m: &Matrix4, k: &Ket4) -> Ket4 {
    m.apply(k)
}

pub fn is_unitary(m: &Matrix4, tol: f64) -> bool {
    m.is_unitary(tol)
}

pub fn global_phase_equal(m1: &Matrix4, m2: &Matrix4, tol: f64) -> bool {
    m1.global_phase_equal(m2, tol)
}

fn max_abs_diff(a: &[Amplitude], b: &[Amplitude]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn phase_aligned_deviation(a: &[Amplitude], b: &[Amplitude]) -> f64 {
    // γ = arg ⟨b, a⟩ is the least-squares optimal phase.
    let overlap: Amplitude = a.iter().zip(b).map(|(x, y)| y.conj() * x).sum();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        ONE
    };
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max)
}
