use crate::qalgebra::{re, Matrix4};

use super::operators::{Axis, ProductOperator};

/// Traceless Hermitian part of an ensemble density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationDensityMatrix(Matrix4);

impl DeviationDensityMatrix {
    /// Wraps `m` after removing its trace.
    pub fn new(m: Matrix4) -> Self {
        let shift = m.trace() / 4.0;
        DeviationDensityMatrix(m - Matrix4::identity().scale(shift))
    }

    /// Σ coefficient·operator.
    pub fn from_terms(terms: &[(ProductOperator, f64)]) -> Self {
        let m = terms.iter().fold(Matrix4::zero(), |acc, (op, c)| {
            acc + op.matrix().scale(re(*c))
        });
        DeviationDensityMatrix(m)
    }

    /// Thermal equilibrium 4I₁z + I₂z (γ_H ≈ 4γ_C).
    pub fn equilibrium() -> Self {
        Self::from_terms(&[
            (ProductOperator::data(Axis::Z), 4.0),
            (ProductOperator::ancilla(Axis::Z), 1.0),
        ])
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.0
    }

    /// ρ → UρU†
    pub fn evolve(&self, u: &Matrix4) -> Self {
        DeviationDensityMatrix(self.0.conjugate_by(u))
    }

    /// Product-operator coefficient Tr(B·ρ).
    pub fn coefficient(&self, op: ProductOperator) -> f64 {
        (op.matrix() * self.0).trace().re
    }

    /// All fifteen coefficients in [`ProductOperator::basis`] order.
    pub fn coefficients(&self) -> Vec<(ProductOperator, f64)> {
        ProductOperator::basis()
            .into_iter()
            .map(|op| (op, self.coefficient(op)))
            .collect()
    }

    /// Largest coefficient difference from the expansion `terms`.
    pub fn term_deviation(&self, terms: &[(ProductOperator, f64)]) -> f64 {
        let expected = DeviationDensityMatrix::from_terms(terms);
        ProductOperator::basis()
            .into_iter()
            .map(|op| (self.coefficient(op) - expected.coefficient(op)).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.0.is_hermitian(tol)
    }

    pub fn trace_abs(&self) -> f64 {
        self.0.trace().norm()
    }

    /// |ρ₀₁,₁₀|: zero-quantum coherence between |0_D1_A⟩ and |1_D0_A⟩.
    pub fn zero_quantum_magnitude(&self) -> f64 {
        self.0 .0[1][2].norm()
    }

    /// Human-readable expansion, omitting terms below `tol`.
    pub fn describe(&self, tol: f64) -> String {
        let terms: Vec<String> = self
            .coefficients()
            .into_iter()
            .filter(|(_, c)| c.abs() > tol)
            .map(|(op, c)| format!("{c:+.6}·{op}"))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" ")
        }
    }
}

/// Pulsed-field-gradient crush: keeps only the diagonal.
///
/// Single- and double-quantum coherences dephase under a gradient. The
/// zero-quantum pair is zeroed as well; callers that rely on this check
/// that none is present first.
pub fn gradient_crush(rho: &DeviationDensityMatrix) -> DeviationDensityMatrix {
    let mut m = Matrix4::zero();
    for i in 0..4 {
        m.0[i][i] = rho.0 .0[i][i];
    }
    DeviationDensityMatrix(m)
}
