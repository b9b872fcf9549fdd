use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// sin(α) = 0 leaves no non-trivial programme.
    #[error("degenerate unitary angle α = {alpha_deg}°: sin(α) = 0 admits no ancilla programme")]
    DegenerateAlpha { alpha_deg: f64 },

    /// a₁ = 0 forces a₂ = 0 and zero success probability.
    #[error("data state sits on the |1⟩ pole (a₁ = 0); the programme would give zero probability")]
    DataStateAtPole,

    #[error("gate decomposition deviates from the target unitary by {deviation:e}")]
    DecompositionMismatch { deviation: f64 },

    #[error("ancilla programme violates the discrimination condition (residual {residual:e})")]
    ProgrammeMismatch { residual: f64 },

    #[error("pseudopure checkpoint '{stage}' deviates by {deviation:e}")]
    CheckpointMismatch { stage: String, deviation: f64 },

    #[error("invalid state parameters: {0}")]
    InvalidSpec(String),
}
