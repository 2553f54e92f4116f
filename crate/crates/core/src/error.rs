use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("`{name}` = {value} is out of range ({expected})")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("coefficients violate (a1²−a2²)·r2² = (b2²−b1²)·r1²: {lhs} ≠ {rhs}")]
    ConstraintViolated { lhs: f64, rhs: f64 },

    #[error("exponential generators need (a1, b1) ≠ (0, 0)")]
    DegenerateGenerator,

    #[error("generator overflow at ({u1}, {u2})")]
    Overflow { u1: f64, u2: f64 },

    #[error("S vanishes at ({u1}, {u2})")]
    DegeneratePoint { u1: f64, u2: f64 },

    #[error("({u1}, {u2}) is singular (margin {margin:e})")]
    SingularPoint { u1: f64, u2: f64, margin: f64 },

    #[error("parameter point ({u1}, {u2}) is not finite")]
    NonFinitePoint { u1: f64, u2: f64 },
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
