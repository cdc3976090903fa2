//! Error type shared by all modules of the crate.

use std::fmt;

/// Everything that can go wrong while evaluating the functions of this
/// crate. Poles of the gamma function itself are *values* (see
/// [`crate::gamma::GammaValue`]), not errors; this enum covers genuine
/// domain violations and budget exhaustion.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `a − a′` is not within tolerance of an integer.
    NotOnLattice { a_minus_ap: num_complex::Complex64 },
    /// Double power of zero requested.
    ZeroBase,
    /// Log-gamma requested at a nonpositive integer.
    PoleAtPoint,
    /// Beta ratio is 0/0 or ∞/∞ and cannot be resolved here.
    Indeterminate,
    /// A lower series parameter is a nonpositive integer.
    DenominatorPole,
    /// The hypergeometric series does not converge at the requested point.
    SeriesDivergent,
    /// The series did not settle within the term cap.
    BudgetExceeded { terms: usize },
    /// Two parameters collide on a singular hyperplane; no separating
    /// contour exists (or the residue formula degenerates).
    ParameterCollision,
    /// Some pair of upper parameters differs by an integer, making a
    /// factor of the residue series singular. Use the quadrature engine.
    ResonantParameters,
    /// `p = q` and `|z|` is inside the refusal band around the unit circle.
    OnUnitCircle,
    /// The defining integral is not absolutely convergent with margin;
    /// the quadrature engine refuses.
    NotAbsolutelyConvergent,
    /// The quadrature engine ran out of panels or k-terms.
    QuadratureBudgetExceeded,
    /// `p = q` and `ln|z|` is too small for the oscillatory tail bound.
    OscillationTooSlow,
    /// A convolution factor is not square integrable on the group.
    NotL2,
    /// Matrix determinant is not 1.
    NonUnimodular,
    /// A matrix entry needed by the kernel formula vanishes.
    DegenerateMatrix,
    /// Verification suite name not in the registry.
    UnknownSuite { name: String },
}

impl Error {
    /// Stable machine-readable tag, used by the CLI JSON output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotOnLattice { .. } => "NotOnLattice",
            Error::ZeroBase => "ZeroBase",
            Error::PoleAtPoint => "PoleAtPoint",
            Error::Indeterminate => "Indeterminate",
            Error::DenominatorPole => "DenominatorPole",
            Error::SeriesDivergent => "SeriesDivergent",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::ParameterCollision => "ParameterCollision",
            Error::ResonantParameters => "ResonantParameters",
            Error::OnUnitCircle => "OnUnitCircle",
            Error::NotAbsolutelyConvergent => "NotAbsolutelyConvergent",
            Error::QuadratureBudgetExceeded => "QuadratureBudgetExceeded",
            Error::OscillationTooSlow => "OscillationTooSlow",
            Error::NotL2 => "NotL2",
            Error::NonUnimodular => "NonUnimodular",
            Error::DegenerateMatrix => "DegenerateMatrix",
            Error::UnknownSuite { .. } => "UnknownSuite",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotOnLattice { a_minus_ap } => {
                write!(f, "a - a' = {a_minus_ap} is not an integer; point is off the lattice")
            }
            Error::ZeroBase => write!(f, "double power of z = 0 is undefined"),
            Error::PoleAtPoint => write!(f, "evaluation point is a pole"),
            Error::Indeterminate => write!(f, "0/0 beta ratio cannot be resolved"),
            Error::DenominatorPole => {
                write!(f, "a lower series parameter is a nonpositive integer")
            }
            Error::SeriesDivergent => write!(f, "hypergeometric series diverges here"),
            Error::BudgetExceeded { terms } => {
                write!(f, "series did not converge within {terms} terms")
            }
            Error::ParameterCollision => {
                write!(f, "parameters lie on a singular hyperplane (pole collision)")
            }
            Error::ResonantParameters => {
                write!(f, "upper parameters differ by an integer; residue series is singular")
            }
            Error::OnUnitCircle => {
                write!(f, "p = q and |z| is too close to 1 for the residue series")
            }
            Error::NotAbsolutelyConvergent => {
                write!(f, "integral is not absolutely convergent with the required margin")
            }
            Error::QuadratureBudgetExceeded => write!(f, "quadrature budget exhausted"),
            Error::OscillationTooSlow => {
                write!(f, "p = q and ln|z| is too small; tail cannot be bounded")
            }
            Error::NotL2 => write!(f, "factor is not in L2(C, |z|^-2 dz)"),
            Error::NonUnimodular => write!(f, "matrix determinant is not 1"),
            Error::DegenerateMatrix => write!(f, "matrix entry vanishes"),
            Error::UnknownSuite { name } => write!(f, "unknown verification suite '{name}'"),
        }
    }
}

impl std::error::Error for Error {}
