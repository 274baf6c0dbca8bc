//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong in exact computations.
///
/// Variants are grouped by the subsystem that raises them. The
/// `MathematicalInconsistency`-flavored variants (divisibility violations,
/// impossible valuation patterns) indicate that an *input* contradicts a
/// structural theorem, as opposed to a plain usage error.
#[derive(Debug, Clone, Error)]
pub enum Error {
    // --- number fields ---
    #[error("modulus at tower level {level} is not monic")]
    NonMonicModulus { level: usize },
    #[error("modulus at tower level {level} must have degree >= 1")]
    ModulusDegree { level: usize },
    #[error("element does not belong to the expected field")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-invertible element: zero divisor at tower level {level} (modulus is reducible)")]
    NotInvertible { level: usize },

    // --- polynomials / rational functions ---
    #[error("zero denominator in rational function")]
    ZeroDenominator,
    #[error("valuation of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("inexact division: {0}")]
    InexactDivision(String),

    // --- Weierstrass models ---
    #[error("discriminant vanishes identically: the family is singular")]
    SingularModel,
    #[error("coefficient degrees are inconsistent: {0}")]
    DegreeInconsistency(String),
    #[error("model is not minimal at the given place")]
    NonMinimalModel,
    #[error("valuation pattern (v(f), v(g), v(D)) = ({f}, {g}, {delta}) matches no reduction type")]
    TypingTableMiss { f: String, g: String, delta: String },
    #[error("discriminant degree {0} is not divisible by 12; model is not globally minimal")]
    NonIntegralFundamentalDegree(usize),

    // --- base change / classification ---
    #[error("base change degree {0} is not an admissible prime")]
    BadCoverDegree(u32),
    #[error("negative epsilon: model is not globally minimal")]
    NegativeEpsilon,
    #[error("configuration is not in the catalog of stable rows")]
    UnknownConfigRow,
    #[error("Shioda-Tate violation: component count exceeds the Picard bound ({0})")]
    ShiodaTateViolation(String),

    // --- Mordell-Weil / Galois action ---
    #[error("point does not lie on the curve: {0}")]
    PointOffCurve(String),
    #[error("inconsistent Galois weight congruences: 3m = 2n (mod p) fails for m={m}, n={n}, p={p}")]
    InconsistentCongruences { m: i64, n: i64, p: u32 },
    #[error("model is not of the required monomial shape y^2 = x^3 + a t^m x + b t^n")]
    NotDelsarte,
    #[error("recipe references undefined symbol: {0}")]
    BadRecipe(String),

    // --- cohomology ---
    #[error("sigma does not have order dividing n: sigma^n is not the identity")]
    SigmaOrderViolation,
    #[error("sigma does not preserve the torsion filtration")]
    TorsionCompatibility,
    #[error("coefficient sum must vanish for a trace-kernel element (got {0})")]
    NonzeroTraceSum(String),
    #[error("rank {rank} is not divisible by p - 1 = {pm1}; contradicts the rank divisibility theorem")]
    RankNotDivisible { rank: u64, pm1: u64 },
    #[error("rank after base change ({after}) is smaller than rank before ({before})")]
    RankDecrease { before: u64, after: u64 },
    #[error("module presentation invalid: {0}")]
    BadPresentation(String),

    // --- bounds ---
    #[error("Riemann-Hurwitz has no nonnegative integer solution for the requested genera")]
    RamificationInsoluble,

    // --- fixtures ---
    #[error("fixture validation failed: {0}")]
    FixtureValidation(String),
}
