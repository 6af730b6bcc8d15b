use core::fmt;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter was outside its documented range.
    ParamOutOfRange(&'static str),
    /// Inversion of zero or division by the zero polynomial.
    DivisionByZero,
    /// The polynomial exponents are not all congruent mod `q-1`, or a
    /// constant term is present, so no wrapped form `X^r A(X^{q-1})` exists.
    NotWrappable,
    /// The quotient rewrite is invalid because `A` has a root in `mu_{q+1}`.
    RewriteInvalid,
    /// A rational function could not be expressed as `X^s A^{(q)}(1/X)/A(X)`.
    NotExpressible(&'static str),
    /// A factory input failed its bijection preconditions.
    InvalidFactoryInput(&'static str),
    /// Composition of rational functions is undefined (outer pole at a
    /// constant inner value).
    DegenerateComposition,
    /// gcd of two zero polynomials.
    ZeroGcd,
    /// No admissible exponent was found in the search window. For even `q`
    /// this signals a bug rather than a valid outcome.
    ExistenceViolation,
    /// The requested computation exceeds the crate's desk-scale limits.
    ResourceLimit(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ParamOutOfRange(what) => write!(f, "parameter out of range: {what}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotWrappable => write!(f, "polynomial has no wrapped form X^r A(X^(q-1))"),
            Error::RewriteInvalid => write!(f, "rewrite invalid: A has a root in mu_(q+1)"),
            Error::NotExpressible(why) => write!(f, "not expressible in quotient form: {why}"),
            Error::InvalidFactoryInput(why) => write!(f, "invalid factory input: {why}"),
            Error::DegenerateComposition => write!(f, "degenerate rational composition"),
            Error::ZeroGcd => write!(f, "gcd of two zero polynomials"),
            Error::ExistenceViolation => write!(f, "no admissible exponent found (bug for even q)"),
            Error::ResourceLimit(what) => write!(f, "resource limit exceeded: {what}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
