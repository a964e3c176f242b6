use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid sign {0}: metric signs must be +1 or -1")]
    InvalidSign(i64),

    #[error("mixed ε₂ algebras")]
    MixedAlgebras,

    #[error("empty coefficient list")]
    EmptyPolynomial,

    #[error("point ({0}, {1}) outside domain")]
    OutsideDomain(f64, f64),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("degenerate normal")]
    DegenerateNormal,

    #[error("normal causal type mismatch: expected sign {expected}, found inner square {found:e}")]
    NormalCausalType { expected: f64, found: f64 },

    #[error("lightlike coordinate direction u{0}")]
    LightlikeDirection(usize),

    #[error("vanishing metric coefficient g{0}{0}")]
    VanishingMetric(usize),

    #[error("not ε-isothermic at point ({0}, {1})")]
    NotIsothermic(f64, f64),

    #[error("umbilic point")]
    UmbilicPoint,

    #[error("λ₁=λ₂ on domain")]
    UmbilicOnDomain,

    #[error("field zero: ω,₁₂/ω undefined")]
    FieldZero,

    #[error("non-finite value while evaluating {0}")]
    NonFinite(&'static str),

    #[error("use Example form: {0}")]
    UseExampleForm(String),

    #[error("constraint violated: residual {0:e}")]
    ConstraintViolated(f64),

    #[error("inadmissible constants")]
    Inadmissible,

    #[error("degenerate (m₁=0)")]
    DegenerateM1,

    #[error("constraint is not quadratic in {0}")]
    NotQuadratic(&'static str),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unknown case {0:?}")]
    UnknownCase(String),

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    #[error("unknown constant {0:?}")]
    UnknownConstant(String),

    #[error("case mismatch: {which} requires {expected}, got {found}")]
    CaseMismatch {
        which: &'static str,
        expected: &'static str,
        found: &'static str,
    },

    #[error("degenerate: ω ≡ 0")]
    ConstantHolomorphic,

    #[error("singular point of the chart: 1+ε₃|f|² vanishes")]
    SingularChart,

    #[error("lightlike point: ⟨f′,f′⟩ vanishes")]
    LightlikeDerivative,
}
